//! Truncated power series, Hilbert series of `K[X_d]` and `F_d`, their
//! `GL_2`-refinements in `t1, t2`, and extraction of the multiplicities
//! `m_n(k, l)` of `det^l (x) V_k`.
//!
//! The grading variable is `z` (or `z1, ..., zd` for the multigrading); a
//! series is truncated at total `z`-degree `N`. Characters are polynomials in
//! `t1, t2`: the weight of `xi_j` in `V_k` is `t1^(k-j) t2^j`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parse::parse_rational_function;
use crate::poly::{Monomial, Poly, Rational, Var};
use crate::sl2::ModuleSpec;

/// Default truncation degree.
pub const DEFAULT_BOUND: u32 = 12;

pub fn t1() -> Var {
    Var::new('t', 1)
}

pub fn t2() -> Var {
    Var::new('t', 2)
}

fn z_degree(m: &Monomial) -> u32 {
    m.degree_in('z')
}

/// A power series with exact coefficients, truncated above `z`-degree `bound`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    vars: BTreeSet<Var>,
    poly: Poly,
    bound: u32,
}

impl TruncatedSeries {
    pub fn new(vars: impl IntoIterator<Item = Var>, poly: Poly, bound: u32) -> Self {
        let mut vars: BTreeSet<Var> = vars.into_iter().collect();
        vars.extend(poly.variables());
        let poly = Poly::from_terms(poly.into_terms().filter(|(m, _)| z_degree(m) <= bound));
        TruncatedSeries { vars, poly, bound }
    }

    /// Univariate series in `z`.
    pub fn univariate(coefficients: &[Rational], bound: u32) -> Self {
        let poly = Poly::from_terms(
            coefficients
                .iter()
                .enumerate()
                .map(|(n, c)| (Monomial::pow_of(Var::z(), n as u32), c.clone())),
        );
        TruncatedSeries::new([Var::z()], poly, bound)
    }

    pub fn one(vars: impl IntoIterator<Item = Var>, bound: u32) -> Self {
        TruncatedSeries::new(vars, Poly::one(), bound)
    }

    pub fn vars(&self) -> &BTreeSet<Var> {
        &self.vars
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.poly.coefficient(m)
    }

    /// Terms of `z`-degree `n`.
    pub fn slice(&self, n: u32) -> Poly {
        Poly::from_terms(
            self.poly
                .terms()
                .filter(|(m, _)| z_degree(m) == n)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    fn slices(&self) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.bound as usize + 1];
        for (m, c) in self.poly.terms() {
            out[z_degree(m) as usize].add_term(m.clone(), c.clone());
        }
        out
    }

    fn from_slices(vars: BTreeSet<Var>, slices: Vec<Poly>, bound: u32) -> Self {
        let mut poly = Poly::zero();
        for s in slices {
            poly += s;
        }
        TruncatedSeries { vars, poly, bound }
    }

    fn merged_vars(&self, other: &Self) -> BTreeSet<Var> {
        self.vars.union(&other.vars).copied().collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        TruncatedSeries::new(self.merged_vars(other), &self.poly + &other.poly, bound)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        TruncatedSeries::new(self.merged_vars(other), &self.poly - &other.poly, bound)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            poly: self.poly.scale(c),
            bound: self.bound,
        }
    }

    /// Product, dropping every term above the smaller of the two bounds.
    pub fn mul(&self, other: &Self) -> Self {
        let bound = self.bound.min(other.bound);
        let a = self.slices();
        let b = other.slices();
        let mut out = vec![Poly::zero(); bound as usize + 1];
        for (i, ai) in a.iter().enumerate().take(bound as usize + 1) {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate().take(bound as usize + 1 - i) {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        TruncatedSeries::from_slices(self.merged_vars(other), out, bound)
    }

    /// Multiplies by `1 / (1 - c m)`, where `m` has positive `z`-degree.
    pub fn div_one_minus(&self, m: &Monomial, c: &Rational) -> Self {
        let e = z_degree(m) as usize;
        assert!(e > 0, "geometric factor needs positive z-degree");
        let mut s = self.slices();
        for n in e..s.len() {
            let carry = s[n - e].mul_monomial(m, c);
            s[n] += carry;
        }
        let mut vars = self.vars.clone();
        vars.extend(m.vars());
        TruncatedSeries::from_slices(vars, s, self.bound)
    }

    /// Multiplicative inverse; the `z`-free part must be a nonzero constant.
    pub fn inverse(&self) -> Result<Self> {
        let s = self.slices();
        let c0 = match s[0].terms().collect::<Vec<_>>().as_slice() {
            [(m, c)] if m.is_one() => (*c).clone(),
            _ => return Err(Error::ZeroConstantTerm(self.poly.to_string())),
        };
        let inv0 = c0.recip();
        // r_n = -inv0 * sum_{i=1}^n s_i r_{n-i}
        let mut r: Vec<Poly> = vec![Poly::constant(inv0.clone())];
        for n in 1..s.len() {
            let mut acc = Poly::zero();
            for i in 1..=n {
                if !s[i].is_zero() && !r[n - i].is_zero() {
                    acc += &s[i] * &r[n - i];
                }
            }
            r.push(acc.scale(&-&inv0));
        }
        Ok(TruncatedSeries::from_slices(
            self.vars.clone(),
            r,
            self.bound,
        ))
    }

    /// Substitutes polynomials for variables, then truncates.
    pub fn substitute(&self, images: &BTreeMap<Var, Poly>) -> Self {
        let poly = self.poly.substitute(images);
        let vars = self
            .vars
            .iter()
            .filter(|v| !images.contains_key(v))
            .copied()
            .chain(images.values().flat_map(|p| p.variables()))
            .collect::<BTreeSet<_>>();
        TruncatedSeries::new(vars, poly, self.bound)
    }

    /// Coefficients of `z^0, ..., z^bound` after forgetting every other variable's exponent
    /// (the variables are set to 1).
    pub fn z_coefficients(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.bound as usize + 1];
        for (m, c) in self.poly.terms() {
            out[z_degree(m) as usize] += c;
        }
        out
    }

    /// Integer coefficients of a univariate series; `None` if any is not an integer.
    pub fn integer_coefficients(&self) -> Option<Vec<i64>> {
        self.z_coefficients()
            .iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            write!(f, "0")?;
        } else {
            // ascending z-degree reads naturally for series
            let mut terms: Vec<_> = self.poly.terms().collect();
            terms.sort_by(|a, b| z_degree(a.0).cmp(&z_degree(b.0)).then(b.0.cmp(a.0)));
            let p = terms
                .into_iter()
                .map(|(m, c)| Poly::monomial(m.clone(), c.clone()).to_string());
            let mut first = true;
            for s in p {
                if first {
                    write!(f, "{s}")?;
                    first = false;
                } else if let Some(rest) = s.strip_prefix('-') {
                    write!(f, " - {rest}")?;
                } else {
                    write!(f, " + {s}")?;
                }
            }
        }
        write!(f, " + O(z^{})", self.bound + 1)
    }
}

fn zvars(d: usize) -> Vec<Var> {
    (1..=d).map(|i| Var::new('z', i as u32)).collect()
}

/// `prod_i 1/(1 - z_i)` over `z1..zd`.
pub fn hilbert_polyring(d: usize, bound: u32) -> TruncatedSeries {
    let vars = zvars(d);
    let mut s = TruncatedSeries::one(vars.clone(), bound);
    for v in vars {
        s = s.div_one_minus(&Monomial::var(v), &Rational::one());
    }
    s
}

fn metabelian_from(sum: TruncatedSeries, poly_ring: TruncatedSeries) -> TruncatedSeries {
    let one = TruncatedSeries::one([], poly_ring.bound());
    one.add(&sum).add(&sum.sub(&one).mul(&poly_ring))
}

/// `H(F_d) = 1 + sum z_i + (sum z_i - 1) prod 1/(1 - z_i)`.
pub fn hilbert_metabelian(d: usize, bound: u32) -> TruncatedSeries {
    let vars = zvars(d);
    let sum = TruncatedSeries::new(
        vars.clone(),
        Poly::from_terms(vars.iter().map(|&v| (Monomial::var(v), Rational::one()))),
        bound,
    );
    metabelian_from(sum, hilbert_polyring(d, bound))
}

/// `H(F_d') = H(F_d) - sum z_i`.
pub fn hilbert_commutator_ideal(d: usize, bound: u32) -> TruncatedSeries {
    let vars = zvars(d);
    let sum = TruncatedSeries::new(
        vars.clone(),
        Poly::from_terms(vars.iter().map(|&v| (Monomial::var(v), Rational::one()))),
        bound,
    );
    hilbert_metabelian(d, bound).sub(&sum)
}

fn weight_monomial(spec: &ModuleSpec, j: usize) -> Monomial {
    let (p, q) = spec.weight(j).expect("index within spec");
    Monomial::from_pairs([(t1(), p), (t2(), q), (Var::z(), 1)])
}

/// Replaces `z_j` by `t1^(k-l) t2^l z` for `x_j = xi_l` of `V_k`.
pub fn weight_substitute(h: &TruncatedSeries, spec: &ModuleSpec) -> Result<TruncatedSeries> {
    let zs: Vec<Var> = h
        .vars()
        .iter()
        .copied()
        .filter(|v| v.letter() == 'z')
        .collect();
    if zs.len() != spec.dim() || zs.iter().any(|v| v.index() == 0 || v.index() > spec.dim()) {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            actual: zs.len(),
        });
    }
    let images = zs
        .iter()
        .map(|&v| {
            (
                v,
                Poly::monomial(weight_monomial(spec, v.index()), Rational::one()),
            )
        })
        .collect();
    let mut out = h.substitute(&images);
    out.vars.extend([t1(), t2(), Var::z()]);
    Ok(out)
}

fn character_vars() -> [Var; 3] {
    [t1(), t2(), Var::z()]
}

/// `H_GL2(K[X_d], t1, t2, z)` computed directly as `prod_j 1/(1 - w_j z)`.
pub fn polyring_character(spec: &ModuleSpec, bound: u32) -> TruncatedSeries {
    let mut s = TruncatedSeries::one(character_vars(), bound);
    for j in 1..=spec.dim() {
        s = s.div_one_minus(&weight_monomial(spec, j), &Rational::one());
    }
    s
}

fn linear_character(spec: &ModuleSpec, bound: u32) -> TruncatedSeries {
    let p = Poly::from_terms((1..=spec.dim()).map(|j| (weight_monomial(spec, j), Rational::one())));
    TruncatedSeries::new(character_vars(), p, bound)
}

/// `H_GL2(F_d, t1, t2, z)`.
pub fn metabelian_character(spec: &ModuleSpec, bound: u32) -> TruncatedSeries {
    metabelian_from(
        linear_character(spec, bound),
        polyring_character(spec, bound),
    )
}

/// `H_GL2(F_d', t1, t2, z)`.
pub fn commutator_character(spec: &ModuleSpec, bound: u32) -> TruncatedSeries {
    metabelian_character(spec, bound).sub(&linear_character(spec, bound))
}

/// Schur function `S_(k+l, l)(t1, t2) = (t1 t2)^l (t1^k + t1^(k-1) t2 + ... + t2^k)`.
pub fn schur(k: u32, l: u32) -> Poly {
    Poly::from_terms((0..=k).map(|i| {
        (
            Monomial::from_pairs([(t1(), k - i + l), (t2(), i + l)]),
            Rational::one(),
        )
    }))
}

fn exponents(m: &Monomial) -> Result<(u32, u32)> {
    if m.vars().any(|v| v != t1() && v != t2() && v != Var::z()) {
        return Err(Error::NotACharacter(format!("unexpected variable in {m}")));
    }
    Ok((m.exponent(t1()), m.exponent(t2())))
}

/// Decomposes a `GL_2`-character in `t1, t2` (any `z`-power is ignored) into
/// Schur functions: `m(k, l) = c(k+l, l) - c(k+l+1, l-1)`.
pub fn decompose_character(chi: &Poly) -> Result<BTreeMap<(u32, u32), u64>> {
    let mut c: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (m, a) in chi.terms() {
        *c.entry(exponents(m)?).or_insert_with(Rational::zero) += a;
    }
    let get = |p: u32, q: u32| c.get(&(p, q)).cloned().unwrap_or_else(Rational::zero);
    let mut out = BTreeMap::new();
    for (&(p, q), a) in &c {
        if get(q, p) != *a {
            return Err(Error::NotACharacter(format!(
                "coefficient of t1^{p} t2^{q} is not symmetric"
            )));
        }
        if p < q {
            continue;
        }
        let m = if q == 0 {
            a.clone()
        } else {
            a - get(p + 1, q - 1)
        };
        if m.is_negative() || !m.is_integer() {
            return Err(Error::NotACharacter(format!(
                "multiplicity {m} at k={}, l={q}",
                p - q
            )));
        }
        let m = m
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::NotACharacter("multiplicity overflow".into()))?;
        if m > 0 {
            out.insert((p - q, q), m);
        }
    }
    // weights of the form (p+1, q-1) with no (p, q) partner also need m >= 0
    for (&(p, q), _) in c.iter().filter(|((p, q), _)| p > q) {
        if q < p - 1 && !c.contains_key(&(p - 1, q + 1)) {
            return Err(Error::NotACharacter(format!(
                "missing weight t1^{} t2^{}",
                p - 1,
                q + 1
            )));
        }
    }
    Ok(out)
}

/// Multiplicities `m_n(k, l)` of `det^l (x) V_k` in the degree-`n` component.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MultiplicityTable {
    bound: u32,
    entries: BTreeMap<(u32, u32, u32), u64>,
}

impl MultiplicityTable {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn entries(&self) -> &BTreeMap<(u32, u32, u32), u64> {
        &self.entries
    }

    /// `m_n(k, l)`.
    pub fn get(&self, n: u32, k: u32, l: u32) -> u64 {
        self.entries.get(&(n, k, l)).copied().unwrap_or(0)
    }

    /// `M(t1, t2, z) = sum m_n(k, l) t1^(k+l) t2^l z^n`.
    pub fn m_series(&self) -> TruncatedSeries {
        let p = Poly::from_terms(self.entries.iter().map(|(&(n, k, l), &m)| {
            (
                Monomial::from_pairs([(t1(), k + l), (t2(), l), (Var::z(), n)]),
                Rational::from_integer(m.into()),
            )
        }));
        TruncatedSeries::new(character_vars(), p, self.bound)
    }

    /// `M'(t, u, z) = sum m_n(k, l) t^k u^l z^n`.
    pub fn m_prime_series(&self) -> TruncatedSeries {
        let (t, u) = (Var::new('t', 0), Var::new('u', 0));
        let p = Poly::from_terms(self.entries.iter().map(|(&(n, k, l), &m)| {
            (
                Monomial::from_pairs([(t, k), (u, l), (Var::z(), n)]),
                Rational::from_integer(m.into()),
            )
        }));
        TruncatedSeries::new([t, u, Var::z()], p, self.bound)
    }
}

/// Splits every `z`-degree slice of a `GL_2`-character series into irreducibles.
pub fn extract_multiplicities(hgl: &TruncatedSeries) -> Result<MultiplicityTable> {
    let mut entries = BTreeMap::new();
    for (n, slice) in hgl.slices().into_iter().enumerate() {
        for ((k, l), m) in decompose_character(&slice)? {
            entries.insert((n as u32, k, l), m);
        }
    }
    Ok(MultiplicityTable {
        bound: hgl.bound,
        entries,
    })
}

/// `H(A^SL2, z) = M'(0, 1, z) = sum_n sum_l m_n(0, l) z^n`.
pub fn invariant_hilbert(table: &MultiplicityTable) -> TruncatedSeries {
    let mut c = vec![Rational::zero(); table.bound as usize + 1];
    for (&(n, k, _), &m) in &table.entries {
        if k == 0 {
            c[n as usize] += Rational::from_integer(m.into());
        }
    }
    TruncatedSeries::univariate(&c, table.bound)
}

/// Outcome of [`verify_symmetrization`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetrizationCheck {
    pub holds: bool,
    pub diagnostic: Option<String>,
}

/// Checks `H = (t1 f(t1, t2, z) - t2 f(t2, t1, z)) / (t1 - t2)` coefficientwise.
pub fn verify_symmetrization(
    candidate: &TruncatedSeries,
    hgl: &TruncatedSeries,
) -> SymmetrizationCheck {
    let bound = candidate.bound.min(hgl.bound);
    let f = TruncatedSeries::new([], candidate.poly.clone(), bound).poly;
    let swapped = f.map_vars(|v| {
        if v == t1() {
            t2()
        } else if v == t2() {
            t1()
        } else {
            v
        }
    });
    let numer = &f.mul_monomial(&Monomial::var(t1()), &Rational::one())
        - &swapped.mul_monomial(&Monomial::var(t2()), &Rational::one());
    let divisor = &Poly::var(t1()) - &Poly::var(t2());
    let (q, r) = numer.div_rem(&divisor);
    if !r.is_zero() {
        return SymmetrizationCheck {
            holds: false,
            diagnostic: Some(format!(
                "numerator is not divisible by t1 - t2 (remainder {r})"
            )),
        };
    }
    let target = TruncatedSeries::new([], hgl.poly.clone(), bound).poly;
    let diff = &q - &target;
    match diff.terms().map(|(m, _)| z_degree(m)).min() {
        None => SymmetrizationCheck {
            holds: true,
            diagnostic: None,
        },
        Some(n) => SymmetrizationCheck {
            holds: false,
            diagnostic: Some(format!("mismatch at z-degree {n}")),
        },
    }
}

/// Taylor expansion of `numer / prod denoms` in `z` up to `z^bound`.
pub fn expand_rational(numer: &Poly, denoms: &[Poly], bound: u32) -> Result<TruncatedSeries> {
    let mut s = TruncatedSeries::new([Var::z()], numer.clone(), bound);
    for d in denoms {
        if d.constant_term().is_zero() {
            return Err(Error::ZeroConstantTerm(d.to_string()));
        }
        let inv = TruncatedSeries::new([Var::z()], d.clone(), bound).inverse()?;
        s = s.mul(&inv);
    }
    Ok(s)
}

/// Parses `numer / (1-z^2)(1-z^3)` style text and expands it.
pub fn expand_rational_str(s: &str, bound: u32) -> Result<TruncatedSeries> {
    let (numer, denoms) = parse_rational_function(s)?;
    expand_rational(&numer, &denoms, bound)
}

/// Character of `V_k`: `t1^k + t1^(k-1) t2 + ... + t2^k`.
pub fn vk_character(k: u32) -> Poly {
    schur(k, 0)
}

/// Character of `V_k (x) V_m`.
pub fn tensor_character(k: u32, m: u32) -> Poly {
    &vk_character(k) * &vk_character(m)
}

fn basis_weights(k: u32) -> Vec<Monomial> {
    (0..=k)
        .map(|i| Monomial::from_pairs([(t1(), k - i), (t2(), i)]))
        .collect()
}

/// Character of the symmetric square: products `w_i w_j`, `i <= j`.
pub fn sym_square_character(k: u32) -> Poly {
    let w = basis_weights(k);
    let mut out = Poly::zero();
    for i in 0..w.len() {
        for j in i..w.len() {
            out.add_term(w[i].mul(&w[j]), Rational::one());
        }
    }
    out
}

/// Character of the skew-symmetric square: products `w_i w_j`, `i < j`.
pub fn skew_square_character(k: u32) -> Poly {
    let w = basis_weights(k);
    let mut out = Poly::zero();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            out.add_term(w[i].mul(&w[j]), Rational::one());
        }
    }
    out
}

/// Which graded object a Hilbert series describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Target {
    Polyring,
    Metabelian,
    InvariantRing,
    InvariantModule,
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polyring" => Ok(Target::Polyring),
            "metabelian" => Ok(Target::Metabelian),
            "invariant-ring" => Ok(Target::InvariantRing),
            "invariant-module" => Ok(Target::InvariantModule),
            other => Err(Error::InvalidArgument(format!(
                "unknown target {other:?} (expected polyring, metabelian, invariant-ring or invariant-module)"
            ))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Target::Polyring => "polyring",
            Target::Metabelian => "metabelian",
            Target::InvariantRing => "invariant-ring",
            Target::InvariantModule => "invariant-module",
        })
    }
}

/// Univariate Hilbert series of the chosen object, truncated at `bound`.
pub fn hilbert_series(spec: &ModuleSpec, target: Target, bound: u32) -> Result<TruncatedSeries> {
    let z = Monomial::var(Var::z());
    let d = spec.dim();
    let poly_ring = (0..d).fold(TruncatedSeries::one([Var::z()], bound), |s, _| {
        s.div_one_minus(&z, &Rational::one())
    });
    let lin = TruncatedSeries::new(
        [Var::z()],
        Poly::monomial(z.clone(), Rational::from_integer(d.into())),
        bound,
    );
    Ok(match target {
        Target::Polyring => poly_ring,
        Target::Metabelian => metabelian_from(lin, poly_ring),
        Target::InvariantRing => {
            invariant_hilbert(&extract_multiplicities(&polyring_character(spec, bound))?)
        }
        Target::InvariantModule => {
            invariant_hilbert(&extract_multiplicities(&commutator_character(spec, bound))?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn spec(s: &str) -> ModuleSpec {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.integer_coefficients().unwrap()
    }

    #[test]
    fn polyring_series() {
        let h = hilbert_polyring(1, 3);
        assert_eq!(h.poly(), &p("1 + z1 + z1^2 + z1^3"));
        let h = hilbert_polyring(2, 4);
        assert_eq!(
            h.coefficient(&p("z1*z2").leading_term().unwrap().0.clone()),
            rat(1)
        );
        let h = hilbert_polyring(3, 4);
        assert_eq!(h.slice(2).len(), 6);
    }

    #[test]
    fn metabelian_series() {
        let h = hilbert_metabelian(2, 5);
        let mono = |s: &str| p(s).leading_term().unwrap().0.clone();
        assert_eq!(h.coefficient(&mono("z1*z2")), rat(1));
        assert_eq!(h.coefficient(&mono("z1^2*z2")), rat(1));
        assert_eq!(h.coefficient(&Monomial::one()), rat(0));
        assert_eq!(h.coefficient(&mono("z1")), rat(1));
        assert_eq!(h.coefficient(&mono("z1^2")), rat(0));
        assert_eq!(hilbert_metabelian(1, 4).poly(), &p("z1"));
    }

    #[test]
    fn weight_substitution() {
        let h = weight_substitute(&hilbert_polyring(2, 3), &spec("1")).unwrap();
        assert_eq!(h.slice(1), p("t1*z + t2*z"));
        let h = weight_substitute(&hilbert_polyring(1, 3), &spec("0")).unwrap();
        assert_eq!(h.slice(1), p("z"));
        let h = weight_substitute(&hilbert_polyring(3, 3), &spec("2")).unwrap();
        assert_eq!(h.slice(1), p("t1^2*z + t1*t2*z + t2^2*z"));
        assert!(weight_substitute(&hilbert_polyring(3, 3), &spec("1")).is_err());
    }

    #[test]
    fn direct_characters_match_weight_substitution() {
        for s in ["1", "2", "1,1", "2,0", "3"] {
            let s = spec(s);
            let d = s.dim();
            assert_eq!(
                polyring_character(&s, 6).poly(),
                weight_substitute(&hilbert_polyring(d, 6), &s)
                    .unwrap()
                    .poly()
            );
            assert_eq!(
                commutator_character(&s, 6).poly(),
                weight_substitute(&hilbert_commutator_ideal(d, 6), &s)
                    .unwrap()
                    .poly()
            );
        }
    }

    #[test]
    fn decomposition_examples() {
        let m = decompose_character(&p("t1^2 + t1*t2 + t2^2")).unwrap();
        assert_eq!(m, BTreeMap::from([((2, 0), 1)]));
        let m = decompose_character(&p("t1^2 + t1*t2 + t2^2").pow(2)).unwrap();
        assert_eq!(m, BTreeMap::from([((4, 0), 1), ((2, 1), 1), ((0, 2), 1)]));
        let m = decompose_character(&skew_square_character(3)).unwrap();
        assert_eq!(m, BTreeMap::from([((4, 1), 1), ((0, 3), 1)]));
        assert!(matches!(
            decompose_character(&p("t1")),
            Err(Error::NotACharacter(_))
        ));
        assert!(matches!(
            decompose_character(&p("t1^2 + t2^2")),
            Err(Error::NotACharacter(_))
        ));
    }

    #[test]
    fn invariant_series_examples() {
        let ring = hilbert_series(&spec("2"), Target::InvariantRing, 6).unwrap();
        assert_eq!(ints(&ring), vec![1, 0, 1, 0, 1, 0, 1]);
        let module = hilbert_series(&spec("2"), Target::InvariantModule, 6).unwrap();
        assert_eq!(ints(&module), vec![0; 7]);
        let module = hilbert_series(&spec("3"), Target::InvariantModule, 6).unwrap();
        assert_eq!(ints(&module), vec![0, 0, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn symmetrization() {
        let f = TruncatedSeries::new([], p("t1^2*z"), 1);
        let h = TruncatedSeries::new([], &schur(2, 0) * &p("z"), 1);
        assert!(verify_symmetrization(&f, &h).holds);
        let bad = TruncatedSeries::new([], p("t1^2*z + t1*z"), 1);
        let check = verify_symmetrization(&bad, &h);
        assert!(!check.holds);
        assert!(check.diagnostic.is_some());
        let s = spec("2,1");
        let hgl = polyring_character(&s, 8);
        let table = extract_multiplicities(&hgl).unwrap();
        assert!(verify_symmetrization(&table.m_series(), &hgl).holds);
    }

    #[test]
    fn rational_expansion() {
        assert_eq!(
            ints(&expand_rational_str("1/(1-z^2)", 5).unwrap()),
            vec![1, 0, 1, 0, 1, 0]
        );
        assert_eq!(
            ints(&expand_rational_str("z^2/(1-z^4)", 10).unwrap()),
            vec![0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1]
        );
        assert_eq!(
            ints(&expand_rational_str("(6z^2-z^6)/(1-z^2)^3", 4).unwrap()),
            vec![0, 0, 6, 0, 18]
        );
        assert!(matches!(
            expand_rational(&Poly::one(), &[p("z")], 3),
            Err(Error::ZeroConstantTerm(_))
        ));
    }

    #[test]
    fn m_prime_rendering() {
        let table = extract_multiplicities(&polyring_character(&spec("2"), 2)).unwrap();
        let mp = table.m_prime_series();
        // degree 2: S^2 V_2 = V_4 + det^2 V_0
        assert_eq!(mp.slice(2), p("t^4*z^2 + u^2*z^2"));
        assert_eq!(table.get(2, 0, 2), 1);
    }

    #[test]
    fn univariate_targets() {
        assert_eq!(
            ints(&hilbert_series(&spec("1"), Target::Polyring, 3).unwrap()),
            vec![1, 2, 3, 4]
        );
        // F_2: x1, x2 in degree 1, one commutator word of each multidegree above
        assert_eq!(
            ints(&hilbert_series(&spec("1"), Target::Metabelian, 4).unwrap()),
            vec![0, 2, 1, 2, 3]
        );
    }
}
