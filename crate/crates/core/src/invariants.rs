//! Constructive `SL_2`-invariant theory of `K[X_d]` and `F_d`.
//!
//! Besides explicit families (`pi(f1, f2)`, the quadratic `w`-invariants,
//! discriminants of binary forms) this module computes invariant bases of a
//! homogeneous component directly as the common kernel of `delta_1` and
//! `delta_2` on its `(p, p)`-weight part, and decides finite generation of
//! `F_d^SL2` from the block structure.

use std::collections::BTreeMap;

use num_traits::One;
use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::linalg::{kernel, SparseVec};
use crate::metabelian::{LieExpr, Metabelian, WreathElement};
use crate::poly::{binomial, rat, Monomial, Poly, Rational, Var};
use crate::sl2::{Derivation, ModuleSpec};

fn check_homogeneous(f: &Poly) -> Result<()> {
    if f.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous(f.to_string()))
    }
}

/// `pi(f1, f2) = sum_{i<j} (a_i y_j - a_j y_i) J_ij(f1, f2)(Y)`.
pub fn pi(f1: &Poly, f2: &Poly, alg: &Metabelian) -> Result<WreathElement> {
    check_homogeneous(f1)?;
    check_homogeneous(f2)?;
    let g1 = alg.x_to_y(f1)?;
    let g2 = alg.x_to_y(f2)?;
    let d = alg.dim();
    let d1: Vec<Poly> = (1..=d).map(|i| g1.partial(Var::y(i))).collect();
    let d2: Vec<Poly> = (1..=d).map(|i| g2.partial(Var::y(i))).collect();
    let mut a_parts = vec![Poly::zero(); d];
    for i in 0..d {
        for j in i + 1..d {
            let jac = &(&d1[i] * &d2[j]) - &(&d1[j] * &d2[i]);
            if jac.is_zero() {
                continue;
            }
            a_parts[i] += jac.mul_monomial(&Monomial::var(Var::y(j + 1)), &Rational::one());
            a_parts[j] -= jac.mul_monomial(&Monomial::var(Var::y(i + 1)), &Rational::one());
        }
    }
    Ok(WreathElement::from_a_parts(a_parts))
}

/// `[f1(A + Y), f2(A + Y)]` computed with the product and bracket of `R_d`.
pub fn pi_via_bracket(f1: &Poly, f2: &Poly, alg: &Metabelian) -> Result<WreathElement> {
    check_homogeneous(f1)?;
    check_homogeneous(f2)?;
    let b = alg.embed(f1)?.bracket(&alg.embed(f2)?)?;
    Ok(b.to_wreath().expect("brackets have no Y-part"))
}

/// `w_{2m+1} = sum_{i=1}^{2m+1} C(2m, i-1) (-1)^(i-1) x_i x_{2m+2-i}`, invariant for `V_{2m}`.
pub fn w_poly(m: u32) -> Result<Poly> {
    if m == 0 {
        return Err(Error::InvalidArgument("w_poly needs m >= 1".into()));
    }
    let mut out = Poly::zero();
    for i in 1..=2 * m + 1 {
        let c = Rational::from_integer(binomial(2 * m, i - 1))
            * rat(if (i - 1) % 2 == 0 { 1 } else { -1 });
        let mono =
            Monomial::var(Var::x(i as usize)).mul(&Monomial::var(Var::x((2 * m + 2 - i) as usize)));
        out.add_term(mono, c);
    }
    Ok(out)
}

/// `w_{2m+2} = 2 sum_{i=1}^{m+1} C(2m+1, i-1) (-1)^(i-1) [x_i, x_{2m+3-i}]`, invariant for `V_{2m+1}`.
pub fn w_lie(m: u32) -> LieExpr {
    let terms = (1..=m + 1)
        .map(|i| {
            let c = Rational::from_integer(binomial(2 * m + 1, i - 1))
                * rat(if (i - 1) % 2 == 0 { 1 } else { -1 });
            let br = LieExpr::commutator(&[i as usize, (2 * m + 3 - i) as usize]);
            if c.is_one() {
                br
            } else {
                LieExpr::scale(c, br)
            }
        })
        .collect();
    LieExpr::scale(rat(2), LieExpr::Sum(terms))
}

/// Fraction-free determinant of a square matrix of polynomials.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = m.len();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = !sign;
                }
                None => return Ok(Poly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { -det } else { det })
}

/// Discriminant of `f(t) = sum_j C(k, j) x_{j+1} t^(k-j)`: the resultant of `f`
/// and `f'` divided by the leading coefficient `x_1`, made primitive.
pub fn discriminant(k: u32) -> Result<Poly> {
    if k < 2 {
        return Err(Error::InvalidArgument("discriminant needs k >= 2".into()));
    }
    let k = k as usize;
    // coefficients in decreasing powers of t
    let f: Vec<Poly> = (0..=k)
        .map(|j| {
            Poly::var(Var::x(j + 1)).scale(&Rational::from_integer(binomial(k as u32, j as u32)))
        })
        .collect();
    let df: Vec<Poly> = (0..k).map(|j| f[j].scale(&rat((k - j) as i64))).collect();
    let size = 2 * k - 1;
    let mut sylvester = vec![vec![Poly::zero(); size]; size];
    for r in 0..k - 1 {
        for (j, c) in f.iter().enumerate() {
            sylvester[r][r + j] = c.clone();
        }
    }
    for r in 0..k {
        for (j, c) in df.iter().enumerate() {
            sylvester[k - 1 + r][r + j] = c.clone();
        }
    }
    let res = bareiss_det(sylvester)?;
    Ok(res.div_exact(&Poly::var(Var::x(1)))?.primitive())
}

/// Transcendence degree of `K[V_k]^SL2`, a classical fact recorded as metadata.
pub fn transcendence_degree(k: u32) -> u32 {
    match k {
        0 => 1,
        1 => 0,
        2 => 1,
        _ => k - 2,
    }
}

/// Which case of the classification produced a verdict.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictReason {
    TrivialAction,
    V1PlusTrivial,
    SingleV2,
    BlockOfDegreeAtLeast3,
    V2WithAnotherBlock,
    TwoV1Blocks,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GenerationVerdict {
    pub finitely_generated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    pub reason: VerdictReason,
}

/// Finite generation of `F_d^SL2`: true exactly for `V_1 + V_0 + ... + V_0`,
/// `V_2`, and the trivial action.
pub fn decide_finite_generation(spec: &ModuleSpec) -> GenerationVerdict {
    let sorted = spec.sorted_blocks();
    let trivial_vars = || -> Vec<String> {
        (1..=spec.dim())
            .filter(|&j| spec.locate(j).map(|(_, k, _)| k == 0).unwrap_or(false))
            .map(|j| format!("x{j}"))
            .collect()
    };
    let yes = |generators: Vec<String>, reason| GenerationVerdict {
        finitely_generated: true,
        generators: Some(generators),
        reason,
    };
    let no = |reason| GenerationVerdict {
        finitely_generated: false,
        generators: None,
        reason,
    };
    if sorted[0] == 0 {
        return yes(trivial_vars(), VerdictReason::TrivialAction);
    }
    if sorted[0] >= 3 {
        return no(VerdictReason::BlockOfDegreeAtLeast3);
    }
    if sorted[0] == 2 {
        return if sorted.len() == 1 {
            yes(Vec::new(), VerdictReason::SingleV2)
        } else {
            no(VerdictReason::V2WithAnotherBlock)
        };
    }
    if sorted.len() > 1 && sorted[1] == 1 {
        return no(VerdictReason::TwoV1Blocks);
    }
    let b = spec
        .blocks()
        .iter()
        .position(|&k| k == 1)
        .expect("one V1 block");
    let o = spec.offsets()[b];
    let mut gens = vec![format!("[x{},x{}]", o + 2, o + 1)];
    gens.extend(trivial_vars());
    yes(gens, VerdictReason::V1PlusTrivial)
}

/// Monomials of total degree `n` in the given letter over the given variable indices.
pub fn monomials(letter: char, indices: &[usize], n: u32) -> Vec<Monomial> {
    fn rec(
        letter: char,
        idx: &[usize],
        n: u32,
        acc: &mut Vec<(Var, u32)>,
        out: &mut Vec<Monomial>,
    ) {
        match idx.split_first() {
            None => {
                if n == 0 {
                    out.push(Monomial::from_pairs(acc.iter().copied()));
                }
            }
            Some((&j, rest)) => {
                for e in (0..=n).rev() {
                    if e > 0 {
                        acc.push((Var::new(letter, j as u32), e));
                    }
                    rec(letter, rest, n - e, acc, out);
                    if e > 0 {
                        acc.pop();
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(letter, indices, n, &mut Vec::new(), &mut out);
    out
}

fn tag_keys<K: Ord + Clone>(tag: u8, v: SparseVec<K>) -> impl Iterator<Item = ((u8, K), Rational)> {
    v.into_iter().map(move |(k, c)| ((tag, k), c))
}

fn poly_kernel_basis(spec: &ModuleSpec, n: u32, indices: &[usize]) -> Result<Vec<Poly>> {
    let delta = [Derivation::delta1(spec), Derivation::delta2(spec)];
    let mut groups: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in monomials('x', indices, n) {
        let (p, q) = spec.monomial_weight(&m)?;
        if p == q {
            groups.entry(p).or_default().push(m);
        }
    }
    let mut out = Vec::new();
    for cols in groups.into_values() {
        let mut images = Vec::with_capacity(cols.len());
        for m in &cols {
            let p = Poly::monomial(m.clone(), Rational::one());
            let mut img: SparseVec<(u8, Monomial)> = SparseVec::new();
            for (t, dlt) in delta.iter().enumerate() {
                img.extend(tag_keys(
                    t as u8,
                    dlt.apply_poly(&p)?.into_terms().collect(),
                ));
            }
            images.push(img);
        }
        for rel in kernel(images) {
            out.push(Poly::from_terms(
                rel.into_iter().map(|(i, c)| (cols[i].clone(), c)),
            ));
        }
    }
    Ok(out)
}

/// Basis of the degree-`n` component of `K[X_d]^SL2`.
pub fn ring_invariant_basis(spec: &ModuleSpec, n: u32) -> Result<Vec<Poly>> {
    let all: Vec<usize> = (1..=spec.dim()).collect();
    poly_kernel_basis(spec, n, &all)
}

/// Basis of the degree-`n` component (`n >= 2`) of `(F_d')^SL2`, as elements of `R_d`.
pub fn module_invariant_basis(spec: &ModuleSpec, n: u32) -> Result<Vec<WreathElement>> {
    let d = spec.dim();
    if n < 2 {
        return Ok(Vec::new());
    }
    let delta = [Derivation::delta1(spec), Derivation::delta2(spec)];
    let all: Vec<usize> = (1..=d).collect();
    let tails = monomials('y', &all, n - 1);
    let mut groups: BTreeMap<u32, Vec<(usize, Monomial)>> = BTreeMap::new();
    for i in 1..=d {
        let (wp, wq) = spec.weight(i)?;
        for q in &tails {
            let (p, r) = spec.monomial_weight(q)?;
            if p + wp == r + wq {
                groups.entry(p + wp).or_default().push((i, q.clone()));
            }
        }
    }
    let mut out = Vec::new();
    for cols in groups.into_values() {
        let mut images = Vec::with_capacity(cols.len());
        for (i, q) in &cols {
            let mut e = SparseVec::new();
            e.insert((*i, q.clone()), Rational::one());
            let u = WreathElement::from_sparse(d, &e);
            let mut img: SparseVec<(u8, (usize, Monomial))> = SparseVec::new();
            for (t, dlt) in delta.iter().enumerate() {
                img.extend(tag_keys(t as u8, dlt.apply_wreath(&u)?.to_sparse()));
            }
            // membership in F_d': sum_i y_i f_i = 0
            img.insert((2, (0, q.mul(&Monomial::var(Var::y(*i))))), Rational::one());
            images.push(img);
        }
        for rel in kernel(images) {
            let v: SparseVec<(usize, Monomial)> =
                rel.into_iter().map(|(k, c)| (cols[k].clone(), c)).collect();
            out.push(WreathElement::from_sparse(d, &v));
        }
    }
    Ok(out)
}

/// Homogeneous invariant bases of `(F_d')^SL2` and `omega(K[X_d])^SL2`, indexed by degree.
#[derive(Clone, Debug, Default)]
pub struct InvariantBases {
    pub module: Vec<Vec<WreathElement>>,
    pub ring: Vec<Vec<Poly>>,
}

impl InvariantBases {
    /// Direct kernel computation in degrees `0..=bound`.
    pub fn compute(spec: &ModuleSpec, bound: u32) -> Result<Self> {
        let mut module = Vec::new();
        let mut ring = Vec::new();
        for n in 0..=bound {
            module.push(module_invariant_basis(spec, n)?);
            ring.push(if n == 0 {
                Vec::new()
            } else {
                ring_invariant_basis(spec, n)?
            });
        }
        Ok(InvariantBases { module, ring })
    }
}

/// Basis of `(F_d')^SL2` up to degree `bound` when `x_d` spans a trailing `V_0`:
/// `v_i ad^n x_d` and `pi(x_d, u_j) ad^n x_d`, from bases for the first `d - 1` variables.
pub fn extend_by_trivial_variable(
    spec: &ModuleSpec,
    base: &InvariantBases,
    bound: u32,
) -> Result<Vec<Vec<WreathElement>>> {
    if spec.blocks().last() != Some(&0) {
        return Err(Error::NoTrivialBlock(spec.to_string()));
    }
    let d = spec.dim();
    if d < 2 {
        return Err(Error::InvalidSpec(format!(
            "{spec} has no variables besides the trivial one"
        )));
    }
    let alg = Metabelian::new(d)?;
    let xd = Poly::var(Var::x(d));
    let yd = Poly::var(Var::y(d));
    let mut out = vec![Vec::new(); bound as usize + 1];
    let mut seeds: Vec<(u32, WreathElement)> = Vec::new();
    for (n, vs) in base.module.iter().enumerate() {
        seeds.extend(vs.iter().map(|v| (n as u32, v.lift(d))));
    }
    for (n, us) in base.ring.iter().enumerate() {
        for u in us {
            seeds.push((n as u32 + 1, pi(&xd, u, &alg)?));
        }
    }
    for (deg, seed) in seeds {
        let mut cur = seed;
        for n in deg..=bound {
            out[n as usize].push(cur.clone());
            cur = cur.mul_a_parts(&yd);
        }
    }
    Ok(out)
}

/// The bases of [`extend_by_trivial_variable`] with the base computed by kernels.
pub fn extended_basis(spec: &ModuleSpec, bound: u32) -> Result<Vec<Vec<WreathElement>>> {
    let blocks = spec.blocks();
    if blocks.last() != Some(&0) {
        return Err(Error::NoTrivialBlock(spec.to_string()));
    }
    if blocks.len() < 2 {
        return Err(Error::InvalidSpec(format!(
            "{spec} has no variables besides the trivial one"
        )));
    }
    let base_spec = ModuleSpec::new(blocks[..blocks.len() - 1].to_vec())?;
    let base = InvariantBases::compute(&base_spec, bound)?;
    extend_by_trivial_variable(spec, &base, bound)
}

/// The sequence `u, u.f, u.f^2, ...` of invariants of strictly increasing degree.
#[derive(Clone, Debug)]
pub struct WitnessFamily {
    pub u: WreathElement,
    pub f: Poly,
    f_y: Poly,
    next: WreathElement,
}

impl Iterator for WitnessFamily {
    type Item = WreathElement;
    fn next(&mut self) -> Option<WreathElement> {
        let out = self.next.clone();
        self.next = self.next.mul_a_parts(&self.f_y);
        Some(out)
    }
}

const WITNESS_SEARCH_DEGREE: u32 = 10;

/// A pair `u` in `(F_d')^SL2`, `f` in `K[X_d]^SL2` of positive degree in the
/// nontrivial variables, giving invariants `u f^n`. Specs whose invariant
/// algebra is finitely generated have no witness.
pub fn infinite_family_witness(spec: &ModuleSpec) -> Result<WitnessFamily> {
    if decide_finite_generation(spec).finitely_generated {
        return Err(Error::NoWitness(spec.to_string()));
    }
    let alg = Metabelian::new(spec.dim())?;
    let (u, f) = match catalog::catalog().iter().find(|e| e.spec == *spec) {
        Some(e) if !e.module_generators.is_empty() && !e.ring_generators.is_empty() => (
            alg.eval(&e.module_generators[0])?,
            e.ring_generators[0].clone(),
        ),
        _ => {
            let nontrivial: Vec<usize> = (1..=spec.dim())
                .filter(|&j| spec.locate(j).map(|(_, k, _)| k > 0).unwrap_or(false))
                .collect();
            let u = (2..=WITNESS_SEARCH_DEGREE).find_map(|n| {
                module_invariant_basis(spec, n)
                    .ok()
                    .and_then(|b| b.into_iter().next())
            });
            let f = (1..=WITNESS_SEARCH_DEGREE).find_map(|n| {
                poly_kernel_basis(spec, n, &nontrivial)
                    .ok()
                    .and_then(|b| b.into_iter().next())
            });
            match (u, f) {
                (Some(u), Some(f)) => (u, f),
                _ => return Err(Error::NoWitness(spec.to_string())),
            }
        }
    };
    let f_y = alg.x_to_y(&f)?;
    Ok(WitnessFamily {
        next: u.clone(),
        u,
        f,
        f_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::{is_annihilated, is_invariant};

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn spec(s: &str) -> ModuleSpec {
        s.parse().unwrap()
    }

    #[test]
    fn pi_examples() {
        let alg = Metabelian::new(4).unwrap();
        let v = pi(&p("x4"), &p("x2^2 - x1*x3"), &alg).unwrap();
        let expected = alg
            .eval(&"2[x4,x2,x2] - [x4,x1,x3] - [x4,x3,x1]".parse().unwrap())
            .unwrap();
        assert_eq!(v, expected);
        assert_eq!(
            alg.to_lie_basis(&v).unwrap().to_string(),
            "2[x4,x2,x2] - 2[x4,x1,x3] + [x3,x1,x4]"
        );
        assert_eq!(
            pi_via_bracket(&p("x4"), &p("x2^2 - x1*x3"), &alg).unwrap(),
            v
        );
        let f = p("x1*x2 + x3^2");
        assert!(pi(&f, &f.pow(2), &alg).unwrap().is_zero());
        assert!(matches!(
            pi(&p("x1 + x2^2"), &f, &alg),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn pi_of_quintic_ring_generators() {
        let alg = Metabelian::new(5).unwrap();
        let f1 = p("x1*x5 - 4*x2*x4 + 3*x3^2");
        let f2 = p("-x1*x3*x5 - 2*x2*x3*x4 + x3^3 + x1*x4^2 + x2^2*x5");
        let v = pi(&f1, &f2, &alg).unwrap();
        assert!(!v.is_zero());
        assert!(alg.is_in_commutator_ideal(&v));
        assert!(is_invariant(&spec("4"), &v).unwrap());
    }

    #[test]
    fn w_families() {
        assert_eq!(w_poly(1).unwrap(), p("2*x1*x3 - 2*x2^2"));
        assert_eq!(w_poly(2).unwrap(), p("2*x1*x5 - 8*x2*x4 + 6*x3^2"));
        assert!(w_poly(0).is_err());
        let f2 = Metabelian::new(2).unwrap();
        assert_eq!(
            f2.eval(&w_lie(0)).unwrap(),
            f2.eval(&"2[x1,x2]".parse().unwrap()).unwrap()
        );
        let f4 = Metabelian::new(4).unwrap();
        assert_eq!(
            f4.eval(&w_lie(1)).unwrap(),
            f4.eval(&"2[x1,x4] - 6[x2,x3]".parse().unwrap()).unwrap()
        );
        let f6 = Metabelian::new(6).unwrap();
        assert_eq!(
            f6.eval(&w_lie(2)).unwrap(),
            f6.eval(&"2[x1,x6] - 10[x2,x5] + 20[x3,x4]".parse().unwrap())
                .unwrap()
        );
        for m in 1..=3u32 {
            let s = ModuleSpec::new(vec![2 * m]).unwrap();
            assert!(is_invariant(&s, &w_poly(m).unwrap()).unwrap());
            let s = ModuleSpec::new(vec![2 * m + 1]).unwrap();
            let alg = Metabelian::new(2 * m as usize + 2).unwrap();
            let w = alg.eval(&w_lie(m)).unwrap();
            assert!(is_invariant(&s, &w).unwrap());
            assert!(is_annihilated(&s, &w).unwrap());
        }
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant(2).unwrap(), p("x1*x3 - x2^2"));
        assert_eq!(
            discriminant(3).unwrap(),
            p("x1^2*x4^2 - 6*x1*x2*x3*x4 + 4*x1*x3^3 + 4*x2^3*x4 - 3*x2^2*x3^2")
        );
        for k in 2..=5 {
            let disc = discriminant(k).unwrap();
            assert_eq!(disc.total_degree(), 2 * (k - 1));
            assert!(disc.is_homogeneous());
            assert!(is_invariant(&ModuleSpec::new(vec![k]).unwrap(), &disc).unwrap());
        }
        assert!(discriminant(1).is_err());
    }

    #[test]
    fn decisions() {
        let v = decide_finite_generation(&spec("1,0,0"));
        assert!(v.finitely_generated);
        assert_eq!(v.generators.unwrap(), vec!["[x2,x1]", "x3", "x4"]);
        let v = decide_finite_generation(&spec("2"));
        assert!(v.finitely_generated);
        assert!(v.generators.unwrap().is_empty());
        assert!(!decide_finite_generation(&spec("3")).finitely_generated);
        let v = decide_finite_generation(&spec("0,1"));
        assert_eq!(v.generators.unwrap(), vec!["[x3,x2]", "x1"]);
        assert_eq!(
            decide_finite_generation(&spec("0,0")).generators.unwrap(),
            vec!["x1", "x2"]
        );
        assert_eq!(
            decide_finite_generation(&spec("1,1")).reason,
            VerdictReason::TwoV1Blocks
        );
        assert_eq!(
            decide_finite_generation(&spec("0,2")).reason,
            VerdictReason::V2WithAnotherBlock
        );
    }

    #[test]
    fn kernel_bases() {
        assert_eq!(ring_invariant_basis(&spec("2"), 2).unwrap().len(), 1);
        assert_eq!(ring_invariant_basis(&spec("2"), 3).unwrap().len(), 0);
        assert_eq!(ring_invariant_basis(&spec("1"), 2).unwrap().len(), 0);
        let b = module_invariant_basis(&spec("1"), 2).unwrap();
        assert_eq!(b.len(), 1);
        let alg = Metabelian::new(2).unwrap();
        assert_eq!(alg.to_lie_basis(&b[0]).unwrap().words.len(), 1);
        assert_eq!(module_invariant_basis(&spec("1"), 3).unwrap().len(), 0);
        assert_eq!(module_invariant_basis(&spec("3"), 2).unwrap().len(), 1);
        assert_eq!(module_invariant_basis(&spec("2"), 3).unwrap().len(), 0);
    }

    #[test]
    fn trivial_extensions() {
        let basis = extended_basis(&spec("1,0"), 5).unwrap();
        let alg = Metabelian::new(3).unwrap();
        let c = alg.eval(&"[x2,x1]".parse().unwrap()).unwrap();
        assert_eq!(basis[2], vec![c.clone()]);
        assert_eq!(basis[3], vec![alg.ad_action(&c, &p("x3")).unwrap()]);
        let basis = extended_basis(&spec("2,0"), 3).unwrap();
        assert_eq!(basis[3].len(), 1);
        let v20 = pi(&p("x4"), &p("x2^2 - x1*x3"), &Metabelian::new(4).unwrap()).unwrap();
        assert_eq!(
            crate::linalg::rank([basis[3][0].to_sparse(), v20.to_sparse()]),
            1
        );
        // trivial action: all commutators of length >= 2 in x1, x2
        let basis = extended_basis(&spec("0,0"), 5).unwrap();
        for (n, b) in basis.iter().enumerate().skip(2) {
            assert_eq!(b.len(), n - 1);
        }
        assert!(matches!(
            extended_basis(&spec("0,1"), 3),
            Err(Error::NoTrivialBlock(_))
        ));
    }

    #[test]
    fn witnesses() {
        assert!(matches!(
            infinite_family_witness(&spec("1")),
            Err(Error::NoWitness(_))
        ));
        assert!(matches!(
            infinite_family_witness(&spec("2")),
            Err(Error::NoWitness(_))
        ));
        for s in ["1,1", "2,0"] {
            let s = spec(s);
            let fam: Vec<_> = infinite_family_witness(&s).unwrap().take(4).collect();
            for w in fam.windows(2) {
                assert!(w[1].degree() > w[0].degree());
            }
            for w in &fam {
                assert!(!w.is_zero());
                assert!(is_invariant(&s, w).unwrap());
            }
        }
    }
}
