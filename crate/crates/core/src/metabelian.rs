//! The Poisson algebra `R_d = K[A_d, Y_d] / (a_i a_j)` and the free metabelian
//! Lie algebra `F_d` sitting inside it as the Lie subalgebra generated by
//! `x_j = a_j + y_j`.
//!
//! As a vector space `R_d` has basis `Y^q` and `a_i Y^q`. The bracket is
//! determined by `[a_i Y^p, Y^q] = |q| a_i Y^(p+q)` with all brackets among
//! pure `Y`-monomials and among `a`-terms zero. Elements of `F_d` are stored
//! as [`WreathElement`]s: a linear `y`-part plus `sum_i a_i f_i(Y)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{fmt_rational, rat, Monomial, Poly, Rational, Var};

/// A general element `p_0(Y) + sum_i a_i p_i(Y)` of the Poisson algebra `R_d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PoissonElement {
    d: usize,
    y_part: Poly,
    a_parts: Vec<Poly>,
}

impl PoissonElement {
    pub fn zero(d: usize) -> Self {
        PoissonElement {
            d,
            y_part: Poly::zero(),
            a_parts: vec![Poly::zero(); d],
        }
    }

    pub fn from_parts(d: usize, y_part: Poly, a_parts: Vec<Poly>) -> Result<Self> {
        if a_parts.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: a_parts.len(),
            });
        }
        Ok(PoissonElement { d, y_part, a_parts })
    }

    /// The basis element `Y^q` (`q` given as a monomial in the `y` variables).
    pub fn y_monomial(d: usize, q: Monomial) -> Self {
        let mut e = Self::zero(d);
        e.y_part = Poly::monomial(q, Rational::one());
        e
    }

    /// The basis element `a_i Y^q`, `1 <= i <= d`.
    pub fn a_monomial(d: usize, i: usize, q: Monomial) -> Self {
        let mut e = Self::zero(d);
        e.a_parts[i - 1] = Poly::monomial(q, Rational::one());
        e
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn y_part(&self) -> &Poly {
        &self.y_part
    }

    pub fn a_parts(&self) -> &[Poly] {
        &self.a_parts
    }

    pub fn is_zero(&self) -> bool {
        self.y_part.is_zero() && self.a_parts.iter().all(Poly::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::ContextMismatch {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PoissonElement {
            d: self.d,
            y_part: self.y_part.scale(c),
            a_parts: self.a_parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(PoissonElement {
            d: self.d,
            y_part: &self.y_part + &other.y_part,
            a_parts: self
                .a_parts
                .iter()
                .zip(&other.a_parts)
                .map(|(p, q)| p + q)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&rat(-1)))
    }

    /// Commutative product; `a_i a_j = 0`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let a_parts = self
            .a_parts
            .iter()
            .zip(&other.a_parts)
            .map(|(p, q)| &(p * &other.y_part) + &(&self.y_part * q))
            .collect();
        Ok(PoissonElement {
            d: self.d,
            y_part: &self.y_part * &other.y_part,
            a_parts,
        })
    }

    /// Poisson bracket: `[u, v] = sum_i a_i (u_i E(v_0) - v_i E(u_0))`, where
    /// `E` scales each `Y`-monomial by its degree.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let eu = self.y_part.euler();
        let ev = other.y_part.euler();
        let a_parts = self
            .a_parts
            .iter()
            .zip(&other.a_parts)
            .map(|(p, q)| &(p * &ev) - &(q * &eu))
            .collect();
        Ok(PoissonElement {
            d: self.d,
            y_part: Poly::zero(),
            a_parts,
        })
    }

    /// Reads the element as a Lie element of `F_d` when its `Y`-part is linear.
    pub fn to_wreath(&self) -> Option<WreathElement> {
        let mut y_linear = vec![Rational::zero(); self.d];
        for (m, c) in self.y_part.terms() {
            let [(v, 1)] = m.factors() else { return None };
            if v.letter() != 'y' || v.index() == 0 || v.index() > self.d {
                return None;
            }
            y_linear[v.index() - 1] = c.clone();
        }
        Some(WreathElement {
            d: self.d,
            y_linear,
            a_parts: self.a_parts.clone(),
        })
    }

    /// The element as one polynomial in the letters `a` and `y`.
    pub fn to_poly(&self) -> Poly {
        let mut out = self.y_part.clone();
        for (i, p) in self.a_parts.iter().enumerate() {
            out += p.mul_monomial(
                &Monomial::var(Var::new('a', i as u32 + 1)),
                &Rational::one(),
            );
        }
        out
    }
}

impl fmt::Display for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// An element `sum_j b_j y_j + sum_i a_i f_i(Y)` of the wreath product
/// `K A_d wr K Y_d`; the free metabelian Lie algebra lives here.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WreathElement {
    d: usize,
    y_linear: Vec<Rational>,
    a_parts: Vec<Poly>,
}

impl WreathElement {
    pub fn zero(d: usize) -> Self {
        WreathElement {
            d,
            y_linear: vec![Rational::zero(); d],
            a_parts: vec![Poly::zero(); d],
        }
    }

    /// `sum_i a_i f_i(Y)` with no linear part. `a_parts[i]` is a polynomial in `y`.
    pub fn from_a_parts(a_parts: Vec<Poly>) -> Self {
        let d = a_parts.len();
        WreathElement {
            d,
            y_linear: vec![Rational::zero(); d],
            a_parts,
        }
    }

    pub fn from_parts(y_linear: Vec<Rational>, a_parts: Vec<Poly>) -> Result<Self> {
        if y_linear.len() != a_parts.len() {
            return Err(Error::DimensionMismatch {
                expected: y_linear.len(),
                actual: a_parts.len(),
            });
        }
        Ok(WreathElement {
            d: y_linear.len(),
            y_linear,
            a_parts,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn y_linear(&self) -> &[Rational] {
        &self.y_linear
    }

    pub fn a_parts(&self) -> &[Poly] {
        &self.a_parts
    }

    pub fn is_zero(&self) -> bool {
        self.y_linear.iter().all(Zero::is_zero) && self.a_parts.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WreathElement {
            d: self.d,
            y_linear: self.y_linear.iter().map(|b| b * c).collect(),
            a_parts: self.a_parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every `a`-coefficient by a polynomial in `y`.
    pub(crate) fn mul_a_parts(&self, p: &Poly) -> Self {
        WreathElement {
            d: self.d,
            y_linear: vec![Rational::zero(); self.d],
            a_parts: self.a_parts.iter().map(|f| f * p).collect(),
        }
    }

    /// Lifts into `R_e` for `e >= d` (the extra `a`-parts are zero).
    pub fn lift(&self, e: usize) -> Self {
        assert!(e >= self.d);
        let mut out = self.clone();
        out.y_linear.resize(e, Rational::zero());
        out.a_parts.resize(e, Poly::zero());
        out.d = e;
        out
    }

    /// Total degree in `F_d`: `a_i` and `y_j` both count 1.
    pub fn degree(&self) -> u32 {
        let lin = if self.y_linear.iter().any(|b| !b.is_zero()) {
            1
        } else {
            0
        };
        self.a_parts
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.total_degree() + 1)
            .fold(lin, u32::max)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .a_parts
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.degree() + 1))
            .chain(self.y_linear.iter().filter(|b| !b.is_zero()).map(|_| 1));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn to_poisson(&self) -> PoissonElement {
        let y_part = Poly::from_terms(
            self.y_linear
                .iter()
                .enumerate()
                .map(|(j, b)| (Monomial::var(Var::y(j + 1)), b.clone())),
        );
        PoissonElement {
            d: self.d,
            y_part,
            a_parts: self.a_parts.clone(),
        }
    }

    /// Coordinates in the `R_d` basis: key `(0, y_j)` for the linear part and
    /// `(i, Y^q)` for `a_i Y^q`.
    pub fn to_sparse(&self) -> SparseVec<(usize, Monomial)> {
        let mut out = SparseVec::new();
        for (j, b) in self.y_linear.iter().enumerate() {
            if !b.is_zero() {
                out.insert((0, Monomial::var(Var::y(j + 1))), b.clone());
            }
        }
        for (i, p) in self.a_parts.iter().enumerate() {
            for (m, c) in p.terms() {
                out.insert((i + 1, m.clone()), c.clone());
            }
        }
        out
    }

    pub fn from_sparse(d: usize, v: &SparseVec<(usize, Monomial)>) -> Self {
        let mut out = WreathElement::zero(d);
        for ((i, m), c) in v {
            if *i == 0 {
                let [(y, 1)] = m.factors() else {
                    panic!("linear part must be linear")
                };
                out.y_linear[y.index() - 1] += c;
            } else {
                out.a_parts[i - 1].add_term(m.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poisson())
    }
}

impl<'a> Add<&'a WreathElement> for &'a WreathElement {
    type Output = WreathElement;

    /// Panics if the two elements come from algebras of different rank.
    fn add(self, rhs: &'a WreathElement) -> WreathElement {
        assert_eq!(self.d, rhs.d, "adding elements of different algebras");
        WreathElement {
            d: self.d,
            y_linear: self
                .y_linear
                .iter()
                .zip(&rhs.y_linear)
                .map(|(a, b)| a + b)
                .collect(),
            a_parts: self
                .a_parts
                .iter()
                .zip(&rhs.a_parts)
                .map(|(p, q)| p + q)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a WreathElement> for &'a WreathElement {
    type Output = WreathElement;

    fn sub(self, rhs: &'a WreathElement) -> WreathElement {
        self + &(-rhs)
    }
}

impl Add for WreathElement {
    type Output = WreathElement;
    fn add(self, rhs: WreathElement) -> WreathElement {
        &self + &rhs
    }
}

impl Sub for WreathElement {
    type Output = WreathElement;
    fn sub(self, rhs: WreathElement) -> WreathElement {
        &self - &rhs
    }
}

impl Neg for &WreathElement {
    type Output = WreathElement;
    fn neg(self) -> WreathElement {
        self.scale(&rat(-1))
    }
}

impl Neg for WreathElement {
    type Output = WreathElement;
    fn neg(self) -> WreathElement {
        self.scale(&rat(-1))
    }
}

/// Left-normed commutator `[x_j1, x_j2, ..., x_jk]`, `k >= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CommutatorWord {
    indices: Vec<usize>,
}

impl CommutatorWord {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.len() < 2 {
            return Err(Error::InvalidArgument(
                "a commutator word needs length >= 2".into(),
            ));
        }
        if indices.contains(&0) {
            return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
        }
        Ok(CommutatorWord { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `j1 > j2 <= j3 <= ... <= jk`.
    pub fn is_normal(&self) -> bool {
        let ix = &self.indices;
        ix[0] > ix[1] && ix[1..].windows(2).all(|w| w[0] <= w[1])
    }

    /// Multidegree as an exponent vector of length `d`.
    pub fn multidegree(&self, d: usize) -> Vec<u32> {
        let mut md = vec![0; d];
        for &j in &self.indices {
            md[j - 1] += 1;
        }
        md
    }

    /// Graded order used for printing: shorter words first, then descending indices.
    pub fn display_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices
            .len()
            .cmp(&other.indices.len())
            .then_with(|| other.indices.cmp(&self.indices))
    }
}

impl fmt::Display for CommutatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.indices.iter().map(|j| format!("x{j}")).collect();
        write!(f, "[{}]", inner.join(","))
    }
}

/// All normal-form words with the given multidegree (exponent vector over `x_1..x_d`).
pub fn normal_form_words(multidegree: &[u32]) -> Vec<CommutatorWord> {
    let total: u32 = multidegree.iter().sum();
    let mut out = Vec::new();
    if total < 2 {
        return out;
    }
    let support: Vec<usize> = (1..=multidegree.len())
        .filter(|&j| multidegree[j - 1] > 0)
        .collect();
    for &j2 in &support {
        for &j1 in support.iter().filter(|&&j| j > j2) {
            let mut rest = multidegree.to_vec();
            rest[j1 - 1] -= 1;
            rest[j2 - 1] -= 1;
            if rest[..j2 - 1].iter().any(|&e| e > 0) {
                continue;
            }
            let mut indices = vec![j1, j2];
            for (j, &e) in rest.iter().enumerate() {
                indices.extend(std::iter::repeat_n(j + 1, e as usize));
            }
            out.push(CommutatorWord { indices });
        }
    }
    out
}

/// Expansion of an element of `F_d` in the basis `x_1..x_d` plus normal-form words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LieExpansion {
    pub linear: Vec<(Rational, usize)>,
    pub words: Vec<(Rational, CommutatorWord)>,
}

impl LieExpansion {
    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.words.is_empty()
    }
}

impl fmt::Display for LieExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let items = self
            .linear
            .iter()
            .map(|(c, j)| (c, format!("x{j}")))
            .chain(self.words.iter().map(|(c, w)| (c, w.to_string())));
        for (i, (c, s)) in items.enumerate() {
            let abs = c.abs();
            let sep = match (i, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            if abs.is_one() {
                write!(f, "{sep}{s}")?;
            } else if s.starts_with('[') {
                write!(f, "{sep}{}{s}", fmt_rational(&abs))?;
            } else {
                write!(f, "{sep}{}*{s}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

/// Syntax tree of a Lie expression over the generators `x_j`.
#[derive(Clone, PartialEq, Debug)]
pub enum LieExpr {
    Gen(usize),
    Bracket(Box<LieExpr>, Box<LieExpr>),
    Scale(Rational, Box<LieExpr>),
    Sum(Vec<LieExpr>),
    /// `w . p(X) = w p(ad X)`, the `K[X_d]`-module action on `F_d'`.
    Act(Box<LieExpr>, Poly),
}

impl LieExpr {
    pub fn gen(j: usize) -> LieExpr {
        LieExpr::Gen(j)
    }

    pub fn bracket(a: LieExpr, b: LieExpr) -> LieExpr {
        LieExpr::Bracket(Box::new(a), Box::new(b))
    }

    /// Left-normed commutator of generators.
    pub fn commutator(indices: &[usize]) -> LieExpr {
        let mut it = indices.iter();
        let first = LieExpr::Gen(*it.next().expect("nonempty"));
        it.fold(first, |acc, &j| LieExpr::bracket(acc, LieExpr::Gen(j)))
    }

    pub fn scale(c: Rational, e: LieExpr) -> LieExpr {
        LieExpr::Scale(c, Box::new(e))
    }

    pub fn act(e: LieExpr, p: Poly) -> LieExpr {
        LieExpr::Act(Box::new(e), p)
    }

    /// Largest generator index mentioned, including inside action polynomials.
    pub fn max_index(&self) -> usize {
        match self {
            LieExpr::Gen(j) => *j,
            LieExpr::Bracket(a, b) => a.max_index().max(b.max_index()),
            LieExpr::Scale(_, e) => e.max_index(),
            LieExpr::Sum(es) => es.iter().map(LieExpr::max_index).max().unwrap_or(0),
            LieExpr::Act(e, p) => e
                .max_index()
                .max(p.variables().iter().map(|v| v.index()).max().unwrap_or(0)),
        }
    }
}

impl FromStr for LieExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<LieExpr> {
        crate::parse::parse_lie(s)
    }
}

impl fmt::Display for LieExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn flatten<'a>(e: &'a LieExpr, out: &mut Vec<&'a LieExpr>) {
            match e {
                LieExpr::Bracket(a, b) => {
                    flatten(a, out);
                    out.push(b);
                }
                other => out.push(other),
            }
        }
        match self {
            LieExpr::Gen(j) => write!(f, "x{j}"),
            LieExpr::Bracket(..) => {
                let mut parts = Vec::new();
                flatten(self, &mut parts);
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "[{}]", inner.join(","))
            }
            LieExpr::Scale(c, e) => match **e {
                LieExpr::Gen(_) | LieExpr::Bracket(..) => write!(f, "{}*{e}", fmt_rational(c)),
                _ => write!(f, "{}*({e})", fmt_rational(c)),
            },
            LieExpr::Sum(es) => {
                if es.is_empty() {
                    return write!(f, "0");
                }
                for (i, e) in es.iter().enumerate() {
                    let s = e.to_string();
                    match (i, s.strip_prefix('-')) {
                        (0, _) => write!(f, "{s}")?,
                        (_, Some(rest)) => write!(f, " - {rest}")?,
                        (_, None) => write!(f, " + {s}")?,
                    }
                }
                Ok(())
            }
            LieExpr::Act(e, p) => match **e {
                LieExpr::Sum(_) => write!(f, "({e}).({p})"),
                _ => write!(f, "{e}.({p})"),
            },
        }
    }
}

/// The free metabelian Lie algebra `F_d` of a fixed rank, embedded in `R_d`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Metabelian {
    d: usize,
}

impl Metabelian {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("rank must be at least 1".into()));
        }
        Ok(Metabelian { d })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    fn check(&self, u: &WreathElement) -> Result<()> {
        if u.d != self.d {
            return Err(Error::ContextMismatch {
                left: self.d,
                right: u.d,
            });
        }
        Ok(())
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.d {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.d,
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> WreathElement {
        WreathElement::zero(self.d)
    }

    /// `x_j = a_j + y_j`.
    pub fn generator(&self, j: usize) -> Result<WreathElement> {
        self.check_index(j)?;
        let mut e = self.zero();
        e.y_linear[j - 1] = Rational::one();
        e.a_parts[j - 1] = Poly::one();
        Ok(e)
    }

    /// Lie bracket, the restriction of the Poisson bracket of `R_d`.
    pub fn bracket(&self, u: &WreathElement, v: &WreathElement) -> Result<WreathElement> {
        self.check(u)?;
        self.check(v)?;
        let lin = |w: &WreathElement| {
            Poly::from_terms(
                w.y_linear
                    .iter()
                    .enumerate()
                    .map(|(j, b)| (Monomial::var(Var::y(j + 1)), b.clone())),
            )
        };
        let (lu, lv) = (lin(u), lin(v));
        let a_parts = u
            .a_parts
            .iter()
            .zip(&v.a_parts)
            .map(|(p, q)| &(p * &lv) - &(q * &lu))
            .collect();
        Ok(WreathElement::from_a_parts(a_parts))
    }

    /// Converts a polynomial in `x_1..x_d` to the same polynomial in `y_1..y_d`.
    pub fn x_to_y(&self, p: &Poly) -> Result<Poly> {
        for v in p.variables() {
            if v.letter() != 'x' || v.index() == 0 || v.index() > self.d {
                return Err(Error::UndeclaredVariable(v.to_string()));
            }
        }
        Ok(p.rename_letter('x', 'y'))
    }

    pub fn is_in_commutator_ideal(&self, u: &WreathElement) -> bool {
        if u.d != self.d || u.y_linear.iter().any(|b| !b.is_zero()) {
            return false;
        }
        let mut s = Poly::zero();
        for (i, p) in u.a_parts.iter().enumerate() {
            s += p.mul_monomial(&Monomial::var(Var::y(i + 1)), &Rational::one());
        }
        s.is_zero()
    }

    /// `u . p = u p(ad x_1, ..., ad x_d)`; in `R_d` each `a_i`-coefficient is
    /// multiplied by `p(Y)`.
    pub fn ad_action(&self, u: &WreathElement, p: &Poly) -> Result<WreathElement> {
        self.check(u)?;
        if !self.is_in_commutator_ideal(u) {
            return Err(Error::NotInCommutatorIdeal);
        }
        Ok(u.mul_a_parts(&self.x_to_y(p)?))
    }

    /// Image of a (not necessarily normal) commutator word.
    pub fn word_image(&self, w: &CommutatorWord) -> Result<WreathElement> {
        for &j in &w.indices {
            self.check_index(j)?;
        }
        let (i, j) = (w.indices[0], w.indices[1]);
        let tail = Monomial::from_pairs(w.indices[2..].iter().map(|&k| (Var::y(k), 1)));
        let mut e = self.zero();
        e.a_parts[i - 1].add_term(tail.mul(&Monomial::var(Var::y(j))), Rational::one());
        e.a_parts[j - 1].add_term(tail.mul(&Monomial::var(Var::y(i))), -Rational::one());
        Ok(e)
    }

    pub fn from_commutator_basis(
        &self,
        terms: &[(Rational, CommutatorWord)],
    ) -> Result<WreathElement> {
        let mut out = self.zero();
        for (c, w) in terms {
            out = &out + &self.word_image(w)?.scale(c);
        }
        Ok(out)
    }

    /// Unique expansion of `u` in the normal-form words. Each multigraded
    /// component is solved separately against the images of its basis words.
    pub fn to_commutator_basis(
        &self,
        u: &WreathElement,
    ) -> Result<Vec<(Rational, CommutatorWord)>> {
        self.check(u)?;
        if !self.is_in_commutator_ideal(u) {
            return Err(Error::NotInCommutatorIdeal);
        }
        let mut by_degree: BTreeMap<Vec<u32>, SparseVec<(usize, Monomial)>> = BTreeMap::new();
        for (i, p) in u.a_parts.iter().enumerate() {
            for (m, c) in p.terms() {
                let mut md = vec![0u32; self.d];
                md[i] += 1;
                for &(v, e) in m.factors() {
                    md[v.index() - 1] += e;
                }
                by_degree
                    .entry(md)
                    .or_default()
                    .insert((i + 1, m.clone()), c.clone());
            }
        }
        let mut out = Vec::new();
        for (md, target) in by_degree {
            let words = normal_form_words(&md);
            let mut ech = Echelon::new();
            for (k, w) in words.iter().enumerate() {
                ech.insert_tracked(k, self.word_image(w)?.to_sparse());
            }
            let coeffs = ech.express(target).ok_or(Error::NotInCommutatorIdeal)?;
            for (k, c) in coeffs {
                out.push((c, words[k].clone()));
            }
        }
        out.sort_by(|a, b| a.1.display_cmp(&b.1));
        Ok(out)
    }

    /// Expansion of any element of `F_d` as generators plus normal-form words.
    pub fn to_lie_basis(&self, u: &WreathElement) -> Result<LieExpansion> {
        self.check(u)?;
        let mut rest = u.clone();
        let mut linear = Vec::new();
        for (j, b) in u.y_linear.iter().enumerate() {
            if !b.is_zero() {
                linear.push((b.clone(), j + 1));
                rest = &rest - &self.generator(j + 1)?.scale(b);
            }
        }
        Ok(LieExpansion {
            linear,
            words: self.to_commutator_basis(&rest)?,
        })
    }

    pub fn eval(&self, e: &LieExpr) -> Result<WreathElement> {
        match e {
            LieExpr::Gen(j) => self.generator(*j),
            LieExpr::Bracket(a, b) => self.bracket(&self.eval(a)?, &self.eval(b)?),
            LieExpr::Scale(c, a) => Ok(self.eval(a)?.scale(c)),
            LieExpr::Sum(es) => {
                let mut acc = self.zero();
                for a in es {
                    acc = &acc + &self.eval(a)?;
                }
                Ok(acc)
            }
            LieExpr::Act(a, p) => self.ad_action(&self.eval(a)?, p),
        }
    }

    /// `f(A + Y)` computed inside `R_d` by substituting `x_j -> a_j + y_j`.
    pub fn embed(&self, f: &Poly) -> Result<PoissonElement> {
        let d = self.d;
        let mut gens = Vec::with_capacity(d);
        for j in 1..=d {
            let mut g = PoissonElement::y_monomial(d, Monomial::var(Var::y(j)));
            g.a_parts[j - 1] = Poly::one();
            gens.push(g);
        }
        let mut out = PoissonElement::zero(d);
        for (m, c) in f.terms() {
            let mut term = PoissonElement::y_monomial(d, Monomial::one()).scale(c);
            for &(v, e) in m.factors() {
                if v.letter() != 'x' || v.index() == 0 || v.index() > d {
                    return Err(Error::UndeclaredVariable(v.to_string()));
                }
                for _ in 0..e {
                    term = term.mul(&gens[v.index() - 1])?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(d: usize) -> Metabelian {
        Metabelian::new(d).unwrap()
    }

    fn ay(d: usize, s: &str) -> WreathElement {
        // parse an expression linear in a's into a WreathElement
        let p: Poly = s.parse().unwrap();
        let mut e = WreathElement::zero(d);
        for (m, c) in p.terms() {
            let a = m.vars().find(|v| v.letter() == 'a').unwrap();
            let rest = m.div(&Monomial::var(a)).unwrap();
            e.a_parts[a.index() - 1].add_term(rest, c.clone());
        }
        e
    }

    #[test]
    fn generators() {
        let f = alg(2);
        assert_eq!(f.generator(1).unwrap().to_string(), "a1 + y1");
        assert!(matches!(f.generator(0), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(f.generator(2).unwrap().to_string(), "a2 + y2");
    }

    #[test]
    fn bracket_examples() {
        let f = alg(3);
        let (x1, x2, x3) = (
            f.generator(1).unwrap(),
            f.generator(2).unwrap(),
            f.generator(3).unwrap(),
        );
        assert_eq!(f.bracket(&x2, &x1).unwrap(), ay(3, "a2*y1 - a1*y2"));
        let u = &x1 + &x3.scale(&rat(5));
        assert!(f.bracket(&u, &u).unwrap().is_zero());
        let c21 = f.bracket(&x2, &x1).unwrap();
        let c31 = f.bracket(&x3, &x1).unwrap();
        assert!(f.bracket(&c21, &c31).unwrap().is_zero());
        assert!(matches!(
            f.bracket(&x1, &alg(2).generator(1).unwrap()),
            Err(Error::ContextMismatch { .. })
        ));
    }

    #[test]
    fn ad_action_examples() {
        let f = alg(3);
        let c = f.eval(&"[x2,x1]".parse().unwrap()).unwrap();
        let x3: Poly = "x3".parse().unwrap();
        assert_eq!(f.ad_action(&c, &x3).unwrap(), ay(3, "a2*y1*y3 - a1*y2*y3"));
        assert_eq!(f.ad_action(&c, &Poly::one()).unwrap(), c);
        let x1: Poly = "x1".parse().unwrap();
        let twice = f.ad_action(&f.ad_action(&c, &x1).unwrap(), &x1).unwrap();
        assert_eq!(twice, f.ad_action(&c, &x1.pow(2)).unwrap());
        assert_eq!(
            f.ad_action(&f.generator(1).unwrap(), &x1),
            Err(Error::NotInCommutatorIdeal)
        );
    }

    #[test]
    fn commutator_ideal_membership() {
        let f = alg(2);
        assert!(f.is_in_commutator_ideal(&ay(2, "a1*y2 - a2*y1")));
        assert!(!f.is_in_commutator_ideal(&ay(2, "a1")));
        assert!(f.is_in_commutator_ideal(&f.zero()));
    }

    #[test]
    fn basis_expansion() {
        let f = alg(2);
        let u = ay(2, "a2*y1 - a1*y2");
        let w = CommutatorWord::new(vec![2, 1]).unwrap();
        assert_eq!(f.to_commutator_basis(&u).unwrap(), vec![(rat(1), w)]);
        let u = ay(2, "a2*y1^2 - a1*y1*y2");
        let w = CommutatorWord::new(vec![2, 1, 1]).unwrap();
        assert_eq!(f.to_commutator_basis(&u).unwrap(), vec![(rat(1), w)]);
        assert_eq!(
            f.to_commutator_basis(&ay(2, "a1")),
            Err(Error::NotInCommutatorIdeal)
        );
    }

    #[test]
    fn lie_expressions() {
        let f = alg(6);
        let e: LieExpr = "[x2,x1]".parse().unwrap();
        assert_eq!(f.eval(&e).unwrap(), ay(6, "a2*y1 - a1*y2"));
        let e: LieExpr = "[x1,x2] + [x2,x1]".parse().unwrap();
        assert!(f.eval(&e).unwrap().is_zero());
        let v1 = f
            .eval(&"[x6,x1] - 2[x5,x2] + [x4,x3]".parse().unwrap())
            .unwrap();
        assert_eq!(
            v1,
            ay(6, "a6*y1 - a1*y6 - 2*a5*y2 + 2*a2*y5 + a4*y3 - a3*y4")
        );
        let v22 = f
            .eval(&"[x1,x6] - 2[x2,x5] + [x3,x4]".parse().unwrap())
            .unwrap();
        assert_eq!(v22, -v1);
        assert!(matches!(
            alg(3).eval(&"[x4,x1]".parse().unwrap()),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn normal_words_of_small_multidegrees() {
        assert_eq!(normal_form_words(&[1, 1]).len(), 1);
        assert_eq!(normal_form_words(&[2, 1]).len(), 1);
        assert_eq!(normal_form_words(&[2, 0]).len(), 0);
        assert_eq!(normal_form_words(&[1, 1, 1]).len(), 2);
        assert!(normal_form_words(&[1, 2, 1])
            .iter()
            .all(CommutatorWord::is_normal));
    }

    #[test]
    fn lie_basis_printing() {
        let f = alg(4);
        let u = f
            .eval(&"x3 + 2[x4,x2,x2] - [x4,x1,x3]".parse().unwrap())
            .unwrap();
        assert_eq!(
            f.to_lie_basis(&u).unwrap().to_string(),
            "x3 + 2[x4,x2,x2] - [x4,x1,x3]"
        );
        assert_eq!(f.to_lie_basis(&f.zero()).unwrap().to_string(), "0");
    }

    #[test]
    fn embedding_matches_generators() {
        let f = alg(3);
        let e = f.embed(&"x2".parse().unwrap()).unwrap();
        assert_eq!(e.to_wreath().unwrap(), f.generator(2).unwrap());
        // (a1 + y1)^2 = y1^2 + 2 a1 y1
        let sq = f.embed(&"x1^2".parse().unwrap()).unwrap();
        assert_eq!(sq.to_string(), "2*a1*y1 + y1^2");
    }
}
