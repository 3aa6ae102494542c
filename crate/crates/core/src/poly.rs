//! Exact sparse multivariate polynomials over the rationals.
//!
//! Variables are small interned ids: a lowercase letter plus an optional
//! index (`x3`, `y1`, `a2`, `t1`, `z`). The letters let the three alphabets
//! `x`, `y`, `a` coexist with series variables `t`, `z` and catalog
//! placeholders `v`, `f`. Terms are kept in a `BTreeMap` ordered by graded-lex
//! with `x1 > x2 > ...`, so iteration and printing are deterministic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always reduced with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Row `n` of Pascal's triangle, built by the additive recursion.
pub fn pascal_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    pascal_row(n).swap_remove(k as usize)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A polynomial variable: a letter with an index. Index 0 prints bare (`z`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var {
    letter: u8,
    index: u32,
}

impl Var {
    pub fn new(letter: char, index: u32) -> Var {
        assert!(
            letter.is_ascii_lowercase(),
            "variable letters are ascii lowercase"
        );
        Var {
            letter: letter as u8,
            index,
        }
    }

    pub fn x(index: usize) -> Var {
        Var::new('x', index as u32)
    }

    pub fn y(index: usize) -> Var {
        Var::new('y', index as u32)
    }

    pub fn z() -> Var {
        Var::new('z', 0)
    }

    pub fn letter(self) -> char {
        self.letter as char
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn with_letter(self, letter: char) -> Var {
        Var::new(letter, self.index)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.letter as char)
        } else {
            write!(f, "{}{}", self.letter as char, self.index)
        }
    }
}

/// Power product of variables; never stores a zero exponent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var) -> Monomial {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn pow_of(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial {
                factors: vec![(v, e)],
            }
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of exponents of the variables with the given letter.
    pub fn degree_in(&self, letter: char) -> u32 {
        self.factors
            .iter()
            .filter(|(v, _)| v.letter() == letter)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for &(v, e) in &self.factors {
            let mut e = e;
            if j < other.factors.len() && other.factors[j].0 == v {
                let f = other.factors[j].1;
                if f > e {
                    return None;
                }
                e -= f;
                j += 1;
            } else if j < other.factors.len() && other.factors[j].0 < v {
                return None;
            }
            if e > 0 {
                out.push((v, e));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Exponent of `v` together with `self / v`, if `v` occurs.
    pub fn lower(&self, v: Var) -> Option<(u32, Monomial)> {
        let i = self.factors.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.factors[i].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some((e, Monomial { factors }))
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.factors.iter().map(|&(v, e)| (f(v), e)))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let mut i = 0;
        loop {
            match (a.get(i), b.get(i)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // smaller variable is more significant
                        return if va < vb {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
            i += 1;
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients; no zero coefficient is stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Highest total degree of a term; zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, n: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// `sum_j v_j * d/dv_j` applied to `self`: every term scaled by its degree.
    pub fn euler(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.is_one())
                .map(|(m, c)| {
                    (
                        m.clone(),
                        c * Rational::from_integer(BigInt::from(m.degree())),
                    )
                })
                .collect(),
        }
    }

    /// `J_ij(f1, f2) = df1/dv_i * df2/dv_j - df1/dv_j * df2/dv_i`.
    pub fn jacobian_minor(f1: &Poly, f2: &Poly, i: Var, j: Var) -> Result<Poly> {
        if i == j {
            return Err(Error::EqualIndices(i.to_string()));
        }
        let a = &f1.partial(i) * &f2.partial(j);
        let b = &f1.partial(j) * &f2.partial(i);
        Ok(a - b)
    }

    /// True iff every 2x2 Jacobian minor of `(f1, f2)` vanishes, which makes
    /// the pair algebraically dependent.
    pub fn is_pairwise_jacobian_zero(f1: &Poly, f2: &Poly) -> bool {
        let vars: Vec<Var> = f1.variables().union(&f2.variables()).copied().collect();
        let d1: Vec<Poly> = vars.iter().map(|&v| f1.partial(v)).collect();
        let d2: Vec<Poly> = vars.iter().map(|&v| f2.partial(v)).collect();
        for i in 0..vars.len() {
            for j in i + 1..vars.len() {
                if &d1[i] * &d2[j] != &d1[j] * &d2[i] {
                    return false;
                }
            }
        }
        true
    }

    /// Simultaneous substitution `v -> image[v]`; unmapped variables stay.
    pub fn substitute(&self, images: &BTreeMap<Var, Poly>) -> Poly {
        let mut powers: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut term = Poly::constant(c.clone());
            for &(v, e) in m.factors() {
                match images.get(&v) {
                    Some(img) => {
                        let p = powers.entry((v, e)).or_insert_with(|| img.pow(e));
                        term = &term * &*p;
                    }
                    None => kept.push((v, e)),
                }
            }
            if !kept.is_empty() {
                term = term.mul_monomial(&Monomial::from_pairs(kept), &Rational::one());
            }
            out += term;
        }
        out
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Renames every variable with letter `from` to letter `to`, keeping indices.
    pub fn rename_letter(&self, from: char, to: char) -> Poly {
        self.map_vars(|v| {
            if v.letter() == from {
                v.with_letter(to)
            } else {
                v
            }
        })
    }

    /// Division with remainder by a single polynomial with respect to graded-lex.
    pub fn div_rem(&self, g: &Poly) -> (Poly, Poly) {
        let (lm, lc) = match g.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => panic!("division by the zero polynomial"),
        };
        let mut p = self.clone();
        let mut q = Poly::zero();
        let mut r = Poly::zero();
        while let Some((m, c)) = p
            .terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))
        {
            match m.div(&lm) {
                Some(t) => {
                    let coeff = &c / &lc;
                    p -= g.mul_monomial(&t, &coeff);
                    q.add_term(t, coeff);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        (q, r)
    }

    pub fn div_exact(&self, g: &Poly) -> Result<Poly> {
        if g.is_zero() {
            return Err(Error::InexactDivision);
        }
        let (q, r) = self.div_rem(g);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Divides by the rational content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            content = -content;
        }
        self.scale(&content.recip())
    }

    /// Coefficient as a machine integer, if it is one.
    pub fn integer_coefficient(&self, m: &Monomial) -> Option<i64> {
        let c = self.coefficient(m);
        if c.is_integer() {
            c.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        crate::parse::parse_poly(s)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl<'a> AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
            return;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> SubAssign<&'a Poly> for Poly {
    fn sub_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign<Poly> for Poly {
    fn sub_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= rhs;
        self
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn x(i: usize) -> Var {
        Var::x(i)
    }

    #[test]
    fn add_cancels() {
        assert_eq!(&p("x1 + x2") + &p("-x2"), p("x1"));
        assert_eq!(&p("x2^2 - x1*x3") + &p("x1*x3"), p("x2^2"));
        let q = p("3*x1*x2 - 1/2");
        assert_eq!(&q + &Poly::zero(), q);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("x1 + x2") * &p("x1 - x2"), p("x1^2 - x2^2"));
        let q = p("x2^2 - x1*x3");
        assert_eq!(&q * &Poly::one(), q);
        // schoolbook expansion: (a - b)^2 with a = x2^2, b = x1*x3
        let a = p("x2^2");
        let b = p("x1*x3");
        let expected = &(&(&a * &a) - &(&a * &b).scale(&rat(2))) + &(&b * &b);
        assert_eq!(q.pow(2), expected);
        assert_eq!(q.pow(2), p("x2^4 - 2*x1*x2^2*x3 + x1^2*x3^2"));
    }

    #[test]
    fn partial_examples() {
        let q = p("x2^2 - x1*x3");
        assert_eq!(q.partial(x(2)), p("2*x2"));
        assert_eq!(q.partial(x(1)), p("-x3"));
        assert!(p("7/3").partial(x(1)).is_zero());
    }

    #[test]
    fn jacobian_minor_examples() {
        assert_eq!(
            Poly::jacobian_minor(&p("x1"), &p("x2"), x(1), x(2)).unwrap(),
            Poly::one()
        );
        let f = p("x1*x2 + x3^3");
        assert!(Poly::jacobian_minor(&f, &f, x(1), x(3)).unwrap().is_zero());
        assert!(matches!(
            Poly::jacobian_minor(&f, &f, x(2), x(2)),
            Err(Error::EqualIndices(_))
        ));
        // f1 = x2^2 - x1 x3, f2 = x1 x3:
        // d1 f1 = -x3, d2 f1 = 2 x2, d1 f2 = x3, d2 f2 = 0
        // J_12 = (-x3)(0) - (2 x2)(x3) = -2 x2 x3
        let j = Poly::jacobian_minor(&p("x2^2 - x1*x3"), &p("x1*x3"), x(1), x(2)).unwrap();
        assert_eq!(j, p("-2*x2*x3"));
    }

    #[test]
    fn pairwise_jacobian_zero() {
        let f = p("x1*x3 - x2^2 + x4");
        assert!(Poly::is_pairwise_jacobian_zero(&f, &f.pow(2)));
        assert!(!Poly::is_pairwise_jacobian_zero(&p("x1"), &p("x2")));
        let f1 = p("x1*x5 - 4*x2*x4 + 3*x3^2");
        let f2 = p("-x1*x3*x5 - 2*x2*x3*x4 + x3^3 + x1*x4^2 + x2^2*x5");
        assert!(!Poly::is_pairwise_jacobian_zero(&f1, &f2));
    }

    #[test]
    fn grlex_printing() {
        assert_eq!(
            p("x3 + x1*x3 + x2^2 + 1").to_string(),
            "x1*x3 + x2^2 + x3 + 1"
        );
        assert_eq!(p("-3/2*x1 + z").to_string(), "-3/2*x1 + z");
    }

    #[test]
    fn exact_division() {
        let g = p("x1 - x2");
        let f = &g * &p("x1^2 + 3*x2*x3 - 1");
        assert_eq!(f.div_exact(&g).unwrap(), p("x1^2 + 3*x2*x3 - 1"));
        assert_eq!(p("x1 + 1").div_exact(&g), Err(Error::InexactDivision));
    }

    #[test]
    fn primitive_normalizes_content_and_sign() {
        assert_eq!(p("-4*x1*x3 + 4*x2^2").primitive(), p("x1*x3 - x2^2"));
        assert_eq!(p("1/2*x1 + 1/3*x2").primitive(), p("3*x1 + 2*x2"));
    }

    #[test]
    fn pascal() {
        assert_eq!(pascal_row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 3), BigInt::zero());
    }

    #[test]
    fn substitution_is_a_homomorphism_on_a_sample() {
        let mut images = BTreeMap::new();
        images.insert(x(1), p("x1 + x2"));
        images.insert(x(2), p("x2"));
        let f = p("x1^2 - x1*x2");
        let g = p("x2*x1 + 3");
        assert_eq!(
            (&f * &g).substitute(&images),
            &f.substitute(&images) * &g.substitute(&images)
        );
    }
}
