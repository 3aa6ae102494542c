//! `SL_2` acting on `KX_d = V_{k_1} + ... + V_{k_r}` through the unitriangular
//! generators `g_1`, `g_2`, their logarithms `delta_1`, `delta_2`, and the
//! induced actions on `K[X_d]` and on `R_d` (hence on `F_d`).
//!
//! Inside a block `V_k` the variables `x_{o+1}, ..., x_{o+k+1}` are identified
//! with `xi_0, ..., xi_k`, and `xi_j` has `D_2`-weight `t1^(k-j) t2^j`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::metabelian::WreathElement;
use crate::poly::{binomial, Monomial, Poly, Rational, Var};

/// Decomposition `KX_d = V_{k_1} + ... + V_{k_r}`, in the given order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModuleSpec {
    blocks: Vec<u32>,
    offsets: Vec<usize>,
}

impl ModuleSpec {
    pub fn new(blocks: Vec<u32>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("at least one block is required".into()));
        }
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut o = 0;
        for &k in &blocks {
            offsets.push(o);
            o += k as usize + 1;
        }
        Ok(ModuleSpec { blocks, offsets })
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Number of variables `d = sum (k_i + 1)`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|&k| k as usize + 1).sum()
    }

    pub fn sorted_blocks(&self) -> Vec<u32> {
        let mut b = self.blocks.clone();
        b.sort_unstable_by(|a, b| b.cmp(a));
        b
    }

    /// For variable `x_j` (1-based): `(block number, k, l)` with `x_j = xi_l` of `V_k`.
    pub fn locate(&self, j: usize) -> Result<(usize, u32, u32)> {
        if j == 0 || j > self.dim() {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.dim(),
            });
        }
        let b = self.offsets.partition_point(|&o| o < j) - 1;
        Ok((b, self.blocks[b], (j - 1 - self.offsets[b]) as u32))
    }

    /// Weight `(k - l, l)` of `x_j = xi_l` in its block `V_k`.
    pub fn weight(&self, j: usize) -> Result<(u32, u32)> {
        let (_, k, l) = self.locate(j)?;
        Ok((k - l, l))
    }

    fn check_var(&self, v: Var) -> Result<()> {
        if !matches!(v.letter(), 'x' | 'y' | 'a') || v.index() == 0 || v.index() > self.dim() {
            return Err(Error::UndeclaredVariable(v.to_string()));
        }
        Ok(())
    }

    /// Weight of a monomial in the letters `x`, `y`, `a`.
    pub fn monomial_weight(&self, m: &Monomial) -> Result<(u32, u32)> {
        let (mut p, mut q) = (0, 0);
        for &(v, e) in m.factors() {
            self.check_var(v)?;
            let (a, b) = self.weight(v.index())?;
            p += a * e;
            q += b * e;
        }
        Ok((p, q))
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    /// Comma separated block list, e.g. `2,1` for `V_2 + V_1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidSpec("empty spec".into()));
        }
        let blocks = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidSpec(format!("bad block {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleSpec::new(blocks)
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

type Matrix = Vec<Vec<Rational>>;

fn zero_matrix(d: usize) -> Matrix {
    vec![vec![Rational::zero(); d]; d]
}

fn identity(d: usize) -> Matrix {
    let mut m = zero_matrix(d);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let mut c = zero_matrix(d);
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    c[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    c
}

fn is_zero_matrix(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// Image of each variable under a matrix whose column `j` is the image of `x_{j+1}`,
/// applied in the same way to the letters `x`, `y` and `a`.
fn linear_images(m: &Matrix, vars: impl IntoIterator<Item = Var>) -> BTreeMap<Var, Poly> {
    vars.into_iter()
        .map(|v| {
            let j = v.index() - 1;
            let img = Poly::from_terms((0..m.len()).filter(|&k| !m[k][j].is_zero()).map(|k| {
                (
                    Monomial::var(Var::new(v.letter(), k as u32 + 1)),
                    m[k][j].clone(),
                )
            }));
            (v, img)
        })
        .collect()
}

/// An invertible linear substitution of `x_1..x_d`; column `j` holds the image of `x_{j+1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearAction {
    matrix: Matrix,
}

impl LinearAction {
    pub fn from_matrix(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let d = matrix.len();
        if let Some(r) = matrix.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: r.len(),
            });
        }
        Ok(LinearAction { matrix })
    }

    pub fn identity(d: usize) -> Self {
        LinearAction {
            matrix: identity(d),
        }
    }

    /// `g_1(xi_l) = sum_{j <= l} C(l, j) xi_j` in every block.
    pub fn g1(spec: &ModuleSpec) -> Self {
        let mut m = zero_matrix(spec.dim());
        for (&k, &o) in spec.blocks.iter().zip(&spec.offsets) {
            for l in 0..=k {
                for j in 0..=l {
                    m[o + j as usize][o + l as usize] = Rational::from_integer(binomial(l, j));
                }
            }
        }
        LinearAction { matrix: m }
    }

    /// `g_2(xi_{k-l}) = sum_{j <= l} C(l, j) xi_{k-j}` in every block.
    pub fn g2(spec: &ModuleSpec) -> Self {
        let mut m = zero_matrix(spec.dim());
        for (&k, &o) in spec.blocks.iter().zip(&spec.offsets) {
            for l in 0..=k {
                for j in 0..=l {
                    m[o + (k - j) as usize][o + (k - l) as usize] =
                        Rational::from_integer(binomial(l, j));
                }
            }
        }
        LinearAction { matrix: m }
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `g(x_j)` as a list of `(k, coefficient of x_k)`.
    pub fn image(&self, j: usize) -> Vec<(usize, Rational)> {
        (0..self.dim())
            .filter(|&k| !self.matrix[k][j - 1].is_zero())
            .map(|k| (k + 1, self.matrix[k][j - 1].clone()))
            .collect()
    }

    pub fn compose(&self, other: &LinearAction) -> LinearAction {
        LinearAction {
            matrix: matmul(&self.matrix, &other.matrix),
        }
    }

    fn check_vars(&self, p: &Poly) -> Result<()> {
        for v in p.variables() {
            if !matches!(v.letter(), 'x' | 'y' | 'a') || v.index() == 0 || v.index() > self.dim() {
                return Err(Error::UndeclaredVariable(v.to_string()));
            }
        }
        Ok(())
    }

    /// `g(f(X)) = f(g(x_1), ..., g(x_d))`; the letters `y` and `a` are transformed alike.
    pub fn act_on_poly(&self, p: &Poly) -> Result<Poly> {
        self.check_vars(p)?;
        Ok(p.substitute(&linear_images(&self.matrix, p.variables())))
    }

    /// Simultaneous substitution on the `a`- and `y`-variables of `R_d`.
    pub fn act_on_wreath(&self, u: &WreathElement) -> Result<WreathElement> {
        let d = self.dim();
        if u.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: u.dim(),
            });
        }
        let mut y_linear = vec![Rational::zero(); d];
        for (j, b) in u.y_linear().iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (k, yk) in y_linear.iter_mut().enumerate() {
                *yk += &self.matrix[k][j] * b;
            }
        }
        let mut a_parts = vec![Poly::zero(); d];
        for (i, f) in u.a_parts().iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let gf = self.act_on_poly(f)?;
            for (k, ak) in a_parts.iter_mut().enumerate() {
                if !self.matrix[k][i].is_zero() {
                    *ak += gf.scale(&self.matrix[k][i]);
                }
            }
        }
        WreathElement::from_parts(y_linear, a_parts)
    }
}

/// A linear derivation determined by its values on `x_1..x_d` (column `j` is `delta(x_{j+1})`),
/// extended by the Leibniz rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    matrix: Matrix,
}

impl Derivation {
    pub fn from_matrix(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        LinearAction::from_matrix(matrix).map(|g| Derivation { matrix: g.matrix })
    }

    /// `delta_1(xi_l) = l xi_{l-1}`.
    pub fn delta1(spec: &ModuleSpec) -> Self {
        let mut m = zero_matrix(spec.dim());
        for (&k, &o) in spec.blocks.iter().zip(&spec.offsets) {
            for l in 1..=k as usize {
                m[o + l - 1][o + l] = Rational::from_integer((l as i64).into());
            }
        }
        Derivation { matrix: m }
    }

    /// `delta_2(xi_j) = (k - j) xi_{j+1}`.
    pub fn delta2(spec: &ModuleSpec) -> Self {
        let mut m = zero_matrix(spec.dim());
        for (&k, &o) in spec.blocks.iter().zip(&spec.offsets) {
            for j in 0..k as usize {
                m[o + j + 1][o + j] = Rational::from_integer((k as i64 - j as i64).into());
            }
        }
        Derivation { matrix: m }
    }

    /// `log g = sum_{n >= 1} (-1)^(n-1) (g - 1)^n / n`, for unipotent `g`.
    pub fn log_unipotent(g: &LinearAction) -> Result<Self> {
        let d = g.dim();
        let mut n = g.matrix.clone();
        for (i, row) in n.iter_mut().enumerate() {
            row[i] -= Rational::one();
        }
        let mut acc = zero_matrix(d);
        let mut power = n.clone();
        for k in 1..=d.max(1) {
            if is_zero_matrix(&power) {
                return Ok(Derivation { matrix: acc });
            }
            let c = Rational::new(
                if k % 2 == 1 { 1.into() } else { (-1).into() },
                (k as i64).into(),
            );
            for i in 0..d {
                for j in 0..d {
                    if !power[i][j].is_zero() {
                        acc[i][j] += &power[i][j] * &c;
                    }
                }
            }
            power = matmul(&power, &n);
        }
        if is_zero_matrix(&power) {
            Ok(Derivation { matrix: acc })
        } else {
            Err(Error::NotUnipotent)
        }
    }

    /// `exp(delta) = sum delta^n / n!` for nilpotent `delta`.
    pub fn exp(&self) -> Result<LinearAction> {
        let d = self.matrix.len();
        let mut acc = identity(d);
        let mut term = identity(d);
        for k in 1..=d + 1 {
            term = matmul(&term, &self.matrix);
            if is_zero_matrix(&term) {
                return Ok(LinearAction { matrix: acc });
            }
            let inv = Rational::new(1.into(), (k as i64).into());
            for row in term.iter_mut() {
                for x in row.iter_mut() {
                    *x *= &inv;
                }
            }
            for i in 0..d {
                for j in 0..d {
                    acc[i][j] += &term[i][j];
                }
            }
        }
        Err(Error::NotUnipotent)
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// `delta(f) = sum_v (df/dv) delta(v)` over the letters `x`, `y`, `a`.
    pub fn apply_poly(&self, p: &Poly) -> Result<Poly> {
        LinearAction {
            matrix: self.matrix.clone(),
        }
        .check_vars(p)?;
        let vars = p.variables();
        let images = linear_images(&self.matrix, vars.iter().copied());
        let mut out = Poly::zero();
        for v in vars {
            let img = &images[&v];
            if !img.is_zero() {
                out += &p.partial(v) * img;
            }
        }
        Ok(out)
    }

    /// The derivation of `R_d` with the same values on `a_j` and `y_j`.
    pub fn apply_wreath(&self, u: &WreathElement) -> Result<WreathElement> {
        let d = self.dim();
        if u.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: u.dim(),
            });
        }
        let mut y_linear = vec![Rational::zero(); d];
        for (j, b) in u.y_linear().iter().enumerate() {
            for (k, yk) in y_linear.iter_mut().enumerate() {
                if !b.is_zero() {
                    *yk += &self.matrix[k][j] * b;
                }
            }
        }
        let mut a_parts: Vec<Poly> = Vec::with_capacity(d);
        for f in u.a_parts() {
            a_parts.push(self.apply_poly(f)?);
        }
        for (i, f) in u.a_parts().iter().enumerate() {
            for (k, ak) in a_parts.iter_mut().enumerate() {
                if !self.matrix[k][i].is_zero() && !f.is_zero() {
                    *ak += f.scale(&self.matrix[k][i]);
                }
            }
        }
        WreathElement::from_parts(y_linear, a_parts)
    }
}

/// Objects carrying the induced `GL_2`-action: polynomials and elements of `R_d`.
pub trait Representation: Sized + Clone + PartialEq {
    fn act(&self, g: &LinearAction) -> Result<Self>;
    fn derive(&self, delta: &Derivation) -> Result<Self>;
    fn vanishes(&self) -> bool;
    /// Splits into `D_2`-weight components.
    fn bidegree_components(&self, spec: &ModuleSpec) -> Result<BTreeMap<(u32, u32), Self>>;
}

impl Representation for Poly {
    fn act(&self, g: &LinearAction) -> Result<Self> {
        g.act_on_poly(self)
    }

    fn derive(&self, delta: &Derivation) -> Result<Self> {
        delta.apply_poly(self)
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn bidegree_components(&self, spec: &ModuleSpec) -> Result<BTreeMap<(u32, u32), Poly>> {
        let mut out: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
        for (m, c) in self.terms() {
            let w = spec.monomial_weight(m)?;
            out.entry(w).or_default().add_term(m.clone(), c.clone());
        }
        Ok(out)
    }
}

impl Representation for WreathElement {
    fn act(&self, g: &LinearAction) -> Result<Self> {
        g.act_on_wreath(self)
    }

    fn derive(&self, delta: &Derivation) -> Result<Self> {
        delta.apply_wreath(self)
    }

    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn bidegree_components(
        &self,
        spec: &ModuleSpec,
    ) -> Result<BTreeMap<(u32, u32), WreathElement>> {
        if self.dim() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                actual: self.dim(),
            });
        }
        let mut out: BTreeMap<(u32, u32), _> = BTreeMap::new();
        for (key, c) in self.to_sparse() {
            let mut w = spec.monomial_weight(&key.1)?;
            if key.0 > 0 {
                let (p, q) = spec.weight(key.0)?;
                w = (w.0 + p, w.1 + q);
            }
            out.entry(w)
                .or_insert_with(crate::linalg::SparseVec::new)
                .insert(key, c);
        }
        Ok(out
            .into_iter()
            .map(|(w, v)| (w, WreathElement::from_sparse(spec.dim(), &v)))
            .collect())
    }
}

/// `g_1(u) = u` and `g_2(u) = u`.
pub fn is_invariant<T: Representation>(spec: &ModuleSpec, u: &T) -> Result<bool> {
    Ok(u.act(&LinearAction::g1(spec))? == *u && u.act(&LinearAction::g2(spec))? == *u)
}

/// `delta_1(u) = delta_2(u) = 0`; the cross-check for [`is_invariant`].
pub fn is_annihilated<T: Representation>(spec: &ModuleSpec, u: &T) -> Result<bool> {
    Ok(u.derive(&Derivation::delta1(spec))?.vanishes()
        && u.derive(&Derivation::delta2(spec))?.vanishes())
}

/// `(delta_1(u), delta_2(u))`, useful as a diagnostic when `u` is not invariant.
pub fn delta_images<T: Representation>(spec: &ModuleSpec, u: &T) -> Result<(T, T)> {
    Ok((
        u.derive(&Derivation::delta1(spec))?,
        u.derive(&Derivation::delta2(spec))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metabelian::Metabelian;
    use crate::poly::rat;

    fn spec(s: &str) -> ModuleSpec {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn spec_parsing() {
        let s = spec("2,1");
        assert_eq!(s.dim(), 5);
        assert_eq!(s.offsets(), &[0, 3]);
        assert_eq!(s.locate(4).unwrap(), (1, 1, 0));
        assert_eq!(s.to_string(), "2,1");
        assert!("".parse::<ModuleSpec>().is_err());
        assert!("2,x".parse::<ModuleSpec>().is_err());
        assert_eq!(spec(" 0 , 0 ").dim(), 2);
    }

    #[test]
    fn g_matrices() {
        let g1 = LinearAction::g1(&spec("1"));
        assert_eq!(g1.image(1), vec![(1, rat(1))]);
        assert_eq!(g1.image(2), vec![(1, rat(1)), (2, rat(1))]);
        let g1 = LinearAction::g1(&spec("2"));
        assert_eq!(g1.image(3), vec![(1, rat(1)), (2, rat(2)), (3, rat(1))]);
        assert_eq!(LinearAction::g1(&spec("0,0")), LinearAction::identity(2));

        let g2 = LinearAction::g2(&spec("1"));
        assert_eq!(g2.image(1), vec![(1, rat(1)), (2, rat(1))]);
        assert_eq!(g2.image(2), vec![(2, rat(1))]);
        let g2 = LinearAction::g2(&spec("2"));
        assert_eq!(g2.image(1), vec![(1, rat(1)), (2, rat(2)), (3, rat(1))]);
        assert_eq!(LinearAction::g2(&spec("0")), LinearAction::identity(1));
    }

    #[test]
    fn logarithms() {
        let s = spec("1");
        let d = Derivation::log_unipotent(&LinearAction::g1(&s)).unwrap();
        // (g - 1)^2 = 0, so log g = g - 1
        assert_eq!(d.matrix()[0][1], rat(1));
        assert_eq!(d.matrix()[0][0], rat(0));
        assert_eq!(d, Derivation::delta1(&s));
        let id = Derivation::log_unipotent(&LinearAction::identity(3)).unwrap();
        assert!(is_zero_matrix(&id.matrix));
        for s in ["2", "3,1", "6", "4,0,2"] {
            let s = spec(s);
            for (g, delta) in [
                (LinearAction::g1(&s), Derivation::delta1(&s)),
                (LinearAction::g2(&s), Derivation::delta2(&s)),
            ] {
                let log = Derivation::log_unipotent(&g).unwrap();
                assert_eq!(log, delta);
                assert_eq!(log.exp().unwrap(), g);
            }
        }
        let not_unipotent = LinearAction::from_matrix(vec![vec![rat(2)]]).unwrap();
        assert_eq!(
            Derivation::log_unipotent(&not_unipotent),
            Err(Error::NotUnipotent)
        );
    }

    #[test]
    fn poly_actions() {
        let s = spec("2");
        let disc = p("x2^2 - x1*x3");
        assert_eq!(LinearAction::g1(&s).act_on_poly(&disc).unwrap(), disc);
        assert_eq!(
            LinearAction::g1(&s).act_on_poly(&Poly::one()).unwrap(),
            Poly::one()
        );
        assert_eq!(
            LinearAction::g1(&spec("1")).act_on_poly(&p("x1")).unwrap(),
            p("x1")
        );
        assert!(matches!(
            LinearAction::g1(&s).act_on_poly(&p("x4")),
            Err(Error::UndeclaredVariable(_))
        ));
    }

    #[test]
    fn wreath_actions() {
        let f = Metabelian::new(2).unwrap();
        let c = f.eval(&"[x2,x1]".parse().unwrap()).unwrap();
        assert_eq!(LinearAction::g1(&spec("1")).act_on_wreath(&c).unwrap(), c);
        let x1 = f.generator(1).unwrap();
        assert_eq!(LinearAction::identity(2).act_on_wreath(&x1).unwrap(), x1);
        let f4 = Metabelian::new(4).unwrap();
        let v = f4.eval(&"[x4,x1] - 3[x3,x2]".parse().unwrap()).unwrap();
        assert_eq!(LinearAction::g1(&spec("3")).act_on_wreath(&v).unwrap(), v);
    }

    #[test]
    fn invariance_examples() {
        assert!(is_invariant(&spec("2"), &p("x2^2 - x1*x3")).unwrap());
        assert!(!is_invariant(&spec("1"), &p("x1")).unwrap());
        assert!(is_invariant(&spec("1,1"), &p("x1*x4 - x2*x3")).unwrap());
        assert!(is_annihilated(&spec("1,1"), &p("x1*x4 - x2*x3")).unwrap());
        assert!(!is_annihilated(&spec("1"), &p("x1")).unwrap());
        let f = Metabelian::new(4).unwrap();
        let v = f.eval(&"[x4,x1] - 3[x3,x2]".parse().unwrap()).unwrap();
        assert!(is_invariant(&spec("3"), &v).unwrap());
        assert!(is_annihilated(&spec("3"), &v).unwrap());
        let not = f.eval(&"[x4,x1] + 3[x3,x2]".parse().unwrap()).unwrap();
        assert!(!is_invariant(&spec("3"), &not).unwrap());
        assert!(!is_annihilated(&spec("3"), &not).unwrap());
    }

    #[test]
    fn bidegrees() {
        let s1 = spec("1");
        let comps = p("x1").bidegree_components(&s1).unwrap();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![(1, 0)]);
        let comps = p("x2^2 - x1*x3").bidegree_components(&spec("2")).unwrap();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![(2, 2)]);
        let f = Metabelian::new(2).unwrap();
        let c = f.eval(&"[x2,x1]".parse().unwrap()).unwrap();
        let comps = c.bidegree_components(&s1).unwrap();
        assert_eq!(comps.keys().copied().collect::<Vec<_>>(), vec![(1, 1)]);
        let comps = p("x1 + x2 + x1*x2").bidegree_components(&s1).unwrap();
        assert_eq!(comps.len(), 3);
    }
}
