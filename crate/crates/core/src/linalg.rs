//! Exact Gaussian elimination over sparse rational vectors.
//!
//! Vectors are `BTreeMap<K, Rational>` keyed by any ordered coordinate type.
//! Rows are stored with a unit coefficient at their largest key; when tracking
//! is on, every row remembers which combination of the inserted vectors
//! produced it, which yields kernels and span solutions for free.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, c: &Rational, v: &SparseVec<K>) {
    for (k, a) in v {
        let delta = c * a;
        match target.get_mut(k) {
            Some(x) => {
                *x += delta;
                if x.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                if !delta.is_zero() {
                    target.insert(k.clone(), delta);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    vec: SparseVec<K>,
    combo: SparseVec<usize>,
}

/// Incremental row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Subtracts pivot rows until the leading key has no pivot.
    /// Returns the remainder and the combination that was subtracted.
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used = SparseVec::new();
        while let Some((k, c)) = v.last_key_value() {
            let Some(&r) = self.pivots.get(k) else { break };
            let c = c.clone();
            let row = &self.rows[r];
            axpy(&mut v, &-&c, &row.vec);
            axpy(&mut used, &c, &row.combo);
        }
        (v, used)
    }

    fn push(&mut self, rem: SparseVec<K>, combo: SparseVec<usize>) {
        let (k, lc) = rem
            .last_key_value()
            .map(|(k, c)| (k.clone(), c.clone()))
            .expect("nonzero");
        let inv = lc.recip();
        let vec = rem.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let combo = combo.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        self.pivots.insert(k, self.rows.len());
        self.rows.push(Row { vec, combo });
    }

    /// Inserts a vector; returns whether it was independent of the previous ones.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let (rem, _) = self.reduce(v);
        if rem.is_empty() {
            false
        } else {
            self.push(rem, SparseVec::new());
            true
        }
    }

    /// Inserts input number `id`. If it depends on earlier tracked inputs,
    /// returns the relation `sum_j c_j * input_j = 0` (with `c_id = 1`).
    pub fn insert_tracked(&mut self, id: usize, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce(v);
        let mut combo = SparseVec::new();
        combo.insert(id, Rational::one());
        axpy(&mut combo, &-Rational::one(), &used);
        if rem.is_empty() {
            Some(combo)
        } else {
            self.push(rem, combo);
            None
        }
    }

    /// Writes `v` as a combination of the tracked inputs, if it lies in their span.
    pub fn express(&self, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let (rem, used) = self.reduce(v);
        rem.is_empty().then_some(used)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<K: Ord + Clone, I: IntoIterator<Item = SparseVec<K>>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the kernel of the linear map sending basis vector `i` to `images[i]`.
pub fn kernel<K: Ord + Clone>(images: Vec<SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (i, v) in images.into_iter().enumerate() {
        if let Some(rel) = e.insert_tracked(i, v) {
            out.push(rel);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn sv(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, rat(c))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let vs = vec![
            sv(&[(0, 1), (1, 2)]),
            sv(&[(1, 1), (2, 1)]),
            sv(&[(0, 1), (1, 4), (2, 2)]),
        ];
        assert_eq!(rank(vs.clone()), 2);
        let ker = kernel(vs);
        assert_eq!(ker.len(), 1);
        // v0 + 2 v1 - v2 = 0
        let rel = &ker[0];
        let scale = rel[&2].clone();
        assert_eq!(rel[&0].clone() / &scale, rat(-1));
        assert_eq!(rel[&1].clone() / &scale, rat(-2));
    }

    #[test]
    fn express_in_span() {
        let mut e = Echelon::new();
        e.insert_tracked(0, sv(&[(0, 1), (1, 1)]));
        e.insert_tracked(1, sv(&[(1, 1), (2, 3)]));
        let c = e.express(sv(&[(0, 2), (1, 5), (2, 9)])).unwrap();
        assert_eq!(c[&0], rat(2));
        assert_eq!(c[&1], rat(3));
        assert!(e.express(sv(&[(2, 1)])).is_none());
    }
}
