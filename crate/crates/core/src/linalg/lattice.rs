//! Sublattices of `Z^n` kept in row echelon form with integer pivots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::normalize_sparse;

pub type SparseVec = Vec<(usize, BigInt)>;

/// The integer span of the inserted vectors. Each basis row is indexed by
/// its leading column and has a positive leading entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lattice {
    rows: BTreeMap<usize, SparseVec>,
}

fn lead(v: &SparseVec) -> Option<(usize, &BigInt)> {
    v.first().map(|(c, x)| (*c, x))
}

fn combine(a: &SparseVec, x: &BigInt, b: &SparseVec, y: &BigInt) -> SparseVec {
    normalize_sparse(
        a.iter()
            .map(|(c, v)| (*c, v * x))
            .chain(b.iter().map(|(c, v)| (*c, v * y)))
            .collect(),
    )
}

impl Lattice {
    pub fn new() -> Self {
        Lattice::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, v: SparseVec) {
        let mut v = normalize_sparse(v);
        while let Some((c, a)) = lead(&v) {
            let a = a.clone();
            let Some(p) = self.rows.get(&c).cloned() else {
                if a.is_negative() {
                    v = v.into_iter().map(|(c, x)| (c, -x)).collect();
                }
                self.rows.insert(c, v);
                return;
            };
            let b = p[0].1.clone();
            if a.is_multiple_of(&b) {
                v = combine(&v, &BigInt::from(1), &p, &-(&a / &b));
                continue;
            }
            let e = b.extended_gcd(&a);
            let g = e.gcd;
            // new pivot row with leading gcd, old pair replaced unimodularly
            let new_pivot = combine(&p, &e.x, &v, &e.y);
            let rest = combine(&v, &(&b / &g), &p, &-(&a / &g));
            self.rows.insert(c, new_pivot);
            v = rest;
        }
    }

    /// Basis rows ordered by leading column.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().cloned().collect()
    }

    /// Integer coordinates of `v` in [`Lattice::basis`], if `v` lies in the
    /// lattice.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<BigInt>> {
        let mut v = normalize_sparse(v.clone());
        let mut out = Vec::with_capacity(self.rows.len());
        for (c, p) in &self.rows {
            let x = v.iter().find(|e| e.0 == *c).map(|e| e.1.clone()).unwrap_or_default();
            if let Some((lc, _)) = lead(&v) {
                if lc < *c {
                    return None;
                }
            }
            if x.is_zero() {
                out.push(BigInt::zero());
                continue;
            }
            let (q, r) = x.div_rem(&p[0].1);
            if !r.is_zero() {
                return None;
            }
            v = combine(&v, &BigInt::from(1), p, &-&q);
            out.push(q);
        }
        v.is_empty().then_some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(x: &[i64]) -> SparseVec {
        x.iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(c, v)| (c, BigInt::from(*v)))
            .collect()
    }

    #[test]
    fn gcd_pivots() {
        let mut l = Lattice::new();
        l.insert(sv(&[4, 1, 0]));
        l.insert(sv(&[6, 0, 1]));
        // 2*(4,1,0) - ... span has a pivot of 2 in column 0
        assert_eq!(l.rank(), 2);
        assert_eq!(l.basis()[0][0].1, BigInt::from(2));
        assert!(l.coordinates(&sv(&[10, 1, 1])).is_some());
        assert!(l.coordinates(&sv(&[1, 0, 0])).is_none());
        assert!(l.coordinates(&sv(&[0, 0, 1])).is_none());
        let c = l.coordinates(&sv(&[4, 1, 0])).unwrap();
        let back = l
            .basis()
            .iter()
            .zip(&c)
            .fold(SparseVec::new(), |acc, (row, x)| combine(&acc, &BigInt::from(1), row, x));
        assert_eq!(back, sv(&[4, 1, 0]));
    }
}
