//! Exact linear algebra over `Q` and prime fields.

use std::collections::HashMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Arithmetic of a field whose elements are plain values.
pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + std::fmt::Display + Send + Sync;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, x: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField(pub u64);

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn from_bigint(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        x.mod_floor(&p).to_u64().expect("reduced value fits")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.0 as u128 - *b as u128) % self.0 as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat
        let mut base = *a as u128;
        let mut e = self.0 - 2;
        let m = self.0 as u128;
        let mut acc = 1u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        acc as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, x: &BigInt) -> BigRational {
        BigRational::from_integer(x.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// `target -= factor * pivot`, both rows sorted by column.
fn axpy<F: Field>(f: &F, target: &SparseRow<F::Elem>, factor: &F::Elem, pivot: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < target.len() || b < pivot.len() {
        let ca = target.get(a).map(|x| x.0).unwrap_or(usize::MAX);
        let cb = pivot.get(b).map(|x| x.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(target[a].clone());
            a += 1;
        } else if cb < ca {
            let v = f.neg(&f.mul(factor, &pivot[b].1));
            if !f.is_zero(&v) {
                out.push((cb, v));
            }
            b += 1;
        } else {
            let v = f.sub(&target[a].1, &f.mul(factor, &pivot[b].1));
            if !f.is_zero(&v) {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Incremental row echelon form over a field.
pub struct Echelon<F: Field> {
    field: F,
    /// pivot column -> row whose leading entry (at that column) is one
    pivots: HashMap<usize, SparseRow<F::Elem>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots by its leading entries.
    pub fn reduce(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        let mut start = 0;
        while start < row.len() {
            let (col, val) = row[start].clone();
            match self.pivots.get(&col) {
                Some(p) => {
                    row = axpy(&self.field, &row, &val, p);
                    // entries before `start` are untouched pivot-free columns
                }
                None => start += 1,
            }
        }
        row
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        let row = self.reduce(row);
        let Some((col, lead)) = row.iter().find(|(c, _)| !self.pivots.contains_key(c)).cloned() else {
            return false;
        };
        let inv = self.field.inv(&lead);
        let normalized: SparseRow<F::Elem> = row
            .into_iter()
            .map(|(c, v)| (c, self.field.mul(&v, &inv)))
            .collect();
        self.pivots.insert(col, normalized);
        true
    }

    pub fn contains(&self, row: SparseRow<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a sparse matrix given by rows.
pub fn rank<F: Field>(field: F, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> usize {
    let mut rows: Vec<_> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(|r| r.len());
    let mut e = Echelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank over `ring`, which must be a field.
pub fn rank_over(ring: Ring, rows: &[Vec<(usize, BigInt)>]) -> Result<usize> {
    match ring {
        Ring::Integers => Err(Error::FieldRequired),
        Ring::Rationals => Ok(rank(
            Rationals,
            rows.iter()
                .map(|r| r.iter().map(|(c, v)| (*c, Rationals.from_bigint(v))).collect()),
        )),
        Ring::PrimeField(p) => {
            let f = PrimeField(p);
            Ok(rank(
                f,
                rows.iter().map(|r| {
                    r.iter()
                        .map(|(c, v)| (*c, f.from_bigint(v)))
                        .filter(|(_, v)| *v != 0)
                        .collect()
                }),
            ))
        }
    }
}

/// Dense matrix over a field, for the small subspace computations of the
/// homology engine (cycle bases, induced maps).
#[derive(Clone, Debug)]
pub struct DenseMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<F::Elem>>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![vec![f.zero(); cols]; rows],
        }
    }

    pub fn from_int_columns(f: &F, rows: usize, columns: &[Vec<(usize, BigInt)>]) -> Self {
        let mut m = Self::zeros(f, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                m.data[*r][c] = f.from_bigint(v);
            }
        }
        m
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&k| !f.is_zero(&self.data[k][c])) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = f.inv(&self.data[r][c]);
            for x in self.data[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
            let pivot_row = self.data[r].clone();
            for k in 0..self.rows {
                if k != r && !f.is_zero(&self.data[k][c]) {
                    let factor = self.data[k][c].clone();
                    for (x, y) in self.data[k].iter_mut().zip(&pivot_row) {
                        *x = f.sub(x, &f.mul(&factor, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of `{x : A x = 0}` as column vectors.
    pub fn kernel(&self, f: &F) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(&m.data[r][fc]);
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }
}

/// Chooses, among `candidates`, vectors completing a basis of `base` to a
/// basis of `span(base, candidates)`; returns the chosen indices.
pub fn extend_basis<F: Field>(f: &F, base: &[Vec<F::Elem>], candidates: &[Vec<F::Elem>]) -> Vec<usize> {
    let mut e = Echelon::new(f.clone());
    let to_sparse = |v: &Vec<F::Elem>| -> SparseRow<F::Elem> {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(c, x)| (c, x.clone()))
            .collect()
    };
    for b in base {
        e.insert(to_sparse(b));
    }
    candidates
        .iter()
        .enumerate()
        .filter(|(_, c)| e.insert(to_sparse(c)))
        .map(|(i, _)| i)
        .collect()
}

/// Solves `sum_k x_k basis_k = target` for `x`, if possible.
pub fn solve_in_span<F: Field>(f: &F, basis: &[Vec<F::Elem>], target: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let dim = target.len();
    let cols = basis.len();
    // augmented matrix [basis | target]
    let mut m = DenseMatrix::<F>::zeros(f, dim, cols + 1);
    for (c, v) in basis.iter().enumerate() {
        for r in 0..dim {
            m.data[r][c] = v[r].clone();
        }
    }
    for r in 0..dim {
        m.data[r][cols] = target[r].clone();
    }
    let pivots = m.rref(f);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m.data[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(rows: &[&[i64]]) -> Vec<Vec<(usize, BigInt)>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(c, v)| (c, BigInt::from(*v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let rows = int_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(rank_over(Ring::Rationals, &rows).unwrap(), 2);
        assert_eq!(rank_over(Ring::PrimeField(2), &rows).unwrap(), 0);
        assert_eq!(rank_over(Ring::PrimeField(3), &rows).unwrap(), 2);
        assert_eq!(rank_over(Ring::Integers, &rows), Err(Error::FieldRequired));
        let rows = int_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]);
        assert_eq!(rank_over(Ring::Rationals, &rows).unwrap(), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let f = PrimeField(7);
        let mut m = DenseMatrix::<PrimeField>::zeros(&f, 2, 3);
        m.data = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = m.kernel(&f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(&f, v).iter().all(|x| *x == 0));
        }
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(solve_in_span(&f, &basis, &[2, 3, 5]), Some(vec![2, 3]));
        assert_eq!(solve_in_span(&f, &basis, &[2, 3, 4]), None);
        assert_eq!(extend_basis(&f, &basis[..1], &[vec![2, 0, 2], vec![0, 1, 1]]), vec![1]);
    }
}
