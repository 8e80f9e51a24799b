//! Exact linear algebra: field elimination, Smith normal form, integer
//! lattices.

pub mod field;
pub mod lattice;
pub mod snf;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

/// Sparse integer matrix stored by columns; each column is sorted by row
/// and holds no zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from columns, sorting entries and merging repeats.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, BigInt)>>) -> Self {
        let cols = columns.len();
        let columns = columns.into_iter().map(normalize_sparse).collect();
        IntMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.columns[j].push((i, BigInt::from(v)));
                }
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.columns[c]
            .iter()
            .find(|e| e.0 == r)
            .map(|e| e.1.clone())
            .unwrap_or_default()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                cols[*r].push((c, v.clone()));
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: cols,
        }
    }

    /// Row-major sparse rows.
    pub fn rows_sparse(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.transpose().columns
    }

    /// `self * other`.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|col| self.apply(col))
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    /// Matrix times a sparse vector.
    pub fn apply(&self, v: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
        let mut acc: Vec<(usize, BigInt)> = Vec::new();
        for (k, x) in v {
            for (r, y) in &self.columns[*k] {
                acc.push((*r, x * y));
            }
        }
        normalize_sparse(acc)
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| normalize_sparse(a.iter().chain(b).cloned().collect()))
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            columns,
        }
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(|(r, v)| (*r, -v)).collect())
                .collect(),
        }
    }

    /// Sparse triplet dump `row col value`, one line per nonzero entry.
    pub fn to_triplets(&self) -> String {
        let mut out = String::new();
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                let _ = writeln!(out, "{r} {c} {v}");
            }
        }
        out
    }
}

pub(crate) fn normalize_sparse(mut v: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    v.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(v.len());
    for (r, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += x,
            _ => out.push((r, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}
