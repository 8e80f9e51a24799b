//! Smith normal form of sparse integer matrices.
//!
//! Unit pivots are eliminated first on the sparse representation; the
//! remainder is diagonalized densely with arbitrary precision entries.
//! Extra vectors may be carried along through every row operation, which
//! yields their classes in the cokernel.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Positive invariant factors, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SnfResult {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Caps protecting against runaway elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnfLimits {
    pub max_entry_bits: u64,
    pub max_dense_cells: usize,
}

impl Default for SnfLimits {
    fn default() -> Self {
        SnfLimits {
            max_entry_bits: 4096,
            max_dense_cells: 40_000_000,
        }
    }
}

/// Class of a vector in `Z^rows / image`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelClass {
    /// (invariant factor `> 1`, residue in `0..factor`)
    pub torsion: Vec<(BigInt, BigInt)>,
    /// Coordinates along the free summands.
    pub free: Vec<BigInt>,
}

impl CokernelClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|(_, r)| r.is_zero()) && self.free.iter().all(Zero::is_zero)
    }

    /// Additive order, or `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |acc, (m, r)| {
            let o = m / m.gcd(r);
            acc.lcm(&o)
        }))
    }

    /// gcd of the free coordinates (zero when all vanish).
    pub fn free_content(&self) -> BigInt {
        self.free.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub snf: SnfResult,
    /// Number of free summands of the cokernel.
    pub free_rank: usize,
    pub classes: Vec<CokernelClass>,
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SnfResult> {
    Ok(cokernel(m, &[], SnfLimits::default())?.snf)
}

pub fn smith_normal_form_with(m: &IntMatrix, limits: SnfLimits) -> Result<SnfResult> {
    Ok(cokernel(m, &[], limits)?.snf)
}

/// Smith form of `m` together with the cokernel classes of `vectors`
/// (each a sparse vector of length `m.rows`).
pub fn cokernel(m: &IntMatrix, vectors: &[Vec<(usize, BigInt)>], limits: SnfLimits) -> Result<Cokernel> {
    let real = m.cols;
    let tracked = vectors.len();
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); real];
    for (c, col) in m.columns.iter().enumerate() {
        for (r, v) in col {
            if !v.is_zero() {
                rows[*r].insert(c, v.clone());
                col_rows[c].insert(*r);
            }
        }
    }
    for (t, v) in vectors.iter().enumerate() {
        for (r, x) in v {
            if !x.is_zero() {
                *rows[*r].entry(real + t).or_default() += x;
            }
        }
    }
    let mut eliminated = vec![false; m.rows];
    let mut unit_pivots = 0usize;

    // sparse phase: unit pivots, cheapest first
    loop {
        let mut order: Vec<usize> = (0..real).filter(|&c| !col_rows[c].is_empty()).collect();
        order.sort_by_key(|&c| col_rows[c].len());
        let mut progress = false;
        for c in order {
            let pick = col_rows[c]
                .iter()
                .filter(|&&r| rows[r][&c].abs().is_one())
                .min_by_key(|&&r| rows[r].range(..real).count())
                .copied();
            let Some(r) = pick else { continue };
            let pivot_row = std::mem::take(&mut rows[r]);
            let u = pivot_row[&c].clone();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&k| k != r).collect();
            for k in others {
                let factor = &rows[k][&c] * &u;
                for (col, v) in &pivot_row {
                    let entry = rows[k].entry(*col).or_default();
                    *entry -= &factor * v;
                    if entry.is_zero() {
                        rows[k].remove(col);
                        if *col < real {
                            col_rows[*col].remove(&k);
                        }
                    } else {
                        if entry.bits() > limits.max_entry_bits {
                            return Err(Error::ResourceLimit(format!(
                                "Smith form entry exceeds {} bits",
                                limits.max_entry_bits
                            )));
                        }
                        if *col < real {
                            col_rows[*col].insert(k);
                        }
                    }
                }
            }
            for col in pivot_row.keys() {
                if *col < real {
                    col_rows[*col].remove(&r);
                }
            }
            eliminated[r] = true;
            unit_pivots += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    // dense phase on what is left
    let dense_rows: Vec<usize> = (0..m.rows)
        .filter(|&r| !eliminated[r] && rows[r].range(..real).next().is_some())
        .collect();
    let free_rows: Vec<usize> = (0..m.rows)
        .filter(|&r| !eliminated[r] && rows[r].range(..real).next().is_none())
        .collect();
    let dense_cols: Vec<usize> = (0..real).filter(|&c| !col_rows[c].is_empty()).collect();
    let width = dense_cols.len() + tracked;
    if dense_rows.len().saturating_mul(width) > limits.max_dense_cells {
        return Err(Error::ResourceLimit(format!(
            "dense Smith block {}x{} exceeds the cell cap",
            dense_rows.len(),
            width
        )));
    }
    let col_pos: BTreeMap<usize, usize> = dense_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let nc = dense_cols.len();
    let mut a: Vec<Vec<BigInt>> = dense_rows
        .iter()
        .map(|&r| {
            let mut row = vec![BigInt::zero(); width];
            for (c, v) in &rows[r] {
                if *c < real {
                    row[col_pos[c]] = v.clone();
                } else {
                    row[nc + c - real] = v.clone();
                }
            }
            row
        })
        .collect();
    let diag = dense_smith(&mut a, nc, limits)?;

    let mut factors: Vec<BigInt> = vec![BigInt::one(); unit_pivots];
    factors.extend(diag.iter().cloned());
    let rank = factors.len();
    let mut classes = Vec::with_capacity(tracked);
    for t in 0..tracked {
        let mut torsion = Vec::new();
        for (k, d) in diag.iter().enumerate() {
            if !d.is_one() {
                torsion.push((d.clone(), a[k][nc + t].mod_floor(d)));
            }
        }
        let mut free: Vec<BigInt> = (diag.len()..a.len()).map(|k| a[k][nc + t].clone()).collect();
        free.extend(
            free_rows
                .iter()
                .map(|&r| rows[r].get(&(real + t)).cloned().unwrap_or_default()),
        );
        classes.push(CokernelClass { torsion, free });
    }
    let free_rank = m.rows - rank;
    Ok(Cokernel {
        snf: SnfResult {
            invariant_factors: factors,
            rank,
        },
        free_rank,
        classes,
    })
}

/// Diagonalizes the first `nc` columns of `a` in place; the remaining
/// columns only receive row operations. Returns the diagonal.
fn dense_smith(a: &mut [Vec<BigInt>], nc: usize, limits: SnfLimits) -> Result<Vec<BigInt>> {
    let nr = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        swap_cols(a, t, bj);
        loop {
            let p = a[t][t].clone();
            let mut moved = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                row_sub(a, i, t, &q, limits)?;
                if !a[i][t].is_zero() {
                    moved = true;
                }
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                col_sub(a, j, t, &q, nc, limits)?;
                if !a[t][j].is_zero() {
                    moved = true;
                }
            }
            if moved {
                // bring the smallest remainder of row/column t to the corner
                let mut best = (t, t);
                for i in t + 1..nr {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..nc {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                swap_cols(a, t, best.1);
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_sub(a, t, i, &minus_one, limits)?;
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }
    Ok(diag)
}

fn row_sub(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt, limits: SnfLimits) -> Result<()> {
    let (x, y) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (u, v) in x.iter_mut().zip(y.iter()) {
        if !v.is_zero() {
            *u -= q * v;
            if u.bits() > limits.max_entry_bits {
                return Err(Error::ResourceLimit("Smith form entry size".into()));
            }
        }
    }
    Ok(())
}

fn col_sub(a: &mut [Vec<BigInt>], target: usize, src: usize, q: &BigInt, nc: usize, limits: SnfLimits) -> Result<()> {
    debug_assert!(target < nc && src < nc);
    for row in a.iter_mut() {
        if !row[src].is_zero() {
            let d = q * &row[src];
            row[target] -= d;
            if row[target].bits() > limits.max_entry_bits {
                return Err(Error::ResourceLimit("Smith form entry size".into()));
            }
        }
    }
    Ok(())
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}
