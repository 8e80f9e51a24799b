//! Künneth comparison of `H(T)` with `H(Z) ⊗ H(T0)`, and the splitting of
//! the lower diagonal.

use serde::{Deserialize, Serialize};

use super::chain::HomologyValue;
use super::chord_space::{chord_space_dims, ChordRelations};
use super::engine::HomologyEngine;
use super::group::HomologyGroup;
use crate::complex::ComplexVariant;
use crate::diagram::Parity;
use crate::error::Result;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethRow {
    pub i: usize,
    pub j: usize,
    pub observed: HomologyValue,
    pub predicted: HomologyValue,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethReport {
    pub parity: Parity,
    pub ring: Ring,
    pub rows: Vec<KunnethRow>,
}

impl KunnethReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// For each `(i, j)` with `i ≤ i_max`, `H(T)` against the Künneth
/// combination of `H(Z)` and `H(T0)`; over `Z` the Tor terms sit one
/// degree up.
pub fn kunneth_compare(engine: &mut HomologyEngine, parity: Parity, i_max: usize, ring: Ring) -> Result<KunnethReport> {
    use ComplexVariant::{T, T0, Z};
    let mut rows = Vec::new();
    for i in 0..=i_max {
        for j in 0..=2 * i {
            let observed = engine.homology_group(T, parity, i, j, ring)?;
            let mut group = HomologyGroup::zero();
            let mut dim = 0usize;
            for i1 in 0..=i {
                let i2 = i - i1;
                for j1 in 0..=j.min(2 * i1) {
                    let j2 = j - j1;
                    if j2 > 2 * i2 {
                        continue;
                    }
                    let hz = engine.homology_group(Z, parity, i1, j1, ring)?;
                    let ht = engine.homology_group(T0, parity, i2, j2, ring)?;
                    match (&hz, &ht) {
                        (HomologyValue::Group(a), HomologyValue::Group(b)) => group = group.direct_sum(&a.tensor(b)),
                        _ => dim += hz.rank() * ht.rank(),
                    }
                }
                if ring == Ring::Integers && j >= 1 {
                    let jt = j - 1;
                    for j1 in 0..=jt.min(2 * i1) {
                        let j2 = jt - j1;
                        if j2 > 2 * i2 {
                            continue;
                        }
                        let hz = engine.homology_group(Z, parity, i1, j1, ring)?;
                        let ht = engine.homology_group(T0, parity, i2, j2, ring)?;
                        if let (HomologyValue::Group(a), HomologyValue::Group(b)) = (&hz, &ht) {
                            group = group.direct_sum(&a.tor(b));
                        }
                    }
                }
            }
            let predicted = match ring {
                Ring::Integers => HomologyValue::Group(group),
                _ => HomologyValue::Dimension(dim),
            };
            rows.push(KunnethRow {
                i,
                j,
                matches: observed == predicted,
                observed,
                predicted,
            });
        }
    }
    Ok(KunnethReport { parity, ring, rows })
}

/// Lower-diagonal dimensions over `Q`: `B_i` from `T`, `(B0)_i` from `Ts`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordSplitReport {
    pub parity: Parity,
    pub b: Vec<usize>,
    pub b0: Vec<usize>,
    /// `Σ_k (B0)_{i-k} · dim(Θ-part)_k`.
    pub predicted: Vec<usize>,
    /// Brute-force 4T and 4T+1T dimensions (odd parity only).
    pub oracle_b: Option<Vec<usize>>,
    pub oracle_b0: Option<Vec<usize>>,
}

impl ChordSplitReport {
    pub fn splitting_holds(&self) -> bool {
        self.b == self.predicted
    }

    pub fn oracle_agrees(&self) -> bool {
        self.oracle_b.as_ref().is_none_or(|o| *o == self.b) && self.oracle_b0.as_ref().is_none_or(|o| *o == self.b0)
    }
}

/// Odd parity: `B = B0 ⊗ Q[Θ]`. Even parity: `Θ² = 0` rationally, so
/// `B = B0 ⊗ Q[Θ]/(Θ²)`.
pub fn chord_split(engine: &mut HomologyEngine, parity: Parity, order_max: usize) -> Result<ChordSplitReport> {
    let mut b = Vec::new();
    let mut b0 = Vec::new();
    for i in 0..=order_max {
        b.push(engine.dual_homology_group(ComplexVariant::T, parity, i, 2 * i, Ring::Rationals)?.rank());
        b0.push(engine.dual_homology_group(ComplexVariant::Ts, parity, i, 2 * i, Ring::Rationals)?.rank());
    }
    let theta = |k: usize| -> usize {
        match parity {
            Parity::Odd => 1,
            Parity::Even => usize::from(k <= 1),
        }
    };
    let predicted = (0..=order_max)
        .map(|i| (0..=i).map(|k| b0[i - k] * theta(k)).sum())
        .collect();
    let (oracle_b, oracle_b0) = if parity == Parity::Odd {
        (
            Some(chord_space_dims(order_max, ChordRelations::FourTerm, Ring::Rationals)?),
            Some(chord_space_dims(order_max, ChordRelations::FourTermOneTerm, Ring::Rationals)?),
        )
    } else {
        (None, None)
    };
    Ok(ChordSplitReport {
        parity,
        b,
        b0,
        predicted,
        oracle_b,
        oracle_b0,
    })
}
