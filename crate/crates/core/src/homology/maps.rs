//! The named chain maps between diagram complexes and the tensor complex
//! `Z ⊗ T0`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::chain::{ChainComplex, ChainMap, InducedMap};
use super::engine::HomologyEngine;
use crate::complex::ComplexVariant;
use crate::diagram::{Bigrading, Parity};
use crate::error::{Error, Result};
use crate::hopf::Algebra;
use crate::lincomb::LinComb;
use crate::linalg::IntMatrix;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedMap {
    /// `Tss → T`, killing asterisk diagrams.
    Projection,
    /// `T0 → Ts`.
    Inclusion,
    /// `I: (Tss, ∂_h) → Tss`.
    IsoI,
    /// `Î: Z ⊗ T0 → T`.
    IsoIHat,
}

impl NamedMap {
    pub const ALL: [NamedMap; 4] = [NamedMap::Projection, NamedMap::Inclusion, NamedMap::IsoI, NamedMap::IsoIHat];

    pub fn name(self) -> &'static str {
        match self {
            NamedMap::Projection => "projection",
            NamedMap::Inclusion => "inclusion",
            NamedMap::IsoI => "iso-I",
            NamedMap::IsoIHat => "iso-I-hat",
        }
    }
}

impl fmt::Display for NamedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedMap {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NamedMap::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown map `{s}`")))
    }
}

/// One basis element of a tensor complex: `(i, j, position)` of the left
/// and the right factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorBasisElement {
    pub z: (usize, usize, usize),
    pub t: (usize, usize, usize),
}

/// A tensor product complex at fixed total complexity, with its basis
/// labels per degree.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: ChainComplex,
    pub basis: Vec<Vec<TensorBasisElement>>,
    pub index: Vec<HashMap<TensorBasisElement, usize>>,
}

impl HomologyEngine {
    /// `Z ⊗ T0` of total complexity `i`.
    pub fn tensor_z_t0(&mut self, parity: Parity, i: usize) -> Result<TensorComplex> {
        self.tensor_complex(ComplexVariant::Z, ComplexVariant::T0, parity, i)
    }

    /// `L ⊗ R` of total complexity `i`, with
    /// `∂(a ⊗ b) = ∂a ⊗ b + (-1)^{|a|} a ⊗ ∂b`.
    pub fn tensor_complex(&mut self, left: ComplexVariant, right: ComplexVariant, parity: Parity, i: usize) -> Result<TensorComplex> {
        let top = 2 * i;
        let mut basis: Vec<Vec<TensorBasisElement>> = vec![Vec::new(); top + 1];
        // block offsets keyed by (i1, j1, j2)
        let mut offsets: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (j, slot) in basis.iter_mut().enumerate() {
            for i1 in 0..=i {
                let i2 = i - i1;
                for j1 in 0..=j.min(2 * i1) {
                    let j2 = j - j1;
                    if j2 > 2 * i2 {
                        continue;
                    }
                    let da = self.slice(left, parity, i1, j1)?.dim();
                    let db = self.slice(right, parity, i2, j2)?.dim();
                    offsets.insert((i1, j1, j2), slot.len());
                    for a in 0..da {
                        for b in 0..db {
                            slot.push(TensorBasisElement {
                                z: (i1, j1, a),
                                t: (i2, j2, b),
                            });
                        }
                    }
                }
            }
        }
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mut boundaries = Vec::with_capacity(top);
        for j in 1..=top {
            let mut columns = Vec::with_capacity(dims[j]);
            for e in &basis[j] {
                let (i1, j1, a) = e.z;
                let (i2, j2, b) = e.t;
                let mut col: Vec<(usize, BigInt)> = Vec::new();
                if j1 >= 1 {
                    let da = self.matrix(left, parity, i1, j1)?;
                    if let Some(&off) = offsets.get(&(i1, j1 - 1, j2)) {
                        let db = self.slice(right, parity, i2, j2)?.dim();
                        for (r, v) in &da.matrix.columns[a] {
                            col.push((off + r * db + b, v.clone()));
                        }
                    }
                }
                if j2 >= 1 {
                    let dbm = self.matrix(right, parity, i2, j2)?;
                    if let Some(&off) = offsets.get(&(i1, j1, j2 - 1)) {
                        let db = self.slice(right, parity, i2, j2 - 1)?.dim();
                        let sign = if Bigrading::new(i1, j1).degree_is_odd(parity) { -1 } else { 1 };
                        for (r, v) in &dbm.matrix.columns[b] {
                            col.push((off + a * db + r, v * sign));
                        }
                    }
                }
                columns.push(col);
            }
            boundaries.push(IntMatrix::from_columns(dims[j - 1], columns));
        }
        let index = basis
            .iter()
            .map(|slot| slot.iter().enumerate().map(|(k, e)| (*e, k)).collect())
            .collect();
        Ok(TensorComplex {
            complex: ChainComplex::new(dims, boundaries)?,
            basis,
            index,
        })
    }

    /// The named map at complexity `i` as a chain map over all `j`,
    /// checked to commute with the differentials.
    pub fn chain_map(&mut self, map: NamedMap, parity: Parity, i: usize) -> Result<ChainMap> {
        use ComplexVariant::*;
        let top = 2 * i;
        let tensor = if map == NamedMap::IsoIHat {
            Some(self.tensor_z_t0(parity, i)?)
        } else {
            None
        };
        let (source, target) = match map {
            NamedMap::Projection => (self.chain_complex(Tss, parity, i)?, self.chain_complex(T, parity, i)?),
            NamedMap::Inclusion => (self.chain_complex(T0, parity, i)?, self.chain_complex(Ts, parity, i)?),
            NamedMap::IsoI => (self.chain_complex(TssH, parity, i)?, self.chain_complex(Tss, parity, i)?),
            NamedMap::IsoIHat => (
                tensor.as_ref().expect("tensor complex").complex.clone(),
                self.chain_complex(T, parity, i)?,
            ),
        };
        let mut algebra = Algebra::new(parity);
        let mut components = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let images: Vec<LinComb> = match map {
                NamedMap::Projection => self
                    .slice(Tss, parity, i, j)?
                    .elements()
                    .into_iter()
                    .map(|x| x.filtered(|d| !d.has_asterisks()))
                    .collect(),
                NamedMap::Inclusion => self.slice(T0, parity, i, j)?.elements(),
                NamedMap::IsoI => {
                    let mut out = Vec::new();
                    for x in self.slice(TssH, parity, i, j)?.elements() {
                        out.push(algebra.iso_i(&x)?);
                    }
                    out
                }
                NamedMap::IsoIHat => {
                    let mut out = Vec::new();
                    for e in &tensor.as_ref().expect("tensor complex").basis[j] {
                        let z = self.slice(Z, parity, e.z.0, e.z.1)?.element(e.z.2);
                        let t = self.slice(T0, parity, e.t.0, e.t.1)?.element(e.t.2);
                        out.push(algebra.iso_i_hat(&z, &t)?);
                    }
                    out
                }
            };
            let target_slice = match map {
                NamedMap::Projection | NamedMap::IsoIHat => self.slice(T, parity, i, j)?,
                NamedMap::Inclusion => self.slice(Ts, parity, i, j)?,
                NamedMap::IsoI => self.slice(Tss, parity, i, j)?,
            };
            let mut columns = Vec::with_capacity(images.len());
            for y in &images {
                columns.push(target_slice.coordinates(y)?);
            }
            components.push(IntMatrix::from_columns(target_slice.dim(), columns));
        }
        let cm = ChainMap {
            name: map.name().to_string(),
            source,
            target,
            components,
        };
        cm.check(i)?;
        Ok(cm)
    }

    pub fn induced_map_on_homology(&mut self, map: NamedMap, parity: Parity, i: usize, j: usize, ring: Ring) -> Result<InducedMap> {
        let cm = self.chain_map(map, parity, i)?;
        cm.induced(j, ring, self.snf_limits())
    }

    /// Whether the named map is a quasi-isomorphism at complexity `i`.
    pub fn is_quasi_isomorphism(&mut self, map: NamedMap, parity: Parity, i: usize, ring: Ring) -> Result<bool> {
        let cm = self.chain_map(map, parity, i)?;
        cm.is_quasi_isomorphism(ring, self.snf_limits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_at_low_complexity() {
        let mut e = HomologyEngine::default();
        for parity in Parity::BOTH {
            for map in NamedMap::ALL {
                for i in 0..=2 {
                    assert!(e.is_quasi_isomorphism(map, parity, i, Ring::Integers).unwrap(), "{map} {parity} i={i}");
                }
            }
        }
    }

    #[test]
    fn induced_matrix_is_invertible() {
        let mut e = HomologyEngine::default();
        let m = e.induced_map_on_homology(NamedMap::Projection, Parity::Odd, 1, 2, Ring::Rationals).unwrap();
        assert_eq!(m.rank, Some(1));
        assert!(m.is_isomorphism);
        assert_eq!("iso-I-hat".parse::<NamedMap>().unwrap(), NamedMap::IsoIHat);
    }
}
