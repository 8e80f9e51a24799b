//! Checks of the Hopf structure on homology.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::chain::homology_representatives;
use super::engine::HomologyEngine;
use super::maps::TensorBasisElement;
use crate::complex::ComplexVariant;
use crate::diagram::Parity;
use crate::error::{Error, Result};
use crate::hopf::{coproduct_lin, Algebra};
use crate::lincomb::LinComb;
use crate::ring::Ring;

/// Outcome of one check at one bigrading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperationCheck {
    pub complex: ComplexVariant,
    pub parity: Parity,
    pub i: usize,
    pub j: usize,
    pub checked: usize,
    pub holds: bool,
}

impl HomologyEngine {
    /// For each homology class at complexity `i` over the field `ring`,
    /// whether `Δx - τΔx` is a boundary of `C ⊗ C`.
    pub fn cocommutativity(&mut self, variant: ComplexVariant, parity: Parity, i: usize, ring: Ring) -> Result<Vec<OperationCheck>> {
        if !ring.is_field() {
            return Err(Error::FieldRequired);
        }
        if variant == ComplexVariant::T0 {
            return Err(Error::VariantMismatch("T0 has no diagram basis".into()));
        }
        let complex = self.chain_complex(variant, parity, i)?;
        let tensor = self.tensor_complex(variant, variant, parity, i)?;
        let mut out = Vec::new();
        for j in 0..complex.len() {
            let reps = homology_representatives(&complex, j, ring)?;
            let slice = self.slice(variant, parity, i, j)?;
            let mut holds = true;
            for rep in &reps {
                let mut x = LinComb::zero();
                for (k, c) in rep {
                    x.add_term(slice.diagrams[*k].clone(), c.clone());
                }
                let delta = coproduct_lin(&x, parity);
                let defect = delta.sub(&delta.twist(parity));
                let mut v: Vec<(usize, BigInt)> = Vec::new();
                for ((l, r), c) in defect.iter() {
                    let (bl, br) = (l.bigrading(), r.bigrading());
                    let a = self.slice(variant, parity, bl.i, bl.j)?.position(l);
                    let b = self.slice(variant, parity, br.i, br.j)?.position(r);
                    let key = a.zip(b).map(|(a, b)| TensorBasisElement {
                        z: (bl.i, bl.j, a),
                        t: (br.i, br.j, b),
                    });
                    let idx = key
                        .and_then(|k| tensor.index[j].get(&k).copied())
                        .ok_or_else(|| Error::ClosureViolation {
                            variant: variant.name().into(),
                            i,
                            j,
                        })?;
                    v.push((idx, c.clone()));
                }
                v.sort_by_key(|e| e.0);
                if !v.is_empty() && !tensor.complex.is_boundary_over(j, &v, ring)? {
                    holds = false;
                }
            }
            out.push(OperationCheck {
                complex: variant,
                parity,
                i,
                j,
                checked: reps.len(),
                holds,
            });
        }
        Ok(out)
    }

    /// For every basis element `c` at complexity `i` whose boundary `b`
    /// has even degree, whether `b^⟨2⟩` is a boundary over `Z`.
    pub fn divided_square_of_boundaries(&mut self, variant: ComplexVariant, parity: Parity, i: usize) -> Result<Vec<OperationCheck>> {
        let mut algebra = Algebra::new(parity);
        let mut out = Vec::new();
        for j in 1..=2 * i {
            let slice = self.slice(variant, parity, i, j)?;
            let mut holds = true;
            let mut checked = 0;
            for c in slice.elements() {
                let b = self.builder(parity).differential(variant, &c)?;
                if b.is_zero() || b.degree_is_odd(parity)? != Some(false) {
                    continue;
                }
                checked += 1;
                let sq = algebra.divided_power(&b, 2, Ring::Integers)?;
                if sq.is_zero() {
                    continue;
                }
                match self.class_of(variant, parity, 2 * i, 2 * (j - 1), &sq)? {
                    Some(class) if class.is_zero() => {}
                    _ => holds = false,
                }
            }
            out.push(OperationCheck {
                complex: variant,
                parity,
                i,
                j,
                checked,
                holds,
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_complexity_checks() {
        let mut e = HomologyEngine::default();
        for i in 0..=2 {
            for c in e.cocommutativity(ComplexVariant::T, Parity::Odd, i, Ring::PrimeField(2)).unwrap() {
                assert!(c.holds, "{c:?}");
            }
        }
        for c in e.divided_square_of_boundaries(ComplexVariant::T, Parity::Odd, 1).unwrap() {
            assert!(c.holds, "{c:?}");
        }
    }
}
