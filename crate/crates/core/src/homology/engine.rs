//! Homology of the diagram complexes, slice by slice.

use std::collections::HashMap;
use std::sync::Arc;

use crate::complex::{ComplexBuilder, ComplexVariant, DifferentialMatrix, Limits, SliceBasis};
use crate::diagram::Parity;
use crate::error::Result;
use crate::hopf::zhat;
use crate::lincomb::LinComb;
use crate::linalg::snf::{CokernelClass, SnfLimits, SnfResult};
use crate::ring::Ring;

use super::chain::{class_generates, homology_from_ranks, rank_field, snf, ChainComplex, HomologyValue};

type SliceKey = (ComplexVariant, Parity, usize, usize);

/// Status of `Ẑ_i` at `(i, i+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZhatStatus {
    pub nonzero: bool,
    /// `Ẑ_i` generates the (cyclic) group; only decided over `Z`.
    pub generates: Option<bool>,
}

/// Caches slices, differentials and their ranks for both parities.
#[derive(Debug)]
pub struct HomologyEngine {
    limits: Limits,
    snf_limits: SnfLimits,
    builders: HashMap<Parity, ComplexBuilder>,
    matrices: HashMap<SliceKey, Arc<DifferentialMatrix>>,
    smith: HashMap<SliceKey, SnfResult>,
    field_ranks: HashMap<(SliceKey, Ring), usize>,
}

impl Default for HomologyEngine {
    fn default() -> Self {
        Self::new(Limits::default(), SnfLimits::default())
    }
}

impl HomologyEngine {
    pub fn new(limits: Limits, snf_limits: SnfLimits) -> Self {
        HomologyEngine {
            limits,
            snf_limits,
            builders: HashMap::new(),
            matrices: HashMap::new(),
            smith: HashMap::new(),
            field_ranks: HashMap::new(),
        }
    }

    pub fn snf_limits(&self) -> SnfLimits {
        self.snf_limits
    }

    pub fn builder(&mut self, parity: Parity) -> &mut ComplexBuilder {
        let limits = self.limits;
        self.builders
            .entry(parity)
            .or_insert_with(|| ComplexBuilder::with_limits(parity, limits))
    }

    pub fn slice(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize) -> Result<Arc<SliceBasis>> {
        self.builder(parity).slice(variant, i, j)
    }

    /// `∂: (i, j) → (i, j-1)`.
    pub fn matrix(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize) -> Result<Arc<DifferentialMatrix>> {
        let key = (variant, parity, i, j);
        if let Some(m) = self.matrices.get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(self.builder(parity).differential_matrix(variant, i, j)?);
        self.matrices.insert(key, m.clone());
        Ok(m)
    }

    fn smith(&mut self, key: SliceKey) -> Result<SnfResult> {
        if let Some(s) = self.smith.get(&key) {
            return Ok(s.clone());
        }
        let m = self.matrix(key.0, key.1, key.2, key.3)?;
        let s = snf(&m.matrix, self.snf_limits)?;
        self.smith.insert(key, s.clone());
        Ok(s)
    }

    fn rank(&mut self, key: SliceKey, ring: Ring) -> Result<usize> {
        if ring == Ring::Integers {
            return Ok(self.smith(key)?.rank);
        }
        if let Some(r) = self.field_ranks.get(&(key, ring)) {
            return Ok(*r);
        }
        let m = self.matrix(key.0, key.1, key.2, key.3)?;
        let r = rank_field(&m.matrix, ring)?;
        self.field_ranks.insert((key, ring), r);
        Ok(r)
    }

    fn homology_between(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize, ring: Ring, dual: bool) -> Result<HomologyValue> {
        let dim = self.slice(variant, parity, i, j)?.dim();
        let lower = (variant, parity, i, j);
        let upper = (variant, parity, i, j + 1);
        // homology: out of j is `lower`, into j is `upper`; cohomology swaps them
        let (out, into) = if dual { (upper, lower) } else { (lower, upper) };
        match ring {
            Ring::Integers => {
                let r_out = self.smith(out)?.rank;
                let s_in = self.smith(into)?;
                Ok(HomologyValue::Group(homology_from_ranks(dim, r_out, &s_in)))
            }
            _ => Ok(HomologyValue::Dimension(dim - self.rank(out, ring)? - self.rank(into, ring)?)),
        }
    }

    pub fn homology_group(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize, ring: Ring) -> Result<HomologyValue> {
        self.homology_between(variant, parity, i, j, ring, false)
    }

    /// Homology of the transposed differentials.
    pub fn dual_homology_group(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize, ring: Ring) -> Result<HomologyValue> {
        self.homology_between(variant, parity, i, j, ring, true)
    }

    /// The complex of fixed complexity `i`, degrees `j = 0..=2i`.
    pub fn chain_complex(&mut self, variant: ComplexVariant, parity: Parity, i: usize) -> Result<ChainComplex> {
        let top = 2 * i;
        let mut dims = Vec::with_capacity(top + 1);
        for j in 0..=top {
            dims.push(self.slice(variant, parity, i, j)?.dim());
        }
        let mut boundaries = Vec::with_capacity(top);
        for j in 1..=top {
            boundaries.push(self.matrix(variant, parity, i, j)?.matrix.clone());
        }
        ChainComplex::new(dims, boundaries)
    }

    /// Basis coordinates of `x` in slice `(i, j)`.
    pub fn coordinates(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize, x: &LinComb) -> Result<Vec<(usize, num_bigint::BigInt)>> {
        self.slice(variant, parity, i, j)?.coordinates(x)
    }

    /// Class of `x` in `H_(i,j)` over `Z`, `None` when `x` is not a cycle.
    pub fn class_of(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize, x: &LinComb) -> Result<Option<CokernelClass>> {
        let v = self.coordinates(variant, parity, i, j, x)?;
        let out = self.matrix(variant, parity, i, j)?;
        let into = self.matrix(variant, parity, i, j + 1)?;
        let local = ChainComplex::new(
            vec![out.target.dim(), out.source.dim(), into.source.dim()],
            vec![out.matrix.clone(), into.matrix.clone()],
        )?;
        local.class_of(1, &v, self.snf_limits)
    }

    /// Whether `Ẑ_i` is a nonzero class in `H_(i,i+1)`, and over `Z`
    /// whether it generates. `None` if `Ẑ_i` is not a cycle of `variant`.
    pub fn zhat_status(&mut self, variant: ComplexVariant, parity: Parity, i: usize, ring: Ring) -> Result<Option<ZhatStatus>> {
        if i == 0 || variant == ComplexVariant::Z {
            return Ok(None);
        }
        let x = zhat(i, parity);
        let j = i + 1;
        let Ok(v) = self.coordinates(variant, parity, i, j, &x) else {
            return Ok(None);
        };
        let out = self.matrix(variant, parity, i, j)?;
        if !out.matrix.apply(&v).is_empty() {
            return Ok(None);
        }
        match ring {
            Ring::Integers => {
                let class = self.class_of(variant, parity, i, j, &x)?.expect("checked cycle");
                let h = self.homology_group(variant, parity, i, j, ring)?;
                let generates = h.group().map(|g| class_generates(g, &class));
                Ok(Some(ZhatStatus {
                    nonzero: !class.is_zero(),
                    generates,
                }))
            }
            _ => {
                let into = self.matrix(variant, parity, i, j + 1)?;
                let local = ChainComplex::new(
                    vec![out.source.dim(), into.source.dim()],
                    vec![into.matrix.clone()],
                )?;
                Ok(Some(ZhatStatus {
                    nonzero: !local.is_boundary_over(0, &v, ring)?,
                    generates: None,
                }))
            }
        }
    }

    /// Matrix of `∂` at `(i, j)`, as dumped by the command line.
    pub fn matrix_dump(&mut self, variant: ComplexVariant, parity: Parity, i: usize, j: usize) -> Result<String> {
        Ok(self.matrix(variant, parity, i, j)?.to_triplet_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyGroup;

    #[test]
    fn first_upper_diagonal_groups() {
        let mut e = HomologyEngine::default();
        for parity in Parity::BOTH {
            assert_eq!(
                e.homology_group(ComplexVariant::T, parity, 1, 2, Ring::Integers).unwrap(),
                HomologyValue::Group(HomologyGroup::free(1))
            );
            let s = e.zhat_status(ComplexVariant::T, parity, 1, Ring::Integers).unwrap().unwrap();
            assert!(s.nonzero);
            assert_eq!(s.generates, Some(true));
        }
        assert_eq!(
            e.homology_group(ComplexVariant::T, Parity::Even, 2, 3, Ring::Integers).unwrap(),
            HomologyValue::Group(HomologyGroup::cyclic(2))
        );
        assert_eq!(
            e.homology_group(ComplexVariant::Z, Parity::Even, 1, 2, Ring::Integers).unwrap(),
            HomologyValue::Group(HomologyGroup::free(1))
        );
    }

    #[test]
    fn dual_on_the_lower_diagonal() {
        let mut e = HomologyEngine::default();
        assert_eq!(e.dual_homology_group(ComplexVariant::T, Parity::Odd, 1, 2, Ring::Rationals).unwrap(), HomologyValue::Dimension(1));
        assert!(e.dual_homology_group(ComplexVariant::Ts, Parity::Odd, 1, 2, Ring::Integers).unwrap().is_zero());
    }
}
