//! Finite chain complexes of free abelian groups, chain maps and cones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::group::HomologyGroup;
use crate::error::{Error, Result};
use crate::linalg::field::{extend_basis, rank_over, solve_in_span, DenseMatrix, Field, PrimeField, Rationals};
use crate::linalg::snf::{cokernel, CokernelClass, SnfLimits, SnfResult};
use crate::linalg::IntMatrix;
use crate::ring::Ring;

/// A homology group over `Z`, or a dimension over a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomologyValue {
    Group(HomologyGroup),
    Dimension(usize),
}

impl HomologyValue {
    pub fn is_zero(&self) -> bool {
        match self {
            HomologyValue::Group(g) => g.is_zero(),
            HomologyValue::Dimension(d) => *d == 0,
        }
    }

    /// Free rank over `Z`, dimension over a field.
    pub fn rank(&self) -> usize {
        match self {
            HomologyValue::Group(g) => g.free_rank,
            HomologyValue::Dimension(d) => *d,
        }
    }

    pub fn torsion(&self) -> &[BigInt] {
        match self {
            HomologyValue::Group(g) => &g.torsion,
            HomologyValue::Dimension(_) => &[],
        }
    }

    pub fn group(&self) -> Option<&HomologyGroup> {
        match self {
            HomologyValue::Group(g) => Some(g),
            HomologyValue::Dimension(_) => None,
        }
    }
}

impl fmt::Display for HomologyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyValue::Group(g) => write!(f, "{g}"),
            HomologyValue::Dimension(d) => write!(f, "dim {d}"),
        }
    }
}

pub(crate) fn snf(m: &IntMatrix, limits: SnfLimits) -> Result<SnfResult> {
    Ok(cokernel(m, &[], limits)?.snf)
}

pub(crate) fn rank_field(m: &IntMatrix, ring: Ring) -> Result<usize> {
    rank_over(ring, &m.columns)
}

/// `ker(out) / im(into)` on a group of rank `dim`, where `into` ends and
/// `out` starts there. Over `Z` the Smith forms are supplied by the caller.
pub(crate) fn homology_from_ranks(dim: usize, rank_out: usize, into: &SnfResult) -> HomologyGroup {
    HomologyGroup::from_cyclic(dim - rank_out - into.rank, &into.torsion())
}

/// Bounded chain complex `C_0 ← C_1 ← … ← C_top`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    /// `boundaries[j]: C_j → C_{j-1}`; `boundaries[0]` has zero rows.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Complex with the given ranks and boundary maps `∂_1, ∂_2, …`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} boundary maps for {} degrees",
                boundaries.len(),
                dims.len()
            )));
        }
        let mut all = vec![IntMatrix::zeros(0, dims.first().copied().unwrap_or(0))];
        for (k, m) in boundaries.into_iter().enumerate() {
            let j = k + 1;
            if (m.rows, m.cols) != (dims[j - 1], dims[j]) {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {j} is {}x{}, expected {}x{}",
                    m.rows,
                    m.cols,
                    dims[j - 1],
                    dims[j]
                )));
            }
            all.push(m);
        }
        Ok(ChainComplex { dims, boundaries: all })
    }

    /// Number of degrees `0..len` carried.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims.get(j).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_j: C_j → C_{j-1}`, zero outside the carried range.
    pub fn boundary(&self, j: usize) -> IntMatrix {
        match self.boundaries.get(j) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.dim(j.wrapping_sub(1)), self.dim(j)),
        }
    }

    pub fn squares_to_zero(&self) -> bool {
        (2..self.len()).all(|j| self.boundary(j - 1).mul(&self.boundary(j)).is_zero())
    }

    pub fn homology(&self, j: usize, ring: Ring, limits: SnfLimits) -> Result<HomologyValue> {
        let out = self.boundary(j);
        let into = self.boundary(j + 1);
        match ring {
            Ring::Integers => {
                let r_out = snf(&out, limits)?.rank;
                Ok(HomologyValue::Group(homology_from_ranks(self.dim(j), r_out, &snf(&into, limits)?)))
            }
            _ => Ok(HomologyValue::Dimension(
                self.dim(j) - rank_field(&out, ring)? - rank_field(&into, ring)?,
            )),
        }
    }

    /// Homology of the transposed (cochain) complex at `j`.
    pub fn cohomology(&self, j: usize, ring: Ring, limits: SnfLimits) -> Result<HomologyValue> {
        let into = self.boundary(j);
        let out = self.boundary(j + 1);
        match ring {
            Ring::Integers => {
                let r_out = snf(&out, limits)?.rank;
                Ok(HomologyValue::Group(homology_from_ranks(self.dim(j), r_out, &snf(&into, limits)?)))
            }
            _ => Ok(HomologyValue::Dimension(
                self.dim(j) - rank_field(&out, ring)? - rank_field(&into, ring)?,
            )),
        }
    }

    /// Every homology group, degrees `0..len`.
    pub fn homology_all(&self, ring: Ring, limits: SnfLimits) -> Result<Vec<HomologyValue>> {
        (0..self.len()).map(|j| self.homology(j, ring, limits)).collect()
    }

    pub fn is_acyclic(&self, ring: Ring, limits: SnfLimits) -> Result<bool> {
        Ok(self.homology_all(ring, limits)?.iter().all(HomologyValue::is_zero))
    }

    /// Class of a cycle `x ∈ C_j` in `C_j / im ∂_{j+1}`; `None` if `x` is
    /// not a cycle.
    pub fn class_of(&self, j: usize, x: &[(usize, BigInt)], limits: SnfLimits) -> Result<Option<CokernelClass>> {
        if !self.boundary(j).apply(x).is_empty() {
            return Ok(None);
        }
        let c = cokernel(&self.boundary(j + 1), &[x.to_vec()], limits)?;
        Ok(c.classes.into_iter().next())
    }

    /// Whether the cycle `x` is a boundary over a field.
    pub fn is_boundary_over(&self, j: usize, x: &[(usize, BigInt)], ring: Ring) -> Result<bool> {
        let into = self.boundary(j + 1);
        let before = rank_field(&into, ring)?;
        let mut cols = into.columns.clone();
        cols.push(x.to_vec());
        Ok(rank_over(ring, &cols)? == before)
    }
}

/// Whether the class `c` generates the cyclic group `h`.
pub fn class_generates(h: &HomologyGroup, c: &CokernelClass) -> bool {
    match (h.free_rank, h.torsion.as_slice()) {
        (0, []) => true,
        (0, [m]) => c.order().as_ref() == Some(m),
        (1, []) => c.free_content() == BigInt::from(1),
        _ => false,
    }
}

/// Degreewise integer maps between two complexes.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub name: String,
    pub source: ChainComplex,
    pub target: ChainComplex,
    /// `components[j]: S_j → T_j`.
    pub components: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn component(&self, j: usize) -> IntMatrix {
        match self.components.get(j) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.target.dim(j), self.source.dim(j)),
        }
    }

    /// First degree where `f ∂ ≠ ∂ f`, if any.
    pub fn failing_degree(&self) -> Option<usize> {
        let top = self.source.len().max(self.target.len());
        (1..top).find(|&j| {
            let lhs = self.component(j - 1).mul(&self.source.boundary(j));
            let rhs = self.target.boundary(j).mul(&self.component(j));
            lhs != rhs
        })
    }

    /// Fails with `NotAChainMap` naming the first bad bigrading.
    pub fn check(&self, i: usize) -> Result<()> {
        match self.failing_degree() {
            None => Ok(()),
            Some(j) => Err(Error::NotAChainMap {
                map: self.name.clone(),
                i,
                j,
            }),
        }
    }

    /// `Cone_j = S_{j-1} ⊕ T_j`, `∂(c, t) = (-∂c, f(c) + ∂t)`.
    pub fn cone(&self) -> ChainComplex {
        let top = (self.source.len() + 1).max(self.target.len());
        let dims: Vec<usize> = (0..top)
            .map(|j| j.checked_sub(1).map_or(0, |k| self.source.dim(k)) + self.target.dim(j))
            .collect();
        let mut boundaries = Vec::new();
        for j in 1..top {
            let s_lo = if j >= 2 { self.source.dim(j - 2) } else { 0 };
            let mut columns = Vec::with_capacity(dims[j]);
            let ds = if j >= 2 { Some(self.source.boundary(j - 1)) } else { None };
            let f = self.component(j - 1);
            for c in 0..self.source.dim(j - 1) {
                let mut col: Vec<(usize, BigInt)> = Vec::new();
                if let Some(ds) = &ds {
                    col.extend(ds.columns[c].iter().map(|(r, v)| (*r, -v)));
                }
                col.extend(f.columns[c].iter().map(|(r, v)| (r + s_lo, v.clone())));
                columns.push(col);
            }
            let dt = self.target.boundary(j);
            for c in 0..self.target.dim(j) {
                columns.push(dt.columns[c].iter().map(|(r, v)| (r + s_lo, v.clone())).collect());
            }
            boundaries.push(IntMatrix::from_columns(dims[j - 1], columns));
        }
        ChainComplex::new(dims, boundaries).expect("cone dimensions")
    }

    /// Whether the map is a quasi-isomorphism, via acyclicity of the cone.
    pub fn is_quasi_isomorphism(&self, ring: Ring, limits: SnfLimits) -> Result<bool> {
        self.cone().is_acyclic(ring, limits)
    }

    /// The induced map on `H_j`.
    pub fn induced(&self, j: usize, ring: Ring, limits: SnfLimits) -> Result<InducedMap> {
        let source = self.source.homology(j, ring, limits)?;
        let target = self.target.homology(j, ring, limits)?;
        let cone = self.cone();
        let is_isomorphism = cone.homology(j, ring, limits)?.is_zero() && cone.homology(j + 1, ring, limits)?.is_zero();
        let matrix = match ring {
            Ring::Integers => None,
            Ring::Rationals => Some(induced_matrix(&Rationals, self, j)),
            Ring::PrimeField(p) => Some(induced_matrix(&PrimeField(p), self, j)),
        };
        Ok(InducedMap {
            name: self.name.clone(),
            j,
            ring,
            source,
            target,
            rank: matrix.as_ref().map(|m| m.1),
            matrix: matrix.map(|m| m.0),
            is_isomorphism,
        })
    }
}

/// A map on homology at one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedMap {
    pub name: String,
    pub j: usize,
    pub ring: Ring,
    pub source: HomologyValue,
    pub target: HomologyValue,
    /// Entries in chosen homology bases (fields only).
    pub matrix: Option<Vec<Vec<String>>>,
    pub rank: Option<usize>,
    /// The cone is acyclic in degrees `j` and `j + 1`.
    pub is_isomorphism: bool,
}

fn dense_columns<F: Field>(f: &F, m: &IntMatrix) -> Vec<Vec<F::Elem>> {
    m.columns
        .iter()
        .map(|col| {
            let mut v = vec![f.zero(); m.rows];
            for (r, x) in col {
                v[*r] = f.from_bigint(x);
            }
            v
        })
        .collect()
}

/// Homology representatives at `j`: a kernel basis completed over the
/// boundaries, returned with the boundary columns.
fn representatives<F: Field>(f: &F, c: &ChainComplex, j: usize) -> (Vec<Vec<F::Elem>>, Vec<Vec<F::Elem>>) {
    let out = c.boundary(j);
    let kernel = DenseMatrix::from_int_columns(f, out.rows, &out.columns).kernel(f);
    let boundaries = dense_columns(f, &c.boundary(j + 1));
    let chosen = extend_basis(f, &boundaries, &kernel);
    (chosen.into_iter().map(|k| kernel[k].clone()).collect(), boundaries)
}

/// Integer lifts of homology representatives at `j` over a field.
pub fn homology_representatives(c: &ChainComplex, j: usize, ring: Ring) -> Result<Vec<Vec<(usize, BigInt)>>> {
    fn sparse(v: Vec<BigInt>) -> Vec<(usize, BigInt)> {
        v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
    }
    match ring {
        Ring::Integers => Err(Error::FieldRequired),
        Ring::Rationals => Ok(representatives(&Rationals, c, j)
            .0
            .into_iter()
            .map(|v| {
                let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                sparse(v.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect())
            })
            .collect()),
        Ring::PrimeField(p) => Ok(representatives(&PrimeField(p), c, j)
            .0
            .into_iter()
            .map(|v| sparse(v.into_iter().map(BigInt::from).collect()))
            .collect()),
    }
}

fn induced_matrix<F: Field>(f: &F, map: &ChainMap, j: usize) -> (Vec<Vec<String>>, usize) {
    let (src, _) = representatives(f, &map.source, j);
    let (tgt, boundaries) = representatives(f, &map.target, j);
    let comp = map.component(j);
    let fm = DenseMatrix::from_int_columns(f, comp.rows, &comp.columns);
    let mut span = boundaries.clone();
    span.extend(tgt.iter().cloned());
    let mut m = DenseMatrix::<F>::zeros(f, tgt.len(), src.len());
    for (c, v) in src.iter().enumerate() {
        let image = fm.mul_vec(f, v);
        let x = solve_in_span(f, &span, &image).expect("image of a cycle is a cycle");
        for r in 0..tgt.len() {
            m.data[r][c] = x[boundaries.len() + r].clone();
        }
    }
    let text = m.data.iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect();
    let rank = m.clone().rref(f).len();
    (text, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>], r: usize, c: usize) -> IntMatrix {
        if rows.is_empty() {
            return IntMatrix::zeros(r, c);
        }
        IntMatrix::from_dense(rows)
    }

    /// `Z --2--> Z`: homology `Z/2` in degree 0.
    fn two() -> ChainComplex {
        ChainComplex::new(vec![1, 1], vec![m(&[vec![2]], 1, 1)]).unwrap()
    }

    #[test]
    fn homology_over_rings() {
        let c = two();
        let l = SnfLimits::default();
        assert_eq!(c.homology(0, Ring::Integers, l).unwrap(), HomologyValue::Group(HomologyGroup::cyclic(2)));
        assert!(c.homology(1, Ring::Integers, l).unwrap().is_zero());
        assert_eq!(c.homology(0, Ring::PrimeField(2), l).unwrap(), HomologyValue::Dimension(1));
        assert_eq!(c.homology(1, Ring::PrimeField(2), l).unwrap(), HomologyValue::Dimension(1));
        assert_eq!(c.homology(0, Ring::Rationals, l).unwrap(), HomologyValue::Dimension(0));
        // cohomology moves the torsion up one degree
        assert!(c.cohomology(0, Ring::Integers, l).unwrap().is_zero());
        assert_eq!(c.cohomology(1, Ring::Integers, l).unwrap(), HomologyValue::Group(HomologyGroup::cyclic(2)));
    }

    #[test]
    fn zero_differential_cohomology_is_the_dimension() {
        let c = ChainComplex::new(vec![3, 2], vec![IntMatrix::zeros(3, 2)]).unwrap();
        let l = SnfLimits::default();
        assert_eq!(c.cohomology(0, Ring::Integers, l).unwrap(), HomologyValue::Group(HomologyGroup::free(3)));
        assert_eq!(c.cohomology(1, Ring::Rationals, l).unwrap(), HomologyValue::Dimension(2));
    }

    #[test]
    fn identity_and_multiplication_maps() {
        let l = SnfLimits::default();
        let id = ChainMap {
            name: "id".into(),
            source: two(),
            target: two(),
            components: vec![m(&[vec![1]], 1, 1), m(&[vec![1]], 1, 1)],
        };
        id.check(0).unwrap();
        assert!(id.is_quasi_isomorphism(Ring::Integers, l).unwrap());
        let ind = id.induced(0, Ring::PrimeField(2), l).unwrap();
        assert_eq!(ind.rank, Some(1));
        assert!(ind.is_isomorphism);

        let zero = ChainComplex::new(vec![1], vec![]).unwrap();
        let times3 = ChainMap {
            name: "3".into(),
            source: zero.clone(),
            target: zero.clone(),
            components: vec![m(&[vec![3]], 1, 1)],
        };
        assert!(!times3.is_quasi_isomorphism(Ring::Integers, l).unwrap());
        assert!(times3.is_quasi_isomorphism(Ring::PrimeField(2), l).unwrap());
        assert!(!times3.is_quasi_isomorphism(Ring::PrimeField(3), l).unwrap());

        let bad = ChainMap {
            name: "bad".into(),
            source: two(),
            target: two(),
            components: vec![m(&[vec![1]], 1, 1), m(&[vec![0]], 1, 1)],
        };
        assert_eq!(bad.check(4), Err(Error::NotAChainMap { map: "bad".into(), i: 4, j: 1 }));
    }

    #[test]
    fn classes() {
        let c = two();
        let l = SnfLimits::default();
        let class = c.class_of(0, &[(0, BigInt::from(1))], l).unwrap().unwrap();
        assert!(class_generates(&HomologyGroup::cyclic(2), &class));
        let class = c.class_of(0, &[(0, BigInt::from(2))], l).unwrap().unwrap();
        assert!(class.is_zero());
        assert!(c.is_boundary_over(0, &[(0, BigInt::from(1))], Ring::Rationals).unwrap());
        assert!(!c.is_boundary_over(0, &[(0, BigInt::from(1))], Ring::PrimeField(2)).unwrap());
    }
}
