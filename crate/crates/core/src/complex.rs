//! Bigraded slices of the diagram complexes and their differentials.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagram::{sort_sign, validate, Diagram, Parity, Token};
use crate::error::{Error, Result};
use crate::linalg::lattice::{Lattice, SparseVec};
use crate::linalg::IntMatrix;
use crate::lincomb::LinComb;
use crate::relations::{quantum_binomial, ArnoldReducer};

/// Default cap on the number of diagrams in one slice.
pub const DEFAULT_MAX_SLICE: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexVariant {
    /// All diagrams, differential `d_h + d_v`.
    Tss,
    /// All diagrams, differential `d_h` only.
    TssH,
    /// No top asterisks.
    Ts,
    /// No asterisks; asterisk-producing terms are dropped.
    T,
    /// Subcomplex of `T` spanned by diagrams without neighbor chords.
    T0,
    /// Top asterisks only, at least one per point.
    Z,
}

impl ComplexVariant {
    pub const ALL: [ComplexVariant; 6] = [
        ComplexVariant::Tss,
        ComplexVariant::TssH,
        ComplexVariant::Ts,
        ComplexVariant::T,
        ComplexVariant::T0,
        ComplexVariant::Z,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ComplexVariant::Tss => "Tss",
            ComplexVariant::TssH => "Tss_h",
            ComplexVariant::Ts => "Ts",
            ComplexVariant::T => "T",
            ComplexVariant::T0 => "T0",
            ComplexVariant::Z => "Z",
        }
    }

    /// Whether the vertical differential is part of the complex.
    pub fn has_vertical(self) -> bool {
        self == ComplexVariant::Tss
    }

    /// Whether asterisk-bearing terms are projected away.
    pub fn is_asterisk_quotient(self) -> bool {
        matches!(self, ComplexVariant::T | ComplexVariant::T0)
    }
}

impl fmt::Display for ComplexVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComplexVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ComplexVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown complex `{s}`")))
    }
}

/// Ordered basis of one bigraded piece.
///
/// For every variant but `T0` the basis is `diagrams` itself. The `T0`
/// piece is the integer span of its forests inside `T`; `diagrams` then
/// lists the ambient `T` coordinates and `lattice` the basis vectors.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub variant: ComplexVariant,
    pub parity: Parity,
    pub i: usize,
    pub j: usize,
    pub diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
    lattice: Option<Lattice>,
}

impl SliceBasis {
    fn new(variant: ComplexVariant, parity: Parity, i: usize, j: usize, diagrams: Vec<Diagram>, lattice: Option<Lattice>) -> Self {
        let index = diagrams.iter().cloned().enumerate().map(|(k, d)| (d, k)).collect();
        SliceBasis {
            variant,
            parity,
            i,
            j,
            diagrams,
            index,
            lattice,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.lattice {
            Some(l) => l.rank(),
            None => self.diagrams.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    /// Basis element `k` as a combination of ambient diagrams.
    pub fn element(&self, k: usize) -> LinComb {
        match &self.lattice {
            Some(l) => {
                let row = &l.basis()[k];
                row.iter()
                    .map(|(c, x)| (self.diagrams[*c].clone(), x.clone()))
                    .collect()
            }
            None => LinComb::from_diagram(self.diagrams[k].clone()),
        }
    }

    pub fn elements(&self) -> Vec<LinComb> {
        match &self.lattice {
            Some(l) => l
                .basis()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(c, x)| (self.diagrams[*c].clone(), x.clone()))
                        .collect()
                })
                .collect(),
            None => self.diagrams.iter().cloned().map(LinComb::from_diagram).collect(),
        }
    }

    pub fn position(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Coordinates in the ambient diagrams; fails on foreign diagrams.
    pub fn ambient_coordinates(&self, x: &LinComb) -> Result<SparseVec> {
        let mut out = Vec::with_capacity(x.len());
        for (d, c) in x.iter() {
            let k = self.position(d).ok_or_else(|| self.closure_error())?;
            out.push((k, c.clone()));
        }
        out.sort_by_key(|e| e.0);
        Ok(out)
    }

    /// Coordinates in this basis.
    pub fn coordinates(&self, x: &LinComb) -> Result<SparseVec> {
        let ambient = self.ambient_coordinates(x)?;
        match &self.lattice {
            None => Ok(ambient),
            Some(l) => {
                let coords = l.coordinates(&ambient).ok_or_else(|| self.closure_error())?;
                Ok(coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect())
            }
        }
    }

    fn closure_error(&self) -> Error {
        Error::ClosureViolation {
            variant: self.variant.name().to_string(),
            i: self.i,
            j: self.j,
        }
    }

    /// SHA-256 of the serialized basis, naming it in matrix dumps and caches.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("{} {} {} {}\n", self.variant, self.parity, self.i, self.j));
        for d in &self.diagrams {
            h.update(d.serialize());
            h.update("\n");
        }
        if let Some(l) = &self.lattice {
            for row in l.basis() {
                for (c, x) in row {
                    h.update(format!("{c}:{x} "));
                }
                h.update("\n");
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// One line per basis element.
    pub fn listing(&self) -> Vec<String> {
        match &self.lattice {
            None => self.diagrams.iter().map(Diagram::serialize).collect(),
            Some(_) => self
                .elements()
                .iter()
                .map(|x| {
                    x.iter()
                        .map(|(d, c)| format!("{c}*[{d}]"))
                        .collect::<Vec<_>>()
                        .join(" + ")
                })
                .collect(),
        }
    }
}

/// Integer matrix of the differential out of one slice.
#[derive(Clone, Debug)]
pub struct DifferentialMatrix {
    pub source: Arc<SliceBasis>,
    pub target: Arc<SliceBasis>,
    pub matrix: IntMatrix,
}

impl DifferentialMatrix {
    /// Sparse triplets with a header naming both bases.
    pub fn to_triplet_text(&self) -> String {
        let s = &self.source;
        let t = &self.target;
        format!(
            "# complex {} parity {}\n# source i={} j={} dim={} basis={}\n# target i={} j={} dim={} basis={}\n{}",
            s.variant,
            s.parity,
            s.i,
            s.j,
            s.dim(),
            s.hash(),
            t.i,
            t.j,
            t.dim(),
            t.hash(),
            self.matrix.to_triplets()
        )
    }
}

/// Parent-pointer forests on `n` points with `c` chords: every point has
/// at most one chord to a smaller point.
pub fn admissible_forests(n: usize, c: usize) -> Vec<Vec<(u8, u8)>> {
    fn go(v: usize, n: usize, left: usize, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
        if n - v < left {
            return;
        }
        if v == n {
            if left == 0 {
                let mut chords = cur.clone();
                chords.sort_unstable();
                out.push(chords);
            }
            return;
        }
        go(v + 1, n, left, cur, out);
        if left > 0 {
            for p in 0..v {
                cur.push((p as u8, v as u8));
                go(v + 1, n, left - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if c < n.max(1) {
        go(1.min(n), n, c, &mut Vec::new(), &mut out);
    }
    out
}

/// Every forest with `c` chords on `n` points whose chords pass `allowed`,
/// chords listed in lexicographic order.
pub fn all_forests(n: usize, c: usize, allowed: impl Fn(u8, u8) -> bool) -> Vec<Vec<(u8, u8)>> {
    let pairs: Vec<(u8, u8)> = (0..n as u8)
        .flat_map(|a| (a + 1..n as u8).map(move |b| (a, b)))
        .filter(|&(a, b)| allowed(a, b))
        .collect();
    fn go(start: usize, pairs: &[(u8, u8)], left: usize, comp: &mut Vec<u8>, cur: &mut Vec<(u8, u8)>, out: &mut Vec<Vec<(u8, u8)>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if pairs.len() - start < left {
            return;
        }
        for k in start..pairs.len() {
            let (a, b) = pairs[k];
            let (ca, cb) = (comp[a as usize], comp[b as usize]);
            if ca == cb {
                continue;
            }
            let saved = comp.clone();
            for x in comp.iter_mut() {
                if *x == cb {
                    *x = ca;
                }
            }
            cur.push((a, b));
            go(k + 1, pairs, left - 1, comp, cur, out);
            cur.pop();
            *comp = saved;
        }
    }
    let mut out = Vec::new();
    let mut comp: Vec<u8> = (0..n as u8).collect();
    go(0, &pairs, c, &mut comp, &mut Vec::new(), &mut out);
    out
}

fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    fn go(left: usize, parts: usize, min: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < min * parts {
            return;
        }
        for k in min..=left - min * (parts - 1) {
            cur.push(k as u8);
            go(left - k, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    go(total, parts, min, &mut Vec::new(), &mut out);
    out
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

fn covered(n: usize, chords: &[(u8, u8)], bottom: u32, top: &[u8]) -> bool {
    let mut mask = bottom;
    for &(a, b) in chords {
        mask |= 1 << a | 1 << b;
    }
    for (p, &k) in top.iter().enumerate() {
        if k > 0 {
            mask |= 1 << p;
        }
    }
    n == 0 || mask.count_ones() as usize == n
}

/// Admissible diagrams of one bigrading, before any lattice step.
fn admissible_slice(variant: ComplexVariant, i: usize, j: usize, cap: usize) -> Result<Vec<Diagram>> {
    slice_diagrams(variant, i, j, cap, true)
}

/// Every valid diagram of one bigrading, admissible or not; for `T0` its
/// spanning forests. These span the slice modulo the Arnold relations.
pub fn spanning_diagrams(variant: ComplexVariant, i: usize, j: usize, cap: usize) -> Result<Vec<Diagram>> {
    if variant == ComplexVariant::T0 {
        return Ok(t0_forests(i, j));
    }
    slice_diagrams(variant, i, j, cap, false)
}

fn slice_diagrams(variant: ComplexVariant, i: usize, j: usize, cap: usize, admissible: bool) -> Result<Vec<Diagram>> {
    let forests_of = |n: usize, c: usize| {
        if admissible {
            admissible_forests(n, c)
        } else {
            all_forests(n, c, |_, _| true)
        }
    };
    use ComplexVariant::*;
    let mut out = Vec::new();
    let push = |out: &mut Vec<Diagram>, d: Diagram| -> Result<()> {
        out.push(d);
        if out.len() > cap {
            return Err(Error::ResourceLimit(format!(
                "slice ({variant}, i={i}, j={j}) exceeds {cap} diagrams"
            )));
        }
        Ok(())
    };
    if i == 0 {
        if j == 0 {
            out.push(Diagram::empty());
        }
        return Ok(out);
    }
    if j > 2 * i || j > crate::diagram::MAX_POINTS + i {
        return Ok(out);
    }
    match variant {
        Tss | TssH | Ts => {
            let max_tops = if variant == Ts { 0 } else { i };
            for tops in 0..=max_tops.min(j) {
                let n = j - tops;
                if n == 0 || n > crate::diagram::MAX_POINTS {
                    continue;
                }
                let rest = i - tops;
                for c in 0..=rest.min(n - 1) {
                    let b = rest - c;
                    if b > n {
                        continue;
                    }
                    let forests = forests_of(n, c);
                    let bottoms = subsets_of_size(n, b);
                    let dists = compositions(tops, n, 0);
                    for chords in &forests {
                        for &bottom in &bottoms {
                            for top in &dists {
                                if covered(n, chords, bottom, top) {
                                    push(&mut out, Diagram::from_parts(n, chords.clone(), bottom, top.clone()))?;
                                }
                            }
                        }
                    }
                }
            }
        }
        T | T0 => {
            let n = j;
            if i < n {
                for chords in forests_of(n, i) {
                    if covered(n, &chords, 0, &[]) {
                        push(&mut out, Diagram::from_parts(n, chords, 0, vec![0; n]))?;
                    }
                }
            }
        }
        Z => {
            if j > i {
                for top in compositions(i, j - i, 1) {
                    push(&mut out, Diagram::from_parts(j - i, Vec::new(), 0, top))?;
                }
            }
        }
    }
    out.sort_by_cached_key(Diagram::serialize);
    Ok(out)
}

/// Forests spanning the `T0` piece at `(i, j)`: no neighbor chords, every
/// point used.
pub fn t0_forests(i: usize, j: usize) -> Vec<Diagram> {
    if i == 0 {
        return if j == 0 { vec![Diagram::empty()] } else { Vec::new() };
    }
    if j > 2 * i || i >= j {
        return Vec::new();
    }
    all_forests(j, i, |a, b| b > a + 1)
        .into_iter()
        .filter(|c| covered(j, c, 0, &[]))
        .map(|c| Diagram::from_parts(j, c, 0, vec![0; j]))
        .collect()
}

/// Horizontal gluing of points `p` and `p+1`; `None` when it vanishes.
pub(crate) fn glue(d: &Diagram, p: usize, parity: Parity) -> Option<(Diagram, BigInt)> {
    let q = p + 1;
    let (bp, bq) = (d.has_bottom(p), d.has_bottom(q));
    if bp && bq {
        return None;
    }
    let chorded = d.chords().iter().any(|&(a, b)| (a as usize, b as usize) == (p, q));
    if chorded && (bp || bq) {
        return None;
    }
    if !chorded {
        let comps = d.components();
        if comps[p] == comps[q] {
            return None;
        }
    }
    let (kp, kq) = (d.top(p), d.top(q));
    let coefficient = quantum_binomial(kp, kq, parity.sign());
    if coefficient.is_zero() {
        return None;
    }
    let m = |x: u8| if (x as usize) <= p { x } else { x - 1 };
    let merge = |x: u8, r: u8| if x as usize == q { (p as u8, kp as u8 + r) } else { (m(x), r) };
    let mut tokens = Vec::new();
    for t in d.canonical_tokens() {
        tokens.push(match t {
            Token::Point(x) if x as usize == p => continue,
            Token::Point(x) => Token::Point(m(x)),
            Token::HalfLine(x, r) => {
                let (y, s) = merge(x, r);
                Token::HalfLine(y, s)
            }
            Token::Top(x, r) => {
                let (y, s) = merge(x, r);
                Token::Top(y, s)
            }
            Token::Chord(a, b) if (a as usize, b as usize) == (p, q) => Token::Bottom(p as u8),
            Token::Chord(a, b) => Token::Chord(m(a), m(b)),
            Token::Bottom(x) => Token::Bottom(m(x)),
        });
    }
    let n = d.n() - 1;
    let mut chords: Vec<(u8, u8)> = d
        .chords()
        .iter()
        .filter(|&&(a, b)| (a as usize, b as usize) != (p, q))
        .map(|&(a, b)| (m(a), m(b)))
        .collect();
    chords.sort_unstable();
    let mut bottom = 0u32;
    for x in 0..d.n() {
        if d.has_bottom(x) {
            bottom |= 1 << m(x as u8);
        }
    }
    if chorded {
        bottom |= 1 << p;
    }
    let mut top: Vec<u8> = Vec::with_capacity(n);
    for x in 0..d.n() {
        if x == q {
            continue;
        }
        top.push(if x == p { (kp + kq) as u8 } else { d.top(x) as u8 });
    }
    let glued = Diagram::from_parts(n, chords, bottom, top);
    let mut sign = sort_sign(&tokens, parity);
    if p % 2 == 1 {
        sign = -sign;
    }
    Some((glued, coefficient * sign))
}

/// `∂_p`: the gluing of points `p` and `p+1` alone, Arnold-unreduced.
pub fn glue_points(d: &Diagram, p: usize, parity: Parity) -> LinComb {
    let mut out = LinComb::zero();
    if p + 1 < d.n() {
        if let Some((g, c)) = glue(d, p, parity) {
            out.add_term(g, c);
        }
    }
    out
}

/// Sum over gluings of neighbor points, with Arnold-unreduced output.
pub fn d_h(d: &Diagram, parity: Parity) -> LinComb {
    let mut out = LinComb::zero();
    for p in 0..d.n().saturating_sub(1) {
        if let Some((g, c)) = glue(d, p, parity) {
            out.add_term(g, c);
        }
    }
    out
}

/// Descent of the lowest top asterisk of each half-line to the line.
pub fn d_v(d: &Diagram, parity: Parity) -> LinComb {
    let mut out = LinComb::zero();
    let n = d.n();
    let mut above = 0usize;
    for x in 0..n {
        let k = d.top(x);
        if k >= 1 && !d.has_bottom(x) {
            let r = (k - 1) as u8;
            let passed = n + above + (k - 1);
            let tokens: Vec<Token> = d
                .canonical_tokens()
                .into_iter()
                .filter(|t| *t != Token::HalfLine(x as u8, r))
                .map(|t| if t == Token::Top(x as u8, r) { Token::Bottom(x as u8) } else { t })
                .collect();
            let mut top = d.tops().to_vec();
            top[x] -= 1;
            let target = Diagram::from_parts(n, d.chords().to_vec(), d.bottom_mask() | 1 << x, top);
            let mut sign = sort_sign(&tokens, parity);
            if passed % 2 == 1 {
                sign = -sign;
            }
            out.add_term(target, BigInt::from(sign));
        }
        above += k;
    }
    out
}

/// Resource caps of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_slice: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_slice: DEFAULT_MAX_SLICE,
        }
    }
}

/// Caching factory for slices and differentials of one parity.
#[derive(Debug)]
pub struct ComplexBuilder {
    parity: Parity,
    limits: Limits,
    reducer: ArnoldReducer,
    slices: HashMap<(ComplexVariant, usize, usize), Arc<SliceBasis>>,
}

impl ComplexBuilder {
    pub fn new(parity: Parity) -> Self {
        Self::with_limits(parity, Limits::default())
    }

    pub fn with_limits(parity: Parity, limits: Limits) -> Self {
        ComplexBuilder {
            parity,
            limits,
            reducer: ArnoldReducer::new(parity),
            slices: HashMap::new(),
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn reducer(&mut self) -> &mut ArnoldReducer {
        &mut self.reducer
    }

    pub fn reduce(&mut self, x: &LinComb) -> Result<LinComb> {
        self.reducer.reduce(x)
    }

    pub fn slice(&mut self, variant: ComplexVariant, i: usize, j: usize) -> Result<Arc<SliceBasis>> {
        if let Some(s) = self.slices.get(&(variant, i, j)) {
            return Ok(s.clone());
        }
        let diagrams = admissible_slice(variant, i, j, self.limits.max_slice)?;
        let lattice = if variant == ComplexVariant::T0 {
            let forests = t0_forests(i, j);
            if forests.len() > self.limits.max_slice {
                return Err(Error::ResourceLimit(format!(
                    "slice (T0, i={i}, j={j}) exceeds {} forests",
                    self.limits.max_slice
                )));
            }
            let ambient = SliceBasis::new(ComplexVariant::T, self.parity, i, j, diagrams.clone(), None);
            let mut lattice = Lattice::new();
            for f in forests {
                let x = self.reducer.reduce_diagram(&f)?;
                lattice.insert(ambient.ambient_coordinates(&x)?);
            }
            Some(lattice)
        } else {
            None
        };
        let s = Arc::new(SliceBasis::new(variant, self.parity, i, j, diagrams, lattice));
        self.slices.insert((variant, i, j), s.clone());
        Ok(s)
    }

    /// Variant differential of one ambient diagram, reduced and projected.
    pub fn differential_of_diagram(&mut self, variant: ComplexVariant, d: &Diagram) -> Result<LinComb> {
        let mut raw = d_h(d, self.parity);
        if variant.has_vertical() {
            raw.add_assign(&d_v(d, self.parity));
        }
        if variant.is_asterisk_quotient() {
            raw = raw.filtered(|e| !e.has_asterisks());
        }
        self.reducer.reduce(&raw)
    }

    /// Variant differential of a combination; subcomplex variants check
    /// that the result stays inside.
    pub fn differential(&mut self, variant: ComplexVariant, x: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (d, c) in x.iter() {
            let y = self.differential_of_diagram(variant, d)?;
            out.add_scaled(&y, c);
        }
        match variant {
            ComplexVariant::Z | ComplexVariant::Ts | ComplexVariant::T0 => {
                let mut by_grading: HashMap<(usize, usize), LinComb> = HashMap::new();
                for (d, c) in out.iter() {
                    let b = d.bigrading();
                    by_grading.entry((b.i, b.j)).or_default().add_term(d.clone(), c.clone());
                }
                for ((i, j), part) in by_grading {
                    let generalized = part.diagrams().any(Diagram::is_generalized);
                    if generalized {
                        if part.diagrams().any(|d| !crate::diagram::validate_generalized(d, variant).is_valid()) {
                            return Err(Error::ClosureViolation {
                                variant: variant.name().into(),
                                i,
                                j,
                            });
                        }
                        continue;
                    }
                    self.slice(variant, i, j)?.coordinates(&part)?;
                }
            }
            _ => {}
        }
        Ok(out)
    }

    pub fn differential_matrix(&mut self, variant: ComplexVariant, i: usize, j: usize) -> Result<DifferentialMatrix> {
        let source = self.slice(variant, i, j)?;
        let target = self.slice(variant, i, j.saturating_sub(1))?;
        let mut columns = Vec::with_capacity(source.dim());
        if j == 0 {
            columns.resize(source.dim(), Vec::new());
        } else {
            let mut images: HashMap<usize, LinComb> = HashMap::new();
            for x in source.elements() {
                let mut y = LinComb::zero();
                for (d, c) in x.iter() {
                    let k = source.position(d).expect("basis diagram");
                    if let std::collections::hash_map::Entry::Vacant(e) = images.entry(k) {
                        let img = self.differential_of_diagram(variant, d)?;
                        e.insert(img);
                    }
                    y.add_scaled(&images[&k], c);
                }
                columns.push(target.coordinates(&y)?);
            }
        }
        Ok(DifferentialMatrix {
            matrix: IntMatrix::from_columns(target.dim(), columns),
            source,
            target,
        })
    }
}

/// The admissible basis of one slice.
pub fn enumerate_slice(variant: ComplexVariant, parity: Parity, i: usize, j: usize) -> Result<SliceBasis> {
    ComplexBuilder::new(parity)
        .slice(variant, i, j)
        .map(|s| (*s).clone())
}

/// The differential of `variant` applied to `x`.
pub fn differential(variant: ComplexVariant, x: &LinComb, parity: Parity) -> Result<LinComb> {
    ComplexBuilder::new(parity).differential(variant, x)
}

pub fn differential_matrix(variant: ComplexVariant, parity: Parity, i: usize, j: usize) -> Result<DifferentialMatrix> {
    ComplexBuilder::new(parity).differential_matrix(variant, i, j)
}

/// Checks that every diagram of a slice is valid for its variant.
pub fn slice_is_valid(s: &SliceBasis) -> bool {
    let check = if s.variant == ComplexVariant::T0 {
        ComplexVariant::T
    } else {
        s.variant
    };
    s.diagrams.iter().all(|d| {
        let b = d.bigrading();
        validate(d, check).is_valid() && (b.i, b.j) == (s.i, s.j) && d.is_admissible()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_slices() {
        for parity in Parity::BOTH {
            let s = enumerate_slice(ComplexVariant::T, parity, 1, 2).unwrap();
            assert_eq!(s.diagrams, vec![Diagram::new(2, &[(0, 1)], &[], &[])]);
            for i in 1..4 {
                for j in 0..=2 * i + 2 {
                    let s = enumerate_slice(ComplexVariant::T, parity, i, j).unwrap();
                    if j > 2 * i || j < i + 1 {
                        assert!(s.is_empty());
                    }
                    assert!(slice_is_valid(&s));
                }
            }
            for k in 1..5 {
                let s = enumerate_slice(ComplexVariant::Z, parity, k, k + 1).unwrap();
                assert_eq!(s.diagrams, vec![Diagram::new(1, &[], &[], &[k])]);
            }
        }
    }

    #[test]
    fn forest_counts() {
        // labelled trees on n points: n^(n-2); admissible ones: (n-1)!
        assert_eq!(all_forests(4, 3, |_, _| true).len(), 16);
        assert_eq!(all_forests(5, 4, |_, _| true).len(), 125);
        assert_eq!(admissible_forests(5, 4).len(), 24);
        assert_eq!(admissible_forests(1, 0).len(), 1);
        assert_eq!(admissible_forests(0, 0).len(), 1);
    }

    #[test]
    fn gluing_examples() {
        for parity in Parity::BOTH {
            assert!(d_h(&Diagram::new(1, &[], &[], &[3]), parity).is_zero());
            // chord with tops (2,1): one merged term with a bottom asterisk
            let d = Diagram::new(2, &[(0, 1)], &[], &[2, 1]);
            let out = d_h(&d, parity);
            let merged = Diagram::new(1, &[], &[0], &[3]);
            assert_eq!(out.len(), 1);
            assert_eq!(
                out.coefficient(&merged).magnitude(),
                quantum_binomial(2, 1, parity.sign()).magnitude()
            );
            assert!(d_v(&Diagram::new(2, &[(0, 1)], &[], &[]), parity).is_zero());
            assert!(d_v(&Diagram::new(1, &[], &[0], &[1]), parity).is_zero());
        }
    }

    #[test]
    fn t_differential_into_empty_slice() {
        let m = differential_matrix(ComplexVariant::T, Parity::Odd, 1, 2).unwrap();
        assert_eq!((m.matrix.rows, m.matrix.cols), (0, 1));
        assert!(m.to_triplet_text().starts_with("# complex T parity odd"));
    }
}
