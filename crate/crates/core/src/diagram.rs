//! Diagrams on the line, their orienting monomials and Koszul signs.
//!
//! A diagram has `n` active points `0..n` (printed 1-based), a set of chords
//! between them, an optional bottom asterisk on each point and a count of top
//! asterisks on the half-line above each point. Only the parity of the
//! ambient dimension `d` ever enters a sign or degree computation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::ComplexVariant;
use crate::error::{Error, Result};

/// Largest number of active points a diagram may carry.
pub const MAX_POINTS: usize = 32;

/// Parity of the ambient dimension `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Odd, Parity::Even];

    /// `d mod 2`.
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// `(-1)^d`: the cost of reversing a chord, and the `q` of the quantum binomial.
    pub fn sign(self) -> i32 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    /// Whether chords, bottom and top asterisks (degree `d-1`) are odd.
    pub fn weight_is_odd(self) -> bool {
        self == Parity::Even
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("unknown parity `{s}`"))),
        }
    }
}

/// One generator of an orienting monomial.
///
/// Points are 0-based. The half-line index `r` of [`Token::HalfLine`] and
/// [`Token::Top`] counts top asterisks from the top, starting at 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    /// Active point `t_i` (degree -1).
    Point(u8),
    /// Point `a_i^r` on the half-line carrying a top asterisk (degree -1).
    HalfLine(u8, u8),
    /// Oriented chord from the first point to the second (degree d-1).
    Chord(u8, u8),
    /// Bottom asterisk at a point (degree d-1).
    Bottom(u8),
    /// Top asterisk `r` above a point (degree d-1).
    Top(u8, u8),
}

impl Token {
    /// Position key in the canonical monomial; chord orientation is ignored.
    #[inline]
    pub fn key(self) -> u32 {
        let (class, a, b) = match self {
            Token::Point(i) => (0u32, i, 0),
            Token::HalfLine(i, r) => (1, i, r),
            Token::Chord(a, b) => (2, a.min(b), a.max(b)),
            Token::Bottom(i) => (3, i, 0),
            Token::Top(i, r) => (4, i, r),
        };
        (class << 16) | ((a as u32) << 8) | b as u32
    }

    #[inline]
    pub fn is_odd(self, parity: Parity) -> bool {
        match self {
            Token::Point(_) | Token::HalfLine(..) => true,
            _ => parity.weight_is_odd(),
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Token::Point(i) => write!(f, "t{}", i + 1),
            Token::HalfLine(i, r) => write!(f, "a{}^{}", i + 1, r + 1),
            Token::Chord(a, b) => write!(f, "c{}{}", a + 1, b + 1),
            Token::Bottom(i) => write!(f, "b{}", i + 1),
            Token::Top(i, r) => write!(f, "s{}^{}", i + 1, r + 1),
        }
    }
}

/// An ordering of the generators of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientingMonomial {
    pub tokens: Vec<Token>,
}

impl OrientingMonomial {
    pub fn new(tokens: Vec<Token>) -> Self {
        OrientingMonomial { tokens }
    }

    pub fn degree_is_odd(&self, parity: Parity) -> bool {
        self.tokens.iter().filter(|t| t.is_odd(parity)).count() % 2 == 1
    }
}

/// A (possibly generalized) diagram.
///
/// Chords are stored as ordered pairs. Canonical diagrams keep them sorted
/// with the smaller endpoint first; raw diagrams handed to [`canonicalize`]
/// may carry any orientation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: u8,
    chords: Vec<(u8, u8)>,
    bottom: u32,
    top: Vec<u8>,
}

/// A canonical diagram together with the sign relating some orientation to
/// the canonical one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedDiagram {
    pub diagram: Diagram,
    pub sign: i32,
}

/// Bigrading data of a diagram. `q` and the total degree depend on `d`
/// and are kept as `d_coeff * d + constant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bigrading {
    pub i: usize,
    pub j: usize,
    pub p: i64,
    pub q_d_coeff: i64,
    pub q_constant: i64,
}

impl Bigrading {
    pub fn new(i: usize, j: usize) -> Self {
        Bigrading {
            i,
            j,
            p: -(i as i64),
            q_d_coeff: i as i64,
            q_constant: -(j as i64),
        }
    }

    pub fn q(&self, d: i64) -> i64 {
        self.q_d_coeff * d + self.q_constant
    }

    /// `p + q = i(d-1) - j`.
    pub fn total_degree(&self, d: i64) -> i64 {
        self.p + self.q(d)
    }

    pub fn degree_is_odd(&self, parity: Parity) -> bool {
        let d = parity.bit() as i64;
        self.total_degree(d).rem_euclid(2) == 1
    }
}

/// A single reason a diagram is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    TooManyPoints(usize),
    TopLengthMismatch { points: usize, tops: usize },
    EndpointOutOfRange(usize, usize),
    SelfLoop(usize),
    MultiEdge(usize, usize),
    Cycle,
    BottomOutOfRange,
    IsolatedPoint(usize),
    TopAsterisksForbidden,
    AsterisksForbidden,
    NeighborChord(usize),
    ChordsForbidden,
    MissingTopAsterisk(usize),
}

impl Diagram {
    /// Builds a diagram from 0-based data without any checks.
    pub fn from_parts(n: usize, chords: Vec<(u8, u8)>, bottom: u32, top: Vec<u8>) -> Self {
        Diagram {
            n: n as u8,
            chords,
            bottom,
            top,
        }
    }

    /// Builds a diagram from 0-based data; `bottom` lists points.
    pub fn new(n: usize, chords: &[(usize, usize)], bottom: &[usize], top: &[usize]) -> Self {
        let mut mask = 0u32;
        for &b in bottom {
            mask |= 1 << b;
        }
        let mut top = top.iter().map(|&k| k as u8).collect::<Vec<_>>();
        if top.is_empty() {
            top = vec![0; n];
        }
        Diagram {
            n: n as u8,
            chords: chords.iter().map(|&(a, b)| (a as u8, b as u8)).collect(),
            bottom: mask,
            top,
        }
    }

    /// The unit: no points at all.
    pub fn empty() -> Self {
        Diagram {
            n: 0,
            chords: Vec::new(),
            bottom: 0,
            top: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn chords(&self) -> &[(u8, u8)] {
        &self.chords
    }

    pub fn bottom_mask(&self) -> u32 {
        self.bottom
    }

    pub fn has_bottom(&self, i: usize) -> bool {
        self.bottom >> i & 1 == 1
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom.count_ones() as usize
    }

    pub fn tops(&self) -> &[u8] {
        &self.top
    }

    pub fn top(&self, i: usize) -> usize {
        self.top[i] as usize
    }

    pub fn top_total(&self) -> usize {
        self.top.iter().map(|&k| k as usize).sum()
    }

    pub fn has_chords(&self) -> bool {
        !self.chords.is_empty()
    }

    pub fn has_asterisks(&self) -> bool {
        self.bottom != 0 || self.top_total() > 0
    }

    /// Complexity: chords plus all asterisks.
    pub fn complexity(&self) -> usize {
        self.chords.len() + self.bottom_count() + self.top_total()
    }

    /// Geometrically distinct points: active points plus top asterisks.
    pub fn distinct_points(&self) -> usize {
        self.n() + self.top_total()
    }

    pub fn bigrading(&self) -> Bigrading {
        Bigrading::new(self.complexity(), self.distinct_points())
    }

    /// Parity of the total degree `i(d-1) - j`.
    pub fn degree_is_odd(&self, parity: Parity) -> bool {
        self.bigrading().degree_is_odd(parity)
    }

    /// True when some point carries neither a chord nor an asterisk.
    pub fn is_generalized(&self) -> bool {
        (0..self.n()).any(|p| self.is_bare(p))
    }

    pub fn is_bare(&self, p: usize) -> bool {
        !self.has_bottom(p)
            && self.top[p] == 0
            && !self
                .chords
                .iter()
                .any(|&(a, b)| a as usize == p || b as usize == p)
    }

    /// The same diagram with every top asterisk removed.
    pub fn without_tops(&self) -> Diagram {
        Diagram {
            n: self.n,
            chords: self.chords.clone(),
            bottom: self.bottom,
            top: vec![0; self.n()],
        }
    }

    /// Chords reoriented small-to-large and sorted; also returns how many
    /// were reversed.
    pub fn normalized(&self) -> (Diagram, usize) {
        let mut flips = 0;
        let mut chords: Vec<(u8, u8)> = self
            .chords
            .iter()
            .map(|&(a, b)| {
                if a > b {
                    flips += 1;
                    (b, a)
                } else {
                    (a, b)
                }
            })
            .collect();
        chords.sort_unstable();
        (
            Diagram {
                n: self.n,
                chords,
                bottom: self.bottom,
                top: self.top.clone(),
            },
            flips,
        )
    }

    pub fn is_canonical(&self) -> bool {
        self.chords.iter().all(|&(a, b)| a < b) && self.chords.windows(2).all(|w| w[0] < w[1])
    }

    /// The generators in canonical order.
    pub fn canonical_monomial(&self) -> OrientingMonomial {
        OrientingMonomial::new(self.canonical_tokens())
    }

    pub(crate) fn canonical_tokens(&self) -> Vec<Token> {
        let mut out = Vec::with_capacity(self.n() + 2 * self.top_total() + self.chords.len() + 4);
        for p in 0..self.n {
            out.push(Token::Point(p));
        }
        for p in 0..self.n {
            for r in 0..self.top[p as usize] {
                out.push(Token::HalfLine(p, r));
            }
        }
        let mut chords = self.chords.clone();
        chords.sort_unstable_by_key(|&(a, b)| (a.min(b), a.max(b)));
        for (a, b) in chords {
            out.push(Token::Chord(a, b));
        }
        for p in 0..self.n {
            if self.has_bottom(p as usize) {
                out.push(Token::Bottom(p));
            }
        }
        for p in 0..self.n {
            for r in 0..self.top[p as usize] {
                out.push(Token::Top(p, r));
            }
        }
        out
    }

    /// Every chord head (larger endpoint) appears at most once.
    pub fn is_admissible(&self) -> bool {
        let mut seen = 0u32;
        for &(a, b) in &self.chords {
            let head = a.max(b);
            if seen >> head & 1 == 1 {
                return false;
            }
            seen |= 1 << head;
        }
        true
    }

    /// Connected component label of every point under the chord graph.
    pub fn components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for &(a, b) in &self.chords {
            let ra = find(&mut parent, a as usize);
            let rb = find(&mut parent, b as usize);
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        (0..self.n()).map(|x| find(&mut parent, x)).collect()
    }

    fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let n = self.n();
        if n > MAX_POINTS {
            out.push(Violation::TooManyPoints(n));
            return out;
        }
        if self.top.len() != n {
            out.push(Violation::TopLengthMismatch {
                points: n,
                tops: self.top.len(),
            });
        }
        if n < 32 && self.bottom >> n != 0 {
            out.push(Violation::BottomOutOfRange);
        }
        let mut pairs = Vec::new();
        let mut ok_edges = Vec::new();
        for &(a, b) in &self.chords {
            let (a, b) = (a as usize, b as usize);
            if a >= n || b >= n {
                out.push(Violation::EndpointOutOfRange(a, b));
                continue;
            }
            if a == b {
                out.push(Violation::SelfLoop(a));
                continue;
            }
            let pair = (a.min(b), a.max(b));
            if pairs.contains(&pair) {
                out.push(Violation::MultiEdge(pair.0, pair.1));
                continue;
            }
            pairs.push(pair);
            ok_edges.push(pair);
        }
        // forest test by union-find on the distinct edges
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in ok_edges {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra == rb {
                out.push(Violation::Cycle);
                break;
            }
            parent[ra] = rb;
        }
        out
    }

    fn variant_violations(&self, variant: ComplexVariant, out: &mut Vec<Violation>) {
        use ComplexVariant::*;
        match variant {
            Tss | TssH => {}
            Ts => {
                if self.top_total() > 0 {
                    out.push(Violation::TopAsterisksForbidden);
                }
            }
            T | T0 => {
                if self.has_asterisks() {
                    out.push(Violation::AsterisksForbidden);
                }
                if variant == T0 {
                    for &(a, b) in &self.chords {
                        if (a as i32 - b as i32).abs() == 1 {
                            out.push(Violation::NeighborChord(a.min(b) as usize));
                        }
                    }
                }
            }
            Z => {
                if self.has_chords() {
                    out.push(Violation::ChordsForbidden);
                }
                if self.bottom != 0 {
                    out.push(Violation::AsterisksForbidden);
                }
                for p in 0..self.n() {
                    if self.top[p] == 0 {
                        out.push(Violation::MissingTopAsterisk(p));
                    }
                }
            }
        }
    }

    /// Display with 1-based indices, the form used by caches and the CLI.
    pub fn serialize(&self) -> String {
        let chords = self
            .chords
            .iter()
            .map(|&(a, b)| format!("{}-{}", a + 1, b + 1))
            .collect::<Vec<_>>()
            .join(",");
        let bottom = (0..self.n())
            .filter(|&p| self.has_bottom(p))
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join(",");
        let top = self
            .top
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("{};chords={};bottom={};top={}", self.n, chords, bottom, top)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed diagram `{s}`"));
        let mut parts = s.trim().split(';');
        let n: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if n > MAX_POINTS {
            return Err(Error::Parse(format!("too many points in `{s}`")));
        }
        let field = |part: Option<&str>, name: &str| -> Result<String> {
            let part = part.ok_or_else(bad)?;
            part.strip_prefix(name)
                .and_then(|r| r.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(bad)
        };
        let list = |body: &str| -> Result<Vec<usize>> {
            if body.is_empty() {
                return Ok(Vec::new());
            }
            body.split(',')
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect()
        };
        let chord_body = field(parts.next(), "chords")?;
        let bottom = list(&field(parts.next(), "bottom")?)?;
        let top = list(&field(parts.next(), "top")?)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let mut chords = Vec::new();
        if !chord_body.is_empty() {
            for c in chord_body.split(',') {
                let (a, b) = c.split_once('-').ok_or_else(bad)?;
                let a: usize = a.parse().map_err(|_| bad())?;
                let b: usize = b.parse().map_err(|_| bad())?;
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(bad());
                }
                chords.push((a as u8 - 1, b as u8 - 1));
            }
        }
        let mut mask = 0u32;
        for b in bottom {
            if b == 0 || b > n || mask >> (b - 1) & 1 == 1 {
                return Err(bad());
            }
            mask |= 1 << (b - 1);
        }
        if top.len() != n || top.iter().any(|&k| k > u8::MAX as usize) {
            return Err(bad());
        }
        Ok(Diagram {
            n: n as u8,
            chords,
            bottom: mask,
            top: top.into_iter().map(|k| k as u8).collect(),
        })
    }
}

/// Outcome of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self, d: &Diagram) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram {
                diagram: d.serialize(),
                violations: self.violations,
            })
        }
    }
}

/// Strict validation: every point must carry a chord or an asterisk.
pub fn validate(d: &Diagram, variant: ComplexVariant) -> ValidityReport {
    let mut violations = d.structural_violations();
    if d.top.len() == d.n() && d.n() <= MAX_POINTS {
        for p in 0..d.n() {
            if d.is_bare(p) {
                violations.push(Violation::IsolatedPoint(p));
            }
        }
        d.variant_violations(variant, &mut violations);
    }
    ValidityReport { violations }
}

/// Validation of generalized diagrams, which may have bare points.
pub fn validate_generalized(d: &Diagram, variant: ComplexVariant) -> ValidityReport {
    let mut violations = d.structural_violations();
    if d.top.len() == d.n() && d.n() <= MAX_POINTS {
        d.variant_violations(variant, &mut violations);
        if variant == ComplexVariant::Z {
            // bare points are the generalized part, not a missing asterisk
            violations.retain(|v| !matches!(v, Violation::MissingTopAsterisk(p) if d.is_bare(*p)));
        }
    }
    ValidityReport { violations }
}

/// Sign of the graded permutation taking `order` back to sorted position.
///
/// `perm[k]` is the original index of the element now at position `k`;
/// `odd[x]` is the parity of original element `x`.
pub fn koszul_sign(perm: &[usize], odd: &[bool]) -> Result<i32> {
    if perm.len() != odd.len() {
        return Err(Error::LengthMismatch {
            perm: perm.len(),
            degrees: odd.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(Error::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    let mut sign = 1;
    for a in 0..perm.len() {
        if !odd[perm[a]] {
            continue;
        }
        for b in a + 1..perm.len() {
            if odd[perm[b]] && perm[a] > perm[b] {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Koszul sign of sorting `tokens` into canonical order. Chord orientation
/// is not looked at.
#[inline]
pub(crate) fn sort_sign(tokens: &[Token], parity: Parity) -> i32 {
    let weight_odd = parity.weight_is_odd();
    let mut odd_keys: Vec<u32> = Vec::with_capacity(tokens.len());
    for t in tokens {
        let odd = match t {
            Token::Point(_) | Token::HalfLine(..) => true,
            _ => weight_odd,
        };
        if odd {
            odd_keys.push(t.key());
        }
    }
    let mut inversions = 0usize;
    for a in 0..odd_keys.len() {
        for b in a + 1..odd_keys.len() {
            if odd_keys[a] > odd_keys[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn generator_tokens(d: &Diagram) -> Vec<Token> {
    let mut out = Vec::new();
    for p in 0..d.n {
        out.push(Token::Point(p));
        for r in 0..d.top[p as usize] {
            out.push(Token::HalfLine(p, r));
            out.push(Token::Top(p, r));
        }
        if d.has_bottom(p as usize) {
            out.push(Token::Bottom(p));
        }
    }
    for &(a, b) in &d.chords {
        out.push(Token::Chord(a, b));
    }
    out
}

/// Brings a raw oriented diagram to canonical form.
///
/// Reversed chords contribute `(-1)^d` each; the reordering of the monomial
/// into canonical order contributes its Koszul sign.
pub fn canonicalize(raw: &Diagram, monomial: &OrientingMonomial, parity: Parity) -> Result<SignedDiagram> {
    validate_generalized(raw, ComplexVariant::Tss).into_result(raw)?;
    let mut expected = generator_tokens(raw);
    let mut given = monomial.tokens.clone();
    expected.sort_unstable();
    given.sort_unstable();
    if expected != given {
        return Err(Error::TokenMismatch(format!(
            "{} vs [{}]",
            raw.serialize(),
            monomial
                .tokens
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        )));
    }
    let (diagram, flips) = raw.normalized();
    let mut sign = sort_sign(&monomial.tokens, parity);
    if parity == Parity::Odd && flips % 2 == 1 {
        sign = -sign;
    }
    Ok(SignedDiagram { diagram, sign })
}

/// Canonical representative of an already-normalized token list (no chord
/// reversals) built directly from the target diagram.
pub(crate) fn signed(diagram: Diagram, tokens: &[Token], parity: Parity) -> SignedDiagram {
    debug_assert!(diagram.is_canonical());
    SignedDiagram {
        sign: sort_sign(tokens, parity),
        diagram,
    }
}
