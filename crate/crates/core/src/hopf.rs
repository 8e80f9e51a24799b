//! Products, coproducts, divided powers, the gluing operation `⊨`, the
//! bracket `⟨A_1,…,A_ℓ | D⟩` and the isomorphisms `I`, `I⁻¹`, `Î`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{ComplexBuilder, ComplexVariant};
use crate::diagram::{signed, sort_sign, Diagram, Parity, SignedDiagram, Token};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::ring::Ring;

fn relabel(t: Token, map: &[u8]) -> Token {
    match t {
        Token::Point(x) => Token::Point(map[x as usize]),
        Token::HalfLine(x, r) => Token::HalfLine(map[x as usize], r),
        Token::Chord(a, b) => Token::Chord(map[a as usize], map[b as usize]),
        Token::Bottom(x) => Token::Bottom(map[x as usize]),
        Token::Top(x, r) => Token::Top(map[x as usize], r),
    }
}

/// `Z_k`: one point with `k` top asterisks, oriented
/// `t (s^1 a^1)(s^2 a^2)…(s^k a^k)`.
pub fn make_z(k: usize, parity: Parity) -> SignedDiagram {
    let d = Diagram::new(1, &[], &[], &[k]);
    let mut tokens = vec![Token::Point(0)];
    for r in 0..k as u8 {
        tokens.push(Token::Top(0, r));
        tokens.push(Token::HalfLine(0, r));
    }
    signed(d, &tokens, parity)
}

/// `Ẑ_k`: points `t_0…t_k` with chords `t_0 → t_r`, oriented
/// `t_0 (c_{01} t_1)…(c_{0k} t_k)`.
pub fn make_zhat(k: usize, parity: Parity) -> SignedDiagram {
    let chords: Vec<(usize, usize)> = (1..=k).map(|r| (0, r)).collect();
    let d = Diagram::new(k + 1, &chords, &[], &[]);
    let mut tokens = vec![Token::Point(0)];
    for r in 1..=k as u8 {
        tokens.push(Token::Chord(0, r));
        tokens.push(Token::Point(r));
    }
    signed(d, &tokens, parity)
}

/// `★`: one point with a bottom asterisk, oriented `t_1 b_1`.
pub fn make_star() -> SignedDiagram {
    SignedDiagram {
        diagram: Diagram::new(1, &[], &[0], &[]),
        sign: 1,
    }
}

pub fn z(k: usize, parity: Parity) -> LinComb {
    LinComb::from_signed(make_z(k, parity))
}

pub fn zhat(k: usize, parity: Parity) -> LinComb {
    LinComb::from_signed(make_zhat(k, parity))
}

pub fn star() -> LinComb {
    LinComb::from_signed(make_star())
}

/// The bare generalized point `Z_0 = Ẑ_0`.
pub fn z0() -> LinComb {
    LinComb::from_diagram(Diagram::new(1, &[], &[], &[]))
}

pub fn unit() -> LinComb {
    LinComb::unit()
}

/// Places each factor's points at the given output positions; returns the
/// combined diagram and the Koszul sign of the concatenated monomials.
fn place(factors: &[&Diagram], maps: &[Vec<u8>], parity: Parity) -> (Diagram, i32) {
    let n: usize = factors.iter().map(|d| d.n()).sum();
    let mut chords = Vec::new();
    let mut bottom = 0u32;
    let mut top = vec![0u8; n];
    let mut tokens = Vec::new();
    for (d, map) in factors.iter().zip(maps) {
        for &(a, b) in d.chords() {
            chords.push((map[a as usize], map[b as usize]));
        }
        for x in 0..d.n() {
            if d.has_bottom(x) {
                bottom |= 1 << map[x];
            }
            top[map[x] as usize] = d.top(x) as u8;
        }
        tokens.extend(d.canonical_tokens().into_iter().map(|t| relabel(t, map)));
    }
    chords.sort_unstable();
    (Diagram::from_parts(n, chords, bottom, top), sort_sign(&tokens, parity))
}

/// Interleavings of factors of the given sizes, as position maps. With
/// `divided`, the left-most point of each nonempty factor stays left of
/// the left-most point of the next nonempty one.
fn interleavings(sizes: &[usize], divided: bool) -> Vec<Vec<Vec<u8>>> {
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut maps: Vec<Vec<u8>> = vec![Vec::new(); sizes.len()];
    fn go(pos: usize, total: usize, sizes: &[usize], divided: bool, maps: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if pos == total {
            out.push(maps.clone());
            return;
        }
        for k in 0..sizes.len() {
            if maps[k].len() == sizes[k] {
                continue;
            }
            if divided && maps[k].is_empty() {
                // every earlier nonempty factor must already have started
                if (0..k).any(|e| sizes[e] > 0 && maps[e].is_empty()) {
                    continue;
                }
            }
            maps[k].push(pos as u8);
            go(pos + 1, total, sizes, divided, maps, out);
            maps[k].pop();
        }
    }
    go(0, total, sizes, divided, &mut maps, &mut out);
    out
}

fn multi_product(factors: &[LinComb], divided: bool, parity: Parity) -> LinComb {
    let mut out = LinComb::zero();
    let mut choice: Vec<(&Diagram, BigInt)> = Vec::new();
    fn go<'a>(
        k: usize,
        factors: &'a [LinComb],
        divided: bool,
        parity: Parity,
        choice: &mut Vec<(&'a Diagram, BigInt)>,
        out: &mut LinComb,
    ) {
        if k == factors.len() {
            let ds: Vec<&Diagram> = choice.iter().map(|c| c.0).collect();
            let coeff = choice.iter().fold(BigInt::one(), |acc, c| acc * &c.1);
            let sizes: Vec<usize> = ds.iter().map(|d| d.n()).collect();
            for maps in interleavings(&sizes, divided) {
                let (d, s) = place(&ds, &maps, parity);
                out.add_term(d, &coeff * s);
            }
            return;
        }
        for (d, c) in factors[k].iter() {
            choice.push((d, c.clone()));
            go(k + 1, factors, divided, parity, choice, out);
            choice.pop();
        }
    }
    go(0, factors, divided, parity, &mut choice, &mut out);
    out
}

/// Shuffle product.
pub fn shuffle_product(a: &LinComb, b: &LinComb, parity: Parity) -> LinComb {
    multi_product(&[a.clone(), b.clone()], false, parity)
}

/// Divided product `⟨D_1,…,D_ℓ⟩`; the empty list gives the unit.
pub fn divided_product(ds: &[LinComb], parity: Parity) -> LinComb {
    multi_product(ds, true, parity)
}

/// One term `sign · left ⊗ right` of a coproduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPair {
    pub left: Diagram,
    pub right: Diagram,
    pub sign: i32,
}

/// Coconcatenation: one pair per cut crossed by no chord.
pub fn coproduct(d: &Diagram, parity: Parity) -> Vec<TensorPair> {
    let n = d.n();
    let mut out = Vec::new();
    for cut in 0..=n {
        if d
            .chords()
            .iter()
            .any(|&(a, b)| (a.min(b) as usize) < cut && cut <= a.max(b) as usize)
        {
            continue;
        }
        let part = |range: std::ops::Range<usize>| -> Diagram {
            let off = range.start;
            let chords = d
                .chords()
                .iter()
                .filter(|&&(a, _)| range.contains(&(a as usize)))
                .map(|&(a, b)| (a - off as u8, b - off as u8))
                .collect();
            let mut bottom = 0u32;
            for x in range.clone() {
                if d.has_bottom(x) {
                    bottom |= 1 << (x - off);
                }
            }
            let top = range.clone().map(|x| d.top(x) as u8).collect();
            Diagram::from_parts(range.len(), chords, bottom, top)
        };
        let left = part(0..cut);
        let right = part(cut..n);
        let shift: Vec<u8> = (0..right.n()).map(|x| (x + cut) as u8).collect();
        let mut tokens = left.canonical_tokens();
        tokens.extend(right.canonical_tokens().into_iter().map(|t| relabel(t, &shift)));
        out.push(TensorPair {
            left,
            right,
            sign: sort_sign(&tokens, parity),
        });
    }
    out
}

/// Finite sum of tensor pairs of canonical diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorComb {
    terms: BTreeMap<(Diagram, Diagram), BigInt>,
}

impl TensorComb {
    pub fn zero() -> Self {
        TensorComb::default()
    }

    pub fn add_term(&mut self, left: Diagram, right: Diagram, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((left, right)).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Diagram, Diagram), &BigInt)> {
        self.terms.iter()
    }

    pub fn sub(&self, other: &TensorComb) -> TensorComb {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), -c);
        }
        out
    }

    /// `(a⊗b)(c⊗d) = (-1)^{|b||c|} ac ⊗ bd`.
    pub fn product(&self, other: &TensorComb, parity: Parity) -> TensorComb {
        let mut out = TensorComb::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                let s = if b.degree_is_odd(parity) && c.degree_is_odd(parity) { -1 } else { 1 };
                let left = shuffle_product(&LinComb::from_diagram(a.clone()), &LinComb::from_diagram(c.clone()), parity);
                let right = shuffle_product(&LinComb::from_diagram(b.clone()), &LinComb::from_diagram(d.clone()), parity);
                for (l, u) in left.iter() {
                    for (r, v) in right.iter() {
                        out.add_term(l.clone(), r.clone(), x * y * u * v * s);
                    }
                }
            }
        }
        out
    }

    /// `a⊗b ↦ (-1)^{|a||b|} b⊗a`.
    pub fn twist(&self, parity: Parity) -> TensorComb {
        let mut out = TensorComb::zero();
        for ((a, b), x) in &self.terms {
            let s = if a.degree_is_odd(parity) && b.degree_is_odd(parity) { -1 } else { 1 };
            out.add_term(b.clone(), a.clone(), x * s);
        }
        out
    }
}

/// Coproduct extended linearly.
pub fn coproduct_lin(x: &LinComb, parity: Parity) -> TensorComb {
    let mut out = TensorComb::zero();
    for (d, c) in x.iter() {
        for p in coproduct(d, parity) {
            out.add_term(p.left, p.right, c * p.sign);
        }
    }
    out
}

/// Parity of the total degree of a homogeneous combination.
fn degree(x: &LinComb, parity: Parity) -> Result<Option<bool>> {
    x.degree_is_odd(parity)
}

/// Algebraic operations sharing one Arnold reducer.
#[derive(Debug)]
pub struct Algebra {
    builder: ComplexBuilder,
}

impl Algebra {
    pub fn new(parity: Parity) -> Self {
        Algebra {
            builder: ComplexBuilder::new(parity),
        }
    }

    pub fn parity(&self) -> Parity {
        self.builder.parity()
    }

    pub fn builder(&mut self) -> &mut ComplexBuilder {
        &mut self.builder
    }

    pub fn reduce(&mut self, x: &LinComb) -> Result<LinComb> {
        self.builder.reduce(x)
    }

    /// The full differential `d_h + d_v`.
    pub fn d(&mut self, x: &LinComb) -> Result<LinComb> {
        self.builder.differential(ComplexVariant::Tss, x)
    }

    /// The horizontal differential alone.
    pub fn d_h(&mut self, x: &LinComb) -> Result<LinComb> {
        self.builder.differential(ComplexVariant::TssH, x)
    }

    pub fn product(&mut self, a: &LinComb, b: &LinComb) -> Result<LinComb> {
        let p = shuffle_product(a, b, self.parity());
        self.reduce(&p)
    }

    pub fn divided(&mut self, ds: &[LinComb]) -> Result<LinComb> {
        let p = divided_product(ds, self.parity());
        self.reduce(&p)
    }

    /// `A ⊨ B = (-1)^{|A|-1} (∂⟨A,B⟩ - ⟨∂A,B⟩ - (-1)^{|A|} ⟨A,∂B⟩)`.
    pub fn vdash(&mut self, a: &LinComb, b: &LinComb) -> Result<LinComb> {
        self.vdash_with(a, b, false)
    }

    /// `⊨` built from `∂_h` instead of `∂`.
    pub fn vdash_h(&mut self, a: &LinComb, b: &LinComb) -> Result<LinComb> {
        self.vdash_with(a, b, true)
    }

    fn vdash_with(&mut self, a: &LinComb, b: &LinComb, horizontal: bool) -> Result<LinComb> {
        let parity = self.parity();
        let (Some(da), Some(_)) = (degree(a, parity)?, degree(b, parity)?) else {
            return Ok(LinComb::zero());
        };
        let diff = |alg: &mut Self, x: &LinComb| if horizontal { alg.d_h(x) } else { alg.d(x) };
        let ab = self.divided(&[a.clone(), b.clone()])?;
        let mut out = diff(self, &ab)?;
        let a_d = diff(self, a)?;
        out = out.sub(&self.divided(&[a_d, b.clone()])?);
        let b_d = diff(self, b)?;
        let third = self.divided(&[a.clone(), b_d])?;
        if da {
            out.add_assign(&third);
        } else {
            out = out.sub(&third);
        }
        // (-1)^{|A|-1}
        Ok(if da { out } else { out.neg() })
    }

    /// `x^⟨ℓ⟩`; needs even degree outside characteristic 2.
    pub fn divided_power(&mut self, x: &LinComb, ell: usize, ring: Ring) -> Result<LinComb> {
        if ring.characteristic() != 2 && degree(x, self.parity())? == Some(true) {
            return Err(Error::OddDegree);
        }
        let out = self.divided(&vec![x.clone(); ell])?;
        Ok(match ring {
            Ring::PrimeField(p) => out.reduced_mod(p),
            _ => out,
        })
    }

    /// `⟨A_1,…,A_ℓ | D⟩`: glue the points of `D` in order onto the
    /// left-most points of the factors of each term of `⟨A_1,…,A_ℓ⟩`.
    pub fn bracket_over(&mut self, factors: &[LinComb], d: &Diagram) -> Result<LinComb> {
        if d.top_total() > 0 {
            return Err(Error::TopAsterisksOnD);
        }
        if d.n() != factors.len() {
            return Err(Error::ArityMismatch {
                expected: factors.len(),
                actual: d.n(),
            });
        }
        let parity = self.parity();
        let rest: Vec<Token> = d
            .canonical_tokens()
            .into_iter()
            .filter(|t| !matches!(t, Token::Point(_)))
            .collect();
        let mut out = LinComb::zero();
        let mut terms: Vec<Vec<(&Diagram, &BigInt)>> = vec![Vec::new()];
        for f in factors {
            let mut next = Vec::new();
            for partial in &terms {
                for (a, c) in f.iter() {
                    let mut p = partial.clone();
                    p.push((a, c));
                    next.push(p);
                }
            }
            terms = next;
        }
        for choice in terms {
            if choice.iter().any(|(a, _)| a.n() == 0) {
                continue;
            }
            if choice
                .iter()
                .enumerate()
                .any(|(r, (a, _))| d.has_bottom(r) && a.has_bottom(0))
            {
                continue;
            }
            let ds: Vec<&Diagram> = choice.iter().map(|c| c.0).collect();
            let coeff = choice.iter().fold(BigInt::one(), |acc, c| acc * c.1);
            let sizes: Vec<usize> = ds.iter().map(|x| x.n()).collect();
            for maps in interleavings(&sizes, true) {
                let lead: Vec<u8> = maps.iter().map(|m| m[0]).collect();
                let (tilde, _) = place(&ds, &maps, parity);
                let mut chords = tilde.chords().to_vec();
                for &(a, b) in d.chords() {
                    chords.push((lead[a as usize], lead[b as usize]));
                }
                chords.sort_unstable();
                let mut bottom = tilde.bottom_mask();
                for r in 0..d.n() {
                    if d.has_bottom(r) {
                        bottom |= 1 << lead[r];
                    }
                }
                let glued = Diagram::from_parts(tilde.n(), chords, bottom, tilde.tops().to_vec());
                if !crate::diagram::validate_generalized(&glued, ComplexVariant::Tss).is_valid() {
                    // multi-edge or cycle
                    continue;
                }
                let mut tokens = Vec::new();
                for (x, map) in ds.iter().zip(&maps) {
                    tokens.extend(x.canonical_tokens().into_iter().map(|t| relabel(t, map)));
                }
                tokens.extend(rest.iter().map(|&t| relabel(t, &lead)));
                out.add_term(glued, &coeff * sort_sign(&tokens, parity));
            }
        }
        self.reduce(&out)
    }

    /// Sign `s` with `D = s ⟨Z_{k_1},…,Z_{k_ℓ} | D_bottom⟩`.
    fn decomposition_sign(&mut self, d: &Diagram) -> Result<i32> {
        let parity = self.parity();
        let zs: Vec<LinComb> = d.tops().iter().map(|&k| z(k as usize, parity)).collect();
        let b = self.bracket_over(&zs, &d.without_tops())?;
        let c = b.coefficient(d);
        debug_assert_eq!(b.len(), 1);
        Ok(if c == BigInt::from(-1) { -1 } else { 1 })
    }

    fn extend_over_tops(&mut self, x: &LinComb, image: impl Fn(&mut Self, usize) -> Result<LinComb>) -> Result<LinComb> {
        let mut out = LinComb::zero();
        let mut cache: BTreeMap<usize, LinComb> = BTreeMap::new();
        for (d, c) in x.iter() {
            if d.top_total() == 0 {
                out.add_term(d.clone(), c.clone());
                continue;
            }
            let s = self.decomposition_sign(d)?;
            let mut factors = Vec::with_capacity(d.n());
            for &k in d.tops() {
                let k = k as usize;
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(k) {
                    let v = image(self, k)?;
                    e.insert(v);
                }
                factors.push(cache[&k].clone());
            }
            let y = self.bracket_over(&factors, &d.without_tops())?;
            out.add_scaled(&y, &(c * s));
        }
        Ok(out)
    }

    /// `I(Z_k) = Σ_i Z_{k-i} ⊨ Ẑ_i`.
    pub fn iso_i_of_z(&mut self, k: usize) -> Result<LinComb> {
        let parity = self.parity();
        if k == 0 {
            return Ok(z0());
        }
        let mut out = LinComb::zero();
        for i in 0..=k {
            let v = self.vdash(&z(k - i, parity), &zhat(i, parity))?;
            out.add_assign(&v);
        }
        Ok(out)
    }

    /// `I⁻¹(Z_k) = Σ_i (-1)^{i + d i(i-1)/2} Z_{k-i} ⊨ Ẑ_i`.
    pub fn iso_i_inv_of_z(&mut self, k: usize) -> Result<LinComb> {
        let parity = self.parity();
        if k == 0 {
            return Ok(z0());
        }
        let mut out = LinComb::zero();
        for i in 0..=k {
            let v = self.vdash(&z(k - i, parity), &zhat(i, parity))?;
            let e = i + parity.bit() as usize * (i * i.saturating_sub(1) / 2);
            out.add_scaled(&v, &BigInt::from(if e.is_multiple_of(2) { 1 } else { -1 }));
        }
        Ok(out)
    }

    pub fn iso_i(&mut self, x: &LinComb) -> Result<LinComb> {
        self.extend_over_tops(x, |a, k| a.iso_i_of_z(k))
    }

    pub fn iso_i_inv(&mut self, x: &LinComb) -> Result<LinComb> {
        self.extend_over_tops(x, |a, k| a.iso_i_inv_of_z(k))
    }

    /// `Î(z ⊗ t) = ⟨Ẑ_{k_1},…,Ẑ_{k_ℓ}⟩ * t` for `z = ⟨Z_{k_1},…,Z_{k_ℓ}⟩`.
    pub fn iso_i_hat(&mut self, zx: &LinComb, t: &LinComb) -> Result<LinComb> {
        let parity = self.parity();
        if zx
            .diagrams()
            .any(|d| d.has_chords() || d.bottom_mask() != 0 || d.tops().contains(&0))
        {
            return Err(Error::VariantMismatch("first argument must lie in Z".into()));
        }
        if t.diagrams().any(|d| d.has_asterisks()) {
            return Err(Error::VariantMismatch("second argument must lie in T0".into()));
        }
        let mut hat = LinComb::zero();
        for (d, c) in zx.iter() {
            let zs: Vec<LinComb> = d.tops().iter().map(|&k| z(k as usize, parity)).collect();
            let s = self.divided(&zs)?.coefficient(d);
            let zh: Vec<LinComb> = d.tops().iter().map(|&k| zhat(k as usize, parity)).collect();
            let y = self.divided(&zh)?;
            hat.add_scaled(&y, &(c * s));
        }
        let p = self.product(&hat, t)?;
        Ok(p.filtered(|d| !d.has_asterisks()))
    }
}

pub fn vdash(a: &LinComb, b: &LinComb, parity: Parity) -> Result<LinComb> {
    Algebra::new(parity).vdash(a, b)
}

pub fn divided_power(x: &LinComb, ell: usize, parity: Parity, ring: Ring) -> Result<LinComb> {
    Algebra::new(parity).divided_power(x, ell, ring)
}

pub fn bracket_over(factors: &[LinComb], d: &Diagram, parity: Parity) -> Result<LinComb> {
    Algebra::new(parity).bracket_over(factors, d)
}

pub fn iso_i(x: &LinComb, parity: Parity) -> Result<LinComb> {
    Algebra::new(parity).iso_i(x)
}

pub fn iso_i_inv(x: &LinComb, parity: Parity) -> Result<LinComb> {
    Algebra::new(parity).iso_i_inv(x)
}

pub fn iso_i_hat(zx: &LinComb, t: &LinComb, parity: Parity) -> Result<LinComb> {
    Algebra::new(parity).iso_i_hat(zx, t)
}
