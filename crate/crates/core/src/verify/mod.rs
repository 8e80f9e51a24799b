//! Named verification suites shared by the CLI and the acceptance run.

pub mod axioms;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::complex::ComplexVariant;
use crate::diagram::{Diagram, Parity};
use crate::error::{Error, Result};
use crate::homology::{chord_split, kunneth_compare, HomologyEngine, NamedMap};
use crate::hopf::{z, zhat, Algebra};
use crate::lincomb::LinComb;
use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    DSquared,
    IsoI,
    HopfAxioms,
    QuasiIso,
    Kunneth,
    ChordSplit,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::DSquared,
        Suite::IsoI,
        Suite::HopfAxioms,
        Suite::QuasiIso,
        Suite::Kunneth,
        Suite::ChordSplit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DSquared => "d-squared",
            Suite::IsoI => "iso-I",
            Suite::HopfAxioms => "hopf-axioms",
            Suite::QuasiIso => "quasi-iso",
            Suite::Kunneth => "kunneth",
            Suite::ChordSplit => "chord-split",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub parities: Vec<Parity>,
    pub i_max: usize,
    pub order_max: usize,
    /// Random cases per identity in `hopf-axioms`.
    pub random_cases: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            parities: Parity::BOTH.to_vec(),
            i_max: 3,
            order_max: 5,
            random_cases: 500,
            seed: 0x5eed,
        }
    }
}

/// One checked identity at one place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub identity: String,
    pub at: String,
    pub cases: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {} [{}] cases={}", l.identity, l.at, l.cases)?;
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "{}: {verdict}", self.suite)
    }
}

pub fn run(suite: Suite, opts: &SuiteOptions, engine: &mut HomologyEngine) -> Result<SuiteReport> {
    let lines = match suite {
        Suite::DSquared => d_squared(opts, engine)?,
        Suite::IsoI => iso_suite(opts)?,
        Suite::HopfAxioms => hopf_suite(opts)?,
        Suite::QuasiIso => quasi_iso(opts, engine)?,
        Suite::Kunneth => kunneth(opts, engine)?,
        Suite::ChordSplit => splitting(opts, engine)?,
    };
    Ok(SuiteReport { suite, lines })
}

fn d_squared(opts: &SuiteOptions, engine: &mut HomologyEngine) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for &parity in &opts.parities {
        for variant in ComplexVariant::ALL {
            for i in 0..=opts.i_max {
                let mut cases = 0;
                let mut passed = true;
                for j in 0..=2 * i {
                    for x in engine.slice(variant, parity, i, j)?.elements() {
                        let b = engine.builder(parity);
                        let dx = b.differential(variant, &x)?;
                        passed &= b.differential(variant, &dx)?.is_zero();
                        cases += 1;
                    }
                }
                lines.push(CheckLine {
                    identity: "d∘d = 0".into(),
                    at: format!("{variant} {parity} i={i}"),
                    cases,
                    passed,
                });
            }
        }
    }
    Ok(lines)
}

fn quasi_iso(opts: &SuiteOptions, engine: &mut HomologyEngine) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for &parity in &opts.parities {
        for map in NamedMap::ALL {
            for i in 0..=opts.i_max {
                let passed = engine.is_quasi_isomorphism(map, parity, i, Ring::Integers)?;
                lines.push(CheckLine {
                    identity: format!("{map} is a quasi-isomorphism over Z"),
                    at: format!("{parity} i={i}"),
                    cases: 2 * i + 1,
                    passed,
                });
            }
        }
    }
    Ok(lines)
}

fn kunneth(opts: &SuiteOptions, engine: &mut HomologyEngine) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for &parity in &opts.parities {
        for ring in [Ring::Integers, Ring::PrimeField(2), Ring::PrimeField(3)] {
            let r = kunneth_compare(engine, parity, opts.i_max, ring)?;
            for row in &r.rows {
                lines.push(CheckLine {
                    identity: format!("H(T) = Künneth(H(Z), H(T0)): {} vs {}", row.observed, row.predicted),
                    at: format!("{parity} {ring} ({},{})", row.i, row.j),
                    cases: 1,
                    passed: row.matches,
                });
            }
        }
    }
    Ok(lines)
}

fn splitting(opts: &SuiteOptions, engine: &mut HomologyEngine) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for &parity in &opts.parities {
        let r = chord_split(engine, parity, opts.order_max)?;
        lines.push(CheckLine {
            identity: format!("dim B = dim B0 ⊗ Θ-powers: B={:?} B0={:?}", r.b, r.b0),
            at: format!("{parity} order<={}", opts.order_max),
            cases: r.b.len(),
            passed: r.splitting_holds(),
        });
        if r.oracle_b.is_some() {
            lines.push(CheckLine {
                identity: "dual homology equals the 4T / 4T+1T oracle".into(),
                at: format!("{parity} order<={}", opts.order_max),
                cases: r.b.len(),
                passed: r.oracle_agrees(),
            });
        }
    }
    Ok(lines)
}

/// Basis elements of `Tss` with at most `j_max` distinct points.
pub fn small_elements(alg: &mut Algebra, j_max: usize) -> Result<Vec<LinComb>> {
    let mut out = Vec::new();
    for j in 0..=j_max {
        for i in 0..=2 * j {
            out.extend(alg.builder().slice(ComplexVariant::Tss, i, j)?.elements());
        }
    }
    Ok(out)
}

fn is_even(alg: &Algebra, x: &LinComb) -> Result<bool> {
    Ok(x.degree_is_odd(alg.parity())? == Some(false))
}

fn has_points(x: &LinComb) -> bool {
    !x.is_zero() && x.diagrams().all(|d| d.n() > 0)
}

/// Pass/case counters keyed by identity.
#[derive(Default)]
struct Tally(BTreeMap<&'static str, (usize, bool)>);

impl Tally {
    fn record(&mut self, identity: &'static str, ok: bool) {
        let e = self.0.entry(identity).or_insert((0, true));
        e.0 += 1;
        e.1 &= ok;
    }

    fn lines(self, at: &str) -> Vec<CheckLine> {
        self.0
            .into_iter()
            .map(|(identity, (cases, passed))| CheckLine {
                identity: identity.into(),
                at: at.into(),
                cases,
                passed,
            })
            .collect()
    }
}

fn unary_identities(alg: &mut Algebra, x: &LinComb, ell: usize, t: &mut Tally) -> Result<()> {
    t.record("unit", axioms::unit(alg, x)?);
    t.record("counit", axioms::counit(alg, x));
    t.record("coassociativity", axioms::coassociativity(alg, x));
    t.record("coderivation (d)", axioms::coderivation(alg, x, false)?);
    t.record("coderivation (d_h)", axioms::coderivation(alg, x, true)?);
    if is_even(alg, x)? && has_points(x) {
        t.record("x^<l> normalization, l!x^<l> = x^l", axioms::divided_power_normalization(alg, x, ell)?);
        t.record("d x^<l> = dx x^<l-1> (d)", axioms::divided_power_boundary(alg, x, 2, false)?);
        t.record("d x^<l> = dx x^<l-1> (d_h)", axioms::divided_power_boundary(alg, x, 2, true)?);
        t.record("x^<a> x^<b> = C(a+b,a) x^<a+b>", axioms::divided_power_product(alg, x, 1, ell - 1)?);
        t.record("x vdash x = 0", axioms::self_vdash_vanishes(alg, x)?);
    }
    Ok(())
}

fn binary_identities(alg: &mut Algebra, x: &LinComb, y: &LinComb, t: &mut Tally) -> Result<()> {
    t.record("graded commutativity", axioms::commutativity(alg, x, y)?);
    t.record("bialgebra compatibility", axioms::bialgebra(alg, x, y)?);
    t.record("derivation (d)", axioms::derivation(alg, x, y, false)?);
    t.record("derivation (d_h)", axioms::derivation(alg, x, y, true)?);
    if has_points(x) && has_points(y) {
        t.record("<A,B> + ±<B,A> = A*B", axioms::divided_splits_product(alg, x, y)?);
        t.record("vdash graded commutativity", axioms::vdash_commutativity(alg, x, y)?);
        t.record("Leibniz l=2 (d)", axioms::leibniz(alg, &[x.clone(), y.clone()], false)?);
        t.record("Leibniz l=2 (d_h)", axioms::leibniz(alg, &[x.clone(), y.clone()], true)?);
    }
    if is_even(alg, x)? && is_even(alg, y)? && has_points(x) && has_points(y) {
        t.record("(x+y)^<l> = sum x^<a> y^<l-a>", axioms::divided_power_of_sum(alg, x, y, 2)?);
        t.record("(xy)^<n> = x^n y^<n>", axioms::divided_power_of_product(alg, x, y, 2)?);
    }
    Ok(())
}

fn ternary_identities(alg: &mut Algebra, x: &LinComb, y: &LinComb, z: &LinComb, t: &mut Tally) -> Result<()> {
    t.record("associativity", axioms::associativity(alg, x, y, z)?);
    if has_points(x) && has_points(y) && has_points(z) {
        t.record("vdash associativity", axioms::vdash_associativity(alg, x, y, z)?);
        let f = [x.clone(), y.clone(), z.clone()];
        t.record("Leibniz l=3 (d)", axioms::leibniz(alg, &f, false)?);
        t.record("Leibniz l=3 (d_h)", axioms::leibniz(alg, &f, true)?);
    }
    Ok(())
}

/// A random homogeneous element: one to three basis elements of one
/// slice with small nonzero coefficients.
fn random_element(alg: &mut Algebra, rng: &mut StdRng, j_max: usize) -> Result<LinComb> {
    loop {
        let j = rng.gen_range(1..=j_max);
        let i = rng.gen_range(0..=2 * j);
        let slice = alg.builder().slice(ComplexVariant::Tss, i, j)?;
        if slice.dim() == 0 {
            continue;
        }
        let mut x = LinComb::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let k = rng.gen_range(0..slice.dim());
            let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
            x.add_scaled(&slice.element(k), &BigInt::from(c));
        }
        if !x.is_zero() {
            return Ok(x);
        }
    }
}

fn hopf_suite(opts: &SuiteOptions) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for &parity in &opts.parities {
        let mut alg = Algebra::new(parity);
        let p3 = small_elements(&mut alg, 3)?;
        let p2 = small_elements(&mut alg, 2)?;
        let mut t = Tally::default();
        for x in &p3 {
            unary_identities(&mut alg, x, 3, &mut t)?;
        }
        for x in &p3 {
            for y in &p3 {
                binary_identities(&mut alg, x, y, &mut t)?;
            }
        }
        for x in &p2 {
            for y in &p2 {
                for z in &p2 {
                    ternary_identities(&mut alg, x, y, z, &mut t)?;
                }
            }
        }
        lines.extend(t.lines(&format!("{parity} exhaustive, factors with <= 3 points")));

        let mut rng = StdRng::seed_from_u64(opts.seed);
        let mut t = Tally::default();
        for _ in 0..opts.random_cases {
            let w = random_element(&mut alg, &mut rng, 4)?;
            let x = random_element(&mut alg, &mut rng, 3)?;
            let y = random_element(&mut alg, &mut rng, 3)?;
            let z = random_element(&mut alg, &mut rng, 2)?;
            unary_identities(&mut alg, &w, 2, &mut t)?;
            binary_identities(&mut alg, &x, &y, &mut t)?;
            ternary_identities(&mut alg, &x, &y, &z, &mut t)?;
        }
        lines.extend(t.lines(&format!("{parity} random, seed {}", opts.seed)));
    }
    Ok(lines)
}

fn iso_suite(opts: &SuiteOptions) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();
    for &parity in &opts.parities {
        let mut alg = Algebra::new(parity);
        for i in 0..=opts.i_max {
            let mut t = Tally::default();
            for j in 0..=2 * i {
                let slice = alg.builder().slice(ComplexVariant::TssH, i, j)?;
                for (k, d) in slice.diagrams.iter().enumerate() {
                    let x = slice.element(k);
                    t.record("I d_h = d I, I^-1 I = id", axioms::iso_chain_map_with_inverse(&mut alg, &x)?);
                    t.record("I unitriangular by top asterisks", axioms::iso_unitriangular(&mut alg, d)?);
                }
            }
            lines.extend(t.lines(&format!("{parity} i={i}")));
        }
        let mut t = Tally::default();
        t.record("I(Z_2) = Z_2 + Z_1 vdash Zhat_1 + Zhat_2", iso_of_z2(&mut alg)?);
        t.record("I^-1(Z_1) = Z_1 - Zhat_1", iso_inv_of_z1(&mut alg)?);
        let p2 = small_elements(&mut alg, 2)?;
        let p3 = small_elements(&mut alg, 3)?;
        for x in &p3 {
            t.record("I respects the coproduct", axioms::iso_comultiplicative(&mut alg, x)?);
            if is_even(&alg, x)? && has_points(x) {
                t.record("I respects divided powers", axioms::iso_respects_divided_powers(&mut alg, x, 2)?);
            }
        }
        for x in &p2 {
            for y in &p2 {
                t.record("I respects the product", axioms::iso_multiplicative(&mut alg, x, y)?);
                if has_points(x) && has_points(y) {
                    t.record("I respects vdash", axioms::iso_respects_vdash(&mut alg, x, y)?);
                }
            }
        }
        lines.extend(t.lines(&format!("{parity} structure")));
    }
    Ok(lines)
}

/// The three terms of `I(Z_2)`: `Z_2`, the one-chord term with one top
/// asterisk on the left point, and `Ẑ_2`.
fn iso_of_z2(alg: &mut Algebra) -> Result<bool> {
    let parity = alg.parity();
    let v = alg.iso_i_of_z(2)?;
    let middle = Diagram::new(2, &[(0, 1)], &[], &[1, 0]);
    let mut expected = z(2, parity).plus(&zhat(2, parity));
    expected.add_scaled(&alg.vdash(&z(1, parity), &zhat(1, parity))?, &BigInt::from(1));
    Ok(v == expected && v.len() == 3 && v.coefficient(&middle).magnitude() == &1u32.into())
}

fn iso_inv_of_z1(alg: &mut Algebra) -> Result<bool> {
    let parity = alg.parity();
    let v = alg.iso_i_inv_of_z(1)?;
    let expected = z(1, parity).sub(&zhat(1, parity));
    let back = alg.iso_i(&v)?;
    Ok(v == expected && back == z(1, parity))
}
