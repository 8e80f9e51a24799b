//! The quantum binomial and Arnold-relation normal forms.
//!
//! The admissible basis consists of forests whose chord heads (larger
//! endpoints) are pairwise distinct. A point heading chords `(a,v)` and
//! `(b,v)` with `a < b` is rewritten through the Arnold relation on the
//! triple `a, v, b`; both replacement diagrams have a smaller head sum.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::diagram::{sort_sign, Diagram, Parity, Token};
use crate::error::{Error, Result};
use crate::linalg::field::rank_over;
use crate::lincomb::LinComb;
use crate::ring::Ring;

/// `binom(k+n, k)` at `q = +1`, or the signed shuffle count at `q = -1`.
pub fn quantum_binomial(k: usize, n: usize, q: i32) -> BigInt {
    if q >= 0 {
        binomial(k + n, k)
    } else if k % 2 == 1 && n % 2 == 1 {
        BigInt::zero()
    } else {
        binomial((k + n) / 2, k / 2)
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    acc
}

pub fn is_admissible(d: &Diagram) -> bool {
    d.is_admissible()
}

/// A point heading two chords together with the two tails, smaller first.
fn double_heads(d: &Diagram) -> Vec<(u8, u8, u8)> {
    let mut by_head: HashMap<u8, Vec<u8>> = HashMap::new();
    for &(a, b) in d.chords() {
        by_head.entry(a.max(b)).or_default().push(a.min(b));
    }
    let mut out = Vec::new();
    for (v, tails) in by_head {
        for x in 0..tails.len() {
            for y in x + 1..tails.len() {
                let (a, b) = (tails[x].min(tails[y]), tails[x].max(tails[y]));
                out.push((v, a, b));
            }
        }
    }
    out.sort_unstable();
    out
}

fn head_sum(d: &Diagram) -> usize {
    d.chords().iter().map(|&(a, b)| a.max(b) as usize).sum()
}

fn with_chords(d: &Diagram, chords: Vec<(u8, u8)>) -> Diagram {
    let mut chords = chords;
    for c in chords.iter_mut() {
        if c.0 > c.1 {
            *c = (c.1, c.0);
        }
    }
    chords.sort_unstable();
    Diagram::from_parts(d.n(), chords, d.bottom_mask(), d.tops().to_vec())
}

/// One Arnold step at head `v` with tails `a < b`: returns the two
/// replacement diagrams and their coefficients, `D = c1 D1 + c2 D2`.
pub(crate) fn arnold_step(d: &Diagram, v: u8, a: u8, b: u8, parity: Parity) -> [(Diagram, i32); 2] {
    let rest_chords: Vec<(u8, u8)> = d
        .chords()
        .iter()
        .copied()
        .filter(|&c| c != (a, v) && c != (b, v))
        .collect();
    let d1 = with_chords(d, rest_chords.iter().copied().chain([(a, b), (b, v)]).collect());
    let d2 = with_chords(d, rest_chords.iter().copied().chain([(a, b), (a, v)]).collect());
    let rest: Vec<Token> = d
        .canonical_tokens()
        .into_iter()
        .filter(|t| *t != Token::Chord(a, v) && *t != Token::Chord(b, v))
        .collect();
    let term = |first: Token, second: Token, flips: usize| -> i32 {
        let mut tokens = Vec::with_capacity(rest.len() + 2);
        tokens.push(first);
        tokens.push(second);
        tokens.extend_from_slice(&rest);
        let s = sort_sign(&tokens, parity);
        if parity == Parity::Odd && flips % 2 == 1 {
            -s
        } else {
            s
        }
    };
    // a_{av} a_{vb} + a_{vb} a_{ba} + a_{ba} a_{av} = 0
    let s0 = term(Token::Chord(a, v), Token::Chord(v, b), 1);
    let s1 = term(Token::Chord(v, b), Token::Chord(b, a), 2);
    let s2 = term(Token::Chord(b, a), Token::Chord(a, v), 1);
    [(d1, -s0 * s1), (d2, -s0 * s2)]
}

/// Memoizing reducer onto the admissible basis for one parity.
#[derive(Debug)]
pub struct ArnoldReducer {
    parity: Parity,
    memo: HashMap<Diagram, LinComb>,
}

impl ArnoldReducer {
    pub fn new(parity: Parity) -> Self {
        ArnoldReducer {
            parity,
            memo: HashMap::new(),
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Normal form of a single canonical diagram.
    pub fn reduce_diagram(&mut self, d: &Diagram) -> Result<LinComb> {
        if d.is_admissible() {
            return Ok(LinComb::from_diagram(d.clone()));
        }
        if let Some(x) = self.memo.get(d) {
            return Ok(x.clone());
        }
        let Some(&(v, a, b)) = double_heads(d).first() else {
            return Err(Error::NonTermination(d.serialize()));
        };
        let before = head_sum(d);
        let mut out = LinComb::zero();
        for (next, c) in arnold_step(d, v, a, b, self.parity) {
            if head_sum(&next) >= before {
                return Err(Error::NonTermination(d.serialize()));
            }
            let reduced = self.reduce_diagram(&next)?;
            out.add_scaled(&reduced, &BigInt::from(c));
        }
        self.memo.insert(d.clone(), out.clone());
        Ok(out)
    }

    pub fn reduce(&mut self, x: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero();
        for (d, c) in x.iter() {
            if d.is_admissible() {
                out.add_term(d.clone(), c.clone());
            } else {
                let r = self.reduce_diagram(d)?;
                out.add_scaled(&r, c);
            }
        }
        Ok(out)
    }
}

/// Rewrites `x` onto admissible diagrams.
pub fn arnold_reduce(x: &LinComb, parity: Parity) -> Result<LinComb> {
    ArnoldReducer::new(parity).reduce(x)
}

/// Reduction by a random rewrite schedule: at every step a random
/// non-admissible term and a random double head are rewritten. Used to
/// test that normal forms do not depend on the order of rewriting.
pub fn arnold_reduce_random<R: Rng>(x: &LinComb, parity: Parity, rng: &mut R) -> Result<LinComb> {
    let mut current = x.clone();
    let bound = x.diagrams().map(head_sum).max().unwrap_or(0) * 64 + 1024;
    let mut steps = 0usize;
    loop {
        let pending: Vec<Diagram> = current.diagrams().filter(|d| !d.is_admissible()).cloned().collect();
        let Some(d) = pending.choose(rng) else {
            return Ok(current);
        };
        steps += 1;
        if steps > bound * (1 + x.len()) * 64 {
            return Err(Error::NonTermination(d.serialize()));
        }
        let choices = double_heads(d);
        let &(v, a, b) = choices.choose(rng).expect("non-admissible diagram has a double head");
        let c = current.coefficient(d);
        current.add_term(d.clone(), -c.clone());
        for (next, s) in arnold_step(d, v, a, b, parity) {
            current.add_term(next, &c * s);
        }
    }
}

/// Dimension of the image of `span(diagrams)` in the quotient of oriented
/// diagrams by chord reversal and every Arnold instance, computed by plain
/// row reduction with no use of the admissible basis.
///
/// Variables are pairs (diagram, orientation mask); bit `k` of the mask
/// reverses the `k`-th chord of the sorted chord list.
pub fn span_rank_oracle(diagrams: &[Diagram], parity: Parity, field: Ring) -> Result<usize> {
    if !field.is_field() {
        return Err(Error::FieldRequired);
    }
    if diagrams.is_empty() {
        return Ok(0);
    }
    // closure under Arnold moves
    let mut closure: BTreeSet<Diagram> = diagrams.iter().map(|d| d.normalized().0).collect();
    let mut frontier: Vec<Diagram> = closure.iter().cloned().collect();
    while let Some(d) = frontier.pop() {
        for inst in arnold_instances(&d) {
            for (chords, _) in inst.terms {
                let e = with_chords(&d, chords);
                if closure.insert(e.clone()) {
                    frontier.push(e);
                }
            }
        }
    }
    let mut index: HashMap<(Diagram, u32), usize> = HashMap::new();
    let mut var = |d: &Diagram, mask: u32| -> usize {
        let next = index.len();
        *index.entry((d.clone(), mask)).or_insert(next)
    };
    let flip_sign = BigInt::from(parity.sign());
    let mut relations: Vec<Vec<(usize, BigInt)>> = Vec::new();
    for d in &closure {
        let c = d.chords().len();
        for mask in 0..1u32 << c {
            let x = var(d, mask);
            for bit in 0..c {
                let y = var(d, mask ^ (1 << bit));
                if x < y {
                    relations.push(sorted_row(vec![(x, BigInt::one()), (y, -flip_sign.clone())]));
                }
            }
        }
        for inst in arnold_instances(d) {
            let mut row = Vec::new();
            for (chords, first_two) in &inst.terms {
                let target = with_chords(d, chords.clone());
                let mut mask = 0u32;
                for (k, &(a, b)) in target.chords().iter().enumerate() {
                    if first_two.contains(&(b, a)) {
                        mask |= 1 << k;
                    }
                }
                let mut tokens: Vec<Token> = first_two.iter().map(|&(a, b)| Token::Chord(a, b)).collect();
                tokens.extend_from_slice(&inst.rest);
                row.push((var(&target, mask), BigInt::from(sort_sign(&tokens, parity))));
            }
            relations.push(sorted_row(row));
        }
    }
    let spanning: Vec<Vec<(usize, BigInt)>> = diagrams
        .iter()
        .map(|d| {
            let (canon, _) = d.normalized();
            let mut mask = 0u32;
            for (k, c) in canon.chords().iter().enumerate() {
                if !d.chords().contains(c) {
                    mask |= 1 << k;
                }
            }
            vec![(var(&canon, mask), BigInt::one())]
        })
        .collect();
    let base = rank_over(field, &relations)?;
    relations.extend(spanning);
    Ok(rank_over(field, &relations)? - base)
}

struct ArnoldInstance {
    /// (full chord list, the two leading oriented chords)
    terms: Vec<(Vec<(u8, u8)>, [(u8, u8); 2])>,
    rest: Vec<Token>,
}

/// All six labelings of every Arnold instance of `d`: triples of points
/// spanned by exactly two chords of `d`.
fn arnold_instances(d: &Diagram) -> Vec<ArnoldInstance> {
    let n = d.n() as u8;
    let has = |x: u8, y: u8| d.chords().contains(&(x.min(y), x.max(y)));
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let present = [(x, y), (y, z), (x, z)].iter().filter(|&&(p, q)| has(p, q)).count();
                if present != 2 {
                    continue;
                }
                let triangle = [(x, y), (y, z), (x, z)];
                let rest_chords: Vec<(u8, u8)> = d
                    .chords()
                    .iter()
                    .copied()
                    .filter(|c| !triangle.contains(c))
                    .collect();
                let rest: Vec<Token> = d
                    .canonical_tokens()
                    .into_iter()
                    .filter(|t| !matches!(t, Token::Chord(p, q) if triangle.contains(&(*p, *q))))
                    .collect();
                for (i, j, k) in [(x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                    let terms = [[(i, j), (j, k)], [(j, k), (k, i)], [(k, i), (i, j)]]
                        .into_iter()
                        .map(|pair| {
                            let mut chords = rest_chords.clone();
                            chords.extend(pair.iter().map(|&(p, q)| (p.min(q), p.max(q))));
                            (chords, pair)
                        })
                        .collect();
                    out.push(ArnoldInstance {
                        terms,
                        rest: rest.clone(),
                    });
                }
            }
        }
    }
    out
}

fn sorted_row(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn chords(n: usize, c: &[(usize, usize)]) -> Diagram {
        Diagram::new(n, c, &[], &[])
    }

    #[test]
    fn quantum_binomial_values() {
        assert_eq!(quantum_binomial(1, 1, -1), BigInt::zero());
        assert_eq!(quantum_binomial(2, 2, -1), BigInt::from(2));
        assert_eq!(quantum_binomial(2, 1, 1), BigInt::from(3));
        assert_eq!(quantum_binomial(0, 5, -1), BigInt::one());
        assert_eq!(quantum_binomial(3, 2, -1), BigInt::from(2));
    }

    /// Signed shuffle count of `k` odd tokens past `n` odd tokens.
    fn shuffle_oracle(k: usize, n: usize, q: i32) -> i64 {
        let mut total = 0i64;
        for mask in 0u32..1 << (k + n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            // inversions: pairs (second-block before first-block element)
            let mut inv = 0;
            let mut seen_second = 0;
            for pos in 0..k + n {
                if mask >> pos & 1 == 1 {
                    inv += seen_second;
                } else {
                    seen_second += 1;
                }
            }
            total += if q < 0 && inv % 2 == 1 { -1 } else { 1 };
        }
        total
    }

    #[test]
    fn quantum_binomial_counts_signed_shuffles() {
        for k in 0..6 {
            for n in 0..6 {
                for q in [1, -1] {
                    assert_eq!(quantum_binomial(k, n, q), BigInt::from(shuffle_oracle(k, n, q)), "{k} {n} {q}");
                }
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(!is_admissible(&chords(3, &[(0, 2), (1, 2)])));
        assert!(is_admissible(&chords(3, &[(0, 1), (1, 2)])));
        let star: Vec<(usize, usize)> = (1..5).map(|r| (0, r)).collect();
        assert!(is_admissible(&chords(5, &star)));
    }

    #[test]
    fn admissible_input_is_unchanged() {
        let d = chords(4, &[(0, 1), (0, 3), (1, 2)]);
        let x = LinComb::from_diagram(d);
        for parity in Parity::BOTH {
            assert_eq!(arnold_reduce(&x, parity).unwrap(), x);
        }
    }

    #[test]
    fn single_rewrite() {
        let d = chords(3, &[(0, 2), (1, 2)]);
        for parity in Parity::BOTH {
            let r = arnold_reduce(&LinComb::from_diagram(d.clone()), parity).unwrap();
            let mut support: Vec<_> = r.diagrams().cloned().collect();
            support.sort();
            assert_eq!(support, vec![chords(3, &[(0, 1), (0, 2)]), chords(3, &[(0, 1), (1, 2)])]);
        }
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(span_rank_oracle(&[], Parity::Odd, Ring::Rationals).unwrap(), 0);
        assert_eq!(
            span_rank_oracle(&[chords(2, &[(0, 1)])], Parity::Odd, Ring::Rationals).unwrap(),
            1
        );
        let all = [
            chords(3, &[(0, 1), (1, 2)]),
            chords(3, &[(0, 1), (0, 2)]),
            chords(3, &[(0, 2), (1, 2)]),
        ];
        for parity in Parity::BOTH {
            assert_eq!(span_rank_oracle(&all, parity, Ring::Rationals).unwrap(), 2);
            assert_eq!(span_rank_oracle(&all[..1], parity, Ring::Rationals).unwrap(), 1);
        }
        assert_eq!(
            span_rank_oracle(&all, Parity::Odd, Ring::Integers),
            Err(Error::FieldRequired)
        );
    }

    #[test]
    fn random_schedules_agree_on_a_star() {
        // every chord heads at the last point: maximal rewriting
        let d = chords(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]);
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for parity in Parity::BOTH {
            let x = LinComb::from_diagram(d.clone());
            let want = arnold_reduce(&x, parity).unwrap();
            for _ in 0..20 {
                assert_eq!(arnold_reduce_random(&x, parity, &mut rng).unwrap(), want);
            }
        }
    }
}
