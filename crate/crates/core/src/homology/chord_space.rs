//! Brute-force chord diagram spaces modulo 4T (and 1T), independent of the
//! complexes. Diagrams are words in which each chord label occurs twice.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::field::rank_over;
use crate::ring::Ring;

pub const DEFAULT_ORDER_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChordRelations {
    FourTerm,
    FourTermOneTerm,
}

/// Relabels chords in order of first appearance.
fn normalize(word: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 64];
    let mut next = 0u8;
    word.iter()
        .map(|&c| {
            if map[c as usize] == u8::MAX {
                map[c as usize] = next;
                next += 1;
            }
            map[c as usize]
        })
        .collect()
}

/// All chord diagrams with `n` chords on the line.
pub fn chord_diagrams(n: usize) -> Vec<Vec<u8>> {
    fn go(word: &mut Vec<Option<u8>>, next: u8, out: &mut Vec<Vec<u8>>) {
        let Some(first) = word.iter().position(Option::is_none) else {
            out.push(word.iter().map(|x| x.expect("filled")).collect());
            return;
        };
        word[first] = Some(next);
        for k in first + 1..word.len() {
            if word[k].is_none() {
                word[k] = Some(next);
                go(word, next + 1, out);
                word[k] = None;
            }
        }
        word[first] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; 2 * n], 0, &mut out);
    out
}

/// A chord crossing no other chord.
fn has_isolated_chord(word: &[u8]) -> bool {
    let n = word.len() / 2;
    (0..n as u8).any(|c| {
        let a = word.iter().position(|&x| x == c).expect("chord end");
        let b = word.iter().rposition(|&x| x == c).expect("chord end");
        word[a + 1..b].iter().all(|x| word[a + 1..b].iter().filter(|&y| y == x).count() == 2)
    })
}

/// `pR - pL + qR - qL`: the end `e` of a chord sliding around both ends
/// `p`, `q` of another chord.
fn four_term(word: &[u8], p: usize) -> Option<[(Vec<u8>, i32); 4]> {
    let e = p + 1;
    let (c, m) = (word[p], word[e]);
    if c == m {
        return None;
    }
    let q = (0..word.len()).find(|&k| k != p && word[k] == c)?;
    let mut rest = word.to_vec();
    rest.remove(e);
    let q = if q > e { q - 1 } else { q };
    let insert = |at: usize| {
        let mut w = rest.clone();
        w.insert(at, m);
        normalize(&w)
    };
    Some([(insert(p + 1), 1), (insert(p), -1), (insert(q + 1), 1), (insert(q), -1)])
}

/// Dimensions of the chord diagram spaces of orders `0..=order_max`.
pub fn chord_space_dims(order_max: usize, relations: ChordRelations, field: Ring) -> Result<Vec<usize>> {
    chord_space_dims_capped(order_max, relations, field, DEFAULT_ORDER_CAP)
}

pub fn chord_space_dims_capped(order_max: usize, relations: ChordRelations, field: Ring, cap: usize) -> Result<Vec<usize>> {
    if !field.is_field() {
        return Err(Error::FieldRequired);
    }
    if order_max > cap {
        return Err(Error::ResourceLimit(format!("chord order {order_max} exceeds the cap {cap}")));
    }
    let mut dims = Vec::with_capacity(order_max + 1);
    for n in 0..=order_max {
        let diagrams = chord_diagrams(n);
        let index: HashMap<&[u8], usize> = diagrams.iter().enumerate().map(|(k, d)| (d.as_slice(), k)).collect();
        let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
        for d in &diagrams {
            for p in 0..d.len().saturating_sub(1) {
                if let Some(terms) = four_term(d, p) {
                    let mut row: HashMap<usize, i64> = HashMap::new();
                    for (w, s) in terms {
                        *row.entry(index[w.as_slice()]).or_default() += s as i64;
                    }
                    let mut row: Vec<(usize, BigInt)> =
                        row.into_iter().filter(|e| e.1 != 0).map(|(k, v)| (k, BigInt::from(v))).collect();
                    row.sort_by_key(|e| e.0);
                    if !row.is_empty() {
                        rows.push(row);
                    }
                }
            }
            if relations == ChordRelations::FourTermOneTerm && has_isolated_chord(d) {
                rows.push(vec![(index[d.as_slice()], BigInt::from(1))]);
            }
        }
        dims.push(diagrams.len() - rank_over(field, &rows)?);
    }
    Ok(dims)
}
