//! Finite formal sums of canonical diagrams with integer coefficients.
//!
//! Every structure constant of the complexes is an integer, so sums are kept
//! over `Z` with arbitrary precision; other rings enter through base change
//! in the homology engine.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::diagram::{Diagram, Parity, SignedDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<Diagram, BigInt>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn unit() -> Self {
        LinComb::from_diagram(Diagram::empty())
    }

    pub fn from_diagram(d: Diagram) -> Self {
        let mut x = LinComb::zero();
        x.add_term(d, BigInt::one());
        x
    }

    pub fn from_signed(s: SignedDiagram) -> Self {
        let mut x = LinComb::zero();
        x.add_term(s.diagram, BigInt::from(s.sign));
        x
    }

    pub fn from_terms<I: IntoIterator<Item = (Diagram, BigInt)>>(terms: I) -> Self {
        let mut x = LinComb::zero();
        for (d, c) in terms {
            x.add_term(d, c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Diagram, &BigInt)> {
        self.terms.iter()
    }

    pub fn diagrams(&self) -> impl Iterator<Item = &Diagram> {
        self.terms.keys()
    }

    pub fn coefficient(&self, d: &Diagram) -> BigInt {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, d: Diagram, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(d) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_signed(&mut self, s: SignedDiagram, c: &BigInt) {
        if s.sign < 0 {
            self.add_term(s.diagram, -c);
        } else {
            self.add_term(s.diagram, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for (d, x) in &other.terms {
            self.add_term(d.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &LinComb) {
        for (d, x) in &other.terms {
            self.add_term(d.clone(), x.clone());
        }
    }

    pub fn scaled(&self, c: &BigInt) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LinComb {
        self.scaled(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(other, &BigInt::from(-1));
        out
    }

    pub fn plus(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Diagram) -> bool) -> LinComb {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| keep(d))
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients reduced into `0..p`, dropping the ones that vanish.
    pub fn reduced_mod(&self, p: u64) -> LinComb {
        let p = BigInt::from(p);
        LinComb {
            terms: self
                .terms
                .iter()
                .filter_map(|(d, c)| {
                    let r = ((c % &p) + &p) % &p;
                    (!r.is_zero()).then(|| (d.clone(), r))
                })
                .collect(),
        }
    }

    /// Common parity of the total degree of all terms.
    pub fn degree_is_odd(&self, parity: Parity) -> Result<Option<bool>> {
        let mut it = self.terms.keys().map(|d| d.degree_is_odd(parity));
        let Some(first) = it.next() else {
            return Ok(None);
        };
        if it.any(|x| x != first) {
            return Err(Error::NonHomogeneous);
        }
        Ok(Some(first))
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn into_terms(self) -> BTreeMap<Diagram, BigInt> {
        self.terms
    }
}

impl fmt::Debug for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})[{d}]")?;
        }
        Ok(())
    }
}

impl FromIterator<(Diagram, BigInt)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (Diagram, BigInt)>>(iter: I) -> Self {
        LinComb::from_terms(iter)
    }
}
