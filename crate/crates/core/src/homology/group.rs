//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::snf::smith_normal_form;
use crate::linalg::IntMatrix;

/// `Z^free_rank ⊕ Z/torsion_1 ⊕ …` with `torsion_1 | torsion_2 | …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free_rank: usize,
    #[serde(with = "decimal_list")]
    pub torsion: Vec<BigInt>,
}

mod decimal_list {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|x| x.parse().map_err(D::Error::custom))
            .collect()
    }
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z^free_rank` plus cyclic groups of the given orders, renormalized
    /// to invariant factors.
    pub fn from_cyclic(free_rank: usize, orders: &[BigInt]) -> Self {
        let extra_free = orders.iter().filter(|m| m.is_zero()).count();
        let orders: Vec<BigInt> = orders.iter().filter(|m| !m.is_one() && !m.is_zero()).cloned().collect();
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (k, x) in orders.iter().enumerate() {
            m.columns[k].push((k, x.clone()));
        }
        let snf = smith_normal_form(&m).expect("diagonal Smith form");
        HomologyGroup {
            free_rank: free_rank + extra_free,
            torsion: snf.torsion(),
        }
    }

    pub fn cyclic(m: u64) -> Self {
        Self::from_cyclic(0, &[BigInt::from(m)])
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Whether the group is cyclic (including zero).
    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.torsion.len() <= 1
    }

    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let t: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        Self::from_cyclic(self.free_rank + other.free_rank, &t)
    }

    pub fn tensor(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut t = Vec::new();
        for _ in 0..other.free_rank {
            t.extend(self.torsion.iter().cloned());
        }
        for _ in 0..self.free_rank {
            t.extend(other.torsion.iter().cloned());
        }
        for a in &self.torsion {
            for b in &other.torsion {
                t.push(a.gcd(b));
            }
        }
        Self::from_cyclic(self.free_rank * other.free_rank, &t)
    }

    pub fn tor(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut t = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                t.push(a.gcd(b));
            }
        }
        Self::from_cyclic(0, &t)
    }

    /// Dimension of `H ⊗ F_p ⊕ Tor(H', F_p)` pieces: the number of
    /// factors divisible by `p`, plus the free rank.
    pub fn mod_p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.free_rank + self.torsion.iter().filter(|t| t.is_multiple_of(&p)).count()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(free: usize, t: &[u64]) -> HomologyGroup {
        HomologyGroup::from_cyclic(free, &t.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn normal_form() {
        assert_eq!(g(0, &[2, 3]), g(0, &[6]));
        assert_eq!(g(0, &[4, 6]).torsion, vec![BigInt::from(2), BigInt::from(12)]);
        assert_eq!(g(1, &[1]).to_string(), "Z");
        assert_eq!(g(2, &[2]).to_string(), "Z^2 + Z/2");
    }

    #[test]
    fn tensor_and_tor() {
        assert_eq!(g(1, &[]).tensor(&g(0, &[2])), g(0, &[2]));
        assert_eq!(g(0, &[4]).tensor(&g(0, &[6])), g(0, &[2]));
        assert_eq!(g(0, &[4]).tor(&g(0, &[6])), g(0, &[2]));
        assert!(g(3, &[]).tor(&g(0, &[5])).is_zero());
        assert_eq!(g(1, &[2]).mod_p_rank(2), 2);
        assert_eq!(g(1, &[2]).mod_p_rank(3), 1);
    }
}
