//! Tables of homology groups and their JSON/CSV forms.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::chain::HomologyValue;
use super::group::HomologyGroup;
use crate::complex::ComplexVariant;
use crate::diagram::Parity;
use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub complex: ComplexVariant,
    pub parity: Parity,
    pub i: usize,
    pub j: usize,
    pub ring: Ring,
    pub value: HomologyValue,
    /// Whether `Ẑ_i` is a nonzero class; set on `(i, i+1)` entries where
    /// it is a cycle.
    pub zhat_nonzero: Option<bool>,
}

impl HomologyEntry {
    fn free_rank(&self) -> usize {
        self.value.rank()
    }
}

fn number(x: &BigInt) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

fn parse_number(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_u64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("bad torsion entry {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad torsion entry {s}"))),
        _ => Err(Error::Parse("bad torsion entry".into())),
    }
}

/// Rows keyed by `(complex, parity, i, j, ring)`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomologyTable {
    pub entries: Vec<HomologyEntry>,
}

impl HomologyTable {
    pub fn new(mut entries: Vec<HomologyEntry>) -> Self {
        entries.sort_by_key(|e| (e.complex, e.parity, e.i, e.j, e.ring));
        HomologyTable { entries }
    }

    pub fn get(&self, complex: ComplexVariant, parity: Parity, i: usize, j: usize, ring: Ring) -> Option<&HomologyEntry> {
        self.entries
            .iter()
            .find(|e| (e.complex, e.parity, e.i, e.j, e.ring) == (complex, parity, i, j, ring))
    }

    pub fn to_json_value(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    let mut m = Map::new();
                    m.insert("complex".into(), json!(e.complex.name()));
                    m.insert("parity".into(), json!(e.parity.name()));
                    m.insert("i".into(), json!(e.i));
                    m.insert("j".into(), json!(e.j));
                    m.insert("ring".into(), json!(e.ring.to_string()));
                    m.insert("free_rank".into(), json!(e.free_rank()));
                    m.insert("torsion".into(), Value::Array(e.value.torsion().iter().map(number).collect()));
                    if let Some(z) = e.zhat_nonzero {
                        m.insert("zhat_nonzero".into(), json!(z));
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("json");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = v.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
        let mut entries = Vec::with_capacity(rows.len());
        for r in rows {
            let field = |k: &str| r.get(k).ok_or_else(|| Error::Parse(format!("missing `{k}`")));
            let text = |k: &str| -> Result<String> {
                field(k)?
                    .as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Parse(format!("`{k}` must be a string")))
            };
            let int = |k: &str| -> Result<usize> {
                field(k)?
                    .as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("`{k}` must be an integer")))
            };
            let ring: Ring = text("ring")?.parse()?;
            let torsion = field("torsion")?
                .as_array()
                .ok_or_else(|| Error::Parse("`torsion` must be an array".into()))?
                .iter()
                .map(parse_number)
                .collect::<Result<Vec<_>>>()?;
            let free_rank = int("free_rank")?;
            let value = match ring {
                Ring::Integers => HomologyValue::Group(HomologyGroup { free_rank, torsion }),
                _ => HomologyValue::Dimension(free_rank),
            };
            entries.push(HomologyEntry {
                complex: text("complex")?.parse()?,
                parity: text("parity")?.parse()?,
                i: int("i")?,
                j: int("j")?,
                ring,
                value,
                zhat_nonzero: r.get("zhat_nonzero").and_then(Value::as_bool),
            });
        }
        Ok(HomologyTable::new(entries))
    }

    /// Same columns as the JSON form; torsion factors joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("complex,parity,i,j,ring,free_rank,torsion,zhat_nonzero\n");
        for e in &self.entries {
            let torsion: Vec<String> = e.value.torsion().iter().map(ToString::to_string).collect();
            let zhat = e.zhat_nonzero.map(|z| z.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                e.complex,
                e.parity,
                e.i,
                e.j,
                e.ring,
                e.free_rank(),
                torsion.join(";"),
                zhat
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> HomologyTable {
        HomologyTable::new(vec![
            HomologyEntry {
                complex: ComplexVariant::T,
                parity: Parity::Odd,
                i: 4,
                j: 5,
                ring: Ring::Integers,
                value: HomologyValue::Group(HomologyGroup::cyclic(2)),
                zhat_nonzero: Some(true),
            },
            HomologyEntry {
                complex: ComplexVariant::T,
                parity: Parity::Odd,
                i: 1,
                j: 1,
                ring: Ring::PrimeField(3),
                value: HomologyValue::Dimension(0),
                zhat_nonzero: None,
            },
        ])
    }

    #[test]
    fn json_schema_and_round_trip() {
        let t = sample();
        let v = t.to_json_value();
        assert_eq!(
            v[1],
            json!({"complex":"T","parity":"odd","i":4,"j":5,"ring":"Z","free_rank":0,"torsion":[2],"zhat_nonzero":true})
        );
        assert_eq!(HomologyTable::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn csv_rows() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "complex,parity,i,j,ring,free_rank,torsion,zhat_nonzero");
        assert_eq!(lines[2], "T,odd,4,5,Z,0,2,true");
        assert_eq!(lines[1], "T,odd,1,1,Fp:3,0,,");
    }
}
