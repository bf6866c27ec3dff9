//! Bigraded pages and their JSON form, shared by both spectral sequences.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::group::{is_prime, AbelianGroup};
use crate::error::{GwError, Result};

/// Coefficient ring of a page.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Z,
    Q,
    Fp(u64),
    /// integers localized at a prime
    Zp(u64),
}

impl Ring {
    pub fn is_field(&self) -> bool {
        matches!(self, Ring::Q | Ring::Fp(_))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Ring::Fp(p) | Ring::Zp(p) => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z => write!(f, "Z"),
            Ring::Q => write!(f, "Q"),
            Ring::Fp(p) => write!(f, "Fp:{p}"),
            Ring::Zp(p) => write!(f, "Z(p):{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = GwError;

    fn from_str(s: &str) -> Result<Ring> {
        let prime = |t: &str| -> Result<u64> {
            let p: u64 = t
                .trim()
                .parse()
                .map_err(|_| GwError::Parse(format!("bad prime in ring `{s}`")))?;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(GwError::NotPrime(p))
            }
        };
        match s.trim() {
            "Z" => Ok(Ring::Z),
            "Q" => Ok(Ring::Q),
            other => {
                if let Some(rest) = other.strip_prefix("Fp:") {
                    Ok(Ring::Fp(prime(rest)?))
                } else if let Some(rest) = other.strip_prefix("Z(p):") {
                    Ok(Ring::Zp(prime(rest)?))
                } else if let Some(rest) = other.strip_prefix('F') {
                    // short form F3
                    Ok(Ring::Fp(prime(rest)?))
                } else {
                    Err(GwError::Parse(format!("unknown ring `{s}` (expected Z, Q, Fp:P)")))
                }
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Ring, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One cell of a page. `rank` is the free rank (or the dimension over a field).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub s: u32,
    pub t: u32,
    #[serde(with = "crate::serde_num::one")]
    pub rank: BigUint,
    #[serde(with = "crate::serde_num::list")]
    pub torsion: Vec<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub torsion_free: Option<bool>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub edge_incomplete: bool,
}

impl PageEntry {
    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            free_rank: crate::abelian::group::small(&self.rank).expect("rank fits in memory") as usize,
            torsion: self.torsion.clone(),
        }
    }
}

/// Rank of a computed differential on some page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRecord {
    pub r: u32,
    pub from: [u32; 2],
    pub to: [u32; 2],
    pub rank: u64,
}

/// `E^r` on a finite region, indexed by `(s, t)` standing for bidegree `(-s, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedPage {
    pub ring: Ring,
    pub page: u32,
    pub d: u32,
    pub s_max: u32,
    pub t_max: u32,
    pub entries: Vec<PageEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub differentials: Option<Vec<DifferentialRecord>>,
}

impl BigradedPage {
    /// All-zero page on `0 ≤ s ≤ s_max`, `0 ≤ t ≤ t_max`.
    pub fn zero(ring: Ring, page: u32, d: u32, s_max: u32, t_max: u32) -> Self {
        let mut entries = Vec::new();
        for s in 0..=s_max {
            for t in 0..=t_max {
                entries.push(PageEntry {
                    s,
                    t,
                    rank: BigUint::zero(),
                    torsion: Vec::new(),
                    torsion_free: None,
                    edge_incomplete: false,
                });
            }
        }
        BigradedPage {
            ring,
            page,
            d,
            s_max,
            t_max,
            entries,
            differentials: None,
        }
    }

    fn index(&self, s: u32, t: u32) -> Option<usize> {
        if s > self.s_max || t > self.t_max {
            return None;
        }
        Some((s * (self.t_max + 1) + t) as usize)
    }

    pub fn entry(&self, s: u32, t: u32) -> Option<&PageEntry> {
        self.index(s, t).map(|i| &self.entries[i])
    }

    pub fn entry_mut(&mut self, s: u32, t: u32) -> Option<&mut PageEntry> {
        self.index(s, t).map(move |i| &mut self.entries[i])
    }

    /// Rank at `(s, t)`, zero outside the region.
    pub fn rank(&self, s: u32, t: u32) -> BigUint {
        self.entry(s, t).map(|e| e.rank.clone()).unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.rank.is_zero() && e.torsion.is_empty())
    }

    /// Nonzero entries keyed by `(s, t)`.
    pub fn support(&self) -> BTreeMap<(u32, u32), BigUint> {
        self.entries
            .iter()
            .filter(|e| !e.rank.is_zero())
            .map(|e| ((e.s, e.t), e.rank.clone()))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("page serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| GwError::Parse(e.to_string()))
    }

    /// Aligned text table: one row per nonzero or edge-incomplete entry, every
    /// other cell in the region being zero.
    pub fn to_table(&self) -> String {
        let mut rows = vec![[
            "s".to_string(),
            "t".to_string(),
            "rank".to_string(),
            "torsion".to_string(),
            "flags".to_string(),
        ]];
        for e in &self.entries {
            if e.rank.is_zero() && e.torsion.is_empty() && !e.edge_incomplete {
                continue;
            }
            let mut flags = Vec::new();
            if e.torsion_free == Some(true) {
                flags.push("torsion-free");
            }
            if e.edge_incomplete {
                flags.push("edge-incomplete");
            }
            let tor: Vec<String> = e.torsion.iter().map(|x| x.to_string()).collect();
            rows.push([
                e.s.to_string(),
                e.t.to_string(),
                e.rank.to_string(),
                format!("[{}]", tor.join(",")),
                flags.join(","),
            ]);
        }
        let mut widths = [0usize; 5];
        for r in &rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = format!(
            "# ring {} page {} d {} region s ≤ {} t ≤ {}\n",
            self.ring, self.page, self.d, self.s_max, self.t_max
        );
        for r in &rows {
            let line: Vec<String> = r
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
