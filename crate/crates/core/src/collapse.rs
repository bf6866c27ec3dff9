//! Vanishing predicates for differentials and assembly reports for low
//! homotopy groups of the tower.
//!
//! The oracle only ever certifies vanishing. A verdict of `Inapplicable`
//! means the rule says nothing, not that the differential is nonzero.
//!
//! The vanishing hypothesis and the collapse region are stated with the
//! constant `d-2`; a looser reading uses `d-1` in the same places.
//! [`ConstantVariant`] selects between them and every result records which
//! one produced it.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::abelian::group::require_prime;
use crate::abelian::{localize, AbelianGroup};
use crate::diagrams::{compute_ai, diagram_degree_bound};
use crate::error::{GwError, Result};
use crate::homology::thm_d_allowed;
use crate::homotopy::{cyclotomic_weight, e1_rational_dim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    ThmB,
    ThmD,
    WeightParity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Vanishes,
    Inapplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Vanishes => "vanishes",
            Verdict::Inapplicable => "inapplicable",
        })
    }
}

/// Which constant multiplies `s-1` in the bound and the modulus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantVariant {
    /// `d-2`, the proven hypothesis.
    #[default]
    Conservative,
    /// `d-1`, the looser reading.
    Corollary,
}

impl ConstantVariant {
    pub fn constant(self, d: u32) -> u64 {
        match self {
            ConstantVariant::Conservative => u64::from(d) - 2,
            ConstantVariant::Corollary => u64::from(d) - 1,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            ConstantVariant::Conservative => "(d-2)",
            ConstantVariant::Corollary => "(d-1)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub rule: Rule,
    pub p: u64,
    pub d: u32,
    pub r: u32,
    pub s: u32,
    pub t: u64,
    pub variant: ConstantVariant,
    pub verdict: Verdict,
}

impl VanishingCertificate {
    /// Re-evaluates the rule from the stored parameters.
    pub fn recheck(&self) -> Result<bool> {
        let again = match self.rule {
            Rule::ThmB => thm_b_vanishes_with(self.variant, self.p, self.d, self.r, self.s, self.t)?,
            Rule::ThmD => thm_d_certificate(self.p, self.d, self.r)?,
            Rule::WeightParity => return Ok(true),
        };
        Ok(again.verdict == self.verdict)
    }
}

fn check(p: u64, d: u32) -> Result<()> {
    require_prime(p)?;
    if d < 3 {
        return Err(GwError::DimensionTooSmall(d));
    }
    Ok(())
}

/// `d_r` out of `(-s,t)` vanishes `p`-locally when `r-1` is not a multiple of
/// `(p-1)(d-2)` and `t < 2p-2+(s-1)(d-2)`.
pub fn thm_b_vanishes(p: u64, d: u32, r: u32, s: u32, t: u64) -> Result<VanishingCertificate> {
    thm_b_vanishes_with(ConstantVariant::Conservative, p, d, r, s, t)
}

pub fn thm_b_vanishes_with(
    variant: ConstantVariant,
    p: u64,
    d: u32,
    r: u32,
    s: u32,
    t: u64,
) -> Result<VanishingCertificate> {
    check(p, d)?;
    if r == 0 {
        return Err(crate::error::out_of_range("r", 0, "r >= 1"));
    }
    let c = variant.constant(d);
    let modulus = (p - 1) * c;
    let off_multiple = u64::from(r - 1) % modulus != 0;
    let in_range = u128::from(t) < u128::from(2 * p - 2) + u128::from(s.saturating_sub(1)) * u128::from(c);
    Ok(VanishingCertificate {
        rule: Rule::ThmB,
        p,
        d,
        r,
        s,
        t,
        variant,
        verdict: if off_multiple && in_range { Verdict::Vanishes } else { Verdict::Inapplicable },
    })
}

/// Homology differentials: `d_r` vanishes over `𝔽ₚ` unless `r ≡ 1 mod (d-1)(p-1)`.
pub fn thm_d_certificate(p: u64, d: u32, r: u32) -> Result<VanishingCertificate> {
    let allowed = thm_d_allowed(p, d, r)?;
    Ok(VanishingCertificate {
        rule: Rule::ThmD,
        p,
        d,
        r,
        s: 0,
        t: 0,
        variant: ConstantVariant::Conservative,
        verdict: if allowed { Verdict::Inapplicable } else { Verdict::Vanishes },
    })
}

/// An equivariant map between cyclotomic modules of weights `m` and `n`
/// must vanish when `m-n` is not a multiple of `p-1`.
pub fn weight_obstruction(m: i64, n: i64, p: u64) -> Result<bool> {
    require_prime(p)?;
    Ok((i128::from(m) - i128::from(n)).rem_euclid(i128::from(p) - 1) != 0)
}

/// Extensions among cyclotomic layers split when the weights spread by less than `p-1`.
pub fn extensions_split(weights: &[i64], p: u64) -> Result<bool> {
    require_prime(p)?;
    let (Some(lo), Some(hi)) = (weights.iter().min(), weights.iter().max()) else {
        return Err(GwError::OutOfRange {
            what: "weights",
            value: 0,
            bound: "at least one weight".into(),
        });
    };
    Ok(i128::from(*hi) - i128::from(*lo) < i128::from(p) - 1)
}

/// Where the truncated tower's spectral sequence collapses at `E²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseRegion {
    pub p: u64,
    pub d: u32,
    pub n: u32,
    pub variant: ConstantVariant,
    pub valid: bool,
    /// `(p-1)(d-2)+3`
    pub n_bound: u64,
    pub violated: Option<String>,
    /// The region is `t < offset + slope·(s-1)`.
    pub offset: u64,
    pub slope: u64,
    pub predicate: String,
}

impl CollapseRegion {
    pub fn contains(&self, s: u32, t: u64) -> bool {
        self.valid && u128::from(t) < u128::from(self.offset) + u128::from(self.slope) * u128::from(s.saturating_sub(1))
    }
}

pub fn collapse_region(p: u64, d: u32, n: u32) -> Result<CollapseRegion> {
    collapse_region_with(ConstantVariant::Conservative, p, d, n)
}

pub fn collapse_region_with(variant: ConstantVariant, p: u64, d: u32, n: u32) -> Result<CollapseRegion> {
    check(p, d)?;
    let n_bound = (p - 1) * (u64::from(d) - 2) + 3;
    let valid = u64::from(n) <= n_bound;
    let slope = variant.constant(d);
    let offset = 2 * p - 2;
    Ok(CollapseRegion {
        p,
        d,
        n,
        variant,
        valid,
        n_bound,
        violated: (!valid).then(|| format!("n ≤ (p-1)(d-2)+3 = {n_bound}")),
        offset,
        slope,
        predicate: format!("t < {offset} + {slope}·(s-1)   [t < 2p-2+(s-1){}]", variant.symbol()),
    })
}

/// One bidegree `(-s,t)` of an assembly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub s: u32,
    pub t: u64,
    pub label: String,
    /// Rational dimension of `E¹` at this spot when known.
    #[serde(with = "crate::serde_num::option")]
    pub e1_rational_dim: Option<BigUint>,
    /// The `p`-local group, when this crate can compute it.
    pub group: Option<AbelianGroup>,
    /// What is claimed when the group is not computed.
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportKind {
    ThmC,
    ThmA,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblyReport {
    pub kind: ReportKind,
    pub p: u64,
    pub d: u32,
    pub n: u32,
    pub i: i64,
    pub variant: ConstantVariant,
    pub valid: bool,
    pub violated: Option<String>,
    pub contributions: Vec<Contribution>,
    pub empty: bool,
}

/// `π_i T_n ⊗ ℤ_(p) ≅ ⊕_{t-s=i} E²_{-s,t}` for `n ≤ (p-1)(d-2)+3` and
/// `i ≤ 2p-6+2(d-2)`.
///
/// On the antidiagonal of `d = 3` the groups are `𝒜ᴵ_{s-1}` localized at `p`;
/// elsewhere only the bound `rational dim ≤ E¹ dim` is reported.
pub fn thm_c_assembly(p: u64, d: u32, n: u32, i: i64) -> Result<AssemblyReport> {
    check(p, d)?;
    let c = i128::from(d) - 2;
    let n_bound = i128::from(p - 1) * c + 3;
    let i_bound = 2 * i128::from(p) - 6 + 2 * c;
    let mut violated = Vec::new();
    if i128::from(n) > n_bound {
        violated.push(format!("n ≤ (p-1)(d-2)+3 = {n_bound}"));
    }
    if i128::from(i) > i_bound {
        violated.push(format!("i ≤ 2p-6+2(d-2) = {i_bound}"));
    }
    let valid = violated.is_empty();
    let mut contributions = Vec::new();
    if valid {
        let ai_bound = diagram_degree_bound()?;
        for s in 3..=n {
            let t = i64::from(s) + i;
            if t < 0 {
                continue;
            }
            let t = t as u64;
            let dim = e1_rational_dim(d, s, t)?;
            if dim.is_zero() {
                continue;
            }
            debug_assert!(cyclotomic_weight(d, t).is_some());
            let (group, note) = if d == 3 && i == 0 && s - 1 <= ai_bound {
                (Some(localize(&compute_ai(s - 1)?, p)?), None)
            } else {
                (None, Some("rational dim ≤ E¹ dim".to_string()))
            };
            contributions.push(Contribution {
                s,
                t,
                label: format!("E²_{{-{s},{t}}}"),
                e1_rational_dim: Some(dim),
                group,
                note,
            });
        }
    }
    Ok(AssemblyReport {
        kind: ReportKind::ThmC,
        p,
        d,
        n,
        i,
        variant: ConstantVariant::Conservative,
        valid,
        violated: (!violated.is_empty()).then(|| violated.join("; ")),
        empty: contributions.is_empty(),
        contributions,
    })
}

/// `π₀ T_{n+1} ⊗ ℤ_(p) ≅ ⊕_{s≤n} 𝒜ᴵ_s ⊗ ℤ_(p)` for `n ≤ p+1` (knots in ℝ³).
///
/// Summands beyond the relation data bound are listed without a group.
pub fn thm_a_report(p: u64, n: u32) -> Result<AssemblyReport> {
    require_prime(p)?;
    let valid = u64::from(n) <= p + 1;
    let mut contributions = Vec::new();
    if valid {
        let ai_bound = diagram_degree_bound()?;
        for s in 1..=n {
            let group = if s <= ai_bound { Some(localize(&compute_ai(s)?, p)?) } else { None };
            contributions.push(Contribution {
                s: s + 1,
                t: u64::from(s) + 1,
                label: format!("𝒜ᴵ_{s}"),
                e1_rational_dim: None,
                note: group.is_none().then(|| format!("𝒜ᴵ_{s} ⊗ ℤ_({p}), beyond the relation data")),
                group,
            });
        }
    }
    Ok(AssemblyReport {
        kind: ReportKind::ThmA,
        p,
        d: 3,
        n,
        i: 0,
        variant: ConstantVariant::Conservative,
        valid,
        violated: (!valid).then(|| format!("n ≤ p+1 = {}", p + 1)),
        empty: contributions.is_empty(),
        contributions,
    })
}
