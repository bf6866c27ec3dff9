//! Rational E¹ of the homotopy spectral sequence of the embedding tower of
//! long knots in ℝᵈ, cyclotomic weights and the p-torsion-free range.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use crate::abelian::group::require_prime;
use crate::error::{out_of_range, GwError, Result};
use crate::lie::full_support_count;
use crate::page::{BigradedPage, PageEntry, Ring};

/// Which tower the columns are taken from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tower {
    /// layers vanish for `s ≤ 2`
    #[default]
    Standard,
    /// the tower of the framed variant; the `s = 2` column is populated
    Reduced,
}

fn check_d(d: u32) -> Result<()> {
    if d < 3 {
        Err(GwError::DimensionTooSmall(d))
    } else {
        Ok(())
    }
}

/// `n` with `t = n(d-2)+1`, if any.
pub fn cyclotomic_weight(d: u32, t: u64) -> Option<u64> {
    let c = u64::from(d).checked_sub(2).filter(|c| *c > 0)?;
    if t >= 1 && (t - 1).is_multiple_of(c) {
        Some((t - 1) / c)
    } else {
        None
    }
}

/// Rational dimension of `E¹_{-s,t}` for the standard tower.
pub fn e1_rational_dim(d: u32, s: u32, t: u64) -> Result<BigUint> {
    e1_rational_dim_in(Tower::Standard, d, s, t)
}

/// Rational dimension of `E¹_{-s,t}`.
///
/// The layer is the total fiber of the cube of wedges `∨_{s-1} S^{d-1}`; its
/// rational homotopy comes from Hilton-Milnor factors indexed by words using
/// every letter. A word of length `n` gives `S^m`, `m = n(d-2)+1`, which
/// contributes in degree `m` and, when `m` is even, in degree `2m-1`.
pub fn e1_rational_dim_in(tower: Tower, d: u32, s: u32, t: u64) -> Result<BigUint> {
    check_d(d)?;
    let min_s = match tower {
        Tower::Standard => 3,
        Tower::Reduced => 2,
    };
    if s < min_s {
        return Ok(BigUint::zero());
    }
    let letters = u64::from(s - 1);
    let n = match cyclotomic_weight(d, t) {
        Some(n) if n >= letters => n,
        _ => return Ok(BigUint::zero()),
    };
    let c = u64::from(d) - 2;
    let mut dim = full_support_count(letters, n);
    if n % 2 == 0 {
        let l = n / 2;
        let m = l * c + 1;
        if m % 2 == 0 {
            dim += full_support_count(letters, l);
        }
    }
    Ok(dim)
}

/// The rational page on `0 ≤ s ≤ s_max`, `0 ≤ t ≤ t_max`.
pub fn e1_rational_page(d: u32, s_max: u32, t_max: u32) -> Result<BigradedPage> {
    e1_rational_page_in(Tower::Standard, d, s_max, t_max)
}

pub fn e1_rational_page_in(tower: Tower, d: u32, s_max: u32, t_max: u32) -> Result<BigradedPage> {
    check_d(d)?;
    let mut page = BigradedPage::zero(Ring::Q, 1, d, s_max, t_max);
    let ranks: Vec<BigUint> = page
        .entries
        .par_iter()
        .map(|e| e1_rational_dim_in(tower, d, e.s, u64::from(e.t)))
        .collect::<Result<_>>()?;
    for (e, r) in page.entries.iter_mut().zip(ranks) {
        e.rank = r;
    }
    Ok(page)
}

/// `N = (s-1)(d-2)+2p-3`: for `t ≤ N` the `p`-local `E¹_{-s,t}` embeds in its rationalization.
pub fn torsion_free_bound(d: u32, s: u32, p: u64) -> Result<u64> {
    check_d(d)?;
    if s < 3 {
        return Err(out_of_range("s", i64::from(s), "s >= 3"));
    }
    require_prime(p)?;
    Ok(u64::from(s - 1) * (u64::from(d) - 2) + 2 * p - 3)
}

/// `p`-local page: ranks are the rational dimensions and each entry carries a
/// torsion-free certificate, `true` exactly when `t ≤ N` (or the column is zero).
/// Outside the certified range the integral group is not determined here.
pub fn e1_local_page(d: u32, s_max: u32, t_max: u32, p: u64) -> Result<BigradedPage> {
    require_prime(p)?;
    let mut page = e1_rational_page(d, s_max, t_max)?;
    page.ring = Ring::Zp(p);
    for e in &mut page.entries {
        let certified = if e.s < 3 {
            true
        } else {
            u64::from(e.t) <= torsion_free_bound(d, e.s, p)?
        };
        e.torsion_free = Some(certified);
    }
    Ok(page)
}

/// Page entries as a plain `(s, t, rank)` list, skipping zeros.
pub fn nonzero_entries(page: &BigradedPage) -> Vec<&PageEntry> {
    page.entries.iter().filter(|e| !e.rank.is_zero()).collect()
}
