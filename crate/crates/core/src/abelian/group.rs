//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use crate::error::{GwError, Result};

/// `ℤ^free_rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/dₖ` with `d₁ | d₂ | … | dₖ`, every `dᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "crate::serde_num::list")]
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds the group `ℤ^free_rank ⊕ ⊕ ℤ/cᵢ` for arbitrary cyclic orders and
    /// brings it to invariant-factor form. Orders 0 count as free summands,
    /// orders ±1 are dropped.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        // collect prime-power pieces, then recombine into an invariant factor chain
        let mut rest: Vec<BigUint> = Vec::new();
        for o in orders {
            if o.is_zero() {
                free += 1;
            } else {
                let m = o.abs().to_biguint().unwrap();
                if !m.is_one() {
                    rest.push(m);
                }
            }
        }
        AbelianGroup {
            free_rank: free,
            torsion: invariant_chain(rest),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.torsion.iter().fold(BigUint::one(), |a, b| a * b)
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut t = self.torsion.clone();
        t.extend(other.torsion.iter().cloned());
        AbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion: invariant_chain(t),
        }
    }
}

/// Recombines arbitrary cyclic orders (all ≥ 2) into a divisibility chain.
fn invariant_chain(orders: Vec<BigUint>) -> Vec<BigUint> {
    // Repeatedly replace pairs (a, b) with (gcd, lcm); this converges to the chain.
    let mut v = orders;
    v.sort();
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = v[i].gcd(&v[j]);
            let l = v[i].lcm(&v[j]);
            v[i] = g;
            v[j] = l;
        }
    }
    v.retain(|x| !x.is_one());
    v
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel of `m` viewed as a map `ℤ^cols → ℤ^rows`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    let factors = invariant_factors(m);
    let rank = factors.len();
    let torsion: Vec<BigUint> = factors
        .into_iter()
        .map(|x| x.abs().to_biguint().unwrap())
        .filter(|x| !x.is_one())
        .collect();
    AbelianGroup {
        free_rank: m.rows() - rank,
        torsion: invariant_chain(torsion),
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut k = 3u64;
    while k.saturating_mul(k) <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GwError::NotPrime(p))
    }
}

/// `G ⊗ ℤ₍ₚ₎`: keeps the free rank and the `p`-primary part of the torsion.
pub fn localize(g: &AbelianGroup, p: u64) -> Result<AbelianGroup> {
    require_prime(p)?;
    let p = BigUint::from(p);
    let torsion = g
        .torsion
        .iter()
        .map(|d| {
            let mut part = BigUint::one();
            let mut rest = d.clone();
            while (&rest % &p).is_zero() {
                rest /= &p;
                part *= &p;
            }
            part
        })
        .filter(|x| !x.is_one())
        .collect();
    Ok(AbelianGroup {
        free_rank: g.free_rank,
        torsion,
    })
}

/// Dimension of `G ⊗ ℚ`.
pub fn rational_rank(g: &AbelianGroup) -> usize {
    g.free_rank
}

/// Dimension of `G ⊗ 𝔽ₚ`.
pub fn mod_p_dim(g: &AbelianGroup, p: u64) -> usize {
    let p = BigUint::from(p);
    g.free_rank + g.torsion.iter().filter(|d| (*d % &p).is_zero()).count()
}

pub(crate) fn small(x: &BigUint) -> Option<u64> {
    x.to_u64()
}
