//! Lyndon words and the word counts behind free Lie algebras and the
//! Hilton-Milnor splitting of loop spaces of wedges of spheres.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{GwError, Result};

/// A Lyndon word over the alphabet `{1..k}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(pub Vec<u8>);

impl LyndonWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Display for LyndonWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// True iff `w` is nonempty and strictly smaller than each proper rotation.
pub fn is_lyndon<T: Ord>(w: &[T]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    (1..n).all(|r| {
        let rot = w[r..].iter().chain(&w[..r]);
        w.iter().lt(rot)
    })
}

/// Lyndon words of length exactly `n` over `{1..k}`, lexicographically sorted.
///
/// Duval's generation algorithm already emits words in lexicographic order.
pub fn lyndon_words(k: usize, n: usize) -> Vec<LyndonWord> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    assert!(k < 256, "alphabet too large");
    let k = k as u8;
    let mut w: Vec<u8> = vec![1];
    loop {
        if w.len() == n {
            out.push(LyndonWord(w.clone()));
        }
        // extend periodically to length n, then bump the last letter
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&k) {
            w.pop();
        }
        match w.last_mut() {
            Some(l) => *l += 1,
            None => break,
        }
    }
    out
}

fn mobius(mut n: u64) -> i32 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Number of Lyndon words of length `n` on `k` letters (Witt's formula).
pub fn witt_count(k: u64, n: u64) -> BigUint {
    assert!(n >= 1, "word length must be positive");
    let mut total = BigInt::zero();
    for e in 1..=n {
        if !n.is_multiple_of(e) {
            continue;
        }
        let mu = mobius(e);
        if mu != 0 {
            total += BigInt::from(mu) * BigInt::from(k).pow((n / e) as u32);
        }
    }
    let q = total / BigInt::from(n);
    q.to_biguint().expect("Witt count is nonnegative")
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Lyndon words of length `n` on `k` letters using every letter at least once.
pub fn full_support_count(k: u64, n: u64) -> BigUint {
    let mut total = BigInt::zero();
    for j in 0..=k {
        let term = BigInt::from(binomial(k, j)) * BigInt::from(witt_count(j, n));
        if (k - j).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    debug_assert!(!total.is_negative());
    total.to_biguint().unwrap()
}

/// Loop-sphere factors `ΩS^{n(d-2)+1}` grouped by word length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereSummand {
    pub word_length: u64,
    pub sphere_dim: u64,
    pub count: BigUint,
}

/// Hilton-Milnor factors of `ΩW` for `W` a wedge of `k` copies of `S^{d-1}`,
/// restricted to spheres that can carry rational homotopy in degrees `≤ t_max`.
///
/// A sphere `S^m` carries rational homotopy in degree `m`, and in degree
/// `2m-1` as well when `m` is even.
pub fn hilton_milnor_spheres(k: u64, d: u32, t_max: u64, full_support: bool) -> Result<Vec<SphereSummand>> {
    if d < 3 {
        return Err(GwError::DimensionTooSmall(d));
    }
    let c = u64::from(d) - 2;
    let mut out = Vec::new();
    let mut n = 1u64;
    loop {
        let m = n * c + 1;
        if m > t_max {
            break;
        }
        let count = if full_support {
            full_support_count(k, n)
        } else {
            witt_count(k, n)
        };
        if !count.is_zero() {
            out.push(SphereSummand {
                word_length: n,
                sphere_dim: m,
                count,
            });
        }
        n += 1;
    }
    Ok(out)
}
