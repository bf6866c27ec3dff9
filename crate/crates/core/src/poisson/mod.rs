//! The d-Poisson operad on canonical bases, operadic composition and the
//! cosimplicial structure coming from the product and the unit.

mod algebra;
mod compose;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{GwError, Result};
use crate::page::Ring;

pub use algebra::Coeffs;
pub(crate) use algebra::Poly;
pub use compose::{codegeneracy, coface, compose};
pub use parse::normalize;

/// Canonical basis monomial: a set partition of `{0..arity}` (1-based in
/// text), each block a left-normed bracket starting with its smallest label,
/// blocks sorted by smallest label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PoissonMonomial {
    arity: usize,
    blocks: Vec<Vec<u8>>,
}

impl PoissonMonomial {
    /// Validates canonical form.
    pub fn new(arity: usize, blocks: Vec<Vec<u8>>) -> Result<Self> {
        let mut seen = vec![false; arity];
        for b in &blocks {
            if b.is_empty() {
                return Err(GwError::Parse("empty block".into()));
            }
            for &l in b {
                let l = l as usize;
                if l >= arity || seen[l] {
                    return Err(GwError::NotMultilinear(format!("label {} repeated or out of range", l + 1)));
                }
                seen[l] = true;
            }
            if b.iter().min() != b.first() {
                return Err(GwError::Parse("block must start with its smallest label".into()));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(GwError::NotMultilinear("not every variable occurs".into()));
        }
        if blocks.windows(2).any(|w| w[0][0] > w[1][0]) {
            return Err(GwError::Parse("blocks must be sorted by smallest label".into()));
        }
        Ok(PoissonMonomial { arity, blocks })
    }

    pub(crate) fn from_canonical(arity: usize, blocks: Vec<Vec<u8>>) -> Self {
        PoissonMonomial { arity, blocks }
    }

    /// The product `x₁⋯x_k`.
    pub fn product(arity: usize) -> Self {
        PoissonMonomial {
            arity,
            blocks: (0..arity as u8).map(|l| vec![l]).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// Number of brackets.
    pub fn weight(&self) -> usize {
        self.arity - self.blocks.len()
    }

    pub fn degree(&self, d: u32) -> u32 {
        self.weight() as u32 * (d - 1)
    }
}

impl fmt::Display for PoissonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "u");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    (b[0] + 1).to_string()
                } else {
                    format!("[{}]", b.iter().map(|l| (l + 1).to_string()).join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Linear combination of canonical monomials of one arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonElement {
    ring: Ring,
    d: u32,
    arity: usize,
    terms: BTreeMap<PoissonMonomial, i64>,
}

pub(crate) fn coeffs_for(ring: Ring) -> Result<Coeffs> {
    match ring {
        Ring::Z | Ring::Q => Ok(Coeffs::INTEGERS),
        Ring::Fp(p) => Ok(Coeffs { modulus: Some(p) }),
        Ring::Zp(_) => Err(GwError::Unsupported("Poisson elements over Z(p); use Z".into())),
    }
}

fn check_d(d: u32) -> Result<()> {
    if d < 3 {
        Err(GwError::DimensionTooSmall(d))
    } else {
        Ok(())
    }
}

impl PoissonElement {
    pub fn zero(ring: Ring, d: u32, arity: usize) -> Result<Self> {
        check_d(d)?;
        coeffs_for(ring)?;
        Ok(PoissonElement {
            ring,
            d,
            arity,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_monomial(ring: Ring, d: u32, m: PoissonMonomial) -> Result<Self> {
        let mut e = Self::zero(ring, d, m.arity)?;
        e.terms.insert(m, 1);
        Ok(e)
    }

    /// Builds an element from `(coefficient, monomial)` pairs of one arity.
    pub fn from_terms(ring: Ring, d: u32, arity: usize, terms: impl IntoIterator<Item = (i64, PoissonMonomial)>) -> Result<Self> {
        let mut e = Self::zero(ring, d, arity)?;
        let k = e.coeffs();
        for (c, m) in terms {
            if m.arity != arity {
                return Err(GwError::NotMultilinear(format!("monomial {m} has arity {}, expected {arity}", m.arity)));
            }
            e.add_term(m, c, k);
        }
        Ok(e)
    }

    pub(crate) fn from_poly(ring: Ring, d: u32, arity: usize, p: Poly) -> Self {
        let k = coeffs_for(ring).expect("ring validated earlier");
        let mut e = PoissonElement {
            ring,
            d,
            arity,
            terms: BTreeMap::new(),
        };
        for (blocks, c) in p {
            e.add_term(PoissonMonomial::from_canonical(arity, blocks), c, k);
        }
        e
    }

    fn add_term(&mut self, m: PoissonMonomial, c: i64, k: Coeffs) {
        let c = k.reduce(c);
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert(0);
        *slot = k.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&m);
        }
    }

    pub(crate) fn coeffs(&self) -> Coeffs {
        coeffs_for(self.ring).expect("ring validated at construction")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PoissonMonomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &PoissonMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(GwError::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.d != other.d || self.arity != other.arity {
            return Err(GwError::Unsupported(format!(
                "cannot add elements of (arity {}, d {}) and (arity {}, d {})",
                self.arity, self.d, other.arity, other.d
            )));
        }
        Ok(())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, other: &Self, c: i64) -> Result<Self> {
        self.check_compatible(other)?;
        let k = self.coeffs();
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), k.mul(c, *v), k);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        let k = self.coeffs();
        let mut out = PoissonElement {
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (m, v) in &self.terms {
            out.add_term(m.clone(), k.mul(c, *v), k);
        }
        out
    }

    /// Degree of the element if it is homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree(self.d));
        let first = degs.next().unwrap_or(0);
        degs.all(|x| x == first).then_some(first)
    }
}

impl fmt::Display for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, a) = (*c < 0, c.unsigned_abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a != 1 {
                write!(f, "{a}·")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Every set partition of `0..k` as sorted blocks, blocks sorted by minimum.
fn set_partitions(k: usize) -> Vec<Vec<Vec<u8>>> {
    fn go(i: usize, k: usize, cur: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i as u8);
            go(i + 1, k, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i as u8]);
        go(i + 1, k, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, k, &mut Vec::new(), &mut out);
    out
}

/// Canonical basis of the weight-`n` part of arity `k`, sorted.
pub fn poisson_basis(k: usize, d: u32, n: usize) -> Result<Vec<PoissonMonomial>> {
    check_d(d)?;
    if k > 12 {
        return Err(crate::error::out_of_range("k", k as i64, "k <= 12"));
    }
    if k == 0 {
        return Ok(if n == 0 {
            vec![PoissonMonomial::product(0)]
        } else {
            Vec::new()
        });
    }
    if n >= k {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in set_partitions(k).into_iter().filter(|p| p.len() == k - n) {
        let choices: Vec<Vec<Vec<u8>>> = part
            .iter()
            .map(|b| {
                b[1..]
                    .iter()
                    .copied()
                    .permutations(b.len() - 1)
                    .map(|tail| {
                        let mut w = vec![b[0]];
                        w.extend(tail);
                        w
                    })
                    .collect()
            })
            .collect();
        for blocks in choices.into_iter().map(Vec::into_iter).multi_cartesian_product() {
            out.push(PoissonMonomial::from_canonical(k, blocks));
        }
    }
    out.sort();
    Ok(out)
}

/// A polynomial in `t` with nonnegative integer coefficients, `coeffs[i]` at `tⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<BigUint>,
}

impl Polynomial {
    fn trim(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn coefficient(&self, i: usize) -> BigUint {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Poincaré polynomial of the configuration space of `k` points in ℝᵈ,
/// `∏_{j<k} (1 + j·t^{d-1})`.
pub fn conf_poincare(k: usize, d: u32) -> Result<Polynomial> {
    check_d(d)?;
    let e = (d - 1) as usize;
    let mut coeffs = vec![BigUint::from(1u32)];
    for j in 1..k {
        let mut next = vec![BigUint::zero(); coeffs.len() + e];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + e] += c * BigUint::from(j);
        }
        coeffs = next;
    }
    Ok(Polynomial { coeffs }.trim())
}

/// The same polynomial counted from the canonical basis.
pub fn basis_census(k: usize, d: u32) -> Result<Polynomial> {
    check_d(d)?;
    let e = (d - 1) as usize;
    let top = k.saturating_sub(1);
    let mut coeffs = vec![BigUint::zero(); top * e + 1];
    for n in 0..=top {
        coeffs[n * e] = BigUint::from(poisson_basis(k, d, n)?.len());
    }
    Ok(Polynomial { coeffs }.trim())
}

/// Unit of the operad's multiplicative structure (arity 0).
pub fn unit(ring: Ring, d: u32) -> Result<PoissonElement> {
    PoissonElement::from_monomial(ring, d, PoissonMonomial::product(0))
}

/// The product `x₁x₂` (arity 2).
pub fn product2(ring: Ring, d: u32) -> Result<PoissonElement> {
    PoissonElement::from_monomial(ring, d, PoissonMonomial::product(2))
}
