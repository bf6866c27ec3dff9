//! Exact linear algebra over prime fields and the rationals.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;

use super::group::require_prime;

/// A field whose elements are handled through a descriptor value.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn characteristic(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }
}

/// 𝔽ₚ with elements stored as reduced residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        require_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        let p = self.p as u128;
        while e > 0 {
            if e & 1 == 1 {
                r = ((r as u128 * a as u128) % p) as u64;
            }
            a = ((a as u128 * a as u128) % p) as u64;
            e >>= 1;
        }
        r
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        u64::try_from(&r).unwrap()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// ℚ with arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in Q");
        a.recip()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `dst + c * src` for sorted sparse vectors.
pub fn axpy<F: Field>(f: &F, dst: &SparseVec<F::Elem>, c: &F::Elem, src: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            let v = f.mul(c, &src[j].1);
            if !f.is_zero(&v) {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&dst[i].1, &f.mul(c, &src[j].1));
            if !f.is_zero(&v) {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_get<E: Clone>(v: &SparseVec<E>, idx: usize) -> Option<&E> {
    v.binary_search_by_key(&idx, |e| e.0).ok().map(|k| &v[k].1)
}

/// Converts an integer vector into a field vector, dropping entries that vanish.
pub fn reduce_vector<F: Field>(f: &F, v: &[(usize, BigInt)]) -> SparseVec<F::Elem> {
    let mut out: SparseVec<F::Elem> = v
        .iter()
        .map(|(i, x)| (*i, f.from_bigint(x)))
        .filter(|(_, x)| !f.is_zero(x))
        .collect();
    out.sort_by_key(|e| e.0);
    out
}

/// Column-style elimination: returns the pivot row of every column after
/// reduction and the transform columns (so that `A · T` is reduced).
pub(crate) fn column_eliminate<F: Field>(
    f: &F,
    columns: &[SparseVec<F::Elem>],
    track: bool,
) -> (Vec<SparseVec<F::Elem>>, Vec<Option<usize>>, Option<Vec<SparseVec<F::Elem>>>) {
    let n = columns.len();
    let mut cols: Vec<SparseVec<F::Elem>> = columns.to_vec();
    let mut trans: Option<Vec<SparseVec<F::Elem>>> =
        track.then(|| (0..n).map(|j| vec![(j, f.one())]).collect());
    let mut pivots = vec![None; n];
    // owner[row] = column whose pivot sits at this row (pivot = largest row index)
    let mut owner: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for j in 0..n {
        while let Some(&(low, ref val)) = cols[j].last() {
            match owner.get(&low) {
                Some(&k) => {
                    let kval = &cols[k].last().unwrap().1;
                    let c = f.neg(&f.mul(val, &f.inv(kval)));
                    cols[j] = axpy(f, &cols[j], &c, &cols[k]);
                    if let Some(t) = trans.as_mut() {
                        t[j] = axpy(f, &t[j], &c, &t[k]);
                    }
                }
                None => {
                    owner.insert(low, j);
                    pivots[j] = Some(low);
                    break;
                }
            }
        }
    }
    (cols, pivots, trans)
}

/// Rank of the matrix whose columns are given.
pub fn rank<F: Field>(f: &F, columns: &[SparseVec<F::Elem>]) -> usize {
    column_eliminate(f, columns, false)
        .1
        .iter()
        .filter(|p| p.is_some())
        .count()
}

/// Basis of the kernel of the matrix with the given columns (vectors indexed by column).
pub fn kernel<F: Field>(f: &F, columns: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let (_, pivots, trans) = column_eliminate(f, columns, true);
    let trans = trans.unwrap();
    pivots
        .iter()
        .zip(trans)
        .filter(|(p, _)| p.is_none())
        .map(|(_, t)| t)
        .collect()
}

/// A basis of a subspace of `F^dim` in echelon form with coordinate recovery.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<F: Field> {
    field: F,
    dim: usize,
    columns: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
    /// maps echelon coordinates to coordinates in the original generators
    back: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SubspaceBasis<F> {
    /// Panics if the vectors are linearly dependent.
    pub fn new(field: F, dim: usize, vectors: &[SparseVec<F::Elem>]) -> Self {
        let (cols, pivots, trans) = column_eliminate(&field, vectors, true);
        let trans = trans.unwrap();
        let pivots: Vec<usize> = pivots
            .into_iter()
            .map(|p| p.expect("subspace generators are linearly dependent"))
            .collect();
        // echelon column j = Σ_i trans[j][i] · vectors[i], so echelon
        // coordinates map to original ones through the transform itself
        let back = trans;
        SubspaceBasis {
            field,
            dim,
            columns: cols,
            pivots,
            back,
        }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Coordinates (in terms of the vectors passed to `new`) of `v`, or `None`
    /// when `v` is outside the subspace.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let mut rest = v.clone();
        let mut echelon = vec![f.zero(); self.columns.len()];
        // pivots are the lowest nonzero rows; eliminate from the bottom up
        let mut order: Vec<usize> = (0..self.columns.len()).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(self.pivots[j]));
        for j in order {
            let p = self.pivots[j];
            if let Some(x) = sparse_get(&rest, p) {
                let piv = sparse_get(&self.columns[j], p).unwrap();
                let c = f.mul(x, &f.inv(piv));
                rest = axpy(f, &rest, &f.neg(&c), &self.columns[j]);
                echelon[j] = c;
            }
        }
        if !rest.is_empty() {
            return None;
        }
        let mut out = vec![f.zero(); self.columns.len()];
        for (j, c) in echelon.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (i, b) in &self.back[j] {
                out[*i] = f.add(&out[*i], &f.mul(c, b));
            }
        }
        Some(out)
    }
}

pub fn rational_from_ints(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integral(q: &BigRational) -> bool {
    q.denom().abs().is_one()
}
