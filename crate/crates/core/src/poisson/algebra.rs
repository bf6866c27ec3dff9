//! Free d-Poisson algebra arithmetic on multilinear monomials.
//!
//! Sign convention, fixed here once. Let `e = d - 1` be the bracket degree
//! and `‖a‖ = |a| + e`. Then
//!
//! * `ab = (-1)^{|a||b|} ba`,
//! * `[a,b] = -(-1)^{‖a‖‖b‖} [b,a]`,
//! * `[a,[b,c]] = [[a,b],c] + (-1)^{‖a‖‖b‖} [b,[a,c]]`,
//! * `[a,bc] = [a,b]c + (-1)^{‖a‖|b|} b[a,c]`.
//!
//! Only the parity of `e` matters. Lie blocks are computed inside the tensor
//! algebra on generators of degree `e`, where `[A,B] = AB - (-1)^{‖A‖‖B‖} BA`;
//! the canonical coordinates of a multilinear Lie element are its
//! coefficients on words starting with the smallest letter.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

/// A Lie block in canonical form: distinct labels, smallest first, read as
/// the left-normed bracket `[b₀,b₁,…]`.
pub type Block = Vec<u8>;

/// Linear combination of products of canonical blocks, keyed by the sorted block list.
pub type Poly = BTreeMap<Vec<Block>, i64>;

/// Coefficient arithmetic: plain integers, or residues mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coeffs {
    pub modulus: Option<u64>,
}

impl Coeffs {
    pub const INTEGERS: Coeffs = Coeffs { modulus: None };

    pub fn reduce(&self, c: i64) -> i64 {
        match self.modulus {
            None => c,
            Some(p) => c.rem_euclid(p as i64),
        }
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.reduce(a.checked_add(b).expect("coefficient overflow"))
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        match self.modulus {
            None => a.checked_mul(b).expect("coefficient overflow"),
            Some(p) => ((a as i128 * b as i128).rem_euclid(p as i128)) as i64,
        }
    }
}

pub(crate) fn block_degree(b: &[u8], e: u32) -> u32 {
    (b.len() as u32 - 1) * e
}

pub(crate) fn blocks_degree(bs: &[Block], e: u32) -> u32 {
    bs.iter().map(|b| block_degree(b, e)).sum()
}

fn odd(x: u32) -> bool {
    x % 2 == 1
}

pub(crate) fn sign(neg: bool) -> i64 {
    if neg {
        -1
    } else {
        1
    }
}

pub(crate) fn add_term(p: &mut Poly, key: Vec<Block>, c: i64, k: Coeffs) {
    let c = k.reduce(c);
    if c == 0 {
        return;
    }
    match p.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let sum = k.add(*o.get(), c);
            if sum == 0 {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

pub(crate) fn add_poly(dst: &mut Poly, src: &Poly, c: i64, k: Coeffs) {
    for (m, v) in src {
        add_term(dst, m.clone(), k.mul(c, *v), k);
    }
}

/// Sorts blocks by their first (smallest) label, returning the Koszul sign.
pub(crate) fn sort_blocks(mut bs: Vec<Block>, e: u32) -> (Vec<Block>, i64) {
    // insertion sort keeps track of each transposition
    let mut neg = false;
    for i in 1..bs.len() {
        let mut j = i;
        while j > 0 && bs[j - 1][0] > bs[j][0] {
            if odd(block_degree(&bs[j - 1], e)) && odd(block_degree(&bs[j], e)) {
                neg = !neg;
            }
            bs.swap(j - 1, j);
            j -= 1;
        }
    }
    (bs, sign(neg))
}

/// Tensor-algebra expansion of a canonical block.
pub(crate) fn block_tensor(b: &[u8], e: u32) -> BTreeMap<Vec<u8>, i64> {
    let mut acc: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    acc.insert(vec![b[0]], 1);
    for (len, &y) in b.iter().enumerate().skip(1) {
        // [A, y] = Ay - (-1)^{‖A‖‖y‖} yA with ‖A‖ = len·e, ‖y‖ = e
        let s = -sign(odd(len as u32 * e) && odd(e));
        let mut next = BTreeMap::new();
        for (w, c) in &acc {
            let mut right = w.clone();
            right.push(y);
            *next.entry(right).or_insert(0) += c;
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(y);
            left.extend_from_slice(w);
            *next.entry(left).or_insert(0) += s * c;
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc
}

/// Bracket of two canonical Lie blocks with disjoint labels, in canonical coordinates.
pub(crate) fn lie_bracket(a: &[u8], b: &[u8], e: u32) -> Vec<(Block, i64)> {
    let ta = block_tensor(a, e);
    let tb = block_tensor(b, e);
    let m = a[0].min(b[0]);
    let na = a.len() as u32 * e;
    let nb = b.len() as u32 * e;
    let s = -sign(odd(na) && odd(nb));
    let mut out: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    // only products whose first letter is the overall minimum matter
    let (first, second, c) = if a[0] == m { (&ta, &tb, 1) } else { (&tb, &ta, s) };
    for (w1, c1) in first {
        if w1[0] != m {
            continue;
        }
        for (w2, c2) in second {
            let mut w = w1.clone();
            w.extend_from_slice(w2);
            *out.entry(w).or_insert(0) += c * c1 * c2;
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Product of two monomials with disjoint labels.
pub(crate) fn mul_mono(a: &[Block], b: &[Block], e: u32) -> (Vec<Block>, i64) {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    sort_blocks(all, e)
}

pub fn mul(p: &Poly, q: &Poly, e: u32, k: Coeffs) -> Poly {
    let mut out = Poly::new();
    for (a, ca) in p {
        for (b, cb) in q {
            let (m, s) = mul_mono(a, b, e);
            add_term(&mut out, m, k.mul(s, k.mul(*ca, *cb)), k);
        }
    }
    out
}

/// Bracket of two monomials given as (not necessarily sorted) block lists.
pub(crate) fn bracket_mono(p: &[Block], q: &[Block], e: u32, k: Coeffs, out: &mut Poly, c: i64) {
    if p.is_empty() || q.is_empty() {
        return;
    }
    if q.len() > 1 {
        // [P, bQ'] = [P,b]Q' + (-1)^{‖P‖|b|} b[P,Q']
        let b = &q[..1];
        let rest = &q[1..];
        let mut first = Poly::new();
        bracket_mono(p, b, e, k, &mut first, 1);
        for (m, v) in first {
            let (prod, s) = mul_mono(&m, rest, e);
            add_term(out, prod, k.mul(c, k.mul(v, s)), k);
        }
        let np = blocks_degree(p, e) + e;
        let s0 = sign(odd(np) && odd(blocks_degree(b, e)));
        let mut second = Poly::new();
        bracket_mono(p, rest, e, k, &mut second, 1);
        for (m, v) in second {
            let (prod, s) = mul_mono(b, &m, e);
            add_term(out, prod, k.mul(c, k.mul(v, s * s0)), k);
        }
        return;
    }
    if p.len() > 1 {
        // [aP', c] = a[P',c] + (-1)^{|P'|‖c‖} [a,c]P'
        let a = &p[..1];
        let rest = &p[1..];
        let mut first = Poly::new();
        bracket_mono(rest, q, e, k, &mut first, 1);
        for (m, v) in first {
            let (prod, s) = mul_mono(a, &m, e);
            add_term(out, prod, k.mul(c, k.mul(v, s)), k);
        }
        let nq = blocks_degree(q, e) + e;
        let s0 = sign(odd(blocks_degree(rest, e)) && odd(nq));
        let mut second = Poly::new();
        bracket_mono(a, q, e, k, &mut second, 1);
        for (m, v) in second {
            let (prod, s) = mul_mono(&m, rest, e);
            add_term(out, prod, k.mul(c, k.mul(v, s * s0)), k);
        }
        return;
    }
    for (blk, v) in lie_bracket(&p[0], &q[0], e) {
        add_term(out, vec![blk], k.mul(c, v), k);
    }
}

pub fn bracket(p: &Poly, q: &Poly, e: u32, k: Coeffs) -> Poly {
    let mut out = Poly::new();
    for (a, ca) in p {
        for (b, cb) in q {
            bracket_mono(a, b, e, k, &mut out, k.mul(*ca, *cb));
        }
    }
    out
}

pub(crate) fn generator(label: u8) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![vec![label]], 1);
    p
}

pub(crate) fn unit() -> Poly {
    let mut p = Poly::new();
    p.insert(Vec::new(), 1);
    p
}

/// Value of a left-normed bracket of already evaluated arguments.
pub(crate) fn left_normed(args: &[Poly], e: u32, k: Coeffs) -> Poly {
    let mut acc = args[0].clone();
    for a in &args[1..] {
        acc = bracket(&acc, a, e, k);
    }
    acc
}
