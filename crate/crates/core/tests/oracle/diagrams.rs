//! Brute-force model of tree diagrams on a line.
//!
//! Trees are built by inserting legs one at a time, identified by their
//! quartet splits and the cyclic signs at triple medians, and related by
//! AS, IHX and STU² rows written directly on adjacency lists.

use std::collections::{BTreeMap, VecDeque};

use gwtower::diagrams::UniTrivalentTree;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OTree {
    pub pos: Vec<Option<u8>>,
    pub nb: Vec<Vec<usize>>,
}

impl OTree {
    fn legs(&self) -> usize {
        self.pos.iter().flatten().count()
    }

    fn leg(&self, p: u8) -> usize {
        self.pos.iter().position(|&x| x == Some(p)).unwrap()
    }

    fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.nb.len()];
        prev[a] = a;
        let mut q = VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            for &y in &self.nb[x] {
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    q.push_back(y);
                }
            }
        }
        let mut out = vec![b];
        while *out.last().unwrap() != a {
            out.push(prev[*out.last().unwrap()]);
        }
        out.reverse();
        out
    }

    /// Quartet splits and triple signs, indexed by leg positions.
    pub fn key(&self) -> Vec<i8> {
        let n = self.legs() as u8;
        let mut key = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let (a, b, c) = (self.leg(i), self.leg(j), self.leg(k));
                    let pab = self.path(a, b);
                    let pac = self.path(a, c);
                    let m = *pab.iter().rev().find(|x| pac.contains(x)).unwrap();
                    let toward = |x: usize| self.path(m, x)[1];
                    let (x, y, z) = (toward(a), toward(b), toward(c));
                    let o = &self.nb[m];
                    let r = o.iter().position(|&e| e == x).unwrap();
                    key.push(if o[(r + 1) % 3] == y && o[(r + 2) % 3] == z { 1 } else { -1 });
                    for l in k + 1..=n {
                        let d = self.leg(l);
                        let disjoint = |p: &[usize], q: &[usize]| p.iter().all(|x| !q.contains(x));
                        let split = if disjoint(&pab, &self.path(c, d)) {
                            0
                        } else if disjoint(&pac, &self.path(b, d)) {
                            1
                        } else {
                            2
                        };
                        key.push(split);
                    }
                }
            }
        }
        key
    }

    pub fn to_library(&self) -> UniTrivalentTree {
        UniTrivalentTree::from_adjacency(&self.pos, &self.nb).unwrap()
    }

    fn replace(&mut self, node: usize, old: usize, new: usize) {
        let slot = self.nb[node].iter().position(|&x| x == old).unwrap();
        self.nb[node][slot] = new;
    }

    fn rotated(&self, v: usize, first: usize) -> [usize; 3] {
        let o = &self.nb[v];
        let r = o.iter().position(|&x| x == first).unwrap();
        [o[r], o[(r + 1) % 3], o[(r + 2) % 3]]
    }
}

/// All oriented trees with legs `1..=s+1`.
pub fn enumerate(s: u32) -> Vec<OTree> {
    let mut trees = vec![OTree { pos: vec![Some(1), Some(2)], nb: vec![vec![1], vec![0]] }];
    for leg in 3..=(s as u8 + 1) {
        let mut next = Vec::new();
        for t in &trees {
            for x in 0..t.nb.len() {
                for &y in &t.nb[x] {
                    if y < x {
                        continue;
                    }
                    for flip in [false, true] {
                        let mut u = t.clone();
                        let v = u.nb.len();
                        let l = v + 1;
                        u.pos.extend([None, Some(leg)]);
                        u.replace(x, y, v);
                        u.replace(y, x, v);
                        u.nb.push(if flip { vec![x, l, y] } else { vec![x, y, l] });
                        u.nb.push(vec![v]);
                        next.push(u);
                    }
                }
            }
        }
        trees = next;
    }
    trees
}

pub struct Model {
    pub trees: Vec<OTree>,
    index: BTreeMap<Vec<i8>, usize>,
}

impl Model {
    pub fn new(s: u32) -> Model {
        let trees = enumerate(s);
        let index = trees.iter().enumerate().map(|(i, t)| (t.key(), i)).collect();
        Model { trees, index }
    }

    fn idx(&self, t: &OTree) -> usize {
        self.index[&t.key()]
    }

    fn row(&self, terms: &[(i64, &OTree)]) -> Vec<BigInt> {
        let mut r = vec![BigInt::from(0); self.trees.len()];
        for (c, t) in terms {
            r[self.idx(t)] += *c;
        }
        r
    }

    pub fn as_rows(&self) -> Vec<Vec<BigInt>> {
        let mut rows = Vec::new();
        for t in &self.trees {
            for v in 0..t.nb.len() {
                if t.pos[v].is_none() {
                    let mut f = t.clone();
                    f.nb[v].reverse();
                    rows.push(self.row(&[(1, t), (1, &f)]));
                }
            }
        }
        rows
    }

    pub fn ihx_rows(&self) -> Vec<Vec<BigInt>> {
        let mut rows = Vec::new();
        for t in &self.trees {
            for u in 0..t.nb.len() {
                for &v in &t.nb[u] {
                    if t.pos[u].is_some() || t.pos[v].is_some() || v < u {
                        continue;
                    }
                    let [_, a, b] = t.rotated(u, v);
                    let [_, c, d] = t.rotated(v, u);
                    let regroup = |x: usize, y: usize, z: usize| {
                        let mut g = t.clone();
                        for (n, old) in [(a, u), (b, u), (c, v), (d, v)] {
                            g.replace(n, old, usize::MAX - n);
                        }
                        g.nb[u] = vec![v, x, y];
                        g.nb[v] = vec![u, z, d];
                        for (n, owner) in [(x, u), (y, u), (z, v), (d, v)] {
                            g.replace(n, usize::MAX - n, owner);
                        }
                        g
                    };
                    let (i, h, x) = (t.clone(), regroup(b, c, a), regroup(c, a, b));
                    rows.push(self.row(&[(1, &i), (1, &h), (1, &x)]));
                }
            }
        }
        rows
    }

    pub fn stu2_rows(&self) -> Vec<Vec<BigInt>> {
        let s = self.trees[0].legs() as u8 - 1;
        if s == 1 {
            return vec![self.row(&[(1, &self.trees[0])])];
        }
        let mut rows = Vec::new();
        for t in &self.trees {
            for k in 1..=s {
                let (a, b) = (t.leg(k), t.leg(k + 1));
                let mut swapped = t.clone();
                swapped.pos[a] = Some(k + 1);
                swapped.pos[b] = Some(k);
                let path = t.path(a, b);
                for i in 1..path.len() - 1 {
                    let w = path[i];
                    let Some(&c) = t.nb[w]
                        .iter()
                        .find(|&&n| n != path[i - 1] && n != path[i + 1] && t.pos[n].is_some())
                    else {
                        continue;
                    };
                    let [_, f1, f2] = t.rotated(w, c);
                    let t2a = open_loop(t, k, a, b, c, w, [f1, f2]);
                    let t2b = open_loop(t, k, a, b, c, w, [f2, f1]);
                    rows.push(self.row(&[(1, t), (-1, &swapped), (-1, &t2a), (1, &t2b)]));
                }
            }
        }
        rows
    }
}

/// Joins legs `a` (position k) and `b` at a vertex with stem at k, then
/// opens the loop at leg `c` on vertex `w`, landing `order[0]` first.
fn open_loop(t: &OTree, k: u8, a: usize, b: usize, c: usize, w: usize, order: [usize; 2]) -> OTree {
    let mut g = t.clone();
    let v = g.nb.len();
    let stem = v + 1;
    let l1 = v + 2;
    let l2 = v + 3;
    g.pos.extend([None, Some(k), None, None]);
    g.nb.extend([vec![], vec![v], vec![], vec![]]);
    // positions in the one-loop diagram
    for p in g.pos.iter_mut().flatten() {
        if *p > k + 1 {
            *p -= 1;
        }
    }
    g.pos[stem] = Some(k);
    let j = g.pos[c].unwrap();
    for p in g.pos.iter_mut().flatten() {
        if *p > j {
            *p += 1;
        }
    }
    g.pos[l1] = Some(j);
    g.pos[l2] = Some(j + 1);
    // where each edge at w ends up
    let phi = |n: usize| if n == a || n == b { v } else { n };
    let land = |n: usize| if n == order[0] { l1 } else { l2 };
    let side = |leg: usize| {
        let n = t.nb[leg][0];
        if n == w {
            land(leg)
        } else {
            n
        }
    };
    g.nb[v] = vec![stem, side(a), side(b)];
    for leg in [a, b] {
        let n = t.nb[leg][0];
        if n != w {
            g.replace(n, leg, v);
        }
    }
    for (f, l) in [(order[0], l1), (order[1], l2)] {
        g.nb[l] = vec![phi(f)];
        if phi(f) != v {
            g.replace(f, w, l);
        }
    }
    // drop a, b, c, w by compacting
    let dead = [a, b, c, w];
    let keep: Vec<usize> = (0..g.nb.len()).filter(|n| !dead.contains(n)).collect();
    let mut map = vec![usize::MAX; g.nb.len()];
    for (i, &n) in keep.iter().enumerate() {
        map[n] = i;
    }
    OTree {
        pos: keep.iter().map(|&n| g.pos[n]).collect(),
        nb: keep.iter().map(|&n| g.nb[n].iter().map(|&m| map[m]).collect()).collect(),
    }
}

/// Rational rank and torsion of the degree-`s` quotient, via dense SNF.
pub fn group(s: u32) -> (usize, Vec<BigInt>) {
    let m = Model::new(s);
    let mut rows = m.as_rows();
    rows.extend(m.ihx_rows());
    rows.extend(m.stu2_rows());
    let (rank, torsion) = super::dense::invariant_factors(rows);
    (m.trees.len() - rank, torsion)
}

/// All oracle rows with columns reordered to match `gens` by canonical code.
pub fn rows_in_library_order(s: u32, gens: &[UniTrivalentTree]) -> Vec<Vec<BigInt>> {
    let m = Model::new(s);
    let col: BTreeMap<String, usize> =
        gens.iter().enumerate().map(|(i, t)| (t.canonical_code(), i)).collect();
    let perm: Vec<usize> = m.trees.iter().map(|t| col[&t.to_library().canonical_code()]).collect();
    let mut rows = m.as_rows();
    rows.extend(m.ihx_rows());
    rows.extend(m.stu2_rows());
    rows.into_iter()
        .map(|r| {
            let mut out = vec![BigInt::from(0); r.len()];
            for (i, c) in r.into_iter().enumerate() {
                out[perm[i]] = c;
            }
            out
        })
        .collect()
}
