//! Leg-labeled oriented unitrivalent trees.
//!
//! A tree of degree `s` has `s+1` legs at positions `1..=s+1` on the line and
//! `s-1` trivalent vertices, each with a cyclic order of its three edges.
//! Rooting at the leg in position 1 turns the cyclic order `(parent, x, y)`
//! into the planar node `[x,y]`, so oriented trees are the same thing as
//! planar binary trees whose leaves carry the positions `2..=s+1`.
//!
//! The canonical code is `1:` followed by the planar tree, e.g. `1:[[2,3],4]`.

use std::fmt;

use itertools::Itertools;

use crate::error::{out_of_range, GwError, Result};

/// Largest degree accepted by [`enumerate_trees`].
pub const TREE_DEGREE_BOUND: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarTree {
    Leaf(u8),
    Node(Box<PlanarTree>, Box<PlanarTree>),
}

impl PlanarTree {
    pub fn node(a: PlanarTree, b: PlanarTree) -> PlanarTree {
        PlanarTree::Node(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> Vec<u8> {
        match self {
            PlanarTree::Leaf(l) => vec![*l],
            PlanarTree::Node(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    pub fn internal_count(&self) -> usize {
        match self {
            PlanarTree::Leaf(_) => 0,
            PlanarTree::Node(a, b) => 1 + a.internal_count() + b.internal_count(),
        }
    }

    /// Applies `f` to the subtree at `path` (`false` = left child).
    pub(crate) fn replace_at(&self, path: &[bool], f: &dyn Fn(&PlanarTree) -> PlanarTree) -> PlanarTree {
        match (path.split_first(), self) {
            (None, _) => f(self),
            (Some((&right, rest)), PlanarTree::Node(a, b)) => {
                if right {
                    PlanarTree::node((**a).clone(), b.replace_at(rest, f))
                } else {
                    PlanarTree::node(a.replace_at(rest, f), (**b).clone())
                }
            }
            (Some(_), PlanarTree::Leaf(_)) => panic!("path runs past a leaf"),
        }
    }

    /// Paths to every internal node, in preorder.
    pub(crate) fn node_paths(&self) -> Vec<Vec<bool>> {
        fn go(t: &PlanarTree, path: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
            if let PlanarTree::Node(a, b) = t {
                out.push(path.clone());
                path.push(false);
                go(a, path, out);
                path.pop();
                path.push(true);
                go(b, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn at(&self, path: &[bool]) -> &PlanarTree {
        match (path.split_first(), self) {
            (None, _) => self,
            (Some((&right, rest)), PlanarTree::Node(a, b)) => {
                if right {
                    b.at(rest)
                } else {
                    a.at(rest)
                }
            }
            (Some(_), PlanarTree::Leaf(_)) => panic!("path runs past a leaf"),
        }
    }
}

impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarTree::Leaf(l) => write!(f, "{l}"),
            PlanarTree::Node(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// A generator: an oriented tree with legs at positions `1..=s+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniTrivalentTree {
    degree: u32,
    planar: PlanarTree,
}

impl UniTrivalentTree {
    /// `planar` must carry each position `2..=s+1` exactly once.
    pub fn new(planar: PlanarTree) -> Result<Self> {
        let mut leaves = planar.leaves();
        let s = leaves.len() as u32;
        leaves.sort_unstable();
        if leaves.iter().copied().ne(2..=(s as u8 + 1)) {
            return Err(GwError::Parse(format!("tree {planar} must use the positions 2..={}", s + 1)));
        }
        Ok(UniTrivalentTree { degree: s, planar })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn planar(&self) -> &PlanarTree {
        &self.planar
    }

    pub fn legs(&self) -> u32 {
        self.degree + 1
    }

    pub fn internal_vertices(&self) -> u32 {
        self.degree - 1
    }

    pub fn canonical_code(&self) -> String {
        format!("1:{}", self.planar)
    }

    /// Builds a tree from an abstract description: node `i` is a leg when
    /// `positions[i]` is set, and `neighbors[i]` lists adjacent nodes (in
    /// cyclic order for trivalent nodes).
    pub fn from_adjacency(positions: &[Option<u8>], neighbors: &[Vec<usize>]) -> Result<Self> {
        let bad = |why: &str| GwError::Parse(format!("not a unitrivalent tree: {why}"));
        if positions.len() != neighbors.len() {
            return Err(bad("length mismatch"));
        }
        for (i, nb) in neighbors.iter().enumerate() {
            let want = if positions[i].is_some() { 1 } else { 3 };
            if nb.len() != want || nb.iter().any(|&j| j >= neighbors.len() || !neighbors[j].contains(&i)) {
                return Err(bad("bad valence or asymmetric adjacency"));
            }
        }
        let root = positions
            .iter()
            .position(|p| *p == Some(1))
            .ok_or_else(|| bad("no leg at position 1"))?;
        let edges: usize = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        if edges + 1 != neighbors.len() {
            return Err(bad("not a tree"));
        }
        fn walk(pos: &[Option<u8>], nb: &[Vec<usize>], n: usize, from: usize, depth: usize) -> Result<PlanarTree> {
            if depth > nb.len() {
                return Err(GwError::Parse("not a unitrivalent tree: cycle".into()));
            }
            if let Some(p) = pos[n] {
                return Ok(PlanarTree::Leaf(p));
            }
            let i = nb[n].iter().position(|&m| m == from).unwrap();
            let (x, y) = (nb[n][(i + 1) % 3], nb[n][(i + 2) % 3]);
            Ok(PlanarTree::node(walk(pos, nb, x, n, depth + 1)?, walk(pos, nb, y, n, depth + 1)?))
        }
        let top = neighbors[root][0];
        let planar = match positions[top] {
            Some(p) if neighbors.len() == 2 => PlanarTree::Leaf(p),
            Some(_) => return Err(bad("disconnected")),
            None => walk(positions, neighbors, top, root, 0)?,
        };
        if planar.leaves().len() + 1 != positions.iter().flatten().count() {
            return Err(bad("disconnected"));
        }
        UniTrivalentTree::new(planar)
    }

    pub fn parse_code(code: &str) -> Result<Self> {
        let body = code
            .trim()
            .strip_prefix("1:")
            .ok_or_else(|| GwError::Parse(format!("tree code `{code}` must start with `1:`")))?;
        let bytes = body.as_bytes();
        let mut pos = 0;
        let t = parse_planar(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(GwError::Parse(format!("trailing input in tree code `{code}`")));
        }
        UniTrivalentTree::new(t)
    }
}

fn parse_planar(b: &[u8], pos: &mut usize) -> Result<PlanarTree> {
    let at = *pos;
    let err = || GwError::Parse(format!("malformed tree code near byte {at}"));
    match b.get(*pos) {
        Some(b'[') => {
            *pos += 1;
            let l = parse_planar(b, pos)?;
            if b.get(*pos) != Some(&b',') {
                return Err(err());
            }
            *pos += 1;
            let r = parse_planar(b, pos)?;
            if b.get(*pos) != Some(&b']') {
                return Err(err());
            }
            *pos += 1;
            Ok(PlanarTree::node(l, r))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while b.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let n: u8 = std::str::from_utf8(&b[start..*pos])
                .unwrap()
                .parse()
                .map_err(|_| err())?;
            Ok(PlanarTree::Leaf(n))
        }
        _ => Err(err()),
    }
}

impl fmt::Display for UniTrivalentTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_code())
    }
}

/// Planar binary shapes with `n` leaves, leaves numbered left to right from 0.
fn shapes(n: usize) -> Vec<PlanarTree> {
    fn go(lo: u8, n: usize) -> Vec<PlanarTree> {
        if n == 1 {
            return vec![PlanarTree::Leaf(lo)];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for a in go(lo, k) {
                for b in go(lo + k as u8, n - k) {
                    out.push(PlanarTree::node(a.clone(), b));
                }
            }
        }
        out
    }
    go(0, n)
}

fn relabel(t: &PlanarTree, labels: &[u8]) -> PlanarTree {
    match t {
        PlanarTree::Leaf(i) => PlanarTree::Leaf(labels[*i as usize]),
        PlanarTree::Node(a, b) => PlanarTree::node(relabel(a, labels), relabel(b, labels)),
    }
}

/// Every degree-`s` generator, sorted by canonical code.
///
/// There are `Catalan(s-1)·s!` of them: 1, 2, 12, 120, 1680, 30240.
pub fn enumerate_trees(s: u32) -> Result<Vec<UniTrivalentTree>> {
    if s == 0 || s > TREE_DEGREE_BOUND {
        return Err(out_of_range("s", i64::from(s), format!("1 <= s <= {TREE_DEGREE_BOUND}")));
    }
    let shapes = shapes(s as usize);
    let mut out: Vec<(String, UniTrivalentTree)> = Vec::new();
    for perm in (2..=(s as u8 + 1)).permutations(s as usize) {
        for sh in &shapes {
            let t = UniTrivalentTree {
                degree: s,
                planar: relabel(sh, &perm),
            };
            out.push((t.canonical_code(), t));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, t)| t).collect())
}
