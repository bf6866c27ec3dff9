//! Unitrivalent graphs on a line, general enough to hold the one-loop
//! diagram that sits in the middle of an STU² move.

use std::collections::VecDeque;

use super::trees::{PlanarTree, UniTrivalentTree};

/// Legs carry a line position; trivalent vertices carry a cyclic edge order.
#[derive(Clone, Debug)]
pub(crate) struct Graph {
    pos: Vec<Option<u8>>,
    inc: Vec<Vec<usize>>,
    ends: Vec<[usize; 2]>,
    dead: Vec<bool>,
}

impl Graph {
    fn add_node(&mut self, pos: Option<u8>) -> usize {
        self.pos.push(pos);
        self.inc.push(Vec::new());
        self.dead.push(false);
        self.pos.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.ends.push([a, b]);
        self.ends.len() - 1
    }

    pub(crate) fn from_tree(t: &UniTrivalentTree) -> Graph {
        fn build(g: &mut Graph, t: &PlanarTree, parent_edge: usize) -> usize {
            match t {
                PlanarTree::Leaf(l) => {
                    let n = g.add_node(Some(*l));
                    g.inc[n].push(parent_edge);
                    n
                }
                PlanarTree::Node(a, b) => {
                    let n = g.add_node(None);
                    let ea = g.add_edge(n, usize::MAX);
                    let eb = g.add_edge(n, usize::MAX);
                    g.inc[n] = vec![parent_edge, ea, eb];
                    let na = build(g, a, ea);
                    g.ends[ea][1] = na;
                    let nb = build(g, b, eb);
                    g.ends[eb][1] = nb;
                    n
                }
            }
        }
        let mut g = Graph { pos: Vec::new(), inc: Vec::new(), ends: Vec::new(), dead: Vec::new() };
        let root = g.add_node(Some(1));
        let e = g.add_edge(root, usize::MAX);
        g.inc[root].push(e);
        let top = build(&mut g, t.planar(), e);
        g.ends[e][1] = top;
        g
    }

    fn other_end(&self, e: usize, x: usize) -> usize {
        let [a, b] = self.ends[e];
        if a == x {
            b
        } else {
            a
        }
    }

    fn replace_end(&mut self, e: usize, old: usize, new: usize) {
        let slot = if self.ends[e][0] == old { 0 } else { 1 };
        debug_assert_eq!(self.ends[e][slot], old);
        self.ends[e][slot] = new;
    }

    fn leg_at(&self, p: u8) -> usize {
        (0..self.pos.len())
            .find(|&n| !self.dead[n] && self.pos[n] == Some(p))
            .expect("no leg at that position")
    }

    fn is_leg(&self, n: usize) -> bool {
        self.pos[n].is_some()
    }

    fn shift_positions(&mut self, above: u8, by: i8) {
        for n in 0..self.pos.len() {
            if self.dead[n] {
                continue;
            }
            if let Some(p) = self.pos[n].as_mut() {
                if *p > above {
                    *p = (*p as i8 + by) as u8;
                }
            }
        }
    }

    fn kill(&mut self, n: usize) {
        self.dead[n] = true;
        self.pos[n] = None;
    }

    /// Reads the graph back as a tree rooted at position 1.
    pub(crate) fn to_tree(&self) -> UniTrivalentTree {
        fn walk(g: &Graph, n: usize, via: usize) -> PlanarTree {
            if let Some(p) = g.pos[n] {
                return PlanarTree::Leaf(p);
            }
            let inc = &g.inc[n];
            let i = inc.iter().position(|&e| e == via).expect("edge not incident");
            let x = inc[(i + 1) % 3];
            let y = inc[(i + 2) % 3];
            PlanarTree::node(walk(g, g.other_end(x, n), x), walk(g, g.other_end(y, n), y))
        }
        let root = self.leg_at(1);
        let e = self.inc[root][0];
        let t = walk(self, self.other_end(e, root), e);
        UniTrivalentTree::new(t).expect("graph is a tree on consecutive positions")
    }

    /// Exchanges the legs in positions `k` and `k+1`.
    pub(crate) fn swap_positions(&self, k: u8) -> Graph {
        let mut g = self.clone();
        let a = g.leg_at(k);
        let b = g.leg_at(k + 1);
        g.pos[a] = Some(k + 1);
        g.pos[b] = Some(k);
        g
    }

    /// Internal vertices on the path between two legs.
    pub(crate) fn path_vertices(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.pos.len()];
        let mut queue = VecDeque::from([from]);
        prev[from] = from;
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &e in &self.inc[x] {
                let y = self.other_end(e, x);
                if prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut out = Vec::new();
        let mut x = prev[to];
        while x != from {
            out.push(x);
            x = prev[x];
        }
        out.reverse();
        out
    }

    /// Joins the legs at positions `k`, `k+1` at a new vertex whose stem
    /// lands at position `k`; orientation (stem, left branch, right branch).
    /// Returns the merged graph and the stem leg.
    pub(crate) fn merge_adjacent(&self, k: u8) -> (Graph, usize) {
        let mut g = self.clone();
        let a = g.leg_at(k);
        let b = g.leg_at(k + 1);
        let ea = g.inc[a][0];
        let eb = g.inc[b][0];
        let v = g.add_node(None);
        g.replace_end(ea, a, v);
        g.replace_end(eb, b, v);
        g.kill(a);
        g.kill(b);
        g.shift_positions(k + 1, -1);
        let stem = g.add_node(Some(k));
        let es = g.add_edge(stem, v);
        g.inc[stem].push(es);
        g.inc[v] = vec![es, ea, eb];
        (g, stem)
    }

    /// Opens the vertex carrying leg `c`: with orientation `(c, f1, f2)` the
    /// branches land at positions `j, j+1` in the order `f1, f2`, or
    /// `f2, f1` when `flip` is set.
    pub(crate) fn split_leg(&self, c: usize, flip: bool) -> Graph {
        let mut g = self.clone();
        let ec = g.inc[c][0];
        let w = g.other_end(ec, c);
        let i = g.inc[w].iter().position(|&e| e == ec).unwrap();
        let (mut f1, mut f2) = (g.inc[w][(i + 1) % 3], g.inc[w][(i + 2) % 3]);
        if flip {
            std::mem::swap(&mut f1, &mut f2);
        }
        let j = g.pos[c].unwrap();
        g.kill(c);
        g.kill(w);
        g.shift_positions(j, 1);
        for (f, p) in [(f1, j), (f2, j + 1)] {
            let l = g.add_node(Some(p));
            g.inc[l].push(f);
            g.replace_end(f, w, l);
        }
        g
    }

    /// The leg hanging off internal vertex `w`, if its third edge is a leg.
    pub(crate) fn pendant_leg(&self, w: usize, path_neighbors: [usize; 2]) -> Option<usize> {
        self.inc[w]
            .iter()
            .map(|&e| self.other_end(e, w))
            .find(|n| !path_neighbors.contains(n))
            .filter(|&n| self.is_leg(n))
    }

    pub(crate) fn leg_node(&self, p: u8) -> usize {
        self.leg_at(p)
    }
}
