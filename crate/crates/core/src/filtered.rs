//! Spectral sequences of finite filtered complexes over a field.
//!
//! Cells sit at bidegree `(-s, q)`; the differential lowers `q - s` by one and
//! never lowers `s`. A component raising `s` by `r` contributes to `d_r`.
//! All pages are read off from one persistence-style column reduction: each
//! pair `(target, source)` with `s`-gap `r` is a nonzero `d_r`, and a cell
//! survives to `E^r` when unpaired or paired with gap at least `r`.

use std::collections::BTreeMap;

use crate::abelian::field::{column_eliminate, Field, SparseVec};
use crate::abelian::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub s: u32,
    pub q: u32,
}

impl Cell {
    fn total(&self) -> i64 {
        i64::from(self.q) - i64::from(self.s)
    }
}

/// A filtered complex: `boundary[j]` is `d(cell j)` in cell indices.
#[derive(Clone, Debug)]
pub struct FilteredComplex<F: Field> {
    pub field: F,
    pub cells: Vec<Cell>,
    pub boundary: Vec<SparseVec<F::Elem>>,
}

/// Pairs found by the reduction, as cell indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Barcode {
    /// `(target, source)`: `d(source)` hits `target` first
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<usize>,
}

impl<F: Field> FilteredComplex<F> {
    /// Checks degree and filtration compatibility of every boundary entry.
    pub fn validate(&self) -> Result<(), String> {
        if self.cells.len() != self.boundary.len() {
            return Err("cell and boundary counts differ".into());
        }
        for (j, col) in self.boundary.iter().enumerate() {
            let cj = self.cells[j];
            for (i, _) in col {
                let ci = *self.cells.get(*i).ok_or("boundary index out of range")?;
                if ci.s < cj.s || ci.total() != cj.total() - 1 {
                    return Err(format!("entry {ci:?} in d({cj:?}) breaks the grading"));
                }
            }
        }
        Ok(())
    }

    /// Persistence pairing with cells ordered by `s` descending, then `q`
    /// ascending, so that every prefix is a subcomplex.
    pub fn barcode(&self) -> Barcode {
        let n = self.cells.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| (std::cmp::Reverse(self.cells[j].s), self.cells[j].q, j));
        let mut pos = vec![0; n];
        for (p, &j) in order.iter().enumerate() {
            pos[j] = p;
        }
        let columns: Vec<SparseVec<F::Elem>> = order
            .iter()
            .map(|&j| {
                let mut c: SparseVec<F::Elem> = self.boundary[j]
                    .iter()
                    .map(|(i, v)| (pos[*i], v.clone()))
                    .collect();
                c.sort_by_key(|e| e.0);
                c
            })
            .collect();
        let (_, lows, _) = column_eliminate(&self.field, &columns, false);
        let mut paired = vec![false; n];
        let mut pairs = Vec::new();
        for (p, low) in lows.iter().enumerate() {
            if let Some(l) = low {
                paired[*l] = true;
                paired[p] = true;
                pairs.push((order[*l], order[p]));
            }
        }
        pairs.sort();
        let unpaired = (0..n).filter(|&j| !paired[pos[j]]).collect();
        Barcode { pairs, unpaired }
    }
}

/// Pages `E¹..E^{r_max}` read from a barcode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pages {
    /// `dims[r-1][(s,q)]`, zero entries omitted
    pub dims: Vec<BTreeMap<(u32, u32), usize>>,
    /// `d_r` as matchings: `(r, source cell, target cell)` for each bar of length `r`
    pub hits: Vec<(u32, Cell, Cell)>,
}

pub fn pages_from_barcode(cells: &[Cell], bc: &Barcode, r_max: u32) -> Pages {
    let mut dims = Vec::new();
    for r in 1..=r_max {
        let mut m: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        let mut bump = |c: Cell| *m.entry((c.s, c.q)).or_insert(0) += 1;
        for &j in &bc.unpaired {
            bump(cells[j]);
        }
        for &(t, s) in &bc.pairs {
            if cells[t].s - cells[s].s >= r {
                bump(cells[t]);
                bump(cells[s]);
            }
        }
        dims.push(m);
    }
    let mut hits: Vec<(u32, Cell, Cell)> = bc
        .pairs
        .iter()
        .map(|&(t, s)| (cells[t].s - cells[s].s, cells[s], cells[t]))
        .filter(|(r, _, _)| *r >= 1 && *r <= r_max)
        .collect();
    hits.sort();
    Pages { dims, hits }
}

impl Pages {
    pub fn dim(&self, r: u32, s: u32, q: u32) -> usize {
        self.dims[(r - 1) as usize].get(&(s, q)).copied().unwrap_or(0)
    }

    /// Rank of `d_r` leaving `(s,q)`.
    pub fn rank(&self, r: u32, s: u32, q: u32) -> usize {
        self.hits
            .iter()
            .filter(|(rr, src, _)| *rr == r && src.s == s && src.q == q)
            .count()
    }

    /// Matrix of `d_r: E^r_{(s,q)} → E^r_{(s+r,q+r-1)}` in the bar basis:
    /// basis elements are the bars alive on page `r`, in bar order.
    pub fn differential_matrix(&self, bc: &Barcode, cells: &[Cell], r: u32, s: u32, q: u32) -> IntMatrix {
        let alive = |c: usize| -> bool {
            bc.unpaired.contains(&c)
                || bc
                    .pairs
                    .iter()
                    .any(|&(t, so)| (t == c || so == c) && cells[t].s - cells[so].s >= r)
        };
        let at = |ss: u32, qq: u32| -> Vec<usize> {
            (0..cells.len())
                .filter(|&c| cells[c].s == ss && cells[c].q == qq && alive(c))
                .collect()
        };
        let src = at(s, q);
        let tgt = at(s + r, q + r - 1);
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for &(t, so) in &bc.pairs {
            if cells[t].s - cells[so].s == r {
                if let (Some(i), Some(j)) = (
                    tgt.iter().position(|&x| x == t),
                    src.iter().position(|&x| x == so),
                ) {
                    m.set(i, j, 1.into());
                }
            }
        }
        m
    }
}
