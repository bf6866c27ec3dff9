//! Smith normal form over the integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// with each nonzero diagonal entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The nonzero diagonal entries of `d`, in order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i))
            .take_while(|v| !v.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

struct Dense {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

impl Dense {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.a {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let (src, dst) = borrow_two(&mut self.a, j, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d += q * s;
            }
        }
        if let Some(u) = &mut self.u {
            let (src, dst) = borrow_two(u, j, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d += q * s;
                }
            }
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in &mut self.a {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] += t;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] += t;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -&*x;
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|b| ax < b.2) {
                    let one = ax.is_one();
                    best = Some((i, j, ax));
                    if one {
                        let b = best.unwrap();
                        return Some((b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_entry(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    // move the smallest remaining entry of row/column t into the pivot
                    let mut best = (t, t, self.a[t][t].abs());
                    for i in t + 1..self.rows {
                        let x = &self.a[i][t];
                        if !x.is_zero() && x.abs() < best.2 {
                            best = (i, t, x.abs());
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = &self.a[t][j];
                        if !x.is_zero() && x.abs() < best.2 {
                            best = (t, j, x.abs());
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // the pivot must divide the remaining block
                let pivot = self.a[t][t].clone();
                let bad = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !(&self.a[i][j] % &pivot).is_zero())
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

fn borrow_two<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

/// Smith normal form with unimodular transforms. Deterministic for fixed input.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Dense {
        a: m.to_dense(),
        u: Some(identity(rows)),
        v: Some(identity(cols)),
        rows,
        cols,
    };
    w.run();
    SnfResult {
        u: IntMatrix::from_dense(&w.u.unwrap(), rows),
        d: IntMatrix::from_dense(&w.a, cols),
        v: IntMatrix::from_dense(&w.v.unwrap(), cols),
    }
}

fn dense_diagonal(a: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = a.len();
    let mut w = Dense {
        a,
        u: None,
        v: None,
        rows,
        cols,
    };
    w.run();
    (0..rows.min(cols))
        .map(|i| w.a[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect()
}

/// Nonzero invariant factors of `m` (including the unit ones), in divisibility order.
///
/// Unit pivots are eliminated on the sparse structure first; only the residual
/// block goes through dense Smith reduction.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m.rows()];
    for (r, c, v) in m.iter() {
        rows[r].insert(c, v.clone());
    }
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }
    let mut alive = vec![true; m.rows()];
    let mut units = 0usize;

    loop {
        let mut order: Vec<usize> = (0..rows.len())
            .filter(|&r| alive[r] && !rows[r].is_empty())
            .collect();
        order.sort_by_key(|&r| (rows[r].len(), r));
        let mut progress = false;
        for r in order {
            if !alive[r] || rows[r].is_empty() {
                continue;
            }
            let pivot = rows[r]
                .iter()
                .filter(|(_, v)| v.abs().is_one())
                .min_by_key(|(c, _)| (col_rows[**c].len(), **c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((pc, pv)) = pivot else {
                continue;
            };
            let pivot_row = std::mem::take(&mut rows[r]);
            let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&o| o != r).collect();
            for o in others {
                let factor = &rows[o][&pc] * &pv;
                for (c, v) in &pivot_row {
                    let e = rows[o].entry(*c).or_default();
                    *e -= &factor * v;
                    if e.is_zero() {
                        rows[o].remove(c);
                        col_rows[*c].remove(&o);
                    } else {
                        col_rows[*c].insert(o);
                    }
                }
                if rows[o].is_empty() {
                    alive[o] = false;
                }
            }
            for c in pivot_row.keys() {
                col_rows[*c].remove(&r);
            }
            alive[r] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let live_rows: Vec<usize> = (0..rows.len())
        .filter(|&r| alive[r] && !rows[r].is_empty())
        .collect();
    let live_cols: Vec<usize> = (0..col_rows.len())
        .filter(|&c| !col_rows[c].is_empty())
        .collect();
    let mut factors = vec![BigInt::one(); units];
    if !live_rows.is_empty() {
        let col_index: BTreeMap<usize, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dense: Vec<Vec<BigInt>> = live_rows
            .iter()
            .map(|&r| {
                let mut row = vec![BigInt::zero(); live_cols.len()];
                for (c, v) in &rows[r] {
                    row[col_index[c]] = v.clone();
                }
                row
            })
            .collect();
        factors.extend(dense_diagonal(dense, live_cols.len()));
    }
    factors
}

/// Sparse column vectors over the integers, sorted by row index.
pub type IntColumn = BTreeMap<usize, BigInt>;

/// Result of integer column reduction: reduced columns, the pivot row of each
/// reduced column (or `None` when the column became zero), and optionally the
/// unimodular transform whose columns produce the reduced columns.
pub(crate) struct ColumnReduction {
    pub columns: Vec<IntColumn>,
    pub pivots: Vec<Option<usize>>,
    pub transform: Option<Vec<IntColumn>>,
}

/// Unimodular column reduction to column echelon form.
///
/// Processes rows top to bottom; at each row the active columns are combined by
/// Euclidean steps until at most one has a nonzero entry there, which becomes a
/// pivot column.
pub(crate) fn column_reduce(
    nrows: usize,
    mut columns: Vec<IntColumn>,
    track: bool,
) -> ColumnReduction {
    let ncols = columns.len();
    let mut transform: Option<Vec<IntColumn>> = track.then(|| {
        (0..ncols)
            .map(|j| {
                let mut c = IntColumn::new();
                c.insert(j, BigInt::one());
                c
            })
            .collect()
    });
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for &r in col.keys() {
            row_cols[r].insert(j);
        }
    }
    let mut active = vec![true; ncols];
    let mut pivots = vec![None; ncols];

    for r in 0..nrows {
        loop {
            let cands: Vec<usize> = row_cols[r].iter().copied().filter(|&j| active[j]).collect();
            if cands.is_empty() {
                break;
            }
            if cands.len() == 1 {
                let j = cands[0];
                active[j] = false;
                pivots[j] = Some(r);
                break;
            }
            let p = *cands
                .iter()
                .min_by(|&&a, &&b| {
                    columns[a][&r]
                        .abs()
                        .cmp(&columns[b][&r].abs())
                        .then(columns[a].len().cmp(&columns[b].len()))
                        .then(a.cmp(&b))
                })
                .unwrap();
            let pcol = columns[p].clone();
            let pval = pcol[&r].clone();
            let ptrans = transform.as_ref().map(|t| t[p].clone());
            for &j in &cands {
                if j == p {
                    continue;
                }
                let q = &columns[j][&r] / &pval;
                if q.is_zero() {
                    continue;
                }
                axpy_column(&mut columns[j], &pcol, &q, Some((j, &mut row_cols)));
                if let (Some(t), Some(pt)) = (transform.as_mut(), ptrans.as_ref()) {
                    axpy_column(&mut t[j], pt, &q, None);
                }
            }
        }
    }
    ColumnReduction {
        columns,
        pivots,
        transform,
    }
}

/// `dst -= q * src`, keeping the row index in sync when given.
fn axpy_column(
    dst: &mut IntColumn,
    src: &IntColumn,
    q: &BigInt,
    mut index: Option<(usize, &mut Vec<BTreeSet<usize>>)>,
) {
    for (r, v) in src {
        let e = dst.entry(*r).or_default();
        *e -= q * v;
        let zero = e.is_zero();
        if zero {
            dst.remove(r);
        }
        if let Some((j, idx)) = index.as_mut() {
            if zero {
                idx[*r].remove(j);
            } else {
                idx[*r].insert(*j);
            }
        }
    }
}

/// A saturated basis of the integer kernel of `m`, as the columns of the result.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let columns: Vec<IntColumn> = m
        .columns()
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    let red = column_reduce(m.rows(), columns, true);
    let transform = red.transform.unwrap();
    let kernel: Vec<Vec<(usize, BigInt)>> = (0..m.cols())
        .filter(|&j| red.pivots[j].is_none())
        .map(|j| transform[j].iter().map(|(r, v)| (*r, v.clone())).collect())
        .collect();
    IntMatrix::from_columns(m.cols(), &kernel)
}

/// A basis of a sublattice of ℤⁿ in column echelon form, supporting exact
/// coordinate recovery.
#[derive(Clone, Debug)]
pub struct LatticeBasis {
    dim: usize,
    columns: Vec<IntColumn>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    /// Brings linearly independent columns into echelon form (same lattice).
    ///
    /// Panics if the columns are linearly dependent.
    pub fn new(dim: usize, vectors: &[IntColumn]) -> Self {
        let red = column_reduce(dim, vectors.to_vec(), false);
        let mut pairs: Vec<(usize, IntColumn)> = red
            .columns
            .into_iter()
            .zip(red.pivots)
            .map(|(c, p)| (p.expect("lattice generators are linearly dependent"), c))
            .collect();
        pairs.sort_by_key(|p| p.0);
        let (pivots, columns) = pairs.into_iter().unzip();
        LatticeBasis {
            dim,
            columns,
            pivots,
        }
    }

    pub fn from_matrix(m: &IntMatrix) -> Self {
        let cols: Vec<IntColumn> = m
            .columns()
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        LatticeBasis::new(m.rows(), &cols)
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[IntColumn] {
        &self.columns
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is not in the lattice.
    pub fn coordinates(&self, v: &IntColumn) -> Option<Vec<BigInt>> {
        let mut rest = v.clone();
        let mut coords = Vec::with_capacity(self.columns.len());
        for (col, &p) in self.columns.iter().zip(&self.pivots) {
            let x = rest.get(&p).cloned().unwrap_or_default();
            let piv = &col[&p];
            if !(&x % piv).is_zero() {
                return None;
            }
            let c = &x / piv;
            if !c.is_zero() {
                axpy_column(&mut rest, col, &c, None);
            }
            coords.push(c);
        }
        rest.is_empty().then_some(coords)
    }
}
