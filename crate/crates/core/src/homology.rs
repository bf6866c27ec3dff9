//! The homology spectral sequence of the cosimplicial Poisson model:
//! normalized columns, `d₁`, and higher pages over a field.
//!
//! Column `s` in degree `q` is the subspace of the arity-`s` Poisson operad
//! killed by every codegeneracy; `d₁ = Σ (-1)ⁱ dⁱ`. The model carries no
//! internal differential, so every bar found by the reduction has length 1.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::abelian::field::{self, Field, PrimeField, Rationals, SparseVec, SubspaceBasis};
use crate::abelian::matrix::IntMatrix;
use crate::abelian::snf::{kernel_basis, IntColumn, LatticeBasis};
use crate::error::{GwError, Result};
use crate::filtered::{pages_from_barcode, Cell, FilteredComplex};
use crate::page::{BigradedPage, DifferentialRecord, Ring};
use crate::poisson::{codegeneracy, coface, poisson_basis, PoissonElement, PoissonMonomial};

/// `N^s_q` with an explicit basis inside the span of the Poisson monomials.
#[derive(Clone, Debug)]
pub struct ColumnDegree {
    pub s: u32,
    pub q: u32,
    pub ambient: Vec<PoissonMonomial>,
    /// basis vectors as integer columns over `ambient` (residues for `𝔽ₚ`)
    pub basis: Vec<IntColumn>,
}

impl ColumnDegree {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vector `j` as an element over `ring`.
    pub fn element(&self, j: usize, d: u32, ring: Ring) -> Result<PoissonElement> {
        PoissonElement::from_terms(
            ring,
            d,
            self.s as usize,
            self.basis[j]
                .iter()
                .map(|(i, c)| (i64::try_from(c).expect("small coefficient"), self.ambient[*i].clone())),
        )
    }
}

#[derive(Clone, Debug)]
pub struct NormalizedColumn {
    pub s: u32,
    pub degrees: BTreeMap<u32, ColumnDegree>,
}

impl NormalizedColumn {
    pub fn dim(&self, q: u32) -> usize {
        self.degrees.get(&q).map_or(0, ColumnDegree::dim)
    }
}

fn check_ring(ring: Ring) -> Result<()> {
    match ring {
        Ring::Zp(_) => Err(GwError::Unsupported("homology columns over Z(p); use Z or Fp:p".into())),
        _ => Ok(()),
    }
}

fn check_d(d: u32) -> Result<()> {
    if d < 3 {
        Err(GwError::DimensionTooSmall(d))
    } else {
        Ok(())
    }
}

fn index_of(basis: &[PoissonMonomial]) -> HashMap<&PoissonMonomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// `N^s_q` as the joint kernel of the codegeneracies.
pub fn normalized_column(d: u32, s: u32, q: u32, ring: Ring) -> Result<ColumnDegree> {
    check_d(d)?;
    check_ring(ring)?;
    let e = d - 1;
    let empty = |ambient| ColumnDegree {
        s,
        q,
        ambient,
        basis: Vec::new(),
    };
    if !q.is_multiple_of(e) {
        return Ok(empty(Vec::new()));
    }
    let n = (q / e) as usize;
    let ambient = poisson_basis(s as usize, d, n)?;
    if ambient.is_empty() {
        return Ok(empty(ambient));
    }
    if s == 0 {
        let basis = vec![IntColumn::from([(0, BigInt::from(1))])];
        return Ok(ColumnDegree { s, q, ambient, basis });
    }
    let target = poisson_basis(s as usize - 1, d, n)?;
    let tindex = index_of(&target);
    let mut codeg = IntMatrix::zeros(s as usize * target.len(), ambient.len());
    for (c, m) in ambient.iter().enumerate() {
        let x = PoissonElement::from_monomial(Ring::Z, d, m.clone())?;
        for i in 1..=s as usize {
            let y = codegeneracy(s as usize, i, &x)?;
            for (tm, v) in y.terms() {
                let row = (i - 1) * target.len() + tindex[tm];
                codeg.add_to(row, c, &BigInt::from(v));
            }
        }
    }
    let basis = match ring {
        Ring::Fp(p) => {
            let f = PrimeField::new(p)?;
            let cols: Vec<SparseVec<u64>> = codeg
                .columns()
                .iter()
                .map(|c| field::reduce_vector(&f, c))
                .collect();
            field::kernel(&f, &cols)
                .into_iter()
                .map(|v| v.into_iter().map(|(i, x)| (i, BigInt::from(x))).collect())
                .collect()
        }
        _ => {
            let k = kernel_basis(&codeg);
            LatticeBasis::from_matrix(&k).basis().to_vec()
        }
    };
    Ok(ColumnDegree { s, q, ambient, basis })
}

/// All normalized columns `0 ≤ s ≤ s_max`, degrees `0 ≤ q ≤ q_max`.
pub fn normalized_columns(d: u32, s_max: u32, q_max: u32, ring: Ring) -> Result<Vec<NormalizedColumn>> {
    check_d(d)?;
    check_ring(ring)?;
    let e = d - 1;
    let jobs: Vec<(u32, u32)> = (0..=s_max)
        .flat_map(|s| (0..=q_max).step_by(e as usize).map(move |q| (s, q)))
        .collect();
    let built: Vec<ColumnDegree> = jobs
        .par_iter()
        .map(|&(s, q)| normalized_column(d, s, q, ring))
        .collect::<Result<_>>()?;
    let mut cols: Vec<NormalizedColumn> = (0..=s_max)
        .map(|s| NormalizedColumn {
            s,
            degrees: BTreeMap::new(),
        })
        .collect();
    for c in built {
        if c.dim() > 0 {
            cols[c.s as usize].degrees.insert(c.q, c);
        }
    }
    Ok(cols)
}

/// `Σᵢ (-1)ⁱ dⁱ` applied to a basis vector, as integer coordinates on the
/// arity `s+1` monomials of the same weight.
fn alternating_coface(src: &ColumnDegree, j: usize, d: u32, target: &HashMap<&PoissonMonomial, usize>) -> Result<IntColumn> {
    let s = src.s as usize;
    let x = src.element(j, d, Ring::Z)?;
    let mut out = IntColumn::new();
    for i in 0..=s + 1 {
        let y = coface(s, i, &x)?;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for (m, v) in y.terms() {
            let e = out.entry(target[m]).or_insert_with(BigInt::zero);
            *e += sign * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

enum Coordinates {
    Lattice(LatticeBasis),
    Prime(PrimeField, SubspaceBasis<PrimeField>),
}

impl Coordinates {
    fn new(col: &ColumnDegree, ring: Ring) -> Result<Self> {
        let dim = col.ambient.len();
        Ok(match ring {
            Ring::Fp(p) => {
                let f = PrimeField::new(p)?;
                let vecs: Vec<SparseVec<u64>> = col
                    .basis
                    .iter()
                    .map(|c| field::reduce_vector(&f, &c.iter().map(|(i, v)| (*i, v.clone())).collect::<Vec<_>>()))
                    .collect();
                Coordinates::Prime(f, SubspaceBasis::new(f, dim, &vecs))
            }
            _ => Coordinates::Lattice(LatticeBasis::new(dim, &col.basis)),
        })
    }

    fn of(&self, v: &IntColumn) -> Vec<BigInt> {
        match self {
            Coordinates::Lattice(l) => l.coordinates(v).expect("coface image stays in the normalized column"),
            Coordinates::Prime(f, b) => {
                let w = field::reduce_vector(f, &v.iter().map(|(i, x)| (*i, x.clone())).collect::<Vec<_>>());
                b.coordinates(&w)
                    .expect("coface image stays in the normalized column")
                    .into_iter()
                    .map(BigInt::from)
                    .collect()
            }
        }
    }
}

fn d1_between(src: &ColumnDegree, tgt: &ColumnDegree, d: u32, ring: Ring) -> Result<IntMatrix> {
    let mut m = IntMatrix::zeros(tgt.dim(), src.dim());
    if src.dim() == 0 || tgt.dim() == 0 {
        return Ok(m);
    }
    let tindex = index_of(&tgt.ambient);
    let coords = Coordinates::new(tgt, ring)?;
    for j in 0..src.dim() {
        let img = alternating_coface(src, j, d, &tindex)?;
        for (i, c) in coords.of(&img).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Matrix of `d₁: N^s_q → N^{s+1}_q` in the normalized bases; residues for `𝔽ₚ`.
pub fn d1_matrix(d: u32, s: u32, q: u32, ring: Ring) -> Result<IntMatrix> {
    let src = normalized_column(d, s, q, ring)?;
    let tgt = normalized_column(d, s + 1, q, ring)?;
    d1_between(&src, &tgt, d, ring)
}

/// `true` iff `r = 1 + n(d-1)(p-1)` for some `n ≥ 0`.
pub fn thm_d_allowed(p: u64, d: u32, r: u32) -> Result<bool> {
    crate::abelian::group::require_prime(p)?;
    check_d(d)?;
    if r == 0 {
        return Err(crate::error::out_of_range("r", 0, "r >= 1"));
    }
    let m = u64::from(d - 1) * (p - 1);
    Ok(u64::from(r - 1) % m == 0)
}

/// Computed differential in the bar basis.
#[derive(Clone, Debug)]
pub struct Differential {
    pub r: u32,
    pub from: (u32, u32),
    pub to: (u32, u32),
    pub matrix: IntMatrix,
}

impl Differential {
    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Pages `E¹..E^{r_max}` on a finite region.
#[derive(Clone, Debug)]
pub struct SsComputation {
    pub d: u32,
    pub ring: Ring,
    pub s_max: u32,
    pub q_max: u32,
    pub pages: Vec<BigradedPage>,
    pub differentials: Vec<Differential>,
    /// `d₁` in the normalized bases, keyed by source bidegree
    pub d1: BTreeMap<(u32, u32), IntMatrix>,
}

impl SsComputation {
    pub fn page(&self, r: u32) -> &BigradedPage {
        &self.pages[(r - 1) as usize]
    }
}

/// `(s,q)` on page `r` depends only on data inside the region.
fn edge_complete(s: u32, q: u32, r: u32, s_max: u32, q_max: u32) -> bool {
    s + r <= s_max + 1 && q + r <= q_max + 2
}

/// Builds the filtered total complex and reads off pages `1..=r_max`.
pub fn compute_page(d: u32, ring: Ring, r_max: u32, s_max: u32, q_max: u32) -> Result<SsComputation> {
    check_d(d)?;
    check_ring(ring)?;
    if r_max == 0 {
        return Err(crate::error::out_of_range("r_max", 0, "r_max >= 1"));
    }
    if ring == Ring::Z && r_max >= 2 {
        return Err(GwError::Unsupported(
            "pages beyond E1 are computed over a field only (Q or Fp:p); over Z only E1 is available".into(),
        ));
    }
    let cols = normalized_columns(d, s_max, q_max, ring)?;
    let e = d - 1;
    // d₁ for every source column with a target inside the region
    let jobs: Vec<(u32, u32)> = (0..s_max)
        .flat_map(|s| (0..=q_max).step_by(e as usize).map(move |q| (s, q)))
        .filter(|&(s, q)| cols[s as usize].dim(q) > 0 && cols[s as usize + 1].dim(q) > 0)
        .collect();
    let mats: Vec<((u32, u32), IntMatrix)> = jobs
        .par_iter()
        .map(|&(s, q)| {
            let src = &cols[s as usize].degrees[&q];
            let tgt = &cols[s as usize + 1].degrees[&q];
            d1_between(src, tgt, d, ring).map(|m| ((s, q), m))
        })
        .collect::<Result<_>>()?;
    let d1: BTreeMap<(u32, u32), IntMatrix> = mats.into_iter().collect();

    let (dims, records, diffs) = match ring {
        Ring::Fp(p) => spectral(PrimeField::new(p)?, &cols, &d1, r_max),
        _ => spectral(Rationals, &cols, &d1, r_max),
    };

    let mut pages = Vec::new();
    for r in 1..=r_max {
        let mut page = BigradedPage::zero(ring, r, d, s_max, q_max);
        for entry in &mut page.entries {
            entry.rank = dims[(r - 1) as usize]
                .get(&(entry.s, entry.t))
                .copied()
                .unwrap_or(0)
                .into();
            entry.edge_incomplete = !edge_complete(entry.s, entry.t, r, s_max, q_max);
        }
        page.differentials = Some(
            records
                .iter()
                .filter(|rec| rec.r == r)
                .cloned()
                .collect(),
        );
        pages.push(page);
    }
    Ok(SsComputation {
        d,
        ring,
        s_max,
        q_max,
        pages,
        differentials: diffs,
        d1,
    })
}

type Dims = Vec<BTreeMap<(u32, u32), usize>>;

fn spectral<F: Field>(
    f: F,
    cols: &[NormalizedColumn],
    d1: &BTreeMap<(u32, u32), IntMatrix>,
    r_max: u32,
) -> (Dims, Vec<DifferentialRecord>, Vec<Differential>) {
    // one cell per basis vector
    let mut cells = Vec::new();
    let mut offset: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for col in cols {
        for (&q, deg) in &col.degrees {
            offset.insert((col.s, q), cells.len());
            cells.extend(std::iter::repeat_n(Cell { s: col.s, q }, deg.dim()));
        }
    }
    let mut boundary: Vec<SparseVec<F::Elem>> = vec![Vec::new(); cells.len()];
    for (&(s, q), m) in d1 {
        let src = offset[&(s, q)];
        let tgt = offset[&(s + 1, q)];
        for (j, col) in m.columns().into_iter().enumerate() {
            let mut v: SparseVec<F::Elem> = col
                .into_iter()
                .map(|(i, x)| (tgt + i, f.from_bigint(&x)))
                .filter(|(_, x)| !f.is_zero(x))
                .collect();
            v.sort_by_key(|e| e.0);
            boundary[src + j] = v;
        }
    }
    let fc = FilteredComplex { field: f, cells, boundary };
    debug_assert!(fc.validate().is_ok());
    let bc = fc.barcode();
    let pages = pages_from_barcode(&fc.cells, &bc, r_max);

    let mut records = Vec::new();
    let mut diffs = Vec::new();
    let bidegrees: Vec<(u32, u32)> = offset.keys().copied().collect();
    for r in 1..=r_max {
        for &(s, q) in &bidegrees {
            let to = (s + r, q + r - 1);
            if !offset.contains_key(&to) {
                continue;
            }
            if pages.dim(r, s, q) == 0 || pages.dim(r, to.0, to.1) == 0 {
                continue;
            }
            let matrix = pages.differential_matrix(&bc, &fc.cells, r, s, q);
            records.push(DifferentialRecord {
                r,
                from: [s, q],
                to: [to.0, to.1],
                rank: pages.rank(r, s, q) as u64,
            });
            diffs.push(Differential {
                r,
                from: (s, q),
                to,
                matrix,
            });
        }
    }
    (pages.dims, records, diffs)
}
