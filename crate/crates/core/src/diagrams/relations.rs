//! AS, IHX and STU² relation rows and the groups they present.
//!
//! AS and IHX are generated on the fly. STU² rows come from a versioned data
//! file (`data/stu2_relations.txt`, embedded at build time and overridable
//! through `GWT_RELATION_DATA`). The file is produced by [`build_stu2`]; the
//! move it encodes is: for a tree `T` and adjacent positions `k, k+1`, join
//! the two legs at a new vertex to get a one-loop diagram `U`, so that
//! `U = T - T'` with `T'` the swapped tree. For every other leg `c` whose
//! vertex `w` sits on the loop, with `w` oriented `(c, f1, f2)`, STU at `c`
//! gives `U = T2(f1,f2) - T2(f2,f1)`. The row is the difference of the two
//! expansions. Degree 1 carries the single row `strut = 0`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::graph::Graph;
use super::trees::{enumerate_trees, PlanarTree, UniTrivalentTree};
use crate::abelian::{cokernel, AbelianGroup, IntMatrix};
use crate::error::{out_of_range, GwError, Result};

const EMBEDDED_DATA: &str = include_str!("../../data/stu2_relations.txt");

/// Environment variable naming an alternative relation data file.
pub const RELATION_DATA_ENV: &str = "GWT_RELATION_DATA";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    As,
    Ihx,
    Stu2,
}

impl FromStr for RelationKind {
    type Err = GwError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "as" => Ok(RelationKind::As),
            "ihx" => Ok(RelationKind::Ihx),
            "stu2" | "stu²" => Ok(RelationKind::Stu2),
            other => Err(GwError::UnknownRelation(other.to_string())),
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::As => "as",
            RelationKind::Ihx => "ihx",
            RelationKind::Stu2 => "stu2",
        })
    }
}

/// A set of relation flags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationSet(BTreeSet<RelationKind>);

impl RelationSet {
    pub fn all() -> Self {
        RelationSet([RelationKind::As, RelationKind::Ihx, RelationKind::Stu2].into())
    }

    pub fn new(kinds: impl IntoIterator<Item = RelationKind>) -> Self {
        RelationSet(kinds.into_iter().collect())
    }

    pub fn contains(&self, k: RelationKind) -> bool {
        self.0.contains(&k)
    }

    pub fn kinds(&self) -> impl Iterator<Item = RelationKind> + '_ {
        self.0.iter().copied()
    }
}

/// Comma separated, e.g. `as,ihx,stu2`.
impl FromStr for RelationSet {
    type Err = GwError;
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(RelationKind::from_str)
            .collect::<Result<BTreeSet<_>>>()
            .map(RelationSet)
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A signed combination of generators, read as `Σ cᵢ·codeᵢ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub terms: BTreeMap<String, i64>,
}

impl Relation {
    fn from_trees(terms: impl IntoIterator<Item = (i64, UniTrivalentTree)>) -> Relation {
        let mut map = BTreeMap::new();
        for (c, t) in terms {
            *map.entry(t.canonical_code()).or_insert(0) += c;
        }
        map.retain(|_, c| *c != 0);
        Relation { terms: map }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sign-normalized so the first coefficient is positive.
    fn normalized(mut self) -> Relation {
        if self.terms.values().next().is_some_and(|&c| c < 0) {
            self.terms.values_mut().for_each(|c| *c = -*c);
        }
        self
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (code, &c)) in self.terms.iter().enumerate() {
            let sep = match (i, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}{}·{code}", c.abs())?;
        }
        f.write_str(" = 0")
    }
}

/// AS rows: `T + T'` with `T'` the tree flipped at one internal vertex.
pub fn as_relations(s: u32) -> Result<Vec<Relation>> {
    let trees = enumerate_trees(s)?;
    Ok(trees
        .par_iter()
        .flat_map_iter(|t| {
            t.planar().node_paths().into_iter().map(move |path| {
                let flipped = t.planar().replace_at(&path, &|n| match n {
                    PlanarTree::Node(a, b) => PlanarTree::Node(b.clone(), a.clone()),
                    leaf => leaf.clone(),
                });
                Relation::from_trees([(1, t.clone()), (1, tree(flipped))])
            })
        })
        .collect())
}

fn tree(p: PlanarTree) -> UniTrivalentTree {
    UniTrivalentTree::new(p).expect("relabeling preserves the leg set")
}

/// IHX rows, one per internal edge: the Jacobi sum at the upper vertex.
pub fn ihx_relations(s: u32) -> Result<Vec<Relation>> {
    let trees = enumerate_trees(s)?;
    Ok(trees
        .par_iter()
        .flat_map_iter(|t| {
            let mut rows = Vec::new();
            for path in t.planar().node_paths() {
                let PlanarTree::Node(x, y) = t.planar().at(&path) else {
                    unreachable!()
                };
                for (inner, other) in [(x, y), (y, x)] {
                    let PlanarTree::Node(a, b) = &**inner else { continue };
                    let (a, b, c) = (&**a, &**b, &**other);
                    let jac = |p: &PlanarTree, q: &PlanarTree, r: &PlanarTree| {
                        let sub = PlanarTree::node(PlanarTree::node(p.clone(), q.clone()), r.clone());
                        tree(t.planar().replace_at(&path, &|_| sub.clone()))
                    };
                    rows.push(Relation::from_trees([
                        (1, jac(a, b, c)),
                        (1, jac(b, c, a)),
                        (1, jac(c, a, b)),
                    ]));
                }
            }
            rows
        })
        .collect())
}

/// Builds the STU² rows of degree `s` from scratch (zero rows dropped,
/// duplicates merged, sign-normalized, sorted).
pub fn build_stu2(s: u32) -> Result<Vec<Relation>> {
    let trees = enumerate_trees(s)?;
    if s == 1 {
        return Ok(vec![Relation::from_trees([(1, trees[0].clone())])]);
    }
    let rows: BTreeSet<Relation> = trees
        .par_iter()
        .flat_map_iter(|t| {
            let g = Graph::from_tree(t);
            let mut rows = Vec::new();
            for k in 1..=s as u8 {
                let (a, b) = (g.leg_node(k), g.leg_node(k + 1));
                let mut path = vec![a];
                path.extend(g.path_vertices(a, b));
                path.push(b);
                let swapped = g.swap_positions(k).to_tree();
                let (u, _) = g.merge_adjacent(k);
                for i in 1..path.len() - 1 {
                    let Some(c) = g.pendant_leg(path[i], [path[i - 1], path[i + 1]]) else {
                        continue;
                    };
                    let row = Relation::from_trees([
                        (1, t.clone()),
                        (-1, swapped.clone()),
                        (-1, u.split_leg(c, false).to_tree()),
                        (1, u.split_leg(c, true).to_tree()),
                    ]);
                    if !row.is_zero() {
                        rows.push(row.normalized());
                    }
                }
            }
            rows
        })
        .collect();
    Ok(rows.into_iter().collect())
}

/// Parsed contents of a relation data file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationData {
    pub version: String,
    pub rows: BTreeMap<u32, Vec<Relation>>,
}

impl RelationData {
    pub fn parse(text: &str) -> Result<RelationData> {
        let mut version = None;
        let mut rows: BTreeMap<u32, Vec<Relation>> = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            let bad = |why: &str| GwError::RelationData(format!("line {}: {why}", no + 1));
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(v) = line.strip_prefix("VERSION") {
                version = Some(v.trim().to_string());
                continue;
            }
            let rest = line.strip_prefix("DEGREE").ok_or_else(|| bad("expected DEGREE"))?;
            let (deg, body) = rest.split_once(" : ").ok_or_else(|| bad("expected ` : `"))?;
            let s: u32 = deg.trim().parse().map_err(|_| bad("bad degree"))?;
            let lhs = body.trim().strip_suffix("= 0").ok_or_else(|| bad("expected `= 0`"))?;
            let mut terms = BTreeMap::new();
            let mut sign = 1i64;
            for tok in lhs.split_whitespace() {
                match tok {
                    "+" => sign = 1,
                    "-" => sign = -1,
                    _ => {
                        let (c, code) = tok.split_once('·').ok_or_else(|| bad("expected c·code"))?;
                        let c: i64 = c.parse().map_err(|_| bad("bad coefficient"))?;
                        let t = UniTrivalentTree::parse_code(code).map_err(|e| bad(&e.to_string()))?;
                        if t.degree() != s {
                            return Err(bad("tree degree differs from row degree"));
                        }
                        *terms.entry(t.canonical_code()).or_insert(0) += sign * c;
                        sign = 1;
                    }
                }
            }
            rows.entry(s).or_default().push(Relation { terms });
        }
        let version = version.ok_or_else(|| GwError::RelationData("missing VERSION line".into()))?;
        Ok(RelationData { version, rows })
    }

    pub fn render(&self) -> String {
        let mut out = String::from(
            "# STU² relation rows, one per line: DEGREE s : c₁·code₁ + c₂·code₂ + … = 0\n\
             # Tree codes root at position 1; [x,y] is a vertex with cyclic order (parent, x, y).\n",
        );
        out.push_str(&format!("VERSION {}\n", self.version));
        for (s, rows) in &self.rows {
            for r in rows {
                out.push_str(&format!("DEGREE {s} : {r}\n"));
            }
        }
        out
    }

    /// The file in force: `GWT_RELATION_DATA` if set, else the embedded copy.
    pub fn current() -> Result<&'static RelationData> {
        static DATA: OnceLock<std::result::Result<RelationData, String>> = OnceLock::new();
        DATA.get_or_init(|| {
            let text = match std::env::var_os(RELATION_DATA_ENV) {
                Some(path) => std::fs::read_to_string(&path)
                    .map_err(|e| format!("{}: {e}", path.to_string_lossy()))?,
                None => EMBEDDED_DATA.to_string(),
            };
            RelationData::parse(&text).map_err(|e| e.to_string())
        })
        .as_ref()
        .map_err(|e| GwError::RelationData(e.clone()))
    }

    /// Largest degree with STU² data.
    pub fn max_degree(&self) -> u32 {
        self.rows.keys().copied().max().unwrap_or(0)
    }
}

/// Version string of the relation data in force.
pub fn relation_data_version() -> Result<String> {
    Ok(RelationData::current()?.version.clone())
}

/// Largest degree for which [`compute_ai`] has data.
pub fn diagram_degree_bound() -> Result<u32> {
    Ok(RelationData::current()?.max_degree())
}

fn stu2_rows(s: u32) -> Result<Vec<Relation>> {
    let data = RelationData::current()?;
    if s > data.max_degree() {
        return Err(out_of_range("s", i64::from(s), format!("s <= {} (relation data)", data.max_degree())));
    }
    Ok(data.rows.get(&s).cloned().unwrap_or_default())
}

/// All relation rows of degree `s` for the given flags, AS then IHX then STU².
pub fn relations(s: u32, rels: &RelationSet) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for k in rels.kinds() {
        out.extend(match k {
            RelationKind::As => as_relations(s)?,
            RelationKind::Ihx => ihx_relations(s)?,
            RelationKind::Stu2 => stu2_rows(s)?,
        });
    }
    Ok(out)
}

/// Assembles rows against a generator order.
pub fn relation_matrix(gens: &[UniTrivalentTree], rows: &[Relation]) -> Result<IntMatrix> {
    let index: HashMap<String, usize> =
        gens.iter().enumerate().map(|(i, t)| (t.canonical_code(), i)).collect();
    let mut trip = Vec::new();
    for (r, rel) in rows.iter().enumerate() {
        for (code, &c) in &rel.terms {
            let &col = index
                .get(code)
                .ok_or_else(|| GwError::RelationData(format!("unknown generator {code}")))?;
            trip.push((r, col, c.into()));
        }
    }
    Ok(IntMatrix::from_triplets(rows.len(), gens.len(), trip))
}

/// Relation matrix of degree `s`: one row per instance, columns in
/// [`enumerate_trees`] order.
pub fn relation_rows(s: u32, rels: &RelationSet) -> Result<IntMatrix> {
    relation_matrix(&enumerate_trees(s)?, &relations(s, rels)?)
}

/// The group of degree-`s` trees modulo AS, IHX and STU².
pub fn compute_ai(s: u32) -> Result<AbelianGroup> {
    let m = relation_rows(s, &RelationSet::all())?;
    Ok(cokernel(&m.transpose()))
}

pub fn ai_rational_dim(s: u32) -> Result<usize> {
    Ok(compute_ai(s)?.free_rank)
}
