//! Unitrivalent tree generators and the groups they span modulo AS, IHX and STU².

mod graph;
mod relations;
mod trees;

pub use relations::{
    ai_rational_dim, as_relations, build_stu2, compute_ai, diagram_degree_bound, ihx_relations,
    relation_data_version, relation_matrix, relation_rows, relations, Relation, RelationData,
    RelationKind, RelationSet, RELATION_DATA_ENV,
};
pub use trees::{enumerate_trees, PlanarTree, UniTrivalentTree, TREE_DEGREE_BOUND};
