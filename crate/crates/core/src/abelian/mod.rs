//! Integer and field linear algebra, finitely generated abelian groups.

pub mod field;
pub mod group;
pub mod matrix;
pub mod snf;

pub use group::{cokernel, is_prime, localize, mod_p_dim, rational_rank, AbelianGroup};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, kernel_basis, smith_normal_form, LatticeBasis, SnfResult};
