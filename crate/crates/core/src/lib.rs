//! Computations for towers of embedding calculus: abelian group algebra,
//! free Lie combinatorics, Poisson operad models and tree diagram spaces.

mod error;
mod serde_num;

pub mod abelian;
pub mod collapse;
pub mod diagrams;
pub mod filtered;
pub mod homology;
pub mod homotopy;
pub mod lie;
pub mod page;
pub mod poisson;

pub use error::{GwError, Result};

/// Version string mixed into cache keys by front ends.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
