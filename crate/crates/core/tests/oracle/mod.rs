#![allow(dead_code, clippy::needless_range_loop)]

pub mod dense;
pub mod diagrams;
pub mod hilton_milnor;
