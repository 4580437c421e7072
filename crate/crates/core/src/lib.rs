//! Finite labeled-graph operads and a quantale-valued calculus of enriched
//! presheaves, with exhaustive checkers for their structural laws.

pub mod approx;
pub mod duality;
pub mod enriched;
pub mod error;
pub mod graph;
pub mod json;
pub mod labels;
pub mod lattice;
pub mod module;
pub mod operad;
pub mod pairing;
pub mod pointed;
pub mod presheaf;
pub mod quantale;
pub mod report;
pub mod simplex;
pub mod suites;

pub use error::{Error, Result};
