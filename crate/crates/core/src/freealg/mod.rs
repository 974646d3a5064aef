//! Free algebra on x, y, z and degree-truncated normal forms modulo the
//! Sklyanin relations.

mod ncpoly;
mod rewrite;
mod word;

pub use ncpoly::NCPoly;
pub use rewrite::{standard_count, Centrality, RewriteError, RewriteSystem, Rule, SVec, Strategy};
pub use word::{Word, LETTERS};
