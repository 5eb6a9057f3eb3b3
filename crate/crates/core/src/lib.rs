//! Exact combinatorics for rooted graph minors.
//!
//! The crate covers H-schemes and colored schemes, exhaustive rooted-minor
//! search, the doubled graph `M'(H)` with its contractibility certificates,
//! a rule-based contractibility classifier and a small-graph atlas. Every
//! search is deterministic and exhaustive below its documented cap; above a
//! cap the routine fails with [`Error::Capacity`] instead of guessing.

pub mod atlas;
pub mod classify;
pub mod error;
pub mod graph;
pub mod minor;
pub mod mprime;
pub mod report;
pub mod scheme;

pub use error::{Error, Result};
pub use graph::{Graph, Mask};
pub use minor::MinorModel;
pub use scheme::{ColoredScheme, HScheme};
pub use report::ValidationReport;
