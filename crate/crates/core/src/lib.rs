//! Turán numbers of forests of paths and stars.
//!
//! * [`forest`] parses and classifies the forbidden forest.
//! * [`graph`] is the dense graph type with graph6/JSON/DOT I/O and exact
//!   canonical labelling.
//! * [`formulas`] evaluates the closed forms for `ex(n, F)`.
//! * [`constructions`] builds the matching extremal graphs.
//! * [`embedding`] decides `F ⊆ G` and returns a witness.
//! * [`oracle`] computes `ex(n, F)` and every extremal graph exactly for small
//!   `n`, and compares all three against each other.

pub mod constructions;
pub mod embedding;
pub mod error;
pub mod forest;
pub mod formulas;
pub mod graph;
pub mod oracle;

pub use constructions::{Construction, ConstructionDescriptor, Family, Order4Variant, Remainder};
pub use embedding::{find_embedding, naive_find_embedding, Embedding};
pub use error::{Error, Result};
pub use forest::{classify, parse_forest, ForestClass, ForestSpec, TreeComponent, TreeKind};
pub use formulas::{turan_formula, ConjectureReport, HalfInt, TheoremTag, TuranEvaluation};
pub use graph::{canonical_form, canonical_graph, CanonicalLabel, SmallGraph, MAX_VERTICES};
pub use oracle::{
    exact_turan, verify_range, ExtremalClass, OracleOptions, OracleResult, SearchStats, Verdict,
    VerificationReport, VerifyRow,
};
