//! Exact determining sets and critical sets of proper graph colorings.
//!
//! A *determining set* of a proper coloring `c` is a vertex set `S` such that
//! `c` is the only proper coloring agreeing with `c` on `S`; a *critical set*
//! is an inclusion-minimal determining set. The crate computes, for graphs of
//! desk-scale size, the extremal critical-set sizes over all optimal
//! colorings:
//!
//! - `uscs` / `oscs`: min / max over colorings of the smallest critical set,
//! - `ulcs` / `olcs`: min / max over colorings of the largest critical set,
//!
//! together with closed forms for cycles, bipartite and uniquely colorable
//! graphs, the Sudoku graph and a randomized determining-set process on it,
//! and the instance builders of two NP-hardness reductions.
//!
//! Batch work (per-coloring searches, atlas canonicalisation, trial
//! campaigns) goes through [`exec::map`], which uses rayon when the default
//! `parallel` feature is enabled.

pub mod canon;
pub mod closed_forms;
pub mod coloring;
pub mod critical;
pub mod error;
pub mod exec;
pub mod extension;
pub mod graph;
pub mod graph6;
pub mod hardness;
pub mod limits;
pub mod sudoku;

pub use coloring::{
    chromatic_number, colorful_vertices, enumerate_optimal_colorings, is_uniquely_colorable, Coloring,
    PartialAssignment,
};
pub use critical::{
    four_params, four_params_k, is_critical, is_critically_uniform, is_determining, scs_lcs_for_coloring, ParamQuad,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use extension::{count_extensions, forced_vertices};
pub use graph::{Graph, VertexSet};
pub use graph6::{emit_graph6, parse_graph6};
pub use limits::Limits;
