//! Exact domination numbers and constructive dominating sets for maximal
//! outerplane graphs and Hamiltonian plane triangulations.
//!
//! * [`mop`]: the maximal outerplane graph type and its structural queries.
//! * [`bounds`]: degree-2 structure, essential pairs and bound evaluation.
//! * [`domination`]: two independent exact solvers.
//! * [`reductions`]: certified reductions and the `⌈(n+k)/4⌉` engine.
//! * [`hamiltonian`]: triangulations split along a Hamilton cycle and the
//!   `5n/16` pipeline.
//! * [`generators`]: enumeration, uniform sampling and named graphs.

pub mod bounds;
pub mod catalan;
pub mod domination;
pub mod dot;
pub mod generators;
pub mod hamiltonian;
pub mod io;
pub mod mop;
pub mod reductions;
pub mod suites;

pub use bounds::{bounds_report, check_li_counterexample, essential_pair_count, BoundsReport};
pub use domination::{gamma_exact_bb, gamma_mop_dp, is_dominating, DominatingSet, SimpleGraph};
pub use hamiltonian::{dominate_triangulation, HamTriangulation};
pub use mop::{MopError, MopGraph, Pos, Section};
pub use reductions::{dominate_mop, ReductionStep, ReductionTrace};
