//! Stable marriage with ties: weak stability, the marriage graph, and the
//! adjacency structure of the polytope spanned by stable matchings.
//!
//! - [`instance`]: weak preference orders, acceptable pairs, generators.
//! - [`matching`]: matchings, blocking pairs, deferred acceptance and
//!   exhaustive enumeration of stable matchings.
//! - [`graph`]: the marriage graph and the subgraph between two stable
//!   matchings, whose nontrivial components decide adjacency.
//! - [`skeleton`]: adjacency, component-flipping paths, distances and
//!   diameter of the 1-skeleton.
//! - [`polytope`]: exact-rational relaxation, tight-row rank, span
//!   certificates and a midpoint-membership LP, used as independent checks.

pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod instance;
pub mod matching;
pub mod polytope;
pub mod skeleton;

pub use error::{Error, Result, Violation};
pub use format::{parse, serialize, ParseError};
pub use graph::{build_gamma, build_star, principal_block, x_between, MarriageGraph, StarSubgraph};
pub use instance::{
    random_instance, tight_family, Instance, Pair, PersonId, PreferenceOrder, Side, TieProbability,
};
pub use matching::{
    blocking_pairs, enumerate_stable, enumerate_stable_with_cap, find_stable, incidence, is_stable,
    IncidenceVector, Matching, DEFAULT_ENUMERATION_CAP,
};
pub use skeleton::{
    are_adjacent, build_skeleton, non_adjacency_witness, path_between, SkeletonGraph,
};
