//! Null models and exact tests for where the head goes in single-head
//! syntactic structures.
//!
//! * [`arrangement`]: trees, linear arrangements and sums of dependency distances.
//! * [`null_model`]: moments and exhaustive distributions of D under random shuffling.
//! * [`stats`]: head-end binomial tests, average D, the 3-sigma rule.
//! * [`ring`]: swap distance and the ring of S/O/V orders.
//! * [`data`], [`io`], [`export`]: embedded datasets, CSV ingestion and exports.
//! * [`reproduce`]: recomputation of the published tables and figures.
//!
//! With the default `parallel` feature, exhaustive enumeration and per-unit
//! analysis run on the rayon thread pool; without it everything is sequential.

pub mod arrangement;
pub mod binomial;
pub mod data;
pub mod error;
pub mod exact;
pub mod export;
pub mod io;
pub mod null_model;
pub mod reproduce;
pub mod ring;
pub mod stats;
pub mod table;

pub use arrangement::{
    d_max_single_head, d_min_single_head, degree_second_moment, single_head_d,
    sum_dependency_distances, DependencyDistanceSummary, FreeTree, LinearArrangement,
};
pub use error::{Error, Result};
pub use null_model::{
    enumerate_d_distribution, expected_d, is_unimodal, sigma_mean_d, variance_d, variance_d_star,
    DiscreteDistribution, NullMoments,
};
pub use ring::{adjacent, build_ring, swap_distance, ConstituentOrder, PermutationRing};
pub use stats::{
    analyze, binomial_proportion_ci, head_end_frequency, mean_d_from_g, p_head_at_ends,
    quad_binomial_test, right_binomial_test, sigma_separation_k, three_sigma_verdict,
    HeadPlacementReport,
};
pub use table::{OrderFrequencyTable, OrderRow};
