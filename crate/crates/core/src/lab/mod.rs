//! Finite-length ground truth: socket-ensemble sampling, stopping-set
//! enumeration, the peeling decoder, exact and Monte Carlo block error
//! probabilities, and checkers for the second-order union bound and the
//! counting identities behind the analytic bound.

mod block_error;
mod dawson;
mod empirical;
mod graph;
mod stopping;

pub use block_error::{block_error_from_counts, exact_block_error, mc_block_error, McEstimate, MC_BLOCK};
pub use dawson::{
    dawson_check, dawson_suite, identical_family, random_family, DawsonCheck, DawsonSuiteReport, EventFamily,
};
pub use empirical::{empirical_exponent, EmpiricalConfig, EmpiricalRow, EvalMode};
pub use graph::{rng_stream, sample_graph, BipartiteGraph, RNG_ALGORITHM};
pub use stopping::{
    census, failure_counts, failure_counts_peel, is_stopping_mask, is_stopping_set, min_stopping_size,
    pair_count_identity, peel_decode, stopping_sets, union_count_identity, IdentityCheck, PeelResult, Peeler,
    StoppingSpectrum, EXHAUSTIVE_MAX_N, PAIR_BUDGET, SUBSET_BUDGET,
};
