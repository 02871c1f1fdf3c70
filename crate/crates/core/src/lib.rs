//! Colouring graphs from random lists.
//!
//! The crate samples random `(k, m)`-list-assignments, decides list
//! colourability through the dangerous-edge decomposition, extracts minimal
//! non-colourable witnesses, certifies small choosability facts, evaluates the
//! closed-form thresholds and bounds of the theory, and runs reproducible
//! Monte Carlo experiments (in parallel with the `parallel` feature).

pub mod bounds;
pub mod choosability;
pub mod dangerous;
pub mod error;
pub mod exec;
pub mod experiment;
pub mod gadget;
pub mod graph;
pub mod io;
pub mod lists;
pub mod matching;
pub mod rng;
pub mod solver;

pub use choosability::{
    choice_number, chromatic_number, g_search, is_k_choosable, ChoosabilityConfig,
};
pub use dangerous::{component_profile, dangerous_subgraph, DangerousSubgraph};
pub use error::{Error, Result};
pub use exec::Execution;
pub use experiment::{mc_colourable, sweep, EstimateRecord, GraphSpec, McOptions};
pub use gadget::{build_gadget, has_bad_copy, GadgetInstance};
pub use graph::{ForbiddenSpec, Graph};
pub use lists::{sample_assignment, sample_k_subset, ListAssignment};
pub use rng::{Seed, SplitMix64};
pub use solver::{
    is_colourable, minimal_witness, validate_witness, Colouring, SolverConfig, Witness,
};
