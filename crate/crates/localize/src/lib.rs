//! Torus-fixed loci and their localization weights for genus-0 degree-d
//! covers of a rigid (−1,−1) curve in the unramified compactification.
//!
//! [`fixedpoints`] classifies the fixed maps in each bubble and enumerates
//! bubble chains, [`contributions`] evaluates the closed-form factors for a
//! single component or node, and [`localize`] multiplies them along chains,
//! pairs the two sides and sums.

pub mod contributions;
pub mod fixedpoints;
pub mod localize;

pub use contributions::{
    base_contribution, end_contribution, node_smoothing, psi_dual_pairing, psi_integral,
    ruled_contribution, ContributionError, FactorBundle,
};
pub use fixedpoints::{
    base_tangent_weight, enumerate_chains, enumerate_configurations, source_tangent_weight,
    v4_weights, Chain, Configuration, ContactLabel, EnumerationError, FixedMapKind, KindError,
    NodeEnd, Shape,
};
pub use localize::{
    configuration_contribution, evaluate_chain, multiple_cover_invariant,
    multiple_cover_invariant_with, side_sum, sum_configurations, ChainEvaluation,
    ConfigurationReport, Evaluation, LocalizeError, Side, SideTable, TraceEntry,
};
