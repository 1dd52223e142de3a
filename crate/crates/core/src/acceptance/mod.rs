//! Acceptance conditions on bounded windows and the searches built on them.

mod evaluate;
mod search;

pub use evaluate::{
    evaluate_acceptance, AcceptanceCondition, ConditionKind, InfApproximation, Mode, RunEvidence,
    Witness,
};
pub use search::{bounded_run_search, emptiness_at_depth, SearchConfig, DEFAULT_NODE_BUDGET};
