//! Transition sources: the random walk benchmark and recorded feature traces.

mod random_walk;
mod trace;

pub use random_walk::{
    features as rw_features, label_of_position, rw_true_value, true_value_at_position, true_values as rw_true_values,
    RandomWalk, RW_NONTERMINAL, RW_STATES,
};
pub use trace::{
    load_trace, mc_ground_truth, synthetic_traces, trace_to_string, write_trace, SyntheticTraceSpec, TraceDataset,
    DEFAULT_TRACE_GAMMA,
};

/// Result of one environment step. A terminal step carries zero features.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub phi_next: Vec<f64>,
    pub reward: f64,
    pub terminal: bool,
}
