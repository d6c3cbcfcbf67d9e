//! True online TD(λ)-Replan(λ́) value prediction.
//!
//! The crate provides the incremental `O(n²)` replay learner together with
//! a forward-view oracle it is checked against, the baselines it is compared
//! with (true online TD(λ), TD(0), linear Dyna), a 17-state random walk with
//! analytic values, a trace-file environment, and an experiment harness.

pub mod cli;
pub mod envs;
pub mod error;
mod fsio;
pub mod harness;
pub mod learners;
pub mod numerics;
pub mod oracle;

pub use error::{Error, Result};
pub use learners::{Agent, Algorithm, Hyperparams, Learner};
