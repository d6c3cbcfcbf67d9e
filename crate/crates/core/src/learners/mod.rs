//! Incremental value-prediction learners with linear function approximation.
//!
//! Every learner consumes transitions `(φ, R, φ')` one at a time. A terminal
//! transition is encoded by passing the all-zeros vector as `φ'`.

mod dyna;
mod replan;
mod true_online;

use std::fmt;
use std::str::FromStr;

pub use dyna::DynaState;
pub use replan::ReplanState;
pub use true_online::{Td0State, TrueOnlineTdState};

use crate::error::{Error, Result};
use crate::numerics::{all_finite, dot};

/// Step sizes and trace parameters for one run. `alpha` is held constant for
/// the whole run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    pub alpha: f64,
    pub gamma: f64,
    /// Target depth λ.
    pub lambda: f64,
    /// Replay depth λ́: 0 disables replay, 1 replays every past step.
    pub lambda_replay: f64,
    /// Simulated updates per real step (Dyna only).
    pub planning_steps: usize,
}

pub const DEFAULT_PLANNING_STEPS: usize = 10;

impl Hyperparams {
    pub fn new(alpha: f64, gamma: f64, lambda: f64) -> Self {
        Hyperparams {
            alpha,
            gamma,
            lambda,
            lambda_replay: 1.0,
            planning_steps: DEFAULT_PLANNING_STEPS,
        }
    }

    pub fn with_lambda_replay(mut self, lambda_replay: f64) -> Self {
        self.lambda_replay = lambda_replay;
        self
    }

    pub fn with_planning_steps(mut self, planning_steps: usize) -> Self {
        self.planning_steps = planning_steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::Hyperparam(format!("alpha must be finite and > 0, got {}", self.alpha)));
        }
        for (name, v) in [
            ("gamma", self.gamma),
            ("lambda", self.lambda),
            ("lambda_replay", self.lambda_replay),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Hyperparam(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }
}

/// Checks one transition before any state is touched.
pub(crate) fn check_transition(n: usize, phi: &[f64], phi_next: &[f64], reward: f64) -> Result<()> {
    for v in [phi, phi_next] {
        if v.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: v.len(),
            });
        }
    }
    if !all_finite(phi) {
        return Err(Error::NonFinite("features"));
    }
    if !all_finite(phi_next) {
        return Err(Error::NonFinite("next features"));
    }
    if !reward.is_finite() {
        return Err(Error::NonFinite("reward"));
    }
    Ok(())
}

pub(crate) fn check_weights(theta: &[f64]) -> Result<()> {
    if all_finite(theta) {
        Ok(())
    } else {
        Err(Error::NonFinite("weights (learner diverged)"))
    }
}

/// Common interface over all step rules.
pub trait Learner {
    /// Resets per-episode traces. Weights carry over.
    fn begin_episode(&mut self);

    fn step(&mut self, phi: &[f64], phi_next: &[f64], reward: f64) -> Result<()>;

    fn weights(&self) -> &[f64];

    /// `V(s) = θᵀφ(s)`.
    fn predict(&self, phi: &[f64]) -> Result<f64> {
        dot(self.weights(), phi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// True online TD(λ)-Replan(1): full replay every step.
    Replan,
    /// True online TD(λ)-Replan(λ́).
    ReplanInterp,
    TrueOnlineTd,
    Td0,
    Dyna,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Replan,
        Algorithm::ReplanInterp,
        Algorithm::TrueOnlineTd,
        Algorithm::Td0,
        Algorithm::Dyna,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Replan => "replan",
            Algorithm::ReplanInterp => "replan_interp",
            Algorithm::TrueOnlineTd => "true_online_td",
            Algorithm::Td0 => "td0",
            Algorithm::Dyna => "dyna",
        }
    }

    /// Pins the parameters the rule ignores, so equivalent configurations
    /// compare equal: λ = 0 for TD(0) and Dyna, λ́ = 1 for full replay and
    /// λ́ = 0 for rules that never replay.
    pub fn canonical(self, mut h: Hyperparams) -> Hyperparams {
        match self {
            Algorithm::Replan => h.lambda_replay = 1.0,
            Algorithm::ReplanInterp => {}
            Algorithm::TrueOnlineTd => h.lambda_replay = 0.0,
            Algorithm::Td0 | Algorithm::Dyna => {
                h.lambda = 0.0;
                h.lambda_replay = 0.0;
            }
        }
        if self != Algorithm::Dyna {
            h.planning_steps = DEFAULT_PLANNING_STEPS;
        }
        h
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                Error::Usage(format!("unknown algorithm `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone)]
enum Rule {
    Replan(ReplanState),
    ReplanInterp(ReplanState),
    TrueOnlineTd(TrueOnlineTdState),
    Td0(Td0State),
    Dyna(DynaState),
}

/// A learner state bound to its algorithm and hyperparameters.
#[derive(Debug, Clone)]
pub struct Agent {
    hyper: Hyperparams,
    rule: Rule,
}

impl Agent {
    /// Zero-initialised agent over `n_features` weights. `seed` drives the
    /// Dyna planner's memory sampling and is ignored by the other rules.
    pub fn new(algorithm: Algorithm, n_features: usize, hyper: Hyperparams, seed: u64) -> Result<Self> {
        hyper.validate()?;
        if n_features == 0 {
            return Err(Error::Hyperparam("feature count must be at least 1".into()));
        }
        let rule = match algorithm {
            Algorithm::Replan => Rule::Replan(ReplanState::new(n_features)),
            Algorithm::ReplanInterp => Rule::ReplanInterp(ReplanState::new(n_features)),
            Algorithm::TrueOnlineTd => Rule::TrueOnlineTd(TrueOnlineTdState::new(n_features)),
            Algorithm::Td0 => Rule::Td0(Td0State::new(n_features)),
            Algorithm::Dyna => Rule::Dyna(DynaState::new(n_features, seed)),
        };
        Ok(Agent { hyper, rule })
    }

    pub fn algorithm(&self) -> Algorithm {
        match self.rule {
            Rule::Replan(_) => Algorithm::Replan,
            Rule::ReplanInterp(_) => Algorithm::ReplanInterp,
            Rule::TrueOnlineTd(_) => Algorithm::TrueOnlineTd,
            Rule::Td0(_) => Algorithm::Td0,
            Rule::Dyna(_) => Algorithm::Dyna,
        }
    }

    pub fn hyperparams(&self) -> &Hyperparams {
        &self.hyper
    }
}

impl Learner for Agent {
    fn begin_episode(&mut self) {
        match &mut self.rule {
            Rule::Replan(s) | Rule::ReplanInterp(s) => s.begin_episode(),
            Rule::TrueOnlineTd(s) => s.begin_episode(),
            Rule::Td0(_) | Rule::Dyna(_) => {}
        }
    }

    fn step(&mut self, phi: &[f64], phi_next: &[f64], reward: f64) -> Result<()> {
        let h = &self.hyper;
        match &mut self.rule {
            Rule::Replan(s) => s.replan_step(phi, phi_next, reward, h),
            Rule::ReplanInterp(s) => s.replan_interpolated_step(phi, phi_next, reward, h),
            Rule::TrueOnlineTd(s) => s.step(phi, phi_next, reward, h),
            Rule::Td0(s) => s.step(phi, phi_next, reward, h),
            Rule::Dyna(s) => s.step(phi, phi_next, reward, h),
        }
    }

    fn weights(&self) -> &[f64] {
        match &self.rule {
            Rule::Replan(s) | Rule::ReplanInterp(s) => s.theta(),
            Rule::TrueOnlineTd(s) => s.theta(),
            Rule::Td0(s) => s.theta(),
            Rule::Dyna(s) => s.theta(),
        }
    }
}
