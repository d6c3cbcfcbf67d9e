//! Forward-view reference computations.
//!
//! At every step `t` the forward view replays the whole episode so far as a
//! bundle of updates `k = 0..=t`, each aimed at the interim λ-return
//! `G_k^{λ|t+1}`. Targets are built from the end-of-step weights `θ_i`
//! recorded in a [`WeightHistory`], never from the intermediate weights of
//! the bundle being replayed. This costs `O(t·n)` per step and `O(T²·n)` per
//! episode, which is what the incremental learners avoid; the functions here
//! exist to check them.

use crate::error::{Error, Result};
use crate::learners::Hyperparams;
use crate::numerics::{axpy_unchecked, dot_unchecked};

/// One recorded episode: `φ_0..φ_{T-1}` and rewards `R_1..R_T`, where
/// `rewards[k]` is the reward received on leaving `φ_k`.
///
/// A terminal episode's final next-feature vector is zero. A truncated one
/// carries an explicit bootstrap vector instead.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceBuffer {
    n_features: usize,
    features: Vec<Vec<f64>>,
    rewards: Vec<f64>,
    terminal: bool,
    tail: Vec<f64>,
}

impl TraceBuffer {
    /// A terminal episode.
    pub fn episode(n_features: usize, features: Vec<Vec<f64>>, rewards: Vec<f64>) -> Result<Self> {
        Self::build(n_features, features, rewards, None)
    }

    /// An episode cut off before termination; `bootstrap` is the feature
    /// vector that follows the last recorded step.
    pub fn truncated(
        n_features: usize,
        features: Vec<Vec<f64>>,
        rewards: Vec<f64>,
        bootstrap: Vec<f64>,
    ) -> Result<Self> {
        Self::build(n_features, features, rewards, Some(bootstrap))
    }

    fn build(n_features: usize, features: Vec<Vec<f64>>, rewards: Vec<f64>, bootstrap: Option<Vec<f64>>) -> Result<Self> {
        if features.len() != rewards.len() {
            return Err(Error::Dimension {
                expected: features.len(),
                actual: rewards.len(),
            });
        }
        if let Some(bad) = features.iter().chain(bootstrap.iter()).find(|f| f.len() != n_features) {
            return Err(Error::Dimension {
                expected: n_features,
                actual: bad.len(),
            });
        }
        let terminal = bootstrap.is_none();
        Ok(TraceBuffer {
            n_features,
            features,
            rewards,
            terminal,
            tail: bootstrap.unwrap_or_else(|| vec![0.0; n_features]),
        })
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn rewards(&self) -> &[f64] {
        &self.rewards
    }

    /// `φ_k` for `0 ≤ k ≤ len`; index `len` is the zero vector or bootstrap.
    pub fn phi(&self, k: usize) -> &[f64] {
        if k == self.features.len() {
            &self.tail
        } else {
            &self.features[k]
        }
    }

    /// `(φ_k, φ_{k+1}, R_{k+1})` for every recorded step.
    pub fn transitions(&self) -> impl Iterator<Item = (&[f64], &[f64], f64)> + '_ {
        (0..self.len()).map(move |k| (self.phi(k), self.phi(k + 1), self.rewards[k]))
    }
}

/// End-of-step weights `θ_0, θ_1, …`; `θ_i` is what the learner held after
/// completing step `i`, with `θ_0` the episode-initial weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightHistory {
    thetas: Vec<Vec<f64>>,
}

impl WeightHistory {
    pub fn new(initial: Vec<f64>) -> Self {
        WeightHistory { thetas: vec![initial] }
    }

    pub fn from_thetas(thetas: Vec<Vec<f64>>) -> Self {
        WeightHistory { thetas }
    }

    pub fn push(&mut self, theta: Vec<f64>) {
        self.thetas.push(theta);
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.thetas[i]
    }

    pub fn last(&self) -> &[f64] {
        self.thetas.last().expect("history holds at least θ_0")
    }

    pub fn thetas(&self) -> &[Vec<f64>] {
        &self.thetas
    }
}

fn check_indices(trace: &TraceBuffer, hist: &WeightHistory, k: usize, t: usize) -> Result<()> {
    if k > t {
        return Err(Error::Index(format!("k = {k} exceeds t = {t}")));
    }
    if t >= trace.len() {
        return Err(Error::Index(format!("t = {t} but the trace has {} steps", trace.len())));
    }
    if hist.len() <= t {
        return Err(Error::Index(format!("history covers {} weights, need θ_0..θ_{t}", hist.len())));
    }
    if let Some(bad) = hist.thetas[..=t].iter().find(|th| th.len() != trace.n_features()) {
        return Err(Error::Dimension {
            expected: trace.n_features(),
            actual: bad.len(),
        });
    }
    Ok(())
}

// R_{j+1} + γ θ_jᵀφ_{j+1}
fn one_step_target(trace: &TraceBuffer, hist: &WeightHistory, j: usize, gamma: f64) -> f64 {
    trace.rewards[j] + gamma * dot_unchecked(hist.get(j), trace.phi(j + 1))
}

// δ́_j = R_{j+1} + γθ_jᵀφ_{j+1} − θ_{j−1}ᵀφ_j, for j ≥ 1
fn shifted_td_error(trace: &TraceBuffer, hist: &WeightHistory, j: usize, gamma: f64) -> f64 {
    one_step_target(trace, hist, j, gamma) - dot_unchecked(hist.get(j - 1), trace.phi(j))
}

/// `G_k^{λ|t+1}` grown one horizon at a time:
/// `G_k^{λ|j+1} = G_k^{λ|j} + (λγ)^{j−k} δ́_j`, starting from the one-step
/// target at `j = k`.
pub fn interim_return_recursive(
    trace: &TraceBuffer,
    hist: &WeightHistory,
    k: usize,
    t: usize,
    lambda: f64,
    gamma: f64,
) -> Result<f64> {
    check_indices(trace, hist, k, t)?;
    let mut g = one_step_target(trace, hist, k, gamma);
    let mut weight = 1.0;
    for j in k + 1..=t {
        weight *= lambda * gamma;
        g += weight * shifted_td_error(trace, hist, j, gamma);
    }
    Ok(g)
}

/// `G_k^{λ|t+1}` as the λ-weighted mixture of `i`-step returns truncated at
/// the horizon:
///
/// ```text
/// (1 − λ) Σ_{i=1}^{t−k} λ^{i−1} G_k^{(i)} + λ^{t−k} G_k^{(t−k+1)}
/// G_k^{(i)} = Σ_{j=1}^{i} γ^{j−1} R_{k+j} + γ^i θ_{k+i−1}ᵀφ_{k+i}
/// ```
pub fn interim_return_direct(
    trace: &TraceBuffer,
    hist: &WeightHistory,
    k: usize,
    t: usize,
    lambda: f64,
    gamma: f64,
) -> Result<f64> {
    check_indices(trace, hist, k, t)?;
    let horizon = t - k;
    let mut discounted_rewards = 0.0;
    let mut mixture = 0.0;
    let mut last = 0.0;
    for i in 1..=horizon + 1 {
        discounted_rewards += gamma.powi(i as i32 - 1) * trace.rewards[k + i - 1];
        let n_step = discounted_rewards + gamma.powi(i as i32) * dot_unchecked(hist.get(k + i - 1), trace.phi(k + i));
        if i <= horizon {
            mixture += lambda.powi(i as i32 - 1) * n_step;
        } else {
            last = n_step;
        }
    }
    Ok((1.0 - lambda) * mixture + lambda.powi(horizon as i32) * last)
}

/// All targets `G_k^{λ|t+1}` for `k = 0..=t` in `O(t·n)`, accumulating the
/// recursion's correction terms from the back.
pub fn interim_returns_all(
    trace: &TraceBuffer,
    hist: &WeightHistory,
    t: usize,
    lambda: f64,
    gamma: f64,
) -> Result<Vec<f64>> {
    check_indices(trace, hist, 0, t)?;
    let one_step: Vec<f64> = (0..=t).map(|j| one_step_target(trace, hist, j, gamma)).collect();
    let mut targets = one_step.clone();
    let mut correction = 0.0;
    for k in (0..t).rev() {
        let delta = one_step[k + 1] - dot_unchecked(hist.get(k), trace.phi(k + 1));
        correction = lambda * gamma * (delta + correction);
        targets[k] += correction;
    }
    Ok(targets)
}

/// How bundle targets are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnForm {
    Recursive,
    Direct,
}

/// Replays steps `0..=t` starting from `theta_start`, each update moving
/// `θ_k^{t+1}` toward `G_k^{λ|t+1}`; returns `θ_{t+1}^{t+1}`.
pub fn forward_replay_bundle(
    trace: &TraceBuffer,
    hist: &WeightHistory,
    theta_start: &[f64],
    t: usize,
    h: &Hyperparams,
) -> Result<Vec<f64>> {
    forward_replay_bundle_with(trace, hist, theta_start, t, h, ReturnForm::Recursive)
}

pub fn forward_replay_bundle_with(
    trace: &TraceBuffer,
    hist: &WeightHistory,
    theta_start: &[f64],
    t: usize,
    h: &Hyperparams,
    form: ReturnForm,
) -> Result<Vec<f64>> {
    if theta_start.len() != trace.n_features() {
        return Err(Error::Dimension {
            expected: trace.n_features(),
            actual: theta_start.len(),
        });
    }
    let targets = match form {
        ReturnForm::Recursive => interim_returns_all(trace, hist, t, h.lambda, h.gamma)?,
        ReturnForm::Direct => (0..=t)
            .map(|k| interim_return_direct(trace, hist, k, t, h.lambda, h.gamma))
            .collect::<Result<_>>()?,
    };
    let mut theta = theta_start.to_vec();
    for (k, target) in targets.into_iter().enumerate() {
        let phi = trace.phi(k);
        let error = target - dot_unchecked(&theta, phi);
        axpy_unchecked(&mut theta, h.alpha * error, phi);
    }
    Ok(theta)
}

/// Forward view of TD(λ)-Replan(1): each bundle starts from the previous
/// bundle's result.
pub fn forward_replay_episode(trace: &TraceBuffer, theta_init: &[f64], h: &Hyperparams) -> Result<WeightHistory> {
    run_bundles(trace, theta_init, h, false)
}

/// Forward view of true online TD(λ): every bundle restarts from the
/// episode-initial weights, so past updates are re-targeted but not replayed.
pub fn forward_fixed_theta_episode(trace: &TraceBuffer, theta_init: &[f64], h: &Hyperparams) -> Result<WeightHistory> {
    run_bundles(trace, theta_init, h, true)
}

fn run_bundles(trace: &TraceBuffer, theta_init: &[f64], h: &Hyperparams, fixed_start: bool) -> Result<WeightHistory> {
    if theta_init.len() != trace.n_features() {
        return Err(Error::Dimension {
            expected: trace.n_features(),
            actual: theta_init.len(),
        });
    }
    let mut hist = WeightHistory::new(theta_init.to_vec());
    for t in 0..trace.len() {
        let start = if fixed_start { hist.get(0) } else { hist.get(t) };
        let next = forward_replay_bundle(trace, &hist, start, t, h)?;
        hist.push(next);
    }
    Ok(hist)
}
