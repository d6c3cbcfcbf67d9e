//! Per-step wall-time probe for the O(n²) cost contract.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::learners::{Agent, Algorithm, Hyperparams, Learner};
use crate::oracle::{forward_replay_bundle, TraceBuffer, WeightHistory};

/// What is being timed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeTarget {
    Learner(Algorithm),
    /// One forward-view replay bundle per step.
    ForwardOracle,
}

impl fmt::Display for ProbeTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeTarget::Learner(a) => write!(f, "{a}"),
            ProbeTarget::ForwardOracle => f.write_str("forward_oracle"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub target: ProbeTarget,
    pub n: usize,
    pub steps: usize,
    pub window: usize,
    /// Mean seconds per step over the first `window` steps.
    pub early: f64,
    /// Mean seconds per step over the last `window` steps.
    pub late: f64,
}

impl CostReport {
    pub fn ratio(&self) -> f64 {
        self.late / self.early
    }
}

pub const PROBE_WINDOW: usize = 100;

/// The synthetic episode used by the probe: `steps` transitions with
/// features uniform on `[−1, 1]/√n`, bootstrapped at the end.
pub fn probe_episode(n: usize, steps: usize, seed: u64) -> Result<TraceBuffer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (n as f64).sqrt();
    let mut row = || -> Vec<f64> { (0..n).map(|_| rng.gen_range(-1.0..1.0) * scale).collect() };
    let features: Vec<Vec<f64>> = (0..steps).map(|_| row()).collect();
    let tail = row();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
    let rewards = (0..steps).map(|_| rng.gen_range(-1.0..1.0)).collect();
    TraceBuffer::truncated(n, features, rewards, tail)
}

/// Times every step of a `steps`-step episode `repeats` times and keeps the
/// fastest sample per step, then averages the early window `[0, w)` and the
/// late window `[steps − w, steps)` with `w = min(100, steps / 2)`.
pub fn step_cost_probe(target: ProbeTarget, n: usize, steps: usize, repeats: usize) -> Result<CostReport> {
    if n == 0 || steps < 2 || repeats == 0 {
        return Err(Error::Usage("probe needs n ≥ 1, at least 2 steps and 1 repeat".into()));
    }
    let trace = probe_episode(n, steps, 0x0050_524f_4245)?;
    let hyper = Hyperparams::new(0.01, 0.9, 0.9);
    let mut best = vec![f64::INFINITY; steps];
    for _ in 0..repeats {
        let times = match target {
            ProbeTarget::Learner(algorithm) => time_learner(algorithm, &trace, hyper)?,
            ProbeTarget::ForwardOracle => time_oracle(&trace, hyper)?,
        };
        for (b, t) in best.iter_mut().zip(times) {
            *b = b.min(t);
        }
    }
    let window = PROBE_WINDOW.min(steps / 2);
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len() as f64;
    Ok(CostReport {
        target,
        n,
        steps,
        window,
        early: mean(&best[..window]),
        late: mean(&best[steps - window..]),
    })
}

fn time_learner(algorithm: Algorithm, trace: &TraceBuffer, hyper: Hyperparams) -> Result<Vec<f64>> {
    let mut agent = Agent::new(algorithm, trace.n_features(), hyper, 0)?;
    agent.begin_episode();
    let mut times = Vec::with_capacity(trace.len());
    for (phi, phi_next, r) in trace.transitions() {
        let start = Instant::now();
        agent.step(phi, phi_next, r)?;
        times.push(start.elapsed().as_secs_f64());
    }
    Ok(times)
}

fn time_oracle(trace: &TraceBuffer, hyper: Hyperparams) -> Result<Vec<f64>> {
    let mut hist = WeightHistory::new(vec![0.0; trace.n_features()]);
    let mut times = Vec::with_capacity(trace.len());
    for t in 0..trace.len() {
        let start = Instant::now();
        let next = forward_replay_bundle(trace, &hist, hist.get(t), t, &hyper)?;
        times.push(start.elapsed().as_secs_f64());
        hist.push(next);
    }
    Ok(times)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_shape() {
        let r = step_cost_probe(ProbeTarget::Learner(Algorithm::Td0), 4, 50, 1).unwrap();
        assert_eq!((r.n, r.steps, r.window), (4, 50, 25));
        assert!(r.early > 0.0 && r.late > 0.0 && r.ratio().is_finite());
        assert_eq!(r.target.to_string(), "td0");
        assert_eq!(ProbeTarget::ForwardOracle.to_string(), "forward_oracle");
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(step_cost_probe(ProbeTarget::ForwardOracle, 4, 1, 1).is_err());
        assert!(step_cost_probe(ProbeTarget::ForwardOracle, 0, 10, 1).is_err());
        assert!(step_cost_probe(ProbeTarget::ForwardOracle, 4, 10, 0).is_err());
    }

    #[test]
    fn probe_episode_is_deterministic() {
        let a = probe_episode(3, 10, 1).unwrap();
        let b = probe_episode(3, 10, 1).unwrap();
        assert_eq!(a.features(), b.features());
        assert_eq!(a.rewards(), b.rewards());
        assert!(!a.is_terminal());
    }
}
