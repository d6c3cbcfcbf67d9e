//! Randomised equivalence suites comparing the incremental learners with the
//! forward-view oracle.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::learners::{Hyperparams, ReplanState, TrueOnlineTdState};
use crate::numerics::dot;
use crate::oracle::{
    forward_fixed_theta_episode, forward_replay_episode, interim_return_direct, interim_return_recursive, TraceBuffer,
    WeightHistory,
};

pub const REPLAY_TOL: f64 = 1e-8;
pub const ONLINE_TOL: f64 = 1e-12;
pub const RETURN_TOL: f64 = 1e-12;

pub const LAMBDAS: [f64; 5] = [0.0, 0.3, 0.5, 0.9, 1.0];
pub const GAMMAS: [f64; 2] = [0.9, 1.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifySettings {
    pub episodes: usize,
    pub return_cases: usize,
    pub seed: u64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            episodes: 200,
            return_cases: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub episodes: usize,
    /// Incremental replan vs forward replay, final θ, relative.
    pub replay_max_rel: f64,
    /// λ́ = 0 interpolated replan vs true online TD, every step, absolute.
    pub online_max_abs: f64,
    /// Fixed-start forward view vs true online TD, final θ, relative.
    pub fixed_theta_max_rel: f64,
    pub return_cases: usize,
    /// Direct vs recursive interim return, absolute.
    pub returns_max_abs: f64,
    /// Both forms equal the one-step target bit for bit at `k = t`.
    pub horizon_exact: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.replay_max_rel <= REPLAY_TOL
            && self.fixed_theta_max_rel <= REPLAY_TOL
            && self.online_max_abs <= ONLINE_TOL
            && self.returns_max_abs <= RETURN_TOL
            && self.horizon_exact
    }
}

/// `‖x − y‖∞ / max(‖y‖∞, 1)`.
pub fn relative_error(x: &[f64], y: &[f64]) -> f64 {
    let scale = y.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    max_abs_diff(x, y) / scale
}

pub fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).fold(0.0_f64, |m, (a, b)| {
        let d = (a - b).abs();
        if d.is_nan() { f64::INFINITY } else { m.max(d) }
    })
}

/// A random episode with its hyperparameters and starting weights.
#[derive(Debug, Clone)]
pub struct Case {
    pub trace: TraceBuffer,
    pub theta0: Vec<f64>,
    pub hyper: Hyperparams,
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-1.0..1.0) * scale).collect()
}

/// n ∈ [2, 10], length ∈ [1, 50], α ∈ (0, 0.5], λ and γ from the fixed sets.
/// Features are uniform on `[−1, 1]/√n`; one case in four is truncated.
pub fn random_case(rng: &mut ChaCha8Rng) -> Case {
    let n = rng.gen_range(2..=10);
    let len = rng.gen_range(1..=50);
    let alpha = 0.5 * (1.0 - rng.gen::<f64>());
    let lambda = *LAMBDAS.choose(rng).expect("non-empty");
    let gamma = *GAMMAS.choose(rng).expect("non-empty");
    let scale = 1.0 / (n as f64).sqrt();
    let features: Vec<Vec<f64>> = (0..len).map(|_| random_vec(rng, n, scale)).collect();
    let rewards = random_vec(rng, len, 1.0);
    let trace = if rng.gen_bool(0.25) {
        let tail = random_vec(rng, n, scale);
        TraceBuffer::truncated(n, features, rewards, tail)
    } else {
        TraceBuffer::episode(n, features, rewards)
    }
    .expect("consistent dimensions");
    Case {
        trace,
        theta0: random_vec(rng, n, 1.0),
        hyper: Hyperparams::new(alpha, gamma, lambda),
    }
}

pub fn replay_error(case: &Case) -> Result<f64> {
    let mut learner = ReplanState::with_weights(case.theta0.clone());
    for (phi, phi_next, r) in case.trace.transitions() {
        learner.replan_step(phi, phi_next, r, &case.hyper)?;
    }
    let oracle = forward_replay_episode(&case.trace, &case.theta0, &case.hyper)?;
    Ok(relative_error(learner.theta(), oracle.last()))
}

pub fn online_error(case: &Case) -> Result<f64> {
    let h = case.hyper.with_lambda_replay(0.0);
    let mut replan = ReplanState::with_weights(case.theta0.clone());
    let mut online = TrueOnlineTdState::with_weights(case.theta0.clone());
    let mut worst = 0.0_f64;
    for (phi, phi_next, r) in case.trace.transitions() {
        replan.replan_interpolated_step(phi, phi_next, r, &h)?;
        online.step(phi, phi_next, r, &h)?;
        worst = worst.max(max_abs_diff(replan.theta(), online.theta()));
    }
    Ok(worst)
}

pub fn fixed_theta_error(case: &Case) -> Result<f64> {
    let mut online = TrueOnlineTdState::with_weights(case.theta0.clone());
    for (phi, phi_next, r) in case.trace.transitions() {
        online.step(phi, phi_next, r, &case.hyper)?;
    }
    let oracle = forward_fixed_theta_episode(&case.trace, &case.theta0, &case.hyper)?;
    Ok(relative_error(online.theta(), oracle.last()))
}

/// One random `(k, t, λ, γ)` case: returns the direct/recursive gap and
/// whether the `k = t` targets equal `R_{t+1} + γθ_tᵀφ_{t+1}` exactly.
pub fn return_case(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = rng.gen_range(1..=8);
    let len = rng.gen_range(1..=40);
    let features: Vec<Vec<f64>> = (0..len).map(|_| random_vec(rng, n, 1.0)).collect();
    let rewards = random_vec(rng, len, 1.0);
    let trace = TraceBuffer::truncated(n, features, rewards, random_vec(rng, n, 1.0))?;
    let hist = WeightHistory::from_thetas((0..=len).map(|_| random_vec(rng, n, 1.0)).collect());
    let t = rng.gen_range(0..len);
    let k = rng.gen_range(0..=t);
    let lambda = rng.gen::<f64>();
    let gamma = rng.gen::<f64>();

    let direct = interim_return_direct(&trace, &hist, k, t, lambda, gamma)?;
    let recursive = interim_return_recursive(&trace, &hist, k, t, lambda, gamma)?;
    let target = trace.rewards()[t] + gamma * dot(hist.get(t), trace.phi(t + 1))?;
    let at_horizon = [
        interim_return_direct(&trace, &hist, t, t, lambda, gamma)?,
        interim_return_recursive(&trace, &hist, t, t, lambda, gamma)?,
    ];
    Ok(((direct - recursive).abs(), at_horizon.iter().all(|g| *g == target)))
}

/// Runs all suites from `settings.seed`.
pub fn verify_all(settings: &VerifySettings) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut report = VerifyReport {
        episodes: settings.episodes,
        replay_max_rel: 0.0,
        online_max_abs: 0.0,
        fixed_theta_max_rel: 0.0,
        return_cases: settings.return_cases,
        returns_max_abs: 0.0,
        horizon_exact: true,
    };
    for _ in 0..settings.episodes {
        let case = random_case(&mut rng);
        report.replay_max_rel = report.replay_max_rel.max(replay_error(&case)?);
        report.online_max_abs = report.online_max_abs.max(online_error(&case)?);
        report.fixed_theta_max_rel = report.fixed_theta_max_rel.max(fixed_theta_error(&case)?);
    }
    for _ in 0..settings.return_cases {
        let (gap, exact) = return_case(&mut rng)?;
        report.returns_max_abs = report.returns_max_abs.max(gap);
        report.horizon_exact &= exact;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_error_floor_is_one() {
        assert_eq!(relative_error(&[1.5], &[1.0]), 0.5);
        assert_eq!(relative_error(&[0.1], &[0.0]), 0.1);
        assert_eq!(relative_error(&[21.0], &[20.0]), 0.05);
        assert_eq!(max_abs_diff(&[f64::NAN], &[0.0]), f64::INFINITY);
    }

    #[test]
    fn cases_respect_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let c = random_case(&mut rng);
            let n = c.trace.n_features();
            assert!((2..=10).contains(&n));
            assert!((1..=50).contains(&c.trace.len()));
            assert!(c.hyper.alpha > 0.0 && c.hyper.alpha <= 0.5);
            assert!(LAMBDAS.contains(&c.hyper.lambda) && GAMMAS.contains(&c.hyper.gamma));
        }
    }

    #[test]
    fn small_suite_passes() {
        let report = verify_all(&VerifySettings {
            episodes: 20,
            return_cases: 50,
            seed: 11,
        })
        .unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn replay_and_fixed_start_views_differ() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let case = std::iter::repeat_with(|| random_case(&mut rng))
            .find(|c| c.trace.len() > 2)
            .unwrap();
        let fixed = forward_fixed_theta_episode(&case.trace, &case.theta0, &case.hyper).unwrap();
        let replay = forward_replay_episode(&case.trace, &case.theta0, &case.hyper).unwrap();
        assert!(relative_error(fixed.last(), replay.last()) > REPLAY_TOL);
    }
}
