use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::envs::{rw_features, RandomWalk, TraceDataset, RW_NONTERMINAL};
use crate::error::{Error, Result};
use crate::harness::metrics::{rmse_random_walk, rmse_trace_mc};
use crate::harness::seed::derive_seed;
use crate::learners::{Agent, Algorithm, Hyperparams, Learner};

pub const RW_DEFAULT_EPISODES: usize = 10;
pub const RW_DEFAULT_TRIALS: usize = 20;
pub const TRACE_DEFAULT_TRIALS: usize = 66;

/// Where transitions come from.
#[derive(Debug, Clone)]
pub enum EnvSpec {
    RandomWalk,
    /// Each trial draws `episodes` episodes from the dataset.
    Trace(Arc<TraceDataset>),
}

impl EnvSpec {
    pub fn n_features(&self) -> usize {
        match self {
            EnvSpec::RandomWalk => RW_NONTERMINAL,
            EnvSpec::Trace(d) => d.n_features,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub hyper: Hyperparams,
    pub episodes: usize,
    pub trials: usize,
    pub seed: u64,
    pub env: EnvSpec,
}

impl RunConfig {
    /// Random-walk defaults: 10 episodes, 20 trials, γ = 1.
    pub fn random_walk(algorithm: Algorithm, hyper: Hyperparams, seed: u64) -> Self {
        RunConfig {
            algorithm,
            hyper,
            episodes: RW_DEFAULT_EPISODES,
            trials: RW_DEFAULT_TRIALS,
            seed,
            env: EnvSpec::RandomWalk,
        }
    }

    /// Trace defaults: 10 episodes, 66 trials.
    pub fn trace(algorithm: Algorithm, hyper: Hyperparams, seed: u64, data: Arc<TraceDataset>) -> Self {
        RunConfig {
            algorithm,
            hyper,
            episodes: RW_DEFAULT_EPISODES,
            trials: TRACE_DEFAULT_TRIALS,
            seed,
            env: EnvSpec::Trace(data),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.hyper.validate()?;
        if self.episodes == 0 || self.trials == 0 {
            return Err(Error::Usage("episodes and trials must both be at least 1".into()));
        }
        if let EnvSpec::Trace(d) = &self.env {
            if d.is_empty() {
                return Err(Error::Usage("trace dataset has no episodes".into()));
            }
            if d.n_features == 0 {
                return Err(Error::Usage("trace dataset has no feature columns".into()));
            }
        }
        Ok(())
    }

    /// Seed of the environment stream for one trial. It ignores the
    /// algorithm and hyperparameters, so every cell of a sweep sees the same
    /// episodes in trial `i`.
    pub fn env_seed(&self, trial: usize) -> u64 {
        derive_seed(&[self.seed, trial as u64])
    }

    /// Seed for learner-internal randomness (Dyna's memory sampling).
    pub fn learner_seed(&self, trial: usize) -> u64 {
        derive_seed(&[self.seed, trial as u64, 0x004c_4541_524e_4552])
    }
}

/// Per-episode RMSE of every trial plus cross-trial statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningCurve {
    pub algorithm: Algorithm,
    pub hyper: Hyperparams,
    /// `per_trial[trial][episode]`.
    pub per_trial: Vec<Vec<f64>>,
}

impl LearningCurve {
    pub fn episodes(&self) -> usize {
        self.per_trial.first().map_or(0, Vec::len)
    }

    pub fn trials(&self) -> usize {
        self.per_trial.len()
    }

    /// Mean RMSE per episode across trials.
    pub fn mean(&self) -> Vec<f64> {
        (0..self.episodes())
            .map(|e| mean(self.per_trial.iter().map(|t| t[e])))
            .collect()
    }

    /// Standard error of the per-episode mean across trials.
    pub fn stderr(&self) -> Vec<f64> {
        (0..self.episodes())
            .map(|e| std_error(&self.per_trial.iter().map(|t| t[e]).collect::<Vec<_>>()))
            .collect()
    }

    /// Mean RMSE over all episodes and trials.
    pub fn overall_mean(&self) -> f64 {
        mean(self.trial_means().into_iter())
    }

    /// Standard error of the per-trial mean RMSE.
    pub fn overall_stderr(&self) -> f64 {
        std_error(&self.trial_means())
    }

    fn trial_means(&self) -> Vec<f64> {
        self.per_trial.iter().map(|t| mean(t.iter().copied())).collect()
    }
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}

fn std_error(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values.iter().copied());
    let var = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1) as f64;
    (var / n as f64).sqrt()
}

/// Runs one trial from zero weights and returns the RMSE measured at the end
/// of every episode. Weights persist across the trial's episodes.
pub fn run_trial(config: &RunConfig, trial: usize) -> Result<Vec<f64>> {
    config.validate()?;
    let mut agent = Agent::new(
        config.algorithm,
        config.env.n_features(),
        config.hyper,
        config.learner_seed(trial),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.env_seed(trial));
    match &config.env {
        EnvSpec::RandomWalk => run_random_walk(&mut agent, config.episodes, &mut rng),
        EnvSpec::Trace(data) => run_traces(&mut agent, data, config.episodes, &mut rng),
    }
}

fn run_random_walk<L: Learner>(agent: &mut L, episodes: usize, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    let mut env = RandomWalk::new();
    let mut curve = Vec::with_capacity(episodes);
    for _ in 0..episodes {
        agent.begin_episode();
        let mut phi = env.reset();
        while !env.is_terminal() {
            let t = env.step(rng)?;
            agent.step(&phi, &t.phi_next, t.reward)?;
            phi = t.phi_next;
        }
        curve.push(rmse_random_walk(agent.weights())?);
    }
    Ok(curve)
}

/// Episode order for one trace trial: a random draw without replacement,
/// with replacement when the dataset is smaller than the trial.
fn pick_episodes(rng: &mut ChaCha8Rng, available: usize, wanted: usize) -> Vec<usize> {
    if wanted <= available {
        sample(rng, available, wanted).into_vec()
    } else {
        (0..wanted).map(|_| rng.gen_range(0..available)).collect()
    }
}

fn run_traces<L: Learner>(agent: &mut L, data: &TraceDataset, episodes: usize, rng: &mut ChaCha8Rng) -> Result<Vec<f64>> {
    let order = pick_episodes(rng, data.episodes.len(), episodes);
    let mut curve = Vec::with_capacity(episodes);
    for idx in order {
        let trace = &data.episodes[idx];
        agent.begin_episode();
        for (phi, phi_next, reward) in trace.transitions() {
            agent.step(phi, phi_next, reward)?;
        }
        curve.push(rmse_trace_mc(agent, trace, data.gamma_truth)?);
    }
    Ok(curve)
}

/// Runs every trial of `config` serially.
pub fn run_trials(config: &RunConfig) -> Result<LearningCurve> {
    config.validate()?;
    let per_trial = (0..config.trials)
        .map(|trial| run_trial(config, trial))
        .collect::<Result<Vec<_>>>()?;
    Ok(LearningCurve {
        algorithm: config.algorithm,
        hyper: config.hyper,
        per_trial,
    })
}

/// Plays one random-walk episode with a fixed seed and returns the visited
/// positions' one-hot features and rewards. Handy for building oracle traces.
pub fn record_random_walk_episode(seed: u64) -> Result<crate::oracle::TraceBuffer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut env = RandomWalk::new();
    let mut features = vec![env.reset()];
    let mut rewards = Vec::new();
    loop {
        let t = env.step(&mut rng)?;
        rewards.push(t.reward);
        if t.terminal {
            break;
        }
        features.push(rw_features(env.position()));
    }
    crate::oracle::TraceBuffer::episode(RW_NONTERMINAL, features, rewards)
}
