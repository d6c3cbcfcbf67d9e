//! File-backed episodes of precomputed feature vectors.
//!
//! File layout, comma separated with a header row:
//!
//! ```text
//! episode,step,reward,f0,f1,...,f{n-1}
//! ```
//!
//! Row `(e, k)` holds `φ_k` of episode `e` and the reward received on
//! leaving it. Rows are sorted by episode then step, steps count up from 0,
//! and each episode ends in a terminal state.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fsio::write_atomic;
use crate::oracle::TraceBuffer;

pub const DEFAULT_TRACE_GAMMA: f64 = 0.95;

#[derive(Debug, Clone, PartialEq)]
pub struct TraceDataset {
    pub episodes: Vec<TraceBuffer>,
    pub n_features: usize,
    /// Discount used for the Monte Carlo ground truth.
    pub gamma_truth: f64,
}

impl TraceDataset {
    pub fn new(episodes: Vec<TraceBuffer>, n_features: usize) -> Result<Self> {
        if let Some(bad) = episodes.iter().find(|e| e.n_features() != n_features) {
            return Err(Error::Dimension {
                expected: n_features,
                actual: bad.n_features(),
            });
        }
        Ok(TraceDataset {
            episodes,
            n_features,
            gamma_truth: DEFAULT_TRACE_GAMMA,
        })
    }

    pub fn with_gamma_truth(mut self, gamma: f64) -> Self {
        self.gamma_truth = gamma;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.episodes.is_empty()
    }
}

/// Reads a trace file. An empty file yields an empty dataset.
pub fn load_trace(path: impl AsRef<Path>) -> Result<TraceDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_trace(&text, path)
}

fn parse_trace(text: &str, path: &Path) -> Result<TraceDataset> {
    let parse_err = |line: u64, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let schema_err = |message: String| Error::Schema {
        path: path.to_path_buf(),
        message,
    };

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let Some(header) = records.next() else {
        return TraceDataset::new(Vec::new(), 0);
    };
    let header = header.map_err(|e| parse_err(1, e.to_string()))?;
    let columns: Vec<&str> = header.iter().collect();
    if columns.len() < 3 || columns[..3] != ["episode", "step", "reward"] {
        return Err(parse_err(1, "header must start with `episode,step,reward`".into()));
    }
    let n_features = columns.len() - 3;
    for (i, name) in columns[3..].iter().enumerate() {
        if *name != format!("f{i}") {
            return Err(parse_err(1, format!("expected feature column `f{i}`, found `{name}`")));
        }
    }

    let mut episodes = Vec::new();
    let mut current: Option<(u64, Vec<Vec<f64>>, Vec<f64>)> = None;
    for record in records {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != n_features + 3 {
            return Err(schema_err(format!(
                "line {line}: {} fields, header declares {}",
                record.len(),
                n_features + 3
            )));
        }
        let episode: u64 = record[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad episode id `{}`", &record[0])))?;
        let step: usize = record[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad step `{}`", &record[1])))?;
        let mut values = Vec::with_capacity(n_features + 1);
        for field in record.iter().skip(2) {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| parse_err(line, format!("bad number `{field}`")))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("non-finite value `{field}`")));
            }
            values.push(v);
        }
        let reward = values.remove(0);

        match &mut current {
            Some((id, features, rewards)) if *id == episode => {
                if step != features.len() {
                    return Err(parse_err(line, format!("expected step {}, found {step}", features.len())));
                }
                features.push(values);
                rewards.push(reward);
            }
            _ => {
                if let Some((id, features, rewards)) = current.take() {
                    if episode < id {
                        return Err(parse_err(line, format!("episode {episode} follows episode {id}")));
                    }
                    episodes.push(TraceBuffer::episode(n_features, features, rewards)?);
                }
                if step != 0 {
                    return Err(parse_err(line, format!("episode {episode} starts at step {step}, expected 0")));
                }
                current = Some((episode, vec![values], vec![reward]));
            }
        }
    }
    if let Some((_, features, rewards)) = current {
        episodes.push(TraceBuffer::episode(n_features, features, rewards)?);
    }
    TraceDataset::new(episodes, n_features)
}

/// Serialises a dataset in the trace-file layout (LF line endings).
pub fn trace_to_string(dataset: &TraceDataset) -> String {
    let mut out = String::from("episode,step,reward");
    for i in 0..dataset.n_features {
        out.push_str(&format!(",f{i}"));
    }
    out.push('\n');
    for (e, episode) in dataset.episodes.iter().enumerate() {
        for (k, (phi, reward)) in episode.features().iter().zip(episode.rewards()).enumerate() {
            out.push_str(&format!("{e},{k},{reward}"));
            for x in phi {
                out.push_str(&format!(",{x}"));
            }
            out.push('\n');
        }
    }
    out
}

pub fn write_trace(dataset: &TraceDataset, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), trace_to_string(dataset).as_bytes())
}

/// Discounted return from every step, `G_k = R_{k+1} + γ G_{k+1}`, with the
/// return after the last recorded step taken as 0.
pub fn mc_ground_truth(trace: &TraceBuffer, gamma: f64) -> Vec<f64> {
    let mut returns = vec![0.0; trace.len()];
    let mut g = 0.0;
    for (k, &r) in trace.rewards().iter().enumerate().rev() {
        g = r + gamma * g;
        returns[k] = g;
    }
    returns
}

/// Parameters for [`synthetic_traces`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticTraceSpec {
    pub n_features: usize,
    pub episodes: usize,
    pub max_steps: usize,
    /// Amplitude of the uniform noise added to every sensor channel.
    pub sensor_noise: f64,
}

impl Default for SyntheticTraceSpec {
    fn default() -> Self {
        SyntheticTraceSpec {
            n_features: 16,
            episodes: 60,
            max_steps: 80,
            sensor_noise: 0.1,
        }
    }
}

/// Cursor-homing episodes observed through noisy sensors.
///
/// A hidden 1-D cursor starts at one of six offsets and drifts toward the
/// origin. The reward is the cursor offset after each move. Features are
/// Gaussian bumps over the offset plus uniform noise, normalised to sum to 1.
pub fn synthetic_traces(spec: &SyntheticTraceSpec, seed: u64) -> TraceDataset {
    const STARTS: [f64; 6] = [-1.0, -0.7, -0.4, 0.4, 0.7, 1.0];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n_features;
    let centres: Vec<f64> = (0..n)
        .map(|i| -1.2 + 2.4 * i as f64 / (n.max(2) - 1) as f64)
        .collect();
    let width = 2.4 / n as f64;
    let observe = |x: f64, rng: &mut ChaCha8Rng| -> Vec<f64> {
        let mut phi: Vec<f64> = centres
            .iter()
            .map(|c| (-(x - c).powi(2) / (2.0 * width * width)).exp() + spec.sensor_noise * rng.gen::<f64>())
            .collect();
        let total: f64 = phi.iter().sum();
        phi.iter_mut().for_each(|p| *p /= total);
        phi
    };

    let episodes = (0..spec.episodes)
        .map(|_| {
            let mut x = STARTS[rng.gen_range(0..STARTS.len())];
            let mut features = Vec::new();
            let mut rewards = Vec::new();
            for _ in 0..spec.max_steps {
                features.push(observe(x, &mut rng));
                x += -0.08 * x + rng.gen_range(-0.04..0.04);
                rewards.push(x);
                if x.abs() < 0.05 {
                    break;
                }
            }
            TraceBuffer::episode(n, features, rewards).expect("consistent dimensions")
        })
        .collect();
    TraceDataset::new(episodes, n).expect("consistent dimensions")
}
