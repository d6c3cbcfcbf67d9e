use rand::Rng;

use crate::envs::Transition;
use crate::error::{Error, Result};

/// Total number of states, including the right-hand terminal.
pub const RW_STATES: usize = 17;
/// Non-terminal states; also the feature dimension and the `n` of the
/// `±1/n` rewards.
pub const RW_NONTERMINAL: usize = 16;

const STEP_REWARD: f64 = 1.0 / RW_NONTERMINAL as f64;

/// The 17-state random walk.
///
/// Positions run `1..=17` from left to right. Every episode starts at
/// position 1 and ends on entering position 17. Each step moves left or
/// right with probability ½:
///
/// * moving right earns `+1/16`, except the move into the terminal, which
///   earns 0;
/// * moving left earns `−1/16`, except at position 1, where the walk stays
///   put and earns 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomWalk {
    position: usize,
}

impl Default for RandomWalk {
    fn default() -> Self {
        Self::new()
    }
}

impl RandomWalk {
    pub fn new() -> Self {
        RandomWalk { position: 1 }
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn is_terminal(&self) -> bool {
        self.position == RW_STATES
    }

    /// Moves to the leftmost state and returns its features.
    pub fn reset(&mut self) -> Vec<f64> {
        self.position = 1;
        features(1)
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<Transition> {
        let right = rng.gen_bool(0.5);
        self.step_direction(right)
    }

    /// Applies a chosen move instead of drawing one.
    pub fn step_direction(&mut self, right: bool) -> Result<Transition> {
        if self.is_terminal() {
            return Err(Error::Usage("random walk stepped after reaching the terminal state".into()));
        }
        let reward = match (right, self.position) {
            (true, p) if p + 1 == RW_STATES => 0.0,
            (true, _) => STEP_REWARD,
            (false, 1) => 0.0,
            (false, _) => -STEP_REWARD,
        };
        if right {
            self.position += 1;
        } else if self.position > 1 {
            self.position -= 1;
        }
        let terminal = self.is_terminal();
        Ok(Transition {
            phi_next: features(self.position),
            reward,
            terminal,
        })
    }
}

/// One-hot features for a position; the terminal maps to the zero vector.
pub fn features(position: usize) -> Vec<f64> {
    let mut phi = vec![0.0; RW_NONTERMINAL];
    if (1..=RW_NONTERMINAL).contains(&position) {
        phi[position - 1] = 1.0;
    }
    phi
}

/// Analytic value `(i − 1)/16` of the state labelled `i`, where labels count
/// from the terminal end: label 1 is the state next to the terminal and
/// label 16 is the leftmost start state.
pub fn rw_true_value(label: usize) -> Result<f64> {
    if !(1..=RW_NONTERMINAL).contains(&label) {
        return Err(Error::Index(format!("random-walk state label {label} outside 1..=16")));
    }
    Ok((label - 1) as f64 / RW_NONTERMINAL as f64)
}

/// Label used by [`rw_true_value`] for a left-to-right position.
pub fn label_of_position(position: usize) -> usize {
    RW_STATES - position
}

/// Analytic value of a left-to-right position, `(16 − position)/16`.
pub fn true_value_at_position(position: usize) -> Result<f64> {
    if !(1..=RW_NONTERMINAL).contains(&position) {
        return Err(Error::Index(format!("random-walk position {position} outside 1..=16")));
    }
    rw_true_value(label_of_position(position))
}

/// Analytic values indexed like the feature vector.
pub fn true_values() -> Vec<f64> {
    (1..=RW_NONTERMINAL)
        .map(|p| true_value_at_position(p).expect("position in range"))
        .collect()
}
