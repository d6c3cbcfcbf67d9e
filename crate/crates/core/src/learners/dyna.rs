use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::learners::true_online::td0_update;
use crate::learners::{check_transition, check_weights, Hyperparams};
use crate::numerics::{axpy_unchecked, dot, dot_unchecked, SquareMatrix};

/// Linear Dyna planning.
///
/// Learns an expectation model `φ' ≈ Fφ`, `R ≈ bᵀφ` with LMS updates and,
/// after every real step, performs `planning_steps` TD(0) updates on feature
/// vectors drawn uniformly from everything observed so far.
#[derive(Debug, Clone)]
pub struct DynaState {
    theta: Vec<f64>,
    model: SquareMatrix,
    reward_model: Vec<f64>,
    memory: Vec<Vec<f64>>,
    rng: ChaCha8Rng,
    predicted: Vec<f64>,
}

impl DynaState {
    pub fn new(n: usize, seed: u64) -> Self {
        DynaState {
            theta: vec![0.0; n],
            model: SquareMatrix::zeros(n),
            reward_model: vec![0.0; n],
            memory: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            predicted: vec![0.0; n],
        }
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn model(&self) -> &SquareMatrix {
        &self.model
    }

    pub fn reward_model(&self) -> &[f64] {
        &self.reward_model
    }

    pub fn memory(&self) -> &[Vec<f64>] {
        &self.memory
    }

    pub fn predict(&self, phi: &[f64]) -> Result<f64> {
        dot(&self.theta, phi)
    }

    pub fn step(&mut self, phi: &[f64], phi_next: &[f64], reward: f64, h: &Hyperparams) -> Result<()> {
        check_transition(self.theta.len(), phi, phi_next, reward)?;
        let alpha = h.alpha;

        td0_update(&mut self.theta, phi, phi_next, reward, alpha, h.gamma);

        // F ← F + α(φ' − Fφ)φᵀ
        self.model.mul_vec_into(phi, &mut self.predicted)?;
        for (p, &next) in self.predicted.iter_mut().zip(phi_next) {
            *p = next - *p;
        }
        self.model.add_outer(alpha, &self.predicted, phi)?;
        // b ← b + α(R − bᵀφ)φ
        let reward_error = reward - dot_unchecked(&self.reward_model, phi);
        axpy_unchecked(&mut self.reward_model, alpha * reward_error, phi);

        self.memory.push(phi.to_vec());

        for _ in 0..h.planning_steps {
            let idx = self.rng.gen_range(0..self.memory.len());
            let sample = &self.memory[idx];
            self.model.mul_vec_into(sample, &mut self.predicted)?;
            let simulated_reward = dot_unchecked(&self.reward_model, sample);
            td0_update(&mut self.theta, sample, &self.predicted, simulated_reward, alpha, h.gamma);
        }
        check_weights(&self.theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::Td0State;

    #[test]
    fn no_planning_matches_td0() {
        let h = Hyperparams::new(0.3, 0.9, 0.0).with_planning_steps(0);
        let mut dyna = DynaState::new(3, 7);
        let mut td0 = Td0State::new(3);
        let steps = [
            ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 0.5),
            ([0.0, 1.0, 0.0], [0.0, 0.0, 1.0], -0.25),
            ([0.0, 0.0, 1.0], [0.0, 0.0, 0.0], 1.0),
            ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 0.5),
        ];
        for (phi, next, r) in steps {
            dyna.step(&phi, &next, r, &h).unwrap();
            td0.step(&phi, &next, r, &h).unwrap();
            assert_eq!(dyna.theta(), td0.theta());
        }
        assert_eq!(dyna.memory().len(), 4);
    }

    #[test]
    fn one_step_model_points_at_next_state() {
        let h = Hyperparams::new(0.25, 1.0, 0.0).with_planning_steps(0);
        let mut dyna = DynaState::new(3, 0);
        dyna.step(&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0], 2.0, &h).unwrap();
        // F starts at zero, so Fφ = α·φ'.
        let mut predicted = vec![0.0; 3];
        dyna.model().mul_vec_into(&[1.0, 0.0, 0.0], &mut predicted).unwrap();
        assert_eq!(predicted, vec![0.0, 0.0, 0.25]);
        assert_eq!(dyna.reward_model(), &[0.5, 0.0, 0.0]);
    }

    #[test]
    fn planning_on_first_step_uses_that_step() {
        let h = Hyperparams::new(0.5, 1.0, 0.0).with_planning_steps(3);
        let mut dyna = DynaState::new(2, 1);
        dyna.step(&[1.0, 0.0], &[0.0, 0.0], 1.0, &h).unwrap();
        // Direct update gives 0.5; each planning update on R̂ = 0.5 keeps it at 0.5.
        assert!((dyna.theta()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn deterministic_chain_converges() {
        // s1 → s2 → terminal with rewards 0 then 1 and γ = 1: V(s1) = V(s2) = 1.
        let h = Hyperparams::new(0.1, 1.0, 0.0).with_planning_steps(10);
        let mut dyna = DynaState::new(2, 99);
        for _ in 0..50 {
            dyna.step(&[1.0, 0.0], &[0.0, 1.0], 0.0, &h).unwrap();
            dyna.step(&[0.0, 1.0], &[0.0, 0.0], 1.0, &h).unwrap();
        }
        assert!((dyna.predict(&[1.0, 0.0]).unwrap() - 1.0).abs() < 0.05);
        assert!((dyna.predict(&[0.0, 1.0]).unwrap() - 1.0).abs() < 0.05);
    }
}
