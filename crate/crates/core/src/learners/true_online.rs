use crate::error::Result;
use crate::learners::{check_transition, check_weights, Hyperparams};
use crate::numerics::{axpy_unchecked, dot, dot_unchecked};

/// Linear true online TD(λ) with a dutch trace. The trace here absorbs the
/// step size, so `e` is α times the textbook dutch trace.
#[derive(Debug, Clone)]
pub struct TrueOnlineTdState {
    theta: Vec<f64>,
    e: Vec<f64>,
    v_old: f64,
}

impl TrueOnlineTdState {
    pub fn new(n: usize) -> Self {
        Self::with_weights(vec![0.0; n])
    }

    pub fn with_weights(theta: Vec<f64>) -> Self {
        TrueOnlineTdState {
            e: vec![0.0; theta.len()],
            theta,
            v_old: 0.0,
        }
    }

    pub fn begin_episode(&mut self) {
        self.e.iter_mut().for_each(|x| *x = 0.0);
        self.v_old = 0.0;
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn e(&self) -> &[f64] {
        &self.e
    }

    pub fn v_old(&self) -> f64 {
        self.v_old
    }

    pub fn predict(&self, phi: &[f64]) -> Result<f64> {
        dot(&self.theta, phi)
    }

    pub fn step(&mut self, phi: &[f64], phi_next: &[f64], reward: f64, h: &Hyperparams) -> Result<()> {
        check_transition(self.theta.len(), phi, phi_next, reward)?;
        let (alpha, gamma_lambda) = (h.alpha, h.gamma * h.lambda);
        let v = dot_unchecked(&self.theta, phi);
        let v_next = dot_unchecked(&self.theta, phi_next);
        let delta = reward + h.gamma * v_next - v;

        let e_phi = dot_unchecked(&self.e, phi);
        self.e.iter_mut().for_each(|x| *x *= gamma_lambda);
        axpy_unchecked(&mut self.e, alpha * (1.0 - gamma_lambda * e_phi), phi);

        axpy_unchecked(&mut self.theta, delta + v - self.v_old, &self.e);
        axpy_unchecked(&mut self.theta, -alpha * (v - self.v_old), phi);
        self.v_old = v_next;
        check_weights(&self.theta)
    }
}

/// Linear TD(0): `θ ← θ + αφ(R + γθᵀφ' − θᵀφ)`.
#[derive(Debug, Clone)]
pub struct Td0State {
    theta: Vec<f64>,
}

impl Td0State {
    pub fn new(n: usize) -> Self {
        Self::with_weights(vec![0.0; n])
    }

    pub fn with_weights(theta: Vec<f64>) -> Self {
        Td0State { theta }
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn predict(&self, phi: &[f64]) -> Result<f64> {
        dot(&self.theta, phi)
    }

    pub fn step(&mut self, phi: &[f64], phi_next: &[f64], reward: f64, h: &Hyperparams) -> Result<()> {
        check_transition(self.theta.len(), phi, phi_next, reward)?;
        td0_update(&mut self.theta, phi, phi_next, reward, h.alpha, h.gamma);
        check_weights(&self.theta)
    }
}

pub(crate) fn td0_update(theta: &mut [f64], phi: &[f64], phi_next: &[f64], reward: f64, alpha: f64, gamma: f64) {
    let delta = reward + gamma * dot_unchecked(theta, phi_next) - dot_unchecked(theta, phi);
    axpy_unchecked(theta, alpha * delta, phi);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
    }

    #[test]
    fn td0_terminal_transition() {
        let h = Hyperparams::new(0.5, 0.9, 0.0);
        let mut s = Td0State::with_weights(vec![0.2, 0.4]);
        s.step(&[1.0, 1.0], &[0.0, 0.0], 1.0, &h).unwrap();
        // R − θᵀφ = 0.4, so each weight moves by 0.2.
        assert!((s.theta()[0] - 0.4).abs() < 1e-15);
        assert!((s.theta()[1] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn zero_alpha_changes_nothing() {
        let h = Hyperparams::new(0.0, 1.0, 0.8);
        let mut td0 = Td0State::with_weights(vec![1.0, -1.0]);
        let mut totd = TrueOnlineTdState::with_weights(vec![1.0, -1.0]);
        totd.begin_episode();
        for _ in 0..3 {
            td0.step(&[1.0, 0.5], &[0.5, 1.0], 2.0, &h).unwrap();
            totd.step(&[1.0, 0.5], &[0.5, 1.0], 2.0, &h).unwrap();
        }
        assert_eq!(td0.theta(), &[1.0, -1.0]);
        assert_eq!(totd.theta(), &[1.0, -1.0]);
    }

    #[test]
    fn lambda_zero_true_online_is_td0() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = Hyperparams::new(0.2, 0.95, 0.0);
        let theta = random_vec(&mut rng, 5);
        let mut td0 = Td0State::with_weights(theta.clone());
        let mut totd = TrueOnlineTdState::with_weights(theta);
        for _ in 0..3 {
            totd.begin_episode();
            for _ in 0..20 {
                let (phi, next, r) = (random_vec(&mut rng, 5), random_vec(&mut rng, 5), rng.gen_range(-1.0..1.0));
                td0.step(&phi, &next, r, &h).unwrap();
                totd.step(&phi, &next, r, &h).unwrap();
                for (a, b) in td0.theta().iter().zip(totd.theta()) {
                    assert!((a - b).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn begin_episode_resets_trace_only() {
        let h = Hyperparams::new(0.1, 1.0, 0.9);
        let mut s = TrueOnlineTdState::new(2);
        s.begin_episode();
        s.step(&[1.0, 0.0], &[0.0, 1.0], 1.0, &h).unwrap();
        let theta = s.theta().to_vec();
        s.begin_episode();
        assert_eq!(s.theta(), &theta[..]);
        assert_eq!(s.e(), &[0.0, 0.0]);
        assert_eq!(s.v_old(), 0.0);
    }
}
