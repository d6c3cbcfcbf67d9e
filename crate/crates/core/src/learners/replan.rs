use crate::error::Result;
use crate::learners::{check_transition, check_weights, Hyperparams};
use crate::numerics::{axpy_unchecked, dot, dot_unchecked, SquareMatrix};

/// State of true online TD(λ)-Replan(λ́).
///
/// Replaying every past update of the episode from the latest weights
/// collapses into `θ_{t+1} = Ā_t θ_t + ē_t`, where `Ā_t` is the product of
/// all `(I − αφ_kφ_kᵀ)` seen so far this episode and `ē_t` accumulates the
/// replayed targets. Each step costs `O(n²)` regardless of episode length.
#[derive(Debug, Clone)]
pub struct ReplanState {
    theta: Vec<f64>,
    theta_ep0: Vec<f64>,
    e: Vec<f64>,
    e_bar: Vec<f64>,
    a_bar: SquareMatrix,
    v_old: f64,
    work: Vec<f64>,
    next_theta: Vec<f64>,
}

impl ReplanState {
    pub fn new(n: usize) -> Self {
        Self::with_weights(vec![0.0; n])
    }

    pub fn with_weights(theta: Vec<f64>) -> Self {
        let n = theta.len();
        ReplanState {
            theta_ep0: theta.clone(),
            theta,
            e: vec![0.0; n],
            e_bar: vec![0.0; n],
            a_bar: SquareMatrix::identity(n),
            v_old: 0.0,
            work: vec![0.0; n],
            next_theta: vec![0.0; n],
        }
    }

    /// `e = ē = 0`, `Ā = I`, `V_old = 0` and snapshots `θ₀ ← θ`.
    pub fn begin_episode(&mut self) {
        self.theta_ep0.copy_from_slice(&self.theta);
        self.e.iter_mut().for_each(|x| *x = 0.0);
        self.e_bar.iter_mut().for_each(|x| *x = 0.0);
        self.a_bar.set_identity();
        self.v_old = 0.0;
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn theta_ep0(&self) -> &[f64] {
        &self.theta_ep0
    }

    pub fn e(&self) -> &[f64] {
        &self.e
    }

    pub fn e_bar(&self) -> &[f64] {
        &self.e_bar
    }

    pub fn a_bar(&self) -> &SquareMatrix {
        &self.a_bar
    }

    pub fn v_old(&self) -> f64 {
        self.v_old
    }

    pub fn predict(&self, phi: &[f64]) -> Result<f64> {
        dot(&self.theta, phi)
    }

    /// Full-replay step: `θ ← Āθ + ē`.
    pub fn replan_step(&mut self, phi: &[f64], phi_next: &[f64], reward: f64, h: &Hyperparams) -> Result<()> {
        check_transition(self.theta.len(), phi, phi_next, reward)?;
        self.update_traces(phi, phi_next, reward, h);
        self.a_bar.mul_vec_into(&self.theta, &mut self.next_theta)?;
        self.finish_step()
    }

    /// Partial-replay step: `θ ← Ā(λ́θ + (1 − λ́)θ₀) + ē`.
    ///
    /// `λ́ = 1` takes exactly the [`replan_step`](Self::replan_step) path;
    /// `λ́ = 0` reproduces true online TD(λ).
    pub fn replan_interpolated_step(
        &mut self,
        phi: &[f64],
        phi_next: &[f64],
        reward: f64,
        h: &Hyperparams,
    ) -> Result<()> {
        if h.lambda_replay == 1.0 {
            return self.replan_step(phi, phi_next, reward, h);
        }
        check_transition(self.theta.len(), phi, phi_next, reward)?;
        self.update_traces(phi, phi_next, reward, h);
        let mix = h.lambda_replay;
        for ((w, &th), &th0) in self.work.iter_mut().zip(&self.theta).zip(&self.theta_ep0) {
            *w = mix * th + (1.0 - mix) * th0;
        }
        self.a_bar.mul_vec_into(&self.work, &mut self.next_theta)?;
        self.finish_step()
    }

    // Updates e, ē, Ā and V_old; θ is left for the caller.
    fn update_traces(&mut self, phi: &[f64], phi_next: &[f64], reward: f64, h: &Hyperparams) {
        let (alpha, gamma_lambda) = (h.alpha, h.gamma * h.lambda);
        let v = dot_unchecked(&self.theta, phi);
        let v_next = dot_unchecked(&self.theta, phi_next);
        let delta = reward + h.gamma * v_next - v;

        let e_phi = dot_unchecked(&self.e, phi);
        self.e.iter_mut().for_each(|x| *x *= gamma_lambda);
        axpy_unchecked(&mut self.e, alpha * (1.0 - gamma_lambda * e_phi), phi);

        let e_bar_phi = dot_unchecked(&self.e_bar, phi);
        axpy_unchecked(&mut self.e_bar, -alpha * (e_bar_phi - self.v_old), phi);
        axpy_unchecked(&mut self.e_bar, delta + v - self.v_old, &self.e);

        self.a_bar
            .rank1_left_update_with(phi, alpha, &mut self.work)
            .expect("dimensions checked");

        self.v_old = v_next;
    }

    fn finish_step(&mut self) -> Result<()> {
        axpy_unchecked(&mut self.next_theta, 1.0, &self.e_bar);
        std::mem::swap(&mut self.theta, &mut self.next_theta);
        check_weights(&self.theta)
    }
}
