use crate::envs::{mc_ground_truth, rw_true_values, RW_NONTERMINAL};
use crate::error::{Error, Result};
use crate::learners::Learner;
use crate::oracle::TraceBuffer;

/// Root mean squared error of one-hot random-walk estimates against the
/// analytic values, averaged uniformly over the 16 non-terminal states.
pub fn rmse_random_walk(theta: &[f64]) -> Result<f64> {
    if theta.len() != RW_NONTERMINAL {
        return Err(Error::Dimension {
            expected: RW_NONTERMINAL,
            actual: theta.len(),
        });
    }
    let truth = rw_true_values();
    let sse: f64 = theta.iter().zip(&truth).map(|(v, t)| (v - t).powi(2)).sum();
    Ok((sse / RW_NONTERMINAL as f64).sqrt())
}

/// RMSE of the learner's predictions over every step of `trace` against
/// `truth` (one value per step).
pub fn rmse_trace<L: Learner + ?Sized>(learner: &L, trace: &TraceBuffer, truth: &[f64]) -> Result<f64> {
    if truth.len() != trace.len() {
        return Err(Error::Dimension {
            expected: trace.len(),
            actual: truth.len(),
        });
    }
    if truth.is_empty() {
        return Ok(0.0);
    }
    let mut sse = 0.0;
    for (phi, g) in trace.features().iter().zip(truth) {
        sse += (learner.predict(phi)? - g).powi(2);
    }
    Ok((sse / truth.len() as f64).sqrt())
}

/// [`rmse_trace`] against Monte Carlo returns at discount `gamma`.
pub fn rmse_trace_mc<L: Learner + ?Sized>(learner: &L, trace: &TraceBuffer, gamma: f64) -> Result<f64> {
    rmse_trace(learner, trace, &mc_ground_truth(trace, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::{Agent, Algorithm, Hyperparams};

    // Σ_{i=1}^{16} ((i−1)/16)² = Σ_{j=0}^{15} j² / 256 = 1240 / 256
    const ZERO_WEIGHT_MSE: f64 = 1240.0 / 256.0 / 16.0;

    #[test]
    fn zero_weights_closed_form() {
        let got = rmse_random_walk(&[0.0; 16]).unwrap();
        assert!((got - ZERO_WEIGHT_MSE.sqrt()).abs() < 1e-12);
        assert!((got - 0.55021).abs() < 1e-5);
        assert!(got <= 1.0);
    }

    #[test]
    fn exact_values_give_zero() {
        assert_eq!(rmse_random_walk(&rw_true_values()).unwrap(), 0.0);
        assert!(rmse_random_walk(&[0.0; 15]).is_err());
    }

    #[test]
    fn bounded_by_one_for_unit_interval_estimates() {
        for c in [0.0, 0.3, 1.0] {
            let r = rmse_random_walk(&[c; 16]).unwrap();
            assert!((0.0..=1.0).contains(&r));
        }
    }

    fn constant_agent(n: usize) -> Agent {
        Agent::new(Algorithm::Td0, n, Hyperparams::new(0.1, 1.0, 0.0), 0).unwrap()
    }

    #[test]
    fn trace_rmse_examples() {
        let agent = constant_agent(2);
        let trace = TraceBuffer::episode(2, vec![vec![1.0, 0.0]; 3], vec![0.0; 3]).unwrap();
        assert_eq!(rmse_trace(&agent, &trace, &[0.0; 3]).unwrap(), 0.0);
        // Zero weights predict c = 0 against a constant truth g = 0.7.
        assert!((rmse_trace(&agent, &trace, &[0.7; 3]).unwrap() - 0.7).abs() < 1e-15);
        assert!(rmse_trace(&agent, &trace, &[0.0; 2]).is_err());
    }
}
