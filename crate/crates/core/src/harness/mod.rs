//! Experiment harness: trial runner, sweeps, metrics, output, verification
//! suites and the step-cost probe.

pub mod metrics;
pub mod output;
pub mod probe;
pub mod run;
pub mod seed;
pub mod sweep;
pub mod verify;

pub use metrics::{rmse_random_walk, rmse_trace, rmse_trace_mc};
pub use output::{emit_svg_curves, write_curve_csv, write_results_csv, PlotLabels, Series};
pub use probe::{step_cost_probe, CostReport, ProbeTarget};
pub use run::{run_trial, run_trials, EnvSpec, LearningCurve, RunConfig};
pub use seed::{derive_seed, splitmix64};
pub use sweep::{sweep, sweep_serial, CellKey, CellResult, ResultGrid};
pub use verify::{verify_all, VerifyReport, VerifySettings};
