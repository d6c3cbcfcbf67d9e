//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a usage or runtime error, 2 when `verify`
//! finds a mismatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::envs::{load_trace, TraceDataset};
use crate::error::{Error, Result};
use crate::harness::output::{
    emit_svg_curves, learning_curve_series, sweep_series, write_curve_csv, write_results_csv,
    PlotLabels,
};
use crate::harness::probe::{step_cost_probe, ProbeTarget};
use crate::harness::run::{run_trials, EnvSpec, LearningCurve, RunConfig, RW_DEFAULT_EPISODES, RW_DEFAULT_TRIALS, TRACE_DEFAULT_TRIALS};
use crate::harness::sweep::{sweep, ResultGrid};
use crate::harness::verify::{verify_all, VerifySettings, RETURN_TOL, REPLAY_TOL, ONLINE_TOL};
use crate::learners::{Algorithm, Hyperparams, DEFAULT_PLANNING_STEPS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

const RW_GAMMA: f64 = 1.0;
const TRACE_GAMMA: f64 = 0.95;

#[derive(Debug, Parser)]
#[command(
    name = "replan",
    version,
    about = "True online TD(λ)-Replan learners, baselines and benchmarks",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one configuration on the 17-state random walk.
    Randomwalk(RunArgs),
    /// Run one configuration on a trace file.
    Trace(TraceArgs),
    /// Run a grid of configurations from a config file.
    Sweep(SweepArgs),
    /// Check the incremental learners against the forward-view oracle.
    Verify(VerifyArgs),
    /// Measure per-step cost early and late in a long episode.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value = "replan", value_parser = parse_algorithm)]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 0.1)]
    pub alpha: f64,
    /// Defaults to 1 on the random walk and 0.95 on traces.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 0.9)]
    pub lambda: f64,
    #[arg(long = "lambda-replay", default_value_t = 1.0)]
    pub lambda_replay: f64,
    #[arg(long, default_value_t = RW_DEFAULT_EPISODES)]
    pub episodes: usize,
    /// Defaults to 20 on the random walk and 66 on traces.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "planning-steps", default_value_t = DEFAULT_PLANNING_STEPS)]
    pub planning_steps: usize,
    /// Curve CSV output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Learning-curve SVG output.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    /// Trace CSV: `episode,step,reward,f0,...`.
    #[arg(long)]
    pub data: PathBuf,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 200)]
    pub episodes: usize,
    #[arg(long = "return-cases", default_value_t = 1000)]
    pub return_cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value = "replan", value_parser = parse_algorithm)]
    pub algo: Algorithm,
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    /// Also time the forward-view oracle.
    #[arg(long)]
    pub oracle: bool,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Randomwalk(args) => {
            let config = run_config(&args, EnvSpec::RandomWalk, RW_GAMMA, RW_DEFAULT_TRIALS)?;
            single_run(&config, &args, out)
        }
        Command::Trace(args) => {
            let gamma = args.run.gamma.unwrap_or(TRACE_GAMMA);
            let data = load_trace(&args.data)?.with_gamma_truth(gamma);
            let config = run_config(&args.run, EnvSpec::Trace(Arc::new(data)), TRACE_GAMMA, TRACE_DEFAULT_TRIALS)?;
            single_run(&config, &args.run, out)
        }
        Command::Sweep(args) => run_sweep(&args.config, out),
        Command::Verify(args) => run_verify(&args, out),
        Command::Bench(args) => run_bench(&args, out),
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn run_config(args: &RunArgs, env: EnvSpec, default_gamma: f64, default_trials: usize) -> Result<RunConfig> {
    let hyper = Hyperparams::new(args.alpha, args.gamma.unwrap_or(default_gamma), args.lambda)
        .with_lambda_replay(args.lambda_replay)
        .with_planning_steps(args.planning_steps);
    let config = RunConfig {
        algorithm: args.algo,
        hyper: args.algo.canonical(hyper),
        episodes: args.episodes,
        trials: args.trials.unwrap_or(default_trials),
        seed: args.seed,
        env,
    };
    config.validate()?;
    Ok(config)
}

fn single_run(config: &RunConfig, args: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let curve = run_trials(config)?;
    print_curve(&curve, out)?;
    if let Some(path) = &args.out {
        write_curve_csv(std::slice::from_ref(&curve), path)?;
    }
    if let Some(path) = &args.svg {
        let labels = PlotLabels {
            title: format!("{} α={}", config.algorithm, config.hyper.alpha),
            x: "episode".into(),
            y: "RMSE".into(),
        };
        emit_svg_curves(&learning_curve_series(std::slice::from_ref(&curve)), &labels, path)?;
    }
    Ok(EXIT_OK)
}

fn print_curve(curve: &LearningCurve, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "episode,mean_rmse,stderr_rmse").map_err(stdout_err)?;
    for (e, (m, s)) in curve.mean().iter().zip(curve.stderr()).enumerate() {
        writeln!(out, "{},{m:.6},{s:.6}", e + 1).map_err(stdout_err)?;
    }
    writeln!(
        out,
        "overall,{:.6},{:.6}",
        curve.overall_mean(),
        curve.overall_stderr()
    )
    .map_err(stdout_err)
}

fn run_sweep(path: &Path, out: &mut dyn Write) -> Result<i32> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let spec = SweepSpec::parse(&text, path)?;
    let grid = spec.grid()?;
    let result = sweep(&grid)?;
    print_sweep_summary(&result, out)?;
    if let Some(p) = &spec.out {
        write_results_csv(&result, p)?;
    }
    if let Some(p) = &spec.curves {
        let curves: Vec<LearningCurve> = result.cells.iter().filter_map(|c| c.outcome.clone().ok()).collect();
        write_curve_csv(&curves, p)?;
    }
    if let Some(p) = &spec.svg {
        let labels = PlotLabels {
            title: "mean RMSE against step size".into(),
            x: "α".into(),
            y: "mean RMSE".into(),
        };
        emit_svg_curves(&sweep_series(&result), &labels, p)?;
    }
    Ok(EXIT_OK)
}

fn print_sweep_summary(grid: &ResultGrid, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "algorithm,lambda,lambda_replay,best_alpha,mean_rmse,stderr_rmse").map_err(stdout_err)?;
    let mut seen: Vec<(Algorithm, f64, f64)> = Vec::new();
    for cell in &grid.cells {
        let id = (cell.key.algorithm, cell.key.lambda, cell.key.lambda_replay);
        if seen.contains(&id) {
            continue;
        }
        seen.push(id);
        match grid.best_alpha(id.0, id.1, id.2) {
            Some(best) => writeln!(
                out,
                "{},{},{},{},{:.6},{:.6}",
                id.0,
                id.1,
                id.2,
                best.key.alpha,
                best.mean_rmse(),
                best.stderr_rmse()
            ),
            None => writeln!(out, "{},{},{},,NaN,NaN", id.0, id.1, id.2),
        }
        .map_err(stdout_err)?;
    }
    let failed: Vec<_> = grid.cells.iter().filter_map(|c| c.outcome.as_ref().err().map(|e| (c.key, e))).collect();
    for (key, e) in failed {
        writeln!(out, "# failed {} α={} λ={} λ́={}: {e}", key.algorithm, key.alpha, key.lambda, key.lambda_replay)
            .map_err(stdout_err)?;
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let report = verify_all(&VerifySettings {
        episodes: args.episodes,
        return_cases: args.return_cases,
        seed: args.seed,
    })?;
    let verdict = |ok: bool| if ok { "ok" } else { "FAIL" };
    let lines = [
        format!(
            "replay episodes={} max_rel_error={:.3e} tol={REPLAY_TOL:e} {}",
            report.episodes,
            report.replay_max_rel,
            verdict(report.replay_max_rel <= REPLAY_TOL)
        ),
        format!(
            "online episodes={} max_abs_error={:.3e} tol={ONLINE_TOL:e} {}",
            report.episodes,
            report.online_max_abs,
            verdict(report.online_max_abs <= ONLINE_TOL)
        ),
        format!(
            "fixed_start episodes={} max_rel_error={:.3e} tol={REPLAY_TOL:e} {}",
            report.episodes,
            report.fixed_theta_max_rel,
            verdict(report.fixed_theta_max_rel <= REPLAY_TOL)
        ),
        format!(
            "interim_return cases={} max_abs_error={:.3e} tol={RETURN_TOL:e} horizon_exact={} {}",
            report.return_cases,
            report.returns_max_abs,
            report.horizon_exact,
            verdict(report.returns_max_abs <= RETURN_TOL && report.horizon_exact)
        ),
    ];
    for line in lines {
        writeln!(out, "{line}").map_err(stdout_err)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_VERIFY })
}

fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32> {
    let mut targets = vec![ProbeTarget::Learner(args.algo)];
    if args.oracle {
        targets.push(ProbeTarget::ForwardOracle);
    }
    writeln!(out, "target,n,steps,window,early_us,late_us,ratio").map_err(stdout_err)?;
    for target in targets {
        let r = step_cost_probe(target, args.n, args.steps, args.repeats)?;
        writeln!(
            out,
            "{},{},{},{},{:.3},{:.3},{:.3}",
            r.target,
            r.n,
            r.steps,
            r.window,
            r.early * 1e6,
            r.late * 1e6,
            r.ratio()
        )
        .map_err(stdout_err)?;
    }
    Ok(EXIT_OK)
}

/// Environment selected by a sweep file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepEnv {
    RandomWalk,
    Trace,
}

/// Parsed sweep file. See the README for the grammar.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub env: SweepEnv,
    pub data: Option<PathBuf>,
    pub algorithms: Vec<Algorithm>,
    pub alpha: Vec<f64>,
    pub lambda: Vec<f64>,
    pub lambda_replay: Vec<f64>,
    pub gamma: Option<f64>,
    pub episodes: usize,
    pub trials: Option<usize>,
    pub seed: u64,
    pub planning_steps: usize,
    pub out: Option<PathBuf>,
    pub curves: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl SweepSpec {
    /// Parses a sweep file. Relative paths inside it resolve against the
    /// file's directory.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let base = path.parent().unwrap_or(Path::new(""));
        let mut spec = SweepSpec {
            env: SweepEnv::RandomWalk,
            data: None,
            algorithms: Vec::new(),
            alpha: Vec::new(),
            lambda: vec![0.9],
            lambda_replay: vec![1.0],
            gamma: None,
            episodes: RW_DEFAULT_EPISODES,
            trials: None,
            seed: 0,
            planning_steps: DEFAULT_PLANNING_STEPS,
            out: None,
            curves: None,
            svg: None,
        };
        let mut seen: Vec<String> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i as u64 + 1;
            let err = |message: String| Error::Parse {
                path: path.to_path_buf(),
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            seen.push(key.to_string());
            let resolve = |v: &str| base.join(v);
            match key {
                "env" => {
                    spec.env = match value {
                        "randomwalk" => SweepEnv::RandomWalk,
                        "trace" => SweepEnv::Trace,
                        other => return Err(err(format!("unknown env `{other}` (randomwalk or trace)"))),
                    }
                }
                "data" => spec.data = Some(resolve(value)),
                "algorithms" => {
                    spec.algorithms = split_list(value)
                        .map(|s| s.parse::<Algorithm>().map_err(|e| err(e.to_string())))
                        .collect::<Result<_>>()?
                }
                "alpha" => spec.alpha = parse_numbers(value).map_err(err)?,
                "lambda" => spec.lambda = parse_numbers(value).map_err(err)?,
                "lambda_replay" => spec.lambda_replay = parse_numbers(value).map_err(err)?,
                "gamma" => spec.gamma = Some(parse_scalar(value).map_err(err)?),
                "episodes" => spec.episodes = parse_count(value).map_err(err)?,
                "trials" => spec.trials = Some(parse_count(value).map_err(err)?),
                "seed" => spec.seed = value.parse().map_err(|_| err(format!("bad seed `{value}`")))?,
                "planning_steps" => spec.planning_steps = parse_count(value).map_err(err)?,
                "out" => spec.out = Some(resolve(value)),
                "curves" => spec.curves = Some(resolve(value)),
                "svg" => spec.svg = Some(resolve(value)),
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let schema = |message: &str| Error::Schema {
            path: path.to_path_buf(),
            message: message.to_string(),
        };
        if spec.algorithms.is_empty() {
            return Err(schema("`algorithms` is required"));
        }
        if spec.alpha.is_empty() {
            return Err(schema("`alpha` is required"));
        }
        if spec.lambda.is_empty() || spec.lambda_replay.is_empty() {
            return Err(schema("`lambda` and `lambda_replay` need at least one value"));
        }
        if spec.env == SweepEnv::Trace && spec.data.is_none() {
            return Err(schema("`env = trace` needs `data`"));
        }
        Ok(spec)
    }

    /// Expands the spec into run configurations. Parameters an algorithm
    /// ignores are pinned, and the resulting duplicates dropped.
    pub fn grid(&self) -> Result<Vec<RunConfig>> {
        let (env, default_gamma, default_trials) = match self.env {
            SweepEnv::RandomWalk => (EnvSpec::RandomWalk, RW_GAMMA, RW_DEFAULT_TRIALS),
            SweepEnv::Trace => {
                let path = self.data.as_ref().expect("checked in parse");
                let gamma = self.gamma.unwrap_or(TRACE_GAMMA);
                let data: TraceDataset = load_trace(path)?.with_gamma_truth(gamma);
                (EnvSpec::Trace(Arc::new(data)), TRACE_GAMMA, TRACE_DEFAULT_TRIALS)
            }
        };
        let gamma = self.gamma.unwrap_or(default_gamma);
        let mut grid: Vec<RunConfig> = Vec::new();
        for &algorithm in &self.algorithms {
            for &lambda in &self.lambda {
                for &lambda_replay in &self.lambda_replay {
                    for &alpha in &self.alpha {
                        let hyper = algorithm.canonical(
                            Hyperparams::new(alpha, gamma, lambda)
                                .with_lambda_replay(lambda_replay)
                                .with_planning_steps(self.planning_steps),
                        );
                        if grid.iter().any(|c| c.algorithm == algorithm && c.hyper == hyper) {
                            continue;
                        }
                        let config = RunConfig {
                            algorithm,
                            hyper,
                            episodes: self.episodes,
                            trials: self.trials.unwrap_or(default_trials),
                            seed: self.seed,
                            env: env.clone(),
                        };
                        config.validate()?;
                        grid.push(config);
                    }
                }
            }
        }
        Ok(grid)
    }
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_scalar(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("bad number `{s}`"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("non-finite number `{s}`"))
    }
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    s.parse().map_err(|_| format!("bad count `{s}`"))
}

/// Comma-separated numbers and inclusive `start:stop:step` ranges.
pub fn parse_numbers(value: &str) -> std::result::Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for item in split_list(value) {
        let parts: Vec<&str> = item.split(':').map(str::trim).collect();
        match parts[..] {
            [single] => out.push(parse_scalar(single)?),
            [start, stop, step] => out.extend(expand_range(parse_scalar(start)?, parse_scalar(stop)?, parse_scalar(step)?)?),
            _ => return Err(format!("bad list item `{item}` (number or start:stop:step)")),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}

fn expand_range(start: f64, stop: f64, step: f64) -> std::result::Result<Vec<f64>, String> {
    if step <= 0.0 || stop < start {
        return Err(format!("bad range {start}:{stop}:{step}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(format!("range {start}:{stop}:{step} has too many values"));
    }
    // Rounded to 12 decimals so 0.01:0.3:0.01 yields 0.07, not 0.07000000000000001.
    Ok((0..count)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("replan").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn no_arguments_prints_usage() {
        let (code, _, err) = run_capture(&[]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn help_is_success() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("randomwalk"));
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        for args in [
            &["randomwalk", "--bogus"][..],
            &["randomwalk", "--alpha", "abc"],
            &["randomwalk", "--algo", "sarsa"],
            &["randomwalk", "--lambda", "1.5"],
            &["randomwalk", "--alpha", "-0.1"],
            &["randomwalk", "--episodes", "0"],
            &["trace", "--data", "/nonexistent/trace.csv"],
            &["sweep", "--config", "/nonexistent/sweep.cfg"],
        ] {
            let (code, _, err) = run_capture(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn randomwalk_summary() {
        let (code, out, _) = run_capture(&["randomwalk", "--episodes", "2", "--trials", "2", "--seed", "1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 4);
        assert!(out.starts_with("episode,mean_rmse,stderr_rmse\n1,"));
    }

    #[test]
    fn small_verify_passes() {
        let (code, out, _) = run_capture(&["verify", "--episodes", "10", "--return-cases", "20"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert_eq!(out.lines().count(), 4);
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn number_lists() {
        assert_eq!(parse_numbers("0.1, 0.2").unwrap(), vec![0.1, 0.2]);
        let r = parse_numbers("0.01:0.3:0.01").unwrap();
        assert_eq!(r.len(), 30);
        assert_eq!((r[0], r[6], r[29]), (0.01, 0.07, 0.3));
        assert_eq!(parse_numbers("0.0001:0.001:0.0003").unwrap(), vec![0.0001, 0.0004, 0.0007, 0.001]);
        assert_eq!(parse_numbers("0, 0.5:1:0.25").unwrap(), vec![0.0, 0.5, 0.75, 1.0]);
        for bad in ["", "x", "1:2", "1:0:0.1", "0:1:0", "nan"] {
            assert!(parse_numbers(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sweep_spec_parsing_and_canonical_grid() {
        let text = "# comment\nalgorithms = replan, td0 , true_online_td\nalpha = 0.1, 0.2\nlambda = 0, 0.9 # trailing\nlambda_replay = 0, 1\ntrials = 2\nepisodes = 3\nout = res.csv\n";
        let spec = SweepSpec::parse(text, Path::new("/tmp/x/sweep.cfg")).unwrap();
        assert_eq!(spec.out, Some(PathBuf::from("/tmp/x/res.csv")));
        let grid = spec.grid().unwrap();
        // replan: 2 λ × 2 α; td0: 2 α; true online: 2 λ × 2 α.
        assert_eq!(grid.len(), 4 + 2 + 4);
        assert!(grid.iter().all(|c| c.trials == 2 && c.episodes == 3 && c.hyper.gamma == 1.0));
    }

    #[test]
    fn sweep_spec_errors_carry_line_numbers() {
        let p = Path::new("s.cfg");
        let e = SweepSpec::parse("algorithms = td0\nalpha 0.1\n", p).unwrap_err();
        assert!(e.to_string().starts_with("s.cfg:2:"), "{e}");
        assert!(SweepSpec::parse("algorithms = td0\nalpha = 0.1\ncolour = red\n", p).is_err());
        assert!(SweepSpec::parse("algorithms = td0\nalpha = 0.1\nalpha = 0.2\n", p).is_err());
        assert!(SweepSpec::parse("alpha = 0.1\n", p).is_err());
        assert!(SweepSpec::parse("algorithms = td0\nalpha = 0.1\nenv = trace\n", p).is_err());
        assert!(SweepSpec::parse("algorithms = td0\nalpha = 0.1\nenv = maze\n", p).is_err());
    }
}
