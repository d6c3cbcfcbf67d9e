//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use replan::envs::{rw_true_values, synthetic_traces, RandomWalk, SyntheticTraceSpec, RW_NONTERMINAL};
use replan::harness::output::results_csv_string;
use replan::harness::probe::{step_cost_probe, ProbeTarget};
use replan::harness::run::{run_trials, RunConfig};
use replan::harness::sweep::sweep;
use replan::harness::verify::{random_case, return_case, replay_error, online_error};
use replan::harness::rmse_random_walk;
use replan::{Agent, Algorithm, Hyperparams, Learner};

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed < limit
}

fn replay_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7431);
    let episodes = 300;
    let mut worst = 0.0_f64;
    for _ in 0..episodes {
        worst = worst.max(replay_error(&random_case(&mut rng)).expect("suite case"));
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-8 && within(elapsed, Duration::from_secs(30)),
        format!("{episodes} episodes, max relative error {worst:.3e} (tol 1e-8), {elapsed:.2?} (limit 30s)"),
    )
}

fn online_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7431);
    let episodes = 300;
    let mut worst = 0.0_f64;
    for _ in 0..episodes {
        worst = worst.max(online_error(&random_case(&mut rng)).expect("suite case"));
    }
    outcome(
        worst <= 1e-12,
        format!("{episodes} episodes, max element-wise error {worst:.3e} (tol 1e-12)"),
    )
}

fn interim_returns() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7433);
    let cases = 1000;
    let mut worst = 0.0_f64;
    let mut exact = true;
    for _ in 0..cases {
        let (gap, at_horizon) = return_case(&mut rng).expect("return case");
        worst = worst.max(gap);
        exact &= at_horizon;
    }
    outcome(
        worst <= 1e-12 && exact,
        format!("{cases} cases, max |direct − recursive| {worst:.3e} (tol 1e-12), exact at k = t: {exact}"),
    )
}

fn random_walk_truth() -> Outcome {
    let start = Instant::now();
    // Σ_{j=0}^{15} (j/16)² / 16
    let closed_form = (1240.0_f64 / 256.0 / 16.0).sqrt();
    let initial = rmse_random_walk(&[0.0; RW_NONTERMINAL]).expect("16 weights");
    let initial_ok = (initial - closed_form).abs() <= 1e-12;

    let hyper = Hyperparams::new(0.05, 1.0, 0.9);
    let seeds = 20;
    let mut mean = [0.0; RW_NONTERMINAL];
    for seed in 0..seeds {
        let mut agent = Agent::new(Algorithm::Replan, RW_NONTERMINAL, hyper, seed).expect("valid");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut env = RandomWalk::new();
        for _ in 0..200 {
            agent.begin_episode();
            let mut phi = env.reset();
            while !env.is_terminal() {
                let t = env.step(&mut rng).expect("step");
                agent.step(&phi, &t.phi_next, t.reward).expect("finite");
                phi = t.phi_next;
            }
        }
        for (m, w) in mean.iter_mut().zip(agent.weights()) {
            *m += w / seeds as f64;
        }
    }
    let worst = mean
        .iter()
        .zip(rw_true_values())
        .map(|(m, v)| (m - v).abs())
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    outcome(
        initial_ok && worst <= 0.1 && within(elapsed, Duration::from_secs(10)),
        format!(
            "initial RMSE {initial:.12} vs {closed_form:.12}; worst state error {worst:.4} (tol 0.1); {elapsed:.2?} (limit 10s)"
        ),
    )
}

fn fig2_ordering() -> Outcome {
    let start = Instant::now();
    let lambdas = [0.0, 0.4, 0.8, 0.9, 1.0];
    let alphas: Vec<f64> = (1..=30).map(|i| i as f64 / 100.0).collect();
    let seed = 42;
    let mut grid = Vec::new();
    for &lambda in &lambdas {
        for algorithm in [Algorithm::Replan, Algorithm::TrueOnlineTd] {
            for &alpha in &alphas {
                let hyper = algorithm.canonical(Hyperparams::new(alpha, 1.0, lambda));
                grid.push(RunConfig::random_walk(algorithm, hyper, seed));
            }
        }
    }
    for &alpha in &alphas {
        let hyper = Algorithm::Dyna.canonical(Hyperparams::new(alpha, 1.0, 0.0).with_planning_steps(10));
        grid.push(RunConfig::random_walk(Algorithm::Dyna, hyper, seed));
    }
    let result = sweep(&grid).expect("grid");
    let best = |algorithm: Algorithm, lambda: f64, lambda_replay: f64| {
        result
            .best_alpha(algorithm, lambda, lambda_replay)
            .map_or(f64::INFINITY, |c| c.mean_rmse())
    };

    let mut pass = true;
    let mut parts = Vec::new();
    for &lambda in &lambdas {
        let (replan, online) = (best(Algorithm::Replan, lambda, 1.0), best(Algorithm::TrueOnlineTd, lambda, 0.0));
        pass &= replan < online;
        parts.push(format!("λ={lambda}: {replan:.4} < {online:.4}"));
    }
    let td0_replan = best(Algorithm::Replan, 0.0, 1.0);
    let dyna = best(Algorithm::Dyna, 0.0, 0.0);
    let best_replan = lambdas[1..]
        .iter()
        .map(|&l| best(Algorithm::Replan, l, 1.0))
        .fold(f64::INFINITY, f64::min);
    pass &= best_replan < td0_replan && best_replan < dyna;
    let elapsed = start.elapsed();
    pass &= within(elapsed, Duration::from_secs(120));
    parts.push(format!(
        "best replan(λ>0) {best_replan:.4} < TD(0)-replan {td0_replan:.4}, dyna {dyna:.4}; {elapsed:.2?} (limit 120s)"
    ));
    outcome(pass, parts.join("; "))
}

fn flatness() -> Outcome {
    let report = step_cost_probe(ProbeTarget::Learner(Algorithm::Replan), 64, 1000, 5).expect("probe");
    let oracle = step_cost_probe(ProbeTarget::ForwardOracle, 64, 1000, 1).expect("probe");
    outcome(
        report.ratio() <= 1.5,
        format!(
            "replan late/early {:.3} (tol 1.5; {:.2}µs vs {:.2}µs); forward oracle {:.2} (informational, expected > 3)",
            report.ratio(),
            report.late * 1e6,
            report.early * 1e6,
            oracle.ratio()
        ),
    )
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_replan")).args(args).output().expect("spawn replan");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let mut problems = Vec::new();

    let mut curve_files = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let out = path(name);
        let (code, _) = run_cli(&[
            "randomwalk", "--algo", "replan", "--lambda", "0.9", "--lambda-replay", "1.0", "--alpha", "0.1",
            "--episodes", "10", "--trials", "20", "--seed", "42", "--out", &out,
        ]);
        if code != 0 {
            problems.push(format!("randomwalk exit {code}"));
        }
        curve_files.push(std::fs::read(&out).unwrap_or_default());
    }
    if curve_files[0].is_empty() || curve_files[0] != curve_files[1] {
        problems.push("randomwalk curve CSVs differ".into());
    }

    let body = "alpha = 0.05, 0.1\nlambda = 0.5, 0.9\nepisodes = 4\ntrials = 5\nseed = 7\n";
    let write_cfg = |name: &str, algorithms: &str, out: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, format!("algorithms = {algorithms}\n{body}out = {out}\n")).expect("write config");
        p
    };
    let forward = write_cfg("f.cfg", "replan, true_online_td, td0, dyna", "f.csv");
    let reverse = write_cfg("r.cfg", "dyna, td0, true_online_td, replan", "r.csv");
    let again = write_cfg("g.cfg", "replan, true_online_td, td0, dyna", "g.csv");
    for cfg in [&forward, &reverse, &again] {
        let (code, _) = run_cli(&["sweep", "--config", &cfg.to_string_lossy()]);
        if code != 0 {
            problems.push(format!("sweep exit {code}"));
        }
    }
    let read = |name: &str| std::fs::read(Path::new(&path(name))).unwrap_or_default();
    let (f, r, g) = (read("f.csv"), read("r.csv"), read("g.csv"));
    if f.is_empty() || f != g {
        problems.push("repeated sweep CSVs differ".into());
    }
    if f != r {
        problems.push("sweep CSV depends on cell order".into());
    }

    let mut grid: Vec<RunConfig> = [0.05, 0.1, 0.2]
        .iter()
        .flat_map(|&a| {
            Algorithm::ALL.map(|algo| {
                let mut c = RunConfig::random_walk(algo, algo.canonical(Hyperparams::new(a, 1.0, 0.8).with_lambda_replay(0.5)), 3);
                c.episodes = 3;
                c.trials = 4;
                c
            })
        })
        .collect();
    let forward = results_csv_string(&sweep(&grid).expect("grid"));
    grid.reverse();
    grid.swap(0, 7);
    if results_csv_string(&sweep(&grid).expect("grid")) != forward {
        problems.push("library sweep depends on cell order".into());
    }

    let pass = problems.is_empty();
    let detail = if pass {
        "randomwalk CSV byte-identical across runs; sweep CSV identical across repeats and permutations".to_string()
    } else {
        problems.join("; ")
    };
    outcome(pass, detail)
}

fn replay_depth_trend() -> Outcome {
    let depths = [0.0, 0.4, 0.8, 1.0];
    let alpha = 0.01;
    let seeds = 20;
    let means: Vec<f64> = depths
        .iter()
        .map(|&lambda_replay| {
            (0..seeds)
                .map(|seed| {
                    let data = Arc::new(synthetic_traces(&SyntheticTraceSpec::default(), seed));
                    let hyper = Hyperparams::new(alpha, 0.95, 0.9).with_lambda_replay(lambda_replay);
                    let mut config = RunConfig::trace(Algorithm::ReplanInterp, hyper, seed, data);
                    config.trials = 1;
                    run_trials(&config).expect("trace run").overall_mean()
                })
                .sum::<f64>()
                / seeds as f64
        })
        .collect();
    let pass = means.windows(2).all(|w| w[1] <= w[0]);
    let shown: Vec<String> = depths.iter().zip(&means).map(|(d, m)| format!("λ́={d}: {m:.4}")).collect();
    outcome(pass, format!("α={alpha}, λ=0.9, γ=0.95, {seeds} seeds: {}", shown.join(", ")))
}

fn main() {
    let criteria: [(&str, Check); 8] = [
        ("1 incremental replan equals forward replay", replay_equivalence),
        ("2 replay depth 0 equals true online TD", online_equivalence),
        ("3 interim return forms agree", interim_returns),
        ("4 random-walk ground truth", random_walk_truth),
        ("5 random-walk ordering", fig2_ordering),
        ("6 per-step cost flatness", flatness),
        ("7 determinism", determinism),
        ("8 replay depth trend on traces", replay_depth_trend),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let result = check();
        if !result.pass {
            failures += 1;
        }
        println!("criterion {name}: {} ({})", if result.pass { "PASS" } else { "FAIL" }, result.detail);
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
