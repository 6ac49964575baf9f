use std::time::Instant;

use rayon::prelude::*;

use bro_core::game::normalize_unit;
use bro_core::games::{BuiltGame, GameSpec};
use bro_core::perturbation::sfp_theory_params;
use bro_core::rng::{STREAM_GAME, STREAM_SOLVER};
use bro_core::solvers::{
    run_anticipatory_fp, run_double_oracle, run_fictitious_play, sfp_restart_protocol, SolveResult, SolverConfig,
};
use bro_core::{PerturbationSpec, RandomSource};

use crate::plan::{instantiate, Algorithm, ExperimentPlan, InitPolicy, Noise};
use crate::BenchError;

/// One solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Game spec with the size filled in.
    pub game: String,
    /// Game template as written in the plan.
    pub template: String,
    pub algorithm: Algorithm,
    pub perturbation: String,
    pub eps: f64,
    pub size: usize,
    pub rep: usize,
    pub seed: u64,
    pub iterations: usize,
    pub terminated: bool,
    pub exploitability: f64,
    pub ms: f64,
    pub error: Option<String>,
}

/// Initial pure strategies (0-based). `worst` starts as far from the unique
/// equilibrium as possible for the adversarial families; other families
/// start at the first strategy.
pub fn resolve_init(policy: InitPolicy, spec: &GameSpec, rows: usize, cols: usize) -> Result<(usize, usize), BenchError> {
    match policy {
        InitPolicy::First => Ok((0, 0)),
        InitPolicy::Explicit(k, l) => {
            if k > rows || l > cols {
                return Err(BenchError::Config(format!(
                    "initial strategies ({k}, {l}) outside a {rows}x{cols} game"
                )));
            }
            Ok((k - 1, l - 1))
        }
        InitPolicy::Worst => Ok(match spec {
            GameSpec::S(n) | GameSpec::U(n) => (n - 1, n - 1),
            // L, Uᵀ and the bit games (whose matrices are L and Uᵀ) start at 1.
            _ => (0, 0),
        }),
    }
}

fn normalized(game: BuiltGame) -> BuiltGame {
    match game {
        BuiltGame::Matrix(g) => BuiltGame::Matrix(normalize_unit(&g).0),
        BuiltGame::Clustered(g, c) => BuiltGame::Clustered(normalize_unit(&g).0, c),
        grid @ BuiltGame::Grid(_) => grid,
    }
}

/// Builds a game; random families draw from `seed`. Normalization maps
/// matrix entries to [0, 1] and leaves grid games alone.
pub fn build_game(spec: &GameSpec, seed: u64, normalize: bool) -> Result<BuiltGame, BenchError> {
    let mut rng = RandomSource::new(seed).derive(&[STREAM_GAME]);
    let g = spec.build(&mut rng)?;
    Ok(if normalize { normalized(g) } else { g })
}

fn resolve_noise(noise: Noise, algorithm: Algorithm, side: usize, eps: f64) -> Result<PerturbationSpec, BenchError> {
    if !algorithm.is_perturbed() {
        return Ok(PerturbationSpec::None);
    }
    Ok(match noise {
        Noise::Fixed(s) => s,
        Noise::Theory => PerturbationSpec::gumbel(0.0, sfp_theory_params(side.max(2) as f64, eps)?.beta)?,
    })
}

/// Settings for a single run, shared by the sweep runner and `bench solve`.
#[derive(Debug, Clone)]
pub struct RunSettings {
    pub algorithm: Algorithm,
    pub row_noise: Noise,
    pub col_noise: Noise,
    pub eps: f64,
    pub init: InitPolicy,
    pub max_restarts: usize,
    pub max_iterations: Option<usize>,
}

/// Runs one algorithm on a built game; returns the result and the
/// perturbation label.
pub fn solve(spec: &GameSpec, game: &BuiltGame, s: &RunSettings, seed: u64) -> Result<(SolveResult, String), BenchError> {
    let (m, n) = (game.rows(), game.cols());
    let (k, l) = resolve_init(s.init, spec, m, n)?;
    let side = m.max(n);
    let rp = resolve_noise(s.row_noise, s.algorithm, side, s.eps)?;
    let cp = resolve_noise(s.col_noise, s.algorithm, side, s.eps)?;
    let rng = RandomSource::new(seed).derive(&[STREAM_SOLVER]);
    let mut cfg = SolverConfig::new(s.eps).with_init(k, l);
    cfg.row_perturbation = rp;
    cfg.col_perturbation = cp;
    cfg.rng = rng.clone();
    cfg.max_iterations = s.max_iterations;
    let result = match s.algorithm {
        Algorithm::Fp | Algorithm::Sfp => run_fictitious_play(&*game.matrix()?, &cfg)?,
        Algorithm::Afp | Algorithm::Safp => run_anticipatory_fp(&*game.matrix()?, &cfg)?,
        Algorithm::Do | Algorithm::Sdo => run_double_oracle(game, &cfg)?,
        Algorithm::SfpRestart => sfp_restart_protocol(&*game.matrix()?, s.eps, &rng, s.max_restarts)?,
    };
    let label = if s.algorithm == Algorithm::SfpRestart {
        let beta = sfp_theory_params(side.max(2) as f64, s.eps)?.beta;
        PerturbationSpec::gumbel(0.0, beta)?.to_string()
    } else if rp == cp {
        rp.to_string()
    } else {
        format!("{rp}|{cp}")
    };
    Ok((result, label))
}

struct Job<'a> {
    template: &'a str,
    spec: GameSpec,
    shared: Option<&'a BuiltGame>,
    algorithm: Algorithm,
    rep: usize,
}

/// Runs every (game, algorithm, size, repetition) of the plan. Repetition `r`
/// uses seed `base + r`. Sizes run one after another; within a size the runs
/// are spread over the thread pool. Records come back sorted by game,
/// algorithm, size and repetition, whatever order the runs finished in.
pub fn run_experiment(plan: &ExperimentPlan, timing: bool) -> Result<Vec<RunRecord>, BenchError> {
    plan.validate()?;
    let mut records = Vec::new();
    for &size in &plan.sizes {
        let specs: Vec<(&str, GameSpec)> = plan
            .games
            .iter()
            .map(|t| Ok((t.as_str(), instantiate(t, size)?)))
            .collect::<Result<_, BenchError>>()?;
        // Deterministic games are built once per size and shared.
        let shared: Vec<Option<Result<BuiltGame, BenchError>>> = specs
            .par_iter()
            .map(|(_, spec)| (!spec.is_random()).then(|| build_game(spec, plan.seed, plan.normalize)))
            .collect();
        let mut jobs = Vec::new();
        for ((template, spec), built) in specs.iter().zip(&shared) {
            for &algorithm in &plan.algorithms {
                for rep in 0..plan.reps {
                    jobs.push(Job {
                        template,
                        spec: spec.clone(),
                        shared: built.as_ref().and_then(|b| b.as_ref().ok()),
                        algorithm,
                        rep,
                    });
                }
            }
        }
        let errors: Vec<Option<String>> = shared
            .iter()
            .map(|b| b.as_ref().and_then(|r| r.as_ref().err().map(|e| e.to_string())))
            .collect();
        let game_error = |template: &str| {
            plan.games
                .iter()
                .position(|t| t == template)
                .and_then(|i| errors[i].clone())
        };
        let mut batch: Vec<RunRecord> = jobs
            .par_iter()
            .map(|job| {
                let seed = plan.seed + job.rep as u64;
                let settings = RunSettings {
                    algorithm: job.algorithm,
                    row_noise: plan.row_noise,
                    col_noise: plan.col_noise,
                    eps: plan.eps,
                    init: plan.init,
                    max_restarts: plan.max_restarts,
                    max_iterations: plan.max_iterations,
                };
                let start = Instant::now();
                let outcome = match (job.shared, game_error(job.template)) {
                    (_, Some(e)) => Err(BenchError::Config(e)),
                    (Some(g), None) => solve(&job.spec, g, &settings, seed),
                    (None, None) => {
                        build_game(&job.spec, seed, plan.normalize).and_then(|g| solve(&job.spec, &g, &settings, seed))
                    }
                };
                let ms = if timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
                let mut rec = RunRecord {
                    game: job.spec.to_string(),
                    template: job.template.to_string(),
                    algorithm: job.algorithm,
                    perturbation: String::new(),
                    eps: plan.eps,
                    size,
                    rep: job.rep,
                    seed,
                    iterations: 0,
                    terminated: false,
                    exploitability: f64::NAN,
                    ms,
                    error: None,
                };
                match outcome {
                    Ok((r, label)) => {
                        rec.perturbation = label;
                        rec.iterations = r.iterations;
                        rec.terminated = r.terminated;
                        rec.exploitability = r.final_gap;
                    }
                    Err(e) => rec.error = Some(e.to_string()),
                }
                rec
            })
            .collect();
        records.append(&mut batch);
    }
    let game_order = |t: &str| plan.games.iter().position(|g| g == t).unwrap_or(usize::MAX);
    records.sort_by(|a, b| {
        (game_order(&a.template), a.algorithm, a.size, a.rep).cmp(&(game_order(&b.template), b.algorithm, b.size, b.rep))
    });
    Ok(records)
}

/// Mean and sample standard deviation of the iterations of one series at one
/// size.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub series: String,
    pub size: usize,
    pub mean: f64,
    pub sd: f64,
    pub count: usize,
}

pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Groups records by series (game template and algorithm) and size, keeping
/// the order of first appearance. Failed runs are left out.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, usize)> = Vec::new();
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for r in records.iter().filter(|r| r.error.is_none()) {
        let key = (format!("{} {}", r.template, r.algorithm), r.size);
        match keys.iter().position(|k| *k == key) {
            Some(i) => groups[i].push(r.iterations as f64),
            None => {
                keys.push(key);
                groups.push(vec![r.iterations as f64]);
            }
        }
    }
    keys.into_iter()
        .zip(groups)
        .map(|((series, size), vals)| {
            let (mean, sd) = mean_sd(&vals);
            SummaryRow {
                series,
                size,
                mean,
                sd,
                count: vals.len(),
            }
        })
        .collect()
}
