use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bro_bench::{
    build_game, emit_csv, emit_svg_plot, run_experiment, solve, summarize, write_csv, Algorithm, BenchError, ExperimentPlan,
    InitPolicy, Noise, RunRecord, RunSettings,
};
use bro_core::games::GameSpec;

#[derive(Parser)]
#[command(name = "bench", about = "Best-response-oracle solver experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment plan.
    Run {
        plan: PathBuf,
        /// CSV output; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// SVG plot of mean iterations per size.
        #[arg(long)]
        plot: Option<PathBuf>,
        /// Fill the ms column with wall-clock times (makes output vary).
        #[arg(long)]
        timing: bool,
        /// Override a plan setting, e.g. `--set reps=5`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Solve one game and print its record.
    Solve {
        #[arg(long)]
        game: String,
        #[arg(long)]
        alg: String,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value = "none")]
        perturb: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "worst")]
        init: String,
        #[arg(long)]
        normalize: bool,
    },
}

fn run(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Run {
            plan,
            out,
            plot,
            timing,
            overrides,
        } => {
            let text = std::fs::read_to_string(&plan).map_err(|e| BenchError::Config(format!("{}: {e}", plan.display())))?;
            let mut parsed = ExperimentPlan::parse(&text)?;
            for o in &overrides {
                let (k, v) = o
                    .split_once('=')
                    .ok_or_else(|| BenchError::Config(format!("bad override '{o}'")))?;
                parsed.set(k.trim(), v.trim())?;
            }
            parsed.validate()?;
            let records = run_experiment(&parsed, timing)?;
            for r in records.iter().filter(|r| r.error.is_some()) {
                eprintln!(
                    "{} {} size {} rep {}: {}",
                    r.game,
                    r.algorithm,
                    r.size,
                    r.rep,
                    r.error.as_deref().unwrap_or("")
                );
            }
            match out {
                Some(path) => emit_csv(&records, &path)?,
                None => write_csv(&records, std::io::stdout().lock())?,
            }
            if let Some(path) = plot {
                emit_svg_plot(&summarize(&records), &path)?;
            }
            if records.iter().any(|r| r.error.is_some()) {
                return Err(BenchError::Solver(bro_core::Error::Numerical("some runs failed".into())));
            }
            Ok(())
        }
        Command::Solve {
            game,
            alg,
            eps,
            perturb,
            seed,
            init,
            normalize,
        } => {
            let cfg = |e: bro_core::Error| BenchError::Config(e.to_string());
            let spec: GameSpec = game.parse().map_err(cfg)?;
            let algorithm: Algorithm = alg.parse()?;
            let noise: Noise = perturb.parse()?;
            let init: InitPolicy = init.parse()?;
            if !(eps > 0.0) {
                return Err(BenchError::Config("eps must be positive".into()));
            }
            let built = build_game(&spec, seed, normalize)?;
            let settings = RunSettings {
                algorithm,
                row_noise: noise,
                col_noise: noise,
                eps,
                init,
                max_restarts: 20,
                max_iterations: None,
            };
            let start = std::time::Instant::now();
            let (result, label) = solve(&spec, &built, &settings, seed)?;
            let record = RunRecord {
                game: spec.to_string(),
                template: spec.to_string(),
                algorithm,
                perturbation: label,
                eps,
                size: built.rows(),
                rep: 0,
                seed,
                iterations: result.iterations,
                terminated: result.terminated,
                exploitability: result.final_gap,
                ms: start.elapsed().as_secs_f64() * 1e3,
                error: None,
            };
            write_csv(&[record], std::io::stdout().lock())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
