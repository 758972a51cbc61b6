use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use regevo::harness::{
    self, comparison_csv, dimsweep_csv, fan_in_report_from_log, read_log, sweep_csv, time_to_accuracy,
    top_k_trajectory, trajectory_csv, HarnessError, PlanDocument, ENV_OUTPUT_DIR, ENV_WORKERS,
};
use regevo::nasnet::{SearchSpaceConfig, SpaceVariant};

/// Evolutionary architecture-search experiments: aging evolution,
/// tournament selection and random search.
#[derive(Parser)]
#[command(name = "regevo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the repeats described by a plan's [engine] section.
    Run {
        plan: PathBuf,
        #[arg(long, env = ENV_OUTPUT_DIR)]
        output_dir: Option<PathBuf>,
        #[arg(long, env = ENV_WORKERS)]
        workers: Option<usize>,
    },
    /// Sweep (P, S) for one variant as described by [sweep].
    Sweep {
        plan: PathBuf,
        #[arg(long, env = ENV_OUTPUT_DIR)]
        output_dir: Option<PathBuf>,
    },
    /// Matched comparison of the arms in [compare].
    Compare {
        plan: PathBuf,
        #[arg(long, env = ENV_OUTPUT_DIR)]
        output_dir: Option<PathBuf>,
    },
    /// Per-dimensionality AE and NAE sweeps on the toy space ([dimsweep]).
    Dimsweep {
        plan: PathBuf,
        #[arg(long, env = ENV_OUTPUT_DIR)]
        output_dir: Option<PathBuf>,
    },
    /// Top-k mean trajectory of a history log, or time to reach an accuracy.
    Stats {
        log: PathBuf,
        #[arg(long, default_value_t = 100)]
        top_k: usize,
        #[arg(long, default_value_t = 100)]
        step: usize,
        /// Report the first model count whose running maximum reaches this.
        #[arg(long)]
        target: Option<f64>,
    },
    /// Output fan-in of the final population against random architectures.
    Fanin {
        log: PathBuf,
        /// SP-I, SP-II or SP-III.
        #[arg(long)]
        space: String,
        #[arg(long)]
        population_size: usize,
        #[arg(long, default_value_t = 100_000)]
        n_random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load(path: &Path) -> Result<PlanDocument, HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::Plan(format!("{}: {e}", path.display())))?;
    PlanDocument::parse(&text)
}

/// Writes `name` into the output directory, or to stdout without one.
fn emit(dir: Option<&PathBuf>, name: &str, table: &str) -> Result<(), HarnessError> {
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(name);
            fs::write(&path, table)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{table}"),
    }
    Ok(())
}

/// Returns the process exit status on completion.
fn execute(command: Command) -> Result<u8, HarnessError> {
    match command {
        Command::Run {
            plan,
            output_dir,
            workers,
        } => {
            let mut plan = load(&plan)?.experiment_plan()?;
            if output_dir.is_some() {
                plan.output_dir = output_dir;
            }
            if let Some(w) = workers {
                plan.engine = plan.engine.with_workers(w);
            }
            let report = harness::run_plan(&plan)?;
            for (repeat, row) in report.rows.iter().enumerate() {
                match row {
                    Ok(s) => eprintln!(
                        "repeat {repeat}: {} models, best accuracy {:.4} (id {}), {:.2?}",
                        s.models, s.best_accuracy, s.best_id, s.wall_time
                    ),
                    Err(e) => eprintln!("repeat {repeat}: failed: {e}"),
                }
            }
            if plan.output_dir.is_none() {
                print!("{}", harness::summary_csv(&plan, &report));
            }
            // Failed repeats were recorded and the rest still ran; the exit
            // status reflects the first failure.
            Ok(report.first_failure().map_or(0, |e| e.exit_code() as u8))
        }
        Command::Sweep { plan, output_dir } => {
            let doc = load(&plan)?;
            let problem = doc.problem()?;
            let sweep_plan = doc.sweep_plan()?;
            let result = harness::sweep(&problem, &sweep_plan)?;
            let best = result.best_point();
            eprintln!(
                "best ({}, {}): {:.5} ± {:.5}",
                best.population_size,
                best.sample_size,
                best.summary.mean,
                2.0 * best.summary.sem
            );
            emit(output_dir.as_ref().or(doc.output_dir()), "sweep.csv", &sweep_csv(&result))?;
            Ok(0)
        }
        Command::Compare { plan, output_dir } => {
            let doc = load(&plan)?;
            let report = harness::compare_variants(&doc.problem()?, &doc.compare_plan()?)?;
            emit(output_dir.as_ref().or(doc.output_dir()), "comparison.csv", &comparison_csv(&report))?;
            Ok(0)
        }
        Command::Dimsweep { plan, output_dir } => {
            let doc = load(&plan)?;
            let report = harness::dimensionality_sweep(&doc.dimsweep_plan()?)?;
            emit(output_dir.as_ref().or(doc.output_dir()), "dimsweep.csv", &dimsweep_csv(&report))?;
            Ok(0)
        }
        Command::Stats {
            log,
            top_k,
            step,
            target,
        } => {
            if top_k == 0 || step == 0 {
                return Err(HarnessError::Plan("--top-k and --step must be >= 1".into()));
            }
            let records = read_log(&log)?;
            if records.is_empty() {
                return Err(HarnessError::EmptyHistory);
            }
            let accuracies: Vec<f64> = records.iter().map(|r| r.accuracy).collect();
            match target {
                Some(a) => {
                    let m = time_to_accuracy(&accuracies, a).map_or_else(|| "none".to_string(), |m| m.to_string());
                    println!("target,model_index\n{a},{m}");
                }
                None => print!("{}", trajectory_csv(&top_k_trajectory(&accuracies, top_k, step))),
            }
            Ok(0)
        }
        Command::Fanin {
            log,
            space,
            population_size,
            n_random,
            seed,
        } => {
            let variant: SpaceVariant = space.parse().map_err(|e| HarnessError::Plan(format!("{e}")))?;
            let config = SearchSpaceConfig::from_variant(variant).map_err(|e| HarnessError::Plan(e.to_string()))?;
            let records = read_log(&log)?;
            let report = fan_in_report_from_log(&records, population_size, &Arc::new(config), n_random, seed)?;
            println!("evolved_n,evolved_mean,random_n,random_mean,random_std,z");
            println!(
                "{},{},{},{},{},{}",
                report.evolved_n,
                report.evolved_mean,
                report.random_n,
                report.random_mean,
                report.random_std,
                report.z
            );
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
