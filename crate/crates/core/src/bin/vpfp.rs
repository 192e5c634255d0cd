use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vpfp::experiments::{emit_report, run_check_suite, run_experiment, ExperimentConfig, ExperimentKind, Verdict};

#[derive(Parser)]
#[command(name = "vpfp", about = "Vlasov-Poisson-Fokker-Planck experiments near a Maxwellian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output directory; overrides the config's `out`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for the rayon pool.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Multiplier applied to every verdict tolerance.
    #[arg(long, global = true)]
    tol_scale: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config.
    Run { config: PathBuf },
    /// Run the invariant suite.
    Check,
    /// Run the (nu, beta) threshold sweep with the grid and nu list of a config.
    Sweep { config: PathBuf },
}

fn print_verdicts(verdicts: &[Verdict]) -> bool {
    for v in verdicts {
        println!("{}", v.line());
    }
    verdicts.iter().all(|v| v.passed)
}

fn experiment(cfg: ExperimentConfig, out: Option<PathBuf>) -> Result<bool, Box<dyn std::error::Error>> {
    let report = run_experiment(&cfg)?;
    let ok = print_verdicts(&report.verdicts);
    let dir = out.or(cfg.out.clone()).unwrap_or_else(|| Path::new("out").join(cfg.experiment.name()));
    for path in emit_report(&report, &dir)? {
        eprintln!("wrote {}", path.display());
    }
    eprintln!("{} in {:.1}s", cfg.experiment.name(), report.wall_time_s);
    Ok(ok)
}

fn load(path: &Path, tol_scale: Option<f64>) -> Result<ExperimentConfig, Box<dyn std::error::Error>> {
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(s) = tol_scale {
        cfg.tol_scale = s;
    }
    Ok(cfg)
}

fn dispatch(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Run { config } => experiment(load(&config, cli.tol_scale)?, cli.out),
        Command::Sweep { config } => {
            let mut cfg = load(&config, cli.tol_scale)?;
            cfg.experiment = ExperimentKind::ThresholdSweep;
            experiment(cfg, cli.out)
        }
        Command::Check => {
            let verdicts = run_check_suite(cli.tol_scale.unwrap_or(1.0))?;
            let ok = print_verdicts(&verdicts);
            if let Some(dir) = cli.out {
                std::fs::create_dir_all(&dir)?;
                let path = dir.join("check.json");
                std::fs::write(&path, serde_json::to_string_pretty(&verdicts)?)?;
                eprintln!("wrote {}", path.display());
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
