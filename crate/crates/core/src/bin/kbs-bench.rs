use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kbs::harness::{
    compare_files, run_experiment_file, CompareOptions, Metric, OperatorPair, Overrides,
};

/// Experiment runner for real-coded GA recombination operators.
#[derive(Parser)]
#[command(name = "kbs-bench", version)]
struct Cli {
    /// Worker threads (defaults to the config value, then to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Master seed, overriding the config file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory, overriding the config file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every cell of an experiment config and write runs.csv / summary.csv.
    Run { config: PathBuf },
    /// Mann-Whitney comparison of two result sets (directories or runs.csv files).
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value = "final_value")]
        metric: String,
        /// Operator pair selected from the first input, e.g. alpha_kbs+gm.
        #[arg(long)]
        a_op: Option<String>,
        /// Operator pair selected from the second input.
        #[arg(long)]
        b_op: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: Cli) -> kbs::Result<()> {
    match cli.command {
        Command::Run { config } => {
            let overrides = Overrides {
                threads: cli.threads,
                seed: cli.seed,
                out: cli.out,
            };
            let out = run_experiment_file(&config, &overrides)?;
            for s in &out.summary {
                println!(
                    "{:<11} n={:<3} {:<10} {:<3} P={:<5} M={:<9} final={:.4e}",
                    s.problem,
                    s.dim,
                    s.recomb,
                    s.mutation,
                    s.success_rate,
                    s.mean_runtime_successful
                        .map_or("-".to_string(), |m| format!("{m:.2}")),
                    s.mean_final
                );
            }
            for l in &out.lloyd {
                println!(
                    "lloyd       n={:<3} best={:.4} mean={:.4}",
                    l.dim, l.best, l.mean
                );
            }
            println!("wrote {}", out.output_dir.display());
        }
        Command::Compare {
            a,
            b,
            metric,
            a_op,
            b_op,
        } => {
            let mut opts = CompareOptions::new(metric.parse::<Metric>()?);
            opts.a_op = a_op.map(|s| s.parse::<OperatorPair>()).transpose()?;
            opts.b_op = b_op.map(|s| s.parse::<OperatorPair>()).transpose()?;
            let report = compare_files(&a, &b, &opts)?;
            print!("{}", report.render_table());
            let dir = cli.out.unwrap_or_else(|| {
                if a.is_dir() {
                    a.clone()
                } else {
                    a.parent().map(PathBuf::from).unwrap_or_default()
                }
            });
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(&dir).map_err(|e| kbs::Error::Io {
                    path: dir.clone(),
                    source: e,
                })?;
            }
            let path = dir.join(format!("compare_{}.csv", opts.metric));
            report.write_csv(&path)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
