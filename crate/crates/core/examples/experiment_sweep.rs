//! Runs a config-driven sweep, then compares two of its operator pairs.
//!
//! ```text
//! cargo run --example experiment_sweep -- examples/configs/quick.json
//! ```

use std::path::PathBuf;

use kbs::harness::{compare_files, run_experiment_file, CompareOptions, Metric, Overrides};

fn main() -> kbs::Result<()> {
    let config = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs/quick.json")
        });
    let out = std::env::temp_dir().join("kbs-sweep");
    let result = run_experiment_file(
        &config,
        &Overrides {
            out: Some(out.clone()),
            ..Overrides::default()
        },
    )?;

    println!(
        "{:<11} {:>3} {:<14} {:>5} {:>9} {:>12}",
        "problem", "n", "operators", "P", "M", "mean final"
    );
    for s in &result.summary {
        println!(
            "{:<11} {:>3} {:<14} {:>5} {:>9} {:>12.4e}",
            s.problem,
            s.dim,
            format!("{}+{}", s.recomb, s.mutation),
            s.success_rate,
            s.mean_runtime_successful
                .map_or("-".into(), |m| format!("{m:.1}")),
            s.mean_final
        );
    }

    let mut opts = CompareOptions::new(Metric::FinalValue);
    opts.a_op = Some("alpha_kbs+gm".parse()?);
    opts.b_op = Some("blx_alpha+gm".parse()?);
    println!();
    print!("{}", compare_files(&out, &out, &opts)?.render_table());
    println!("results in {}", out.display());
    Ok(())
}
