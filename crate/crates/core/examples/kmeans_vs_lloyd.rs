//! Clusters a random dataset into four groups with the GA and with Lloyd's
//! algorithm.

use kbs::objectives::{generate_dataset, lloyd, ClusteringSolution};
use kbs::prelude::*;

fn main() -> kbs::Result<()> {
    let data = generate_dataset(100, 2, 4, 11)?;
    let problem = KMeansProblem::from_data(&data, 4)?;

    let config = GaConfig::new(RecombinationKind::Sbx, MutationKind::Simple)
        .with_population(100)
        .with_generations(1000);
    let runs: Vec<RunRecord> = (0..5)
        .map(|r| run_ga(&config, &problem, derive_seed(3, r)))
        .collect::<kbs::Result<_>>()?;
    let best = runs
        .iter()
        .min_by(|a, b| a.final_best_value.total_cmp(&b.final_best_value))
        .expect("five runs");
    println!("GA best objective    {:.4}", best.final_best_value);
    for c in ClusteringSolution::from_genome(&best.final_best_genome, 4, 2)?.centroids {
        println!("  centroid ({:.3}, {:.3})", c[0], c[1]);
    }

    let restarts: Vec<f64> = (0..10)
        .map(|r| lloyd(&data, 4, &mut RngStream::child(data.seed(), r), 300).map(|o| o.objective))
        .collect::<kbs::Result<_>>()?;
    let mean = restarts.iter().sum::<f64>() / restarts.len() as f64;
    let min = restarts.iter().copied().fold(f64::INFINITY, f64::min);
    println!("Lloyd over 10 restarts: best {min:.4}, mean {mean:.4}");
    Ok(())
}
