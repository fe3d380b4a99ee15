//! Applies every recombination and mutation operator to one pair of parents.
//!
//! ```text
//! cargo run --example operators_tour
//! ```

use kbs::operators::{
    alpha_kbs, ax_crossover, beta_kbs, blx_alpha, gaussian_mutation, sbx, simple_mutation,
};
use kbs::prelude::*;

fn genes(g: &Genome) -> String {
    g.iter()
        .map(|x| format!("{x:7.3}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn show(label: &str, (a, b): (Genome, Genome)) {
    let sum: f64 = a.iter().chain(b.iter()).sum();
    println!(
        "{label:<10} {}\n{:<10} {}   sum {:.3}",
        genes(&a),
        "",
        genes(&b),
        sum + 0.0
    );
}

fn main() -> kbs::Result<()> {
    let p1 = Genome::new(vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
    let p2 = Genome::new(vec![-1.0, -2.0, -3.0, -4.0, -5.0, -6.0]);
    let mut rng = RngStream::new(2024);
    let k = 3;

    show("parents", (p1.clone(), p2.clone()));
    show("ax 0.4", ax_crossover(&p1, &p2, 0.4)?);
    show("blx 0.5", blx_alpha(&p1, &p2, 0.5, &mut rng)?);
    show("sbx 2", sbx(&p1, &p2, 2.0, &mut rng)?);
    show("kbs", alpha_kbs(&p1, &p2, 0.0, k, &mut rng)?);
    show("alpha kbs", alpha_kbs(&p1, &p2, 0.4, k, &mut rng)?);
    show("beta kbs", beta_kbs(&p1, &p2, 0.4, 4.0, k, &mut rng)?);

    let bounds = Bounds::new(-10.0, 10.0)?;
    let every_gene = MutationParams::new(1.0)?;
    println!(
        "gm         {}",
        genes(&gaussian_mutation(&p1, bounds, every_gene, &mut rng))
    );
    println!(
        "sm         {}",
        genes(&simple_mutation(&p1, bounds, every_gene, &mut rng))
    );
    Ok(())
}
