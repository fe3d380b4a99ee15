//! One GA run, printed generation by generation until the tolerance is hit.
//!
//! ```text
//! cargo run --example single_run -- ackley 5 alpha_kbs+gm
//! ```

use kbs::harness::OperatorPair;
use kbs::prelude::*;

fn main() -> kbs::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let function: BenchmarkFunction = args.first().map_or("rastrigin", String::as_str).parse()?;
    let dim: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let op: OperatorPair = args.get(2).map_or("alpha_kbs+gm", String::as_str).parse()?;

    let objective = Benchmark::new(function, dim)?;
    let config = GaConfig::new(op.recombination, op.mutation).with_generations(2000);
    let mut ga = Ga::new(&config, &objective, 7)?;
    println!("{function} n={dim} {op}, tolerance {}", ga.epsilon());
    for generation in 1..=config.generations {
        let best = ga.step();
        if generation % 100 == 1 || best < ga.epsilon() {
            println!("gen {generation:>5}  best {best:.6e}");
        }
        if best < ga.epsilon() {
            println!("hit after {generation} generations");
            return Ok(());
        }
    }
    println!("no hit within {} generations", config.generations);
    Ok(())
}
