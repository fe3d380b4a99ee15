//! Evaluates the benchmark suite at its optima and at a random point.

use kbs::prelude::*;

fn main() {
    let n = 10;
    let mut rng = RngStream::new(1);
    println!(
        "{:<11} {:>16} {:>16} {:>14}",
        "function", "bounds", "f(optimum)", "f(random)"
    );
    for f in BenchmarkFunction::ALL {
        let b = f.bounds();
        let random: Vec<f64> = (0..n)
            .map(|_| rng.uniform_in(b.lower(), b.upper()))
            .collect();
        println!(
            "{:<11} {:>16} {:>16.3e} {:>14.4}",
            f.name(),
            format!("[{}, {}]", b.lower(), b.upper()),
            f.evaluate(&f.optimum_location(n)),
            f.evaluate(&random)
        );
    }
}
