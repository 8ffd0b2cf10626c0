// Turn mixing laws on (0, 1) into normalized parent quantile functions.
//
// ```text
// cargo run --example generator
// ```

use std::error::Error;

use eos::generator::{compute_ct, max_moments, quantile_from_t, MixingDistribution};

pub fn run() -> Result<(), Box<dyn Error>> {
    let laws = [
        ("Beta(2,2)", MixingDistribution::beta(2.0, 2.0)?),
        ("Beta(2,1)", MixingDistribution::beta(2.0, 1.0)?),
        ("Uniform", MixingDistribution::Uniform),
        ("point at 0.3", MixingDistribution::degenerate(0.3)?),
    ];
    for (name, law) in laws {
        let q = quantile_from_t(&law)?;
        let mu = max_moments(&q, 2)?.mu;
        println!("{name}: c_T = {:.6}, E X = {:.1e}, lambda = {:.12}", compute_ct(&law)?, mu[0], mu[1] - mu[0]);
        for t in [0.1, 0.25, 0.5, 0.75, 0.9] {
            println!("  q({t}) = {:+.8}", q.eval(t)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
