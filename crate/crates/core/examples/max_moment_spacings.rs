// Check that max-moment spacings of generated parents equal the mixing law's moments.
//
// ```text
// cargo run --example max_moment_spacings
// ```

use std::error::Error;

use eos::generator::{verify_lemma1, MixingDistribution};

pub fn run() -> Result<(), Box<dyn Error>> {
    let laws = [
        MixingDistribution::beta(2.0, 2.0)?,
        MixingDistribution::beta(1.0, 2.0)?,
        MixingDistribution::beta(3.0, 1.5)?,
        MixingDistribution::Uniform,
        MixingDistribution::degenerate(0.25)?,
    ];
    for law in laws {
        let report = verify_lemma1(&law, 6, 1e-8)?;
        println!(
            "{}: passed = {}, max deviation = {:.2e}, E X = {:.2e}",
            law.kind(),
            report.passed,
            report.max_deviation,
            report.max_moments[0]
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
