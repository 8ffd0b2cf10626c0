// Expected order statistics of discrete distributions, computed exactly.
//
// ```text
// cargo run --example oracle
// ```

use std::error::Error;

use eos::feasibility::check_eos;
use eos::moments::{nu_from_beta, BetaSequence};
use eos::oracle::{eos_exact, spacing_pearson, DiscreteDistribution};
use num::BigRational;

pub fn run() -> Result<(), Box<dyn Error>> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let x = DiscreteDistribution::new(vec![(r(0, 1), r(1, 3)), (r(1, 1), r(1, 2)), (r(4, 1), r(1, 6))])?;
    for n in 2..=6 {
        let beta = eos_exact(&x, n)?;
        let spacings = spacing_pearson(&x, n)?;
        let seq = BetaSequence::new(beta.clone())?;
        let verdict = check_eos(&seq, 0.0)?;
        let nu = nu_from_beta(&seq)?;
        println!("n = {n}");
        println!("  E X_(j:n) = {}", join(&beta));
        println!("  spacings  = {}", join(&spacings));
        println!("  nu = {}, lambda = {}", join(&nu.nu), nu.lambda);
        println!("  verdict   = {:?}", verdict.status);
    }
    Ok(())
}

fn join(values: &[BigRational]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
