// Map parent distributions back to their mixing laws.
//
// ```text
// cargo run --example tmap
// ```

use std::error::Error;

use eos::generator::{atomic_t_from_discrete, default_grid, t_from_x, ClosedForm, QuantileFunction};
use eos::oracle::DiscreteDistribution;
use num::BigRational;

pub fn run() -> Result<(), Box<dyn Error>> {
    let q = QuantileFunction::closed_form(ClosedForm::Logistic { loc: 0.0, scale: 1.0 })?;
    let t = t_from_x(&q)?;
    let grid = default_grid(5);
    let cdf = t.law.cdf_grid(&grid)?;
    println!("logistic parent, lambda = {:.12}", t.lambda);
    for (u, f) in grid.iter().zip(cdf) {
        println!("  F_T({u}) = {f:.10}");
    }

    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let x = DiscreteDistribution::new(vec![(r(-3, 1), r(1, 4)), (r(0, 1), r(1, 4)), (r(1, 1), r(1, 2))])?;
    let (measure, lambda) = atomic_t_from_discrete(&x)?;
    println!("three-point parent, lambda = {lambda}");
    for a in measure.atoms() {
        println!("  T atom at {} with weight {}", a.location, a.weight);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
