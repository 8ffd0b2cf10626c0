// Membership in the convex hull of the open moment curve t -> (1, t, ..., t^n).
//
// ```text
// cargo run --example moment_hull
// ```

use std::error::Error;

use eos::feasibility::check_moment_hull;
use eos::moments::UVector;
use num::BigRational;

pub fn run() -> Result<(), Box<dyn Error>> {
    // Halfway between the curve's limit point at 0 and its point at 1/2.
    for n in 2..=6 {
        let u: Vec<BigRational> = (0..=n)
            .map(|k| if k == 0 { BigRational::from_integer(1.into()) } else { BigRational::new(1.into(), (1i64 << (k + 1)).into()) })
            .collect();
        let v = check_moment_hull(&UVector::new(u)?, 0.0)?;
        println!("n = {n}: {:?} ({})", v.status, v.reason.name());
    }

    let uniform: Vec<f64> = (0..=5).map(|k| 1.0 / (k as f64 + 1.0)).collect();
    let v = check_moment_hull(&UVector::new(uniform)?, 1e-9)?;
    println!("uniform moments: {:?} ({})", v.status, v.reason.name());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
