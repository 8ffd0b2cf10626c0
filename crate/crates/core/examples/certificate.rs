// Build a parent distribution from a feasibility certificate and check it.
//
// ```text
// cargo run --example certificate
// ```

use std::error::Error;

use eos::feasibility::{check_eos, Certificate};
use eos::generator::atomic_parent;
use eos::moments::{normalize_location_scale, BetaSequence};
use eos::oracle::eos_exact;
use num::BigRational;

pub fn run() -> Result<(), Box<dyn Error>> {
    let beta = BetaSequence::new([0, 1, 5, 13, 21].iter().map(|&v| BigRational::from_integer(v.into())).collect())?;
    let v = check_eos(&beta, 0.0)?;
    let Some(Certificate::Exact(t)) = v.certificate else {
        return Err("expected an exact certificate".into());
    };
    for a in t.atoms() {
        println!("T atom at {} with weight {}", a.location, a.weight);
    }

    let x = atomic_parent(&t)?;
    for (value, mass) in x.values().iter().zip(x.masses()) {
        println!("P(X = {value}) = {mass}");
    }

    let regenerated = eos_exact(&x, beta.n())?;
    let target = normalize_location_scale(&beta);
    println!("E X_(j:5) = {}", regenerated.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    assert_eq!(regenerated, target);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
