// Decide whether a few short sequences are expected order statistics.
//
// ```text
// cargo run --example check_eos
// ```

use std::error::Error;

use eos::feasibility::check_eos;
use eos::moments::BetaSequence;
use num::BigRational;

fn rationals(values: &[i64]) -> Vec<BigRational> {
    values.iter().map(|&v| BigRational::from_integer(v.into())).collect()
}

pub fn run() -> Result<(), Box<dyn Error>> {
    for values in [&[0, 2, 5, 7][..], &[0, 2, 11, 13], &[0, 1, 5, 13, 21], &[0, 9, 11, 13, 14], &[0, 1, 3, 5, 14]] {
        let beta = BetaSequence::new(rationals(values))?;
        let v = check_eos(&beta, 0.0)?;
        println!("{values:?}: {:?} ({})", v.status, v.reason.name());
    }

    // The same question in double precision.
    let beta = BetaSequence::new(vec![0.0, 2.0, 5.0, 7.0])?;
    let v = check_eos(&beta, 1e-9)?;
    println!("[0.0, 2.0, 5.0, 7.0]: {:?}, exact = {}", v.status, v.exact);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
