// Decide whether a probability vector is a mixture of Binomial(n, t) laws with t in (0, 1).
//
// ```text
// cargo run --example mixture
// ```

use std::error::Error;

use eos::feasibility::{check_mixture, Certificate};
use eos::moments::ProbabilityVector;
use num::BigRational;

fn fair(n: u32) -> Vec<BigRational> {
    let mut c = 1i64;
    (0..=n as i64)
        .map(|k| {
            let p = BigRational::new(c.into(), (1i64 << n).into());
            c = c * (n as i64 - k) / (k + 1);
            p
        })
        .collect()
}

pub fn run() -> Result<(), Box<dyn Error>> {
    for n in [2, 4, 6] {
        let v = check_mixture(&ProbabilityVector::new(fair(n))?, 0.0)?;
        if let Some(Certificate::Exact(m)) = &v.certificate {
            println!("fair Binomial({n}): {:?}, atom at {}", v.status, m.atoms()[0].location);
        }
    }
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    let corner = ProbabilityVector::new(vec![one, zero.clone(), zero.clone(), zero])?;
    let v = check_mixture(&corner, 0.0)?;
    println!("(1, 0, 0, 0): {:?} ({})", v.status, v.reason.name());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
