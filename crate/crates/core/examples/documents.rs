// Read and write eos/1 documents.
//
// ```text
// cargo run --example documents
// ```

use std::error::Error;

use eos::feasibility::check_eos;
use eos::io::{numbers, parse, Document, Format};
use eos::moments::{nu_from_beta, BetaSequence};
use eos::scalar::Number;
use num::BigRational;

pub fn run() -> Result<(), Box<dyn Error>> {
    let text = r#"{"kind":"beta","version":"eos/1","values":["0","2","5","7"]}"#;
    let Document::Beta(values) = parse(text)? else {
        return Err("expected a beta document".into());
    };
    let exact: Vec<BigRational> = eos::io::exact_numbers(&values).ok_or("inputs are not rational")?;
    let beta = BetaSequence::new(exact)?;

    let nu = nu_from_beta(&beta)?;
    let doc = Document::Nu { n: nu.n, lambda: Number::of(&nu.lambda), values: numbers(&nu.nu) };
    println!("{}", doc.emit(Format::Json)?);
    println!("{}", doc.emit(Format::Csv)?);

    let verdict = Document::Verdict(check_eos(&beta, 0.0)?);
    let json = verdict.emit(Format::Json)?;
    println!("{json}");
    assert_eq!(parse(&json)?, verdict);

    match parse(r#"{"kind":"beta","version":"eos/1","values":["0","3","2"]}"#) {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run().unwrap();
}
