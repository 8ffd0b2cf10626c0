mod common;

use common::{config, discrete, increasing, interior_measure, q};
use eos::feasibility::check_eos;
use eos::io::{measure_pairs, numbers, parse, parse_bytes, DistSpec, Document, Format, TSpec};
use eos::moments::{nu_from_beta, BetaSequence};
use eos::oracle::eos_exact;
use eos::scalar::Number;
use proptest::prelude::*;

fn round_trips(doc: &Document) -> Result<(), TestCaseError> {
    let first = doc.emit(Format::Json).unwrap();
    prop_assert_eq!(&first, &doc.emit(Format::Json).unwrap());
    let parsed = parse(&first).unwrap();
    prop_assert_eq!(&parsed, doc);
    prop_assert_eq!(parsed.emit(Format::Json).unwrap(), first);
    Ok(())
}

proptest! {
    #![proptest_config(config(200, 0x696f_0001))]

    #[test]
    fn sequences_round_trip(values in increasing(2..=12)) {
        let beta = BetaSequence::new(values).unwrap();
        round_trips(&Document::Beta(numbers(beta.values())))?;
        let nu = nu_from_beta(&beta).unwrap();
        round_trips(&Document::Nu { n: nu.n, lambda: Number::of(&nu.lambda), values: numbers(&nu.nu) })?;
        let float = nu_from_beta(&beta.to_f64()).unwrap();
        round_trips(&Document::Nu { n: float.n, lambda: Number::of(&float.lambda), values: numbers(&float.nu) })?;
        let csv = Document::Beta(numbers(beta.values())).emit(Format::Csv).unwrap();
        prop_assert_eq!(csv.lines().count(), beta.n() + 1);
    }

    #[test]
    fn verdicts_round_trip(x in discrete(), n in 2usize..=8) {
        let beta = BetaSequence::new(eos_exact(&x, n).unwrap()).unwrap();
        round_trips(&Document::Verdict(check_eos(&beta, 0.0).unwrap()))?;
        round_trips(&Document::Verdict(check_eos(&beta.to_f64(), 1e-9).unwrap()))?;
        let mut squeezed = beta.values().to_vec();
        let last = squeezed.len() - 1;
        squeezed[last] = (squeezed[last].clone() + squeezed[last - 1].clone()) * q(1, 2);
        let other = check_eos(&BetaSequence::new(squeezed).unwrap(), 0.0).unwrap();
        round_trips(&Document::Verdict(other))?;
    }

    #[test]
    fn measures_and_laws_round_trip(t in interior_measure(), x in discrete()) {
        round_trips(&Document::Measure(measure_pairs(&t)))?;
        round_trips(&Document::Measure(measure_pairs(&t.to_f64())))?;
        round_trips(&Document::TSpec(TSpec::Atoms(measure_pairs(&t))))?;
        let pairs = x.values().iter().zip(x.masses()).map(|(v, m)| (Number::of(v), Number::of(m))).collect();
        let dist = Document::Dist(DistSpec::Atoms(pairs));
        round_trips(&dist)?;
        let spec = match &dist {
            Document::Dist(d) => d.to_string(),
            _ => unreachable!(),
        };
        prop_assert_eq!(Document::Dist(DistSpec::parse(&spec).unwrap()), dist);
    }
}

proptest! {
    #![proptest_config(config(2000, 0x696f_0002))]

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..256)) {
        let _ = parse_bytes(&bytes);
    }

    #[test]
    fn json_like_text_never_panics(text in r#"[{}\[\]",:a-z0-9/.eE+\- ]{0,120}"#) {
        let _ = parse(&text);
    }

    #[test]
    fn documents_with_wild_numbers_never_panic(kind in "(beta|nu|p|u|measure|tspec|dist|verdict|report)", value in r#"[0-9/.eE+\-]{0,40}"#) {
        let text = format!(
            r#"{{"kind":"{kind}","version":"eos/1","values":["{value}","1"],"n":3,"lambda":"{value}","atoms":[{{"t":"{value}","w":"1","value":"{value}","mass":"1"}}],"law":"beta","a":"{value}","b":"2","form":"atoms"}}"#
        );
        let _ = parse(&text);
    }
}
