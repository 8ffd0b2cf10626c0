mod check_eos {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/check_eos.rs"));
}

mod certificate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/certificate.rs"));
}

mod generator {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/generator.rs"));
}

mod tmap {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tmap.rs"));
}

mod mixture {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/mixture.rs"));
}

mod moment_hull {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/moment_hull.rs"));
}

mod oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/oracle.rs"));
}

mod documents {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/documents.rs"));
}

mod max_moment_spacings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/max_moment_spacings.rs"));
}

#[test]
fn check_eos_example_runs() {
    check_eos::run().unwrap();
}

#[test]
fn certificate_example_runs() {
    certificate::run().unwrap();
}

#[test]
fn generator_example_runs() {
    generator::run().unwrap();
}

#[test]
fn tmap_example_runs() {
    tmap::run().unwrap();
}

#[test]
fn mixture_example_runs() {
    mixture::run().unwrap();
}

#[test]
fn moment_hull_example_runs() {
    moment_hull::run().unwrap();
}

#[test]
fn oracle_example_runs() {
    oracle::run().unwrap();
}

#[test]
fn documents_example_runs() {
    documents::run().unwrap();
}

#[test]
fn lemma1_example_runs() {
    max_moment_spacings::run().unwrap();
}
