use std::path::PathBuf;

use tilegraph::graph::Skeleton;
use tilegraph::{corpus, dynamics, io, Error, Limits};

fn corpus_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

#[test]
fn shipped_files_match_builtins() {
    let limits = Limits::default();
    let cases = [
        ("ledrappier.json", corpus::ledrappier()),
        ("square.json", corpus::square()),
        ("rem3.json", corpus::rem3()),
        ("flat.json", corpus::flat()),
        ("single.json", corpus::single_symbol()),
        ("degenerate.json", corpus::degenerate()),
    ];
    for (file, expected) in cases {
        let bd = io::read_basic_data(&corpus_file(file), &limits).unwrap();
        assert_eq!(bd, expected, "{file}");
    }
}

#[test]
fn shipped_parameters_match_builtins() {
    let limits = Limits::default();
    let p = io::read_prw(&corpus_file("prw-ledrappier.json"), &limits).unwrap();
    assert_eq!(p, corpus::prw_ledrappier());
    let p = io::read_prw(&corpus_file("prw-rem3.json"), &limits).unwrap();
    assert_eq!(p, corpus::prw_rem3());
}

#[test]
fn broken_files_are_rejected() {
    let limits = Limits::default();
    let err = io::read_basic_data(&corpus_file("missing-pattern.json"), &limits).unwrap_err();
    assert_eq!(err.exit_code(), 2, "{err}");
    let err = io::read_basic_data(&corpus_file("corrupt.json"), &limits).unwrap_err();
    assert!(matches!(err, Error::NotBijective { .. }), "{err}");
    assert!(io::read_basic_data_lenient(&corpus_file("corrupt.json"), &limits).is_ok());
}

#[test]
fn every_corpus_graph_is_strongly_connected() {
    let limits = Limits::default();
    for bd in corpus::all() {
        let sk = Skeleton::build(&bd, &limits).unwrap();
        let c = dynamics::strong_connectivity(&bd, &sk, &limits);
        assert!(c.strongly_connected, "{:?}", bd.tile().points());
    }
}

#[test]
fn json_round_trip_for_the_corpus() {
    let limits = Limits::default();
    for bd in corpus::all() {
        let text = io::basic_data_json(&bd).unwrap();
        let raw = io::parse_json(&text).unwrap();
        assert_eq!(tilegraph::validate_basic_data(&raw, &limits).unwrap(), bd);
    }
}
