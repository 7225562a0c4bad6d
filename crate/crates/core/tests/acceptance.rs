//! Acceptance criteria, one test each. Every test prints a single
//! `[PASS]` or `[FAIL]` line before asserting.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use tilegraph::dynamics::{self, VerdictStatus};
use tilegraph::graph::Skeleton;
use tilegraph::prw::import_prw;
use tilegraph::shift::{config_to_path, count_blocks, count_blocks_checked, path_to_config, shift_equivariant};
use tilegraph::verify::{brute_force_paths, verify_axioms};
use tilegraph::{corpus, io, BasicData, Colour, Limits, Point, Symbol, VertexId};

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn load(name: &str) -> BasicData {
    io::read_basic_data(&corpus_path(name), &Limits::default()).unwrap()
}

const GRAPHS: [&str; 6] = [
    "ledrappier.json",
    "square.json",
    "rem3.json",
    "flat.json",
    "single.json",
    "degenerate.json",
];

fn conclude(id: &str, what: &str, failures: &[String], elapsed: Duration, bound: Option<Duration>) {
    let late = bound.is_some_and(|b| elapsed > b);
    let pass = failures.is_empty() && !late;
    let timing = match bound {
        Some(b) => format!("{:.3}s of {}s", elapsed.as_secs_f64(), b.as_secs()),
        None => format!("{:.3}s", elapsed.as_secs_f64()),
    };
    println!("[{}] {id} {what} ({timing})", if pass { "PASS" } else { "FAIL" });
    for f in failures {
        println!("       {f}");
    }
    assert!(failures.is_empty(), "{id}: {failures:?}");
    assert!(!late, "{id}: took {elapsed:?}, bound {bound:?}");
}

#[test]
fn c01_vertex_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, want) in [("ledrappier.json", 4), ("square.json", 8), ("rem3.json", 8)] {
        let bd = load(name);
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let formula = bd.alphabet().len().pow(bd.tile().reduced().len() as u32 + 1);
        if sk.vertex_count() != want || formula != want {
            failures.push(format!("{name}: {} vertices, formula {formula}, expected {want}", sk.vertex_count()));
        }
    }
    conclude("C1", "vertex counts 4, 8, 8", &failures, start.elapsed(), Some(Duration::from_secs(1)));
}

#[test]
fn c02_edge_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for name in GRAPHS {
        let bd = load(name);
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let a = bd.alphabet().len();
        let (c1, c2) = (bd.tile().c1(), bd.tile().c2());
        let want = |c: Colour| match c {
            Colour::Blue => a.pow(c2),
            Colour::Red => a.pow(c1),
        };
        for v in sk.ids() {
            for c in Colour::ALL {
                let (out, into) = (sk.sources_into(c, v).len(), sk.ranges_from(c, v).len());
                if out != want(c) || into != want(c) {
                    failures.push(format!("{name} {v} {}: {out}/{into}, expected {}", c.name(), want(c)));
                }
            }
        }
    }
    conclude("C2", "edge counts |A|^c2 blue, |A|^c1 red", &failures, start.elapsed(), Some(Duration::from_secs(1)));
}

#[test]
fn c03_commuting_squares() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for name in GRAPHS {
        let bd = load(name);
        let paths = brute_force_paths(&bd, Point::new(1, 1), &Limits::default()).unwrap();
        let mut counts: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for p in &paths {
            *counts.entry((p.range(&bd), p.source(&bd))).or_default() += 1;
        }
        let n = bd.vertex_count();
        let mut wrong = 0;
        let mut example = None;
        for v in 0..n {
            for u in 0..n {
                let c = counts.get(&(VertexId(v), VertexId(u))).copied().unwrap_or(0);
                if c != 1 {
                    wrong += 1;
                    example.get_or_insert(format!("v{v} to v{u} has {c}"));
                }
            }
        }
        if wrong > 0 {
            failures.push(format!(
                "{name}: {wrong} of {} ordered pairs do not have exactly one path of degree (1,1), e.g. {}",
                n * n,
                example.unwrap()
            ));
        }
    }
    conclude("C3", "|v Λ^(1,1) u| = 1 for all pairs", &failures, start.elapsed(), Some(Duration::from_secs(5)));
}

#[test]
fn c04_category_axioms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for name in ["ledrappier.json", "square.json"] {
        let bd = load(name);
        let report = verify_axioms(&bd, Point::new(2, 2), &Limits::default()).unwrap();
        for check in &report.checks {
            if !check.passed {
                failures.push(format!("{name} {}: {:?}", check.name, check.counterexample));
            }
        }
        for required in ["unique-factorisation", "associativity"] {
            let c = report.checks.iter().find(|c| c.name == required).unwrap();
            if c.checked == 0 {
                failures.push(format!("{name}: {required} checked nothing"));
            }
        }
    }
    conclude("C4", "unique factorisation to (2,2) and associativity", &failures, start.elapsed(), Some(Duration::from_secs(60)));
}

#[test]
fn c05_breaking_cycles() {
    let start = Instant::now();
    let expected: [(&str, Colour, u32, bool); 10] = [
        ("ledrappier.json", Colour::Blue, 0, true),
        ("ledrappier.json", Colour::Blue, 1, true),
        ("ledrappier.json", Colour::Red, 0, true),
        ("ledrappier.json", Colour::Red, 1, true),
        ("square.json", Colour::Blue, 0, true),
        ("square.json", Colour::Red, 0, true),
        ("square.json", Colour::Red, 1, false),
        ("rem3.json", Colour::Blue, 0, true),
        ("rem3.json", Colour::Blue, 1, true),
        ("rem3.json", Colour::Red, 1, true),
    ];
    let mut failures = Vec::new();
    let mut check = |name: &str, colour: Colour, a: u32, want: bool| {
        let bd = load(name);
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let cert = dynamics::find_breaking_cycle(&bd, &sk, colour, Symbol(a));
        if let Some(c) = &cert {
            assert!(dynamics::validate_certificate(&bd, &sk, c));
        }
        if cert.is_some() != want {
            failures.push(format!("{name} {} {a}: found {}, expected {want}", colour.name(), cert.is_some()));
        }
    };
    for (name, colour, a, want) in expected {
        check(name, colour, a, want);
    }
    check("rem3.json", Colour::Red, 0, false);
    conclude("C5", "breaking cycles match the worked examples", &failures, start.elapsed(), None);
}

#[test]
fn c06_flat_tile_periodicity() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    for (f0, f1) in [(false, false), (false, true), (true, false), (true, true)] {
        let bd = corpus::flat_with(f0, f1);
        let sk = Skeleton::build(&bd, &limits).unwrap();
        let label = format!("flat f0 swap={f0} f1 swap={f1}");
        if dynamics::aperiodicity_verdict(&bd, &sk).status != VerdictStatus::PeriodicFlatTile {
            failures.push(format!("{label}: verdict is not PeriodicFlatTile"));
        }
        let Some(cycles) = dynamics::colour_cycles(&sk, Colour::Blue) else {
            failures.push(format!("{label}: blue subgraph is not a union of disjoint cycles"));
            continue;
        };
        let period = cycles.iter().map(Vec::len).fold(1, |a, b| a.lcm(&b)) as u32;
        let m = Point::new(period, 0);
        let mut searched = 0;
        for d in Point::new(4, 2).box_below().filter(|d| m.leq(*d)) {
            for v in sk.ids() {
                searched += 1;
                let w = dynamics::periodicity_witness_search(&bd, &sk, v, m, Point::ZERO, d, &limits).unwrap();
                if w.is_some() {
                    failures.push(format!("{label}: witness at {v}, m = {m}, D = {d}"));
                }
            }
        }
        if searched == 0 {
            failures.push(format!("{label}: period {period} leaves no bound to search"));
        }
    }
    conclude("C6", "flat tile: periodic verdict, blue cycles, no witness to D = (4,2)", &failures, start.elapsed(), None);
}

#[test]
fn c07_prw_round_trip() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let params = io::read_prw(&corpus_path("prw-ledrappier.json"), &limits).unwrap();
    let imported = import_prw(&params).unwrap();
    let led = load("ledrappier.json");
    let a = Skeleton::build(&imported, &limits).unwrap();
    let b = Skeleton::build(&led, &limits).unwrap();
    if a != b {
        failures.push("imported skeleton differs from ledrappier".into());
    }
    for v in a.vertices() {
        let values: Vec<u64> = v.labels.iter().map(|s| u64::from(s.0)).collect();
        if params.weighted_sum(&values) != params.trace() {
            failures.push(format!("{} violates the trace identity", v.id));
        }
    }
    conclude("C7", "PRW import reproduces ledrappier", &failures, start.elapsed(), None);
}

#[test]
fn c08_prw_gap_case() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let params = io::read_prw(&corpus_path("prw-rem3.json"), &limits).unwrap();
    if params.weight(Point::ZERO) != 0 {
        failures.push("w(0) is not 0".into());
    }
    if dynamics::prw_aperiodicity_check(&params) {
        failures.push("PRW check unexpectedly true".into());
    }
    let bd = import_prw(&params).unwrap();
    let sk = Skeleton::build(&bd, &limits).unwrap();
    match dynamics::find_breaking_cycle(&bd, &sk, Colour::Blue, Symbol(0)) {
        Some(c) if dynamics::validate_certificate(&bd, &sk, &c) => {}
        _ => failures.push("no blue 0-breaking cycle on the imported data".into()),
    }
    conclude("C8", "PRW check false, breaking cycle found", &failures, start.elapsed(), None);
}

#[test]
fn c09_oracle_agreement() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    let mut certified = 0;
    let cap = Point::new(2, 2);
    for name in GRAPHS {
        let bd = load(name);
        let sk = Skeleton::build(&bd, &limits).unwrap();
        if !dynamics::aperiodicity_verdict(&bd, &sk).is_certified() {
            continue;
        }
        certified += 1;
        for m in cap.box_below() {
            for n in cap.box_below() {
                if m == n || m.meet(n) != Point::ZERO {
                    continue;
                }
                let d = m.join(n) + Point::new(1, 1);
                for v in sk.ids() {
                    let w = dynamics::periodicity_witness_search(&bd, &sk, v, m, n, d, &limits).unwrap();
                    if w.is_none() {
                        failures.push(format!("{name}: no witness at {v}, m = {m}, n = {n}, D = {d}"));
                    }
                }
            }
        }
    }
    if certified != 3 {
        failures.push(format!("{certified} certified graphs, expected 3"));
    }
    conclude("C9", "witness search agrees with the certificate", &failures, start.elapsed(), Some(Duration::from_secs(120)));
}

#[test]
fn c10_block_counts_and_entropy() {
    let start = Instant::now();
    let limits = Limits::default();
    let mut failures = Vec::new();
    for name in GRAPHS {
        let bd = load(name);
        for d in 1..=2 {
            let brute = brute_force_paths(&bd, Point::new(d, d), &limits).unwrap().len();
            let closed = count_blocks(&bd, d).unwrap().count.unwrap();
            let exponent = if bd.is_degenerate() {
                0
            } else {
                bd.tile().reduced().len() as u32 + 1 + d * (bd.tile().c1() + bd.tile().c2())
            };
            let formula = BigUint::from(bd.alphabet().len()).pow(exponent);
            if closed != BigUint::from(brute) || closed != formula {
                failures.push(format!("{name} d = {d}: closed {closed}, formula {formula}, brute {brute}"));
            }
            count_blocks_checked(&bd, d, 2, &limits).unwrap();
        }
        let terms: Vec<f64> = (1..=20).map(|d| count_blocks(&bd, d).unwrap().entropy_term).collect();
        if terms[19] >= 1e-2 {
            failures.push(format!("{name}: entropy_term(20) = {}", terms[19]));
        }
        let positive = bd.alphabet().len() > 1 && !bd.is_degenerate();
        for d in 3..20 {
            let (a, b) = (terms[d - 1], terms[d]);
            if (positive && b >= a) || (!positive && b > a) {
                failures.push(format!("{name}: entropy_term not decreasing at d = {}", d + 1));
            }
        }
    }
    let led = load("ledrappier.json");
    let counts: Vec<BigUint> = (1..=2).map(|d| count_blocks(&led, d).unwrap().count.unwrap()).collect();
    if counts != [BigUint::from(16u32), BigUint::from(64u32)] {
        failures.push(format!("ledrappier counts {counts:?}"));
    }
    conclude("C10", "block counts and vanishing entropy", &failures, start.elapsed(), None);
}

#[test]
fn c11_finite_homeomorphism() {
    let start = Instant::now();
    let limits = Limits::default();
    let bd = load("ledrappier.json");
    let mut failures = Vec::new();
    let mut tally: BTreeMap<Point, (usize, usize)> = BTreeMap::new();
    for n in [Point::new(1, 1), Point::new(2, 2)] {
        for p in brute_force_paths(&bd, n, &limits).unwrap() {
            let y = path_to_config(&p);
            if config_to_path(&bd, &y).as_ref() != Ok(&p) {
                failures.push(format!("round trip failed for a path of degree {n}"));
            }
            let entry = tally.entry(n).or_default();
            entry.0 += 1;
            for b in n.box_below() {
                entry.1 += 1;
                if shift_equivariant(&bd, &p, b) != Ok(true) {
                    failures.push(format!("shift by {b} not equivariant for a path of degree {n}"));
                }
            }
        }
    }
    if tally.get(&Point::new(1, 1)).map(|t| t.0) != Some(16) || tally.get(&Point::new(2, 2)).map(|t| t.0) != Some(64) {
        failures.push(format!("unexpected path totals {tally:?}"));
    }
    conclude("C11", "path/configuration round trip and shift equivariance", &failures, start.elapsed(), Some(Duration::from_secs(30)));
}
