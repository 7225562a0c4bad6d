//! The worked examples, built in code. The JSON files under `corpus/` at the
//! repository root describe the same data.

use std::collections::BTreeMap;

use crate::basic_data::{Alphabet, BasicData, Symbol};
use crate::prw::PrwParams;
use crate::tile::{Point, Tile};

fn tile(points: &[(u32, u32)]) -> Tile {
    Tile::new(points.iter().map(|&(x, y)| Point::new(x, y))).expect("corpus tile")
}

fn binary() -> Alphabet {
    Alphabet::new(["0", "1"]).expect("binary alphabet")
}

fn flip(a: Symbol) -> Symbol {
    Symbol(1 - a.0)
}

/// `T = {0, e1, e2}` over `{0, 1}`: `f_{p[0]}` is the identity, `f_{p[1]}` swaps.
pub fn ledrappier() -> BasicData {
    ledrappier_with_alphabet(binary())
}

pub fn ledrappier_with_alphabet(alphabet: Alphabet) -> BasicData {
    BasicData::from_fn(tile(&[(0, 0), (1, 0), (0, 1)]), alphabet, |p, a| {
        if p.0[0] == Symbol(0) {
            a
        } else {
            flip(a)
        }
    })
    .expect("ledrappier data")
}

/// The 2x2 square over `{0, 1}`: identity for `p[0,0]`, swap otherwise.
pub fn square() -> BasicData {
    BasicData::from_fn(tile(&[(0, 0), (1, 0), (0, 1), (1, 1)]), binary(), |p, a| {
        if p.0.iter().all(|&s| s == Symbol(0)) {
            a
        } else {
            flip(a)
        }
    })
    .expect("square data")
}

/// `T = {0, e1, 2e1, e2}` over `{0, 1}`: identity for `p[0,0]`, swap otherwise.
pub fn rem3() -> BasicData {
    BasicData::from_fn(tile(&[(0, 0), (1, 0), (2, 0), (0, 1)]), binary(), |p, a| {
        if p.0.iter().all(|&s| s == Symbol(0)) {
            a
        } else {
            flip(a)
        }
    })
    .expect("rem3 data")
}

/// `T = {0, e1, 2e1}` with the given map for each of the two patterns.
pub fn flat_with(f0_swaps: bool, f1_swaps: bool) -> BasicData {
    BasicData::from_fn(tile(&[(0, 0), (1, 0), (2, 0)]), binary(), |p, a| {
        let swaps = if p.0[0] == Symbol(0) { f0_swaps } else { f1_swaps };
        if swaps {
            flip(a)
        } else {
            a
        }
    })
    .expect("flat data")
}

pub fn flat() -> BasicData {
    flat_with(false, true)
}

/// Ledrappier tile over a one-letter alphabet.
pub fn single_symbol() -> BasicData {
    BasicData::from_fn(
        tile(&[(0, 0), (1, 0), (0, 1)]),
        Alphabet::new(["0"]).expect("alphabet"),
        |_, a| a,
    )
    .expect("single-symbol data")
}

pub fn degenerate() -> BasicData {
    BasicData::degenerate(tile(&[(0, 0)]), binary(), Symbol(1)).expect("degenerate data")
}

/// `(T = {0, e1, e2}, q = 2, t = 0, w = 1)`.
pub fn prw_ledrappier() -> PrwParams {
    let t = tile(&[(0, 0), (1, 0), (0, 1)]);
    let w: BTreeMap<Point, u64> = t.points().iter().map(|&p| (p, 1)).collect();
    PrwParams::new(t, 2, 0, &w).expect("prw params")
}

/// `(T = {0, e1, 2e1, e2}, q = 2, t = 0)` with `w(0) = 0` and weight 1 elsewhere.
pub fn prw_rem3() -> PrwParams {
    let t = tile(&[(0, 0), (1, 0), (2, 0), (0, 1)]);
    let w: BTreeMap<Point, u64> = t
        .points()
        .iter()
        .map(|&p| (p, u64::from(p != Point::ZERO)))
        .collect();
    PrwParams::new(t, 2, 0, &w).expect("prw params")
}

/// The nondegenerate examples with at least two symbols.
pub fn worked() -> Vec<(&'static str, BasicData)> {
    vec![
        ("ledrappier", ledrappier()),
        ("square", square()),
        ("rem3", rem3()),
        ("flat", flat()),
    ]
}

pub fn all() -> Vec<BasicData> {
    let mut out: Vec<BasicData> = worked().into_iter().map(|(_, bd)| bd).collect();
    out.push(single_symbol());
    out.push(degenerate());
    out
}
