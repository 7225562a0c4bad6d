//! Brute-force checks of the 2-graph axioms.
//!
//! Paths are enumerated independently of composition, by backtracking over
//! labellings of `T(n)`, and the factorisation property, associativity and
//! the commuting-square counts are checked against that enumeration.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::basic_data::{BasicData, Symbol, VertexId};
use crate::error::{Error, Result};
use crate::graph::{self, compose, Colour, Labelling, Path, Skeleton};
use crate::tile::Point;
use crate::Limits;

/// Every path of degree `n`, found by labelling `T(n)` cell by cell in
/// lexicographic order and rejecting a branch as soon as a completed window
/// is not a vertex. Output is in lexicographic order of the labelling.
pub fn brute_force_paths(bd: &BasicData, n: Point, limits: &Limits) -> Result<Vec<Path>> {
    let total = graph::path_count(bd, n).and_then(|c| c.checked_mul(bd.vertex_count() as u64));
    if total.is_none_or(|t| t > limits.max_paths) {
        return Err(Error::SizeLimit {
            what: "path count",
            value: total.map_or_else(|| "overflow".to_string(), |t| t.to_string()),
            cap: limits.max_paths,
        });
    }
    let tile = bd.tile();
    let cells: Vec<Point> = tile.translate_union(n).iter().collect();
    let last = *tile.points().last().expect("tiles are nonempty");
    // Windows whose lexicographically largest cell is cells[i].
    let mut triggers: Vec<Vec<Point>> = vec![Vec::new(); cells.len()];
    for m in n.box_below() {
        let i = cells.binary_search(&(m + last)).expect("window inside T(n)");
        triggers[i].push(m);
    }
    let size = tile.extent() + n + Point::new(1, 1);
    let mut search = Search {
        bd,
        cells: &cells,
        triggers: &triggers,
        labels: Labelling::new(size.x, size.y),
        out: Vec::new(),
        degree: n,
    };
    search.run(0);
    Ok(search.out)
}

struct Search<'a> {
    bd: &'a BasicData,
    cells: &'a [Point],
    triggers: &'a [Vec<Point>],
    labels: Labelling,
    out: Vec<Path>,
    degree: Point,
}

impl Search<'_> {
    fn run(&mut self, i: usize) {
        if i == self.cells.len() {
            self.out
                .push(Path::from_parts(self.bd.tile(), self.degree, self.labels.clone()));
            return;
        }
        let cell = self.cells[i];
        for s in self.bd.alphabet().symbols() {
            self.labels.set(cell, s);
            let ok = self.triggers[i].iter().all(|&m| {
                let w = self.labels.window(self.bd.tile(), m).expect("window complete");
                self.bd.classify_labels(&w).is_some()
            });
            if ok {
                self.run(i + 1);
            }
        }
        self.labels.clear(cell);
    }
}

/// Outcome of a single axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: u64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub max_degree: [u32; 2],
    pub checks: Vec<Check>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Renders a labelling row by row, top row first.
pub fn describe(bd: &BasicData, labels: &Labelling) -> String {
    let cells: Vec<(Point, Symbol)> = labels.iter().collect();
    let top = cells.iter().map(|(p, _)| p.y).max().unwrap_or(0);
    let mut rows = Vec::new();
    for y in (0..=top).rev() {
        let row: Vec<String> = cells
            .iter()
            .filter(|(p, _)| p.y == y)
            .map(|&(p, s)| format!("{}={}", p, bd.alphabet().name(s)))
            .collect();
        rows.push(row.join(" "));
    }
    rows.join(" / ")
}

fn vertex_name(bd: &BasicData, sk: &Skeleton, v: VertexId) -> String {
    format!("{} [{}]", v, sk.vertex(v).label(bd.alphabet()))
}

/// Runs every check on paths of degree up to `dmax`.
pub fn verify_axioms(bd: &BasicData, dmax: Point, limits: &Limits) -> Result<AxiomReport> {
    let sk = Skeleton::build(bd, limits)?;
    let mut paths: BTreeMap<Point, Vec<Path>> = BTreeMap::new();
    for n in dmax.box_below() {
        paths.insert(n, brute_force_paths(bd, n, limits)?);
    }
    let checks = vec![
        edge_counts(bd, &sk),
        commuting_squares(bd, &sk, &paths),
        unique_factorisation(bd, &paths),
        composition_agrees(bd, &paths),
        associativity(bd, &sk),
        enumeration_agrees(bd, &sk, &paths, limits),
    ];
    Ok(AxiomReport {
        max_degree: [dmax.x, dmax.y],
        checks,
    })
}

/// Each vertex receives and emits `|A|^{c2}` blue and `|A|^{c1}` red edges.
fn edge_counts(bd: &BasicData, sk: &Skeleton) -> Check {
    let mut checked = 0;
    let mut bad = None;
    for colour in Colour::ALL {
        let n = colour.axis().unit();
        let want = graph::path_count(bd, n).unwrap_or(u64::MAX) as usize;
        for v in sk.ids() {
            checked += 2;
            let out = sk.sources_into(colour, v).len();
            let into = sk.ranges_from(colour, v).len();
            if bad.is_none() && (out != want || into != want) {
                bad = Some(format!(
                    "{} has {out} {} edges as range and {into} as source, expected {want}",
                    vertex_name(bd, sk, v),
                    colour.name()
                ));
            }
        }
    }
    Check {
        name: "edge-counts",
        passed: bad.is_none(),
        checked,
        detail: format!("{} vertices, both colours", sk.vertex_count()),
        counterexample: bad,
    }
}

/// For each pair `(v, u)`, blue-red paths, red-blue paths and paths of degree
/// `(1, 1)` from `u` to `v` are equinumerous.
fn commuting_squares(bd: &BasicData, sk: &Skeleton, paths: &BTreeMap<Point, Vec<Path>>) -> Check {
    let n = sk.vertex_count();
    let mut squares: HashMap<(VertexId, VertexId), u64> = HashMap::new();
    if let Some(ps) = paths.get(&Point::new(1, 1)) {
        for p in ps {
            *squares.entry((p.range(bd), p.source(bd))).or_default() += 1;
        }
    }
    let two_step = |first: Colour, v: VertexId, u: VertexId| -> u64 {
        sk.sources_into(first, v)
            .iter()
            .filter(|&&w| sk.edge_count(first.other(), w, u) == 1)
            .count() as u64
    };
    let mut bad = None;
    let have_squares = paths.contains_key(&Point::new(1, 1));
    for v in sk.ids() {
        for u in sk.ids() {
            let br = two_step(Colour::Blue, v, u);
            let rb = two_step(Colour::Red, v, u);
            let sq = squares.get(&(v, u)).copied().unwrap_or(0);
            if bad.is_none() && (br != rb || (have_squares && sq != br)) {
                bad = Some(format!(
                    "range {} source {}: {br} blue-red, {rb} red-blue, {sq} squares",
                    vertex_name(bd, sk, v),
                    vertex_name(bd, sk, u)
                ));
            }
        }
    }
    Check {
        name: "commuting-squares",
        passed: bad.is_none(),
        checked: (n * n) as u64,
        detail: "blue-red, red-blue and degree (1,1) counts per vertex pair".into(),
        counterexample: bad,
    }
}

type Composable<'a> = Vec<(&'a Path, &'a Path)>;

fn composable_pairs<'a>(bd: &BasicData, left: &'a [Path], right: &'a [Path]) -> Composable<'a> {
    let mut by_range: HashMap<VertexId, Vec<&Path>> = HashMap::new();
    for nu in right {
        by_range.entry(nu.range(bd)).or_default().push(nu);
    }
    let mut out = Vec::new();
    for mu in left {
        if let Some(nus) = by_range.get(&mu.source(bd)) {
            out.extend(nus.iter().map(|&nu| (mu, nu)));
        }
    }
    out
}

/// Every composable pair `(mu, nu)` with `d(mu) + d(nu) <= dmax` has exactly
/// one extension `λ` with `λ(0, d(mu)) = mu` and `λ(d(mu), d(λ)) = nu`.
fn unique_factorisation(bd: &BasicData, paths: &BTreeMap<Point, Vec<Path>>) -> Check {
    let tile = bd.tile();
    let mut checked = 0;
    let mut bad = None;
    'outer: for (&n, whole) in paths {
        for m in n.box_below() {
            let rest = n.checked_sub(m).expect("m <= n");
            let mut extensions: HashMap<(Path, Path), u64> = HashMap::new();
            for lambda in whole {
                let mu = lambda.factorize(tile, Point::ZERO, m).expect("in range");
                let nu = lambda.factorize(tile, m, n).expect("in range");
                *extensions.entry((mu, nu)).or_default() += 1;
            }
            for (mu, nu) in composable_pairs(bd, &paths[&m], &paths[&rest]) {
                checked += 1;
                let count = extensions
                    .get(&(mu.clone(), nu.clone()))
                    .copied()
                    .unwrap_or(0);
                if count != 1 {
                    bad = Some(format!(
                        "degrees {m} and {rest}: {count} extensions of mu = {} and nu = {}",
                        describe(bd, mu.labels()),
                        describe(bd, nu.labels())
                    ));
                    break 'outer;
                }
            }
        }
    }
    Check {
        name: "unique-factorisation",
        passed: bad.is_none(),
        checked,
        detail: "composable pairs against brute-force extensions".into(),
        counterexample: bad,
    }
}

/// Corner-filling composition returns the brute-force extension.
fn composition_agrees(bd: &BasicData, paths: &BTreeMap<Point, Vec<Path>>) -> Check {
    let tile = bd.tile();
    let mut checked = 0;
    let mut bad = None;
    'outer: for (&n, whole) in paths {
        for lambda in whole {
            for m in n.box_below() {
                checked += 1;
                let mu = lambda.factorize(tile, Point::ZERO, m).expect("in range");
                let nu = lambda.factorize(tile, m, n).expect("in range");
                let got = compose(bd, &mu, &nu);
                if got.as_ref() != Ok(lambda) {
                    bad = Some(format!(
                        "splitting {} at {m} and recomposing gave {}",
                        describe(bd, lambda.labels()),
                        match got {
                            Ok(p) => describe(bd, p.labels()),
                            Err(e) => format!("an error: {e}"),
                        }
                    ));
                    break 'outer;
                }
            }
        }
    }
    Check {
        name: "composition",
        passed: bad.is_none(),
        checked,
        detail: "compose(λ(0,m), λ(m,n)) = λ for every brute-force path".into(),
        counterexample: bad,
    }
}

/// `(e f) g = e (f g)` over all composable triples of edges.
fn associativity(bd: &BasicData, sk: &Skeleton) -> Check {
    let tile = bd.tile();
    let mut edges = Vec::new();
    for colour in Colour::ALL {
        for (v, u) in sk.edges(colour) {
            edges.push(sk.edge_path(tile, colour, v, u).expect("listed edge"));
        }
    }
    let mut starting: HashMap<VertexId, Vec<&Path>> = HashMap::new();
    for e in &edges {
        starting.entry(e.range(bd)).or_default().push(e);
    }
    let after = |p: &Path| starting.get(&p.source(bd)).cloned().unwrap_or_default();
    let mut checked = 0;
    let mut bad = None;
    'outer: for e in &edges {
        for f in after(e) {
            for g in after(f) {
                checked += 1;
                let left = compose(bd, e, f).and_then(|ef| compose(bd, &ef, g));
                let right = compose(bd, f, g).and_then(|fg| compose(bd, e, &fg));
                let ok = matches!((&left, &right), (Ok(a), Ok(b)) if a == b);
                if !ok {
                    bad = Some(format!(
                        "edges of degree {}, {}, {} from {}: {:?} versus {:?}",
                        e.degree(),
                        f.degree(),
                        g.degree(),
                        vertex_name(bd, sk, e.range(bd)),
                        left.map(|p| describe(bd, p.labels())),
                        right.map(|p| describe(bd, p.labels()))
                    ));
                    break 'outer;
                }
            }
        }
    }
    Check {
        name: "associativity",
        passed: bad.is_none(),
        checked,
        detail: format!("{} edges", edges.len()),
        counterexample: bad,
    }
}

/// Growing paths edge by edge through composition finds the brute-force set.
fn enumeration_agrees(
    bd: &BasicData,
    sk: &Skeleton,
    paths: &BTreeMap<Point, Vec<Path>>,
    limits: &Limits,
) -> Check {
    let mut checked = 0;
    let mut bad = None;
    for (&n, whole) in paths {
        checked += 1;
        match graph::all_paths(bd, sk, n, limits) {
            Ok(mut grown) => {
                let key = |p: &Path| p.labels().iter().map(|(_, s)| s.0).collect::<Vec<_>>();
                grown.sort_by_key(key);
                let mut expected = whole.clone();
                expected.sort_by_key(key);
                if grown != expected && bad.is_none() {
                    bad = Some(format!(
                        "degree {n}: composition found {} paths, brute force {}",
                        grown.len(),
                        expected.len()
                    ));
                }
            }
            Err(e) => {
                if bad.is_none() {
                    bad = Some(format!("degree {n}: {e}"));
                }
            }
        }
    }
    Check {
        name: "enumeration",
        passed: bad.is_none(),
        checked,
        detail: "edge-by-edge growth against brute force, per degree".into(),
        counterexample: bad,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basic_data::SymbolMap;
    use crate::corpus;

    #[test]
    fn brute_force_counts() {
        let limits = Limits::default();
        for bd in corpus::all() {
            for n in Point::new(2, 2).box_below() {
                let got = brute_force_paths(&bd, n, &limits).unwrap().len() as u64;
                let want = bd.vertex_count() as u64 * graph::path_count(&bd, n).unwrap();
                assert_eq!(got, want, "degree {n}");
            }
        }
    }

    #[test]
    fn worked_examples_satisfy_the_axioms() {
        for (name, bd) in corpus::worked() {
            let report = verify_axioms(&bd, Point::new(2, 2), &Limits::default()).unwrap();
            assert!(report.passed(), "{name}: {report:?}");
        }
    }

    #[test]
    fn constant_map_breaks_factorisation() {
        let good = corpus::ledrappier();
        let broken = BasicData::with_maps(
            good.tile().clone(),
            good.alphabet().clone(),
            vec![
                SymbolMap::new(vec![Symbol(0), Symbol(1)]),
                SymbolMap::new(vec![Symbol(0), Symbol(0)]),
            ],
        )
        .unwrap();
        let report = verify_axioms(&broken, Point::new(1, 1), &Limits::default()).unwrap();
        assert!(!report.passed());
        let uf = report
            .checks
            .iter()
            .find(|c| c.name == "unique-factorisation")
            .unwrap();
        assert!(!uf.passed);
        assert!(uf.counterexample.is_some());
    }
}
