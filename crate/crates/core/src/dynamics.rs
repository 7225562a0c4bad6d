//! Aperiodicity certificates, strong connectivity and the simplicity report.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::basic_data::{BasicData, Symbol, VertexId};
use crate::error::{Error, Result};
use crate::graph::{self, Colour, Path, Skeleton};
use crate::tile::Point;
use crate::Limits;

pub use crate::prw::prw_aperiodicity_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    /// `|v_i Λ^e v_{i+1}| = 1` around a cycle of distinct vertices.
    Cycle,
    /// `|v_i Λ^e v_i| = 1` for every listed vertex.
    Loops,
}

/// A certificate of aperiodicity: at least two distinct vertices that are
/// constantly `symbol` on the overlap transverse to `colour`, joined either
/// into a cycle or each by a loop of that colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakingCycle {
    pub colour: Colour,
    pub symbol: Symbol,
    pub kind: CycleKind,
    pub vertices: Vec<VertexId>,
}

/// Vertices constantly `a` on `T ∩ (T + e_j)`, where `e_j` is the other
/// colour's direction. An empty overlap yields no candidates.
pub fn candidates(bd: &BasicData, skeleton: &Skeleton, colour: Colour, a: Symbol) -> Vec<VertexId> {
    let tile = bd.tile();
    let overlap = tile.overlap(colour.other().axis());
    if overlap.is_empty() {
        return Vec::new();
    }
    skeleton
        .vertices()
        .iter()
        .filter(|v| overlap.iter().all(|m| v.value_at(tile, m) == Some(a)))
        .map(|v| v.id)
        .collect()
}

/// Looks for a breaking cycle of the given colour and symbol. Loops are
/// tried first; otherwise the shortest cycle of length at least two among the
/// candidates is returned, ties going to the earliest starting vertex.
pub fn find_breaking_cycle(
    bd: &BasicData,
    skeleton: &Skeleton,
    colour: Colour,
    a: Symbol,
) -> Option<BreakingCycle> {
    let cands = candidates(bd, skeleton, colour, a);
    let looped: Vec<VertexId> = cands
        .iter()
        .copied()
        .filter(|&v| skeleton.edge_count(colour, v, v) == 1)
        .collect();
    if looped.len() >= 2 {
        return Some(BreakingCycle {
            colour,
            symbol: a,
            kind: CycleKind::Loops,
            vertices: looped,
        });
    }
    let allowed: BTreeSet<VertexId> = cands.iter().copied().collect();
    let mut best: Option<Vec<VertexId>> = None;
    for &start in &cands {
        if let Some(cycle) = shortest_cycle_through(skeleton, colour, start, &allowed) {
            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                best = Some(cycle);
            }
        }
    }
    best.map(|vertices| BreakingCycle {
        colour,
        symbol: a,
        kind: CycleKind::Cycle,
        vertices,
    })
}

/// Breadth-first search for the shortest walk `start -> ... -> start` of
/// length at least two, which is then a cycle through distinct vertices.
fn shortest_cycle_through(
    skeleton: &Skeleton,
    colour: Colour,
    start: VertexId,
    allowed: &BTreeSet<VertexId>,
) -> Option<Vec<VertexId>> {
    let n = skeleton.vertex_count();
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[start.0] = true;
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        for &u in skeleton.sources_into(colour, v) {
            if u == v || !allowed.contains(&u) {
                continue;
            }
            if u == start {
                let mut cycle = vec![v];
                let mut cur = v;
                while let Some(p) = parent[cur.0] {
                    cycle.push(p);
                    cur = p;
                }
                cycle.reverse();
                return Some(cycle);
            }
            if !seen[u.0] {
                seen[u.0] = true;
                parent[u.0] = Some(v);
                queue.push_back(u);
            }
        }
    }
    None
}

/// Re-checks a certificate against the skeleton.
pub fn validate_certificate(bd: &BasicData, skeleton: &Skeleton, cert: &BreakingCycle) -> bool {
    let vs = &cert.vertices;
    let distinct: BTreeSet<VertexId> = vs.iter().copied().collect();
    if vs.len() < 2 || distinct.len() != vs.len() || vs.iter().any(|v| v.0 >= skeleton.vertex_count()) {
        return false;
    }
    let cands: BTreeSet<VertexId> = candidates(bd, skeleton, cert.colour, cert.symbol)
        .into_iter()
        .collect();
    if !distinct.is_subset(&cands) {
        return false;
    }
    let e = |v: VertexId, u: VertexId| skeleton.edge_count(cert.colour, v, u) == 1;
    match cert.kind {
        CycleKind::Loops => vs.iter().all(|&v| e(v, v)),
        CycleKind::Cycle => (0..vs.len()).all(|i| e(vs[i], vs[(i + 1) % vs.len()])),
    }
}

/// Existence of a breaking cycle for every colour and symbol, in that order.
pub fn breaking_cycle_table(bd: &BasicData, skeleton: &Skeleton) -> Vec<(Colour, Symbol, Option<BreakingCycle>)> {
    let mut out = Vec::new();
    for colour in Colour::ALL {
        for a in bd.alphabet().symbols() {
            out.push((colour, a, find_breaking_cycle(bd, skeleton, colour, a)));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    AperiodicCertified,
    PeriodicFlatTile,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperiodicityVerdict {
    pub status: VerdictStatus,
    pub certificate: Option<BreakingCycle>,
    pub note: String,
}

impl AperiodicityVerdict {
    pub fn is_certified(&self) -> bool {
        self.status == VerdictStatus::AperiodicCertified
    }
}

pub fn aperiodicity_verdict(bd: &BasicData, skeleton: &Skeleton) -> AperiodicityVerdict {
    if bd.tile().is_flat() {
        return AperiodicityVerdict {
            status: VerdictStatus::PeriodicFlatTile,
            certificate: None,
            note: "the tile lies on an axis, so each edge colour along it is a union of \
                   disjoint cycles; the 2-graph is periodic and its C*-algebra is not simple"
                .into(),
        };
    }
    for (_, _, cert) in breaking_cycle_table(bd, skeleton) {
        if let Some(cert) = cert {
            debug_assert!(validate_certificate(bd, skeleton, &cert));
            return AperiodicityVerdict {
                status: VerdictStatus::AperiodicCertified,
                certificate: Some(cert),
                note: "a breaking cycle exists, which forces aperiodicity".into(),
            };
        }
    }
    AperiodicityVerdict {
        status: VerdictStatus::Unknown,
        certificate: None,
        note: "no breaking cycle for any colour and symbol; a breaking cycle is sufficient \
               but not known to be necessary"
            .into(),
    }
}

/// The cycles of a colour whose edges form a permutation of the vertices,
/// each listed from its least vertex along the range-to-source direction.
/// `None` if some vertex has in- or out-degree other than one.
pub fn colour_cycles(skeleton: &Skeleton, colour: Colour) -> Option<Vec<Vec<VertexId>>> {
    let degree_one = skeleton.ids().all(|v| {
        skeleton.sources_into(colour, v).len() == 1 && skeleton.ranges_from(colour, v).len() == 1
    });
    if !degree_one {
        return None;
    }
    let mut seen = vec![false; skeleton.vertex_count()];
    let mut cycles = Vec::new();
    for start in skeleton.ids() {
        if seen[start.0] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut v = start;
        while !seen[v.0] {
            seen[v.0] = true;
            cycle.push(v);
            v = skeleton.sources_into(colour, v)[0];
        }
        cycles.push(cycle);
    }
    Some(cycles)
}

/// Searches `v Λ^D` for `λ` with `λ(m, m + D - m∨n) ≠ λ(n, n + D - m∨n)`.
/// `Ok(None)` means only that no witness exists at this bound.
pub fn periodicity_witness_search(
    bd: &BasicData,
    skeleton: &Skeleton,
    v: VertexId,
    m: Point,
    n: Point,
    bound: Point,
    limits: &Limits,
) -> Result<Option<Path>> {
    if m == n {
        return Err(Error::Precondition("the two offsets must differ".into()));
    }
    if m.meet(n) != Point::ZERO {
        return Err(Error::Precondition(format!("offsets {m} and {n} must have meet 0")));
    }
    let join = m.join(n);
    let Some(span) = bound.checked_sub(join) else {
        return Err(Error::Precondition(format!("bound {bound} is below {join}")));
    };
    let tile = bd.tile();
    for lambda in graph::enumerate_paths(bd, skeleton, v, bound, limits)? {
        let left = lambda.factorize(tile, m, m + span)?;
        let right = lambda.factorize(tile, n, n + span)?;
        if left != right {
            return Ok(Some(lambda));
        }
    }
    Ok(None)
}

pub fn default_witness_bound(m: Point, n: Point) -> Point {
    m.join(n) + Point::new(2, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectivityMode {
    /// Every ordered pair checked through paths of degree `k (1, 1)`.
    Exhaustive,
    /// Too many paths; reachability in the skeleton was checked instead.
    Reachability,
    /// A single vertex.
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub strongly_connected: bool,
    pub k: u32,
    pub mode: ConnectivityMode,
}

/// The least `k` with `(k - 1)(1, 1) ∈ T` and `k (1, 1) ∉ T`.
pub fn connectivity_degree(bd: &BasicData) -> u32 {
    let tile = bd.tile();
    let mut k = 1;
    while tile.contains(Point::new(k, k)) {
        k += 1;
    }
    k
}

pub fn strong_connectivity(bd: &BasicData, skeleton: &Skeleton, limits: &Limits) -> Connectivity {
    let k = connectivity_degree(bd);
    let n = skeleton.vertex_count();
    if n == 1 {
        return Connectivity {
            strongly_connected: true,
            k,
            mode: ConnectivityMode::Trivial,
        };
    }
    let degree = Point::new(k, k);
    let feasible = graph::path_count(bd, degree)
        .and_then(|c| c.checked_mul(n as u64))
        .is_some_and(|t| t <= limits.max_paths);
    if feasible {
        let all = skeleton.ids().all(|v| {
            let sources: BTreeSet<VertexId> = graph::enumerate_paths(bd, skeleton, v, degree, limits)
                .map(|ps| ps.iter().map(|p| p.source(bd)).collect())
                .unwrap_or_default();
            sources.len() == n
        });
        return Connectivity {
            strongly_connected: all,
            k,
            mode: ConnectivityMode::Exhaustive,
        };
    }
    let all = skeleton.ids().all(|v| reachable(skeleton, v) == n);
    Connectivity {
        strongly_connected: all,
        k,
        mode: ConnectivityMode::Reachability,
    }
}

fn reachable(skeleton: &Skeleton, start: VertexId) -> usize {
    let mut seen = vec![false; skeleton.vertex_count()];
    let mut queue = VecDeque::from([start]);
    seen[start.0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for colour in Colour::ALL {
            for &u in skeleton.sources_into(colour, v) {
                if !seen[u.0] {
                    seen[u.0] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
    }
    count
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub value: Option<bool>,
    pub reason: String,
}

impl Flag {
    fn new(value: Option<bool>, reason: &str) -> Flag {
        Flag {
            value,
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub unital: Flag,
    pub nuclear: Flag,
    pub simple: Flag,
    pub purely_infinite: Flag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub colour: Colour,
    pub symbol: String,
    pub kind: CycleKind,
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub verdict: VerdictStatus,
    pub certificate: Option<CertificateReport>,
    pub strongly_connected: bool,
    pub k: u32,
    pub connectivity_mode: ConnectivityMode,
    pub cofinal: bool,
    pub flags: Flags,
    pub notes: Vec<String>,
}

pub fn certificate_report(bd: &BasicData, skeleton: &Skeleton, cert: &BreakingCycle) -> CertificateReport {
    CertificateReport {
        colour: cert.colour,
        symbol: bd.alphabet().name(cert.symbol).to_string(),
        kind: cert.kind,
        vertices: cert
            .vertices
            .iter()
            .map(|&v| skeleton.vertex(v).label(bd.alphabet()))
            .collect(),
    }
}

pub fn simplicity_report(bd: &BasicData, skeleton: &Skeleton, limits: &Limits) -> SimplicityReport {
    let verdict = aperiodicity_verdict(bd, skeleton);
    let conn = strong_connectivity(bd, skeleton, limits);
    let unital = Flag::new(Some(true), "finitely many vertices: the sum of the vertex projections is a unit");
    let flags = match verdict.status {
        VerdictStatus::AperiodicCertified => Flags {
            unital,
            nuclear: Flag::new(Some(true), "row-finite 2-graph without sources; its C*-algebra is nuclear and in the bootstrap class"),
            simple: Flag::new(Some(true), "aperiodic by the breaking cycle and cofinal by strong connectivity"),
            purely_infinite: Flag::new(Some(true), "aperiodic and strongly connected with a cycle"),
        },
        VerdictStatus::PeriodicFlatTile => Flags {
            unital,
            nuclear: Flag::new(None, "not certified: no breaking cycle exists for a flat tile"),
            simple: Flag::new(Some(false), "the 2-graph is periodic"),
            purely_infinite: Flag::new(None, "not determined for periodic 2-graphs"),
        },
        VerdictStatus::Unknown => Flags {
            unital,
            nuclear: Flag::new(None, "not certified: no breaking cycle was found"),
            simple: Flag::new(None, "not determined: no breaking cycle was found"),
            purely_infinite: Flag::new(None, "not determined: no breaking cycle was found"),
        },
    };
    let mut notes = vec![verdict.note.clone()];
    if conn.mode == ConnectivityMode::Reachability {
        notes.push("path enumeration exceeded the cap; connectivity checked by skeleton reachability".into());
    }
    SimplicityReport {
        verdict: verdict.status,
        certificate: verdict
            .certificate
            .as_ref()
            .map(|c| certificate_report(bd, skeleton, c)),
        strongly_connected: conn.strongly_connected,
        k: conn.k,
        connectivity_mode: conn.mode,
        cofinal: conn.strongly_connected,
        flags,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basic_data::Pattern;
    use crate::corpus;

    fn vid(bd: &BasicData, pattern: &[u32], a: u32) -> VertexId {
        let p = Pattern(pattern.iter().map(|&s| Symbol(s)).collect());
        bd.make_vertex(&p, Symbol(a)).unwrap().id
    }

    fn exists(bd: &BasicData, colour: Colour, a: u32) -> bool {
        let sk = Skeleton::build(bd, &Limits::default()).unwrap();
        find_breaking_cycle(bd, &sk, colour, Symbol(a)).is_some()
    }

    #[test]
    fn ledrappier_blue_zero_uses_loops() {
        let bd = corpus::ledrappier();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let cert = find_breaking_cycle(&bd, &sk, Colour::Blue, Symbol(0)).unwrap();
        assert_eq!(cert.kind, CycleKind::Loops);
        assert_eq!(cert.vertices, vec![vid(&bd, &[0], 0), vid(&bd, &[1], 0)]);
        assert!(validate_certificate(&bd, &sk, &cert));
    }

    #[test]
    fn ledrappier_blue_one_is_a_two_cycle() {
        let bd = corpus::ledrappier();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let cert = find_breaking_cycle(&bd, &sk, Colour::Blue, Symbol(1)).unwrap();
        assert_eq!(cert.kind, CycleKind::Cycle);
        let set: BTreeSet<VertexId> = cert.vertices.iter().copied().collect();
        assert_eq!(set, BTreeSet::from([vid(&bd, &[0], 1), vid(&bd, &[1], 1)]));
    }

    #[test]
    fn square_red_one_has_none() {
        let bd = corpus::square();
        assert!(exists(&bd, Colour::Blue, 0));
        assert!(exists(&bd, Colour::Red, 0));
        assert!(!exists(&bd, Colour::Red, 1));
    }

    #[test]
    fn rem3_blue_one_three_cycle() {
        let bd = corpus::rem3();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let cert = find_breaking_cycle(&bd, &sk, Colour::Blue, Symbol(1)).unwrap();
        assert_eq!(cert.kind, CycleKind::Cycle);
        let set: BTreeSet<VertexId> = cert.vertices.iter().copied().collect();
        let want = BTreeSet::from([vid(&bd, &[0, 0], 1), vid(&bd, &[0, 1], 1), vid(&bd, &[1, 0], 1)]);
        assert_eq!(set, want);
        assert!(validate_certificate(&bd, &sk, &cert));
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let bd = corpus::ledrappier();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let mut cert = find_breaking_cycle(&bd, &sk, Colour::Blue, Symbol(0)).unwrap();
        cert.vertices.truncate(1);
        assert!(!validate_certificate(&bd, &sk, &cert));
        let mut cert = find_breaking_cycle(&bd, &sk, Colour::Blue, Symbol(0)).unwrap();
        cert.symbol = Symbol(1);
        assert!(!validate_certificate(&bd, &sk, &cert));
        let mut cert = find_breaking_cycle(&bd, &sk, Colour::Blue, Symbol(0)).unwrap();
        cert.kind = CycleKind::Cycle;
        cert.vertices.push(cert.vertices[0]);
        assert!(!validate_certificate(&bd, &sk, &cert));
    }

    #[test]
    fn flat_tiles_have_no_candidates_for_the_transverse_colour() {
        let bd = corpus::flat();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        for a in bd.alphabet().symbols() {
            assert!(candidates(&bd, &sk, Colour::Blue, a).is_empty());
            assert!(find_breaking_cycle(&bd, &sk, Colour::Blue, a).is_none());
        }
        let v = aperiodicity_verdict(&bd, &sk);
        assert_eq!(v.status, VerdictStatus::PeriodicFlatTile);
        assert!(colour_cycles(&sk, Colour::Blue).is_some());
    }

    #[test]
    fn connectivity_degrees() {
        assert_eq!(connectivity_degree(&corpus::ledrappier()), 1);
        assert_eq!(connectivity_degree(&corpus::square()), 2);
        for bd in corpus::all() {
            let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
            let c = strong_connectivity(&bd, &sk, &Limits::default());
            assert!(c.strongly_connected);
        }
    }

    #[test]
    fn reachability_fallback() {
        let bd = corpus::square();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let tight = Limits {
            max_paths: 10,
            ..Limits::default()
        };
        let c = strong_connectivity(&bd, &sk, &tight);
        assert_eq!(c.mode, ConnectivityMode::Reachability);
        assert!(c.strongly_connected);
    }

    #[test]
    fn witness_preconditions() {
        let bd = corpus::ledrappier();
        let sk = Skeleton::build(&bd, &Limits::default()).unwrap();
        let l = Limits::default();
        let v = VertexId(0);
        let e = |m, n, d| periodicity_witness_search(&bd, &sk, v, m, n, d, &l).unwrap_err().kind();
        assert_eq!(e(Point::E1, Point::E1, Point::new(2, 2)), "Precondition");
        assert_eq!(e(Point::new(1, 1), Point::E1, Point::new(2, 2)), "Precondition");
        assert_eq!(e(Point::new(2, 0), Point::E2, Point::new(1, 1)), "Precondition");
        let w = periodicity_witness_search(&bd, &sk, v, Point::E1, Point::ZERO, Point::new(2, 2), &l);
        assert!(w.unwrap().is_some());
    }

    #[test]
    fn reports() {
        let l = Limits::default();
        let bd = corpus::ledrappier();
        let sk = Skeleton::build(&bd, &l).unwrap();
        let r = simplicity_report(&bd, &sk, &l);
        assert_eq!(r.verdict, VerdictStatus::AperiodicCertified);
        assert_eq!(r.flags.simple.value, Some(true));
        assert_eq!(r.flags.purely_infinite.value, Some(true));
        assert!(r.cofinal);
        let bd = corpus::flat();
        let sk = Skeleton::build(&bd, &l).unwrap();
        let r = simplicity_report(&bd, &sk, &l);
        assert_eq!(r.flags.simple.value, Some(false));
        assert_eq!(r.flags.unital.value, Some(true));
        let bd = corpus::single_symbol();
        let sk = Skeleton::build(&bd, &l).unwrap();
        let r = simplicity_report(&bd, &sk, &l);
        assert_eq!(r.verdict, VerdictStatus::Unknown);
        assert_eq!(r.flags.simple.value, None);
    }
}
