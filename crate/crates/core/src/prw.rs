//! Linear "trace" parameters `(T, q, t, w)` and their translation into basic data.
//!
//! A vertex for these parameters is any `v : T -> Z/qZ` with
//! `sum_i w(i) v(i) = t (mod q)`. Solving for the value at `c1 e1` gives the
//! bijection for each pattern.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::basic_data::{Alphabet, BasicData, Symbol};
use crate::error::{Error, Result};
use crate::tile::{Point, Tile};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrwParams {
    tile: Tile,
    q: u64,
    t: u64,
    /// Weights in [`Tile::points`] order, reduced mod `q`.
    w: Vec<u64>,
}

/// Inverse of `a` modulo `q`, when `gcd(a, q) = 1`.
pub fn mod_inverse(a: u64, q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let (a, q) = ((a % q) as i128, q as i128);
    let eg = a.extended_gcd(&q);
    (eg.gcd == 1).then(|| eg.x.rem_euclid(q) as u64)
}

impl PrwParams {
    pub fn new(tile: Tile, q: u64, t: u64, weights: &BTreeMap<Point, u64>) -> Result<PrwParams> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("modulus must be at least 2, got {q}")));
        }
        if q > u32::MAX as u64 {
            return Err(Error::InvalidParams(format!("modulus {q} is too large")));
        }
        if let Some(p) = weights.keys().find(|p| !tile.contains(**p)) {
            return Err(Error::InvalidParams(format!("weight given for {p}, outside the tile")));
        }
        let w = tile
            .points()
            .iter()
            .map(|p| {
                weights
                    .get(p)
                    .map(|&x| x % q)
                    .ok_or_else(|| Error::InvalidParams(format!("no weight for {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let params = PrwParams {
            tile,
            q,
            t: t % q,
            w,
        };
        for corner in [params.tile.corner_e1(), params.tile.corner_e2()] {
            let weight = params.weight(corner);
            if mod_inverse(weight, q).is_none() {
                return Err(Error::NotInvertible {
                    point: corner,
                    weight,
                    modulus: q,
                });
            }
        }
        Ok(params)
    }

    pub fn tile(&self) -> &Tile {
        &self.tile
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn trace(&self) -> u64 {
        self.t
    }

    pub fn weight(&self, p: Point) -> u64 {
        self.tile.index_of(p).map_or(0, |i| self.w[i])
    }

    /// `sum_i w(i) v(i) mod q` for values in tile-point order.
    pub fn weighted_sum(&self, values: &[u64]) -> u64 {
        self.w
            .iter()
            .zip(values)
            .fold(0u64, |acc, (&w, &v)| (acc + w * (v % self.q)) % self.q)
    }

    /// Every `v : T -> Z/qZ` meeting the trace condition, by exhaustive filtering.
    pub fn brute_force_vertices(&self, limits: &Limits) -> Result<Vec<Vec<u64>>> {
        let cells = self.tile.len() as u32;
        let total = self.q.checked_pow(cells).filter(|&n| n <= limits.max_paths);
        let total = total.ok_or_else(|| Error::SizeLimit {
            what: "labellings of the tile",
            value: format!("{}^{}", self.q, cells),
            cap: limits.max_paths,
        })?;
        let mut out = Vec::new();
        let mut values = vec![0u64; cells as usize];
        for mut code in 0..total {
            for slot in values.iter_mut().rev() {
                *slot = code % self.q;
                code /= self.q;
            }
            if self.weighted_sum(&values) == self.t {
                out.push(values.clone());
            }
        }
        Ok(out)
    }
}

/// Basic data generating the same 2-graph as the parameters.
pub fn import_prw(params: &PrwParams) -> Result<BasicData> {
    let q = params.q;
    let alphabet = Alphabet::residues(q as u32)?;
    let tile = params.tile.clone();
    if tile.is_degenerate() {
        let inv = mod_inverse(params.weight(Point::ZERO), q).expect("checked on construction");
        let symbol = (params.t * inv) % q;
        return BasicData::degenerate(tile, alphabet, Symbol(symbol as u32));
    }
    let inv_corner = mod_inverse(params.weight(tile.corner_e1()), q).expect("checked on construction");
    let w_top = params.weight(tile.corner_e2());
    let reduced_weights: Vec<u64> = tile.reduced().iter().map(|&p| params.weight(p)).collect();
    BasicData::from_fn(tile, alphabet, |pattern, a| {
        let pattern_sum = reduced_weights
            .iter()
            .zip(&pattern.0)
            .fold(0u64, |acc, (&w, s)| (acc + w * s.0 as u64) % q);
        let rhs = (params.t + 2 * q - pattern_sum - (w_top * a.0 as u64) % q) % q;
        Symbol(((rhs * inv_corner) % q) as u32)
    })
}

/// Whether the corner-weight condition guaranteeing a breaking cycle holds:
/// `c1, c2 >= 1` and `w(0)` invertible mod `q`.
pub fn prw_aperiodicity_check(params: &PrwParams) -> bool {
    let tile = params.tile();
    tile.c1() >= 1 && tile.c2() >= 1 && mod_inverse(params.weight(Point::ZERO), params.q).is_some()
}

/// The on-disk parameter schema; weights are keyed `"x,y"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPrwParams {
    pub tile: Vec<[u32; 2]>,
    pub q: u64,
    pub t: u64,
    pub w: BTreeMap<String, u64>,
}

impl RawPrwParams {
    pub fn resolve(&self, limits: &Limits) -> Result<PrwParams> {
        let tile = Tile::with_limit(
            self.tile.iter().map(|&[x, y]| Point::new(x, y)),
            limits.max_tile_cells,
        )?;
        let mut weights = BTreeMap::new();
        for (key, &value) in &self.w {
            let point = parse_point_key(key)?;
            if weights.insert(point, value).is_some() {
                return Err(Error::InvalidParams(format!("weight for {point} given twice")));
            }
        }
        PrwParams::new(tile, self.q, self.t, &weights)
    }
}

fn parse_point_key(key: &str) -> Result<Point> {
    let bad = || Error::Parse(format!("weight key {key:?} is not of the form \"x,y\""));
    let (x, y) = key.split_once(',').ok_or_else(bad)?;
    let x = x.trim().parse().map_err(|_| bad())?;
    let y = y.trim().parse().map_err(|_| bad())?;
    Ok(Point::new(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn weights(entries: &[((u32, u32), u64)]) -> BTreeMap<Point, u64> {
        entries.iter().map(|&((x, y), w)| (Point::new(x, y), w)).collect()
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(1, 2), Some(1));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(0, 5), None);
        for q in 2..30u64 {
            for a in 0..q {
                if let Some(inv) = mod_inverse(a, q) {
                    assert_eq!(a * inv % q, 1);
                } else {
                    assert_ne!(a.gcd(&q), 1);
                }
            }
        }
    }

    #[test]
    fn ledrappier_import() {
        let params = corpus::prw_ledrappier();
        let bd = import_prw(&params).unwrap();
        // f_p(a) = -p - a = p + a (mod 2).
        assert_eq!(bd, corpus::ledrappier_with_alphabet(bd.alphabet().clone()));
    }

    #[test]
    fn gap_case_import() {
        let params = corpus::prw_rem3();
        let bd = import_prw(&params).unwrap();
        // Hand evaluation: f_{p[a,b]}(x) = -(0*a + 1*b) - x = x + b (mod 2).
        for idx in 0..4 {
            let p = bd.pattern_from_index(idx);
            for x in 0..2u32 {
                let expected = (x + p.0[1].0) % 2;
                assert_eq!(bd.map(idx).unwrap().apply(Symbol(x)).0, expected);
            }
        }
        assert!(!prw_aperiodicity_check(&params));
    }

    #[test]
    fn zero_divisor_corner() {
        let tile = corpus::ledrappier().tile().clone();
        let err = PrwParams::new(tile, 4, 0, &weights(&[((0, 0), 1), ((1, 0), 2), ((0, 1), 1)]))
            .unwrap_err();
        assert_eq!(
            err,
            Error::NotInvertible {
                point: Point::new(1, 0),
                weight: 2,
                modulus: 4
            }
        );
    }

    #[test]
    fn trace_identity_and_brute_force() {
        let tile = Tile::new([Point::ZERO, Point::E1, Point::new(2, 0), Point::E2, Point::new(1, 1)]).unwrap();
        let params = PrwParams::new(
            tile,
            5,
            3,
            &weights(&[((0, 0), 2), ((1, 0), 4), ((2, 0), 3), ((0, 1), 1), ((1, 1), 0)]),
        )
        .unwrap();
        let bd = import_prw(&params).unwrap();
        let mut from_data: Vec<Vec<u64>> = bd
            .enumerate_vertices(&Limits::default())
            .unwrap()
            .iter()
            .map(|v| v.labels.iter().map(|s| s.0 as u64).collect())
            .collect();
        for v in &from_data {
            assert_eq!(params.weighted_sum(v), 3);
        }
        let mut brute = params.brute_force_vertices(&Limits::default()).unwrap();
        from_data.sort();
        brute.sort();
        assert_eq!(from_data, brute);
    }

    #[test]
    fn degenerate_import() {
        let tile = Tile::new([Point::ZERO]).unwrap();
        let params = PrwParams::new(tile, 7, 3, &weights(&[((0, 0), 2)])).unwrap();
        let bd = import_prw(&params).unwrap();
        // 3 * 2^{-1} = 3 * 4 = 12 = 5 (mod 7).
        assert_eq!(bd.vertex(crate::VertexId(0)).labels, vec![Symbol(5)]);
    }

    #[test]
    fn raw_schema() {
        let raw: RawPrwParams = serde_json::from_str(
            r#"{"tile":[[0,0],[1,0],[0,1]],"q":2,"t":0,"w":{"0,0":1,"1,0":1,"0,1":1}}"#,
        )
        .unwrap();
        assert_eq!(raw.resolve(&Limits::default()).unwrap(), corpus::prw_ledrappier());
        let raw: RawPrwParams =
            serde_json::from_str(r#"{"tile":[[0,0],[1,0],[0,1]],"q":2,"t":0,"w":{"0,0":1,"1,0":1}}"#)
                .unwrap();
        assert!(matches!(raw.resolve(&Limits::default()), Err(Error::InvalidParams(_))));
    }
}
