//! The two-dimensional shift of finite type on finite windows: admissibility,
//! the path/configuration correspondence, block counts and entropy.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::basic_data::{BasicData, Symbol};
use crate::error::{Error, Result};
use crate::graph::{Labelling, Path};
use crate::tile::Point;
use crate::verify::brute_force_paths;
use crate::Limits;

/// Exact counts are kept up to this many bits.
pub const MAX_EXACT_BITS: f64 = 512.0;

/// Default largest `d` for which block counts are cross-checked by brute force.
pub const DEFAULT_BRUTE_FORCE_MAX_D: u32 = 2;

pub type Cell = (i64, i64);

/// A labelling of a finite subset of the integer lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WindowConfig {
    cells: BTreeMap<Cell, Symbol>,
}

impl WindowConfig {
    pub fn new(cells: BTreeMap<Cell, Symbol>) -> WindowConfig {
        WindowConfig { cells }
    }

    pub fn cells(&self) -> &BTreeMap<Cell, Symbol> {
        &self.cells
    }

    pub fn get(&self, c: Cell) -> Option<Symbol> {
        self.cells.get(&c).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `σ_b`, with `σ_b(y)(i) = y(i + b)`.
    pub fn shift(&self, b: Cell) -> WindowConfig {
        WindowConfig {
            cells: self
                .cells
                .iter()
                .map(|(&(x, y), &s)| ((x - b.0, y - b.1), s))
                .collect(),
        }
    }

    pub fn restrict(&self, mut keep: impl FnMut(Cell) -> bool) -> WindowConfig {
        WindowConfig {
            cells: self
                .cells
                .iter()
                .filter(|(&c, _)| keep(c))
                .map(|(&c, &s)| (c, s))
                .collect(),
        }
    }

    /// Offsets `k` with `T + k` inside the region, in order.
    fn contained_translates<'a>(&'a self, bd: &'a BasicData) -> impl Iterator<Item = Cell> + 'a {
        let tile = bd.tile();
        self.cells.keys().copied().filter(move |&(kx, ky)| {
            tile.points()
                .iter()
                .all(|p| self.cells.contains_key(&(kx + i64::from(p.x), ky + i64::from(p.y))))
        })
    }

    fn window_at(&self, bd: &BasicData, k: Cell) -> Vec<Symbol> {
        bd.tile()
            .points()
            .iter()
            .map(|p| self.cells[&(k.0 + i64::from(p.x), k.1 + i64::from(p.y))])
            .collect()
    }

    /// First fully contained translate that is not a vertex.
    fn first_violation(&self, bd: &BasicData) -> Option<Cell> {
        self.contained_translates(bd)
            .find(|&k| bd.classify_labels(&self.window_at(bd, k)).is_none())
    }
}

/// Whether every tile translate inside the region restricts to a vertex.
pub fn window_admissible(bd: &BasicData, config: &WindowConfig) -> bool {
    config.first_violation(bd).is_none()
}

/// The label map of a path on `T(d(λ))`.
pub fn path_to_config(path: &Path) -> WindowConfig {
    WindowConfig {
        cells: path
            .labels()
            .iter()
            .map(|(p, s)| ((i64::from(p.x), i64::from(p.y)), s))
            .collect(),
    }
}

/// Translates the region to the quadrant and reads it back as a path; the
/// region must be a translate of some `T(n)`.
pub fn config_to_path(bd: &BasicData, config: &WindowConfig) -> Result<Path> {
    if let Some(k) = config.first_violation(bd) {
        return Err(Error::NotAdmissible(k.0, k.1));
    }
    let Some(min_x) = config.cells.keys().map(|c| c.0).min() else {
        return Err(Error::RegionShapeMismatch);
    };
    let min_y = config.cells.keys().map(|c| c.1).min().expect("nonempty");
    let max_x = config.cells.keys().map(|c| c.0).max().expect("nonempty");
    let max_y = config.cells.keys().map(|c| c.1).max().expect("nonempty");
    let extent = bd.tile().extent();
    let (w, h) = (max_x - min_x, max_y - min_y);
    if w < i64::from(extent.x) || h < i64::from(extent.y) {
        return Err(Error::RegionShapeMismatch);
    }
    let n = Point::new(
        u32::try_from(w).map_err(|_| Error::RegionShapeMismatch)? - extent.x,
        u32::try_from(h).map_err(|_| Error::RegionShapeMismatch)? - extent.y,
    );
    let mut labels = Labelling::new(extent.x + n.x + 1, extent.y + n.y + 1);
    for (&(x, y), &s) in &config.cells {
        labels.set(Point::new((x - min_x) as u32, (y - min_y) as u32), s);
    }
    Path::new(bd, n, labels)
}

/// Checks `σ_b ∘ h = h ∘ σ^b` on one path: restricting the configuration to
/// `T(n - b) + b` and shifting by `b` gives the factor `λ(b, n)`.
pub fn shift_equivariant(bd: &BasicData, path: &Path, b: Point) -> Result<bool> {
    let n = path.degree();
    let rest = n.checked_sub(b).ok_or(Error::OutOfRange {
        m: b,
        n,
        degree: n,
    })?;
    let window = bd.tile().translate_union(rest);
    let offset = (i64::from(b.x), i64::from(b.y));
    let y = path_to_config(path).restrict(|(x, yy)| {
        let (dx, dy) = (x - offset.0, yy - offset.1);
        dx >= 0 && dy >= 0 && window.contains(Point::new(dx as u32, dy as u32))
    });
    let shifted = config_to_path(bd, &y.shift(offset))?;
    Ok(shifted == path.factorize(bd.tile(), b, n)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockCensus {
    pub d: u32,
    /// Exact `|B_d|`, absent once it exceeds [`MAX_EXACT_BITS`].
    #[serde(serialize_with = "decimal")]
    pub count: Option<BigUint>,
    /// Natural logarithm of the count.
    pub log_count: f64,
    pub entropy_term: f64,
}

fn decimal<S: Serializer>(count: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match count {
        Some(c) => s.serialize_str(&c.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

/// Exponent `e` with `|Λ^{(d,d)}| = |A|^e`.
fn block_exponent(bd: &BasicData, d: u32) -> u64 {
    let tile = bd.tile();
    tile.reduced().len() as u64 + 1 + u64::from(d) * u64::from(tile.c1() + tile.c2())
}

/// `|B_d| = |Λ^{(d, d)}| = |A|^{|P| + 1 + d (c1 + c2)}`, or `1` for the tile `{0}`.
pub fn count_blocks(bd: &BasicData, d: u32) -> Result<BlockCensus> {
    if d == 0 {
        return Err(Error::Precondition("block side must be at least 1".into()));
    }
    let base = bd.alphabet().len() as u64;
    let (count, log_count) = if bd.is_degenerate() || base == 1 {
        (Some(BigUint::from(1u32)), 0.0)
    } else {
        let e = block_exponent(bd, d);
        let bits = e as f64 * (base as f64).log2();
        let count = (bits <= MAX_EXACT_BITS).then(|| BigUint::from(base).pow(e as u32));
        (count, e as f64 * (base as f64).ln())
    };
    let entropy_term = log_count / 2f64.powi(d as i32);
    Ok(BlockCensus {
        d,
        count,
        log_count,
        entropy_term,
    })
}

/// [`count_blocks`], cross-checked against brute-force enumeration of
/// `Λ^{(d, d)}` when `d <= brute_max_d`.
pub fn count_blocks_checked(
    bd: &BasicData,
    d: u32,
    brute_max_d: u32,
    limits: &Limits,
) -> Result<BlockCensus> {
    let census = count_blocks(bd, d)?;
    if d <= brute_max_d {
        let found = brute_force_paths(bd, Point::new(d, d), limits)?.len();
        if census.count != Some(BigUint::from(found)) {
            return Err(Error::Internal(format!(
                "closed form gives {:?} blocks at d = {d} but enumeration finds {found}",
                census.count
            )));
        }
    }
    Ok(census)
}

pub fn entropy_sequence(bd: &BasicData, dmax: u32) -> Result<Vec<BlockCensus>> {
    if dmax == 0 {
        return Err(Error::Precondition("d_max must be at least 1".into()));
    }
    (1..=dmax).map(|d| count_blocks(bd, d)).collect()
}
