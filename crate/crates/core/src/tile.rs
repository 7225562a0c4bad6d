//! Lattice geometry on the quadrant: points, tiles, translate unions and overlaps.
//!
//! Every collection of points is kept in lexicographic order (x major, y minor),
//! which is the order used for all enumerations in the crate.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};

/// Default cap on the number of cells in a tile.
pub const DEFAULT_MAX_TILE_CELLS: usize = 64;

/// A point of the quadrant. The derived `Ord` is the lexicographic order;
/// the lattice order is [`Point::leq`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Point {
    pub x: u32,
    pub y: u32,
}

impl Point {
    pub const ZERO: Point = Point { x: 0, y: 0 };
    pub const E1: Point = Point { x: 1, y: 0 };
    pub const E2: Point = Point { x: 0, y: 1 };

    pub const fn new(x: u32, y: u32) -> Self {
        Point { x, y }
    }

    /// Coordinatewise order.
    pub fn leq(self, other: Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn join(self, other: Point) -> Point {
        Point::new(self.x.max(other.x), self.y.max(other.y))
    }

    pub fn meet(self, other: Point) -> Point {
        Point::new(self.x.min(other.x), self.y.min(other.y))
    }

    pub fn checked_sub(self, other: Point) -> Option<Point> {
        Some(Point::new(
            self.x.checked_sub(other.x)?,
            self.y.checked_sub(other.y)?,
        ))
    }

    pub fn scale(self, k: u32) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    /// All points `m` with `0 <= m <= self`, lexicographically.
    pub fn box_below(self) -> impl Iterator<Item = Point> {
        (0..=self.x).flat_map(move |x| (0..=self.y).map(move |y| Point::new(x, y)))
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One of the two lattice directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    E1,
    E2,
}

impl Axis {
    pub fn unit(self) -> Point {
        match self {
            Axis::E1 => Point::E1,
            Axis::E2 => Point::E2,
        }
    }

    pub fn other(self) -> Axis {
        match self {
            Axis::E1 => Axis::E2,
            Axis::E2 => Axis::E1,
        }
    }
}

/// A finite set of quadrant points.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Region {
    points: BTreeSet<Point>,
}

impl Region {
    pub fn new() -> Self {
        Region::default()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.contains(&p)
    }

    pub fn insert(&mut self, p: Point) -> bool {
        self.points.insert(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.points.iter().copied()
    }

    pub fn is_subset(&self, other: &Region) -> bool {
        self.points.is_subset(&other.points)
    }

    pub fn translate(&self, by: Point) -> Region {
        self.iter().map(|p| p + by).collect()
    }

    /// Coordinatewise maximum of all points, `None` when empty.
    pub fn extent(&self) -> Option<Point> {
        self.iter().reduce(Point::join)
    }
}

impl FromIterator<Point> for Region {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        Region {
            points: iter.into_iter().collect(),
        }
    }
}

/// A finite hereditary subset of the quadrant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tile {
    points: Vec<Point>,
    c1: u32,
    c2: u32,
    reduced: Vec<Point>,
    corner1: usize,
    corner2: usize,
    reduced_idx: Vec<usize>,
}

impl Tile {
    /// Parses a tile with the default cell limit.
    pub fn new<I: IntoIterator<Item = Point>>(points: I) -> Result<Tile> {
        Tile::with_limit(points, DEFAULT_MAX_TILE_CELLS)
    }

    pub fn with_limit<I: IntoIterator<Item = Point>>(points: I, max_cells: usize) -> Result<Tile> {
        let set: BTreeSet<Point> = points.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyTile);
        }
        if set.len() > max_cells {
            return Err(Error::TileTooLarge {
                cells: set.len(),
                limit: max_cells,
            });
        }
        // Closure under the two unit predecessors implies closure under <=.
        for &p in &set {
            for unit in [Point::E1, Point::E2] {
                if let Some(q) = p.checked_sub(unit) {
                    if !set.contains(&q) {
                        return Err(Error::NotHereditary { point: p, missing: q });
                    }
                }
            }
        }
        let points: Vec<Point> = set.into_iter().collect();
        let extent = points.iter().copied().fold(Point::ZERO, Point::join);
        let (c1, c2) = (extent.x, extent.y);
        let corner_e1 = Point::new(c1, 0);
        let corner_e2 = Point::new(0, c2);
        let position = |q: Point| points.binary_search(&q).expect("corner of a hereditary tile");
        let corner1 = position(corner_e1);
        let corner2 = position(corner_e2);
        let (reduced, reduced_idx) = if points.len() >= 2 {
            points
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != corner_e1 && p != corner_e2)
                .map(|(i, &p)| (p, i))
                .unzip()
        } else {
            (Vec::new(), Vec::new())
        };
        Ok(Tile {
            points,
            c1,
            c2,
            reduced,
            corner1,
            corner2,
            reduced_idx,
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Position of `p` in [`Tile::points`].
    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    pub fn c1(&self) -> u32 {
        self.c1
    }

    pub fn c2(&self) -> u32 {
        self.c2
    }

    /// The corner extent `(c1, c2)`.
    pub fn extent(&self) -> Point {
        Point::new(self.c1, self.c2)
    }

    pub fn is_degenerate(&self) -> bool {
        self.points.len() == 1
    }

    /// A tile lying on one axis (`c1 = 0` or `c2 = 0`).
    pub fn is_flat(&self) -> bool {
        self.c1 == 0 || self.c2 == 0
    }

    /// `c1 e1`, the bottom-right corner.
    pub fn corner_e1(&self) -> Point {
        Point::new(self.c1, 0)
    }

    /// `c2 e2`, the top-left corner.
    pub fn corner_e2(&self) -> Point {
        Point::new(0, self.c2)
    }

    pub(crate) fn corner_e1_index(&self) -> usize {
        self.corner1
    }

    pub(crate) fn corner_e2_index(&self) -> usize {
        self.corner2
    }

    pub(crate) fn reduced_indices(&self) -> &[usize] {
        &self.reduced_idx
    }

    /// The reduced set `P`, the tile without its two extreme corners.
    pub fn reduced(&self) -> &[Point] {
        &self.reduced
    }

    pub fn reduced_set(&self) -> Result<Region> {
        if self.is_degenerate() {
            return Err(Error::DegenerateTile);
        }
        Ok(self.reduced.iter().copied().collect())
    }

    pub fn region(&self) -> Region {
        self.points.iter().copied().collect()
    }

    /// `T(n)`, the union of the translates `T + m` for `0 <= m <= n`.
    pub fn translate_union(&self, n: Point) -> Region {
        let mut out = Region::new();
        for m in n.box_below() {
            for &p in &self.points {
                out.insert(p + m);
            }
        }
        out
    }

    /// `T ∩ (T + e_i)`.
    pub fn overlap(&self, axis: Axis) -> Region {
        let unit = axis.unit();
        self.points
            .iter()
            .copied()
            .filter(|p| p.checked_sub(unit).is_some_and(|q| self.contains(q)))
            .collect()
    }

    /// Whether every point of `T + offset` satisfies `pred`.
    pub fn translate_within(&self, offset: Point, mut pred: impl FnMut(Point) -> bool) -> bool {
        self.points.iter().all(|&p| pred(p + offset))
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}
