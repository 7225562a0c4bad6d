use std::fmt;

use crate::basic_data::{BasicData, Symbol, Vertex, VertexId};
use crate::error::{Error, Result};
use crate::tile::{Point, Region, Tile};

/// A partial labelling of a rectangular box `[0, width) x [0, height)`.
///
/// Cells are stored x-major so iteration follows the lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Labelling {
    width: u32,
    height: u32,
    cells: Vec<Option<Symbol>>,
}

impl Labelling {
    pub fn new(width: u32, height: u32) -> Labelling {
        Labelling {
            width,
            height,
            cells: vec![None; width as usize * height as usize],
        }
    }

    /// Smallest box holding every given point.
    pub fn from_pairs<I: IntoIterator<Item = (Point, Symbol)>>(pairs: I) -> Labelling {
        let pairs: Vec<(Point, Symbol)> = pairs.into_iter().collect();
        let extent = pairs.iter().fold(Point::ZERO, |acc, &(p, _)| acc.join(p));
        let mut out = Labelling::new(extent.x + 1, extent.y + 1);
        for (p, s) in pairs {
            out.set(p, s);
        }
        out
    }

    fn slot(&self, p: Point) -> Option<usize> {
        (p.x < self.width && p.y < self.height)
            .then(|| p.x as usize * self.height as usize + p.y as usize)
    }

    pub fn get(&self, p: Point) -> Option<Symbol> {
        self.slot(p).and_then(|i| self.cells[i])
    }

    pub fn is_labelled(&self, p: Point) -> bool {
        self.get(p).is_some()
    }

    /// Labels `p`, growing the box if needed.
    pub fn set(&mut self, p: Point, s: Symbol) {
        if self.slot(p).is_none() {
            self.grow(Point::new(p.x + 1, p.y + 1).join(Point::new(self.width, self.height)));
        }
        let i = self.slot(p).expect("grown to fit");
        self.cells[i] = Some(s);
    }

    pub fn clear(&mut self, p: Point) {
        if let Some(i) = self.slot(p) {
            self.cells[i] = None;
        }
    }

    fn grow(&mut self, size: Point) {
        let mut bigger = Labelling::new(size.x, size.y);
        for (p, s) in self.iter() {
            let i = bigger.slot(p).expect("inside the new box");
            bigger.cells[i] = Some(s);
        }
        *self = bigger;
    }

    /// Labelled cells in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Point, Symbol)> + '_ {
        let h = self.height as usize;
        self.cells.iter().enumerate().filter_map(move |(i, c)| {
            c.map(|s| (Point::new((i / h) as u32, (i % h) as u32), s))
        })
    }

    pub fn domain(&self) -> Region {
        self.iter().map(|(p, _)| p).collect()
    }

    pub fn len(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Whether every cell of `T + offset` is labelled.
    pub fn covers_translate(&self, tile: &Tile, offset: Point) -> bool {
        tile.translate_within(offset, |p| self.is_labelled(p))
    }

    /// The window `T + offset` read back onto `T`, if fully labelled.
    pub fn window(&self, tile: &Tile, offset: Point) -> Option<Vec<Symbol>> {
        tile.points().iter().map(|&p| self.get(p + offset)).collect()
    }

    /// Offsets `k` of windows `T + k` lying entirely inside the labelled set.
    pub fn contained_translates<'a>(&'a self, tile: &'a Tile) -> impl Iterator<Item = Point> + 'a {
        self.iter()
            .map(|(p, _)| p)
            .filter(move |&k| self.covers_translate(tile, k))
    }
}

impl fmt::Debug for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Rows top to bottom, '.' for unlabelled cells.
        writeln!(f, "Labelling {}x{}", self.width, self.height)?;
        for y in (0..self.height).rev() {
            for x in 0..self.width {
                match self.get(Point::new(x, y)) {
                    Some(s) => write!(f, "{:>3}", s.0)?,
                    None => write!(f, "  .")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A path of degree `n`: a labelling of exactly `T(n)` all of whose windows are vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Path {
    degree: Point,
    labels: Labelling,
}

impl Path {
    /// Validates `labels` as a path of degree `degree`.
    pub fn new(bd: &BasicData, degree: Point, labels: Labelling) -> Result<Path> {
        let tile = bd.tile();
        let region = tile.translate_union(degree);
        if labels.len() != region.len() || !region.iter().all(|p| labels.is_labelled(p)) {
            return Err(Error::RegionShapeMismatch);
        }
        for m in degree.box_below() {
            let window = labels.window(tile, m).expect("domain checked");
            if bd.classify_labels(&window).is_none() {
                return Err(Error::InconsistentInput(m));
            }
        }
        Ok(Path::from_parts(tile, degree, labels))
    }

    /// Rebuilds the labelling on the canonical box of `T(degree)`.
    pub(crate) fn from_parts(tile: &Tile, degree: Point, labels: Labelling) -> Path {
        let size = tile.extent() + degree + Point::new(1, 1);
        let labels = if labels.width == size.x && labels.height == size.y {
            labels
        } else {
            let mut boxed = Labelling::new(size.x, size.y);
            for (p, s) in labels.iter() {
                boxed.set(p, s);
            }
            boxed
        };
        Path { degree, labels }
    }

    pub fn from_vertex(tile: &Tile, v: &Vertex) -> Path {
        let labels = Labelling::from_pairs(tile.points().iter().copied().zip(v.labels.iter().copied()));
        Path::from_parts(tile, Point::ZERO, labels)
    }

    pub fn degree(&self) -> Point {
        self.degree
    }

    pub fn labels(&self) -> &Labelling {
        &self.labels
    }

    pub fn get(&self, p: Point) -> Option<Symbol> {
        self.labels.get(p)
    }

    /// Labels of the window `T + m` read back onto `T`.
    pub fn window(&self, tile: &Tile, m: Point) -> Option<Vec<Symbol>> {
        if !m.leq(self.degree) {
            return None;
        }
        self.labels.window(tile, m)
    }

    /// The vertex `λ(m, m)`.
    pub fn vertex_at(&self, bd: &BasicData, m: Point) -> Option<VertexId> {
        self.window(bd.tile(), m).and_then(|w| bd.classify_labels(&w))
    }

    pub fn range(&self, bd: &BasicData) -> VertexId {
        self.vertex_at(bd, Point::ZERO).expect("path window at 0 is a vertex")
    }

    pub fn source(&self, bd: &BasicData) -> VertexId {
        self.vertex_at(bd, self.degree).expect("path window at its degree is a vertex")
    }

    /// `λ(m, n)`, the path of degree `n - m` with `λ(m, n)(i) = λ(m + i)`.
    pub fn factorize(&self, tile: &Tile, m: Point, n: Point) -> Result<Path> {
        if !(m.leq(n) && n.leq(self.degree)) {
            return Err(Error::OutOfRange {
                m,
                n,
                degree: self.degree,
            });
        }
        let degree = n.checked_sub(m).expect("m <= n");
        let size = tile.extent() + degree + Point::new(1, 1);
        let mut labels = Labelling::new(size.x, size.y);
        for i in tile.translate_union(degree).iter() {
            let s = self.get(i + m).expect("factor lies inside the path");
            labels.set(i, s);
        }
        Ok(Path { degree, labels })
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path of degree {} ", self.degree)?;
        self.labels.fmt(f)
    }
}
