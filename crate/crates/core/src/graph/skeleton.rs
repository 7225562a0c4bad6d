use std::collections::HashMap;

use crate::basic_data::{BasicData, Symbol, Vertex, VertexId};
use crate::error::Result;
use crate::graph::path::{Labelling, Path};
use crate::graph::Colour;
use crate::tile::{Point, Tile};
use crate::Limits;

/// Edge condition: `v Λ^{e_i} u` is nonempty iff `v(m) = u(m - e_i)` for
/// every `m ∈ T ∩ (T + e_i)`. Here `v` is the range and `u` the source.
pub fn edge_condition(tile: &Tile, colour: Colour, range: &Vertex, source: &Vertex) -> bool {
    let unit = colour.axis().unit();
    tile.overlap(colour.axis()).iter().all(|m| {
        let back = m.checked_sub(unit).expect("overlap point has a predecessor");
        range.value_at(tile, m) == source.value_at(tile, back)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Adjacency {
    n: usize,
    matrix: Vec<bool>,
    by_range: Vec<Vec<VertexId>>,
    by_source: Vec<Vec<VertexId>>,
}

impl Adjacency {
    fn has(&self, range: VertexId, source: VertexId) -> bool {
        self.matrix[range.0 * self.n + source.0]
    }
}

/// The bicoloured skeleton. There is at most one edge of each colour between
/// an ordered pair of vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    vertices: Vec<Vertex>,
    blue: Adjacency,
    red: Adjacency,
}

impl Skeleton {
    pub fn build(bd: &BasicData, limits: &Limits) -> Result<Skeleton> {
        let vertices = bd.enumerate_vertices(limits)?;
        let blue = adjacency(bd.tile(), &vertices, Colour::Blue);
        let red = adjacency(bd.tile(), &vertices, Colour::Red);
        Ok(Skeleton {
            vertices,
            blue,
            red,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexId) -> &Vertex {
        &self.vertices[id.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    fn adj(&self, colour: Colour) -> &Adjacency {
        match colour {
            Colour::Blue => &self.blue,
            Colour::Red => &self.red,
        }
    }

    /// `|v Λ^{e} u|` for range `v` and source `u`; always 0 or 1.
    pub fn edge_count(&self, colour: Colour, range: VertexId, source: VertexId) -> usize {
        usize::from(self.adj(colour).has(range, source))
    }

    /// Sources `u` of the edges with range `v` (the out-neighbours of `v` when
    /// edges are read from range to source).
    pub fn sources_into(&self, colour: Colour, range: VertexId) -> &[VertexId] {
        &self.adj(colour).by_range[range.0]
    }

    /// Ranges `v` of the edges with source `u`.
    pub fn ranges_from(&self, colour: Colour, source: VertexId) -> &[VertexId] {
        &self.adj(colour).by_source[source.0]
    }

    /// All edges of a colour as `(range, source)`, ordered by range then source.
    pub fn edges(&self, colour: Colour) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let adj = self.adj(colour);
        adj.by_range
            .iter()
            .enumerate()
            .flat_map(|(v, us)| us.iter().map(move |&u| (VertexId(v), u)))
    }

    pub fn edge_total(&self, colour: Colour) -> usize {
        self.adj(colour).by_range.iter().map(Vec::len).sum()
    }

    /// The unique edge from `source` to `range`, as a path of degree `e_i`.
    pub fn edge_path(
        &self,
        tile: &Tile,
        colour: Colour,
        range: VertexId,
        source: VertexId,
    ) -> Option<Path> {
        if !self.adj(colour).has(range, source) {
            return None;
        }
        let unit = colour.axis().unit();
        let v = self.vertex(range);
        let u = self.vertex(source);
        let size = tile.extent() + unit + Point::new(1, 1);
        let mut labels = Labelling::new(size.x, size.y);
        for (&p, &s) in tile.points().iter().zip(&u.labels) {
            labels.set(p + unit, s);
        }
        for (&p, &s) in tile.points().iter().zip(&v.labels) {
            labels.set(p, s);
        }
        Some(Path::from_parts(tile, unit, labels))
    }
}

fn adjacency(tile: &Tile, vertices: &[Vertex], colour: Colour) -> Adjacency {
    let n = vertices.len();
    let unit = colour.axis().unit();
    let overlap: Vec<Point> = tile.overlap(colour.axis()).iter().collect();
    let range_slots: Vec<usize> = overlap.iter().map(|&m| tile.index_of(m).unwrap()).collect();
    let source_slots: Vec<usize> = overlap
        .iter()
        .map(|&m| tile.index_of(m.checked_sub(unit).unwrap()).unwrap())
        .collect();
    let key = |v: &Vertex, slots: &[usize]| -> Vec<Symbol> { slots.iter().map(|&i| v.labels[i]).collect() };

    let mut by_key: HashMap<Vec<Symbol>, Vec<VertexId>> = HashMap::new();
    for v in vertices {
        by_key.entry(key(v, &source_slots)).or_default().push(v.id);
    }
    let mut matrix = vec![false; n * n];
    let mut by_range = vec![Vec::new(); n];
    let mut by_source = vec![Vec::new(); n];
    for v in vertices {
        if let Some(us) = by_key.get(&key(v, &range_slots)) {
            for &u in us {
                matrix[v.id.0 * n + u.0] = true;
                by_range[v.id.0].push(u);
                by_source[u.0].push(v.id);
            }
        }
    }
    Adjacency {
        n,
        matrix,
        by_range,
        by_source,
    }
}
