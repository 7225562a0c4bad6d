//! Rank-2 graphs generated from a tile, an alphabet and a family of bijections.
//!
//! The crate builds the vertex set and skeleton of the 2-graph, composes and
//! factorises paths by corner filling, checks the category axioms by brute
//! force, searches for breaking-cycle certificates of aperiodicity and counts
//! the blocks of the associated two-dimensional shift of finite type.
//!
//! ```
//! use tilegraph::{corpus, dynamics, graph::Skeleton, Limits};
//!
//! let bd = corpus::ledrappier();
//! let skeleton = Skeleton::build(&bd, &Limits::default()).unwrap();
//! assert_eq!(skeleton.vertex_count(), 4);
//! let verdict = dynamics::aperiodicity_verdict(&bd, &skeleton);
//! assert!(verdict.is_certified());
//! ```

pub mod basic_data;
pub mod corpus;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod io;
pub mod prw;
pub mod shift;
pub mod tile;
pub mod verify;

pub use basic_data::{validate_basic_data, Alphabet, BasicData, Pattern, Symbol, Vertex, VertexId};
pub use error::{Error, Result};
pub use graph::{Colour, Path, Skeleton};
pub use tile::{Axis, Point, Region, Tile};

/// Size caps that keep exhaustive computations desk-sized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_tile_cells: usize,
    pub max_vertices: u64,
    /// Cap on the number of paths (or labellings) any single enumeration may produce.
    pub max_paths: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_tile_cells: tile::DEFAULT_MAX_TILE_CELLS,
            max_vertices: 1 << 16,
            max_paths: 1 << 20,
        }
    }
}
