//! The 2-graph: skeleton, paths, composition by corner filling, factorisation
//! and enumeration.
//!
//! A path of degree `n` is a labelling of `T(n)` whose every translate window
//! `T + m`, `0 <= m <= n`, is a vertex. Its range is the window at `0` and its
//! source the window at `n`, so `mu nu` is defined when the window of `mu` at
//! `d(mu)` equals the window of `nu` at `0`.

mod compose;
mod enumerate;
mod path;
mod skeleton;

pub use compose::{compose, fill_corner_br, fill_corner_ul, fill_order, FillOrder};
pub use enumerate::{all_paths, enumerate_paths, path_count};
pub use path::{Labelling, Path};
pub use skeleton::{edge_condition, Skeleton};

use serde::Serialize;

use crate::tile::Axis;

/// Blue edges have degree `e1`, red edges degree `e2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Colour {
    Blue,
    Red,
}

impl Colour {
    pub const ALL: [Colour; 2] = [Colour::Blue, Colour::Red];

    pub fn axis(self) -> Axis {
        match self {
            Colour::Blue => Axis::E1,
            Colour::Red => Axis::E2,
        }
    }

    pub fn other(self) -> Colour {
        match self {
            Colour::Blue => Colour::Red,
            Colour::Red => Colour::Blue,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Colour::Blue => "blue",
            Colour::Red => "red",
        }
    }
}
