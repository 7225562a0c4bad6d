use crate::basic_data::{BasicData, VertexId};
use crate::error::{Error, Result};
use crate::graph::compose::compose;
use crate::graph::path::Path;
use crate::graph::{Colour, Skeleton};
use crate::tile::Point;
use crate::Limits;

/// `|v Λ^n|`, the same for every vertex: `|A|^{n1 c2 + n2 c1}`, or 1 for the
/// degenerate tile. `None` on overflow.
pub fn path_count(bd: &BasicData, n: Point) -> Option<u64> {
    if bd.is_degenerate() {
        return Some(1);
    }
    let tile = bd.tile();
    let exp = u64::from(n.x)
        .checked_mul(u64::from(tile.c2()))?
        .checked_add(u64::from(n.y).checked_mul(u64::from(tile.c1()))?)?;
    (bd.alphabet().len() as u64).checked_pow(u32::try_from(exp).ok()?)
}

fn guard(bd: &BasicData, n: Point, multiplier: u64, limits: &Limits) -> Result<()> {
    let count = path_count(bd, n).and_then(|c| c.checked_mul(multiplier));
    match count {
        Some(c) if c <= limits.max_paths => Ok(()),
        _ => Err(Error::SizeLimit {
            what: "path count",
            value: count.map_or_else(|| "overflow".to_string(), |c| c.to_string()),
            cap: limits.max_paths,
        }),
    }
}

/// All paths of degree `n` with range `v`, grown one edge at a time: blue
/// edges first, then red.
pub fn enumerate_paths(
    bd: &BasicData,
    skeleton: &Skeleton,
    v: VertexId,
    n: Point,
    limits: &Limits,
) -> Result<Vec<Path>> {
    guard(bd, n, 1, limits)?;
    grow(bd, skeleton, Path::from_vertex(bd.tile(), skeleton.vertex(v)), n)
}

/// Every path of degree `n`, grouped by range in canonical vertex order.
pub fn all_paths(bd: &BasicData, skeleton: &Skeleton, n: Point, limits: &Limits) -> Result<Vec<Path>> {
    guard(bd, n, skeleton.vertex_count() as u64, limits)?;
    let mut out = Vec::new();
    for v in skeleton.ids() {
        out.extend(grow(bd, skeleton, Path::from_vertex(bd.tile(), skeleton.vertex(v)), n)?);
    }
    Ok(out)
}

fn grow(bd: &BasicData, skeleton: &Skeleton, start: Path, n: Point) -> Result<Vec<Path>> {
    let tile = bd.tile();
    let steps = std::iter::repeat_n(Colour::Blue, n.x as usize)
        .chain(std::iter::repeat_n(Colour::Red, n.y as usize));
    let mut current = vec![start];
    for colour in steps {
        let mut next = Vec::with_capacity(current.len());
        for path in &current {
            let end = path.source(bd);
            for &u in skeleton.sources_into(colour, end) {
                let edge = skeleton
                    .edge_path(tile, colour, end, u)
                    .expect("listed edge exists");
                next.push(compose(bd, path, &edge)?);
            }
        }
        current = next;
    }
    Ok(current)
}
