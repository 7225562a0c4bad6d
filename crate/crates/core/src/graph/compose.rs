use crate::basic_data::{BasicData, Rule, Symbol};
use crate::error::{Error, Result};
use crate::graph::path::{Labelling, Path};
use crate::tile::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Corner {
    /// `c1 e1`, computed forwards through `f_p`.
    BottomRight,
    /// `c2 e2`, computed backwards through `f_p^{-1}`.
    TopLeft,
}

/// Value forced at one corner of `T + k`, given every other cell of `T + k`.
fn corner_value(
    bd: &BasicData,
    get: impl Fn(Point) -> Option<Symbol>,
    k: Point,
    corner: Corner,
) -> Result<Symbol> {
    let tile = bd.tile();
    let maps = match bd.rule() {
        Rule::Bijections(maps) => maps,
        Rule::Distinguished(_) => return Err(Error::DegenerateTile),
    };
    let missing = || Error::Internal(format!("translate at {k} is not labelled off its corner"));
    let base = bd.alphabet().len();
    let mut pidx = 0;
    for &p in tile.reduced() {
        pidx = pidx * base + get(p + k).ok_or_else(missing)?.index();
    }
    let map = &maps[pidx];
    match corner {
        Corner::BottomRight => {
            let top = get(k + tile.corner_e2()).ok_or_else(missing)?;
            Ok(map.apply(top))
        }
        Corner::TopLeft => {
            let image = get(k + tile.corner_e1()).ok_or_else(missing)?;
            map.invert(image).ok_or(Error::InconsistentInput(k))
        }
    }
}

/// Every translate contained in the labelled set must be a vertex.
fn check_consistent(bd: &BasicData, labels: &Labelling) -> Result<()> {
    for k in labels.contained_translates(bd.tile()) {
        let window = labels.window(bd.tile(), k).expect("contained translate");
        if bd.classify_labels(&window).is_none() {
            return Err(Error::InconsistentInput(k));
        }
    }
    Ok(())
}

fn check_support(bd: &BasicData, labels: &Labelling, n: Point) -> Result<()> {
    if bd.is_degenerate() {
        return Err(Error::DegenerateTile);
    }
    let below = n.checked_sub(Point::E2).ok_or_else(|| {
        Error::Precondition(format!("corner filling at {n} needs n2 >= 1"))
    })?;
    let tile = bd.tile();
    for offset in [n + Point::E1, below] {
        if !labels.covers_translate(tile, offset) {
            return Err(Error::Precondition(format!(
                "labelled set does not contain the translate at {offset}"
            )));
        }
    }
    check_consistent(bd, labels)
}

/// Forces the label at `n + (c1 + 1) e1 - e2`, the bottom-right corner of the
/// translate at `n + e1 - e2`, from a consistent labelling containing
/// `T + n + e1` and `T + n - e2`. Returns the cell and its label; a cell that
/// is already labelled is returned unchanged.
pub fn fill_corner_br(bd: &BasicData, labels: &Labelling, n: Point) -> Result<(Point, Symbol)> {
    check_support(bd, labels, n)?;
    let k = (n + Point::E1).checked_sub(Point::E2).expect("n2 >= 1");
    let cell = k + bd.tile().corner_e1();
    if let Some(s) = labels.get(cell) {
        return Ok((cell, s));
    }
    let s = corner_value(bd, |p| labels.get(p), k, Corner::BottomRight)?;
    Ok((cell, s))
}

/// Forces the label at `n + c2 e2`, the top-left corner of `T + n`, under the
/// same hypotheses as [`fill_corner_br`].
pub fn fill_corner_ul(bd: &BasicData, labels: &Labelling, n: Point) -> Result<(Point, Symbol)> {
    check_support(bd, labels, n)?;
    let cell = n + bd.tile().corner_e2();
    if let Some(s) = labels.get(cell) {
        return Ok((cell, s));
    }
    let s = corner_value(bd, |p| labels.get(p), n, Corner::TopLeft)?;
    Ok((cell, s))
}

/// Cells that composition fills, in the order it fills them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FillOrder {
    pub bottom_right: Vec<Point>,
    pub top_left: Vec<Point>,
}

/// With `mu` placed at `0` and `nu` at `d(mu)`, the region `T(d(mu) + d(nu))`
/// is missing a bottom-right and a top-left staircase. Each column of the
/// first is filled downwards and each row of the second leftwards.
pub fn fill_order(bd: &BasicData, dmu: Point, dnu: Point) -> FillOrder {
    let (c1, c2) = (bd.tile().c1(), bd.tile().c2());
    let mut order = FillOrder::default();
    for x in (c1 + dmu.x + 1)..=(c1 + dmu.x + dnu.x) {
        for y in (0..dmu.y).rev() {
            order.bottom_right.push(Point::new(x, y));
        }
    }
    for y in (c2 + dmu.y + 1)..=(c2 + dmu.y + dnu.y) {
        for x in (0..dmu.x).rev() {
            order.top_left.push(Point::new(x, y));
        }
    }
    order
}

/// The unique path `λ` of degree `d(mu) + d(nu)` with `λ(0, d(mu)) = mu` and
/// `λ(d(mu), d(mu) + d(nu)) = nu`.
pub fn compose(bd: &BasicData, mu: &Path, nu: &Path) -> Result<Path> {
    let tile = bd.tile();
    let (dmu, dnu) = (mu.degree(), nu.degree());
    if mu.window(tile, dmu) != nu.window(tile, Point::ZERO) {
        return Err(Error::SourceRangeMismatch);
    }
    let degree = dmu + dnu;
    let size = tile.extent() + degree + Point::new(1, 1);
    let mut labels = Labelling::new(size.x, size.y);
    for (p, s) in mu.labels().iter() {
        labels.set(p, s);
    }
    for (p, s) in nu.labels().iter() {
        labels.set(p + dmu, s);
    }
    if let Rule::Distinguished(d) = bd.rule() {
        for p in degree.box_below() {
            labels.set(p, *d);
        }
    } else {
        let order = fill_order(bd, dmu, dnu);
        for &cell in &order.bottom_right {
            let k = cell.checked_sub(tile.corner_e1()).expect("cell right of the corner");
            let s = corner_value(bd, |p| labels.get(p), k, Corner::BottomRight)?;
            labels.set(cell, s);
        }
        for &cell in &order.top_left {
            let k = cell.checked_sub(tile.corner_e2()).expect("cell above the corner");
            let s = corner_value(bd, |p| labels.get(p), k, Corner::TopLeft)?;
            labels.set(cell, s);
        }
    }
    match Path::new(bd, degree, labels) {
        Ok(path) => Ok(path),
        Err(Error::InconsistentInput(m)) if !bd.is_bijective() => Err(Error::InconsistentInput(m)),
        Err(e) => Err(Error::Internal(format!("composition produced an invalid path: {e}"))),
    }
}
