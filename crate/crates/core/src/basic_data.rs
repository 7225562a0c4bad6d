//! Basic data: a tile, an alphabet and one bijection of the alphabet per
//! pattern on the reduced set. The vertices of the 2-graph are the labellings
//! `F_{p,a}` of the tile built from a pattern `p` and a top symbol `a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tile::{Point, Tile};
use crate::Limits;

/// Index of a symbol in its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Symbol(pub u32);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Position of a vertex in the canonical (pattern, then top symbol) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(symbols: I) -> Result<Alphabet> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(',') || s.contains('|') {
                return Err(Error::InvalidSymbol(s.clone()));
            }
            if index.insert(s.clone(), Symbol(i as u32)).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// `{"0", "1", ..., "q-1"}`.
    pub fn residues(q: u32) -> Result<Alphabet> {
        Alphabet::new((0..q).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s.index()]
    }

    pub fn lookup(&self, name: &str) -> Result<Symbol> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> {
        (0..self.symbols.len() as u32).map(Symbol)
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }
}

/// Values on the reduced set `P`, in lexicographic point order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pattern(pub Vec<Symbol>);

impl Pattern {
    /// The canonical key: symbol names joined by `,`; empty when `P` is empty.
    pub fn key(&self, alphabet: &Alphabet) -> String {
        self.0
            .iter()
            .map(|&s| alphabet.name(s))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(key: &str, alphabet: &Alphabet, arity: usize) -> Result<Pattern> {
        if arity == 0 {
            return if key.is_empty() {
                Ok(Pattern::default())
            } else {
                Err(Error::UnexpectedPattern { key: key.to_string() })
            };
        }
        let parts: Vec<&str> = key.split(',').collect();
        if parts.len() != arity {
            return Err(Error::UnexpectedPattern { key: key.to_string() });
        }
        parts
            .into_iter()
            .map(|s| alphabet.lookup(s.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Pattern)
    }
}

/// A self-map of the alphabet stored as a table on symbol indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMap {
    images: Vec<Symbol>,
    preimages: Vec<Option<Symbol>>,
    bijective: bool,
}

impl SymbolMap {
    pub fn new(images: Vec<Symbol>) -> SymbolMap {
        let n = images.len();
        let mut preimages = vec![None; n];
        let mut hits = vec![0usize; n];
        for (i, &b) in images.iter().enumerate() {
            if b.index() < n {
                hits[b.index()] += 1;
                preimages[b.index()] = Some(Symbol(i as u32));
            }
        }
        let bijective = images.iter().all(|b| b.index() < n) && hits.iter().all(|&h| h == 1);
        for (slot, &h) in preimages.iter_mut().zip(&hits) {
            if h != 1 {
                *slot = None;
            }
        }
        SymbolMap {
            images,
            preimages,
            bijective,
        }
    }

    pub fn identity(n: usize) -> SymbolMap {
        SymbolMap::new((0..n as u32).map(Symbol).collect())
    }

    pub fn apply(&self, a: Symbol) -> Symbol {
        self.images[a.index()]
    }

    /// The unique preimage of `b`, if there is exactly one.
    pub fn invert(&self, b: Symbol) -> Option<Symbol> {
        self.preimages.get(b.index()).copied().flatten()
    }

    pub fn is_bijective(&self) -> bool {
        self.bijective
    }

    pub fn images(&self) -> &[Symbol] {
        &self.images
    }

    /// A pair of inputs sharing an image, when the map is not injective.
    fn collision(&self) -> Option<(Symbol, Symbol, Symbol)> {
        let mut seen: HashMap<Symbol, Symbol> = HashMap::new();
        for (i, &b) in self.images.iter().enumerate() {
            if let Some(&first) = seen.get(&b) {
                return Some((first, Symbol(i as u32), b));
            }
            seen.insert(b, Symbol(i as u32));
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// One map per pattern, indexed by pattern index.
    Bijections(Vec<SymbolMap>),
    /// The degenerate tile `{0}` fixes a single symbol.
    Distinguished(Symbol),
}

/// A vertex `F_{p,a}` of the 2-graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: VertexId,
    pub pattern: Pattern,
    /// Value at `c2 e2`.
    pub top: Symbol,
    /// Value at `c1 e1`.
    pub corner: Symbol,
    /// Values on the tile, in [`Tile::points`] order.
    pub labels: Vec<Symbol>,
}

impl Vertex {
    /// Display label: pattern key, `|`, top symbol.
    pub fn label(&self, alphabet: &Alphabet) -> String {
        format!("{}|{}", self.pattern.key(alphabet), alphabet.name(self.top))
    }

    pub fn value_at(&self, tile: &Tile, p: Point) -> Option<Symbol> {
        tile.index_of(p).map(|i| self.labels[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicData {
    tile: Tile,
    alphabet: Alphabet,
    rule: Rule,
}

fn checked_power(base: usize, exp: usize) -> Option<u64> {
    (base as u64).checked_pow(u32::try_from(exp).ok()?)
}

impl BasicData {
    /// Validated basic data; every map must be a bijection.
    pub fn new(tile: Tile, alphabet: Alphabet, maps: Vec<SymbolMap>) -> Result<BasicData> {
        let bd = BasicData::with_maps(tile, alphabet, maps)?;
        if let Rule::Bijections(maps) = &bd.rule {
            for (idx, map) in maps.iter().enumerate() {
                if let Some((first, second, image)) = map.collision() {
                    let key = bd.pattern_from_index(idx).key(&bd.alphabet);
                    return Err(Error::NotBijective {
                        key,
                        first: bd.alphabet.name(first).to_string(),
                        second: bd.alphabet.name(second).to_string(),
                        image: bd.alphabet.name(image).to_string(),
                    });
                }
            }
        }
        Ok(bd)
    }

    /// Like [`BasicData::new`] but accepts maps that are not bijective.
    /// Such data does not generate a 2-graph; it exists so the axiom checker
    /// can be run against broken input.
    pub fn with_maps(tile: Tile, alphabet: Alphabet, maps: Vec<SymbolMap>) -> Result<BasicData> {
        if tile.is_degenerate() {
            return Err(Error::MissingDistinguishedSymbol);
        }
        let expected = checked_power(alphabet.len(), tile.reduced().len())
            .ok_or_else(|| Error::SizeLimit {
                what: "pattern count",
                value: format!("{}^{}", alphabet.len(), tile.reduced().len()),
                cap: u64::MAX,
            })?;
        if maps.len() as u64 != expected {
            return Err(Error::Precondition(format!(
                "expected {expected} maps, got {}",
                maps.len()
            )));
        }
        for map in &maps {
            if map.images.len() != alphabet.len()
                || map.images.iter().any(|s| s.index() >= alphabet.len())
            {
                return Err(Error::Precondition("map does not act on the alphabet".into()));
            }
        }
        Ok(BasicData {
            tile,
            alphabet,
            rule: Rule::Bijections(maps),
        })
    }

    pub fn degenerate(tile: Tile, alphabet: Alphabet, symbol: Symbol) -> Result<BasicData> {
        if !tile.is_degenerate() {
            return Err(Error::Precondition(
                "a distinguished symbol is only meaningful for the tile {0}".into(),
            ));
        }
        if symbol.index() >= alphabet.len() {
            return Err(Error::Precondition("symbol outside the alphabet".into()));
        }
        Ok(BasicData {
            tile,
            alphabet,
            rule: Rule::Distinguished(symbol),
        })
    }

    /// Builds data from a closure giving `f_p(a)`.
    pub fn from_fn(
        tile: Tile,
        alphabet: Alphabet,
        mut f: impl FnMut(&Pattern, Symbol) -> Symbol,
    ) -> Result<BasicData> {
        let arity = tile.reduced().len();
        let count = checked_power(alphabet.len(), arity).ok_or_else(|| Error::SizeLimit {
            what: "pattern count",
            value: format!("{}^{}", alphabet.len(), arity),
            cap: u64::MAX,
        })? as usize;
        let maps = (0..count)
            .map(|idx| {
                let p = pattern_from_index(idx, alphabet.len(), arity);
                SymbolMap::new(alphabet.symbols().map(|a| f(&p, a)).collect())
            })
            .collect();
        BasicData::new(tile, alphabet, maps)
    }

    pub fn tile(&self) -> &Tile {
        &self.tile
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.rule, Rule::Distinguished(_))
    }

    /// Whether every pattern map is a bijection (always true for validated data).
    pub fn is_bijective(&self) -> bool {
        match &self.rule {
            Rule::Bijections(maps) => maps.iter().all(SymbolMap::is_bijective),
            Rule::Distinguished(_) => true,
        }
    }

    pub fn pattern_count(&self) -> usize {
        match &self.rule {
            Rule::Bijections(maps) => maps.len(),
            Rule::Distinguished(_) => 1,
        }
    }

    pub fn vertex_count(&self) -> usize {
        match &self.rule {
            Rule::Bijections(maps) => maps.len() * self.alphabet.len(),
            Rule::Distinguished(_) => 1,
        }
    }

    pub fn map(&self, pattern_index: usize) -> Option<&SymbolMap> {
        match &self.rule {
            Rule::Bijections(maps) => maps.get(pattern_index),
            Rule::Distinguished(_) => None,
        }
    }

    /// Pattern with the given index; the first reduced point is most significant.
    pub fn pattern_from_index(&self, idx: usize) -> Pattern {
        pattern_from_index(idx, self.alphabet.len(), self.tile.reduced().len())
    }

    pub fn pattern_index(&self, p: &Pattern) -> usize {
        let base = self.alphabet.len();
        p.0.iter().fold(0, |acc, s| acc * base + s.index())
    }

    /// `F_{p,a}`.
    pub fn make_vertex(&self, p: &Pattern, a: Symbol) -> Result<Vertex> {
        if a.index() >= self.alphabet.len() || p.0.iter().any(|s| s.index() >= self.alphabet.len())
        {
            return Err(Error::Precondition("symbol outside the alphabet".into()));
        }
        match &self.rule {
            Rule::Distinguished(d) => {
                if !p.0.is_empty() || a != *d {
                    return Err(Error::Precondition(
                        "degenerate data has a single vertex".into(),
                    ));
                }
                Ok(Vertex {
                    id: VertexId(0),
                    pattern: Pattern::default(),
                    top: a,
                    corner: a,
                    labels: vec![a],
                })
            }
            Rule::Bijections(maps) => {
                if p.0.len() != self.tile.reduced().len() {
                    return Err(Error::Precondition("pattern has the wrong arity".into()));
                }
                let pidx = self.pattern_index(p);
                let corner = maps[pidx].apply(a);
                let mut labels = vec![Symbol(0); self.tile.len()];
                for (&slot, &s) in self.tile.reduced_indices().iter().zip(&p.0) {
                    labels[slot] = s;
                }
                labels[self.tile.corner_e2_index()] = a;
                labels[self.tile.corner_e1_index()] = corner;
                Ok(Vertex {
                    id: VertexId(pidx * self.alphabet.len() + a.index()),
                    pattern: p.clone(),
                    top: a,
                    corner,
                    labels,
                })
            }
        }
    }

    pub fn vertex(&self, id: VertexId) -> Vertex {
        match &self.rule {
            Rule::Distinguished(d) => self
                .make_vertex(&Pattern::default(), *d)
                .expect("distinguished vertex"),
            Rule::Bijections(_) => {
                let n = self.alphabet.len();
                let p = self.pattern_from_index(id.0 / n);
                self.make_vertex(&p, Symbol((id.0 % n) as u32))
                    .expect("vertex id in range")
            }
        }
    }

    /// All vertices in canonical order.
    pub fn enumerate_vertices(&self, limits: &Limits) -> Result<Vec<Vertex>> {
        let count = self.vertex_count();
        if count as u64 > limits.max_vertices {
            return Err(Error::SizeLimit {
                what: "vertex count",
                value: count.to_string(),
                cap: limits.max_vertices,
            });
        }
        Ok((0..count).map(|i| self.vertex(VertexId(i))).collect())
    }

    /// Identifies the vertex whose labels are `label(i)` for the `i`-th tile
    /// point, or `None` if the labelling is not a vertex.
    pub fn classify(&self, mut label: impl FnMut(usize) -> Symbol) -> Option<VertexId> {
        match &self.rule {
            Rule::Distinguished(d) => (label(0) == *d).then_some(VertexId(0)),
            Rule::Bijections(maps) => {
                let base = self.alphabet.len();
                let pidx = self
                    .tile
                    .reduced_indices()
                    .iter()
                    .fold(0, |acc, &i| acc * base + label(i).index());
                let top = label(self.tile.corner_e2_index());
                let corner = label(self.tile.corner_e1_index());
                (maps[pidx].apply(top) == corner).then(|| VertexId(pidx * base + top.index()))
            }
        }
    }

    pub fn classify_labels(&self, labels: &[Symbol]) -> Option<VertexId> {
        self.classify(|i| labels[i])
    }
}

fn pattern_from_index(mut idx: usize, base: usize, arity: usize) -> Pattern {
    let mut out = vec![Symbol(0); arity];
    for slot in out.iter_mut().rev() {
        *slot = Symbol((idx % base) as u32);
        idx /= base;
    }
    Pattern(out)
}

/// The on-disk basic-data schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawBasicData {
    pub alphabet: Vec<String>,
    pub tile: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bijections: BTreeMap<String, Vec<String>>,
    /// Distinguished symbol, used only for the degenerate tile `{0}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<String>,
}

impl RawBasicData {
    pub fn from_data(bd: &BasicData) -> RawBasicData {
        let alphabet = bd.alphabet();
        let tile = bd.tile().points().iter().map(|p| [p.x, p.y]).collect();
        match bd.rule() {
            Rule::Distinguished(d) => RawBasicData {
                alphabet: alphabet.names().to_vec(),
                tile,
                bijections: BTreeMap::new(),
                symbol: Some(alphabet.name(*d).to_string()),
            },
            Rule::Bijections(maps) => RawBasicData {
                alphabet: alphabet.names().to_vec(),
                tile,
                bijections: maps
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        (
                            bd.pattern_from_index(i).key(alphabet),
                            m.images().iter().map(|&s| alphabet.name(s).to_string()).collect(),
                        )
                    })
                    .collect(),
                symbol: None,
            },
        }
    }
}

/// Parses and validates raw basic data.
pub fn validate_basic_data(raw: &RawBasicData, limits: &Limits) -> Result<BasicData> {
    let (tile, alphabet, maps) = resolve_raw(raw, limits)?;
    match maps {
        None => {
            let name = raw.symbol.as_deref().ok_or(Error::MissingDistinguishedSymbol)?;
            let symbol = alphabet.lookup(name)?;
            BasicData::degenerate(tile, alphabet, symbol)
        }
        Some(maps) => BasicData::new(tile, alphabet, maps),
    }
}

/// Parses raw data keeping non-bijective maps. Everything else is still validated.
pub fn load_basic_data_lenient(raw: &RawBasicData, limits: &Limits) -> Result<BasicData> {
    let (tile, alphabet, maps) = resolve_raw(raw, limits)?;
    match maps {
        None => validate_basic_data(raw, limits),
        Some(maps) => BasicData::with_maps(tile, alphabet, maps),
    }
}

fn resolve_raw(
    raw: &RawBasicData,
    limits: &Limits,
) -> Result<(Tile, Alphabet, Option<Vec<SymbolMap>>)> {
    let tile = Tile::with_limit(
        raw.tile.iter().map(|&[x, y]| Point::new(x, y)),
        limits.max_tile_cells,
    )?;
    let alphabet = Alphabet::new(raw.alphabet.iter().cloned())?;
    if tile.is_degenerate() {
        return Ok((tile, alphabet, None));
    }
    if raw.symbol.is_some() {
        return Err(Error::Precondition(
            "a distinguished symbol is only meaningful for the tile {0}".into(),
        ));
    }
    let arity = tile.reduced().len();
    let vertices = checked_power(alphabet.len(), arity + 1);
    match vertices {
        Some(v) if v <= limits.max_vertices => {}
        _ => {
            return Err(Error::SizeLimit {
                what: "vertex count",
                value: format!("{}^{}", alphabet.len(), arity + 1),
                cap: limits.max_vertices,
            })
        }
    }
    let count = vertices.unwrap() as usize / alphabet.len();
    let mut slots: Vec<Option<SymbolMap>> = vec![None; count];
    for (key, images) in &raw.bijections {
        let p = Pattern::parse_key(key, &alphabet, arity)?;
        if images.len() != alphabet.len() {
            return Err(Error::BadImageTable {
                key: key.clone(),
                got: images.len(),
                expected: alphabet.len(),
            });
        }
        let table = images
            .iter()
            .map(|s| alphabet.lookup(s))
            .collect::<Result<Vec<_>>>()?;
        let idx = p.0.iter().fold(0, |acc, s| acc * alphabet.len() + s.index());
        slots[idx] = Some(SymbolMap::new(table));
    }
    let maps = slots
        .into_iter()
        .enumerate()
        .map(|(idx, m)| {
            m.ok_or_else(|| Error::MissingPattern {
                key: pattern_from_index(idx, alphabet.len(), arity).key(&alphabet),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((tile, alphabet, Some(maps)))
}
