//! Finite tile patterns, bit grids and the parity map between them.
//!
//! Coordinates are `(x, y)` with `y` increasing upward. A tile at cell
//! `(x, y)` has its corners at the vertices `(x, y)`, `(x + 1, y)`,
//! `(x, y + 1)` and `(x + 1, y + 1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tile::{Tile, Tileset};

/// A lattice cell (or vertex, for bit grids). Ordered row-major: by `y`, then `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub const fn new(x: i32, y: i32) -> Cell {
        Cell { x, y }
    }

    pub const fn offset(self, dx: i32, dy: i32) -> Cell {
        Cell::new(self.x + dx, self.y + dy)
    }

    pub const fn add(self, other: Cell) -> Cell {
        self.offset(other.x, other.y)
    }

    /// Max-norm distance.
    pub fn dist(self, other: Cell) -> i32 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<[i32; 2]> for Cell {
    fn from([x, y]: [i32; 2]) -> Cell {
        Cell::new(x, y)
    }
}

impl From<Cell> for [i32; 2] {
    fn from(c: Cell) -> [i32; 2] {
        [c.x, c.y]
    }
}

impl From<(i32, i32)> for Cell {
    fn from((x, y): (i32, i32)) -> Cell {
        Cell::new(x, y)
    }
}

/// A finite set of cells.
pub type Region = BTreeSet<Cell>;

/// Axis-aligned rectangle `[x0, x0 + width) x [y0, y0 + height)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: i32,
    pub y0: i32,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    pub const fn new(x0: i32, y0: i32, width: usize, height: usize) -> Rect {
        Rect { x0, y0, width, height }
    }

    /// The square `[-n, n]^2`.
    pub const fn centered(n: usize) -> Rect {
        Rect::new(-(n as i32), -(n as i32), 2 * n + 1, 2 * n + 1)
    }

    pub fn x1(&self) -> i32 {
        self.x0 + self.width as i32
    }

    pub fn y1(&self) -> i32 {
        self.y0 + self.height as i32
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= self.x0 && c.x < self.x1() && c.y >= self.y0 && c.y < self.y1()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (self.y0..self.y1()).flat_map(move |y| (self.x0..self.x1()).map(move |x| Cell::new(x, y)))
    }

    pub fn region(&self) -> Region {
        self.cells().collect()
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

/// Bounding rectangle of a non-empty set of cells.
pub fn bounding_rect<'a>(cells: impl IntoIterator<Item = &'a Cell>) -> Option<Rect> {
    let mut it = cells.into_iter();
    let first = *it.next()?;
    let (mut x0, mut y0, mut x1, mut y1) = (first.x, first.y, first.x, first.y);
    for c in it {
        x0 = x0.min(c.x);
        y0 = y0.min(c.y);
        x1 = x1.max(c.x);
        y1 = y1.max(c.y);
    }
    Some(Rect::new(x0, y0, (x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize))
}

/// The r-neighborhood of `region` in the max metric.
pub fn neighborhood(region: &Region, r: usize) -> Region {
    let r = r as i32;
    let mut out = Region::new();
    for c in region {
        for dy in -r..=r {
            for dx in -r..=r {
                out.insert(c.offset(dx, dy));
            }
        }
    }
    out
}

/// The diagonal `{(k, k) : 0 <= k <= len - 1}` shifted by `origin`.
pub fn diagonal(origin: Cell, len: usize) -> Region {
    (0..len as i32).map(|k| origin.offset(k, k)).collect()
}

/// A finite assignment of tiles to cells.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TilePattern {
    cells: BTreeMap<Cell, Tile>,
}

impl TilePattern {
    pub fn new() -> TilePattern {
        TilePattern::default()
    }

    /// Fills `rect` with `f(cell)`.
    pub fn from_fn(rect: Rect, mut f: impl FnMut(Cell) -> Tile) -> TilePattern {
        rect.cells().map(|c| (c, f(c))).collect()
    }

    pub fn filled(rect: Rect, t: Tile) -> TilePattern {
        TilePattern::from_fn(rect, |_| t)
    }

    pub fn filled_region(region: &Region, t: Tile) -> TilePattern {
        region.iter().map(|&c| (c, t)).collect()
    }

    /// Parses rows of space-separated tile literals, top row first, with the
    /// bottom-left cell at the origin.
    pub fn from_rows(rows: &[&str]) -> Result<TilePattern> {
        let h = rows.len() as i32;
        let mut p = TilePattern::new();
        for (k, row) in rows.iter().enumerate() {
            let y = h - 1 - k as i32;
            for (x, lit) in row.split_whitespace().enumerate() {
                p.insert(Cell::new(x as i32, y), lit.parse()?);
            }
        }
        Ok(p)
    }

    pub fn get(&self, c: Cell) -> Option<Tile> {
        self.cells.get(&c).copied()
    }

    pub fn insert(&mut self, c: Cell, t: Tile) -> Option<Tile> {
        self.cells.insert(c, t)
    }

    pub fn remove(&mut self, c: Cell) -> Option<Tile> {
        self.cells.remove(&c)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains_key(&c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, Tile)> + '_ {
        self.cells.iter().map(|(&c, &t)| (c, t))
    }

    pub fn domain(&self) -> Region {
        self.cells.keys().copied().collect()
    }

    pub fn bounding_rect(&self) -> Option<Rect> {
        bounding_rect(self.cells.keys())
    }

    /// True if the domain is exactly a non-empty rectangle.
    pub fn is_rectangular(&self) -> bool {
        self.bounding_rect().is_some_and(|r| r.area() == self.len())
    }

    pub fn rect(&self) -> Result<Rect> {
        match self.bounding_rect() {
            Some(r) if r.area() == self.len() => Ok(r),
            _ => Err(Error::NotRectangular),
        }
    }

    pub fn tiles_used(&self) -> Tileset {
        self.cells.values().copied().collect()
    }

    pub fn restrict(&self, region: &Region) -> TilePattern {
        self.cells
            .iter()
            .filter(|(c, _)| region.contains(c))
            .map(|(&c, &t)| (c, t))
            .collect()
    }

    pub fn translate(&self, dx: i32, dy: i32) -> TilePattern {
        self.iter().map(|(c, t)| (c.offset(dx, dy), t)).collect()
    }

    /// Overlays `other` on top of `self`.
    pub fn extend_with(&mut self, other: &TilePattern) {
        for (c, t) in other.iter() {
            self.insert(c, t);
        }
    }

    /// Every pair of adjacent cells agrees on its shared edge.
    pub fn is_locally_valid(&self) -> bool {
        self.first_mismatch().is_none()
    }

    /// The first adjacent pair (left/right or lower/upper) whose shared edge disagrees.
    pub fn first_mismatch(&self) -> Option<(Cell, Cell)> {
        for (&c, &t) in &self.cells {
            let right = c.offset(1, 0);
            if let Some(u) = self.get(right) {
                if t.east() != u.west() {
                    return Some((c, right));
                }
            }
            let up = c.offset(0, 1);
            if let Some(u) = self.get(up) {
                if t.north() != u.south() {
                    return Some((c, up));
                }
            }
        }
        None
    }

    /// Rows from top to bottom, for rectangular patterns.
    pub fn rows(&self) -> Result<Vec<Vec<Tile>>> {
        let r = self.rect()?;
        Ok((r.y0..r.y1())
            .rev()
            .map(|y| (r.x0..r.x1()).map(|x| self.cells[&Cell::new(x, y)]).collect())
            .collect())
    }
}

impl FromIterator<(Cell, Tile)> for TilePattern {
    fn from_iter<I: IntoIterator<Item = (Cell, Tile)>>(iter: I) -> Self {
        TilePattern { cells: iter.into_iter().collect() }
    }
}

impl fmt::Debug for TilePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rows() {
            Ok(rows) => {
                let r = self.rect().expect("rows succeeded");
                writeln!(f, "TilePattern at ({}, {}):", r.x0, r.y0)?;
                for row in rows {
                    let line: Vec<String> = row.iter().map(|t| t.to_string()).collect();
                    writeln!(f, "  {}", line.join(" "))?;
                }
                Ok(())
            }
            Err(_) => f.debug_map().entries(self.cells.iter()).finish(),
        }
    }
}

/// On-disk pattern format: parallel arrays of cells and tile literals.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternFile {
    pub domain: Vec<Cell>,
    pub cells: Vec<Tile>,
}

impl From<&TilePattern> for PatternFile {
    fn from(p: &TilePattern) -> Self {
        let (domain, cells) = p.iter().unzip();
        PatternFile { domain, cells }
    }
}

impl TryFrom<PatternFile> for TilePattern {
    type Error = Error;

    fn try_from(f: PatternFile) -> Result<Self> {
        if f.domain.len() != f.cells.len() {
            return Err(Error::InvalidPattern);
        }
        Ok(f.domain.into_iter().zip(f.cells).collect())
    }
}

impl Serialize for TilePattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PatternFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for TilePattern {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = PatternFile::deserialize(d)?;
        TilePattern::try_from(f).map_err(serde::de::Error::custom)
    }
}

/// A rectangular grid of bits on lattice vertices.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitGrid {
    pub x0: i32,
    pub y0: i32,
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BitGrid {
    /// All-zero grid of `width x height` vertices with its lower-left vertex at the origin.
    pub fn zeros(width: usize, height: usize) -> BitGrid {
        BitGrid { x0: 0, y0: 0, width, height, bits: vec![false; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> BitGrid {
        let mut g = BitGrid::zeros(width, height);
        for y in 0..height {
            for x in 0..width {
                g.bits[y * width + x] = f(x, y);
            }
        }
        g
    }

    /// Parses rows of `0`/`1` characters, top row first.
    pub fn from_rows(rows: &[&str]) -> BitGrid {
        let h = rows.len();
        let w = rows.first().map_or(0, |r| r.trim().len());
        BitGrid::from_fn(w, h, |x, y| rows[h - 1 - y].trim().as_bytes()[x] == b'1')
    }

    pub fn with_origin(mut self, x0: i32, y0: i32) -> BitGrid {
        self.x0 = x0;
        self.y0 = y0;
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Bit at local coordinates (0-based from the lower-left vertex).
    pub fn at(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn set_at(&mut self, x: usize, y: usize, b: bool) {
        self.bits[y * self.width + x] = b;
    }

    /// Bit at an absolute vertex, if inside the grid.
    pub fn get(&self, v: Cell) -> Option<bool> {
        let x = v.x - self.x0;
        let y = v.y - self.y0;
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return None;
        }
        Some(self.at(x as usize, y as usize))
    }

    pub fn complement(&self) -> BitGrid {
        BitGrid { bits: self.bits.iter().map(|b| !b).collect(), ..self.clone() }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// True if the 2x2 vertex square with lower-left local corner `(x, y)`
    /// reads `01/10` or `10/01`.
    pub fn is_checkerboard_at(&self, x: usize, y: usize) -> bool {
        let (bl, br, tl, tr) = (self.at(x, y), self.at(x + 1, y), self.at(x, y + 1), self.at(x + 1, y + 1));
        bl == tr && br == tl && bl != br
    }

    pub fn has_checkerboard(&self) -> bool {
        (0..self.height.saturating_sub(1))
            .any(|y| (0..self.width.saturating_sub(1)).any(|x| self.is_checkerboard_at(x, y)))
    }

    /// Copy of the sub-grid with lower-left local corner `(x, y)`.
    pub fn window(&self, x: usize, y: usize, width: usize, height: usize) -> BitGrid {
        BitGrid::from_fn(width, height, |i, j| self.at(x + i, y + j))
            .with_origin(self.x0 + x as i32, self.y0 + y as i32)
    }

    /// Writes `block` back at local offset `(x, y)`.
    pub fn paste(&mut self, x: usize, y: usize, block: &BitGrid) {
        for j in 0..block.height {
            for i in 0..block.width {
                self.set_at(x + i, y + j, block.at(i, j));
            }
        }
    }

    /// Rows as `0`/`1` strings, top row first.
    pub fn to_rows(&self) -> Vec<String> {
        (0..self.height)
            .rev()
            .map(|y| (0..self.width).map(|x| if self.at(x, y) { '1' } else { '0' }).collect())
            .collect()
    }
}

impl fmt::Debug for BitGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitGrid {}x{} at ({}, {}):", self.width, self.height, self.x0, self.y0)?;
        for row in self.to_rows() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// The tile cornered by four vertex bits: each edge is the XOR of its endpoints.
pub fn parity_tile(bl: bool, br: bool, tl: bool, tr: bool) -> Tile {
    Tile::from_edges(bl ^ tl, tl ^ tr, br ^ tr, bl ^ br)
}

/// Maps a `(w + 1) x (h + 1)` vertex grid to the `w x h` even tile pattern.
pub fn parity_tiles(b: &BitGrid) -> TilePattern {
    let mut p = TilePattern::new();
    for y in 0..b.height().saturating_sub(1) {
        for x in 0..b.width().saturating_sub(1) {
            let t = parity_tile(b.at(x, y), b.at(x + 1, y), b.at(x, y + 1), b.at(x + 1, y + 1));
            p.insert(Cell::new(b.x0 + x as i32, b.y0 + y as i32), t);
        }
    }
    p
}

/// Inverse of [`parity_tiles`] on rectangles; the top-left vertex gets bit 0.
pub fn lift_to_bits(p: &TilePattern) -> Result<BitGrid> {
    let r = p.rect()?;
    if let Some((c, t)) = p.iter().find(|(_, t)| !t.is_even()) {
        let _ = t;
        return Err(Error::OddTile(c));
    }
    if !p.is_locally_valid() {
        return Err(Error::InvalidPattern);
    }
    let (w, h) = (r.width + 1, r.height + 1);
    let mut g = BitGrid::zeros(w, h).with_origin(r.x0, r.y0);
    let tile = |x: usize, y: usize| p.get(Cell::new(r.x0 + x as i32, r.y0 + y as i32)).expect("rectangular");
    // Top vertex row from North edges, then each column downward from West edges
    // (the last column uses East edges of the last tile column).
    let top = h - 1;
    for x in 1..w {
        let b = g.at(x - 1, top) ^ tile(x - 1, top - 1).north();
        g.set_at(x, top, b);
    }
    for x in 0..w {
        for y in (0..top).rev() {
            let e = if x < r.width { tile(x, y).west() } else { tile(x - 1, y).east() };
            let b = g.at(x, y + 1) ^ e;
            g.set_at(x, y, b);
        }
    }
    if parity_tiles(&g) != *p {
        return Err(Error::NotLiftable);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_validity_basics() {
        let single = TilePattern::filled(Rect::new(0, 0, 1, 1), Tile::WHITE);
        assert!(single.is_locally_valid());
        let mut bad = TilePattern::new();
        bad.insert(Cell::new(0, 0), "0010".parse().unwrap());
        bad.insert(Cell::new(1, 0), Tile::WHITE);
        assert!(!bad.is_locally_valid());
        assert!(TilePattern::filled(Rect::new(0, 0, 3, 3), Tile::WHITE).is_locally_valid());
    }

    #[test]
    fn vertical_adjacency_uses_north_of_lower_cell() {
        // A vertical wire above a vertical wire matches; above a horizontal wire it does not.
        let ok = TilePattern::from_rows(&["0101", "0101"]).unwrap();
        assert!(ok.is_locally_valid());
        let bad = TilePattern::from_rows(&["0101", "1010"]).unwrap();
        assert!(!bad.is_locally_valid());
    }

    #[test]
    fn parity_examples() {
        let zeros = BitGrid::zeros(4, 4);
        assert_eq!(parity_tiles(&zeros), TilePattern::filled(Rect::new(0, 0, 3, 3), Tile::WHITE));

        let checker = BitGrid::from_fn(4, 4, |x, y| (x + y) % 2 == 1);
        assert_eq!(parity_tiles(&checker), TilePattern::filled(Rect::new(0, 0, 3, 3), Tile::BLACK));

        // Single interior bit: the four tiles around it form a closed loop of corners.
        let mut dot = BitGrid::zeros(3, 3);
        dot.set_at(1, 1, true);
        let p = parity_tiles(&dot);
        assert_eq!(p.get(Cell::new(0, 0)), Some(Tile::NORTH_EAST));
        assert_eq!(p.get(Cell::new(1, 0)), Some(Tile::WEST_NORTH));
        assert_eq!(p.get(Cell::new(0, 1)), Some(Tile::EAST_SOUTH));
        assert_eq!(p.get(Cell::new(1, 1)), Some(Tile::SOUTH_WEST));
    }

    #[test]
    fn lift_examples() {
        let white = TilePattern::filled(Rect::new(0, 0, 2, 2), Tile::WHITE);
        assert_eq!(lift_to_bits(&white).unwrap(), BitGrid::zeros(3, 3));
        let black = TilePattern::filled(Rect::new(0, 0, 2, 2), Tile::BLACK);
        let g = lift_to_bits(&black).unwrap();
        assert_eq!(g.to_rows(), vec!["010", "101", "010"]);
    }

    #[test]
    fn lift_rejects_odd_and_sparse() {
        let odd = TilePattern::filled(Rect::new(0, 0, 1, 1), "1000".parse().unwrap());
        assert!(matches!(lift_to_bits(&odd), Err(Error::OddTile(_))));
        let mut sparse = TilePattern::new();
        sparse.insert(Cell::new(0, 0), Tile::WHITE);
        sparse.insert(Cell::new(2, 0), Tile::WHITE);
        assert!(matches!(lift_to_bits(&sparse), Err(Error::NotRectangular)));
    }

    #[test]
    fn pattern_json_roundtrip() {
        let p = TilePattern::from_rows(&["0110 1001", "0000 0000"]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"domain\"") && s.contains("\"cells\""));
        let q: TilePattern = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}
