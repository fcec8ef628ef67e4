//! Auxiliary subshifts and the maps relating them to tileset subshifts, all
//! at the scale of finite windows: the one-dimensional shift of words with a
//! single white-to-black transition, its first-row and diagonal factor maps,
//! the zigzag shift and its relaxation, and higher-power blocking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::pattern::{diagonal, parity_tiles, BitGrid, Cell, Rect, Region, TilePattern};
use crate::solver::Csp;
use crate::tile::{Tile, Tileset};

/// A symbol of the transition shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zbar {
    W,
    B,
}

/// A finite word over `{W, B}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ZbarWord(pub Vec<Zbar>);

impl ZbarWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `W^k B^(len - k)`.
    pub fn transition(len: usize, k: usize) -> ZbarWord {
        ZbarWord((0..len).map(|i| if i < k { Zbar::W } else { Zbar::B }).collect())
    }

    /// All valid words of length `len`.
    pub fn all_valid(len: usize) -> Vec<ZbarWord> {
        (0..=len).map(|k| ZbarWord::transition(len, k)).collect()
    }
}

impl fmt::Display for ZbarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Zbar::W { "W" } else { "B" })?;
        }
        Ok(())
    }
}

impl FromStr for ZbarWord {
    type Err = ParseError;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                'W' | 'w' => Ok(Zbar::W),
                'B' | 'b' => Ok(Zbar::B),
                _ => Err(ParseError::Word(s.to_string())),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(ZbarWord)
    }
}

impl TryFrom<String> for ZbarWord {
    type Error = ParseError;
    fn try_from(s: String) -> std::result::Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<ZbarWord> for String {
    fn from(w: ZbarWord) -> String {
        w.to_string()
    }
}

/// No black symbol is followed by a white one.
pub fn zbar_valid(w: &ZbarWord) -> bool {
    !w.0.windows(2).any(|p| p == [Zbar::B, Zbar::W])
}

/// Row 0 of `p` read left to right: white and vertical-wire tiles give `W`,
/// every other tile gives `B`.
pub fn first_row_factor(p: &TilePattern) -> ZbarWord {
    ZbarWord(
        p.iter()
            .filter(|(c, _)| c.y == 0)
            .map(|(_, t)| if t == Tile::WHITE || t == Tile::VERTICAL { Zbar::W } else { Zbar::B })
            .collect(),
    )
}

/// The cells `(k, k)` of `p` in increasing `k`: white gives `W`, anything else `B`.
pub fn diagonal_factor(p: &TilePattern) -> ZbarWord {
    let diag: BTreeMap<i32, Tile> = p.iter().filter(|(c, _)| c.x == c.y).map(|(c, t)| (c.x, t)).collect();
    ZbarWord(diag.values().map(|&t| if t == Tile::WHITE { Zbar::W } else { Zbar::B }).collect())
}

/// A map from tilings to words of the transition shift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorMap {
    FirstRow,
    Diagonal,
}

impl FactorMap {
    pub fn apply(self, p: &TilePattern) -> ZbarWord {
        match self {
            FactorMap::FirstRow => first_row_factor(p),
            FactorMap::Diagonal => diagonal_factor(p),
        }
    }
}

impl FromStr for FactorMap {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<FactorMap, ParseError> {
        match s {
            "first-row" => Ok(FactorMap::FirstRow),
            "diagonal" => Ok(FactorMap::Diagonal),
            _ => Err(ParseError::Word(s.to_string())),
        }
    }
}

/// Every word the map produces on a valid window over `ts`: rows of length
/// `len` for the first-row map, the main diagonal of `len x len` squares for
/// the diagonal map. `None` if the enumeration limit was hit.
pub fn factor_image(ts: Tileset, map: FactorMap, len: usize, max_patterns: usize) -> Option<BTreeSet<ZbarWord>> {
    let (window, read): (Region, Region) = match map {
        FactorMap::FirstRow => (Rect::new(0, 0, len, 1).region(), Rect::new(0, 0, len, 1).region()),
        FactorMap::Diagonal => (Rect::new(0, 0, len, len).region(), diagonal(Cell::ORIGIN, len)),
    };
    let mut csp = Csp::window(&window, ts);
    let pats = csp.project(&read, max_patterns)?;
    Some(pats.iter().map(|p| map.apply(p)).collect())
}

/// Rows read as `0^a 1^(w - a)`; `None` if some row has a `1` before a `0`.
fn row_transitions(g: &BitGrid) -> Option<Vec<usize>> {
    (0..g.height())
        .map(|y| {
            let a = (0..g.width()).take_while(|&x| !g.at(x, y)).count();
            (a..g.width()).all(|x| g.at(x, y)).then_some(a)
        })
        .collect()
}

/// Is there a sequence `n_j` with steps in `steps` such that every row `j`
/// reads white exactly on the columns `x < n_j`?
fn boundary_sequence_exists(g: &BitGrid, steps: &[i64]) -> bool {
    let Some(rows) = row_transitions(g) else { return false };
    let (w, h) = (g.width() as i64, g.height() as i64);
    // Values beyond this range behave like the nearest one inside it.
    let (lo, hi) = (-h - 1, w + h + 1);
    let fits = |a: usize, n: i64| {
        let a = a as i64;
        if a == 0 {
            n <= 0
        } else if a == w {
            n >= w
        } else {
            n == a
        }
    };
    let mut feasible: Vec<bool> = (lo..=hi).map(|n| rows.first().is_none_or(|&a| fits(a, n))).collect();
    for &a in rows.iter().skip(1) {
        let next: Vec<bool> = (lo..=hi)
            .map(|n| {
                fits(a, n)
                    && steps.iter().any(|d| {
                        let m = n - d;
                        (lo..=hi).contains(&m) && feasible[(m - lo) as usize]
                    })
            })
            .collect();
        feasible = next;
    }
    feasible.iter().any(|&b| b)
}

/// No occurrence of the zigzag shift's forbidden patterns: `1 0` in a row,
/// and the 2x2 squares `11/00`, `00/11`, `01/01` (top row first).
pub fn zigzag_locally_admissible(g: &BitGrid) -> bool {
    let (w, h) = (g.width(), g.height());
    for y in 0..h {
        for x in 0..w.saturating_sub(1) {
            if g.at(x, y) && !g.at(x + 1, y) {
                return false;
            }
        }
    }
    for y in 0..h.saturating_sub(1) {
        for x in 0..w.saturating_sub(1) {
            let bottom = (g.at(x, y), g.at(x + 1, y));
            let top = (g.at(x, y + 1), g.at(x + 1, y + 1));
            let forbidden = (top == (true, true) && bottom == (false, false))
                || (top == (false, false) && bottom == (true, true))
                || (top == (false, true) && bottom == (false, true));
            if forbidden {
                return false;
            }
        }
    }
    true
}

/// The window is the restriction of some zigzag configuration: a white
/// region `x < n_j` in each row with `|n_(j+1) - n_j| = 1`, or a constant
/// configuration.
///
/// Local admissibility is necessary but not sufficient on a finite window:
/// rows whose transition is hidden outside the window still have to respect
/// the alternating parity of `n_j`.
pub fn zigzag_valid(g: &BitGrid) -> bool {
    let constant = g.count_ones() == 0 || g.count_ones() == g.width() * g.height();
    constant || (zigzag_locally_admissible(g) && boundary_sequence_exists(g, &[-1, 1]))
}

/// As [`zigzag_valid`] for the relaxed condition `|n_(j+1) - n_j| <= 1`.
pub fn zigzag_relaxed_valid(g: &BitGrid) -> bool {
    boundary_sequence_exists(g, &[-1, 0, 1])
}

/// The `width x ns.len()` grid with row `j` white exactly on `x < ns[j]`.
pub fn zigzag_from_sequence(ns: &[i32], width: usize) -> BitGrid {
    BitGrid::from_fn(width, ns.len(), |x, y| x as i32 >= ns[y])
}

/// Tiles cornered by the zigzag bits, each edge the XOR of its endpoints.
/// Valid zigzag windows land in the white tile and the four corners.
pub fn zigzag_to_tiles(g: &BitGrid) -> TilePattern {
    parity_tiles(g)
}

/// Tiles cornered by the zigzag bits with each edge the AND of its endpoints.
/// Valid zigzag windows land in `{0000, 1111, 0110, 0011}`.
pub fn zigzag_to_staples(g: &BitGrid) -> TilePattern {
    let mut p = TilePattern::new();
    for y in 0..g.height().saturating_sub(1) {
        for x in 0..g.width().saturating_sub(1) {
            let (bl, br, tl, tr) = (g.at(x, y), g.at(x + 1, y), g.at(x, y + 1), g.at(x + 1, y + 1));
            p.insert(Cell::new(g.x0 + x as i32, g.y0 + y as i32), Tile::from_edges(bl && tl, tl && tr, br && tr, bl && br));
        }
    }
    p
}

/// Half-resolution grid for `n'_j = floor(n_(2j) / 2)`: cell `(i, j)` of the
/// output is white iff `2i + 1 < n_(2j)`, i.e. iff cell `(2i + 1, 2j)` of the
/// input is white.
pub fn zigzag_relax_factor(g: &BitGrid) -> Result<BitGrid> {
    if !g.height().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { width: g.width(), height: g.height(), block_w: 2, block_h: 2 });
    }
    Ok(BitGrid::from_fn(g.width() / 2, g.height() / 2, |i, j| g.at(2 * i + 1, 2 * j)))
}

/// A pattern over the `a1 x a2` block alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPattern {
    pub a1: usize,
    pub a2: usize,
    /// Lower-left cell of block `(0, 0)` in the original pattern.
    pub origin: Cell,
    /// Each super-symbol lists its tiles row by row from the bottom, left to right.
    pub cells: BTreeMap<Cell, Vec<Tile>>,
}

pub fn block(p: &TilePattern, a1: usize, a2: usize) -> Result<BlockPattern> {
    let r = p.rect()?;
    if a1 == 0 || a2 == 0 || r.width % a1 != 0 || r.height % a2 != 0 {
        return Err(Error::DimensionMismatch { width: r.width, height: r.height, block_w: a1, block_h: a2 });
    }
    let mut cells = BTreeMap::new();
    for by in 0..(r.height / a2) as i32 {
        for bx in 0..(r.width / a1) as i32 {
            let sym = Rect::new(r.x0 + bx * a1 as i32, r.y0 + by * a2 as i32, a1, a2)
                .cells()
                .map(|c| p.get(c).expect("rectangular"))
                .collect();
            cells.insert(Cell::new(bx, by), sym);
        }
    }
    Ok(BlockPattern { a1, a2, origin: Cell::new(r.x0, r.y0), cells })
}

pub fn unblock(b: &BlockPattern) -> TilePattern {
    let mut p = TilePattern::new();
    for (bc, sym) in &b.cells {
        let base = Rect::new(b.origin.x + bc.x * b.a1 as i32, b.origin.y + bc.y * b.a2 as i32, b.a1, b.a2);
        for (c, &t) in base.cells().zip(sym) {
            p.insert(c, t);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ZbarWord {
        s.parse().unwrap()
    }

    #[test]
    fn zbar_examples() {
        assert!(zbar_valid(&w("WWWW")));
        assert!(zbar_valid(&w("WWBB")));
        assert!(!zbar_valid(&w("BW")));
        assert_eq!(ZbarWord::all_valid(3).len(), 4);
    }

    #[test]
    fn factor_maps_on_white() {
        let p = TilePattern::filled(Rect::new(0, 0, 4, 4), Tile::WHITE);
        assert_eq!(first_row_factor(&p).to_string(), "WWWW");
        assert_eq!(diagonal_factor(&p).to_string(), "WWWW");
    }

    #[test]
    fn first_row_of_white_prefix_then_wires() {
        let p = TilePattern::from_rows(&["0000 0101 0011 1010 1010"]).unwrap();
        assert_eq!(first_row_factor(&p).to_string(), "WWBBB");
    }

    #[test]
    fn zigzag_examples() {
        assert!(zigzag_valid(&BitGrid::zeros(4, 4)));
        let stair = zigzag_from_sequence(&[2, 3, 2, 3, 2], 5);
        assert!(zigzag_valid(&stair));
        assert!(!zigzag_valid(&BitGrid::from_rows(&["10"])));
        // Locally admissible but the hidden boundary would need a parity flip.
        let g = BitGrid::from_rows(&["01", "00", "00", "01"]);
        assert!(zigzag_locally_admissible(&g));
        assert!(!zigzag_valid(&g));
    }

    #[test]
    fn zigzag_tiles_land_in_corner_sets() {
        let stair = zigzag_from_sequence(&[2, 3, 2, 1, 2], 5);
        let tiles = zigzag_to_tiles(&stair);
        assert!(tiles.is_locally_valid());
        let allowed: crate::Tileset = "0000,0011,0110,1001,1100,1111".parse().unwrap();
        assert!(tiles.tiles_used().is_subset(allowed));
        let staples = zigzag_to_staples(&stair);
        assert!(staples.is_locally_valid());
        assert!(staples.tiles_used().is_subset("0000,0011,0110,1111".parse().unwrap()));
    }

    #[test]
    fn relax_examples() {
        assert_eq!(zigzag_relax_factor(&BitGrid::zeros(6, 4)).unwrap(), BitGrid::zeros(3, 2));
        let g = zigzag_from_sequence(&[2, 3, 2, 3, 2, 3], 6);
        assert_eq!(zigzag_relax_factor(&g).unwrap(), zigzag_from_sequence(&[1, 1, 1], 3));
        assert!(zigzag_relax_factor(&BitGrid::zeros(4, 3)).is_err());
    }

    #[test]
    fn block_roundtrip() {
        let p = TilePattern::filled(Rect::new(0, 0, 4, 6), Tile::WHITE);
        let b = block(&p, 2, 3).unwrap();
        assert_eq!(b.cells.len(), 4);
        assert!(b.cells.values().all(|s| s.len() == 6 && s.iter().all(|&t| t == Tile::WHITE)));
        assert_eq!(unblock(&b), p);
        assert_eq!(unblock(&block(&p, 1, 1).unwrap()), p);
        assert!(block(&p, 3, 3).is_err());
    }
}
