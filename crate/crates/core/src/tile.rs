//! Bicolor Wang tiles and tilesets.
//!
//! A tile packs its four edge colors into a nibble. The string form lists the
//! edges in the order West, North, East, South, so `"1010"` is the tile with
//! black West and East edges (a horizontal wire) and the code is the string
//! read as a binary number.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// One side of a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    West,
    North,
    East,
    South,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::West, Edge::North, Edge::East, Edge::South];

    /// Bit position of this edge inside a tile code.
    pub const fn shift(self) -> u8 {
        match self {
            Edge::West => 3,
            Edge::North => 2,
            Edge::East => 1,
            Edge::South => 0,
        }
    }

    pub const fn opposite(self) -> Edge {
        match self {
            Edge::West => Edge::East,
            Edge::North => Edge::South,
            Edge::East => Edge::West,
            Edge::South => Edge::North,
        }
    }

    pub const fn index(self) -> usize {
        match self {
            Edge::West => 0,
            Edge::North => 1,
            Edge::East => 2,
            Edge::South => 3,
        }
    }

    pub const fn from_index(i: usize) -> Edge {
        match i & 3 {
            0 => Edge::West,
            1 => Edge::North,
            2 => Edge::East,
            _ => Edge::South,
        }
    }
}

/// A bicolor Wang tile, encoded as `0bWNES` with 1 = black.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Tile(u8);

impl Tile {
    pub const WHITE: Tile = Tile(0b0000);
    pub const BLACK: Tile = Tile(0b1111);
    /// Black West and East edges.
    pub const HORIZONTAL: Tile = Tile(0b1010);
    /// Black North and South edges.
    pub const VERTICAL: Tile = Tile(0b0101);
    pub const WEST_NORTH: Tile = Tile(0b1100);
    pub const NORTH_EAST: Tile = Tile(0b0110);
    pub const EAST_SOUTH: Tile = Tile(0b0011);
    pub const SOUTH_WEST: Tile = Tile(0b1001);

    /// The four corner tiles, each with two adjacent black edges.
    pub const CORNERS: [Tile; 4] = [
        Tile::WEST_NORTH,
        Tile::NORTH_EAST,
        Tile::EAST_SOUTH,
        Tile::SOUTH_WEST,
    ];

    pub fn new(code: u8) -> Option<Tile> {
        (code < 16).then_some(Tile(code))
    }

    /// Builds a tile from its four colors in W, N, E, S order.
    pub const fn from_edges(west: bool, north: bool, east: bool, south: bool) -> Tile {
        Tile(((west as u8) << 3) | ((north as u8) << 2) | ((east as u8) << 1) | (south as u8))
    }

    pub const fn code(self) -> u8 {
        self.0
    }

    pub const fn edge(self, e: Edge) -> bool {
        (self.0 >> e.shift()) & 1 == 1
    }

    pub const fn west(self) -> bool {
        self.edge(Edge::West)
    }
    pub const fn north(self) -> bool {
        self.edge(Edge::North)
    }
    pub const fn east(self) -> bool {
        self.edge(Edge::East)
    }
    pub const fn south(self) -> bool {
        self.edge(Edge::South)
    }

    /// The edge colors as `(west, north, east, south)`.
    pub const fn edges(self) -> (bool, bool, bool, bool) {
        (self.west(), self.north(), self.east(), self.south())
    }

    pub const fn is_even(self) -> bool {
        self.0.count_ones().is_multiple_of(2)
    }

    pub fn is_corner(self) -> bool {
        Tile::CORNERS.contains(&self)
    }

    pub fn all() -> impl Iterator<Item = Tile> {
        (0..16).map(Tile)
    }

    pub fn even() -> impl Iterator<Item = Tile> {
        Tile::all().filter(|t| t.is_even())
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tile({self})")
    }
}

impl FromStr for Tile {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.len() != 4 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(ParseError::Tile(s.to_string()));
        }
        Ok(Tile(u8::from_str_radix(s, 2).expect("checked binary digits")))
    }
}

impl TryFrom<String> for Tile {
    type Error = ParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Tile> for String {
    fn from(t: Tile) -> String {
        t.to_string()
    }
}

/// A set of bicolor tiles as a 16-bit mask over tile codes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Tileset(u16);

impl Tileset {
    pub const EMPTY: Tileset = Tileset(0);
    pub const ALL: Tileset = Tileset(0xFFFF);
    /// The eight even tiles.
    pub const EVEN: Tileset = Tileset(0b1001_0110_0110_1001);
    pub const CORNERS: Tileset = Tileset(
        (1 << 0b1100) | (1 << 0b0110) | (1 << 0b0011) | (1 << 0b1001),
    );

    pub const fn from_mask(mask: u16) -> Tileset {
        Tileset(mask)
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    pub const fn contains(self, t: Tile) -> bool {
        self.0 & (1 << t.0) != 0
    }

    pub fn with(self, t: Tile) -> Tileset {
        Tileset(self.0 | (1 << t.0))
    }

    pub fn without(self, t: Tile) -> Tileset {
        Tileset(self.0 & !(1 << t.0))
    }

    pub const fn union(self, other: Tileset) -> Tileset {
        Tileset(self.0 | other.0)
    }

    pub const fn is_subset(self, other: Tileset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_even(self) -> bool {
        self.is_subset(Tileset::EVEN)
    }

    pub fn corner_count(self) -> usize {
        (self.0 & Tileset::CORNERS.0).count_ones() as usize
    }

    /// Tiles in increasing code order.
    pub fn tiles(self) -> impl Iterator<Item = Tile> {
        let mask = self.0;
        (0..16u8).filter(move |c| mask & (1 << c) != 0).map(Tile)
    }
}

impl FromIterator<Tile> for Tileset {
    fn from_iter<I: IntoIterator<Item = Tile>>(iter: I) -> Self {
        Tileset(iter.into_iter().fold(0, |m, t| m | (1 << t.0)))
    }
}

impl fmt::Display for Tileset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tiles().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Tileset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tileset(0x{:04X} {{{self}}})", self.0)
    }
}

/// Accepts either a comma-separated list of tile literals or a mask written
/// as `0x` followed by exactly four hex digits.
impl FromStr for Tileset {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            if hex.len() != 4 {
                return Err(ParseError::Tileset(s.to_string()));
            }
            return u16::from_str_radix(hex, 16)
                .map(Tileset)
                .map_err(|_| ParseError::Tileset(s.to_string()));
        }
        if s.is_empty() {
            return Err(ParseError::Tileset(s.to_string()));
        }
        s.split(',').map(str::parse::<Tile>).collect()
    }
}

impl TryFrom<String> for Tileset {
    type Error = ParseError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Tileset> for String {
    fn from(t: Tileset) -> String {
        t.to_string()
    }
}
