//! Even bicolor Wang tilesets: symmetry orbits, finite-window constraint
//! solving, auxiliary subshifts, local generation procedures, the class
//! registry and SVG rendering.

pub mod classification;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod generation;
pub mod pattern;
pub mod render;
pub mod solver;
pub mod symmetry;
pub mod tile;

pub use error::{Error, ParseError, Result};
pub use pattern::{BitGrid, Cell, Rect, Region, TilePattern};
pub use tile::{Edge, Tile, Tileset};
