//! Removing the black tile from even tilings block by block.
//!
//! A `3 x 4` block of even tiles is the parity image of a `4 x 5` vertex
//! grid, and the black tile is a 2x2 checkerboard of bits. Rewriting the six
//! interior bits keeps every boundary edge color.

use crate::error::{Error, Result};
use crate::pattern::{lift_to_bits, parity_tiles, BitGrid, Cell, Rect, TilePattern};
use crate::tile::Tile;

pub const BLOCK_W: usize = 3;
pub const BLOCK_H: usize = 4;

/// Interior vertices of the `4 x 5` grid, bottom row first.
const INTERIOR: [(usize, usize); 6] = [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (2, 3)];

/// Keeps the boundary bits and picks the lexicographically first interior,
/// read in [`INTERIOR`] order, with no checkerboard. Checkerboard-free grids
/// are returned unchanged.
pub fn fix_bit_grid_4x5(g: &BitGrid) -> Result<BitGrid> {
    if g.width() != BLOCK_W + 1 || g.height() != BLOCK_H + 1 {
        return Err(Error::DimensionMismatch { width: g.width(), height: g.height(), block_w: BLOCK_W + 1, block_h: BLOCK_H + 1 });
    }
    if !g.has_checkerboard() {
        return Ok(g.clone());
    }
    let mut out = g.clone();
    for code in 0u8..64 {
        for (k, &(x, y)) in INTERIOR.iter().enumerate() {
            out.set_at(x, y, code >> (5 - k) & 1 == 1);
        }
        if !out.has_checkerboard() {
            return Ok(out);
        }
    }
    Err(Error::NoValidFill)
}

/// Corrects every `3 x 4` block, anchored at multiples of the block size
/// from the pattern's lower-left cell, so that no `1111` remains.
pub fn remove_black_tile(p: &TilePattern) -> Result<TilePattern> {
    let r = p.rect()?;
    if r.width % BLOCK_W != 0 || r.height % BLOCK_H != 0 {
        return Err(Error::DimensionMismatch { width: r.width, height: r.height, block_w: BLOCK_W, block_h: BLOCK_H });
    }
    let mut out = TilePattern::new();
    for by in (0..r.height).step_by(BLOCK_H) {
        for bx in (0..r.width).step_by(BLOCK_W) {
            let block = Rect::new(r.x0 + bx as i32, r.y0 + by as i32, BLOCK_W, BLOCK_H);
            let sub = p.restrict(&block.region());
            if !sub.tiles_used().contains(Tile::BLACK) {
                out.extend_with(&sub);
                continue;
            }
            let bits = lift_to_bits(&sub)?;
            out.extend_with(&parity_tiles(&fix_bit_grid_4x5(&bits)?));
        }
    }
    Ok(out)
}

/// Edge colors around a `3 x 4` block, counter-clockwise from the
/// bottom-left corner.
pub fn block_boundary(p: &TilePattern, anchor: Cell) -> Option<Vec<bool>> {
    let at = |x: i32, y: i32| p.get(Cell::new(anchor.x + x, anchor.y + y));
    let (w, h) = (BLOCK_W as i32, BLOCK_H as i32);
    let mut out = Vec::with_capacity(2 * (BLOCK_W + BLOCK_H));
    for x in 0..w {
        out.push(at(x, 0)?.south());
    }
    for y in 0..h {
        out.push(at(w - 1, y)?.east());
    }
    for x in (0..w).rev() {
        out.push(at(x, h - 1)?.north());
    }
    for y in (0..h).rev() {
        out.push(at(0, y)?.west());
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_grid_is_unchanged() {
        let g = BitGrid::zeros(4, 5);
        assert_eq!(fix_bit_grid_4x5(&g).unwrap(), g);
    }

    #[test]
    fn single_checkerboard_is_removed() {
        let g = BitGrid::from_rows(&["0000", "0000", "0100", "0010", "0000"]);
        assert!(g.has_checkerboard());
        let f = fix_bit_grid_4x5(&g).unwrap();
        assert!(!f.has_checkerboard());
        for y in 0..5 {
            for x in 0..4 {
                if x == 0 || x == 3 || y == 0 || y == 4 {
                    assert_eq!(f.at(x, y), g.at(x, y));
                }
            }
        }
    }

    #[test]
    fn all_black_block_keeps_its_boundary() {
        let p = TilePattern::filled(Rect::new(0, 0, 3, 4), Tile::BLACK);
        let q = remove_black_tile(&p).unwrap();
        assert!(q.is_locally_valid());
        assert!(!q.tiles_used().contains(Tile::BLACK));
        assert_eq!(block_boundary(&p, Cell::ORIGIN), block_boundary(&q, Cell::ORIGIN));
    }

    #[test]
    fn misaligned_pattern_is_rejected() {
        let p = TilePattern::filled(Rect::new(0, 0, 4, 4), Tile::WHITE);
        assert!(matches!(remove_black_tile(&p), Err(Error::DimensionMismatch { .. })));
    }
}
