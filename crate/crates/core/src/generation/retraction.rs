//! The retraction `G = G2 . G1` onto bit grids whose parity tiling avoids
//! the tiles with both horizontal edges black.
//!
//! Blocks are the vertex rectangles `[0,4] x [0,5]` anchored at `(4x, 5y)`
//! relative to the grid's lower-left vertex. Consecutive blocks share a
//! boundary column or row, so every 2x2 vertex square lies in some block.
//! Blocks cut by the top or right edge of the grid lose the corresponding
//! boundary side and are filled with the same rule, those sides being free.

use crate::error::{Error, Result};
use crate::pattern::BitGrid;

pub const BLOCK_W: usize = 4;
pub const BLOCK_H: usize = 5;

/// A 2x2 vertex square whose bottom pair and top pair both differ.
pub fn is_forbidden_at(b: &BitGrid, x: usize, y: usize) -> bool {
    b.at(x, y) != b.at(x + 1, y) && b.at(x, y + 1) != b.at(x + 1, y + 1)
}

pub fn has_forbidden(b: &BitGrid) -> bool {
    (0..b.height().saturating_sub(1)).any(|y| (0..b.width().saturating_sub(1)).any(|x| is_forbidden_at(b, x, y)))
}

fn anchors(len: usize, step: usize) -> impl Iterator<Item = usize> {
    (0..len.saturating_sub(1)).step_by(step)
}

/// Flattens alternating anchor segments `a a' a a' a` whose flank bits, two
/// per side at the segment ends, differ on either side.
pub fn g1_step(b: &BitGrid) -> BitGrid {
    let mut out = b.clone();
    let (w, h) = (b.width(), b.height());
    for ay in (0..h).step_by(BLOCK_H) {
        for ax in anchors(w, BLOCK_W).filter(|&ax| ax + BLOCK_W < w) {
            let a = b.at(ax, ay);
            if !(1..=BLOCK_W).all(|i| b.at(ax + i, ay) == (a ^ (i % 2 == 1))) {
                continue;
            }
            let differs = |y: usize| b.at(ax, y) != b.at(ax + BLOCK_W, y);
            // A flank row outside the grid cannot contradict the segment.
            let above = ay + 1 < h && differs(ay + 1);
            let below = ay >= 1 && differs(ay - 1);
            if above || below {
                for i in 1..BLOCK_W {
                    out.set_at(ax + i, ay, a);
                }
            }
        }
    }
    out
}

/// Rows of one block in local coordinates: `rows[j][i]`.
type Block = Vec<Vec<bool>>;

fn block_forbidden(rows: &Block) -> bool {
    rows.windows(2).any(|r| (0..r[0].len() - 1).any(|i| r[0][i] != r[0][i + 1] && r[1][i] != r[1][i + 1]))
}

/// Row `s^(p+1) t^(len-p-1)`, constant when `p` is `None`.
fn step_row(s: bool, t: bool, p: Option<usize>, len: usize) -> Vec<bool> {
    (0..len).map(|i| if p.is_some_and(|p| i > p) { t } else { s }).collect()
}

/// Interior rows rebuilt as one-transition words keeping every boundary bit.
///
/// The rows next to the bottom and top boundaries step where that boundary
/// row is locally constant; each middle row steps away from its neighbours.
fn refill(rows: &Block, right: bool, top: bool) -> Result<Block> {
    let bh = rows.len();
    let bw = rows[0].len();
    let interior: Vec<usize> = (1..if top { bh - 1 } else { bh }).collect();
    // Without a right boundary the row is free to stay constant.
    let steps = |j: usize| right && rows[j][0] != rows[j][bw - 1];
    let quiet = |row: &[bool]| (0..bw - 1).find(|&p| row[p] == row[p + 1]);
    let mut choice: Vec<Option<usize>> = vec![None; bh];
    if let Some(&j) = interior.first() {
        if steps(j) {
            choice[j] = quiet(&rows[0]);
        }
    }
    let highest = interior.last().copied().filter(|_| top);
    if let Some(j) = highest {
        if steps(j) && j != 1 {
            choice[j] = quiet(&rows[bh - 1]);
        }
    }
    for &j in interior.iter().filter(|&&j| j != 1 && Some(j) != highest && steps(j)) {
        choice[j] = (0..bw - 1).find(|&p| Some(p) != choice[j - 1] && Some(p) != choice.get(j + 1).copied().flatten());
    }
    let build = |choice: &[Option<usize>]| -> Block {
        let mut out = rows.clone();
        for &j in &interior {
            out[j] = step_row(rows[j][0], rows[j][bw - 1], choice[j], bw);
        }
        out
    };
    if interior.iter().all(|&j| !steps(j) || choice[j].is_some()) {
        let out = build(&choice);
        if !block_forbidden(&out) {
            return Ok(out);
        }
    }
    // Exhaustive fallback over transition tuples.
    let stepping: Vec<usize> = interior.iter().copied().filter(|&j| steps(j)).collect();
    let n = bw - 1;
    for code in 0..n.pow(stepping.len() as u32) {
        let mut c = code;
        let mut choice = vec![None; bh];
        for &j in &stepping {
            choice[j] = Some(c % n);
            c /= n;
        }
        let out = build(&choice);
        if !block_forbidden(&out) {
            return Ok(out);
        }
    }
    Err(Error::NoValidFill)
}

/// Refills every block containing a forbidden square. Blocks only share
/// boundary bits, which are never written, so the order does not matter.
pub fn g2_step(b: &BitGrid) -> Result<BitGrid> {
    let mut out = b.clone();
    let (w, h) = (b.width(), b.height());
    for ay in anchors(h, BLOCK_H) {
        for ax in anchors(w, BLOCK_W) {
            let bw = (BLOCK_W + 1).min(w - ax);
            let bh = (BLOCK_H + 1).min(h - ay);
            let rows: Block = (0..bh).map(|j| (0..bw).map(|i| b.at(ax + i, ay + j)).collect()).collect();
            if !block_forbidden(&rows) {
                continue;
            }
            let filled = refill(&rows, bw == BLOCK_W + 1, bh == BLOCK_H + 1)?;
            for (j, row) in filled.iter().enumerate() {
                for (i, &bit) in row.iter().enumerate() {
                    out.set_at(ax + i, ay + j, bit);
                }
            }
        }
    }
    Ok(out)
}

/// `G = G2 . G1`. Never fails on grids of any size; the error is kept as a
/// guard on the refilling argument.
pub fn retraction_g(b: &BitGrid) -> Result<BitGrid> {
    g2_step(&g1_step(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parity_tiles;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn flattens_segment_with_unequal_flanks() {
        let b = BitGrid::from_rows(&["10000", "01010"]);
        assert_eq!(g1_step(&b).to_rows(), ["10000", "00000"]);
        let b = BitGrid::from_rows(&["10001", "01010"]);
        assert_eq!(g1_step(&b), b);
    }

    #[test]
    fn alternating_interior_becomes_constant() {
        let b = BitGrid::from_rows(&["00000", "01010", "10101", "01010", "10101", "00000"]);
        let g = retraction_g(&b).unwrap();
        assert!(!has_forbidden(&g));
        assert_eq!(g.to_rows()[0], "00000");
        assert_eq!(g.to_rows()[5], "00000");
    }

    #[test]
    fn random_grids_become_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (w, h) in [(41, 51), (9, 11), (13, 7), (6, 4), (2, 2)] {
            for _ in 0..50 {
                let b = BitGrid::from_fn(w, h, |_, _| rng.gen());
                let g = retraction_g(&b).unwrap();
                assert!(!has_forbidden(&g), "{b:?}");
                assert_eq!(retraction_g(&g).unwrap(), g);
                let tiles = parity_tiles(&g).tiles_used();
                assert!(!tiles.contains(crate::Tile::VERTICAL) && !tiles.contains(crate::Tile::BLACK));
            }
        }
    }
}
