//! Stair configurations used as ramification witnesses.
//!
//! A diagonal run of one tile forces the triangle below it, down to a cell
//! `C` at the bottom-right corner. Copies of this triangle are laid along
//! `v = (n, 1)` inside a slanted band with white outside, and the column
//! below each `C` is kept free of `C`'s tile. The band content is found by
//! the solver on the cylinder `Z^2 / vZ`, so the result is a genuine
//! `v`-periodic configuration; whether it is a ramification is left to
//! [`verify_ramification`](super::verify_ramification).

use serde::Serialize;

use super::csp::{Csp, Search};
use crate::pattern::{Cell, Rect, TilePattern};
use crate::tile::{Tile, Tileset};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StairWitness {
    /// Tiles the configuration is built from.
    pub tileset: Tileset,
    pub r: usize,
    /// Horizontal period: `v = (n, 1)`.
    pub n: i32,
    pub u: Cell,
    pub v: Cell,
    /// Tile of the forced cells at `lambda * v`.
    pub green: Tile,
    /// Length of each forcing diagonal.
    pub diagonal_len: usize,
    /// Band content on the fundamental domain `0 <= x < n`.
    pub band: TilePattern,
    /// Band is `lo <= n*y - x <= hi`.
    pub lo: i32,
    pub hi: i32,
}

impl StairWitness {
    pub fn tile_at(&self, c: Cell) -> Tile {
        let k = c.x.div_euclid(self.n);
        let p = Cell::new(c.x - k * self.n, c.y - k);
        self.band.get(p).unwrap_or(Tile::WHITE)
    }

    pub fn materialize(&self, rect: Rect) -> TilePattern {
        TilePattern::from_fn(rect, |c| self.tile_at(c))
    }

    /// A window covering the green cells `lambda * v` for `lambda` in
    /// `0..copies` with room for grafts of radius `r` and `depth` red cells.
    pub fn window(&self, copies: i32, depth: i32) -> Rect {
        let pad = self.r as i32 + 2;
        let d = self.diagonal_len as i32;
        let x0 = -d - pad;
        let x1 = (copies - 1) * self.n + pad;
        let y0 = -depth - pad;
        let y1 = copies - 1 + d + pad;
        Rect::new(x0, y0, (x1 - x0 + 1) as usize, (y1 - y0 + 1) as usize)
    }
}

/// Periods `n` are tried from `2R + slack` upward, `R` being the diagonal's extent.
fn build(ts: Tileset, diag: Tile, green: Tile, r: usize, slack: i32) -> Option<StairWitness> {
    // The diagonal must stay outside the r-neighborhood of the green cell.
    let big_r = 2 * r as i32 + 2;
    for n in 2 * big_r + slack..=3 * big_r + 6 {
        for (below, above) in [(2, 2), (4, 4), (6, 6)] {
            let lo = -(below + 1) * n;
            let hi = (big_r + above + 1) * n;
            let phi = |c: Cell| n * c.y - c.x;
            let mut cells = Vec::new();
            for x in 0..n {
                let ymin = (lo + x).div_euclid(n) - 1;
                let ymax = (hi + x).div_euclid(n) + 1;
                for y in ymin..=ymax {
                    let c = Cell::new(x, y);
                    if (lo..=hi).contains(&phi(c)) {
                        cells.push(c);
                    }
                }
            }
            let canon = |c: Cell| {
                let k = c.x.div_euclid(n);
                let p = Cell::new(c.x - k * n, c.y - k);
                (lo..=hi).contains(&phi(p)).then_some(p)
            };
            let mut csp = Csp::with_topology(cells.clone(), ts, canon);
            for &c in &cells {
                let f = phi(c);
                if f < lo + n || f > hi - n {
                    csp.fix(c, Tile::WHITE);
                }
            }
            for k in 0..=big_r {
                if let Some(c) = canon(Cell::new(k - big_r, k)) {
                    csp.fix(c, diag);
                }
            }
            csp.fix(Cell::ORIGIN, green);
            for mu in 1.. {
                let Some(c) = canon(Cell::new(0, -mu)) else { break };
                csp.restrict(c, ts.without(green));
            }
            csp.node_limit = Some(100_000_000);
            csp.fail_first = true;
            if let Search::Found(band) = csp.solve() {
                return Some(StairWitness {
                    tileset: ts,
                    r,
                    n,
                    u: Cell::new(0, -1),
                    v: Cell::new(n, 1),
                    green,
                    diagonal_len: big_r as usize + 1,
                    band,
                    lo,
                    hi,
                });
            }
        }
    }
    None
}

/// Stairs of corner tiles on white, built from the corners and the white tile.
pub fn corner_stairs(r: usize) -> Option<StairWitness> {
    let ts: Tileset = [Tile::WHITE, Tile::WEST_NORTH, Tile::NORTH_EAST, Tile::EAST_SOUTH, Tile::SOUTH_WEST].into_iter().collect();
    build(ts, Tile::SOUTH_WEST, Tile::SOUTH_WEST, r, 3)
}

/// Stairs of horizontal wires, built from white, the horizontal wire and
/// the corners `1100` and `0011`.
pub fn wire_stairs(r: usize) -> Option<StairWitness> {
    let ts: Tileset = [Tile::WHITE, Tile::HORIZONTAL, Tile::WEST_NORTH, Tile::EAST_SOUTH].into_iter().collect();
    build(ts, Tile::HORIZONTAL, Tile::HORIZONTAL, r, 2)
}
