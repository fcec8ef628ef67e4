//! Local generation procedures and per-class samplers.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a class,
//! size and seed always give the same window.

mod correction;
mod extension;
mod retraction;

pub use correction::{block_boundary, fix_bit_grid_4x5, remove_black_tile};
pub use extension::{extend_white_boundary, has_white_boundary, rewrite_step, T4, T7};
pub use retraction::{g1_step, g2_step, has_forbidden, is_forbidden_at, retraction_g};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classification::{self, Verdict};
use crate::error::{Error, Result};
use crate::pattern::{parity_tiles, BitGrid, Cell, Rect, TilePattern};
use crate::solver::{self, Bounds, Csp, Search};
use crate::tile::{Tile, Tileset};

/// How a class samples windows. Every variant except [`Generator::Solver`]
/// is a local procedure on random input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// One of the constant tilings.
    Constant,
    /// A random row of tiles repeated in every row.
    RowCopy,
    /// Either random full rows of horizontal wires or random full columns of vertical ones.
    Wires,
    /// The two checkerboards, picked by seed parity.
    Checkerboard,
    /// A single corner line along `(1,-1)` or a constant tiling.
    DefectLine,
    /// A golden-mean sequence along the anti-diagonals.
    GoldenMean,
    /// Independent wire colors per row and per column.
    Product,
    /// A free sequence along the diagonals.
    Diagonal,
    /// Parity map of random bits.
    Parity,
    /// Parity map after the retraction `G`.
    Retraction,
    /// Parity map followed by black-tile removal.
    RemoveBlackTile,
    /// Random cell-by-cell assignment with solver look-ahead.
    Solver,
}

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_bits(w: usize, h: usize, rng: &mut ChaCha8Rng) -> BitGrid {
    BitGrid::from_fn(w, h, |_, _| rng.gen())
}

fn window(w: usize, h: usize) -> Rect {
    Rect::new(0, 0, w, h)
}

/// Parity image of a random `(w+1) x (h+1)` grid.
pub fn random_even_tiling(w: usize, h: usize, seed: u64) -> TilePattern {
    parity_tiles(&random_bits(w + 1, h + 1, &mut seeded(seed)))
}

/// Samples a window over `ts` one cell at a time, keeping the partial
/// assignment extendable to the enlarged window `margin` cells wider.
pub fn solver_sample(ts: Tileset, w: usize, h: usize, margin: usize, seed: u64) -> Result<TilePattern> {
    let mut rng = seeded(seed);
    let m = margin as i32;
    let outer = Rect::new(-m, -m, w + 2 * margin, h + 2 * margin);
    let mut base = Csp::window(&outer.region(), ts);
    if !base.propagate() {
        return Err(Error::Unsatisfiable);
    }
    let mut cells: Vec<Cell> = window(w, h).cells().collect();
    cells.shuffle(&mut rng);
    for c in cells {
        let mut candidates: Vec<Tile> = base.domain(c).expect("cell in window").tiles().collect();
        candidates.shuffle(&mut rng);
        let pick = candidates.into_iter().find(|&t| {
            let mut trial = base.clone();
            trial.node_limit = Some(1_000_000);
            trial.fix(c, t);
            matches!(trial.is_satisfiable(), Search::Found(()))
        });
        let t = pick.ok_or(Error::Unsatisfiable)?;
        base.fix(c, t);
        base.propagate();
    }
    let sol = base.solve().found().ok_or(Error::Unsatisfiable)?;
    Ok(sol.restrict(&window(w, h).region()))
}

/// Runs a local generator on the tileset it was written for.
pub fn run_generator(g: Generator, ts: Tileset, w: usize, h: usize, seed: u64) -> Result<TilePattern> {
    let mut rng = seeded(seed);
    let rect = window(w, h);
    let p = match g {
        Generator::Constant => {
            let constant: Vec<Tile> = ts.tiles().filter(|t| t.west() == t.east() && t.north() == t.south()).collect();
            let t = *constant.choose(&mut rng).ok_or(Error::Unsatisfiable)?;
            TilePattern::filled(rect, t)
        }
        Generator::RowCopy => {
            let column: Vec<Tile> = ts.tiles().filter(|t| t.north() == t.south()).collect();
            let row = row_word(&column, w, &mut rng)?;
            TilePattern::from_fn(rect, |c| row[c.x as usize])
        }
        Generator::Wires => {
            let bits: Vec<bool> = (0..w.max(h)).map(|_| rng.gen()).collect();
            if rng.gen() {
                TilePattern::from_fn(rect, |c| if bits[c.y as usize] { Tile::HORIZONTAL } else { Tile::WHITE })
            } else {
                TilePattern::from_fn(rect, |c| if bits[c.x as usize] { Tile::VERTICAL } else { Tile::WHITE })
            }
        }
        Generator::Checkerboard => {
            let parity = (seed % 2) as i32;
            TilePattern::from_fn(rect, |c| if (c.x + c.y + parity) % 2 == 0 { Tile::NORTH_EAST } else { Tile::SOUTH_WEST })
        }
        Generator::DefectLine => {
            // The line x + y = k; values outside the window give the constant tilings.
            let k = rng.gen_range(-1..=(w + h) as i32 - 1);
            TilePattern::from_fn(rect, |c| match (c.x + c.y).cmp(&k) {
                std::cmp::Ordering::Less => Tile::HORIZONTAL,
                std::cmp::Ordering::Equal => Tile::WEST_NORTH,
                std::cmp::Ordering::Greater => Tile::VERTICAL,
            })
        }
        Generator::GoldenMean => {
            // z has no `11`; the tile at (i, j) reads (z[i+j], z[i+j+1]) on its west and east edges.
            let b: Vec<bool> = (0..w + h + 1).map(|_| rng.gen()).collect();
            let z: Vec<bool> = (0..b.len()).map(|k| b[k] && (k == 0 || !b[k - 1])).collect();
            TilePattern::from_fn(rect, |c| {
                let s = (c.x + c.y) as usize;
                match (z[s], z[s + 1]) {
                    (false, false) => Tile::WHITE,
                    (false, true) => Tile::NORTH_EAST,
                    (true, false) => Tile::SOUTH_WEST,
                    (true, true) => unreachable!("no 11 in z"),
                }
            })
        }
        Generator::Product => {
            let rows: Vec<bool> = (0..h).map(|_| rng.gen()).collect();
            let cols: Vec<bool> = (0..w).map(|_| rng.gen()).collect();
            TilePattern::from_fn(rect, |c| {
                let (hb, vb) = (rows[c.y as usize], cols[c.x as usize]);
                Tile::from_edges(hb, vb, hb, vb)
            })
        }
        Generator::Diagonal => {
            // The tile at (i, j) has west edge z[i-j] and east edge z[i-j+1].
            let z: Vec<bool> = (0..w + h + 1).map(|_| rng.gen()).collect();
            TilePattern::from_fn(rect, |c| {
                let s = (c.x - c.y + h as i32) as usize;
                Tile::from_edges(z[s], z[s], z[s + 1], z[s + 1])
            })
        }
        Generator::Parity => parity_tiles(&random_bits(w + 1, h + 1, &mut rng)),
        Generator::Retraction => parity_tiles(&retraction_g(&random_bits(w + 1, h + 1, &mut rng))?),
        Generator::RemoveBlackTile => {
            let bw = w.div_ceil(3).max(1) * 3;
            let bh = h.div_ceil(4).max(1) * 4;
            let p = parity_tiles(&random_bits(bw + 1, bh + 1, &mut rng));
            remove_black_tile(&p)?.restrict(&rect.region())
        }
        Generator::Solver => return solver_sample(ts, w, h, 2, seed),
    };
    debug_assert!(p.is_locally_valid());
    Ok(p)
}

fn row_word(tiles: &[Tile], w: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Tile>> {
    let mut row: Vec<Tile> = Vec::with_capacity(w);
    for _ in 0..w {
        let options: Vec<Tile> = tiles.iter().copied().filter(|t| row.last().is_none_or(|p: &Tile| p.east() == t.west())).collect();
        row.push(*options.choose(rng).ok_or(Error::Unsatisfiable)?);
    }
    Ok(row)
}

/// Samples a `width x height` window of the class `class_id` with its
/// registered generator, or by solver sampling over the usable tiles for
/// classes without one.
pub fn generate(class_id: &str, width: usize, height: usize, seed: u64) -> Result<TilePattern> {
    let rec = classification::find(class_id).ok_or_else(|| Error::UnknownClass(class_id.to_string()))?;
    if rec.verdict == Verdict::Empty {
        return Err(Error::EmptyClass(rec.id.clone()));
    }
    match rec.generator {
        Some(g) => run_generator(g, rec.representative, width, height, seed),
        None => {
            let usable = match solver::unused_tiles(rec.representative, &Bounds::default()) {
                Ok(unused) => Tileset::from_mask(rec.representative.mask() & !unused.mask()),
                Err(_) => rec.representative,
            };
            solver_sample(usable, width, height, 2, seed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_tile_class_is_constant() {
        let p = generate("6.1.1", 5, 4, 0).unwrap();
        assert_eq!(p, TilePattern::filled(window(5, 4), Tile::WHITE));
    }

    #[test]
    fn checkerboards_by_seed() {
        let a = generate("6.2.4", 4, 4, 0).unwrap();
        let b = generate("6.2.4", 4, 4, 1).unwrap();
        assert_ne!(a, b);
        assert!(a.is_locally_valid() && b.is_locally_valid());
        assert_eq!(a.get(Cell::ORIGIN), b.get(Cell::new(1, 0)));
    }

    #[test]
    fn empty_and_unknown_classes() {
        assert!(matches!(generate("6.1.2", 3, 3, 0), Err(Error::EmptyClass(_))));
        assert!(matches!(generate("9.9.9", 3, 3, 0), Err(Error::UnknownClass(_))));
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(generate("6.8.1", 6, 6, 7).unwrap(), generate("6.8.1", 6, 6, 7).unwrap());
        assert_eq!(generate("6.4.9", 6, 6, 7).unwrap(), generate("6.4.9", 6, 6, 7).unwrap());
    }
}
