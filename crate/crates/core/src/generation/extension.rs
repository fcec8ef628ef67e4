//! Extending a square pattern of white-and-corner tilings to a pattern four
//! times as wide whose outer boundary is white.
//!
//! Above the input, row `i` of a strip turns the word `u_i` on its south
//! edges into `u_{i+1}` on its north edges, each `01` shifting its `1` one
//! step left and every other `1` disappearing, so the strip ends white. The
//! strip to the right is the same construction after a diagonal flip. The
//! remaining quadrant is white and the three other quadrants are mirror
//! copies, which match along the mirror axes by construction.

use crate::error::{Error, Result};
use crate::pattern::{Cell, Rect, TilePattern};
use crate::tile::{Tile, Tileset};

/// `0000` and the four corners.
pub const T4: Tileset = Tileset::from_mask(1 << 0b0000 | 1 << 0b0011 | 1 << 0b0110 | 1 << 0b1001 | 1 << 0b1100);
/// [`T4`] with the black tile.
pub const T7: Tileset = T4.union(Tileset::from_mask(1 << 0b1111));

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    Zero,
    ZeroOne,
    OneOne,
    LeadingOne,
}

/// The unique split of `u` into `11`, `01`, `0` and an optional leading `1`,
/// as `(start, token)` pairs from left to right.
fn tokens(u: &[bool]) -> Vec<(usize, Token)> {
    let mut out = Vec::new();
    let mut k = u.len();
    while k > 0 {
        let tok = match (k >= 2).then(|| u[k - 2]) {
            _ if !u[k - 1] => Token::Zero,
            Some(true) => Token::OneOne,
            Some(false) => Token::ZeroOne,
            None => Token::LeadingOne,
        };
        let len = if matches!(tok, Token::ZeroOne | Token::OneOne) { 2 } else { 1 };
        k -= len;
        out.push((k, tok));
    }
    out.reverse();
    out
}

/// One rewrite step: `11 -> 00`, `01 -> 10`, `0 -> 0`, leading `1 -> 0`.
pub fn rewrite_step(u: &[bool]) -> Vec<bool> {
    let mut v = vec![false; u.len()];
    for (k, tok) in tokens(u) {
        if tok == Token::ZeroOne {
            v[k] = true;
        }
    }
    v
}

/// The row of tiles carrying `u` on its south edges and `rewrite_step(u)` on
/// its north edges, with a white east end.
fn strip_row(u: &[bool]) -> Vec<Tile> {
    let mut row = vec![Tile::WHITE; u.len()];
    for (k, tok) in tokens(u) {
        match tok {
            Token::Zero => {}
            Token::ZeroOne => {
                row[k] = Tile::NORTH_EAST;
                row[k + 1] = Tile::SOUTH_WEST;
            }
            Token::OneOne => {
                row[k] = Tile::EAST_SOUTH;
                row[k + 1] = Tile::SOUTH_WEST;
            }
            Token::LeadingOne => row[k] = Tile::SOUTH_WEST,
        }
    }
    row
}

fn transpose_tile(t: Tile) -> Tile {
    Tile::from_edges(t.south(), t.east(), t.north(), t.west())
}

fn mirror_x(t: Tile) -> Tile {
    Tile::from_edges(t.east(), t.north(), t.west(), t.south())
}

fn mirror_y(t: Tile) -> Tile {
    Tile::from_edges(t.west(), t.south(), t.east(), t.north())
}

/// The `n x n` strip above `p` (on `[0,n-1]^2`), as a pattern on `[0,n-1] x [n,2n-1]`.
fn upper_strip(p: &TilePattern, n: usize) -> TilePattern {
    let top = n as i32 - 1;
    let mut u: Vec<bool> = (0..n as i32).map(|x| p.get(Cell::new(x, top)).expect("square input").north()).collect();
    let mut out = TilePattern::new();
    for i in 0..n as i32 {
        for (x, t) in strip_row(&u).into_iter().enumerate() {
            out.insert(Cell::new(x as i32, n as i32 + i), t);
        }
        u = rewrite_step(&u);
    }
    out
}

fn transpose(p: &TilePattern) -> TilePattern {
    p.iter().map(|(c, t)| (Cell::new(c.y, c.x), transpose_tile(t))).collect()
}

/// Extends a valid pattern on `[0,n-1]^2` over `T4` or `T7` (or any tileset
/// containing `T4` and closed under the flips) to `[-2n,2n-1]^2` with every
/// outward edge white.
pub fn extend_white_boundary(p: &TilePattern, ts: Tileset) -> Result<TilePattern> {
    let r = p.rect()?;
    if r.x0 != 0 || r.y0 != 0 || r.width != r.height {
        return Err(Error::DimensionMismatch { width: r.width, height: r.height, block_w: r.width.max(r.height), block_h: r.width.max(r.height) });
    }
    let closed = ts.tiles().all(|t| [transpose_tile(t), mirror_x(t), mirror_y(t)].into_iter().all(|s| ts.contains(s)));
    if !T4.is_subset(ts) || !closed || !p.tiles_used().is_subset(ts) || !p.is_locally_valid() {
        return Err(Error::InvalidPattern);
    }
    let n = r.width;
    let mut quadrant = p.clone();
    quadrant.extend_with(&upper_strip(p, n));
    quadrant.extend_with(&transpose(&upper_strip(&transpose(p), n)));
    let n = n as i32;
    for c in Rect::new(n, n, n as usize, n as usize).cells() {
        quadrant.insert(c, Tile::WHITE);
    }
    let mut out = TilePattern::new();
    for (c, t) in quadrant.iter() {
        out.insert(c, t);
        out.insert(Cell::new(-1 - c.x, c.y), mirror_x(t));
        out.insert(Cell::new(c.x, -1 - c.y), mirror_y(t));
        out.insert(Cell::new(-1 - c.x, -1 - c.y), mirror_x(mirror_y(t)));
    }
    Ok(out)
}

/// True when every outward edge of a rectangular pattern is white.
pub fn has_white_boundary(p: &TilePattern) -> bool {
    let Ok(r) = p.rect() else { return false };
    let at = |x: i32, y: i32| p.get(Cell::new(x, y)).expect("rectangular");
    let (x1, y1) = (r.x1() - 1, r.y1() - 1);
    (r.x0..=x1).all(|x| !at(x, r.y0).south() && !at(x, y1).north()) && (r.y0..=y1).all(|y| !at(r.x0, y).west() && !at(x1, y).east())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Csp;

    fn word(s: &str) -> Vec<bool> {
        s.bytes().map(|b| b == b'1').collect()
    }

    #[test]
    fn rewrite_examples() {
        assert_eq!(rewrite_step(&word("0101")), word("1010"));
        assert_eq!(rewrite_step(&word("1010")), word("0100"));
        assert_eq!(rewrite_step(&word("1101")), word("0010"));
        assert_eq!(rewrite_step(&word("0111")), word("1000"));
    }

    #[test]
    fn rewrite_reaches_zero_within_length_steps() {
        for n in 1..=10usize {
            for code in 0u32..1 << n {
                let mut u: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
                for _ in 0..n {
                    u = rewrite_step(&u);
                }
                assert!(u.iter().all(|&b| !b), "n={n} code={code}");
            }
        }
    }

    #[test]
    fn strip_rows_connect() {
        for code in 0u32..1 << 6 {
            let u: Vec<bool> = (0..6).map(|i| code >> i & 1 == 1).collect();
            let row = strip_row(&u);
            let v = rewrite_step(&u);
            for (k, t) in row.iter().enumerate() {
                assert!(T4.contains(*t));
                assert_eq!(t.south(), u[k]);
                assert_eq!(t.north(), v[k]);
                if k + 1 < row.len() {
                    assert_eq!(t.east(), row[k + 1].west());
                }
            }
            assert!(!row[5].east());
        }
    }

    #[test]
    fn white_input_gives_white_extension() {
        let p = TilePattern::filled(Rect::new(0, 0, 3, 3), Tile::WHITE);
        let e = extend_white_boundary(&p, T4).unwrap();
        assert_eq!(e, TilePattern::filled(Rect::new(-6, -6, 12, 12), Tile::WHITE));
    }

    #[test]
    fn t7_patterns_extend() {
        let mut csp = Csp::window(&Rect::new(0, 0, 2, 2).region(), T7);
        for p in csp.enumerate(usize::MAX).unwrap() {
            let e = extend_white_boundary(&p, T7).unwrap();
            assert!(e.is_locally_valid() && has_white_boundary(&e));
            assert_eq!(e.restrict(&Rect::new(0, 0, 2, 2).region()), p);
            assert!(e.tiles_used().is_subset(T7));
        }
    }
}
