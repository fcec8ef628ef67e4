//! Grafts and ramifications checked inside a finite window.

use serde::Serialize;

use super::csp::{Csp, Search};
use crate::pattern::{neighborhood, Cell, Region, TilePattern};
use crate::tile::Tileset;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Graft {
    /// A valid pattern on the window of `x` that agrees with `x` outside the
    /// modification region and carries the target at `p`.
    Witness { y: TilePattern },
    /// No such pattern exists inside the window, hence none in the plane.
    NotGraftableWithin { cells: usize },
}

impl Graft {
    pub fn is_graftable(&self) -> bool {
        matches!(self, Graft::Witness { .. })
    }
}

/// Tries to place `target` (a pattern on `f`) at `p` in `x`, changing `x`
/// only inside `N(p + f, r)`.
///
/// `x` should be a valid pattern whose domain strictly contains the
/// modification region; cells of the region outside `x` are ignored.
pub fn can_graft(x: &TilePattern, ts: Tileset, f: &Region, p: Cell, r: usize, target: &TilePattern) -> Graft {
    let placed: Region = f.iter().map(|c| c.add(p)).collect();
    let modifiable: Region = neighborhood(&placed, r).into_iter().filter(|c| x.contains(*c)).collect();
    // Only the modification region and its frozen rim interact.
    let region: Region = neighborhood(&modifiable, 1).into_iter().filter(|c| x.contains(*c)).collect();
    let mut csp = Csp::window(&region, ts);
    for &c in &region {
        if !modifiable.contains(&c) {
            csp.fix(c, x.get(c).expect("region inside x"));
        }
    }
    for (q, t) in target.iter() {
        let c = q.add(p);
        if !region.contains(&c) {
            return Graft::NotGraftableWithin { cells: 0 };
        }
        csp.fix(c, t);
    }
    match csp.solve() {
        Search::Found(sol) => {
            let mut y = x.clone();
            y.extend_with(&sol);
            Graft::Witness { y }
        }
        _ => Graft::NotGraftableWithin { cells: modifiable.len() },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationCheck {
    pub lambda: i32,
    pub mu: i32,
    pub graftable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationReport {
    pub holds: bool,
    pub checks: Vec<RamificationCheck>,
}

/// For every tested `lambda` and `mu > 0`, the `f`-pattern of `x` at
/// `mu * u + lambda * v` must fail to `r`-graft at `lambda * v`.
#[allow(clippy::too_many_arguments)]
pub fn verify_ramification(x: &TilePattern, ts: Tileset, u: Cell, v: Cell, f: &Region, r: usize, lambdas: &[i32], mus: &[i32]) -> RamificationReport {
    let mut checks = Vec::new();
    for &lambda in lambdas {
        for &mu in mus.iter().filter(|&&m| m > 0) {
            let at = Cell::new(lambda * v.x, lambda * v.y);
            let src = Cell::new(mu * u.x + at.x, mu * u.y + at.y);
            let target: Option<TilePattern> = f.iter().map(|&q| x.get(q.add(src)).map(|t| (q, t))).collect();
            let graftable = match target {
                Some(target) => can_graft(x, ts, f, at, r, &target).is_graftable(),
                // The witness does not cover the source pattern.
                None => true,
            };
            checks.push(RamificationCheck { lambda, mu, graftable });
        }
    }
    let holds = !checks.is_empty() && checks.iter().all(|c| !c.graftable);
    RamificationReport { holds, checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Rect;
    use crate::tile::Tile;

    #[test]
    fn grafting_own_pattern_succeeds() {
        let x = TilePattern::filled(Rect::centered(4), Tile::WHITE);
        let f: Region = [Cell::ORIGIN].into();
        let target: TilePattern = [(Cell::ORIGIN, Tile::WHITE)].into_iter().collect();
        assert!(can_graft(&x, Tileset::EVEN, &f, Cell::new(1, 1), 1, &target).is_graftable());
    }

    #[test]
    fn white_plane_is_no_ramification() {
        let x = TilePattern::filled(Rect::centered(8), Tile::WHITE);
        let f: Region = [Cell::ORIGIN].into();
        for r in 1..=2 {
            let rep = verify_ramification(&x, Tileset::EVEN, Cell::new(0, -1), Cell::new(3, 1), &f, r, &[0, 1], &[1, 2]);
            assert!(!rep.holds);
        }
    }

    #[test]
    fn black_tile_grafts_into_white_plane() {
        let x = TilePattern::filled(Rect::centered(4), Tile::WHITE);
        let f: Region = [Cell::ORIGIN].into();
        let target: TilePattern = [(Cell::ORIGIN, Tile::BLACK)].into_iter().collect();
        assert!(!can_graft(&x, Tileset::EVEN, &f, Cell::ORIGIN, 0, &target).is_graftable());
        assert!(can_graft(&x, Tileset::EVEN, &f, Cell::ORIGIN, 1, &target).is_graftable());
    }
}
