//! Finite-window facts about tileset subshifts: completion, forced cells,
//! periodic and line-periodic certificates, emptiness and unused tiles,
//! independence probes, grafts and ramification checks.

mod csp;
mod graft;
mod independence;
mod stairs;
mod witness;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use csp::{Csp, Search};
pub use graft::{can_graft, verify_ramification, Graft, RamificationCheck, RamificationReport};
pub use independence::{check_independence, margin_valid_patterns, Independence, IndependenceLimits};
pub use stairs::{corner_stairs, wire_stairs, StairWitness};
pub use witness::{find_line_periodic, find_periodic, find_periodic_with, find_strip, LineWitness, PeriodicWitness, StripWitness, Witness};

use crate::pattern::{Cell, Rect, Region, TilePattern};
use crate::tile::{Tile, Tileset};

/// A finite search problem: fill `free` so that, together with `frozen`,
/// every adjacent pair matches. Cells outside the window are unconstrained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub rect: Rect,
    pub frozen: TilePattern,
    pub free: Region,
    pub tileset: Tileset,
    /// Optional per-cell narrowing of the tileset for free cells.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub restrictions: BTreeMap<Cell, Tileset>,
}

impl Window {
    /// Every cell of `rect` free.
    pub fn new(rect: Rect, tileset: Tileset) -> Window {
        Window { rect, frozen: TilePattern::new(), free: rect.region(), tileset, restrictions: BTreeMap::new() }
    }

    /// A window over an arbitrary region; `rect` is its bounding box.
    pub fn over(region: &Region, tileset: Tileset) -> Window {
        let rect = crate::pattern::bounding_rect(region).unwrap_or(Rect::new(0, 0, 0, 0));
        Window { rect, frozen: TilePattern::new(), free: region.clone(), tileset, restrictions: BTreeMap::new() }
    }

    /// Freezes the cells of `p`; cells outside the current region are added.
    pub fn freeze(mut self, p: &TilePattern) -> Window {
        for (c, t) in p.iter() {
            self.free.remove(&c);
            self.frozen.insert(c, t);
        }
        self.refresh_rect();
        self
    }

    pub fn restrict(mut self, c: Cell, allowed: Tileset) -> Window {
        let cur = self.restrictions.get(&c).copied().unwrap_or(Tileset::ALL);
        self.restrictions.insert(c, Tileset::from_mask(cur.mask() & allowed.mask()));
        self
    }

    fn refresh_rect(&mut self) {
        let all: Region = self.region();
        if let Some(r) = crate::pattern::bounding_rect(&all) {
            self.rect = r;
        }
    }

    /// Frozen and free cells together.
    pub fn region(&self) -> Region {
        self.free.iter().copied().chain(self.frozen.domain()).collect()
    }

    pub(crate) fn to_csp(&self) -> Csp {
        let mut csp = Csp::window(&self.region(), self.tileset);
        csp.fix_pattern(&self.frozen);
        for (&c, &ts) in &self.restrictions {
            csp.restrict(c, ts);
        }
        csp
    }
}

/// A window with no locally valid filling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unsatisfiable {
    pub window: Box<Window>,
}

impl fmt::Display for Unsatisfiable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no valid filling of a {}x{} window over {{{}}}", self.window.rect.width, self.window.rect.height, self.window.tileset)
    }
}

impl std::error::Error for Unsatisfiable {}

impl From<Unsatisfiable> for crate::Error {
    fn from(_: Unsatisfiable) -> crate::Error {
        crate::Error::Unsatisfiable
    }
}

/// First locally valid filling of the window in the fixed search order.
pub fn complete(w: &Window) -> Result<TilePattern, Unsatisfiable> {
    match w.to_csp().solve() {
        Search::Found(p) => Ok(p),
        _ => Err(Unsatisfiable { window: Box::new(w.clone()) }),
    }
}

/// Free cells that carry the same tile in every completion.
pub fn forced_cells(w: &Window) -> Result<BTreeMap<Cell, Tile>, Unsatisfiable> {
    let base = complete(w)?;
    let mut root = w.to_csp();
    root.propagate();
    let mut candidates: BTreeMap<Cell, Tile> = w.free.iter().map(|&c| (c, base.get(c).expect("complete covers window"))).collect();
    let cells: Vec<Cell> = candidates.keys().copied().collect();
    for c in cells {
        let Some(&t) = candidates.get(&c) else { continue };
        let others = root.domain(c).unwrap_or(Tileset::EMPTY).without(t);
        for alt in others.tiles() {
            let mut csp = root.clone();
            csp.fix(c, alt);
            if let Search::Found(sol) = csp.solve() {
                candidates.retain(|d, td| sol.get(*d) == Some(*td));
                break;
            }
        }
    }
    Ok(candidates)
}

/// Search bounds for emptiness and usage certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Largest `k` for which `[-k, k]^2` is tried.
    pub k_max: usize,
    /// Largest torus side (and line period) tried for witnesses.
    pub max_period: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { k_max: 6, max_period: 4 }
    }
}

/// Neither certificate fired within the bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Undecided {
    pub tileset: Tileset,
    pub tile: Option<Tile>,
    pub bounds: Bounds,
}

impl fmt::Display for Undecided {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tile {
            Some(t) => write!(f, "usage of {t} in {{{}}} undecided within k <= {}, period <= {}", self.tileset, self.bounds.k_max, self.bounds.max_period),
            None => write!(f, "emptiness of {{{}}} undecided within k <= {}, period <= {}", self.tileset, self.bounds.k_max, self.bounds.max_period),
        }
    }
}

impl std::error::Error for Undecided {}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Emptiness {
    /// No locally valid filling of `[-k, k]^2`.
    Empty { k: usize },
    NonEmpty { witness: Witness },
}

impl Emptiness {
    pub fn is_empty(&self) -> bool {
        matches!(self, Emptiness::Empty { .. })
    }
}

fn square_satisfiable(ts: Tileset, k: usize, center: Option<Tile>) -> bool {
    let mut w = Window::new(Rect::centered(k), ts);
    if let Some(t) = center {
        w = w.freeze(&[(Cell::ORIGIN, t)].into_iter().collect());
    }
    complete(&w).is_ok()
}

pub fn is_empty(ts: Tileset, bounds: &Bounds) -> Result<Emptiness, Undecided> {
    if ts.is_empty() {
        return Ok(Emptiness::Empty { k: 0 });
    }
    if let Some(w) = find_periodic(ts, bounds.max_period, bounds.max_period) {
        return Ok(Emptiness::NonEmpty { witness: Witness::Periodic(w) });
    }
    for t in ts.tiles() {
        if let Some(w) = find_line_periodic(ts, t) {
            return Ok(Emptiness::NonEmpty { witness: Witness::Line(w) });
        }
        if let Some(w) = find_strip(ts, t, bounds.max_period) {
            return Ok(Emptiness::NonEmpty { witness: Witness::Strip(w) });
        }
    }
    for k in 0..=bounds.k_max {
        if !square_satisfiable(ts, k, None) {
            return Ok(Emptiness::Empty { k });
        }
    }
    Err(Undecided { tileset: ts, tile: None, bounds: *bounds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TileUsage {
    /// Some configuration of the plane contains the tile.
    Used { witness: Witness },
    /// `[-k, k]^2` with the tile at the origin has no valid filling.
    Unused { k: usize },
}

pub fn tile_usage(ts: Tileset, t: Tile, bounds: &Bounds) -> Result<TileUsage, Undecided> {
    if !ts.contains(t) {
        return Ok(TileUsage::Unused { k: 0 });
    }
    if let Some(w) = find_periodic_with(ts, bounds.max_period, bounds.max_period, Some(t)) {
        return Ok(TileUsage::Used { witness: Witness::Periodic(w) });
    }
    if let Some(w) = find_line_periodic(ts, t) {
        return Ok(TileUsage::Used { witness: Witness::Line(w) });
    }
    if let Some(w) = find_strip(ts, t, bounds.max_period) {
        return Ok(TileUsage::Used { witness: Witness::Strip(w) });
    }
    for k in 0..=bounds.k_max {
        if !square_satisfiable(ts, k, Some(t)) {
            return Ok(TileUsage::Unused { k });
        }
    }
    Err(Undecided { tileset: ts, tile: Some(t), bounds: *bounds })
}

/// Tiles of `ts` that appear in no configuration.
pub fn unused_tiles(ts: Tileset, bounds: &Bounds) -> Result<Tileset, Undecided> {
    let mut out = Tileset::EMPTY;
    for t in ts.tiles() {
        if let TileUsage::Unused { .. } = tile_usage(ts, t, bounds)? {
            out = out.with(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::diagonal;

    fn ts(s: &str) -> Tileset {
        s.parse().unwrap()
    }

    fn t(s: &str) -> Tile {
        s.parse().unwrap()
    }

    #[test]
    fn complete_basic() {
        let w = Window::new(Rect::new(0, 0, 3, 3), ts("0000"));
        assert_eq!(complete(&w).unwrap(), TilePattern::filled(Rect::new(0, 0, 3, 3), Tile::WHITE));
        assert!(complete(&Window::new(Rect::new(0, 0, 2, 2), ts("1100"))).is_err());
    }

    #[test]
    fn t7_diagonal_forces_lower_triangle() {
        let t7 = ts("0000,0011,0110,1001,1100,1111");
        let d = TilePattern::filled_region(&diagonal(Cell::ORIGIN, 5), t("1001"));
        let w = Window::new(Rect::new(0, 0, 5, 5), t7).freeze(&d);
        let forced = forced_cells(&w).unwrap();
        assert_eq!(forced.get(&Cell::new(4, 0)), Some(&t("1001")));
        for x in 0..5 {
            for y in 0..x {
                assert!(forced.contains_key(&Cell::new(x, y)), "({x},{y}) not forced");
            }
        }
    }

    #[test]
    fn free_even_window_forces_nothing() {
        let w = Window::new(Rect::new(0, 0, 3, 3), Tileset::EVEN);
        assert!(forced_cells(&w).unwrap().is_empty());
    }

    #[test]
    fn emptiness_examples() {
        let b = Bounds::default();
        assert!(is_empty(ts("1100"), &b).unwrap().is_empty());
        assert!(is_empty(ts("0011,0110"), &b).unwrap().is_empty());
        assert!(!is_empty(ts("0110,1001"), &b).unwrap().is_empty());
        assert!(!is_empty(ts("0101,1010,1100"), &b).unwrap().is_empty());
    }

    #[test]
    fn unused_examples() {
        let b = Bounds::default();
        assert_eq!(unused_tiles(ts("0000,1100"), &b).unwrap(), ts("1100"));
        assert_eq!(unused_tiles(ts("0011,0110,1100"), &b).unwrap(), ts("0110"));
        assert_eq!(unused_tiles(Tileset::EVEN, &b).unwrap(), Tileset::EMPTY);
        // The corner of the countable class only occurs on a defect line.
        assert_eq!(unused_tiles(ts("0101,1010,1100"), &b).unwrap(), Tileset::EMPTY);
    }
}
