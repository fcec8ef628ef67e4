//! Edge-matching constraint engine shared by every finite-window search.
//!
//! Cells carry a 16-bit domain of candidate tiles. Adjacent cells are linked
//! through their shared edge and kept arc-consistent; search branches on the
//! first undecided cell in row-major order and tries tiles in increasing code
//! order, so results are reproducible.

use std::collections::HashMap;

use crate::pattern::{Cell, Region, TilePattern};
use crate::tile::{Edge, Tile, Tileset};

/// Tiles of `ts` grouped by the color of each edge: `by_edge[e][color]`.
#[derive(Clone, Copy, Debug)]
struct EdgeMasks {
    by_edge: [[u16; 2]; 4],
}

impl EdgeMasks {
    fn new() -> EdgeMasks {
        let mut by_edge = [[0u16; 2]; 4];
        for t in Tile::all() {
            for e in Edge::ALL {
                by_edge[e.index()][t.edge(e) as usize] |= 1 << t.code();
            }
        }
        EdgeMasks { by_edge }
    }

    /// Tiles whose `to` edge can face a tile from `dom` across that tile's `from` edge.
    #[inline]
    fn support(&self, dom: u16, from: Edge, to: Edge) -> u16 {
        let f = &self.by_edge[from.index()];
        let t = &self.by_edge[to.index()];
        let mut out = 0;
        if dom & f[0] != 0 {
            out |= t[0];
        }
        if dom & f[1] != 0 {
            out |= t[1];
        }
        out
    }
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Exhausted,
    LimitReached,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Neighbor slots: 0 = east, 1 = north, 2 = west, 3 = south.
const DIRS: [(Edge, Edge); 4] = [
    (Edge::East, Edge::West),
    (Edge::North, Edge::South),
    (Edge::West, Edge::East),
    (Edge::South, Edge::North),
];

#[derive(Clone, Debug)]
pub struct Csp {
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
    nbr: Vec<[Option<usize>; 4]>,
    dom: Vec<u16>,
    masks: EdgeMasks,
    trail: Vec<(usize, u16)>,
    pub node_limit: Option<u64>,
    /// Branch on the undecided cell with the fewest candidates (ties broken
    /// row-major) instead of the first undecided cell.
    pub fail_first: bool,
    nodes: u64,
}

impl Csp {
    /// A plane window over `region`: cells outside the region are unconstrained.
    pub fn window(region: &Region, tileset: Tileset) -> Csp {
        Csp::with_topology(region.iter().copied().collect(), tileset, Some)
    }

    /// The torus `Z^2 / (aZ x bZ)` on `[0, a) x [0, b)`.
    pub fn torus(a: usize, b: usize, tileset: Tileset) -> Csp {
        let (a, b) = (a as i32, b as i32);
        let cells = (0..b).flat_map(|y| (0..a).map(move |x| Cell::new(x, y))).collect();
        Csp::with_topology(cells, tileset, move |c| Some(Cell::new(c.x.rem_euclid(a), c.y.rem_euclid(b))))
    }

    /// Cells listed explicitly; `canon` maps any lattice cell to its
    /// representative (or `None` when it lies outside the searched domain).
    pub fn with_topology(mut cells: Vec<Cell>, tileset: Tileset, canon: impl Fn(Cell) -> Option<Cell>) -> Csp {
        cells.sort();
        cells.dedup();
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let offsets = [(1, 0), (0, 1), (-1, 0), (0, -1)];
        let nbr = cells
            .iter()
            .map(|&c| {
                let mut n = [None; 4];
                for (k, (dx, dy)) in offsets.iter().enumerate() {
                    n[k] = canon(c.offset(*dx, *dy)).and_then(|d| index.get(&d).copied());
                }
                n
            })
            .collect();
        let dom = vec![tileset.mask(); cells.len()];
        Csp { cells, index, nbr, dom, masks: EdgeMasks::new(), trail: Vec::new(), node_limit: None, fail_first: false, nodes: 0 }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.index.contains_key(&c)
    }

    pub fn domain(&self, c: Cell) -> Option<Tileset> {
        self.index.get(&c).map(|&i| Tileset::from_mask(self.dom[i]))
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Intersects the domain of `c` with `allowed`. Cells outside the CSP are ignored.
    pub fn restrict(&mut self, c: Cell, allowed: Tileset) {
        if let Some(&i) = self.index.get(&c) {
            self.dom[i] &= allowed.mask();
        }
    }

    pub fn fix(&mut self, c: Cell, t: Tile) {
        self.restrict(c, Tileset::from_mask(1 << t.code()));
    }

    pub fn fix_pattern(&mut self, p: &TilePattern) {
        for (c, t) in p.iter() {
            self.fix(c, t);
        }
    }

    fn set(&mut self, i: usize, d: u16) {
        if self.dom[i] != d {
            self.trail.push((i, self.dom[i]));
            self.dom[i] = d;
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (i, d) = self.trail.pop().expect("len > mark");
            self.dom[i] = d;
        }
    }

    /// Arc consistency from the given seeds; false on a wipe-out.
    fn propagate_from(&mut self, seeds: impl IntoIterator<Item = usize>) -> bool {
        let mut queue: Vec<usize> = seeds.into_iter().collect();
        let mut queued = vec![false; self.cells.len()];
        for &i in &queue {
            queued[i] = true;
        }
        while let Some(i) = queue.pop() {
            queued[i] = false;
            let d = self.dom[i];
            if d == 0 {
                return false;
            }
            for (k, (from, to)) in DIRS.iter().enumerate() {
                if let Some(j) = self.nbr[i][k] {
                    let sup = self.masks.support(d, *from, *to);
                    let nd = self.dom[j] & sup;
                    if nd != self.dom[j] {
                        if nd == 0 {
                            return false;
                        }
                        self.set(j, nd);
                        if !queued[j] {
                            queued[j] = true;
                            queue.push(j);
                        }
                    }
                }
            }
        }
        true
    }

    /// Full arc consistency; false if some domain empties.
    pub fn propagate(&mut self) -> bool {
        if self.dom.contains(&0) {
            return false;
        }
        self.propagate_from(0..self.cells.len())
    }

    fn assignment(&self) -> TilePattern {
        self.cells
            .iter()
            .zip(&self.dom)
            .map(|(&c, &d)| (c, Tile::new(d.trailing_zeros() as u8).expect("singleton domain")))
            .collect()
    }

    fn over_limit(&self) -> bool {
        self.node_limit.is_some_and(|l| self.nodes > l)
    }

    /// Depth-first search over the cells in `order` that are not yet decided.
    /// Calls `leaf` at every full assignment of `order`; `leaf` returns true to stop.
    fn dfs(&mut self, order: &[usize], pos: usize, leaf: &mut dyn FnMut(&mut Csp) -> bool) -> Option<bool> {
        let mut pos = pos;
        while pos < order.len() && self.dom[order[pos]].count_ones() == 1 {
            pos += 1;
        }
        if pos == order.len() {
            return Some(leaf(self));
        }
        let mut i = order[pos];
        if self.fail_first {
            let mut best = self.dom[i].count_ones();
            for &j in &order[pos + 1..] {
                let c = self.dom[j].count_ones();
                if c > 1 && c < best {
                    best = c;
                    i = j;
                }
            }
        }
        let mut rest = self.dom[i];
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= !bit;
            self.nodes += 1;
            if self.over_limit() {
                return None;
            }
            let mark = self.trail.len();
            self.set(i, bit);
            if self.propagate_from([i]) {
                let next = if self.fail_first { pos } else { pos + 1 };
                match self.dfs(order, next, leaf) {
                    Some(true) => {
                        self.undo(mark);
                        return Some(true);
                    }
                    None => {
                        self.undo(mark);
                        return None;
                    }
                    Some(false) => {}
                }
            }
            self.undo(mark);
        }
        Some(false)
    }

    /// First solution in the deterministic search order.
    pub fn solve(&mut self) -> Search<TilePattern> {
        if !self.propagate() {
            return Search::Exhausted;
        }
        let order: Vec<usize> = (0..self.cells.len()).collect();
        let mut out = None;
        match self.dfs(&order, 0, &mut |csp| {
            out = Some(csp.assignment());
            true
        }) {
            None => Search::LimitReached,
            Some(_) => out.map_or(Search::Exhausted, Search::Found),
        }
    }

    pub fn is_satisfiable(&mut self) -> Search<()> {
        match self.solve() {
            Search::Found(_) => Search::Found(()),
            Search::Exhausted => Search::Exhausted,
            Search::LimitReached => Search::LimitReached,
        }
    }

    /// Every assignment of the cells in `subset` that extends to a full
    /// solution, restricted to `subset`. `None` if the node limit was hit.
    pub fn project(&mut self, subset: &Region, max_results: usize) -> Option<Vec<TilePattern>> {
        if !self.propagate() {
            return Some(Vec::new());
        }
        let order: Vec<usize> = subset.iter().filter_map(|c| self.index.get(c).copied()).collect();
        let rest: Vec<usize> = (0..self.cells.len()).filter(|i| !order.contains(i)).collect();
        let mut out = Vec::new();
        let mut aborted = false;
        let r = self.dfs(&order, 0, &mut |csp| {
            let mut found = false;
            if csp.dfs(&rest, 0, &mut |_| {
                found = true;
                true
            }).is_none() {
                aborted = true;
                return true;
            }
            if found {
                out.push(order.iter().map(|&i| (csp.cells[i], Tile::new(csp.dom[i].trailing_zeros() as u8).expect("decided"))).collect());
            }
            out.len() >= max_results
        });
        if r.is_none() || aborted {
            return None;
        }
        Some(out)
    }

    /// All full solutions (up to `max_results`).
    pub fn enumerate(&mut self, max_results: usize) -> Option<Vec<TilePattern>> {
        if !self.propagate() {
            return Some(Vec::new());
        }
        let order: Vec<usize> = (0..self.cells.len()).collect();
        let mut out = Vec::new();
        let r = self.dfs(&order, 0, &mut |csp| {
            out.push(csp.assignment());
            out.len() >= max_results
        });
        r.map(|_| out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Rect;

    fn ts(lits: &str) -> Tileset {
        lits.parse().unwrap()
    }

    #[test]
    fn white_window_solves() {
        let mut csp = Csp::window(&Rect::new(0, 0, 3, 3).region(), ts("0000"));
        let p = csp.solve().found().unwrap();
        assert_eq!(p, TilePattern::filled(Rect::new(0, 0, 3, 3), Tile::WHITE));
    }

    #[test]
    fn single_corner_is_unsatisfiable_on_2x2() {
        let mut csp = Csp::window(&Rect::new(0, 0, 2, 2).region(), ts("1100"));
        assert_eq!(csp.solve(), Search::Exhausted);
    }

    #[test]
    fn torus_wraps_edges() {
        // A horizontal wire closes on any torus; a lone corner never does.
        assert!(Csp::torus(3, 2, ts("1010")).solve().found().is_some());
        assert_eq!(Csp::torus(2, 2, ts("0110")).solve(), Search::Exhausted);
        assert!(Csp::torus(2, 2, ts("0110,1001")).solve().found().is_some());
        assert_eq!(Csp::torus(1, 1, ts("0110,1001")).solve(), Search::Exhausted);
    }

    #[test]
    fn enumerate_counts_match_brute_force() {
        // 2x2 windows over the full even set: every locally valid pattern is found.
        let rect = Rect::new(0, 0, 2, 2);
        let all = Csp::window(&rect.region(), Tileset::EVEN).enumerate(usize::MAX).unwrap();
        let even: Vec<Tile> = Tile::even().collect();
        let mut brute = 0;
        for a in &even {
            for b in &even {
                for c in &even {
                    for d in &even {
                        let p: TilePattern = [(0, 0, a), (1, 0, b), (0, 1, c), (1, 1, d)]
                            .iter()
                            .map(|&(x, y, t)| (Cell::new(x, y), *t))
                            .collect();
                        if p.is_locally_valid() {
                            brute += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(all.len(), brute);
        assert!(all.iter().all(|p| p.is_locally_valid()));
    }

    #[test]
    fn node_limit_reports_limit() {
        let mut csp = Csp::window(&Rect::new(0, 0, 6, 6).region(), Tileset::EVEN);
        csp.node_limit = Some(3);
        assert!(csp.enumerate(usize::MAX).is_none());
    }
}
