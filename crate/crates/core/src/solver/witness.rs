//! Certificates that a tile occurs in some configuration of the whole plane.

use serde::Serialize;

use super::csp::{Csp, Search};
use crate::pattern::{Cell, Rect, TilePattern};
use crate::tile::{Tile, Tileset};

/// A tiling of the torus `Z^2 / (aZ x bZ)`, hence a doubly periodic configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicWitness {
    pub a: usize,
    pub b: usize,
    /// The fundamental block on `[0, a) x [0, b)`.
    pub block: TilePattern,
}

impl PeriodicWitness {
    pub fn tile_at(&self, c: Cell) -> Tile {
        let p = Cell::new(c.x.rem_euclid(self.a as i32), c.y.rem_euclid(self.b as i32));
        self.block.get(p).expect("block covers the fundamental domain")
    }

    pub fn materialize(&self, rect: Rect) -> TilePattern {
        TilePattern::from_fn(rect, |c| self.tile_at(c))
    }

    /// Edge checks on the torus, including the wrap-around seams.
    pub fn verify(&self) -> bool {
        let (a, b) = (self.a as i32, self.b as i32);
        self.block.len() == self.a * self.b
            && (0..b).all(|y| {
                (0..a).all(|x| {
                    let t = self.tile_at(Cell::new(x, y));
                    t.east() == self.tile_at(Cell::new(x + 1, y)).west()
                        && t.north() == self.tile_at(Cell::new(x, y + 1)).south()
                })
            })
    }
}

/// Smallest-area torus tiling with sides at most `max_a` and `max_b`.
pub fn find_periodic(ts: Tileset, max_a: usize, max_b: usize) -> Option<PeriodicWitness> {
    find_periodic_with(ts, max_a, max_b, None)
}

/// As [`find_periodic`], additionally requiring `containing` to occur.
///
/// Tori are tried by increasing area, then increasing `a`.
pub fn find_periodic_with(ts: Tileset, max_a: usize, max_b: usize, containing: Option<Tile>) -> Option<PeriodicWitness> {
    if ts.is_empty() {
        return None;
    }
    for area in 1..=max_a * max_b {
        for a in 1..=max_a {
            if area % a != 0 || area / a > max_b {
                continue;
            }
            let b = area / a;
            let mut csp = Csp::torus(a, b, ts);
            if let Some(t) = containing {
                // Translation invariance lets the tile sit at the origin.
                csp.fix(Cell::ORIGIN, t);
            }
            if let Search::Found(block) = csp.solve() {
                return Some(PeriodicWitness { a, b, block });
            }
        }
    }
    None
}

/// A configuration constant along one lattice direction: the tile at `c`
/// depends only on `s = alpha * c.x + beta * c.y`, and the sequence indexed
/// by `s` is eventually periodic in both directions.
///
/// With `m = middle.len()`, the tile at index `s` is `middle[s]` for
/// `0 <= s < m`, `right[(s - m) mod |right|]` for `s >= m` and
/// `left[s mod |left|]` for `s < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineWitness {
    pub alpha: i32,
    pub beta: i32,
    pub left: Vec<Tile>,
    pub middle: Vec<Tile>,
    pub right: Vec<Tile>,
}

/// Linear forms `(alpha, beta)` vanishing on the directions (1,0), (0,1), (1,1), (1,-1).
const FORMS: [(i32, i32); 4] = [(0, 1), (1, 0), (1, -1), (1, 1)];

impl LineWitness {
    /// The direction along which the configuration is constant.
    pub fn direction(&self) -> (i32, i32) {
        (-self.beta, self.alpha)
    }

    pub fn tile_at_index(&self, s: i64) -> Tile {
        let m = self.middle.len() as i64;
        if (0..m).contains(&s) {
            self.middle[s as usize]
        } else if s >= m {
            self.right[((s - m).rem_euclid(self.right.len() as i64)) as usize]
        } else {
            self.left[s.rem_euclid(self.left.len() as i64) as usize]
        }
    }

    pub fn tile_at(&self, c: Cell) -> Tile {
        self.tile_at_index(self.alpha as i64 * c.x as i64 + self.beta as i64 * c.y as i64)
    }

    pub fn materialize(&self, rect: Rect) -> TilePattern {
        TilePattern::from_fn(rect, |c| self.tile_at(c))
    }

    /// Checks every adjacency class of the bi-infinite sequence once.
    pub fn verify(&self) -> bool {
        if self.left.is_empty() || self.right.is_empty() {
            return false;
        }
        let m = self.middle.len() as i64;
        let lo = -(self.left.len() as i64) - 2;
        let hi = m + self.right.len() as i64 + 2;
        (lo..hi).all(|s| {
            let t = self.tile_at_index(s);
            t.east() == self.tile_at_index(s + self.alpha as i64).west()
                && t.north() == self.tile_at_index(s + self.beta as i64).south()
        })
    }
}

/// Sequence steps `c -> d` allowed between consecutive indices for a form.
fn step_allowed(alpha: i32, beta: i32, c: Tile, d: Tile) -> bool {
    let horizontal = match alpha {
        0 => true,
        1 => c.east() == d.west(),
        _ => d.east() == c.west(),
    };
    let vertical = match beta {
        0 => true,
        1 => c.north() == d.south(),
        _ => d.north() == c.south(),
    };
    horizontal && vertical
}

fn self_consistent(alpha: i32, beta: i32, t: Tile) -> bool {
    (alpha != 0 || t.east() == t.west()) && (beta != 0 || t.north() == t.south())
}

/// Shortest path from `from` to `to` (at least one step when `nonempty`).
fn path(adj: &[Vec<bool>], from: usize, to: usize, nonempty: bool) -> Option<Vec<usize>> {
    if from == to && !nonempty {
        return Some(vec![from]);
    }
    let n = adj.len();
    let mut prev = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for d in 0..n {
        if adj[from][d] && prev[d] == usize::MAX {
            prev[d] = from;
            queue.push_back(d);
        }
    }
    while let Some(c) = queue.pop_front() {
        if c == to {
            let mut out = vec![to];
            let mut cur = to;
            loop {
                let p = prev[cur];
                out.push(p);
                if p == from && out.len() > 1 {
                    break;
                }
                cur = p;
            }
            out.reverse();
            return Some(out);
        }
        for d in 0..n {
            if adj[c][d] && prev[d] == usize::MAX {
                prev[d] = c;
                queue.push_back(d);
            }
        }
    }
    None
}

/// A bi-infinite walk through `target` that is periodic on both ends, as
/// `(left cycle, middle, right cycle)` following the conventions of [`LineWitness`].
fn eventually_periodic_walk(adj: &[Vec<bool>], target: usize) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let cyclic: Vec<usize> = (0..adj.len()).filter(|&c| path(adj, c, c, true).is_some()).collect();
    let (u, to_t) = cyclic.iter().find_map(|&u| path(adj, u, target, false).map(|p| (u, p)))?;
    let (w, from_t) = cyclic.iter().find_map(|&w| path(adj, target, w, false).map(|p| (w, p)))?;
    // Cycle through u, listed from u: its last element steps back to u.
    let cu = path(adj, u, u, true)?;
    let left = cu[..cu.len() - 1].to_vec();
    let mut middle = to_t;
    middle.extend_from_slice(&from_t[1..]);
    let cw = path(adj, w, w, true)?;
    let right = cw[1..].to_vec();
    Some((left, middle, right))
}

/// A configuration constant along one of the four basic directions that
/// contains `t`, found on the one-dimensional transfer graph.
pub fn find_line_periodic(ts: Tileset, t: Tile) -> Option<LineWitness> {
    if !ts.contains(t) {
        return None;
    }
    for (alpha, beta) in FORMS {
        let nodes: Vec<Tile> = ts.tiles().filter(|&c| self_consistent(alpha, beta, c)).collect();
        if !nodes.contains(&t) {
            continue;
        }
        let mut adj = vec![vec![false; 16]; 16];
        for &c in &nodes {
            for &d in &nodes {
                adj[c.code() as usize][d.code() as usize] = step_allowed(alpha, beta, c, d);
            }
        }
        let Some((left, middle, right)) = eventually_periodic_walk(&adj, t.code() as usize) else { continue };
        let tile = |i: &usize| Tile::new(*i as u8).expect("code < 16");
        let witness = LineWitness {
            alpha,
            beta,
            left: left.iter().map(tile).collect(),
            middle: middle.iter().map(tile).collect(),
            right: right.iter().map(tile).collect(),
        };
        debug_assert!(witness.verify());
        return Some(witness);
    }
    None
}

/// A configuration periodic along one axis whose slices across that axis
/// form an eventually periodic sequence in both directions.
///
/// With `vertical`, slice `s` is the column `x = s` and has period `period`
/// in `y`; otherwise it is the row `y = s` with period `period` in `x`.
/// Slices are indexed like the tiles of a [`LineWitness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripWitness {
    pub vertical: bool,
    pub period: usize,
    pub left: Vec<Vec<Tile>>,
    pub middle: Vec<Vec<Tile>>,
    pub right: Vec<Vec<Tile>>,
}

impl StripWitness {
    fn slice(&self, s: i64) -> &[Tile] {
        let m = self.middle.len() as i64;
        if (0..m).contains(&s) {
            &self.middle[s as usize]
        } else if s >= m {
            &self.right[((s - m).rem_euclid(self.right.len() as i64)) as usize]
        } else {
            &self.left[s.rem_euclid(self.left.len() as i64) as usize]
        }
    }

    pub fn tile_at(&self, c: Cell) -> Tile {
        let (s, j) = if self.vertical { (c.x, c.y) } else { (c.y, c.x) };
        self.slice(s as i64)[j.rem_euclid(self.period as i32) as usize]
    }

    pub fn materialize(&self, rect: Rect) -> TilePattern {
        TilePattern::from_fn(rect, |c| self.tile_at(c))
    }

    pub fn verify(&self) -> bool {
        let slices = self.left.iter().chain(&self.middle).chain(&self.right);
        if self.left.is_empty() || self.right.is_empty() || slices.clone().any(|s| s.len() != self.period) {
            return false;
        }
        let m = self.middle.len() as i64;
        let lo = -(self.left.len() as i64) - 2;
        let hi = m + self.right.len() as i64 + 2;
        (lo..hi).all(|s| slice_valid(self.vertical, self.slice(s)) && slices_adjacent(self.vertical, self.slice(s), self.slice(s + 1)))
    }
}

/// Cyclic consistency of one slice along the periodic axis.
fn slice_valid(vertical: bool, s: &[Tile]) -> bool {
    (0..s.len()).all(|j| {
        let (a, b) = (s[j], s[(j + 1) % s.len()]);
        if vertical {
            a.north() == b.south()
        } else {
            a.east() == b.west()
        }
    })
}

fn slices_adjacent(vertical: bool, a: &[Tile], b: &[Tile]) -> bool {
    a.iter().zip(b).all(|(p, q)| if vertical { p.east() == q.west() } else { p.north() == q.south() })
}

fn cyclic_slices(ts: Tileset, vertical: bool, period: usize) -> Vec<Vec<Tile>> {
    let tiles: Vec<Tile> = ts.tiles().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(period);
    fn extend(tiles: &[Tile], vertical: bool, period: usize, cur: &mut Vec<Tile>, out: &mut Vec<Vec<Tile>>) {
        if cur.len() == period {
            if slice_valid(vertical, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for &t in tiles {
            let fits = cur.last().is_none_or(|&p| if vertical { p.north() == t.south() } else { p.east() == t.west() });
            if fits {
                cur.push(t);
                extend(tiles, vertical, period, cur, out);
                cur.pop();
            }
        }
    }
    extend(&tiles, vertical, period, &mut cur, &mut out);
    out
}

/// A [`StripWitness`] containing `t` with period at most `max_period`,
/// searched on the transfer graph of periodic slices.
pub fn find_strip(ts: Tileset, t: Tile, max_period: usize) -> Option<StripWitness> {
    if !ts.contains(t) {
        return None;
    }
    for period in 1..=max_period {
        for vertical in [true, false] {
            let nodes = cyclic_slices(ts, vertical, period);
            let adj: Vec<Vec<bool>> = nodes.iter().map(|a| nodes.iter().map(|b| slices_adjacent(vertical, a, b)).collect()).collect();
            for target in (0..nodes.len()).filter(|&i| nodes[i].contains(&t)) {
                if let Some((left, middle, right)) = eventually_periodic_walk(&adj, target) {
                    let pick = |v: Vec<usize>| v.into_iter().map(|i| nodes[i].clone()).collect();
                    let w = StripWitness { vertical, period, left: pick(left), middle: pick(middle), right: pick(right) };
                    debug_assert!(w.verify());
                    return Some(w);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Periodic(PeriodicWitness),
    Line(LineWitness),
    Strip(StripWitness),
}

impl Witness {
    pub fn tile_at(&self, c: Cell) -> Tile {
        match self {
            Witness::Periodic(w) => w.tile_at(c),
            Witness::Line(w) => w.tile_at(c),
            Witness::Strip(w) => w.tile_at(c),
        }
    }

    pub fn materialize(&self, rect: Rect) -> TilePattern {
        TilePattern::from_fn(rect, |c| self.tile_at(c))
    }

    pub fn verify(&self) -> bool {
        match self {
            Witness::Periodic(w) => w.verify(),
            Witness::Line(w) => w.verify(),
            Witness::Strip(w) => w.verify(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(s: &str) -> Tileset {
        s.parse().unwrap()
    }

    #[test]
    fn periodic_examples() {
        let w = find_periodic(ts("0000"), 4, 4).unwrap();
        assert_eq!((w.a, w.b), (1, 1));
        assert!(find_periodic(ts("0011,0110"), 4, 4).is_none());
        let w = find_periodic(ts("0110,1001"), 4, 4).unwrap();
        assert_eq!((w.a, w.b), (2, 2));
        assert!(w.verify());
    }

    #[test]
    fn defect_line_carries_the_corner() {
        let t = ts("0101,1010,1100");
        let corner: Tile = "1100".parse().unwrap();
        assert!(find_periodic_with(t, 4, 4, Some(corner)).is_none());
        let w = find_line_periodic(t, corner).unwrap();
        assert!(w.verify());
        let p = w.materialize(Rect::centered(5));
        assert!(p.is_locally_valid());
        assert!(p.tiles_used().contains(corner));
    }

    #[test]
    fn histogram_staples_need_a_strip() {
        let t = ts("0000,0011,0110,1010");
        let staple: Tile = "0011".parse().unwrap();
        assert!(find_periodic_with(t, 6, 6, Some(staple)).is_none());
        assert!(find_line_periodic(t, staple).is_none());
        let w = find_strip(t, staple, 4).unwrap();
        assert!(w.verify());
        let p = w.materialize(Rect::centered(6));
        assert!(p.is_locally_valid() && p.tiles_used().contains(staple));
    }

    #[test]
    fn line_witness_rejects_unusable_tile() {
        assert!(find_line_periodic(ts("0000,1100"), "1100".parse().unwrap()).is_none());
    }
}
