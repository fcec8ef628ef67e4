//! The order-32 symmetry group of bicolor tilesets: square symmetries
//! combined with complementation of horizontal and/or vertical edge colors.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::Serialize;

use crate::tile::{Edge, Tile, Tileset};

/// A group element acting on tiles as "permute edges, then complement".
///
/// `perm[e]` is the edge whose old color lands on edge `e`. Complementation
/// flags are taken after the permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryElement {
    perm: [u8; 4],
    /// Complement North and South colors.
    pub ch: bool,
    /// Complement West and East colors.
    pub cv: bool,
}

/// The dihedral part as a readable name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dihedral {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    /// Mirror across the vertical axis (swaps West and East).
    FlipVertical,
    /// Mirror across the horizontal axis (swaps North and South).
    FlipHorizontal,
    /// Mirror across the line `y = x` (swaps West/South and North/East).
    FlipDiagonal,
    /// Mirror across the line `y = -x` (swaps West/North and East/South).
    FlipAntiDiagonal,
}

impl SymmetryElement {
    pub const IDENTITY: SymmetryElement = SymmetryElement { perm: [0, 1, 2, 3], ch: false, cv: false };

    /// Counterclockwise rotation by 90 degrees: the North color moves to West.
    pub const ROT90: SymmetryElement = SymmetryElement {
        // new W = old N, new N = old E, new E = old S, new S = old W
        perm: [1, 2, 3, 0],
        ch: false,
        cv: false,
    };

    pub const FLIP_VERTICAL: SymmetryElement = SymmetryElement { perm: [2, 1, 0, 3], ch: false, cv: false };
    pub const FLIP_HORIZONTAL: SymmetryElement = SymmetryElement { perm: [0, 3, 2, 1], ch: false, cv: false };
    pub const FLIP_DIAGONAL: SymmetryElement = SymmetryElement { perm: [3, 2, 1, 0], ch: false, cv: false };
    pub const CH: SymmetryElement = SymmetryElement { perm: [0, 1, 2, 3], ch: true, cv: false };
    pub const CV: SymmetryElement = SymmetryElement { perm: [0, 1, 2, 3], ch: false, cv: true };

    pub fn generators() -> [SymmetryElement; 4] {
        [Self::ROT90, Self::FLIP_VERTICAL, Self::CH, Self::CV]
    }

    fn flip_mask(&self) -> u8 {
        let mut m = 0;
        if self.ch {
            m |= (1 << Edge::North.shift()) | (1 << Edge::South.shift());
        }
        if self.cv {
            m |= (1 << Edge::West.shift()) | (1 << Edge::East.shift());
        }
        m
    }

    pub fn act_on_tile(&self, t: Tile) -> Tile {
        let mut code = 0u8;
        for e in Edge::ALL {
            let src = Edge::from_index(self.perm[e.index()] as usize);
            if t.edge(src) {
                code |= 1 << e.shift();
            }
        }
        Tile::new(code ^ self.flip_mask()).expect("nibble")
    }

    pub fn act_on_tileset(&self, ts: Tileset) -> Tileset {
        ts.tiles().map(|t| self.act_on_tile(t)).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SymmetryElement) -> SymmetryElement {
        // other: t -> P_o(t) ^ f_o ; self: s -> P_s(s) ^ f_s
        // self(other(t)) = P_s(P_o(t)) ^ P_s(f_o) ^ f_s
        let perm = self.perm.map(|p| other.perm[p as usize]);
        let moved = self.permute_mask(other.flip_mask()) ^ self.flip_mask();
        let ns = (1 << Edge::North.shift()) | (1 << Edge::South.shift());
        let we = (1 << Edge::West.shift()) | (1 << Edge::East.shift());
        debug_assert!(moved & ns == 0 || moved & ns == ns);
        SymmetryElement { perm, ch: moved & ns == ns, cv: moved & we == we }
    }

    fn permute_mask(&self, m: u8) -> u8 {
        let mut out = 0;
        for e in Edge::ALL {
            let src = Edge::from_index(self.perm[e.index()] as usize);
            if m & (1 << src.shift()) != 0 {
                out |= 1 << e.shift();
            }
        }
        out
    }

    pub fn inverse(&self) -> SymmetryElement {
        *group()
            .iter()
            .find(|g| g.compose(self) == Self::IDENTITY)
            .expect("every group element has an inverse")
    }

    /// Tile permutation table, indexed by tile code.
    pub fn table(&self) -> [u8; 16] {
        let mut t = [0; 16];
        for tile in Tile::all() {
            t[tile.code() as usize] = self.act_on_tile(tile).code();
        }
        t
    }

    pub fn dihedral(&self) -> Dihedral {
        match self.perm {
            [0, 1, 2, 3] => Dihedral::Identity,
            [1, 2, 3, 0] => Dihedral::Rot90,
            [2, 3, 0, 1] => Dihedral::Rot180,
            [3, 0, 1, 2] => Dihedral::Rot270,
            [2, 1, 0, 3] => Dihedral::FlipVertical,
            [0, 3, 2, 1] => Dihedral::FlipHorizontal,
            [3, 2, 1, 0] => Dihedral::FlipDiagonal,
            [1, 0, 3, 2] => Dihedral::FlipAntiDiagonal,
            p => unreachable!("not a square symmetry: {p:?}"),
        }
    }
}

/// Closes `gens` under composition.
pub fn closure(gens: &[SymmetryElement]) -> Vec<SymmetryElement> {
    let mut seen: BTreeSet<SymmetryElement> = BTreeSet::new();
    seen.insert(SymmetryElement::IDENTITY);
    let mut frontier = vec![SymmetryElement::IDENTITY];
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = h.compose(&g);
            if seen.insert(gh) {
                frontier.push(gh);
            }
        }
    }
    seen.into_iter().collect()
}

/// All 32 group elements, built once from the generators.
pub fn group() -> &'static [SymmetryElement] {
    static GROUP: OnceLock<Vec<SymmetryElement>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let g = closure(&SymmetryElement::generators());
        assert_eq!(g.len(), 32, "symmetry group closure must have order 32");
        g
    })
}

fn tables() -> &'static [[u8; 16]] {
    static TABLES: OnceLock<Vec<[u8; 16]>> = OnceLock::new();
    TABLES.get_or_init(|| group().iter().map(SymmetryElement::table).collect())
}

fn apply_table(table: &[u8; 16], mask: u16) -> u16 {
    let mut out = 0u16;
    let mut m = mask;
    while m != 0 {
        let c = m.trailing_zeros() as usize;
        out |= 1 << table[c];
        m &= m - 1;
    }
    out
}

pub fn orbit(ts: Tileset) -> BTreeSet<Tileset> {
    tables().iter().map(|t| Tileset::from_mask(apply_table(t, ts.mask()))).collect()
}

/// Minimum mask over the orbit.
pub fn canonical(ts: Tileset) -> Tileset {
    let m = tables().iter().map(|t| apply_table(t, ts.mask())).min().expect("non-empty group");
    Tileset::from_mask(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Universe {
    /// Non-empty subsets of the 8 even tiles.
    Even,
    /// Non-empty subsets of all 16 tiles.
    All,
}

impl Universe {
    pub fn tilesets(self) -> Box<dyn Iterator<Item = Tileset>> {
        match self {
            Universe::All => Box::new((1..=u16::MAX).map(Tileset::from_mask)),
            Universe::Even => {
                let even: Vec<_> = Tileset::EVEN.tiles().collect();
                Box::new((1u16..256).map(move |bits| {
                    (0..8).filter(|i| bits & (1 << i) != 0).map(|i| even[i]).collect()
                }))
            }
        }
    }
}

/// Summary of the orbit decomposition of a universe of tilesets.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub universe: Universe,
    pub tilesets: usize,
    pub orbits: usize,
    /// Orbit count when the empty tileset is admitted as its own orbit.
    pub orbits_including_empty: usize,
    /// Orbit size -> number of orbits of that size.
    pub size_histogram: std::collections::BTreeMap<usize, usize>,
    pub representatives: Vec<Tileset>,
}

pub fn orbit_report(universe: Universe) -> OrbitReport {
    let mut seen = vec![false; 1 << 16];
    let mut tilesets = 0;
    let mut size_histogram = std::collections::BTreeMap::new();
    let mut representatives = Vec::new();
    for ts in universe.tilesets() {
        tilesets += 1;
        if seen[ts.mask() as usize] {
            continue;
        }
        let orb = orbit(ts);
        for o in &orb {
            seen[o.mask() as usize] = true;
        }
        *size_histogram.entry(orb.len()).or_insert(0) += 1;
        representatives.push(*orb.iter().next().expect("orbit contains ts"));
    }
    representatives.sort();
    let orbits = representatives.len();
    OrbitReport { universe, tilesets, orbits, orbits_including_empty: orbits + 1, size_histogram, representatives }
}

pub fn count_orbits(universe: Universe) -> usize {
    orbit_report(universe).orbits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tile {
        s.parse().unwrap()
    }

    #[test]
    fn group_has_order_32_and_is_closed() {
        let g = group();
        assert_eq!(g.len(), 32);
        for a in g {
            assert!(g.contains(&a.inverse()));
            for b in g {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn composition_matches_action() {
        for a in group() {
            for b in group() {
                for tile in Tile::all() {
                    assert_eq!(a.compose(b).act_on_tile(tile), a.act_on_tile(b.act_on_tile(tile)));
                }
            }
        }
    }

    #[test]
    fn each_element_is_a_bijection() {
        for g in group() {
            let image: Tileset = Tile::all().map(|x| g.act_on_tile(x)).collect();
            assert_eq!(image, Tileset::ALL);
        }
    }

    #[test]
    fn tile_action_examples() {
        assert_eq!(SymmetryElement::IDENTITY.act_on_tile(t("0110")), t("0110"));
        assert_eq!(SymmetryElement::CH.act_on_tile(Tile::WHITE), t("0101"));
        assert_eq!(SymmetryElement::ROT90.act_on_tile(t("0100")), t("1000"));
        assert_eq!(SymmetryElement::ROT90.act_on_tile(Tile::HORIZONTAL), Tile::VERTICAL);
    }

    #[test]
    fn rotation_conjugates_complementations() {
        let rot = SymmetryElement::ROT90;
        for tile in Tile::all() {
            // rotate then complement horizontal edges == complement vertical edges then rotate
            assert_eq!(
                SymmetryElement::CH.act_on_tile(rot.act_on_tile(tile)),
                rot.act_on_tile(SymmetryElement::CV.act_on_tile(tile))
            );
        }
        for flip in [SymmetryElement::FLIP_VERTICAL, SymmetryElement::FLIP_HORIZONTAL] {
            for c in [SymmetryElement::CH, SymmetryElement::CV] {
                assert_eq!(flip.compose(&c), c.compose(&flip));
            }
        }
        // Diagonal mirrors are rotations composed with axis mirrors, so they swap the two.
        let d = SymmetryElement::FLIP_DIAGONAL;
        assert_eq!(d.compose(&SymmetryElement::CH), SymmetryElement::CV.compose(&d));
    }

    #[test]
    fn dihedral_parts_cover_d4() {
        let parts: BTreeSet<String> = group().iter().map(|g| format!("{:?}", g.dihedral())).collect();
        assert_eq!(parts.len(), 8);
    }

    #[test]
    fn tileset_action_examples() {
        for g in group() {
            assert_eq!(g.act_on_tileset(Tileset::EVEN), Tileset::EVEN);
            assert_eq!(g.act_on_tileset(Tileset::CORNERS), Tileset::CORNERS);
        }
        let white: Tileset = [Tile::WHITE].into_iter().collect();
        assert_eq!(SymmetryElement::CH.act_on_tileset(white), [t("0101")].into_iter().collect());
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit(Tileset::EVEN).len(), 1);
        let white: Tileset = [Tile::WHITE].into_iter().collect();
        let expected: BTreeSet<Tileset> = ["0000", "1111", "1010", "0101"]
            .iter()
            .map(|s| [t(s)].into_iter().collect())
            .collect();
        assert_eq!(orbit(white), expected);
    }

    #[test]
    fn orbit_sizes_divide_group_order_and_sum_to_255() {
        let mut total = 0;
        let mut seen = BTreeSet::new();
        for ts in Universe::Even.tilesets() {
            let orb = orbit(ts);
            assert_eq!(32 % orb.len(), 0);
            assert!(orb.iter().all(|o| o.len() == ts.len() && o.corner_count() == ts.corner_count()));
            if seen.insert(canonical(ts)) {
                total += orb.len();
            }
            assert_eq!(canonical(ts), canonical(*orb.iter().last().unwrap()));
        }
        assert_eq!(total, 255);
        assert_eq!(seen.len(), 36);
    }

    #[test]
    fn orbit_counts() {
        let even = orbit_report(Universe::Even);
        assert_eq!((even.tilesets, even.orbits), (255, 36));
        assert_eq!(canonical(Tileset::EVEN), Tileset::EVEN);
        let all = orbit_report(Universe::All);
        assert_eq!((all.tilesets, all.orbits, all.orbits_including_empty), (65535, 2889, 2890));
    }
}
