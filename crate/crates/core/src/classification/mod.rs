//! The 36 classes of non-empty even tilesets and checks of their computable facts.
//!
//! Verdicts are curated, not computed: membership in the local-generation
//! classes is not known to be decidable. What can be recomputed is checked
//! by [`verify_registry`].

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{factor_image, zbar_valid, FactorMap, ZbarWord};
use crate::error::{Error, Result};
use crate::generation::Generator;
use crate::pattern::Cell;
use crate::solver::{self, corner_stairs, verify_ramification, wire_stairs, Bounds, Emptiness, StairWitness};
use crate::symmetry::{canonical, orbit};
use crate::tile::Tileset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    L0,
    /// Not in L0; membership in L1 is open.
    #[serde(rename = "NotL0_L1Open")]
    NotL0L1Open,
    NotL1,
    Empty,
    UnusedTile,
}

impl Verdict {
    pub const ALL: [Verdict; 5] = [Verdict::L0, Verdict::NotL0L1Open, Verdict::NotL1, Verdict::Empty, Verdict::UnusedTile];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::L0 => "L0",
            Verdict::NotL0L1Open => "NotL0_L1Open",
            Verdict::NotL1 => "NotL1",
            Verdict::Empty => "Empty",
            Verdict::UnusedTile => "UnusedTile",
        }
    }

    /// Classes inducing the same subshift as a smaller tileset.
    pub fn is_non_minimal(self) -> bool {
        matches!(self, Verdict::Empty | Verdict::UnusedTile)
    }
}

/// The structure that certifies a negative verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// First-row map onto the transition shift.
    FirstRow,
    /// Diagonal map onto the transition shift.
    Diagonal,
    /// Ramification by stairs of corner tiles.
    CornerStairs,
    /// Ramification by stairs of horizontal wires.
    WireStairs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub id: String,
    /// The tileset the class is described and generated with.
    pub representative: Tileset,
    /// Minimum mask in the orbit.
    pub canonical: Tileset,
    pub size: usize,
    pub corner_count: usize,
    pub verdict: Verdict,
    pub reduces_to: Option<String>,
    pub generator: Option<Generator>,
    #[serde(default)]
    pub obstruction: Option<Obstruction>,
    pub notes: String,
}

const REGISTRY_JSON: &str = include_str!("registry.json");

pub fn registry() -> &'static [ClassRecord] {
    static REG: OnceLock<Vec<ClassRecord>> = OnceLock::new();
    REG.get_or_init(|| serde_json::from_str(REGISTRY_JSON).expect("embedded registry parses"))
}

pub fn find(id: &str) -> Option<&'static ClassRecord> {
    registry().iter().find(|r| r.id == id)
}

/// The record whose orbit contains `ts`.
pub fn classify(ts: Tileset) -> Result<&'static ClassRecord> {
    if !ts.is_even() {
        return Err(Error::NotEven(ts.to_string()));
    }
    if ts.is_empty() {
        return Err(Error::UnknownClass("empty tileset".into()));
    }
    let c = canonical(ts);
    registry().iter().find(|r| r.canonical == c).ok_or_else(|| Error::UnknownClass(ts.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    /// `None` for facts about the registry as a whole.
    pub class: Option<String>,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegistryReport {
    pub passed: bool,
    pub facts: Vec<Fact>,
}

impl RegistryReport {
    pub fn failures(&self) -> impl Iterator<Item = &Fact> {
        self.facts.iter().filter(|f| !f.passed)
    }
}

fn fact(class: Option<&str>, name: &str, passed: bool, detail: impl Into<String>) -> Fact {
    Fact { class: class.map(str::to_string), name: name.into(), passed, detail: detail.into() }
}

pub fn verdict_histogram(records: &[ClassRecord]) -> BTreeMap<Verdict, usize> {
    let mut h = BTreeMap::new();
    for r in records {
        *h.entry(r.verdict).or_insert(0) += 1;
    }
    h
}

pub fn size_histogram(records: &[ClassRecord]) -> [usize; 8] {
    let mut h = [0; 8];
    for r in records {
        h[r.size - 1] += 1;
    }
    h
}

/// Facts that involve the whole registry.
fn global_facts(records: &[ClassRecord]) -> Vec<Fact> {
    let canon: BTreeSet<Tileset> = records.iter().map(|r| r.canonical).collect();
    let orbit_total: usize = records.iter().map(|r| orbit(r.representative).len()).sum();
    let verdicts = verdict_histogram(records);
    let count = |v| verdicts.get(&v).copied().unwrap_or(0);
    let counts = [count(Verdict::L0), count(Verdict::NotL0L1Open), count(Verdict::NotL1), count(Verdict::Empty) + count(Verdict::UnusedTile)];
    let sizes = size_histogram(records);
    // Corner counts are orbit invariants on the whole even universe.
    let corner_invariant = crate::symmetry::Universe::Even.tilesets().all(|t| orbit(t).iter().all(|o| o.corner_count() == t.corner_count()));
    vec![
        fact(None, "record_count", records.len() == 36, format!("{} records", records.len())),
        fact(None, "distinct_canonical", canon.len() == records.len(), format!("{} distinct canonical forms", canon.len())),
        fact(None, "orbit_sizes_sum", orbit_total == 255, format!("orbit sizes sum to {orbit_total}")),
        fact(None, "verdict_histogram", counts == [13, 8, 7, 8], format!("L0/NotL0/NotL1/non-minimal = {counts:?}")),
        fact(None, "empty_count", count(Verdict::Empty) == 2, format!("{} empty", count(Verdict::Empty))),
        fact(None, "unused_tile_count", count(Verdict::UnusedTile) == 6, format!("{} with unused tiles", count(Verdict::UnusedTile))),
        fact(None, "size_histogram", sizes == [2, 5, 6, 9, 6, 5, 2, 1], format!("{sizes:?}")),
        fact(None, "corner_count_orbit_invariant", corner_invariant, "checked on all 255 even tilesets"),
    ]
}

fn record_facts(r: &ClassRecord, bounds: &Bounds) -> Vec<Fact> {
    let id = Some(r.id.as_str());
    let ts = r.representative;
    let mut out = vec![
        fact(id, "even", ts.is_even() && !ts.is_empty(), ts.to_string()),
        fact(id, "canonical", canonical(ts) == r.canonical && canonical(r.canonical) == r.canonical, format!("canonical {}", canonical(ts))),
        fact(id, "size", ts.len() == r.size, format!("{} tiles", ts.len())),
        fact(id, "corner_count", ts.corner_count() == r.corner_count, format!("{} corners", ts.corner_count())),
        fact(id, "reduces_to_iff_unused", r.reduces_to.is_some() == (r.verdict == Verdict::UnusedTile), format!("{:?}", r.reduces_to)),
    ];
    let (empty, detail) = match solver::is_empty(ts, bounds) {
        Ok(Emptiness::Empty { k }) => (Some(true), format!("no valid pattern at k = {k}")),
        Ok(Emptiness::NonEmpty { .. }) => (Some(false), "periodic, line or strip witness".to_string()),
        Err(u) => (None, format!("undecided within bounds: {u:?}")),
    };
    out.push(fact(id, "emptiness", empty == Some(r.verdict == Verdict::Empty), detail));
    if empty == Some(false) {
        match solver::unused_tiles(ts, bounds) {
            Ok(unused) => {
                out.push(fact(id, "unused_tiles", unused.is_empty() != (r.verdict == Verdict::UnusedTile), format!("unused {{{unused}}}")));
                if let Some(target) = &r.reduces_to {
                    let reduced = Tileset::from_mask(ts.mask() & !unused.mask());
                    let lands = find(target).is_some_and(|t| canonical(reduced) == t.canonical);
                    out.push(fact(id, "reduction", lands, format!("{{{reduced}}} against {target}")));
                }
            }
            Err(u) => out.push(fact(id, "unused_tiles", false, format!("undecided within bounds: {u:?}"))),
        }
    }
    let obstruction_expected = matches!(r.verdict, Verdict::NotL1 | Verdict::NotL0L1Open);
    out.push(fact(id, "obstruction_iff_negative", r.obstruction.is_some() == obstruction_expected, format!("{:?}", r.obstruction)));
    match r.obstruction {
        Some(o @ (Obstruction::FirstRow | Obstruction::Diagonal)) => {
            let map = if o == Obstruction::FirstRow { FactorMap::FirstRow } else { FactorMap::Diagonal };
            let check = check_weak_factor(ts, map, 6);
            let detail = check.as_ref().map_or("enumeration limit".into(), |c| format!("{} words, invalid {:?}, missing {:?}", c.words_seen, c.invalid, c.missing));
            out.push(fact(id, "weak_factor_image", check.is_some_and(|c| c.passed()), detail));
        }
        Some(o) => out.push(fact(id, "ramification_r1", check_ramification(ts, o, 1), format!("{o:?}"))),
        None => {}
    }
    if let Some(g) = r.generator {
        out.push(fact(id, "generator_only_for_l0", r.verdict == Verdict::L0, format!("{g:?}")));
    }
    out
}

/// Recomputes every listed fact of the registry with the given solver bounds.
pub fn verify_registry_with(bounds: &Bounds) -> RegistryReport {
    let records = registry();
    let mut facts = global_facts(records);
    let per: Vec<Vec<Fact>> = records.par_iter().map(|r| record_facts(r, bounds)).collect();
    facts.extend(per.into_iter().flatten());
    RegistryReport { passed: facts.iter().all(|f| f.passed), facts }
}

pub fn verify_registry() -> RegistryReport {
    verify_registry_with(&Bounds::default())
}

/// Finite-scale check of a transition-shift obstruction: no `BW` in the
/// image of any valid window of length `len`, and every valid word realized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakFactorCheck {
    pub map: FactorMap,
    pub len: usize,
    pub words_seen: usize,
    pub invalid: Vec<ZbarWord>,
    pub missing: Vec<ZbarWord>,
}

impl WeakFactorCheck {
    pub fn passed(&self) -> bool {
        self.invalid.is_empty() && self.missing.is_empty()
    }
}

pub fn check_weak_factor(ts: Tileset, map: FactorMap, len: usize) -> Option<WeakFactorCheck> {
    let image = factor_image(ts, map, len, 1 << 20)?;
    let invalid = image.iter().filter(|w| !zbar_valid(w)).cloned().collect();
    let missing = ZbarWord::all_valid(len).into_iter().filter(|w| !image.contains(w)).collect();
    Some(WeakFactorCheck { map, len, words_seen: image.len(), invalid, missing })
}

/// The stair witness for an obstruction at graft radius `r`.
pub fn stair_witness(o: Obstruction, r: usize) -> Option<StairWitness> {
    match o {
        Obstruction::CornerStairs => corner_stairs(r),
        Obstruction::WireStairs => wire_stairs(r),
        _ => None,
    }
}

/// Checks that the stair witness is a ramification inside `ts` for
/// `lambda` in `0..3` and `mu` in `1..=3`.
pub fn check_ramification(ts: Tileset, o: Obstruction, r: usize) -> bool {
    let Some(w) = stair_witness(o, r) else { return false };
    if !w.tileset.is_subset(ts) {
        return false;
    }
    let x = w.materialize(w.window(3, 3));
    let f = [Cell::ORIGIN].into();
    x.is_locally_valid() && verify_ramification(&x, ts, w.u, w.v, &f, r, &[0, 1, 2], &[1, 2, 3]).holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tile::Tile;

    #[test]
    fn registry_shape() {
        let reg = registry();
        assert_eq!(reg.len(), 36);
        assert_eq!(size_histogram(reg), [2, 5, 6, 9, 6, 5, 2, 1]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(Tileset::EVEN).unwrap().id, "6.8.1");
        for c in Tile::CORNERS {
            let r = classify([c].into_iter().collect()).unwrap();
            assert_eq!(r.verdict, Verdict::Empty);
        }
        assert!(matches!(classify("0001".parse().unwrap()), Err(Error::NotEven(_))));
    }

    #[test]
    fn classify_is_invariant() {
        for ts in crate::symmetry::Universe::Even.tilesets() {
            let id = &classify(ts).unwrap().id;
            for o in orbit(ts) {
                assert_eq!(&classify(o).unwrap().id, id);
            }
        }
    }
}
