//! Independence of two finite regions at window scale.

use rayon::prelude::*;
use serde::Serialize;

use super::csp::{Csp, Search};
use crate::pattern::{bounding_rect, neighborhood, Region, TilePattern};
use crate::tile::Tileset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceLimits {
    /// Cap on margin-valid patterns enumerated per region.
    pub max_patterns: usize,
    /// Node budget of each individual search.
    pub node_limit: u64,
    /// Extra torus sides tried beyond the bounding box during periodic closure.
    pub closure_slack: usize,
}

impl Default for IndependenceLimits {
    fn default() -> IndependenceLimits {
        IndependenceLimits { max_patterns: 20_000, node_limit: 2_000_000, closure_slack: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Independence {
    /// Every pair of margin-valid patterns closes up on some torus.
    Independent { f_patterns: usize, g_patterns: usize },
    /// A pair with no joint filling of the enlarged window.
    NotIndependent { f: TilePattern, g: TilePattern },
    /// Pairs extended jointly on the window but not all closed periodically,
    /// or a resource limit was hit.
    Unknown { reason: String, f_patterns: usize, g_patterns: usize, pairs_extended: usize, pairs: usize },
}

impl Independence {
    /// Every pair had a joint window filling (or a periodic closure).
    pub fn all_pairs_extend(&self) -> bool {
        match self {
            Independence::Independent { .. } => true,
            Independence::NotIndependent { .. } => false,
            Independence::Unknown { pairs_extended, pairs, .. } => pairs_extended == pairs,
        }
    }
}

/// Patterns on `region` that extend to a valid filling of `N(region, margin)`.
/// `None` when a limit was hit.
pub fn margin_valid_patterns(ts: Tileset, region: &Region, margin: usize, limits: &IndependenceLimits) -> Option<Vec<TilePattern>> {
    let mut csp = Csp::window(&neighborhood(region, margin), ts);
    csp.node_limit = Some(limits.node_limit.saturating_mul(16));
    let out = csp.project(region, limits.max_patterns + 1)?;
    (out.len() <= limits.max_patterns).then_some(out)
}

enum Joint {
    Extends,
    Blocked,
    Limit,
}

fn joint_filling(ts: Tileset, joint: &Region, f: &TilePattern, g: &TilePattern, limits: &IndependenceLimits) -> Joint {
    let mut csp = Csp::window(joint, ts);
    csp.node_limit = Some(limits.node_limit);
    csp.fix_pattern(f);
    csp.fix_pattern(g);
    match csp.is_satisfiable() {
        Search::Exhausted => Joint::Blocked,
        Search::LimitReached => Joint::Limit,
        Search::Found(()) => Joint::Extends,
    }
}

/// Some torus slightly larger than the joint bounding box carries both patterns.
fn closes_periodically(ts: Tileset, f: &TilePattern, g: &TilePattern, limits: &IndependenceLimits) -> bool {
    let support: Region = f.domain().into_iter().chain(g.domain()).collect();
    let bb = bounding_rect(&support).expect("non-empty regions");
    (0..=limits.closure_slack).any(|da| {
        (0..=limits.closure_slack).any(|db| {
            let mut torus = Csp::torus(bb.width + da, bb.height + db, ts);
            torus.node_limit = Some(limits.node_limit);
            torus.fix_pattern(&f.translate(-bb.x0, -bb.y0));
            torus.fix_pattern(&g.translate(-bb.x0, -bb.y0));
            matches!(torus.is_satisfiable(), Search::Found(()))
        })
    })
}

/// Probes whether every margin-valid `F`-pattern combines with every
/// margin-valid `G`-pattern.
pub fn check_independence(ts: Tileset, f: &Region, g: &Region, margin: usize, limits: &IndependenceLimits) -> Independence {
    let unknown = |reason: &str, fp: usize, gp: usize| Independence::Unknown { reason: reason.into(), f_patterns: fp, g_patterns: gp, pairs_extended: 0, pairs: fp * gp };
    if f.is_empty() || g.is_empty() || f.intersection(g).next().is_some() {
        return unknown("regions must be non-empty and disjoint", 0, 0);
    }
    let Some(fs) = margin_valid_patterns(ts, f, margin, limits) else {
        return unknown("pattern enumeration limit reached for F", 0, 0);
    };
    let Some(gs) = margin_valid_patterns(ts, g, margin, limits) else {
        return unknown("pattern enumeration limit reached for G", fs.len(), 0);
    };
    let union: Region = f.union(g).copied().collect();
    let joint = bounding_rect(&neighborhood(&union, margin)).expect("non-empty").region();
    let pairs: Vec<(usize, usize)> = (0..fs.len()).flat_map(|i| (0..gs.len()).map(move |j| (i, j))).collect();
    let joints: Vec<Joint> = pairs.par_iter().map(|&(i, j)| joint_filling(ts, &joint, &fs[i], &gs[j], limits)).collect();
    // The first blocked pair in enumeration order, so the counterexample is deterministic.
    if let Some(k) = joints.iter().position(|o| matches!(o, Joint::Blocked)) {
        let (i, j) = pairs[k];
        return Independence::NotIndependent { f: fs[i].clone(), g: gs[j].clone() };
    }
    let extended = joints.iter().filter(|o| matches!(o, Joint::Extends)).count();
    if extended < pairs.len() {
        return Independence::Unknown { reason: "search limit reached for some pair".into(), f_patterns: fs.len(), g_patterns: gs.len(), pairs_extended: extended, pairs: pairs.len() };
    }
    if pairs.par_iter().all(|&(i, j)| closes_periodically(ts, &fs[i], &gs[j], limits)) {
        return Independence::Independent { f_patterns: fs.len(), g_patterns: gs.len() };
    }
    Independence::Unknown {
        reason: "some joint fillings did not close periodically".into(),
        f_patterns: fs.len(),
        g_patterns: gs.len(),
        pairs_extended: extended,
        pairs: pairs.len(),
    }
}
