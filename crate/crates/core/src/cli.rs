//! The `wanglab` command line.
//!
//! Exit codes: 0 on success, 1 when a verification or check fails, 2 on
//! usage and input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::classification::{self, ClassRecord, Verdict};
use crate::dynamics::{self, FactorMap};
use crate::error::{Error, ParseError, Result};
use crate::generation;
use crate::pattern::{BitGrid, Cell, Region, TilePattern};
use crate::render::{render_svg, RenderStyle};
use crate::solver::{self, Bounds, IndependenceLimits};
use crate::symmetry::{self, Universe};
use crate::tile::Tileset;

#[derive(Debug, Parser)]
#[command(name = "wanglab", version, about = "Even bicolor Wang tilesets: orbits, solver facts, generation and rendering")]
pub struct Cli {
    /// Worker threads for parallel checks.
    #[arg(long, global = true, env = "WANGLAB_THREADS")]
    pub threads: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit counts under the 32-element symmetry group.
    Orbits {
        /// Non-empty subsets of the 8 even tiles (default).
        #[arg(long, conflicts_with = "all")]
        even: bool,
        /// Non-empty subsets of all 16 tiles.
        #[arg(long)]
        all: bool,
    },
    /// The class of an even tileset.
    Classify {
        #[arg(long)]
        tileset: Tileset,
    },
    /// The class tables.
    Table,
    /// Recomputes the registry facts.
    Verify {
        #[arg(long)]
        class: Option<String>,
    },
    /// Solver checks on one tileset.
    Check(CheckArgs),
    /// Samples a window of a class.
    Generate {
        #[arg(long)]
        class: String,
        /// Window size as WxH.
        #[arg(long, value_parser = parse_size)]
        size: (usize, usize),
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; `.svg` renders, anything else writes pattern JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        cell: u32,
    },
    /// Applies a factor map to a pattern (or, for `zigzag`, to a bit grid).
    Factor {
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Renders a pattern file to SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 16)]
        cell: u32,
        #[arg(long)]
        no_grid: bool,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long)]
    pub tileset: Tileset,
    #[arg(long, default_value_t = 4)]
    pub max_period: usize,
    /// Largest half-side `k` of the squares `[-k,k]^2` searched for refutations.
    #[arg(long, default_value_t = 6)]
    pub window: usize,
    /// Graft radius, or the margin of the independence probe.
    #[arg(long, default_value_t = 1)]
    pub radius: usize,
    #[command(subcommand)]
    pub what: CheckKind,
}

#[derive(Debug, Subcommand)]
pub enum CheckKind {
    /// Whether the tileset tiles the plane.
    Empty,
    /// Tiles occurring in no configuration.
    Unused,
    /// Whether every pattern pair on two regions combines.
    Independence {
        /// Cells of F as `x,y;x,y;...`.
        #[arg(long, value_parser = parse_region)]
        f: Region,
        #[arg(long, value_parser = parse_region)]
        g: Region,
    },
    /// Whether a pattern can be grafted into a configuration window.
    Graft {
        /// The configuration window.
        #[arg(long = "in")]
        input: PathBuf,
        /// The pattern to place; its domain is the shape F.
        #[arg(long)]
        target: PathBuf,
        /// Offset `x,y` of the placement.
        #[arg(long, value_parser = parse_cell)]
        at: Cell,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    FirstRow,
    Diagonal,
    Zigzag,
}

fn parse_size(s: &str) -> Result<(usize, usize), ParseError> {
    let err = || ParseError::Size(s.to_string());
    let (w, h) = s.split_once(['x', 'X']).ok_or_else(err)?;
    let w = w.trim().parse().map_err(|_| err())?;
    let h = h.trim().parse().map_err(|_| err())?;
    if w == 0 || h == 0 {
        return Err(err());
    }
    Ok((w, h))
}

fn parse_cell(s: &str) -> Result<Cell, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("invalid cell {s:?}: expected x,y"))?;
    let p = |v: &str| v.trim().parse::<i32>().map_err(|_| format!("invalid cell {s:?}: expected x,y"));
    Ok(Cell::new(p(x)?, p(y)?))
}

fn parse_region(s: &str) -> Result<Region, String> {
    s.split(';').filter(|c| !c.trim().is_empty()).map(parse_cell).collect()
}

/// An outcome: JSON value, human text, and whether it counts as a pass.
struct Outcome {
    json: serde_json::Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn new(value: impl Serialize, text: impl Into<String>, ok: bool) -> Result<Outcome> {
        Ok(Outcome { json: serde_json::to_value(value)?, text: text.into(), ok })
    }
}

fn read_pattern(path: &Path) -> Result<TilePattern> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[derive(serde::Deserialize)]
struct BitRows {
    /// Rows of `0`/`1`, top row first.
    rows: Vec<String>,
}

fn orbits(all: bool) -> Result<Outcome> {
    let rep = symmetry::orbit_report(if all { Universe::All } else { Universe::Even });
    let mut text = format!("tilesets: {}\norbits: {}\norbits including the empty tileset: {}\n", rep.tilesets, rep.orbits, rep.orbits_including_empty);
    text.push_str("orbit sizes:");
    for (size, n) in &rep.size_histogram {
        text.push_str(&format!(" {size}x{n}"));
    }
    text.push('\n');
    if !all {
        for r in &rep.representatives {
            text.push_str(&format!("  {{{r}}}\n"));
        }
    }
    Outcome::new(&rep, text, true)
}

fn record_line(r: &ClassRecord) -> String {
    format!("{} {{{}}}", r.id, r.representative)
}

fn classify(ts: Tileset) -> Result<Outcome> {
    let rec = classification::classify(ts)?;
    let text = format!("{}\nverdict: {}\ncanonical: {{{}}}\n{}\n", record_line(rec), rec.verdict.as_str(), rec.canonical, rec.notes);
    Outcome::new(rec, text, true)
}

fn table() -> Result<Outcome> {
    let reg = classification::registry();
    let by = |v: Verdict| -> Vec<&ClassRecord> { reg.iter().filter(|r| r.verdict == v).collect() };
    let columns = [by(Verdict::L0), by(Verdict::NotL0L1Open), by(Verdict::NotL1)];
    let mut text = String::from("| In L0 | Not in L0 (L1 open) | Not in L1 |\n|---|---|---|\n");
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    for i in 0..rows {
        let cell = |c: &Vec<&ClassRecord>| c.get(i).map(|r| record_line(r)).unwrap_or_default();
        text.push_str(&format!("| {} | {} | {} |\n", cell(&columns[0]), cell(&columns[1]), cell(&columns[2])));
    }
    let other = [by(Verdict::Empty), by(Verdict::UnusedTile)];
    text.push_str("\n| Empty subshift | Unused tile |\n|---|---|\n");
    for i in 0..other.iter().map(Vec::len).max().unwrap_or(0) {
        let cell = |c: &Vec<&ClassRecord>| c.get(i).map(|r| record_line(r)).unwrap_or_default();
        text.push_str(&format!("| {} | {} |\n", cell(&other[0]), cell(&other[1])));
    }
    let value = json!({
        "minimal": { "L0": columns[0], "NotL0_L1Open": columns[1], "NotL1": columns[2] },
        "non_minimal": { "Empty": other[0], "UnusedTile": other[1] },
    });
    Ok(Outcome { json: value, text, ok: true })
}

fn verify(class: Option<&str>) -> Result<Outcome> {
    if let Some(id) = class {
        classification::find(id).ok_or_else(|| Error::UnknownClass(id.to_string()))?;
    }
    let mut rep = classification::verify_registry();
    if let Some(id) = class {
        rep.facts.retain(|f| f.class.as_deref() == Some(id));
        rep.passed = rep.facts.iter().all(|f| f.passed);
    }
    let mut text = String::new();
    for f in &rep.facts {
        let who = f.class.as_deref().unwrap_or("registry");
        text.push_str(&format!("{} {who} {}: {}\n", if f.passed { "PASS" } else { "FAIL" }, f.name, f.detail));
    }
    let failed = rep.failures().count();
    text.push_str(&format!("{} facts, {failed} failed\n", rep.facts.len()));
    let ok = rep.passed;
    Outcome::new(rep, text, ok)
}

fn check(a: &CheckArgs) -> Result<Outcome> {
    let bounds = Bounds { k_max: a.window, max_period: a.max_period };
    let ts = a.tileset;
    match &a.what {
        CheckKind::Empty => match solver::is_empty(ts, &bounds) {
            Ok(e) => {
                let text = if e.is_empty() { "empty" } else { "non-empty" };
                Outcome::new(json!({ "tileset": ts, "result": e }), format!("{{{ts}}}: {text}\n"), true)
            }
            Err(u) => Outcome::new(json!({ "tileset": ts, "result": "undecided" }), format!("{u}\n"), false),
        },
        CheckKind::Unused => match solver::unused_tiles(ts, &bounds) {
            Ok(unused) => {
                let text = if unused.is_empty() { "every tile is used".to_string() } else { format!("unused: {{{unused}}}") };
                Outcome::new(json!({ "tileset": ts, "unused": unused.tiles().collect::<Vec<_>>() }), format!("{{{ts}}}: {text}\n"), true)
            }
            Err(u) => Outcome::new(json!({ "tileset": ts, "result": "undecided" }), format!("{u}\n"), false),
        },
        CheckKind::Independence { f, g } => {
            let r = solver::check_independence(ts, f, g, a.radius, &IndependenceLimits::default());
            let text = match &r {
                solver::Independence::Independent { f_patterns, g_patterns } => format!("independent ({f_patterns} x {g_patterns} patterns)\n"),
                solver::Independence::NotIndependent { .. } => "not independent\n".to_string(),
                solver::Independence::Unknown { reason, .. } => format!("unknown: {reason}\n"),
            };
            Outcome::new(&r, text, true)
        }
        CheckKind::Graft { input, target, at } => {
            let x = read_pattern(input)?;
            let t = read_pattern(target)?;
            let f = t.domain();
            let g = solver::can_graft(&x, ts, &f, *at, a.radius, &t);
            let text = if g.is_graftable() { "graftable\n" } else { "not graftable within the window\n" };
            Outcome::new(&g, text, true)
        }
    }
}

fn write_output(path: &Path, p: &TilePattern, cell: u32, grid: bool) -> Result<()> {
    let is_svg = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg"));
    let body = if is_svg {
        render_svg(p, &RenderStyle { cell_size: cell.max(1), draw_grid: grid, ..RenderStyle::default() })
    } else {
        serde_json::to_string(p)? + "\n"
    };
    fs::write(path, body)?;
    Ok(())
}

fn generate(class: &str, (w, h): (usize, usize), seed: u64, out: Option<&Path>, cell: u32) -> Result<Outcome> {
    let p = generation::generate(class, w, h, seed)?;
    let valid = p.is_locally_valid();
    let summary = json!({ "class": class, "width": w, "height": h, "seed": seed, "valid": valid, "tiles_used": p.tiles_used() });
    match out {
        Some(path) => {
            write_output(path, &p, cell, true)?;
            Ok(Outcome { json: summary, text: format!("wrote {}x{} window of class {class} to {}\n", w, h, path.display()), ok: valid })
        }
        None => Ok(Outcome { json: serde_json::to_value(&p)?, text: serde_json::to_string(&p)? + "\n", ok: valid }),
    }
}

fn factor(map: MapArg, input: &Path) -> Result<Outcome> {
    let src = fs::read_to_string(input)?;
    match map {
        MapArg::FirstRow | MapArg::Diagonal => {
            let p: TilePattern = serde_json::from_str(&src)?;
            let m = if map == MapArg::FirstRow { FactorMap::FirstRow } else { FactorMap::Diagonal };
            let word = m.apply(&p);
            let valid = dynamics::zbar_valid(&word);
            Outcome::new(json!({ "word": word, "zbar_valid": valid }), format!("{word}\n"), true)
        }
        MapArg::Zigzag => {
            let rows: BitRows = serde_json::from_str(&src)?;
            let refs: Vec<&str> = rows.rows.iter().map(String::as_str).collect();
            if refs.iter().any(|r| r.len() != refs[0].len() || !r.bytes().all(|b| b == b'0' || b == b'1')) {
                return Err(Error::NotRectangular);
            }
            let g = BitGrid::from_rows(&refs);
            let valid = dynamics::zigzag_valid(&g);
            let tiles = dynamics::zigzag_to_tiles(&g);
            let text = format!("zigzag valid: {valid}\n{}\n", tiles.rows()?.iter().rev().map(|r| r.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n"));
            Outcome::new(json!({ "zigzag_valid": valid, "tiles": tiles }), text, true)
        }
    }
}

fn render(input: &Path, out: &Path, cell: u32, grid: bool) -> Result<Outcome> {
    let p = read_pattern(input)?;
    let svg = render_svg(&p, &RenderStyle { cell_size: cell.max(1), draw_grid: grid, ..RenderStyle::default() });
    fs::write(out, &svg)?;
    Outcome::new(json!({ "out": out, "cells": p.len(), "bytes": svg.len() }), format!("wrote {}\n", out.display()), true)
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Orbits { all, .. } => orbits(*all),
        Command::Classify { tileset } => classify(*tileset),
        Command::Table => table(),
        Command::Verify { class } => verify(class.as_deref()),
        Command::Check(a) => check(a),
        Command::Generate { class, size, seed, out, cell } => generate(class, *size, *seed, out.as_deref(), *cell),
        Command::Factor { map, input } => factor(*map, input),
        Command::Render { input, out, cell, no_grid } => render(input, out, *cell, !*no_grid),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(msg.as_bytes()) } else { stderr.write_all(msg.as_bytes()) };
            return code;
        }
    };
    if let Some(n) = cli.threads.filter(|&n| n > 0) {
        // A pool already built by an earlier call in the same process is kept.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(&cli) {
        Ok(o) => {
            let _ = if cli.json { writeln!(stdout, "{}", serde_json::to_string_pretty(&o.json).unwrap_or_default()) } else { write!(stdout, "{}", o.text) };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}
