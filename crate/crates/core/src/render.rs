//! SVG rendering in wire style: every black edge carries a wire ending at
//! its midpoint.
//!
//! Corners are quarter arcs around the corner they turn at, the straight
//! tiles are segments and `1111` is a plus-shaped cross. Tiles with one or
//! three black edges, which no even tileset contains, get spokes to the cell
//! center. Cells missing from a non-rectangular pattern are left blank.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::pattern::{Cell, TilePattern};
use crate::tile::{Edge, Tile};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderStyle {
    /// Side of a cell in pixels; must be positive.
    pub cell_size: u32,
    pub wire_stroke: f64,
    pub background: String,
    pub wire_color: String,
    pub grid_color: String,
    pub draw_grid: bool,
}

impl Default for RenderStyle {
    fn default() -> RenderStyle {
        RenderStyle {
            cell_size: 16,
            wire_stroke: 2.0,
            background: "#ffffff".into(),
            wire_color: "#000000".into(),
            grid_color: "#d0d0d0".into(),
            draw_grid: true,
        }
    }
}

/// Edge midpoints in cell-local pixel coordinates (y pointing down).
fn midpoint(e: Edge, s: f64) -> (f64, f64) {
    let h = s / 2.0;
    match e {
        Edge::West => (0.0, h),
        Edge::North => (h, 0.0),
        Edge::East => (s, h),
        Edge::South => (h, s),
    }
}

/// The cell corner shared by two adjacent edges.
fn shared_corner(a: Edge, b: Edge, s: f64) -> (f64, f64) {
    let x = if a == Edge::East || b == Edge::East { s } else { 0.0 };
    let y = if a == Edge::South || b == Edge::South { s } else { 0.0 };
    (x, y)
}

fn num(v: f64) -> String {
    if v.fract() == 0.0 {
        format!("{}", v as i64)
    } else {
        format!("{v:.2}")
    }
}

/// Path data for the wires of one tile, empty for `0000`.
pub fn tile_paths(t: Tile, s: f64) -> Vec<String> {
    let black: Vec<Edge> = Edge::ALL.into_iter().filter(|&e| t.edge(e)).collect();
    let seg = |a: (f64, f64), b: (f64, f64)| format!("M{} {} L{} {}", num(a.0), num(a.1), num(b.0), num(b.1));
    match black.as_slice() {
        [] => Vec::new(),
        [a, b] if a.opposite() == *b => vec![seg(midpoint(*a, s), midpoint(*b, s))],
        [a, b] => {
            let (p, q, c) = (midpoint(*a, s), midpoint(*b, s), shared_corner(*a, *b, s));
            // Screen coordinates point down, so a positive cross product turns clockwise.
            let cross = (p.0 - c.0) * (q.1 - c.1) - (p.1 - c.1) * (q.0 - c.0);
            let sweep = u8::from(cross > 0.0);
            let r = num(s / 2.0);
            vec![format!("M{} {} A{r} {r} 0 0 {sweep} {} {}", num(p.0), num(p.1), num(q.0), num(q.1))]
        }
        [_, _, _, _] => vec![seg(midpoint(Edge::West, s), midpoint(Edge::East, s)), seg(midpoint(Edge::North, s), midpoint(Edge::South, s))],
        spokes => spokes.iter().map(|&e| seg(midpoint(e, s), (s / 2.0, s / 2.0))).collect(),
    }
}

/// An SVG 1.1 document with one group per cell; identical inputs give identical bytes.
pub fn render_svg(p: &TilePattern, style: &RenderStyle) -> String {
    let s = style.cell_size.max(1) as f64;
    let (x0, y1, w, h) = match p.bounding_rect() {
        Some(r) => (r.x0, r.y1(), r.width, r.height),
        None => (0, 0, 0, 0),
    };
    let (pw, ph) = (num(w as f64 * s), num(h as f64 * s));
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{pw}\" height=\"{ph}\" viewBox=\"0 0 {pw} {ph}\">");
    let _ = writeln!(out, "<rect width=\"{pw}\" height=\"{ph}\" fill=\"{}\"/>", style.background);
    let _ = writeln!(
        out,
        "<g fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"round\">",
        style.wire_color,
        num(style.wire_stroke)
    );
    for row in 0..h {
        let y = y1 - 1 - row as i32;
        for col in 0..w {
            let Some(t) = p.get(Cell::new(x0 + col as i32, y)) else { continue };
            let _ = write!(out, "<g transform=\"translate({} {})\">", num(col as f64 * s), num(row as f64 * s));
            if style.draw_grid {
                let _ = write!(out, "<rect width=\"{0}\" height=\"{0}\" stroke=\"{1}\" stroke-width=\"1\"/>", num(s), style.grid_color);
            }
            for d in tile_paths(t, s) {
                let _ = write!(out, "<path d=\"{d}\"/>");
            }
            out.push_str("</g>\n");
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::Rect;

    #[test]
    fn white_has_no_wires() {
        let svg = render_svg(&TilePattern::filled(Rect::new(0, 0, 2, 2), Tile::WHITE), &RenderStyle::default());
        assert!(!svg.contains("<path"));
        assert_eq!(svg.matches("<rect").count(), 5);
    }

    #[test]
    fn south_west_corner_is_one_arc() {
        assert_eq!(tile_paths(Tile::SOUTH_WEST, 16.0), vec!["M0 8 A8 8 0 0 1 8 16".to_string()]);
        assert_eq!(tile_paths(Tile::BLACK, 16.0).len(), 2);
        assert_eq!(tile_paths(Tile::HORIZONTAL, 16.0), vec!["M0 8 L16 8".to_string()]);
    }
}
