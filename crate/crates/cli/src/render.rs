//! SVG strip drawings: left tree left of the line `x = 0`, right tree right of
//! `x = 1`, leaves on both lines and the matching as straight segments.

use std::fmt::Write as _;

use tanglegram::tree::{Orientation, Tree};
use tanglegram::{Layout, Side};

use crate::CliError;

pub const MARGIN: f64 = 20.0;
pub const CAPTION_SPACE: f64 = 24.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub leaf_gap: u32,
    pub show_crossing_count: bool,
}

impl RenderSpec {
    /// Smallest height that fits `n` leaves at `leaf_gap`.
    pub fn fitted_height(n: usize, leaf_gap: u32, show_crossing_count: bool) -> u32 {
        let caption = if show_crossing_count { CAPTION_SPACE } else { 0.0 };
        (2.0 * MARGIN + caption + n.saturating_sub(1) as f64 * leaf_gap as f64).ceil() as u32
    }

    pub fn validate(&self, n: usize) -> Result<(), CliError> {
        if self.width == 0 || self.height == 0 || self.leaf_gap == 0 {
            return Err(CliError::Usage("width, height and leaf gap must be positive".into()));
        }
        if (self.width as f64) < 2.0 * MARGIN + 3.0 {
            return Err(CliError::Usage(format!("width {} is too small", self.width)));
        }
        let need = Self::fitted_height(n, self.leaf_gap, self.show_crossing_count);
        if self.height < need {
            return Err(CliError::Usage(format!(
                "{n} leaves at gap {} need height {need}, got {}",
                self.leaf_gap, self.height
            )));
        }
        Ok(())
    }
}

struct Frame {
    left_x: f64,
    unit: f64,
    top: f64,
    gap: f64,
}

impl Frame {
    /// Pixel column of the normalised abscissa `x` (leaf lines at 0 and 1).
    fn x(&self, x: f64) -> f64 {
        self.left_x + x * self.unit
    }

    fn y(&self, pos: usize) -> f64 {
        self.top + pos as f64 * self.gap
    }
}

/// Pixel coordinates of every vertex of one tree.
fn place(tree: &Tree, orient: &Orientation, frame: &Frame, side: Side) -> Vec<(f64, f64)> {
    let pos = tree.leaf_positions(orient);
    let height = (0..tree.vertex_count()).map(|v| tree.depth(v)).max().unwrap_or(0).max(1) as f64;
    let mut at = vec![(0.0, 0.0); tree.vertex_count()];
    // internal children have larger ids than their parents; leaves go first
    for l in 0..tree.n() {
        let x = if side == Side::Left { 0.0 } else { 1.0 };
        at[tree.leaf(l)] = (frame.x(x), frame.y(pos[l]));
    }
    for v in tree.internal_vertices().rev() {
        let [a, b] = tree.children(v).unwrap();
        let y = (at[a].1 + at[b].1) / 2.0;
        let d = tree.depth(v) as f64 / height;
        let x = if side == Side::Left { -1.0 + d } else { 2.0 - d };
        at[v] = (frame.x(x), y);
    }
    at
}

fn line(out: &mut String, class: &str, a: (f64, f64), b: (f64, f64)) {
    writeln!(
        out,
        r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        a.0, a.1, b.0, b.1
    )
    .unwrap();
}

pub fn render_svg(d: &Layout, spec: &RenderSpec) -> Result<String, CliError> {
    let n = d.n();
    spec.validate(n)?;
    let t = d.tanglegram();
    let (w, h) = (spec.width as f64, spec.height as f64);
    let unit = (w - 2.0 * MARGIN) / 3.0;
    let frame = Frame { left_x: MARGIN + unit, unit, top: MARGIN, gap: spec.leaf_gap as f64 };
    let left = place(t.left(), d.orientation(Side::Left), &frame, Side::Left);
    let right = place(t.right(), d.orientation(Side::Right), &frame, Side::Right);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    )
    .unwrap();
    for (name, tree, at) in [("left-tree", t.left(), &left), ("right-tree", t.right(), &right)] {
        writeln!(out, r#"<g class="{name}" stroke="black" stroke-width="1.5" fill="none">"#).unwrap();
        for v in tree.internal_vertices() {
            for c in tree.children(v).unwrap() {
                line(&mut out, "branch", at[v], at[c]);
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g class=\"matching\" stroke=\"#1f77b4\" stroke-width=\"1\">\n");
    for l in 0..n {
        let a = left[t.left().leaf(l)];
        let b = right[t.right().leaf(t.sigma()[l])];
        line(&mut out, "match", a, b);
    }
    out.push_str("</g>\n");
    out.push_str("<g class=\"leaves\" fill=\"black\">\n");
    for (tree, at) in [(t.left(), &left), (t.right(), &right)] {
        for l in 0..n {
            let (x, y) = at[tree.leaf(l)];
            writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5"/>"#).unwrap();
        }
    }
    out.push_str("</g>\n");
    if spec.show_crossing_count {
        writeln!(
            out,
            r#"<text class="caption" x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" text-anchor="middle">crossings {}</text>"#,
            w / 2.0,
            h - MARGIN / 2.0,
            d.crossings()
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
