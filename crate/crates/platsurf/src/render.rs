//! Deterministic SVG rendering of translation surfaces and traced
//! trajectories.
//!
//! Polygons are drawn in label order on a grid of equal cells, each in its
//! own coordinates, so a traced segment (given in the coordinates of the
//! polygon it crosses) lands in the cell of that polygon.

use std::fmt::Write;

use crate::flatsurface::{EdgeRef, TranslationSurface};
use crate::saddle::TraceSegment;

/// Rendering options.
#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Number of grid columns; `0` picks a near-square grid.
    pub columns: usize,
    /// Pixels per unit length.
    pub scale: f64,
    /// Label each edge with the index of its gluing pair.
    pub edge_labels: bool,
    /// Label each polygon with its label.
    pub polygon_labels: bool,
    /// Digits after the decimal point in emitted coordinates.
    pub precision: usize,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { columns: 0, scale: 20.0, edge_labels: true, polygon_labels: true, precision: 3 }
    }
}

struct Frame {
    min: (f64, f64),
    cell: (f64, f64),
    columns: usize,
    margin: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    /// Pixel position of the point `p` of polygon `label`.
    fn map(&self, label: usize, p: (f64, f64)) -> (f64, f64) {
        let col = (label % self.columns) as f64;
        let row = (label / self.columns) as f64;
        let x = self.margin + (col * self.cell.0 + p.0 - self.min.0) * self.scale;
        let y = self.margin + (row * self.cell.1 + p.1 - self.min.1) * self.scale;
        (x, self.height - y)
    }
}

/// Index of every gluing pair, numbered by the smaller edge of the pair.
fn pair_ids(s: &TranslationSurface) -> Vec<Vec<usize>> {
    let mut ids: Vec<Vec<usize>> = s.polygons().iter().map(|p| vec![0; p.len()]).collect();
    let mut next = 0;
    for (l, p) in s.polygons().iter().enumerate() {
        for e in 0..p.len() {
            let a = EdgeRef::new(l, e);
            let b = s.opposite(a);
            if a <= b {
                ids[l][e] = next;
                ids[b.label][b.edge] = next;
                next += 1;
            }
        }
    }
    ids
}

/// Renders `s` with the polyline overlay `segments` as an SVG document.
pub fn render_svg(s: &TranslationSurface, segments: &[TraceSegment], opts: &RenderOptions) -> String {
    let n = s.num_polygons().max(1);
    let columns = if opts.columns > 0 { opts.columns } else { (n as f64).sqrt().ceil() as usize };
    let rows = n.div_ceil(columns);
    let (mut lo, mut hi) = ((f64::INFINITY, f64::INFINITY), (f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in s.polygons() {
        for v in p.vertices() {
            let (x, y) = v.to_f64();
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
    }
    let pad = 0.15 * (hi.0 - lo.0).max(hi.1 - lo.1);
    let cell = (hi.0 - lo.0 + pad, hi.1 - lo.1 + pad);
    let margin = 10.0;
    let width = 2.0 * margin + columns as f64 * cell.0 * opts.scale;
    let height = 2.0 * margin + rows as f64 * cell.1 * opts.scale;
    let frame = Frame { min: lo, cell, columns, margin, scale: opts.scale, height };
    let prec = opts.precision;
    let fmt = |x: f64| format!("{x:.prec$}");

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1">"#);
    for (l, p) in s.polygons().iter().enumerate() {
        let pts: Vec<String> = p
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = frame.map(l, v.to_f64());
                format!("{},{}", fmt(x), fmt(y))
            })
            .collect();
        let _ = writeln!(out, r#"<polygon id="p{l}" points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");

    let font = (opts.scale * 0.5).max(6.0);
    if opts.edge_labels || opts.polygon_labels {
        let ids = pair_ids(s);
        let _ = writeln!(out, r#"<g font-family="monospace" font-size="{}" text-anchor="middle">"#, fmt(font));
        for (l, p) in s.polygons().iter().enumerate() {
            let k = p.len() as f64;
            let c = p.vertices().iter().fold((0.0, 0.0), |acc, v| {
                let (x, y) = v.to_f64();
                (acc.0 + x / k, acc.1 + y / k)
            });
            if opts.polygon_labels {
                let (x, y) = frame.map(l, c);
                let _ = writeln!(out, r#"<text x="{}" y="{}" fill="gray">{l}</text>"#, fmt(x), fmt(y));
            }
            if opts.edge_labels {
                for e in 0..p.len() {
                    let (a, b) = (p.vertex(e).to_f64(), p.vertex((e + 1) % p.len()).to_f64());
                    let m = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
                    let inner = (m.0 + 0.2 * (c.0 - m.0), m.1 + 0.2 * (c.1 - m.1));
                    let (x, y) = frame.map(l, inner);
                    let _ = writeln!(out, r#"<text x="{}" y="{}" fill="blue">{}</text>"#, fmt(x), fmt(y), ids[l][e]);
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if !segments.is_empty() {
        let _ = writeln!(out, r#"<g stroke="red" stroke-width="1.5">"#);
        for seg in segments {
            let (x1, y1) = frame.map(seg.label, seg.start);
            let (x2, y2) = frame.map(seg.label, seg.end);
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                fmt(x1),
                fmt(y1),
                fmt(x2),
                fmt(y2)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saddle::{double_pentagon, trace_separatrix, SaddleKind};

    #[test]
    fn double_pentagon_with_diagonal() {
        let pi5 = double_pentagon();
        // The diagonal from vertex 0 to vertex 2 of the top pentagon.
        let dir = crate::planar::generator_r().act(&SaddleKind::Long.horizontal_holonomy());
        let tr = trace_separatrix(&pi5, (0, 0), &dir, 10).unwrap();
        assert_eq!(tr.segments.len(), 1);
        let svg = render_svg(&pi5, &tr.segments, &RenderOptions::default());
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches("<line").count(), tr.segments.len());
        assert_eq!(svg, render_svg(&pi5, &tr.segments, &RenderOptions::default()));
    }

    #[test]
    fn edge_pairs_are_labeled_twice() {
        let pi5 = double_pentagon();
        let ids = pair_ids(&pi5);
        let mut all: Vec<usize> = ids.concat();
        all.sort_unstable();
        assert_eq!(all, vec![0, 0, 1, 1, 2, 2, 3, 3, 4, 4]);
    }
}
