//! Region map rendering. Output depends only on the inputs, so identical
//! runs give byte-identical files.

use std::fmt::Write;

use crate::atlas::{RegionLabel, RegionReport};

/// Fill colour per region id 1 to 13.
pub const PALETTE: [&str; 13] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#17becf", "#bcbd22", "#8c564b",
];
pub const BOUNDARY_COLOR: &str = "#ffffff";
pub const UNLISTED_COLOR: &str = "#000000";

pub fn color(label: RegionLabel) -> &'static str {
    match label {
        RegionLabel::Region(r) => PALETTE[r.id() as usize - 1],
        RegionLabel::Boundary => BOUNDARY_COLOR,
        RegionLabel::Unlisted => UNLISTED_COLOR,
    }
}

/// Everything drawn in a region map.
pub struct SvgScene {
    /// Pixel size.
    pub width: f64,
    pub height: f64,
    /// `[[b1 min, b1 max], [b2 min, b2 max]]`.
    pub window: [[f64; 2]; 2],
    /// Cell labels, row-major with `beta2` outer, `nx` per row.
    pub cells: Vec<RegionLabel>,
    pub nx: usize,
    pub curve: Vec<Vec<[f64; 2]>>,
    pub markers: Vec<[f64; 2]>,
    pub parabola: Vec<[f64; 2]>,
}

impl SvgScene {
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let [[x0, x1], [y0, y1]] = self.window;
        (
            (p[0] - x0) / (x1 - x0) * self.width,
            (y1 - p[1]) / (y1 - y0) * self.height,
        )
    }

    fn path(&self, pts: &[[f64; 2]]) -> String {
        let mut d = String::new();
        for (k, p) in pts.iter().enumerate() {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{}{x:.3},{y:.3}", if k == 0 { "M" } else { " L" });
        }
        d
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let (w, h) = (self.width, self.height);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
        );
        let _ = writeln!(s, r#"<clipPath id="frame"><rect x="0" y="0" width="{w:.0}" height="{h:.0}"/></clipPath>"#);
        let _ = writeln!(s, r#"<g clip-path="url(#frame)">"#);
        let _ = writeln!(s, r#"<g id="cells" shape-rendering="crispEdges">"#);
        if self.nx > 0 && !self.cells.is_empty() {
            let ny = self.cells.len() / self.nx;
            let (cw, ch) = (w / self.nx as f64, h / ny as f64);
            for j in 0..ny {
                let row = &self.cells[j * self.nx..(j + 1) * self.nx];
                // One rectangle per run of equal labels.
                let mut i = 0;
                while i < row.len() {
                    let mut k = i;
                    while k < row.len() && row[k] == row[i] {
                        k += 1;
                    }
                    let y = h - (j + 1) as f64 * ch;
                    let _ = writeln!(
                        s,
                        r#"<rect x="{:.3}" y="{y:.3}" width="{:.3}" height="{ch:.3}" fill="{}"/>"#,
                        i as f64 * cw,
                        (k - i) as f64 * cw,
                        color(row[i])
                    );
                    i = k;
                }
            }
        }
        let _ = writeln!(s, "</g>");
        let [[x0, x1], [y0, y1]] = self.window;
        let _ = writeln!(s, r##"<g id="axes" stroke="#000000" stroke-width="1">"##);
        if x0 <= 0.0 && 0.0 <= x1 {
            let _ = writeln!(s, r#"<path d="{}"/>"#, self.path(&[[0.0, y0], [0.0, y1]]));
        }
        if y0 <= 0.0 && 0.0 <= y1 {
            let _ = writeln!(s, r#"<path d="{}"/>"#, self.path(&[[x0, 0.0], [x1, 0.0]]));
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(s, r##"<g id="curve" fill="none" stroke="#000000" stroke-width="1.5">"##);
        for line in &self.curve {
            let _ = writeln!(s, r#"<path d="{}"/>"#, self.path(line));
        }
        let _ = writeln!(s, "</g>");
        if self.parabola.len() > 1 {
            let _ = writeln!(
                s,
                r##"<path id="parabola" d="{}" fill="none" stroke="#444444" stroke-width="1" stroke-dasharray="4 3"/>"##,
                self.path(&self.parabola)
            );
        }
        let _ = writeln!(s, r##"<g id="cusps" fill="#000000">"##);
        for m in &self.markers {
            let (x, y) = self.map(*m);
            let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
        }
        let _ = writeln!(s, "</g>\n</g>\n</svg>");
        s
    }
}

/// Labels of a sweep, in order.
pub fn labels(cells: &[RegionReport]) -> Vec<RegionLabel> {
    cells.iter().map(|c| c.label).collect()
}

/// Points of the zero-potential parabola `(b1 - b2)^2 + 2 (b1 + b2) + 1 = 0`
/// crossing the window.
pub fn parabola(window: [[f64; 2]; 2], steps: usize) -> Vec<[f64; 2]> {
    let [[x0, x1], [y0, y1]] = window;
    let span = (x1 - x0).abs().max((y1 - y0).abs()) * 2.0;
    (0..=steps)
        .map(|k| {
            // With s = b1 - b2 and t = b1 + b2 the parabola is t = -(1 + s^2)/2.
            let s = -span + 2.0 * span * k as f64 / steps as f64;
            let t = -(1.0 + s * s) / 2.0;
            [(t + s) / 2.0, (t - s) / 2.0]
        })
        .collect()
}
