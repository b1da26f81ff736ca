//! SVG output of drawings.

use crate::error::{Error, Result};
use crate::geometry::{bounds, Point};
use crate::graph::Drawing;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderStyle {
    /// `#rrggbb`.
    pub edge_color: String,
    pub edge_alpha: f64,
    pub line_width: f64,
    /// Zero hides vertices.
    pub vertex_radius: f64,
    pub vertex_color: String,
    pub highlight_color: String,
    /// Edge indices drawn opaque in the highlight colour, on top.
    pub highlight: BTreeSet<usize>,
    /// Canvas width in pixels; the height follows the aspect ratio.
    pub width: f64,
    pub background: Option<String>,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            edge_color: "#1f4e9c".into(),
            edge_alpha: 0.35,
            line_width: 1.0,
            vertex_radius: 1.5,
            vertex_color: "#222222".into(),
            highlight_color: "#d62728".into(),
            highlight: BTreeSet::new(),
            width: 1000.0,
            background: Some("#ffffff".into()),
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.edge_alpha) {
            return Err(Error::InvalidParam(format!("alpha {} outside [0, 1]", self.edge_alpha)));
        }
        if !(self.line_width > 0.0 && self.width > 0.0 && self.vertex_radius >= 0.0) {
            return Err(Error::InvalidParam("sizes must be positive".into()));
        }
        for c in [&self.edge_color, &self.vertex_color, &self.highlight_color]
            .into_iter()
            .chain(self.background.as_ref())
        {
            if !is_hex_color(c) {
                return Err(Error::InvalidParam(format!("colour '{c}' is not #rrggbb")));
            }
        }
        Ok(())
    }
}

fn is_hex_color(c: &str) -> bool {
    c.len() == 7 && c.starts_with('#') && c[1..].bytes().all(|b| b.is_ascii_hexdigit())
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// SVG 1.1 document with one `path` per edge, then one `circle` per vertex.
pub fn to_svg(drawing: &Drawing, style: &RenderStyle) -> Result<String> {
    style.validate()?;
    drawing.validate()?;
    let (lo, hi) = bounds(&drawing.positions).unwrap_or((Point::new(0.0, 0.0), Point::new(1.0, 1.0)));
    let lo = drawing
        .polylines
        .iter()
        .flatten()
        .fold(lo, |a, p| Point::new(a.x.min(p.x), a.y.min(p.y)));
    let hi = drawing
        .polylines
        .iter()
        .flatten()
        .fold(hi, |a, p| Point::new(a.x.max(p.x), a.y.max(p.y)));
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    let scale = if extent > 0.0 { style.width / extent } else { 1.0 };
    let margin = style.line_width.max(style.vertex_radius) + 4.0;
    let w = (hi.x - lo.x) * scale + 2.0 * margin;
    let h = (hi.y - lo.y) * scale + 2.0 * margin;
    let map = |p: Point| Point::new((p.x - lo.x) * scale + margin, (p.y - lo.y) * scale + margin);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    if let Some(bg) = &style.background {
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="{bg}"/>"#);
    }
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="{}" stroke-opacity="{}" stroke-width="{}" stroke-linecap="round" stroke-linejoin="round">"#,
        style.edge_color,
        num(style.edge_alpha),
        num(style.line_width)
    );
    let mut highlighted = String::new();
    for (i, line) in drawing.polylines.iter().enumerate() {
        let mut d = String::new();
        for (k, &p) in line.iter().enumerate() {
            let q = map(p);
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, num(q.x), num(q.y));
        }
        if style.highlight.contains(&i) {
            let _ = writeln!(
                highlighted,
                r#"<path d="{d}" stroke="{}" stroke-opacity="1"/>"#,
                style.highlight_color
            );
        } else {
            let _ = writeln!(out, r#"<path d="{d}"/>"#);
        }
    }
    out.push_str(&highlighted);
    out.push_str("</g>\n");
    if style.vertex_radius > 0.0 {
        let _ = writeln!(out, r#"<g fill="{}">"#, style.vertex_color);
        for &p in &drawing.positions {
            let q = map(p);
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}"/>"#,
                num(q.x),
                num(q.y),
                num(style.vertex_radius)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k3() -> Drawing {
        let g = Graph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        Drawing::straight(
            &g,
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 0.8)],
        )
        .unwrap()
    }

    #[test]
    fn element_counts() {
        let svg = to_svg(&k3(), &RenderStyle::default()).unwrap();
        assert_eq!(svg.matches("<path").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert_eq!(svg, to_svg(&k3(), &RenderStyle::default()).unwrap());

        let g = Graph::from_edges(2, []).unwrap().0;
        let empty = Drawing::straight(&g, vec![Point::new(0.0, 0.0), Point::new(1.0, 1.0)]).unwrap();
        assert_eq!(to_svg(&empty, &RenderStyle::default()).unwrap().matches("<path").count(), 0);
    }

    #[test]
    fn highlight_and_validation() {
        let mut style = RenderStyle::default();
        style.highlight.insert(1);
        let svg = to_svg(&k3(), &style).unwrap();
        assert_eq!(svg.matches("<path").count(), 3);
        assert_eq!(svg.matches("stroke-opacity=\"1\"").count(), 1);
        style.edge_alpha = 1.5;
        assert!(to_svg(&k3(), &style).is_err());
        let style = RenderStyle {
            edge_color: "red".into(),
            ..Default::default()
        };
        assert!(to_svg(&k3(), &style).is_err());
    }

    #[test]
    fn coordinates_inside_view_box() {
        let svg = to_svg(&k3(), &RenderStyle::default()).unwrap();
        assert!(svg.contains(r#"viewBox="0 0 1011 811""#), "{svg}");
    }
}
