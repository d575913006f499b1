//! SVG rendering of surfaces that carry coordinates.
//!
//! Faces are shaded, closed edges solid, open edges drawn in a lighter colour
//! (dotted on request) and open vertices hollow.

use std::fmt::Write;

use anyhow::{bail, Result};
use homolattice::Surface;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 20.0;

pub fn render(s: &Surface, open_dotted: bool) -> Result<String> {
    let Some(coords) = s.coords() else {
        bail!("the surface has no coordinates to draw");
    };
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &[x, y] in coords {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if coords.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    // y grows upwards in surface coordinates
    let px = |v: usize| {
        let [x, y] = coords[v];
        (MARGIN + (x - x0) * SCALE, MARGIN + (y1 - y) * SCALE)
    };
    let (w, h) = (
        2.0 * MARGIN + (x1 - x0) * SCALE,
        2.0 * MARGIN + (y1 - y0) * SCALE,
    );
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    )?;
    writeln!(out, r##"<g fill="#c8d7f0" stroke="none">"##)?;
    for f in 0..s.face_count() {
        let points: Vec<String> = s
            .face_vertices(f)
            .iter()
            .map(|&v| {
                let (x, y) = px(v);
                format!("{x:.1},{y:.1}")
            })
            .collect();
        writeln!(out, r#"<polygon points="{}"/>"#, points.join(" "))?;
    }
    writeln!(out, "</g>")?;
    let open_style = if open_dotted {
        r##"stroke="#6a6a6a" stroke-dasharray="3 4""##
    } else {
        r##"stroke="#6a6a6a""##
    };
    writeln!(
        out,
        r##"<g stroke="#000000" stroke-width="2" class="closed">"##
    )?;
    for e in s.edges().iter().filter(|e| !e.open) {
        line(&mut out, px(e.u), px(e.v))?;
    }
    writeln!(out, "</g>")?;
    writeln!(out, r#"<g {open_style} stroke-width="2" class="open">"#)?;
    for e in s.edges().iter().filter(|e| e.open) {
        line(&mut out, px(e.u), px(e.v))?;
    }
    writeln!(out, "</g>")?;
    writeln!(out, r##"<g stroke="#000000" stroke-width="1">"##)?;
    for v in 0..s.vertex_count() {
        let (x, y) = px(v);
        let fill = if s.is_open_vertex(v) {
            "#ffffff"
        } else {
            "#000000"
        };
        writeln!(
            out,
            r#"<circle cx="{x:.1}" cy="{y:.1}" r="3" fill="{fill}"/>"#
        )?;
    }
    writeln!(out, "</g>")?;
    writeln!(out, "</svg>")?;
    Ok(out)
}

fn line(out: &mut String, (xa, ya): (f64, f64), (xb, yb): (f64, f64)) -> std::fmt::Result {
    writeln!(
        out,
        r#"<line x1="{xa:.1}" y1="{ya:.1}" x2="{xb:.1}" y2="{yb:.1}"/>"#
    )
}
