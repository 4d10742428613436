//! Plain-text SVG rendering of the Newton polygon.

use std::fmt::Write;

use locmin::geometry::NewtonModel;

const CELL: i64 = 40;
const MARGIN: i64 = 48;

/// Lattice points of the support, the hull, highlighted southwestern edges and marked corners.
pub fn render(model: &NewtonModel) -> String {
    let max_a = model.support.iter().map(|k| k.0).max().unwrap_or(0) as i64 + 1;
    let max_b = model.support.iter().map(|k| k.1).max().unwrap_or(0) as i64 + 1;
    let (w, h) = (2 * MARGIN + max_a * CELL, 2 * MARGIN + max_b * CELL);
    let px = |a: u32, b: u32| (MARGIN + a as i64 * CELL, h - MARGIN - b as i64 * CELL);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(s, r##"<g stroke="#ddd" stroke-width="1">"##);
    for a in 0..=max_a {
        let (x, _) = px(a as u32, 0);
        let _ = writeln!(s, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#, MARGIN, h - MARGIN);
    }
    for b in 0..=max_b {
        let (_, y) = px(0, b as u32);
        let _ = writeln!(s, r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#, MARGIN, w - MARGIN);
    }
    let _ = writeln!(s, "</g>");
    let (ox, oy) = px(0, 0);
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1.5"><line x1="{ox}" y1="{oy}" x2="{}" y2="{oy}"/><line x1="{ox}" y1="{oy}" x2="{ox}" y2="{}"/></g>"#, w - MARGIN / 2, MARGIN / 2);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">alpha</text>"#, w - MARGIN, oy + 20);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14">beta</text>"#, ox - 40, MARGIN / 2);

    let pts: Vec<String> = model.hull.vertices.iter().map(|k| {
        let (x, y) = px(k.0, k.1);
        format!("{x},{y}")
    }).collect();
    match model.hull.dimension {
        2 => {
            let _ = writeln!(s, r##"<polygon class="hull" points="{}" fill="#e8f0fe" stroke="#4a6fa5" stroke-width="2"/>"##, pts.join(" "));
        }
        1 => {
            let _ = writeln!(s, r##"<polyline class="hull" points="{}" fill="none" stroke="#4a6fa5" stroke-width="2"/>"##, pts.join(" "));
        }
        _ => {}
    }
    for f in model.faces.iter().filter(|f| f.points.len() >= 2) {
        let (first, last) = (f.points[0], f.points[f.points.len() - 1]);
        let ((x1, y1), (x2, y2)) = (px(first.0, first.1), px(last.0, last.1));
        let normal = f.normal.map(|a| a.to_string()).unwrap_or_default();
        let _ = writeln!(
            s,
            r##"<line class="southwest-edge" data-group="{}" data-normal="{normal}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#c0392b" stroke-width="4"/>"##,
            f.group
        );
    }
    for k in &model.support {
        let (x, y) = px(k.0, k.1);
        let _ = writeln!(s, r#"<circle class="support" cx="{x}" cy="{y}" r="4" fill="black"><title>({}, {})</title></circle>"#, k.0, k.1);
    }
    for k in &model.omega {
        let (x, y) = px(k.0, k.1);
        let _ = writeln!(
            s,
            r##"<rect class="omega" x="{}" y="{}" width="12" height="12" fill="none" stroke="#27ae60" stroke-width="2.5"><title>corner ({}, {})</title></rect>"##,
            x - 6,
            y - 6,
            k.0,
            k.1
        );
    }
    let _ = writeln!(s, "</svg>");
    s
}
