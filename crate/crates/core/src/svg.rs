//! SVG rendering. The only place floating point is used: coordinates are
//! mapped back from stretched to Euclidean (y scaled by sqrt(3)/2) for
//! display.

use std::fmt::Write;

use crate::constructions::PieceRole;
use crate::geom::{Covering, HTriangle};

const SCALE: f64 = 100.0;
const MARGIN: f64 = 20.0;

fn display_xy(t: &HTriangle) -> [(f64, f64); 3] {
    let k = 3f64.sqrt() / 2.0;
    t.vertices().map(|p| (p.x.to_f64(), p.y.to_f64() * k))
}

/// Renders target outlines and pieces, one `<polygon>` per triangle. Pieces
/// with a known role get that role's fill; the rest are drawn as
/// interleave pieces.
pub fn render(c: &Covering, roles: Option<&[PieceRole]>) -> String {
    let all: Vec<[(f64, f64); 3]> = c.target.parts().iter().chain(c.pieces()).map(display_xy).collect();
    let pts = all.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let width = (x1 - x0) * SCALE + 2.0 * MARGIN;
    let height = (y1 - y0) * SCALE + 2.0 * MARGIN;
    let to_svg = |(x, y): (f64, f64)| ((x - x0) * SCALE + MARGIN, (y1 - y) * SCALE + MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    out.push_str(concat!(
        "<defs>\n",
        "<pattern id=\"dots\" width=\"8\" height=\"8\" patternUnits=\"userSpaceOnUse\"><rect width=\"8\" height=\"8\" fill=\"white\"/><circle cx=\"4\" cy=\"4\" r=\"1.6\" fill=\"#555\"/></pattern>\n",
        "<pattern id=\"rhombi\" width=\"10\" height=\"10\" patternUnits=\"userSpaceOnUse\"><rect width=\"10\" height=\"10\" fill=\"white\"/><path d=\"M5 0 L10 5 L5 10 L0 5 Z\" fill=\"none\" stroke=\"#555\" stroke-width=\"0.8\"/></pattern>\n",
        "</defs>\n",
        "<style>\n",
        ".piece { stroke: #222; stroke-width: 1; fill-opacity: 0.75; }\n",
        ".grid { fill: url(#dots); }\n",
        ".interleave { fill: white; }\n",
        ".final { fill: url(#rhombi); }\n",
        ".target { fill: none; stroke: #c00; stroke-width: 2; }\n",
        "</style>\n",
    ));
    let polygon = |out: &mut String, class: &str, tri: &[(f64, f64); 3]| {
        let points: Vec<String> = tri
            .iter()
            .map(|&p| {
                let (x, y) = to_svg(p);
                format!("{x:.4},{y:.4}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon class="{class}" points="{}"/>"#, points.join(" "));
    };
    let n_target = c.target.parts().len();
    for (i, tri) in all[n_target..].iter().enumerate() {
        let role = roles.and_then(|r| r.get(i)).copied().unwrap_or(PieceRole::Interleave);
        polygon(&mut out, &format!("piece {}", role.name()), tri);
    }
    for tri in &all[..n_target] {
        polygon(&mut out, "target", tri);
    }
    out.push_str("</svg>\n");
    out
}
