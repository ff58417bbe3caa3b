//! Polygon layout as SVG: polygons side by side in index order, each
//! labelled with its index and edge numbers.

use std::fmt::Write;

use flatlab::TranslationSurface;

const UNIT: f64 = 100.0;
const MARGIN: f64 = 20.0;

pub fn layout(s: &TranslationSurface) -> String {
    let mut body = String::new();
    let mut x_off = MARGIN;
    let mut height: f64 = 0.0;
    for (i, p) in s.polygons().iter().enumerate() {
        let pts: Vec<(f64, f64)> = p.vertices.iter().map(|v| v.to_f64()).collect();
        let min_x = pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_x = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let min_y = pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let max_y = pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        // flip y so the picture has the usual orientation
        let map = |(x, y): (f64, f64)| (x_off + (x - min_x) * UNIT, MARGIN + (max_y - y) * UNIT);
        let points: Vec<String> = pts.iter().map(|&p| {
            let (x, y) = map(p);
            format!("{x:.3},{y:.3}")
        }).collect();
        let _ = writeln!(body, r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1"/>"#, points.join(" "));
        let n = pts.len() as f64;
        let (cx, cy) = map((pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n));
        let _ = writeln!(body, r#"<text x="{cx:.3}" y="{cy:.3}" font-size="12" text-anchor="middle">{i}</text>"#);
        for k in 0..pts.len() {
            let (a, b) = (map(pts[k]), map(pts[(k + 1) % pts.len()]));
            let (mx, my) = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let _ = writeln!(body, r#"<text x="{mx:.3}" y="{my:.3}" font-size="8" fill="gray">{k}</text>"#);
        }
        x_off += (max_x - min_x) * UNIT + MARGIN;
        height = height.max((max_y - min_y) * UNIT);
    }
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\">\n{body}</svg>\n",
        x_off,
        height + 2.0 * MARGIN
    )
}
