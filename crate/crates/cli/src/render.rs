//! SVG drawings of Motzkin paths and of the lecture hall graph. Coordinates
//! follow the embedding: column i at x = i, vertex v^t_{i,j} at
//! y = t + j/(i+1).

use std::fmt::Write;

use orthopath::lecturehall::{SePath, SeStepKind, SlhPoint, WeightSystem};
use orthopath::motzkin::{MotzkinPath, Step};
use orthopath::orthopoly::RecurrenceSpec;
use orthopath::Rat;
use num_traits::ToPrimitive;

const UNIT: f64 = 80.0;
const MARGIN: f64 = 40.0;

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\" font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"{w:.0}\" height=\"{h:.0}\" fill=\"white\"/>\n"
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn ratio(y: &Rat) -> f64 {
    y.to_f64().expect("heights are small rationals")
}

struct Frame {
    height: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (MARGIN + x * UNIT, self.height - MARGIN - y * UNIT)
    }
}

fn point_xy(p: &SlhPoint) -> (f64, f64) {
    (p.column() as f64, ratio(&p.y()))
}

/// The graph on columns 0..=columns, with `path` drawn on top and its east
/// steps labelled by `weights`.
pub fn lecture_hall_svg(columns: usize, path: Option<&SePath>, weights: Option<&dyn WeightSystem>) -> String {
    let width = 2.0 * MARGIN + columns as f64 * UNIT;
    let height = 2.0 * MARGIN + 2.0 * UNIT;
    let fr = Frame { height };
    let mut out = header(width, height);

    out.push_str("<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n");
    for i in 0..=columns {
        let (x, top) = fr.px(i as f64, 2.0);
        let (_, bottom) = fr.px(i as f64, 0.0);
        writeln!(out, "<line x1=\"{x:.2}\" y1=\"{top:.2}\" x2=\"{x:.2}\" y2=\"{bottom:.2}\"/>").unwrap();
        if i == columns {
            continue;
        }
        for t in 0..2u8 {
            for j in 0..=i {
                let from = orthopath::lecturehall::SlhVertex { t, i, j };
                let to = from.east();
                let (x1, y1) = fr.px(i as f64, ratio(&from.y()));
                let (x2, y2) = fr.px((i + 1) as f64, ratio(&to.y()));
                writeln!(out, "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\"/>").unwrap();
            }
        }
    }
    out.push_str("</g>\n<g fill=\"black\">\n");
    for i in 0..=columns {
        for t in 0..2u8 {
            for j in 0..=i {
                let v = orthopath::lecturehall::SlhVertex { t, i, j };
                let (x, y) = fr.px(i as f64, ratio(&v.y()));
                writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\"/>").unwrap();
            }
        }
        let (x, y) = fr.px(i as f64, 0.0);
        writeln!(out, "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{i}</text>", y + 18.0).unwrap();
    }
    out.push_str("</g>\n");

    if let Some(p) = path {
        out.push_str("<g stroke=\"#cc0000\" stroke-width=\"3\" fill=\"none\">\n");
        let points: Vec<(f64, f64)> = p.points().map(|q| point_xy(&q)).map(|(x, y)| fr.px(x, y)).collect();
        if points.len() > 1 {
            let d: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            writeln!(out, "<polyline points=\"{}\"/>", d.join(" ")).unwrap();
        }
        out.push_str("</g>\n");
        if let Some(ws) = weights {
            out.push_str("<g fill=\"#cc0000\">\n");
            for s in p.steps() {
                if let (SeStepKind::East, SlhPoint::Vertex(v)) = (s.kind, s.from) {
                    let (x1, y1) = fr.px(v.i as f64, ratio(&v.y()));
                    let (x2, y2) = fr.px(s.to.i as f64, ratio(&s.to.y()));
                    let label = escape(&ws.weight(v.t, v.i, v.j).to_string());
                    writeln!(
                        out,
                        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{label}</text>",
                        (x1 + x2) / 2.0,
                        (y1 + y2) / 2.0 - 6.0
                    )
                    .unwrap();
                }
            }
            out.push_str("</g>\n");
        }
    }
    out.push_str("</svg>\n");
    out
}

/// A Motzkin path on its grid, each step labelled with its weight.
pub fn motzkin_svg(p: &MotzkinPath, spec: Option<&RecurrenceSpec>) -> String {
    let heights = p.heights();
    let top = heights.iter().copied().max().unwrap_or(0).max(1);
    let width = 2.0 * MARGIN + p.len().max(1) as f64 * UNIT;
    let height = 2.0 * MARGIN + top as f64 * UNIT;
    let fr = Frame { height };
    let mut out = header(width, height);

    out.push_str("<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n");
    for x in 0..=p.len().max(1) {
        let (px, y0) = fr.px(x as f64, 0.0);
        let (_, y1) = fr.px(x as f64, top as f64);
        writeln!(out, "<line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{y1:.2}\"/>").unwrap();
    }
    for y in 0..=top {
        let (x0, py) = fr.px(0.0, y as f64);
        let (x1, _) = fr.px(p.len().max(1) as f64, y as f64);
        writeln!(out, "<line x1=\"{x0:.2}\" y1=\"{py:.2}\" x2=\"{x1:.2}\" y2=\"{py:.2}\"/>").unwrap();
    }
    out.push_str("</g>\n");

    let pts: Vec<(f64, f64)> = heights.iter().enumerate().map(|(x, &h)| fr.px(x as f64, h as f64)).collect();
    if pts.len() > 1 {
        let d: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        writeln!(out, "<polyline points=\"{}\" stroke=\"black\" stroke-width=\"3\" fill=\"none\"/>", d.join(" ")).unwrap();
    }
    out.push_str("<g fill=\"black\">\n");
    for (x, y) in &pts {
        writeln!(out, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\"/>").unwrap();
    }
    out.push_str("</g>\n");

    if let Some(spec) = spec {
        out.push_str("<g fill=\"#0044aa\">\n");
        for (idx, s) in p.steps().iter().enumerate() {
            let h = heights[idx];
            let label = match s {
                Step::U => continue,
                Step::H => spec.b(h),
                Step::D => spec.lambda(h),
            };
            let (x1, y1) = pts[idx];
            let (x2, y2) = pts[idx + 1];
            writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
                (x1 + x2) / 2.0,
                (y1 + y2) / 2.0 - 8.0,
                escape(&label.to_string())
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
