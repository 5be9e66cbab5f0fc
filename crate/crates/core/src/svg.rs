//! Deterministic SVG drawings of partitions and regions.
//!
//! States of dimension above two are drawn through their projection onto the
//! first two coordinates; one-dimensional states are drawn as bars.

use std::fmt::Write as _;

use crate::abstraction::Verdict;
use crate::geometry::{Polytope, Region};
use crate::sysdyn::Partition;

pub const YES: &str = "#5cb85c";
pub const NO: &str = "#ffffff";
pub const UNDECIDED: &str = "#add8e6";
pub const OUT: &str = "#bdbdbd";

const WIDTH: f64 = 600.0;
const MARGIN: f64 = 10.0;

/// 2-D outline of `p`: counter-clockwise polygon of its (projected) vertices.
fn outline(p: &Polytope) -> Vec<[f64; 2]> {
    match p.dim() {
        1 => {
            let (lo, hi) = p.bbox().expect("nonempty");
            vec![[lo[0], 0.0], [hi[0], 0.0], [hi[0], 1.0], [lo[0], 1.0]]
        }
        2 => p.vertices().iter().map(|v| [v[0], v[1]]).collect(),
        _ => {
            let pts: Vec<Vec<f64>> = p.vertices().iter().map(|v| vec![v[0], v[1]]).collect();
            match Polytope::hull(&pts) {
                Ok(h) if !h.is_empty() => h.vertices().iter().map(|v| [v[0], v[1]]).collect(),
                _ => Vec::new(),
            }
        }
    }
}

/// Renders filled polygons; later shapes are drawn on top.
pub fn render(shapes: &[(&Polytope, &str)]) -> String {
    let polys: Vec<(Vec<[f64; 2]>, &str)> = shapes
        .iter()
        .filter(|(p, _)| !p.is_empty())
        .map(|(p, fill)| (outline(p), *fill))
        .filter(|(o, _)| !o.is_empty())
        .collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for (o, _) in &polys {
        for v in o {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
    }
    if polys.is_empty() {
        lo = [0.0, 0.0];
        hi = [1.0, 1.0];
    }
    let span = [(hi[0] - lo[0]).max(1e-9), (hi[1] - lo[1]).max(1e-9)];
    let scale = (WIDTH - 2.0 * MARGIN) / span[0];
    let height = span[1] * scale + 2.0 * MARGIN;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    )
    .unwrap();
    for (o, fill) in &polys {
        let pts: Vec<String> = o
            .iter()
            .map(|v| {
                let x = MARGIN + (v[0] - lo[0]) * scale;
                let y = height - MARGIN - (v[1] - lo[1]) * scale;
                format!("{x:.3},{y:.3}")
            })
            .collect();
        writeln!(
            s,
            r#"  <polygon points="{}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#,
            pts.join(" ")
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

pub fn verdict_color(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => YES,
        Verdict::No => NO,
        Verdict::Undecided => UNDECIDED,
    }
}

/// Partition colored by verdict at the initial memory state; out cells grey.
pub fn partition_svg(part: &Partition, verdicts: &[Verdict]) -> String {
    let shapes: Vec<(&Polytope, &str)> = part
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let fill = if part.is_out(i) {
                OUT
            } else {
                verdicts.get(i).map_or(NO, |&v| verdict_color(v))
            };
            (&c.poly, fill)
        })
        .collect();
    render(&shapes)
}

/// Stacked regions, each in one color.
pub fn regions_svg(layers: &[(&Region, &str)]) -> String {
    let shapes: Vec<(&Polytope, &str)> = layers
        .iter()
        .flat_map(|(r, fill)| r.parts().iter().map(move |p| (p, *fill)))
        .collect();
    render(&shapes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_drawing_is_outline_only() {
        let s = render(&[]);
        assert!(s.starts_with("<svg"));
        assert!(!s.contains("<polygon"));
    }

    #[test]
    fn identical_input_identical_output() {
        let a = Polytope::boxed(&[0.0, 0.0], &[1.0, 2.0]);
        let b = Polytope::boxed(&[1.0, 0.0], &[2.0, 2.0]);
        let one = render(&[(&a, YES), (&b, UNDECIDED)]);
        let two = render(&[(&a, YES), (&b, UNDECIDED)]);
        assert_eq!(one, two);
        assert_eq!(one.matches("<polygon").count(), 2);
        assert!(one.contains(YES) && one.contains(UNDECIDED));
    }
}
