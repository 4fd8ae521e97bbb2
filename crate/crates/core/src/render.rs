//! DOT and SVG output.

use std::fmt::Write;

use crate::point::IVec2;
use crate::transition::{KleinGraph, Sail};

pub fn klein_dot(kg: &KleinGraph, name: &str) -> String {
    let mut s = String::new();
    writeln!(s, "graph {name} {{").unwrap();
    for (i, v) in kg.vertices.iter().enumerate() {
        if kg.corners.contains(&i) {
            writeln!(s, "  \"{v}\" [label=\"{v}\", corner=true, style=filled];").unwrap();
        } else {
            writeln!(s, "  \"{v}\" [label=\"{v}\"];").unwrap();
        }
    }
    for &(i, j) in &kg.edges {
        writeln!(s, "  \"{}\" -- \"{}\";", kg.vertices[i], kg.vertices[j]).unwrap();
    }
    s.push_str("}\n");
    s
}

const SIZE: f64 = 800.0;

/// Sails drawn in the square [-window, window]^2: the two lines through the
/// origin, each sail chain, and its lattice points.
pub fn sails_svg(sails: &[Sail], window: i64) -> String {
    let w = window.max(1) as f64;
    let map = |p: IVec2| -> (f64, f64) {
        (
            (p.u as f64 + w) / (2.0 * w) * SIZE,
            (w - p.v as f64) / (2.0 * w) * SIZE,
        )
    };
    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )
    .unwrap();
    let mut line = |p: (f64, f64), q: (f64, f64), color: &str| {
        writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\"/>",
            p.0, p.1, q.0, q.1
        )
        .unwrap();
    };
    // the lines through x and y, stretched to the window
    for sail in sails.iter().take(2) {
        let d = sail.cone[0];
        let k = w / (d.u.abs().max(d.v.abs()).max(1) as f64);
        let a = (
            (d.u as f64 * k + w) / (2.0 * w) * SIZE,
            (w - d.v as f64 * k) / (2.0 * w) * SIZE,
        );
        let b = (
            (-d.u as f64 * k + w) / (2.0 * w) * SIZE,
            (w + d.v as f64 * k) / (2.0 * w) * SIZE,
        );
        line(a, b, "gray");
    }
    for sail in sails {
        for e in sail.vertices.windows(2) {
            line(map(e[0]), map(e[1]), "black");
        }
    }
    for sail in sails {
        for &p in &sail.lattice_points {
            let (cx, cy) = map(p);
            writeln!(
                s,
                "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"3\" fill=\"black\"/>"
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
