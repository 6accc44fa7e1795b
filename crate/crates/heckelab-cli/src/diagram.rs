//! Chamber pictures of a decomposition.
//!
//! One sector per orbit weight: the chamber `w⁻¹C` carries the weight `w·t`, so
//! a sector is the union of the `|W_t|` chambers sharing a weight.  Each
//! chamber holds one dot, a dot being one dimension of the generalized weight
//! space; dots of the same composition factor are joined.  Root hyperplanes
//! are drawn solid for `Z(t)`, dashed for `P(t)` and dotted otherwise.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use heckelab::rootdata::{Lat, RootSystem};
use heckelab::weights;

use crate::report::Analysis;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineKind {
    Zero,
    Pole,
    Plain,
}

impl LineKind {
    pub fn class(self) -> &'static str {
        match self {
            LineKind::Zero => "z-line",
            LineKind::Pole => "p-line",
            LineKind::Plain => "n-line",
        }
    }

    fn style(self) -> &'static str {
        match self {
            LineKind::Zero => "solid",
            LineKind::Pole => "dashed",
            LineKind::Plain => "dotted",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Line {
    pub root: String,
    pub kind: LineKind,
    /// Unit direction of the hyperplane.
    pub dir: (f64, f64),
}

#[derive(Clone, Debug)]
pub struct Dot {
    pub sector: usize,
    /// Position in the composition series (the `factor-k` class).
    pub factor: usize,
    pub pos: (f64, f64),
    pub angle: f64,
}

#[derive(Clone, Debug)]
pub struct Diagram {
    pub title: String,
    pub lines: Vec<Line>,
    /// Coset word of every sector's weight.
    pub sectors: Vec<String>,
    pub dots: Vec<Dot>,
    pub factor_dims: Vec<usize>,
}

/// Euclidean coordinates of a vector in ω-coordinates.
fn embed(rs: &RootSystem, v: &Lat) -> (f64, f64) {
    if rs.rank() == 1 {
        return (v[0] as f64, 0.0);
    }
    let g = |a: Lat, b: Lat| rs.inner_product(&a, &b);
    let (e0, e1) = ([1, 0], [0, 1]);
    let g00 = g(e0, e0);
    let g01 = g(e0, e1);
    let g11 = g(e1, e1);
    let a = g00.sqrt();
    let b = g01 / a;
    let c = (g11 - b * b).sqrt();
    (a * v[0] as f64 + b * v[1] as f64, c * v[1] as f64)
}

fn unit(p: (f64, f64)) -> (f64, f64) {
    let n = (p.0 * p.0 + p.1 * p.1).sqrt();
    (p.0 / n, p.1 / n)
}

pub fn layout(a: &Analysis) -> Diagram {
    let rs = &a.rs;
    let s = &a.setting;
    let zp = weights::zp_sets(rs, &s.ctx, &s.weight);
    let lines = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(k, root)| {
            let kind = if zp.zero.contains(&k) {
                LineKind::Zero
            } else if zp.pole.contains(&k) {
                LineKind::Pole
            } else {
                LineKind::Plain
            };
            let n = unit(embed(rs, &rs.from_alpha(root)));
            Line { root: rs.root_name(root), kind, dir: (-n.1, n.0) }
        })
        .collect();

    // series position -> class, and each class's signature by orbit position
    let d = &a.decomposition;
    let mut class_of = vec![0; d.series.len()];
    for (c, f) in d.factors.iter().enumerate() {
        for &l in &f.layers {
            class_of[l] = c;
        }
    }
    let position: BTreeMap<&str, usize> = s.labels.iter().enumerate().map(|(p, l)| (l.as_str(), p)).collect();

    let rho: Lat = if rs.rank() == 1 { [1, 0] } else { [1, 1] };
    let mut chambers: Vec<Vec<(f64, (f64, f64))>> = vec![Vec::new(); s.orbit.len()];
    for w in 0..rs.order() {
        let p = s
            .orbit
            .position(&s.ctx, &weights::weight_act(rs, &s.ctx, w, &s.weight))
            .expect("orbit is W-stable");
        let dir = unit(embed(rs, &rs.act(rs.inv(w), &rho)));
        chambers[p].push((dir.1.atan2(dir.0), dir));
    }
    let mut dots = Vec::new();
    for (p, list) in chambers.iter_mut().enumerate() {
        list.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut owners = Vec::new();
        for (k, &c) in class_of.iter().enumerate() {
            let n = d.factors[c].signature.iter().find(|(l, _)| position[l.as_str()] == p).map_or(0, |(_, &n)| n);
            owners.extend(std::iter::repeat(k).take(n));
        }
        for (j, &k) in owners.iter().enumerate() {
            let (angle, dir) = list[j % list.len()];
            let r = 0.62 + 0.14 * (j / list.len()) as f64;
            dots.push(Dot { sector: p, factor: k, pos: (dir.0 * r, dir.1 * r), angle });
        }
    }
    Diagram {
        title: format!("{} {}", rs.kind(), weights_text(a)),
        lines,
        sectors: s.labels.clone(),
        dots,
        factor_dims: d.series.clone(),
    }
}

fn weights_text(a: &Analysis) -> String {
    let s = &a.setting;
    let vals: Vec<String> = s.weight.alpha_values(&a.rs, &s.ctx).iter().map(|v| s.ctx.to_expr(v)).collect();
    format!("t(alpha) = ({}) at q = zeta_{}", vals.join(", "), a.realized_order)
}

fn degrees(angle: f64) -> f64 {
    let d = angle * 180.0 / PI;
    if d < -1e-9 {
        d + 360.0
    } else {
        d.abs()
    }
}

pub fn render_ascii(d: &Diagram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", d.title);
    let _ = writeln!(out, "hyperplanes:");
    for l in &d.lines {
        let _ = writeln!(out, "  H_{:<12} {:<7} {}", l.root, l.kind.style(), l.kind.class());
    }
    let _ = writeln!(out, "sectors:");
    let mut order: Vec<usize> = (0..d.sectors.len()).collect();
    let first_angle = |p: usize| {
        d.dots.iter().filter(|x| x.sector == p).map(|x| degrees(x.angle)).fold(f64::INFINITY, f64::min)
    };
    order.sort_by(|&a, &b| first_angle(a).partial_cmp(&first_angle(b)).unwrap());
    for p in order {
        let mut ds: Vec<&Dot> = d.dots.iter().filter(|x| x.sector == p).collect();
        ds.sort_by(|a, b| degrees(a.angle).partial_cmp(&degrees(b.angle)).unwrap());
        let marks: Vec<String> = ds.iter().map(|x| format!("o{}@{:.0}", x.factor, degrees(x.angle))).collect();
        let _ = writeln!(out, "  {:<12} {}", d.sectors[p], marks.join(" "));
    }
    let _ = writeln!(out, "factors:");
    for (k, dim) in d.factor_dims.iter().enumerate() {
        let mut where_: Vec<&str> = d.dots.iter().filter(|x| x.factor == k).map(|x| d.sectors[x.sector].as_str()).collect();
        where_.dedup();
        let _ = writeln!(out, "  factor-{k}: dim {dim}, joined dots in {}", where_.join(" "));
    }
    out
}

pub fn render_svg(d: &Diagram) -> String {
    let mut out = String::new();
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.3 -1.3 2.6 2.75\" width=\"520\" height=\"550\">\n");
    out.push_str(
        "<style>\n\
         line { stroke: #222; stroke-width: 0.012; }\n\
         .p-line { stroke-dasharray: 0.06 0.04; }\n\
         .n-line { stroke-dasharray: 0.01 0.03; stroke: #888; }\n\
         circle { stroke: none; }\n\
         polyline { fill: none; stroke-width: 0.02; stroke-opacity: 0.6; }\n\
         text { font-family: monospace; font-size: 0.06px; }\n\
         </style>\n",
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&d.title));
    for l in &d.lines {
        let (x, y) = (l.dir.0 * 1.15, -l.dir.1 * 1.15);
        let _ = writeln!(
            out,
            "<line class=\"{}\" data-root=\"{}\" x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\"/>",
            l.kind.class(),
            escape(&l.root),
            -x,
            -y,
            x,
            y
        );
    }
    let palette = ["#c0392b", "#2471a3", "#229954", "#b9770e", "#7d3c98", "#17a589", "#a04000", "#2e4053"];
    for k in 0..d.factor_dims.len() {
        let colour = palette[k % palette.len()];
        let mut pts: Vec<&Dot> = d.dots.iter().filter(|x| x.factor == k).collect();
        pts.sort_by(|a, b| degrees(a.angle).partial_cmp(&degrees(b.angle)).unwrap());
        if pts.len() > 1 {
            let coords: Vec<String> = pts.iter().map(|p| format!("{:.4},{:.4}", p.pos.0, -p.pos.1)).collect();
            let _ = writeln!(out, "<polyline class=\"factor-{k}\" stroke=\"{colour}\" points=\"{}\"/>", coords.join(" "));
        }
        for p in pts {
            let _ = writeln!(
                out,
                "<circle class=\"dot factor-{k}\" fill=\"{colour}\" cx=\"{:.4}\" cy=\"{:.4}\" r=\"0.035\"/>",
                p.pos.0,
                -p.pos.1
            );
        }
    }
    for (p, name) in d.sectors.iter().enumerate() {
        if let Some(dot) = d.dots.iter().find(|x| x.sector == p) {
            let (x, y) = (dot.angle.cos() * 1.02, -dot.angle.sin() * 1.02);
            let _ = writeln!(out, "<text x=\"{x:.4}\" y=\"{y:.4}\" text-anchor=\"middle\">{}</text>", escape(name));
        }
    }
    let _ = writeln!(out, "<text x=\"-1.25\" y=\"1.4\">{}</text>", escape(&d.title));
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
