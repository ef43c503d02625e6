//! Deterministic SVG output for scenes and schematic diagrams.
//!
//! Geometry stays in math orientation; a single `scale(1,-1)` group flips
//! it for display. Coordinates are printed with six decimals.

use std::fmt::Write as _;

use crate::arc::PolygonalArc;
use crate::error::{Error, Result};
use crate::geom::{bbox, Line, Point};
use crate::guide::LinkKind;
use crate::hull::ConvexHull;
use crate::schematic::SchematicDiagram;
use crate::solver::{Analysis, SupportPairSolution};

const STYLE: &str = "\
.arc{fill:none;stroke:#1f1f1f;stroke-width:1.5px}\
.hull{fill:#eef3fb;stroke:#7a8ca8;stroke-width:1px}\
.guidepath{fill:none;stroke:#2b5fb3;stroke-width:2.5px}\
.base{fill:none;stroke:#b3472b;stroke-width:2.5px}\
.cap{fill:none;stroke:#2b8a4a;stroke-width:2.5px}\
.crossing-link{fill:none;stroke:#8a6d2b;stroke-width:1px;stroke-dasharray:4 3}\
.m-line{stroke:#c0392b;stroke-width:1.5px}\
.n-line{stroke:#8e44ad;stroke-width:1.5px}\
.labels circle{fill:#111}\
.labels text{font:12px sans-serif;fill:#111}\
.strips line{stroke:#999;stroke-width:1px}\
.upsilon{fill:none;stroke:#2b5fb3;stroke-width:2px}\
.phi{fill:none;stroke:#b3472b;stroke-width:2px}\
.delta line{stroke:#111;stroke-width:2px}\
.queries line{stroke:#555;stroke-width:1px;stroke-dasharray:5 4}\
.queries circle{fill:#c0392b}\
*{vector-effect:non-scaling-stroke}";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StyleClass {
    Arc,
    Hull,
    GuidePath,
    Base,
    Cap,
    CrossingLink,
    MLine,
    NLine,
    Labels,
}

impl StyleClass {
    pub fn css(self) -> &'static str {
        match self {
            Self::Arc => "arc",
            Self::Hull => "hull",
            Self::GuidePath => "guidepath",
            Self::Base => "base",
            Self::Cap => "cap",
            Self::CrossingLink => "crossing-link",
            Self::MLine => "m-line",
            Self::NLine => "n-line",
            Self::Labels => "labels",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Path { points: Vec<Point>, closed: bool },
    /// Unbounded; drawn across the whole view.
    Line(Line),
    Marker { at: Point, label: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub class: StyleClass,
    pub shapes: Vec<Shape>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Scene {
    pub layers: Vec<Layer>,
}

impl Scene {
    pub fn push(&mut self, class: StyleClass, shapes: Vec<Shape>) {
        if !shapes.is_empty() {
            self.layers.push(Layer { class, shapes });
        }
    }

    pub fn hull_only(an: &Analysis) -> Self {
        let mut scene = Self::default();
        scene.push(StyleClass::Hull, vec![closed(an.hull.vertices().to_vec())]);
        scene
    }

    /// Arc, hull, guide path and locales, plus the given solutions.
    pub fn from_analysis(an: &Analysis, pairs: &[SupportPairSolution]) -> Self {
        let hull = &an.hull;
        let gp = &an.guide;
        let at = |ids: &[usize]| ids.iter().map(|&i| hull.vertex(i)).collect::<Vec<_>>();

        let mut scene = Self::default();
        scene.push(StyleClass::Hull, vec![closed(hull.vertices().to_vec())]);
        scene.push(StyleClass::Arc, vec![open(an.arc.nodes().to_vec())]);
        scene.push(StyleClass::GuidePath, vec![open(at(&gp.visit_order))]);
        let crossing = gp
            .links
            .iter()
            .filter(|l| l.kind == LinkKind::Crossing)
            .map(|l| open(at(&[l.from, l.to])))
            .collect();
        scene.push(StyleClass::CrossingLink, crossing);
        let bases = an.locales.locales.iter().map(|l| open(at(&[l.base.0, l.base.1]))).collect();
        scene.push(StyleClass::Base, bases);
        let caps = an
            .locales
            .locales
            .iter()
            .map(|l| {
                let mut ids = vec![l.base.0];
                ids.extend(&l.cap);
                ids.push(l.base.1);
                open(at(&ids))
            })
            .collect();
        scene.push(StyleClass::Cap, caps);

        scene.push(StyleClass::MLine, pairs.iter().map(|p| Shape::Line(p.m)).collect());
        scene.push(StyleClass::NLine, pairs.iter().map(|p| Shape::Line(p.n)).collect());
        let suffix = |k: usize| if pairs.len() > 1 { (k + 1).to_string() } else { String::new() };
        let marks = pairs
            .iter()
            .enumerate()
            .flat_map(|(k, p)| {
                [("u", p.u.point), ("v", p.v.point), ("w", p.w.point)]
                    .map(|(name, at)| Shape::Marker {
                        at,
                        label: format!("{name}{}", suffix(k)),
                    })
            })
            .collect();
        scene.push(StyleClass::Labels, marks);
        scene
    }

    /// Hull, polygon and the parallel pair of a closed arc.
    pub fn closed(arc: &PolygonalArc, hull: &ConvexHull, pair: &SupportPairSolution) -> Self {
        let mut scene = Self::default();
        scene.push(StyleClass::Hull, vec![closed(hull.vertices().to_vec())]);
        scene.push(StyleClass::Arc, vec![closed(arc.nodes().to_vec())]);
        scene.push(StyleClass::MLine, vec![Shape::Line(pair.m)]);
        scene.push(StyleClass::NLine, vec![Shape::Line(pair.n)]);
        let marks = [("u", pair.u.point), ("v", pair.v.point), ("w", pair.w.point)]
            .map(|(name, at)| Shape::Marker {
                at,
                label: name.to_owned(),
            })
            .to_vec();
        scene.push(StyleClass::Labels, marks);
        scene
    }

    fn bounds(&self) -> Option<(Point, Point)> {
        let pts: Vec<Point> = self
            .layers
            .iter()
            .flat_map(|l| &l.shapes)
            .flat_map(|s| match s {
                Shape::Path { points, .. } => points.clone(),
                Shape::Marker { at, .. } => vec![*at],
                Shape::Line(l) => vec![l.point],
            })
            .collect();
        bbox(&pts)
    }
}

fn open(points: Vec<Point>) -> Shape {
    Shape::Path { points, closed: false }
}

fn closed(points: Vec<Point>) -> Shape {
    Shape::Path { points, closed: true }
}

/// Six-decimal fixed notation without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_owned()
    } else {
        s
    }
}

fn points_attr(points: impl IntoIterator<Item = (f64, f64)>) -> String {
    points
        .into_iter()
        .map(|(x, y)| format!("{},{}", num(x), num(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `(min, max)` padded by 5% of the larger extent.
fn padded(lo: Point, hi: Point) -> (Point, Point) {
    let span = (hi.x - lo.x).max(hi.y - lo.y);
    let pad = if span > 0.0 { 0.05 * span } else { 1.0 };
    (lo - Point::new(pad, pad), hi + Point::new(pad, pad))
}

fn open_document(out: &mut String, lo: Point, hi: Point) {
    let (w, h) = (hi.x - lo.x, hi.y - lo.y);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(lo.x),
        num(-hi.y),
        num(w),
        num(h)
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    let _ = writeln!(out, r#"<g transform="scale(1,-1)">"#);
}

fn close_document(out: &mut String) {
    out.push_str("</g>\n</svg>\n");
}

pub fn render_scene(scene: &Scene) -> Result<String> {
    let (lo, hi) = scene
        .bounds()
        .ok_or_else(|| Error::InvalidArgument("cannot render an empty scene".into()))?;
    let (lo, hi) = padded(lo, hi);
    let reach = lo.dist(hi);
    let marker_r = 0.008 * reach;

    let mut out = String::new();
    open_document(&mut out, lo, hi);
    for layer in &scene.layers {
        let _ = writeln!(out, r#"<g class="{}">"#, layer.class.css());
        for shape in &layer.shapes {
            match shape {
                Shape::Path { points, closed: false } => {
                    let _ = writeln!(
                        out,
                        r#"<polyline points="{}"/>"#,
                        points_attr(points.iter().map(|p| (p.x, p.y)))
                    );
                }
                Shape::Path { points, closed: true } => {
                    let d: Vec<String> = points
                        .iter()
                        .enumerate()
                        .map(|(i, p)| format!("{}{} {}", if i == 0 { "M" } else { "L" }, num(p.x), num(p.y)))
                        .collect();
                    let _ = writeln!(out, r#"<path d="{} Z"/>"#, d.join(" "));
                }
                Shape::Line(l) => {
                    let d = l.dir.unit() * reach;
                    let (a, b) = (l.point - d, l.point + d);
                    let _ = writeln!(
                        out,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                        num(a.x),
                        num(a.y),
                        num(b.x),
                        num(b.y)
                    );
                }
                Shape::Marker { at, label } => {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{}" cy="{}" r="{}"/>"#,
                        num(at.x),
                        num(at.y),
                        num(marker_r)
                    );
                    let _ = writeln!(
                        out,
                        r#"<text x="{}" y="{}" transform="scale(1,-1)">{}</text>"#,
                        num(at.x + 1.5 * marker_r),
                        num(-(at.y + 1.5 * marker_r)),
                        label
                    );
                }
            }
        }
        out.push_str("</g>\n");
    }
    close_document(&mut out);
    Ok(out)
}

/// Strips, both paths, the difference segment and one pair of dashed
/// rules per query angle, with markers where the rules meet the segment.
pub fn render_schematic(sd: &SchematicDiagram, queries: &[f64]) -> String {
    let (lo, hi) = padded(Point::new(0.0, -180.0), Point::new(sd.delta_total, 180.0));
    let mut out = String::new();
    open_document(&mut out, lo, hi);

    out.push_str("<g class=\"strips\">\n");
    let mut edges: Vec<f64> = sd.strips.iter().map(|s| s.x_left).collect();
    edges.push(sd.delta_total);
    for x in edges {
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="-180.000000" x2="{0}" y2="180.000000"/>"#,
            num(x)
        );
    }
    let _ = writeln!(
        out,
        r#"<line x1="0.000000" y1="0.000000" x2="{}" y2="0.000000"/>"#,
        num(sd.delta_total)
    );
    out.push_str("</g>\n");

    for (class, pts) in [("upsilon", sd.upper_breakpoints()), ("phi", sd.lower_breakpoints())] {
        let _ = writeln!(out, r#"<g class="{class}"><polyline points="{}"/></g>"#, points_attr(pts));
    }
    let _ = writeln!(
        out,
        r#"<g class="delta"><line x1="0.000000" y1="{}" x2="{}" y2="{}"/></g>"#,
        num(sd.phi_l),
        num(sd.delta_total),
        num(sd.phi_r)
    );

    if !queries.is_empty() {
        out.push_str("<g class=\"queries\">\n");
        for &phi in queries {
            let ordinates: &[f64] = if phi == 0.0 { &[0.0] } else { &[phi, -phi] };
            for &s in ordinates {
                let _ = writeln!(
                    out,
                    r#"<line x1="0.000000" y1="{0}" x2="{1}" y2="{0}"/>"#,
                    num(s),
                    num(sd.delta_total)
                );
                if let Some(hit) = sd.solve_ordinate(s) {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{}" cy="{}" r="3.000000"/>"#,
                        num(hit.x_star),
                        num(s)
                    );
                }
            }
        }
        out.push_str("</g>\n");
    }
    close_document(&mut out);
    out
}
