//! Turns schematic solutions into concrete support-line pairs and exposes
//! the top-level entry points for open and closed arcs.

use serde::{Deserialize, Serialize};

use crate::arc::{is_segment_arc, validate_simple, PolygonalArc};
use crate::error::{ensure_structural, Error, Result};
use crate::geom::{directed_angle, AngleDeg, Line, Point, Tolerance};
use crate::guide::{build_guide_path, BoundarySide, GuidePath};
use crate::hull::{convex_hull, Contact, ConvexHull, HullSide};
use crate::locales::{decompose_locales, LocaleDecomposition, TiltTable};
use crate::schematic::{
    build_schematic, crossing_point, query_angle, AbstractSolution, CaseLabel, SchematicDiagram,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcPoint {
    /// Arc-node index.
    pub index: usize,
    pub point: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApexSide {
    Left,
    Right,
    None,
}

/// Which end of the base `u`-`w` the apex lies beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApexEnd {
    U,
    W,
    None,
}

/// Two support lines: `m` through `u` and `w`, `n` through `v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportPairSolution {
    pub m: Line,
    pub n: Line,
    pub u: ArcPoint,
    pub v: ArcPoint,
    pub w: ArcPoint,
    /// Locale the pair came from; `None` for closed arcs.
    pub locale: Option<usize>,
    /// Realized |∡(m, n)|, degrees.
    pub phi: f64,
    pub apex: Option<Point>,
    pub apex_side: ApexSide,
    pub apex_end: ApexEnd,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleSolution {
    pub phi: f64,
    pub case: CaseLabel,
    pub pairs: Vec<SupportPairSolution>,
}

/// Every stage of the construction for one open arc.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub arc: PolygonalArc,
    pub tol: Tolerance,
    pub hull: ConvexHull,
    pub guide: GuidePath,
    pub locales: LocaleDecomposition,
    pub tilts: TiltTable,
    pub schematic: SchematicDiagram,
}

/// Rejects closed, non-simple and segment arcs.
pub fn check_open_arc(arc: &PolygonalArc, tol: &Tolerance) -> Result<()> {
    if arc.is_closed() {
        return Err(Error::UnsupportedArc("closed arcs are handled by solve_closed".into()));
    }
    validate_simple(arc, tol).into_result()?;
    if is_segment_arc(arc, tol) {
        return Err(Error::UnsupportedArc("the arc is a line segment".into()));
    }
    Ok(())
}

impl Analysis {
    pub fn new(arc: &PolygonalArc, tol: Tolerance) -> Result<Self> {
        check_open_arc(arc, &tol)?;
        let hull = convex_hull(arc, &tol)?;
        let guide = build_guide_path(&hull, &tol)?;
        let locales = decompose_locales(&guide, &hull)?;
        let tilts = TiltTable::build(&locales, &guide, &hull, tol.eps_angle)?;
        let schematic = build_schematic(&tilts, tol.eps_angle);
        Ok(Self {
            arc: arc.clone(),
            tol,
            hull,
            guide,
            locales,
            tilts,
            schematic,
        })
    }

    pub fn with_default_tolerance(arc: &PolygonalArc) -> Result<Self> {
        Self::new(arc, arc.tolerance())
    }

    pub fn axis_dir(&self) -> AngleDeg {
        (self.hull.vertex(self.guide.tail) - self.hull.vertex(self.guide.head)).heading()
    }

    fn arc_point(&self, vertex: usize) -> ArcPoint {
        ArcPoint {
            index: self.hull.node_index(vertex),
            point: self.hull.vertex(vertex),
        }
    }

    pub fn parallel(&self) -> Result<SupportPairSolution> {
        realize_solution(&crossing_point(&self.schematic)?, self)
    }

    pub fn solve(&self, phi: f64) -> Result<AngleSolution> {
        let query = query_angle(&self.schematic, phi)?;
        let pairs = query
            .solutions
            .iter()
            .map(|abs| realize_solution(abs, self))
            .collect::<Result<Vec<_>>>()?;
        Ok(AngleSolution {
            phi,
            case: query.case,
            pairs,
        })
    }
}

/// Builds the line pair for one schematic solution and checks it.
pub fn realize_solution(abs: &AbstractSolution, an: &Analysis) -> Result<SupportPairSolution> {
    let (hull, gp, tol) = (&an.hull, &an.guide, &an.tol);
    let loc = an
        .locales
        .get(abs.locale_j)
        .ok_or_else(|| Error::Structural(format!("no locale {}", abs.locale_j)))?;
    let (u, w) = loc.base;
    let m = Line::through(hull.vertex(u), hull.vertex(w));

    let sigma = f64::from(gp.sigma);
    let n_dir = AngleDeg::from_raw(an.axis_dir().value() + sigma * abs.theta_star);
    let cap_upper = loc.base_side == BoundarySide::Lower;
    let normalized_side = if cap_upper { HullSide::Right } else { HullSide::Left };
    let side = if gp.sigma > 0 { normalized_side } else { normalized_side.flipped() };
    let contact = hull.support_contact(n_dir, side, tol);

    let v = contact
        .contact
        .vertices()
        .into_iter()
        .filter(|c| loc.cap.contains(c))
        .min_by_key(|&c| gp.visit_pos[c])
        .ok_or_else(|| {
            Error::Structural(format!(
                "support line at {n_dir} touches {:?}, outside cap of locale {}",
                contact.contact, loc.j
            ))
        })?;
    let (pu, pv, pw) = (gp.visit_pos[u], gp.visit_pos[v], gp.visit_pos[w]);
    ensure_structural!(pu < pv && pv < pw, "contact {v} is not between {u} and {w}");
    let n = Line::new(hull.vertex(v), n_dir);

    let realized = directed_angle(m.dir.unit(), n.dir.unit())?.value().abs();
    ensure_structural!(
        (realized - abs.s.abs()).abs() <= tol.eps_angle,
        "realized angle {realized} differs from {}",
        abs.s.abs()
    );
    for line in [&m, &n] {
        ensure_structural!(
            supports(line, an.arc.nodes(), tol),
            "line through {} at {} is not a support line",
            line.point,
            line.dir
        );
    }

    let (apex, apex_side) = apex_of(&m, &n, hull.vertex(gp.head), an.axis_dir(), tol);
    let apex_end = match apex {
        None => ApexEnd::None,
        Some(p) if (p - m.point).dot(m.dir.unit()) <= tol.eps_len => ApexEnd::U,
        Some(_) => ApexEnd::W,
    };
    Ok(SupportPairSolution {
        m,
        n,
        u: an.arc_point(u),
        v: an.arc_point(v),
        w: an.arc_point(w),
        locale: Some(loc.j),
        phi: realized,
        apex,
        apex_side,
        apex_end,
    })
}

fn supports(line: &Line, nodes: &[Point], tol: &Tolerance) -> bool {
    let d: Vec<f64> = nodes.iter().map(|&p| line.side_distance(p)).collect();
    d.iter().all(|&x| x >= -tol.eps_len) || d.iter().all(|&x| x <= tol.eps_len)
}

/// Apex of the two lines and its side of the head along the axis.
fn apex_of(
    m: &Line,
    n: &Line,
    head: Point,
    axis: AngleDeg,
    tol: &Tolerance,
) -> (Option<Point>, ApexSide) {
    match m.intersect(n, tol) {
        None => (None, ApexSide::None),
        Some(p) => {
            let along = (p - head).dot(axis.unit());
            let side = if along < 0.0 { ApexSide::Left } else { ApexSide::Right };
            (Some(p), side)
        }
    }
}

/// The unique parallel pair of an open arc.
pub fn solve_parallel(arc: &PolygonalArc, tol: &Tolerance) -> Result<SupportPairSolution> {
    Analysis::new(arc, *tol)?.parallel()
}

pub fn solve_at_angle(arc: &PolygonalArc, phi: f64, tol: &Tolerance) -> Result<AngleSolution> {
    Analysis::new(arc, *tol)?.solve(phi)
}

/// A parallel pair for a closed arc: the first hull edge and the opposite
/// support line. No parametric order is required.
pub fn solve_closed(arc: &PolygonalArc, tol: &Tolerance) -> Result<SupportPairSolution> {
    if !arc.is_closed() {
        return Err(Error::UnsupportedArc("solve_closed needs a closed arc".into()));
    }
    validate_simple(arc, tol).into_result()?;
    let hull = convex_hull(arc, tol).map_err(|e| match e {
        Error::DegenerateHull => Error::UnsupportedArc("degenerate hull".into()),
        other => other,
    })?;
    let (u, w) = (0, hull.next(0));
    let m = Line::through(hull.vertex(u), hull.vertex(w));
    let contact = hull.support_contact(m.dir, HullSide::Right, tol);
    let v = match contact.contact {
        Contact::Vertex(v) | Contact::Edge(v, _) => v,
    };
    ensure_structural!(v != u && v != w, "opposite support line touches the base edge");
    let n = Line::new(hull.vertex(v), m.dir);
    let pt = |id: usize| ArcPoint {
        index: hull.node_index(id),
        point: hull.vertex(id),
    };
    Ok(SupportPairSolution {
        m,
        n,
        u: pt(u),
        v: pt(v),
        w: pt(w),
        locale: None,
        phi: 0.0,
        apex: None,
        apex_side: ApexSide::None,
        apex_end: ApexEnd::None,
    })
}
