//! Brute-force enumeration of support-line pairs, used to cross-check the
//! solver. Only the geometry primitives and the hull are shared with it.

use serde::Serialize;

use crate::arc::{is_segment_arc, validate_simple, PolygonalArc};
use crate::error::{Error, Result};
use crate::geom::{directed_angle, AngleDeg, Line, Tolerance};
use crate::hull::{convex_hull, HullSide};
use crate::solver::{solve_at_angle, SupportPairSolution};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OraclePair {
    pub m: Line,
    pub n: Line,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// Hull vertex id at the start of the generating edge.
    pub source_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub phi: f64,
    pub pairs: Vec<OraclePair>,
}

impl OracleResult {
    pub fn count(&self) -> usize {
        self.pairs.len()
    }
}

fn same_pair(a: (&Line, &Line), b: (&Line, &Line), tol: &Tolerance) -> bool {
    (a.0.same_line(b.0, tol) && a.1.same_line(b.1, tol))
        || (a.0.same_line(b.1, tol) && a.1.same_line(b.0, tol))
}

pub fn brute_force_pairs(arc: &PolygonalArc, phi: f64, tol: &Tolerance) -> Result<OracleResult> {
    if arc.is_closed() {
        return Err(Error::UnsupportedArc("the oracle handles open arcs".into()));
    }
    if !(0.0..180.0).contains(&phi) {
        return Err(Error::InvalidArgument(format!("phi = {phi} is outside [0, 180)")));
    }
    validate_simple(arc, tol).into_result()?;
    if is_segment_arc(arc, tol) {
        return Err(Error::UnsupportedArc("the arc is a line segment".into()));
    }
    let hull = convex_hull(arc, tol)?;

    let rotations: &[f64] = if phi == 0.0 { &[0.0] } else { &[phi, -phi] };
    let mut pairs: Vec<OraclePair> = Vec::new();
    for edge in hull.edges() {
        let (a, b) = (hull.node_index(edge.from), hull.node_index(edge.to));
        let (lo, hi) = (a.min(b), a.max(b));
        let m = Line::new(hull.vertex(edge.from), edge.dir);
        for &s in rotations {
            let dir = AngleDeg::new(edge.dir.value() + s)?;
            let contact = hull.support_contact(dir, HullSide::Right, tol);
            let Some(v) = contact
                .contact
                .vertices()
                .into_iter()
                .map(|id| (hull.node_index(id), id))
                .filter(|&(k, _)| lo < k && k < hi)
                .min()
            else {
                continue;
            };
            let n = Line::new(hull.vertex(v.1), dir);
            if pairs.iter().any(|p| same_pair((&p.m, &p.n), (&m, &n), tol)) {
                continue;
            }
            let pair = OraclePair {
                m,
                n,
                u: lo,
                v: v.0,
                w: hi,
                source_edge: edge.from,
            };
            check_lambda(arc, &pair.m, &pair.n, (pair.u, pair.v, pair.w), phi, tol)
                .map_err(Error::Structural)?;
            pairs.push(pair);
        }
    }
    Ok(OracleResult { phi, pairs })
}

/// Direct check of the defining property: `m` through nodes `u`, `w`, `n`
/// through node `v`, both lines supporting, u < v < w in parameter order,
/// and the lines meet at angle `phi` with the arc between them.
pub fn check_lambda(
    arc: &PolygonalArc,
    m: &Line,
    n: &Line,
    (u, v, w): (usize, usize, usize),
    phi: f64,
    tol: &Tolerance,
) -> std::result::Result<(), String> {
    let nodes = arc.nodes();
    if !(u.min(w) < v && v < u.max(w) && w < nodes.len() && u < nodes.len()) {
        return Err(format!("indices ({u}, {v}, {w}) are not in parametric order"));
    }
    let on = |l: &Line, k: usize| l.side_distance(nodes[k]).abs() <= tol.eps_len;
    if !(on(m, u) && on(m, w) && on(n, v)) {
        return Err("contact nodes are not on their lines".into());
    }
    // orient both lines so that the arc lies left of m and right of n
    let side = |l: &Line| {
        let d: Vec<f64> = nodes.iter().map(|&p| l.side_distance(p)).collect();
        if d.iter().all(|&x| x >= -tol.eps_len) {
            Some(1.0)
        } else if d.iter().all(|&x| x <= tol.eps_len) {
            Some(-1.0)
        } else {
            None
        }
    };
    let (Some(sm), Some(sn)) = (side(m), side(n)) else {
        return Err("a line cuts through the arc".into());
    };
    let md = m.dir.unit() * sm;
    let nd = n.dir.unit() * -sn;
    let angle = directed_angle(md, nd).map_err(|e| e.to_string())?.value().abs();
    if (angle - phi).abs() > tol.eps_angle {
        return Err(format!("lines meet at {angle}, expected {phi}"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub phi: f64,
    pub case: String,
    pub solver_count: usize,
    pub oracle_count: usize,
    pub agree: bool,
    pub mismatches: Vec<String>,
}

/// Runs both pipelines and matches their pairs as unordered line pairs.
pub fn compare_with_solver(arc: &PolygonalArc, phi: f64, tol: &Tolerance) -> Result<AgreementReport> {
    let solved = solve_at_angle(arc, phi, tol)?;
    let oracle = brute_force_pairs(arc, phi, tol)?;
    let mut mismatches = Vec::new();
    if solved.pairs.len() != oracle.count() {
        mismatches.push(format!(
            "solver found {} pairs, oracle {}",
            solved.pairs.len(),
            oracle.count()
        ));
    }
    let describe = |p: &SupportPairSolution| {
        format!("m {} @ {}, n {} @ {}", p.m.point, p.m.dir, p.n.point, p.n.dir)
    };
    for p in &solved.pairs {
        if !oracle.pairs.iter().any(|o| same_pair((&p.m, &p.n), (&o.m, &o.n), tol)) {
            mismatches.push(format!("solver pair not found by oracle: {}", describe(p)));
        }
        if let Err(e) = check_lambda(arc, &p.m, &p.n, (p.u.index, p.v.index, p.w.index), phi, tol) {
            mismatches.push(format!("solver pair fails direct check: {e}"));
        }
    }
    for o in &oracle.pairs {
        if !solved.pairs.iter().any(|p| same_pair((&p.m, &p.n), (&o.m, &o.n), tol)) {
            mismatches.push(format!(
                "oracle pair not found by solver: m {} @ {}, n {} @ {}",
                o.m.point, o.m.dir, o.n.point, o.n.dir
            ));
        }
    }
    Ok(AgreementReport {
        phi,
        case: solved.case.to_string(),
        solver_count: solved.pairs.len(),
        oracle_count: oracle.count(),
        agree: mismatches.is_empty(),
        mismatches,
    })
}
