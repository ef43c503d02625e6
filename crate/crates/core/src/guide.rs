//! The guide path: hull vertices in the order the arc first reaches them,
//! with its axis, the upper/lower boundary split and link classification.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_structural, Error, Result};
use crate::geom::{orient, segments_intersect, IntersectMode, Segment, Tolerance};
use crate::hull::ConvexHull;

/// Default largest hull size [`enumerate_admissible_paths`] accepts.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    /// Lies on the hull boundary.
    Edge,
    /// Crosses the hull interior and meets the axis.
    Crossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Link {
    pub from: usize,
    pub to: usize,
    pub kind: LinkKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundarySide {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuidePath {
    /// Hull vertex ids ordered by arc-node index.
    pub visit_order: Vec<usize>,
    /// Inverse of `visit_order`.
    #[serde(skip)]
    pub visit_pos: Vec<usize>,
    pub head: usize,
    pub second: usize,
    pub penultimate: usize,
    pub tail: usize,
    /// +1 when `second` lies to the left of the axis, -1 otherwise.
    pub sigma: i8,
    pub axis_on_boundary: bool,
    /// Upper boundary vertices (side of `second`), from head towards tail.
    pub upper: Vec<usize>,
    /// Lower boundary vertices, from head towards tail.
    pub lower: Vec<usize>,
    pub links: Vec<Link>,
}

impl GuidePath {
    pub fn len(&self) -> usize {
        self.visit_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.visit_order.is_empty()
    }

    pub fn side_of(&self, v: usize) -> Option<BoundarySide> {
        if self.upper.contains(&v) {
            Some(BoundarySide::Upper)
        } else if self.lower.contains(&v) {
            Some(BoundarySide::Lower)
        } else {
            None
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.links.iter().filter(|l| l.kind == LinkKind::Crossing).count()
    }
}

pub fn build_guide_path(hull: &ConvexHull, tol: &Tolerance) -> Result<GuidePath> {
    let n = hull.len();
    if n < 3 {
        return Err(Error::DegenerateHull);
    }
    let mut visit_order: Vec<usize> = (0..n).collect();
    visit_order.sort_by_key(|&v| hull.node_index(v));
    let mut visit_pos = vec![0; n];
    for (i, &v) in visit_order.iter().enumerate() {
        visit_pos[v] = i;
    }
    let (head, second) = (visit_order[0], visit_order[1]);
    let (penultimate, tail) = (visit_order[n - 2], visit_order[n - 1]);

    let side = orient(hull.vertex(head), hull.vertex(tail), hull.vertex(second), tol);
    ensure_structural!(side != 0, "second guide vertex is collinear with the axis");
    let sigma = side;

    let walk = |step: &dyn Fn(usize) -> usize| {
        let mut out = Vec::new();
        let mut v = step(head);
        while v != tail {
            out.push(v);
            v = step(v);
        }
        out
    };
    let ccw = walk(&|v| hull.next(v));
    let cw = walk(&|v| hull.prev(v));
    let (upper, lower) = if ccw.contains(&second) { (ccw, cw) } else { (cw, ccw) };

    let mut gp = GuidePath {
        visit_order,
        visit_pos,
        head,
        second,
        penultimate,
        tail,
        sigma,
        axis_on_boundary: hull.adjacent(head, tail),
        upper,
        lower,
        links: Vec::new(),
    };
    gp.links = classify_links(&gp, hull, tol)?;
    check_structure(&gp, hull)?;
    Ok(gp)
}

/// Marks each link as a boundary edge or an axis-crossing link.
pub fn classify_links(gp: &GuidePath, hull: &ConvexHull, tol: &Tolerance) -> Result<Vec<Link>> {
    let axis = Segment::new(hull.vertex(gp.head), hull.vertex(gp.tail));
    gp.visit_order
        .windows(2)
        .map(|w| {
            let (from, to) = (w[0], w[1]);
            if hull.adjacent(from, to) {
                return Ok(Link {
                    from,
                    to,
                    kind: LinkKind::Edge,
                });
            }
            let link = Segment::new(hull.vertex(from), hull.vertex(to));
            let meets = segments_intersect(&link, &axis, IntersectMode::Any, tol)?;
            ensure_structural!(meets, "crossing link {from}->{to} misses the axis");
            Ok(Link {
                from,
                to,
                kind: LinkKind::Crossing,
            })
        })
        .collect()
}

fn check_structure(gp: &GuidePath, hull: &ConvexHull) -> Result<()> {
    ensure_structural!(
        hull.adjacent(gp.head, gp.second),
        "first guide link is not a hull edge"
    );
    ensure_structural!(
        hull.adjacent(gp.penultimate, gp.tail),
        "last guide link is not a hull edge"
    );
    for side in [&gp.upper, &gp.lower] {
        let visited: Vec<usize> =
            gp.visit_order.iter().copied().filter(|v| side.contains(v)).collect();
        ensure_structural!(
            &visited == side,
            "guide path does not follow the boundary order on one side"
        );
    }
    let edge_links = gp.links.len() - gp.crossing_count();
    ensure_structural!(edge_links < hull.len(), "guide path traverses every hull edge");
    Ok(())
}

/// Number of admissible paths on a strictly convex n-gon: n·2^(n-2).
pub fn count_admissible_paths(n: usize) -> Result<u128> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need n >= 3, got {n}")));
    }
    if n > 120 {
        return Err(Error::TooLarge { n, cap: 120 });
    }
    Ok(n as u128 * (1u128 << (n - 2)))
}

/// Every admissible path on the hull: each step extends the visited
/// boundary arc at one of its two ends.
pub fn enumerate_admissible_paths(hull: &ConvexHull, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = hull.len();
    if n < 3 {
        return Err(Error::DegenerateHull);
    }
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    fn extend(
        hull: &ConvexHull,
        path: &mut Vec<usize>,
        lo: usize,
        hi: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if path.len() == hull.len() {
            out.push(path.clone());
            return;
        }
        let before = hull.prev(lo);
        let after = hull.next(hi);
        path.push(before);
        extend(hull, path, before, hi, out);
        path.pop();
        if after != before {
            path.push(after);
            extend(hull, path, lo, after, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for start in 0..n {
        let mut path = vec![start];
        extend(hull, &mut path, start, start, &mut out);
    }
    Ok(out)
}
