//! Strict convex hull of the arc nodes and support-line queries.

use serde::Serialize;

use crate::arc::{is_segment_arc, PolygonalArc};
use crate::error::{Error, Result};
use crate::geom::{orient, AngleDeg, Line, Point, Tolerance};

/// Vertices in counterclockwise order, starting at the lexicographically
/// smallest `(x, y)`. Vertex ids are positions in this cycle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexHull {
    vertices: Vec<Point>,
    node_index: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HullSide {
    Left,
    Right,
}

impl HullSide {
    pub fn flipped(self) -> Self {
        match self {
            HullSide::Left => HullSide::Right,
            HullSide::Right => HullSide::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    Vertex(usize),
    /// Boundary edge, endpoints in counterclockwise order.
    Edge(usize, usize),
}

impl Contact {
    pub fn vertices(&self) -> Vec<usize> {
        match *self {
            Contact::Vertex(v) => vec![v],
            Contact::Edge(a, b) => vec![a, b],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportContact {
    pub line: Line,
    pub contact: Contact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HullEdge {
    pub from: usize,
    pub to: usize,
    pub dir: AngleDeg,
}

pub fn convex_hull(arc: &PolygonalArc, tol: &Tolerance) -> Result<ConvexHull> {
    if is_segment_arc(arc, tol) {
        return Err(Error::DegenerateHull);
    }
    let mut pts: Vec<(Point, usize)> = arc.nodes().iter().copied().zip(0..).collect();
    pts.sort_by(|(a, _), (b, _)| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));

    let mut chain: Vec<(Point, usize)> = Vec::with_capacity(pts.len() + 1);
    // lower chain, then upper chain
    for &p in &pts {
        while chain.len() >= 2
            && orient(chain[chain.len() - 2].0, chain[chain.len() - 1].0, p.0, tol) <= 0
        {
            chain.pop();
        }
        chain.push(p);
    }
    chain.pop();
    let lower_len = chain.len();
    for &p in pts.iter().rev() {
        while chain.len() >= lower_len + 2
            && orient(chain[chain.len() - 2].0, chain[chain.len() - 1].0, p.0, tol) <= 0
        {
            chain.pop();
        }
        chain.push(p);
    }
    chain.pop();

    // the chain pass can leave a near-collinear vertex at the seams
    loop {
        let n = chain.len();
        if n < 3 {
            return Err(Error::DegenerateHull);
        }
        let bad = (0..n).find(|&i| {
            orient(chain[(i + n - 1) % n].0, chain[i].0, chain[(i + 1) % n].0, tol) <= 0
        });
        match bad {
            Some(i) => {
                chain.remove(i);
            }
            None => break,
        }
    }

    let (vertices, node_index) = chain.into_iter().unzip();
    Ok(ConvexHull {
        vertices,
        node_index,
    })
}

impl ConvexHull {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> Point {
        self.vertices[id]
    }

    /// Arc-node index of hull vertex `id`.
    pub fn node_index(&self, id: usize) -> usize {
        self.node_index[id]
    }

    pub fn node_indices(&self) -> &[usize] {
        &self.node_index
    }

    pub fn next(&self, id: usize) -> usize {
        (id + 1) % self.len()
    }

    pub fn prev(&self, id: usize) -> usize {
        (id + self.len() - 1) % self.len()
    }

    /// Boundary adjacency.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && (self.next(a) == b || self.next(b) == a)
    }

    pub fn edge_dir(&self, from: usize) -> AngleDeg {
        (self.vertices[self.next(from)] - self.vertices[from]).heading()
    }

    pub fn edges(&self) -> Vec<HullEdge> {
        (0..self.len())
            .map(|i| HullEdge {
                from: i,
                to: self.next(i),
                dir: self.edge_dir(i),
            })
            .collect()
    }

    /// Inside or on the boundary, within tolerance.
    pub fn contains(&self, p: Point, tol: &Tolerance) -> bool {
        (0..self.len()).all(|i| orient(self.vertices[i], self.vertices[self.next(i)], p, tol) >= 0)
    }

    /// The support line heading in `dir` with the hull on `side` of it.
    pub fn support_contact(&self, dir: AngleDeg, side: HullSide, tol: &Tolerance) -> SupportContact {
        // hull on the right of `dir` is hull on the left of the reversed line
        let eff = match side {
            HullSide::Left => dir,
            HullSide::Right => AngleDeg::from_raw(dir.value() + 180.0),
        };
        let n = self.len();
        let edges: Vec<AngleDeg> = (0..n).map(|i| self.edge_dir(i)).collect();
        let contact = if let Some(i) = (0..n).find(|&i| tol.angles_equal(edges[i], eff)) {
            Contact::Edge(i, self.next(i))
        } else {
            let fan = (0..n).find(|&i| {
                let incoming = edges[self.prev(i)].value();
                let turn = AngleDeg::from_raw(edges[i].value() - incoming).positive();
                let offset = AngleDeg::from_raw(eff.value() - incoming).positive();
                offset > 0.0 && offset < turn
            });
            let v = fan.unwrap_or_else(|| {
                let u = eff.unit();
                (0..n)
                    .min_by(|&a, &b| u.cross(self.vertices[a]).total_cmp(&u.cross(self.vertices[b])))
                    .expect("hull is non-empty")
            });
            Contact::Vertex(v)
        };
        let anchor = match contact {
            Contact::Vertex(v) | Contact::Edge(v, _) => self.vertices[v],
        };
        SupportContact {
            line: Line::new(anchor, dir),
            contact,
        }
    }
}
