//! Polygonal arc model: parsing (JSON / CSV), serialization, and the
//! simplicity check.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orient, segments_intersect, IntersectMode, Point, Segment, Tolerance};

/// An ordered node sequence. Index order is the parametric order of the arc.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalArc {
    nodes: Vec<Point>,
    closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArcFormat {
    Json,
    Csv,
}

impl ArcFormat {
    /// Guess the format from a file extension; JSON unless it ends in `.csv`.
    pub fn from_path(path: &str) -> Self {
        if path.to_ascii_lowercase().ends_with(".csv") {
            ArcFormat::Csv
        } else {
            ArcFormat::Json
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ArcFile {
    #[serde(default)]
    closed: bool,
    nodes: Vec<[f64; 2]>,
}

impl PolygonalArc {
    /// Builds an arc, checking only node count and finiteness. A closed arc
    /// whose last node repeats the first has the repeat dropped.
    pub fn new(mut nodes: Vec<Point>, closed: bool) -> Result<Self> {
        if closed && nodes.len() > 1 && nodes.first() == nodes.last() {
            nodes.pop();
        }
        let min = if closed { 3 } else { 2 };
        if nodes.len() < min {
            return Err(Error::InvalidArc(format!(
                "{} arc needs at least {min} nodes, got {}",
                if closed { "closed" } else { "open" },
                nodes.len()
            )));
        }
        if let Some(i) = nodes.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidArc(format!("node {i} has a non-finite coordinate")));
        }
        Ok(Self { nodes, closed })
    }

    pub fn open(nodes: impl IntoIterator<Item = impl Into<Point>>) -> Result<Self> {
        Self::new(nodes.into_iter().map(Into::into).collect(), false)
    }

    pub fn closed(nodes: impl IntoIterator<Item = impl Into<Point>>) -> Result<Self> {
        Self::new(nodes.into_iter().map(Into::into).collect(), true)
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Default tolerance scaled to this arc's bounding box.
    pub fn tolerance(&self) -> Tolerance {
        Tolerance::for_points(&self.nodes)
    }

    /// Segment `i` joins node `i` to node `i + 1` (wrapping for closed arcs).
    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.nodes.len()
        } else {
            self.nodes.len() - 1
        }
    }

    pub fn segment(&self, i: usize) -> Segment {
        let n = self.nodes.len();
        Segment::new(self.nodes[i], self.nodes[(i + 1) % n])
    }

    /// The same point set traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        Self {
            nodes,
            closed: self.closed,
        }
    }

    /// Applies `f` to every node.
    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        Self::new(self.nodes.iter().copied().map(f).collect(), self.closed)
    }

    pub fn to_json(&self) -> String {
        let file = ArcFile {
            closed: self.closed,
            nodes: self.nodes.iter().map(|p| [p.x, p.y]).collect(),
        };
        serde_json::to_string(&file).expect("arc serialization is infallible")
    }
}

pub fn parse_arc(source: &str, format: ArcFormat) -> Result<PolygonalArc> {
    if source.trim().is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty input".into(),
        });
    }
    match format {
        ArcFormat::Json => parse_json(source),
        ArcFormat::Csv => parse_csv(source),
    }
}

fn parse_json(source: &str) -> Result<PolygonalArc> {
    let file: ArcFile = serde_json::from_str(source).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    PolygonalArc::new(file.nodes.into_iter().map(Point::from).collect(), file.closed)
}

fn parse_csv(source: &str) -> Result<PolygonalArc> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source.as_bytes());
    let mut nodes = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::Parse {
                line,
                column: 1,
                message: e.to_string(),
            }
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed = (record.len() == 2)
            .then(|| Some((record[0].parse::<f64>().ok()?, record[1].parse::<f64>().ok()?)))
            .flatten();
        match parsed {
            Some((x, y)) => nodes.push(Point::new(x, y)),
            // a non-numeric first row is a header
            None if first && record.len() == 2 => {}
            None => {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("expected `x,y`, got {:?}", record.iter().collect::<Vec<_>>()),
                })
            }
        }
        first = false;
    }
    PolygonalArc::new(nodes, false)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Segment `segment` has zero length.
    DuplicateNode { segment: usize },
    /// Adjacent segments fold back over each other.
    Backtrack { first: usize, second: usize },
    /// Non-adjacent segments share a point.
    Crossing { first: usize, second: usize },
    /// An open arc whose end is its start.
    EndpointsCoincide,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode { segment } => {
                write!(f, "segment {segment} has zero length (duplicate consecutive node)")
            }
            Violation::Backtrack { first, second } => {
                write!(f, "adjacent segments {first} and {second} overlap")
            }
            Violation::Crossing { first, second } => {
                write!(f, "segments {first} and {second} intersect")
            }
            Violation::EndpointsCoincide => write!(f, "open arc starts and ends at the same point"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidArc(v.to_string())),
        }
    }
}

/// All-pairs simplicity check; O(P²).
pub fn validate_simple(arc: &PolygonalArc, tol: &Tolerance) -> ValidationReport {
    let nodes = arc.nodes();
    let p = nodes.len();
    let m = arc.segment_count();
    let mut violations = Vec::new();

    let degenerate: Vec<bool> = (0..m).map(|i| arc.segment(i).len() <= tol.eps_len).collect();
    for (segment, _) in degenerate.iter().enumerate().filter(|(_, d)| **d) {
        violations.push(Violation::DuplicateNode { segment });
    }
    if !arc.is_closed() && p > 2 && nodes[0].dist(nodes[p - 1]) <= tol.eps_len {
        violations.push(Violation::EndpointsCoincide);
    }

    let adjacent = |i: usize, j: usize| j == i + 1 || (arc.is_closed() && i == 0 && j == m - 1);
    for i in 0..m {
        if degenerate[i] {
            continue;
        }
        for j in i + 1..m {
            if degenerate[j] {
                continue;
            }
            if adjacent(i, j) {
                // shared node is the end of i and the start of j, or the reverse for the wrap pair
                let (first, second) = if j == i + 1 { (i, j) } else { (j, i) };
                let a = arc.segment(first).a;
                let b = arc.segment(first).b;
                let c = arc.segment(second).b;
                if orient(a, b, c, tol) == 0 && (b - a).dot(c - b) < 0.0 {
                    violations.push(Violation::Backtrack { first: i, second: j });
                }
            } else if segments_intersect(&arc.segment(i), &arc.segment(j), IntersectMode::Any, tol)
                .expect("degenerate segments are skipped")
            {
                violations.push(Violation::Crossing { first: i, second: j });
            }
        }
    }
    ValidationReport { violations }
}

/// True when every node lies on one line within tolerance.
pub fn is_segment_arc(arc: &PolygonalArc, tol: &Tolerance) -> bool {
    let nodes = arc.nodes();
    let a = nodes[0];
    let b = nodes
        .iter()
        .copied()
        .max_by(|p, q| a.dist(*p).total_cmp(&a.dist(*q)))
        .expect("arc is non-empty");
    if a.dist(b) <= tol.eps_len {
        return true;
    }
    nodes.iter().all(|&c| orient(a, b, c, tol) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pentagon() -> PolygonalArc {
        PolygonalArc::open([(0., 0.), (1., 1.), (2., -1.), (3., 1.), (4., 0.)]).unwrap()
    }

    #[test]
    fn parse_json_example() {
        let arc = parse_arc(
            r#"{"closed":false,"nodes":[[0,0],[1,1],[2,-1],[3,1],[4,0]]}"#,
            ArcFormat::Json,
        )
        .unwrap();
        assert_eq!(arc, pentagon());
        assert!(!arc.is_closed());
    }

    #[test]
    fn parse_csv_example() {
        let arc = parse_arc("0,1\n0,0\n1,0\n1,1", ArcFormat::Csv).unwrap();
        assert_eq!(arc.len(), 4);
        assert_eq!(arc.nodes()[0], Point::new(0., 1.));
        assert!(!arc.is_closed());
    }

    #[test]
    fn parse_csv_header_and_comments() {
        let src = "# sampled\nx,y\n0, 0\n\n# mid\n1,2\n3,4\n";
        let arc = parse_arc(src, ArcFormat::Csv).unwrap();
        assert_eq!(arc.nodes(), &[Point::new(0., 0.), Point::new(1., 2.), Point::new(3., 4.)]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_arc(r#"{"nodes":[[0,0]]}"#, ArcFormat::Json),
            Err(Error::InvalidArc(_))
        ));
        match parse_arc("{\"nodes\":\n[[0,0],[1,", ArcFormat::Json) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_arc("0,0\n1,1\n2,oops\n", ArcFormat::Csv) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_arc("  ", ArcFormat::Csv), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_arc(r#"{"closed":true,"nodes":[[0,0],[1,0]]}"#, ArcFormat::Json),
            Err(Error::InvalidArc(_))
        ));
    }

    #[test]
    fn closed_repeat_is_dropped() {
        let arc = PolygonalArc::closed([(0., 0.), (1., 0.), (0., 1.), (0., 0.)]).unwrap();
        assert_eq!(arc.len(), 3);
    }

    #[test]
    fn validate_examples() {
        let tol = Tolerance::default();
        assert!(validate_simple(&pentagon(), &tol).is_ok());

        let x = PolygonalArc::open([(0., 0.), (2., 2.), (2., 0.), (0., 2.)]).unwrap();
        assert_eq!(
            validate_simple(&x, &tol).violations,
            vec![Violation::Crossing { first: 0, second: 2 }]
        );

        let dup = PolygonalArc::open([(0., 0.), (1., 0.), (1., 0.), (2., 0.)]).unwrap();
        assert!(validate_simple(&dup, &tol)
            .violations
            .contains(&Violation::DuplicateNode { segment: 1 }));
    }

    #[test]
    fn validate_backtrack_and_loops() {
        let tol = Tolerance::default();
        let back = PolygonalArc::open([(0., 0.), (2., 0.), (1., 0.)]).unwrap();
        assert_eq!(
            validate_simple(&back, &tol).violations,
            vec![Violation::Backtrack { first: 0, second: 1 }]
        );
        let straight = PolygonalArc::open([(0., 0.), (1., 0.), (2., 0.)]).unwrap();
        assert!(validate_simple(&straight, &tol).is_ok());

        let loop_ = PolygonalArc::open([(0., 0.), (1., 0.), (1., 1.), (0., 0.)]).unwrap();
        let v = validate_simple(&loop_, &tol).violations;
        assert!(v.contains(&Violation::EndpointsCoincide));

        let square = PolygonalArc::closed([(0., 0.), (1., 0.), (1., 1.), (0., 1.)]).unwrap();
        assert!(validate_simple(&square, &tol).is_ok());
        let bow = PolygonalArc::closed([(0., 0.), (1., 1.), (1., 0.), (0., 1.)]).unwrap();
        assert!(!validate_simple(&bow, &tol).is_ok());
        // revisiting a node without crossing
        let touch =
            PolygonalArc::open([(0., 0.), (2., 0.), (2., 2.), (1., 0.), (1., -1.)]).unwrap();
        assert!(!validate_simple(&touch, &tol).is_ok());
    }

    #[test]
    fn segment_arc_examples() {
        let tol = Tolerance::default();
        let a = PolygonalArc::open([(0., 0.), (1., 0.), (3., 0.)]).unwrap();
        assert!(is_segment_arc(&a, &a.tolerance()));
        assert!(!is_segment_arc(&pentagon(), &tol));
        let b = PolygonalArc::open([(0., 0.), (1., 1e-15), (2., 0.)]).unwrap();
        assert!(is_segment_arc(&b, &b.tolerance()));
    }

    proptest! {
        #[test]
        fn json_round_trip(
            pts in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 3..40),
            closed in any::<bool>(),
        ) {
            prop_assume!(pts.first() != pts.last());
            let arc = PolygonalArc::new(pts.into_iter().map(Point::from).collect(), closed).unwrap();
            let back = parse_arc(&arc.to_json(), ArcFormat::Json).unwrap();
            prop_assert_eq!(back, arc);
        }
    }
}
