//! Seeded generation of simple polygonal arcs for fuzzing.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arc::{is_segment_arc, validate_simple, PolygonalArc};
use crate::error::{Error, Result};
use crate::geom::{orient, segments_intersect, IntersectMode, Point, Segment, Tolerance};

/// Name of the pseudo-random generator, recorded in fuzz reports.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9), seed_from_u64, one stream per attempt";

const MAX_ATTEMPTS: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Random points, untangled by 2-opt reversals.
    #[default]
    Uncross,
    /// x-monotone with alternating high and low ordinates.
    Zigzag,
    /// Walks the hull in order with detours inside it, so the first and
    /// last nodes are adjacent hull vertices.
    Perimeter,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub node_count: usize,
    pub strategy: Strategy,
    pub side: f64,
}

impl GenConfig {
    pub fn new(seed: u64, node_count: usize, strategy: Strategy) -> Self {
        Self {
            seed,
            node_count,
            strategy,
            side: 100.0,
        }
    }

    fn check(&self) -> Result<()> {
        if self.node_count < 3 {
            return Err(Error::InvalidArgument("node_count must be at least 3".into()));
        }
        if !(self.side.is_finite() && self.side > 0.0) {
            return Err(Error::InvalidArgument("side must be positive".into()));
        }
        Ok(())
    }
}

fn rng_for(seed: u64, attempt: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt);
    rng
}

/// Draws `count` seeds from a master stream; used for batch fuzzing.
pub fn derive_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    (0..count).map(|_| rng.next_u64()).collect()
}

pub fn generate_arc(cfg: &GenConfig) -> Result<PolygonalArc> {
    cfg.check()?;
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(cfg.seed, attempt);
        let nodes = match cfg.strategy {
            Strategy::Uncross => uncross(&mut rng, cfg),
            Strategy::Zigzag => Ok(zigzag(&mut rng, cfg)),
            Strategy::Perimeter => perimeter(&mut rng, cfg),
        };
        match nodes.and_then(|n| accept(n, false)) {
            Ok(arc) => return Ok(arc),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Generation(format!(
        "no valid arc after {MAX_ATTEMPTS} attempts: {last}"
    )))
}

/// A random star-shaped simple polygon.
pub fn generate_closed(cfg: &GenConfig) -> Result<PolygonalArc> {
    cfg.check()?;
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(cfg.seed, attempt);
        let mut pts = sample_points(&mut rng, cfg);
        let n = pts.len() as f64;
        let c = pts.iter().fold(Point::default(), |acc, &p| acc + p) * (1.0 / n);
        pts.sort_by(|a, b| {
            let (ha, hb) = ((*a - c).heading().value(), (*b - c).heading().value());
            ha.total_cmp(&hb)
        });
        match accept(pts, true) {
            Ok(arc) => return Ok(arc),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::Generation(format!(
        "no valid polygon after {MAX_ATTEMPTS} attempts: {last}"
    )))
}

fn accept(nodes: Vec<Point>, closed: bool) -> Result<PolygonalArc> {
    let arc = PolygonalArc::new(nodes, closed)?;
    let tol = arc.tolerance();
    validate_simple(&arc, &tol).into_result()?;
    if is_segment_arc(&arc, &tol) {
        return Err(Error::Generation("sampled a segment arc".into()));
    }
    Ok(arc)
}

fn sample_points(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Vec<Point> {
    (0..cfg.node_count)
        .map(|_| Point::new(rng.random_range(0.0..cfg.side), rng.random_range(0.0..cfg.side)))
        .collect()
}

fn uncross(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Result<Vec<Point>> {
    let mut pts = sample_points(rng, cfg);
    let tol = Tolerance::for_points(&pts);
    let n = pts.len();
    let cap = 10 * n * n;
    for _ in 0..cap {
        match first_crossing(&pts, &tol) {
            None => return Ok(pts),
            Some((i, j)) => pts[i + 1..=j].reverse(),
        }
    }
    Err(Error::Generation(format!("2-opt did not finish in {cap} reversals")))
}

fn first_crossing(pts: &[Point], tol: &Tolerance) -> Option<(usize, usize)> {
    let segs = pts.len() - 1;
    for i in 0..segs {
        let a = Segment::new(pts[i], pts[i + 1]);
        for j in i + 2..segs {
            let b = Segment::new(pts[j], pts[j + 1]);
            if segments_intersect(&a, &b, IntersectMode::Proper, tol).unwrap_or(true) {
                return Some((i, j));
            }
        }
    }
    None
}

fn zigzag(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Vec<Point> {
    let mut xs: Vec<f64> = (0..cfg.node_count).map(|_| rng.random_range(0.0..cfg.side)).collect();
    xs.sort_by(f64::total_cmp);
    let half = cfg.side / 2.0;
    xs.into_iter()
        .enumerate()
        .map(|(i, x)| {
            let y = if i % 2 == 0 {
                rng.random_range(half..cfg.side)
            } else {
                rng.random_range(0.0..half)
            };
            Point::new(x, y)
        })
        .collect()
}

fn perimeter(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Result<Vec<Point>> {
    let hull_count = (cfg.node_count / 2 + 1).max(3);
    let detours = cfg.node_count.saturating_sub(hull_count);
    let r = cfg.side / 2.0;
    let centre = Point::new(r, r);
    let mut angles: Vec<f64> = (0..hull_count).map(|_| rng.random_range(0.0..360.0)).collect();
    angles.sort_by(f64::total_cmp);
    let squash = rng.random_range(0.3..1.0);
    let ring: Vec<Point> = angles
        .iter()
        .map(|&a| {
            let u = Point::unit(a);
            centre + Point::new(u.x, u.y * squash) * r
        })
        .collect();
    let tol = Tolerance::for_points(&ring);
    for i in 0..hull_count {
        let (a, b, c) = (ring[i], ring[(i + 1) % hull_count], ring[(i + 2) % hull_count]);
        if orient(a, b, c, &tol) <= 0 {
            return Err(Error::Generation("ring is not strictly convex".into()));
        }
    }
    let centre = ring.iter().fold(Point::default(), |acc, &p| acc + p) * (1.0 / hull_count as f64);
    let mut nodes = Vec::with_capacity(cfg.node_count);
    for (i, &p) in ring.iter().enumerate() {
        nodes.push(p);
        if i < detours && i + 1 < hull_count {
            // a point inside the triangle centre, ring[i], ring[i+1]
            let (s, t): (f64, f64) = (rng.random_range(0.1..0.9), rng.random_range(0.1..0.9));
            let (s, t) = if s + t > 0.9 { (0.9 - t, 0.9 - s) } else { (s, t) };
            let (s, t) = (s.max(0.05), t.max(0.05));
            nodes.push(centre + (p - centre) * s + (ring[i + 1] - centre) * t);
        }
    }
    if nodes.len() != cfg.node_count {
        return Err(Error::Generation(format!(
            "perimeter walk produced {} nodes",
            nodes.len()
        )));
    }
    Ok(nodes)
}
