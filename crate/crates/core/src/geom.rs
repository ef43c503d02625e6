//! Planar primitives: points, directed angles in degrees, and the
//! orientation / intersection predicates. Every predicate takes a
//! [`Tolerance`] so one policy governs the whole pipeline.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative length tolerance applied to the bounding-box diagonal.
pub const DEFAULT_REL_EPS_LEN: f64 = 1e-9;
/// Angle equality threshold, degrees.
pub const DEFAULT_EPS_ANGLE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (o - self).norm()
    }

    /// Unit vector pointing at `deg` degrees counterclockwise from +x.
    pub fn unit(deg: f64) -> Point {
        let r = deg.to_radians();
        Point::new(r.cos(), r.sin())
    }

    /// Direction of this vector in degrees, normalized to (-180, 180].
    pub fn heading(self) -> AngleDeg {
        AngleDeg::from_raw(self.y.atan2(self.x).to_degrees())
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A directed angle in degrees, always normalized to (-180, 180].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleDeg(f64);

impl AngleDeg {
    pub fn new(raw: f64) -> Result<Self> {
        normalize_angle(raw)
    }

    /// Normalizes without the finiteness check. Callers guarantee `raw` is finite.
    pub(crate) fn from_raw(raw: f64) -> Self {
        let mut a = raw % 360.0;
        if a <= -180.0 {
            a += 360.0;
        } else if a > 180.0 {
            a -= 360.0;
        }
        AngleDeg(a)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn unit(self) -> Point {
        Point::unit(self.0)
    }

    /// The same angle measured in [0, 360).
    pub fn positive(self) -> f64 {
        if self.0 < 0.0 {
            self.0 + 360.0
        } else {
            self.0
        }
    }
}

impl fmt::Display for AngleDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°", self.0)
    }
}

/// Length and angle thresholds shared by all predicates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_len: f64,
    pub eps_angle: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_len: DEFAULT_REL_EPS_LEN,
            eps_angle: DEFAULT_EPS_ANGLE,
        }
    }
}

impl Tolerance {
    pub fn new(eps_len: f64, eps_angle: f64) -> Result<Self> {
        if !(eps_len > 0.0 && eps_len.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "eps_len must be positive and finite, got {eps_len}"
            )));
        }
        if !(eps_angle > 0.0 && eps_angle.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "eps_angle must be positive and finite, got {eps_angle}"
            )));
        }
        Ok(Self { eps_len, eps_angle })
    }

    /// Default tolerance scaled to the bounding-box diagonal of `points`.
    pub fn for_points(points: &[Point]) -> Self {
        let diag = bbox_diagonal(points);
        let scale = if diag > 0.0 && diag.is_finite() { diag } else { 1.0 };
        Self {
            eps_len: DEFAULT_REL_EPS_LEN * scale,
            eps_angle: DEFAULT_EPS_ANGLE,
        }
    }

    pub fn angles_equal(&self, a: AngleDeg, b: AngleDeg) -> bool {
        AngleDeg::from_raw(a.value() - b.value()).value().abs() <= self.eps_angle
    }
}

pub fn bbox(points: &[Point]) -> Option<(Point, Point)> {
    let first = *points.first()?;
    Some(points.iter().fold((first, first), |(lo, hi), p| {
        (
            Point::new(lo.x.min(p.x), lo.y.min(p.y)),
            Point::new(hi.x.max(p.x), hi.y.max(p.y)),
        )
    }))
}

pub fn bbox_diagonal(points: &[Point]) -> f64 {
    bbox(points).map_or(0.0, |(lo, hi)| lo.dist(hi))
}

pub fn normalize_angle(raw: f64) -> Result<AngleDeg> {
    if !raw.is_finite() {
        return Err(Error::InvalidArgument(format!("angle must be finite, got {raw}")));
    }
    Ok(AngleDeg::from_raw(raw))
}

/// Counterclockwise angle from `u` to `v`, in (-180, 180].
pub fn directed_angle(u: Point, v: Point) -> Result<AngleDeg> {
    if !u.is_finite() || !v.is_finite() {
        return Err(Error::InvalidArgument("direction vectors must be finite".into()));
    }
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(Error::InvalidArgument("zero direction vector".into()));
    }
    let a = u.cross(v).atan2(u.dot(v)).to_degrees();
    Ok(AngleDeg::from_raw(a))
}

/// Sign of the turn a -> b -> c. Zero when |cross| <= eps_len * max(|ab|, |ac|).
pub fn orient(a: Point, b: Point, c: Point, tol: &Tolerance) -> i8 {
    let ab = b - a;
    let ac = c - a;
    let cross = ab.cross(ac);
    let thr = tol.eps_len * ab.norm().max(ac.norm());
    if cross.abs() <= thr {
        0
    } else if cross > 0.0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn len(&self) -> f64 {
        self.a.dist(self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectMode {
    /// Interior crossings only.
    Proper,
    /// Any shared point, including endpoint touches and overlaps.
    Any,
}

fn on_segment(p: Point, s: &Segment, tol: &Tolerance) -> bool {
    // caller has established collinearity
    let lo_x = s.a.x.min(s.b.x) - tol.eps_len;
    let hi_x = s.a.x.max(s.b.x) + tol.eps_len;
    let lo_y = s.a.y.min(s.b.y) - tol.eps_len;
    let hi_y = s.a.y.max(s.b.y) + tol.eps_len;
    p.x >= lo_x && p.x <= hi_x && p.y >= lo_y && p.y <= hi_y
}

pub fn segments_intersect(
    s1: &Segment,
    s2: &Segment,
    mode: IntersectMode,
    tol: &Tolerance,
) -> Result<bool> {
    if s1.len() <= tol.eps_len || s2.len() <= tol.eps_len {
        return Err(Error::InvalidArgument("degenerate (zero-length) segment".into()));
    }
    let o1 = orient(s1.a, s1.b, s2.a, tol);
    let o2 = orient(s1.a, s1.b, s2.b, tol);
    let o3 = orient(s2.a, s2.b, s1.a, tol);
    let o4 = orient(s2.a, s2.b, s1.b, tol);
    let proper = o1 * o2 < 0 && o3 * o4 < 0;
    Ok(match mode {
        IntersectMode::Proper => proper,
        IntersectMode::Any => {
            proper
                || (o1 == 0 && on_segment(s2.a, s1, tol))
                || (o2 == 0 && on_segment(s2.b, s1, tol))
                || (o3 == 0 && on_segment(s1.a, s2, tol))
                || (o4 == 0 && on_segment(s1.b, s2, tol))
        }
    })
}

/// An infinite directed line through `point` heading in `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub point: Point,
    pub dir: AngleDeg,
}

impl Line {
    pub fn new(point: Point, dir: AngleDeg) -> Self {
        Self { point, dir }
    }

    pub fn through(a: Point, b: Point) -> Self {
        Self::new(a, (b - a).heading())
    }

    /// Signed distance of `p` from the line; positive on the left.
    pub fn side_distance(&self, p: Point) -> f64 {
        self.dir.unit().cross(p - self.point)
    }

    /// Intersection point, `None` for parallel lines (within `eps_angle`).
    pub fn intersect(&self, other: &Line, tol: &Tolerance) -> Option<Point> {
        let d1 = self.dir.unit();
        let d2 = other.dir.unit();
        let denom = d1.cross(d2);
        if denom.abs() <= tol.eps_angle.to_radians().sin() {
            return None;
        }
        let t = (other.point - self.point).cross(d2) / denom;
        Some(self.point + d1 * t)
    }

    /// True when both describe the same undirected line within tolerance.
    pub fn same_line(&self, other: &Line, tol: &Tolerance) -> bool {
        let d1 = self.dir.unit();
        let d2 = other.dir.unit();
        d1.cross(d2).abs() <= tol.eps_angle.to_radians().sin()
            && self.side_distance(other.point).abs() <= tol.eps_len
    }
}
