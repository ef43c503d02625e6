//! The schematic diagram: one strip per locale, of width |δ_j|, laid out
//! along [0, δ]. Two piecewise-linear paths run across it: `upper` codes
//! the support directions touching the upper boundary, `lower` those
//! touching the lower boundary. Their difference is `phi_l - x`, so every
//! query reduces to a single abscissa and a strip lookup.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_structural, Error, Result};
use crate::locales::TiltTable;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Strip {
    /// 1-based locale index.
    pub j: usize,
    pub x_left: f64,
    pub x_right: f64,
    /// τ_j, the horizontal path's ordinate.
    pub base_tilt: f64,
    /// τ_{j-1}.
    pub slant_start: f64,
    /// τ_{j+1}.
    pub slant_end: f64,
    /// -1 on odd strips, +1 on even ones.
    pub slant_slope: f64,
}

impl Strip {
    pub fn width(&self) -> f64 {
        self.x_right - self.x_left
    }

    pub fn slant_at(&self, x: f64) -> f64 {
        self.slant_start + self.slant_slope * (x - self.x_left)
    }

    /// Odd strips carry the slant on the upper path.
    pub fn slant_is_upper(&self) -> bool {
        self.j % 2 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchematicDiagram {
    pub strips: Vec<Strip>,
    pub delta_total: f64,
    pub phi_l: f64,
    pub phi_r: f64,
    #[serde(skip)]
    eps_angle: f64,
}

/// Angle-query classification by where φ falls among the aspect angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseLabel {
    /// φ = 0: one parallel pair.
    A,
    /// 0 < φ ≤ min: two pairs.
    B,
    /// min < φ ≤ max: one pair.
    C,
    /// φ > max: none.
    D,
}

impl CaseLabel {
    pub fn expected_count(self) -> usize {
        match self {
            CaseLabel::A | CaseLabel::C => 1,
            CaseLabel::B => 2,
            CaseLabel::D => 0,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A crossing of the difference path with the ordinate `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AbstractSolution {
    /// Signed ordinate, +φ or -φ.
    pub s: f64,
    pub x_star: f64,
    pub locale_j: usize,
    /// Normalized direction of the cap support line.
    pub theta_star: f64,
    /// τ_j.
    pub base_tilt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleQuery {
    pub phi: f64,
    pub case: CaseLabel,
    pub solutions: Vec<AbstractSolution>,
}

pub fn build_schematic(tt: &TiltTable, eps_angle: f64) -> SchematicDiagram {
    let mut x = 0.0;
    let strips = tt
        .spans
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let j = i + 1;
            let x_left = x;
            x += d.abs();
            Strip {
                j,
                x_left,
                x_right: if j == tt.j { tt.delta_total } else { x },
                base_tilt: tt.tilts[j],
                slant_start: tt.tilts[j - 1],
                slant_end: tt.tilts[j + 1],
                slant_slope: d.signum(),
            }
        })
        .collect();
    SchematicDiagram {
        strips,
        delta_total: tt.delta_total,
        phi_l: tt.phi_l,
        phi_r: tt.phi_r,
        eps_angle,
    }
}

impl SchematicDiagram {
    pub fn eps_angle(&self) -> f64 {
        self.eps_angle
    }

    /// Strip containing `x`: half-open on the right except for the last strip.
    pub fn strip_at(&self, x: f64) -> Option<&Strip> {
        if !(0.0..=self.delta_total).contains(&x) {
            return None;
        }
        self.strips
            .iter()
            .find(|s| x >= s.x_left && x < s.x_right)
            .or(self.strips.last())
    }

    /// Upper path value at `x`.
    pub fn upper(&self, x: f64) -> Option<f64> {
        self.strip_at(x)
            .map(|s| if s.slant_is_upper() { s.slant_at(x) } else { s.base_tilt })
    }

    /// Lower path value at `x`.
    pub fn lower(&self, x: f64) -> Option<f64> {
        self.strip_at(x)
            .map(|s| if s.slant_is_upper() { s.base_tilt } else { s.slant_at(x) })
    }

    /// `upper - lower`, a straight segment of slope -1.
    pub fn delta(&self, x: f64) -> Option<f64> {
        Some(self.upper(x)? - self.lower(x)?)
    }

    /// Breakpoints of the upper path at every strip boundary; ordinates are tilt values.
    pub fn upper_breakpoints(&self) -> Vec<(f64, f64)> {
        self.breakpoints(true)
    }

    pub fn lower_breakpoints(&self) -> Vec<(f64, f64)> {
        self.breakpoints(false)
    }

    fn breakpoints(&self, upper: bool) -> Vec<(f64, f64)> {
        let first = &self.strips[0];
        let start = if upper { first.slant_start } else { first.base_tilt };
        let mut pts = vec![(0.0, start)];
        for s in &self.strips {
            let end = if s.slant_is_upper() == upper { s.slant_end } else { s.base_tilt };
            pts.push((s.x_right, end));
        }
        pts
    }

    /// Solution on the ordinate `s`, if the difference path reaches it.
    pub fn solve_ordinate(&self, s: f64) -> Option<AbstractSolution> {
        if s > self.phi_l + self.eps_angle || s < self.phi_r - self.eps_angle {
            return None;
        }
        let x_star = (self.phi_l - s).clamp(0.0, self.delta_total);
        let strip = self.strip_at(x_star)?;
        let theta_star = if strip.slant_is_upper() {
            strip.base_tilt + s
        } else {
            strip.base_tilt - s
        };
        Some(AbstractSolution {
            s,
            x_star,
            locale_j: strip.j,
            theta_star,
            base_tilt: strip.base_tilt,
        })
    }

    pub fn classify(&self, phi: f64) -> CaseLabel {
        let lo = self.phi_l.min(-self.phi_r);
        let hi = self.phi_l.max(-self.phi_r);
        if phi == 0.0 {
            CaseLabel::A
        } else if phi <= lo + self.eps_angle {
            CaseLabel::B
        } else if phi <= hi + self.eps_angle {
            CaseLabel::C
        } else {
            CaseLabel::D
        }
    }
}

/// The single point where the two paths cross (the parallel solution).
pub fn crossing_point(sd: &SchematicDiagram) -> Result<AbstractSolution> {
    sd.solve_ordinate(0.0)
        .ok_or_else(|| Error::Structural("paths never cross".into()))
}

pub fn query_angle(sd: &SchematicDiagram, phi: f64) -> Result<AngleQuery> {
    if !(0.0..180.0).contains(&phi) {
        return Err(Error::InvalidArgument(format!("phi must lie in [0, 180), got {phi}")));
    }
    let signs: &[f64] = if phi == 0.0 { &[0.0] } else { &[phi, -phi] };
    let solutions: Vec<_> = signs.iter().filter_map(|&s| sd.solve_ordinate(s)).collect();
    let case = sd.classify(phi);
    ensure_structural!(
        solutions.len() == case.expected_count(),
        "case {case} expects {} solutions, found {}",
        case.expected_count(),
        solutions.len()
    );
    Ok(AngleQuery {
        phi,
        case,
        solutions,
    })
}
