//! Locale decomposition of the hull and its angle data: tilts, spans and
//! the two aspect angles.
//!
//! A locale's base is a hull edge the guide path skips; its cap is the run
//! of vertices the guide path visits between the base endpoints. All tilts
//! are measured from the axis and multiplied by the guide path's `sigma`,
//! so the head link always tilts upward.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{ensure_structural, Error, Result};
use crate::geom::directed_angle;
use crate::guide::{BoundarySide, GuidePath, LinkKind};
use crate::hull::ConvexHull;

/// Slack for the telescoping identity `delta_total = phi_l - phi_r`, degrees.
pub const TELESCOPE_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Locale {
    /// 1-based.
    pub j: usize,
    /// Base endpoints `(u, w)`, `u` visited first.
    pub base: (usize, usize),
    pub cap: Vec<usize>,
    /// Indices into the guide path's links.
    pub sides: Vec<usize>,
    pub base_side: BoundarySide,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocaleDecomposition {
    pub locales: Vec<Locale>,
}

impl LocaleDecomposition {
    pub fn len(&self) -> usize {
        self.locales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locales.is_empty()
    }

    /// Locale by 1-based index.
    pub fn get(&self, j: usize) -> Option<&Locale> {
        j.checked_sub(1).and_then(|i| self.locales.get(i))
    }
}

pub fn decompose_locales(gp: &GuidePath, hull: &ConvexHull) -> Result<LocaleDecomposition> {
    let n = hull.len();
    let traversed: HashSet<(usize, usize)> = gp
        .links
        .iter()
        .filter(|l| l.kind == LinkKind::Edge)
        .map(|l| (l.from.min(l.to), l.from.max(l.to)))
        .collect();

    let mut bases: Vec<(usize, usize)> = (0..n)
        .map(|a| (a, hull.next(a)))
        .filter(|&(a, b)| !traversed.contains(&(a.min(b), a.max(b))))
        .map(|(a, b)| {
            if gp.visit_pos[a] < gp.visit_pos[b] {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    bases.sort_by_key(|&(u, _)| gp.visit_pos[u]);

    ensure_structural!(
        bases.len() == gp.crossing_count() + 1,
        "{} skipped hull edges but {} crossing links",
        bases.len(),
        gp.crossing_count()
    );

    let locales = bases
        .into_iter()
        .enumerate()
        .map(|(i, (u, w))| {
            let j = i + 1;
            ensure_structural!(hull.adjacent(u, w), "base {u}-{w} is not a hull edge");
            let (pu, pw) = (gp.visit_pos[u], gp.visit_pos[w]);
            let cap = gp.visit_order[pu + 1..pw].to_vec();
            ensure_structural!(!cap.is_empty(), "locale {j} has an empty cap");
            let sides = (pu..pw)
                .filter(|&k| gp.links[k].kind == LinkKind::Crossing)
                .collect::<Vec<_>>();
            let base_side = gp
                .side_of(u)
                .or_else(|| gp.side_of(w))
                .unwrap_or(BoundarySide::Lower);
            let expected = if j % 2 == 1 {
                BoundarySide::Lower
            } else {
                BoundarySide::Upper
            };
            ensure_structural!(
                base_side == expected,
                "locale {j} base lies on the {base_side:?} boundary"
            );
            ensure_structural!(
                cap.iter().all(|&v| gp.side_of(v).is_some_and(|s| s != base_side)),
                "locale {j} cap is not opposite its base"
            );
            if gp.axis_on_boundary {
                ensure_structural!(sides.is_empty(), "boundary-axis locale has crossing sides");
            } else {
                ensure_structural!(
                    (1..=2).contains(&sides.len()),
                    "locale {j} has {} crossing sides",
                    sides.len()
                );
            }
            Ok(Locale {
                j,
                base: (u, w),
                cap,
                sides,
                base_side,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocaleDecomposition { locales })
}

/// Tilts τ_0 … τ_{J+1}, sigma-normalized, in degrees.
pub fn compute_tilts(
    dec: &LocaleDecomposition,
    gp: &GuidePath,
    hull: &ConvexHull,
) -> Result<Vec<f64>> {
    let axis = hull.vertex(gp.tail) - hull.vertex(gp.head);
    let sigma = f64::from(gp.sigma);
    let tilt = |a: usize, b: usize| -> Result<f64> {
        Ok(sigma * directed_angle(axis, hull.vertex(b) - hull.vertex(a))?.value())
    };
    let mut tilts = Vec::with_capacity(dec.len() + 2);
    tilts.push(tilt(gp.head, gp.second)?);
    for loc in &dec.locales {
        tilts.push(tilt(loc.base.0, loc.base.1)?);
    }
    tilts.push(tilt(gp.penultimate, gp.tail)?);
    Ok(tilts)
}

/// Spans δ_j = τ_{j+1} − τ_{j−1} (plain differences) and their absolute sum.
pub fn compute_spans(tilts: &[f64]) -> Result<(Vec<f64>, f64)> {
    if tilts.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 tilts, got {}",
            tilts.len()
        )));
    }
    let spans: Vec<f64> = tilts.windows(3).map(|w| w[2] - w[0]).collect();
    for (i, &d) in spans.iter().enumerate() {
        let j = i + 1;
        let ok = if j % 2 == 0 { d > 0.0 } else { d < 0.0 };
        ensure_structural!(ok, "span δ_{j} = {d} has the wrong sign");
    }
    let total = spans.iter().map(|d| d.abs()).sum();
    Ok((spans, total))
}

/// `(phi_l, phi_r)` from the tilts.
pub fn aspect_angles(tilts: &[f64]) -> Result<(f64, f64)> {
    if tilts.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 tilts, got {}",
            tilts.len()
        )));
    }
    let j = tilts.len() - 2;
    let phi_l = tilts[0] - tilts[1];
    let phi_r = if j % 2 == 0 {
        tilts[j] - tilts[j + 1]
    } else {
        tilts[j + 1] - tilts[j]
    };
    ensure_structural!(
        phi_l > 0.0 && phi_r < 0.0,
        "aspect angles ({phi_l}, {phi_r}) violate phi_l > 0 > phi_r"
    );
    Ok((phi_l, phi_r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TiltTable {
    pub j: usize,
    /// τ_0 … τ_{J+1}.
    pub tilts: Vec<f64>,
    /// δ_1 … δ_J.
    pub spans: Vec<f64>,
    pub delta_total: f64,
    pub phi_l: f64,
    pub phi_r: f64,
}

impl TiltTable {
    /// Builds and checks the table from raw tilts (J = tilts.len() - 2).
    pub fn from_tilts(tilts: Vec<f64>, eps_angle: f64) -> Result<Self> {
        if tilts.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument("tilts must be finite".into()));
        }
        let (spans, delta_total) = compute_spans(&tilts)?;
        let (phi_l, phi_r) = aspect_angles(&tilts)?;
        let j = tilts.len() - 2;

        ensure_structural!(
            tilts[0] > 0.0 && tilts[0] <= 180.0,
            "τ_0 = {} outside (0, 180]",
            tilts[0]
        );
        // τ_1 = 0 exactly when the axis is itself the base
        ensure_structural!(
            tilts[1] <= 0.0 && tilts[1] >= -180.0,
            "τ_1 = {} outside [-180, 0]",
            tilts[1]
        );
        let last = tilts[j + 1];
        let last_ok = if j % 2 == 0 {
            last > 0.0 && last < 180.0
        } else {
            last < 0.0 && last > -180.0
        };
        ensure_structural!(last_ok, "τ_{} = {last} has the wrong sign", j + 1);
        ensure_structural!(
            delta_total <= 360.0 + eps_angle,
            "total span {delta_total} exceeds 360°"
        );
        ensure_structural!(
            (delta_total - (phi_l - phi_r)).abs() <= TELESCOPE_EPS,
            "total span {delta_total} differs from phi_l - phi_r = {}",
            phi_l - phi_r
        );
        Ok(Self {
            j,
            tilts,
            spans,
            delta_total,
            phi_l,
            phi_r,
        })
    }

    pub fn build(
        dec: &LocaleDecomposition,
        gp: &GuidePath,
        hull: &ConvexHull,
        eps_angle: f64,
    ) -> Result<Self> {
        Self::from_tilts(compute_tilts(dec, gp, hull)?, eps_angle)
    }

    /// The strict tilt chains τ_0 > τ_2 > … and τ_1 < τ_3 < …
    pub fn monotone_chains_hold(&self) -> bool {
        let evens: Vec<f64> = self.tilts.iter().step_by(2).copied().collect();
        let odds: Vec<f64> = self.tilts.iter().skip(1).step_by(2).copied().collect();
        evens.windows(2).all(|w| w[0] > w[1]) && odds.windows(2).all(|w| w[0] < w[1])
    }
}
