//! Versioned JSON reports. Every index is an arc-node index.

use serde::{Deserialize, Serialize};

use crate::arc::PolygonalArc;
use crate::geom::Line;
use crate::guide::{BoundarySide, LinkKind};
use crate::hull::ConvexHull;
use crate::locales::TiltTable;
use crate::schematic::CaseLabel;
use crate::solver::{Analysis, AngleSolution, ApexEnd, ApexSide, SupportPairSolution};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineReport {
    pub px: f64,
    pub py: f64,
    pub dir_deg: f64,
}

impl From<&Line> for LineReport {
    fn from(l: &Line) -> Self {
        Self {
            px: l.point.x,
            py: l.point.y,
            dir_deg: l.dir.value(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub m: LineReport,
    pub n: LineReport,
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub locale: Option<usize>,
    pub apex_side: ApexSide,
    pub apex_end: ApexEnd,
}

impl From<&SupportPairSolution> for PairReport {
    fn from(p: &SupportPairSolution) -> Self {
        Self {
            m: (&p.m).into(),
            n: (&p.n).into(),
            u: p.u.index,
            v: p.v.index,
            w: p.w.index,
            locale: p.locale,
            apex_side: p.apex_side,
            apex_end: p.apex_end,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub phi: f64,
    pub case: CaseLabel,
    pub pairs: Vec<PairReport>,
}

impl From<&AngleSolution> for SolutionReport {
    fn from(s: &AngleSolution) -> Self {
        Self {
            phi: s.phi,
            case: s.case,
            pairs: s.pairs.iter().map(PairReport::from).collect(),
        }
    }
}

impl SolutionReport {
    pub fn closed(pair: &SupportPairSolution) -> Self {
        Self {
            phi: 0.0,
            case: CaseLabel::A,
            pairs: vec![pair.into()],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcSummary {
    pub node_count: usize,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkReport {
    pub from: usize,
    pub to: usize,
    pub kind: LinkKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuideReport {
    pub visit_order: Vec<usize>,
    pub links: Vec<LinkReport>,
    pub sigma: i8,
    pub axis_on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocaleReport {
    pub j: usize,
    pub base: [usize; 2],
    pub cap: Vec<usize>,
    /// Crossing links bounding the locale, as `[from, to]`.
    pub sides: Vec<[usize; 2]>,
    pub base_side: BoundarySide,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TiltReport {
    pub j: usize,
    pub tilts: Vec<f64>,
    pub spans: Vec<f64>,
    pub delta_total: f64,
    pub phi_l: f64,
    pub phi_r: f64,
}

impl From<&TiltTable> for TiltReport {
    fn from(t: &TiltTable) -> Self {
        Self {
            j: t.j,
            tilts: t.tilts.clone(),
            spans: t.spans.clone(),
            delta_total: t.delta_total,
            phi_l: t.phi_l,
            phi_r: t.phi_r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub arc: ArcSummary,
    /// Hull vertices in counter-clockwise order.
    pub hull: Vec<usize>,
    pub guide_path: Option<GuideReport>,
    pub locales: Vec<LocaleReport>,
    pub tilt_table: Option<TiltReport>,
    pub solutions: Vec<SolutionReport>,
}

impl AnalysisReport {
    pub fn open(an: &Analysis, solutions: &[AngleSolution]) -> Self {
        let hull = &an.hull;
        let ix = |v: usize| hull.node_index(v);
        let gp = &an.guide;
        let guide = GuideReport {
            visit_order: gp.visit_order.iter().map(|&v| ix(v)).collect(),
            links: gp
                .links
                .iter()
                .map(|l| LinkReport {
                    from: ix(l.from),
                    to: ix(l.to),
                    kind: l.kind,
                })
                .collect(),
            sigma: gp.sigma,
            axis_on_boundary: gp.axis_on_boundary,
        };
        let locales = an
            .locales
            .locales
            .iter()
            .map(|l| LocaleReport {
                j: l.j,
                base: [ix(l.base.0), ix(l.base.1)],
                cap: l.cap.iter().map(|&v| ix(v)).collect(),
                sides: l
                    .sides
                    .iter()
                    .map(|&k| [ix(gp.links[k].from), ix(gp.links[k].to)])
                    .collect(),
                base_side: l.base_side,
            })
            .collect();
        Self {
            schema: SCHEMA_VERSION,
            arc: summary(&an.arc),
            hull: hull.node_indices().to_vec(),
            guide_path: Some(guide),
            locales,
            tilt_table: Some((&an.tilts).into()),
            solutions: solutions.iter().map(SolutionReport::from).collect(),
        }
    }

    pub fn closed(arc: &PolygonalArc, hull: &ConvexHull, pair: &SupportPairSolution) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            arc: summary(arc),
            hull: hull.node_indices().to_vec(),
            guide_path: None,
            locales: Vec::new(),
            tilt_table: None,
            solutions: vec![SolutionReport::closed(pair)],
        }
    }

    /// True when every index points at an existing node.
    pub fn indices_in_range(&self) -> bool {
        let n = self.arc.node_count;
        let ok = |i: &usize| *i < n;
        let pair_ok = |p: &PairReport| ok(&p.u) && ok(&p.v) && ok(&p.w);
        self.hull.iter().all(ok)
            && self.guide_path.as_ref().is_none_or(|g| {
                g.visit_order.iter().all(ok) && g.links.iter().all(|l| ok(&l.from) && ok(&l.to))
            })
            && self.locales.iter().all(|l| {
                l.base.iter().all(ok) && l.cap.iter().all(ok) && l.sides.iter().flatten().all(ok)
            })
            && self.solutions.iter().flat_map(|s| &s.pairs).all(pair_ok)
    }
}

fn summary(arc: &PolygonalArc) -> ArcSummary {
    ArcSummary {
        node_count: arc.len(),
        closed: arc.is_closed(),
    }
}

/// Output of `solve`: the tilt table it used and the solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub tilt_table: Option<TiltReport>,
    #[serde(flatten)]
    pub solution: SolutionReport,
}
