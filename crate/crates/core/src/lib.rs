//! Support-line pairs for simple polygonal arcs.
//!
//! Pipeline: [`arc`] input and validation, [`hull`], [`guide`] path,
//! [`locales`] and tilts, [`schematic`] diagram, then [`solver`] realizes
//! line pairs. [`oracle`] is an independent brute-force cross-check.

pub mod arc;
pub mod arc_gen;
pub mod cli;
pub mod error;
pub mod geom;
pub mod guide;
pub mod hull;
pub mod locales;
pub mod oracle;
pub mod report;
pub mod schematic;
pub mod solver;
pub mod svg;

pub use arc::{parse_arc, validate_simple, ArcFormat, PolygonalArc, ValidationReport, Violation};
pub use error::{Error, Result};
pub use geom::{AngleDeg, Line, Point, Tolerance};
pub use hull::{convex_hull, ConvexHull};
pub use schematic::{CaseLabel, SchematicDiagram};
pub use solver::{
    solve_at_angle, solve_closed, solve_parallel, Analysis, AngleSolution, ApexEnd, ApexSide,
    SupportPairSolution,
};
