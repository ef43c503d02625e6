//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use lambda_core::arc_gen::{derive_seeds, generate_arc, generate_closed, GenConfig, Strategy};
use lambda_core::geom::{orient, Point, Tolerance, DEFAULT_EPS_ANGLE};
use lambda_core::guide::{enumerate_admissible_paths, LinkKind, DEFAULT_ENUMERATION_CAP};
use lambda_core::hull::convex_hull;
use lambda_core::locales::{aspect_angles, compute_spans, TiltTable};
use lambda_core::oracle::{brute_force_pairs, check_lambda};
use lambda_core::schematic::{build_schematic, crossing_point, query_angle};
use lambda_core::svg::{render_scene, render_schematic, Scene};
use lambda_core::{
    solve_closed, validate_simple, Analysis, CaseLabel, Error, PolygonalArc,
    SupportPairSolution,
};
use rayon::prelude::*;

const EXEMPLAR_TILTS: [f64; 8] = [73.76, -69.98, 25.70, 6.34, -23.90, 25.07, -61.01, 66.82];
const EXEMPLAR_SPANS: [f64; 6] = [-48.06, 76.32, -49.60, 18.73, -37.10, 41.75];
const STRATEGIES: [Strategy; 3] = [Strategy::Uncross, Strategy::Zigzag, Strategy::Perimeter];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

/// Arc `i` of a reproducible batch: strategies rotate, node counts cycle through `nodes`.
fn fuzz_arc(i: usize, seed: u64, nodes: std::ops::RangeInclusive<usize>, strategy: Option<Strategy>) -> PolygonalArc {
    let span = nodes.end() - nodes.start() + 1;
    let n = nodes.start() + (i * 7) % span;
    let s = strategy.unwrap_or(STRATEGIES[i % STRATEGIES.len()]);
    generate_arc(&GenConfig::new(seed, n, s)).expect("generator succeeds")
}

fn same_pair(p: &SupportPairSolution, m: &lambda_core::Line, n: &lambda_core::Line, tol: &Tolerance) -> bool {
    (p.m.same_line(m, tol) && p.n.same_line(n, tol)) || (p.m.same_line(n, tol) && p.n.same_line(m, tol))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (spans, total) = compute_spans(&EXEMPLAR_TILTS).unwrap();
    let (phi_l, phi_r) = aspect_angles(&EXEMPLAR_TILTS).unwrap();
    let elapsed = start.elapsed();
    let worst = spans
        .iter()
        .zip(EXEMPLAR_SPANS)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let pass = worst <= 0.02
        && (phi_l - 143.74).abs() <= 0.01
        && (phi_r.abs() - 127.83).abs() <= 0.01
        && elapsed < Duration::from_millis(1);
    Outcome::new(
        pass,
        format!(
            "max span error {worst:.4}, phi_L {phi_l:.4}, |phi_R| {:.4}, delta {total:.2}, {elapsed:?}",
            phi_r.abs()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let tt = TiltTable::from_tilts(EXEMPLAR_TILTS.to_vec(), DEFAULT_EPS_ANGLE).unwrap();
    let sd = build_schematic(&tt, DEFAULT_EPS_ANGLE);
    let m = crossing_point(&sd).unwrap();
    let counts: Vec<usize> = [40.0, 135.0, 150.0]
        .iter()
        .map(|&phi| query_angle(&sd, phi).unwrap().solutions.len())
        .collect();
    let elapsed = start.elapsed();
    let pass = m.locale_j == 3 && counts == [2, 1, 0] && elapsed < Duration::from_millis(1);
    Outcome::new(
        pass,
        format!("crossing in strip {}, counts at 40/135/150 = {counts:?}, {elapsed:?}", m.locale_j),
    )
}

fn criterion_3() -> Outcome {
    let seeds = derive_seeds(3, 10_000);
    let failures: Vec<String> = seeds
        .par_iter()
        .enumerate()
        .filter_map(|(i, &seed)| {
            let arc = fuzz_arc(i, seed, 5..=50, None);
            let tol = arc.tolerance();
            let check = || -> Result<(), String> {
                let an = Analysis::new(&arc, tol).map_err(|e| e.to_string())?;
                let p = an.parallel().map_err(|e| e.to_string())?;
                if !(p.u.index < p.v.index && p.v.index < p.w.index) {
                    return Err("order".into());
                }
                check_lambda(&arc, &p.m, &p.n, (p.u.index, p.v.index, p.w.index), 0.0, &tol)?;
                let o = brute_force_pairs(&arc, 0.0, &tol).map_err(|e| e.to_string())?;
                if o.count() != 1 {
                    return Err(format!("oracle found {} pairs", o.count()));
                }
                if !same_pair(&p, &o.pairs[0].m, &o.pairs[0].n, &tol) {
                    return Err("oracle pair differs".into());
                }
                Ok(())
            };
            check().err().map(|e| format!("arc {i} (seed {seed}): {e}"))
        })
        .collect();
    Outcome::new(
        failures.is_empty(),
        format!("{}/10000 arcs agree{}", 10_000 - failures.len(), first(&failures)),
    )
}

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default()
}

struct CountingStats {
    queries: usize,
    count_failures: Vec<String>,
    case_b: usize,
    apex_same_side: Vec<String>,
}

fn theorem_3_sweep() -> CountingStats {
    let seeds = derive_seeds(4, 1_000);
    let per_arc: Vec<(usize, Vec<String>, usize, Vec<String>)> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &seed)| {
            let arc = fuzz_arc(i, seed, 5..=30, None);
            let tol = arc.tolerance();
            let an = Analysis::new(&arc, tol).expect("valid fuzzed arc");
            let mut phis: Vec<f64> = (0..180).map(f64::from).collect();
            phis.extend([an.tilts.phi_l, an.tilts.phi_r.abs()]);
            let (mut failures, mut case_b, mut same_side) = (Vec::new(), 0, Vec::new());
            for &phi in &phis {
                let tag = format!("arc {i} (seed {seed}) phi {phi}");
                let sol = match an.solve(phi) {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("{tag}: {e}"));
                        continue;
                    }
                };
                let oracle = brute_force_pairs(&arc, phi, &tol).map(|o| o.count());
                let expected = sol.case.expected_count();
                let matched = match &oracle {
                    Ok(o) => *o == sol.pairs.len() && sol.pairs.len() == expected,
                    Err(_) => false,
                };
                if !matched {
                    failures.push(format!("{tag}: solver {} oracle {oracle:?} case {}", sol.pairs.len(), sol.case));
                }
                if sol.case == CaseLabel::B {
                    case_b += 1;
                    if sol.pairs[0].apex_side == sol.pairs[1].apex_side {
                        same_side.push(tag);
                    }
                }
            }
            (phis.len(), failures, case_b, same_side)
        })
        .collect();
    let mut stats = CountingStats {
        queries: 0,
        count_failures: Vec::new(),
        case_b: 0,
        apex_same_side: Vec::new(),
    };
    for (q, f, b, s) in per_arc {
        stats.queries += q;
        stats.count_failures.extend(f);
        stats.case_b += b;
        stats.apex_same_side.extend(s);
    }
    stats
}

fn criterion_4() -> Vec<(&'static str, Outcome)> {
    let stats = theorem_3_sweep();
    let counts = Outcome::new(
        stats.count_failures.is_empty(),
        format!(
            "{}/{} queries: solver = oracle = case count{}",
            stats.queries - stats.count_failures.len(),
            stats.queries,
            first(&stats.count_failures)
        ),
    );
    let apex = Outcome::new(
        stats.apex_same_side.is_empty(),
        format!(
            "{}/{} case-B queries have differing apex_side{}",
            stats.case_b - stats.apex_same_side.len(),
            stats.case_b,
            first(&stats.apex_same_side)
        ),
    );
    vec![("4a case counts", counts), ("4b case-B apex sides", apex)]
}

fn criterion_5() -> Outcome {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut problems = Vec::new();
    let mut counts = Vec::new();
    for n in 3..=8usize {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..360.0)).collect();
        angles.sort_by(f64::total_cmp);
        let ring: Vec<Point> = angles.iter().map(|&a| Point::unit(a) * 10.0).collect();
        let arc = PolygonalArc::open(ring.clone()).unwrap();
        let tol = arc.tolerance();
        let hull = convex_hull(&arc, &tol).unwrap();
        if hull.len() != n {
            problems.push(format!("n={n}: hull has {} vertices", hull.len()));
            continue;
        }
        let paths = enumerate_admissible_paths(&hull, DEFAULT_ENUMERATION_CAP).unwrap();
        counts.push(paths.len());
        if paths.len() != n << (n - 2) {
            problems.push(format!("n={n}: {} paths", paths.len()));
        }
        let mut sorted = paths.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != paths.len() {
            problems.push(format!("n={n}: duplicate paths"));
        }
        for p in &paths {
            let mut seen = p.clone();
            seen.sort_unstable();
            let spanning = seen == (0..n).collect::<Vec<_>>();
            let pts: Vec<Point> = p.iter().map(|&v| hull.vertex(v)).collect();
            let simple = validate_simple(&PolygonalArc::open(pts).unwrap(), &tol).is_ok();
            if !(spanning && simple) {
                problems.push(format!("n={n}: path {p:?} spanning {spanning} simple {simple}"));
            }
        }
    }
    let mut checked = 0;
    for (i, seed) in derive_seeds(55, 100).into_iter().enumerate() {
        let arc = fuzz_arc(i, seed, 5..=12, None);
        let an = Analysis::with_default_tolerance(&arc).unwrap();
        match enumerate_admissible_paths(&an.hull, DEFAULT_ENUMERATION_CAP) {
            Ok(paths) if paths.contains(&an.guide.visit_order) => checked += 1,
            Ok(_) => problems.push(format!("arc {i}: guide path not enumerated")),
            Err(e) => problems.push(format!("arc {i}: {e}")),
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!("counts {counts:?}; {checked}/100 guide paths enumerated{}", first(&problems)),
    )
}

fn criterion_6() -> Outcome {
    let seeds = derive_seeds(6, 10_000);
    let failures: Vec<String> = seeds
        .par_iter()
        .enumerate()
        .filter_map(|(i, &seed)| {
            let arc = fuzz_arc(i, seed, 5..=50, None);
            let t = match Analysis::with_default_tolerance(&arc) {
                Ok(an) => an.tilts,
                Err(e) => return Some(format!("arc {i}: {e}")),
            };
            let alternating = t
                .spans
                .iter()
                .enumerate()
                .all(|(k, &d)| if k % 2 == 0 { d < 0.0 } else { d > 0.0 });
            let telescopes = (t.delta_total - (t.phi_l - t.phi_r)).abs() <= 1e-9;
            let bounded = t.delta_total <= 360.0 + 1e-7;
            let ok = t.monotone_chains_hold() && alternating && telescopes && bounded;
            (!ok).then(|| {
                format!(
                    "arc {i} (seed {seed}): chains {} alternating {alternating} telescopes {telescopes} bounded {bounded}",
                    t.monotone_chains_hold()
                )
            })
        })
        .collect();
    Outcome::new(
        failures.is_empty(),
        format!("{}/10000 tilt tables satisfy every invariant{}", 10_000 - failures.len(), first(&failures)),
    )
}

fn agrees_everywhere(arc: &PolygonalArc) -> Result<(), String> {
    let tol = arc.tolerance();
    let an = Analysis::new(arc, tol).map_err(|e| e.to_string())?;
    if an.tilts.j != 1 {
        return Err(format!("J = {}", an.tilts.j));
    }
    let mut phis: Vec<f64> = (0..180).map(f64::from).collect();
    phis.extend([an.tilts.phi_l, an.tilts.phi_r.abs()]);
    for phi in phis.into_iter().filter(|&p| p < 180.0) {
        let sol = an.solve(phi).map_err(|e| e.to_string())?;
        let o = brute_force_pairs(arc, phi, &tol).map_err(|e| e.to_string())?;
        let matched = sol
            .pairs
            .iter()
            .all(|p| o.pairs.iter().any(|q| same_pair(p, &q.m, &q.n, &tol)));
        if o.count() != sol.pairs.len() || !matched {
            return Err(format!("phi {phi}: solver {} oracle {}", sol.pairs.len(), o.count()));
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut problems = Vec::new();
    let square = PolygonalArc::open([(0., 1.), (0., 0.), (1., 0.), (1., 1.)]).unwrap();
    let triangle = PolygonalArc::open([(0., 0.), (1., 1.), (2., 0.)]).unwrap();
    for (name, arc) in [("square", &square), ("triangle", &triangle)] {
        if let Err(e) = agrees_everywhere(arc) {
            problems.push(format!("{name}: {e}"));
        }
    }
    let seeds = derive_seeds(7, 500);
    let fuzzed: Vec<String> = seeds
        .par_iter()
        .enumerate()
        .filter_map(|(i, &seed)| {
            let arc = fuzz_arc(i, seed, 3..=30, Some(Strategy::Perimeter));
            let an = Analysis::with_default_tolerance(&arc).ok()?;
            let boundary = an.guide.axis_on_boundary
                && an.guide.links.iter().all(|l| l.kind == LinkKind::Edge);
            if !boundary {
                return Some(format!("arc {i}: axis not on boundary"));
            }
            agrees_everywhere(&arc).err().map(|e| format!("arc {i} (seed {seed}): {e}"))
        })
        .collect();
    problems.extend(fuzzed);
    let segment = PolygonalArc::open([(0., 0.), (1., 1.), (3., 3.)]).unwrap();
    let rejected = matches!(
        Analysis::with_default_tolerance(&segment),
        Err(Error::UnsupportedArc(_))
    );
    if !rejected {
        problems.push("segment arc not rejected as unsupported".into());
    }
    Outcome::new(
        problems.is_empty(),
        format!("square, triangle, 500 boundary-axis arcs, segment rejection{}", first(&problems)),
    )
}

/// Direct check for a closed-arc triple: no parametric order involved.
fn closed_triple_ok(arc: &PolygonalArc, p: &SupportPairSolution, tol: &Tolerance) -> bool {
    let nodes = arc.nodes();
    let distinct = p.u.index != p.v.index && p.v.index != p.w.index && p.u.index != p.w.index;
    let on = |l: &lambda_core::Line, k: usize| l.side_distance(nodes[k]).abs() <= tol.eps_len;
    let supports = |l: &lambda_core::Line| {
        nodes.iter().all(|&q| l.side_distance(q) >= -tol.eps_len)
            || nodes.iter().all(|&q| l.side_distance(q) <= tol.eps_len)
    };
    let parallel = p.m.dir.unit().cross(p.n.dir.unit()).abs() <= tol.eps_angle.to_radians().sin();
    let apart = p.m.side_distance(nodes[p.v.index]).abs() > tol.eps_len;
    distinct
        && on(&p.m, p.u.index)
        && on(&p.m, p.w.index)
        && on(&p.n, p.v.index)
        && supports(&p.m)
        && supports(&p.n)
        && parallel
        && apart
        && orient(nodes[p.u.index], nodes[p.w.index], nodes[p.v.index], tol) != 0
}

fn criterion_8() -> Outcome {
    let seeds = derive_seeds(8, 1_000);
    let failures: Vec<String> = seeds
        .par_iter()
        .enumerate()
        .filter_map(|(i, &seed)| {
            let n = 3 + (i * 7) % 48;
            let poly = match generate_closed(&GenConfig::new(seed, n, Strategy::Uncross)) {
                Ok(p) => p,
                Err(e) => return Some(format!("polygon {i}: {e}")),
            };
            let tol = poly.tolerance();
            match solve_closed(&poly, &tol) {
                Ok(p) if closed_triple_ok(&poly, &p, &tol) => None,
                Ok(_) => Some(format!("polygon {i} (seed {seed}): triple fails the direct check")),
                Err(e) => Some(format!("polygon {i} (seed {seed}): {e}")),
            }
        })
        .collect();
    Outcome::new(
        failures.is_empty(),
        format!("{}/1000 closed polygons pass the direct check{}", 1_000 - failures.len(), first(&failures)),
    )
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn criterion_9() -> Outcome {
    let arc = PolygonalArc::open([(0., 0.), (1., 1.), (2., -1.), (3., 1.), (4., 0.)]).unwrap();
    let scene = || {
        let an = Analysis::with_default_tolerance(&arc).unwrap();
        let sol = an.solve(0.0).unwrap();
        render_scene(&Scene::from_analysis(&an, &sol.pairs)).unwrap()
    };
    let schematic = || {
        let tt = TiltTable::from_tilts(EXEMPLAR_TILTS.to_vec(), DEFAULT_EPS_ANGLE).unwrap();
        render_schematic(&build_schematic(&tt, DEFAULT_EPS_ANGLE), &[40.0, 135.0])
    };
    let mut problems = Vec::new();
    for (name, render) in [
        ("pentagon.scene.svg", &scene as &dyn Fn() -> String),
        ("exemplar.schematic.svg", &schematic),
    ] {
        let (a, b) = (render(), render());
        if a != b {
            problems.push(format!("{name}: two runs differ"));
        }
        match std::fs::read_to_string(golden(name)) {
            Ok(g) if g == a => {}
            Ok(_) => problems.push(format!("{name}: differs from golden file")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }
    let delta = r#"<line x1="0.000000" y1="143.740000" x2="271.570000" y2="-127.830000"/>"#;
    if !schematic().contains(delta) {
        problems.push("delta endpoints not at (0, 143.74) and (271.57, -127.83)".into());
    }
    Outcome::new(
        problems.is_empty(),
        format!("golden pentagon scene and exemplar schematic{}", first(&problems)),
    )
}

fn main() {
    let mut all_pass = true;
    let mut report = |label: &str, outcome: Outcome, elapsed: Duration| {
        all_pass &= outcome.pass;
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {label}: {} [{elapsed:.2?}]", outcome.detail);
    };
    let single: [(&str, fn() -> Outcome); 8] = [
        ("1 exemplar spans and aspect angles", criterion_1),
        ("2 exemplar schematic", criterion_2),
        ("3 parallel-pair uniqueness", criterion_3),
        ("5 admissible guide paths", criterion_5),
        ("6 tilt invariants", criterion_6),
        ("7 degenerate branches", criterion_7),
        ("8 closed arcs", criterion_8),
        ("9 rendering determinism", criterion_9),
    ];
    for (label, run) in &single[..3] {
        let t = Instant::now();
        let o = run();
        report(label, o, t.elapsed());
    }
    let t = Instant::now();
    let parts = criterion_4();
    let elapsed = t.elapsed();
    for (label, o) in parts {
        report(label, o, elapsed);
    }
    for (label, run) in &single[3..] {
        let t = Instant::now();
        let o = run();
        report(label, o, t.elapsed());
    }
    if !all_pass {
        std::process::exit(1);
    }
}
