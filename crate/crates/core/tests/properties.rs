use lambda_core::arc_gen::{generate_arc, GenConfig, Strategy as Kind};
use lambda_core::geom::{AngleDeg, Line, Point};
use lambda_core::oracle::check_lambda;
use lambda_core::{Analysis, PolygonalArc, SupportPairSolution, Tolerance};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::Uncross), Just(Kind::Zigzag), Just(Kind::Perimeter)]
}

fn arc_strategy() -> impl Strategy<Value = PolygonalArc> {
    (any::<u64>(), 3usize..30, kind())
        .prop_map(|(seed, n, s)| generate_arc(&GenConfig::new(seed, n, s)).unwrap())
}

fn same_pair(a: &SupportPairSolution, m: &Line, n: &Line, tol: &Tolerance) -> bool {
    (a.m.same_line(m, tol) && a.n.same_line(n, tol)) || (a.m.same_line(n, tol) && a.n.same_line(m, tol))
}

/// Rotation by `deg` about the origin, optionally after mirroring in the x axis, then a shift.
fn motion(deg: f64, mirror: bool, shift: Point) -> impl Fn(Point) -> Point {
    move |p| {
        let p = if mirror { Point::new(p.x, -p.y) } else { p };
        let (s, c) = deg.to_radians().sin_cos();
        Point::new(c * p.x - s * p.y, s * p.x + c * p.y) + shift
    }
}

fn move_line(l: &Line, f: &impl Fn(Point) -> Point) -> Line {
    let a = f(l.point);
    let b = f(l.point + AngleDeg::unit(l.dir));
    Line::through(a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_pair_satisfies_the_predicate(arc in arc_strategy(), phi in 0u32..180) {
        let an = Analysis::with_default_tolerance(&arc).unwrap();
        let sol = an.solve(f64::from(phi)).unwrap();
        prop_assert_eq!(sol.pairs.len(), sol.case.expected_count());
        for p in &sol.pairs {
            prop_assert!(p.u.index < p.v.index && p.v.index < p.w.index);
            let r = check_lambda(&arc, &p.m, &p.n, (p.u.index, p.v.index, p.w.index), f64::from(phi), &an.tol);
            prop_assert!(r.is_ok(), "{:?}", r);
        }
    }

    #[test]
    fn reversal_keeps_the_parallel_pair(arc in arc_strategy()) {
        let tol = arc.tolerance();
        let a = Analysis::new(&arc, tol).unwrap().parallel().unwrap();
        let b = Analysis::new(&arc.reversed(), tol).unwrap().parallel().unwrap();
        prop_assert!(same_pair(&a, &b.m, &b.n, &tol));
    }

    #[test]
    fn reversal_keeps_counts(arc in arc_strategy(), phi in 1u32..180) {
        let tol = arc.tolerance();
        let a = Analysis::new(&arc, tol).unwrap().solve(f64::from(phi)).unwrap();
        let b = Analysis::new(&arc.reversed(), tol).unwrap().solve(f64::from(phi)).unwrap();
        prop_assert_eq!(a.pairs.len(), b.pairs.len());
    }

    #[test]
    fn rigid_motions_and_reflections_commute(
        arc in arc_strategy(),
        deg in 0.0f64..360.0,
        mirror in any::<bool>(),
        dx in -1e3f64..1e3,
        dy in -1e3f64..1e3,
        phi in 0u32..180,
    ) {
        let f = motion(deg, mirror, Point::new(dx, dy));
        let moved = arc.map(&f).unwrap();
        let tol = Tolerance::new(moved.tolerance().eps_len.max(arc.tolerance().eps_len) * 1e3, 1e-7).unwrap();
        let a = Analysis::new(&arc, arc.tolerance()).unwrap().solve(f64::from(phi)).unwrap();
        let b = Analysis::new(&moved, moved.tolerance()).unwrap().solve(f64::from(phi)).unwrap();
        prop_assert_eq!(a.pairs.len(), b.pairs.len());
        for p in &a.pairs {
            let (m, n) = (move_line(&p.m, &f), move_line(&p.n, &f));
            prop_assert!(b.pairs.iter().any(|q| same_pair(q, &m, &n, &tol)));
        }
    }

    #[test]
    fn tilt_table_invariants(arc in arc_strategy()) {
        let an = Analysis::with_default_tolerance(&arc).unwrap();
        let t = &an.tilts;
        prop_assert_eq!(t.tilts.len(), t.j + 2);
        prop_assert_eq!(t.spans.len(), t.j);
        prop_assert!(t.monotone_chains_hold());
        for (k, d) in t.spans.iter().enumerate() {
            // δ_j is negative for odd j and positive for even j
            if k % 2 == 0 { prop_assert!(*d <= 0.0) } else { prop_assert!(*d >= 0.0) }
        }
        prop_assert!(t.delta_total <= 360.0 + 1e-7);
        prop_assert!((t.delta_total - (t.phi_l - t.phi_r)).abs() <= 1e-9);
        prop_assert!(t.phi_l > 0.0 && t.phi_l < 180.0);
        prop_assert!(t.phi_r < 0.0 && t.phi_r > -180.0);
        let sd = &an.schematic;
        prop_assert_eq!(sd.strips.len(), t.j);
        for k in 0..=100 {
            let x = if k == 100 { t.delta_total } else { t.delta_total * f64::from(k) / 100.0 };
            let d = sd.delta(x).unwrap();
            prop_assert!((d - (t.phi_l - x)).abs() <= 1e-9);
        }
    }
}
