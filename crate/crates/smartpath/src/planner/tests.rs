use super::*;
use crate::geometry::AffineFunctional;
use crate::poly::UnivariatePolynomial;

fn scene_a() -> (Vec<ConvexPolyhedron>, Vec<Waypoint>) {
    let regions = vec![
        ConvexPolyhedron::from_box(&[0.0, 0.0], &[1.0, 2.0]).unwrap(),
        ConvexPolyhedron::from_box(&[0.0, 0.0], &[2.0, 1.0]).unwrap(),
    ];
    let waypoints = vec![
        Waypoint {
            region: 0,
            point: vec![0.5, 2.0],
            time: 0.3,
        },
        Waypoint {
            region: 1,
            point: vec![2.0, 0.5],
            time: 0.7,
        },
    ];
    (regions, waypoints)
}

fn half_plane(g: [f64; 2], c: f64) -> AffineFunctional {
    AffineFunctional::new(g.to_vec(), c).unwrap()
}

fn scene_b() -> (Vec<ConvexPolyhedron>, Vec<Waypoint>) {
    let left = ConvexPolyhedron::new(vec![
        half_plane([-1.0, -1.0], 0.0),
        half_plane([0.0, 1.0], 0.0),
        half_plane([1.0, 0.0], 1.0),
    ])
    .unwrap();
    let right = ConvexPolyhedron::new(vec![
        half_plane([1.0, -1.0], 0.0),
        half_plane([0.0, 1.0], 0.0),
        half_plane([-1.0, 0.0], 1.0),
    ])
    .unwrap();
    let waypoints = vec![
        Waypoint {
            region: 0,
            point: vec![-0.6, 0.3],
            time: 0.3,
        },
        Waypoint {
            region: 1,
            point: vec![0.6, 0.3],
            time: 0.7,
        },
    ];
    (vec![left, right], waypoints)
}

fn guide_for(regions: &[ConvexPolyhedron], waypoints: &[Waypoint]) -> (GuidePath, ControlSchedule) {
    let graph = build_region_graph(regions, &[]).unwrap();
    let (schedule, bridges) = make_schedule(&graph, waypoints).unwrap();
    (
        build_guide_path(regions, &schedule, &bridges).unwrap(),
        schedule,
    )
}

#[test]
fn schedule_interleaves_bridges() {
    let (regions, waypoints) = scene_a();
    let (guide, schedule) = guide_for(&regions, &waypoints);
    assert_eq!(schedule.bridge_times, vec![0.5]);
    assert_eq!(schedule.region_sequence, vec![0, 1]);
    let kinds: Vec<PieceKind> = guide.pieces.iter().map(|p| p.kind).collect();
    use PieceKind::*;
    assert_eq!(
        kinds,
        vec![LeadIn, Cusp, Segment, Bridge, Segment, Cusp, LeadOut]
    );
    assert!(guide.max_joint_gap() < 1e-12);
    assert_eq!(guide.pieces.first().unwrap().interval.0, 0.0);
    assert_eq!(guide.pieces.last().unwrap().interval.1, 1.0);
}

#[test]
fn guide_passes_the_waypoints_at_their_times() {
    for (regions, waypoints) in [scene_a(), scene_b()] {
        let (guide, _) = guide_for(&regions, &waypoints);
        for w in &waypoints {
            let x = guide.eval(w.time);
            assert!((x[0] - w.point[0]).abs() < 1e-12 && (x[1] - w.point[1]).abs() < 1e-12);
        }
    }
}

#[test]
fn boundary_waypoints_get_cuspidal_jets() {
    let (regions, waypoints) = scene_a();
    let (guide, schedule) = guide_for(&regions, &waypoints);
    let budget = compute_error_budget(&guide, &regions, &schedule).unwrap();
    assert_eq!(budget.waypoint_orders, vec![3, 3]);
    assert!(budget.eps > 0.0 && budget.eps_prime > 0.0 && budget.eps_prime <= budget.eps);
    // Active constraint at a waypoint on the top edge: h = 2 − y, and the
    // arc leaves quadratically, so the first nonzero derivative is the second.
    let active: Vec<&WindowTerm> = budget.mu.iter().filter(|t| t.order > 0).collect();
    assert!(!active.is_empty());
    assert!(active.iter().all(|t| t.order == 2 && t.sign > 0.0));
}

#[test]
fn interior_waypoints_get_first_order_jets() {
    let (regions, mut waypoints) = scene_a();
    waypoints[0].point = vec![0.5, 1.5];
    let (guide, schedule) = guide_for(&regions, &waypoints);
    let budget = compute_error_budget(&guide, &regions, &schedule).unwrap();
    assert_eq!(budget.waypoint_orders, vec![1, 3]);
}

#[test]
fn segment_margin_matches_hand_computation() {
    // Straight piece x(t) = (0.25 + 0.5 t, 0.5) on [0, 1] in the unit square:
    // every constraint is inactive at t = 0.5, clearance min(0.5, 0.5, 0.25, ...) = 0.25.
    let square = ConvexPolyhedron::from_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
    let comps = vec![
        UnivariatePolynomial::new(vec![0.25, 0.5]),
        UnivariatePolynomial::new(vec![0.5]),
    ];
    let terms = window_terms(&comps, 0.5, 0.5, 0, (0, &square), (0, &square)).unwrap();
    assert!(terms.iter().all(|t| t.order == 0));
    let mu = terms.iter().map(|t| t.mu).fold(f64::INFINITY, f64::min);
    assert!((mu - 0.25).abs() < 1e-6, "{mu}");
}

#[test]
fn cusp_margin_matches_hand_computation() {
    // x(t) = (t³, t²) touches y = 0 at t = 0; (h ∘ x)'' = 2 on both halves.
    let k = ConvexPolyhedron::new(vec![
        half_plane([0.0, 1.0], 0.0),
        half_plane([0.0, -1.0], 1.0),
    ])
    .unwrap();
    let comps = vec![
        UnivariatePolynomial::new(vec![0.0, 0.0, 0.0, 1.0]),
        UnivariatePolynomial::new(vec![0.0, 0.0, 1.0]),
    ];
    let terms = window_terms(&comps, 0.0, 0.5, 0, (0, &k), (0, &k)).unwrap();
    let cusp: Vec<&WindowTerm> = terms
        .iter()
        .filter(|t| t.constraint == 0 && t.order > 0)
        .collect();
    assert_eq!(cusp.len(), 2);
    for t in cusp {
        assert_eq!(t.order, 2);
        assert!((t.mu - 2.0).abs() < 1e-9);
    }
    // A piece that crosses the constraint is rejected.
    let crossing = vec![
        UnivariatePolynomial::new(vec![0.0]),
        UnivariatePolynomial::new(vec![0.0, 1.0]),
    ];
    assert!(window_terms(&crossing, 0.0, 0.5, 0, (0, &k), (0, &k)).is_err());
}

#[test]
fn analytic_degree_examples() {
    let budget = ErrorBudget {
        eps: 0.1,
        eps_prime: 0.1,
        mu: Vec::new(),
        mu_prime: Vec::new(),
        mu_double_prime: Vec::new(),
        waypoint_orders: vec![3],
        bridge_orders: vec![2],
        l: 3,
        waypoint_derivative_norms: vec![0.1],
        bridge_derivative_norms: vec![20.0],
    };
    // sqrt(C/ε′) = sqrt(10/0.1) = 10, sqrt(2·18/0.1) ≈ 18.97, 3·2·0.1/0.1 = 6,
    // 2·1·20/0.1 = 400, sqrt(2·1/0.1) ≈ 4.47; max 400 → 401.
    let consts = AnalyticConstants {
        c: 10.0,
        c_i: vec![18.0],
        l_i: vec![1.0],
    };
    assert_eq!(analytic_degree(&budget, 2, &consts).unwrap(), 401);
    assert_eq!(hermite_floor(2, 1), 3);
    assert_eq!(hermite_floor(2, 2), 19);
    assert_eq!(hermite_floor(3, 3), 54);
    let wrong = AnalyticConstants {
        c: 1.0,
        c_i: vec![],
        l_i: vec![1.0],
    };
    assert!(matches!(
        analytic_degree(&budget, 2, &wrong),
        Err(PlanError::Degree(_))
    ));
}

#[test]
fn smoothing_matches_the_jets() {
    let (regions, waypoints) = scene_a();
    let (guide, _) = guide_for(&regions, &waypoints);
    let alpha = smooth_path(&guide, 64).unwrap();
    for w in &guide.windows {
        for (m, target) in guide.jet(w).iter().enumerate() {
            for (c, a) in alpha.components().iter().enumerate() {
                let got = a.derivative_at(m, w.center);
                assert!(
                    (got - target[c]).abs() <= 1e-8 * (1.0 + target[c].abs()),
                    "m={m} c={c} {got} {}",
                    target[c]
                );
            }
        }
    }
    assert!(matches!(smooth_path(&guide, 4), Err(PlanError::Degree(_))));
}

#[test]
fn plans_scene_a() {
    let (regions, waypoints) = scene_a();
    let result = plan(&regions, &waypoints, &PlanOptions::default()).unwrap();
    assert!(result.cert.all_pass);
    assert!(result.nu <= 256, "nu = {}", result.nu);
    for w in &waypoints {
        let x = result.path.eval(w.time);
        assert!((x[0] - w.point[0]).abs() < 1e-8 && (x[1] - w.point[1]).abs() < 1e-8);
    }
}

#[test]
fn plans_scene_b_through_the_vertex() {
    let (regions, waypoints) = scene_b();
    let result = plan(&regions, &waypoints, &PlanOptions::default()).unwrap();
    assert!(result.cert.all_pass, "{:?}", result.cert.failures());
    let x = result.path.eval(result.schedule.bridge_times[0]);
    assert!(x[0].abs() < 1e-8 && x[1].abs() < 1e-8);
}

#[test]
fn perturbed_path_fails_certification() {
    let (regions, waypoints) = scene_a();
    let result = plan(&regions, &waypoints, &PlanOptions::default()).unwrap();
    let shifted: Vec<BernsteinPolynomial> = result
        .path
        .components()
        .iter()
        .map(|c| c.add_constant(2.0 * result.budget.eps))
        .collect();
    let bad = PolynomialPath::new(shifted, (0.0, 1.0));
    let cert = certify_path(&bad, &result.guide, &regions, &result.budget, 1000);
    assert!(!cert.all_pass);
    assert!(cert.clearance.iter().any(|e| !e.pass));
    assert!(cert.jets.iter().any(|e| !e.pass));
}

#[test]
fn analytic_mode_needs_constants() {
    let (regions, waypoints) = scene_a();
    let options = PlanOptions {
        mode: DegreeMode::Analytic,
        ..PlanOptions::default()
    };
    let err = plan(&regions, &waypoints, &options).unwrap_err();
    assert_eq!(err.stage(), "degree");
}

#[test]
fn rejects_bad_waypoints() {
    let (regions, mut waypoints) = scene_a();
    waypoints[1].time = 0.2;
    assert_eq!(
        plan(&regions, &waypoints, &PlanOptions::default())
            .unwrap_err()
            .stage(),
        "scene"
    );
    let (regions, mut waypoints) = scene_a();
    waypoints[0].point = vec![3.0, 3.0];
    assert_eq!(
        plan(&regions, &waypoints, &PlanOptions::default())
            .unwrap_err()
            .stage(),
        "scene"
    );
}

#[test]
fn disconnected_regions_fail_routing() {
    let regions = vec![
        ConvexPolyhedron::from_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap(),
        ConvexPolyhedron::from_box(&[2.0, 0.0], &[3.0, 1.0]).unwrap(),
    ];
    let waypoints = vec![
        Waypoint {
            region: 0,
            point: vec![0.5, 0.5],
            time: 0.3,
        },
        Waypoint {
            region: 1,
            point: vec![2.5, 0.5],
            time: 0.7,
        },
    ];
    let err = plan(&regions, &waypoints, &PlanOptions::default()).unwrap_err();
    assert_eq!(err.stage(), "routing");
}
