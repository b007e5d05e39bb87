use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smartpath::bridges::{cuspidal_arc, moment_arc_valid, reduce_to_moment, MonomialArc};
use smartpath::geometry::{AffineFunctional, ConvexPolyhedron};

fn polygon(cs: &[([f64; 2], f64)]) -> ConvexPolyhedron {
    ConvexPolyhedron::new(
        cs.iter()
            .map(|(g, c)| AffineFunctional::new(g.to_vec(), *c).unwrap())
            .collect(),
    )
    .unwrap()
}

/// `x2 ≤ x1, x2 ≥ 0, x1 ≤ 1`.
fn right_triangle() -> ConvexPolyhedron {
    polygon(&[([1.0, -1.0], 0.0), ([0.0, 1.0], 0.0), ([-1.0, 0.0], 1.0)])
}

/// `eps = 0`: `x2 ≤ −x1, x2 ≥ 0, x1 ≥ −1`; `eps = 1`: `x2 ≥ −x1, x2 ≤ 0, x1 ≤ 1`.
fn left_triangle(eps: u8) -> ConvexPolyhedron {
    if eps == 0 {
        polygon(&[([-1.0, -1.0], 0.0), ([0.0, 1.0], 0.0), ([1.0, 0.0], 1.0)])
    } else {
        polygon(&[([1.0, 1.0], 0.0), ([0.0, -1.0], 0.0), ([-1.0, 0.0], 1.0)])
    }
}

/// `(t^a, t^b)` enters both triangles iff `a < b` and the parities of `(a, b)`
/// are (odd, even) for `eps = 0` and (even, odd) for `eps = 1`.
fn parity_compliant(eps: u8, exps: &[u32]) -> bool {
    match exps {
        [a, b] => a < b && a % 2 == (1 - eps as u32) && b % 2 == eps as u32,
        _ => false,
    }
}

fn exponent_tuples() -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (1..=5).map(|a| vec![a]).collect();
    for a in 1..=5 {
        for b in a + 1..=5 {
            out.push(vec![a, b]);
        }
    }
    out
}

fn sampled_inside(
    k_left: &ConvexPolyhedron,
    k_right: &ConvexPolyhedron,
    arc: &MonomialArc,
    eps: f64,
) -> bool {
    (1..=1000).all(|i| {
        let t = eps * i as f64 / 1000.0;
        k_right.interior_contains(&arc.eval(t), 0.0).unwrap()
            && k_left.interior_contains(&arc.eval(-t), 0.0).unwrap()
    })
}

#[test]
fn exhaustive_search_finds_the_parity_law() {
    let k1 = right_triangle();
    for eps in [0u8, 1] {
        let k2 = left_triangle(eps);
        let mut certified = Vec::new();
        for exps in exponent_tuples() {
            let arc = MonomialArc::standard(vec![0.0, 0.0], exps.clone()).unwrap();
            let cert = moment_arc_valid(&k2, &k1, &arc).unwrap();
            assert_eq!(
                cert.valid,
                parity_compliant(eps, &exps),
                "eps={eps} {exps:?}"
            );
            if cert.valid {
                assert!(sampled_inside(&k2, &k1, &arc, cert.epsilon));
                let reduced = reduce_to_moment(&k2, &k1, &arc).unwrap();
                assert!(
                    reduced.exponents.windows(2).all(|w| w[1] == w[0] + 1),
                    "{:?}",
                    reduced.exponents
                );
                assert!(moment_arc_valid(&k2, &k1, &reduced).unwrap().valid);
                certified.push(exps);
            }
        }
        let minimum = certified
            .iter()
            .min_by_key(|e| (e.iter().sum::<u32>(), e.to_vec()))
            .unwrap();
        assert_eq!(minimum, &if eps == 0 { vec![1, 2] } else { vec![2, 3] });
    }
}

#[test]
fn cuspidal_box_example() {
    let k = ConvexPolyhedron::from_box(&[0.0, -1.0], &[2.0, 1.0]).unwrap();
    let spec = cuspidal_arc(&k, &[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]).unwrap();
    assert!(spec.arc.epsilon >= 0.9);
    assert!(sampled_inside(&k, &k, &spec.arc, spec.arc.epsilon));
}

/// Random half-spaces around the origin, cut down to the cube `[-2, 2]^n`.
fn random_polytope(rng: &mut ChaCha8Rng, n: usize) -> ConvexPolyhedron {
    let m = rng.gen_range(n + 1..=3 * n + 2);
    let mut cs: Vec<AffineFunctional> = (0..m)
        .map(|_| {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            AffineFunctional::new(v, rng.gen_range(0.5..1.5)).unwrap()
        })
        .collect();
    for k in 0..n {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; n];
            e[k] = sign;
            cs.push(AffineFunctional::new(e, 2.0).unwrap());
        }
    }
    ConvexPolyhedron::new(cs).unwrap()
}

/// A boundary point on a random ray from the Chebyshev center, the inward
/// direction back to the center, and a random second direction.
fn random_cusp_data(rng: &mut ChaCha8Rng, k: &ConvexPolyhedron) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = k.dim();
    let c = k.witness().to_vec();
    loop {
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let s = k
            .constraints()
            .iter()
            .filter_map(|h| {
                let rate = h.linear(&d);
                (rate < 0.0).then(|| h.eval(&c) / -rate)
            })
            .fold(f64::INFINITY, f64::min);
        if !s.is_finite() {
            continue;
        }
        let p: Vec<f64> = c.iter().zip(&d).map(|(ci, di)| ci + s * di).collect();
        let u: Vec<f64> = c.iter().zip(&p).map(|(ci, pi)| ci - pi).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        return (p, u, w);
    }
}

#[test]
fn random_cuspidal_arcs_stay_inside() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..20 {
        let n = 2 + trial % 2;
        let k = random_polytope(&mut rng, n);
        let (p, u, w) = random_cusp_data(&mut rng, &k);
        let spec = cuspidal_arc(&k, &p, &u, &w).unwrap();
        assert!(spec.arc.epsilon > 0.0);
        assert!(
            sampled_inside(&k, &k, &spec.arc, spec.arc.epsilon),
            "trial {trial}"
        );
    }
}

proptest! {
    #[test]
    fn cuspidal_arcs_are_injective(seed in any::<u64>(), t in -1.0f64..1.0, s in -1.0f64..1.0) {
        prop_assume!((t - s).abs() > 1e-6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = random_polytope(&mut rng, 2);
        let (p, u, w) = random_cusp_data(&mut rng, &k);
        let arc = cuspidal_arc(&k, &p, &u, &w).unwrap().arc;
        let (a, b) = (arc.eval(t), arc.eval(s));
        prop_assert!(a.iter().zip(&b).any(|(x, y)| x != y));
    }

    #[test]
    fn valid_arcs_reduce_to_consecutive_exponents(a in 1u32..=6, gap in 1u32..=5, eps in 0u8..=1) {
        let arc = MonomialArc::standard(vec![0.0, 0.0], vec![a, a + gap]).unwrap();
        let (k2, k1) = (left_triangle(eps), right_triangle());
        if moment_arc_valid(&k2, &k1, &arc).unwrap().valid {
            let reduced = reduce_to_moment(&k2, &k1, &arc).unwrap();
            prop_assert_eq!(reduced.exponents.clone(), if eps == 0 { vec![1, 2] } else { vec![2, 3] });
            prop_assert!(moment_arc_valid(&k2, &k1, &reduced).unwrap().valid);
        }
    }
}
