use cliffsphere_core::hopf::{
    fiber_phase_flip, null_limit_probe, parallel_transport_check, quaternion_point, rotate_about,
    transition_relation, Rotor,
};
use cliffsphere_core::identities::random_unit;
use cliffsphere_core::oriented::{dual_bivector, Orientation};
use cliffsphere_core::{UnitVec3, Vec3};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

/// `e^{i t}` carried into the plane `I.c`.
fn complex_exp(c: UnitVec3, t: f64) -> cliffsphere_core::Multivector {
    let (s, co) = t.sin_cos();
    &cliffsphere_core::Multivector::scalar(3, co).unwrap() + &dual_bivector(c.vec()).scale(s)
}

#[test]
fn transition_matches_complex_exponentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let (a, b) = (random_unit(&mut rng), random_unit(&mut rng));
        let psi_a = rand_core::RngCore::next_u32(&mut rng) as f64 / u32::MAX as f64 * 6.0 - 3.0;
        let t = transition_relation(a, b, psi_a).unwrap();
        assert!(t.residual < 1e-12, "{}", t.residual);
        assert!((t.probe.psi_b - t.probe.psi_a - t.probe.phi).abs() < 1e-15);
        assert!(t.lhs.distance(&complex_exp(t.axis, t.probe.psi_b)) < 1e-12);
        let rhs = &complex_exp(t.axis, t.probe.phi) * &complex_exp(t.axis, psi_a);
        assert!(t.rhs.distance(&rhs) < 1e-12);
    }
}

#[test]
fn parallel_transport_small_angles() {
    for lambda in Orientation::BOTH {
        for psi_a in [1e-1, 1e-2, 1e-3] {
            for phi_deg in [30.0f64, 90.0, 150.0] {
                let b = UnitVec3::in_xz_plane(phi_deg.to_radians());
                let r = parallel_transport_check(UnitVec3::Z, b, psi_a, lambda).unwrap();
                assert!(r.residual < 1e-10, "psi {psi_a} phi {phi_deg}: {}", r.residual);
                assert!(r.rotor.unitarity_residual() < 1e-12);
            }
        }
    }
}

#[test]
fn parallel_inputs_are_rejected() {
    assert!(transition_relation(UnitVec3::X, UnitVec3::X, 0.1).is_err());
    let minus_x = UnitVec3::try_from([-1.0, 0.0, 0.0]).unwrap();
    assert!(parallel_transport_check(UnitVec3::X, minus_x, 0.1, Orientation::Right).is_err());
}

#[test]
fn quaternion_points_lie_on_the_unit_three_sphere() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..500 {
        let (n, np) = (random_unit(&mut rng), random_unit(&mut rng));
        let lambda = if i % 2 == 0 { Orientation::Right } else { Orientation::Left };
        let side = if i % 3 == 0 { -1.0 } else { 1.0 };
        let q = quaternion_point(n, np, lambda, side);
        assert!((q.norm() - 1.0).abs() < 1e-12);
        assert!(q.is_homogeneous(0) || q.grade_norms()[1] + q.grade_norms()[3] < 1e-15);
    }
}

#[test]
fn distinct_settings_give_distinct_points() {
    let a = UnitVec3::Z;
    let b = UnitVec3::in_xz_plane(1.0);
    let ta = transition_relation(a, b, 0.2).unwrap();
    let qa = quaternion_point(a, ta.a_prime, Orientation::Right, 1.0);
    let qb = quaternion_point(b, ta.b_prime, Orientation::Right, 1.0);
    assert!(qa.distance(&qb) > 1e-3);
}

#[test]
fn phase_flip_at_half_turn() {
    let f = fiber_phase_flip(UnitVec3::Y, 0.25, std::f64::consts::PI);
    assert!(f.is_sign_flip(1e-12));
    assert!((f.scalar_a + f.scalar_b).abs() < 1e-15);
    let g = fiber_phase_flip(UnitVec3::Y, 0.25, 0.0);
    assert!(!g.is_sign_flip(1e-12));
    assert!(g.coincident_residual < 1e-15);
}

#[test]
fn null_limit_two_paths_agree() {
    let seps: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let a = random_unit(&mut rng);
        let rows = null_limit_probe(a, &seps).unwrap();
        assert_eq!(rows.len(), 6);
        for row in rows {
            let w = row.wedge_magnitude.unwrap();
            let c = row.cross_magnitude.unwrap();
            assert!((w - 1.0).abs() < 1e-9, "psi {}: {w}", row.psi);
            assert!((w - c).abs() < 1e-12);
            let axis = row.axis.unwrap();
            assert!(axis.dot(a.vec()).abs() < 1e-6);
        }
    }
}

#[test]
fn null_limit_at_zero_is_undefined() {
    let rows = null_limit_probe(UnitVec3::X, &[1e-3, 0.0]).unwrap();
    assert!(rows[0].wedge_magnitude.is_some());
    assert_eq!(rows[1].wedge_magnitude, None);
    assert!(null_limit_probe(UnitVec3::X, &[1e-3, 1e-2]).is_err());
    assert!(null_limit_probe(UnitVec3::X, &[f64::NAN]).is_err());
}

#[test]
fn rotor_matches_rodrigues() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..100 {
        let (c, v) = (random_unit(&mut rng), random_unit(&mut rng));
        let t = k as f64 * 0.07 - 3.5;
        let (s, co) = t.sin_cos();
        let cv = c.vec();
        let rod = co * v.vec() + s * cv.cross(v.vec()) + (1.0 - co) * cv.dot(v.vec()) * cv;
        assert!((rotate_about(v.vec(), c, t) - rod).norm() < 1e-12);
        let r = Rotor::new(c, t);
        assert!((r.apply(cv) - cv).norm() < 1e-12);
    }
    assert!((rotate_about(Vec3::X, UnitVec3::Z, 0.5) - Vec3([0.5f64.cos(), 0.5f64.sin(), 0.0])).norm() < 1e-15);
}
