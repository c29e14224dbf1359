use cliffsphere_core::multivector::{BladeIndex, Grade, Multivector};
use cliffsphere_core::oriented::dual_bivector;
use cliffsphere_core::reference::{naive_contract, naive_product};
use cliffsphere_core::seven::build_j;
use cliffsphere_core::{UnitVec3, Vec3};
use proptest::prelude::*;

fn mv(dim: u8) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(-1.0f64..1.0, 1usize << dim)
        .prop_map(move |c| Multivector::from_coeffs(dim, c).unwrap())
}

fn unit() -> impl Strategy<Value = UnitVec3> {
    [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0]
        .prop_filter("away from zero", |v| Vec3(*v).norm() > 0.1)
        .prop_map(|v| UnitVec3::normalize(Vec3(v)).unwrap())
}

fn max_abs_diff(x: &Multivector, y: &Multivector) -> f64 {
    x.coeffs()
        .iter()
        .zip(y.coeffs())
        .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_naive_oracle((x, y) in (1u8..=8).prop_flat_map(|d| (mv(d), mv(d)))) {
        let fast = x.geometric_product(&y).unwrap();
        let slow = naive_product(&x, &y).unwrap();
        prop_assert!(max_abs_diff(&fast, &slow) < 1e-12);
        let fc = x.contract(&y).unwrap();
        let sc = naive_contract(&x, &y).unwrap();
        prop_assert!(max_abs_diff(&fc, &sc) < 1e-12);
    }

    #[test]
    fn associativity_cl3(x in mv(3), y in mv(3), z in mv(3)) {
        let lhs = &(&x * &y) * &z;
        let rhs = &x * &(&y * &z);
        prop_assert!(lhs.distance(&rhs) < 1e-10 * x.norm() * y.norm() * z.norm());
    }

    #[test]
    fn associativity_cl7(x in mv(7), y in mv(7), z in mv(7)) {
        let lhs = &(&x * &y) * &z;
        let rhs = &x * &(&y * &z);
        prop_assert!(lhs.distance(&rhs) < 1e-10 * x.norm() * y.norm() * z.norm());
    }

    #[test]
    fn vector_product_is_dot_plus_wedge(a in unit(), b in unit()) {
        let (av, bv) = (Multivector::from_vec3(a.vec()), Multivector::from_vec3(b.vec()));
        let split = &av.contract(&bv).unwrap() + &av.wedge(&bv).unwrap();
        prop_assert!((&av * &bv).distance(&split) < 1e-12);
        // antisymmetry of the wedge on vectors
        let sym = &av.wedge(&bv).unwrap() + &bv.wedge(&av).unwrap();
        prop_assert!(sym.norm() < 1e-15);
    }

    #[test]
    fn grade_parts_are_complete_and_idempotent(x in mv(5)) {
        let mut total = Multivector::zero(5).unwrap();
        for g in 0..=5 {
            let part = x.grade_part(Grade::new(g, 5).unwrap());
            prop_assert_eq!(part.grade_part(Grade::new(g, 5).unwrap()), part.clone());
            total = &total + &part;
        }
        prop_assert_eq!(total, x);
    }

    #[test]
    fn rotor_sandwich_rotates_plane_vectors_by_twice_the_angle(c in unit(), w in unit(), theta in -3.0f64..3.0) {
        let b = dual_bivector(c.vec());
        let r = Multivector::rotor_exp(&b, theta).unwrap();
        prop_assert!((r.norm() - 1.0).abs() < 1e-12);
        let u = match UnitVec3::normalize(c.vec().cross(w.vec())) {
            Ok(u) => u,
            Err(_) => return Ok(()),
        };
        let v = c.vec().cross(u.vec());
        // 2x2 rotation by -2 theta in the (u, v) basis of the plane
        let (s, co) = (2.0 * theta).sin_cos();
        for (x, y) in [(1.0, 0.0), (0.3, -0.7)] {
            let input = x * u.vec() + y * v;
            let out = r.sandwich(&Multivector::from_vec3(input)).unwrap().vector_part3();
            let (rx, ry) = (co * x + s * y, -s * x + co * y);
            let expect = rx * u.vec() + ry * v;
            prop_assert!((out - expect).norm() < 1e-10);
        }
    }
}

/// exp(B t) by its power series, using B^2 = -1 only through repeated products.
fn series_exp(b: &Multivector, t: f64) -> Multivector {
    let bt = b.scale(t);
    let mut term = Multivector::scalar(b.dim(), 1.0).unwrap();
    let mut sum = term.clone();
    for k in 1..40 {
        term = (&term * &bt).scale(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

#[test]
fn rotor_exp_matches_power_series() {
    let b = Multivector::blade(3, BladeIndex::from_generators(&[1, 2]), 1.0).unwrap();
    for t in [0.0, 0.1, std::f64::consts::FRAC_PI_2, 1.3, std::f64::consts::PI] {
        let closed = Multivector::rotor_exp(&b, t).unwrap();
        assert!(closed.distance(&series_exp(&b, t)) < 1e-14, "t = {t}");
    }
    let r = Multivector::rotor_exp(&b, std::f64::consts::FRAC_PI_2).unwrap();
    assert!(r.distance(&b) < 1e-16);
}

#[test]
fn j_contraction_matches_oracle() {
    let j = build_j().value;
    for k in 1..=7u8 {
        let e = Multivector::basis_vector(7, k).unwrap();
        let fast = j.contract(&e).unwrap();
        assert_eq!(fast, naive_contract(&j, &e).unwrap());
        assert!(fast.is_homogeneous(2));
        assert_eq!(fast.terms().count(), 3, "e{k}");
    }
    let e1 = Multivector::basis_vector(7, 1).unwrap();
    let terms: Vec<_> = j.contract(&e1).unwrap().terms().map(|(b, c)| (b.to_string(), c)).collect();
    assert_eq!(
        terms,
        vec![("e24".to_string(), 1.0), ("e56".to_string(), 1.0), ("e37".to_string(), 1.0)]
    );
}

#[test]
fn values_are_shareable_across_threads() {
    let x = Multivector::pseudoscalar(3).unwrap();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let x = x.clone();
            std::thread::spawn(move || (&x * &x).scalar_part())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), -1.0);
    }
}
