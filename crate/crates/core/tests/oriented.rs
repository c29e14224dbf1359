use cliffsphere_core::multivector::Multivector;
use cliffsphere_core::oriented::{
    abstract_product, build_frame, combined_identity_check, dual_bivector, duality_check,
    standard_score, AbstractElement, Orientation,
};
use cliffsphere_core::{UnitVec3, Vec3};
use proptest::prelude::*;

fn unit() -> impl Strategy<Value = UnitVec3> {
    [-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0]
        .prop_filter("away from zero", |v| Vec3(*v).norm() > 0.1)
        .prop_map(|v| UnitVec3::normalize(Vec3(v)).unwrap())
}

fn orientation() -> impl Strategy<Value = Orientation> {
    prop_oneof![Just(Orientation::Right), Just(Orientation::Left)]
}

fn element(lambda: Orientation) -> impl Strategy<Value = AbstractElement> {
    [-2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0]
        .prop_map(move |v| AbstractElement::new(v[0], [v[1], v[2], v[3]], lambda))
}

/// `a ^ b` and `I.(a x b)` written out componentwise on (e12, e13, e23).
fn componentwise_duality(a: Vec3, b: Vec3, lambda: f64) -> f64 {
    let [a1, a2, a3] = a.0;
    let [b1, b2, b3] = b.0;
    let wedge = [a1 * b2 - a2 * b1, a1 * b3 - a3 * b1, a2 * b3 - a3 * b2];
    let c = a.cross(b).0;
    // I e1 = e23, I e2 = -e13, I e3 = e12; mu = lambda I, then times lambda
    let dual = [lambda * lambda * c[2], -lambda * lambda * c[1], lambda * lambda * c[0]];
    wedge
        .iter()
        .zip(dual)
        .map(|(w, d)| (w - d).powi(2))
        .sum::<f64>()
        .sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn abstract_algebra_is_isomorphic_to_embedded_frame(
        (x, y) in orientation().prop_flat_map(|l| (element(l), element(l)))
    ) {
        let f = build_frame(x.lambda);
        let abs = f.realize(&abstract_product(&x, &y).unwrap()).unwrap();
        let emb = &f.realize(&x).unwrap() * &f.realize(&y).unwrap();
        prop_assert!(abs.distance(&emb) < 1e-12);
    }

    #[test]
    fn standard_scores_square_to_minus_one(a in unit(), lambda in orientation()) {
        let s = standard_score(a, lambda);
        let sq = abstract_product(&s, &s).unwrap();
        prop_assert!(sq.distance(&AbstractElement::new(-1.0, [0.0; 3], lambda)) < 1e-12);
        // embedded oracle: (lambda I.a)^2
        let emb = dual_bivector(a.vec()).scale(lambda.sign());
        prop_assert!((&emb * &emb).distance(&Multivector::scalar(3, -1.0).unwrap()) < 1e-12);
    }

    #[test]
    fn right_handed_product_of_scores(a in unit(), b in unit()) {
        let r = Orientation::Right;
        let p = abstract_product(&standard_score(a, r), &standard_score(b, r)).unwrap();
        let expect = AbstractElement::new(-a.dot(b), (-1.0 * a.cross(b)).0, r);
        prop_assert!(p.distance(&expect) < 1e-12);
    }

    #[test]
    fn combined_identity_holds(a in unit(), b in unit(), lambda in orientation()) {
        prop_assert!(combined_identity_check(a, b, lambda) < 1e-12);
    }

    #[test]
    fn duality_matches_componentwise_expansion(a in unit(), b in unit(), lambda in orientation()) {
        let r = duality_check(a, b, lambda);
        prop_assert!(r < 1e-12);
        prop_assert!(componentwise_duality(a.vec(), b.vec(), lambda.sign()) < 1e-12);
    }
}

#[test]
fn left_frame_satisfies_left_subalgebra() {
    let f = build_frame(Orientation::Left);
    // beta_x beta_y = +beta_z, cyclically
    for (j, k, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        assert!((&f.beta[j] * &f.beta[k]).distance(&f.beta[l]) < 1e-15);
    }
    let p = abstract_product(
        &AbstractElement::beta(0, Orientation::Left),
        &AbstractElement::beta(1, Orientation::Left),
    )
    .unwrap();
    let emb = f.realize(&p).unwrap();
    assert!(emb.distance(&(&f.beta[0] * &f.beta[1])) < 1e-15);
}

#[test]
fn orientation_is_detected_only_by_the_ordered_product() {
    for lambda in Orientation::BOTH {
        let f = build_frame(lambda);
        let expect = Multivector::scalar(3, lambda.sign()).unwrap();
        assert_eq!(f.ordered_product(), expect);
        // each single frame still has the quaternion-like squares
        for b in &f.beta {
            assert_eq!(b * b, Multivector::scalar(3, -1.0).unwrap());
        }
    }
}
