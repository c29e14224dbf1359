//! Named identity checks for the algebra and the oriented frames.
//!
//! Every check reports the largest residual seen over its samples. Random
//! samples come from a seeded ChaCha8 generator, so a suite run is
//! reproducible. `inject_sign_flip` corrupts the abstract structure constant
//! (`-lambda` becomes `+lambda`) and exists to prove the suite can fail.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::epr::{commutativity_check, raw_score_alice, raw_score_bob, standard_commutator_norm};
use crate::multivector::{BladeIndex, Grade, Multivector};
use crate::oriented::{
    build_frame, combined_identity_residual, cross_via_algebra, dual_bivector, duality_check,
    product_with_coupling, standard_score, volume_form, AbstractElement, HiddenBasis, Orientation,
};
use crate::reference::NaiveTable;
use crate::{UnitVec3, Vec3, IDENTITY_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub tolerance: f64,
    /// Random unit-vector pairs per identity and orientation.
    pub pairs: usize,
    pub seed: u64,
    pub inject_sign_flip: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            tolerance: IDENTITY_TOL,
            pairs: 1000,
            seed: 0x5eed,
            inject_sign_flip: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub passed: bool,
}

/// Uniform `[0, 1)` from the top 53 bits.
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniformly distributed direction by rejection from the cube.
pub fn random_unit(rng: &mut impl RngCore) -> UnitVec3 {
    loop {
        let v = Vec3::new(
            2.0 * unit_f64(rng) - 1.0,
            2.0 * unit_f64(rng) - 1.0,
            2.0 * unit_f64(rng) - 1.0,
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return UnitVec3::normalize(v).expect("non-zero");
        }
    }
}

/// Multivector with coefficients uniform in `[-1, 1)`.
pub fn random_multivector(rng: &mut impl RngCore, dim: u8) -> Multivector {
    let coeffs = (0..1usize << dim).map(|_| 2.0 * unit_f64(rng) - 1.0).collect();
    Multivector::from_coeffs(dim, coeffs).expect("finite coefficients")
}

const LEVI_CIVITA: [[[f64; 3]; 3]; 3] = {
    let mut e = [[[0.0; 3]; 3]; 3];
    e[0][1][2] = 1.0;
    e[1][2][0] = 1.0;
    e[2][0][1] = 1.0;
    e[0][2][1] = -1.0;
    e[2][1][0] = -1.0;
    e[1][0][2] = -1.0;
    e
};

struct Suite {
    opts: SuiteOptions,
    rng: ChaCha8Rng,
    results: Vec<CheckResult>,
}

impl Suite {
    fn record(&mut self, name: &'static str, scale: f64, samples: usize, max_residual: f64) {
        let tolerance = self.opts.tolerance * scale;
        self.results.push(CheckResult {
            name,
            max_residual,
            tolerance,
            samples,
            // NaN residuals fail
            passed: max_residual <= tolerance,
        });
    }

    fn over_pairs(&mut self, name: &'static str, f: impl Fn(UnitVec3, UnitVec3, Orientation) -> f64) {
        let mut worst = 0.0f64;
        let mut samples = 0;
        for _ in 0..self.opts.pairs {
            let a = random_unit(&mut self.rng);
            let b = random_unit(&mut self.rng);
            for lambda in Orientation::BOTH {
                worst = worst.max(f(a, b, lambda));
                samples += 1;
            }
        }
        self.record(name, 1.0, samples, worst);
    }

    fn coupling(&self, lambda: Orientation) -> f64 {
        if self.opts.inject_sign_flip {
            lambda.sign()
        } else {
            -lambda.sign()
        }
    }
}

fn scalar3(x: f64) -> Multivector {
    Multivector::scalar(3, x).expect("Cl(3,0)")
}

/// Max over `j, k` of `|beta_j beta_k - (-delta_jk + k eps_jkl beta_l)|` on a frame.
fn frame_subalgebra_residual(lambda: Orientation, coupling: f64) -> f64 {
    let f = build_frame(lambda);
    let mut worst = 0.0f64;
    for (j, eps_j) in LEVI_CIVITA.iter().enumerate() {
        for (k, eps_jk) in eps_j.iter().enumerate() {
            let lhs = &f.beta[j] * &f.beta[k];
            let mut rhs = scalar3(if j == k { -1.0 } else { 0.0 });
            for (beta, eps) in f.beta.iter().zip(eps_jk) {
                rhs = &rhs + &beta.scale(coupling * eps);
            }
            worst = worst.max(lhs.distance(&rhs));
        }
    }
    worst
}

pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckResult> {
    let mut s = Suite {
        opts: *opts,
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        results: Vec::new(),
    };

    // --- Cl(n,0) arithmetic
    let mut worst = 0.0f64;
    let mut samples = 0;
    for dim in 1..=8u8 {
        for j in 1..=dim {
            for k in 1..=dim {
                let ej = Multivector::basis_vector(dim, j).expect("generator");
                let ek = Multivector::basis_vector(dim, k).expect("generator");
                let sum = &(&ej * &ek) + &(&ek * &ej);
                let expect = Multivector::scalar(dim, if j == k { 2.0 } else { 0.0 }).expect("dim");
                worst = worst.max(sum.distance(&expect));
                samples += 1;
            }
        }
    }
    s.record("clifford.generator_anticommutation", 1.0, samples, worst);

    for (name, dim) in [("clifford.associativity_cl3", 3u8), ("clifford.associativity_cl7", 7)] {
        let mut worst = 0.0f64;
        for _ in 0..500 {
            let x = random_multivector(&mut s.rng, dim);
            let y = random_multivector(&mut s.rng, dim);
            let z = random_multivector(&mut s.rng, dim);
            let lhs = &(&x * &y) * &z;
            let rhs = &x * &(&y * &z);
            worst = worst.max(lhs.distance(&rhs) / (x.norm() * y.norm() * z.norm()));
        }
        s.record(name, 100.0, 500, worst);
    }

    let mut worst = 0.0f64;
    for dim in 1..=8u8 {
        let table = NaiveTable::new(dim);
        for _ in 0..200 {
            let x = random_multivector(&mut s.rng, dim);
            let y = random_multivector(&mut s.rng, dim);
            let fast = &x * &y;
            let slow = table.product(&x, &y).expect("same dim");
            let d = fast
                .coeffs()
                .iter()
                .zip(slow.coeffs())
                .fold(0.0f64, |m, (p, q)| m.max((p - q).abs()));
            worst = worst.max(d);
        }
    }
    s.record("clifford.naive_oracle_equivalence", 1.0, 8 * 200, worst);

    s.over_pairs("clifford.vector_product_split", |a, b, _| {
        let (av, bv) = (Multivector::from_vec3(a.vec()), Multivector::from_vec3(b.vec()));
        let split = &av.contract(&bv).expect("Cl3") + &av.wedge(&bv).expect("Cl3");
        (&av * &bv).distance(&split)
    });

    s.over_pairs("clifford.vector_contraction_is_dot", |a, b, _| {
        let c = Multivector::from_vec3(a.vec())
            .contract(&Multivector::from_vec3(b.vec()))
            .expect("Cl3");
        c.distance(&scalar3(a.dot(b)))
    });

    s.over_pairs("clifford.cross_from_dual_wedge", |a, b, _| {
        (cross_via_algebra(a.vec(), b.vec()) - a.cross(b)).norm()
    });

    let mut worst_unit = 0.0f64;
    let mut worst_rot = 0.0f64;
    let pairs = s.opts.pairs;
    for _ in 0..pairs {
        let c = random_unit(&mut s.rng);
        let theta = 2.0 * core::f64::consts::PI * unit_f64(&mut s.rng);
        let plane = dual_bivector(c.vec());
        let r = Multivector::rotor_exp(&plane, theta).expect("unit bivector");
        worst_unit = worst_unit
            .max((r.norm() - 1.0).abs())
            .max((&r.reversion() * &r).distance(&scalar3(1.0)));
        // orthonormal (u, w) spanning the plane with u w = plane
        let u = UnitVec3::normalize(c.vec().cross(random_unit(&mut s.rng).vec())).expect("generic");
        let w = c.vec().cross(u.vec());
        let rotated = r.sandwich(&Multivector::from_vec3(u.vec())).expect("Cl3").vector_part3();
        // cos t + B sin t turns u toward -w by 2t
        let (s2, c2) = (libm::sin(2.0 * theta), libm::cos(2.0 * theta));
        let expect = c2 * u.vec() - s2 * w;
        worst_rot = worst_rot.max((rotated - expect).norm());
    }
    s.record("clifford.rotor_unit_norm", 1.0, pairs, worst_unit);
    s.record("clifford.rotor_sandwich_rotation", 100.0, pairs, worst_rot);

    // --- oriented frames
    let mut worst = 0.0f64;
    for lambda in Orientation::BOTH {
        let f = build_frame(lambda);
        for b in &f.beta {
            worst = worst.max((b * b).distance(&scalar3(-1.0)));
        }
    }
    s.record("frame.beta_squares_minus_one", 1.0, 6, worst);

    let mut worst = 0.0f64;
    for lambda in Orientation::BOTH {
        let f = build_frame(lambda);
        for j in 0..3 {
            for k in 0..3 {
                if j != k {
                    let sum = &(&f.beta[j] * &f.beta[k]) + &(&f.beta[k] * &f.beta[j]);
                    worst = worst.max(sum.norm());
                }
            }
        }
    }
    s.record("frame.beta_anticommute", 1.0, 12, worst);

    s.record(
        "frame.right_subalgebra",
        1.0,
        9,
        frame_subalgebra_residual(Orientation::Right, -1.0),
    );
    s.record(
        "frame.left_subalgebra",
        1.0,
        9,
        frame_subalgebra_residual(Orientation::Left, 1.0),
    );

    let right = build_frame(Orientation::Right).ordered_product();
    s.record("frame.right_ordered_product_plus_one", 1.0, 1, right.distance(&scalar3(1.0)));
    let left = build_frame(Orientation::Left).ordered_product();
    s.record("frame.left_ordered_product_minus_one", 1.0, 1, left.distance(&scalar3(-1.0)));

    let mut worst = 0.0f64;
    for lambda in Orientation::BOTH {
        let f = build_frame(lambda);
        for (j, k, l) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let p = &(&f.beta[j] * &f.beta[k]) * &f.beta[l];
            worst = worst.max(p.distance(&scalar3(lambda.sign())));
        }
    }
    s.record("frame.cyclic_ordered_products", 1.0, 6, worst);

    // vector-basis flip e_y -> -e_y: I -> -I, beta'_j = (-I).e'_j
    let flipped = [Vec3::X, -Vec3::Y, Vec3::Z].map(|e| {
        volume_form()
            .scale(-1.0)
            .contract(&Multivector::from_vec3(e))
            .expect("Cl3")
    });
    let p = &(&flipped[0] * &flipped[1]) * &flipped[2];
    s.record("frame.vector_flip_keeps_handedness", 1.0, 1, p.distance(&scalar3(1.0)));

    let mut worst = 0.0f64;
    for lambda in Orientation::BOTH {
        let h = HiddenBasis::new(lambda);
        let volume: Vec<_> = h.blades.iter().filter(|b| b.is_homogeneous(3)).collect();
        let count_err = (volume.len() as f64 - 1.0).abs();
        let sign_err = (h.mu().coeff(BladeIndex::from_generators(&[1, 2, 3])) - lambda.sign()).abs();
        let sq_err = (h.mu() * h.mu()).distance(&scalar3(-1.0));
        worst = worst.max(count_err).max(sign_err).max(sq_err);
    }
    s.record("frame.hidden_basis_volume_sign", 1.0, 2, worst);

    // --- products of a_j beta_j and b_k beta_k
    let flip = s.opts.inject_sign_flip;
    let coupling = move |lambda: Orientation| if flip { lambda.sign() } else { -lambda.sign() };

    s.over_pairs("abstract.right_handed_expansion", |a, b, _| {
        let l = Orientation::Right;
        let x = AbstractElement::new(0.0, a.components(), l);
        let y = AbstractElement::new(0.0, b.components(), l);
        let p = product_with_coupling(&x, &y, coupling(l));
        p.distance(&AbstractElement::new(-a.dot(b), (-1.0 * a.cross(b)).0, l))
    });
    s.over_pairs("abstract.left_handed_expansion", |a, b, _| {
        let l = Orientation::Left;
        let x = AbstractElement::new(0.0, a.components(), l);
        let y = AbstractElement::new(0.0, b.components(), l);
        let p = product_with_coupling(&x, &y, coupling(l));
        p.distance(&AbstractElement::new(-a.dot(b), a.cross(b).0, l))
    });

    s.over_pairs("embedded.right_identity", |a, b, _| {
        let lhs = &dual_bivector(a.vec()) * &dual_bivector(b.vec());
        let rhs = &scalar3(-a.dot(b)) - &dual_bivector(a.cross(b));
        lhs.distance(&rhs)
    });
    // Each orientation with its own duality: a x_mu b = -mu.(a ^ b).
    s.over_pairs("embedded.oriented_identity", |a, b, lambda| {
        let mu = volume_form().scale(lambda.sign());
        let (av, bv) = (Multivector::from_vec3(a.vec()), Multivector::from_vec3(b.vec()));
        let ma = mu.contract(&av).expect("Cl3");
        let mb = mu.contract(&bv).expect("Cl3");
        let cross_mu = mu
            .scale(-1.0)
            .contract(&av.wedge(&bv).expect("Cl3"))
            .expect("Cl3");
        let rhs = &scalar3(-a.dot(b)) - &mu.contract(&cross_mu).expect("Cl3");
        (&ma * &mb).distance(&rhs)
    });

    s.over_pairs("abstract.combined_identity", |a, b, lambda| {
        combined_identity_residual(a, b, lambda, coupling(lambda))
    });

    s.over_pairs("oriented.duality_relation", duality_check);

    s.over_pairs("abstract.standard_score_squares", |a, _, lambda| {
        let x = standard_score(a, lambda);
        product_with_coupling(&x, &x, coupling(lambda))
            .distance(&AbstractElement::new(-1.0, [0.0; 3], lambda))
    });

    // abstract algebra vs its embedded realization, on general elements
    let mut worst = 0.0f64;
    let mut samples = 0;
    for _ in 0..s.opts.pairs {
        for lambda in Orientation::BOTH {
            let k = s.coupling(lambda);
            let mut coeffs = || {
                let v: [f64; 4] = core::array::from_fn(|_| 2.0 * unit_f64(&mut s.rng) - 1.0);
                AbstractElement::new(v[0], [v[1], v[2], v[3]], lambda)
            };
            let (x, y) = (coeffs(), coeffs());
            let f = build_frame(lambda);
            let abs = f
                .realize(&product_with_coupling(&x, &y, k))
                .expect("same orientation");
            let emb = &f.realize(&x).expect("same") * &f.realize(&y).expect("same");
            worst = worst.max(abs.distance(&emb));
            samples += 1;
        }
    }
    s.record("oriented.frame_isomorphism", 1.0, samples, worst);

    s.over_pairs("epr.standard_commutator_twice_cross", |a, b, lambda| {
        (standard_commutator_norm(a, b, lambda) - 2.0 * a.cross(b).norm()).abs()
    });

    s.over_pairs("epr.raw_scores_track_orientation", |a, b, lambda| {
        let l = f64::from(lambda.value());
        match (raw_score_alice(a, lambda), raw_score_bob(b, lambda)) {
            (Ok(x), Ok(y)) => (f64::from(x) - l).abs() + (f64::from(y) + l).abs(),
            _ => f64::INFINITY,
        }
    });

    s.over_pairs("epr.raw_scores_commute", |a, b, lambda| {
        commutativity_check(a, b, lambda).unwrap_or(f64::INFINITY)
    });

    s.over_pairs("clifford.bivector_grade_of_dual", |a, _, _| {
        let d = dual_bivector(a.vec());
        let g2 = d.grade_part(Grade::new(2, 3).expect("grade 2"));
        d.distance(&g2) + (d.norm() - 1.0).abs()
    });

    s.results
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
