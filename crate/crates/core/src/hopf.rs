//! Rotor transport across the Hopf twist, and the normalized-wedge probe.
//!
//! With `c = (a x b)/|a x b|` the product `a b` is the rotor
//! `exp((I.c) phi_ab)`. Rotating `a` by `psi_a` about `c` gives `a'`, and `b'`
//! is `b` rotated by `psi_b = psi_a + phi_ab`; then `b b' = (a b)(a a')`
//! holds exactly, mirroring `e^{i psi_b} = e^{i phi} e^{i psi_a}` in the
//! `c`-plane. The transport form multiplies the rotor on the left.

use alloc::vec::Vec;

use crate::multivector::Multivector;
use crate::oriented::{dual_bivector, volume_form, Orientation};
use crate::{Error, Result, UnitVec3, Vec3, IDENTITY_TOL};

/// Below this `|a x b|` the rotation axis is treated as undefined.
pub const AXIS_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Rotor {
    pub value: Multivector,
    pub axis: UnitVec3,
    pub angle: f64,
}

impl Rotor {
    /// `exp((I.c) angle)`.
    pub fn new(axis: UnitVec3, angle: f64) -> Self {
        let value = Multivector::rotor_exp(&dual_bivector(axis.vec()), angle)
            .expect("I.c is a unit bivector for unit c");
        Rotor { value, axis, angle }
    }

    /// `|R ~R - 1|`.
    pub fn unitarity_residual(&self) -> f64 {
        let one = Multivector::scalar(3, 1.0).expect("Cl(3,0)");
        (&self.value * &self.value.reversion()).distance(&one)
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.value
            .sandwich(&Multivector::from_vec3(v))
            .expect("Cl(3,0)")
            .vector_part3()
    }
}

/// Right-handed rotation of `v` by `angle` about `axis`, via the half-angle
/// sandwich. `exp(B t)` turns `e1` toward `-e2` for `B = e12`, hence `-angle/2`.
pub fn rotate_about(v: Vec3, axis: UnitVec3, angle: f64) -> Vec3 {
    Rotor::new(axis, -angle / 2.0).apply(v)
}

/// `(a x b)/|a x b|`, or a degenerate-axis error.
pub fn transport_axis(a: UnitVec3, b: UnitVec3) -> Result<UnitVec3> {
    let cross = a.cross(b);
    let cross_norm = cross.norm();
    if cross_norm <= AXIS_EPS {
        return Err(Error::DegenerateAxis { cross_norm });
    }
    UnitVec3::normalize(cross)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberProbe {
    pub psi_a: f64,
    pub phi: f64,
    pub psi_b: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransitionReport {
    pub probe: FiberProbe,
    pub axis: UnitVec3,
    pub a_prime: UnitVec3,
    pub b_prime: UnitVec3,
    /// `b b'`
    pub lhs: Multivector,
    /// `(a b)(a a')`
    pub rhs: Multivector,
    pub residual: f64,
}

fn vec_mv(v: UnitVec3) -> Multivector {
    Multivector::from_vec3(v.vec())
}

pub fn transition_relation(a: UnitVec3, b: UnitVec3, psi_a: f64) -> Result<TransitionReport> {
    let axis = transport_axis(a, b)?;
    let phi = libm::acos(a.dot(b).clamp(-1.0, 1.0));
    let psi_b = psi_a + phi;
    let a_prime = UnitVec3::normalize(rotate_about(a.vec(), axis, psi_a))?;
    let b_prime = UnitVec3::normalize(rotate_about(b.vec(), axis, psi_b))?;
    let lhs = &vec_mv(b) * &vec_mv(b_prime);
    let rhs = &(&vec_mv(a) * &vec_mv(b)) * &(&vec_mv(a) * &vec_mv(a_prime));
    let residual = lhs.distance(&rhs);
    Ok(TransitionReport {
        probe: FiberProbe { psi_a, phi, psi_b },
        axis,
        a_prime,
        b_prime,
        lhs,
        rhs,
        residual,
    })
}

/// `(side I.n)(mu.n')` with `mu = lambda I`.
pub fn quaternion_point(n: UnitVec3, n_prime: UnitVec3, lambda: Orientation, side_sign: f64) -> Multivector {
    let left = dual_bivector(n.vec()).scale(side_sign);
    let right = volume_form()
        .scale(lambda.sign())
        .contract(&vec_mv(n_prime))
        .expect("Cl(3,0)");
    &left * &right
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransportReport {
    pub transition: TransitionReport,
    pub rotor: Rotor,
    /// `(+I.b)(mu.b')`
    pub lhs: Multivector,
    /// `R_ab (+I.a)(mu.a')`
    pub rhs: Multivector,
    pub residual: f64,
}

/// Residual of `(+I.b)(mu.b') = R_ab {(+I.a)(mu.a')}` with left action.
pub fn parallel_transport_check(a: UnitVec3, b: UnitVec3, psi_a: f64, lambda: Orientation) -> Result<TransportReport> {
    let transition = transition_relation(a, b, psi_a)?;
    let rotor = Rotor::new(transition.axis, transition.probe.phi);
    let lhs = quaternion_point(b, transition.b_prime, lambda, 1.0);
    let rhs = &rotor.value * &quaternion_point(a, transition.a_prime, lambda, 1.0);
    let residual = lhs.distance(&rhs);
    Ok(TransportReport {
        transition,
        rotor,
        lhs,
        rhs,
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFlip {
    /// Scalar part of `exp((I.c) psi_a)`.
    pub scalar_a: f64,
    /// Scalar part of `exp((I.c)(phi + psi_a))`.
    pub scalar_b: f64,
    /// `|q_b + q_a|`: zero when the two fiber phases differ by a sign.
    pub antipodal_residual: f64,
    /// `|q_b - q_a|`: zero when they coincide.
    pub coincident_residual: f64,
}

impl PhaseFlip {
    pub fn is_sign_flip(&self, tol: f64) -> bool {
        self.antipodal_residual < tol && self.scalar_a * self.scalar_b < 0.0
    }
}

/// Compares the fiber phases `e^{i psi_a}` and `e^{i psi_b} = e^{i phi} e^{i psi_a}`
/// as rotors in the plane `I.c`.
pub fn fiber_phase_flip(axis: UnitVec3, psi_a: f64, phi: f64) -> PhaseFlip {
    let qa = Rotor::new(axis, psi_a).value;
    let qb = &Rotor::new(axis, phi).value * &qa;
    PhaseFlip {
        scalar_a: qa.scalar_part(),
        scalar_b: qb.scalar_part(),
        antipodal_residual: (&qb + &qa).norm(),
        coincident_residual: qb.distance(&qa),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullLimitRow {
    pub psi: f64,
    /// `|a~ ^ a~'|` through the wedge product; `None` at `psi = 0`.
    pub wedge_magnitude: Option<f64>,
    /// `|a~ x a~'|` through the vector cross product.
    pub cross_magnitude: Option<f64>,
    /// Unit normal of the bivector plane.
    pub axis: Option<Vec3>,
}

/// A fixed unit axis perpendicular to `a`.
pub fn perpendicular_axis(a: UnitVec3) -> UnitVec3 {
    let [x, y, z] = a.components().map(f64::abs);
    let e = if x <= y && x <= z {
        Vec3::X
    } else if y <= z {
        Vec3::Y
    } else {
        Vec3::Z
    };
    UnitVec3::normalize(a.vec().cross(e)).expect("least-aligned basis vector is not parallel")
}

/// Evaluates `a~ ^ a~'` with `a~ = a/sqrt|a x a'|` for `a'` rotated by each
/// separation about a fixed axis perpendicular to `a`. Values are recorded as
/// computed.
pub fn null_limit_probe(a: UnitVec3, separations: &[f64]) -> Result<Vec<NullLimitRow>> {
    if separations.iter().any(|s| !s.is_finite() || *s < 0.0) {
        return Err(Error::Config("separations must be finite and non-negative"));
    }
    if separations.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config("separations must be strictly decreasing"));
    }
    let rot_axis = perpendicular_axis(a);
    let av = a.vec();
    let neg_i = volume_form().scale(-1.0);
    separations
        .iter()
        .map(|&psi| {
            let ap = rotate_about(av, rot_axis, psi);
            let area = av.cross(ap).norm();
            if psi == 0.0 || area == 0.0 {
                return Ok(NullLimitRow {
                    psi,
                    wedge_magnitude: None,
                    cross_magnitude: None,
                    axis: None,
                });
            }
            let scale = 1.0 / libm::sqrt(area);
            let (at, apt) = (scale * av, scale * ap);
            let w = Multivector::from_vec3(at).wedge(&Multivector::from_vec3(apt))?;
            let wedge_magnitude = w.norm();
            let cross_magnitude = at.cross(apt).norm();
            let normal = neg_i.contract(&w)?.vector_part3();
            let axis = UnitVec3::normalize(normal).ok().map(UnitVec3::vec);
            Ok(NullLimitRow {
                psi,
                wedge_magnitude: Some(wedge_magnitude),
                cross_magnitude: Some(cross_magnitude),
                axis,
            })
        })
        .collect()
}

/// Checks `R c ~R = c` and unitarity for a rotor about `c`.
pub fn rotor_fixes_axis(rotor: &Rotor) -> bool {
    rotor.unitarity_residual() <= IDENTITY_TOL
        && (rotor.apply(rotor.axis.vec()) - rotor.axis.vec()).norm() <= IDENTITY_TOL
}
