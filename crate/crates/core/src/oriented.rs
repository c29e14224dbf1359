//! Handed bivector frames and the orientation-parameterized subalgebra.
//!
//! Two representations are kept side by side. The embedded one lives in
//! `Cl(3,0)`: for orientation `lambda` the frame is `beta_j = lambda I.e_j`.
//! The abstract one is a coefficient 4-vector over the formal basis
//! `{1, beta_x, beta_y, beta_z}` multiplied with the structure constants
//! `beta_j beta_k = -delta_jk - lambda eps_jkl beta_l`.
//!
//! In the embedded picture `(lambda I.a)(lambda I.b)` cannot see the sign of
//! `lambda` (it appears squared), so every product whose outcome depends on
//! the orientation is computed in the abstract algebra. Each fixed-orientation
//! sector is cross-checked against its embedded realization.

use crate::multivector::{BladeIndex, Multivector};
use crate::{Error, Result, UnitVec3, Vec3};

/// Orientation of the frame, `+1` (right-handed) or `-1` (left-handed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Right,
    Left,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::Right, Orientation::Left];

    pub fn from_sign(value: i64) -> Result<Self> {
        match value {
            1 => Ok(Orientation::Right),
            -1 => Ok(Orientation::Left),
            other => Err(Error::InvalidOrientation(other)),
        }
    }

    pub const fn value(self) -> i8 {
        match self {
            Orientation::Right => 1,
            Orientation::Left => -1,
        }
    }

    pub const fn sign(self) -> f64 {
        match self {
            Orientation::Right => 1.0,
            Orientation::Left => -1.0,
        }
    }

    pub const fn flipped(self) -> Self {
        match self {
            Orientation::Right => Orientation::Left,
            Orientation::Left => Orientation::Right,
        }
    }
}

/// The trivector `I = e1 e2 e3` of `Cl(3,0)`.
pub fn volume_form() -> Multivector {
    Multivector::blade(3, BladeIndex::from_generators(&[1, 2, 3]), 1.0)
        .expect("Cl(3,0) blade")
}

/// `I.n` for a 3-vector `n`, i.e. the bivector dual to `n`.
pub fn dual_bivector(n: Vec3) -> Multivector {
    volume_form()
        .contract(&Multivector::from_vec3(n))
        .expect("both operands live in Cl(3,0)")
}

/// The vector `a x b` expressed through the algebra as `(-I).(a ^ b)`.
pub fn cross_via_algebra(a: Vec3, b: Vec3) -> Vec3 {
    let w = Multivector::from_vec3(a)
        .wedge(&Multivector::from_vec3(b))
        .expect("Cl(3,0)");
    volume_form().scale(-1.0).contract(&w).expect("Cl(3,0)").vector_part3()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrientedFrame {
    pub lambda: Orientation,
    pub beta: [Multivector; 3],
}

impl OrientedFrame {
    /// `beta_x beta_y beta_z`.
    pub fn ordered_product(&self) -> Multivector {
        &(&self.beta[0] * &self.beta[1]) * &self.beta[2]
    }

    /// Embeds an abstract element of matching orientation.
    pub fn realize(&self, x: &AbstractElement) -> Result<Multivector> {
        if x.lambda != self.lambda {
            return Err(Error::MixedOrientation);
        }
        let mut out = Multivector::scalar(3, x.c0)?;
        for (b, c) in self.beta.iter().zip(x.c) {
            out = &out + &b.scale(c);
        }
        Ok(out)
    }
}

pub fn build_frame(lambda: Orientation) -> OrientedFrame {
    let s = lambda.sign();
    OrientedFrame {
        lambda,
        beta: [Vec3::X, Vec3::Y, Vec3::Z].map(|e| dual_bivector(e).scale(s)),
    }
}

/// The eight basis elements `{1, e_x, e_y, e_z, e_xy, e_yz, e_zx, lambda e_xyz}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenBasis {
    pub lambda: Orientation,
    pub blades: [Multivector; 8],
}

impl HiddenBasis {
    pub fn new(lambda: Orientation) -> Self {
        let b = |gens: &[u8], c: f64| {
            Multivector::blade(3, BladeIndex::from_generators(gens), c).expect("Cl(3,0)")
        };
        HiddenBasis {
            lambda,
            blades: [
                b(&[], 1.0),
                b(&[1], 1.0),
                b(&[2], 1.0),
                b(&[3], 1.0),
                b(&[1, 2], 1.0),
                b(&[2, 3], 1.0),
                // e_z ^ e_x = -e_x e_z
                b(&[1, 3], -1.0),
                b(&[1, 2, 3], lambda.sign()),
            ],
        }
    }

    /// The hidden variable `mu = lambda I`.
    pub fn mu(&self) -> &Multivector {
        &self.blades[7]
    }
}

/// Element `c0 + c_j beta_j` of the algebra with orientation `lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbstractElement {
    pub c0: f64,
    pub c: [f64; 3],
    pub lambda: Orientation,
}

impl AbstractElement {
    pub fn new(c0: f64, c: [f64; 3], lambda: Orientation) -> Self {
        AbstractElement { c0, c, lambda }
    }

    pub fn one(lambda: Orientation) -> Self {
        AbstractElement::new(1.0, [0.0; 3], lambda)
    }

    /// `beta_j`, `j` in `0..3`.
    pub fn beta(j: usize, lambda: Orientation) -> Self {
        let mut c = [0.0; 3];
        c[j] = 1.0;
        AbstractElement::new(0.0, c, lambda)
    }

    pub fn bivector(&self) -> Vec3 {
        Vec3(self.c)
    }

    /// Euclidean distance between coefficient 4-vectors.
    pub fn distance(&self, other: &AbstractElement) -> f64 {
        let d0 = self.c0 - other.c0;
        let d = Vec3(self.c) - Vec3(other.c);
        libm::sqrt(d0 * d0 + d.dot(d))
    }

    pub fn sub(&self, other: &AbstractElement) -> AbstractElement {
        AbstractElement::new(self.c0 - other.c0, (Vec3(self.c) - Vec3(other.c)).0, self.lambda)
    }
}

/// Product with an explicit coupling `k` in `beta_j beta_k = -delta_jk + k eps_jkl beta_l`.
/// The algebra of orientation `lambda` has `k = -lambda`.
pub(crate) fn product_with_coupling(
    x: &AbstractElement,
    y: &AbstractElement,
    coupling: f64,
) -> AbstractElement {
    let (u, v) = (Vec3(x.c), Vec3(y.c));
    let c0 = x.c0 * y.c0 - u.dot(v);
    let c = x.c0 * v + y.c0 * u + coupling * u.cross(v);
    AbstractElement::new(c0, c.0, x.lambda)
}

pub fn abstract_product(x: &AbstractElement, y: &AbstractElement) -> Result<AbstractElement> {
    if x.lambda != y.lambda {
        return Err(Error::MixedOrientation);
    }
    Ok(product_with_coupling(x, y, -x.lambda.sign()))
}

/// The standard score `mu.n = lambda n_j beta_j`.
pub fn standard_score(n: UnitVec3, lambda: Orientation) -> AbstractElement {
    AbstractElement::new(0.0, (lambda.sign() * n.vec()).0, lambda)
}

/// `|a ^ b - lambda (lambda I).(a x b)|` in `Cl(3,0)`.
pub fn duality_check(a: UnitVec3, b: UnitVec3, lambda: Orientation) -> f64 {
    let s = lambda.sign();
    let wedge = Multivector::from_vec3(a.vec())
        .wedge(&Multivector::from_vec3(b.vec()))
        .expect("Cl(3,0)");
    let mu = volume_form().scale(s);
    let rhs = mu
        .contract(&Multivector::from_vec3(a.cross(b)))
        .expect("Cl(3,0)")
        .scale(s);
    wedge.distance(&rhs)
}

/// Coefficient residual of `(mu.a)(mu.b) = -a.b - mu.(a x b)` in the abstract algebra.
pub fn combined_identity_check(a: UnitVec3, b: UnitVec3, lambda: Orientation) -> f64 {
    combined_identity_residual(a, b, lambda, -lambda.sign())
}

pub(crate) fn combined_identity_residual(
    a: UnitVec3,
    b: UnitVec3,
    lambda: Orientation,
    coupling: f64,
) -> f64 {
    let lhs = product_with_coupling(
        &standard_score(a, lambda),
        &standard_score(b, lambda),
        coupling,
    );
    // mu.(a x b) has coefficients lambda (a x b)_l
    let rhs = AbstractElement::new(-a.dot(b), (-lambda.sign() * a.cross(b)).0, lambda);
    lhs.distance(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Multivector {
        Multivector::scalar(3, 1.0).unwrap()
    }

    #[test]
    fn handedness_of_built_frames() {
        assert_eq!(build_frame(Orientation::Right).ordered_product(), one());
        assert_eq!(
            build_frame(Orientation::Left).ordered_product(),
            one().scale(-1.0)
        );
        let f = build_frame(Orientation::Right);
        assert_eq!(&f.beta[0] * &f.beta[0], one().scale(-1.0));
    }

    #[test]
    fn right_frame_is_dual_of_basis() {
        let f = build_frame(Orientation::Right);
        let b = |g: &[u8]| Multivector::blade(3, BladeIndex::from_generators(g), 1.0).unwrap();
        assert_eq!(f.beta[0], b(&[2, 3]));
        assert_eq!(f.beta[1], b(&[1, 3]).scale(-1.0));
        assert_eq!(f.beta[2], b(&[1, 2]));
    }

    #[test]
    fn abstract_products() {
        let r = Orientation::Right;
        let l = Orientation::Left;
        let bx = AbstractElement::beta(0, r);
        assert_eq!(
            abstract_product(&bx, &bx).unwrap(),
            AbstractElement::new(-1.0, [0.0; 3], r)
        );
        let p = abstract_product(&AbstractElement::beta(0, l), &AbstractElement::beta(1, l)).unwrap();
        assert_eq!(p, AbstractElement::beta(2, l));
        let x = AbstractElement::new(0.3, [1.0, -2.0, 0.5], r);
        assert_eq!(abstract_product(&AbstractElement::one(r), &x).unwrap(), x);
    }

    #[test]
    fn mixed_orientations_rejected() {
        let x = AbstractElement::beta(0, Orientation::Right);
        let y = AbstractElement::beta(0, Orientation::Left);
        assert_eq!(abstract_product(&x, &y), Err(Error::MixedOrientation));
        let f = build_frame(Orientation::Right);
        assert_eq!(f.realize(&y), Err(Error::MixedOrientation));
    }

    #[test]
    fn standard_score_definition() {
        let s = standard_score(UnitVec3::Z, Orientation::Right);
        assert_eq!(s, AbstractElement::new(0.0, [0.0, 0.0, 1.0], Orientation::Right));
        let s = standard_score(UnitVec3::Z, Orientation::Left);
        assert_eq!(s.c, [0.0, 0.0, -1.0]);
    }

    #[test]
    fn orientation_from_sign() {
        assert_eq!(Orientation::from_sign(1), Ok(Orientation::Right));
        assert_eq!(Orientation::from_sign(-1), Ok(Orientation::Left));
        assert_eq!(Orientation::from_sign(0), Err(Error::InvalidOrientation(0)));
    }

    #[test]
    fn hidden_basis_volume_sign() {
        for lambda in Orientation::BOTH {
            let h = HiddenBasis::new(lambda);
            let top: alloc::vec::Vec<_> = h.blades.iter().filter(|b| b.is_homogeneous(3)).collect();
            assert_eq!(top.len(), 1);
            assert_eq!(top[0].coeff(BladeIndex::from_generators(&[1, 2, 3])), lambda.sign());
            assert_eq!(h.mu(), &volume_form().scale(lambda.sign()));
        }
    }

    #[test]
    fn duality_parallel_case() {
        for lambda in Orientation::BOTH {
            assert_eq!(duality_check(UnitVec3::X, UnitVec3::X, lambda), 0.0);
            assert_eq!(duality_check(UnitVec3::X, UnitVec3::Y, lambda), 0.0);
        }
    }

    #[test]
    fn cross_via_algebra_matches() {
        assert_eq!(cross_via_algebra(Vec3::X, Vec3::Y), Vec3::Z);
        assert_eq!(cross_via_algebra(Vec3::Z, Vec3::X), Vec3::Y);
    }

    #[test]
    fn combined_identity_special_cases() {
        let r = Orientation::Right;
        let lhs = abstract_product(&standard_score(UnitVec3::X, r), &standard_score(UnitVec3::Y, r)).unwrap();
        assert_eq!(lhs.c0, 0.0);
        for lambda in Orientation::BOTH {
            let p = abstract_product(&standard_score(UnitVec3::Y, lambda), &standard_score(UnitVec3::Y, lambda)).unwrap();
            assert_eq!(p, AbstractElement::new(-1.0, [0.0; 3], lambda));
            assert_eq!(combined_identity_check(UnitVec3::X, UnitVec3::Y, lambda), 0.0);
        }
    }
}
