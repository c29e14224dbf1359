//! Plain Euclidean 3-vectors used for experimental directions.

use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result, UNIT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3(pub [f64; 3]);

impl Vec3 {
    pub const X: Vec3 = Vec3([1.0, 0.0, 0.0]);
    pub const Y: Vec3 = Vec3([0.0, 1.0, 0.0]);
    pub const Z: Vec3 = Vec3([0.0, 0.0, 1.0]);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3([x, y, z])
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = other.0;
        Vec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    pub fn norm(self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, rhs: Vec3) -> Vec3 {
        Vec3([self * rhs.0[0], self * rhs.0[1], self * rhs.0[2]])
    }
}

/// A direction in R^3. Construction renormalizes inputs whose norm is within
/// [`UNIT_TOL`] of one and rejects everything else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3(Vec3::X);
    pub const Y: UnitVec3 = UnitVec3(Vec3::Y);
    pub const Z: UnitVec3 = UnitVec3(Vec3::Z);

    pub fn new(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = v.norm();
        if (norm - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnit { norm });
        }
        Ok(UnitVec3((1.0 / norm) * v))
    }

    /// Normalizes any non-zero finite vector.
    pub fn normalize(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::NotUnit { norm });
        }
        Ok(UnitVec3((1.0 / norm) * v))
    }

    /// Unit vector at polar angle `theta` from +z in the x-z plane.
    pub fn in_xz_plane(theta: f64) -> Self {
        UnitVec3(Vec3([libm::sin(theta), 0.0, libm::cos(theta)]))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn components(self) -> [f64; 3] {
        self.0 .0
    }

    pub fn dot(self, other: UnitVec3) -> f64 {
        self.0.dot(other.0)
    }

    pub fn cross(self, other: UnitVec3) -> Vec3 {
        self.0.cross(other.0)
    }
}

impl TryFrom<[f64; 3]> for UnitVec3 {
    type Error = Error;
    fn try_from(value: [f64; 3]) -> Result<Self> {
        UnitVec3::new(Vec3(value))
    }
}

impl From<UnitVec3> for Vec3 {
    fn from(value: UnitVec3) -> Self {
        value.0
    }
}
