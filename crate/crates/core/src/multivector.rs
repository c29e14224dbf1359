//! Dense multivectors of the real Clifford algebra `Cl(n,0)`, `1 <= n <= 8`.
//!
//! Coefficients are stored in a flat array of length `2^n` indexed by blade
//! bitmask: bit `j` set means generator `e_{j+1}` is a factor of the blade.
//! Blades are always kept in ascending generator order, so the sign of a
//! product of two blades is the parity of the transpositions needed to sort
//! the concatenated index lists. Every generator squares to `+1`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result, Vec3, IDENTITY_TOL};

pub const MAX_DIM: u8 = 8;

/// A basis blade, as a bitset over generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(u16);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);

    pub fn new(mask: u16, dim: u8) -> Result<Self> {
        if u32::from(mask) >= 1u32 << dim {
            return Err(Error::BladeOutOfRange { mask, dim });
        }
        Ok(BladeIndex(mask))
    }

    /// Blade from 1-based generator indices. Order is ignored; repeats cancel.
    pub fn from_generators(indices: &[u8]) -> Self {
        let mut mask = 0u16;
        for &i in indices {
            debug_assert!((1..=MAX_DIM).contains(&i));
            mask ^= 1 << (i - 1);
        }
        BladeIndex(mask)
    }

    pub const fn mask(self) -> u16 {
        self.0
    }

    pub const fn grade(self) -> u8 {
        self.0.count_ones() as u8
    }

    /// Ascending 1-based generator indices.
    pub fn generators(self) -> impl Iterator<Item = u8> {
        (0..16u8).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }
}

/// Sign picked up when multiplying blade `a` by blade `b` and sorting the
/// result into ascending order: each generator of `b` has to pass every
/// generator of `a` with a larger index.
#[inline]
pub fn reorder_sign(a: u16, b: u16) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Grade(u8);

impl Grade {
    pub fn new(value: u8, dim: u8) -> Result<Self> {
        if value > dim {
            return Err(Error::GradeOutOfRange { grade: value, dim });
        }
        Ok(Grade(value))
    }

    pub const fn value(self) -> u8 {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    dim: u8,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(dim: u8) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(Multivector {
            dim,
            coeffs: vec![0.0; 1 << dim],
        })
    }

    pub fn scalar(dim: u8, value: f64) -> Result<Self> {
        let mut m = Self::zero(dim)?;
        m.coeffs[0] = value;
        Ok(m)
    }

    pub fn from_coeffs(dim: u8, coeffs: Vec<f64>) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        if coeffs.len() != 1 << dim {
            return Err(Error::Config("coefficient count must be 2^dim"));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Multivector { dim, coeffs })
    }

    /// Single blade with coefficient `value`.
    pub fn blade(dim: u8, blade: BladeIndex, value: f64) -> Result<Self> {
        let blade = BladeIndex::new(blade.mask(), dim)?;
        let mut m = Self::zero(dim)?;
        m.coeffs[blade.mask() as usize] = value;
        Ok(m)
    }

    /// Generator `e_index` (1-based).
    pub fn basis_vector(dim: u8, index: u8) -> Result<Self> {
        if index == 0 || index > dim {
            return Err(Error::BladeOutOfRange {
                mask: 1u16.checked_shl(u32::from(index).saturating_sub(1)).unwrap_or(0),
                dim,
            });
        }
        Self::blade(dim, BladeIndex::from_generators(&[index]), 1.0)
    }

    /// Grade-1 element from components along `e_1, e_2, ...`.
    pub fn vector(dim: u8, components: &[f64]) -> Result<Self> {
        if components.len() != dim as usize {
            return Err(Error::Config("vector component count must equal dim"));
        }
        let mut m = Self::zero(dim)?;
        for (j, &c) in components.iter().enumerate() {
            m.coeffs[1 << j] = c;
        }
        Ok(m)
    }

    /// Embeds a 3-vector in `Cl(3,0)`.
    pub fn from_vec3(v: Vec3) -> Self {
        let mut coeffs = vec![0.0; 8];
        coeffs[1] = v.0[0];
        coeffs[2] = v.0[1];
        coeffs[4] = v.0[2];
        Multivector { dim: 3, coeffs }
    }

    /// The unit pseudoscalar `e_1 e_2 ... e_n`.
    pub fn pseudoscalar(dim: u8) -> Result<Self> {
        let mask = ((1u32 << dim) - 1) as u16;
        Self::blade(dim, BladeIndex(mask), 1.0)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: BladeIndex) -> f64 {
        self.coeffs.get(blade.mask() as usize).copied().unwrap_or(0.0)
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// Grade-1 coefficients of a `Cl(3,0)` element.
    pub fn vector_part3(&self) -> Vec3 {
        debug_assert_eq!(self.dim, 3);
        Vec3([self.coeffs[1], self.coeffs[2], self.coeffs[4]])
    }

    /// Non-zero terms in ascending blade-mask order.
    pub fn terms(&self) -> impl Iterator<Item = (BladeIndex, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(i, c)| (BladeIndex(i as u16), *c))
    }

    fn check_dim(&self, other: &Multivector) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    fn filtered_product(&self, other: &Multivector, keep: impl Fn(u16, u16) -> bool) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y == 0.0 || !keep(i as u16, j as u16) {
                    continue;
                }
                out[i ^ j] += reorder_sign(i as u16, j as u16) * x * y;
            }
        }
        Ok(Multivector {
            dim: self.dim,
            coeffs: out,
        })
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Self> {
        self.filtered_product(other, |_, _| true)
    }

    /// Outer product: the grade-`(r+s)` part of each blade pair's product.
    pub fn wedge(&self, other: &Multivector) -> Result<Self> {
        self.filtered_product(other, |i, j| i & j == 0)
    }

    /// Grade-`|r-s|` part of each blade pair's product. On two vectors this is
    /// the dot product; on `(I, n)` in `Cl(3,0)` it is the bivector `I.n`.
    pub fn contract(&self, other: &Multivector) -> Result<Self> {
        self.filtered_product(other, |i, j| {
            let (gi, gj) = (i.count_ones(), j.count_ones());
            (i ^ j).count_ones() == gi.abs_diff(gj)
        })
    }

    pub fn grade_part(&self, grade: Grade) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if (i as u16).count_ones() == u32::from(grade.0) { c } else { 0.0 })
            .collect();
        Multivector {
            dim: self.dim,
            coeffs,
        }
    }

    /// Euclidean norm of the coefficients of each grade, `0..=dim`.
    pub fn grade_norms(&self) -> Vec<f64> {
        let mut sq = vec![0.0; self.dim as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            sq[(i as u16).count_ones() as usize] += c * c;
        }
        sq.into_iter().map(libm::sqrt).collect()
    }

    /// True when only blades of `grade` carry non-zero coefficients.
    pub fn is_homogeneous(&self, grade: u8) -> bool {
        self.terms().all(|(b, _)| b.grade() == grade)
    }

    pub fn reversion(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let g = (i as u16).count_ones();
                if (g * g.saturating_sub(1) / 2).is_multiple_of(2) {
                    c
                } else {
                    -c
                }
            })
            .collect();
        Multivector {
            dim: self.dim,
            coeffs,
        }
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.coeffs.iter().map(|c| c * c).sum())
    }

    pub fn scale(&self, s: f64) -> Self {
        Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Multivector {
            dim: self.dim,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Norm of the coefficient difference; dimension mismatches are infinite.
    pub fn distance(&self, other: &Multivector) -> f64 {
        self.try_sub(other).map(|d| d.norm()).unwrap_or(f64::INFINITY)
    }

    /// `cos(angle) + sin(angle) B` for a unit bivector `B` (`B^2 = -1`).
    pub fn rotor_exp(bivector: &Multivector, angle: f64) -> Result<Self> {
        let sq = bivector.geometric_product(bivector)?;
        let minus_one = Multivector::scalar(bivector.dim, -1.0)?;
        let residual = sq.distance(&minus_one);
        if !bivector.is_homogeneous(2) || residual > IDENTITY_TOL {
            return Err(Error::NotUnitBivector { residual });
        }
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let mut out = bivector.scale(s);
        out.coeffs[0] += c;
        Ok(out)
    }

    /// Two-sided action `R x ~R`.
    pub fn sandwich(&self, x: &Multivector) -> Result<Self> {
        self.geometric_product(x)?.geometric_product(&self.reversion())
    }
}

/// Geometric product; panics on dimension mismatch. Use
/// [`Multivector::geometric_product`] for the fallible form.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs).expect("dimension mismatch in geometric product")
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("dimension mismatch in addition")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("dimension mismatch in subtraction")
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        f.write_str("e")?;
        for g in self.generators() {
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Renders as `1.0 + 2.0*e12 - 0.5*e123`; the zero multivector prints `0`.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (blade, c) in self.terms() {
            let mag = c.abs();
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else if c < 0.0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if blade.mask() == 0 {
                write!(f, "{mag:?}")?;
            } else {
                write!(f, "{mag:?}*{blade}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
