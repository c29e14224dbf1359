//! The Fano-plane trivector of `Cl(7,0)` and the 7-sphere scores built on it.

use alloc::vec::Vec;

use crate::multivector::{BladeIndex, Multivector};
use crate::oriented::Orientation;
use crate::{Error, Result, UnitVec3, UNIT_TOL};

/// Index triples of `J`, in the order and orientation they are written.
pub const FANO_TRIPLES: [[u8; 3]; 7] = [
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 6],
    [4, 5, 7],
    [5, 6, 1],
    [6, 7, 2],
    [7, 1, 3],
];

/// `J = e1e2e4 + e2e3e5 + e3e4e6 + e4e5e7 + e5e6e1 + e6e7e2 + e7e1e3`.
#[derive(Debug, Clone, PartialEq)]
pub struct SevenTrivector {
    pub value: Multivector,
}

pub fn build_j() -> SevenTrivector {
    let mut value = Multivector::zero(7).expect("Cl(7,0)");
    for t in FANO_TRIPLES {
        // each written triple is an even permutation of its sorted form
        let term = t
            .iter()
            .map(|&g| Multivector::basis_vector(7, g).expect("generator of Cl(7,0)"))
            .reduce(|acc, e| &acc * &e)
            .expect("three factors");
        value = &value + &term;
    }
    SevenTrivector { value }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Embedding {
    /// `(a1, a2, a3) -> (a1, a2, a3, 0, 0, 0, 0)`.
    PadWithZeros,
    /// `N(a) = M a` for a 7x3 matrix `M` (row-major) with orthonormal columns.
    Isometry([[f64; 3]; 7]),
}

impl Embedding {
    pub fn isometry(rows: [[f64; 3]; 7]) -> Result<Self> {
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut residual = 0.0f64;
        for j in 0..3 {
            for k in 0..3 {
                let g: f64 = rows.iter().map(|r| r[j] * r[k]).sum();
                let expect = if j == k { 1.0 } else { 0.0 };
                residual = residual.max((g - expect).abs());
            }
        }
        if residual > UNIT_TOL {
            return Err(Error::NotIsometry { residual });
        }
        Ok(Embedding::Isometry(rows))
    }
}

pub fn embed(a: UnitVec3, e: &Embedding) -> [f64; 7] {
    let v = a.components();
    match e {
        Embedding::PadWithZeros => [v[0], v[1], v[2], 0.0, 0.0, 0.0, 0.0],
        Embedding::Isometry(m) => m.map(|row| row[0] * v[0] + row[1] * v[1] + row[2] * v[2]),
    }
}

fn embed_mv(a: UnitVec3, e: &Embedding) -> Multivector {
    Multivector::vector(7, &embed(a, e)).expect("7 components")
}

/// `J.N` with `N = embed(a)`.
pub fn j_dot(n: &Multivector) -> Multivector {
    build_j().value.contract(n).expect("Cl(7,0)")
}

/// Standard score `mu.N(a) = lambda J.N(a)`.
pub fn standard_score_7(a: UnitVec3, lambda: Orientation, e: &Embedding) -> Multivector {
    j_dot(&embed_mv(a, e)).scale(lambda.sign())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradeReport {
    pub value: Multivector,
    pub scalar: f64,
    /// Euclidean norm per grade, index = grade.
    pub grade_norms: Vec<f64>,
    pub grades: Vec<(u8, Multivector)>,
}

impl GradeReport {
    pub fn new(value: Multivector) -> Self {
        let grade_norms = value.grade_norms();
        let grades = (0..=value.dim())
            .filter(|g| grade_norms[*g as usize] != 0.0)
            .map(|g| {
                let part = value.grade_part(crate::Grade::new(g, value.dim()).expect("g <= dim"));
                (g, part)
            })
            .collect();
        GradeReport {
            scalar: value.scalar_part(),
            value,
            grade_norms,
            grades,
        }
    }
}

/// Raw score `(-J.N)(mu.N)` in `Cl(7,0)`, reported with its grade structure.
pub fn raw_score_7(a: UnitVec3, lambda: Orientation, e: &Embedding) -> GradeReport {
    let jn = j_dot(&embed_mv(a, e));
    let product = &jn.scale(-1.0) * &jn.scale(lambda.sign());
    GradeReport::new(product)
}

/// Blades of `J` as `(blade, coefficient)`.
pub fn j_terms() -> Vec<(BladeIndex, f64)> {
    build_j().value.terms().collect()
}
