use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: Cl({left},0) vs Cl({right},0)")]
    DimensionMismatch { left: u8, right: u8 },

    #[error("unsupported algebra dimension {0} (expected 1..=8)")]
    UnsupportedDimension(u8),

    #[error("grade {grade} out of range for Cl({dim},0)")]
    GradeOutOfRange { grade: u8, dim: u8 },

    #[error("blade mask {mask:#x} out of range for Cl({dim},0)")]
    BladeOutOfRange { mask: u16, dim: u8 },

    #[error("vector norm {norm} is not within tolerance of 1")]
    NotUnit { norm: f64 },

    #[error("non-finite component")]
    NonFinite,

    #[error("rotor generator is not a unit bivector (residual {residual:e})")]
    NotUnitBivector { residual: f64 },

    #[error("orientation value {0} is neither +1 nor -1")]
    InvalidOrientation(i64),

    #[error("cannot combine elements of opposite orientation")]
    MixedOrientation,

    #[error("degenerate rotation axis: |a x b| = {cross_norm:e}")]
    DegenerateAxis { cross_norm: f64 },

    #[error("score product is not scalar (non-scalar norm {residual:e})")]
    NonScalarScore { residual: f64 },

    #[error("embedding columns are not orthonormal (residual {residual:e})")]
    NotIsometry { residual: f64 },

    #[error("invalid configuration: {0}")]
    Config(&'static str),
}
