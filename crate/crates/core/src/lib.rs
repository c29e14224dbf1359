//! Clifford-algebra engine and hidden-orientation EPR-Bohm simulator.
//!
//! The crate is `no_std` with `alloc`. Everything here is a pure function of
//! its inputs (the Monte Carlo code is keyed by `(seed, trial index)`), so
//! values can be shared freely across threads. IO, the command-line front
//! end and parallel drivers live in the `cliffsphere` crate.
//!
//! Module map:
//!
//! * [`multivector`]: dense `Cl(n,0)` arithmetic for `1 <= n <= 8`.
//! * [`reference`]: an independent list-based blade multiplier used as an oracle.
//! * [`oriented`]: handed bivector frames, the orientation-parameterized
//!   quaternion-like algebra, duality and combined-identity residuals.
//! * [`epr`]: orientation sampling, raw and standard scores, estimators.
//! * [`hopf`]: rotor transport across the Hopf twist and the null-limit probe.
//! * [`seven`]: the Fano-plane trivector in `Cl(7,0)` and 7-sphere scores.
//! * [`identities`]: the named identity suite driven by the CLI.

#![no_std]

extern crate alloc;

pub mod epr;
pub mod error;
pub mod hopf;
pub mod identities;
pub mod multivector;
pub mod oriented;
pub mod reference;
pub mod seven;
pub mod summation;
pub mod vec3;

pub use error::{Error, Result};
pub use multivector::{BladeIndex, Grade, Multivector};
pub use oriented::{AbstractElement, Orientation, OrientedFrame};
pub use vec3::{UnitVec3, Vec3};

/// Default absolute tolerance for algebraic identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Tolerance on the norm of vectors that are meant to be unit length.
pub const UNIT_TOL: f64 = 1e-9;
