//! Polarization kernels from algebraic-geometry codes over GF(2^m).
//!
//! The analytic modules are generic over [`num::Real`] (f32 or f64); the
//! aliases below fix the scalar to f64.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail the guards

pub mod channel;
pub mod cli;
pub mod curves;
pub mod error;
pub mod gf;
pub mod kernel;
pub mod metrics;
pub mod num;
pub mod oesterle;
pub mod study;

pub use curves::{curve_spec, CurveSpec, Family};
pub use error::{Error, Result};
pub use gf::{FieldCtx, FieldElement};
pub use kernel::KernelMatrix;
pub use metrics::{DistanceKind, Profile, ProfileSource};
pub use num::Real;
pub use study::{CrossoverResult, StudyRow};

pub type Dmc = channel::Dmc<f64>;
pub type ErasureState = channel::ErasureState<f64>;
pub type PolarizationRun = channel::PolarizationRun<f64>;
pub type ExponentReport = metrics::ExponentReport<f64>;
pub type OesterleResult = oesterle::OesterleResult<f64>;
