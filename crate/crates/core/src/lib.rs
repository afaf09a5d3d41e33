//! Quantum mechanics on the three-dimensional fuzzy sphere.
//!
//! Coordinates obey `[x̂ᵢ, x̂ⱼ] = 2iλ εᵢⱼₖ x̂ₖ` and are realized on a two-mode
//! Fock space. The crate provides plane-wave algebra ([`su2`]), a truncated
//! Fock-space oracle ([`fockspace`]), coherent matrix elements
//! ([`coherent`]), radial waves ([`radialwaves`]), dispersion relations
//! ([`dispersion`]) and the two-pinhole interference pattern ([`pinhole`]).
//!
//! All numerics are generic over [`Real`]; the aliases below fix `f64`.

// `!(x > 0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coherent;
pub mod dispersion;
pub mod error;
pub mod fockspace;
pub mod linalg;
pub mod pinhole;
pub mod radialwaves;
pub mod scalar;
pub mod su2;

pub use error::{Error, Result};
pub use scalar::Real;

pub type CMatrix64 = linalg::CMatrix<f64>;
pub type WaveVector64 = su2::WaveVector<f64>;
pub type Su2Element64 = su2::Su2Element<f64>;
pub type CoherentPoint64 = su2::CoherentPoint<f64>;
pub type MelContext64 = coherent::MelContext<f64>;
pub type ParticleParams64 = dispersion::ParticleParams<f64>;
pub type PinholeGeometry64 = pinhole::PinholeGeometry<f64>;
