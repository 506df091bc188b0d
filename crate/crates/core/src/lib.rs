//! Classical and quantum flight times of particles thrown upward against
//! uniform gravity.
//!
//! The crate is organised bottom-up: [`specfun`] supplies Airy and
//! fractional-order Bessel functions, [`quadrature`] the adaptive integrator
//! and root finder, [`model`] the scenario and its natural scales,
//! [`stationary`] and [`wavepacket`] the two physical pictures, and
//! [`report`] / [`verify`] the tabulations and cross-checks built on them.

// `!(x > 0.0)` is the NaN-rejecting guard; reference tables keep full digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod exec;
pub mod model;
pub mod quadrature;
pub mod report;
pub mod specfun;
pub mod stationary;
pub mod verify;
pub mod wavepacket;
