//! Real-argument special functions: Airy Ai and Ai', Bessel J and I of
//! orders ±1/3 (plus the ±2/3 orders that appear in their derivatives),
//! K of orders 1/3 and 2/3, and Γ at one and two thirds.

mod airy;
mod bessel;
mod gamma;
mod phase;

pub use airy::{ai_prime_zero, ai_zero, airy_ai, airy_ai_checked, airy_ai_prime, AIRY_ASYMPTOTIC_SWITCH, AIRY_MAX_ARG};
pub use bessel::{
    bessel_i_order, bessel_i_third, bessel_i_third_difference, bessel_i_third_prime, bessel_j_order, bessel_j_third,
    bessel_j_third_prime, bessel_k_order, OrderSign, ThirdOrder, HANKEL_MIN, I_MAX_ARG, I_SCALED_MAX_ARG, I_SERIES_MAX,
    J_MAX_ARG, J_SERIES_MAX, K_SERIES_MAX,
};
pub use gamma::{gamma_at, gamma_thirds, Third, GAMMA_ONE_THIRD, GAMMA_TWO_THIRDS};

pub(crate) use airy::airy_pair;
pub(crate) use bessel::{bessel_i, bessel_j, bessel_k};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function}: argument {arg} outside the supported range")]
    OutOfRange { function: &'static str, arg: f64 },
    #[error("{function}: negative argument {arg} (only non-negative arguments are supported)")]
    NegativeArgument { function: &'static str, arg: f64 },
    #[error("gamma is only available at 1/3, 2/3 and 4/3, got {0}")]
    UnsupportedGamma(f64),
}

/// A function value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunResult {
    pub value: f64,
    pub est_error: f64,
}
