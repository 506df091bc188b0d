//! Mono-energetic scattering off the gravitational barrier: the real
//! stationary wave, its complex splits, and the times built from them.

mod times;
mod wave;

use thiserror::Error;

use crate::model::ModelError;
use crate::quadrature::QuadError;

pub use times::{
    airy_slope_constant, dwell_time, dwell_time_with, fall_time, high_flight_ratio, high_flight_validity,
    high_flight_validity_beta, penetrate_time, qst_over_tq, qst_ratio, qst_total, rise_time, withdraw_time,
    zero_flight_over_tq, zero_flight_time, zero_flight_time_with_hbar, HighFlightValidity, Method, QuadOptions,
    TimeBreakdown, CURRENT_SAMPLE_U, VALIDITY_FRACTION,
};
pub use wave::{
    currents_at, currents_at_norm, psi_airy, psi_allowed, psi_allowed_norm, psi_forbidden, psi_forbidden_norm,
    split_allowed, split_forbidden, undercurrent_closed, undercurrent_closed_norm, CurrentSet, Region, WaveValue,
    AIRY_CONNECTION,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StationaryError {
    #[error("height {z} m is on the wrong side of the turning point {z_cap} m for the {region:?} region")]
    WrongRegion { z: f64, z_cap: f64, region: Region },
    #[error("height must be finite, got {0}")]
    NotFinite(f64),
    #[error("height {z} m is too far into the barrier to split the wave")]
    TooDeep { z: f64 },
    #[error("alpha_q must be positive and finite, got {0}")]
    NonPositiveAlpha(f64),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}
