//! Gaussian wavepacket launched upward under gravity: density, current,
//! Bohmian trajectories, return times, and first-order time formulas.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ModelError, Particle, HBAR};
use crate::quadrature::{find_root, integrate, QuadError};

/// The width condition d ≪ v_i²/(2g) is reported as satisfied when d is at
/// most this fraction of the classical rise.
pub const WIDTH_VALIDITY_FRACTION: f64 = 1e-2;
/// Return searches stop at this multiple of the classical flight time.
pub const RETURN_HORIZON: f64 = 10.0;
const RETURN_SCAN_POINTS: usize = 4000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavepacketError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("no return within {horizon} s: dispersion carries the trajectory away")]
    NoReturn { horizon: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WavepacketParams {
    pub m: f64,
    pub g: f64,
    pub d: f64,
    pub z_i: f64,
    pub v_i: f64,
    /// Planck's constant used for this packet; zero gives the classical limit.
    pub hbar: f64,
}

impl WavepacketParams {
    pub fn new(m: f64, g: f64, d: f64, z_i: f64, v_i: f64) -> Result<Self, WavepacketError> {
        Self::with_hbar(m, g, d, z_i, v_i, HBAR)
    }

    pub fn for_particle(p: &Particle, g: f64, d: f64, z_i: f64, v_i: f64) -> Result<Self, WavepacketError> {
        Self::new(p.mass, g, d, z_i, v_i)
    }

    pub fn with_hbar(m: f64, g: f64, d: f64, z_i: f64, v_i: f64, hbar: f64) -> Result<Self, WavepacketError> {
        for (name, value) in [("m", m), ("g", g), ("d", d), ("v_i", v_i)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(WavepacketError::NonPositive { name, value });
            }
        }
        if !z_i.is_finite() {
            return Err(WavepacketError::NotFinite { name: "z_i", value: z_i });
        }
        if !(hbar >= 0.0 && hbar.is_finite()) {
            return Err(WavepacketError::NotFinite { name: "hbar", value: hbar });
        }
        Ok(Self { m, g, d, z_i, v_i, hbar })
    }

    pub fn classical_limit(&self) -> Self {
        Self { hbar: 0.0, ..*self }
    }

    pub fn with_planck(&self, hbar: f64) -> Self {
        Self { hbar, ..*self }
    }

    /// 2 v_i / g.
    pub fn cst(&self) -> f64 {
        2.0 * self.v_i / self.g
    }

    pub fn apex_time(&self) -> f64 {
        self.v_i / self.g
    }

    /// v_i² / (2g)
    pub fn rise(&self) -> f64 {
        self.v_i * self.v_i / (2.0 * self.g)
    }

    pub fn width_ratio(&self) -> f64 {
        self.d / self.rise()
    }

    /// Whether d ≪ v_i²/(2g) holds in the sense of WIDTH_VALIDITY_FRACTION.
    pub fn width_valid(&self) -> bool {
        self.width_ratio() <= WIDTH_VALIDITY_FRACTION
    }

    /// m d² / ħ, the time over which the packet doubles its spread.
    pub fn dispersion_time(&self) -> f64 {
        self.m * self.d * self.d / self.hbar
    }

    // ħ t / (m d²)
    fn tau(&self, t: f64) -> f64 {
        self.hbar * t / (self.m * self.d * self.d)
    }

    /// D² = d² + iħt/m.
    pub fn width_squared(&self, t: f64) -> Complex64 {
        Complex64::new(self.d * self.d, self.hbar * t / self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowPoint {
    pub t: f64,
    pub z: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "J")]
    pub j: f64,
}

/// z_i + v_i t - g t²/2.
pub fn classical_trajectory(t: f64, p: &WavepacketParams) -> f64 {
    p.z_i + p.v_i * t - 0.5 * p.g * t * t
}

fn check_time(t: f64) -> Result<(), WavepacketError> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(WavepacketError::NegativeTime(t))
    }
}

/// Ψ(t, z) and ∂Ψ/∂z.
pub fn wavefunction(t: f64, z: f64, p: &WavepacketParams) -> Result<(Complex64, Complex64), WavepacketError> {
    check_time(t)?;
    if p.hbar == 0.0 {
        return Err(WavepacketError::NonPositive { name: "hbar", value: 0.0 });
    }
    let d2 = p.width_squared(t);
    let x = z - classical_trajectory(t, p);
    let k = p.m / p.hbar;
    let i = Complex64::i();
    // (m/iħ) z_i v_i - (m/iħ)(z - v_i t/2)(v_i - g t) + (m g²/iħ) t³
    let phase = k * (p.z_i * p.v_i - (z - 0.5 * p.v_i * t) * (p.v_i - p.g * t) + p.g * p.g * t.powi(3));
    let amplitude = (p.d / (PI.sqrt() * d2)).sqrt();
    let psi = amplitude * (-(x * x) / (2.0 * d2) - i * phase).exp();
    let dlog = -x / d2 + i * (k * (p.v_i - p.g * t));
    Ok((psi, psi * dlog))
}

/// Density and current from Ψ: R = |Ψ|², J = (ħ/m) Im(Ψ* ∂Ψ/∂z).
pub fn flow_from_wavefunction(t: f64, z: f64, p: &WavepacketParams) -> Result<FlowPoint, WavepacketError> {
    let (psi, dpsi) = wavefunction(t, z, p)?;
    let r = psi.norm_sqr();
    let j = p.hbar / p.m * (psi.conj() * dpsi).im;
    Ok(FlowPoint { t, z, r, j })
}

/// Closed-form density; independent of ħ's sign conventions in the phase.
pub fn density(t: f64, z: f64, p: &WavepacketParams) -> f64 {
    let d4 = p.d.powi(4);
    let spread2 = d4 + (p.hbar * t / p.m).powi(2); // |D²|²
    let x = z - classical_trajectory(t, p);
    p.d / (PI.sqrt() * spread2.sqrt()) * (-(x * x) * p.d * p.d / spread2).exp()
}

pub fn current(t: f64, z: f64, p: &WavepacketParams) -> f64 {
    density(t, z, p) * flow_ratio(t, z, p)
}

pub fn flow_point(t: f64, z: f64, p: &WavepacketParams) -> FlowPoint {
    FlowPoint { t, z, r: density(t, z, p), j: current(t, z, p) }
}

/// J/R = t (z - z_c)/((m²d⁴/ħ²) + t²) + v_i - g t.
pub fn flow_ratio(t: f64, z: f64, p: &WavepacketParams) -> f64 {
    let h2 = p.hbar * p.hbar;
    let spread = p.m * p.m * p.d.powi(4) + h2 * t * t;
    t * (z - classical_trajectory(t, p)) * h2 / spread + p.v_i - p.g * t
}

/// z_c(t) + d sqrt(1 + ħ²t²/(m²d⁴)).
pub fn bohmian_trajectory(t: f64, p: &WavepacketParams) -> f64 {
    classical_trajectory(t, p) + p.d * p.tau(t).hypot(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum ReturnCondition {
    /// Recrossing of the trajectory's own starting value z_i + d.
    #[default]
    LaunchValue,
    /// Recrossing of the launch height z_i.
    LaunchHeight,
}

/// First time after the apex at which the Bohmian trajectory comes back to
/// the level chosen by `cond`.
pub fn return_time_numeric(p: &WavepacketParams, cond: ReturnCondition) -> Result<f64, WavepacketError> {
    let target_offset = match cond {
        ReturnCondition::LaunchValue => p.d,
        ReturnCondition::LaunchHeight => 0.0,
    };
    // height above the target, written relative to z_i to avoid cancellation
    let f = |t: f64| p.v_i * t - 0.5 * p.g * t * t + p.d * p.tau(t).hypot(1.0) - target_offset;
    let horizon = RETURN_HORIZON * p.cst();
    let t0 = p.apex_time();
    let step = (horizon - t0) / RETURN_SCAN_POINTS as f64;
    let mut lo = t0;
    let mut f_lo = f(lo);
    for k in 1..=RETURN_SCAN_POINTS {
        let hi = t0 + k as f64 * step;
        let f_hi = f(hi);
        if f_hi <= 0.0 && f_lo > 0.0 {
            let tol = 4.0 * f64::EPSILON * hi;
            return Ok(find_root(f, lo, hi, tol)?);
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(WavepacketError::NoReturn { horizon })
}

/// (2v_i/g)(1 + ħ/(m sqrt(2 g d³))).
pub fn qst_wp_bohmian(p: &WavepacketParams) -> f64 {
    p.cst() * (1.0 + bohmian_deviation(p))
}

pub fn bohmian_deviation(p: &WavepacketParams) -> f64 {
    p.hbar / (p.m * (2.0 * p.g * p.d.powi(3)).sqrt())
}

/// (2v_i/g)(1 + ħ²/(4 m² d² v_i²)).
pub fn qst_wp_copenhagen(p: &WavepacketParams) -> f64 {
    p.cst() * (1.0 + copenhagen_deviation(p))
}

pub fn copenhagen_deviation(p: &WavepacketParams) -> f64 {
    (p.hbar / (2.0 * p.m * p.d * p.v_i)).powi(2)
}

/// Width at which the two first-order deviations coincide, found by root
/// search on the log of their ratio over d ∈ [1e-30, 1e30] m.
pub fn crossover_width(p: &WavepacketParams) -> Result<f64, WavepacketError> {
    let log_gap = |log_d: f64| {
        let q = WavepacketParams { d: log_d.exp(), ..*p };
        bohmian_deviation(&q).ln() - copenhagen_deviation(&q).ln()
    };
    let lo = (1e-30f64).ln();
    let hi = (1e30f64).ln();
    Ok(find_root(log_gap, lo, hi, 1e-13)?.exp())
}

/// g ħ² / (8 m² v_i⁴), the closed form of the crossover width.
pub fn crossover_width_closed(p: &WavepacketParams) -> f64 {
    p.g * p.hbar * p.hbar / (8.0 * p.m * p.m * p.v_i.powi(4))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuityResidual {
    /// ∂R/∂t + ∂J/∂z
    pub residual: f64,
    pub dr_dt: f64,
    pub dj_dz: f64,
}

impl ContinuityResidual {
    pub fn relative(&self) -> f64 {
        self.residual.abs() / self.dr_dt.abs().max(self.dj_dz.abs())
    }
}

/// Step sizes for the finite differences: 1e-4 of the packet's
/// spatial spread, and the time its centre or edge takes to cover that.
pub fn default_steps(t: f64, p: &WavepacketParams) -> (f64, f64) {
    let spread = (p.d.powi(4) + (p.hbar * t / p.m).powi(2)).sqrt() / p.d;
    let h_z = 1e-4 * spread;
    let speed = (p.v_i - p.g * t).abs() + p.hbar * p.hbar * t / (p.m * p.m * p.d * p.d * spread);
    let h_t = if speed > 0.0 { h_z / speed } else { 1e-4 * p.dispersion_time() };
    (h_t.min(0.5 * t), h_z)
}

/// ∂R/∂t + ∂J/∂z by central differences.
pub fn continuity_residual(t: f64, z: f64, p: &WavepacketParams) -> Result<ContinuityResidual, WavepacketError> {
    let (h_t, h_z) = default_steps(t, p);
    continuity_residual_with(t, z, p, h_t, h_z)
}

pub fn continuity_residual_with(
    t: f64,
    z: f64,
    p: &WavepacketParams,
    h_t: f64,
    h_z: f64,
) -> Result<ContinuityResidual, WavepacketError> {
    if !(t > 0.0) || h_t >= t {
        return Err(WavepacketError::NegativeTime(t - h_t));
    }
    let dr_dt = (density(t + h_t, z, p) - density(t - h_t, z, p)) / (2.0 * h_t);
    let dj_dz = (current(t, z + h_z, p) - current(t, z - h_z, p)) / (2.0 * h_z);
    Ok(ContinuityResidual { residual: dr_dt + dj_dz, dr_dt, dj_dz })
}

/// ∫ R dz over twelve spreads either side of the centre.
pub fn normalization(t: f64, p: &WavepacketParams, rel_tol: f64) -> Result<f64, WavepacketError> {
    check_time(t)?;
    let spread = (p.d.powi(4) + (p.hbar * t / p.m).powi(2)).sqrt() / p.d;
    let c = classical_trajectory(t, p);
    let r = integrate(|z| density(t, z, p), c - 12.0 * spread, c + 12.0 * spread, rel_tol)?;
    Ok(r.value)
}
