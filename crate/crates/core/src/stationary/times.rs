//! Segment times of the stationary-state flight: rise and fall below the
//! turning point, penetrate and withdraw above it.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::wave::{allowed_at, currents_at_norm, forbidden_at, undercurrent_closed_norm};
use super::StationaryError;
use crate::model::{cst, dimensionless, scales_with_hbar, Particle, Scenario, HBAR};
use crate::quadrature::{integrate, integrate_semi_infinite, IntegralResult};
use crate::specfun::{airy_pair, GAMMA_ONE_THIRD};

/// (3^{1/3} Γ(1/3))^{-2}, which equals Ai'(0)².
pub fn airy_slope_constant() -> f64 {
    1.0 / (3f64.cbrt() * GAMMA_ONE_THIRD).powi(2)
}

/// Distance from the turning point, in units of L_q, where the undercurrent
/// used by the quadrature times is sampled.
pub const CURRENT_SAMPLE_U: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Closed,
    Quadrature(QuadOptions),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    /// Wavefunction normalization N; cancels in every time.
    pub norm: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-11, norm: 1.0 }
    }
}

impl Method {
    pub fn quadrature() -> Self {
        Method::Quadrature(QuadOptions::default())
    }
}

fn beta(scenario: &Scenario) -> f64 {
    dimensionless(scenario).beta_q
}

// ∫_0^β |ψ_a(u)|² du
fn allowed_density_integral(scenario: &Scenario, opts: QuadOptions) -> Result<IntegralResult, StationaryError> {
    let l = scenario.scales().length;
    let b = beta(scenario);
    Ok(integrate(|u| allowed_at(u, opts.norm, l).density(), 0.0, b, opts.rel_tol)?)
}

// ∫_0^∞ |ψ_f(u)|² du. The density falls like e^{-(4/3) u^{3/2}}, faster
// than the e^{-2u} bound assumed by the semi-infinite rule once u > 9/4.
fn forbidden_density_integral(scenario: &Scenario, opts: QuadOptions) -> Result<IntegralResult, StationaryError> {
    let l = scenario.scales().length;
    Ok(integrate_semi_infinite(|u| forbidden_at(u, opts.norm, l).density(), 0.0, 1.0, opts.rel_tol)?)
}

/// ∫_{z_i}^{z_cap} |ψ_a|² / (2 j_i) dz, or its closed form
/// 2πT_q[β Ai(-β)² + Ai'(-β)² - Ai'(0)²].
pub fn rise_time(scenario: &Scenario, method: Method) -> Result<f64, StationaryError> {
    let t_q = scenario.scales().time;
    match method {
        Method::Closed => {
            let b = beta(scenario);
            let (ai, aip) = airy_pair(-b);
            Ok(-2.0 * PI * t_q * airy_slope_constant() + 2.0 * PI * t_q * (b * ai * ai + aip * aip))
        }
        Method::Quadrature(opts) => {
            let l = scenario.scales().length;
            let j_i = currents_at_norm(scenario, CURRENT_SAMPLE_U, opts.norm).j_i;
            let integral = allowed_density_integral(scenario, opts)?;
            Ok(l * integral.value / (2.0 * j_i))
        }
    }
}

/// ∫_{z_cap}^{z_i} |ψ_a|² / (2 j_r) dz; equal to the rise time.
pub fn fall_time(scenario: &Scenario, method: Method) -> Result<f64, StationaryError> {
    match method {
        Method::Closed => rise_time(scenario, Method::Closed),
        Method::Quadrature(opts) => {
            let l = scenario.scales().length;
            let j_r = currents_at_norm(scenario, CURRENT_SAMPLE_U, opts.norm).j_r;
            // dz = -L du when running from z_cap down to z_i
            let integral = allowed_density_integral(scenario, opts)?;
            Ok(-l * integral.value / (2.0 * j_r))
        }
    }
}

/// ∫_{z_cap}^{∞} |ψ_f|² / (2 j_p) dz, closed form 2πT_q / (3^{1/3}Γ(1/3))².
pub fn penetrate_time(scenario: &Scenario, method: Method) -> Result<f64, StationaryError> {
    match method {
        Method::Closed => Ok(2.0 * PI * scenario.scales().time * airy_slope_constant()),
        Method::Quadrature(opts) => {
            let l = scenario.scales().length;
            let j_p = currents_at_norm(scenario, CURRENT_SAMPLE_U, opts.norm).j_p;
            let integral = forbidden_density_integral(scenario, opts)?;
            Ok(l * integral.value / (2.0 * j_p))
        }
    }
}

/// ∫_{∞}^{z_cap} |ψ_f|² / (2 j_w) dz; equal to the penetrate time.
pub fn withdraw_time(scenario: &Scenario, method: Method) -> Result<f64, StationaryError> {
    match method {
        Method::Closed => penetrate_time(scenario, Method::Closed),
        Method::Quadrature(opts) => {
            let l = scenario.scales().length;
            let j_w = currents_at_norm(scenario, CURRENT_SAMPLE_U, opts.norm).j_w;
            let integral = forbidden_density_integral(scenario, opts)?;
            Ok(-l * integral.value / (2.0 * j_w))
        }
    }
}

/// (1/j_i) ∫_{z_cap}^{∞} |ψ_f|² dz with the closed-form incident current.
pub fn dwell_time(scenario: &Scenario) -> Result<f64, StationaryError> {
    dwell_time_with(scenario, QuadOptions::default())
}

pub fn dwell_time_with(scenario: &Scenario, opts: QuadOptions) -> Result<f64, StationaryError> {
    let l = scenario.scales().length;
    let integral = forbidden_density_integral(scenario, opts)?;
    Ok(l * integral.value / undercurrent_closed_norm(scenario, opts.norm))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeBreakdown {
    pub rise: f64,
    pub penetrate: f64,
    pub withdraw: f64,
    pub fall: f64,
    pub total: f64,
    pub cst: f64,
    /// total / cst; `None` when the classical time vanishes.
    pub ratio: Option<f64>,
    pub beta_q: f64,
    pub t_q: f64,
}

/// π√β Ai(-β)² + (π/√β) Ai'(-β)², the quantum-to-classical time ratio.
pub fn qst_ratio(beta_q: f64) -> Option<f64> {
    if !(beta_q > 0.0) {
        return None;
    }
    let (ai, aip) = airy_pair(-beta_q);
    let r = beta_q.sqrt();
    Some(PI * r * ai * ai + PI / r * aip * aip)
}

/// 4π[β Ai(-β)² + Ai'(-β)²], the total time in units of T_q.
pub fn qst_over_tq(beta_q: f64) -> f64 {
    let (ai, aip) = airy_pair(-beta_q.max(0.0));
    4.0 * PI * (beta_q.max(0.0) * ai * ai + aip * aip)
}

/// The four closed-form segments and their sum.
pub fn qst_total(scenario: &Scenario) -> TimeBreakdown {
    let rise = rise_time(scenario, Method::Closed).expect("closed forms do not fail");
    let penetrate = penetrate_time(scenario, Method::Closed).expect("closed forms do not fail");
    let d = dimensionless(scenario);
    TimeBreakdown {
        rise,
        penetrate,
        withdraw: penetrate,
        fall: rise,
        total: rise + penetrate + penetrate + rise,
        cst: cst(scenario),
        ratio: qst_ratio(d.beta_q),
        beta_q: d.beta_q,
        t_q: scenario.scales().time,
    }
}

/// 4π T_q / (3^{1/3}Γ(1/3))²: the total time when launch height and turning
/// point coincide.
pub fn zero_flight_time(particle: &Particle, g: f64) -> Result<f64, StationaryError> {
    zero_flight_time_with_hbar(particle, g, HBAR)
}

pub fn zero_flight_time_with_hbar(particle: &Particle, g: f64, hbar: f64) -> Result<f64, StationaryError> {
    let t_q = scales_with_hbar(particle, g, hbar)?.time;
    Ok(zero_flight_over_tq() * t_q)
}

pub fn zero_flight_over_tq() -> f64 {
    4.0 * PI * airy_slope_constant()
}

/// 1 - cos(α)/(3α).
pub fn high_flight_ratio(alpha_q: f64) -> Result<f64, StationaryError> {
    if !(alpha_q > 0.0) || !alpha_q.is_finite() {
        return Err(StationaryError::NonPositiveAlpha(alpha_q));
    }
    Ok(1.0 - alpha_q.cos() / (3.0 * alpha_q))
}

/// Fraction of the first-order envelope 1/(3α) that the asymptote's error
/// must stay below.
pub const VALIDITY_FRACTION: f64 = 0.1;
const VALIDITY_SCAN_MAX: f64 = 60.0;
const VALIDITY_SCAN_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HighFlightValidity {
    /// Flight height z_cap - z_i above which the asymptote holds.
    pub height: f64,
    pub beta_q: f64,
    pub alpha_q: f64,
    /// Height quoted in the literature for this particle, when known.
    pub quoted_height: Option<f64>,
}

fn asymptote_excess(beta_q: f64) -> f64 {
    let alpha = 4.0 / 3.0 * beta_q.powf(1.5);
    let exact = qst_ratio(beta_q).expect("beta is positive");
    (exact - (1.0 - alpha.cos() / (3.0 * alpha))).abs() - VALIDITY_FRACTION / (3.0 * alpha)
}

/// Smallest β_q beyond which |ratio - (1 - cos α/(3α))| stays below
/// VALIDITY_FRACTION / (3α) up to β_q = 60.
pub fn high_flight_validity_beta() -> f64 {
    let steps = (VALIDITY_SCAN_MAX / VALIDITY_SCAN_STEP) as usize;
    let last_bad = (1..=steps)
        .rev()
        .map(|k| k as f64 * VALIDITY_SCAN_STEP)
        .find(|&b| asymptote_excess(b) > 0.0)
        .unwrap_or(VALIDITY_SCAN_STEP);
    let (mut lo, mut hi) = (last_bad, last_bad + VALIDITY_SCAN_STEP);
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if asymptote_excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

pub fn high_flight_validity(particle: &Particle, g: f64) -> Result<HighFlightValidity, StationaryError> {
    let l = scales_with_hbar(particle, g, HBAR)?.length;
    let b = high_flight_validity_beta();
    let quoted_height = match particle.name.to_ascii_lowercase().as_str() {
        "electron" => Some(0.274e-15),
        "neutron" => Some(0.183e-15),
        _ => None,
    };
    Ok(HighFlightValidity { height: b * l, beta_q: b, alpha_q: 4.0 / 3.0 * b.powf(1.5), quoted_height })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::STANDARD_GRAVITY;
    use crate::specfun::ai_prime_zero;

    fn at_beta(b: f64) -> Scenario {
        Scenario::from_beta(Particle::neutron(), STANDARD_GRAVITY, 0.0, b, HBAR).unwrap()
    }

    #[test]
    fn slope_constant_is_ai_prime_squared() {
        assert!((airy_slope_constant() / ai_prime_zero().powi(2) - 1.0).abs() < 1e-14);
        // 2π/(3^{1/3}Γ(1/3))², 4π/(3^{1/3}Γ(1/3))²
        assert!((2.0 * PI * airy_slope_constant() - 0.420_894_773_8).abs() < 1e-9);
        assert!((zero_flight_over_tq() - 0.841_789_547_7).abs() < 1e-9);
    }

    #[test]
    fn zero_flight_rise_vanishes() {
        let s = at_beta(0.0);
        assert!(rise_time(&s, Method::Closed).unwrap().abs() < 1e-30);
        let t = qst_total(&s);
        assert_eq!(t.ratio, None);
        assert!((t.total / zero_flight_time(&s.particle, s.g).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn closed_and_quadrature_agree_at_unit_beta() {
        let s = at_beta(1.0);
        let q = Method::quadrature();
        for (c, n) in [
            (rise_time(&s, Method::Closed).unwrap(), rise_time(&s, q).unwrap()),
            (fall_time(&s, Method::Closed).unwrap(), fall_time(&s, q).unwrap()),
            (penetrate_time(&s, Method::Closed).unwrap(), penetrate_time(&s, q).unwrap()),
            (withdraw_time(&s, Method::Closed).unwrap(), withdraw_time(&s, q).unwrap()),
        ] {
            assert!((n / c - 1.0).abs() < 1e-8, "{n} vs {c}");
        }
    }

    #[test]
    fn total_identities() {
        for b in [0.01, 0.7, 3.0, 42.0] {
            let t = qst_total(&at_beta(b));
            assert!((t.total / (t.t_q * qst_over_tq(t.beta_q)) - 1.0).abs() < 1e-12);
            let r = t.ratio.unwrap();
            assert!((r * t.cst / t.total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn high_flight_examples() {
        assert!((high_flight_ratio(PI / 2.0).unwrap() - 1.0).abs() < 1e-16);
        assert!((high_flight_ratio(1e12).unwrap() - 1.0).abs() < 1e-12);
        assert!(high_flight_ratio(0.0).is_err());
    }

    #[test]
    fn validity_threshold() {
        let b = high_flight_validity_beta();
        assert!((b - 2.736).abs() < 2e-3, "{b}");
        assert!(asymptote_excess(b + 1e-9) <= 0.0);
        let v = high_flight_validity(&Particle::electron(), STANDARD_GRAVITY).unwrap();
        assert_eq!(v.quoted_height, Some(0.274e-15));
        assert!(v.height > 0.0);
    }
}
