//! Stationary-state wavefunctions on either side of the turning point and
//! their splits into pieces carrying equal and opposite currents.
//!
//! Everything is evaluated on the scaled distance u = |z - z_cap| / L_q,
//! with ζ = (2/3) u^{3/2}. Derivatives are taken with respect to u and
//! converted to d/dz by the caller-facing wrappers.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::StationaryError;
use crate::model::Scenario;
use crate::specfun::{
    airy_pair, bessel_i, bessel_j, bessel_k, ThirdOrder, GAMMA_ONE_THIRD, GAMMA_TWO_THIRDS, I_MAX_ARG,
};

/// 3^{2/3} 2^{1/3}: ζ^{1/3}[J_{1/3} + J_{-1/3}](ζ) = C Ai(-u).
pub const AIRY_CONNECTION: f64 = 2.620_741_394_208_896_6;

/// ψ and dψ/dz at one height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveValue {
    pub psi: Complex64,
    pub dpsi_dz: Complex64,
}

impl WaveValue {
    fn real(psi: f64, dpsi_dz: f64) -> Self {
        Self { psi: Complex64::new(psi, 0.0), dpsi_dz: Complex64::new(dpsi_dz, 0.0) }
    }

    pub fn density(&self) -> f64 {
        self.psi.norm_sqr()
    }

    /// (ħ/m) Im(ψ* dψ/dz).
    pub fn current(&self, hbar: f64, mass: f64) -> f64 {
        hbar / mass * (self.psi.conj() * self.dpsi_dz).im
    }

    pub fn conj(&self) -> Self {
        Self { psi: self.psi.conj(), dpsi_dz: self.dpsi_dz.conj() }
    }
}

impl std::ops::Add for WaveValue {
    type Output = WaveValue;
    fn add(self, rhs: Self) -> Self {
        Self { psi: self.psi + rhs.psi, dpsi_dz: self.dpsi_dz + rhs.dpsi_dz }
    }
}

/// Values and u-derivatives of the two real building blocks.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pair {
    pub a: f64,
    pub b: f64,
    pub da: f64,
    pub db: f64,
}

fn zeta_of(u: f64) -> f64 {
    2.0 / 3.0 * u * u.sqrt()
}

// ζ^{1/3} = (2/3)^{1/3} u^{1/2}, and ζ^{1/3} u^{1/2} = (2/3)^{1/3} u.
const TWO_THIRDS_CBRT: f64 = 0.873_580_464_736_298_9;
// values at ζ = 0 of ζ^{1/3} J_{-1/3} and of d/du[ζ^{1/3} J_{1/3}]
fn limit_value() -> f64 {
    2f64.cbrt() / GAMMA_TWO_THIRDS
}
fn limit_slope() -> f64 {
    6f64.cbrt() / GAMMA_ONE_THIRD
}

/// a = ζ^{1/3} J_{1/3}(ζ), b = ζ^{1/3} J_{-1/3}(ζ), derivatives in u.
pub(crate) fn allowed_pair(u: f64) -> Pair {
    let zeta = zeta_of(u);
    if zeta == 0.0 {
        return Pair { a: 0.0, b: limit_value(), da: limit_slope(), db: 0.0 };
    }
    let s = TWO_THIRDS_CBRT * u.sqrt();
    let t = TWO_THIRDS_CBRT * u;
    Pair {
        a: s * bessel_j(ThirdOrder::PlusOneThird, zeta),
        b: s * bessel_j(ThirdOrder::MinusOneThird, zeta),
        da: t * bessel_j(ThirdOrder::MinusTwoThirds, zeta),
        db: -t * bessel_j(ThirdOrder::PlusTwoThirds, zeta),
    }
}

/// a = ζ^{1/3} I_{1/3}(ζ), b = ζ^{1/3}(I_{-1/3} - I_{1/3})(ζ) = ζ^{1/3} (√3/π) K_{1/3}(ζ).
/// The difference is formed through K so it keeps full relative accuracy
/// where it has decayed far below the individual I's.
pub(crate) fn forbidden_pair(u: f64) -> Pair {
    let zeta = zeta_of(u);
    if zeta == 0.0 {
        return Pair { a: 0.0, b: limit_value(), da: limit_slope(), db: -limit_slope() };
    }
    let s = TWO_THIRDS_CBRT * u.sqrt();
    let t = TWO_THIRDS_CBRT * u;
    let k = 3f64.sqrt() / PI;
    let (a, da) = if zeta <= I_MAX_ARG {
        (s * bessel_i(ThirdOrder::PlusOneThird, zeta, false), t * bessel_i(ThirdOrder::MinusTwoThirds, zeta, false))
    } else {
        (f64::INFINITY, f64::INFINITY)
    };
    Pair {
        a,
        b: s * k * bessel_k(ThirdOrder::PlusOneThird, zeta, false),
        da,
        db: -t * k * bessel_k(ThirdOrder::PlusTwoThirds, zeta, false),
    }
}

/// Which side of the turning point a height lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Allowed,
    Forbidden,
}

fn offset(z: f64, scenario: &Scenario, region: Region) -> Result<f64, StationaryError> {
    if !z.is_finite() {
        return Err(StationaryError::NotFinite(z));
    }
    let d = z - scenario.z_cap;
    match region {
        Region::Allowed if d > 0.0 => Err(StationaryError::WrongRegion { z, z_cap: scenario.z_cap, region }),
        Region::Forbidden if d < 0.0 => Err(StationaryError::WrongRegion { z, z_cap: scenario.z_cap, region }),
        _ => Ok(d.abs() / scenario.scales().length),
    }
}

/// The real allowed-region wave, u-based. `sign_dz` converts d/du to d/dz.
pub(crate) fn allowed_at(u: f64, norm: f64, length: f64) -> WaveValue {
    let p = allowed_pair(u);
    WaveValue::real(norm * (p.a + p.b), -norm * (p.da + p.db) / length)
}

pub(crate) fn forbidden_at(u: f64, norm: f64, length: f64) -> WaveValue {
    let p = forbidden_pair(u);
    WaveValue::real(norm * p.b, norm * p.db / length)
}

pub(crate) fn split_allowed_at(u: f64, norm: f64, length: f64) -> (WaveValue, WaveValue) {
    let p = allowed_pair(u);
    let up = Complex64::from_polar(1.0, PI / 3.0);
    let down = up.conj();
    let incident =
        WaveValue { psi: (down * p.a + up * p.b) * norm, dpsi_dz: (down * p.da + up * p.db) * (-norm / length) };
    // (1 - e^{∓iπ/3}) = e^{±iπ/3}: the reflected wave is the conjugate
    let reflected = WaveValue {
        psi: ((1.0 - down) * p.a + (1.0 - up) * p.b) * norm,
        dpsi_dz: ((1.0 - down) * p.da + (1.0 - up) * p.db) * (-norm / length),
    };
    (incident, reflected)
}

/// ψ_p = i[e^{iπ/6} G + e^{-iπ/6} H] with G = ζ^{1/3} I_{1/3}, H = ζ^{1/3} I_{-1/3}.
/// Writing H = G + D gives ψ_p = i√3 G + e^{iπ/3} D, and ψ_w = conj(ψ_p).
pub(crate) fn split_forbidden_at(u: f64, norm: f64, length: f64) -> (WaveValue, WaveValue) {
    let p = forbidden_pair(u);
    let up = Complex64::from_polar(1.0, PI / 3.0);
    let i3 = Complex64::new(0.0, 3f64.sqrt());
    let penetrating =
        WaveValue { psi: (i3 * p.a + up * p.b) * norm, dpsi_dz: (i3 * p.da + up * p.db) * (norm / length) };
    let withdrawing = WaveValue {
        psi: (-i3 * p.a + up.conj() * p.b) * norm,
        dpsi_dz: (-i3 * p.da + up.conj() * p.db) * (norm / length),
    };
    (penetrating, withdrawing)
}

pub fn psi_allowed(z: f64, scenario: &Scenario) -> Result<WaveValue, StationaryError> {
    psi_allowed_norm(z, scenario, 1.0)
}

pub fn psi_allowed_norm(z: f64, scenario: &Scenario, norm: f64) -> Result<WaveValue, StationaryError> {
    let u = offset(z, scenario, Region::Allowed)?;
    Ok(allowed_at(u, norm, scenario.scales().length))
}

pub fn psi_forbidden(z: f64, scenario: &Scenario) -> Result<WaveValue, StationaryError> {
    psi_forbidden_norm(z, scenario, 1.0)
}

pub fn psi_forbidden_norm(z: f64, scenario: &Scenario, norm: f64) -> Result<WaveValue, StationaryError> {
    let u = offset(z, scenario, Region::Forbidden)?;
    Ok(forbidden_at(u, norm, scenario.scales().length))
}

/// (ψ_i, ψ_r) with ψ_i + ψ_r = ψ_a.
pub fn split_allowed(z: f64, scenario: &Scenario) -> Result<(WaveValue, WaveValue), StationaryError> {
    let u = offset(z, scenario, Region::Allowed)?;
    Ok(split_allowed_at(u, 1.0, scenario.scales().length))
}

/// (ψ_p, ψ_w) with ψ_p + ψ_w = ψ_f.
pub fn split_forbidden(z: f64, scenario: &Scenario) -> Result<(WaveValue, WaveValue), StationaryError> {
    let u = offset(z, scenario, Region::Forbidden)?;
    if zeta_of(u) > I_MAX_ARG {
        return Err(StationaryError::TooDeep { z });
    }
    Ok(split_forbidden_at(u, 1.0, scenario.scales().length))
}

/// ψ on either side of the turning point via Ai(∓u), the cross-check path.
pub fn psi_airy(z: f64, scenario: &Scenario) -> Result<WaveValue, StationaryError> {
    if !z.is_finite() {
        return Err(StationaryError::NotFinite(z));
    }
    let l = scenario.scales().length;
    // Ai(s) with s = (z - z_cap)/L on both sides
    let s = (z - scenario.z_cap) / l;
    let (ai, aip) = airy_pair(s);
    Ok(WaveValue::real(AIRY_CONNECTION * ai, AIRY_CONNECTION * aip / l))
}

/// (ħ/(π m L_q)) (3/2)^{4/3} |N|²: magnitude of every undercurrent.
pub fn undercurrent_closed(scenario: &Scenario) -> f64 {
    undercurrent_closed_norm(scenario, 1.0)
}

pub fn undercurrent_closed_norm(scenario: &Scenario, norm: f64) -> f64 {
    let l = scenario.scales().length;
    scenario.hbar / (PI * scenario.particle.mass * l) * 1.5f64.powf(4.0 / 3.0) * norm * norm
}

/// Numerically evaluated undercurrents at one point on each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentSet {
    pub j_i: f64,
    pub j_r: f64,
    pub j_p: f64,
    pub j_w: f64,
}

/// Currents from the split waves at a distance `u` from the turning point on
/// either side.
pub fn currents_at(scenario: &Scenario, u: f64) -> CurrentSet {
    currents_at_norm(scenario, u, 1.0)
}

pub fn currents_at_norm(scenario: &Scenario, u: f64, norm: f64) -> CurrentSet {
    let (hbar, m) = (scenario.hbar, scenario.particle.mass);
    let l = scenario.scales().length;
    let (wi, wr) = split_allowed_at(u, norm, l);
    let (wp, ww) = split_forbidden_at(u, norm, l);
    CurrentSet {
        j_i: wi.current(hbar, m),
        j_r: wr.current(hbar, m),
        j_p: wp.current(hbar, m),
        j_w: ww.current(hbar, m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Particle, STANDARD_GRAVITY};
    use crate::specfun::{airy_ai, airy_ai_prime};

    fn scenario() -> Scenario {
        Scenario::new(Particle::neutron(), STANDARD_GRAVITY, 0.0, 1e-4).unwrap()
    }

    #[test]
    fn connection_constant() {
        let c = 9f64.cbrt() * 2f64.cbrt();
        assert!((AIRY_CONNECTION - c).abs() < 1e-15);
        assert!((TWO_THIRDS_CBRT - (2.0f64 / 3.0).cbrt()).abs() < 4e-16);
    }

    #[test]
    fn turning_point_limits() {
        let s = scenario();
        let a = psi_allowed(s.z_cap, &s).unwrap();
        let f = psi_forbidden(s.z_cap, &s).unwrap();
        assert_eq!(a.psi, f.psi);
        assert!((a.dpsi_dz - f.dpsi_dz).norm() == 0.0);
        let l = s.scales().length;
        let want = AIRY_CONNECTION * airy_ai(0.0).unwrap();
        assert!((a.psi.re - want).abs() < 1e-14 * want);
        let slope = AIRY_CONNECTION * airy_ai_prime(0.0).unwrap() / l;
        assert!((a.dpsi_dz.re / slope - 1.0).abs() < 1e-14);
    }

    #[test]
    fn limits_are_approached_continuously() {
        let s = scenario();
        let l = s.scales().length;
        let at = psi_allowed(s.z_cap, &s).unwrap();
        for h in [1e-4, 1e-6] {
            let near = psi_allowed(s.z_cap - h * l, &s).unwrap();
            assert!((near.psi.re / at.psi.re - 1.0).abs() < 5.0 * h);
            assert!((near.dpsi_dz.re / at.dpsi_dz.re - 1.0).abs() < 5.0 * h);
            let near = psi_forbidden(s.z_cap + h * l, &s).unwrap();
            assert!((near.psi.re / at.psi.re - 1.0).abs() < 5.0 * h);
        }
    }

    #[test]
    fn region_checks() {
        let s = scenario();
        assert!(psi_allowed(s.z_cap + 1e-9, &s).is_err());
        assert!(psi_forbidden(s.z_cap - 1e-9, &s).is_err());
        assert!(split_allowed(f64::NAN, &s).is_err());
    }

    #[test]
    fn splits_reconstruct_real_waves() {
        let s = scenario();
        let l = s.scales().length;
        for k in 0..20 {
            let u = 0.37 * k as f64;
            let (i, r) = split_allowed(s.z_cap - u * l, &s).unwrap();
            let a = psi_allowed(s.z_cap - u * l, &s).unwrap();
            let sum = i + r;
            let scale = a.psi.norm().max(1e-300);
            assert!((sum.psi - a.psi).norm() < 1e-14 * i.psi.norm().max(scale));
            assert!(sum.psi.im.abs() < 1e-12 * i.psi.norm());
            assert!((r.psi - i.psi.conj()).norm() < 1e-15 * i.psi.norm());

            let (p, w) = split_forbidden(s.z_cap + u * l, &s).unwrap();
            let f = psi_forbidden(s.z_cap + u * l, &s).unwrap();
            let sum = p + w;
            assert!((sum.psi.re - f.psi.re).abs() <= 1e-15 * f.psi.re.abs());
            assert_eq!(sum.psi.im, 0.0);
        }
    }

    #[test]
    fn real_waves_carry_no_current() {
        let s = scenario();
        let l = s.scales().length;
        for k in 0..10 {
            let u = 0.9 * k as f64;
            let a = psi_allowed(s.z_cap - u * l, &s).unwrap();
            let f = psi_forbidden(s.z_cap + u * l, &s).unwrap();
            assert_eq!(a.current(s.hbar, s.particle.mass), 0.0);
            assert_eq!(f.current(s.hbar, s.particle.mass), 0.0);
        }
    }

    #[test]
    fn split_currents_match_closed_form() {
        let s = scenario();
        let j = undercurrent_closed(&s);
        for u in [0.0, 0.3, 1.0, 4.5, 12.0] {
            let c = currents_at(&s, u);
            for (got, sign) in [(c.j_i, 1.0), (c.j_r, -1.0), (c.j_p, 1.0), (c.j_w, -1.0)] {
                assert!((got / (sign * j) - 1.0).abs() < 1e-11, "u={u}: {got} vs {}", sign * j);
            }
        }
    }

    #[test]
    fn forbidden_wave_decays() {
        let s = scenario();
        let l = s.scales().length;
        let f0 = psi_forbidden(s.z_cap, &s).unwrap().density();
        let f10 = psi_forbidden(s.z_cap + 10.0 * l, &s).unwrap().density();
        let zeta = 2.0 / 3.0 * 10f64.powf(1.5);
        assert!((zeta - 21.08).abs() < 0.01);
        assert!(f10 < (-2.0 * zeta).exp() * f0);
        assert!(f10 > 0.0);
        assert!(matches!(split_forbidden(s.z_cap + 200.0 * l, &s), Err(StationaryError::TooDeep { .. })));
    }

    #[test]
    fn airy_path_agrees_with_bessel_path() {
        let s = scenario();
        let l = s.scales().length;
        for k in 1..40 {
            let u = 0.25 * k as f64;
            let z = s.z_cap - u * l;
            let a = psi_allowed(z, &s).unwrap();
            let b = psi_airy(z, &s).unwrap();
            let env = AIRY_CONNECTION / (PI.sqrt() * u.powf(0.25));
            assert!((a.psi.re - b.psi.re).abs() < 1e-12 * env, "u={u}");
            let z = s.z_cap + u * l;
            let a = psi_forbidden(z, &s).unwrap();
            let b = psi_airy(z, &s).unwrap();
            assert!((a.psi.re / b.psi.re - 1.0).abs() < 1e-11, "u={u}");
        }
    }
}
