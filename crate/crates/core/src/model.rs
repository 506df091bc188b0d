//! Physical constants, the particle catalog, launch scenarios, and the
//! characteristic quantum scales of motion in a uniform gravitational field.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Standard gravity, m/s².
pub const STANDARD_GRAVITY: f64 = 9.806_65;

const BUILTIN_CATALOG: &str = include_str!("../data/particles.json");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("mass must be positive, got {0} kg")]
    NonPositiveMass(f64),
    #[error("gravitational acceleration must be positive, got {0} m/s^2")]
    NonPositiveGravity(f64),
    #[error("hbar must be positive, got {0} J s")]
    NonPositiveHbar(f64),
    #[error("turning point {z_cap} m lies below the launch height {z_i} m")]
    TurningPointBelowLaunch { z_i: f64, z_cap: f64 },
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("unknown particle '{0}'")]
    UnknownParticle(String),
    #[error("particle catalog: {0}")]
    Catalog(String),
}

fn finite(name: &'static str, value: f64) -> Result<f64, ModelError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ModelError::NotFinite { name, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub g_default: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: HBAR, g_default: STANDARD_GRAVITY }
    }
}

impl PhysicalConstants {
    pub fn new(hbar: f64, g_default: f64) -> Result<Self, ModelError> {
        if !(finite("hbar", hbar)? > 0.0) {
            return Err(ModelError::NonPositiveHbar(hbar));
        }
        if !(finite("g", g_default)? > 0.0) {
            return Err(ModelError::NonPositiveGravity(g_default));
        }
        Ok(Self { hbar, g_default })
    }
}

/// A named point mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Particle {
    pub name: String,
    pub mass: f64,
}

impl Particle {
    pub fn new(name: impl Into<String>, mass: f64) -> Result<Self, ModelError> {
        if !(finite("mass", mass)? > 0.0) {
            return Err(ModelError::NonPositiveMass(mass));
        }
        Ok(Self { name: name.into(), mass })
    }

    pub fn electron() -> Self {
        builtin_catalog().get("electron").expect("catalog lists the electron").particle()
    }

    pub fn neutron() -> Self {
        builtin_catalog().get("neutron").expect("catalog lists the neutron").particle()
    }

    /// Same particle with its mass multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, ModelError> {
        Particle::new(format!("{}x{}", self.name, factor), self.mass * factor)
    }
}

/// One catalog record. The mass is kept as the decimal string it was
/// written with so that catalogs round-trip exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub mass_kg: String,
}

impl CatalogEntry {
    pub fn mass(&self) -> f64 {
        self.mass_kg.trim().parse().expect("validated on load")
    }

    pub fn particle(&self) -> Particle {
        Particle { name: self.name.clone(), mass: self.mass() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleCatalog {
    entries: Vec<CatalogEntry>,
}

impl ParticleCatalog {
    /// Parse a JSON array of `{"name": ..., "mass_kg": "..."}` records.
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| ModelError::Catalog(e.to_string()))?;
        for e in &entries {
            let m: f64 = e
                .mass_kg
                .trim()
                .parse()
                .map_err(|_| ModelError::Catalog(format!("{}: bad mass '{}'", e.name, e.mass_kg)))?;
            Particle::new(e.name.clone(), m)?;
        }
        Ok(Self { entries })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("catalog entries serialize")
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name))
    }

    pub fn particle(&self, name: &str) -> Result<Particle, ModelError> {
        self.get(name).map(CatalogEntry::particle).ok_or_else(|| ModelError::UnknownParticle(name.to_string()))
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }
}

pub fn builtin_catalog() -> ParticleCatalog {
    ParticleCatalog::from_json(BUILTIN_CATALOG).expect("built-in catalog is valid")
}

/// A particle launched upward from `z_i` that classically turns at `z_cap`.
///
/// Launch speed and energy are derived quantities. `hbar` is carried along so
/// that classical limits and (m, ħ) scaling can be probed directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub particle: Particle,
    pub g: f64,
    pub z_i: f64,
    pub z_cap: f64,
    pub hbar: f64,
}

impl Scenario {
    pub fn new(particle: Particle, g: f64, z_i: f64, z_cap: f64) -> Result<Self, ModelError> {
        Self::with_hbar(particle, g, z_i, z_cap, HBAR)
    }

    pub fn with_hbar(particle: Particle, g: f64, z_i: f64, z_cap: f64, hbar: f64) -> Result<Self, ModelError> {
        Particle::new(particle.name.clone(), particle.mass)?;
        if !(finite("g", g)? > 0.0) {
            return Err(ModelError::NonPositiveGravity(g));
        }
        if !(finite("hbar", hbar)? > 0.0) {
            return Err(ModelError::NonPositiveHbar(hbar));
        }
        finite("z_i", z_i)?;
        finite("z_cap", z_cap)?;
        if z_cap < z_i {
            return Err(ModelError::TurningPointBelowLaunch { z_i, z_cap });
        }
        Ok(Self { particle, g, z_i, z_cap, hbar })
    }

    /// Launch from `z_i` with upward speed `v_i`.
    pub fn from_launch_speed(particle: Particle, g: f64, z_i: f64, v_i: f64) -> Result<Self, ModelError> {
        finite("v_i", v_i)?;
        let z_cap = z_i + v_i * v_i / (2.0 * g);
        Self::new(particle, g, z_i, z_cap)
    }

    /// Scenario whose dimensionless flight parameter equals `beta_q`, with
    /// the turning point at `z_cap`.
    pub fn from_beta(particle: Particle, g: f64, z_cap: f64, beta_q: f64, hbar: f64) -> Result<Self, ModelError> {
        finite("beta_q", beta_q)?;
        let l = scales_with_hbar(&particle, g, hbar)?.length;
        Self::with_hbar(particle, g, z_cap - beta_q.max(0.0) * l, z_cap, hbar)
    }

    /// Height of the flight, z_cap - z_i.
    pub fn rise(&self) -> f64 {
        self.z_cap - self.z_i
    }

    pub fn launch_speed(&self) -> f64 {
        (2.0 * self.g * self.rise()).sqrt()
    }

    /// Total energy with the potential zero at z = 0.
    pub fn energy(&self) -> f64 {
        self.particle.mass * self.g * self.z_cap
    }

    pub fn scales(&self) -> CharacteristicScales {
        scales_with_hbar(&self.particle, self.g, self.hbar).expect("scenario was validated")
    }
}

/// Natural length and time of a quantum particle under gravity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacteristicScales {
    /// L_q = (ħ² / (2 m² g))^{1/3}
    pub length: f64,
    /// T_q = (ħ / (4 m g²))^{1/3}
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionlessParams {
    /// (cst / (4 T_q))²
    pub beta_q: f64,
    /// (4/3) β_q^{3/2}
    pub alpha_q: f64,
}

/// Classical scattering time 2 sqrt(2 (z_cap - z_i) / g).
pub fn cst(scenario: &Scenario) -> f64 {
    cst_for_rise(scenario.rise(), scenario.g)
}

pub fn cst_for_rise(rise: f64, g: f64) -> f64 {
    2.0 * (2.0 * rise / g).sqrt()
}

pub fn scales(particle: &Particle, g: f64) -> Result<CharacteristicScales, ModelError> {
    scales_with_hbar(particle, g, HBAR)
}

pub fn scales_with_hbar(particle: &Particle, g: f64, hbar: f64) -> Result<CharacteristicScales, ModelError> {
    let m = particle.mass;
    if !(m > 0.0) {
        return Err(ModelError::NonPositiveMass(m));
    }
    if !(g > 0.0) {
        return Err(ModelError::NonPositiveGravity(g));
    }
    if !(hbar > 0.0) {
        return Err(ModelError::NonPositiveHbar(hbar));
    }
    Ok(CharacteristicScales {
        length: (hbar * hbar / (2.0 * m * m * g)).cbrt(),
        time: (hbar / (4.0 * m * g * g)).cbrt(),
    })
}

pub fn dimensionless(scenario: &Scenario) -> DimensionlessParams {
    let t_q = scenario.scales().time;
    let beta_q = (cst(scenario) / (4.0 * t_q)).powi(2);
    DimensionlessParams { beta_q, alpha_q: alpha_from_beta(beta_q) }
}

pub fn alpha_from_beta(beta_q: f64) -> f64 {
    4.0 / 3.0 * beta_q.powf(1.5)
}

pub fn beta_from_alpha(alpha_q: f64) -> f64 {
    (0.75 * alpha_q).powf(2.0 / 3.0)
}

/// ζ(z) = (2/3) (|z - z_cap| / L_q)^{3/2}.
pub fn zeta(z: f64, scenario: &Scenario) -> f64 {
    zeta_from_offset((z - scenario.z_cap).abs(), scenario.scales().length)
}

pub(crate) fn zeta_from_offset(offset: f64, length: f64) -> f64 {
    let u = offset / length;
    2.0 / 3.0 * u * u.sqrt()
}
