//! Cross-checks between independent evaluation paths: special-function
//! identities, closed forms against quadrature, the dwell identity,
//! current structure, and wavepacket limits.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exec::{map, ExecMode};
use crate::model::{Particle, Scenario, HBAR, STANDARD_GRAVITY};
use crate::report::{published_times, table_two_row};
use crate::specfun::{
    airy_ai, airy_ai_prime, bessel_i_order, bessel_i_third, bessel_i_third_prime, bessel_j_order, bessel_j_third,
    bessel_j_third_prime, bessel_k_order, OrderSign, ThirdOrder,
};
use crate::stationary::{
    currents_at, dwell_time, fall_time, penetrate_time, psi_allowed, qst_ratio, qst_total, rise_time, split_allowed,
    split_forbidden, undercurrent_closed, withdraw_time, zero_flight_time_with_hbar, Method, QuadOptions,
};
use crate::wavepacket::{
    bohmian_deviation, classical_trajectory, continuity_residual, continuity_residual_with, copenhagen_deviation,
    default_steps, flow_from_wavefunction, flow_ratio, normalization, return_time_numeric, ReturnCondition,
    WavepacketParams,
};

/// β_q values at which closed-form and quadrature times are compared.
pub const BETA_GRID: [f64; 5] = [1e-4, 1e-2, 1.0, 10.0, 100.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Closed form against quadrature, dwell identity.
    pub time_rel_tol: f64,
    /// Special-function identities and current structure.
    pub identity_rel_tol: f64,
    /// Tolerance requested from the integrator.
    pub quad_rel_tol: f64,
    pub seed: u64,
    pub sweep_points: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { time_rel_tol: 1e-8, identity_rel_tol: 1e-9, quad_rel_tol: 1e-11, seed: 20_240_601, sweep_points: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub allowed: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, measured: f64, allowed: f64) -> Self {
        Self { name: name.into(), measured, allowed, passed: measured <= allowed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp()).collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |m, v| if v.is_nan() { f64::INFINITY } else { m.max(v) })
}

// ---------------------------------------------------------------------------
// special functions

fn specfun_checks(opts: &VerifyOptions) -> Vec<Check> {
    let tol = opts.identity_rel_tol;
    let mut out = Vec::new();

    let ai0 = 0.355_028_053_887_817_2;
    let aip0 = -0.258_819_403_792_806_8;
    out.push(Check::new(
        "specfun.airy_at_origin",
        rel(airy_ai(0.0).unwrap(), ai0).max(rel(airy_ai_prime(0.0).unwrap(), aip0)),
        1e-12,
    ));

    // W[J_ν, J_{-ν}] = -2 sin(νπ)/(πx)
    let w = -2.0 * (PI / 3.0).sin() / PI;
    let err = max_of(log_grid(1e-3, 1e3, 61).into_iter().map(|x| {
        let jp = bessel_j_third(OrderSign::Plus, x).unwrap();
        let jm = bessel_j_third(OrderSign::Minus, x).unwrap();
        let dp = bessel_j_third_prime(OrderSign::Plus, x).unwrap();
        let dm = bessel_j_third_prime(OrderSign::Minus, x).unwrap();
        rel(jp * dm - dp * jm, w / x)
    }));
    out.push(Check::new("specfun.wronskian_j", err, tol));

    // W[I_ν, I_{-ν}] = -2 sin(νπ)/(πx); the e^{2x} cancellation limits this
    // form to moderate x
    let err = max_of(log_grid(1e-3, 5.0, 41).into_iter().map(|x| {
        let ip = bessel_i_third(OrderSign::Plus, x, false).unwrap();
        let im = bessel_i_third(OrderSign::Minus, x, false).unwrap();
        let dp = bessel_i_third_prime(OrderSign::Plus, x, false).unwrap();
        let dm = bessel_i_third_prime(OrderSign::Minus, x, false).unwrap();
        rel(ip * dm - dp * im, w / x)
    }));
    out.push(Check::new("specfun.wronskian_i", err, tol));

    // I_{1/3} K_{2/3} + I_{-2/3} K_{1/3} = 1/x, stable at every x
    let err = max_of(log_grid(1e-3, 1e3, 61).into_iter().map(|x| {
        let a = bessel_i_order(ThirdOrder::PlusOneThird, x, true).unwrap()
            * bessel_k_order(ThirdOrder::PlusTwoThirds, x, true).unwrap();
        let b = bessel_i_order(ThirdOrder::MinusTwoThirds, x, true).unwrap()
            * bessel_k_order(ThirdOrder::PlusOneThird, x, true).unwrap();
        rel(a + b, 1.0 / x)
    }));
    out.push(Check::new("specfun.wronskian_ik", err, tol));

    // Ai(-x) = (√x/3)[J_{1/3} + J_{-1/3}](ζ), Ai'(-x) = (x/3)[J_{2/3} - J_{-2/3}](ζ),
    // measured against the local envelope
    let err = max_of(log_grid(1e-3, 1e3, 61).into_iter().map(|x| {
        let z = 2.0 / 3.0 * x.powf(1.5);
        let j = |o| bessel_j_order(o, z).unwrap();
        let ai = x.sqrt() / 3.0 * (j(ThirdOrder::PlusOneThird) + j(ThirdOrder::MinusOneThird));
        let aip = x / 3.0 * (j(ThirdOrder::PlusTwoThirds) - j(ThirdOrder::MinusTwoThirds));
        let env = 1.0 / (PI.sqrt() * x.powf(0.25));
        let env_p = x.powf(0.25) / PI.sqrt();
        ((ai - airy_ai(-x).unwrap()).abs() / env.max(airy_ai(0.0).unwrap()))
            .max((aip - airy_ai_prime(-x).unwrap()).abs() / env_p.max(-airy_ai_prime(0.0).unwrap()))
    }));
    out.push(Check::new("specfun.connection_allowed", err, tol));

    // Ai(x) = (1/π)√(x/3) K_{1/3}(ζ), Ai'(x) = -(x/(π√3)) K_{2/3}(ζ)
    let err = max_of(log_grid(1e-3, 50.0, 61).into_iter().map(|x| {
        let z = 2.0 / 3.0 * x.powf(1.5);
        let ai = (x / 3.0).sqrt() / PI * bessel_k_order(ThirdOrder::PlusOneThird, z, false).unwrap();
        let aip = -x / (PI * 3f64.sqrt()) * bessel_k_order(ThirdOrder::PlusTwoThirds, z, false).unwrap();
        rel(ai, airy_ai(x).unwrap()).max(rel(aip, airy_ai_prime(x).unwrap()))
    }));
    out.push(Check::new("specfun.connection_forbidden", err, tol));
    out
}

// ---------------------------------------------------------------------------
// stationary states

fn neutron_at_beta(beta: f64) -> Scenario {
    Scenario::from_beta(Particle::neutron(), STANDARD_GRAVITY, 0.0, beta, HBAR).expect("valid")
}

/// Largest relative gap between closed-form and quadrature segment times.
pub fn segment_gap(s: &Scenario, quad: QuadOptions) -> Result<f64, crate::stationary::StationaryError> {
    let q = Method::Quadrature(quad);
    let c = Method::Closed;
    let pairs = [
        (rise_time(s, c)?, rise_time(s, q)?),
        (fall_time(s, c)?, fall_time(s, q)?),
        (penetrate_time(s, c)?, penetrate_time(s, q)?),
        (withdraw_time(s, c)?, withdraw_time(s, q)?),
    ];
    Ok(max_of(pairs.iter().map(|&(a, b)| rel(b, a))))
}

fn stationary_checks(opts: &VerifyOptions, mode: ExecMode) -> Vec<Check> {
    let mut out = Vec::new();
    let quad = QuadOptions { rel_tol: opts.quad_rel_tol, norm: 1.0 };

    let gaps = map(mode, &BETA_GRID, |&b| segment_gap(&neutron_at_beta(b), quad));
    for (b, gap) in BETA_GRID.iter().zip(gaps) {
        out.push(Check::new(
            format!("stationary.closed_vs_quadrature[beta={b:e}]"),
            gap.unwrap_or(f64::INFINITY),
            opts.time_rel_tol,
        ));
    }

    for p in [Particle::electron(), Particle::neutron(), Particle::neutron().scaled(133.0).unwrap()] {
        let s = Scenario::new(p.clone(), STANDARD_GRAVITY, 0.0, 0.0).unwrap();
        let dwell = dwell_time(&s).unwrap_or(f64::NAN);
        let sum = penetrate_time(&s, Method::Closed).unwrap() + withdraw_time(&s, Method::Closed).unwrap();
        out.push(Check::new(format!("stationary.dwell_identity[{}]", p.name), rel(dwell, sum), opts.time_rel_tol));
    }

    // undercurrents on 50 points over [z_i, z_cap + 10 L_q]
    let s = neutron_at_beta(10.0);
    let l = s.scales().length;
    let j = undercurrent_closed(&s);
    let (hbar, m) = (s.hbar, s.particle.mass);
    let (lo, hi) = (s.z_i, s.z_cap + 10.0 * l);
    let mut worst = 0.0f64;
    let mut total = 0.0f64;
    for k in 0..50 {
        let z = lo + (hi - lo) * k as f64 / 49.0;
        let (a, b) = if z <= s.z_cap { split_allowed(z, &s).unwrap() } else { split_forbidden(z, &s).unwrap() };
        worst = worst.max(rel(a.current(hbar, m), j)).max(rel(b.current(hbar, m), -j));
        total = total.max(((a + b).current(hbar, m) / j).abs());
    }
    out.push(Check::new("stationary.undercurrents_constant", worst, opts.identity_rel_tol));
    out.push(Check::new("stationary.total_current_zero", total, 1e-12));
    let c = currents_at(&s, 2.0);
    out.push(Check::new("stationary.undercurrent_antisymmetry", rel(-c.j_r, c.j_i).max(rel(-c.j_w, c.j_p)), 1e-12));
    let a = psi_allowed(s.z_cap, &s).unwrap();
    out.push(Check::new("stationary.real_wave_no_current", a.current(hbar, m).abs() / j, 1e-12));

    // zero-flight limit of the total
    let tiny = neutron_at_beta(1e-10);
    let zf = zero_flight_time_with_hbar(&tiny.particle, tiny.g, tiny.hbar).unwrap();
    out.push(Check::new("stationary.zero_flight_limit", rel(qst_total(&tiny).total, zf), 1e-6));

    // high-flight asymptote: α |exact - (1 - cos α/(3α))| stays bounded
    let scaled: Vec<f64> = (0..2000)
        .map(|k| {
            let alpha = 20.0 + 180.0 * k as f64 / 1999.0;
            let beta = (0.75 * alpha).powf(2.0 / 3.0);
            let exact = qst_ratio(beta).unwrap();
            alpha * (exact - (1.0 - alpha.cos() / (3.0 * alpha))).abs()
        })
        .collect();
    let first = max_of(scaled[..1000].iter().copied());
    let second = max_of(scaled[1000..].iter().copied());
    out.push(Check::new("stationary.high_flight_bounded", max_of(scaled.iter().copied()), 0.05));
    out.push(Check::new("stationary.high_flight_no_growth", second / first, 1.0));

    // normalization cancels
    let s = neutron_at_beta(1.0);
    let one = rise_time(&s, Method::Quadrature(quad)).unwrap() + penetrate_time(&s, Method::Quadrature(quad)).unwrap();
    let seven_q = QuadOptions { norm: 7.0, ..quad };
    let seven =
        rise_time(&s, Method::Quadrature(seven_q)).unwrap() + penetrate_time(&s, Method::Quadrature(seven_q)).unwrap();
    out.push(Check::new("stationary.normalization_cancels", rel(seven, one), 1e-12));

    // (m, ħ) → (κm, κħ)
    let base = Scenario::with_hbar(Particle::neutron(), STANDARD_GRAVITY, 0.0, 2e-5, HBAR).unwrap();
    let kappa = 11.0;
    let heavy =
        Scenario::with_hbar(Particle::neutron().scaled(kappa).unwrap(), STANDARD_GRAVITY, 0.0, 2e-5, kappa * HBAR)
            .unwrap();
    out.push(Check::new(
        "stationary.mass_planck_invariance",
        rel(qst_total(&heavy).total, qst_total(&base).total),
        1e-13,
    ));
    out
}

// ---------------------------------------------------------------------------
// wavepackets

/// Log-uniform random packets that return within the search horizon.
pub fn random_packets(seed: u64, n: usize) -> Vec<WavepacketParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log_uniform = |lo: f64, hi: f64| rng.gen_range(lo.ln()..hi.ln()).exp();
    (0..n)
        .map(|_| {
            let m = log_uniform(1e-27, 1e-24);
            let d = log_uniform(1e-6, 1e-3);
            let v = log_uniform(0.5, 5.0);
            let z = log_uniform(1e-3, 1.0);
            WavepacketParams::new(m, STANDARD_GRAVITY, d, z, v).expect("sampled in range")
        })
        .collect()
}

/// log2 of deviation(ħ)/deviation(ħ/2).
pub fn planck_exponent(p: &WavepacketParams, deviation: impl Fn(&WavepacketParams) -> f64) -> f64 {
    (deviation(p) / deviation(&p.with_planck(p.hbar / 2.0))).log2()
}

/// Relative excess of the numeric Bohmian return over the classical time.
pub fn numeric_return_deviation(p: &WavepacketParams) -> f64 {
    return_time_numeric(p, ReturnCondition::LaunchValue).map(|t| t / p.cst() - 1.0).unwrap_or(f64::NAN)
}

fn wavepacket_checks(opts: &VerifyOptions, mode: ExecMode) -> Vec<Check> {
    let mut out = Vec::new();
    let p = WavepacketParams::new(1.674e-27, STANDARD_GRAVITY, 1e-6, 0.0, 1.0).unwrap();

    let c = p.classical_limit();
    let t = return_time_numeric(&c, ReturnCondition::LaunchValue).unwrap_or(f64::NAN);
    out.push(Check::new("wavepacket.classical_return", rel(t, c.cst()), 1e-12));

    let sweep = random_packets(opts.seed, opts.sweep_points);
    let early = map(mode, &sweep, |q| match return_time_numeric(q, ReturnCondition::LaunchValue) {
        Ok(t) => (1.0 - t / q.cst()).max(0.0),
        Err(_) => f64::INFINITY,
    });
    out.push(Check::new("wavepacket.return_not_before_classical", max_of(early.into_iter()), 0.0));

    // flow ratio against J/R from Ψ itself
    let light = WavepacketParams::new(1e-30, 1.0, 1e-3, 0.0, 0.01).unwrap();
    let tau = light.dispersion_time();
    let mut err = 0.0f64;
    for t in [0.2 * tau, tau, 4.0 * tau] {
        let zc = classical_trajectory(t, &light);
        for k in -4..=4 {
            let z = zc + 0.4 * k as f64 * light.d * (1.0 + (t / tau).powi(2)).sqrt();
            let fp = flow_from_wavefunction(t, z, &light).unwrap();
            err = err.max(rel(fp.j / fp.r, flow_ratio(t, z, &light)));
        }
    }
    out.push(Check::new("wavepacket.flow_ratio_matches_wavefunction", err, opts.identity_rel_tol));

    let mut worst = 0.0f64;
    for t in [0.5, 1.0, 3.0].map(|k| k * p.dispersion_time()) {
        let zc = classical_trajectory(t, &p);
        for k in -2..=2 {
            let r = continuity_residual(t, zc + 0.6 * k as f64 * p.d + 0.1 * p.d, &p).unwrap();
            worst = worst.max(r.relative());
        }
    }
    out.push(Check::new("wavepacket.continuity_residual", worst, 1e-6));

    let t = 2.0 * p.dispersion_time();
    let z = classical_trajectory(t, &p) + 0.8 * p.d;
    let (h_t, h_z) = default_steps(t, &p);
    let coarse = continuity_residual_with(t, z, &p, 8.0 * h_t, 8.0 * h_z).unwrap().residual;
    let fine = continuity_residual_with(t, z, &p, 4.0 * h_t, 4.0 * h_z).unwrap().residual;
    out.push(Check::new("wavepacket.continuity_second_order", ((coarse / fine).log2() - 2.0).abs(), 0.1));

    out.push(Check::new(
        "wavepacket.normalization",
        (normalization(p.dispersion_time(), &p, 1e-12).unwrap_or(f64::NAN) - 1.0).abs(),
        1e-10,
    ));

    out.push(Check::new(
        "wavepacket.bohmian_planck_exponent",
        (planck_exponent(&p, bohmian_deviation) - 1.0).abs(),
        0.05,
    ));
    out.push(Check::new(
        "wavepacket.copenhagen_planck_exponent",
        (planck_exponent(&p, copenhagen_deviation) - 2.0).abs(),
        0.05,
    ));
    // the numeric return is first order in ħ once dispersion dominates the flight
    let dispersive = WavepacketParams::new(1.674e-27, STANDARD_GRAVITY, 1e-7, 0.0, 100.0).unwrap();
    out.push(Check::new(
        "wavepacket.numeric_return_planck_exponent",
        (planck_exponent(&dispersive, numeric_return_deviation) - 1.0).abs(),
        0.05,
    ));
    out
}

// ---------------------------------------------------------------------------
// published numbers

fn table_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let e = table_two_row(&Particle::electron(), STANDARD_GRAVITY).unwrap();
    let n = table_two_row(&Particle::neutron(), STANDARD_GRAVITY).unwrap();
    for row in [&e, &n] {
        let printed = published_times(&row.particle).unwrap();
        out.push(Check::new(
            format!("table.collision_ratio[{}]", row.particle),
            (row.collision_over_tq - printed.collision / printed.t_q).abs(),
            5e-4,
        ));
    }
    let (pe, pn) = (published_times("electron").unwrap(), published_times("neutron").unwrap());
    out.push(Check::new("table.time_scale_ratio", rel(e.t_q / n.t_q, pe.t_q / pn.t_q), 1e-3));
    out
}

pub fn run(opts: &VerifyOptions, mode: ExecMode) -> VerifyReport {
    let mut checks = specfun_checks(opts);
    checks.extend(stationary_checks(opts, mode));
    checks.extend(wavepacket_checks(opts, mode));
    checks.extend(table_checks());
    VerifyReport { checks }
}
