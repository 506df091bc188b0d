//! Acceptance criteria, one test each. Every test writes a single
//! `PASS`/`FAIL` line straight to stdout so the verdicts show up even when
//! libtest captures output.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use gravflight::exec::ExecMode;
use gravflight::model::{beta_from_alpha, scales, Particle, Scenario, HBAR, STANDARD_GRAVITY};
use gravflight::report::{sweep, Figure, SweepSpec, DEFAULT_MASS_FACTORS};
use gravflight::specfun::{
    airy_ai, airy_ai_prime, bessel_i_order, bessel_i_third, bessel_i_third_prime, bessel_j_order, bessel_j_third,
    bessel_j_third_prime, bessel_k_order, OrderSign, ThirdOrder,
};
use gravflight::stationary::{
    dwell_time, fall_time, high_flight_ratio, penetrate_time, psi_allowed, psi_forbidden, qst_ratio, qst_total,
    rise_time, split_allowed, split_forbidden, undercurrent_closed, withdraw_time, zero_flight_time, Method,
};
use gravflight::wavepacket::{
    bohmian_deviation, classical_trajectory, continuity_residual_with, copenhagen_deviation, default_steps,
    return_time_numeric, ReturnCondition, WavepacketParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// reference constants to 30+ digits
const GAMMA_1_3: f64 = 2.678_938_534_707_747_633_655_692_940_974_677_644;
const GAMMA_2_3: f64 = 1.354_117_939_426_400_416_945_288_028_154_513_785;

fn verdict(id: u32, ok: bool, detail: String) {
    let line = format!("{} criterion {id:>2}: {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {detail}");
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
}

fn neutron_at(beta: f64) -> Scenario {
    Scenario::from_beta(Particle::neutron(), STANDARD_GRAVITY, 0.0, beta, HBAR).unwrap()
}

#[test]
fn c01_closed_forms_match_quadrature() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for beta in [1e-4, 1e-2, 1.0, 10.0, 100.0] {
        let s = neutron_at(beta);
        let q = Method::quadrature();
        let c = Method::Closed;
        for (a, b) in [
            (rise_time(&s, c).unwrap(), rise_time(&s, q).unwrap()),
            (fall_time(&s, c).unwrap(), fall_time(&s, q).unwrap()),
            (penetrate_time(&s, c).unwrap(), penetrate_time(&s, q).unwrap()),
            (withdraw_time(&s, c).unwrap(), withdraw_time(&s, q).unwrap()),
        ] {
            worst = worst.max(rel(b, a));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        1,
        worst <= 1e-8 && secs < 10.0,
        format!("closed vs quadrature max rel err {worst:.2e} (<= 1e-8), {secs:.3} s (< 10 s)"),
    );
}

#[test]
fn c02_dwell_identity() {
    let mut worst = 0.0f64;
    for p in [Particle::electron(), Particle::neutron(), Particle::neutron().scaled(133.0).unwrap()] {
        for beta in [0.0, 1.0] {
            let l = scales(&p, STANDARD_GRAVITY).unwrap().length;
            let s = Scenario::new(p.clone(), STANDARD_GRAVITY, -beta * l, 0.0).unwrap();
            let sum = penetrate_time(&s, Method::Closed).unwrap() + withdraw_time(&s, Method::Closed).unwrap();
            worst = worst.max(rel(dwell_time(&s).unwrap(), sum));
        }
    }
    verdict(2, worst <= 1e-8, format!("dwell = penetrate + withdraw, max rel err {worst:.2e} (<= 1e-8)"));
}

#[test]
fn c03_zero_flight_constant() {
    let s = neutron_at(1e-10);
    let t_q = s.scales().time;
    let want = 4.0 * PI * t_q / (3f64.cbrt() * GAMMA_1_3).powi(2);
    let limit_err = rel(qst_total(&s).total, want);
    let ratio = zero_flight_time(&Particle::neutron(), STANDARD_GRAVITY).unwrap() / t_q;
    let printed = [("electron", 1.259e-8 / 1.496e-8), ("neutron", 1.028e-9 / 1.221e-9)];
    let table_err = printed.iter().map(|&(_, r)| (ratio - r).abs()).fold(0.0, f64::max);
    verdict(
        3,
        limit_err <= 1e-6 && table_err <= 5e-4,
        format!(
            "total at beta=1e-10 rel err {limit_err:.2e} (<= 1e-6); collision/T_q = {ratio:.10}, \
             max gap to printed ratios {table_err:.2e} (<= 5e-4)"
        ),
    );
}

#[test]
fn c04_table_time_scaling() {
    let te = scales(&Particle::electron(), STANDARD_GRAVITY).unwrap().time;
    let tn = scales(&Particle::neutron(), STANDARD_GRAVITY).unwrap().time;
    let err = rel(te / tn, 1.496e-8 / 1.221e-9);
    // absolute printed values are not reproducible; reported only
    let factor = te / 1.496e-8;
    verdict(
        4,
        err <= 1e-3,
        format!(
            "T_q(e)/T_q(n) = {:.4} vs printed {:.4}, rel err {err:.2e} (<= 1e-3); SI T_q(e) is {factor:.3e} x printed",
            te / tn,
            1.496e-8 / 1.221e-9
        ),
    );
}

#[test]
fn c05_high_flight_asymptote() {
    let start = Instant::now();
    let scaled: Vec<f64> = (0..2000)
        .map(|k| {
            let alpha = 20.0 + 180.0 * k as f64 / 1999.0;
            let beta = beta_from_alpha(alpha);
            alpha * (qst_ratio(beta).unwrap() - high_flight_ratio(alpha).unwrap()).abs()
        })
        .collect();
    let secs = start.elapsed().as_secs_f64();
    let first = scaled[..1000].iter().copied().fold(0.0, f64::max);
    let second = scaled[1000..].iter().copied().fold(0.0, f64::max);
    let ok = scaled.iter().all(|v| v.is_finite()) && second <= first && first < 1.0 / 3.0 && secs < 5.0;
    verdict(
        5,
        ok,
        format!("alpha*err max {first:.3e} on [20,110], {second:.3e} on [110,200] (no growth), {secs:.3} s (< 5 s)"),
    );
}

#[test]
fn c06_undercurrents() {
    let s = neutron_at(10.0);
    let (hbar, m, l) = (s.hbar, s.particle.mass, s.scales().length);
    let closed = hbar / (PI * m * l) * 1.5f64.powf(4.0 / 3.0);
    let mut spread = 0.0f64;
    let mut total = 0.0f64;
    let (lo, hi) = (s.z_i, s.z_cap + 10.0 * l);
    for k in 0..50 {
        let z = lo + (hi - lo) * k as f64 / 49.0;
        let (plus, minus, real) = if z <= s.z_cap {
            let (i, r) = split_allowed(z, &s).unwrap();
            (i, r, psi_allowed(z, &s).unwrap())
        } else {
            let (p, w) = split_forbidden(z, &s).unwrap();
            (p, w, psi_forbidden(z, &s).unwrap())
        };
        spread = spread.max(rel(plus.current(hbar, m), closed)).max(rel(minus.current(hbar, m), -closed));
        total = total.max(real.current(hbar, m).abs() / closed);
    }
    let lib = rel(undercurrent_closed(&s), closed);
    verdict(
        6,
        spread <= 1e-9 && total <= 1e-12 && lib <= 1e-12,
        format!("undercurrents vs closed form max rel err {spread:.2e} (<= 1e-9); real-wave current {total:.2e} of scale (<= 1e-12)"),
    );
}

#[test]
fn c07_special_function_identities() {
    let mut worst = 0.0f64;
    let w = -2.0 * (PI / 3.0).sin() / PI;
    for x in log_grid(1e-3, 1e3, 61) {
        let (jp, jm) = (bessel_j_third(OrderSign::Plus, x).unwrap(), bessel_j_third(OrderSign::Minus, x).unwrap());
        let (dp, dm) =
            (bessel_j_third_prime(OrderSign::Plus, x).unwrap(), bessel_j_third_prime(OrderSign::Minus, x).unwrap());
        worst = worst.max(rel(jp * dm - dp * jm, w / x));
        let ik = bessel_i_order(ThirdOrder::PlusOneThird, x, true).unwrap()
            * bessel_k_order(ThirdOrder::PlusTwoThirds, x, true).unwrap()
            + bessel_i_order(ThirdOrder::MinusTwoThirds, x, true).unwrap()
                * bessel_k_order(ThirdOrder::PlusOneThird, x, true).unwrap();
        worst = worst.max(rel(ik, 1.0 / x));
    }
    for x in log_grid(1e-3, 5.0, 41) {
        let (ip, im) =
            (bessel_i_third(OrderSign::Plus, x, false).unwrap(), bessel_i_third(OrderSign::Minus, x, false).unwrap());
        let (dp, dm) = (
            bessel_i_third_prime(OrderSign::Plus, x, false).unwrap(),
            bessel_i_third_prime(OrderSign::Minus, x, false).unwrap(),
        );
        worst = worst.max(rel(ip * dm - dp * im, w / x));
    }
    // connection formulas; oscillatory side measured against the local envelope
    for x in log_grid(1e-3, 1e3, 61) {
        let z = 2.0 / 3.0 * x.powf(1.5);
        let j = |o| bessel_j_order(o, z).unwrap();
        let ai = x.sqrt() / 3.0 * (j(ThirdOrder::PlusOneThird) + j(ThirdOrder::MinusOneThird));
        let aip = x / 3.0 * (j(ThirdOrder::PlusTwoThirds) - j(ThirdOrder::MinusTwoThirds));
        let env = (1.0 / (PI.sqrt() * x.powf(0.25))).max(0.355);
        let env_p = (x.powf(0.25) / PI.sqrt()).max(0.2588);
        worst = worst.max((ai - airy_ai(-x).unwrap()).abs() / env);
        worst = worst.max((aip - airy_ai_prime(-x).unwrap()).abs() / env_p);
    }
    for x in log_grid(1e-3, 50.0, 61) {
        let z = 2.0 / 3.0 * x.powf(1.5);
        let ai = (x / 3.0).sqrt() / PI * bessel_k_order(ThirdOrder::PlusOneThird, z, false).unwrap();
        let aip = -x / (PI * 3f64.sqrt()) * bessel_k_order(ThirdOrder::PlusTwoThirds, z, false).unwrap();
        worst = worst.max(rel(ai, airy_ai(x).unwrap())).max(rel(aip, airy_ai_prime(x).unwrap()));
    }
    let ai0 = 1.0 / (3f64.powf(2.0 / 3.0) * GAMMA_2_3);
    let aip0 = -1.0 / (3f64.cbrt() * GAMMA_1_3);
    let origin = rel(airy_ai(0.0).unwrap(), ai0).max(rel(airy_ai_prime(0.0).unwrap(), aip0));
    verdict(
        7,
        worst <= 1e-9 && origin <= 1e-12,
        format!("Wronskians and connections max rel err {worst:.2e} (<= 1e-9); Ai(0), Ai'(0) rel err {origin:.2e} (<= 1e-12)"),
    );
}

#[test]
fn c08_wavepacket_return_and_continuity() {
    let p = WavepacketParams::new(1.674e-27, STANDARD_GRAVITY, 1e-6, 0.0, 1.0).unwrap();
    let c = p.classical_limit();
    let classical = rel(return_time_numeric(&c, ReturnCondition::LaunchValue).unwrap(), 2.0 * c.v_i / c.g);

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut log_uniform = |lo: f64, hi: f64| rng.gen_range(f64::ln(lo)..f64::ln(hi)).exp();
    let mut early = 0usize;
    for _ in 0..100 {
        let (m, d, v, z) =
            (log_uniform(1e-27, 1e-24), log_uniform(1e-6, 1e-3), log_uniform(0.5, 5.0), log_uniform(1e-3, 1.0));
        let q = WavepacketParams::new(m, STANDARD_GRAVITY, d, z, v).unwrap();
        match return_time_numeric(&q, ReturnCondition::LaunchValue) {
            Ok(t) if t >= 2.0 * v / STANDARD_GRAVITY => {}
            _ => early += 1,
        }
    }

    let t = 2.0 * p.dispersion_time();
    let z = classical_trajectory(t, &p) + 0.8 * p.d;
    let (h_t, h_z) = default_steps(t, &p);
    let r = |k: f64| continuity_residual_with(t, z, &p, k * h_t, k * h_z).unwrap().residual;
    let (r16, r8, r4) = (r(16.0), r(8.0), r(4.0));
    let orders = [(r16 / r8).log2(), (r8 / r4).log2()];
    let second_order = orders.iter().all(|o| (o - 2.0).abs() < 0.1);
    verdict(
        8,
        classical <= 1e-12 && early == 0 && second_order,
        format!(
            "hbar=0 return rel err {classical:.2e} (<= 1e-12); {early}/100 random packets return early; \
             continuity orders {:.3}, {:.3}",
            orders[0], orders[1]
        ),
    );
}

#[test]
fn c09_interpretation_gap_scaling() {
    let packets = [
        WavepacketParams::new(1.674e-27, STANDARD_GRAVITY, 1e-6, 0.0, 1.0).unwrap(),
        WavepacketParams::new(9.109e-31, STANDARD_GRAVITY, 1e-3, 0.0, 3.0).unwrap(),
        WavepacketParams::new(1e-25, 1.62, 1e-5, 1.0, 0.2).unwrap(),
    ];
    let exponent =
        |p: &WavepacketParams, f: fn(&WavepacketParams) -> f64| (f(p) / f(&p.with_planck(p.hbar / 2.0))).log2();
    let mut b_err = 0.0f64;
    let mut c_err = 0.0f64;
    for p in &packets {
        b_err = b_err.max((exponent(p, bohmian_deviation) - 1.0).abs());
        c_err = c_err.max((exponent(p, copenhagen_deviation) - 2.0).abs());
    }
    verdict(
        9,
        b_err <= 0.05 && c_err <= 0.05,
        format!("hbar exponents: Bohmian off 1 by {b_err:.2e}, Copenhagen off 2 by {c_err:.2e} (<= 0.05)"),
    );
}

#[test]
fn c10_figure_data() {
    let spec = SweepSpec::new(Figure::Three, 0.0, 400.0, 401);
    let rows = sweep(&spec, ExecMode::Parallel).unwrap();
    let series = |k: f64| rows.iter().filter(move |r| r.mass_factor == k);

    let tail = series(1.0).filter(|r| r.cst_over_tq > 50.0).map(|r| (r.value - 1.0).abs()).fold(0.0, f64::max);

    // envelope of |ratio - 1| over a fixed CST window, per mass variant
    let envelope = |k: f64| {
        series(k).filter(|r| (10.0..=30.0).contains(&r.cst_over_tq)).map(|r| (r.value - 1.0).abs()).fold(0.0, f64::max)
    };
    let (light, mid, heavy) = (envelope(0.1), envelope(1.0), envelope(10.0));
    let ordered = light > mid && mid > heavy;

    let fig2 = sweep(&SweepSpec::new(Figure::Two, 0.0, 4.0, 5), ExecMode::Sequential).unwrap();
    let t_ref = scales(&Particle::neutron(), STANDARD_GRAVITY).unwrap().time;
    let mut intercept = 0.0f64;
    for k in DEFAULT_MASS_FACTORS {
        let row = fig2.iter().find(|r| r.mass_factor == k && r.cst_over_tq == 0.0).unwrap();
        let p = Particle::neutron().scaled(k).unwrap();
        intercept = intercept.max(rel(row.value, zero_flight_time(&p, STANDARD_GRAVITY).unwrap() / t_ref));
    }
    verdict(
        10,
        tail < 0.02 && ordered && intercept < 1e-12,
        format!(
            "fig3 max |ratio-1| for cst/T_q>50: {tail:.2e} (< 0.02); envelopes m/10 {light:.3e} > m {mid:.3e} > 10m {heavy:.3e}; \
             fig2 intercepts rel err {intercept:.2e}"
        ),
    );
}
