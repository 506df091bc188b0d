//! Airy function of the first kind and its derivative on the real line.
//!
//! Three branches:
//!
//! * `x >= 9`: the exponentially decaying asymptotic expansion.
//! * `x <= -9`: the modulus/phase expansion with the phase carried in
//!   double-double so that accuracy holds out to |x| = 1e6.
//! * `-9 < x < 9`: a single Taylor step of at most half a unit from a table
//!   of anchor values at the integers. The anchors are generated by stepping
//!   the ODE `y'' = x y` with exact Taylor coefficients: from the asymptotic
//!   values at x = 10 downwards (the stable direction for Ai), and from the
//!   closed forms at x = 0 into the oscillatory region.
//!
//! The Maclaurin series is kept as an independent reference for tests; it
//! is not used for evaluation because of cancellation for |x| > 2.

use std::f64::consts::PI;
use std::sync::OnceLock;

use super::gamma::{GAMMA_ONE_THIRD, GAMMA_TWO_THIRDS};
use super::phase::{airy_phase, reduce, sin_cos};
use super::{SpecFunError, SpecFunResult};

/// Largest accepted |x|.
pub const AIRY_MAX_ARG: f64 = 1e6;
/// Where the asymptotic expansions take over.
pub const AIRY_ASYMPTOTIC_SWITCH: f64 = 9.0;

const ANCHOR_MIN: i32 = -9;
const ANCHOR_MAX: i32 = 9;
const CHAIN_START: f64 = 10.0;

/// Ai(0) = 1 / (3^{2/3} Γ(2/3)).
pub fn ai_zero() -> f64 {
    1.0 / (3f64.powf(2.0 / 3.0) * GAMMA_TWO_THIRDS)
}

/// Ai'(0) = -1 / (3^{1/3} Γ(1/3)).
pub fn ai_prime_zero() -> f64 {
    -1.0 / (3f64.cbrt() * GAMMA_ONE_THIRD)
}

fn check(x: f64) -> Result<(), SpecFunError> {
    if x.is_nan() || x.abs() > AIRY_MAX_ARG {
        Err(SpecFunError::OutOfRange { function: "Ai", arg: x })
    } else {
        Ok(())
    }
}

/// Ai(x).
pub fn airy_ai(x: f64) -> Result<f64, SpecFunError> {
    check(x)?;
    Ok(airy_pair(x).0)
}

/// Ai'(x).
pub fn airy_ai_prime(x: f64) -> Result<f64, SpecFunError> {
    check(x)?;
    Ok(airy_pair(x).1)
}

/// Ai(x) with an error estimate. The estimate is a bound relative to the
/// local envelope of the function, which is the meaningful scale near zeros.
pub fn airy_ai_checked(x: f64) -> Result<SpecFunResult, SpecFunError> {
    check(x)?;
    let (ai, _) = airy_pair(x);
    let envelope = if x < 0.0 { (-x).powf(-0.25) / PI.sqrt() } else { ai.abs() };
    let rel = if x.abs() <= 50.0 { 1e-13 } else { 1e-10 };
    Ok(SpecFunResult { value: ai, est_error: rel * envelope })
}

/// (Ai(x), Ai'(x)) without range checks.
pub(crate) fn airy_pair(x: f64) -> (f64, f64) {
    if x >= AIRY_ASYMPTOTIC_SWITCH {
        asymptotic_positive(x)
    } else if x <= -AIRY_ASYMPTOTIC_SWITCH {
        asymptotic_negative(-x)
    } else {
        let node = x.round();
        let (ai, aip) = anchor(node as i32);
        if x == node {
            (ai, aip)
        } else {
            taylor_step(node, ai, aip, x - node)
        }
    }
}

fn anchor(k: i32) -> (f64, f64) {
    static ANCHORS: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    let table = ANCHORS.get_or_init(build_anchors);
    table[(k - ANCHOR_MIN) as usize]
}

fn build_anchors() -> Vec<(f64, f64)> {
    let len = (ANCHOR_MAX - ANCHOR_MIN + 1) as usize;
    let mut table = vec![(0.0, 0.0); len];
    let idx = |k: i32| (k - ANCHOR_MIN) as usize;

    let (mut y, mut yp) = asymptotic_positive(CHAIN_START);
    let mut x = CHAIN_START;
    while x > 0.5 {
        let (ny, nyp) = taylor_step(x, y, yp, -1.0);
        x -= 1.0;
        y = ny;
        yp = nyp;
        if (x as i32) <= ANCHOR_MAX {
            table[idx(x as i32)] = (y, yp);
        }
    }

    table[idx(0)] = (ai_zero(), ai_prime_zero());
    let (mut y, mut yp) = (ai_zero(), ai_prime_zero());
    for k in 0..-ANCHOR_MIN {
        let x0 = -(k as f64);
        let (ny, nyp) = taylor_step(x0, y, yp, -1.0);
        y = ny;
        yp = nyp;
        table[idx(-(k + 1))] = (y, yp);
    }
    table
}

/// Advance (y, y') of `y'' = x y` from `x0` to `x0 + h` by summing the
/// Taylor series about `x0`.
fn taylor_step(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    // a_m = (x0 a_{m-2} + a_{m-3}) / (m (m - 1)); window holds a_{m-3..m-1}
    let mut window = [y, yp, x0 * y / 2.0];
    let mut sum = window[0] + h * (window[1] + h * window[2]);
    let mut dsum = window[1] + 2.0 * h * window[2];
    let mut hpow = h * h;
    let mut small = 0;
    for m in 3..200usize {
        let am = (x0 * window[1] + window[0]) / ((m * (m - 1)) as f64);
        let term = am * hpow * h;
        let dterm = m as f64 * am * hpow;
        sum += term;
        dsum += dterm;
        window = [window[1], window[2], am];
        hpow *= h;
        if term.abs() <= 1e-18 * sum.abs() && dterm.abs() <= 1e-18 * dsum.abs() {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (sum, dsum)
}

/// Coefficients u_k of the Airy asymptotic expansions, and the companion
/// v_k = -(6k+1)/(6k-1) u_k.
fn airy_coefficients() -> &'static [(f64, f64)] {
    static COEFFS: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = Vec::with_capacity(80);
        let mut u = 1.0f64;
        out.push((1.0, 1.0));
        for k in 1..80 {
            let kf = k as f64;
            u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
            let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
            out.push((u, v));
        }
        out
    })
}

/// Σ (sign)^k c_k / ζ^k truncated at the smallest term.
fn asymptotic_sum(zeta: f64, alternate: bool, pick: impl Fn(&(f64, f64)) -> f64) -> f64 {
    let coeffs = airy_coefficients();
    let inv = 1.0 / zeta;
    let mut sum = 0.0;
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for (k, c) in coeffs.iter().enumerate() {
        let sign = if alternate && k % 2 == 1 { -1.0 } else { 1.0 };
        let term = sign * pick(c) * pw;
        if term.abs() > last {
            break;
        }
        sum += term;
        last = term.abs();
        if last <= 1e-17 * sum.abs() {
            break;
        }
        pw *= inv;
    }
    sum
}

fn asymptotic_positive(x: f64) -> (f64, f64) {
    let zeta = airy_phase(x).to_f64();
    let pref = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    let s_u = asymptotic_sum(zeta, true, |c| c.0);
    let s_v = asymptotic_sum(zeta, true, |c| c.1);
    (pref / q * s_u, -pref * q * s_v)
}

/// Ai(-x), Ai'(-x) for x >= 9.
fn asymptotic_negative(x: f64) -> (f64, f64) {
    let phase = airy_phase(x);
    let zeta = phase.to_f64();
    let (s, c) = sin_cos(reduce(phase, 1.0));
    let inv = 1.0 / zeta;
    let coeffs = airy_coefficients();
    // even and odd parts with alternating signs (-1)^k on the k-th pair
    let (mut p_u, mut q_u, mut p_v, mut q_v) = (0.0, 0.0, 0.0, 0.0);
    let mut pw = 1.0;
    let mut last = f64::INFINITY;
    for (k, &(u, v)) in coeffs.iter().enumerate() {
        let sign = if (k / 2) % 2 == 1 { -1.0 } else { 1.0 };
        let tu = sign * u * pw;
        let tv = sign * v * pw;
        let mag = tu.abs().max(tv.abs());
        if mag > last {
            break;
        }
        if k % 2 == 0 {
            p_u += tu;
            p_v += tv;
        } else {
            q_u += tu;
            q_v += tv;
        }
        last = mag;
        if mag <= 1e-17 {
            break;
        }
        pw *= inv;
    }
    let q = x.powf(0.25);
    let ai = (c * p_u + s * q_u) / (PI.sqrt() * q);
    let aip = q * (s * p_v - c * q_v) / PI.sqrt();
    (ai, aip)
}

/// Maclaurin series for (Ai, Ai'); reference implementation for tests.
#[cfg(test)]
pub(crate) fn maclaurin(x: f64, terms: usize) -> (f64, f64) {
    let c1 = ai_zero();
    let c2 = -ai_prime_zero();
    let x3 = x * x * x;
    let (mut f, mut g) = (1.0, x);
    let (mut tf, mut tg) = (1.0, x);
    let (mut df, mut dg) = (0.0, 1.0);
    let (mut tdf, mut tdg) = (x * x / 2.0, 1.0);
    df += tdf;
    for k in 1..terms {
        let kf = k as f64;
        tf *= x3 / ((3.0 * kf) * (3.0 * kf - 1.0));
        tg *= x3 / ((3.0 * kf) * (3.0 * kf + 1.0));
        f += tf;
        g += tg;
        tdg *= x3 / ((3.0 * kf) * (3.0 * kf - 2.0));
        dg += tdg;
        if k >= 2 {
            tdf *= x3 / ((3.0 * kf - 3.0) * (3.0 * kf - 1.0));
            df += tdf;
        }
    }
    (c1 * f - c2 * g, c1 * df - c2 * dg)
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit reference values (x, Ai, Ai')
    const REFERENCE: &[(f64, f64, f64)] = &[
        (-1000.0, 0.055_971_895_773_019_918_842, 2.633_071_019_524_128_731_1),
        (-100.0, 0.176_753_393_239_552_878_09, -0.242_297_031_660_583_805_4),
        (-50.0, -0.161_881_423_612_320_923_92, 0.968_989_837_276_749_087_14),
        (-30.0, -0.087_968_188_456_842_162_833, 1.228_620_602_637_485_134_7),
        (-20.0, -0.176_406_127_077_984_689_59, 0.892_862_856_736_471_238_4),
        (-12.0, -0.066_555_175_054_373_129_474, 1.023_110_453_367_970_729_9),
        (-9.5, 0.319_103_247_719_128_201_38, -0.108_095_318_811_871_239),
        (-9.0, -0.022_133_721_547_341_403_674, -0.975_663_980_926_331_594_71),
        (-8.7, -0.269_204_540_700_509_724_6, -0.562_976_849_501_852_995_45),
        (-5.0, 0.350_761_009_024_114_319_79, 0.327_192_818_554_443_136_79),
        (-2.0, 0.227_407_428_201_685_575_99, 0.618_259_020_741_691_041_04),
        (-1.0, 0.535_560_883_292_352_118_8, -0.010_160_567_116_645_209_395),
        (-0.3, 0.430_903_095_285_580_855_6, -0.240_545_127_258_154_610_17),
        (0.4, 0.254_742_354_295_676_340_84, -0.235_832_034_419_208_215_01),
        (1.0, 0.135_292_416_312_881_415_52, -0.159_147_441_296_793_212_79),
        (2.5, 0.015_725_923_380_470_489_995, -0.026_250_881_035_903_230_365),
        (5.0, 1.083_444_281_360_744_173_5e-4, -2.474_138_908_684_624_76e-4),
        (8.2, 2.639_741_834_028_283_756_1e-8, -7.637_532_984_186_194_507_8e-8),
        (9.0, 2.471_168_430_872_489_843_3e-9, -7.480_641_389_658_946_412_8e-9),
        (9.5, 5.330_263_704_617_491_626_6e-10, -1.656_639_459_374_066_626_3e-9),
        (12.0, 1.393_184_688_875_360_839e-13, -4.854_736_554_985_308_463e-13),
        (20.0, 1.691_672_868_670_540_313_6e-27, -7.586_391_625_748_354_960_5e-27),
        (50.0, 4.584_941_724_074_828_478_3e-104, -3.244_331_819_828_799_296_1e-103),
    ];

    fn envelope(x: f64) -> (f64, f64) {
        if x < -1.0 {
            let q = (-x).powf(0.25);
            (1.0 / (PI.sqrt() * q), q / PI.sqrt())
        } else {
            (f64::NAN, f64::NAN)
        }
    }

    #[test]
    fn closed_forms_at_zero() {
        assert!((airy_ai(0.0).unwrap() - 0.355_028_053_887_817_24).abs() < 1e-16);
        assert!((airy_ai_prime(0.0).unwrap() + 0.258_819_403_792_806_8).abs() < 1e-16);
    }

    #[test]
    fn matches_reference_table() {
        for &(x, ai, aip) in REFERENCE {
            let (got, gotp) = airy_pair(x);
            let (env, envp) = envelope(x);
            let (scale, scalep) = if env.is_nan() { (ai.abs(), aip.abs()) } else { (env, envp) };
            let tol = if x.abs() <= 50.0 { 1e-12 } else { 1e-9 };
            assert!((got - ai).abs() <= tol * scale, "Ai({x}) = {got}, want {ai}");
            assert!((gotp - aip).abs() <= tol * scalep, "Ai'({x}) = {gotp}, want {aip}");
        }
    }

    #[test]
    fn far_oscillatory_argument() {
        let (ai, aip) = airy_pair(-1e6);
        let (env, envp) = envelope(-1e6);
        assert!((ai + 0.002_191_261_141_343_057_4).abs() < 1e-9 * env, "{ai}");
        assert!((aip - 17.706_164_485_139_947).abs() < 1e-9 * envp, "{aip}");
    }

    #[test]
    fn anchor_chain_reaches_closed_form_at_zero() {
        // the descending chain from x = 10 is independent of the closed forms
        let (mut y, mut yp) = asymptotic_positive(CHAIN_START);
        let mut x = CHAIN_START;
        while x > 0.5 {
            (y, yp) = taylor_step(x, y, yp, -1.0);
            x -= 1.0;
        }
        assert!((y - ai_zero()).abs() < 1e-14, "{y}");
        assert!((yp - ai_prime_zero()).abs() < 1e-14, "{yp}");
    }

    #[test]
    fn series_oracle_agrees_in_small_window() {
        for &x in &[-2.0, -1.0, -0.5, 0.3, 1.0, 1.7] {
            let (s, sp) = maclaurin(x, 30);
            let (a, ap) = airy_pair(x);
            assert!((a - s).abs() < 2e-14, "x={x}: {a} vs {s}");
            assert!((ap - sp).abs() < 2e-14, "x={x}: {ap} vs {sp}");
        }
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-5;
        let fd = (airy_ai(0.5 + h).unwrap() - airy_ai(0.5 - h).unwrap()) / (2.0 * h);
        assert!((fd - airy_ai_prime(0.5).unwrap()).abs() < 1e-8);
    }

    fn taylor_branch(x: f64) -> (f64, f64) {
        let node = x.round().clamp(ANCHOR_MIN as f64, ANCHOR_MAX as f64);
        let (a, ap) = anchor(node as i32);
        taylor_step(node, a, ap, x - node)
    }

    #[test]
    fn switchover_is_continuous() {
        for k in -4..=4 {
            let d = k as f64 * 2e-3;
            let x = AIRY_ASYMPTOTIC_SWITCH + d;
            let (t, tp) = taylor_branch(x);
            let (a, ap) = asymptotic_positive(x);
            assert!((t - a).abs() <= 1e-9 * a.abs(), "x={x}: {t} vs {a}");
            assert!((tp - ap).abs() <= 1e-9 * ap.abs());

            let x = -AIRY_ASYMPTOTIC_SWITCH + d;
            let (t, tp) = taylor_branch(x);
            let (a, ap) = asymptotic_negative(-x);
            let (env, envp) = envelope(x);
            assert!((t - a).abs() <= 1e-9 * env, "x={x}: {t} vs {a}");
            assert!((tp - ap).abs() <= 1e-9 * envp);
        }
    }

    #[test]
    fn positive_axis_monotone_decay() {
        let mut prev = airy_ai(0.0).unwrap();
        for k in 1..400 {
            let v = airy_ai(k as f64 * 0.25).unwrap();
            assert!(v < prev && v >= 0.0);
            prev = v;
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(airy_ai(1.5e6).is_err());
        assert!(airy_ai_prime(f64::NAN).is_err());
    }
}
