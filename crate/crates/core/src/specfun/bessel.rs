//! Bessel functions J, I and K of the orders ±1/3 and ±2/3 for real,
//! non-negative argument.
//!
//! Branches, by argument:
//!
//! | function | series       | continued fractions | asymptotic |
//! |----------|--------------|---------------------|------------|
//! | J        | x < 2        | 2 <= x < 25 (Steed) | x >= 25    |
//! | I        | x < 25       |                     | x >= 25    |
//! | K        | x < 2 (via I)| x >= 2 (Steed)      |            |
//!
//! Negative J orders in the continued-fraction range come from the
//! reflection `J_{-μ} = cos(μπ) J_μ - sin(μπ) Y_μ`. The I power series has
//! positive terms and is stable for every order, but the difference
//! `I_{-1/3} - I_{1/3}` cancels catastrophically for large argument; it is
//! provided separately through `(2/π) sin(π/3) K_{1/3}`.

use std::f64::consts::PI;

use super::gamma::gamma_shifted;
use super::phase::{hankel_quarter_turns, reduce, sin_cos, DoubleDouble};
use super::SpecFunError;

pub const J_SERIES_MAX: f64 = 2.0;
pub const HANKEL_MIN: f64 = 25.0;
pub const I_SERIES_MAX: f64 = 25.0;
pub const K_SERIES_MAX: f64 = 2.0;

pub const J_MAX_ARG: f64 = 1e8;
pub const I_MAX_ARG: f64 = 700.0;
pub const I_SCALED_MAX_ARG: f64 = 1e6;

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;

/// Sign of a ±1/3 order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderSign {
    Plus,
    Minus,
}

/// The fractional orders needed by the Airy-type wavefunctions and their
/// derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThirdOrder {
    MinusTwoThirds,
    MinusOneThird,
    PlusOneThird,
    PlusTwoThirds,
}

impl ThirdOrder {
    pub fn nu(self) -> f64 {
        match self {
            ThirdOrder::MinusTwoThirds => -2.0 / 3.0,
            ThirdOrder::MinusOneThird => -1.0 / 3.0,
            ThirdOrder::PlusOneThird => 1.0 / 3.0,
            ThirdOrder::PlusTwoThirds => 2.0 / 3.0,
        }
    }

    pub fn one_third(sign: OrderSign) -> Self {
        match sign {
            OrderSign::Plus => ThirdOrder::PlusOneThird,
            OrderSign::Minus => ThirdOrder::MinusOneThird,
        }
    }

    pub fn two_thirds(sign: OrderSign) -> Self {
        match sign {
            OrderSign::Plus => ThirdOrder::PlusTwoThirds,
            OrderSign::Minus => ThirdOrder::MinusTwoThirds,
        }
    }
}

fn check(function: &'static str, x: f64, max: f64) -> Result<(), SpecFunError> {
    if x.is_nan() {
        Err(SpecFunError::OutOfRange { function, arg: x })
    } else if x < 0.0 {
        Err(SpecFunError::NegativeArgument { function, arg: x })
    } else if x > max {
        Err(SpecFunError::OutOfRange { function, arg: x })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// J

/// J_{±1/3}(x).
pub fn bessel_j_third(sign: OrderSign, x: f64) -> Result<f64, SpecFunError> {
    check("J", x, J_MAX_ARG)?;
    Ok(bessel_j(ThirdOrder::one_third(sign), x))
}

/// J'_{±1/3}(x) from the order-shift relations
/// `J'_ν = J_{ν-1} - (ν/x) J_ν` (ν = 1/3) and `J'_ν = -J_{ν+1} + (ν/x) J_ν`
/// (ν = -1/3).
pub fn bessel_j_third_prime(sign: OrderSign, x: f64) -> Result<f64, SpecFunError> {
    check("J'", x, J_MAX_ARG)?;
    let j = bessel_j(ThirdOrder::one_third(sign), x);
    Ok(match sign {
        OrderSign::Plus => bessel_j(ThirdOrder::MinusTwoThirds, x) - j / (3.0 * x),
        OrderSign::Minus => -bessel_j(ThirdOrder::PlusTwoThirds, x) - j / (3.0 * x),
    })
}

/// J_ν(x) for one of the third orders.
pub fn bessel_j_order(order: ThirdOrder, x: f64) -> Result<f64, SpecFunError> {
    check("J", x, J_MAX_ARG)?;
    Ok(bessel_j(order, x))
}

pub(crate) fn bessel_j(order: ThirdOrder, x: f64) -> f64 {
    let nu = order.nu();
    if x < J_SERIES_MAX {
        j_series(nu, x)
    } else if x < HANKEL_MIN {
        let mu = nu.abs();
        let (j, y, _, _) = steed_jy(mu, x);
        if nu > 0.0 {
            j
        } else {
            (mu * PI).cos() * j - (mu * PI).sin() * y
        }
    } else {
        hankel_jy(nu, x).0
    }
}

pub(crate) fn j_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu > 0.0 { 0.0 } else { f64::INFINITY };
    }
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = half.powf(nu) / gamma_shifted(nu);
    let mut sum = term;
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= EPS * 0.1 * sum.abs() {
            break;
        }
    }
    sum
}

/// Steed's method (CF1 for J'/J, CF2 for (J' + iY')/(J + iY)) at a single
/// order 0 < μ < 1 and x >= 2. Returns (J, Y, J', Y').
pub(crate) fn steed_jy(mu: f64, x: f64) -> (f64, f64, f64, f64) {
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    let mut isign = 1.0;
    let mut h = (mu * xi).max(FPMIN);
    let mut b = xi2 * mu;
    let mut d = 0.0;
    let mut c = h;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    let f = h;

    let mut a = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fact = a * xi / (p * p + q * q);
    let mut cr = br + q * fact;
    let mut ci = bi + p * fact;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let mut dlr = cr * dr - ci * di;
    let mut dli = cr * di + ci * dr;
    let mut temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    for i in 2..MAXIT {
        a += 2.0 * (i - 1) as f64;
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < FPMIN {
            dr = FPMIN;
        }
        fact = a / (cr * cr + ci * ci);
        cr = br + cr * fact;
        ci = bi - ci * fact;
        if cr.abs() + ci.abs() < FPMIN {
            cr = FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di /= -den;
        dlr = cr * dr - ci * di;
        dli = cr * di + ci * dr;
        temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        if (dlr - 1.0).abs() + dli.abs() < EPS {
            break;
        }
    }

    let gam = (p - f) / q;
    let j = isign * (w / ((p - f) * gam + q)).sqrt();
    let y = j * gam;
    let jp = f * j;
    let yp = y * (p + q / gam);
    (j, y, jp, yp)
}

/// Hankel asymptotic expansion; any real order, x >= 25. Returns (J, Y).
pub(crate) fn hankel_jy(nu: f64, x: f64) -> (f64, f64) {
    let mu4 = 4.0 * nu * nu;
    let inv8x = 1.0 / (8.0 * x);
    let (mut p, mut q) = (0.0, 0.0);
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..200 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            term *= (mu4 - odd * odd) * inv8x / k as f64;
        }
        if term.abs() > last {
            break;
        }
        last = term.abs();
        let sign = if (k / 2) % 2 == 1 { -1.0 } else { 1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        if last < 1e-17 {
            break;
        }
    }
    let chi = reduce(DoubleDouble::from_f64(x), hankel_quarter_turns(nu));
    let (s, c) = sin_cos(chi);
    let amp = (2.0 / (PI * x)).sqrt();
    (amp * (p * c - q * s), amp * (p * s + q * c))
}

// ---------------------------------------------------------------------------
// I and K

/// I_{±1/3}(x), or e^{-x} I_{±1/3}(x) when `scaled`.
pub fn bessel_i_third(sign: OrderSign, x: f64, scaled: bool) -> Result<f64, SpecFunError> {
    check("I", x, if scaled { I_SCALED_MAX_ARG } else { I_MAX_ARG })?;
    Ok(bessel_i(ThirdOrder::one_third(sign), x, scaled))
}

/// I_ν(x) (optionally scaled) for one of the third orders.
pub fn bessel_i_order(order: ThirdOrder, x: f64, scaled: bool) -> Result<f64, SpecFunError> {
    check("I", x, if scaled { I_SCALED_MAX_ARG } else { I_MAX_ARG })?;
    Ok(bessel_i(order, x, scaled))
}

/// I'_{±1/3}(x) from `I'_ν = I_{ν-1} - (ν/x) I_ν` (ν = 1/3) and
/// `I'_ν = I_{ν+1} + (ν/x) I_ν` (ν = -1/3).
pub fn bessel_i_third_prime(sign: OrderSign, x: f64, scaled: bool) -> Result<f64, SpecFunError> {
    check("I'", x, if scaled { I_SCALED_MAX_ARG } else { I_MAX_ARG })?;
    let i = bessel_i(ThirdOrder::one_third(sign), x, scaled);
    Ok(match sign {
        OrderSign::Plus => bessel_i(ThirdOrder::MinusTwoThirds, x, scaled) - i / (3.0 * x),
        OrderSign::Minus => bessel_i(ThirdOrder::PlusTwoThirds, x, scaled) - i / (3.0 * x),
    })
}

/// I_{-1/3}(x) - I_{1/3}(x) evaluated without cancellation, or
/// e^{x} (I_{-1/3}(x) - I_{1/3}(x)) when `scaled`. The difference decays like
/// e^{-x}, so its natural scaling is the opposite of the individual I's.
pub fn bessel_i_third_difference(x: f64, scaled: bool) -> Result<f64, SpecFunError> {
    check("I_{-1/3} - I_{1/3}", x, I_SCALED_MAX_ARG)?;
    Ok(3f64.sqrt() / PI * bessel_k(ThirdOrder::PlusOneThird, x, scaled))
}

/// K_{1/3}(x) or K_{2/3}(x) (negative orders coincide), optionally scaled by
/// e^{x}.
pub fn bessel_k_order(order: ThirdOrder, x: f64, scaled: bool) -> Result<f64, SpecFunError> {
    check("K", x, I_SCALED_MAX_ARG)?;
    Ok(bessel_k(order, x, scaled))
}

pub(crate) fn bessel_i(order: ThirdOrder, x: f64, scaled: bool) -> f64 {
    let nu = order.nu();
    if x < I_SERIES_MAX {
        let v = i_series(nu, x);
        if scaled {
            v * (-x).exp()
        } else {
            v
        }
    } else {
        let s = i_asymptotic_scaled(nu, x);
        if scaled {
            s
        } else {
            s * x.exp()
        }
    }
}

pub(crate) fn i_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu > 0.0 { 0.0 } else { f64::INFINITY };
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(nu) / gamma_shifted(nu);
    let mut sum = term;
    for k in 1..1000 {
        let kf = k as f64;
        term *= q / (kf * (kf + nu));
        sum += term;
        if term.abs() <= EPS * 0.1 * sum.abs() {
            break;
        }
    }
    sum
}

/// e^{-x} I_ν(x) ~ (2πx)^{-1/2} Σ (-1)^k a_k(ν) / x^k.
pub(crate) fn i_asymptotic_scaled(nu: f64, x: f64) -> f64 {
    let mu4 = 4.0 * nu * nu;
    let inv8x = 1.0 / (8.0 * x);
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu4 - odd * odd) * inv8x / k as f64;
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum / (2.0 * PI * x).sqrt()
}

pub(crate) fn bessel_k(order: ThirdOrder, x: f64, scaled: bool) -> f64 {
    let mu = order.nu().abs();
    if x == 0.0 {
        return f64::INFINITY;
    }
    if x < K_SERIES_MAX {
        let diff = i_series(-mu, x) - i_series(mu, x);
        let k = PI / (2.0 * (mu * PI).sin()) * diff;
        if scaled {
            k * x.exp()
        } else {
            k
        }
    } else {
        let (k13, k43) = steed_k(1.0 / 3.0, x, scaled);
        if mu < 0.5 {
            k13
        } else {
            // K_{4/3} = K_{-2/3} + (2/(3x)) K_{1/3}
            k43 - 2.0 / (3.0 * x) * k13
        }
    }
}

/// Steed's CF2 for (K_μ, K_{μ+1}), x >= 2. With `scaled` the common
/// factor e^{-x} is dropped.
pub(crate) fn steed_k(mu: f64, x: f64, scaled: bool) -> (f64, f64) {
    let xi = 1.0 / x;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..MAXIT {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let decay = if scaled { 1.0 } else { (-x).exp() };
    let kmu = (PI / (2.0 * x)).sqrt() * decay / s;
    let k1 = kmu * (mu + x + 0.5 - h) * xi;
    (kmu, k1)
}
