//! Adaptive Gauss–Kronrod integration on finite and semi-infinite intervals,
//! and Brent's bracketed root finder.

mod roots;

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

pub use roots::{find_root, find_root_with, RootResult};

/// Smallest relative tolerance accepted by the integrators.
pub const MIN_REL_TOL: f64 = 1e-13;
/// Default cap on the number of panels in one adaptive integration.
pub const MAX_PANELS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub est_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("relative tolerance {0} is below the supported minimum {MIN_REL_TOL}")]
    ToleranceTooSmall(f64),
    #[error("integration limits must be finite, got [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },
    #[error("integrand is not finite at {at}")]
    NonFinite { at: f64 },
    #[error("no convergence after {panels} panels: {partial:?}")]
    NoConvergence { panels: usize, partial: IntegralResult },
    #[error("integrand does not decay as assumed beyond {at}: {partial:?}")]
    DecayViolated { at: f64, partial: IntegralResult },
    #[error("decay scale must be positive, got {0}")]
    BadDecayScale(f64),
    #[error("no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("root finder did not converge in {0} iterations")]
    RootNoConvergence(usize),
}

// 15-point Kronrod nodes on [0, 1] (symmetric) with the embedded 7-point
// Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    // largest error first; ties broken by position so the order is total
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error).then_with(|| other.a.total_cmp(&self.a))
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Panel, QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { at: x })
        }
    };
    let fc = eval(c)?;
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = eval(c - dx)? + eval(c + dx)?;
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Panel { a, b, value: kron * h, error: ((kron - gauss) * h).abs() })
}

fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

fn check_tol(rel_tol: f64) -> Result<(), QuadError> {
    if rel_tol >= MIN_REL_TOL {
        Ok(())
    } else {
        Err(QuadError::ToleranceTooSmall(rel_tol))
    }
}

/// ∫_a^b f(x) dx to relative accuracy `rel_tol`. Reversed limits give the
/// negated integral.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<IntegralResult, QuadError> {
    integrate_with(&f, a, b, rel_tol, 0.0, MAX_PANELS)
}

/// As [`integrate`], with an absolute error floor and a panel budget.
pub fn integrate_with<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_panels: usize,
) -> Result<IntegralResult, QuadError> {
    check_tol(rel_tol)?;
    if !a.is_finite() || !b.is_finite() {
        return Err(QuadError::BadInterval { a, b });
    }
    if a == b {
        return Ok(IntegralResult { value: 0.0, est_error: 0.0, evaluations: 0 });
    }
    if b < a {
        return integrate_with(f, b, a, rel_tol, abs_tol, max_panels).map(|r| IntegralResult { value: -r.value, ..r });
    }

    let mut heap = BinaryHeap::new();
    let first = gk15(f, a, b)?;
    let mut evaluations = 15;
    heap.push(first);
    let (mut total, mut error) = (first.value, first.error);

    loop {
        if error <= (rel_tol * total.abs()).max(abs_tol) {
            break;
        }
        if heap.len() >= max_panels {
            let partial = finish(&heap, evaluations);
            return Err(QuadError::NoConvergence { panels: heap.len(), partial });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel cannot be split further in floating point
            heap.push(worst);
            let partial = finish(&heap, evaluations);
            return Err(QuadError::NoConvergence { panels: heap.len(), partial });
        }
        let left = gk15(f, worst.a, mid)?;
        let right = gk15(f, mid, worst.b)?;
        evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    Ok(finish(&heap, evaluations))
}

// Re-sum in left-to-right order so the result does not carry the drift of
// the running updates.
fn finish(heap: &BinaryHeap<Panel>, evaluations: usize) -> IntegralResult {
    let mut panels: Vec<Panel> = heap.iter().copied().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    IntegralResult {
        value: neumaier_sum(panels.iter().map(|p| p.value)),
        est_error: neumaier_sum(panels.iter().map(|p| p.error)),
        evaluations,
    }
}

/// ∫_a^∞ f(x) dx for an integrand that eventually obeys
/// |f(x)| ≤ C e^{-2(x-a)/decay_scale}.
///
/// The half-line is cut into chunks of width `decay_scale`. After each chunk
/// the tail beyond it is bounded by extrapolating the chunk's own integral
/// with the assumed decay rate: tail ≤ I_k r / (1 - r), r = e^{-2}. The sweep
/// stops once that bound is below a tenth of the requested accuracy.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    decay_scale: f64,
    rel_tol: f64,
) -> Result<IntegralResult, QuadError> {
    check_tol(rel_tol)?;
    if !(decay_scale > 0.0) || !decay_scale.is_finite() {
        return Err(QuadError::BadDecayScale(decay_scale));
    }
    if !a.is_finite() {
        return Err(QuadError::BadInterval { a, b: f64::INFINITY });
    }
    const MAX_CHUNKS: usize = 400;
    const GROWTH_ALLOWANCE: usize = 8;
    let r = (-2.0f64).exp();
    let mut chunks = Vec::new();
    let mut est_error = 0.0;
    let mut evaluations = 0;
    let mut growing = 0;
    let mut prev_tail = f64::INFINITY;
    for k in 0..MAX_CHUNKS {
        let lo = a + k as f64 * decay_scale;
        let hi = lo + decay_scale;
        let piece = integrate_with(&f, lo, hi, 0.1 * rel_tol.max(1e-12), 0.0, MAX_PANELS)?;
        chunks.push(piece.value);
        est_error += piece.est_error;
        evaluations += piece.evaluations;
        let partial = neumaier_sum(chunks.iter().copied());
        let tail = piece.value.abs() * r / (1.0 - r);
        let partial_result = IntegralResult { value: partial, est_error: est_error + tail, evaluations };
        if tail <= 0.1 * rel_tol * partial.abs() || (partial == 0.0 && tail == 0.0 && k > 0) {
            return Ok(partial_result);
        }
        if tail >= prev_tail {
            growing += 1;
            if growing > GROWTH_ALLOWANCE {
                return Err(QuadError::DecayViolated { at: hi, partial: partial_result });
            }
        } else {
            growing = 0;
        }
        prev_tail = tail;
    }
    let partial = neumaier_sum(chunks.iter().copied());
    Err(QuadError::DecayViolated {
        at: a + MAX_CHUNKS as f64 * decay_scale,
        partial: IntegralResult { value: partial, est_error, evaluations },
    })
}
