use super::QuadError;

const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    pub bracket: (f64, f64),
    pub iterations: usize,
}

/// Brent's method on a sign-changing bracket. Returns a point of a final
/// bracket no wider than `tol`.
pub fn find_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, QuadError> {
    find_root_with(&f, lo, hi, tol).map(|r| r.root)
}

pub fn find_root_with<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> Result<RootResult, QuadError> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(RootResult { root: a, bracket: (a, a), iterations: 0 });
    }
    if fb == 0.0 {
        return Ok(RootResult { root: b, bracket: (b, b), iterations: 0 });
    }
    if !(fa.signum() != fb.signum()) || !fa.is_finite() || !fb.is_finite() {
        return Err(QuadError::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            let bracket = if b < c { (b, c) } else { (c, b) };
            return Ok(RootResult { root: b, bracket, iterations: iter });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Err(QuadError::RootNoConvergence(MAX_ITER))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn simple_roots() {
        assert!((find_root(|t| t - 1.0, 0.0, 2.0, 1e-14).unwrap() - 1.0).abs() < 1e-14);
        let r = find_root(f64::cos, 1.0, 2.0, 1e-14).unwrap();
        assert!((r - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn classical_return() {
        let (v, g) = (3.0, 9.80665);
        let t = find_root(|t| v * t - 0.5 * g * t * t, 1e-6, 3.0 * v / g, 1e-14).unwrap();
        assert!((t - 2.0 * v / g).abs() < 1e-13);
    }

    #[test]
    fn bracket_width_honoured() {
        let r = find_root_with(&|t: f64| t.powi(3) - 2.0, 0.0, 2.0, 1e-10).unwrap();
        assert!(r.bracket.1 - r.bracket.0 <= 1e-10 + 4.0 * f64::EPSILON);
        assert!(r.bracket.0 <= 2f64.cbrt() && 2f64.cbrt() <= r.bracket.1);
    }

    #[test]
    fn no_sign_change() {
        assert!(matches!(find_root(|t| t * t + 1.0, -1.0, 1.0, 1e-12), Err(QuadError::NoSignChange { .. })));
    }
}
