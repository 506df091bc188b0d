//! Extended-precision phase reduction for the oscillatory asymptotic
//! branches. A phase such as (2/3)x^{3/2} reaches 1e9 for |x| = 1e6, where a
//! plain f64 product already carries an absolute error of ~1e-7 rad. The
//! phase is therefore carried as an unevaluated sum `hi + lo` and reduced
//! modulo 2π before the trigonometric evaluation.

/// Unevaluated sum of two doubles, |lo| <= ulp(hi)/2 after normalisation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const TWO_PI: DoubleDouble = DoubleDouble { hi: std::f64::consts::TAU, lo: 2.449_293_598_294_706_4e-16 };

const QUARTER_PI: DoubleDouble = DoubleDouble { hi: std::f64::consts::FRAC_PI_4, lo: 3.061_616_997_868_383e-17 };

const TWO_THIRDS: DoubleDouble = DoubleDouble { hi: 0.666_666_666_666_666_6, lo: 3.700_743_415_417_188e-17 };

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Self { hi: h, lo: l }
    }

    pub fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        Self::renorm(s, e + self.lo + other.lo)
    }

    pub fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        Self::renorm(p, e + self.hi * other.lo + self.lo * other.hi)
    }

    pub fn scale(self, k: f64) -> Self {
        let (p, e) = two_prod(self.hi, k);
        Self::renorm(p, e + self.lo * k)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// (2/3) x^{3/2} for x >= 0, in double-double.
pub(crate) fn airy_phase(x: f64) -> DoubleDouble {
    let s = x.sqrt();
    // x - s^2 is exact with a fused multiply-add
    let resid = (-s).mul_add(s, x);
    let sqrt_x = DoubleDouble::renorm(s, resid / (2.0 * s));
    sqrt_x.mul(DoubleDouble::from_f64(x)).mul(TWO_THIRDS)
}

/// `theta - k π/4` for integer k, reduced into [-π, π], in double-double.
pub(crate) fn reduce(theta: DoubleDouble, quarter_turns: f64) -> DoubleDouble {
    let shifted = theta.sub(QUARTER_PI.scale(quarter_turns));
    let n = (shifted.hi / TWO_PI.hi).round();
    shifted.sub(TWO_PI.scale(n))
}

/// (sin θ, cos θ) of a reduced double-double angle.
pub(crate) fn sin_cos(theta: DoubleDouble) -> (f64, f64) {
    let (s, c) = theta.hi.sin_cos();
    (s + c * theta.lo, c - s * theta.lo)
}

/// Shift of the Hankel phase x - (ν/2 + 1/4)π, measured in quarter turns.
pub(crate) fn hankel_quarter_turns(nu: f64) -> f64 {
    2.0 * nu + 1.0
}
