//! Gamma function at the rational points that appear in the Airy and
//! fractional-order Bessel expansions.

use super::SpecFunError;

/// Γ(1/3).
pub const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_6;
/// Γ(2/3).
pub const GAMMA_TWO_THIRDS: f64 = 1.354_117_939_426_400_4;

/// The arguments for which Γ is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Third {
    OneThird,
    TwoThirds,
    FourThirds,
}

impl Third {
    pub fn value(self) -> f64 {
        match self {
            Third::OneThird => 1.0 / 3.0,
            Third::TwoThirds => 2.0 / 3.0,
            Third::FourThirds => 4.0 / 3.0,
        }
    }
}

pub fn gamma_thirds(which: Third) -> f64 {
    match which {
        Third::OneThird => GAMMA_ONE_THIRD,
        Third::TwoThirds => GAMMA_TWO_THIRDS,
        Third::FourThirds => GAMMA_ONE_THIRD / 3.0,
    }
}

/// Γ(x) for x in {1/3, 2/3, 4/3}; any other argument is rejected.
pub fn gamma_at(x: f64) -> Result<f64, SpecFunError> {
    const CANDIDATES: [Third; 3] = [Third::OneThird, Third::TwoThirds, Third::FourThirds];
    CANDIDATES
        .iter()
        .find(|t| (t.value() - x).abs() <= 4.0 * f64::EPSILON * x.abs())
        .map(|&t| gamma_thirds(t))
        .ok_or(SpecFunError::UnsupportedGamma(x))
}

/// Γ(k + 1 + ν) for integer k ≥ 0 and ν in {±1/3, ±2/3}, built by upward
/// recurrence from the tabulated values. Used by the power series.
pub(crate) fn gamma_shifted(nu: f64) -> f64 {
    // Γ(1 + ν)
    let third = 1.0 / 3.0;
    if (nu - third).abs() < 1e-12 {
        GAMMA_ONE_THIRD / 3.0
    } else if (nu + third).abs() < 1e-12 {
        GAMMA_TWO_THIRDS
    } else if (nu - 2.0 * third).abs() < 1e-12 {
        2.0 * GAMMA_TWO_THIRDS / 3.0
    } else if (nu + 2.0 * third).abs() < 1e-12 {
        GAMMA_ONE_THIRD
    } else {
        unreachable!("order {nu} is not a multiple of one third")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn reflection_formula() {
        let lhs = gamma_thirds(Third::OneThird) * gamma_thirds(Third::TwoThirds);
        let rhs = 2.0 * PI / 3f64.sqrt();
        assert!((lhs - rhs).abs() / rhs < 1e-14, "{lhs} vs {rhs}");
    }

    #[test]
    fn recurrence() {
        let g43 = gamma_thirds(Third::FourThirds);
        assert_eq!(g43, gamma_thirds(Third::OneThird) / 3.0);
        // Legendre duplication: Γ(1/3)Γ(5/6) = 2^{-1/3} √π Γ(2/3) is not
        // available here, so check the independently known decimal instead.
        assert!((g43 - 0.892_979_511_569_249_2).abs() < 1e-15);
    }

    #[test]
    fn squared_airy_constant() {
        let c = (3f64.cbrt() * gamma_thirds(Third::OneThird)).powi(2);
        assert!((c - 14.928_161_853_178_59).abs() < 1e-11, "{c}");
    }

    #[test]
    fn rejects_other_arguments() {
        assert!(gamma_at(0.5).is_err());
        assert!(gamma_at(1.0).is_err());
        assert_eq!(gamma_at(2.0 / 3.0).unwrap(), GAMMA_TWO_THIRDS);
    }
}
