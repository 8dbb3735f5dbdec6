use crate::error::{Error, Result};
use alloc::format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Constants from the analysis. Astronomically large; useful only for
    /// inspection and for tiny smoke runs.
    Theory,
    /// Small configurable constants that make desk-scale runs feasible.
    Practical,
}

/// Approximation parameter and the constants derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub epsilon: f64,
    /// Capacity growth base.
    pub alpha: f64,
    /// Sampling multiplier.
    pub rho: f64,
    /// Sparsifier sample count.
    pub d: f64,
    pub profile: Profile,
}

/// `4 log2(2/eps) / eps^2`.
pub fn default_d(epsilon: f64) -> f64 {
    4.0 * libm::log2(2.0 / epsilon) / (epsilon * epsilon)
}

/// `Some(alpha)` when alpha is an integer small enough for exact arithmetic.
pub(crate) fn integral_alpha(alpha: f64) -> Option<u128> {
    (libm::trunc(alpha) == alpha && (2.0..=4_294_967_296.0).contains(&alpha)).then_some(alpha as u128)
}

fn log2n(n: usize) -> f64 {
    libm::log2(n.max(2) as f64)
}

impl Params {
    pub fn theory(n: usize, epsilon: f64) -> Self {
        let e2 = epsilon * epsilon;
        Params {
            epsilon,
            alpha: log2n(n) * libm::exp2(60.0 / e2),
            rho: log2n(n) * libm::exp2(40.0 / e2),
            d: default_d(epsilon),
            profile: Profile::Theory,
        }
    }

    /// `alpha = 4`, `rho = 32 ln n`.
    pub fn practical(n: usize, epsilon: f64) -> Self {
        Params {
            epsilon,
            alpha: 4.0,
            rho: 32.0 * libm::log(n.max(2) as f64),
            d: default_d(epsilon),
            profile: Profile::Practical,
        }
    }

    pub fn for_profile(profile: Profile, n: usize, epsilon: f64) -> Self {
        match profile {
            Profile::Theory => Self::theory(n, epsilon),
            Profile::Practical => Self::practical(n, epsilon),
        }
    }

    /// Checks ranges. `rho <= alpha` is only enforced for the theory
    /// profile; the practical defaults deliberately break it.
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::Param(format!("epsilon {} not in (0, 1/2)", self.epsilon)));
        }
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(Error::Param(format!("alpha {} must be a finite value > 1", self.alpha)));
        }
        if !(self.rho >= 0.0) || !(self.d > 0.0) {
            return Err(Error::Param(format!("rho {} / d {} out of range", self.rho, self.d)));
        }
        if self.profile == Profile::Theory && self.rho > self.alpha {
            return Err(Error::Param(format!("rho {} exceeds alpha {}", self.rho, self.alpha)));
        }
        Ok(())
    }

    /// `ceil(log_alpha n)`, computed without rounding error for integral alpha.
    pub fn log_alpha_ceil(&self, n: usize) -> i32 {
        if n <= 1 {
            return 0;
        }
        if let Some(a) = integral_alpha(self.alpha) {
            let (mut k, mut p) = (0i32, 1u128);
            while p < n as u128 {
                p *= a;
                k += 1;
            }
            k
        } else {
            let mut k = libm::ceil(libm::log(n as f64) / libm::log(self.alpha)) as i32;
            // guard against the floating log landing one off
            while k > 0 && libm::pow(self.alpha, f64::from(k - 1)) >= n as f64 {
                k -= 1;
            }
            while libm::pow(self.alpha, f64::from(k)) < n as f64 {
                k += 1;
            }
            k
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_exponent_ceiling() {
        let p = Params::practical(16, 0.1);
        assert_eq!(p.log_alpha_ceil(16), 2);
        assert_eq!(p.log_alpha_ceil(17), 3);
        assert_eq!(p.log_alpha_ceil(1), 0);
        assert_eq!(p.log_alpha_ceil(4), 1);
        let q = Params { alpha: 2.5, ..p };
        assert_eq!(q.log_alpha_ceil(6), 2);
        assert_eq!(q.log_alpha_ceil(7), 3);
    }

    #[test]
    fn d_for_common_epsilons() {
        // 4 * log2(20/3) / 0.09
        assert!((default_d(0.3) - 121.642_915).abs() < 1e-5);
        assert!((default_d(0.5) - 32.0).abs() < 1e-12);
    }

    #[test]
    fn practical_breaks_rho_le_alpha_but_validates() {
        let p = Params::practical(100, 0.3);
        assert!(p.rho > p.alpha);
        assert!(p.validate().is_ok());
        assert!(Params { epsilon: 0.5, ..p }.validate().is_err());
        assert!(Params { alpha: 1.0, ..p }.validate().is_err());
        let t = Params::theory(100, 0.3);
        assert!(t.validate().is_ok());
        assert!(Params { rho: t.alpha * 2.0, ..t }.validate().is_err());
    }
}
