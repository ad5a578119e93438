//! Model parameters and query types shared across the crate.

use crate::{Error, Result};
use num_complex::Complex64;

/// Drift-shift magnitude of the monitored Brownian motion. Every formula
/// depends on `mu` only through `mu^2`, so the sign is irrelevant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    mu: f64,
}

impl ModelParams {
    pub fn new(mu: f64) -> Result<Self> {
        if mu == 0.0 || !mu.is_finite() {
            return Err(Error::invalid(format!("mu must be finite and nonzero, got {mu}")));
        }
        Ok(ModelParams { mu: mu.abs() })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn mu_sq(&self) -> f64 {
        self.mu * self.mu
    }

    /// Argument of the Whittaker functions at state `x`: `u = 2/(mu^2 x)`.
    pub(crate) fn u_of(&self, x: f64) -> f64 {
        2.0 / (self.mu_sq() * x)
    }
}

/// A point `(x, t, r)` at which the transition density or cdf is requested:
/// state `x >= 0`, elapsed time `t > 0`, headstart `r >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityQuery {
    pub x: f64,
    pub t: f64,
    pub r: f64,
}

impl DensityQuery {
    pub fn new(x: f64, t: f64, r: f64) -> Result<Self> {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::invalid(format!("x must be >= 0, got {x}")));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::invalid(format!("t must be > 0, got {t}")));
        }
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::invalid(format!("r (headstart) must be >= 0, got {r}")));
        }
        Ok(DensityQuery { x, t, r })
    }
}

/// A point of the generator's spectral plane: the resolvent argument
/// `lambda`, the index `alpha` with `alpha^2 = 1/4 + 2 lambda / mu^2`
/// (principal branch), and the branch-cut parameter `beta >= 0` where
/// applicable (`lambda_beta = -mu^2 (1 + 4 beta^2)/8`, `alpha = i beta`).
#[derive(Debug, Clone, Copy)]
pub struct SpectralPoint {
    pub lambda: Complex64,
    pub alpha: Complex64,
    pub beta: f64,
}

impl SpectralPoint {
    /// Resolvent point off the branch cut.
    pub fn from_lambda(lambda: Complex64, params: &ModelParams) -> Self {
        let alpha = (Complex64::new(0.25, 0.0) + lambda * (2.0 / params.mu_sq())).sqrt();
        let beta = if alpha.re.abs() < 1e-13 { alpha.im.abs() } else { 0.0 };
        SpectralPoint { lambda, alpha, beta }
    }

    /// Point on the continuous spectrum, parameterized by `beta >= 0`.
    pub fn on_branch_cut(beta: f64, params: &ModelParams) -> Self {
        let lambda = Complex64::new(-params.mu_sq() * (1.0 + 4.0 * beta * beta) / 8.0, 0.0);
        SpectralPoint {
            lambda,
            alpha: Complex64::new(0.0, beta),
            beta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_reject_zero_mu() {
        assert!(ModelParams::new(0.0).is_err());
        assert!(ModelParams::new(f64::NAN).is_err());
        assert!(ModelParams::new(-1.5).is_ok());
    }

    #[test]
    fn sign_of_mu_is_dropped() {
        let a = ModelParams::new(1.5).unwrap();
        let b = ModelParams::new(-1.5).unwrap();
        assert_eq!(a.mu_sq(), b.mu_sq());
    }

    #[test]
    fn spectral_point_consistency() {
        let p = ModelParams::new(1.0).unwrap();
        let sp = SpectralPoint::on_branch_cut(1.0, &p);
        // alpha^2 = 1/4 + 2 lambda / mu^2 must hold on the cut too
        let lhs = sp.alpha * sp.alpha;
        let rhs = Complex64::new(0.25, 0.0) + sp.lambda * 2.0;
        assert!((lhs - rhs).norm() < 1e-14);

        let sp2 = SpectralPoint::from_lambda(Complex64::new(0.5, 0.0), &p);
        assert!((sp2.alpha.re - (0.25f64 + 1.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn query_validation() {
        assert!(DensityQuery::new(1.0, 1.0, 0.0).is_ok());
        assert!(DensityQuery::new(-0.1, 1.0, 0.0).is_err());
        assert!(DensityQuery::new(1.0, 0.0, 0.0).is_err());
        assert!(DensityQuery::new(1.0, 1.0, -1.0).is_err());
    }
}
