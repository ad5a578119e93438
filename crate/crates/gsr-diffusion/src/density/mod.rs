//! Closed-form objects of the GSR diffusion: stationary density, speed and
//! scale measures, spectral eigenfunctions, the resolvent (Green's
//! function), the transition pdf in its spectral and double-integral
//! representations, the cdf, and the Becker-identity consistency check.

mod becker;
mod bessel_form;
mod cdf;
mod pdf;

pub use becker::becker_identity_residual;
pub use bessel_form::transition_pdf_bessel_form;
pub use cdf::{laplace_image_cdf_peskir, transition_cdf, transition_cdf_closed_zero_headstart};
pub use pdf::{transition_pdf, transition_pdf_gamma_weight, transition_pdf_zero_headstart};

use crate::special::{log_gamma, m_reg_scaled, whittaker_w_scaled};
use crate::{Error, ModelParams, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Stationary density `rho(x) = e^{-2/(mu^2 x)} 2/(mu^2 x^2)` (Frechet
/// type); defined as the continuous limit 0 at x = 0. The exponent is
/// assembled in log space so small x underflows to 0 instead of producing
/// 0 * inf.
pub fn stationary_pdf(x: f64, params: &ModelParams) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let m2 = params.mu_sq();
    (-2.0 / (m2 * x) + (2.0 / m2).ln() - 2.0 * x.ln()).exp()
}

/// Speed measure; coincides with the stationary density pointwise.
pub fn speed_measure(x: f64, params: &ModelParams) -> f64 {
    stationary_pdf(x, params)
}

/// Scale measure `s(x) = e^{2/(mu^2 x)}`.
pub fn scale_measure(x: f64, params: &ModelParams) -> f64 {
    (2.0 / (params.mu_sq() * x)).exp()
}

/// Unit-norm continuous-spectrum eigenfunction
/// `psi(x, lambda_beta) = e^{1/(mu^2 x)} (mu^2 x / 2)
///   sqrt(8 beta sinh(pi beta) / (pi (1 + 4 beta^2))) W_{1, i beta}(2/(mu^2 x))`.
///
/// Real-valued, even in `beta`; tends to the normalization constant
/// `C_beta` as x -> 0+ (the exponential factor exactly cancels the
/// Whittaker decay).
pub fn eigenfunction(x: f64, beta: f64, params: &ModelParams) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::invalid(format!("eigenfunction needs x > 0, got {x}")));
    }
    let b = beta.abs();
    if b == 0.0 {
        return Ok(0.0); // sqrt(beta sinh(pi beta)) vanishes
    }
    let u = params.u_of(x);
    let w = whittaker_w_scaled(1.0, Complex64::new(0.0, b), u, f64::INFINITY)?;
    let ln_c =
        0.5 * ((8.0 * b).ln() + crate::special::ln_sinh(PI * b) - PI.ln() - (1.0 + 4.0 * b * b).ln());
    Ok(w.w.m.re * (ln_c + w.w.ln + u / 2.0 - u.ln()).exp())
}

/// The x -> 0+ limit of [`eigenfunction`]: the normalization constant
/// `C_beta = sqrt(8 beta sinh(pi beta) / (pi (1 + 4 beta^2)))`.
pub fn eigenfunction_at_origin(beta: f64) -> f64 {
    let b = beta.abs();
    if b == 0.0 {
        return 0.0;
    }
    (8.0 * b * (PI * b).sinh() / (PI * (1.0 + 4.0 * b * b))).sqrt()
}

/// Green's function (resolvent kernel) of the generator:
/// `G_lambda(x, y) = e^{-1/(mu^2 x)} (2/(mu^2 x)) e^{1/(mu^2 y)} (mu^2 y/2)
///    Gamma(alpha - 1/2) W_{1,alpha}(2/(mu^2 min{x,y}))
///    Mreg_{1,alpha}(2/(mu^2 max{x,y}))`,
/// with `alpha = sqrt(1/4 + 2 lambda / mu^2)` (principal branch). At `y = 0`
/// the W factor degenerates to 1 and the no-headstart form is used.
///
/// `lambda` must lie off the spectrum `{0} U (-inf, -mu^2/8]`; real
/// `lambda <= 0` is rejected.
pub fn greens_function(x: f64, y: f64, lambda: Complex64, params: &ModelParams) -> Result<Complex64> {
    if !(x >= 0.0) || !(y >= 0.0) {
        return Err(Error::invalid("greens_function needs x, y >= 0"));
    }
    if lambda.im == 0.0 && lambda.re <= 0.0 {
        return Err(Error::OnSpectrum { lambda });
    }
    if x == 0.0 {
        return Ok(Complex64::new(0.0, 0.0)); // speed-measure factor vanishes
    }
    let m2 = params.mu_sq();
    let alpha = (Complex64::new(0.25, 0.0) + lambda * (2.0 / m2)).sqrt();
    let lg = log_gamma(alpha - 0.5)?;

    let u_x = params.u_of(x);
    let mut ln = -1.0 / (m2 * x) + u_x.ln() + lg.re;
    let phase = Complex64::from_polar(1.0, lg.im);

    let value = if y == 0.0 {
        let m = m_reg_scaled(1.0, alpha, u_x)?;
        ln += m.value.ln;
        phase * m.value.m
    } else {
        let u_w = params.u_of(x.min(y)); // W takes the larger argument
        let u_m = params.u_of(x.max(y));
        let w = whittaker_w_scaled(1.0, alpha, u_w, f64::INFINITY)?;
        let m = m_reg_scaled(1.0, alpha, u_m)?;
        ln += 1.0 / (m2 * y) - params.u_of(y).ln() + w.w.ln + m.value.ln;
        phase * w.w.m * m.value.m
    };
    let out = value * ln.exp();
    if !out.re.is_finite() || !out.im.is_finite() {
        return Err(Error::invalid(format!(
            "greens_function overflow at x={x}, y={y}, lambda={lambda}"
        )));
    }
    Ok(out)
}
