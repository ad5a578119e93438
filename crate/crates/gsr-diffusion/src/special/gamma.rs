//! Complex log-gamma (Lanczos, g = 7) with recurrence shift into the
//! right half-plane. The shift identity `lnGamma(z) = lnGamma(z+1) - Log z`
//! holds with principal logarithms everywhere on the cut plane, so the
//! result is the principal branch.

use crate::{Error, Result};
use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const LN_SQRT_2PI: f64 = 0.918938533204672741780329736406;

fn near_nonpositive_integer(z: Complex64) -> bool {
    if z.im != 0.0 {
        return false;
    }
    let r = z.re.round();
    r <= 0.0 && (z.re - r).abs() < 1e-13 * z.re.abs().max(1.0)
}

/// Principal-branch log-gamma for complex arguments.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if near_nonpositive_integer(z) {
        return Err(Error::GammaPole { z });
    }
    // shift until Re(w) >= 0.5, accumulating principal logs
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < 0.5 {
        shift += w.ln();
        w += 1.0;
    }

    let mut acc = Complex64::new(LANCZOS_P[0], 0.0);
    for (i, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        acc += p / (w - 1.0 + i as f64);
    }
    let t = w - 1.0 + LANCZOS_G + 0.5;
    let lg = LN_SQRT_2PI + (w - 0.5) * t.ln() - t + acc.ln();
    Ok(lg - shift)
}

/// `Gamma(z)` via [`log_gamma`]; errors at nonpositive-integer poles.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `1/Gamma(z)`, entire: returns exactly 0 at nonpositive integers.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// `|Gamma(i beta - 1/2)|^2 = 4 pi / ((1 + 4 beta^2) cosh(pi beta))`,
/// written with an explicit sech so it underflows gracefully instead of
/// overflowing the cosh.
pub fn gamma_abs_sq_shifted(beta: f64) -> f64 {
    let b = beta.abs();
    let sech = 2.0 * (-std::f64::consts::PI * b).exp() / (1.0 + (-2.0 * std::f64::consts::PI * b).exp());
    4.0 * std::f64::consts::PI / (1.0 + 4.0 * b * b) * sech
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        let lg5 = log_gamma(c(5.0, 0.0)).unwrap();
        assert!((lg5.re - 24.0f64.ln()).abs() < 1e-13);
        assert!(lg5.im.abs() < 1e-14);
    }

    #[test]
    fn half_integer() {
        let lg = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((lg.re - 0.5723649429247000870717).abs() < 1e-14);
    }

    #[test]
    fn left_half_plane_principal_branch() {
        // mpmath loggamma(-0.5 + 3i)
        let lg = log_gamma(c(-0.5, 3.0)).unwrap();
        assert!((lg.re - (-4.905762226198390086118)).abs() < 1e-12, "re {}", lg.re);
        assert!((lg.im - (-1.426125733123084291454)).abs() < 1e-12, "im {}", lg.im);
    }

    #[test]
    fn poles_error() {
        assert!(log_gamma(c(0.0, 0.0)).is_err());
        assert!(log_gamma(c(-3.0, 0.0)).is_err());
        assert!(recip_gamma(c(-3.0, 0.0)).norm() == 0.0);
    }

    #[test]
    fn reflection_consistency() {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        for &(re, im) in &[(0.3, 0.7), (-1.2, 0.4), (-0.5, 3.0), (0.1, -2.0)] {
            let z = c(re, im);
            let lhs = gamma(z).unwrap() * gamma(c(1.0 - re, -im)).unwrap();
            let rhs = Complex64::new(std::f64::consts::PI, 0.0) / (std::f64::consts::PI * z).sin();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm(), "z = {z}");
        }
    }

    #[test]
    fn shifted_modulus_identity_matches_log_gamma() {
        for i in 0..=40 {
            let beta = 0.25 * i as f64;
            let direct = gamma_abs_sq_shifted(beta);
            let lg = log_gamma(c(-0.5, beta)).unwrap();
            let via_lg = (2.0 * lg.re).exp();
            assert!(
                (direct - via_lg).abs() <= 1e-12 * direct.abs(),
                "beta={beta}: {direct} vs {via_lg}"
            );
        }
    }

    #[test]
    fn shifted_modulus_trivial_points() {
        let pi = std::f64::consts::PI;
        assert!((gamma_abs_sq_shifted(0.0) - 4.0 * pi).abs() < 1e-14);
        let b1 = 4.0 * pi / (5.0 * pi.cosh());
        assert!((gamma_abs_sq_shifted(1.0) - b1).abs() < 1e-15 * b1);
        let b2 = 4.0 * pi / (17.0 * (2.0 * pi).cosh());
        assert!((gamma_abs_sq_shifted(2.0) - b2).abs() < 1e-15 * b2);
    }
}
