//! Special functions: complex log-gamma, the Whittaker pair
//! `W_{a,b}` / regularized `M_{a,b}`, and the modified Bessel `I_nu`.
//!
//! The public surface covers first index `a` (always 1 in the diffusion
//! formulas, stored generally) and second index `b` either real or purely
//! imaginary; the internal evaluators used by the resolvent accept fully
//! complex `b`.

mod bessel;
mod gamma;
mod kummer;
mod whittaker;

pub use bessel::bessel_i;
pub use gamma::{gamma, gamma_abs_sq_shifted, log_gamma, recip_gamma};

pub(crate) use kummer::{m_reg_scaled, Scaled};
pub(crate) use whittaker::{ln_sinh, whittaker_w_scaled};

use crate::{Error, Result};
use num_complex::Complex64;

/// Index pair `(a, b)` of the Whittaker functions. `b` must be purely real
/// or purely imaginary (tolerance 1e-13); the diffusion uses real `b` on the
/// resolvent set and `b = i beta` on the branch cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WhittakerIndex {
    a: f64,
    b: Complex64,
}

impl WhittakerIndex {
    pub fn new(a: f64, b: Complex64) -> Result<Self> {
        if !a.is_finite() || !b.re.is_finite() || !b.im.is_finite() {
            return Err(Error::invalid("whittaker index must be finite"));
        }
        let scale = b.norm().max(1.0);
        let is_real = b.im.abs() <= 1e-13 * scale;
        let is_imag = b.re.abs() <= 1e-13 * scale;
        if !is_real && !is_imag {
            return Err(Error::invalid(format!(
                "second index must be purely real or purely imaginary, got {b}"
            )));
        }
        Ok(WhittakerIndex { a, b })
    }

    /// Real second index `b = alpha`.
    pub fn real(a: f64, alpha: f64) -> Result<Self> {
        Self::new(a, Complex64::new(alpha, 0.0))
    }

    /// Imaginary second index `b = i beta`.
    pub fn imaginary(a: f64, beta: f64) -> Result<Self> {
        Self::new(a, Complex64::new(0.0, beta))
    }

    pub fn first(&self) -> f64 {
        self.a
    }

    pub fn second(&self) -> Complex64 {
        self.b
    }
}

/// Value and diagnostics of one Whittaker-W evaluation.
#[derive(Debug, Clone, Copy)]
pub struct WhittakerW {
    pub value: f64,
    /// estimated absolute error
    pub err_estimate: f64,
    /// magnitude of the imaginary part discarded when assembling the
    /// (provably real) value from complex intermediates
    pub im_residual: f64,
}

/// Regularized Whittaker function `Mreg_{a,b}(z) = M_{a,b}(z)/Gamma(1+2b)`.
///
/// Errors with [`Error::Overflow`] when `e^{z/2}`-growth exceeds the f64
/// range (the reported threshold is the argument at which that happens).
pub fn whittaker_m_reg(idx: &WhittakerIndex, z: f64) -> Result<Complex64> {
    if !(z > 0.0) {
        return Err(Error::invalid(format!("argument must be > 0, got {z}")));
    }
    let out = m_reg_scaled(idx.a, idx.b, z)?;
    let log_abs = out.value.log_abs();
    if log_abs > 709.0 {
        // d(log M)/dz ~ 1/2 for large z: linear estimate of the safe bound
        let threshold = z - 2.0 * (log_abs - 709.0);
        return Err(Error::Overflow { z, threshold });
    }
    Ok(out.value.value())
}

/// Whittaker `W_{a,b}(z)` for real or purely imaginary `b`. The result is
/// real; `rel_tol` is the accuracy the caller requires, and a cancellation
/// error is raised when the evaluation cannot honestly meet it.
pub fn whittaker_w(idx: &WhittakerIndex, z: f64, rel_tol: f64) -> Result<WhittakerW> {
    let r = whittaker_w_scaled(idx.a, idx.b, z, rel_tol)?;
    let scale = r.w.ln.exp();
    let value = r.w.m.re * scale;
    let leaked = (r.w.m.im * scale).abs();
    let im_residual = (r.im_residual * value.abs()).max(leaked);
    let err_estimate = r.rel_err * value.abs().max(1e-300);
    if r.rel_err > rel_tol {
        return Err(Error::Cancellation {
            estimate: r.rel_err,
            requested: rel_tol,
        });
    }
    Ok(WhittakerW {
        value,
        err_estimate,
        im_residual,
    })
}

/// `| W{W_{a,b}, Mreg_{a,b}}(z) - 1/Gamma(b - a + 1/2) |` with the Wronskian
/// computed from central differences of step `h`. Near-zero residuals verify
/// the two evaluators against each other; at Laguerre-degenerate indices the
/// right-hand side is 0 and the residual measures the (vanishing) Wronskian
/// of two proportional solutions.
pub fn wronskian_check(idx: &WhittakerIndex, z: f64, h: f64) -> Result<f64> {
    if !(z > h && h > 0.0) {
        return Err(Error::invalid(format!("need z > h > 0, got z={z}, h={h}")));
    }
    let w_at = |zz: f64| -> Result<f64> { Ok(whittaker_w(idx, zz, 1e-8)?.value) };
    let m_at = |zz: f64| -> Result<Complex64> { whittaker_m_reg(idx, zz) };

    let w_p = w_at(z + h)?;
    let w_m = w_at(z - h)?;
    let w_0 = w_at(z)?;
    let m_p = m_at(z + h)?;
    let m_m = m_at(z - h)?;
    let m_0 = m_at(z)?;

    let dw = (w_p - w_m) / (2.0 * h);
    let dm = (m_p - m_m) / (2.0 * h);
    let wronskian = Complex64::new(w_0, 0.0) * dm - m_0 * dw;
    let rhs = recip_gamma(idx.b - idx.a + 0.5);
    Ok((wronskian - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_invariant() {
        assert!(WhittakerIndex::new(1.0, Complex64::new(0.5, 0.0)).is_ok());
        assert!(WhittakerIndex::new(1.0, Complex64::new(0.0, 2.0)).is_ok());
        assert!(WhittakerIndex::new(1.0, Complex64::new(0.3, 0.3)).is_err());
    }

    #[test]
    fn m_and_w_coincide_at_laguerre_index() {
        let idx = WhittakerIndex::real(1.0, 0.5).unwrap();
        for &z in &[0.01, 0.1, 1.0, 10.0, 50.0] {
            let m = whittaker_m_reg(&idx, z).unwrap().re;
            let w = whittaker_w(&idx, z, 1e-12).unwrap().value;
            assert!((m - w).abs() <= 1e-12 * m.abs(), "z={z}: {m} vs {w}");
        }
    }

    #[test]
    fn m_overflow_reports_threshold() {
        let idx = WhittakerIndex::real(1.0, 0.25).unwrap();
        match whittaker_m_reg(&idx, 1600.0) {
            Err(Error::Overflow { threshold, .. }) => {
                assert!(threshold > 1000.0 && threshold < 1600.0, "threshold {threshold}");
            }
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn wronskian_residuals() {
        // spec example points
        let r1 = wronskian_check(&WhittakerIndex::imaginary(1.0, 1.0).unwrap(), 2.0, 1e-4).unwrap();
        assert!(r1 <= 1e-6, "residual {r1}");
        let r2 = wronskian_check(&WhittakerIndex::real(1.0, 0.5).unwrap(), 3.0, 1e-4).unwrap();
        assert!(r2 <= 1e-6, "residual {r2}");
        let r3 = wronskian_check(&WhittakerIndex::imaginary(1.0, 0.25).unwrap(), 0.5, 1e-5).unwrap();
        assert!(r3 <= 1e-5, "residual {r3}");
    }

    #[test]
    fn w_reports_im_residual() {
        let idx = WhittakerIndex::imaginary(1.0, 1.5).unwrap();
        let w = whittaker_w(&idx, 2.5, 1e-9).unwrap();
        assert!(w.im_residual <= 1e-9 * w.value.abs());
    }
}
