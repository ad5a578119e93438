//! Whittaker W for first index 1 (general first index through the
//! connection formula) and real argument, over real, purely imaginary, and
//! fully complex second index.
//!
//! Three routes, picked per (b, z):
//! - Kummer series (double-double), assembled for imaginary order as
//!   `W_{1,i beta}(z) = Im[Gamma(3/2+i beta) Mreg_{1,i beta}(z)] / sinh(pi beta)`,
//!   which keeps the e^{pi beta} factors cancelled structurally;
//! - a Macdonald-kernel integral
//!   `W_{1,b}(z) = sqrt(z/pi)/2 int_0^inf e^{-(z/2)cosh t}(z-1+z cosh t)cosh(bt) dt`
//!   for the mid range where the series loses e^z digits to cancellation;
//! - the Poincare asymptotic series for large argument.
//!
//! Every route returns an honest relative error estimate; the dispatcher
//! takes the better route and signals a cancellation error when neither
//! meets the requested tolerance.

use super::gamma::{log_gamma, recip_gamma};
use super::kummer::{m_reg_scaled, Scaled};
use crate::quad::gk15_c64;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub(crate) struct WEval {
    pub w: Scaled,
    pub rel_err: f64,
    /// absolute size of the discarded/leaked imaginary part
    pub im_residual: f64,
}

const Z_SERIES_MAX: f64 = 16.0;
const BETA_FLOOR: f64 = 1e-7;

/// ln(sinh x) for x > 0 without overflow.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
}

/// log and argument of sin(w) without overflow for large |Im w|.
fn ln_sin(w: Complex64) -> (f64, f64) {
    if w.im.abs() <= 20.0 {
        let s = w.sin();
        (s.norm().ln(), s.arg())
    } else if w.im > 0.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        let rest = Complex64::new(1.0, 0.0) - (Complex64::new(0.0, 2.0) * w).exp();
        (w.im - std::f64::consts::LN_2 + rest.norm().ln(), PI / 2.0 - w.re + rest.arg())
    } else {
        let (l, a) = ln_sin(w.conj());
        (l, -a)
    }
}

/// Series route, a = 1, b = i beta (beta > 0):
/// `W = Im[ Gamma(3/2 + i b) Mreg_{1, i b}(z) ] / sinh(pi b)`.
fn w_series_imag(beta: f64, z: f64) -> Result<WEval> {
    let b = Complex64::new(0.0, beta);
    let m = m_reg_scaled(1.0, b, z)?;
    let lg32 = log_gamma(Complex64::new(1.5, beta))?;
    let qm = (Complex64::new(0.0, lg32.im)).exp() * (lg32.re).exp() * m.value.m;
    // fold the Gamma magnitude into the mantissa product above; exponent parts:
    let ln = m.value.ln - ln_sinh(PI * beta);
    let a_osc = qm.norm() / qm.im.abs().max(1e-300);
    let lg_scale = 1e-16 * (lg32.norm() + 10.0);
    let rel_err = a_osc * (5e-16 + lg_scale + m.rel_err);
    Ok(WEval {
        w: Scaled {
            m: Complex64::new(qm.im, 0.0),
            ln,
        },
        rel_err,
        im_residual: a_osc * 1e-16, // relative; converted by the caller
    })
}

/// Macdonald-kernel route, a = 1, any b (accuracy degrades like
/// e^{pi |Im b| / 2} for strongly imaginary order):
/// `W_{1,b}(z) = sqrt(z/pi)/2 e^{-z/2} J`,
/// `J = int_0^T e^{-(z/2)(cosh t - 1)} (z - 1 + z cosh t) cosh(b t) dt`.
fn w_kernel(b: Complex64, z: f64) -> Result<WEval> {
    let b_re = b.re.abs();
    // T with (z/2)(cosh T - 1) - |Re b| T >= 45 + log scale
    let mut t_end: f64 = 2.5;
    for _ in 0..8 {
        let ln_amp = (2.0 + 2.0 * z * t_end.cosh()).ln();
        let target = (2.0 / z) * (45.0 + b_re * t_end + ln_amp);
        t_end = (1.0 + target).acosh();
    }
    let t_end = t_end.min(40.0);

    let width = (2.0 * PI / (8.0 * (b.im.abs() + 0.5))).min(0.4);
    let n_seg = ((t_end / width).ceil() as usize).clamp(4, 6000);
    let h = t_end / n_seg as f64;

    let f = |t: f64| -> Complex64 {
        let ch = t.cosh();
        let envelope = (-(z / 2.0) * (ch - 1.0)).exp() * (z - 1.0 + z * ch);
        let bt = b * t;
        envelope * bt.cosh()
    };

    let mut sum = Complex64::new(0.0, 0.0);
    let mut err_abs = 0.0;
    let mut resabs = 0.0;
    for k in 0..n_seg {
        let (v, e, ra) = gk15_c64(&f, k as f64 * h, (k + 1) as f64 * h);
        sum += v;
        err_abs += e;
        resabs += ra;
    }

    let pref = (z / PI).sqrt() / 2.0;
    let val = sum * pref;
    let abs_err = (err_abs + 1e-16 * resabs) * pref;
    let rel_err = abs_err / val.norm().max(1e-300);
    let im_res = if b.re.abs() < 1e-300 { 0.0 } else { f64::NAN };
    Ok(WEval {
        w: Scaled {
            m: val,
            ln: -z / 2.0,
        },
        rel_err,
        im_residual: if im_res.is_nan() { 0.0 } else { im_res },
    })
}

/// Poincare asymptotic `W_{a,b}(z) ~ z^a e^{-z/2} sum_k c_k z^{-k}`,
/// `c_0 = 1`, `c_k = c_{k-1} (b^2 - (a - k + 1/2)^2) / k`.
fn w_asymptotic(a: f64, b: Complex64, z: f64) -> WEval {
    let b2 = b * b;
    let mut c = Complex64::new(1.0, 0.0);
    let mut sum = c;
    let mut last = 1.0f64;
    let mut min_term = 1.0f64;
    for k in 1..=80 {
        let s = a - k as f64 + 0.5;
        c = c * (b2 - s * s) / (k as f64 * z);
        let mag = c.norm();
        if mag > last {
            break; // divergence onset
        }
        sum += c;
        last = mag;
        min_term = mag;
        if mag < 1e-18 * sum.norm() {
            break;
        }
    }
    WEval {
        w: Scaled {
            m: sum,
            ln: a * z.ln() - z / 2.0,
        },
        rel_err: 2.0 * min_term / sum.norm().max(1e-300) + 1e-15,
        im_residual: 0.0,
    }
}

/// Connection formula, generic (a, b):
/// `W = pi/sin(2 pi b) [ Mreg_{a,-b}/Gamma(1/2+b-a) - Mreg_{a,b}/Gamma(1/2-b-a) ]`.
fn w_connection(a: f64, b: Complex64, z: f64) -> Result<WEval> {
    let m_neg = m_reg_scaled(a, -b, z)?;
    let m_pos = m_reg_scaled(a, b, z)?;
    let rg_neg = recip_gamma(Complex64::new(0.5 - a, 0.0) + b);
    let rg_pos = recip_gamma(Complex64::new(0.5 - a, 0.0) - b);

    let t1 = Scaled {
        m: m_neg.value.m * rg_neg,
        ln: m_neg.value.ln,
    };
    let t2 = Scaled {
        m: m_pos.value.m * rg_pos,
        ln: m_pos.value.ln,
    };
    let ln_ref = t1.ln.max(t2.ln);
    let d = t1.m * (t1.ln - ln_ref).exp() - t2.m * (t2.ln - ln_ref).exp();
    let mag_sum = t1.m.norm() * (t1.ln - ln_ref).exp() + t2.m.norm() * (t2.ln - ln_ref).exp();

    let (ls, arg_s) = ln_sin(b * (2.0 * PI));
    let pref_m = Complex64::from_polar(PI, -arg_s);
    let val = Scaled {
        m: d * pref_m,
        ln: ln_ref - ls,
    };
    let cancel = mag_sum / d.norm().max(1e-300);
    let rel_err = cancel * (2e-15 + m_neg.rel_err.max(m_pos.rel_err));
    Ok(WEval {
        w: val,
        rel_err,
        im_residual: 0.0,
    })
}

fn asym_applicable(b: Complex64, z: f64) -> bool {
    z >= 45.0 && z >= 2.0 * PI * b.im.abs() + 40.0 && b.norm_sqr() <= 0.75 * z
}

/// Full dispatcher. Returns the W value in scaled form plus diagnostics.
pub(crate) fn whittaker_w_scaled(a: f64, b_in: Complex64, z: f64, rel_tol: f64) -> Result<WEval> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::invalid(format!("whittaker argument must be > 0, got {z}")));
    }
    // W_{a,b} = W_{a,-b}: canonicalize to Re b >= 0 (and Im b >= 0 on the axis)
    let mut b = b_in;
    if b.re < 0.0 || (b.re == 0.0 && b.im < 0.0) {
        b = -b;
    }
    let b_scale = b.norm().max(1.0);
    let is_real = b.im.abs() <= 1e-13 * b_scale;
    let is_imag = b.re.abs() <= 1e-13 * b_scale;

    // Laguerre-degenerate index: b = a - 1/2 makes W = M = z^a e^{-z/2}
    if is_real && (b.re - (a - 0.5)).abs() < 1e-12 {
        return Ok(WEval {
            w: Scaled {
                m: Complex64::new(1.0, 0.0),
                ln: a * z.ln() - z / 2.0,
            },
            rel_err: 1e-15,
            im_residual: 0.0,
        });
    }

    if asym_applicable(b, z) {
        let r = w_asymptotic(a, b, z);
        if r.rel_err <= rel_tol {
            return Ok(r);
        }
    }

    if a == 1.0 && is_imag {
        let beta = b.im.abs().max(BETA_FLOOR);
        if z <= Z_SERIES_MAX {
            let r = w_series_imag(beta, z)?;
            return finish_imag(r, rel_tol);
        }
        let k = w_kernel(Complex64::new(0.0, beta), z)?;
        if k.rel_err <= rel_tol / 4.0 {
            return finish_imag(k, rel_tol);
        }
        // strongly imaginary order at mid z: try the series too, take the better
        let s = w_series_imag(beta, z);
        let best = match s {
            Ok(s) if s.rel_err < k.rel_err => s,
            _ => k,
        };
        return finish_imag(best, rel_tol);
    }

    // real-index degeneracies (2b integer, sin(2 pi b) = 0): symmetric
    // perturbation + Richardson in the index
    if is_real && a == 1.0 {
        let two_b = 2.0 * b.re;
        if (two_b - two_b.round()).abs() < 1e-8 && two_b.round() >= 0.0 {
            return w_real_degenerate(a, b.re, z);
        }
    }

    if a == 1.0 && z > Z_SERIES_MAX && b.re.abs() < 0.25 * z {
        let k = w_kernel(b, z)?;
        if k.rel_err <= rel_tol {
            return Ok(k);
        }
        let c = w_connection(a, b, z);
        return match c {
            Ok(c) if c.rel_err < k.rel_err => Ok(c),
            _ => Ok(k),
        };
    }

    let c = w_connection(a, b, z)?;
    if c.rel_err > rel_tol && a == 1.0 {
        if let Ok(k) = w_kernel(b, z) {
            if k.rel_err < c.rel_err {
                return Ok(k);
            }
        }
    }
    Ok(c)
}

fn finish_imag(r: WEval, rel_tol: f64) -> Result<WEval> {
    if r.rel_err > rel_tol {
        return Err(Error::Cancellation {
            estimate: r.rel_err,
            requested: rel_tol,
        });
    }
    Ok(r)
}

/// 2b at a nonnegative integer (excluding the Laguerre case): W(b) is
/// analytic in b, so evaluate at b +- h and h/2 and extrapolate.
fn w_real_degenerate(a: f64, br: f64, z: f64) -> Result<WEval> {
    let eval_pair = |h: f64| -> Result<(Complex64, f64, f64)> {
        let p = w_connection(a, Complex64::new(br + h, 0.0), z)?;
        let q = w_connection(a, Complex64::new((br - h).abs(), 0.0), z)?;
        let ln_ref = p.w.ln.max(q.w.ln);
        let avg = (p.w.m * (p.w.ln - ln_ref).exp() + q.w.m * (q.w.ln - ln_ref).exp()) * 0.5;
        Ok((avg, ln_ref, p.rel_err.max(q.rel_err)))
    };
    let h = 1e-4;
    let (a1, l1, e1) = eval_pair(h)?;
    let (a2, l2, e2) = eval_pair(h / 2.0)?;
    let ln_ref = l1.max(l2);
    let v = (a2 * (l2 - ln_ref).exp() * 4.0 - a1 * (l1 - ln_ref).exp()) / 3.0;
    Ok(WEval {
        w: Scaled { m: v, ln: ln_ref },
        rel_err: 2.0 * e1.max(e2) + 1e-11,
        im_residual: 0.0,
    })
}
