//! Minimal double-double arithmetic for the cancellation-prone Kummer series.
//!
//! A `Dd` stores an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 32 significant digits. Only the operations the series
//! recurrence needs are implemented. Products use FMA (`mul_add`), so the
//! two-product step is exact.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let s2 = s2 + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(Dd {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        let p2 = p2 + self.lo * x;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from(q3))
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.to_f64().abs()
    }

    #[inline]
    pub fn scale_pow2(self, k: f64) -> Dd {
        // exact for powers of two
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy)]
pub struct Cdd {
    pub re: Dd,
    pub im: Dd,
}

impl Cdd {
    pub const ONE: Cdd = Cdd {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    #[inline]
    pub fn from_f64(re: f64, im: f64) -> Cdd {
        Cdd {
            re: Dd::from(re),
            im: Dd::from(im),
        }
    }

    #[inline]
    pub fn add(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    #[inline]
    pub fn mul(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    #[inline]
    pub fn mul_dd(self, x: Dd) -> Cdd {
        Cdd {
            re: self.re.mul(x),
            im: self.im.mul(x),
        }
    }

    /// Divide by a complex number given in double precision components,
    /// carrying the quotient in double-double. The components must be exact
    /// (unrounded) doubles for the result to stay at double-double accuracy.
    #[inline]
    pub fn div_c64(self, re: f64, im: f64) -> Cdd {
        // self * conj(d) / |d|^2
        let conj = Cdd::from_f64(re, -im);
        let num = self.mul(conj);
        let den = Dd::from(re).mul(Dd::from(re)).add(Dd::from(im).mul(Dd::from(im)));
        Cdd {
            re: num.re.div(den),
            im: num.im.div(den),
        }
    }

    /// Divide by an exact double.
    #[inline]
    pub fn div_f64(self, x: f64) -> Cdd {
        let d = Dd::from(x);
        Cdd {
            re: self.re.div(d),
            im: self.im.div(d),
        }
    }

    #[inline]
    pub fn norm_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    #[inline]
    pub fn scale_pow2(self, k: f64) -> Cdd {
        Cdd {
            re: self.re.scale_pow2(k),
            im: self.im.scale_pow2(k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_add_keeps_low_bits() {
        let a = Dd::from(1.0);
        let tiny = Dd::from(1e-25);
        let s = a.add(tiny).sub(a);
        assert!((s.to_f64() - 1e-25).abs() < 1e-40);
    }

    #[test]
    fn dd_mul_div_roundtrip() {
        let a = Dd::from(std::f64::consts::PI);
        let b = Dd::from(std::f64::consts::E);
        let q = a.mul(b).div(b);
        assert!((q.to_f64() - std::f64::consts::PI).abs() < 1e-30);
        assert!(q.sub(a).abs() < 1e-30);
    }

    #[test]
    fn cdd_mul_matches_complex() {
        let a = Cdd::from_f64(1.25, -0.5);
        let b = Cdd::from_f64(-2.0, 3.0);
        let p = a.mul(b);
        // (1.25 - 0.5i)(-2 + 3i) = (-2.5 + 1.5) + (3.75 + 1.0)i
        assert!((p.re.to_f64() - (-1.0)).abs() < 1e-30);
        assert!((p.im.to_f64() - 4.75).abs() < 1e-30);
    }

    #[test]
    fn cdd_div_matches() {
        let a = Cdd::from_f64(3.0, 4.0);
        let q = a.div_c64(3.0, 4.0);
        assert!((q.re.to_f64() - 1.0).abs() < 1e-30);
        assert!(q.im.to_f64().abs() < 1e-30);
    }
}
