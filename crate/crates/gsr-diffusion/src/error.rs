use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("log-gamma pole: {z} is a nonpositive integer")]
    GammaPole { z: Complex64 },

    #[error("whittaker M overflow: argument {z} exceeds threshold {threshold}")]
    Overflow { z: f64, threshold: f64 },

    #[error("cancellation: relative error estimate {estimate:.3e} exceeds requested {requested:.3e}")]
    Cancellation { estimate: f64, requested: f64 },

    #[error("time {t} below supported minimum {min} (delta initial condition regime)")]
    SmallTime { t: f64, min: f64 },

    #[error("lambda = {lambda} lies on the spectrum (pole at 0 or cut along the negative axis)")]
    OnSpectrum { lambda: Complex64 },

    #[error("Talbot contour violation: {detail}")]
    ContourViolation { detail: String },

    #[error("PDE instability at step {step}: mass drift {mass_drift:.3e}, min density {min_density:.3e}")]
    PdeInstability {
        step: usize,
        mass_drift: f64,
        min_density: f64,
    },

    #[error("invalid input: {what}")]
    InvalidInput { what: String },
}

impl Error {
    pub(crate) fn invalid(what: impl Into<String>) -> Self {
        Error::InvalidInput { what: what.into() }
    }
}
