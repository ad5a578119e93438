//! Exact pre-change distribution of the Generalized Shiryaev--Roberts (GSR)
//! diffusion `dR_t = dt + mu R_t dB_t`, `R_0 = r >= 0`.
//!
//! The crate evaluates, in closed form, the transition density `p(x,t|r)` of
//! the GSR statistic under the no-drift measure, together with the stationary
//! density, the resolvent (Green's function) of the generator, the spectral
//! eigenfunctions, and the zero-headstart cdf. Three independent numerical
//! oracles (Monte Carlo path simulation, a Crank--Nicolson solver for the
//! Kolmogorov forward equation, and Talbot inversion of the Green's function)
//! validate every formula without sharing code with the closed-form path.
//!
//! Layout:
//! - [`special`]: complex log-gamma, Whittaker `W`/regularized `M`.
//! - [`quad`]: adaptive Gauss--Kronrod quadrature, finite and semi-infinite.
//! - [`density`]: the closed-form objects themselves.
//! - [`oracles`]: the three ground truths.
//! - [`verify`]: the runnable invariant suites used by the CLI and tests.

pub mod dd;
pub mod density;
pub mod oracles;
pub mod params;
pub mod quad;
pub mod special;
pub mod verify;

mod error;

pub use error::{Error, Result};
pub use params::{DensityQuery, ModelParams, SpectralPoint};
pub use quad::{DecayModel, EvalFlags, EvalResult, QuadratureSpec};
