//! Binomial and negative binomial distribution functions and their inverses.
//!
//! Both CDFs are special cases of the regularized incomplete beta function
//! `I_y(a, b)`. Besides exact summation and a continued-fraction reference for
//! `I_y(a, b)`, the crate implements the uniform asymptotic representation
//!
//! ```text
//! I_x(a, b) = 1/2 erfc(-eta sqrt(nu/2)) - R_nu(eta),    nu = a + b,
//! ```
//!
//! and the quantile algorithms built on it: the reduced equation
//! `1/2 erfc(eta0 sqrt(nu/2)) = alpha` is solved first, a perturbation term
//! `eta1 / nu` corrects for the non-Gaussian factor, and the real-valued result
//! is rounded up and refined against the exact CDF so the returned integer
//! quantile is always the smallest `x` with `alpha <= P(x)`.
//!
//! ```
//! use binv::{binomial_inv, AsymptoticConfig};
//!
//! let cfg = AsymptoticConfig::default();
//! let q = binomial_inv::invert(50, 0.4, 0.51, &cfg).unwrap();
//! assert_eq!(q.x_int, 20);
//! assert!((q.x_real - 19.554).abs() < 1e-3);
//! ```

pub mod beta_asym;
pub mod binomial;
pub mod binomial_inv;
pub mod cli;
mod compensated;
pub mod error;
pub mod negbinomial;
pub mod oracle;
pub mod par;
mod roots;
pub mod series;
pub mod special_fn;

pub use beta_asym::{AsymptoticConfig, EtaTransform};
pub use binomial::{BinomialParams, Branch, CdfMethod, CdfValue};
pub use binomial_inv::{InversionResult, NbChain};
pub use error::{Error, Flagged, Result, Warning};
pub use negbinomial::{NbTransform, NegBinomialParams};
pub use series::{SeriesCoefficients, SeriesKind};
