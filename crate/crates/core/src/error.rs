use std::fmt;

/// Errors raised by the evaluation and inversion routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("{name} = {value} outside {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// The target probability is not in `(0, 1]`.
    #[error("alpha = {0} outside (0, 1]")]
    InvalidAlpha(f64),

    /// No `xi` in `(0, 1)` satisfies the eta equation for this `p`.
    #[error(
        "eta = {eta} outside the attainable range ({lower}, {upper}) for p = {p}; \
         no xi in (0, 1) exists"
    )]
    EtaOutOfRange { eta: f64, p: f64, lower: f64, upper: f64 },

    /// No representable `x` in `(0, 1)` maps to the requested eta.
    #[error("no representable x in (0, 1) maps to eta = {eta} at xi = {xi}")]
    NoPreimage { eta: f64, xi: f64 },

    /// `psi(xi) = -rho^2/2` has no root on the required side of `p`.
    #[error(
        "psi(xi) = -rho^2/2 has no solution in (p, 1) for rho = {rho}, p = {p}: \
         requires log p < -rho^2/2"
    )]
    NoPsiSolution { rho: f64, p: f64 },

    /// The requested quantile lies beyond the range reachable in double precision.
    #[error("alpha = {alpha} is not reached by the CDF within x <= {limit}")]
    Unreachable { alpha: f64, limit: u64 },

    /// An iterative method stalled.
    #[error("{method} did not converge within {iterations} iterations")]
    NoConvergence { method: &'static str, iterations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_open_unit(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "(0, 1)",
        })
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "(0, inf)",
        })
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

/// Non-fatal accuracy diagnostics attached to an approximate value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// A truncated series was evaluated beyond its guard radius.
    OutsideSeriesRadius { scaled: f64, radius: f64 },
    /// `xi` lies outside the strip `[delta, 1 - delta]` where the expansion is uniform.
    OutsideUniformStrip { xi: f64 },
    /// Higher `C_k` were evaluated from the Taylor series outside its switch radius.
    ExtrapolatedCoefficients { scaled: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Warning::OutsideSeriesRadius { scaled, radius } => {
                write!(f, "series argument {scaled} exceeds guard radius {radius}")
            }
            Warning::OutsideUniformStrip { xi } => {
                write!(f, "xi = {xi} outside the uniform-validity strip")
            }
            Warning::ExtrapolatedCoefficients { scaled } => {
                write!(f, "C_k (k >= 2) extrapolated from series at scaled eta {scaled}")
            }
        }
    }
}

/// A value together with an optional accuracy warning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flagged<T> {
    pub value: T,
    pub warning: Option<Warning>,
}

impl<T> Flagged<T> {
    pub fn clean(value: T) -> Self {
        Flagged { value, warning: None }
    }

    pub fn is_clean(&self) -> bool {
        self.warning.is_none()
    }
}
