//! Quantiles of the binomial distribution: the smallest integer `x` with
//! `alpha <= P(n, p, x)`.
//!
//! The asymptotic estimate solves `1/2 erfc(eta0 sqrt(nu/2)) = alpha`, corrects
//! it to `eta = eta0 + eta1 / nu` with `eta1 = ln f(eta0) / eta0`, and maps back to
//! `x = xi nu - 1`. The integer answer is then confirmed by CDF probes.

use crate::beta_asym::AsymptoticConfig;
use crate::binomial::{self, cdf, cdf_exact, check_n, pmf, xi_from_eta, BinomialParams, CdfMethod};
use crate::compensated::NeumaierSum;
use crate::error::{check_alpha, check_open_unit, Error, Result};
use crate::special_fn::{inverfc, is_symmetric_half};

/// Below this `n` every refinement probe is an exact tail sum.
pub const ASYM_PROBE_MIN: u64 = 10_000;

/// Intermediate values of the negative binomial chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbChain {
    /// `inverfc(2 alpha)`.
    pub z: f64,
    /// `rho = -z sqrt(2/r)` of the first step.
    pub rho0: f64,
    /// `rho = eta / sqrt(xi0)` of the corrected step.
    pub rho: f64,
    /// `x0 = r/xi0 - r - 1`.
    pub x0: f64,
}

/// The asymptotic chain before integer refinement. Fields that were not
/// reached are `NaN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    pub eta0: f64,
    pub xi0: f64,
    pub eta1: f64,
    pub eta: f64,
    pub xi: f64,
    pub nu: f64,
    pub x_real: f64,
}

impl AsymptoticEstimate {
    pub(crate) fn empty() -> Self {
        AsymptoticEstimate {
            eta0: f64::NAN,
            xi0: f64::NAN,
            eta1: f64::NAN,
            eta: f64::NAN,
            xi: f64::NAN,
            nu: f64::NAN,
            x_real: f64::NAN,
        }
    }
}

/// Result of an inversion together with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionResult {
    /// Real-valued solution before rounding (`NaN` on the fallback path).
    pub x_real: f64,
    pub x_int: u64,
    /// CDF at `x_int`.
    pub achieved_cdf: f64,
    pub eta0: f64,
    pub eta1: f64,
    pub xi0: f64,
    pub xi: f64,
    pub eta: f64,
    pub nu: f64,
    /// Number of CDF evaluations at integer points.
    pub refinement_steps: usize,
    /// True when the asymptotic chain was skipped or failed and the quantile came
    /// from a direct integer search.
    pub fallback_used: bool,
    pub nb: Option<NbChain>,
}

impl InversionResult {
    pub(crate) fn from_estimate(est: &AsymptoticEstimate, x_int: u64, achieved: f64, steps: usize) -> Self {
        InversionResult {
            x_real: est.x_real,
            x_int,
            achieved_cdf: achieved,
            eta0: est.eta0,
            eta1: est.eta1,
            xi0: est.xi0,
            xi: est.xi,
            eta: est.eta,
            nu: est.nu,
            refinement_steps: steps,
            fallback_used: false,
            nb: None,
        }
    }
}

/// Leading terms of `eta1` in powers of `eta0`, with `lambda = sqrt(xi (1-xi))`.
pub fn eta1_series(eta0: f64, xi: f64) -> f64 {
    let l = (xi * (1.0 - xi)).sqrt();
    let x2 = xi * xi;
    let t = 2.0 * xi - 1.0;
    let c0 = t / (3.0 * l);
    let c1 = -(5.0 * x2 - 5.0 * xi - 1.0) / (36.0 * l * l);
    let c2 = t * (23.0 * x2 - 23.0 * xi - 1.0) / (1620.0 * l * l * l);
    let c3 = -(31.0 * x2 * x2 - 62.0 * x2 * xi + 33.0 * x2 - 2.0 * xi + 7.0) / (6480.0 * l * l * l * l);
    ((c3 * eta0 + c2) * eta0 + c1) * eta0 + c0
}

/// `eta1 = ln f(eta0) / eta0` with `f(eta0) = lambda eta0 / (p - xi0)`.
///
/// Uses [`eta1_series`] when `|eta0| / lambda < cfg.eta1_switch`, where the
/// closed form suffers from cancellation in `p - xi0`.
pub fn eta1_correction(eta0: f64, xi0: f64, p: f64, cfg: &AsymptoticConfig) -> Result<f64> {
    check_open_unit("xi0", xi0)?;
    check_open_unit("p", p)?;
    let lambda = (xi0 * (1.0 - xi0)).sqrt();
    if (eta0 / lambda).abs() < cfg.eta1_switch {
        return Ok(eta1_series(eta0, xi0));
    }
    let f = lambda * eta0 / (p - xi0);
    // also rejects NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(f > 0.0) {
        return Err(Error::Domain {
            name: "eta0",
            value: eta0,
            expected: "sign(eta0) = sign(p - xi0)",
        });
    }
    Ok(f.ln() / eta0)
}

/// Steps 1-5 of the asymptotic inversion (no rounding, no refinement).
pub fn asymptotic_estimate(n: u64, p: f64, alpha: f64, cfg: &AsymptoticConfig) -> Result<AsymptoticEstimate> {
    check_n(n)?;
    check_open_unit("p", p)?;
    check_alpha(alpha)?;
    let nu = n as f64 + 1.0;
    let eta0 = (2.0 / nu).sqrt() * inverfc(2.0 * alpha)?;
    let xi0 = xi_from_eta(eta0, p, cfg)?;
    let eta1 = eta1_correction(eta0, xi0, p, cfg)?;
    let eta = eta0 + eta1 / nu;
    let xi = xi_from_eta(eta, p, cfg)?;
    Ok(AsymptoticEstimate {
        eta0,
        xi0,
        eta1,
        eta,
        xi,
        nu,
        x_real: xi * nu - 1.0,
    })
}

/// Smallest `k` in `[0, cap]` with `alpha <= probe(k)`, starting near `guess`.
///
/// The first probe is at `guess - 1`; from there the search gallops in the
/// indicated direction and finishes by bisection. Returns the quantile, the CDF
/// there, and the number of probes. `probe(cap)` must reach `alpha`.
pub(crate) fn refine_integer<F>(guess: u64, cap: u64, alpha: f64, mut probe: F) -> Result<(u64, f64, usize)>
where
    F: FnMut(u64) -> Result<f64>,
{
    let mut steps = 0usize;
    let mut eval = |k: u64| -> Result<f64> {
        steps += 1;
        probe(k)
    };
    let k0 = guess.min(cap).saturating_sub(1);
    let v0 = eval(k0)?;
    // lo: known P < alpha (None = below 0); hi: known P >= alpha
    let (mut lo, mut hi, mut hv);
    if v0 >= alpha {
        hi = k0;
        hv = v0;
        let mut stride = 1u64;
        loop {
            if hi == 0 {
                return Ok((0, hv, steps));
            }
            let k = hi.saturating_sub(stride);
            let v = eval(k)?;
            if v >= alpha {
                hi = k;
                hv = v;
                stride = stride.saturating_mul(2);
            } else {
                lo = k;
                break;
            }
        }
    } else {
        lo = k0;
        let mut stride = 1u64;
        loop {
            if lo >= cap {
                return Err(Error::Unreachable { alpha, limit: cap });
            }
            let k = lo.saturating_add(stride).min(cap);
            let v = eval(k)?;
            if v >= alpha {
                hi = k;
                hv = v;
                break;
            }
            lo = k;
            stride = stride.saturating_mul(2);
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let v = eval(mid)?;
        if v >= alpha {
            hi = mid;
            hv = v;
        } else {
            lo = mid;
        }
    }
    Ok((hi, hv, steps))
}

fn probe_cdf(n: u64, p: f64, k: u64, alpha: f64, cfg: &AsymptoticConfig) -> f64 {
    if k >= n {
        return 1.0;
    }
    let exact = || cdf_exact(BinomialParams { n, p, x: k });
    if n < ASYM_PROBE_MIN {
        return exact();
    }
    let nu = n as f64 + 1.0;
    let guard = 1e-6 * (ASYM_PROBE_MIN as f64 / nu).powi(2) + 1e-12;
    match cdf(n, p, k as f64, CdfMethod::BetaAsym, cfg) {
        Ok(v) if v.warning.is_none() && (v.value - alpha).abs() > guard => v.value,
        _ => exact(),
    }
}

/// Smallest `x` with `alpha <= P(n, p, x)`.
pub fn invert(n: u64, p: f64, alpha: f64, cfg: &AsymptoticConfig) -> Result<InversionResult> {
    check_n(n)?;
    check_open_unit("p", p)?;
    check_alpha(alpha)?;
    if alpha == 1.0 {
        let mut est = AsymptoticEstimate::empty();
        est.x_real = n as f64;
        return Ok(InversionResult::from_estimate(&est, n, 1.0, 0));
    }
    let p0 = pmf(n, p, 0);
    if alpha <= p0 {
        let mut r = InversionResult::from_estimate(&AsymptoticEstimate::empty(), 0, p0, 0);
        r.fallback_used = true;
        return Ok(r);
    }
    let probe = |k: u64| Ok(probe_cdf(n, p, k, alpha, cfg));
    match asymptotic_estimate(n, p, alpha, cfg) {
        Ok(est) if est.x_real.is_finite() => {
            let guess = est.x_real.ceil().clamp(0.0, n as f64) as u64;
            let (x, v, steps) = refine_integer(guess, n, alpha, probe)?;
            Ok(InversionResult::from_estimate(&est, x, v, steps))
        }
        Ok(_) | Err(Error::EtaOutOfRange { .. }) | Err(Error::NoPreimage { .. }) => {
            let (x, v, steps) = bisect_integer(n, alpha, probe)?;
            let mut est = AsymptoticEstimate::empty();
            est.nu = n as f64 + 1.0;
            if let Ok(z) = inverfc(2.0 * alpha) {
                est.eta0 = (2.0 / est.nu).sqrt() * z;
            }
            let mut r = InversionResult::from_estimate(&est, x, v, steps);
            r.fallback_used = true;
            Ok(r)
        }
        Err(e) => Err(e),
    }
}

/// Integer bisection on `[0, n]` given `P(0) < alpha <= P(n) = 1`.
fn bisect_integer<F>(n: u64, alpha: f64, mut probe: F) -> Result<(u64, f64, usize)>
where
    F: FnMut(u64) -> Result<f64>,
{
    let (mut lo, mut hi, mut hv) = (0u64, n, 1.0);
    let mut steps = 0;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let v = probe(mid)?;
        steps += 1;
        if v >= alpha {
            hi = mid;
            hv = v;
        } else {
            lo = mid;
        }
    }
    Ok((hi, hv, steps))
}

/// Reference quantile by one cumulative pass over the full probability mass.
pub fn quantile_scan_oracle(n: u64, p: f64, alpha: f64) -> Result<u64> {
    check_n(n)?;
    check_open_unit("p", p)?;
    check_alpha(alpha)?;
    if alpha == 1.0 {
        return Ok(n);
    }
    let masses = pmf_table(n, p);
    let mut acc = NeumaierSum::new();
    for (k, m) in masses.iter().enumerate() {
        acc.add(*m);
        let v = if is_symmetric_half(1.0 - p, (n - k as u64) as f64, k as f64 + 1.0) {
            0.5
        } else {
            acc.value()
        };
        if v >= alpha {
            return Ok(k as u64);
        }
    }
    Ok(n)
}

/// All `pmf(k)`, `k = 0..=n`, generated outward from the mode.
pub(crate) fn pmf_table(n: u64, p: f64) -> Vec<f64> {
    let q = 1.0 - p;
    let nf = n as f64;
    let m = (((nf + 1.0) * p).floor() as u64).min(n) as usize;
    let mut out = vec![0.0; n as usize + 1];
    out[m] = binomial::pmf(n, p, m as u64);
    for k in (0..m).rev() {
        let kf = (k + 1) as f64;
        out[k] = out[k + 1] * kf / (nf - kf + 1.0) * (q / p);
    }
    for k in m..n as usize {
        let kf = k as f64;
        out[k + 1] = out[k] * (nf - kf) / (kf + 1.0) * (p / q);
    }
    out
}
