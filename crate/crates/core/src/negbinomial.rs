//! Negative binomial (Pascal, and Polya for real `r`) CDF and quantiles.
//!
//! `P^NB(r, p, x) = I_p(r, x+1)`. With `nu = r + x + 1`, `xi = r / nu` the
//! asymptotic representation reads `1/2 erfc(-eta sqrt(nu/2)) - R_nu(eta)`.
//! Because `nu` contains the unknown `x`, the inversion works with
//! `rho = eta / sqrt(xi)` and solves `psi(xi) = -rho^2/2`.

use crate::beta_asym::{inc_beta_asym, AsymptoticConfig};
use crate::binomial::{Branch, CdfValue, SERIES_GUARD};
use crate::binomial_inv::{
    eta1_correction, refine_integer, AsymptoticEstimate, InversionResult, NbChain, ASYM_PROBE_MIN,
};
use crate::compensated::NeumaierSum;
use crate::error::{check_alpha, check_open_unit, check_positive, Error, Flagged, Result, Warning};
use crate::roots::newton_bracketed;
use crate::series::{SeriesCoefficients, SeriesKind};
use crate::special_fn::{
    beta_power_term, inc_beta_ref, inverfc, is_symmetric_half, log_ratio_exponent, logistic, logit,
};

/// Validated negative binomial parameters; `x` counts failures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegBinomialParams {
    pub r: f64,
    pub p: f64,
    pub x: u64,
}

impl NegBinomialParams {
    pub fn new(r: f64, p: f64, x: u64) -> Result<Self> {
        check_positive("r", r)?;
        check_open_unit("p", p)?;
        Ok(NegBinomialParams { r, p, x })
    }

    pub fn integer_r(&self) -> bool {
        self.r.fract() == 0.0
    }
}

/// `nu = r + x + 1`, `xi = r / nu`, `eta` and `rho = eta / sqrt(xi)` at a
/// (possibly real) evaluation point `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbTransform {
    pub nu: f64,
    pub xi: f64,
    pub rho: f64,
    pub eta: f64,
}

impl NbTransform {
    pub fn new(r: f64, p: f64, x: f64) -> Result<Self> {
        check_positive("r", r)?;
        check_open_unit("p", p)?;
        if !(x > -1.0 && x.is_finite()) {
            return Err(Error::Domain {
                name: "x",
                value: x,
                expected: "(-1, inf)",
            });
        }
        let nu = r + x + 1.0;
        let xi = r / nu;
        let eta = crate::binomial::eta_binomial(p, xi)?;
        Ok(NbTransform {
            nu,
            xi,
            rho: eta / xi.sqrt(),
            eta,
        })
    }
}

/// `C(k+r-1, k) p^r (1-p)^k`.
pub fn nb_pmf(r: f64, p: f64, k: u64) -> f64 {
    if k == 0 {
        return (r * p.ln()).exp();
    }
    let kf = k as f64;
    beta_power_term(p, r, kf + 1.0) / ((r + kf) * (1.0 - p))
}

fn nb_mode(r: f64, p: f64) -> u64 {
    if r > 1.0 {
        ((r - 1.0) * (1.0 - p) / p).floor() as u64
    } else {
        0
    }
}

/// `sum_{k=lo}^{hi} nb_pmf(k)` (`hi = None` for the infinite upper tail).
fn nb_tail_sum(r: f64, p: f64, lo: u64, hi: Option<u64>) -> f64 {
    let q = 1.0 - p;
    let m = nb_mode(r, p);
    let s = match hi {
        Some(h) => m.clamp(lo, h),
        None => m.max(lo),
    };
    let seed = nb_pmf(r, p, s);
    let mut acc = NeumaierSum::new();
    acc.add(seed);
    let tiny = f64::EPSILON * 1e-3;
    let mut t = seed;
    let mut k = s;
    while k > lo {
        let kf = k as f64;
        t *= kf / ((kf - 1.0 + r) * q);
        k -= 1;
        acc.add(t);
        if t <= tiny * acc.value() {
            break;
        }
    }
    let mut t = seed;
    let mut k = s;
    while hi.is_none_or(|h| k < h) {
        let kf = k as f64;
        t *= (kf + r) / (kf + 1.0) * q;
        k += 1;
        acc.add(t);
        if t <= tiny * acc.value() || t == 0.0 {
            break;
        }
    }
    acc.value()
}

/// `p_t = r / (r + x + 1)`: for `p < p_t` the lower tail is the smaller one.
pub fn nb_transition_point(r: f64, x: f64) -> f64 {
    r / (r + x + 1.0)
}

/// `P^NB(r, p, x)` with the tail that was computed. Integer `r` is summed
/// exactly; real `r` goes through the reference incomplete beta function.
pub fn nb_cdf_value(params: NegBinomialParams) -> Result<CdfValue> {
    let NegBinomialParams { r, p, x } = NegBinomialParams::new(params.r, params.p, params.x)?;
    let xf = x as f64;
    let lower = p < nb_transition_point(r, xf);
    if is_symmetric_half(p, r, xf + 1.0) {
        return Ok(CdfValue {
            value: 0.5,
            branch: Branch::P,
            warning: None,
        });
    }
    let value = match (params.integer_r(), lower) {
        (true, true) => nb_tail_sum(r, p, 0, Some(x)),
        (true, false) => 1.0 - nb_tail_sum(r, p, x + 1, None),
        (false, true) => inc_beta_ref(p, r, xf + 1.0)?,
        (false, false) => 1.0 - inc_beta_ref(1.0 - p, xf + 1.0, r)?,
    };
    Ok(CdfValue {
        value,
        branch: if lower { Branch::P } else { Branch::Q },
        warning: None,
    })
}

/// `P^NB(r, p, x) = sum_{k<=x} C(k+r-1, k) p^r (1-p)^k`.
pub fn nb_cdf_exact(params: NegBinomialParams) -> Result<f64> {
    nb_cdf_value(params).map(|v| v.value)
}

/// `Q^NB(r, p, x) = 1 - P^NB(r, p, x)`.
pub fn nb_sf_exact(params: NegBinomialParams) -> Result<f64> {
    let v = nb_cdf_value(params)?;
    let NegBinomialParams { r, p, x } = params;
    Ok(match (v.branch, params.integer_r()) {
        (Branch::P, _) => 1.0 - v.value,
        (Branch::Q, true) => nb_tail_sum(r, p, x + 1, None),
        (Branch::Q, false) => inc_beta_ref(1.0 - p, x as f64 + 1.0, r)?,
    })
}

/// `psi(xi) = ((1-xi)/xi) ln((1-p)/(1-xi)) + ln(p/xi) = -eta^2 / (2 xi)`.
pub fn psi(xi: f64, p: f64) -> Result<f64> {
    check_open_unit("xi", xi)?;
    check_open_unit("p", p)?;
    Ok(log_ratio_exponent(p, xi, xi, 1.0 - xi) / xi)
}

/// `psi'(xi) = -ln((1-p)/(1-xi)) / xi^2`.
pub fn psi_prime(xi: f64, p: f64) -> Result<f64> {
    check_open_unit("xi", xi)?;
    check_open_unit("p", p)?;
    Ok(-((xi - p) / (1.0 - xi)).ln_1p() / (xi * xi))
}

/// `rho(xi) = eta / sqrt(xi)`; strictly decreasing in `xi`.
fn rho_of_xi(xi: f64, p: f64) -> f64 {
    let h = (-2.0 * log_ratio_exponent(p, xi, xi, 1.0 - xi)).max(0.0).sqrt() / xi.sqrt();
    if xi < p {
        h
    } else if xi > p {
        -h
    } else {
        0.0
    }
}

/// `xi = p - p(1-p) sum_{k<=k_max} r_k rho~^k` with `rho~ = rho / sqrt(1-p)`.
pub fn xi_from_rho_series(rho: f64, p: f64, k_max: usize) -> Flagged<f64> {
    let tilde = rho / (1.0 - p).sqrt();
    let r = SeriesCoefficients::pinned(SeriesKind::XiOfRho, p);
    let value = p - p * (1.0 - p) * r.eval(tilde, k_max);
    let warning = (tilde.abs() > SERIES_GUARD).then_some(Warning::OutsideSeriesRadius {
        scaled: tilde,
        radius: SERIES_GUARD,
    });
    Flagged { value, warning }
}

/// `p = xi + xi(1-xi) sum_{k<=k_max} s_k rho^^k` with `rho^ = rho / sqrt(1-xi)`.
pub fn p_from_rho_series(rho: f64, xi: f64, k_max: usize) -> Flagged<f64> {
    let hat = rho / (1.0 - xi).sqrt();
    let s = SeriesCoefficients::pinned(SeriesKind::POfRho, xi);
    let value = xi + xi * (1.0 - xi) * s.eval(hat, k_max);
    let warning = (hat.abs() > SERIES_GUARD).then_some(Warning::OutsideSeriesRadius {
        scaled: hat,
        radius: SERIES_GUARD,
    });
    Flagged { value, warning }
}

/// Solve `psi(xi) = -rho^2/2` on the side `sign(p - xi) = sign(rho)`.
///
/// For `rho < 0` the root exists only when `ln p < -rho^2/2`.
pub fn solve_psi(rho: f64, p: f64, cfg: &AsymptoticConfig) -> Result<f64> {
    check_open_unit("p", p)?;
    if !rho.is_finite() {
        return Err(Error::NoPsiSolution { rho, p });
    }
    if rho == 0.0 {
        return Ok(p);
    }
    if rho < 0.0 && -0.5 * rho * rho <= p.ln() {
        return Err(Error::NoPsiSolution { rho, p });
    }
    const W_LO: f64 = -708.0;
    const W_HI: f64 = 36.7;
    let wp = logit(p);
    let (lo, hi) = if rho > 0.0 { (W_LO, wp) } else { (wp, W_HI) };
    let tilde = rho / (1.0 - p).sqrt();
    let start = if tilde.abs() <= cfg.series_radius {
        let s = xi_from_rho_series(rho, p, 5).value;
        if s > 0.0 && s < 1.0 {
            logit(s)
        } else {
            0.5 * (lo + hi)
        }
    } else if rho > 0.0 {
        // xi -> 0: eta tends to sqrt(-2 ln(1-p))
        let xi = -2.0 * (-p).ln_1p() / (rho * rho);
        logit(xi.min(0.5 * p))
    } else {
        0.5 * (lo + hi)
    };
    let sq1p = (1.0 - p).sqrt();
    let w = newton_bracketed(
        |w| {
            let xi = logistic(w);
            let rx = rho_of_xi(xi, p);
            let d = if rx == 0.0 {
                -(1.0 - xi) / sq1p
            } else {
                ((xi - p) / (1.0 - xi)).ln_1p() / (xi * xi * rx) * xi * (1.0 - xi)
            };
            (rx - rho, d)
        },
        lo,
        hi,
        start.clamp(lo, hi),
        false,
        cfg.newton_tol,
        cfg.newton_max_iter,
    )?;
    let xi = logistic(w);
    if !(xi > 0.0 && xi < 1.0) || (rho_of_xi(xi, p) - rho).abs() > 1e-9 * rho.abs().max(1.0) {
        return Err(Error::NoPsiSolution { rho, p });
    }
    Ok(xi)
}

/// Steps 1-6 of the negative binomial inversion.
pub fn nb_asymptotic_estimate(
    r: f64,
    p: f64,
    alpha: f64,
    cfg: &AsymptoticConfig,
) -> Result<(AsymptoticEstimate, NbChain)> {
    check_positive("r", r)?;
    check_open_unit("p", p)?;
    check_alpha(alpha)?;
    let z = inverfc(2.0 * alpha)?;
    let rho0 = -z * (2.0 / r).sqrt();
    let xi0 = solve_psi(rho0, p, cfg)?;
    let x0 = r / xi0 - r - 1.0;
    let eta0 = rho0 * xi0.sqrt();
    let eta1 = eta1_correction(eta0, xi0, p, cfg)?;
    let nu = r + x0 + 1.0;
    let eta = eta0 + eta1 / nu;
    let rho = eta / xi0.sqrt();
    let xi = solve_psi(rho, p, cfg)?;
    Ok((
        AsymptoticEstimate {
            eta0,
            xi0,
            eta1,
            eta,
            xi,
            nu,
            x_real: r / xi - r - 1.0,
        },
        NbChain { z, rho0, rho, x0 },
    ))
}

/// Largest `x` searched: mean plus twenty standard deviations.
pub fn nb_scan_limit(r: f64, p: f64) -> u64 {
    let q = 1.0 - p;
    let lim = r * q / p + 20.0 * (r * q).sqrt() / p + 20.0;
    if lim >= u64::MAX as f64 {
        u64::MAX
    } else {
        lim.ceil() as u64
    }
}

fn nb_probe(r: f64, p: f64, k: u64, alpha: f64, cfg: &AsymptoticConfig) -> Result<f64> {
    let exact = || nb_cdf_exact(NegBinomialParams { r, p, x: k });
    if r < ASYM_PROBE_MIN as f64 {
        return exact();
    }
    let nu = r + k as f64 + 1.0;
    let guard = 1e-6 * (ASYM_PROBE_MIN as f64 / nu).powi(2) + 1e-12;
    match inc_beta_asym(p, r, k as f64 + 1.0, cfg) {
        Ok(v) if v.warning.is_none() && (v.value - alpha).abs() > guard => Ok(v.value),
        _ => exact(),
    }
}

/// Smallest `x` with `alpha <= P^NB(r, p, x)`.
///
/// `alpha = 1` is rejected as unreachable: `P^NB < 1` for every finite `x`.
pub fn nb_invert(r: f64, p: f64, alpha: f64, cfg: &AsymptoticConfig) -> Result<InversionResult> {
    check_positive("r", r)?;
    if r < 1.0 {
        return Err(Error::Domain {
            name: "r",
            value: r,
            expected: "[1, inf)",
        });
    }
    check_open_unit("p", p)?;
    check_alpha(alpha)?;
    let cap = nb_scan_limit(r, p);
    if alpha == 1.0 {
        return Err(Error::Unreachable { alpha, limit: cap });
    }
    let p0 = nb_pmf(r, p, 0);
    if alpha <= p0 {
        let mut out = InversionResult::from_estimate(&AsymptoticEstimate::empty(), 0, p0, 0);
        out.fallback_used = true;
        return Ok(out);
    }
    let probe = |k: u64| {
        if k > cap {
            Err(Error::Unreachable { alpha, limit: cap })
        } else {
            nb_probe(r, p, k, alpha, cfg)
        }
    };
    match nb_asymptotic_estimate(r, p, alpha, cfg) {
        Ok((est, chain)) if est.x_real.is_finite() => {
            let guess = est.x_real.ceil().clamp(0.0, cap as f64) as u64;
            let (x, v, steps) = refine_integer(guess, cap, alpha, probe)?;
            let mut out = InversionResult::from_estimate(&est, x, v, steps);
            out.nb = Some(chain);
            Ok(out)
        }
        Ok(_) | Err(Error::NoPsiSolution { .. }) => {
            let mean = r * (1.0 - p) / p;
            let (x, v, steps) = refine_integer(mean.ceil() as u64, cap, alpha, probe)?;
            let mut out = InversionResult::from_estimate(&AsymptoticEstimate::empty(), x, v, steps);
            out.fallback_used = true;
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

/// Reference quantile by one cumulative pass over the mass up to [`nb_scan_limit`].
pub fn nb_quantile_scan_oracle(r: f64, p: f64, alpha: f64) -> Result<u64> {
    check_positive("r", r)?;
    check_open_unit("p", p)?;
    check_alpha(alpha)?;
    let cap = nb_scan_limit(r, p);
    if alpha == 1.0 {
        return Err(Error::Unreachable { alpha, limit: cap });
    }
    let q = 1.0 - p;
    let len = cap as usize + 1;
    let m = (nb_mode(r, p) as usize).min(cap as usize);
    let mut mass = vec![0.0; len];
    mass[m] = nb_pmf(r, p, m as u64);
    for k in (0..m).rev() {
        let kf = (k + 1) as f64;
        mass[k] = mass[k + 1] * kf / ((kf - 1.0 + r) * q);
    }
    for k in m..len - 1 {
        let kf = k as f64;
        mass[k + 1] = mass[k] * (kf + r) / (kf + 1.0) * q;
    }
    let mut acc = NeumaierSum::new();
    for (k, t) in mass.iter().enumerate() {
        acc.add(*t);
        let v = if is_symmetric_half(p, r, k as f64 + 1.0) {
            0.5
        } else {
            acc.value()
        };
        if v >= alpha {
            return Ok(k as u64);
        }
    }
    Err(Error::Unreachable { alpha, limit: cap })
}
