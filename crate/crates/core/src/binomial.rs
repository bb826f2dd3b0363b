//! Binomial CDF by exact summation, through the incomplete beta relation
//! `P(n, p, x) = I_{1-p}(n-x, x+1)`, and through its uniform asymptotic
//! expansion; plus the eta/xi/p series used by the inversion.

use crate::beta_asym::{eta_from_x, f_series, inc_beta_asym, AsymptoticConfig};
use crate::compensated::NeumaierSum;
use crate::error::{check_open_unit, Error, Flagged, Result, Warning};
use crate::roots::newton_bracketed;
use crate::series::{SeriesCoefficients, SeriesKind};
use crate::special_fn::{beta_power_term, inc_beta_ref, is_symmetric_half, logistic, logit};

/// Guard on `|eta~|` and `|eta^|` for the truncated five-term series.
pub const SERIES_GUARD: f64 = 0.5;

/// Validated binomial parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialParams {
    pub n: u64,
    pub p: f64,
    pub x: u64,
}

impl BinomialParams {
    pub fn new(n: u64, p: f64, x: u64) -> Result<Self> {
        check_n(n)?;
        check_open_unit("p", p)?;
        if x > n {
            return Err(Error::Domain {
                name: "x",
                value: x as f64,
                expected: "[0, n]",
            });
        }
        Ok(BinomialParams { n, p, x })
    }
}

pub(crate) fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain {
            name: "n",
            value: 0.0,
            expected: "[1, inf)",
        });
    }
    Ok(())
}

/// Which tail was summed or expanded: `P` directly, or `Q` then `P = 1 - Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    P,
    Q,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::P => "P",
            Branch::Q => "Q",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdfMethod {
    /// Exact summation for integer `x`, reference incomplete beta otherwise.
    Auto,
    Exact,
    BetaRef,
    BetaAsym,
}

/// A CDF value `P` with the tail that was actually computed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub value: f64,
    pub branch: Branch,
    pub warning: Option<Warning>,
}

/// `p_t = (x+1)/(n+1)`: for `p > p_t` the lower tail `P` is the smaller one.
pub fn transition_point(n: u64, x: f64) -> f64 {
    (x + 1.0) / (n as f64 + 1.0)
}

/// `C(n, k) p^k (1-p)^(n-k)` without intermediate overflow.
pub fn pmf(n: u64, p: f64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let nf = n as f64;
    if k == 0 {
        return (nf * (-p).ln_1p()).exp();
    }
    if k == n {
        return (nf * p.ln()).exp();
    }
    let kf = k as f64;
    beta_power_term(p, kf + 1.0, nf - kf + 1.0) / ((nf + 1.0) * p * (1.0 - p))
}

fn mode(n: u64, p: f64) -> u64 {
    (((n as f64 + 1.0) * p).floor() as u64).min(n)
}

/// `sum_{k=lo}^{hi} pmf(k)`, seeded at the largest term and extended both ways
/// with the term-ratio recurrence until the terms are negligible.
pub(crate) fn tail_sum(n: u64, p: f64, lo: u64, hi: u64) -> f64 {
    if lo > hi {
        return 0.0;
    }
    let q = 1.0 - p;
    let nf = n as f64;
    let s = mode(n, p).clamp(lo, hi);
    let seed = pmf(n, p, s);
    let mut acc = NeumaierSum::new();
    acc.add(seed);
    let tiny = f64::EPSILON * 1e-3;
    let mut t = seed;
    let mut k = s;
    while k > lo {
        let kf = k as f64;
        t *= kf / (nf - kf + 1.0) * (q / p);
        k -= 1;
        acc.add(t);
        if t <= tiny * acc.value() {
            break;
        }
    }
    let mut t = seed;
    let mut k = s;
    while k < hi {
        let kf = k as f64;
        t *= (nf - kf) / (kf + 1.0) * (p / q);
        k += 1;
        acc.add(t);
        if t <= tiny * acc.value() {
            break;
        }
    }
    acc.value()
}

/// Exact `P(n, p, x)`, summing the smaller tail.
pub fn cdf_exact_value(params: BinomialParams) -> CdfValue {
    let BinomialParams { n, p, x } = params;
    if x >= n {
        return CdfValue {
            value: 1.0,
            branch: Branch::P,
            warning: None,
        };
    }
    if is_symmetric_half(1.0 - p, (n - x) as f64, x as f64 + 1.0) {
        return CdfValue {
            value: 0.5,
            branch: Branch::P,
            warning: None,
        };
    }
    if p > transition_point(n, x as f64) {
        CdfValue {
            value: tail_sum(n, p, 0, x),
            branch: Branch::P,
            warning: None,
        }
    } else {
        CdfValue {
            value: 1.0 - tail_sum(n, p, x + 1, n),
            branch: Branch::Q,
            warning: None,
        }
    }
}

/// `P(n, p, x) = sum_{k<=x} C(n,k) p^k (1-p)^(n-k)`.
pub fn cdf_exact(params: BinomialParams) -> f64 {
    cdf_exact_value(params).value
}

/// `Q(n, p, x) = 1 - P(n, p, x)`, summing the smaller tail.
pub fn sf_exact(params: BinomialParams) -> f64 {
    let BinomialParams { n, p, x } = params;
    if x >= n {
        return 0.0;
    }
    if p > transition_point(n, x as f64) {
        1.0 - tail_sum(n, p, 0, x)
    } else {
        tail_sum(n, p, x + 1, n)
    }
}

/// `P(n, p, x)` by the requested method. The beta paths accept real `x` in `[0, n]`.
pub fn cdf(n: u64, p: f64, x: f64, method: CdfMethod, cfg: &AsymptoticConfig) -> Result<CdfValue> {
    check_n(n)?;
    check_open_unit("p", p)?;
    let nf = n as f64;
    if !(x >= 0.0 && x <= nf) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "[0, n]",
        });
    }
    let integral = x.fract() == 0.0;
    let method = match method {
        CdfMethod::Auto if integral => CdfMethod::Exact,
        CdfMethod::Auto => CdfMethod::BetaRef,
        m => m,
    };
    if method == CdfMethod::Exact {
        if !integral {
            return Err(Error::Domain {
                name: "x",
                value: x,
                expected: "an integer for exact summation",
            });
        }
        return Ok(cdf_exact_value(BinomialParams::new(n, p, x as u64)?));
    }
    if x == nf {
        return Ok(CdfValue {
            value: 1.0,
            branch: Branch::P,
            warning: None,
        });
    }
    let lower = p > transition_point(n, x);
    let (value, warning) = match (method, lower) {
        (CdfMethod::BetaRef, true) => (inc_beta_ref(1.0 - p, nf - x, x + 1.0)?, None),
        (CdfMethod::BetaRef, false) => (inc_beta_ref(p, x + 1.0, nf - x)?, None),
        (_, true) => {
            let v = inc_beta_asym(1.0 - p, nf - x, x + 1.0, cfg)?;
            (v.value, v.warning)
        }
        (_, false) => {
            let v = inc_beta_asym(p, x + 1.0, nf - x, cfg)?;
            (v.value, v.warning)
        }
    };
    Ok(if lower {
        CdfValue {
            value,
            branch: Branch::P,
            warning,
        }
    } else {
        CdfValue {
            value: 1.0 - value,
            branch: Branch::Q,
            warning,
        }
    })
}

/// `eta` with `-eta^2/2 = xi ln(p/xi) + (1-xi) ln((1-p)/(1-xi))`, `sign(eta) = sign(p - xi)`.
pub fn eta_binomial(p: f64, xi: f64) -> Result<f64> {
    check_open_unit("p", p)?;
    eta_from_x(p, xi)
}

/// Open interval of `eta` values attained by [`eta_binomial`] for fixed `p`
/// as `xi` ranges over `(0, 1)`: `(-sqrt(-2 ln p), sqrt(-2 ln(1-p)))`.
pub fn eta_limits(p: f64) -> (f64, f64) {
    (-(-2.0 * p.ln()).sqrt(), (-2.0 * (-p).ln_1p()).sqrt())
}

/// `xi = p - p(1-p) sum_{k<=k_max} a_k eta~^k` with `eta~ = eta / sqrt(p(1-p))`.
pub fn xi_from_eta_series(eta: f64, p: f64, k_max: usize) -> Flagged<f64> {
    let pq = p * (1.0 - p);
    let tilde = eta / pq.sqrt();
    let a = SeriesCoefficients::pinned(SeriesKind::XiOfEta, p);
    let value = p - pq * a.eval(tilde, k_max);
    let warning = (tilde.abs() > SERIES_GUARD).then_some(Warning::OutsideSeriesRadius {
        scaled: tilde,
        radius: SERIES_GUARD,
    });
    Flagged { value, warning }
}

/// `p = xi + lambda^2 sum_{k<=k_max} b_k eta^^k` with `eta^ = eta / lambda`.
pub fn p_from_eta_series(eta: f64, xi: f64, k_max: usize) -> Flagged<f64> {
    let l2 = xi * (1.0 - xi);
    let hat = eta / l2.sqrt();
    let b = SeriesCoefficients::pinned(SeriesKind::POfEta, xi);
    let value = xi + l2 * b.eval(hat, k_max);
    let warning = (hat.abs() > SERIES_GUARD).then_some(Warning::OutsideSeriesRadius {
        scaled: hat,
        radius: SERIES_GUARD,
    });
    Flagged { value, warning }
}

/// Solve `eta_binomial(p, xi) = eta` for `xi`.
///
/// The `a_k` series supplies the start when `|eta~|` is within the guard radius;
/// the root is then polished by Newton on `logit(xi)` with bisection safeguard.
pub fn xi_from_eta(eta: f64, p: f64, cfg: &AsymptoticConfig) -> Result<f64> {
    check_open_unit("p", p)?;
    let (lower, upper) = eta_limits(p);
    if !(eta > lower && eta < upper) {
        return Err(Error::EtaOutOfRange { eta, p, lower, upper });
    }
    if eta == 0.0 {
        return Ok(p);
    }
    const W_LO: f64 = -708.0;
    const W_HI: f64 = 36.7;
    let wp = logit(p);
    let (lo, hi) = if eta > 0.0 { (W_LO, wp) } else { (wp, W_HI) };
    let tilde = eta / (p * (1.0 - p)).sqrt();
    let start = if tilde.abs() <= cfg.series_radius {
        let s = xi_from_eta_series(eta, p, 5).value;
        if s > 0.0 && s < 1.0 {
            logit(s)
        } else {
            0.5 * (lo + hi)
        }
    } else if eta > 0.0 {
        // xi -> 0 end: eta^2/2 ~ -ln(1-p) + xi ln(xi)
        let gap = 0.5 * (upper * upper - eta * eta);
        logit((gap / (1.0 - gap.ln()).max(1.0)).min(0.5 * p))
    } else {
        let gap = 0.5 * (lower * lower - eta * eta);
        -logit((gap / (1.0 - gap.ln()).max(1.0)).min(0.5 * (1.0 - p)))
    };
    let w = newton_bracketed(
        |w| {
            let xi = logistic(w);
            let e = eta_from_x(p, xi).unwrap_or(f64::NAN);
            let d = if e == 0.0 {
                -(xi * (1.0 - xi)).sqrt()
            } else {
                -((p - xi) / (xi * (1.0 - p))).ln_1p() / e * xi * (1.0 - xi)
            };
            (e - eta, d)
        },
        lo,
        hi,
        start.clamp(lo, hi),
        false,
        cfg.newton_tol,
        cfg.newton_max_iter,
    )?;
    let xi = logistic(w);
    let resid = eta_from_x(p, xi)? - eta;
    if !(xi > 0.0 && xi < 1.0) || resid.abs() > 1e-9 * eta.abs().max(1.0) {
        return Err(Error::EtaOutOfRange { eta, p, lower, upper });
    }
    Ok(xi)
}

/// `f(eta) = lambda eta / (p - xi)`, from the Taylor series in `eta^` near `eta = 0`.
pub fn f_eta(eta: f64, xi: f64, p: f64, cfg: &AsymptoticConfig) -> Result<f64> {
    check_open_unit("xi", xi)?;
    check_open_unit("p", p)?;
    let d = p - xi;
    if (eta == 0.0) != (d == 0.0) || (eta > 0.0) != (d > 0.0) {
        return Err(Error::Domain {
            name: "eta",
            value: eta,
            expected: "sign(eta) = sign(p - xi)",
        });
    }
    let lambda = (xi * (1.0 - xi)).sqrt();
    let hat = eta / lambda;
    if hat.abs() <= cfg.taylor_switch_radius {
        Ok(f_series(xi, cfg.taylor_order).eval(hat))
    } else {
        Ok(lambda * eta / d)
    }
}
