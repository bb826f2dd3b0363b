//! Real-valued reference quantiles and accuracy sweeps of the asymptotic
//! estimates against them.

use std::fmt;
use std::str::FromStr;

use crate::beta_asym::AsymptoticConfig;
use crate::binomial::check_n;
use crate::binomial_inv::asymptotic_estimate;
use crate::error::{check_alpha, check_open_unit, check_positive, Error, Result};
use crate::negbinomial::{nb_asymptotic_estimate, nb_scan_limit};
use crate::par::{map_ordered, Execution};
use crate::special_fn::inc_beta_ref;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    Binomial,
    NegBinomial,
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution::Binomial => "binomial",
            Distribution::NegBinomial => "negbinomial",
        })
    }
}

impl FromStr for Distribution {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "binomial" => Ok(Distribution::Binomial),
            "negbinomial" | "nb" => Ok(Distribution::NegBinomial),
            _ => Err(format!("unknown distribution '{s}' (expected binomial or negbinomial)")),
        }
    }
}

/// Error reported per grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// `|x_asym - x_oracle| / x_oracle` on the unrounded quantile.
    #[default]
    RelativeXError,
    /// `|P(x_asym) - alpha|` with `P` continued to real `x`.
    AchievedAlphaError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub distribution: Distribution,
    pub size_param: u64,
    pub alpha: f64,
    pub p_grid: Vec<f64>,
    pub metric: Metric,
}

impl SweepSpec {
    /// Sweep over [`default_p_grid`] with the relative-x metric.
    pub fn new(distribution: Distribution, size_param: u64, alpha: f64) -> Self {
        SweepSpec {
            distribution,
            size_param,
            alpha,
            p_grid: default_p_grid(),
            metric: Metric::RelativeXError,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_n(self.size_param)?;
        check_alpha(self.alpha)?;
        if self.alpha == 1.0 {
            return Err(Error::Domain {
                name: "alpha",
                value: 1.0,
                expected: "(0, 1) for a sweep",
            });
        }
        for &p in &self.p_grid {
            check_open_unit("p", p)?;
        }
        if let Some(w) = self.p_grid.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Domain {
                name: "p",
                value: w[1],
                expected: "a strictly increasing grid",
            });
        }
        Ok(())
    }
}

/// One sweep row; `x_asym` and `rel_error` are NaN when `fallback` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub distribution: Distribution,
    pub size_param: u64,
    pub alpha: f64,
    pub p: f64,
    pub x_asym: f64,
    pub x_oracle: f64,
    pub rel_error: f64,
    pub fallback: bool,
}

/// `p = 0.05, 0.055, ..., 0.95` (181 points).
pub fn default_p_grid() -> Vec<f64> {
    (0..=180).map(|i| (10 + i) as f64 / 200.0).collect()
}

/// CDF continued to real `x > -1`: `I_{1-p}(n-x, x+1)` or `I_p(r, x+1)`.
pub fn real_cdf(dist: Distribution, size: f64, p: f64, x: f64) -> Result<f64> {
    match dist {
        Distribution::Binomial => inc_beta_ref(1.0 - p, size - x, x + 1.0),
        Distribution::NegBinomial => inc_beta_ref(p, size, x + 1.0),
    }
}

const ORACLE_TOL: f64 = 1e-9;
const ORACLE_MAX_ITER: usize = 400;

/// Real `x` with `P(x) = alpha`, solved on the continued CDF by a bracketing
/// secant (Illinois) iteration to `|dx| <= 1e-9`.
///
/// The CDF tends to 0 as `x -> -1` and to 1 as `x -> n` (binomial); for the
/// negative binomial the upper end is grown until it brackets `alpha`.
pub fn real_quantile_oracle(dist: Distribution, size: f64, p: f64, alpha: f64) -> Result<f64> {
    check_positive("size", size)?;
    check_open_unit("p", p)?;
    check_alpha(alpha)?;
    let g = |x: f64| real_cdf(dist, size, p, x).map(|v| v - alpha);
    let (mut lo, mut glo) = (-1.0, -alpha);
    let (mut hi, mut ghi) = match dist {
        Distribution::Binomial => {
            if alpha == 1.0 {
                return Ok(size);
            }
            (size, 1.0 - alpha)
        }
        Distribution::NegBinomial => {
            let limit = nb_scan_limit(size, p);
            let mut hi = (size * (1.0 - p) / p).max(1.0);
            loop {
                let v = g(hi)?;
                if v >= 0.0 {
                    break (hi, v);
                }
                if hi > 4.0 * limit as f64 {
                    return Err(Error::Unreachable { alpha, limit });
                }
                lo = hi;
                glo = v;
                hi *= 2.0;
            }
        }
    };
    // 0 = lo moved last, 1 = hi moved last
    let mut side = 2;
    for _ in 0..ORACLE_MAX_ITER {
        if hi - lo <= ORACLE_TOL {
            return Ok(0.5 * (lo + hi));
        }
        let mut x = hi - ghi * (hi - lo) / (ghi - glo);
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let gx = g(x)?;
        if gx == 0.0 {
            return Ok(x);
        }
        if gx < 0.0 {
            lo = x;
            glo = gx;
            if side == 0 {
                ghi *= 0.5;
            }
            side = 0;
        } else {
            hi = x;
            ghi = gx;
            if side == 1 {
                glo *= 0.5;
            }
            side = 1;
        }
    }
    Err(Error::NoConvergence {
        method: "real quantile oracle",
        iterations: ORACLE_MAX_ITER,
    })
}

fn sweep_row(spec: &SweepSpec, p: f64, cfg: &AsymptoticConfig) -> SweepRow {
    let size = spec.size_param as f64;
    let est = match spec.distribution {
        Distribution::Binomial => asymptotic_estimate(spec.size_param, p, spec.alpha, cfg),
        Distribution::NegBinomial => nb_asymptotic_estimate(size, p, spec.alpha, cfg).map(|(e, _)| e),
    };
    let x_asym = est.ok().map(|e| e.x_real).filter(|x| x.is_finite());
    let x_oracle = real_quantile_oracle(spec.distribution, size, p, spec.alpha).unwrap_or(f64::NAN);
    let rel_error = match (x_asym, spec.metric) {
        (None, _) => f64::NAN,
        (Some(x), Metric::RelativeXError) => (x - x_oracle).abs() / x_oracle.abs(),
        (Some(x), Metric::AchievedAlphaError) => real_cdf(spec.distribution, size, p, x)
            .map(|v| (v - spec.alpha).abs())
            .unwrap_or(f64::NAN),
    };
    SweepRow {
        distribution: spec.distribution,
        size_param: spec.size_param,
        alpha: spec.alpha,
        p,
        x_asym: x_asym.unwrap_or(f64::NAN),
        x_oracle,
        rel_error,
        fallback: x_asym.is_none(),
    }
}

/// Sweep with the default execution mode and configuration.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    run_sweep_with(spec, &AsymptoticConfig::default(), Execution::default())
}

/// Rows come back in grid order whatever the execution mode.
pub fn run_sweep_with(spec: &SweepSpec, cfg: &AsymptoticConfig, exec: Execution) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    cfg.validate()?;
    Ok(map_ordered(&spec.p_grid, exec, |&p| sweep_row(spec, p, cfg)))
}

/// Median of the finite entries; NaN when there are none.
pub fn median_error(rows: &[SweepRow]) -> f64 {
    let mut v: Vec<f64> = rows.iter().map(|r| r.rel_error).filter(|e| e.is_finite()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}
