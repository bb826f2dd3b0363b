//! Uniform asymptotic expansion of the regularized incomplete beta function.
//!
//! With `nu = a + b`, `xi = a / nu` and the transformation
//!
//! ```text
//! -eta^2 / 2 = xi ln(x/xi) + (1-xi) ln((1-x)/(1-xi)),   sign(eta) = sign(x - xi),
//! ```
//!
//! `I_x(a, b) = 1/2 erfc(-eta sqrt(nu/2)) - R_nu(eta)` where
//! `R_nu(eta) ~ e^(-nu eta^2/2) / (F_nu(inf) sqrt(2 pi nu)) * sum_k C_k(eta) / nu^k`.

use std::f64::consts::PI;

use crate::error::{check_open_unit, check_positive, Error, Flagged, Result, Warning};
use crate::roots::newton_bracketed;
use crate::series::{PowerSeries, SeriesCoefficients, SeriesKind};
use crate::special_fn::{erfc, ln_gamma_star, log_ratio_exponent, logistic, logit};

/// Truncation orders, switch radii and iteration controls.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticConfig {
    /// Terms `F_0..` of the `F_nu(inf)` series used by [`f_nu_series`].
    pub max_fk_terms: usize,
    /// Terms `C_0..` of the `R_nu` sum used by [`inc_beta_asym`].
    pub max_ck_terms: usize,
    /// Scaled `|eta| / lambda` below which Taylor series replace direct formulas.
    pub taylor_switch_radius: f64,
    /// Number of Taylor coefficients of `f` kept in series arithmetic.
    pub taylor_order: usize,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Guard on the scaled argument of the `a_k`, `b_k`, `r_k`, `s_k` series.
    pub series_radius: f64,
    /// Scaled `|eta0| / lambda` below which `eta1` uses its power series.
    pub eta1_switch: f64,
    /// Width of the excluded margins of the uniform-validity strip `[delta, 1-delta]`.
    pub strip_delta: f64,
}

impl Default for AsymptoticConfig {
    fn default() -> Self {
        AsymptoticConfig {
            max_fk_terms: 3,
            max_ck_terms: 2,
            taylor_switch_radius: 0.2,
            taylor_order: 14,
            newton_tol: 1e-15,
            newton_max_iter: 100,
            series_radius: 0.5,
            eta1_switch: 0.04,
            strip_delta: 0.01,
        }
    }
}

impl AsymptoticConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, value: f64, expected| Err(Error::Domain { name, value, expected });
        if self.max_fk_terms < 1 || self.max_fk_terms > 4 {
            return bad("max_fk_terms", self.max_fk_terms as f64, "[1, 4]");
        }
        if self.max_ck_terms < 1 || self.max_ck_terms > MAX_CK + 1 {
            return bad("max_ck_terms", self.max_ck_terms as f64, "[1, 5]");
        }
        if !(self.taylor_switch_radius > 0.0 && self.taylor_switch_radius <= 0.5) {
            return bad("taylor_switch_radius", self.taylor_switch_radius, "(0, 0.5]");
        }
        if self.taylor_order < 8 || self.taylor_order > 40 {
            return bad("taylor_order", self.taylor_order as f64, "[8, 40]");
        }
        for (name, v) in [
            ("newton_tol", self.newton_tol),
            ("series_radius", self.series_radius),
            ("eta1_switch", self.eta1_switch),
        ] {
            check_positive(name, v)?;
        }
        if self.newton_max_iter == 0 {
            return bad("newton_max_iter", 0.0, "[1, inf)");
        }
        if !(self.strip_delta > 0.0 && self.strip_delta < 0.5) {
            return bad("strip_delta", self.strip_delta, "(0, 0.5)");
        }
        Ok(())
    }
}

/// Largest `k` for which [`ck_coefficients`] returns `C_k`.
pub const MAX_CK: usize = 4;

/// The `(nu, xi, lambda, eta)` bundle of the transformation for `I_x(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaTransform {
    pub nu: f64,
    pub xi: f64,
    pub lambda: f64,
    pub eta: f64,
}

impl EtaTransform {
    pub fn new(x: f64, a: f64, b: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("b", b)?;
        let nu = a + b;
        let xi = a / nu;
        Ok(EtaTransform {
            nu,
            xi,
            lambda: (xi * (1.0 - xi)).sqrt(),
            eta: eta_from_x(x, xi)?,
        })
    }
}

/// `eta^2 / 2` at `x` for the given `xi`, without the sign.
fn half_eta_sq(x: f64, xi: f64) -> f64 {
    (-log_ratio_exponent(x, xi, xi, 1.0 - xi)).max(0.0)
}

/// `eta` with `-eta^2/2 = xi ln(x/xi) + (1-xi) ln((1-x)/(1-xi))` and
/// `sign(eta) = sign(x - xi)`.
pub fn eta_from_x(x: f64, xi: f64) -> Result<f64> {
    check_open_unit("x", x)?;
    check_open_unit("xi", xi)?;
    let e = (2.0 * half_eta_sq(x, xi)).sqrt();
    Ok(if x < xi {
        -e
    } else if x > xi {
        e
    } else {
        0.0
    })
}

// logistic(-708) is the smallest normal-range point we iterate on; logistic(36.7) is
// the last u whose image stays below 1.
const U_LO: f64 = -708.0;
const U_HI: f64 = 36.7;

/// Inverse of [`eta_from_x`] in `x`: the unique `x` in `(0, 1)` with
/// `eta_from_x(x, xi) = eta`.
///
/// Newton iteration on `u = logit(x)`, where `d eta / du = (x - xi) / eta`.
pub fn x_from_eta(eta: f64, xi: f64) -> Result<f64> {
    check_open_unit("xi", xi)?;
    if !eta.is_finite() {
        return Err(Error::NoPreimage { eta, xi });
    }
    if eta == 0.0 {
        return Ok(xi);
    }
    let lambda = (xi * (1.0 - xi)).sqrt();
    let hat = eta / lambda;
    let lo_eta = eta_from_x(logistic(U_LO), xi)?;
    let hi_eta = eta_from_x(logistic(U_HI), xi)?;
    if eta <= lo_eta || eta >= hi_eta {
        return Err(Error::NoPreimage { eta, xi });
    }
    let u0 = if hat.abs() <= 0.5 {
        let b = SeriesCoefficients::pinned(SeriesKind::POfEta, xi);
        let x0 = xi + lambda * lambda * b.eval(hat, 5);
        if x0 > 0.0 && x0 < 1.0 {
            logit(x0)
        } else {
            logit(xi)
        }
    } else if eta < 0.0 {
        // x -> 0: xi ln(x/xi) ~ -eta^2/2 + (1-xi) ln(1-xi)
        xi.ln() + (-0.5 * eta * eta + (1.0 - xi) * (-xi).ln_1p()) / xi
    } else {
        -((-xi).ln_1p() + (-0.5 * eta * eta + xi * xi.ln()) / (1.0 - xi))
    };
    let u = newton_bracketed(
        |u| {
            let x = logistic(u);
            let e = eta_from_x(x, xi).unwrap_or(f64::NAN);
            let d = if e == 0.0 { lambda } else { (x - xi) / e };
            (e - eta, d)
        },
        U_LO,
        U_HI,
        u0.clamp(U_LO, U_HI),
        true,
        1e-15,
        200,
    )?;
    Ok(logistic(u))
}

/// `b_1..b_n` of `u = (t - xi)/lambda^2 = sum b_k eta^^k` (index 0 unused).
///
/// Differentiating the eta relation gives
/// `u u' = eta^ (1 + (1 - 2 xi) u - lambda^2 u^2)`; comparing coefficients
/// fixes `[eta^^(m+1)] u^2`, hence `b_m`, one order at a time.
fn u_coeffs(xi: f64, n: usize) -> Vec<f64> {
    let l2 = xi * (1.0 - xi);
    let a = 1.0 - 2.0 * xi;
    let mut b = vec![0.0; n + 1];
    // sq[k] = [eta^^k] u^2
    let mut sq = vec![0.0; n + 2];
    if n == 0 {
        return b;
    }
    b[1] = 1.0;
    sq[2] = 1.0;
    for m in 2..=n {
        let target = 2.0 / (m + 1) as f64 * (a * b[m - 1] - l2 * sq[m - 1]);
        let rest: f64 = (2..m).map(|i| b[i] * b[m + 1 - i]).sum();
        b[m] = 0.5 * (target - rest);
        sq[m + 1] = target;
    }
    b
}

/// Taylor coefficients of `f` in the scaled variable `eta^ = eta / lambda`,
/// i.e. the `c_k` of `f = sum c_k eta^^k`, to `order` terms.
pub fn f_series(xi: f64, order: usize) -> PowerSeries {
    let b = u_coeffs(xi, order.max(1));
    PowerSeries::new(b[1..].to_vec()).recip(order)
}

/// `f(zeta) = zeta lambda / (t - xi)` where `t = x_from_eta(zeta, xi)`.
pub fn f_of_zeta(zeta: f64, xi: f64, cfg: &AsymptoticConfig) -> Result<f64> {
    check_open_unit("xi", xi)?;
    let lambda = (xi * (1.0 - xi)).sqrt();
    let hat = zeta / lambda;
    if hat.abs() <= cfg.taylor_switch_radius {
        return Ok(f_series(xi, cfg.taylor_order).eval(hat));
    }
    let t = x_from_eta(zeta, xi)?;
    Ok(zeta * lambda / (t - xi))
}

/// `F_nu(inf) = Gamma*(a) Gamma*(b) / Gamma*(a+b)`.
pub fn f_nu_infinity(a: f64, b: f64) -> Result<f64> {
    Ok((ln_gamma_star(a)? + ln_gamma_star(b)? - ln_gamma_star(a + b)?).exp())
}

/// `F_0..F_3` of `F_nu(inf) ~ sum F_k / nu^k`.
pub fn fk_coefficients(xi: f64) -> [f64; 4] {
    let l2 = xi * (1.0 - xi);
    let q = 1.0 - xi + xi * xi;
    let x2 = xi * xi;
    let x3 = x2 * xi;
    let x4 = x3 * xi;
    let x5 = x4 * xi;
    let x6 = x5 * xi;
    [
        1.0,
        q / (12.0 * l2),
        q * q / (288.0 * l2 * l2),
        -(139.0 * x6 - 417.0 * x5 + 402.0 * x4 - 109.0 * x3 + 402.0 * x2 - 417.0 * xi + 139.0)
            / (51840.0 * l2 * l2 * l2),
    ]
}

/// Truncated series `sum_{k < terms} F_k / nu^k` (diagnostics only).
pub fn f_nu_series(a: f64, b: f64, terms: usize) -> Result<f64> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    let nu = a + b;
    let fk = fk_coefficients(a / nu);
    let mut s = 0.0;
    let mut scale = 1.0;
    for f in fk.iter().take(terms.min(4)) {
        s += f * scale;
        scale /= nu;
    }
    Ok(s)
}

/// `C_0(eta) .. C_{k_max}(eta)` of the `R_nu` expansion.
///
/// Inside the switch radius all values come from series arithmetic on the Taylor
/// expansion of `f`. Outside it `C_0` and `C_1` are evaluated from closed forms
/// and `C_k`, `k >= 2`, are extrapolated from the series (flagged).
pub fn ck_coefficients(eta: f64, xi: f64, k_max: usize, cfg: &AsymptoticConfig) -> Result<Flagged<Vec<f64>>> {
    check_open_unit("xi", xi)?;
    if k_max > MAX_CK {
        return Err(Error::Domain {
            name: "k_max",
            value: k_max as f64,
            expected: "[0, 4]",
        });
    }
    ck_values(eta, None, xi, k_max, cfg)
}

/// Terms of the `f` series needed at `eta^`: the coefficients decay roughly
/// like `0.26^k`, so `(|eta^| / 2)^m < 1e-17` is a safe cut. Capped at `max`.
fn series_order(hat: f64, max: usize) -> usize {
    let h = 0.5 * hat.abs();
    if h == 0.0 {
        return 0;
    }
    let m = (-17.0 / h.log10()).ceil();
    if m.is_finite() && m > 0.0 && m < max as f64 {
        m as usize
    } else {
        max
    }
}

fn ck_values(eta: f64, t: Option<f64>, xi: f64, k_max: usize, cfg: &AsymptoticConfig) -> Result<Flagged<Vec<f64>>> {
    let lambda = (xi * (1.0 - xi)).sqrt();
    let hat = eta / lambda;
    let inside = hat.abs() <= cfg.taylor_switch_radius;
    let mut out = Vec::with_capacity(k_max + 1);
    if inside || k_max > 1 {
        let order = series_order(hat, cfg.taylor_order).max(2 * k_max + 4);
        let mut g = f_series(xi, order).coeffs().to_vec();
        let inv_l2 = 1.0 / (lambda * lambda);
        let mut scale = 1.0 / lambda;
        for _ in 0..=k_max {
            // Psi_k = (g_k - g_k(0)) / eta^, g_{k+1} = Psi_k'
            let psi = g.get(1..).unwrap_or(&[]);
            out.push(scale * psi.iter().rev().fold(0.0, |acc, &c| acc * hat + c));
            scale *= inv_l2;
            let m = g.len().saturating_sub(2);
            for i in 0..m {
                g[i] = (i + 1) as f64 * g[i + 2];
            }
            g.truncate(m);
        }
    }
    if inside {
        return Ok(Flagged::clean(out));
    }
    let t = match t {
        Some(t) => t,
        None => x_from_eta(eta, xi)?,
    };
    let d = t - xi;
    let f = eta * lambda / d;
    let c0 = (f - 1.0) / eta;
    let f_prime = lambda / d - eta * eta * lambda * t * (1.0 - t) / (d * d * d);
    let f1 = f_prime / eta - (f - 1.0) / (eta * eta);
    let a2 = (1.0 - xi + xi * xi) / (12.0 * lambda * lambda);
    let c1 = (f1 - a2) / eta;
    if out.is_empty() {
        out.push(c0);
        if k_max >= 1 {
            out.push(c1);
        }
    } else {
        out[0] = c0;
        out[1] = c1;
    }
    let warning = (k_max > 1).then_some(Warning::ExtrapolatedCoefficients { scaled: hat });
    Ok(Flagged { value: out, warning })
}

/// `I_x(a, b)` from the erfc representation with `cfg.max_ck_terms` terms of `R_nu`.
pub fn inc_beta_asym(x: f64, a: f64, b: f64, cfg: &AsymptoticConfig) -> Result<Flagged<f64>> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "[0, 1]",
        });
    }
    if x == 0.0 {
        return Ok(Flagged::clean(0.0));
    }
    if x == 1.0 {
        return Ok(Flagged::clean(1.0));
    }
    let nu = a + b;
    let xi = a / nu;
    let half = half_eta_sq(x, xi);
    let eta = if x < xi {
        -(2.0 * half).sqrt()
    } else if x > xi {
        (2.0 * half).sqrt()
    } else {
        0.0
    };
    let main = 0.5 * erfc(-eta * (0.5 * nu).sqrt());
    let pref = (-nu * half).exp() / ((2.0 * PI * nu).sqrt() * f_nu_infinity(a, b)?);
    let k_max = cfg.max_ck_terms.clamp(1, MAX_CK + 1) - 1;
    let ck = ck_values(eta, Some(x), xi, k_max, cfg)?;
    let mut sum = 0.0;
    let mut scale = 1.0;
    for c in &ck.value {
        sum += c * scale;
        scale /= nu;
    }
    let value = (main - pref * sum).clamp(0.0, 1.0);
    let warning = if xi < cfg.strip_delta || xi > 1.0 - cfg.strip_delta {
        Some(Warning::OutsideUniformStrip { xi })
    } else {
        ck.warning
    };
    Ok(Flagged { value, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::inc_beta_ref;
    use approx::assert_relative_eq;

    fn cfg() -> AsymptoticConfig {
        AsymptoticConfig::default()
    }

    #[test]
    fn default_config_is_valid() {
        cfg().validate().unwrap();
        let mut c = cfg();
        c.taylor_switch_radius = 0.7;
        assert!(c.validate().is_err());
    }

    #[test]
    fn eta_zero_at_xi() {
        assert_eq!(eta_from_x(0.4, 0.4).unwrap(), 0.0);
        assert!(eta_from_x(0.3, 0.4).unwrap() < 0.0);
        assert!(eta_from_x(0.0, 0.4).is_err());
    }

    #[test]
    fn eta_worked_value() {
        // eta for the binomial pair (p, xi) = (0.4, 0.40172)
        let e = eta_from_x(0.4, 0.40172).unwrap();
        assert!((e + 0.003_510_3).abs() < 5e-7, "{e}");
    }

    #[test]
    fn eta_transform_invariants() {
        let t = EtaTransform::new(0.3, 30.0, 20.0).unwrap();
        assert_relative_eq!(t.lambda * t.lambda, t.xi * (1.0 - t.xi), max_relative = 1e-15);
        let lhs = -0.5 * t.eta * t.eta;
        let rhs = t.xi * (0.3 / t.xi).ln() + (1.0 - t.xi) * (0.7 / (1.0 - t.xi)).ln();
        assert!((lhs - rhs).abs() < 1e-13);
        assert!(t.eta < 0.0);
    }

    #[test]
    fn x_from_eta_round_trip() {
        for &xi in &[0.05, 0.25, 0.5, 0.8] {
            for &x in &[1e-30, 1e-3, 0.1, 0.249, 0.2501, 0.6, 0.97, 0.999_999] {
                let e = eta_from_x(x, xi).unwrap();
                let back = x_from_eta(e, xi).unwrap();
                assert!((back - x).abs() <= 1e-12 * x.max(1e-3), "xi {xi} x {x} back {back}");
            }
        }
        assert_eq!(x_from_eta(0.0, 0.25).unwrap(), 0.25);
    }

    #[test]
    fn x_from_eta_unrepresentable() {
        assert!(matches!(x_from_eta(-40.0, 0.5), Err(Error::NoPreimage { .. })));
        assert!(x_from_eta(f64::INFINITY, 0.5).is_err());
        // eta = -10 still has a tiny but representable preimage
        let x = x_from_eta(-10.0, 0.5).unwrap();
        assert!(x > 0.0 && x < 1e-40);
    }

    #[test]
    fn f_series_matches_reversion() {
        // (eta^)^2 = sum_{m>=2} d_m u^m, d_m = (2/m)(xi^(m-1) + (-1)^m (1-xi)^(m-1))
        for &xi in &[0.05, 0.3, 0.5, 0.9] {
            let n = 20;
            let mut d = Vec::new();
            let (mut pa, mut pb) = (xi, 1.0 - xi);
            for m in 2..n + 2 {
                d.push(2.0 / m as f64 * (pa + pb));
                pa *= xi;
                pb *= -(1.0 - xi);
            }
            let mut hat_of_u = vec![0.0];
            hat_of_u.extend_from_slice(PowerSeries::new(d).sqrt(n).coeffs());
            let u_of_hat = PowerSeries::new(hat_of_u).revert(n + 1);
            let slow = u_of_hat.shift_down().recip(n - 1);
            let fast = f_series(xi, n - 1);
            for (k, (a, b)) in slow.coeffs().iter().zip(fast.coeffs()).enumerate() {
                assert!((a - b).abs() < 1e-12 * a.abs().max(1e-3), "xi {xi} k {k}: {a} {b}");
            }
        }
    }

    #[test]
    fn f_series_matches_table() {
        for &xi in &[0.1, 0.3, 0.5, 0.77] {
            let s = f_series(xi, 12);
            let c = SeriesCoefficients::pinned(SeriesKind::FOfEta, xi);
            for k in 0..5 {
                assert!((s.coeffs()[k] - c.values[k]).abs() < 1e-13, "xi {xi} k {k}");
            }
        }
    }

    #[test]
    fn f_of_zeta_values() {
        let c = cfg();
        assert_eq!(f_of_zeta(0.0, 0.3, &c).unwrap(), 1.0);
        // odd coefficient vanishes at xi = 1/2
        let up = f_of_zeta(0.05, 0.5, &c).unwrap();
        let down = f_of_zeta(-0.05, 0.5, &c).unwrap();
        assert!((up - down).abs() < 1e-15);
        for &xi in &[0.1f64, 0.4, 0.9] {
            let lam = (xi * (1.0 - xi)).sqrt();
            for s in [-1.0, 1.0] {
                let z = s * c.taylor_switch_radius * lam;
                let series = f_series(xi, c.taylor_order).eval(z / lam);
                let t = x_from_eta(z, xi).unwrap();
                let direct = z * lam / (t - xi);
                assert!((series - direct).abs() < 1e-11, "xi {xi} z {z}");
            }
        }
    }

    #[test]
    fn f_positive_far_out() {
        let c = cfg();
        for z in [-8.0, -2.0, 1.5, 4.0] {
            assert!(f_of_zeta(z, 0.35, &c).unwrap() > 0.0);
        }
    }

    #[test]
    fn f_nu_infinity_limits() {
        assert!((f_nu_infinity(1e7, 1e7).unwrap() - 1.0).abs() < 1e-7);
        assert!(f_nu_infinity(0.0, 1.0).is_err());
        let fk = fk_coefficients(0.5);
        assert!((fk[1] - 0.25).abs() < 1e-15);
        let exact = f_nu_infinity(500.0, 500.0).unwrap();
        let two = f_nu_series(500.0, 500.0, 2).unwrap();
        assert!((exact - two).abs() <= 2.0 * fk[2].abs() / 1e6);
        let three = f_nu_series(500.0, 500.0, 3).unwrap();
        assert!((exact - three).abs() < (exact - two).abs());
    }

    #[test]
    fn c0_at_zero_is_a1() {
        let xi: f64 = 0.3;
        let lam = (xi * (1.0 - xi)).sqrt();
        let c = ck_coefficients(0.0, xi, 1, &cfg()).unwrap();
        assert!(c.is_clean());
        assert!((c.value[0] - (2.0 * xi - 1.0) / (3.0 * lam)).abs() < 1e-14);
    }

    #[test]
    fn c0_reproduces_f() {
        let c = cfg();
        for eta in [-0.9, -0.05, 0.02, 0.4] {
            let ck = ck_coefficients(eta, 0.35, 0, &c).unwrap();
            let f = f_of_zeta(eta, 0.35, &c).unwrap();
            assert!((ck.value[0] * eta + 1.0 - f).abs() < 1e-13);
        }
    }

    #[test]
    fn exact_c1_continuous_at_switch() {
        let c = cfg();
        let xi: f64 = 0.3;
        let lam = (xi * (1.0 - xi)).sqrt();
        let edge = c.taylor_switch_radius * lam;
        let inner = ck_coefficients(edge * (1.0 - 1e-10), xi, 1, &c).unwrap().value;
        let outer = ck_coefficients(edge * (1.0 + 1e-10), xi, 1, &c).unwrap().value;
        assert!((inner[0] - outer[0]).abs() < 1e-9, "{inner:?} {outer:?}");
        assert!((inner[1] - outer[1]).abs() < 1e-9);
    }

    #[test]
    fn extrapolation_is_flagged() {
        let c = cfg();
        assert!(ck_coefficients(0.5, 0.3, 1, &c).unwrap().is_clean());
        assert!(!ck_coefficients(0.5, 0.3, 2, &c).unwrap().is_clean());
        assert!(ck_coefficients(0.01, 0.3, 2, &c).unwrap().is_clean());
        assert!(ck_coefficients(0.01, 0.3, 5, &c).is_err());
    }

    #[test]
    fn symmetric_half() {
        let v = inc_beta_asym(0.5, 500.0, 500.0, &cfg()).unwrap();
        assert!((v.value - 0.5).abs() < 1e-15);
        assert!(v.is_clean());
    }

    #[test]
    fn agrees_with_reference() {
        let c = cfg();
        for &xi in &[0.1, 0.35, 0.6, 0.9] {
            let a = 1000.0 * xi;
            let b = 1000.0 - a;
            for i in 0..=18 {
                let x = 0.05 + 0.05 * i as f64;
                let asym = inc_beta_asym(x, a, b, &c).unwrap().value;
                let refv = inc_beta_ref(x, a, b).unwrap();
                assert!((asym - refv).abs() < 1e-6, "xi {xi} x {x}: {asym} vs {refv}");
            }
        }
    }

    #[test]
    fn strip_warning() {
        let v = inc_beta_asym(0.01, 2.0, 998.0, &cfg()).unwrap();
        assert!(matches!(v.warning, Some(Warning::OutsideUniformStrip { .. })));
    }
}
