//! Test-only series helpers, written separately from the library's own
//! series code so the pinned coefficient tables can be checked against them.

#![allow(dead_code)]

pub const N: usize = 8;

pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; N];
    for i in 0..N.min(a.len()) {
        for j in 0..(N - i).min(b.len()) {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    (0..N)
        .map(|i| a.get(i).copied().unwrap_or(0.0) + b.get(i).copied().unwrap_or(0.0))
        .collect()
}

/// `ln(1 + c w)` as a series in `w`.
pub fn ln1p_linear(c: f64) -> Vec<f64> {
    let mut out = vec![0.0; N];
    let mut pw = 1.0;
    for (k, o) in out.iter_mut().enumerate().skip(1) {
        pw *= c;
        *o = if k % 2 == 1 { pw } else { -pw } / k as f64;
    }
    out
}

/// `a + b w` as a series.
pub fn linear(a: f64, b: f64) -> Vec<f64> {
    let mut out = vec![0.0; N];
    out[0] = a;
    out[1] = b;
    out
}

/// Evaluate `f(g(w))` by Horner with series arithmetic.
pub fn compose(f: &[f64], g: &[f64]) -> Vec<f64> {
    let mut acc = vec![0.0; N];
    for &c in f.iter().rev() {
        acc = mul(&acc, g);
        acc[0] += c;
    }
    acc
}

/// `sqrt(1 + h)` with `h(0) = 0`, via the binomial series.
pub fn sqrt_one_plus(h: &[f64]) -> Vec<f64> {
    let mut coef = vec![0.0; N];
    let mut c = 1.0;
    for (k, o) in coef.iter_mut().enumerate() {
        *o = c;
        c *= (0.5 - k as f64) / (k as f64 + 1.0);
    }
    compose(&coef, h)
}

/// `1 / f` for `f(0) != 0`, by long division.
pub fn reciprocal(f: &[f64]) -> Vec<f64> {
    let mut q = vec![0.0; N];
    let mut rem = [0.0; N];
    rem[0] = 1.0;
    for k in 0..N {
        q[k] = rem[k] / f[0];
        for (j, r) in rem.iter_mut().enumerate().skip(k) {
            *r -= q[k] * f.get(j - k).copied().unwrap_or(0.0);
        }
    }
    q
}

/// Inverse of `y = F(w)`, `F(w) = w + O(w^2)`, by the fixed point
/// `G <- y - (F(G) - G)`; each pass fixes one more order.
pub fn revert(f: &[f64]) -> Vec<f64> {
    let y = linear(0.0, 1.0);
    let mut g = y.clone();
    for _ in 0..N {
        let fg = compose(f, &g);
        g = add(&y, &scale(&add(&fg, &scale(&g, -1.0)), -1.0));
    }
    g
}

/// Given `s(w) = t^2` with `s = w^2 (1 + h)`, the series of `t = w sqrt(1+h)`.
pub fn signed_root(sq: &[f64]) -> Vec<f64> {
    assert!(sq[0].abs() < 1e-15 && sq[1].abs() < 1e-15);
    let lead = sq[2];
    let h: Vec<f64> = (0..N)
        .map(|i| {
            if i == 0 {
                0.0
            } else {
                sq.get(i + 2).copied().unwrap_or(0.0) / lead
            }
        })
        .collect();
    let mut out = vec![0.0; N];
    let r = sqrt_one_plus(&h);
    out[1..N].copy_from_slice(&r[..N - 1]);
    scale(&out, lead.sqrt())
}

/// `-2 [xi ln(1 + (1-xi) u) + (1-xi) ln(1 - xi u)] / (xi (1-xi))` in `u`:
/// the squared scaled eta when `p = xi + xi(1-xi) u`.
pub fn eta_hat_sq(xi: f64) -> Vec<f64> {
    let t = add(&scale(&ln1p_linear(1.0 - xi), xi), &scale(&ln1p_linear(-xi), 1.0 - xi));
    scale(&t, -2.0 / (xi * (1.0 - xi)))
}

/// `b_k` (power k at index k) by reverting `eta^ (u)`.
pub fn b_coeffs(xi: f64) -> Vec<f64> {
    revert(&signed_root(&eta_hat_sq(xi)))
}

/// `a_k`: `xi = p - p(1-p) w`, `eta~^2 = -2 N(w) / (p(1-p))`.
pub fn eta_tilde_sq(p: f64) -> Vec<f64> {
    let q = 1.0 - p;
    let n = add(
        &scale(&mul(&linear(1.0, -q), &ln1p_linear(-q)), -p),
        &scale(&mul(&linear(1.0, p), &ln1p_linear(p)), -q),
    );
    scale(&n, -2.0 / (p * q))
}

pub fn a_coeffs(p: f64) -> Vec<f64> {
    revert(&signed_root(&eta_tilde_sq(p)))
}

/// `c_k` of `f = eta^ / u(eta^)` (power k at index k).
pub fn c_coeffs(xi: f64) -> Vec<f64> {
    let b = b_coeffs(xi);
    let down: Vec<f64> = b[1..].to_vec();
    reciprocal(&down)
}

/// `r_k`: `rho~^2 = eta~^2 / (1 - (1-p) w)`.
pub fn r_coeffs(p: f64) -> Vec<f64> {
    let q = 1.0 - p;
    let geo: Vec<f64> = (0..N).map(|k| q.powi(k as i32)).collect();
    revert(&signed_root(&mul(&eta_tilde_sq(p), &geo)))
}

/// `s_k`: `rho^^2 = -2 xi psi / (1-xi)` with `p = xi + xi(1-xi) u`.
pub fn s_coeffs(xi: f64) -> Vec<f64> {
    // xi psi = xi ln(p/xi) + (1-xi) ln((1-p)/(1-xi))
    let xi_psi = add(&scale(&ln1p_linear(1.0 - xi), xi), &scale(&ln1p_linear(-xi), 1.0 - xi));
    let rho_hat_sq = scale(&xi_psi, -2.0 / (1.0 - xi) / xi);
    revert(&signed_root(&rho_hat_sq))
}
