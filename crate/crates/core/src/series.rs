//! Truncated power-series arithmetic and the closed-form coefficient tables
//! of the eta/xi/p expansions.

/// Coefficients `c[0] + c[1] x + c[2] x^2 + ...` of a truncated power series.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    c: Vec<f64>,
}

impl PowerSeries {
    pub fn new(c: Vec<f64>) -> Self {
        PowerSeries { c }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Product truncated to `n` terms.
    pub fn mul(&self, other: &PowerSeries, n: usize) -> PowerSeries {
        let mut out = vec![0.0; n];
        for (i, &a) in self.c.iter().enumerate().take(n) {
            for (j, &b) in other.c.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries::new(out)
    }

    /// `1/f` to `n` terms; requires `f(0) != 0`.
    pub fn recip(&self, n: usize) -> PowerSeries {
        let c0 = self.c[0];
        let mut g = vec![0.0; n];
        g[0] = 1.0 / c0;
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k.min(self.c.len() - 1) {
                s += self.c[j] * g[k - j];
            }
            g[k] = -s / c0;
        }
        PowerSeries::new(g)
    }

    /// `sqrt(f)` to `n` terms; requires `f(0) > 0`.
    pub fn sqrt(&self, n: usize) -> PowerSeries {
        let mut g = vec![0.0; n];
        g[0] = self.c[0].sqrt();
        for k in 1..n {
            let mut s = self.c.get(k).copied().unwrap_or(0.0);
            for j in 1..k {
                s -= g[j] * g[k - j];
            }
            g[k] = s / (2.0 * g[0]);
        }
        PowerSeries::new(g)
    }

    pub fn derivative(&self) -> PowerSeries {
        PowerSeries::new(self.c.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect())
    }

    /// `(f(x) - f(0)) / x`.
    pub fn shift_down(&self) -> PowerSeries {
        PowerSeries::new(self.c.iter().skip(1).copied().collect())
    }

    /// Compositional inverse. `self` must have `c[0] = 0` and `c[1] != 0`;
    /// returns `g` with `f(g(y)) = y + O(y^n)`, also with zero constant term.
    ///
    /// Lagrange inversion: `g_k = [w^(k-1)] (w / f(w))^k / k`.
    pub fn revert(&self, n: usize) -> PowerSeries {
        let h = self.shift_down().recip(n);
        let mut g = vec![0.0; n];
        let mut pow = PowerSeries::new(vec![1.0]);
        for (k, gk) in g.iter_mut().enumerate().skip(1) {
            pow = pow.mul(&h, n);
            *gk = pow.c[k - 1] / k as f64;
        }
        PowerSeries::new(g)
    }
}

/// Which expansion a coefficient table belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// `xi = p - p(1-p) sum a_k eta~^k`, `eta~ = eta / sqrt(p(1-p))`; anchor `p`.
    XiOfEta,
    /// `p = xi + lambda^2 sum b_k eta^^k`, `eta^ = eta / lambda`; anchor `xi`.
    POfEta,
    /// `f(eta) = sum c_k eta^^k`; anchor `xi`.
    FOfEta,
    /// `xi = p - p(1-p) sum r_k rho~^k`, `rho~ = rho / sqrt(1-p)`; anchor `p`.
    XiOfRho,
    /// `p = xi + xi(1-xi) sum s_k rho^^k`, `rho^ = rho / sqrt(1-xi)`; anchor `xi`.
    POfRho,
}

/// A pinned coefficient table at a given anchor.
///
/// `values[0]` is the leading coefficient: `c_0` for [`SeriesKind::FOfEta`],
/// the coefficient of the first power for every other kind.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    pub kind: SeriesKind,
    pub anchor: f64,
    pub values: Vec<f64>,
}

fn a_table(p: f64) -> Vec<f64> {
    let p2 = p * p;
    let p3 = p2 * p;
    let p4 = p3 * p;
    vec![
        1.0,
        (2.0 * p - 1.0) / 6.0,
        (2.0 * p2 - 2.0 * p - 1.0) / 72.0,
        -(2.0 * p3 - 3.0 * p2 - 3.0 * p + 2.0) / 540.0,
        (4.0 * p4 - 8.0 * p3 - 48.0 * p2 + 52.0 * p - 23.0) / 17280.0,
    ]
}

fn b_table(x: f64) -> Vec<f64> {
    let x2 = x * x;
    let x3 = x2 * x;
    let x4 = x3 * x;
    vec![
        1.0,
        (1.0 - 2.0 * x) / 3.0,
        (13.0 * x2 - 13.0 * x + 1.0) / 36.0,
        -(2.0 * x - 1.0) * (23.0 * x2 - 23.0 * x - 1.0) / 270.0,
        (313.0 * x4 - 626.0 * x3 + 339.0 * x2 - 26.0 * x + 1.0) / 4320.0,
    ]
}

fn c_table(x: f64) -> Vec<f64> {
    let q = x * x - x + 1.0;
    vec![
        1.0,
        (2.0 * x - 1.0) / 3.0,
        q / 12.0,
        -(2.0 * x - 1.0) * (x - 2.0) * (x + 1.0) / 135.0,
        q * q / 864.0,
    ]
}

fn r_table(p: f64) -> Vec<f64> {
    let p2 = p * p;
    let p3 = p2 * p;
    let p4 = p3 * p;
    vec![
        1.0,
        (5.0 * p - 4.0) / 6.0,
        (47.0 * p2 - 74.0 * p + 26.0) / 72.0,
        (268.0 * p3 - 627.0 * p2 + 453.0 * p - 92.0) / 540.0,
        (6409.0 * p4 - 19868.0 * p3 + 21792.0 * p2 - 9608.0 * p + 1252.0) / 17280.0,
    ]
}

impl SeriesCoefficients {
    /// Number of tabulated coefficients per kind.
    pub const TABLE_LEN: usize = 5;

    /// The closed-form table for `kind` at `anchor`.
    ///
    /// The `s_k` table equals the `b_k` table: with `rho^ = eta / lambda` both
    /// expansions invert the same relation.
    pub fn pinned(kind: SeriesKind, anchor: f64) -> Self {
        let values = match kind {
            SeriesKind::XiOfEta => a_table(anchor),
            SeriesKind::POfEta | SeriesKind::POfRho => b_table(anchor),
            SeriesKind::FOfEta => c_table(anchor),
            SeriesKind::XiOfRho => r_table(anchor),
        };
        SeriesCoefficients { kind, anchor, values }
    }

    /// Power of the argument multiplying `values[i]`.
    pub fn power(&self, i: usize) -> usize {
        match self.kind {
            SeriesKind::FOfEta => i,
            _ => i + 1,
        }
    }

    /// Sum of the tabulated terms with power `<= k_max`.
    pub fn eval(&self, arg: f64, k_max: usize) -> f64 {
        let mut sum = 0.0;
        let mut pw = if self.kind == SeriesKind::FOfEta { 1.0 } else { arg };
        for (i, &v) in self.values.iter().enumerate() {
            if self.power(i) > k_max {
                break;
            }
            sum += v * pw;
            pw *= arg;
        }
        sum
    }
}
