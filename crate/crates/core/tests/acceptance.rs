//! Acceptance gate: one PASS/FAIL line per criterion, then a single assertion.
//!
//! Everything runs inside one test so the timing criteria are not disturbed
//! by other tests on parallel threads.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use binv::beta_asym::inc_beta_asym;
use binv::binomial::cdf_exact;
use binv::binomial_inv::{invert, quantile_scan_oracle};
use binv::negbinomial::{nb_invert, nb_quantile_scan_oracle};
use binv::oracle::{median_error, real_cdf, run_sweep, Distribution, SweepSpec};
use binv::special_fn::{erfc, inc_beta_ref, inverfc};
use binv::{AsymptoticConfig, BinomialParams, SeriesCoefficients, SeriesKind};

// pinned tolerances
const CDF_A_TOL: f64 = 5e-5;
const RUNTIME_A: Duration = Duration::from_millis(1);
const X_B_TOL: f64 = 0.01;
const CDF_B_TOL: f64 = 5e-7;
const EXACT_B_TOL: f64 = 1e-5;
const CDF_C_TOL: f64 = 2e-5;
const X_D_TOL: f64 = 0.05;
const CDF_D_TOL: f64 = 1e-7;
const EQUIV_TIME: Duration = Duration::from_secs(5);
const SWEEP_RATIO_MIN: f64 = 2.0;
const ROUND_TRIP_TOL: f64 = 1e-13;
const COMPLEMENT_TOL: f64 = 1e-14;
const ASYM_TOL: f64 = 1e-6;
const REVERSION_TOL: f64 = 1e-12;
const SCALING_RATIO_MAX: f64 = 2.0;

struct Gate {
    failed: Vec<usize>,
}

impl Gate {
    fn report(&mut self, id: usize, ok: bool, detail: String) {
        let tag = if ok { "PASS" } else { "FAIL" };
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "criterion {id}: {tag} {detail}");
        if !ok {
            self.failed.push(id);
        }
    }
}

/// `|a - b|` within half a unit of the fourth significant digit of `b`.
fn sig4(a: f64, b: f64) -> bool {
    let unit = 10f64.powf(b.abs().log10().floor() - 3.0);
    (a - b).abs() <= 0.5 * unit
}

fn check_chain(vals: &[(&str, f64, f64)]) -> (bool, String) {
    let mut ok = true;
    let mut bad = Vec::new();
    for &(name, got, want) in vals {
        if !sig4(got, want) {
            ok = false;
            bad.push(format!("{name}={got} (want {want})"));
        }
    }
    (
        ok,
        if bad.is_empty() {
            "chain ok".into()
        } else {
            bad.join(", ")
        },
    )
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn criterion_1(g: &mut Gate, cfg: &AsymptoticConfig) {
    let r = invert(50, 0.4, 0.51, cfg).unwrap();
    let (mut ok, chain) = check_chain(&[
        ("eta0", r.eta0, -0.003_510_3),
        ("xi0", r.xi0, 0.401_72),
        ("eta1", r.eta1, -0.134_54),
        ("eta", r.eta, -0.006_148_4),
        ("xi", r.xi, 0.403_01),
        ("x_real", r.x_real, 19.554),
    ]);
    let at = real_cdf(Distribution::Binomial, 50.0, 0.4, r.x_real).unwrap();
    ok &= (at - 0.510_043).abs() <= CDF_A_TOL;
    ok &= r.x_int == 20;
    let _ = invert(50, 0.4, 0.51, cfg);
    let times: Vec<f64> = (0..101)
        .map(|_| {
            let t = Instant::now();
            let _ = std::hint::black_box(invert(50, 0.4, std::hint::black_box(0.51), cfg));
            t.elapsed().as_secs_f64()
        })
        .collect();
    let t = median(times);
    ok &= t < RUNTIME_A.as_secs_f64();
    g.report(
        1,
        ok,
        format!(
            "{chain}; P(x_real)={at:.6}; x_int={}; median {:.1} us",
            r.x_int,
            t * 1e6
        ),
    );
}

fn criterion_2(g: &mut Gate, cfg: &AsymptoticConfig) {
    let r = invert(1500, 0.4, 0.51, cfg).unwrap();
    let at = real_cdf(Distribution::Binomial, 1500.0, 0.4, r.x_real).unwrap();
    let c599 = cdf_exact(BinomialParams::new(1500, 0.4, 599).unwrap());
    let c600 = cdf_exact(BinomialParams::new(1500, 0.4, 600).unwrap());
    let ok = (r.x_real - 599.942_36).abs() <= X_B_TOL
        && (at - 0.51).abs() <= CDF_B_TOL
        && (c599 - 0.490_189).abs() <= EXACT_B_TOL
        && (c600 - 0.511_212).abs() <= EXACT_B_TOL;
    g.report(
        2,
        ok,
        format!(
            "x_real={:.6}; |P-0.51|={:.2e}; P(599)={c599:.6}; P(600)={c600:.6}",
            r.x_real,
            (at - 0.51).abs()
        ),
    );
}

fn criterion_3(g: &mut Gate, cfg: &AsymptoticConfig) {
    let r = nb_invert(50.0, 0.4, 0.51, cfg).unwrap();
    let c = r.nb.unwrap();
    let (mut ok, chain) = check_chain(&[
        ("z", c.z, -0.017_726_4),
        ("rho", c.rho0, 0.003_545_28),
        ("xi0", r.xi0, 0.398_903),
        ("eta0", r.eta0, 0.002_239_16),
        ("eta1", r.eta1, -0.137_068),
        ("x0", c.x0, 74.343_69),
        ("nu", r.nu, 125.344),
        ("eta", r.eta, 0.001_145_617),
        ("xi", r.xi, 0.399_438),
        ("x_real", r.x_real, 74.1757),
    ]);
    let at = real_cdf(Distribution::NegBinomial, 50.0, 0.4, r.x_real).unwrap();
    ok &= (at - 0.51).abs() <= CDF_C_TOL;
    g.report(3, ok, format!("{chain}; |P-0.51|={:.2e}", (at - 0.51).abs()));
}

fn criterion_4(g: &mut Gate, cfg: &AsymptoticConfig) {
    let r = nb_invert(1500.0, 0.4, 0.51, cfg).unwrap();
    let at = real_cdf(Distribution::NegBinomial, 1500.0, 0.4, r.x_real).unwrap();
    let ok = (r.x_real - 2250.71).abs() <= X_D_TOL && (at - 0.51).abs() <= CDF_D_TOL;
    g.report(
        4,
        ok,
        format!("x_real={:.4}; |P-0.51|={:.2e}", r.x_real, (at - 0.51).abs()),
    );
}

fn criterion_5(g: &mut Gate, cfg: &AsymptoticConfig) {
    let sizes = [20u64, 50, 100, 500, 2000];
    let ps: Vec<f64> = (1..=19).map(|i| i as f64 * 0.05).collect();
    let alphas = [0.001, 0.01, 0.1, 0.35, 0.5, 0.85, 0.99, 0.999];
    let t = Instant::now();
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for &n in &sizes {
        for &p in &ps {
            for &a in &alphas {
                cases += 2;
                let got = invert(n, p, a, cfg).map(|r| r.x_int);
                let want = quantile_scan_oracle(n, p, a);
                if got.as_ref().ok() != want.as_ref().ok() {
                    mismatches.push(format!("bin({n},{p},{a}): {got:?} vs {want:?}"));
                }
                let r = n as f64;
                let got = nb_invert(r, p, a, cfg).map(|r| r.x_int);
                let want = nb_quantile_scan_oracle(r, p, a);
                if got.as_ref().ok() != want.as_ref().ok() {
                    mismatches.push(format!("nb({n},{p},{a}): {got:?} vs {want:?}"));
                }
            }
        }
    }
    let el = t.elapsed();
    let ok = mismatches.is_empty() && cases == 1520 && el < EQUIV_TIME;
    let mut detail = format!(
        "{}/{cases} match in {:.2} s",
        cases - mismatches.len(),
        el.as_secs_f64()
    );
    if let Some(m) = mismatches.first() {
        detail.push_str(&format!("; first mismatch {m}"));
    }
    g.report(5, ok, detail);
}

fn criterion_6(g: &mut Gate) {
    let mut ok = true;
    let mut parts = Vec::new();
    for dist in [Distribution::Binomial, Distribution::NegBinomial] {
        for alpha in [0.35, 0.85] {
            let small = median_error(&run_sweep(&SweepSpec::new(dist, 100, alpha)).unwrap());
            let large = median_error(&run_sweep(&SweepSpec::new(dist, 1000, alpha)).unwrap());
            let ratio = small / large;
            ok &= large < small && ratio >= SWEEP_RATIO_MIN;
            parts.push(format!("{dist} a={alpha}: {small:.2e}/{large:.2e}={ratio:.1}"));
        }
    }
    g.report(6, ok, parts.join("; "));
}

fn criterion_7(g: &mut Gate, cfg: &AsymptoticConfig) {
    let mut worst_rt: f64 = 0.0;
    for i in 0..=2000 {
        // log-spaced on both halves of (0, 2)
        let t = i as f64 / 2000.0;
        let small = 10f64.powf(-10.0 + 10.0 * t);
        for y in [small, 2.0 - small] {
            let z = inverfc(y).unwrap();
            worst_rt = worst_rt.max(((erfc(z) - y) / y).abs());
        }
    }
    let mut worst_c: f64 = 0.0;
    for &a in &[0.5, 1.0, 3.7, 20.0, 150.0, 1000.0] {
        for &b in &[0.5, 2.0, 9.3, 75.0, 600.0] {
            for i in 1..40 {
                let y = i as f64 / 40.0;
                let s = inc_beta_ref(y, a, b).unwrap() + inc_beta_ref(1.0 - y, b, a).unwrap();
                worst_c = worst_c.max((s - 1.0).abs());
            }
        }
    }
    let mut worst_a: f64 = 0.0;
    for &nu in &[1000.0, 3000.0, 20000.0] {
        for i in 0..=16 {
            let xi = 0.1 + 0.05 * i as f64;
            for j in 0..=32 {
                let x = 0.1 + 0.025 * j as f64;
                let a = xi * nu;
                let b = nu - a;
                let v = inc_beta_asym(x, a, b, cfg).unwrap().value;
                worst_a = worst_a.max((v - inc_beta_ref(x, a, b).unwrap()).abs());
            }
        }
    }
    let ok = worst_rt <= ROUND_TRIP_TOL && worst_c <= COMPLEMENT_TOL && worst_a <= ASYM_TOL;
    g.report(
        7,
        ok,
        format!("round trip {worst_rt:.1e}; complement {worst_c:.1e}; asym vs ref {worst_a:.1e}"),
    );
}

fn criterion_8(g: &mut Gate) {
    let anchors = [0.05, 0.2, 0.37, 0.5, 0.64, 0.81, 0.95];
    type Table = fn(f64) -> Vec<f64>;
    let kinds: [(SeriesKind, Table); 5] = [
        (SeriesKind::XiOfEta, common::a_coeffs),
        (SeriesKind::POfEta, common::b_coeffs),
        (SeriesKind::FOfEta, common::c_coeffs),
        (SeriesKind::XiOfRho, common::r_coeffs),
        (SeriesKind::POfRho, common::s_coeffs),
    ];
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (kind, oracle) in kinds {
        let mut w: f64 = 0.0;
        for &x in &anchors {
            let pinned = SeriesCoefficients::pinned(kind, x);
            let reverted = oracle(x);
            for (i, v) in pinned.values.iter().enumerate() {
                w = w.max((v - reverted[pinned.power(i)]).abs());
            }
        }
        worst = worst.max(w);
        parts.push(format!("{kind:?} {w:.1e}"));
    }
    g.report(8, worst <= REVERSION_TOL, parts.join("; "));
}

fn criterion_9(g: &mut Gate, cfg: &AsymptoticConfig) {
    let time = |n: u64| -> (f64, usize) {
        let _ = invert(n, 0.4, 0.51, cfg);
        let mut fb = 0;
        let mut v = Vec::with_capacity(1000);
        for _ in 0..1000 {
            let t = Instant::now();
            let r = std::hint::black_box(invert(std::hint::black_box(n), 0.4, 0.51, cfg)).unwrap();
            let e = t.elapsed().as_secs_f64();
            if r.fallback_used {
                fb += 1;
            } else {
                v.push(e);
            }
        }
        (median(v), fb)
    };
    let (small, fb_s) = time(100);
    let (large, fb_l) = time(1_000_000);
    let ratio = large / small;
    g.report(
        9,
        ratio <= SCALING_RATIO_MAX,
        format!(
            "median n=1e2 {:.2} us, n=1e6 {:.2} us, ratio {ratio:.2}; fallback calls {fb_s}/{fb_l}",
            small * 1e6,
            large * 1e6
        ),
    );
}

#[test]
fn acceptance() {
    let cfg = AsymptoticConfig::default();
    let mut g = Gate { failed: Vec::new() };
    criterion_1(&mut g, &cfg);
    criterion_2(&mut g, &cfg);
    criterion_3(&mut g, &cfg);
    criterion_4(&mut g, &cfg);
    criterion_5(&mut g, &cfg);
    criterion_6(&mut g);
    criterion_7(&mut g, &cfg);
    criterion_8(&mut g);
    criterion_9(&mut g, &cfg);
    assert!(g.failed.is_empty(), "failed criteria: {:?}", g.failed);
}
