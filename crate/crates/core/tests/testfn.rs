use std::sync::OnceLock;

use smalleig::special::gauss_legendre;
use smalleig::testfn::{build_default, build_f1, TestFunctionPair, SPECTRAL_STEP};

fn tf() -> &'static TestFunctionPair {
    static TF: OnceLock<TestFunctionPair> = OnceLock::new();
    TF.get_or_init(|| build_default().unwrap())
}

const W: f64 = 0.5;

fn phi(x: f64) -> f64 {
    let t = x / W;
    if t.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t * t)).exp()
    }
}

fn dphi(x: f64) -> f64 {
    let t = x / W;
    if t.abs() >= 1.0 {
        0.0
    } else {
        let q = 1.0 - t * t;
        phi(x) * (-2.0 * t / (q * q)) / W
    }
}

/// `f(x) = −(φ′∗φ)(x)/x`, `f(0) = ∫φ′²`, by direct quadrature over the overlap of supports.
fn f_oracle(x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        return gauss_legendre(|y| dphi(y).powi(2), -W, W, 256);
    }
    if x >= 2.0 * W {
        return 0.0;
    }
    let conv = gauss_legendre(|y| dphi(y) * phi(x - y), x - W, W, 256);
    -conv / x
}

#[test]
fn support_evenness_and_sign() {
    let tf = tf();
    assert_eq!(tf.f1(1.25), 0.0);
    assert_eq!(tf.f1(-1.25), 0.0);
    assert_eq!(*tf.f1.last().unwrap(), 0.0);
    assert!(tf.f1.iter().all(|&v| v >= 0.0));
    let mut odd: f64 = 0.0;
    for i in 0..=2000 {
        let x = i as f64 * 0.0005;
        odd = odd.max((tf.f1(x) - tf.f1(-x)).abs());
        odd = odd.max((tf.f_spectral(x) - tf.f_spectral(-x)).abs());
    }
    assert!(odd <= 1e-12);
}

#[test]
fn grid_matches_convolution_oracle() {
    let tf = tf();
    let scale = tf.f1[0];
    assert!((f_oracle(0.0).powi(2) - scale).abs() <= 1e-9 * scale, "{} vs {scale}", f_oracle(0.0).powi(2));
    let mut worst: f64 = 0.0;
    for j in (0..tf.f1.len()).step_by(37) {
        let x = j as f64 * tf.dx;
        worst = worst.max((f_oracle(x).powi(2) - tf.f1[j]).abs());
    }
    assert!(worst <= 1e-9 * scale, "worst {worst:e}");
    // off-grid interpolation
    for i in 0..200 {
        let x = 0.00731 + i as f64 * 0.00497;
        assert!((tf.f1(x) - f_oracle(x).powi(2)).abs() <= 1e-9 * scale, "x = {x}");
    }
}

#[test]
fn transform_is_nonnegative_and_decreasing() {
    let tf = tf();
    assert_eq!(tf.h1(0.0), tf.b);
    assert!(tf.h1(0.0) >= tf.h1(1.0) && tf.h1(1.0) >= tf.h1(2.0));
    assert!(tf.h1_table.iter().all(|&v| v >= -1e-12));
    let slope = tf.h1_table.windows(2).map(|w| (w[1] - w[0]) / SPECTRAL_STEP).fold(f64::NEG_INFINITY, f64::max);
    assert!(slope <= 1e-10, "{slope:e}");
    // a finer probe than the stored table
    let mut prev = tf.h1(0.0);
    for i in 1..=64 * 200 {
        let v = tf.h1(i as f64 * 0.005);
        assert!(v - prev <= 1e-10 && v >= -1e-12, "r = {}", i as f64 * 0.005);
        prev = v;
    }
    // ĥ₁(ix) ≥ 0
    for s in [0.0, 0.1, 0.25, 0.5] {
        assert!(tf.h_imag(s, 3.0).unwrap() >= 0.0);
    }
}

#[test]
fn transform_matches_oracle_quadrature() {
    let tf = tf();
    // 2∫₀¹ f_oracle² cos(rx), composite Gauss–Legendre with a cached integrand
    let panels = 512;
    let h = 1.0 / panels as f64;
    let nodes: Vec<(f64, f64)> = (0..panels)
        .flat_map(|p| {
            let c = (p as f64 + 0.5) * h;
            smalleig::special::GL8_NODES.iter().zip(smalleig::special::GL8_WEIGHTS).flat_map(move |(x, w)| {
                [(c - 0.5 * h * x, 0.5 * h * w), (c + 0.5 * h * x, 0.5 * h * w)]
            })
        })
        .map(|(x, w)| (x, w * f_oracle(x).powi(2)))
        .collect();
    for r in [0.0, 0.5, 3.0, 10.0, 25.0, 64.0] {
        let want: f64 = 2.0 * nodes.iter().map(|(x, w)| w * (r * x).cos()).sum::<f64>();
        assert!((tf.h1(r) - want).abs() <= 1e-10 * tf.b, "r = {r}: {} vs {want}", tf.h1(r));
    }
}

#[test]
fn round_trip_reproduces_grid() {
    let tf = tf();
    // f₁(x) = (1/π)∫₀^∞ ĥ₁(r) cos(rx) dr, trapezoid at dr = 1/2 out to 1024
    let dr = 0.5;
    let spectrum: Vec<f64> = (0..=2048).map(|k| tf.h1(k as f64 * dr)).collect();
    let scale = tf.f1.iter().copied().fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    for j in (0..tf.f1.len()).step_by(5) {
        let x = j as f64 * tf.dx;
        let s: f64 = spectrum
            .iter()
            .enumerate()
            .map(|(k, &v)| if k == 0 { 0.5 * v } else { v } * (k as f64 * dr * x).cos())
            .sum();
        worst = worst.max((s * dr / std::f64::consts::PI - tf.f1[j]).abs());
    }
    assert!(worst <= 1e-9 * scale, "round trip {worst:e}");
}

#[test]
fn a_and_b() {
    let tf = tf();
    assert!(tf.a > 0.0 && tf.b > 0.0);
    let mut a = f64::INFINITY;
    for i in 0..=1666 {
        a = a.min(f_oracle(1.0 / 6.0 + i as f64 * 1e-4).powi(2));
    }
    a = a.min(f_oracle(1.0 / 3.0).powi(2));
    assert!((a - tf.a).abs() <= 1e-9 * a, "{a} vs {}", tf.a);
    let b = 2.0 * gauss_legendre(|x| f_oracle(x).powi(2), 0.0, 1.0, 256);
    assert!((b - tf.b).abs() <= 1e-10 * b);
}

#[test]
fn scaling_identity_and_domination() {
    let tf = tf();
    for t in [1.0, 2.0, 5.0, 10.0] {
        let sc = tf.scaled(t).unwrap();
        assert_eq!(sc.h(0.0), t * tf.b);
        let mut worst: f64 = 0.0;
        for i in 0..=160 {
            let r = i as f64 * 0.1;
            // direct ∫_{−T}^{T} f_T(x) cos(rx) dx
            let direct = 2.0 * gauss_legendre(|x| sc.f(x) * (r * x).cos(), 0.0, t, 1024);
            worst = worst.max((sc.h(r) - direct).abs());
        }
        assert!(worst <= 1e-8 * t * tf.b, "T = {t}: {worst:e}");
        for k in 0..=64 * 16 {
            let r = k as f64 * SPECTRAL_STEP;
            assert!(sc.h(r) <= t * tf.h1(r) + 1e-15, "T = {t}, r = {r}");
        }
    }
    assert!(tf.scaled(0.5).is_err());
}

#[test]
fn laplace_side() {
    let tf = tf();
    let t = 10.0;
    assert!((tf.h_imag(0.0, t).unwrap() - t * tf.b).abs() <= 1e-13 * t * tf.b);
    let top = tf.h_imag(0.5, t).unwrap();
    assert!(top <= tf.b * t * 5f64.exp());
    let mut prev = 0.0;
    for i in 0..=50 {
        let s = i as f64 * 0.01;
        let v = tf.h_imag(s, t).unwrap();
        assert!(v >= prev && v <= tf.b * t * (s * t).exp() * (1.0 + 1e-14));
        prev = v;
    }
    assert!(tf.h_imag(0.6, t).is_err());
}

#[test]
fn narrower_bump_and_csv() {
    let tf = build_f1(0.25, 1.0 / 1024.0).unwrap();
    assert!(tf.grid().zip(&tf.f1).all(|(x, &v)| x < 0.5 || v == 0.0));
    assert!(tf.a > 0.0);
    let dir = std::env::temp_dir().join(format!("tf-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    tf.write_csv(&dir.join("f1.csv"), &dir.join("h1.csv")).unwrap();
    let f = std::fs::read_to_string(dir.join("f1.csv")).unwrap();
    assert_eq!(f.lines().next(), Some("x,f1"));
    assert_eq!(f.lines().count(), tf.f1.len() + 1);
    let h = std::fs::read_to_string(dir.join("h1.csv")).unwrap();
    assert_eq!(h.lines().count(), tf.h1_table.len() + 1);
    std::fs::remove_dir_all(dir).unwrap();
}
