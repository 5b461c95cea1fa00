//! The even, compactly supported test function `f₁` with nonnegative,
//! monotone Fourier transform `ĥ₁`, and its dilations `f_T`, `h_T`.
//!
//! Convention: `ĥ(r) = ∫ f(x) e^{−irx} dx`, so `f(x) = (1/2π) ∫ ĥ(r) e^{irx} dr`.
//!
//! Construction: `φ` is the standard bump on `[−w, w]`, `u = φ∗φ`, and
//! `g(ξ) = ∫_ξ^∞ t φ̂(t)² dt` is even, nonnegative and decreasing. Its inverse
//! transform is `f = −u′/x ≥ 0`, supported in `[−2w, 2w]`. Then `f₁ = f²` has
//! transform `(g∗g)/2π`, again nonnegative and decreasing on `[0, ∞)`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{domain, Error, Result};
use crate::special::{GL8_NODES, GL8_WEIGHTS};

pub const DEFAULT_BUMP_WIDTH: f64 = 0.5;
pub const DEFAULT_GRID_STEP: f64 = 1.0 / 4096.0;
pub const DEFAULT_SPECTRAL_RANGE: f64 = 64.0;
/// Sample spacing of the stored `ĥ₁` table.
pub const SPECTRAL_STEP: f64 = 1.0 / 16.0;
/// Frequency step and cutoff of the `g` table feeding the inverse transform.
const XI_STEP: f64 = 0.25;
const XI_MAX: f64 = 1024.0;
/// Power of the tail model `C/(1+r)^N`.
pub const TAIL_POWER: i32 = 8;
const MONOTONE_TOL: f64 = 1e-10;

/// `Σ_j w_j cos(ω·j·h)`, with the phase advanced by complex rotation and re-anchored every 32 steps.
pub(crate) fn cos_sum(weights: &[f64], h: f64, omega: f64) -> f64 {
    let step = omega * h;
    let (s1, c1) = step.sin_cos();
    let mut sum = 0.0;
    let mut j = 0;
    while j < weights.len() {
        let (mut s, mut c) = (step * j as f64).sin_cos();
        for &w in &weights[j..(j + 32).min(weights.len())] {
            sum += w * c;
            let nc = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = nc;
        }
        j += 32;
    }
    sum
}

/// Same as [`cos_sum`] with `sin` in place of `cos`.
pub(crate) fn sin_sum(weights: &[f64], h: f64, omega: f64) -> f64 {
    let step = omega * h;
    let (s1, c1) = step.sin_cos();
    let mut sum = 0.0;
    let mut j = 0;
    while j < weights.len() {
        let (mut s, mut c) = (step * j as f64).sin_cos();
        for &w in &weights[j..(j + 32).min(weights.len())] {
            sum += w * s;
            let nc = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = nc;
        }
        j += 32;
    }
    sum
}

fn bump(x: f64, w: f64) -> f64 {
    let t = x / w;
    if t.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t * t)).exp()
    }
}

/// Decay model `c/(1+r)^N` used only beyond the tabulated range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailModel {
    pub c: f64,
    pub power: i32,
    pub from: f64,
}

impl TailModel {
    pub fn eval(&self, r: f64) -> f64 {
        self.c / (1.0 + r.abs()).powi(self.power)
    }

    /// `∫_a^∞ model(r)·r^m dr` bound for `m ∈ {0, 1}`, via `r ≤ 1 + r`.
    pub fn moment_tail(&self, a: f64, m: i32) -> f64 {
        let p = (self.power - m) as f64;
        self.c / ((p - 1.0) * (1.0 + a).powf(p - 1.0))
    }
}

#[derive(Clone, Debug)]
pub struct TestFunctionPair {
    pub bump_width: f64,
    /// Grid step of the `x` samples.
    pub dx: f64,
    /// `f₁(j·dx)` for `j = 0..=1/dx`; `f₁` is even and vanishes beyond `2w`.
    pub f1: Vec<f64>,
    /// `ĥ₁(k·SPECTRAL_STEP)` on `[0, R]`.
    pub h1_table: Vec<f64>,
    pub spectral_range: f64,
    pub tail: TailModel,
    /// `inf f₁` over `[1/6, 1/3]`.
    pub a: f64,
    /// `∫ f₁ = ĥ₁(0)`.
    pub b: f64,
    /// `g` at `k·XI_STEP`, the transform of `f`.
    g: Vec<f64>,
    /// Trapezoid weights for even integrals: `dx·f₁_j` doubled off the origin.
    weights: Vec<f64>,
    /// Same weights times `x_j`.
    x_weights: Vec<f64>,
    /// Memo for the trace module's `∫|ĥ₁′|` pair.
    pub(crate) h1_prime_l1: OnceLock<(f64, f64)>,
}

/// Build `f₁` with bump half-width `w ≤ ½` and grid step `dx`.
pub fn build_f1(bump_width: f64, grid_step: f64) -> Result<TestFunctionPair> {
    build_f1_with(bump_width, grid_step, DEFAULT_SPECTRAL_RANGE)
}

pub fn build_default() -> Result<TestFunctionPair> {
    build_f1(DEFAULT_BUMP_WIDTH, DEFAULT_GRID_STEP)
}

pub fn build_f1_with(bump_width: f64, grid_step: f64, spectral_range: f64) -> Result<TestFunctionPair> {
    let w = bump_width;
    if !(w > 0.0 && w <= 0.5) {
        return Err(domain("build_f1", format!("bump width must lie in (0, 1/2], got {w}")));
    }
    let steps = (1.0 / grid_step).round();
    if !(grid_step > 0.0) || (steps * grid_step - 1.0).abs() > 1e-12 || steps < 64.0 {
        return Err(domain("build_f1", format!("grid step {grid_step} must be 1/N with N >= 64")));
    }
    if !(spectral_range >= 8.0) {
        return Err(domain("build_f1", format!("spectral range must be at least 8, got {spectral_range}")));
    }
    let n = steps as usize;
    let dx = 1.0 / steps;

    // φ̂ by the trapezoid rule (exact up to rounding for a compactly supported smooth φ)
    let phi_weights: Vec<f64> =
        (0..=n).map(|j| if j == 0 { dx * bump(0.0, w) } else { 2.0 * dx * bump(j as f64 * dx, w) }).collect();
    let phi_hat = |xi: f64| cos_sum(&phi_weights, dx, xi);

    // g(ξ_k) = ∫_{ξ_k}^{XI_MAX} t φ̂(t)² dt, accumulated panel by panel from the top
    let panels = (XI_MAX / XI_STEP) as usize;
    let mut g = vec![0.0; panels + 1];
    for k in (0..panels).rev() {
        let c = (k as f64 + 0.5) * XI_STEP;
        let mut s = 0.0;
        for (x, wt) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
            let d = 0.5 * XI_STEP * x;
            let (lo, hi) = (c - d, c + d);
            s += wt * (lo * phi_hat(lo).powi(2) + hi * phi_hat(hi).powi(2));
        }
        g[k] = g[k + 1] + 0.5 * XI_STEP * s;
    }

    // f(x_j) = (1/π)∫₀^∞ g cos(ξ x_j) dξ, trapezoid in ξ (alias-free for support in [−1, 1])
    let g_weights = spectral_weights(&g);
    let support = 2.0 * w;
    let mut f1 = vec![0.0; n + 1];
    for (j, v) in f1.iter_mut().enumerate() {
        let x = j as f64 * dx;
        if x < support - 0.5 * dx {
            let f = cos_sum(&g_weights, XI_STEP, x);
            *v = f * f;
        }
    }

    let weights: Vec<f64> = f1.iter().enumerate().map(|(j, &v)| if j == 0 { dx * v } else { 2.0 * dx * v }).collect();
    let x_weights: Vec<f64> = weights.iter().enumerate().map(|(j, &v)| v * j as f64 * dx).collect();
    let mut tf = TestFunctionPair {
        bump_width: w,
        dx,
        f1,
        h1_table: Vec::new(),
        spectral_range,
        tail: TailModel { c: 0.0, power: TAIL_POWER, from: spectral_range },
        a: 0.0,
        b: 0.0,
        g,
        weights,
        x_weights,
        h1_prime_l1: OnceLock::new(),
    };
    let samples = (spectral_range / SPECTRAL_STEP).round() as usize;
    tf.h1_table = (0..=samples).map(|k| tf.h1(k as f64 * SPECTRAL_STEP)).collect();
    tf.b = tf.h1_table[0];
    tf.check_spectrum()?;
    let fit_from = (samples / 2..=samples).map(|k| {
        let r = k as f64 * SPECTRAL_STEP;
        tf.h1_table[k] * (1.0 + r).powi(TAIL_POWER)
    });
    tf.tail.c = fit_from.fold(0.0, f64::max);
    tf.a = tf.window_min(1.0 / 6.0, 1.0 / 3.0, 1e-4);
    if !(tf.a > 0.0 && tf.b > 0.0) {
        return Err(Error::Construction { location: "A, B".into(), detail: format!("A = {}, B = {}", tf.a, tf.b) });
    }
    Ok(tf)
}

fn spectral_weights(g: &[f64]) -> Vec<f64> {
    g.iter()
        .enumerate()
        .map(|(k, &v)| XI_STEP / std::f64::consts::PI * if k == 0 { 0.5 * v } else { v })
        .collect()
}

impl TestFunctionPair {
    fn check_spectrum(&self) -> Result<()> {
        for (k, &v) in self.h1_table.iter().enumerate() {
            if v < -1e-12 {
                return Err(Error::Construction {
                    location: format!("r = {}", k as f64 * SPECTRAL_STEP),
                    detail: format!("transform is negative: {v:e}"),
                });
            }
        }
        for (k, w) in self.h1_table.windows(2).enumerate() {
            if w[1] - w[0] > MONOTONE_TOL {
                return Err(Error::Construction {
                    location: format!("r = {}", (k + 1) as f64 * SPECTRAL_STEP),
                    detail: format!("transform increases by {:e}", w[1] - w[0]),
                });
            }
        }
        Ok(())
    }

    /// Grid `x` values `j·dx`, `j = 0..=1/dx`.
    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.f1.len()).map(move |j| j as f64 * self.dx)
    }

    /// `f` itself (not squared), by its spectral representation. Exact off the grid.
    pub fn f_spectral(&self, x: f64) -> f64 {
        if x.abs() >= 2.0 * self.bump_width {
            return 0.0;
        }
        cos_sum(&spectral_weights(&self.g), XI_STEP, x)
    }

    /// `f₁` by local quintic interpolation on the grid.
    pub fn f1(&self, x: f64) -> f64 {
        let x = x.abs();
        let n = self.f1.len() - 1;
        if x >= 1.0 {
            return 0.0;
        }
        let u = x / self.dx;
        let j = u.floor() as isize;
        // six nodes j-2..=j+3, reflected at 0 by evenness, zero beyond the end
        let mut sum = 0.0;
        for m in -2..=3isize {
            let node = j + m;
            let fv = match node.unsigned_abs() {
                i if i <= n => self.f1[i],
                _ => 0.0,
            };
            let mut basis = 1.0;
            for q in -2..=3isize {
                if q != m {
                    basis *= (u - (j + q) as f64) / (m - q) as f64;
                }
            }
            sum += fv * basis;
        }
        sum.max(0.0)
    }

    /// `ĥ₁(r) = ∫ f₁(x) cos(rx) dx` by the grid trapezoid rule.
    pub fn h1(&self, r: f64) -> f64 {
        cos_sum(&self.weights, self.dx, r.abs())
    }

    /// `ĥ₁′(r) = −∫ x f₁(x) sin(rx) dx`.
    pub fn h1_prime(&self, r: f64) -> f64 {
        -r.signum() * sin_sum(&self.x_weights, self.dx, r.abs())
    }

    /// `ĥ₁` from the stored table inside `[0, R]` (linear interpolation), tail model outside.
    pub fn h1_tabulated(&self, r: f64) -> f64 {
        let r = r.abs();
        if r > self.spectral_range {
            return self.tail.eval(r);
        }
        let u = r / SPECTRAL_STEP;
        let k = (u.floor() as usize).min(self.h1_table.len() - 2);
        let t = u - k as f64;
        self.h1_table[k] * (1.0 - t) + self.h1_table[k + 1] * t
    }

    /// `∫ f₁(x) e^{tx} dx = 2∫₀¹ f₁ cosh(tx)`.
    pub fn laplace(&self, t: f64) -> f64 {
        self.weights.iter().enumerate().map(|(j, &w)| w * (t * j as f64 * self.dx).cosh()).sum()
    }

    /// `h_T(is) = ∫ f_T(t) e^{ts} dt = T ∫ f₁(x) e^{Tsx} dx`.
    pub fn h_imag(&self, s: f64, t: f64) -> Result<f64> {
        if !(0.0..=0.5).contains(&s) {
            return Err(domain("h_imag", format!("s must lie in [0, 1/2], got {s}")));
        }
        if !(t >= 1.0) {
            return Err(domain("h_imag", format!("T must be at least 1, got {t}")));
        }
        Ok(t * self.laplace(t * s))
    }

    pub fn scaled(&self, t: f64) -> Result<ScaledPair<'_>> {
        if !(t >= 1.0) || !t.is_finite() {
            return Err(domain("scale_to_T", format!("T must be at least 1, got {t}")));
        }
        Ok(ScaledPair { tf: self, t })
    }

    fn window_min(&self, a: f64, b: f64, step: f64) -> f64 {
        let m = ((b - a) / step).round() as usize;
        (0..=m).map(|i| self.f_spectral(a + (b - a) * i as f64 / m as f64).powi(2)).fold(f64::INFINITY, f64::min)
    }

    /// Two-column CSV dumps `(x, f₁(x))` on the grid and `(r, ĥ₁(r))` on `[0, R]`.
    pub fn write_csv(&self, f_path: &Path, h_path: &Path) -> std::io::Result<()> {
        let mut out = BufWriter::new(File::create(f_path)?);
        writeln!(out, "x,f1")?;
        for (x, v) in self.grid().zip(&self.f1) {
            writeln!(out, "{x:.17e},{v:.17e}")?;
        }
        out.flush()?;
        let mut out = BufWriter::new(File::create(h_path)?);
        writeln!(out, "r,h1")?;
        for (k, v) in self.h1_table.iter().enumerate() {
            writeln!(out, "{:.17e},{v:.17e}", k as f64 * SPECTRAL_STEP)?;
        }
        out.flush()
    }
}

/// `f_T(x) = f₁(x/T)`, `h_T(r) = T ĥ₁(Tr)`.
#[derive(Clone, Copy, Debug)]
pub struct ScaledPair<'a> {
    pub tf: &'a TestFunctionPair,
    pub t: f64,
}

impl ScaledPair<'_> {
    pub fn f(&self, x: f64) -> f64 {
        self.tf.f1(x / self.t)
    }

    pub fn h(&self, r: f64) -> f64 {
        self.t * self.tf.h1(self.t * r)
    }
}
