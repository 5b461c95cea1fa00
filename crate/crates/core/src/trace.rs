//! Terms of the Selberg trace formula for the dilated pair `(f_T, h_T)`, and the
//! explicit budget bounds replacing the spectrally unknown pieces.
//!
//! Convention: `h` is the Fourier transform of the even function `f`; the geodesic
//! sum runs over oriented primitive hyperbolic classes and their iterates.

use std::f64::consts::{LN_2, PI};

use crate::error::{domain, Error, Result};
use crate::fuchsian::ORIENTATIONS;
use crate::hypgeom::{volume, SurfaceSignature};
use crate::special::{digamma_re_one_plus_ir, gauss_kronrod};
use crate::testfn::TestFunctionPair;

/// Integrals of `ĥ₁` run over `[0, SPECTRAL_CUT]` in the variable `u = Tr`.
/// `ĥ₁` is at the rounding floor there.
pub const SPECTRAL_CUT: f64 = 1024.0;
const REL_TOL: f64 = 1e-10;
const ABS_TOL: f64 = 1e-14;
const MAX_TAIL_RATIO: f64 = 1e-6;
/// Lengths at or below this go to the first bucket of the `T = 1` geodesic split.
pub const SHORT_SPLIT: f64 = 1.0 / 20.0;

/// A quadrature-evaluated term with its error estimate and the modeled tail beyond the cut.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub value: f64,
    pub quad_error: f64,
    pub tail: f64,
}

fn checked(term: &'static str, value: f64, quad_error: f64, tail: f64) -> Result<Term> {
    if tail > MAX_TAIL_RATIO * value.abs() {
        return Err(Error::Precision { term, tail, value });
    }
    Ok(Term { value, quad_error, tail })
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 1.0) || !t.is_finite() {
        return Err(domain("trace", format!("T must be at least 1, got {t}")));
    }
    Ok(())
}

/// `(vol/4π) ∫ h_T(r) r tanh(πr) dr`.
pub fn identity_term(vol: f64, tf: &TestFunctionPair, t: f64) -> Result<Term> {
    check_t(t)?;
    if !(vol > 0.0) {
        return Err(domain("identity_term", format!("area must be positive, got {vol}")));
    }
    // ∫_ℝ T ĥ₁(Tr) r tanh(πr) dr = (2/T) ∫₀^∞ ĥ₁(u) u tanh(πu/T) du
    let q = gauss_kronrod(|u| tf.h1(u) * u * (PI * u / t).tanh(), 0.0, SPECTRAL_CUT, REL_TOL, ABS_TOL)?;
    let s = vol / (4.0 * PI) * 2.0 / t;
    checked("identityTerm", s * q.value, s * q.error, s * tf.tail.moment_tail(SPECTRAL_CUT, 1))
}

/// `Σ_γ Σ_k ℓ f_T(kℓ) / 2sinh(kℓ/2)` over oriented classes; `lengths` are unoriented primitive lengths.
pub fn geodesic_term(lengths: impl IntoIterator<Item = f64>, tf: &TestFunctionPair, t: f64) -> Result<f64> {
    check_t(t)?;
    let sc = tf.scaled(t)?;
    let mut sum = 0.0;
    for l in lengths {
        if !(l > 0.0) {
            return Err(domain("geodesic_term", format!("lengths must be positive, got {l}")));
        }
        let mut k = 1.0;
        while k * l < t {
            sum += l * sc.f(k * l) / (2.0 * (0.5 * k * l).sinh());
            k += 1.0;
        }
    }
    Ok(ORIENTATIONS as f64 * sum)
}

/// `(n f_T(0) log 2, (n/2π) ∫ h_T(r) Re ψ(1+ir) dr)`.
pub fn cusp_terms(n: u32, tf: &TestFunctionPair, t: f64) -> Result<(f64, Term)> {
    check_t(t)?;
    if n < 1 {
        return Err(domain("cusp_terms", "need at least one cusp"));
    }
    let n = n as f64;
    let log2_term = n * tf.f1(0.0) * LN_2;
    // ∫_ℝ T ĥ₁(Tr) Re ψ(1+ir) dr = 2 ∫₀^∞ ĥ₁(u) Re ψ(1+iu/T) du
    let q = gauss_kronrod(|u| tf.h1(u) * digamma_re_one_plus_ir(u / t), 0.0, SPECTRAL_CUT, REL_TOL, ABS_TOL)?;
    let s = n / (2.0 * PI) * 2.0;
    // |Re ψ(1+ir)| ≤ log(1+r²) + 2 ≤ 2(1+r)
    let tail = s * 2.0 * tf.tail.moment_tail(SPECTRAL_CUT, 1);
    Ok((log2_term, checked("digammaTerm", s * q.value, s * q.error, tail)?))
}

/// Upper bound `h_T(0) n / 2` for `h_T(0) Tr(I − Φ(½)) / 4`; the term itself is ≥ 0.
pub fn scattering_trace_bound(n: u32, tf: &TestFunctionPair, t: f64) -> Result<f64> {
    check_t(t)?;
    if n < 1 {
        return Err(domain("scattering_trace_bound", "need at least one cusp"));
    }
    Ok(t * tf.b * n as f64 / 2.0)
}

/// `∫_ℝ |ĥ₁′|` two ways: summed increments of `ĥ₁` on a fine grid, and quadrature of `|ĥ₁′|`.
pub fn h1_prime_l1(tf: &TestFunctionPair) -> Result<(f64, f64)> {
    if let Some(&pair) = tf.h1_prime_l1.get() {
        return Ok(pair);
    }
    let steps = (SPECTRAL_CUT * 64.0) as usize;
    let dr = SPECTRAL_CUT / steps as f64;
    let mut prev = tf.h1(0.0);
    let mut variation = 0.0;
    for k in 1..=steps {
        let v = tf.h1(k as f64 * dr);
        variation += (v - prev).abs();
        prev = v;
    }
    let q = gauss_kronrod(|r| tf.h1_prime(r).abs(), 0.0, SPECTRAL_CUT, 1e-9, ABS_TOL)?;
    Ok(*tf.h1_prime_l1.get_or_init(|| (2.0 * variation, 2.0 * q.value)))
}

/// `(2g+n−2) π ∫|ĥ₁′|`, the pole count capped by the number of small eigenvalues.
pub fn s_minus_bound(sig: SurfaceSignature, tf: &TestFunctionPair) -> Result<f64> {
    let (by_differences, by_quadrature) = h1_prime_l1(tf)?;
    let rel = (by_differences - by_quadrature).abs() / by_quadrature;
    if rel > 1e-6 {
        return Err(Error::Precision { term: "sMinusBound", tail: rel, value: by_quadrature });
    }
    Ok(sig.euler() as f64 * PI * by_differences.max(by_quadrature))
}

/// Declared primitive lengths below 1 of the whole surface.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortSpectrum {
    pub lengths: Vec<f64>,
    /// The caller asserts that every primitive closed geodesic of length ≤ 1 is listed.
    pub declared_complete: bool,
}

/// The summands of `U₁`, each reported on its own.
#[derive(Clone, Debug, PartialEq)]
pub struct T1Budget {
    pub identity: Term,
    pub geodesic: f64,
    /// Geodesic contributions of lengths `≤ 1/20` and in `(1/20, 1]`.
    pub geodesic_split: (f64, f64),
    pub scattering: f64,
    pub log2: f64,
    pub digamma: Term,
    pub u1: f64,
}

/// `U₁ = identity + geodesic(short) + scattering bound + |log 2 term| + |digamma term|` at `T = 1`.
pub fn t1_budget(sig: SurfaceSignature, short: &ShortSpectrum, tf: &TestFunctionPair) -> Result<T1Budget> {
    if !short.declared_complete {
        return Err(Error::Certification { detail: "short spectrum is not declared complete; U1 cannot be bounded".into() });
    }
    if let Some(&l) = short.lengths.iter().find(|&&l| !(l > 0.0 && l <= 1.0)) {
        return Err(domain("t1_budget", format!("short length {l} outside (0, 1]")));
    }
    let identity = identity_term(volume(sig), tf, 1.0)?;
    let low = geodesic_term(short.lengths.iter().copied().filter(|&l| l <= SHORT_SPLIT), tf, 1.0)?;
    let high = geodesic_term(short.lengths.iter().copied().filter(|&l| l > SHORT_SPLIT), tf, 1.0)?;
    let scattering = scattering_trace_bound(sig.n, tf, 1.0)?;
    let (log2, digamma) = cusp_terms(sig.n, tf, 1.0)?;
    let u1 = identity.value + low + high + scattering + log2.abs() + digamma.value.abs();
    Ok(T1Budget { identity, geodesic: low + high, geodesic_split: (low, high), scattering, log2, digamma, u1 })
}

/// All trace-formula terms at one `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceTermReport {
    pub t: f64,
    pub identity_term: Term,
    pub geodesic_term: f64,
    pub log2_term: f64,
    pub digamma_term: Term,
    pub scattering_trace_bound: f64,
    pub s_minus_bound: f64,
}
