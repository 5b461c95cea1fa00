use crate::error::{Error, Result};
use crate::hypgeom::beta_bound;

/// Largest `δ` with `(¼−c₃)(1+δ)⁴ < ¼ − c₃/2`, by bisection, and the remaining slack.
pub fn delta_tol(c3: f64) -> Result<(f64, f64)> {
    if !(c3 > 0.0 && c3 < 0.25) {
        return Err(Error::Input { field: "c3".into(), detail: format!("must lie in (0, 1/4), got {c3}") });
    }
    let lhs = |d: f64| (0.25 - c3) * (1.0 + d).powi(4);
    let target = 0.25 - c3 / 2.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    while lhs(hi) < target {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if lhs(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, target - lhs(lo)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PinchingReport {
    pub pinched_lengths: Vec<f64>,
    pub kq: f64,
    pub delta_tol: f64,
    pub delta_tol_slack: f64,
    pub mondal_c: f64,
    pub kappa: f64,
    pub n: u32,
    pub leakage: f64,
    pub beta: Option<(f64, bool)>,
    /// `¼ − c₃`, the level certified on the limit surface.
    pub input_level: f64,
    pub inflated_rayleigh: f64,
    pub concluded_window: f64,
    pub count: u32,
    pub concluded: bool,
    pub failure: Option<String>,
}

/// Transfers `limit_count` eigenvalues below `¼ − c₃` on the limit surface back through the comparison map.
pub fn pinching_comparison(
    n: u32,
    pinched_lengths: &[f64],
    c3: f64,
    limit_count: u32,
    kq: f64,
    mondal_c: f64,
    kappa: f64,
) -> Result<PinchingReport> {
    if !(kq >= 1.0 && kq.is_finite()) {
        return Err(Error::Input { field: "Kq".into(), detail: format!("distortion must be at least 1, got {kq}") });
    }
    if !(mondal_c >= 0.0 && mondal_c.is_finite()) {
        return Err(Error::Input { field: "mondalC".into(), detail: format!("must be nonnegative, got {mondal_c}") });
    }
    let nf = n as f64;
    if let Some(&l) = pinched_lengths.iter().find(|&&l| !(l > 0.0 && l < 1.0 / (nf * nf))) {
        return Err(Error::Input { field: "pinch.lengths".into(), detail: format!("{l} is not below 1/n^2") });
    }
    let (delta_tol, delta_tol_slack) = delta_tol(c3)?;
    let leakage = 2.0 * mondal_c / nf.powf(1.0 - 2.0 * kappa);
    let input_level = 0.25 - c3;
    let concluded_window = 0.25 - c3 / 4.0;
    let inflated_rayleigh = kq.powi(4) * input_level / (1.0 - leakage);
    let beta = if n >= 2 && kappa > 0.0 && kappa < 0.5 { Some(beta_bound(n as u64, kappa)?) } else { None };
    let failure = if limit_count < 1 {
        Some("limit certificate count m < 1".to_string())
    } else if kq - 1.0 > delta_tol {
        Some(format!("Kq - 1 = {:e} exceeds deltaTol = {delta_tol:e}", kq - 1.0))
    } else if !(leakage < 1.0) {
        Some(format!("leakage 2C/n^(1-2kappa) = {leakage} is not below 1"))
    } else if !matches!(beta, Some((_, true))) {
        Some(format!("n = {n} is below the beta_bound threshold for kappa = {kappa}"))
    } else if !(inflated_rayleigh <= concluded_window) {
        Some(format!("inflated Rayleigh quotient {inflated_rayleigh} exceeds 1/4 - c3/4 = {concluded_window}"))
    } else {
        None
    };
    Ok(PinchingReport {
        pinched_lengths: pinched_lengths.to_vec(),
        kq,
        delta_tol,
        delta_tol_slack,
        mondal_c,
        kappa,
        n,
        leakage,
        beta,
        input_level,
        inflated_rayleigh,
        concluded_window,
        count: limit_count,
        concluded: failure.is_none(),
        failure,
    })
}
