//! Closed-geodesic counting in length windows, comparison with the logarithmic
//! integral, and critical-exponent estimates by li-inversion.

use crate::error::{domain, Error, Result};
use crate::fuchsian::{length_spectrum, pants_group, EnumerationConfig, LengthSpectrum, PantsGroup};
pub use crate::special::logarithmic_integral;

/// Number of oriented closed geodesics (primitive and iterates) with length in `[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountWindow {
    pub a: f64,
    pub b: f64,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaEstimate {
    /// Solution of `li(e^{δT}) = N([1, T])` at the largest `T` of the grid.
    pub delta_hat: f64,
    /// `N` reached `li(e^T)`, so the estimate sits at the ceiling 1.
    pub clamped: bool,
    pub fit_windows: Vec<(f64, u64)>,
    /// `max_T |N − li(e^{δ̂T})|·e^{−(δ̂/2+1/4)T}` over the grid.
    pub residual_scale: f64,
    /// Least-squares slope of `ln N` against `T`.
    pub slope_delta: f64,
    pub kappa_hat: f64,
}

pub fn count_window(spectrum: &LengthSpectrum, a: f64, b: f64) -> Result<CountWindow> {
    if !(a >= 1.0 && a < b) {
        return Err(domain("count_geodesics", format!("window [{a}, {b}] must satisfy 1 <= a < b")));
    }
    if b > spectrum.t {
        return Err(domain("count_geodesics", format!("window end {b} beyond the enumerated range {}", spectrum.t)));
    }
    Ok(CountWindow { a, b, n: spectrum.count_in(a, b) })
}

pub fn count_geodesics(g: &PantsGroup, a: f64, b: f64, cfg: &EnumerationConfig) -> Result<CountWindow> {
    if !(a >= 1.0 && a < b) {
        return Err(domain("count_geodesics", format!("window [{a}, {b}] must satisfy 1 <= a < b")));
    }
    count_window(&length_spectrum(g, b, cfg)?, a, b)
}

/// Solve `li(e^{δt}) = n` for `δ ∈ (½, 1]` by bisection; returns `(δ, clamped)`.
pub fn invert_li(n: f64, t: f64) -> Result<(f64, bool)> {
    let li_at = |d: f64| logarithmic_integral((d * t).exp());
    if (0.5 * t).exp() <= 2.0 {
        return Err(Error::Estimation { detail: format!("T = {t} too small for li-inversion") });
    }
    if n >= li_at(1.0)? {
        return Ok((1.0, true));
    }
    if n <= li_at(0.5)? {
        return Err(Error::Estimation {
            detail: format!("N = {n} at T = {t} does not exceed li(e^(T/2)); no root with delta > 1/2"),
        });
    }
    let (mut lo, mut hi) = (0.5, 1.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if li_at(mid)? < n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), false))
}

pub fn residual(n: u64, t: f64, delta: f64) -> Result<f64> {
    let li = logarithmic_integral((delta * t).exp())?;
    Ok((n as f64 - li) * (-(delta / 2.0 + 0.25) * t).exp())
}

pub fn pgt_residual(spectrum: &LengthSpectrum, t: f64, delta: f64) -> Result<f64> {
    residual(count_window(spectrum, 1.0, t)?.n, t, delta)
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Estimate from an already enumerated spectrum covering the whole grid.
pub fn estimate_delta_from(spectrum: &LengthSpectrum, tgrid: &[f64]) -> Result<DeltaEstimate> {
    if tgrid.len() < 3 {
        return Err(domain("estimate_delta", format!("need at least 3 grid points, got {}", tgrid.len())));
    }
    if tgrid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(domain("estimate_delta", "T grid must be strictly ascending"));
    }
    let mut windows = Vec::with_capacity(tgrid.len());
    for &t in tgrid {
        windows.push((t, count_window(spectrum, 1.0, t)?.n));
    }
    if windows.windows(2).any(|w| w[1].1 < w[0].1) {
        return Err(Error::Estimation { detail: "counts are not monotone in T".into() });
    }
    if windows[0].1 == 0 {
        return Err(Error::Estimation { detail: format!("no closed geodesics below T = {}", tgrid[0]) });
    }
    let &(t_max, n_max) = windows.last().unwrap();
    let (delta_hat, clamped) = invert_li(n_max as f64, t_max)?;
    let mut residual_scale: f64 = 0.0;
    for &(t, n) in &windows {
        residual_scale = residual_scale.max(residual(n, t, delta_hat)?.abs());
    }
    let logs: Vec<(f64, f64)> = windows.iter().map(|&(t, n)| (t, (n as f64).ln())).collect();
    Ok(DeltaEstimate {
        delta_hat,
        clamped,
        fit_windows: windows,
        residual_scale,
        slope_delta: slope(&logs),
        kappa_hat: delta_hat - 0.5,
    })
}

pub fn estimate_delta(g: &PantsGroup, tgrid: &[f64], cfg: &EnumerationConfig) -> Result<DeltaEstimate> {
    let t_max = tgrid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(t_max > 1.0) {
        return Err(domain("estimate_delta", "T grid must reach beyond 1"));
    }
    estimate_delta_from(&length_spectrum(g, t_max, cfg)?, tgrid)
}

/// Per-pants record behind a κ floor.
#[derive(Clone, Debug, PartialEq)]
pub struct PantsDelta {
    pub lengths: [f64; 3],
    /// Offset added to both grids before the estimates succeeded.
    pub shift: f64,
    pub primary: DeltaEstimate,
    pub secondary: DeltaEstimate,
    pub drift: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KappaFloor {
    /// `min(δ̂ − ½) − margin`.
    pub kappa: f64,
    /// Largest `|δ̂_primary − δ̂_secondary|` seen.
    pub margin: f64,
    pub pants: Vec<PantsDelta>,
}

/// Default grids: two disjoint sets of cutoffs for the drift measurement.
pub const PRIMARY_TGRID: [f64; 4] = [9.0, 10.0, 11.0, 12.0];
pub const SECONDARY_TGRID: [f64; 4] = [8.5, 9.5, 10.5, 11.5];

/// Grids for δ estimation. Pants whose counts have not yet left the `li(e^{T/2})` regime
/// get both grids shifted up by `extend_step` until `max_top` is reached.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPlan {
    pub primary: Vec<f64>,
    pub secondary: Vec<f64>,
    pub extend_step: f64,
    pub max_top: f64,
}

impl Default for GridPlan {
    fn default() -> Self {
        GridPlan { primary: PRIMARY_TGRID.to_vec(), secondary: SECONDARY_TGRID.to_vec(), extend_step: 2.0, max_top: 24.0 }
    }
}

impl GridPlan {
    /// Fixed grids, no extension.
    pub fn fixed(primary: &[f64], secondary: &[f64]) -> Self {
        let top = primary.iter().chain(secondary).copied().fold(f64::NEG_INFINITY, f64::max);
        GridPlan { primary: primary.to_vec(), secondary: secondary.to_vec(), extend_step: 0.0, max_top: top }
    }

    fn top(&self) -> f64 {
        self.primary.iter().chain(&self.secondary).copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

fn shifted(grid: &[f64], dt: f64) -> Vec<f64> {
    grid.iter().map(|t| t + dt).collect()
}

/// δ estimates of one pants on both grids of `plan`, extending the grids while li-inversion has no root.
pub fn pants_delta(lengths: [f64; 3], plan: &GridPlan, cfg: &EnumerationConfig) -> Result<PantsDelta> {
    let g = pants_group(lengths[0], lengths[1], lengths[2])?;
    let base = plan.top();
    let mut shift = 0.0;
    loop {
        let spectrum = length_spectrum(&g, base + shift, cfg)?;
        let p = estimate_delta_from(&spectrum, &shifted(&plan.primary, shift));
        let s = estimate_delta_from(&spectrum, &shifted(&plan.secondary, shift));
        match (p, s) {
            (Ok(primary), Ok(secondary)) => {
                let drift = (primary.delta_hat - secondary.delta_hat).abs();
                return Ok(PantsDelta { lengths, shift, primary, secondary, drift });
            }
            (Err(e @ Error::Estimation { .. }), _) | (_, Err(e @ Error::Estimation { .. })) => {
                if plan.extend_step <= 0.0 || base + shift + plan.extend_step > plan.max_top + 1e-9 {
                    return Err(e);
                }
                shift += plan.extend_step;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    }
}

/// κ floor over an explicit family of pants.
pub fn kappa_floor_over(family: &[[f64; 3]], plan: &GridPlan, cfg: &EnumerationConfig) -> Result<KappaFloor> {
    if family.is_empty() {
        return Err(domain("kappa_floor", "empty pants family"));
    }
    let mut pants = Vec::with_capacity(family.len());
    for &lengths in family {
        let record = pants_delta(lengths, plan, cfg).map_err(|e| match e {
            Error::Budget { .. } => e,
            _ => Error::Certification {
                detail: format!("delta estimate failed for P({}, {}, {}): {e}", lengths[0], lengths[1], lengths[2]),
            },
        })?;
        pants.push(record);
    }
    let margin = pants.iter().map(|p| p.drift).fold(0.0, f64::max);
    let floor = pants.iter().map(|p| p.primary.kappa_hat).fold(f64::INFINITY, f64::min);
    let kappa = floor - margin;
    if !(kappa > 0.0) {
        return Err(Error::Certification {
            detail: format!("kappa floor {kappa:.4} is not positive (min deltaHat - 1/2 = {floor:.4}, margin {margin:.4})"),
        });
    }
    Ok(KappaFloor { kappa, margin, pants })
}

/// Two-boundary pants `(ℓ₁, ℓ₂, 0)` with `ℓ₁ ≤ ℓ₂` and `ℓ₁ + ℓ₂ ≤ c₂` on the grid `gridStep·ℕ`,
/// the one-boundary pants `(ℓ₁, 0, 0)` with `ℓ₁ ≤ c₂`, and `(0, 0, 0)`.
pub fn kappa_family(c2: f64, grid_step: f64) -> Result<Vec<[f64; 3]>> {
    if !(c2 > 0.0) {
        return Err(domain("kappa_floor", format!("c2 must be positive, got {c2}")));
    }
    if !(grid_step > 0.0 && grid_step <= c2 / 4.0 + 1e-12) {
        return Err(domain("kappa_floor", format!("grid step {grid_step} must lie in (0, c2/4]")));
    }
    let steps = (c2 / grid_step + 1e-9).floor() as usize;
    let grid: Vec<f64> = (1..=steps).map(|i| (i as f64 * grid_step).min(c2)).collect();
    let mut family = vec![[0.0, 0.0, 0.0]];
    for (i, &a) in grid.iter().enumerate() {
        family.push([a, 0.0, 0.0]);
        for &b in &grid[i..] {
            if a + b <= c2 + 1e-9 {
                family.push([a, b, 0.0]);
            }
        }
    }
    Ok(family)
}

pub fn kappa_floor(c2: f64, grid_step: f64, cfg: &EnumerationConfig) -> Result<KappaFloor> {
    kappa_floor_over(&kappa_family(c2, grid_step)?, &GridPlan::default(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_round_trip() {
        for d in [0.55, 0.7, 0.9, 0.99] {
            let n = logarithmic_integral((d * 12.0f64).exp()).unwrap();
            let (got, clamped) = invert_li(n, 12.0).unwrap();
            assert!(!clamped && (got - d).abs() < 1e-10, "{d} {got}");
        }
        assert!(invert_li(1e9, 12.0).unwrap().1);
        assert!(invert_li(10.0, 12.0).is_err());
    }

    #[test]
    fn slope_of_a_line() {
        assert!((slope(&[(1.0, 3.0), (2.0, 5.0), (4.0, 9.0)]) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn family_layout() {
        let f = kappa_family(4.0, 1.0).unwrap();
        // (0,0,0), 4 singles, pairs (1,1) (1,2) (1,3) (2,2)
        assert_eq!(f.len(), 9);
        assert!(f.iter().all(|p| p[0] + p[1] <= 4.0));
        assert!(kappa_family(4.0, 2.0).is_err());
    }
}
