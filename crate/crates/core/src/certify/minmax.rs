use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::hypgeom::SurfaceSignature;

use super::spec::{check_components, Component};

/// Bump collar volume per boundary or cusp end.
fn collar() -> f64 {
    1f64.sinh() / 20.0
}

/// Rayleigh bound of the bump on one piece; infinite when the area bound is not positive.
pub fn component_epsilon(c: Component) -> f64 {
    let ends = (c.n + c.b) as f64;
    let den = 4.0 * PI * (c.g as f64 - 1.0) + (2.0 * PI - collar()) * ends;
    if den > 0.0 {
        ends * collar() / den
    } else {
        f64::INFINITY
    }
}

/// Largest piece bound over hyperbolic pieces: a pair of pants (`g = 0`, three ends).
pub fn worst_case_epsilon() -> f64 {
    component_epsilon(Component { g: 0, n: 3, b: 0 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinMaxCount {
    /// Nonzero eigenvalues below `epsilon`: disjoint bumps minus the constant.
    pub count: u32,
    pub epsilon: f64,
    pub per_component: Vec<f64>,
    pub concluded: bool,
    /// True when pieces were not supplied and the count comes from the curve count alone.
    pub worst_case: bool,
}

pub fn minmax_separating_count(sig: SurfaceSignature, components: &[Component]) -> Result<MinMaxCount> {
    check_components(sig, components)?;
    let per_component: Vec<f64> = components.iter().map(|&c| component_epsilon(c)).collect();
    let epsilon = per_component.iter().copied().fold(0.0, f64::max);
    Ok(MinMaxCount {
        count: components.len() as u32 - 1,
        epsilon,
        per_component,
        concluded: epsilon < 0.25,
        worst_case: false,
    })
}

/// Cutting a connected genus-`g` surface along `k` disjoint curves leaves at least
/// `k − g + 1` pieces (the dual graph has cycle rank at most `g`).
pub fn minmax_from_curve_count(sig: SurfaceSignature, short_curves: usize) -> Result<MinMaxCount> {
    if short_curves > (3 * sig.g + sig.n).saturating_sub(3) as usize {
        return Err(domain(
            "minmax_from_curve_count",
            format!("{short_curves} disjoint curves exceed 3g+n-3 for (g, n) = ({}, {})", sig.g, sig.n),
        ));
    }
    let count = short_curves.saturating_sub(sig.g as usize) as u32;
    let epsilon = worst_case_epsilon();
    Ok(MinMaxCount { count, epsilon, per_component: Vec::new(), concluded: epsilon < 0.25, worst_case: true })
}
