use crate::error::{Error, Result};
use crate::hypgeom::SurfaceSignature;
use crate::trace::ShortSpectrum;

use super::graph::IntersectionGraph;

/// Curves to pinch and the distortion of the comparison map.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchSpec {
    pub lengths: Vec<f64>,
    pub kq: f64,
}

/// One piece `(g_k, n_k, b_k)` of the surface cut along short separating curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Component {
    pub g: u32,
    pub n: u32,
    pub b: u32,
}

/// Combinatorial description of a cusped surface.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSpec {
    pub signature: SurfaceSignature,
    pub c2: f64,
    /// Disjointly embedded pants `(ℓ₁, ℓ₂, ℓ₃)`, zeros for cusps.
    pub pants: Vec<[f64; 3]>,
    pub short_spectrum: ShortSpectrum,
    pub horocycle_graph: Option<IntersectionGraph>,
    pub pinch: Option<PinchSpec>,
    /// Pieces after cutting along the curves shorter than 1/20, if known.
    pub components: Option<Vec<Component>>,
}

fn bad(field: impl Into<String>, detail: impl Into<String>) -> Error {
    Error::Input { field: field.into(), detail: detail.into() }
}

impl SurfaceSpec {
    pub fn minimal(signature: SurfaceSignature, pants: Vec<[f64; 3]>, short: Vec<f64>) -> Self {
        SurfaceSpec {
            signature,
            c2: 7.3,
            pants,
            short_spectrum: ShortSpectrum { lengths: short, declared_complete: true },
            horocycle_graph: None,
            pinch: None,
            components: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let sig = SurfaceSignature::new(self.signature.g, self.signature.n)?;
        if !(self.c2 > 0.0 && self.c2.is_finite()) {
            return Err(bad("c2", format!("must be positive, got {}", self.c2)));
        }
        if self.pants.len() > sig.n as usize {
            return Err(bad("pants", format!("{} pants but only {} cusps", self.pants.len(), sig.n)));
        }
        let mut cusp_slots = 0usize;
        for (i, p) in self.pants.iter().enumerate() {
            if p.iter().any(|&l| !(l >= 0.0 && l.is_finite())) {
                return Err(bad(format!("pants[{i}]"), "boundary lengths must be finite and nonnegative"));
            }
            let cusps = p.iter().filter(|&&l| l == 0.0).count();
            if cusps == 0 {
                return Err(bad(format!("pants[{i}]"), "needs at least one cusp (a zero length)"));
            }
            let total: f64 = p.iter().sum();
            if total > self.c2 + 1e-12 {
                return Err(bad(format!("pants[{i}]"), format!("total boundary {total} exceeds c2 = {}", self.c2)));
            }
            cusp_slots += cusps;
        }
        if cusp_slots > sig.n as usize {
            return Err(bad("pants", format!("disjoint pants use {cusp_slots} cusps but the surface has {}", sig.n)));
        }
        // curves shorter than 2 arcsinh 1 are simple and pairwise disjoint
        let max_curves = (3 * sig.g + sig.n).saturating_sub(3) as usize;
        if self.short_spectrum.lengths.len() > max_curves {
            return Err(bad(
                "short_spectrum",
                format!("{} disjoint curves exceed 3g+n-3 = {max_curves}", self.short_spectrum.lengths.len()),
            ));
        }
        for (i, &l) in self.short_spectrum.lengths.iter().enumerate() {
            if !(l > 0.0 && l < 1.0) {
                return Err(bad(format!("short_spectrum[{i}]"), format!("length {l} must lie in (0, 1)")));
            }
        }
        if let Some(g) = &self.horocycle_graph {
            g.validate()?;
            if g.vertices > sig.n as usize {
                return Err(bad("horocycle_graph", format!("{} vertices but only {} cusps", g.vertices, sig.n)));
            }
        }
        if let Some(p) = &self.pinch {
            if !(p.kq >= 1.0 && p.kq.is_finite()) {
                return Err(bad("pinch.Kq", format!("distortion must be at least 1, got {}", p.kq)));
            }
            for (i, &l) in p.lengths.iter().enumerate() {
                if !self.short_spectrum.lengths.iter().any(|&s| (s - l).abs() <= 1e-12 * l.max(1e-300)) {
                    return Err(bad(format!("pinch.lengths[{i}]"), format!("{l} is not in the short spectrum")));
                }
            }
        }
        if let Some(cs) = &self.components {
            check_components(sig, cs)?;
        }
        Ok(())
    }

    /// `Σ log(1/ℓ)` over short lengths inside `(lo, 1)`.
    pub fn short_log_sum(&self, lo: f64) -> f64 {
        self.short_spectrum.lengths.iter().filter(|&&l| l > lo).map(|l| -l.ln()).sum()
    }

    pub fn systole_below_one(&self) -> Option<f64> {
        self.short_spectrum.lengths.iter().copied().reduce(f64::min)
    }
}

/// Cut pieces must be hyperbolic, glue back to the signature, and pair up their boundary curves.
pub fn check_components(sig: SurfaceSignature, cs: &[Component]) -> Result<()> {
    if cs.is_empty() {
        return Err(bad("components", "empty"));
    }
    for (i, c) in cs.iter().enumerate() {
        if 2 * c.g + c.n + c.b < 3 {
            return Err(bad(format!("components[{i}]"), "piece is not hyperbolic (2g + n + b < 3)"));
        }
    }
    let b: u32 = cs.iter().map(|c| c.b).sum();
    let n: u32 = cs.iter().map(|c| c.n).sum();
    let chi: i64 = cs.iter().map(|c| 2 * c.g as i64 - 2 + c.n as i64 + c.b as i64).sum();
    if b % 2 != 0 {
        return Err(bad("components", "boundary curves must pair up (odd total)"));
    }
    if n != sig.n {
        return Err(bad("components", format!("pieces carry {n} cusps, surface has {}", sig.n)));
    }
    if chi != sig.euler() as i64 {
        return Err(bad("components", format!("pieces have total 2g+n+b-2 = {chi}, surface has {}", sig.euler())));
    }
    Ok(())
}
