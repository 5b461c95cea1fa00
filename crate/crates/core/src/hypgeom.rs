//! Closed-form hyperbolic trigonometry for cusped surfaces: areas, pants
//! boundary relations, collars and cusp neighbourhoods.

use std::f64::consts::PI;

use crate::error::{domain, Result};

/// Genus and number of cusps of a finite-area hyperbolic surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceSignature {
    pub g: u32,
    pub n: u32,
}

impl SurfaceSignature {
    pub fn new(g: u32, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(domain("signature", "at least one cusp is required"));
        }
        if 2 * g as i64 + n as i64 - 2 < 1 {
            return Err(domain("signature", format!("(g, n) = ({g}, {n}) is not hyperbolic")));
        }
        Ok(SurfaceSignature { g, n })
    }

    /// `2g + n − 2`, minus the Euler characteristic.
    pub fn euler(&self) -> u32 {
        2 * self.g + self.n - 2
    }
}

pub fn volume(sig: SurfaceSignature) -> f64 {
    2.0 * PI * sig.euler() as f64
}

/// Boundary length of the pants cut out when two cusps' horocycles of length 2π touch.
pub fn touching_horocycle_boundary() -> f64 {
    2.0 * (2.0 * PI * PI - 1.0).acosh()
}

/// Length of the orthogonal arc splitting a pants whose boundary has length `l`.
pub fn orthogonal_pants_split(l: f64) -> Result<f64> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(domain("orthogonal_pants_split", format!("length must be positive, got {l}")));
    }
    Ok(4.0 * (1.0 / (l / 4.0).sinh()).asinh())
}

/// Collar parameter `β_γ = ℓ cosh(arccosh(2/ℓ)^{1/4} / 2)` of a short geodesic.
pub fn beta_gamma(l: f64) -> Result<f64> {
    if !(l > 0.0 && l <= 1.0) {
        return Err(domain("beta_gamma", format!("length must lie in (0, 1], got {l}")));
    }
    Ok(l * ((2.0 / l).acosh().powf(0.25) / 2.0).cosh())
}

/// `2/n^{2(1−κ)}` and whether `n` clears the threshold `exp(2^{−7/3} κ^{−4/3})`.
pub fn beta_bound(n: u64, kappa: f64) -> Result<(f64, bool)> {
    if n < 2 {
        return Err(domain("beta_bound", format!("n must be at least 2, got {n}")));
    }
    if !(kappa > 0.0 && kappa < 0.5) {
        return Err(domain("beta_bound", format!("kappa must lie in (0, 1/2), got {kappa}")));
    }
    let n = n as f64;
    Ok((2.0 / n.powf(2.0 * (1.0 - kappa)), n >= beta_threshold(kappa)))
}

pub fn beta_threshold(kappa: f64) -> f64 {
    (2f64.powf(-7.0 / 3.0) * kappa.powf(-4.0 / 3.0)).exp()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HorocycleContact {
    /// Horocycles of two different cusps touch.
    TwoCuspTouch,
    /// A single horocycle touches itself.
    SelfIntersect,
}

/// Bound on the pants boundary produced when horocycles of length `t` meet.
pub fn horocycle_pants_bounds(t: f64, kind: HorocycleContact) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("horocycle_pants_bounds", format!("horocycle length must be positive, got {t}")));
    }
    Ok(match kind {
        HorocycleContact::TwoCuspTouch => 2.0 * t,
        HorocycleContact::SelfIntersect => t,
    })
}

/// Collar `{(r, θ) : ℓ cosh r < w}` around a geodesic of length `ℓ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollarCylinder {
    pub core_length: f64,
    pub w: f64,
}

impl CollarCylinder {
    pub fn new(core_length: f64, w: f64) -> Result<Self> {
        if !(core_length > 0.0) {
            return Err(domain("collar", format!("core length must be positive, got {core_length}")));
        }
        if !(w >= 1.0) {
            return Err(domain("collar", format!("width parameter must be at least 1, got {w}")));
        }
        Ok(CollarCylinder { core_length, w })
    }

    pub fn contains(&self, r: f64) -> bool {
        self.core_length * r.cosh() < self.w
    }

    /// Largest `|r|` in the collar (zero when `w ≤ ℓ`).
    pub fn half_width(&self) -> f64 {
        (self.w / self.core_length).max(1.0).acosh()
    }

    /// Area in the metric `dr² + ℓ²cosh²r dθ²/(2π)²`.
    pub fn area(&self) -> f64 {
        2.0 * self.core_length * self.half_width().sinh()
    }
}

/// Band `[a, b)` of the cusp neighbourhood bounded by a horocycle of length `t`,
/// with metric `dr² + (t/2π)² e^{−2r} dθ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspNeighborhood {
    pub t: f64,
    pub a: f64,
    pub b: f64,
}

impl CuspNeighborhood {
    pub fn new(t: f64, a: f64, b: f64) -> Result<Self> {
        if !(t >= 1.0) {
            return Err(domain("cusp_neighborhood", format!("horocycle parameter must be at least 1, got {t}")));
        }
        if !(a >= 0.0 && a < b) {
            return Err(domain("cusp_neighborhood", format!("band [{a}, {b}) is empty or negative")));
        }
        Ok(CuspNeighborhood { t, a, b })
    }

    /// Length of the horocycle at depth `r`.
    pub fn circumference(&self, r: f64) -> f64 {
        self.t * (-r).exp()
    }

    pub fn area(&self) -> f64 {
        self.t * ((-self.a).exp() - (-self.b).exp())
    }

    pub fn contains(&self, other: &CuspNeighborhood) -> bool {
        self.t == other.t && self.a <= other.a && other.b <= self.b
    }
}
