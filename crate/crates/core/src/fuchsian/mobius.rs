use std::ops::Mul;

use crate::error::{domain, Error, Result};

/// Real unimodular 2×2 matrix, taken up to sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mobius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Conjugacy type of an isometry, read off the trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Isometry {
    Hyperbolic { length: f64 },
    Parabolic,
    Elliptic { trace: f64 },
}

/// Absolute tolerance on `|tr| - 2` below which an element counts as parabolic.
pub const PARABOLIC_TOL: f64 = 1e-9;

impl Mobius {
    pub const IDENTITY: Mobius = Mobius { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mobius { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Rescale so that the determinant is exactly representable as 1 again.
    pub fn renormalized(&self) -> Self {
        let s = self.det().sqrt().recip();
        Mobius { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    /// Squared Frobenius norm; `frob_sq / 2 = cosh d(i, M i)`.
    pub fn frob_sq(&self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    /// `P⁻¹ M P`
    pub fn conjugated_by(&self, p: &Mobius) -> Self {
        p.inverse() * *self * *p
    }

    pub fn is_sign_identity(&self, tol: f64) -> bool {
        let near = |s: f64| {
            (self.a - s).abs() < tol && self.b.abs() < tol && self.c.abs() < tol && (self.d - s).abs() < tol
        };
        near(1.0) || near(-1.0)
    }

    /// Action on the upper half plane, `z = (x, y)` with `y > 0`.
    pub fn apply(&self, z: (f64, f64)) -> (f64, f64) {
        let (x, y) = z;
        let nr = self.a * x + self.b;
        let ni = self.a * y;
        let dr = self.c * x + self.d;
        let di = self.c * y;
        let den = dr * dr + di * di;
        ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    }
}

impl Mul for Mobius {
    type Output = Mobius;
    fn mul(self, o: Mobius) -> Mobius {
        Mobius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

/// `cosh` of the hyperbolic distance between two points of the upper half plane.
pub fn cosh_dist(z: (f64, f64), w: (f64, f64)) -> f64 {
    let dx = z.0 - w.0;
    let dy = z.1 - w.1;
    1.0 + (dx * dx + dy * dy) / (2.0 * z.1 * w.1)
}

pub fn classify_trace(trace: f64) -> Isometry {
    let t = trace.abs();
    if (t - 2.0).abs() <= PARABOLIC_TOL {
        Isometry::Parabolic
    } else if t > 2.0 {
        Isometry::Hyperbolic { length: 2.0 * (t / 2.0).acosh() }
    } else {
        Isometry::Elliptic { trace }
    }
}

pub fn translation_length(m: &Mobius) -> Result<Isometry> {
    if m.is_sign_identity(1e-12) {
        return Err(domain("translation_length", "identity has no translation length"));
    }
    Ok(classify_trace(m.trace()))
}

/// Diagonal hyperbolic element with translation length `l`.
pub fn hyperbolic_generator(l: f64) -> Result<Mobius> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::Domain {
            op: "hyperbolic_generator",
            detail: format!("length must be positive, got {l}"),
        });
    }
    let e = (l / 2.0).exp();
    Ok(Mobius::new(e, 0.0, 0.0, e.recip()))
}
