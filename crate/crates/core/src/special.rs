//! Quadrature rules, the complex digamma function and the logarithmic integral.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
/// Gauss weights at the odd Kronrod nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// 8-point Gauss–Legendre on `[-1, 1]` (positive half).
pub const GL8_NODES: [f64; 4] = [0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363];
pub const GL8_WEIGHTS: [f64; 4] = [0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

fn kronrod15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Globally adaptive Gauss–Kronrod (7/15) on a finite interval.
/// Stops when the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn gauss_kronrod(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain("gauss_kronrod", format!("interval [{a}, {b}] is not finite")));
    }
    const MAX_PIECES: usize = 4000;
    let (value, error) = kronrod15(&mut f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, error });
    let (mut total, mut err) = (value, error);
    let mut evaluations = 15;
    while err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= MAX_PIECES {
            return Err(Error::Precision { term: "gauss_kronrod", tail: err, value: total });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (lv, le) = kronrod15(&mut f, worst.a, mid);
        let (rv, re) = kronrod15(&mut f, mid, worst.b);
        evaluations += 30;
        total += lv + rv - worst.value;
        err += le + re - worst.error;
        heap.push(Piece { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Piece { a: mid, b: worst.b, value: rv, error: re });
    }
    // resum to shed the drift of the running updates
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature { value, error, evaluations })
}

/// Composite 8-point Gauss–Legendre with `panels` equal panels.
pub fn gauss_legendre(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let c = a + (p as f64 + 0.5) * h;
        for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
            let dx = 0.5 * h * x;
            sum += w * (f(c - dx) + f(c + dx));
        }
    }
    0.5 * h * sum
}

/// `ψ(z) = Γ′(z)/Γ(z)` for `Re z > 0`: upward recurrence to `|z| ≥ 10`, then the asymptotic series.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.is_finite() {
        return Err(domain("digamma", format!("argument {z} outside Re z > 0")));
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 10.0 {
        shift -= z.inv();
        z += 1.0;
    }
    // B_{2k}/(2k) for k = 1..7
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let w = (z * z).inv();
    let mut series = Complex64::new(0.0, 0.0);
    for c in C.iter().rev() {
        series = (series + c) * w;
    }
    Ok(shift + z.ln() - 0.5 * z.inv() - series)
}

/// `Re ψ(1 + ir)`.
pub fn digamma_re_one_plus_ir(r: f64) -> f64 {
    digamma(Complex64::new(1.0, r)).expect("Re(1 + ir) = 1").re
}

/// `li(x) = ∫₂^x dt / ln t`, integrated in `u = ln t`.
pub fn logarithmic_integral(x: f64) -> Result<f64> {
    if !(x > 2.0) || !x.is_finite() {
        return Err(domain("logarithmic_integral", format!("x must exceed 2, got {x}")));
    }
    let q = gauss_kronrod(|u: f64| u.exp() / u, std::f64::consts::LN_2, x.ln(), 1e-14, 0.0)?;
    Ok(q.value)
}
