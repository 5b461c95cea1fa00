use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fuchsian::{length_spectrum, pants_group, EnumerationConfig, LengthSpectrum, ORIENTATIONS};
use crate::hypgeom::volume;
use crate::pgt::{pants_delta, GridPlan, KappaFloor, PantsDelta};
use crate::testfn::TestFunctionPair;
use crate::trace::{
    cusp_terms, geodesic_term, identity_term, s_minus_bound, scattering_trace_bound, t1_budget, T1Budget, Term, TraceTermReport,
};

use super::spec::SurfaceSpec;

#[derive(Clone, Debug)]
pub struct CertifyConfig {
    pub tgrid: Vec<f64>,
    pub c3: f64,
    pub enumeration: EnumerationConfig,
    pub grid_plan: GridPlan,
    /// Constant `C` of the cusp-band norm comparison, an unverified input.
    pub mondal_c: f64,
    /// Exponent in the pinching leakage `2C/n^{1−2κ}`.
    pub pinch_kappa: f64,
    /// Distortion used when the spec has no pinch block.
    pub kq: f64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            tgrid: vec![8.0, 9.0, 10.0, 11.0, 12.0],
            c3: 0.01,
            enumeration: EnumerationConfig::default(),
            grid_plan: GridPlan::default(),
            mondal_c: 1.0,
            pinch_kappa: 0.25,
            kq: 1.0,
        }
    }
}

/// One row of the inequality chain at a fixed `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct LedgerRow {
    pub t: f64,
    pub geodesic_term: f64,
    pub identity_term: Term,
    pub log2_term: f64,
    pub digamma_term: Term,
    /// `h_T(0) n / 2`; dropped from `S_low` since the term it bounds is nonnegative.
    pub scattering_trace_bound: f64,
    pub t_u1: f64,
    /// `(T/4π)·sMinusBound`.
    pub s_minus_scaled: f64,
    /// Quadrature errors and modeled tails, subtracted.
    pub numerical_slack: f64,
    pub s_low: f64,
    /// `(2g+n−2)·B·T·e^{T√c₃}`.
    pub band_budget: f64,
    /// `B·T·e^{T/2}`.
    pub extraction_denominator: f64,
    pub raw_count: f64,
    pub certified_count: u32,
}

impl LedgerRow {
    /// The trace-formula terms of this row; `s_minus_bound` is the unscaled bound.
    pub fn trace_terms(&self, s_minus_bound: f64) -> TraceTermReport {
        TraceTermReport {
            t: self.t,
            identity_term: self.identity_term,
            geodesic_term: self.geodesic_term,
            log2_term: self.log2_term,
            digamma_term: self.digamma_term,
            scattering_trace_bound: self.scattering_trace_bound,
            s_minus_bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub c3: f64,
    pub a: f64,
    pub b: f64,
    pub kappa: Option<KappaFloor>,
    pub u1: T1Budget,
    pub u1_slack: f64,
    pub s_minus_bound: f64,
    pub rows: Vec<LedgerRow>,
    /// Index of the row with the largest count (first on ties).
    pub best: usize,
    /// Eigenvalues below `¼ − c₃`, counting `λ₀ = 0`.
    pub certified_count: u32,
    pub assumptions: Vec<String>,
}

impl Certificate {
    pub fn best_row(&self) -> &LedgerRow {
        &self.rows[self.best]
    }

    pub fn nonzero_count(&self) -> u32 {
        self.certified_count.saturating_sub(1)
    }
}

type PantsKey = [u64; 3];

fn key(l: [f64; 3]) -> PantsKey {
    l.map(f64::to_bits)
}

/// Shared state for certificate runs: the test function, configuration, and per-pants
/// spectra and δ estimates (computed once per distinct pants).
pub struct Certifier {
    pub tf: TestFunctionPair,
    pub config: CertifyConfig,
    spectra: Mutex<BTreeMap<PantsKey, Arc<LengthSpectrum>>>,
    deltas: Mutex<BTreeMap<PantsKey, Arc<PantsDelta>>>,
}

impl Certifier {
    pub fn new(tf: TestFunctionPair, config: CertifyConfig) -> Self {
        Certifier { tf, config, spectra: Mutex::new(BTreeMap::new()), deltas: Mutex::new(BTreeMap::new()) }
    }

    pub fn spectrum(&self, lengths: [f64; 3], t: f64) -> Result<Arc<LengthSpectrum>> {
        if let Some(s) = self.spectra.lock().unwrap().get(&key(lengths)) {
            if s.t >= t {
                return Ok(s.clone());
            }
        }
        let g = pants_group(lengths[0], lengths[1], lengths[2])?;
        let s = Arc::new(length_spectrum(&g, t, &self.config.enumeration)?);
        self.spectra.lock().unwrap().insert(key(lengths), s.clone());
        Ok(s)
    }

    pub fn delta(&self, lengths: [f64; 3]) -> Result<Arc<PantsDelta>> {
        if let Some(d) = self.deltas.lock().unwrap().get(&key(lengths)) {
            return Ok(d.clone());
        }
        let d = Arc::new(pants_delta(lengths, &self.config.grid_plan, &self.config.enumeration)?);
        self.deltas.lock().unwrap().insert(key(lengths), d.clone());
        Ok(d)
    }

    /// κ floor over the distinct pants of an inventory.
    pub fn kappa(&self, pants: &[[f64; 3]]) -> Result<KappaFloor> {
        let mut distinct: Vec<[f64; 3]> = Vec::new();
        for p in pants {
            if !distinct.iter().any(|q| key(*q) == key(*p)) {
                distinct.push(*p);
            }
        }
        let mut records = Vec::new();
        for p in distinct {
            let d = self.delta(p).map_err(|e| match e {
                Error::Budget { .. } => e,
                _ => Error::Certification { detail: format!("delta estimate failed for P({}, {}, {}): {e}", p[0], p[1], p[2]) },
            })?;
            records.push((*d).clone());
        }
        let margin = records.iter().map(|p| p.drift).fold(0.0, f64::max);
        let floor = records.iter().map(|p| p.primary.kappa_hat).fold(f64::INFINITY, f64::min);
        let kappa = floor - margin;
        if !(kappa > 0.0) {
            return Err(Error::Certification { detail: format!("kappa floor {kappa:.4} over the inventory is not positive") });
        }
        Ok(KappaFloor { kappa, margin, pants: records })
    }

    /// Interior primitive lengths of one pants up to `t` (boundary curves excluded).
    fn interior_lengths(&self, lengths: [f64; 3], t: f64) -> Result<Vec<f64>> {
        let s = self.spectrum(lengths, t)?;
        Ok(s.primitive().filter(|c| !c.boundary && c.length <= t).map(|c| c.length).collect())
    }

    /// The explicit lower-bound chain over the configured `T` grid.
    pub fn certificate(&self, spec: &SurfaceSpec) -> Result<Certificate> {
        spec.validate()?;
        let cfg = &self.config;
        let tf = &self.tf;
        let c3 = cfg.c3;
        if !(c3 > 0.0 && c3 < 0.25) {
            return Err(Error::Input { field: "c3".into(), detail: format!("must lie in (0, 1/4), got {c3}") });
        }
        if cfg.tgrid.is_empty() || cfg.tgrid.iter().any(|&t| !(t >= 1.0 && t.is_finite())) {
            return Err(Error::Input { field: "T_grid".into(), detail: "needs at least one T, each at least 1".into() });
        }
        if !spec.short_spectrum.declared_complete {
            return Err(Error::Certification { detail: "short spectrum not declared complete".into() });
        }
        let sig = spec.signature;
        let euler = sig.euler() as f64;
        let mut assumptions = vec![
            "short spectrum lists every primitive closed geodesic of length < 1".to_string(),
            "pants inventory is disjointly embedded".to_string(),
            format!("at most 2g+n-2 = {} eigenvalues below 1/4", sig.euler()),
            "first Dirichlet coefficient of the scattering determinant b1 >= 1".to_string(),
        ];
        let kappa = if spec.pants.is_empty() {
            None
        } else {
            let k = self.kappa(&spec.pants)?;
            if !(c3.sqrt() < k.kappa) {
                return Err(Error::Certification {
                    detail: format!("sqrt(c3) = {:.4} is not below the kappa floor {:.4}", c3.sqrt(), k.kappa),
                });
            }
            assumptions.push(format!("kappa floor {:.4} is an empirical counting estimate", k.kappa));
            Some(k)
        };
        let u1 = t1_budget(sig, &spec.short_spectrum, tf)?;
        let u1_slack = u1.identity.quad_error + u1.identity.tail + u1.digamma.quad_error + u1.digamma.tail;
        let s_minus = s_minus_bound(sig, tf)?;
        let t_max = cfg.tgrid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut pants_lengths = Vec::with_capacity(spec.pants.len());
        for &p in &spec.pants {
            pants_lengths.push(self.interior_lengths(p, t_max)?);
        }
        let mut rows = Vec::with_capacity(cfg.tgrid.len());
        for &t in &cfg.tgrid {
            // fixed summation order: inventory order
            let mut geodesic = 0.0;
            for lengths in &pants_lengths {
                geodesic += geodesic_term(lengths.iter().copied().filter(|&l| l <= t), tf, t)?;
            }
            let identity = identity_term(volume(sig), tf, t)?;
            let (log2, digamma) = cusp_terms(sig.n, tf, t)?;
            let scattering = scattering_trace_bound(sig.n, tf, t)?;
            let t_u1 = t * (u1.u1 + u1_slack);
            let s_minus_scaled = t / (4.0 * PI) * s_minus;
            let slack = identity.quad_error + identity.tail + digamma.quad_error + digamma.tail;
            let s_low = geodesic + identity.value - log2 - digamma.value - t_u1 - s_minus_scaled - slack;
            let band_budget = euler * tf.b * t * (t * c3.sqrt()).exp();
            let denominator = tf.b * t * (0.5 * t).exp();
            let (raw, count) = extract_count(s_low, band_budget, denominator, sig.euler());
            rows.push(LedgerRow {
                t,
                geodesic_term: geodesic,
                identity_term: identity,
                log2_term: log2,
                digamma_term: digamma,
                scattering_trace_bound: scattering,
                t_u1,
                s_minus_scaled,
                numerical_slack: slack,
                s_low,
                band_budget,
                extraction_denominator: denominator,
                raw_count: raw,
                certified_count: count,
            });
        }
        let best = rows
            .iter()
            .enumerate()
            .fold(0, |best, (i, r)| if r.certified_count > rows[best].certified_count { i } else { best });
        let certified_count = rows[best].certified_count;
        Ok(Certificate {
            c3,
            a: tf.a,
            b: tf.b,
            kappa,
            u1,
            u1_slack,
            s_minus_bound: s_minus,
            rows,
            best,
            certified_count,
            assumptions,
        })
    }
}

/// `max(0, ⌊(S_low − band)/denominator⌋)` clamped to `2g+n−2`, with the unrounded quotient.
pub fn extract_count(s_low: f64, band_budget: f64, denominator: f64, euler: u32) -> (f64, u32) {
    let raw = (s_low - band_budget) / denominator;
    let count = if raw.is_nan() { 0 } else { raw.floor().clamp(0.0, euler as f64) as u32 };
    (raw, count)
}

/// Windowed floor for one pants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PantsFloor {
    pub t: f64,
    /// `Σ_{T/6 ≤ ℓ ≤ T/3} ℓ e^{−ℓ/2} f₁(ℓ/T)` over oriented primitive classes.
    pub exact: f64,
    /// `A e^{(δ̂ − margin − ½)T/3}` when a δ estimate is supplied.
    pub growth_floor: Option<f64>,
}

pub fn pants_geodesic_floor(
    spectrum: &LengthSpectrum,
    t: f64,
    tf: &TestFunctionPair,
    delta: Option<&PantsDelta>,
) -> Result<PantsFloor> {
    if !(t >= 1.0) {
        return Err(crate::error::domain("pants_geodesic_floor", format!("T must be at least 1, got {t}")));
    }
    if spectrum.t < t / 3.0 {
        return Err(crate::error::domain("pants_geodesic_floor", format!("spectrum enumerated to {} < T/3", spectrum.t)));
    }
    let exact = ORIENTATIONS as f64
        * spectrum
            .primitive()
            .filter(|c| c.length >= t / 6.0 && c.length <= t / 3.0)
            .map(|c| c.length * (-0.5 * c.length).exp() * tf.f1(c.length / t))
            .sum::<f64>();
    let growth_floor = delta.map(|d| tf.a * ((d.primary.delta_hat - d.drift - 0.5) * t / 3.0).exp());
    Ok(PantsFloor { t, exact, growth_floor })
}
