//! Pants discovery, the explicit certificate, the min-max count, the pinching comparison,
//! and the branch driver combining them.

mod certificate;
mod graph;
mod minmax;
mod pinching;
mod spec;

pub use certificate::{extract_count, pants_geodesic_floor, Certificate, Certifier, CertifyConfig, LedgerRow, PantsFloor};
pub use graph::{find_disjoint_pants, IntersectionGraph, PantsSeed};
pub use minmax::{component_epsilon, minmax_from_curve_count, minmax_separating_count, worst_case_epsilon, MinMaxCount};
pub use pinching::{delta_tol, pinching_comparison, PinchingReport};
pub use spec::{check_components, Component, PinchSpec, SurfaceSpec};

use crate::error::{Error, Result};
use crate::hypgeom::SurfaceSignature;
use crate::trace::SHORT_SPLIT;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// Many curves below 1/20: disjoint bumps on the pieces.
    MinMax,
    /// Systole at least `1/n²`: the certificate on the surface itself.
    Direct,
    /// Curves below `1/n²` are pinched and the certificate runs on the limit.
    Pinched,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::MinMax => "minmax",
            Branch::Direct => "direct",
            Branch::Pinched => "pinched",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// `eigenvalues` counts `λ₀ = 0`; all lie below `below`.
    Certified { eigenvalues: u32, below: f64 },
    NotCertified { reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DichotomyReport {
    pub branch: Branch,
    pub hypotheses: Vec<String>,
    pub minmax: Option<MinMaxCount>,
    pub limit_spec: Option<SurfaceSpec>,
    pub certificate: Option<Certificate>,
    pub pinching: Option<PinchingReport>,
    pub verdict: Verdict,
}

impl DichotomyReport {
    fn new(branch: Branch) -> Self {
        DichotomyReport {
            branch,
            hypotheses: Vec::new(),
            minmax: None,
            limit_spec: None,
            certificate: None,
            pinching: None,
            verdict: Verdict::NotCertified { reason: String::new() },
        }
    }

    fn refuse(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::NotCertified { reason: reason.into() };
        self
    }
}

/// The surface with every listed curve replaced by two cusps, genus dropping by one per curve.
pub fn limit_spec(spec: &SurfaceSpec, pinched: &[f64]) -> Result<SurfaceSpec> {
    let p = pinched.len() as u32;
    let sig = spec.signature;
    if p > sig.g {
        return Err(Error::Certification {
            detail: format!("{p} pinched curves exceed genus {}; separating pinches are not modeled", sig.g),
        });
    }
    let mut rest = spec.short_spectrum.lengths.clone();
    for &l in pinched {
        let i = rest.iter().position(|&s| s == l).ok_or_else(|| Error::Input {
            field: "pinch.lengths".into(),
            detail: format!("{l} is not in the short spectrum"),
        })?;
        rest.remove(i);
    }
    let mut out = spec.clone();
    out.signature = SurfaceSignature::new(sig.g - p, sig.n + 2 * p)?;
    out.short_spectrum.lengths = rest;
    out.horocycle_graph = None;
    out.pinch = None;
    out.components = None;
    Ok(out)
}

fn run_certificate(certifier: &Certifier, spec: &SurfaceSpec, report: &mut DichotomyReport) -> Result<Option<String>> {
    match certifier.certificate(spec) {
        Ok(c) => {
            let refusal = (c.nonzero_count() == 0).then(|| {
                let r = c.best_row();
                format!(
                    "S_low - (2g+n-2)BTe^(T sqrt c3) = {:.6e} is below 2 BTe^(T/2) = {:.6e} at every T (best T = {})",
                    r.s_low - r.band_budget,
                    2.0 * r.extraction_denominator,
                    r.t
                )
            });
            report.certificate = Some(c);
            Ok(refusal)
        }
        Err(Error::Certification { detail }) => Ok(Some(detail)),
        Err(e) => Err(e),
    }
}

/// Chooses a branch by the short spectrum and runs it. `n` below is the cusp count.
pub fn dichotomy(spec: &SurfaceSpec, certifier: &Certifier) -> Result<DichotomyReport> {
    spec.validate()?;
    let sig = spec.signature;
    let n = sig.n as f64;
    let c3 = certifier.config.c3;
    let tiny = 1.0 / (n * n);
    let shorts = &spec.short_spectrum.lengths;
    let below_split = shorts.iter().filter(|&&l| l < SHORT_SPLIT).count();

    if sig.n >= 2 && below_split as f64 >= n / n.ln() {
        let mut report = DichotomyReport::new(Branch::MinMax);
        report.hypotheses.push(format!("#{{l < 1/20}} = {below_split} >= n/log n = {:.4}", n / n.ln()));
        let mm = match &spec.components {
            Some(cs) => {
                report.hypotheses.push("pieces supplied; component-wise area bound".into());
                minmax_separating_count(sig, cs)?
            }
            None => {
                report.hypotheses.push(format!("pieces not supplied; at least k - g = {below_split} - {} bumps", sig.g));
                minmax_from_curve_count(sig, below_split)?
            }
        };
        let verdict = if !mm.concluded {
            Verdict::NotCertified { reason: format!("Rayleigh bound epsilon = {} is not below 1/4", mm.epsilon) }
        } else if mm.count == 0 {
            Verdict::NotCertified { reason: "no separating pieces beyond the constant".into() }
        } else {
            Verdict::Certified { eigenvalues: mm.count + 1, below: mm.epsilon }
        };
        report.minmax = Some(mm);
        report.verdict = verdict;
        return Ok(report);
    }

    let pinched: Vec<f64> = shorts.iter().copied().filter(|&l| l < tiny).collect();
    if pinched.is_empty() {
        let mut report = DichotomyReport::new(Branch::Direct);
        let sum = spec.short_log_sum(tiny);
        let cap = spec.c2 * sig.euler() as f64;
        report.hypotheses.push(format!("systole >= 1/n^2 = {tiny:.6e}"));
        report.hypotheses.push(format!("sum over 1/n^2 < l < 1 of log(1/l) = {sum:.6} < c2(2g+n-2) = {cap:.6}"));
        if !(sum < cap) {
            return Ok(report.refuse(format!("short-sum hypothesis fails: {sum} >= c2(2g+n-2) = {cap}")));
        }
        if let Some(reason) = run_certificate(certifier, spec, &mut report)? {
            return Ok(report.refuse(reason));
        }
        let c = report.certificate.as_ref().expect("certificate present");
        report.verdict = Verdict::Certified { eigenvalues: c.certified_count, below: 0.25 - c3 };
        return Ok(report);
    }

    let mut report = DichotomyReport::new(Branch::Pinched);
    report.hypotheses.push(format!("{} curves below 1/n^2 = {tiny:.6e} are pinched", pinched.len()));
    let limit = match limit_spec(spec, &pinched) {
        Ok(l) => l,
        Err(Error::Certification { detail }) => return Ok(report.refuse(detail)),
        Err(e) => return Err(e),
    };
    let sys = limit.systole_below_one().unwrap_or(1.0);
    report.hypotheses.push(format!("limit systole {sys:.6e} >= 1/(2n^2)"));
    if sys < 0.5 * tiny {
        return Ok(report.refuse(format!("limit systole {sys} is below 1/(2n^2)")));
    }
    let sum = limit.short_log_sum(0.0);
    let cap = limit.c2 * limit.signature.euler() as f64;
    report.hypotheses.push(format!("limit sum over l < 1 of log(1/l) = {sum:.6} < c2(2g+n-2) = {cap:.6}"));
    let cert_refusal =
        if !(sum < cap) { Some(format!("short-sum hypothesis fails on the limit: {sum} >= {cap}")) } else { None };
    if let Some(reason) = cert_refusal {
        report.limit_spec = Some(limit);
        return Ok(report.refuse(reason));
    }
    let refusal = run_certificate(certifier, &limit, &mut report)?;
    report.limit_spec = Some(limit);
    if let Some(reason) = refusal {
        return Ok(report.refuse(reason));
    }
    let kq = spec.pinch.as_ref().map_or(certifier.config.kq, |p| p.kq);
    report.hypotheses.push(format!("comparison constant C = {} (declared, not derived)", certifier.config.mondal_c));
    let cert = report.certificate.as_ref().expect("certificate present");
    let pr = pinching_comparison(sig.n, &pinched, cert.c3, cert.certified_count, kq, certifier.config.mondal_c, certifier.config.pinch_kappa)?;
    report.verdict = match &pr.failure {
        None => Verdict::Certified { eigenvalues: pr.count, below: pr.concluded_window },
        Some(f) => Verdict::NotCertified { reason: f.clone() },
    };
    report.pinching = Some(pr);
    Ok(report)
}
