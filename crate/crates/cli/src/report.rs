//! Key=value reports and the per-`T` ledger CSV. Floats use the shortest round-trip form.

use std::fmt::Write;

use smalleig::certify::{find_disjoint_pants, Certificate, DichotomyReport, PantsSeed, SurfaceSpec, Verdict};
use smalleig::testfn::TestFunctionPair;
use smalleig::trace::Term;

use crate::config::RunConfig;

pub const REPORT_FORMAT: &str = "smalleig-report-v1";
pub const LEDGER_VERSION: &str = "#ledger-v1";
pub const LEDGER_HEADER: &str = "T,geodesicTerm,identityTerm,cuspTerms,T_U1,sMinusBound,extractionDenominator,certifiedCount";

struct Kv(String);

impl Kv {
    fn put(&mut self, key: impl std::fmt::Display, value: impl std::fmt::Display) {
        let value = value.to_string().replace('\n', " ");
        writeln!(self.0, "{key}={value}").expect("write to string");
    }

    fn term(&mut self, key: &str, t: &Term) {
        self.put(key, t.value);
        self.put(format_args!("{key}.quadError"), t.quad_error);
        self.put(format_args!("{key}.tail"), t.tail);
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}

fn certificate(kv: &mut Kv, prefix: &str, c: &Certificate) {
    kv.put(format_args!("{prefix}.c3"), c.c3);
    kv.put(format_args!("{prefix}.A"), c.a);
    kv.put(format_args!("{prefix}.B"), c.b);
    match &c.kappa {
        Some(k) => {
            kv.put(format_args!("{prefix}.kappa.floor"), k.kappa);
            kv.put(format_args!("{prefix}.kappa.margin"), k.margin);
            for (i, p) in k.pants.iter().enumerate() {
                let key = format!("{prefix}.kappa.pants.{i}");
                kv.put(format_args!("{key}.lengths"), join(&p.lengths));
                kv.put(format_args!("{key}.gridShift"), p.shift);
                kv.put(format_args!("{key}.deltaHat"), p.primary.delta_hat);
                kv.put(format_args!("{key}.deltaHatSecondary"), p.secondary.delta_hat);
                kv.put(format_args!("{key}.drift"), p.drift);
                kv.put(format_args!("{key}.kappaHat"), p.primary.kappa_hat);
                kv.put(format_args!("{key}.residualScale"), p.primary.residual_scale);
            }
        }
        None => kv.put(format_args!("{prefix}.kappa.floor"), "none"),
    }
    kv.term(&format!("{prefix}.U1.identityTerm"), &c.u1.identity);
    kv.put(format_args!("{prefix}.U1.geodesicTerm"), c.u1.geodesic);
    kv.put(format_args!("{prefix}.U1.geodesicTerm.upTo1/20"), c.u1.geodesic_split.0);
    kv.put(format_args!("{prefix}.U1.geodesicTerm.above1/20"), c.u1.geodesic_split.1);
    kv.put(format_args!("{prefix}.U1.scatteringTraceBound"), c.u1.scattering);
    kv.put(format_args!("{prefix}.U1.log2Term"), c.u1.log2);
    kv.term(&format!("{prefix}.U1.digammaTerm"), &c.u1.digamma);
    kv.put(format_args!("{prefix}.U1"), c.u1.u1);
    kv.put(format_args!("{prefix}.U1.numericalSlack"), c.u1_slack);
    kv.put(format_args!("{prefix}.sMinusBound"), c.s_minus_bound);
    for (i, r) in c.rows.iter().enumerate() {
        let key = format!("{prefix}.ledger.{i}");
        let tt = r.trace_terms(c.s_minus_bound);
        kv.put(format_args!("{key}.T"), tt.t);
        kv.put(format_args!("{key}.geodesicTerm"), tt.geodesic_term);
        kv.term(&format!("{key}.identityTerm"), &tt.identity_term);
        kv.put(format_args!("{key}.log2Term"), tt.log2_term);
        kv.term(&format!("{key}.digammaTerm"), &tt.digamma_term);
        kv.put(format_args!("{key}.scatteringTraceBound"), tt.scattering_trace_bound);
        kv.put(format_args!("{key}.sMinusBound"), tt.s_minus_bound);
        kv.put(format_args!("{key}.T_U1"), r.t_u1);
        kv.put(format_args!("{key}.sMinusTerm"), r.s_minus_scaled);
        kv.put(format_args!("{key}.numericalSlack"), r.numerical_slack);
        kv.put(format_args!("{key}.S_low"), r.s_low);
        kv.put(format_args!("{key}.bandBudget"), r.band_budget);
        kv.put(format_args!("{key}.extractionDenominator"), r.extraction_denominator);
        kv.put(format_args!("{key}.rawCount"), r.raw_count);
        kv.put(format_args!("{key}.certifiedCount"), r.certified_count);
    }
    kv.put(format_args!("{prefix}.bestT"), c.best_row().t);
    kv.put(format_args!("{prefix}.certifiedCount"), c.certified_count);
    kv.put(format_args!("{prefix}.nonzeroSmallEigenvalues"), c.nonzero_count());
    for (i, a) in c.assumptions.iter().enumerate() {
        kv.put(format_args!("{prefix}.assumption.{i}"), a);
    }
}

pub fn render(spec: &SurfaceSpec, cfg: &RunConfig, tf: &TestFunctionPair, report: &DichotomyReport) -> String {
    let mut kv = Kv(String::new());
    kv.put("format", REPORT_FORMAT);
    kv.put("spec.g", spec.signature.g);
    kv.put("spec.n", spec.signature.n);
    kv.put("spec.euler", spec.signature.euler());
    kv.put("spec.c2", spec.c2);
    for (i, p) in spec.pants.iter().enumerate() {
        kv.put(format_args!("spec.pants.{i}"), join(p));
    }
    kv.put("spec.short_spectrum", join(&spec.short_spectrum.lengths));
    kv.put("spec.short_spectrum_complete", spec.short_spectrum.declared_complete);
    if let Some(g) = &spec.horocycle_graph {
        kv.put("graph.vertices", g.vertices);
        kv.put("graph.touched", g.touched());
        kv.put("graph.H", g.degree_cap);
        kv.put("graph.guarantee", g.guarantee());
        if let Ok(seeds) = find_disjoint_pants(g) {
            kv.put("graph.seeds", seeds.len());
            let text: Vec<String> = seeds
                .iter()
                .map(|s| match s {
                    PantsSeed::Single(v) => format!("{v}"),
                    PantsSeed::Pair(a, b) => format!("{a}-{b}"),
                })
                .collect();
            kv.put("graph.seedList", text.join(","));
        }
    }
    kv.put("config.T_grid", join(&cfg.t_grid));
    kv.put("config.c3", cfg.c3);
    kv.put("config.enumeration_budget", cfg.enumeration_budget);
    kv.put("config.mondalC", cfg.mondal_c);
    kv.put("config.Kq", cfg.kq);
    kv.put("config.pinch_kappa", cfg.pinch_kappa);
    kv.put("testfn.bumpWidth", tf.bump_width);
    kv.put("testfn.gridStep", tf.dx);
    kv.put("testfn.A", tf.a);
    kv.put("testfn.B", tf.b);
    kv.put("testfn.f1(0)", tf.f1(0.0));
    kv.put("branch", report.branch.label());
    for (i, h) in report.hypotheses.iter().enumerate() {
        kv.put(format_args!("hypothesis.{i}"), h);
    }
    match &report.verdict {
        Verdict::Certified { eigenvalues, below } => {
            kv.put("verdict", "certified");
            kv.put("certifiedEigenvalues", eigenvalues);
            kv.put("nonzeroSmallEigenvalues", eigenvalues.saturating_sub(1));
            kv.put("below", below);
        }
        Verdict::NotCertified { reason } => {
            kv.put("verdict", "not_certified");
            kv.put("reason", reason);
        }
    }
    if let Some(m) = &report.minmax {
        kv.put("minmax.count", m.count);
        kv.put("minmax.epsilon", m.epsilon);
        kv.put("minmax.worstCase", m.worst_case);
        for (i, e) in m.per_component.iter().enumerate() {
            kv.put(format_args!("minmax.epsilon.{i}"), e);
        }
    }
    if let Some(l) = &report.limit_spec {
        kv.put("limit.g", l.signature.g);
        kv.put("limit.n", l.signature.n);
        kv.put("limit.short_spectrum", join(&l.short_spectrum.lengths));
    }
    if let Some(c) = &report.certificate {
        certificate(&mut kv, "certificate", c);
    }
    if let Some(p) = &report.pinching {
        kv.put("pinching.pinchedLengths", join(&p.pinched_lengths));
        kv.put("pinching.Kq", p.kq);
        kv.put("pinching.deltaTol", p.delta_tol);
        kv.put("pinching.deltaTolSlack", p.delta_tol_slack);
        kv.put("pinching.mondalC", p.mondal_c);
        kv.put("pinching.kappa", p.kappa);
        kv.put("pinching.leakage", p.leakage);
        if let Some((b, valid)) = p.beta {
            kv.put("pinching.betaBound", b);
            kv.put("pinching.betaThresholdMet", valid);
        }
        kv.put("pinching.inputLevel", p.input_level);
        kv.put("pinching.inflatedRayleigh", p.inflated_rayleigh);
        kv.put("pinching.concludedWindow", p.concluded_window);
        kv.put("pinching.count", p.count);
        kv.put("pinching.concluded", p.concluded);
        if let Some(f) = &p.failure {
            kv.put("pinching.failure", f);
        }
    }
    kv.0
}

/// `cuspTerms` is `log2Term + digammaTerm` and `sMinusBound` the `(T/4π)`-scaled bound,
/// both as subtracted from `S_low`.
pub fn ledger_csv(c: &Certificate) -> String {
    let mut out = format!("{LEDGER_VERSION}\n{LEDGER_HEADER}\n");
    for r in &c.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.t,
            r.geodesic_term,
            r.identity_term.value,
            r.log2_term + r.digamma_term.value,
            r.t_u1,
            r.s_minus_scaled,
            r.extraction_denominator,
            r.certified_count
        )
        .expect("write to string");
    }
    out
}
