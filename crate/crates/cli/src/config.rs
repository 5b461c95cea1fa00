use std::path::Path;

use serde::Deserialize;
use smalleig::certify::CertifyConfig;
use smalleig::fuchsian::EnumerationConfig;
use smalleig::testfn::{build_f1_with, TestFunctionPair, DEFAULT_BUMP_WIDTH, DEFAULT_GRID_STEP, DEFAULT_SPECTRAL_RANGE};

use crate::error::{io, CliError, ParseError};

pub const ENV_BUDGET: &str = "CERTIFY_ENUM_BUDGET";
pub const ENV_WORKERS: &str = "CERTIFY_WORKERS";
pub const MIN_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    #[serde(rename = "T_grid")]
    pub t_grid: Vec<f64>,
    pub c3: f64,
    /// Used when the spec file has no `c2`.
    pub c2: f64,
    pub enumeration_budget: usize,
    pub bump_width: f64,
    pub grid_step: f64,
    #[serde(rename = "R")]
    pub spectral_range: f64,
    #[serde(rename = "mondalC")]
    pub mondal_c: f64,
    #[serde(rename = "Kq")]
    pub kq: f64,
    pub pinch_kappa: f64,
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let base = CertifyConfig::default();
        RunConfig {
            t_grid: base.tgrid,
            c3: base.c3,
            c2: 7.3,
            enumeration_budget: base.enumeration.budget,
            bump_width: DEFAULT_BUMP_WIDTH,
            grid_step: DEFAULT_GRID_STEP,
            spectral_range: DEFAULT_SPECTRAL_RANGE,
            mondal_c: base.mondal_c,
            kq: base.kq,
            pinch_kappa: base.pinch_kappa,
            workers: None,
        }
    }
}

fn bad(field: &str, detail: impl Into<String>) -> CliError {
    CliError::Config { field: field.into(), detail: detail.into() }
}

/// `a:b:step`, inclusive of `b` up to rounding.
pub fn parse_t_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| bad("T_grid", format!("{s:?}: {e}")))?;
    let [a, b, step] = parts[..] else { return Err(bad("T_grid", format!("{s:?} is not a:b:step"))) };
    if !(step > 0.0 && b >= a && a.is_finite() && b.is_finite()) {
        return Err(bad("T_grid", format!("{s:?} needs step > 0 and b >= a")));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| a + i as f64 * step).collect())
}

impl RunConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Parse(ParseError {
                origin: origin.to_string(),
                line: e.line(),
                column: e.column(),
                field: "config".into(),
                detail: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
            })
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(io(path))?;
        Self::from_json(&text, &path.display().to_string())
    }

    /// Applies `CERTIFY_ENUM_BUDGET` and `CERTIFY_WORKERS` when set.
    pub fn with_env(mut self, get: impl Fn(&str) -> Option<String>) -> Result<Self, CliError> {
        if let Some(v) = get(ENV_BUDGET) {
            self.enumeration_budget = v.trim().parse().map_err(|e| bad(ENV_BUDGET, format!("{v:?}: {e}")))?;
        }
        if let Some(v) = get(ENV_WORKERS) {
            self.workers = Some(v.trim().parse().map_err(|e| bad(ENV_WORKERS, format!("{v:?}: {e}")))?);
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.t_grid.is_empty() {
            return Err(bad("T_grid", "empty"));
        }
        if self.t_grid.iter().any(|&t| !(t >= 1.0 && t.is_finite())) || self.t_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(bad("T_grid", "must be strictly ascending with every T >= 1"));
        }
        if !(self.c3 > 0.0 && self.c3 < 0.25) {
            return Err(bad("c3", format!("must lie in (0, 1/4), got {}", self.c3)));
        }
        if !(self.c2 > 0.0 && self.c2.is_finite()) {
            return Err(bad("c2", format!("must be positive, got {}", self.c2)));
        }
        if self.enumeration_budget < MIN_BUDGET {
            return Err(bad("enumeration_budget", format!("must be at least {MIN_BUDGET}, got {}", self.enumeration_budget)));
        }
        if !(self.mondal_c > 0.0 && self.mondal_c.is_finite()) {
            return Err(bad("mondalC", format!("must be positive, got {}", self.mondal_c)));
        }
        if !(self.kq >= 1.0 && self.kq.is_finite()) {
            return Err(bad("Kq", format!("must be at least 1, got {}", self.kq)));
        }
        if !(self.pinch_kappa > 0.0 && self.pinch_kappa < 0.5) {
            return Err(bad("pinch_kappa", format!("must lie in (0, 1/2), got {}", self.pinch_kappa)));
        }
        if self.workers == Some(0) {
            return Err(bad("workers", "must be at least 1"));
        }
        Ok(())
    }

    pub fn certify_config(&self) -> CertifyConfig {
        let mut enumeration = EnumerationConfig { budget: self.enumeration_budget, ..EnumerationConfig::default() };
        if let Some(w) = self.workers {
            enumeration.workers = w;
        }
        CertifyConfig {
            tgrid: self.t_grid.clone(),
            c3: self.c3,
            enumeration,
            mondal_c: self.mondal_c,
            pinch_kappa: self.pinch_kappa,
            kq: self.kq,
            ..CertifyConfig::default()
        }
    }

    pub fn test_function(&self) -> Result<TestFunctionPair, CliError> {
        Ok(build_f1_with(self.bump_width, self.grid_step, self.spectral_range)?)
    }
}
