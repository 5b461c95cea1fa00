use std::path::{Path, PathBuf};

use clap::Parser;
use smalleig::certify::{dichotomy, Certifier, SurfaceSpec, Verdict};

use crate::config::{parse_t_grid, RunConfig};
use crate::error::{io, CliError};
use crate::report::{ledger_csv, render};
use crate::spec_file::parse_spec;

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_CERTIFIED: i32 = 3;

pub const REPORT_FILE: &str = "report.txt";
pub const LEDGER_FILE: &str = "ledger.csv";
pub const F1_FILE: &str = "f1.csv";
pub const H1_FILE: &str = "h1.csv";

/// Certify small Laplace eigenvalues of a cusped hyperbolic surface described by a spec file.
#[derive(Debug, Parser)]
#[command(name = "certify", version)]
pub struct Args {
    /// Surface spec (JSON).
    #[arg(long)]
    pub input: PathBuf,
    /// Run configuration (JSON); defaults apply to missing keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory for report.txt, ledger.csv and test-function dumps.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write f1.csv and h1.csv.
    #[arg(long)]
    pub emit_testfn: bool,
    /// T grid as a:b:step, replacing the config's.
    #[arg(long = "T-grid", value_name = "A:B:STEP")]
    pub t_grid: Option<String>,
    #[arg(long)]
    pub c3: Option<f64>,
}

#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: String,
    pub reason: Option<String>,
    pub written: Vec<PathBuf>,
}

pub fn resolve_config(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    cfg = cfg.with_env(|k| std::env::var(k).ok())?;
    if let Some(g) = &args.t_grid {
        cfg.t_grid = parse_t_grid(g)?;
    }
    if let Some(c3) = args.c3 {
        cfg.c3 = c3;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write(path: PathBuf, text: &str, written: &mut Vec<PathBuf>) -> Result<(), CliError> {
    std::fs::write(&path, text).map_err(io(&path))?;
    written.push(path);
    Ok(())
}

pub fn run(spec: &SurfaceSpec, cfg: &RunConfig, out: &Path, emit_testfn: bool) -> Result<RunOutcome, CliError> {
    cfg.validate()?;
    std::fs::create_dir_all(out).map_err(io(out))?;
    let tf = cfg.test_function()?;
    let mut written = Vec::new();
    if emit_testfn {
        let (f, h) = (out.join(F1_FILE), out.join(H1_FILE));
        tf.write_csv(&f, &h).map_err(io(out))?;
        written.extend([f, h]);
    }
    let certifier = Certifier::new(tf, cfg.certify_config());
    let report = dichotomy(spec, &certifier)?;
    let text = render(spec, cfg, &certifier.tf, &report);
    write(out.join(REPORT_FILE), &text, &mut written)?;
    if let Some(c) = &report.certificate {
        write(out.join(LEDGER_FILE), &ledger_csv(c), &mut written)?;
    }
    let (exit_code, reason) = match report.verdict {
        Verdict::Certified { .. } => (EXIT_CERTIFIED, None),
        Verdict::NotCertified { reason } => (EXIT_NOT_CERTIFIED, Some(reason)),
    };
    Ok(RunOutcome { exit_code, report: text, reason, written })
}

/// Parses, runs and reports; returns the process exit code.
pub fn execute(args: &Args) -> i32 {
    let result = resolve_config(args).and_then(|cfg| {
        let spec = parse_spec(&args.input, cfg.c2)?;
        run(&spec, &cfg, &args.out, args.emit_testfn)
    });
    match result {
        Ok(o) => {
            if let Some(r) = &o.reason {
                eprintln!("not certified: {r}");
            }
            o.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
