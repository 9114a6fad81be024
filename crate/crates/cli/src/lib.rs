//! Command driver for `otw`: configuration, check orchestration and export.
//!
//! Exit codes: 0 when every selected check passed, 1 when some check failed,
//! 2 for usage errors, 3 for runtime errors such as I/O.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use otw_core::decomp::{decompose, DecompOptions, Decomposition};
use otw_core::export::{ExportBundle, Format};
use otw_core::terwilliger::{
    verify_centralizer, verify_dimensions, verify_generation, verify_lemma51, verify_prop35, Report,
    TerwilligerAlgebra,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Largest `m` for `build` and `verify`.
pub const MAX_BUILD_M: usize = 6;
/// Largest `m` for `decompose` and `export`.
pub const MAX_DECOMPOSE_M: usize = 5;
/// The decomposition needs at least this `m`.
pub const MIN_DECOMPOSE_M: usize = 3;

pub const THREADS_ENV: &str = "OTW_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] otw_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(otw_core::Error::Config(_) | otw_core::Error::Unsupported(_)) => EXIT_USAGE,
            _ => EXIT_RUNTIME,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Build,
    Verify,
    Decompose,
    Export,
}

impl Command {
    pub fn max_m(self) -> usize {
        match self {
            Command::Build | Command::Verify => MAX_BUILD_M,
            Command::Decompose | Command::Export => MAX_DECOMPOSE_M,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckName {
    Dims,
    Prop35,
    Centralizer,
    Generation,
    Lemma51,
    Blockdiag,
}

impl CheckName {
    pub const ALL: [CheckName; 6] = [
        CheckName::Dims,
        CheckName::Prop35,
        CheckName::Centralizer,
        CheckName::Generation,
        CheckName::Lemma51,
        CheckName::Blockdiag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckName::Dims => "dims",
            CheckName::Prop35 => "prop35",
            CheckName::Centralizer => "centralizer",
            CheckName::Generation => "generation",
            CheckName::Lemma51 => "lemma51",
            CheckName::Blockdiag => "blockdiag",
        }
    }

    /// Whether the check can run at this `m`.
    pub fn supports(self, m: usize) -> bool {
        match self {
            CheckName::Blockdiag => (MIN_DECOMPOSE_M..=MAX_DECOMPOSE_M).contains(&m),
            _ => true,
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| usage(format!("unknown check {s:?}")))
    }
}

/// Parses a comma-separated check list. `all` selects every check that
/// supports `m`; naming an unsupported check explicitly is an error.
pub fn parse_checks(names: &[String], m: usize) -> Result<Vec<CheckName>, CliError> {
    let mut checks = Vec::new();
    for name in names.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            checks.extend(CheckName::ALL.into_iter().filter(|c| c.supports(m)));
            continue;
        }
        let check: CheckName = name.parse()?;
        if !check.supports(m) {
            return Err(usage(format!(
                "check {check} needs {MIN_DECOMPOSE_M} <= m <= {MAX_DECOMPOSE_M}, got m = {m}"
            )));
        }
        checks.push(check);
    }
    if checks.is_empty() {
        checks.extend(CheckName::ALL.into_iter().filter(|c| c.supports(m)));
    }
    checks.sort_unstable();
    checks.dedup();
    Ok(checks)
}

/// The flag wins; the environment variable is read only without it.
pub fn resolve_threads(flag: Option<usize>, env: Option<&str>) -> Result<Option<usize>, CliError> {
    let threads = match (flag, env) {
        (Some(n), _) => Some(n),
        (None, Some(text)) if !text.trim().is_empty() => Some(
            text.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("{THREADS_ENV} must be a positive integer, got {text:?}")))?,
        ),
        _ => None,
    };
    if threads == Some(0) {
        return Err(usage("thread count must be at least 1"));
    }
    Ok(threads)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub m: usize,
    pub command: Command,
    pub checks: Vec<CheckName>,
    pub output_dir: PathBuf,
    pub thread_count: Option<usize>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(command: Command, m: usize) -> Self {
        RunConfig {
            m,
            command,
            checks: CheckName::ALL.into_iter().filter(|c| c.supports(m)).collect(),
            output_dir: PathBuf::from(format!("otw-m{m}")),
            thread_count: None,
            format: Format::Json,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let lo = match self.command {
            Command::Build | Command::Verify => 1,
            Command::Decompose | Command::Export => MIN_DECOMPOSE_M,
        };
        let hi = self.command.max_m();
        if !(lo..=hi).contains(&self.m) {
            return Err(usage(format!("m must satisfy {lo} <= m <= {hi} for this command, got {}", self.m)));
        }
        if let Some(c) = self.checks.iter().find(|c| !c.supports(self.m)) {
            return Err(usage(format!("check {c} is not available for m = {}", self.m)));
        }
        if self.thread_count == Some(0) {
            return Err(usage("thread count must be at least 1"));
        }
        Ok(())
    }
}

/// One executed check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub check: CheckName,
    pub report: Report,
    pub elapsed: Duration,
}

/// All executed checks, in a fixed order.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub m: usize,
    pub outcomes: Vec<CheckOutcome>,
    /// Filled when `blockdiag` ran.
    pub decomposition: Option<Decomposition>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.report.passed())
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn write_report(out: &mut dyn Write, report: &Report, elapsed: Duration) -> std::io::Result<()> {
    writeln!(out, "[{}] {} ({:.3}s)", status(report.passed()), report, elapsed.as_secs_f64())?;
    for item in report.failures() {
        writeln!(out, "    failed: {}: {}", item.label, item.detail)?;
    }
    Ok(())
}

fn write_decomposition(out: &mut dyn Write, dec: &Decomposition) -> std::io::Result<()> {
    let r = &dec.report;
    writeln!(out, "    {:>3} {:>3} {:>6} {:>12}", "mu", "d", "block", "multiplicity")?;
    for row in &r.rows {
        writeln!(out, "    {:>3} {:>3} {:>6} {:>12}", row.mu, row.d, row.block_dim, row.multiplicity)?;
    }
    let sizes: Vec<String> = r.rows.iter().map(|row| row.block_dim.to_string()).collect();
    writeln!(out, "    block sizes ({})", sizes.join(","))?;
    writeln!(out, "    dim L_nu {:?}", r.l_dims)?;
    writeln!(
        out,
        "    vectors {}, sum of squared block sizes {}, center dimension {}",
        r.vector_count, r.block_square_sum, r.center_dimension
    )?;
    for ((mu, d), dim) in &r.negative_controls {
        writeln!(out, "    outside the classification: (mu,d)=({mu},{d}) gives dimension {dim}")?;
    }
    Ok(())
}

fn run_check(alg: &TerwilligerAlgebra, check: CheckName) -> Result<(Report, Option<Decomposition>), CliError> {
    let report = match check {
        CheckName::Dims => verify_dimensions(&alg.ctx, &alg.orbit_basis),
        CheckName::Prop35 => verify_prop35(&alg.orbit_basis, &alg.dual, &alg.distance)?,
        CheckName::Centralizer => verify_centralizer(&alg.orbit_basis, &alg.ctx)?,
        CheckName::Generation => verify_generation(&alg.orbit_basis, &alg.structure, &alg.dual, &alg.distance)?,
        CheckName::Lemma51 => verify_lemma51(&alg.orbit_basis, &alg.dual, &alg.distance)?,
        CheckName::Blockdiag => {
            let dec = decompose(alg, DecompOptions { diagnostics: true })?;
            let mut merged = Report::new("blockdiag");
            for item in dec.report.checks.iter().flat_map(|r| r.items.iter()) {
                merged.push(item.clone());
            }
            return Ok((merged, Some(dec)));
        }
    };
    Ok((report, None))
}

fn build(m: usize, out: &mut dyn Write) -> Result<TerwilligerAlgebra, CliError> {
    let start = Instant::now();
    let alg = TerwilligerAlgebra::build(m)?;
    writeln!(
        out,
        "built m = {m}: |X| = {}, dim T = {} ({:.3}s)",
        alg.ctx.vertex_count(),
        alg.orbit_basis.len(),
        start.elapsed().as_secs_f64()
    )?;
    Ok(alg)
}

pub fn run_build(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    cfg.validate()?;
    let alg = build(cfg.m, out)?;
    let sd = &alg.spectral;
    writeln!(out, "sphere sizes {:?}", alg.ctx.sphere_sizes())?;
    writeln!(out, "eigenvalues (Q-polynomial order) {:?}", sd.ordered_eigenvalues())?;
    let mults: Vec<usize> = (0..=cfg.m).map(|k| sd.ordered_multiplicity(k)).collect();
    writeln!(out, "multiplicities {mults:?}")?;
    writeln!(out, "Q-polynomial orderings found: {}", sd.candidate_orderings.len())?;
    Ok(EXIT_OK)
}

/// Runs the selected checks; a failed check is reported, not raised.
pub fn verify_report(cfg: &RunConfig, out: &mut dyn Write) -> Result<VerifyReport, CliError> {
    cfg.validate()?;
    let alg = build(cfg.m, out)?;
    let mut outcomes = Vec::new();
    let mut decomposition = None;
    for &check in &cfg.checks {
        let start = Instant::now();
        let (report, dec) = run_check(&alg, check)?;
        let elapsed = start.elapsed();
        write_report(out, &report, elapsed)?;
        if check == CheckName::Dims {
            writeln!(out, "    dim T = {}", alg.orbit_basis.len())?;
        }
        if let Some(dec) = &dec {
            write_decomposition(out, dec)?;
        }
        decomposition = decomposition.or(dec);
        outcomes.push(CheckOutcome { check, report, elapsed });
    }
    let report = VerifyReport { m: cfg.m, outcomes, decomposition };
    let failed = report.outcomes.iter().filter(|o| !o.report.passed()).count();
    writeln!(out, "{} checks, {failed} failed", report.outcomes.len())?;
    Ok(report)
}

pub fn run_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    Ok(verify_report(cfg, out)?.exit_code())
}

fn decompose_checked(cfg: &RunConfig, out: &mut dyn Write) -> Result<(TerwilligerAlgebra, Decomposition), CliError> {
    cfg.validate()?;
    let alg = build(cfg.m, out)?;
    let start = Instant::now();
    let dec = decompose(&alg, DecompOptions { diagnostics: true })?;
    let elapsed = start.elapsed();
    for r in &dec.report.checks {
        write_report(out, r, Duration::ZERO)?;
    }
    writeln!(out, "decomposed in {:.3}s", elapsed.as_secs_f64())?;
    write_decomposition(out, &dec)?;
    Ok((alg, dec))
}

pub fn run_decompose(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let (_, dec) = decompose_checked(cfg, out)?;
    Ok(if dec.report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Writes the bundle only when every decomposition check passed.
pub fn run_export(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let (alg, dec) = decompose_checked(cfg, out)?;
    if !dec.report.passed() {
        writeln!(out, "decomposition checks failed; nothing exported")?;
        return Ok(EXIT_CHECK_FAILED);
    }
    let bundle = ExportBundle::new(&alg, &dec, cfg.format);
    let files = bundle.write(&cfg.output_dir)?;
    ExportBundle::read(&cfg.output_dir)?;
    for f in files {
        writeln!(out, "wrote {}", f.display())?;
    }
    Ok(EXIT_OK)
}

/// Dispatches on the command inside a pool of the configured size.
pub fn run(cfg: &RunConfig, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    cfg.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.thread_count {
        pool = pool.num_threads(n);
    }
    let pool = pool.build()?;
    pool.install(|| match cfg.command {
        Command::Build => run_build(cfg, out),
        Command::Verify => run_verify(cfg, out),
        Command::Decompose => run_decompose(cfg, out),
        Command::Export => run_export(cfg, out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn check_parsing() {
        assert_eq!(parse_checks(&names(&["dims"]), 3).unwrap(), vec![CheckName::Dims]);
        assert_eq!(
            parse_checks(&names(&["lemma51,dims", "dims"]), 3).unwrap(),
            vec![CheckName::Dims, CheckName::Lemma51]
        );
        assert_eq!(parse_checks(&names(&["all"]), 3).unwrap().len(), 6);
        assert_eq!(parse_checks(&names(&["all"]), 6).unwrap().len(), 5);
        assert!(matches!(parse_checks(&names(&["bogus"]), 3), Err(CliError::Usage(_))));
        assert!(matches!(parse_checks(&names(&["blockdiag"]), 2), Err(CliError::Usage(_))));
    }

    #[test]
    fn thread_resolution() {
        assert_eq!(resolve_threads(Some(2), Some("7")).unwrap(), Some(2));
        assert_eq!(resolve_threads(None, Some("7")).unwrap(), Some(7));
        assert_eq!(resolve_threads(None, None).unwrap(), None);
        assert_eq!(resolve_threads(None, Some("")).unwrap(), None);
        assert!(resolve_threads(None, Some("many")).is_err());
        assert!(resolve_threads(Some(0), None).is_err());
        // a bad variable is ignored when the flag is given
        assert_eq!(resolve_threads(Some(1), Some("many")).unwrap(), Some(1));
    }

    #[test]
    fn caps() {
        assert!(RunConfig::new(Command::Verify, 6).validate().is_ok());
        assert!(RunConfig::new(Command::Verify, 7).validate().is_err());
        assert!(RunConfig::new(Command::Export, 6).validate().is_err());
        assert!(RunConfig::new(Command::Decompose, 2).validate().is_err());
        assert!(RunConfig::new(Command::Build, 0).validate().is_err());
        let err = RunConfig::new(Command::Export, 9).validate().unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn verify_dims_m3() {
        let mut cfg = RunConfig::new(Command::Verify, 3);
        cfg.checks = vec![CheckName::Dims];
        let mut out = Vec::new();
        assert_eq!(run_verify(&cfg, &mut out).unwrap(), EXIT_OK);
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("dim T = 35"), "{text}");
        assert!(text.contains("[PASS] dims"), "{text}");
    }
}
