//! Command-line front end: loads manifests, runs checks, writes reports.

pub mod manifest;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use pnkit::courant::{random_sections, verify_axioms, CourantStructure};
use pnkit::structures::{
    compatibility, hierarchy, hierarchy_compatibility, hierarchy_identity_check, is_nijenhuis, is_poisson, ppn_check,
    psn_check, twisted_poisson_check, builtin_example, CheckReport, ExampleKind, StructureData,
};
use pnkit::MultiVector;
use thiserror::Error;

use manifest::{build_request, parse_manifest, to_manifest, CheckKind, Request};
use report::ReportDocument;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("manifest error at `{pointer}`: {message}")]
    Manifest { pointer: String, message: String },
    #[error(transparent)]
    Core(#[from] pnkit::Error),
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const DEFAULT_SECTIONS: usize = 4;
const DEFAULT_DEPTH: usize = 2;

#[derive(Parser, Debug)]
#[command(name = "pnkit", version, about = "Exact checks for Poisson-Nijenhuis type structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Output {
    /// Write the JSON report here; `-` prints it instead of the text report.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include wall-clock timing in the JSON report.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the check a manifest requests.
    Check {
        manifest: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Emit or check a built-in example.
    Example {
        #[arg(long)]
        name: String,
        /// Example parameter as key=value; repeatable.
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, String)>,
        /// Write the example as a manifest.
        #[arg(long, conflicts_with = "check")]
        emit: Option<PathBuf>,
        /// Run the example's own check.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Courant algebroid commands.
    Courant {
        #[command(subcommand)]
        action: CourantCommand,
    },
    /// Build the hierarchy pi_k and check its identities.
    Hierarchy {
        manifest: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
enum CourantCommand {
    /// Verify the axioms on seeded random sections.
    Verify {
        manifest: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SECTIONS)]
        sections: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })
}

pub fn load_manifest(path: &Path) -> Result<Request, CliError> {
    let text = read(path)?;
    build_request(&parse_manifest(&text)?)
}

fn courant_structure(data: &StructureData) -> Result<CourantStructure, CliError> {
    if data.bivector.is_none() && data.two_form.is_none() && data.endo.is_none() {
        return Ok(CourantStructure::standard(&data.chart));
    }
    Ok(CourantStructure::double(&data.pi()?, data.endo()?, &data.big_phi()?)?)
}

fn courant_report(data: &StructureData, sections: usize, seed: u64) -> Result<CheckReport, CliError> {
    let s = courant_structure(data)?;
    let es = random_sections(&data.chart, sections, seed);
    let fs = pnkit::courant::default_functions(&data.chart);
    let mut r = verify_axioms(&s, &es, &fs)?;
    r.seed = Some(seed);
    Ok(r)
}

/// Hierarchy up to `depth`: compatibility of every `(π_j, N^p)` with
/// `p ∈ {1, 2}` and the bracket identities on coordinate fields.
fn hierarchy_report(data: &StructureData, depth: usize) -> Result<(CheckReport, Vec<MultiVector>), CliError> {
    let pi = data.pi()?;
    let n = data.endo()?;
    let pis = hierarchy(&pi, n, depth)?;
    let mut r = hierarchy_compatibility(&pi, n, depth, 2)?;
    r.title = "hierarchy".into();
    for k in 0..depth {
        for l in 0..2 {
            for i in 0..data.chart.dim() {
                let q = MultiVector::basis(&data.chart, i);
                r.extend(hierarchy_identity_check(&pi, n, k, l, &q)?);
            }
        }
    }
    Ok((r, pis))
}

pub fn run_request(req: &Request) -> Result<(CheckReport, Vec<MultiVector>), CliError> {
    let d = &req.data;
    let r = match req.check {
        CheckKind::Poisson => is_poisson(&d.pi()?)?,
        CheckKind::Nijenhuis => is_nijenhuis(d.endo()?)?,
        CheckKind::Compatible => compatibility(&d.pi()?, d.endo()?)?,
        CheckKind::Ppn => ppn_check(&d.pi()?, d.endo()?, &d.big_phi()?)?,
        CheckKind::Psn => psn_check(d.omega()?, d.endo()?, &d.small_phi())?,
        CheckKind::Twisted => twisted_poisson_check(&d.pi()?, d.endo()?, &d.small_phi())?,
        CheckKind::Courant => {
            courant_report(d, req.params.sections.unwrap_or(DEFAULT_SECTIONS), req.params.seed.unwrap_or(0))?
        }
        CheckKind::Hierarchy => return hierarchy_report(d, req.params.depth.unwrap_or(DEFAULT_DEPTH)),
    };
    Ok((r, Vec::new()))
}

fn example_check(kind: ExampleKind) -> CheckKind {
    match kind {
        ExampleKind::PseudoPoisson => CheckKind::Ppn,
        ExampleKind::PseudoSymplectic => CheckKind::Psn,
    }
}

fn finish(
    report: &CheckReport,
    bivectors: &[MultiVector],
    out: &Output,
    started: Instant,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let timing = out.timing.then(|| started.elapsed().as_millis() as u64);
    let doc = ReportDocument::new(report, bivectors, timing);
    let json = doc.to_json();
    match &out.json {
        Some(p) if p.as_os_str() == "-" => {
            let _ = writeln!(stdout, "{json}");
        }
        Some(p) => {
            write(p, &format!("{json}\n"))?;
            let _ = write!(stdout, "{report}");
        }
        None => {
            let _ = write!(stdout, "{report}");
            for (k, b) in bivectors.iter().enumerate() {
                let _ = writeln!(stdout, "  pi_{k} = {b}");
            }
        }
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let started = Instant::now();
    match cli.command {
        Command::Check { manifest, out } => {
            let req = load_manifest(&manifest)?;
            let (r, pis) = run_request(&req)?;
            finish(&r, &pis, &out, started, stdout)
        }
        Command::Example { name, params, emit, check, out } => {
            let ex = builtin_example(&name, &params)?;
            let kind = example_check(ex.kind);
            if check {
                let req = Request { data: ex.data, check: kind, params: Default::default() };
                let (r, pis) = run_request(&req)?;
                return finish(&r, &pis, &out, started, stdout);
            }
            let m = to_manifest(&ex.data, kind);
            let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
            match emit {
                Some(p) => write(&p, &format!("{text}\n"))?,
                None => {
                    let _ = writeln!(stdout, "{text}");
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Courant { action: CourantCommand::Verify { manifest, sections, seed, out } } => {
            let req = load_manifest(&manifest)?;
            let r = courant_report(&req.data, sections, seed)?;
            finish(&r, &[], &out, started, stdout)
        }
        Command::Hierarchy { manifest, depth, out } => {
            let req = load_manifest(&manifest)?;
            let (r, pis) = hierarchy_report(&req.data, depth)?;
            finish(&r, &pis, &out, started, stdout)
        }
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return if code == 0 { EXIT_PASS } else { EXIT_INPUT };
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}
