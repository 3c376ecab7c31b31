use crate::error::{CliError, EXIT_OK};
use crate::report::{
    BaseChangeDoc, CertificateDoc, InvariantsDoc, MinimalEDoc, PencilDoc, PullbackDoc, ReportDocument, TableDoc,
    VerdictDoc,
};
use crate::schema::{parse_input, to_canonical_json, InputFile, PencilFile};
use clap::{Parser, Subcommand, ValueEnum};
use pencilforge_core::audit::{ade_curves_from_mu, full_audit, miyaoka_audit, AuditVerdict};
use pencilforge_core::basechange::{minimal_negative_e, pullback_transform};
use pencilforge_core::exactcore::{parse_rational, DEFAULT_DEGREE_CAP};
use pencilforge_core::pencil::{
    build_genus2_example, pencil_invariants, semistability_verify, singular_fiber_table, ExampleMode,
};
use pencilforge_core::{BaseChangeParams, FibrationData, PencilSpec, SurfaceChernData};
use std::path::PathBuf;

pub const DEGREE_CAP_VAR: &str = "PENCILFORGE_DEGREE_CAP";

#[derive(Debug, Parser)]
#[command(name = "pencilforge", version, about = "Exact verifier for double-cover semistable pencils")]
pub struct Cli {
    /// Print the canonical JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print nothing on stdout; the exit code carries the result.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certificate, fiber table, invariants, audits and base change for a pencil file.
    Verify { file: PathBuf },
    /// Relative invariants of a pencil file, as fibration data.
    Invariants { file: PathBuf },
    /// Audit verdicts for a fibration-data file (or a pencil file).
    Audit { file: PathBuf },
    /// Base-change transform and the minimal-e certificate.
    Basechange {
        file: PathBuf,
        /// Degree of the unramified part of the cover (default 1).
        #[arg(long)]
        d: Option<u32>,
        /// Ramification index over each critical point; defaults to the minimal e.
        #[arg(long)]
        e: Option<u32>,
        /// Also report the minimal-e certificate when --e is given.
        #[arg(long)]
        minimal_e: bool,
    },
    /// Write the built-in pencil file.
    Example {
        #[arg(long, value_enum, default_value_t = Mode::Special)]
        mode: Mode,
        /// Rational parameter a (generic mode).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        /// Rational parameter b (generic mode).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Write to this path instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Special,
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn degree_cap(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_DEGREE_CAP),
        Some(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&c| c >= 1)
            .ok_or_else(|| CliError::Input(format!("{DEGREE_CAP_VAR} must be a positive integer, got {v:?}"))),
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn text(bytes: &[u8]) -> Result<&str, CliError> {
    std::str::from_utf8(bytes).map_err(|e| CliError::Input(format!("input is not UTF-8: {e}")))
}

fn verdicts(vs: &[AuditVerdict]) -> Vec<VerdictDoc> {
    vs.iter().map(VerdictDoc::new).collect()
}

fn contradiction_if_failed(vs: &[AuditVerdict]) -> Result<(), CliError> {
    let failed: Vec<&str> = vs.iter().filter(|v| !v.passed).map(|v| v.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Contradiction(format!(
            "audit failed on accepted data: {}",
            failed.join(", ")
        )))
    }
}

struct Context {
    cap: usize,
}

impl Context {
    fn spec(&self, report: &mut ReportDocument, file: &PencilFile) -> Result<PencilSpec, CliError> {
        let spec = file.to_spec(self.cap)?;
        report.pencil = Some(PencilDoc::new(&spec));
        report.warnings = spec.warnings();
        Ok(spec)
    }

    /// Certificate and table into the report; `Err` with exit 3 when the
    /// certificate fails.
    fn certified_invariants(&self, report: &mut ReportDocument, spec: &PencilSpec) -> Result<FibrationData, CliError> {
        let cert = semistability_verify(spec).map_err(CliError::from_pencil)?;
        report.certificate = Some(CertificateDoc::new(&cert));
        if !cert.passed {
            let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            return Err(CliError::NotSemistable(format!(
                "semistability conditions fail: {}",
                failed.join(", ")
            )));
        }
        let table = singular_fiber_table(spec).map_err(CliError::from_pencil)?;
        report.fiber_table = Some(TableDoc::new(&table));
        let fd = pencil_invariants(spec).map_err(CliError::from_pencil)?;
        report.invariants = Some(InvariantsDoc::new(&fd, spec.label.clone()));
        Ok(fd)
    }

    fn fibration(&self, report: &mut ReportDocument, bytes: &[u8]) -> Result<FibrationData, CliError> {
        match parse_input(text(bytes)?)? {
            InputFile::Pencil(file) => {
                let spec = self.spec(report, &file)?;
                self.certified_invariants(report, &spec)
            }
            InputFile::Fibration(file) => {
                let fd = file.to_data()?;
                report.invariants = Some(InvariantsDoc::new(&fd, file.label.clone()));
                Ok(fd)
            }
        }
    }
}

/// Pullback with its audits, plus Miyaoka on the new surface using the
/// `A_μ̃` configurations.
fn pullback_section(fd: &FibrationData, params: BaseChangeParams) -> Result<(PullbackDoc, Vec<AuditVerdict>), CliError> {
    let pb = pullback_transform(fd, params).map_err(CliError::from_basechange)?;
    let mut audits = full_audit(&pb);
    let chern = SurfaceChernData::from_fibration(&pb);
    audits.push(miyaoka_audit(&chern, &ade_curves_from_mu(&pb.mu)).map_err(CliError::from_audit)?);
    let doc = PullbackDoc {
        d: params.d,
        e: params.e,
        data: InvariantsDoc::new(&pb, None),
        audits: verdicts(&audits),
    };
    Ok((doc, audits))
}

fn minimal_e_section(fd: &FibrationData) -> Result<MinimalEDoc, CliError> {
    let cert = minimal_negative_e(fd).map_err(CliError::from_basechange)?;
    if !cert.implies_strict {
        return Err(CliError::Contradiction(format!(
            "excess {} exceeds the gap bound {} at e = {}",
            cert.excess, cert.gap_bound, cert.e
        )));
    }
    Ok(MinimalEDoc::new(&cert))
}

fn verify(ctx: &Context, report: &mut ReportDocument, bytes: &[u8]) -> Result<(), CliError> {
    let file = PencilFile::parse(text(bytes)?)?;
    let spec = ctx.spec(report, &file)?;
    let fd = ctx.certified_invariants(report, &spec)?;
    let audits = full_audit(&fd);
    report.audits = verdicts(&audits);
    contradiction_if_failed(&audits)?;
    if fd.g >= 2 && fd.s > 0 {
        let minimal = minimal_e_section(&fd)?;
        let (pullback, pb_audits) = pullback_section(&fd, BaseChangeParams { d: 1, e: minimal.e })?;
        report.base_change = Some(BaseChangeDoc {
            minimal_e: Some(minimal),
            pullback: Some(pullback),
        });
        contradiction_if_failed(&pb_audits)?;
    }
    Ok(())
}

fn audit(ctx: &Context, report: &mut ReportDocument, bytes: &[u8]) -> Result<(), CliError> {
    let fd = ctx.fibration(report, bytes)?;
    let audits = full_audit(&fd);
    report.audits = verdicts(&audits);
    contradiction_if_failed(&audits)
}

fn basechange(
    ctx: &Context,
    report: &mut ReportDocument,
    bytes: &[u8],
    d: Option<u32>,
    e: Option<u32>,
    minimal: bool,
) -> Result<(), CliError> {
    let fd = ctx.fibration(report, bytes)?;
    let mut doc = BaseChangeDoc::default();
    let want_minimal = minimal || e.is_none();
    if want_minimal {
        doc.minimal_e = Some(minimal_e_section(&fd)?);
    }
    let e = e.or(doc.minimal_e.as_ref().map(|m| m.e));
    let mut failed = Ok(());
    if let Some(e) = e {
        let (pb, audits) = pullback_section(&fd, BaseChangeParams { d: d.unwrap_or(1), e })?;
        doc.pullback = Some(pb);
        failed = contradiction_if_failed(&audits);
    }
    report.base_change = Some(doc);
    failed
}

fn example_spec(mode: Mode, a: Option<&str>, b: Option<&str>) -> Result<PencilSpec, CliError> {
    let mode = match mode {
        Mode::Special => {
            if a.is_some() || b.is_some() {
                return Err(CliError::Input("--a and --b apply to --mode generic only".into()));
            }
            ExampleMode::Special
        }
        Mode::Generic => {
            let get = |v: Option<&str>, name: &str| {
                let v = v.ok_or_else(|| CliError::Input(format!("--mode generic needs --{name}")))?;
                parse_rational(v).ok_or_else(|| CliError::Input(format!("--{name}: {v:?} is not a rational \"p/q\"")))
            };
            ExampleMode::Generic {
                a: get(a, "a")?,
                b: get(b, "b")?,
            }
        }
    };
    build_genus2_example(mode).map_err(CliError::from_pencil)
}

/// Runs one command. `cap_var` is the raw value of the degree-cap variable.
pub fn run(cli: &Cli, cap_var: Option<&str>) -> Outcome {
    let (name, file) = match &cli.command {
        Command::Example { mode, a, b, output } => return run_example(cli, *mode, a, b, output),
        Command::Verify { file } => ("verify", file),
        Command::Invariants { file } => ("invariants", file),
        Command::Audit { file } => ("audit", file),
        Command::Basechange { file, .. } => ("basechange", file),
    };
    let bytes = match read(file) {
        Ok(b) => b,
        Err(e) => return failure(e),
    };
    let mut report = ReportDocument::new(name, &bytes);
    let outcome = degree_cap(cap_var).and_then(|cap| {
        let ctx = Context { cap };
        match &cli.command {
            Command::Verify { .. } => verify(&ctx, &mut report, &bytes),
            Command::Invariants { .. } => {
                let file = PencilFile::parse(text(&bytes)?)?;
                let spec = ctx.spec(&mut report, &file)?;
                ctx.certified_invariants(&mut report, &spec).map(|_| ())
            }
            Command::Audit { .. } => audit(&ctx, &mut report, &bytes),
            Command::Basechange { d, e, minimal_e, .. } => basechange(&ctx, &mut report, &bytes, *d, *e, *minimal_e),
            Command::Example { .. } => unreachable!("handled above"),
        }
    });
    let mut stderr = String::new();
    report.exit_code = match &outcome {
        Ok(()) => EXIT_OK,
        Err(e) => {
            report.error = Some(e.to_string());
            stderr = format!("pencilforge: {e}\n");
            e.exit_code()
        }
    };
    let stdout = if cli.quiet {
        String::new()
    } else if cli.json {
        match (&cli.command, &report.invariants, report.exit_code) {
            // Fibration data only, in the input format `audit` accepts.
            (Command::Invariants { .. }, Some(inv), EXIT_OK) => to_canonical_json(&inv.data),
            _ => to_canonical_json(&report),
        }
    } else {
        report.render_text()
    };
    Outcome {
        stdout,
        stderr,
        code: report.exit_code,
    }
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("pencilforge: {e}\n"),
        code: e.exit_code(),
    }
}

fn run_example(cli: &Cli, mode: Mode, a: &Option<String>, b: &Option<String>, output: &Option<PathBuf>) -> Outcome {
    let spec = match example_spec(mode, a.as_deref(), b.as_deref()) {
        Ok(s) => s,
        Err(e) => return failure(e),
    };
    let doc = PencilFile::from_spec(&spec).to_json();
    match output {
        None => Outcome {
            stdout: if cli.quiet { String::new() } else { doc },
            stderr: String::new(),
            code: EXIT_OK,
        },
        Some(path) => match std::fs::write(path, &doc) {
            Ok(()) => Outcome {
                stdout: if cli.quiet {
                    String::new()
                } else {
                    format!("wrote {}\n", path.display())
                },
                stderr: String::new(),
                code: EXIT_OK,
            },
            Err(e) => failure(CliError::Input(format!("{}: {e}", path.display()))),
        },
    }
}
