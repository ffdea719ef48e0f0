//! Front end for the `fqg` binary: suite orchestration, input resolution and
//! report rendering.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use fqg_core::action::{
    build_group_action, resolve_mode, verify_action_suite, CommutationMode, FiniteGroupAction,
};
use fqg_core::builders::preset;
use fqg_core::dual::{build_dual, verify_dual_hopf, verify_fourier, verify_fourier_closed_form, verify_g_map};
use fqg_core::haar::{gns_construct, solve_haar, verify_haar, verify_trace};
use fqg_core::hopf::verify_hopf_star_axioms;
use fqg_core::io::{
    algebra_to_json, load_action_spec, load_algebra, load_automorphisms, load_group, save_algebra,
    AutomorphismSpec, GroupSpec,
};
use fqg_core::linalg::CVector;
use fqg_core::unitary::build_w;
use fqg_core::{CayleyTable, Check, Error, FiniteHopfStarAlgebra, FiniteQuantumGroup, VerificationReport};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_STRUCTURAL: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "fqg", version, about = "Verify finite quantum group identities numerically")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full algebra, Haar, multiplicative-unitary and duality suite.
    Verify {
        /// Preset name or path to an algebra JSON file.
        input: String,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Verify an action of a finite group by Hopf *-automorphisms.
    Action {
        /// Preset name, algebra file, or action-spec file.
        input: String,
        /// Group preset (z1..z6, s3) or group JSON file.
        #[arg(long)]
        group: Option<String>,
        /// identity, inversion, conjugation, or an automorphism JSON file.
        #[arg(long)]
        automorphisms: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[command(flatten)]
        suite: SuiteArgs,
    },
    /// Write a preset algebra as JSON.
    Preset {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write the dual Hopf *-algebra as JSON.
    Dual {
        input: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Only report checks whose name matches one of these globs.
    #[arg(long)]
    pub only: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Full,
    Sliced,
}

impl From<ModeArg> for CommutationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Auto => CommutationMode::Auto,
            ModeArg::Full => CommutationMode::Full,
            ModeArg::Sliced => CommutationMode::Sliced,
        }
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err("tolerance must be a positive finite number".into())
    }
}

#[derive(Debug, Serialize)]
pub struct Provenance {
    pub command: String,
    pub input: String,
    pub input_sha256: String,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub provenance: Provenance,
    pub overall_pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

/// Preset name or algebra file. Existing files take precedence.
pub fn resolve_algebra(input: &str) -> fqg_core::Result<FiniteHopfStarAlgebra> {
    let path = Path::new(input);
    if path.is_file() {
        load_algebra(path)
    } else {
        preset(input)
    }
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn failed(name: &str, tol: f64, e: &Error) -> Check {
    Check::new(name, f64::INFINITY, tol).with_note(e.to_string())
}

/// Runs `f` and appends its checks under `prefix`, or records a failing
/// check named `<prefix>.error` and returns `None`.
fn stage<T>(
    r: &mut VerificationReport,
    prefix: &str,
    tol: f64,
    f: impl FnOnce() -> fqg_core::Result<(T, VerificationReport)>,
) -> Option<T> {
    match f() {
        Ok((v, rep)) => {
            r.extend_prefixed(prefix, rep);
            Some(v)
        }
        Err(e) => {
            r.push(failed(&format!("{prefix}.error"), tol, &e));
            None
        }
    }
}

/// The full algebra suite in its fixed order. Stages that cannot be built
/// (for example because the Haar state does not exist) are recorded as
/// failing checks and the dependent stages are skipped.
pub fn verify_algebra(a: &FiniteHopfStarAlgebra, tol: f64) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.extend_prefixed("axioms", verify_hopf_star_axioms(a, tol));

    let Some(haar) = stage(&mut r, "haar", tol, || {
        let sol = solve_haar(a, tol)?;
        let mut rep = verify_haar(a, &sol.functional, tol);
        rep.push(
            Check::new("unique", 0.0, 0.0)
                .with_note(format!("nullspace dimension {}", sol.nullity)),
        );
        Ok((sol.functional, rep))
    }) else {
        return r;
    };
    if stage(&mut r, "gns", tol, || {
        let g = gns_construct(a, &haar, tol)?;
        Ok(((), g.verify(a, tol)))
    })
    .is_none()
    {
        return r;
    }
    r.extend_prefixed("haar", verify_trace(a, &haar, tol));

    let Some(w) = stage(&mut r, "w", tol, || {
        let qg = FiniteQuantumGroup::new(a.clone(), tol)?;
        let w = build_w(&qg)?;
        let mut rep = VerificationReport::new();
        rep.push(Check::scaled("expansion", w.expansion_residual(), tol, w.dim() as f64));
        rep.extend_prefixed("", w.verify_unitarity(tol));
        Ok((w, rep))
    }) else {
        return r;
    };
    stage(&mut r, "w", tol, || Ok(((), w.verify_inverse_via_antipode(tol)?)));
    stage(&mut r, "w", tol, || Ok(((), w.verify_pentagon(tol)?)));
    r.extend_prefixed("w.left_slices", w.verify_left_slices_span_a(tol));
    let basis: Vec<CVector> = (0..a.dim()).map(|k| a.basis(k)).collect();
    stage(&mut r, "w", tol, || Ok(((), w.verify_implements_comultiplication(&basis, tol)?)));
    stage(&mut r, "w", tol, || Ok(((), w.verify_id_tensor_comult(tol)?)));
    stage(&mut r, "w", tol, || Ok(((), w.verify_antipode_relation(tol)?)));
    let dual = stage(&mut r, "dual_subspace", tol, || {
        let d = w.build_dual_subspace(tol)?;
        let rep = d.report().clone();
        Ok((d, rep))
    });
    stage(&mut r, "dual_comult", tol, || Ok(((), w.verify_dual_pentagon_identity(tol)?)));
    if let Some(d) = &dual {
        stage(&mut r, "dual_comult", tol, || Ok(((), w.verify_dual_comultiplication(d, tol)?)));
    }
    r.extend_prefixed("dual_hopf", verify_dual_hopf(a, tol));
    stage(&mut r, "g_map", tol, || Ok(((), verify_g_map(&w, tol)?)));
    stage(&mut r, "fourier", tol, || Ok(((), verify_fourier(a, &haar, tol)?)));
    stage(&mut r, "fourier", tol, || Ok(((), verify_fourier_closed_form(&w, tol)?)));
    r
}

/// Everything needed to run the action suite.
pub struct ActionInput {
    pub label: String,
    pub algebra: FiniteHopfStarAlgebra,
    pub group: CayleyTable,
    pub automorphisms: AutomorphismSpec,
}

fn resolve_group(s: &str) -> fqg_core::Result<CayleyTable> {
    let p = Path::new(s);
    if p.is_file() {
        load_group(p)
    } else {
        GroupSpec::Preset(s.to_string()).resolve()
    }
}

fn resolve_automorphisms(s: &str) -> fqg_core::Result<AutomorphismSpec> {
    let p = Path::new(s);
    if p.is_file() {
        load_automorphisms(p)
    } else {
        Ok(AutomorphismSpec::Named(s.to_string()))
    }
}

fn is_action_spec(path: &Path) -> bool {
    std::fs::read_to_string(path)
        .ok()
        .and_then(|t| serde_json::from_str::<serde_json::Value>(&t).ok())
        .is_some_and(|v| v.get("automorphisms").is_some())
}

/// Resolves the `action` command's inputs. A positional action-spec file
/// supplies defaults that `--group` and `--automorphisms` override.
pub fn resolve_action_input(
    input: &str,
    group: Option<&str>,
    automorphisms: Option<&str>,
) -> fqg_core::Result<ActionInput> {
    let path = Path::new(input);
    let (algebra, mut g, mut auto) = if path.is_file() && is_action_spec(path) {
        let spec = load_action_spec(path)?;
        (resolve_algebra(&spec.algebra)?, Some(spec.group.resolve()?), Some(spec.automorphisms))
    } else {
        (resolve_algebra(input)?, None, None)
    };
    if let Some(s) = group {
        g = Some(resolve_group(s)?);
    }
    if let Some(s) = automorphisms {
        auto = Some(resolve_automorphisms(s)?);
    }
    let missing = |what: &str| Error::Parse {
        context: what.to_string(),
        message: "required unless the input is an action-spec file".into(),
    };
    Ok(ActionInput {
        label: input.to_string(),
        algebra,
        group: g.ok_or_else(|| missing("--group"))?,
        automorphisms: auto.ok_or_else(|| missing("--automorphisms"))?,
    })
}

/// Builds the action and runs its suite. Returns the action so callers can
/// inspect it, the report, and the resolved commutation mode.
pub fn verify_action(
    input: &ActionInput,
    tol: f64,
    mode: CommutationMode,
) -> fqg_core::Result<(FiniteGroupAction, VerificationReport, CommutationMode)> {
    let theta = input.automorphisms.resolve(&input.algebra, &input.group)?;
    let action = build_group_action(&input.algebra, &input.group, theta, tol)?;
    let resolved = resolve_mode(mode, action.dim(), action.order())?;
    let qg = FiniteQuantumGroup::new(input.algebra.clone(), tol)?;
    let w = build_w(&qg)?;
    let report = verify_action_suite(&action, &w, tol, resolved)?;
    Ok((action, report, resolved))
}

fn filter_checks(report: VerificationReport, only: &[String]) -> Result<Vec<Check>, String> {
    if only.is_empty() {
        return Ok(report.checks);
    }
    let pats = only
        .iter()
        .map(|p| glob::Pattern::new(p).map_err(|e| format!("invalid --only pattern `{p}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(report
        .checks
        .into_iter()
        .filter(|c| pats.iter().any(|p| p.matches(&c.name)))
        .collect())
}

pub fn render_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_text(doc: &ReportDocument) -> String {
    let p = &doc.provenance;
    let mut s = format!("fqg {} {} (tol {:e}", p.command, p.input, p.tolerance);
    if let Some(m) = &p.mode {
        s.push_str(&format!(", mode {m}"));
    }
    s.push_str(")\n");
    for n in &doc.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    let width = doc.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &doc.checks {
        s.push_str(&format!(
            "{} {:width$}  residual {:.3e}  tol {:.1e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.residual,
            c.tolerance,
        ));
        if let Some(n) = &c.note {
            s.push_str(&format!("  ({n})"));
        }
        s.push('\n');
    }
    let failed = doc.checks.iter().filter(|c| !c.pass).count();
    s.push_str(&format!(
        "overall: {} ({} checks, {} failed)\n",
        if doc.overall_pass { "PASS" } else { "FAIL" },
        doc.checks.len(),
        failed
    ));
    s
}

fn emit(
    out: &mut dyn Write,
    err: &mut dyn Write,
    suite: &SuiteArgs,
    provenance: Provenance,
    notes: Vec<String>,
    report: VerificationReport,
) -> u8 {
    let checks = match filter_checks(report, &suite.only) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_STRUCTURAL;
        }
    };
    let overall_pass = checks.iter().all(|c| c.pass);
    let doc = ReportDocument {
        provenance,
        overall_pass,
        notes,
        checks,
    };
    let text = match suite.format {
        Format::Json => render_json(&doc),
        Format::Text => render_text(&doc),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_STRUCTURAL;
    }
    if overall_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn structural(err: &mut dyn Write, e: impl std::fmt::Display) -> u8 {
    let _ = writeln!(err, "error: {e}");
    EXIT_STRUCTURAL
}

/// Runs a parsed command, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match cli.command {
        Command::Verify { input, suite } => {
            let a = match resolve_algebra(&input) {
                Ok(a) => a,
                Err(e) => return structural(err, e),
            };
            let report = verify_algebra(&a, suite.tol);
            let provenance = Provenance {
                command: "verify".into(),
                input,
                input_sha256: sha256_hex(&algebra_to_json(&a)),
                tolerance: suite.tol,
                mode: None,
            };
            emit(out, err, &suite, provenance, Vec::new(), report)
        }
        Command::Action {
            input,
            group,
            automorphisms,
            mode,
            suite,
        } => {
            let ai = match resolve_action_input(&input, group.as_deref(), automorphisms.as_deref()) {
                Ok(ai) => ai,
                Err(e) => return structural(err, e),
            };
            let (action, report, resolved) = match verify_action(&ai, suite.tol, mode.into()) {
                Ok(x) => x,
                Err(e) => return structural(err, e),
            };
            let mut notes = Vec::new();
            if action.is_trivial(suite.tol) {
                notes.push("every theta_k is the identity: the action is trivial".to_string());
            }
            let hashed = format!(
                "{}{}{}",
                algebra_to_json(&ai.algebra),
                serde_json::to_string(&ai.group).expect("serializes"),
                serde_json::to_string(&ai.automorphisms).expect("serializes"),
            );
            let provenance = Provenance {
                command: "action".into(),
                input: ai.label,
                input_sha256: sha256_hex(&hashed),
                tolerance: suite.tol,
                mode: Some(resolved.to_string()),
            };
            emit(out, err, &suite, provenance, notes, report)
        }
        Command::Preset { name, output } => match preset(&name).and_then(|a| save_algebra(&a, &output)) {
            Ok(()) => EXIT_PASS,
            Err(e) => structural(err, e),
        },
        Command::Dual { input, output } => {
            match resolve_algebra(&input).and_then(|a| save_algebra(&build_dual(&a), &output)) {
                Ok(()) => EXIT_PASS,
                Err(e) => structural(err, e),
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command. Usage
/// errors exit with code 2.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_STRUCTURAL } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            code
        }
    }
}
