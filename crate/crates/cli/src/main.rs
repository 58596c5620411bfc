//! JSON-in, verdict-out command line for the exact Reynolds engine.
//!
//! Every input file is a single self-describing envelope
//! `{"kind": …, "payload": …}`; each subcommand loads one file, dispatches to
//! `reynolds-core`, and renders the library's own report. No verdict is
//! computed in this crate: the exit status and every printed residual come
//! straight from the library, so the CLI verdict always equals the library
//! verdict on the same input.
//!
//! Exit codes: `0` everything passed, `1` a mathematical failure (the report
//! with exact residuals is still printed), `2` an input error (unreadable
//! file, malformed JSON, wrong envelope kind, bad flag value).
//!
//! All output is deterministic: given the same file and flags the byte
//! stream is identical across runs. JSON mode prints a single pretty object
//! with alphabetically ordered keys; rationals print as `"p/q"` strings.

use clap::{Parser, Subcommand, ValueEnum};
use reynolds_core::cochain::{increasing_tuples, Cochain, CohomologyReport, ComplexEngine};
use reynolds_core::deform::{trivialization, validate_truncation, DeformationTruncation};
use reynolds_core::error::Result;
use reynolds_core::ext::{build_extension, central_obstruction, ObstructionReport, ObstructionVerdict};
use reynolds_core::io::Envelope;
use reynolds_core::lie::jacobi_check;
use reynolds_core::lie::is_reylieder;
use reynolds_core::rep::check_rld_rep;
use reynolds_core::{CheckReport, Error, Mode};
use serde_json::{Map, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "reynolds",
    version,
    about = "Exact-arithmetic validators, cohomology, deformations, extensions \
             and obstruction classes for Reynolds Lie algebras with a derivation",
    propagate_version = true
)]
struct Cli {
    /// Emit one machine-readable JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every validator that applies to the structure in FILE.
    Validate {
        /// Path to an envelope file of any kind.
        file: PathBuf,
        /// Axiom transcription to validate against where two exist.
        #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
        mode: ModeArg,
    },
    /// Compute cohomology of one of the four complexes of a coefficient
    /// object (kind `representation`, or `pair` for adjoint coefficients).
    Cohomology {
        /// Path to an envelope file of kind `representation` or `pair`.
        file: PathBuf,
        /// Which complex: the classical one, the descendent one (`r`), the
        /// two-component Reynolds one, or the full four-component one.
        #[arg(long, value_enum, default_value_t = ComplexArg::Rlieder)]
        complex: ComplexArg,
        /// Inclusive degree range `A..B` (or a single degree `N`).
        /// Defaults to the whole supported range of the complex.
        #[arg(long)]
        degrees: Option<String>,
        /// Also print a basis of the cocycle space at each degree.
        #[arg(long)]
        basis: bool,
    },
    /// Validate a truncated formal deformation and analyze its order-1 part.
    Deform {
        /// Path to an envelope file of kind `deformation`.
        file: PathBuf,
    },
    /// Assemble the abelian extension of a datum and report both the direct
    /// axiom verdict and the cocycle verdict.
    Extend {
        /// Path to an envelope file of kind `extension`.
        file: PathBuf,
    },
    /// Decide whether a derivation couple extends to a central extension,
    /// reporting the obstruction class and a witness when one exists.
    Obstruction {
        /// Path to an envelope file of kind `central_extension`.
        file: PathBuf,
        /// Axiom transcription for the degree-2 obstruction component.
        #[arg(long, value_enum, default_value_t = ModeArg::Standard)]
        mode: ModeArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// The coherent axiom set used everywhere by default.
    Standard,
    /// The strict-literal transcription kept for fixture audits.
    Literal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Standard => Mode::Standard,
            ModeArg::Literal => Mode::Literal,
        }
    }
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Standard => "standard",
        ModeArg::Literal => "literal",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComplexArg {
    /// Classical complex of the underlying representation.
    Ce,
    /// Complex of the descendent algebra with the descendent action.
    R,
    /// Two-component complex governing the Reynolds operator.
    Reynolds,
    /// Four-component complex governing the whole structure.
    Rlieder,
}

fn complex_name(c: ComplexArg) -> &'static str {
    match c {
        ComplexArg::Ce => "ce",
        ComplexArg::R => "r",
        ComplexArg::Reynolds => "reynolds",
        ComplexArg::Rlieder => "rlieder",
    }
}

fn main() -> ExitCode {
    // Die quietly when a downstream pager closes the pipe instead of
    // panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                // A precondition failure carries a validator report with
                // residuals: the input parsed fine but the mathematics
                // refused it.
                Error::Precondition { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Validate { file, mode } => cmd_validate(file, *mode, cli.json),
        Command::Cohomology {
            file,
            complex,
            degrees,
            basis,
        } => cmd_cohomology(file, *complex, degrees.as_deref(), *basis, cli.json),
        Command::Deform { file } => cmd_deform(file, cli.json),
        Command::Extend { file } => cmd_extend(file, cli.json),
        Command::Obstruction { file, mode } => cmd_obstruction(file, *mode, cli.json),
    }
}

fn load(path: &Path) -> Result<Envelope> {
    let text = std::fs::read_to_string(path)?;
    Envelope::from_json(&text)
}

fn wrong_kind(command: &str, expected: &str, found: &str) -> Error {
    Error::Parse(format!(
        "command `{command}` expects an envelope of kind {expected}, found `{found}`"
    ))
}

// ---------------------------------------------------------------------------
// validate

/// Everything one `validate` run produced: named validator reports in
/// print order, plus free-form extras that only some kinds have.
struct ValidateOutcome {
    pass: bool,
    sections: Vec<(&'static str, CheckReport)>,
    extra_text: Vec<String>,
    extra_json: Map<String, Value>,
}

impl ValidateOutcome {
    fn from_report(section: &'static str, report: CheckReport) -> Self {
        ValidateOutcome {
            pass: report.is_pass(),
            sections: vec![(section, report)],
            extra_text: Vec::new(),
            extra_json: Map::new(),
        }
    }
}

fn cmd_validate(path: &Path, mode: ModeArg, json: bool) -> Result<u8> {
    let env = load(path)?;
    let kind = env.kind();
    let outcome = match env {
        Envelope::LieAlgebra(l) => ValidateOutcome::from_report("jacobi", jacobi_check(&l)),
        Envelope::Pair(p) => {
            ValidateOutcome::from_report("pair_axioms", is_reylieder(&p, mode.into()))
        }
        Envelope::Representation(rr) => {
            ValidateOutcome::from_report("coefficient_axioms", check_rld_rep(&rr, mode.into()))
        }
        Envelope::Cochain(c) => {
            // Deserialization already enforced the value-table shape, so a
            // parsed cochain is well-formed by construction.
            let mut outcome = ValidateOutcome::from_report("well_formed", CheckReport::pass());
            outcome.extra_text.push(format!(
                "shape: degree {} on dim L = {}, dim V = {}",
                c.degree(),
                c.dim_l(),
                c.dim_v()
            ));
            outcome
                .extra_json
                .insert("degree".to_string(), Value::from(c.degree()));
            outcome
                .extra_json
                .insert("dim_l".to_string(), Value::from(c.dim_l()));
            outcome
                .extra_json
                .insert("dim_v".to_string(), Value::from(c.dim_v()));
            outcome
        }
        Envelope::Deformation(t) => {
            ValidateOutcome::from_report("deformation_equations", validate_truncation(&t))
        }
        Envelope::Extension(b) => {
            // The assembly theory is stated for the standard axioms, and
            // `build_extension` preconditions on them internally.
            let module_report = check_rld_rep(&b.module, Mode::Standard);
            if !module_report.is_pass() {
                ValidateOutcome::from_report("module", module_report)
            } else {
                let built = build_extension(&b.module, &b.datum)?;
                let pass = built.direct_report.is_pass();
                let mut outcome = ValidateOutcome {
                    pass,
                    sections: vec![
                        ("module", module_report),
                        ("assembled_pair", built.direct_report.clone()),
                    ],
                    extra_text: vec![
                        format!("datum is a degree-2 cocycle: {}", built.is_cocycle),
                        format!("direct and cocycle verdicts agree: {}", built.verdicts_agree()),
                    ],
                    extra_json: Map::new(),
                };
                outcome
                    .extra_json
                    .insert("datum_is_cocycle".to_string(), Value::from(built.is_cocycle));
                outcome.extra_json.insert(
                    "verdicts_agree".to_string(),
                    Value::from(built.verdicts_agree()),
                );
                outcome
            }
        }
        Envelope::CentralExtension(b) => {
            let report =
                central_obstruction(&b.module, &b.theta, &b.xi, &b.couple, mode.into())?;
            ValidateOutcome::from_report("preconditions", report.precondition)
        }
    };

    if json {
        let mut obj = Map::new();
        obj.insert("command".to_string(), Value::from("validate"));
        obj.insert("kind".to_string(), Value::from(kind));
        obj.insert("mode".to_string(), Value::from(mode_name(mode)));
        obj.insert("pass".to_string(), Value::from(outcome.pass));
        let mut checks = Map::new();
        for (label, report) in &outcome.sections {
            checks.insert(label.to_string(), serde_json::to_value(report)?);
        }
        obj.insert("checks".to_string(), Value::Object(checks));
        for (k, v) in outcome.extra_json {
            obj.insert(k, v);
        }
        emit(&Value::Object(obj))?;
    } else {
        println!("kind: {kind}");
        println!("mode: {}", mode_name(mode));
        for line in &outcome.extra_text {
            println!("{line}");
        }
        for (label, report) in &outcome.sections {
            print_report(label, report);
        }
        println!("result: {}", pass_str(outcome.pass));
    }
    Ok(exit_for(outcome.pass))
}

// ---------------------------------------------------------------------------
// cohomology

fn cmd_cohomology(
    path: &Path,
    complex: ComplexArg,
    degrees: Option<&str>,
    basis: bool,
    json: bool,
) -> Result<u8> {
    let env = load(path)?;
    let rr = match env {
        Envelope::Representation(rr) => rr,
        // A bare pair carries its own coefficients: act on itself by the
        // bracket, with the pair's own operators on the module side.
        Envelope::Pair(p) => reynolds_core::deform::adjoint_coefficients(&p),
        other => {
            return Err(wrong_kind(
                "cohomology",
                "`representation` or `pair`",
                other.kind(),
            ))
        }
    };
    // Every complex is defined over a valid coefficient object; refuse an
    // invalid one up front with the validator's own report, uniformly
    // across the four complexes.
    let validity = check_rld_rep(&rr, Mode::Standard);
    if !validity.is_pass() {
        return Err(Error::precondition("coefficient object axioms", validity));
    }
    let variant = reynolds_core::rep::RhoRVariant::PostCompose;
    let engine = match complex {
        ComplexArg::Ce => ComplexEngine::chevalley_eilenberg(rr.rep.clone())?,
        ComplexArg::R => ComplexEngine::descendent(rr.reynolds_part(), variant)?,
        ComplexArg::Reynolds => ComplexEngine::reynolds_pair(rr.reynolds_part(), variant)?,
        ComplexArg::Rlieder => ComplexEngine::reynolds_derivation(rr.clone(), variant)?,
    };
    let top = engine.max_degree();
    let (lo, hi) = match degrees {
        Some(range) => parse_degrees(range)?,
        None => (0, top),
    };
    if hi > top {
        return Err(Error::Parse(format!(
            "degree {hi} exceeds the top degree {top} of this complex"
        )));
    }
    let mut reports: Vec<CohomologyReport> = Vec::new();
    for n in lo..=hi {
        reports.push(engine.cohomology(n)?);
    }

    if json {
        let mut obj = Map::new();
        obj.insert("command".to_string(), Value::from("cohomology"));
        obj.insert("complex".to_string(), Value::from(complex_name(complex)));
        obj.insert("dim_l".to_string(), Value::from(engine.dim_l()));
        obj.insert("dim_v".to_string(), Value::from(engine.dim_v()));
        obj.insert("reports".to_string(), serde_json::to_value(&reports)?);
        emit(&Value::Object(obj))?;
    } else {
        println!("complex: {}", complex_name(complex));
        println!("dim L = {}, dim V = {}", engine.dim_l(), engine.dim_v());
        for r in &reports {
            println!(
                "degree {}: dim C = {}, dim Z = {}, dim B = {}, dim H = {}",
                r.degree, r.dim_space, r.dim_cocycles, r.dim_coboundaries, r.dim_h
            );
            if let Some(note) = &r.note {
                println!("  note: {note}");
            }
            if basis {
                if r.cocycle_basis.is_empty() {
                    println!("  cocycle basis: (empty)");
                } else {
                    println!("  cocycle basis:");
                    for v in &r.cocycle_basis {
                        println!("    {}", vector_str(v));
                    }
                }
            }
        }
    }
    Ok(0)
}

fn parse_degrees(range: &str) -> Result<(usize, usize)> {
    let s = range.trim();
    let (lo_text, hi_text) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, s),
    };
    let parse = |part: &str| -> Result<usize> {
        part.parse::<usize>().map_err(|_| {
            Error::Parse(format!(
                "invalid degree `{part}` in `{range}`: expected a nonnegative integer \
                 or an inclusive range `A..B`"
            ))
        })
    };
    let lo = parse(lo_text)?;
    let hi = parse(hi_text)?;
    if lo > hi {
        return Err(Error::Parse(format!("empty degree range `{range}`")));
    }
    Ok((lo, hi))
}

// ---------------------------------------------------------------------------
// deform

fn cmd_deform(path: &Path, json: bool) -> Result<u8> {
    let env = load(path)?;
    let t: DeformationTruncation = match env {
        Envelope::Deformation(t) => t,
        other => return Err(wrong_kind("deform", "`deformation`", other.kind())),
    };
    let report = validate_truncation(&t);
    let pass = report.is_pass();
    // Only analyze the order-1 part of a truncation that satisfies all its
    // equations (that guarantees the base is valid, so the complex exists).
    let order_one = if pass && t.order() >= 1 {
        Some(trivialization(&t)?)
    } else {
        None
    };

    if json {
        let mut obj = Map::new();
        obj.insert("command".to_string(), Value::from("deform"));
        obj.insert("order".to_string(), Value::from(t.order()));
        obj.insert("pass".to_string(), Value::from(pass));
        obj.insert("validation".to_string(), serde_json::to_value(&report)?);
        obj.insert(
            "order_one".to_string(),
            match &order_one {
                Some(tr) => serde_json::to_value(tr)?,
                None => Value::Null,
            },
        );
        emit(&Value::Object(obj))?;
    } else {
        println!("order: {}", t.order());
        print_report("deformation_equations", &report);
        match &order_one {
            None if !pass => println!("order-1 analysis: skipped (validation failed)"),
            None => println!("order-1 analysis: skipped (no order-1 terms)"),
            Some(tr) => {
                println!("order-1 element is a cocycle: {}", tr.is_cocycle);
                match &tr.full_witness {
                    Some(w) => {
                        println!("exact in the full complex: yes");
                        println!("  degree-1 preimage (flat): {}", vector_str(w));
                    }
                    None => println!("exact in the full complex: no"),
                }
                match &tr.operator_witness {
                    Some(op) => {
                        println!("trivialized by a change of variables: yes");
                        print!("{}", indent_block(&format!("{}", op.matrix()), "  "));
                    }
                    None => println!("trivialized by a change of variables: no"),
                }
            }
        }
        println!("result: {}", pass_str(pass));
    }
    Ok(exit_for(pass))
}

// ---------------------------------------------------------------------------
// extend

fn cmd_extend(path: &Path, json: bool) -> Result<u8> {
    let env = load(path)?;
    let b = match env {
        Envelope::Extension(b) => b,
        other => return Err(wrong_kind("extend", "`extension`", other.kind())),
    };
    let module_report = check_rld_rep(&b.module, Mode::Standard);
    if !module_report.is_pass() {
        if json {
            let mut obj = Map::new();
            obj.insert("command".to_string(), Value::from("extend"));
            obj.insert("pass".to_string(), Value::from(false));
            obj.insert(
                "module_report".to_string(),
                serde_json::to_value(&module_report)?,
            );
            emit(&Value::Object(obj))?;
        } else {
            print_report("module", &module_report);
            println!("result: FAIL");
        }
        return Ok(1);
    }
    let built = build_extension(&b.module, &b.datum)?;
    let pass = built.direct_report.is_pass();

    if json {
        let mut obj = Map::new();
        obj.insert("command".to_string(), Value::from("extend"));
        obj.insert("pass".to_string(), Value::from(pass));
        obj.insert(
            "module_report".to_string(),
            serde_json::to_value(&module_report)?,
        );
        obj.insert(
            "direct_report".to_string(),
            serde_json::to_value(&built.direct_report)?,
        );
        obj.insert(
            "datum_is_cocycle".to_string(),
            Value::from(built.is_cocycle),
        );
        obj.insert(
            "verdicts_agree".to_string(),
            Value::from(built.verdicts_agree()),
        );
        obj.insert(
            "total_bracket".to_string(),
            serde_json::to_value(&built.pair.algebra)?,
        );
        obj.insert("total_r".to_string(), serde_json::to_value(&built.pair.r)?);
        obj.insert("total_d".to_string(), serde_json::to_value(&built.pair.d)?);
        emit(&Value::Object(obj))?;
    } else {
        print_report("module", &module_report);
        print_report("assembled_pair", &built.direct_report);
        println!("datum is a degree-2 cocycle: {}", built.is_cocycle);
        println!(
            "direct and cocycle verdicts agree: {}",
            built.verdicts_agree()
        );
        println!("total dimension: {}", built.pair.dim());
        println!("result: {}", pass_str(pass));
    }
    Ok(exit_for(pass))
}

// ---------------------------------------------------------------------------
// obstruction

fn cmd_obstruction(path: &Path, mode: ModeArg, json: bool) -> Result<u8> {
    let env = load(path)?;
    let b = match env {
        Envelope::CentralExtension(b) => b,
        other => {
            return Err(wrong_kind(
                "obstruction",
                "`central_extension`",
                other.kind(),
            ))
        }
    };
    let report: ObstructionReport =
        central_obstruction(&b.module, &b.theta, &b.xi, &b.couple, mode.into())?;
    let pass = report.verdict == ObstructionVerdict::Extensible;

    if json {
        let mut obj = Map::new();
        obj.insert("command".to_string(), Value::from("obstruction"));
        obj.insert("mode".to_string(), Value::from(mode_name(mode)));
        obj.insert("pass".to_string(), Value::from(pass));
        obj.insert("report".to_string(), serde_json::to_value(&report)?);
        emit(&Value::Object(obj))?;
    } else {
        println!("mode: {}", mode_name(mode));
        print_report("preconditions", &report.precondition);
        print_cochain("degree-2 obstruction component", &report.ob2);
        print_cochain("degree-1 obstruction component", &report.ob1);
        match report.is_cocycle {
            Some(b) => println!("obstruction element is a 2-cocycle: {b}"),
            None => println!("obstruction element is a 2-cocycle: not computable"),
        }
        match &report.chi {
            Some(chi) => print_cochain("connecting cochain", chi),
            None => println!("connecting cochain: none"),
        }
        if let Some(d_hat) = &report.lifted_derivation {
            println!("lifted derivation on the total space:");
            print!("{}", indent_block(&format!("{}", d_hat.matrix()), "  "));
        }
        if let Some(ext_report) = &report.extension_report {
            print_report("assembled_extension", ext_report);
        }
        println!("verdict: {}", verdict_name(&report.verdict));
    }
    Ok(exit_for(pass))
}

fn verdict_name(v: &ObstructionVerdict) -> &'static str {
    match v {
        ObstructionVerdict::Extensible => "extensible",
        ObstructionVerdict::Obstructed => "obstructed",
        ObstructionVerdict::PreconditionFailed => "precondition_failed",
    }
}

// ---------------------------------------------------------------------------
// rendering helpers (formatting only; no verdicts are computed here)

fn exit_for(pass: bool) -> u8 {
    if pass {
        0
    } else {
        1
    }
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn print_report(label: &str, report: &CheckReport) {
    if report.is_pass() {
        println!("{label}: PASS");
    } else {
        // The report's own rendering ends with a newline per violation.
        print!("{label}: FAIL — {report}");
    }
}

fn vector_str(v: &[reynolds_core::Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Prints the nonzero values of a cochain, one basis tuple per line.
fn print_cochain(label: &str, c: &Cochain) {
    if c.is_zero() {
        println!("{label}: 0");
        return;
    }
    println!("{label}:");
    for tuple in increasing_tuples(c.dim_l(), c.degree()) {
        let value = c.eval_basis(&tuple);
        if value.iter().all(|s| s.is_zero()) {
            continue;
        }
        let args: Vec<String> = tuple.iter().map(|i| format!("e{}", i + 1)).collect();
        println!("  ({}) -> {}", args.join(", "), vector_str(&value));
    }
}

fn indent_block(block: &str, pad: &str) -> String {
    let mut out = String::new();
    for line in block.lines() {
        out.push_str(pad);
        out.push_str(line);
        out.push('\n');
    }
    out
}

fn emit(value: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}
