//! Command-line definitions and dispatch.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use quiver_reflect::barcode::{decompose, BarcodeError};
use quiver_reflect::linalg::Field;
use quiver_reflect::quiver::ReflectedOrientation;
use quiver_reflect::reflection::{
    in_overline_rep, in_underline_rep, reflect_minus, reflect_morphism_plus, reflect_plus, unit_iso_check,
    unit_naturality_check, verify_lemma_squares, Convention, ReflectionContext, ReflectionError, Side,
};
use quiver_reflect::representation::{hom_space, Budget, Morphism, Rep};

use crate::document::{barcode_bars_value, parse, serialize, BarcodeDoc, Document, SchemaError};
use crate::fuzz::{fuzz_campaign, run_check, side_name, Check, FuzzConfig};
use crate::render::render_svg;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qreflect",
    version,
    about = "Reflection functors for continuous type-A quiver representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Value of the kernel functor at the mirrored point.
    #[arg(long, value_enum, global = true, default_value_t = SPrimeValue::Symmetric)]
    pub s_prime_value: SPrimeValue,
    /// What the reflected point becomes: a source (window reversed) or a sink (window kept).
    #[arg(long, value_enum, global = true, default_value_t = OrientationArg::Source)]
    pub reflected_orientation: OrientationArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SPrimeValue {
    Symmetric,
    PaperB,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Source,
    Sink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
pub struct Io {
    /// Input document.
    pub input: PathBuf,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a document and list structural violations.
    Validate { input: PathBuf },
    /// Reflect a representation at a sink (plus) or source (minus).
    Reflect {
        #[command(flatten)]
        io: Io,
        /// Breakpoint index of the sink (plus) or source (minus).
        #[arg(long)]
        at: usize,
        /// Kernel side (plus) or cokernel side (minus).
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// Write the barcode of a representation.
    Decompose {
        #[command(flatten)]
        io: Io,
    },
    /// Run reflection checks on one representation; all checks when none is selected.
    Check {
        #[command(flatten)]
        io: Io,
        /// Breakpoint index of the sink (plus) or source (minus).
        #[arg(long)]
        at: usize,
        /// Kernel side (plus) or cokernel side (minus).
        #[arg(long, value_enum, default_value_t = Direction::Plus)]
        direction: Direction,
        /// Subcategory membership of the input.
        #[arg(long)]
        membership: bool,
        /// Pullback (plus) or pushout (minus) squares on every window cell.
        #[arg(long)]
        lemmas: bool,
        /// Barcode equality after reflecting back.
        #[arg(long)]
        roundtrip: bool,
        /// Identity, composition and unit naturality (plus side only).
        #[arg(long)]
        functoriality: bool,
    },
    /// Randomized checks of both functors on sampled representations.
    Fuzz {
        /// Number of sampled quivers; each runs both sides.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Base seed; trial seeds are derived from it.
        #[arg(long, env = "FUZZ_SEED", default_value_t = 0)]
        seed: u64,
        /// Upper bound on cuts per sampled representation, breakpoints included.
        #[arg(long, default_value_t = 8)]
        max_cuts: usize,
        /// Upper bound on every cell dimension.
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        /// Upper bound on bars per sampled representation.
        #[arg(long, default_value_t = 6)]
        max_bars: usize,
        /// A prime, or Q for the rationals.
        #[arg(long, default_value = "32003", value_parser = parse_field)]
        field: Field,
        /// Record per-check timing (makes the report machine dependent).
        #[arg(long)]
        timing: bool,
        /// Report file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw the barcode of a barcode or rep document as SVG.
    Render {
        #[command(flatten)]
        io: Io,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p: u64 = s.parse().map_err(|_| format!("expected a prime or Q, got {s:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Schema { path: PathBuf, source: SchemaError },
    #[error("expected a {expected} document, found {found}")]
    Kind {
        expected: &'static str,
        found: &'static str,
    },
    #[error("invalid representation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
    #[error(transparent)]
    Barcode(#[from] BarcodeError),
}

impl CliError {
    /// Whether the error is a failed check rather than bad input.
    fn is_check_failure(&self) -> bool {
        matches!(
            self,
            CliError::Reflection(
                ReflectionError::Inconsistent(_)
                    | ReflectionError::RoundTripMismatch { .. }
                    | ReflectionError::NoIsomorphism
                    | ReflectionError::UnitNotInvertible { .. }
                    | ReflectionError::UnitNaturality { .. }
            )
        )
    }
}

/// What a command produced: text for the output target and an exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Cli {
    fn convention(&self) -> Convention {
        match self.s_prime_value {
            SPrimeValue::Symmetric => Convention::Symmetric,
            SPrimeValue::PaperB => Convention::PaperB,
        }
    }

    fn orientation(&self) -> ReflectedOrientation {
        match self.reflected_orientation {
            OrientationArg::Source => ReflectedOrientation::Flipped,
            OrientationArg::Sink => ReflectedOrientation::Preserved,
        }
    }

    fn context(&self, v: &Rep, at: usize, direction: Direction) -> Result<ReflectionContext, CliError> {
        let side = match direction {
            Direction::Plus => Side::Plus,
            Direction::Minus => Side::Minus,
        };
        Ok(ReflectionContext::with(
            v.quiver(),
            at,
            side,
            self.convention(),
            self.orientation(),
        )?)
    }
}

fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text).map_err(|source| CliError::Schema {
        path: path.to_path_buf(),
        source,
    })
}

fn read_rep(path: &Path) -> Result<Rep, CliError> {
    match read_document(path)? {
        Document::Rep(r) => {
            let violations = r.validate();
            if violations.is_empty() {
                Ok(r)
            } else {
                let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
                Err(CliError::Invalid(list.join("; ")))
            }
        }
        other => Err(CliError::Kind {
            expected: "rep",
            found: other.kind(),
        }),
    }
}

fn report(value: Value) -> String {
    serialize(&Document::Report(value))
}

fn error_report(command: &str, e: &CliError) -> String {
    report(json!({ "command": command, "passed": false, "error": e.to_string() }))
}

/// Parses `args` and runs the command. Documents go to the output file or
/// `stdout`; diagnostics and error reports go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (name, output) = command_meta(&cli.command);
    match execute(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(output, &outcome.text, stdout) {
                let _ = writeln!(stderr, "{e}");
                return EXIT_USAGE;
            }
            outcome.code
        }
        Err(e) => {
            let _ = write!(stderr, "{}", error_report(name, &e));
            if e.is_check_failure() {
                EXIT_CHECK_FAILED
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn command_meta(command: &Command) -> (&'static str, Option<&Path>) {
    match command {
        Command::Validate { .. } => ("validate", None),
        Command::Reflect { io, .. } => ("reflect", io.output.as_deref()),
        Command::Decompose { io } => ("decompose", io.output.as_deref()),
        Command::Check { io, .. } => ("check", io.output.as_deref()),
        Command::Fuzz { output, .. } => ("fuzz", output.as_deref()),
        Command::Render { io } => ("render", io.output.as_deref()),
    }
}

fn emit(output: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate { input } => validate(input),
        Command::Reflect { io, at, direction } => {
            let v = read_rep(&io.input)?;
            let ctx = cli.context(&v, *at, *direction)?;
            let w = match direction {
                Direction::Plus => reflect_plus(&v, &ctx)?,
                Direction::Minus => reflect_minus(&v, &ctx)?,
            };
            Ok(Outcome {
                text: serialize(&Document::Rep(w)),
                code: EXIT_OK,
            })
        }
        Command::Decompose { io } => {
            let v = read_rep(&io.input)?;
            let barcode = decompose(&v)?;
            Ok(Outcome {
                text: serialize(&Document::Barcode(BarcodeDoc {
                    quiver: Some(v.quiver().clone()),
                    barcode,
                })),
                code: EXIT_OK,
            })
        }
        Command::Check {
            io,
            at,
            direction,
            membership,
            lemmas,
            roundtrip,
            functoriality,
        } => {
            let v = read_rep(&io.input)?;
            let ctx = cli.context(&v, *at, *direction)?;
            let all = !(*membership || *lemmas || *roundtrip || *functoriality);
            let selected = Selected {
                membership: all || *membership,
                lemmas: all || *lemmas,
                roundtrip: all || *roundtrip,
                functoriality: all || *functoriality,
            };
            Ok(check(&v, &ctx, cli.orientation(), selected))
        }
        Command::Fuzz {
            trials,
            seed,
            max_cuts,
            max_dim,
            max_bars,
            field,
            timing,
            ..
        } => {
            let cfg = FuzzConfig {
                trials: *trials,
                seed: *seed,
                budget: Budget {
                    max_bars: *max_bars,
                    max_cuts: *max_cuts,
                    max_dim: *max_dim,
                },
                field: *field,
                convention: cli.convention(),
                orientation: cli.orientation(),
                record_timing: *timing,
            };
            let r = fuzz_campaign(&cfg);
            Ok(Outcome {
                text: serialize(&r.to_document()),
                code: if r.total_failures() == 0 {
                    EXIT_OK
                } else {
                    EXIT_CHECK_FAILED
                },
            })
        }
        Command::Render { io } => {
            let (barcode, quiver) = match read_document(&io.input)? {
                Document::Barcode(b) => (b.barcode, b.quiver),
                Document::Rep(v) => (decompose(&v)?, Some(v.quiver().clone())),
                other => {
                    return Err(CliError::Kind {
                        expected: "barcode or rep",
                        found: other.kind(),
                    })
                }
            };
            Ok(Outcome {
                text: render_svg(&barcode, quiver.as_ref()),
                code: EXIT_OK,
            })
        }
    }
}

fn validate(input: &Path) -> Result<Outcome, CliError> {
    let doc = read_document(input)?;
    let (violations, warnings): (Vec<String>, Vec<String>) = match &doc {
        Document::Rep(r) => (
            r.validate().iter().map(ToString::to_string).collect(),
            r.quiver().warnings(),
        ),
        Document::Quiver(q) => (Vec::new(), q.warnings()),
        Document::Barcode(b) => (Vec::new(), b.quiver.as_ref().map(|q| q.warnings()).unwrap_or_default()),
        Document::Report(_) => (Vec::new(), Vec::new()),
    };
    let passed = violations.is_empty();
    Ok(Outcome {
        text: report(json!({
            "command": "validate",
            "kind": doc.kind(),
            "passed": passed,
            "violations": violations,
            "warnings": warnings,
        })),
        code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    })
}

#[derive(Clone, Copy)]
struct Selected {
    membership: bool,
    lemmas: bool,
    roundtrip: bool,
    functoriality: bool,
}

fn entry(passed: bool, detail: Value) -> Value {
    json!({ "status": if passed { "pass" } else { "fail" }, "detail": detail })
}

fn skipped(reason: &str) -> Value {
    json!({ "status": "skipped", "detail": reason })
}

fn check(v: &Rep, ctx: &ReflectionContext, orientation: ReflectedOrientation, sel: Selected) -> Outcome {
    let mut checks = serde_json::Map::new();
    if sel.membership {
        checks.insert("membership".into(), membership(v, ctx));
    }
    if sel.lemmas {
        checks.insert("lemmas".into(), lemmas(v, ctx));
    }
    if sel.roundtrip {
        checks.insert("roundtrip".into(), roundtrip(v, ctx, orientation));
    }
    if sel.functoriality {
        checks.insert("functoriality".into(), functoriality(v, ctx));
    }
    let passed = checks.values().all(|c| c["status"] != "fail");
    let text = report(json!({
        "command": "check",
        "direction": side_name(ctx.side()),
        "at": ctx.k(),
        "passed": passed,
        "checks": Value::Object(checks),
    }));
    Outcome {
        text,
        code: if passed { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}

fn membership(v: &Rep, ctx: &ReflectionContext) -> Value {
    let m = match ctx.side() {
        Side::Plus => in_overline_rep(v, ctx.k()),
        Side::Minus => in_underline_rep(v, ctx.k()),
    };
    match m {
        Ok(m) => entry(m.holds, json!({ "rank": m.rank, "required": m.required })),
        Err(e) => entry(false, json!(e.to_string())),
    }
}

fn lemmas(v: &Rep, ctx: &ReflectionContext) -> Value {
    match verify_lemma_squares(v, ctx) {
        Ok(r) => {
            let failures: Vec<Value> = r
                .failures()
                .map(|s| {
                    json!({
                        "cell": s.cell,
                        "at": s.at.to_string(),
                        "part": s.part,
                        "error": s.outcome.as_ref().err().map(ToString::to_string),
                    })
                })
                .collect();
            entry(r.all_pass(), json!({ "squares": r.checks.len(), "failures": failures }))
        }
        Err(e) => entry(false, json!(e.to_string())),
    }
}

fn roundtrip(v: &Rep, ctx: &ReflectionContext, orientation: ReflectedOrientation) -> Value {
    let result = match ctx.side() {
        Side::Plus => unit_iso_check(v, ctx, Some(&Morphism::identity(v))).map(|_| ()),
        Side::Minus => match in_underline_rep(v, ctx.k()) {
            Ok(m) if !m.holds => Err(ReflectionError::NotInSubcategory),
            Err(e) => Err(e),
            Ok(_) => {
                return match run_check(Check::RoundTrip, v, ctx, orientation) {
                    Ok(()) => entry(true, Value::Null),
                    Err(e) => entry(false, json!(e)),
                }
            }
        },
    };
    match result {
        Ok(()) => {
            let bars = decompose(v).map(|b| barcode_bars_value(&b)).unwrap_or(Value::Null);
            entry(true, json!({ "barcode": bars }))
        }
        Err(e) => entry(false, json!(e.to_string())),
    }
}

/// Identity, composition and unit naturality along endomorphisms of `v`.
fn functoriality(v: &Rep, ctx: &ReflectionContext) -> Value {
    if ctx.side() == Side::Minus {
        return skipped("morphisms are reflected at sinks only");
    }
    let result = (|| -> Result<usize, String> {
        let id = reflect_morphism_plus(&Morphism::identity(v), ctx).map_err(|e| e.to_string())?;
        if !id.is_identity() {
            return Err("the identity does not reflect to the identity".into());
        }
        let basis = hom_space(v, v).map_err(|e| e.to_string())?;
        let sample: Vec<&Morphism> = basis.iter().take(4).collect();
        let mut pairs = 0;
        for f in &sample {
            let sf = reflect_morphism_plus(f, ctx).map_err(|e| e.to_string())?;
            if let Some(link) = sf.broken_square() {
                return Err(format!("reflected morphism is not natural at link {link}"));
            }
            for g in &sample {
                let sg = reflect_morphism_plus(g, ctx).map_err(|e| e.to_string())?;
                let fg = f.then(g).map_err(|e| e.to_string())?;
                let composite = reflect_morphism_plus(&fg, ctx).map_err(|e| e.to_string())?;
                if Some(composite) != sf.then(&sg) {
                    return Err("reflection does not preserve a composite".into());
                }
                pairs += 1;
            }
            if in_overline_rep(v, ctx.k()).map(|m| m.holds).unwrap_or(false) {
                unit_naturality_check(f, ctx).map_err(|e| e.to_string())?;
            }
        }
        Ok(pairs)
    })();
    match result {
        Ok(pairs) => entry(true, json!({ "composites": pairs })),
        Err(e) => entry(false, json!(e)),
    }
}
