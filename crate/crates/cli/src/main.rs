mod report;
mod selector;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use arrangement_core::freeness::{exponents_if_chi_splits, Certificate, Interrupted, Solver};
use arrangement_core::generators::FamilySpec;
use arrangement_core::io::{arrangement_to_json_pretty, load_arrangement, save_arrangement};
use arrangement_core::{build_lattice, Arrangement};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::*;
use selector::Selector;

/// Exact intersection lattices, characteristic polynomials and freeness
/// certificates for hyperplane arrangements over cyclotomic fields.
#[derive(Parser, Debug)]
#[command(name = "arrangements", version)]
struct Cli {
    #[command(flatten)]
    output: OutputFlags,

    /// Abort freeness searches after this many seconds (exit code 1).
    #[arg(long, global = true, value_name = "SECONDS")]
    timeout_seconds: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct OutputFlags {
    /// Print the report as JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Print the report as plain text (default).
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a family member, e.g. `intermediate:r=3,l=4,k=1`.
    Gen {
        spec: String,
        out: Option<PathBuf>,
        #[arg(long = "out", conflicts_with = "out")]
        out_flag: Option<PathBuf>,
    },
    /// Characteristic polynomial, its roots and the flat counts.
    Charpoly { input: PathBuf },
    /// Decide a freeness property.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Exit with code 2 unless the verdict equals this.
        #[arg(long)]
        expect: Option<bool>,
        /// Also write the certificate to this file.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Restrict to a flat: A^X.
    Restrict(Construct),
    /// Localize at a flat: A_X.
    Localize(Construct),
    /// Delete a hyperplane.
    Delete(Construct),
    /// Product of two arrangements.
    Product {
        first: PathBuf,
        second: PathBuf,
        out: Option<PathBuf>,
        #[arg(long = "out", conflicts_with = "out")]
        out_flag: Option<PathBuf>,
    },
    /// Replay a certificate against an arrangement.
    VerifyCert { input: PathBuf, cert: PathBuf },
}

#[derive(Args, Debug)]
struct Construct {
    input: PathBuf,
    /// A hyperplane index, a comma-separated index list (the flat is the
    /// closure of their intersection), or `example-2.9`.
    #[arg(long, allow_hyphen_values = true)]
    selector: String,
    out: Option<PathBuf>,
    #[arg(long = "out", conflicts_with = "out")]
    out_flag: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Divisional,
    Inductive,
    HereditaryDivisional,
    HereditaryInductive,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Divisional => "divisional",
            Mode::Inductive => "inductive",
            Mode::HereditaryDivisional => "hereditary-divisional",
            Mode::HereditaryInductive => "hereditary-inductive",
        }
    }
}

struct Ctx {
    json: bool,
    argv: Vec<String>,
    timeout: Option<Duration>,
    start: Instant,
}

impl Ctx {
    fn emit<P: Serialize + Text>(&self, a: &Arrangement, result: P) -> anyhow::Result<()> {
        let report = Report {
            command: self.argv.clone(),
            arrangement: Summary::of(a),
            result,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        };
        if self.json {
            put(&(serde_json::to_string_pretty(&report)? + "\n"))
        } else {
            put(&report.to_text())
        }
    }

    fn solver(&self) -> Solver {
        match self.timeout {
            Some(t) => Solver::with_timeout(t),
            None => Solver::new(),
        }
    }
}

// Unlike `print!`, reports a closed pipe as an error instead of panicking.
fn put(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn load(path: &Path) -> anyhow::Result<Arrangement> {
    load_arrangement(path).with_context(|| format!("loading {}", path.display()))
}

fn save_to(a: &Arrangement, out: Option<&Path>) -> anyhow::Result<Option<String>> {
    match out {
        Some(p) => {
            save_arrangement(a, p).with_context(|| format!("writing {}", p.display()))?;
            Ok(Some(p.display().to_string()))
        }
        None => Ok(None),
    }
}

fn run(cli: Cli, ctx: &Ctx) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gen {
            spec,
            out,
            out_flag,
        } => {
            let spec: FamilySpec = spec.parse()?;
            let a = spec.build()?;
            let out = out.or(out_flag);
            let Some(path) = out else {
                // no destination: the arrangement file itself is the output
                put(&(arrangement_to_json_pretty(&a) + "\n"))?;
                return Ok(ExitCode::SUCCESS);
            };
            let written_to = save_to(&a, Some(&path))?;
            ctx.emit(
                &a,
                ConstructResult {
                    operation: "gen",
                    selector: Some(spec.to_string()),
                    flat: None,
                    output: Summary::of(&a),
                    written_to,
                },
            )?;
        }
        Command::Charpoly { input } => {
            let a = load(&input)?;
            let lattice = build_lattice(&a);
            let chi = lattice.char_poly();
            ctx.emit(
                &a,
                CharPolyResult {
                    chi: ChiReport::new(&chi),
                    roots: exponents_if_chi_splits(&a),
                    flat_counts: lattice.codim_counts(),
                },
            )?;
        }
        Command::Check {
            input,
            mode,
            expect,
            cert_out,
        } => {
            let a = load(&input)?;
            let mut solver = ctx.solver();
            let interrupted = |_: Interrupted| anyhow::anyhow!("search exceeded the time limit");
            let chi = solver.char_poly(&a);
            let (verdict, certificate, failing) = match mode {
                Mode::Divisional => {
                    let c = solver.divisional(&a).map_err(interrupted)?;
                    (c.is_some(), c.map(Certificate::Division), None)
                }
                Mode::Inductive => {
                    let c = solver.inductive(&a).map_err(interrupted)?;
                    (c.is_some(), c.map(Certificate::Induction), None)
                }
                Mode::HereditaryDivisional | Mode::HereditaryInductive => {
                    let outcome = if mode == Mode::HereditaryDivisional {
                        solver.hereditarily_divisional(&a)
                    } else {
                        solver.hereditarily_inductive(&a)
                    }
                    .map_err(interrupted)?;
                    let flats = outcome.failing.iter().map(FlatReport::new).collect();
                    (outcome.holds, None, Some(flats))
                }
            };
            if let Some(path) = &cert_out {
                let Some(c) = &certificate else {
                    bail!(
                        "no certificate to write: {} verdict is {verdict}",
                        mode.name()
                    );
                };
                std::fs::write(path, serde_json::to_string_pretty(c)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let expectation_met = expect.is_none_or(|e| e == verdict);
            ctx.emit(
                &a,
                CheckResult {
                    mode: mode.name(),
                    verdict,
                    expected: expect,
                    expectation_met,
                    chi: ChiReport::new(&chi),
                    exponents: exponents_if_chi_splits(&a),
                    certificate,
                    failing_flats: failing,
                },
            )?;
            if !expectation_met {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Restrict(c) => construct(ctx, "restrict", c)?,
        Command::Localize(c) => construct(ctx, "localize", c)?,
        Command::Delete(c) => construct(ctx, "delete", c)?,
        Command::Product {
            first,
            second,
            out,
            out_flag,
        } => {
            let a = load(&first)?;
            let b = load(&second)?;
            let p = a.product(&b);
            let out = out.or(out_flag);
            if out.is_none() {
                put(&(arrangement_to_json_pretty(&p) + "\n"))?;
                return Ok(ExitCode::SUCCESS);
            }
            let written_to = save_to(&p, out.as_deref())?;
            ctx.emit(
                &a,
                ConstructResult {
                    operation: "product",
                    selector: None,
                    flat: None,
                    output: Summary::of(&p),
                    written_to,
                },
            )?;
        }
        Command::VerifyCert { input, cert } => {
            let a = load(&input)?;
            let text = std::fs::read_to_string(&cert)
                .with_context(|| format!("reading {}", cert.display()))?;
            let certificate: Certificate = serde_json::from_str(&text)
                .with_context(|| format!("malformed certificate {}", cert.display()))?;
            let kind = match certificate {
                Certificate::Division(_) => "division",
                Certificate::Induction(_) => "induction",
            };
            let outcome = certificate.verify(&a);
            let valid = outcome.is_ok();
            let err = outcome.err();
            ctx.emit(
                &a,
                VerifyResult {
                    kind,
                    valid,
                    failed_step: err.as_ref().map(|e| e.step),
                    message: err.map(|e| e.message),
                },
            )?;
            if !valid {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn construct(ctx: &Ctx, operation: &'static str, c: Construct) -> anyhow::Result<()> {
    let a = load(&c.input)?;
    let selector: Selector = c.selector.parse()?;
    let (result, flat) = if operation == "delete" {
        let Selector::Hyperplane(i) = selector else {
            bail!("delete takes a single hyperplane index");
        };
        (a.delete(i)?, None)
    } else {
        let flat = selector.resolve(&a)?;
        let r = if operation == "restrict" {
            a.restrict(&flat)?
        } else {
            a.localize(&flat)?
        };
        (r, Some(FlatReport::new(&flat)))
    };
    let out = c.out.or(c.out_flag);
    if out.is_none() {
        put(&(arrangement_to_json_pretty(&result) + "\n"))?;
        return Ok(());
    }
    let written_to = save_to(&result, out.as_deref())?;
    ctx.emit(
        &a,
        ConstructResult {
            operation,
            selector: Some(c.selector.trim().to_string()),
            flat,
            output: Summary::of(&result),
            written_to,
        },
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; 2 is reserved for expectation mismatches
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let timeout = match cli.timeout_seconds {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            eprintln!("error: --timeout-seconds must be a nonnegative number");
            return ExitCode::FAILURE;
        }
        s => s.map(Duration::from_secs_f64),
    };
    let ctx = Ctx {
        json: cli.output.json,
        argv: std::env::args().skip(1).collect(),
        timeout,
        start: Instant::now(),
    };
    match run(cli, &ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
