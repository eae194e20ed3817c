use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qbernstein::bernstein::{
    check_inequality_with, check_theorem, counterexample_report, CheckReport, CounterexampleReport, TheoremOptions,
    DEFAULT_SEED,
};
use qbernstein::extremal::{modulus_profile, sup_norm_with, SupNormOptions};
use qbernstein::io::{self as qio, coeff_rows, fmt6, fmt6_quaternion, parse_quaternion, read_poly, write_csv};
use qbernstein::random::rng;
use qbernstein::{almansi, AlmansiPair, Error, QPolynomial, Quaternion};

const EXIT_NUMERICAL: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 74;

#[derive(Parser)]
#[command(name = "qbernstein", version, about = "Quaternionic polynomials: evaluation, sup-norms and Bernstein checks")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Output format (each verb has its own default).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for point sweeps (default: number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct PolyArg {
    /// Polynomial: JSON file, JSON literal, or inline "w,x,y,z;w,x,y,z;..." (index = power).
    #[arg(long)]
    poly: String,
}

#[derive(Args)]
struct GridArg {
    /// Number of α grid points in [-1, 1].
    #[arg(long, default_value_t = 2001)]
    grid: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Evaluate P(x) = Σ x^k a_k.
    Eval {
        #[command(flatten)]
        poly: PolyArg,
        /// Point "w,x,y,z".
        #[arg(long)]
        at: String,
    },
    /// Star product P·Q.
    Mul {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        poly2: String,
    },
    /// Formal derivative P'.
    Derive {
        #[command(flatten)]
        poly: PolyArg,
    },
    /// Zonal decomposition P(x) = A(x) − x̄·B(x).
    Almansi {
        #[command(flatten)]
        poly: PolyArg,
        /// Also evaluate A, B and P at this point.
        #[arg(long)]
        at: Option<String>,
    },
    /// Table of Z̃_k(x) for k = 0..=degree.
    ZonalTable {
        /// Points "w,x,y,z" (repeatable).
        #[arg(long)]
        at: Vec<String>,
        /// Additional random points in the ball of radius 2.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        degree: usize,
    },
    /// Sup-norm of |P| over the unit sphere.
    Norm {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Slice maxima and minima of |P| at evenly spaced α.
    Profile {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = 201)]
        grid: usize,
        /// A single α instead of a grid.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
    },
    /// Check ‖P'‖ ≤ d‖P‖ and the equality case.
    Bernstein {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        grid: GridArg,
    },
    /// Check the hypotheses and conclusion of the comparison theorem for (P, Q).
    Theorem {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        poly2: String,
        /// Probe points "w,x,y,z" for the conclusion (repeatable).
        #[arg(long)]
        at: Vec<String>,
        #[command(flatten)]
        grid: GridArg,
        /// Random points of S³ for |P| ≤ |Q|.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Reproduce the counterexample without the slice hypothesis.
    Counterexample {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct EvalOutput {
    poly: QPolynomial,
    at: Quaternion,
    value: Quaternion,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct AlmansiOutput {
    #[serde(flatten)]
    pair: AlmansiPair,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    at: Option<AlmansiAt>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct AlmansiAt {
    x: Quaternion,
    a: Quaternion,
    b: Quaternion,
    /// `A(x) − x̄·B(x)`.
    reassembled: Quaternion,
    value: Quaternion,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

type Run<T> = Result<T, Failure>;

fn point(s: &str) -> Run<Quaternion> {
    Ok(parse_quaternion(s)?)
}

fn json<T: Serialize>(out: &mut dyn Write, v: &T) -> Run<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(verb: &str, f: Format) -> Failure {
    let name = match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    };
    Failure::Usage(format!("{verb} does not support --format {name}"))
}

fn write_poly(out: &mut dyn Write, p: &QPolynomial, f: Format) -> Run<()> {
    match f {
        Format::Json => json(out, p),
        Format::Csv => Ok(write_csv(out, &coeff_rows(p))?),
        Format::Text => {
            for (k, c) in p.coeffs().iter().enumerate() {
                writeln!(out, "{k}\t{}", fmt6_quaternion(*c))?;
            }
            Ok(())
        }
    }
}

fn report_text(out: &mut dyn Write, r: &CheckReport) -> Run<()> {
    for h in &r.hypotheses {
        let verdict = if h.satisfied { "ok" } else { "VIOLATED" };
        writeln!(out, "hypothesis {:<14} {verdict:<9} margin {}  {}", h.name, fmt6(h.margin), h.detail)?;
        for w in &h.witness {
            writeln!(out, "    witness {}", fmt6_quaternion(*w))?;
        }
    }
    for (k, v) in &r.values {
        writeln!(out, "{k} = {}", fmt6(*v))?;
    }
    for p in &r.probes {
        writeln!(
            out,
            "probe {}  |Q'|-|P'| = {}{}",
            fmt6_quaternion(p.point),
            fmt6(p.margin),
            if p.in_domain { "" } else { "  (outside the checked domain)" }
        )?;
    }
    if let Some(e) = &r.equality {
        writeln!(out, "equality: ratio {}, monomial {}, contradiction {}", fmt6(e.ratio), e.is_monomial, e.contradiction)?;
    }
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    let verdict = if r.conclusion_satisfied { "holds" } else { "VIOLATED" };
    writeln!(
        out,
        "conclusion {verdict}: margin {} at {} ({} samples)",
        fmt6(r.conclusion_margin),
        fmt6_quaternion(r.worst_point),
        r.samples
    )?;
    Ok(())
}

fn counterexample_text(out: &mut dyn Write, r: &CounterexampleReport) -> Run<()> {
    writeln!(out, "y = {}", fmt6_quaternion(r.witness))?;
    writeln!(out, "|P'(y)|^2 = {}  expected (7/25)(5+sqrt2) = {}", fmt6(r.p_prime_sq), fmt6(r.expected_p_prime_sq))?;
    writeln!(out, "|Q'(y)|^2 = {}  expected (4/25)(10-3sqrt2) = {}", fmt6(r.q_prime_sq), fmt6(r.expected_q_prime_sq))?;
    writeln!(out, "expansions match: {}", r.expansions_match)?;
    writeln!(out, "min |Q|-|P| over {} points of S3: {}", r.sampled_points, fmt6(r.sampled_margin))?;
    writeln!(out, "{}", if r.reproduced() { "PASS" } else { "FAIL" })?;
    Ok(())
}

/// Runs a verb and returns the exit code it determines.
fn run(verb: Verb, format: Option<Format>, out: &mut dyn Write) -> Run<u8> {
    match verb {
        Verb::Eval { poly, at } => {
            let p = read_poly(&poly.poly)?;
            let x = point(&at)?;
            let value = p.eval(x);
            match format.unwrap_or(Format::Json) {
                Format::Json => json(out, &EvalOutput { poly: p, at: x, value })?,
                Format::Csv => write_csv(out, &[EvalRow { w: value.w, x: value.x, y: value.y, z: value.z }])?,
                Format::Text => writeln!(out, "{}", fmt6_quaternion(value))?,
            }
        }
        Verb::Mul { poly, poly2 } => {
            let p = read_poly(&poly.poly)?.star_mul(&read_poly(&poly2)?);
            write_poly(out, &p, format.unwrap_or(Format::Json))?;
        }
        Verb::Derive { poly } => {
            write_poly(out, &read_poly(&poly.poly)?.derivative(), format.unwrap_or(Format::Json))?;
        }
        Verb::Almansi { poly, at } => {
            let p = read_poly(&poly.poly)?;
            let pair = almansi(&p);
            let at = at
                .map(|s| -> Run<AlmansiAt> {
                    let x = point(&s)?;
                    let (a, b) = (pair.a.eval(x), pair.b.eval(x));
                    Ok(AlmansiAt { x, a, b, reassembled: pair.eval(x), value: p.eval(x) })
                })
                .transpose()?;
            match format.unwrap_or(Format::Json) {
                Format::Json => json(out, &AlmansiOutput { pair, at })?,
                Format::Text => {
                    writeln!(out, "A: {}", coeff_list(&pair.a.coeffs))?;
                    writeln!(out, "B: {}", coeff_list(&pair.b.coeffs))?;
                    if let Some(v) = at {
                        writeln!(out, "A(x) = {}", fmt6_quaternion(v.a))?;
                        writeln!(out, "B(x) = {}", fmt6_quaternion(v.b))?;
                        writeln!(out, "A(x) - conj(x) B(x) = {}", fmt6_quaternion(v.reassembled))?;
                        writeln!(out, "P(x) = {}", fmt6_quaternion(v.value))?;
                    }
                }
                f => return Err(unsupported("almansi", f)),
            }
        }
        Verb::ZonalTable { at, samples, seed, degree } => {
            let mut points = at.iter().map(|s| point(s)).collect::<Run<Vec<_>>>()?;
            let mut g = rng(seed);
            points.extend((0..samples).map(|_| qbernstein::random::random_in_ball(&mut g, 2.0)));
            if points.is_empty() {
                return Err(Failure::Usage("zonal-table needs --at or --samples".into()));
            }
            let rows = qio::zonal_rows(degree, &points);
            match format.unwrap_or(Format::Csv) {
                Format::Csv => write_csv(out, &rows)?,
                Format::Json => json(out, &rows)?,
                Format::Text => {
                    for r in &rows {
                        let x = Quaternion::new(r.x0, r.x1, r.x2, r.x3);
                        writeln!(out, "{}\t{}\t{}", r.k, fmt6_quaternion(x), fmt6(r.value))?;
                    }
                }
            }
        }
        Verb::Norm { poly, grid } => {
            let p = read_poly(&poly.poly)?;
            let r = sup_norm_with(&p, &SupNormOptions { grid: grid.grid, ..Default::default() })?;
            match format.unwrap_or(Format::Json) {
                Format::Json => json(out, &r)?,
                Format::Text => {
                    writeln!(out, "value = {}", fmt6(r.value))?;
                    writeln!(out, "alpha_star = {}", fmt6(r.alpha_star))?;
                    writeln!(out, "argmax = {}", fmt6_quaternion(r.argmax))?;
                }
                f => return Err(unsupported("norm", f)),
            }
        }
        Verb::Profile { poly, grid, alpha } => {
            let p = read_poly(&poly.poly)?;
            let rows = match alpha {
                Some(a) => {
                    let e = qbernstein::slice_extrema(&p, a)?;
                    vec![qbernstein::extremal::ProfileRow { alpha: a, slice_max: e.max, slice_min: e.min }]
                }
                None if grid < 2 => return Err(Failure::Usage("profile needs --grid ≥ 2".into())),
                None => modulus_profile(&p, grid),
            };
            match format.unwrap_or(Format::Csv) {
                Format::Csv => write_csv(out, &rows)?,
                Format::Json => json(out, &rows)?,
                Format::Text => {
                    for r in &rows {
                        writeln!(out, "{}\t{}\t{}", fmt6(r.alpha), fmt6(r.slice_max), fmt6(r.slice_min))?;
                    }
                }
            }
        }
        Verb::Bernstein { poly, grid } => {
            let p = read_poly(&poly.poly)?;
            let r = check_inequality_with(&p, &SupNormOptions { grid: grid.grid, ..Default::default() })?;
            emit_report(out, &r, format, "bernstein")?;
            return Ok(r.exit_code() as u8);
        }
        Verb::Theorem { poly, poly2, at, grid, samples, seed } => {
            let p = read_poly(&poly.poly)?;
            let q = read_poly(&poly2)?;
            let probes = at.iter().map(|s| point(s)).collect::<Run<Vec<_>>>()?;
            let opts = TheoremOptions { grid: grid.grid, global_samples: samples, seed, probes, ..Default::default() };
            let r = check_theorem(&p, &q, &opts)?;
            emit_report(out, &r, format, "theorem")?;
            return Ok(r.exit_code() as u8);
        }
        Verb::Counterexample { samples, seed } => {
            let r = counterexample_report(seed, samples)?;
            match format.unwrap_or(Format::Text) {
                Format::Json => json(out, &r)?,
                Format::Text => counterexample_text(out, &r)?,
                f => return Err(unsupported("counterexample", f)),
            }
            return Ok(if r.reproduced() { 0 } else { 2 });
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct EvalRow {
    w: f64,
    x: f64,
    y: f64,
    z: f64,
}

fn coeff_list(c: &[Quaternion]) -> String {
    c.iter().map(|q| format!("[{}]", fmt6_quaternion(*q))).collect::<Vec<_>>().join(" ")
}

fn emit_report(out: &mut dyn Write, r: &CheckReport, format: Option<Format>, verb: &str) -> Run<()> {
    match format.unwrap_or(Format::Json) {
        Format::Json => json(out, r),
        Format::Text => report_text(out, r),
        f => Err(unsupported(verb, f)),
    }
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::ZeroPolynomial | Error::ConstantPolynomial => EXIT_DATA,
        Error::NumericalNonconvergence { .. } => EXIT_NUMERICAL,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is configured once");
    }
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::from(EXIT_IO);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let code = match run(cli.verb, cli.format, &mut *out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    };
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::from(code)
}
