//! Command-line driver. Each subcommand reads one JSON document, calls one
//! library operation and writes JSON (or CSV / a text table) back.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 malformed JSON,
//! 3 mathematical precondition failure, 4 internal invariant violation.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::arith::{FieldKind, GaussianRational, Polynomial, Rational, Scalar};
use crate::bezout::{bezout_matrix, common_zero_count, identity_suite, Identity, IdentitySample};
use crate::braid::{monodromy_descriptor, DEFAULT_DEPTH};
use crate::error::Error;
use crate::implicit::{boundary_samples, implicitize, quadrature_boundary, RationalTriple};
use crate::json::{self, FromWire};
use crate::structured::{bezout_inverse, hermite_upper_halfplane};
use crate::vessel::{self, kronecker_phi_prime, node_residual, vessel_from_node, vessel_residuals};

pub const DEFAULT_SAMPLES: usize = 512;
pub const DEFAULT_IDENTITY_SAMPLES: usize = 8;
pub const TOL_ENV: &str = "BEZKIT_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "bezkit",
    version,
    about = "Bezout matrices, implicitization and related exact algebra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input JSON file (default: stdin).
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Inline JSON input, instead of --in.
    #[arg(long, global = true, value_name = "TEXT", conflicts_with = "input")]
    json: Option<String>,
    /// Output file (default: stdout).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Scalar field; inferred from the input when absent.
    #[arg(long, global = true, value_enum)]
    field: Option<FieldArg>,
    /// Numerical tolerance (overrides BEZKIT_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Depth cap for the branch recursion.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Number of samples.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Parameter interval.
    #[arg(long, global = true, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    interval: Option<Vec<f64>>,
    /// CSV destination for `quadrature`.
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Qi")]
    Qi,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Bezout matrix of {p, q[, n]}.
    Bezout,
    /// Number of common zeros of {p, q} from the kernel of B(p, q).
    CommonZeros,
    /// Exact inverse of B(p, q) as a Hankel generator.
    Invert,
    /// Upper half-plane test for a polynomial.
    Hermite,
    /// Implicit equation of a rational triple {p0, p1, p2[, n]}.
    Implicitize,
    /// Boundary of the image of the unit disk under q, plus CSV samples.
    Quadrature,
    /// Residuals of a node {a, phi, sigma} or a full vessel bundle.
    VesselCheck,
    /// Vessel from {node, triple[, phi_prime]}.
    VesselBuild,
    /// Twist-count descriptor of a degree-2 plane map {p0, p1, p2}.
    Braid,
    /// CSV samples "t,x1,x2" of a rational triple.
    Sample,
    /// Bezout identity suite on {p, q[, points]}.
    Identities,
}

enum Failure {
    Usage(String),
    Json(serde_json::Error),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Json(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// What a subcommand produced.
struct Output {
    main: String,
    /// Secondary CSV stream (quadrature only).
    csv: Option<String>,
    exit: i32,
}

impl Output {
    fn json(v: Value) -> Self {
        Output {
            main: format!("{v}\n"),
            csv: None,
            exit: 0,
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let display = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let text = e.render().to_string();
            if display {
                let _ = write!(stdout, "{text}");
                return 0;
            }
            let _ = write!(stderr, "{text}");
            return 1;
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => match emit(&cli, &out, stdout) {
            Ok(()) => out.exit,
            Err(msg) => {
                let _ = writeln!(stderr, "error: {msg}");
                1
            }
        },
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Json(e)) => {
            let _ = writeln!(
                stderr,
                "error: malformed JSON at line {} column {}: {e}",
                e.line(),
                e.column()
            );
            2
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", e.name());
            exit_code(&e)
        }
    }
}

/// Exit status for a library error: 4 for internal invariant violations,
/// 3 for everything else.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        4
    } else {
        3
    }
}

fn emit(cli: &Cli, out: &Output, stdout: &mut dyn Write) -> std::result::Result<(), String> {
    let write_file = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
    };
    match &cli.out {
        Some(path) => write_file(path, &out.main)?,
        None => stdout
            .write_all(out.main.as_bytes())
            .map_err(|e| e.to_string())?,
    }
    if let Some(csv) = &out.csv {
        let target = cli.csv.clone().or_else(|| {
            cli.out.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".csv");
                PathBuf::from(s)
            })
        });
        match target {
            Some(path) => write_file(&path, csv)?,
            None => stdout
                .write_all(csv.as_bytes())
                .map_err(|e| e.to_string())?,
        }
    }
    Ok(())
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Outcome<String> {
    if let Some(text) = &cli.json {
        return Ok(text.clone());
    }
    match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(cli: &Cli, stdin: &mut dyn Read) -> Outcome<T> {
    Ok(json::parse(&read_input(cli, stdin)?)?)
}

fn tolerance(cli: &Cli, default: f64) -> Outcome<f64> {
    if let Some(t) = cli.tol {
        return check_tol(t);
    }
    match std::env::var(TOL_ENV) {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) => check_tol(t),
            Err(_) => Err(Failure::Usage(format!("{TOL_ENV}={s:?} is not a number"))),
        },
        Err(_) => Ok(default),
    }
}

fn check_tol(t: f64) -> Outcome<f64> {
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(Failure::Usage(format!(
            "tolerance must be positive, got {t}"
        )))
    }
}

fn interval(cli: &Cli, default: (f64, f64)) -> Outcome<(f64, f64)> {
    match cli.interval.as_deref() {
        None => Ok(default),
        Some([a, b]) if a.is_finite() && b.is_finite() => Ok((*a, *b)),
        Some(_) => Err(Failure::Usage("--interval needs two finite numbers".into())),
    }
}

/// The explicit field, or Q unless some input is over Q[i].
fn field(cli: &Cli, inputs: &[FieldKind]) -> FieldKind {
    match cli.field {
        Some(FieldArg::Q) => FieldKind::Rational,
        Some(FieldArg::Qi) => FieldKind::Gaussian,
        None if inputs.contains(&FieldKind::Gaussian) => FieldKind::Gaussian,
        None => FieldKind::Rational,
    }
}

macro_rules! over_field {
    ($field:expr, $f:ident ( $($arg:expr),* )) => {
        match $field {
            FieldKind::Rational => $f::<Rational>($($arg),*),
            FieldKind::Gaussian => $f::<GaussianRational>($($arg),*),
        }
    };
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome<Output> {
    match cli.command {
        Command::Bezout => {
            let inp: json::PairInput = parse(cli, stdin)?;
            let f = field(cli, &[inp.p.field, inp.q.field]);
            Ok(Output::json(over_field!(f, bezout_cmd(&inp))?))
        }
        Command::CommonZeros => {
            let inp: json::PairInput = parse(cli, stdin)?;
            let f = field(cli, &[inp.p.field, inp.q.field]);
            Ok(Output::json(over_field!(f, common_zeros_cmd(&inp))?))
        }
        Command::Invert => {
            let inp: json::PairInput = parse(cli, stdin)?;
            let f = field(cli, &[inp.p.field, inp.q.field]);
            Ok(Output::json(over_field!(f, invert_cmd(&inp))?))
        }
        Command::Hermite => {
            let inp: json::WirePolynomial = parse(cli, stdin)?;
            if cli.field == Some(FieldArg::Q) && inp.field == FieldKind::Gaussian {
                return Err(Error::FieldMismatch {
                    left: ("Q[i]").into(),
                    right: ("Q").into(),
                }
                .into());
            }
            let report = hermite_upper_halfplane(&inp.to_poly::<GaussianRational>()?)?;
            Ok(Output::json(json!({
                "verdict": report.verdict.label(),
                "minors": report.minors.iter().map(json::rational_value).collect::<Vec<_>>(),
            })))
        }
        Command::Implicitize => {
            let inp: json::TripleInput = parse(cli, stdin)?;
            let f = field(cli, &inp.fields());
            Ok(Output::json(over_field!(f, implicitize_cmd(&inp))?))
        }
        Command::Quadrature => {
            let inp: json::WirePolynomial = parse(cli, stdin)?;
            if cli.field == Some(FieldArg::Q) && inp.field == FieldKind::Gaussian {
                return Err(Error::FieldMismatch {
                    left: ("Q[i]").into(),
                    right: ("Q").into(),
                }
                .into());
            }
            let q = inp.to_poly::<GaussianRational>()?;
            let boundary = quadrature_boundary(&q)?;
            let mut v = json::bivariate_value(&boundary.delta);
            v["removed_monomial"] =
                json!([boundary.removed_monomial.0, boundary.removed_monomial.1]);
            let samples = cli.samples.unwrap_or(DEFAULT_SAMPLES);
            let range = interval(cli, (0.0, std::f64::consts::TAU))?;
            let rows = boundary_samples(&q, samples, range);
            Ok(Output {
                main: format!("{v}\n"),
                csv: Some(csv_rows(&rows)),
                exit: 0,
            })
        }
        Command::VesselCheck => {
            let inp: json::CheckInput = parse(cli, stdin)?;
            let tol = tolerance(cli, vessel::DEFAULT_TOL)?;
            let v = match inp {
                json::CheckInput::Node(n) => {
                    let r = node_residual(&n.to_node()?)?;
                    json!({ "node_residual": r, "tol": tol, "pass": r <= tol })
                }
                json::CheckInput::Vessel(v) => {
                    json::residuals_value(&vessel_residuals(&v.to_vessel()?)?, tol)
                }
            };
            Ok(Output::json(v))
        }
        Command::VesselBuild => {
            let inp: json::BuildInput = parse(cli, stdin)?;
            if cli.field == Some(FieldArg::Qi) {
                return Err(Error::FieldMismatch {
                    left: ("Q[i]").into(),
                    right: ("Q").into(),
                }
                .into());
            }
            let node = inp.node.to_node()?;
            let (p0, p1, p2) = (
                inp.triple.p0.to_poly::<Rational>()?,
                inp.triple.p1.to_poly::<Rational>()?,
                inp.triple.p2.to_poly::<Rational>()?,
            );
            let n = match inp.triple.n {
                Some(n) => n,
                None => RationalTriple::new(p0.clone(), p1.clone(), p2.clone())?.size(),
            };
            let phi_prime = match &inp.phi_prime {
                Some(m) => m.to_cmatrix()?,
                None => kronecker_phi_prime(&node, &p0, n)?,
            };
            let v = vessel_from_node(&node, &p0, &p1, &p2, n, &phi_prime)?;
            Ok(Output::json(json::vessel_value(&v)))
        }
        Command::Braid => {
            let inp: json::MapInput = parse(cli, stdin)?;
            if cli.field == Some(FieldArg::Qi) {
                return Err(Error::FieldMismatch {
                    left: ("Q[i]").into(),
                    right: ("Q").into(),
                }
                .into());
            }
            let depth = cli.depth.unwrap_or(DEFAULT_DEPTH);
            let d = monodromy_descriptor(&inp.to_map()?, depth)?;
            Ok(Output::json(json::descriptor_value(&d)))
        }
        Command::Sample => {
            let inp: json::TripleInput = parse(cli, stdin)?;
            if cli.field == Some(FieldArg::Qi) {
                return Err(Error::FieldMismatch {
                    left: ("Q[i]").into(),
                    right: ("Q").into(),
                }
                .into());
            }
            let [p0, p1, p2] = [&inp.p0, &inp.p1, &inp.p2].map(|p| p.to_poly::<Rational>());
            let triple = RationalTriple::new(p0?, p1?, p2?)?;
            let samples = cli.samples.unwrap_or(DEFAULT_SAMPLES);
            let rows = curve_samples(&triple, samples, interval(cli, (-1.0, 1.0))?);
            Ok(Output {
                main: csv_rows(&rows),
                csv: None,
                exit: 0,
            })
        }
        Command::Identities => {
            let inp: json::IdentitiesInput = parse(cli, stdin)?;
            let f = field(cli, &[inp.p.field, inp.q.field]);
            let samples = cli.samples.unwrap_or(DEFAULT_IDENTITY_SAMPLES);
            over_field!(f, identities_cmd(&inp, samples))
        }
    }
}

fn bezout_cmd<F: FromWire>(inp: &json::PairInput) -> Outcome<Value> {
    let b = bezout_matrix(&inp.p.to_poly::<F>()?, &inp.q.to_poly::<F>()?, inp.n)?;
    Ok(json::matrix_value(b.matrix()))
}

fn common_zeros_cmd<F: FromWire>(inp: &json::PairInput) -> Outcome<Value> {
    let k = common_zero_count(&inp.p.to_poly::<F>()?, &inp.q.to_poly::<F>()?)?;
    Ok(json!({ "common_zeros": k }))
}

fn invert_cmd<F: FromWire>(inp: &json::PairInput) -> Outcome<Value> {
    let h = bezout_inverse(&inp.p.to_poly::<F>()?, &inp.q.to_poly::<F>()?)?;
    Ok(json::hankel_value(&h))
}

fn implicitize_cmd<F: FromWire>(inp: &json::TripleInput) -> Outcome<Value> {
    let [p0, p1, p2] = [&inp.p0, &inp.p1, &inp.p2].map(|p| p.to_poly::<F>());
    let (p0, p1, p2) = (p0?, p1?, p2?);
    let t = match inp.n {
        Some(n) => RationalTriple::with_size(p0, p1, p2, n)?,
        None => RationalTriple::new(p0, p1, p2)?,
    };
    Ok(json::bivariate_value(&implicitize(&t)?))
}

/// Deterministic distinct sample points: `x = k + 1/2`, `y = -(2k + 1)/3`,
/// `w_j = (j + 1)/(k + 1)`.
fn default_samples<F: FromWire>(count: usize, n: usize) -> Vec<IdentitySample<F>> {
    let r = |num: i64, den: i64| F::from_rational(&crate::arith::rat(num, den));
    (0..count as i64)
        .map(|k| IdentitySample {
            x: r(2 * k + 1, 2),
            y: r(-(2 * k + 1), 3),
            w: (0..n as i64).map(|j| r(j + 1, k + 1)).collect(),
        })
        .collect()
}

fn identities_cmd<F: FromWire>(inp: &json::IdentitiesInput, count: usize) -> Outcome<Output> {
    let (p, q) = (inp.p.to_poly::<F>()?, inp.q.to_poly::<F>()?);
    let n = bezout_matrix(&p, &q, None)?.size();
    let samples: Vec<IdentitySample<F>> = match &inp.points {
        None => default_samples(count, n),
        Some(points) => points
            .iter()
            .enumerate()
            .map(|(k, [x, y])| {
                Ok(IdentitySample {
                    x: F::from_wire(x.field, &x.value)?,
                    y: F::from_wire(y.field, &y.value)?,
                    w: (0..n as i64)
                        .map(|j| F::from_rational(&crate::arith::rat(j + 1, k as i64 + 1)))
                        .collect(),
                })
            })
            .collect::<Outcome<_>>()?,
    };
    let report = identity_suite(&p, &q, &samples)?;
    let mut table = String::from("identity        passed  total  status\n");
    for id in Identity::ALL {
        let (ok, total) = report.tally(id);
        let status = if ok == total { "PASS" } else { "FAIL" };
        table.push_str(&format!(
            "{:<15} {ok:>6} {total:>6}  {status}\n",
            id.label()
        ));
    }
    let all = report.all_passed();
    table.push_str(if all {
        "all identities hold\n"
    } else {
        "identity failure\n"
    });
    Ok(Output {
        main: table,
        csv: None,
        exit: if all { 0 } else { 4 },
    })
}

/// Float samples `(t, x1, x2)` of `t ↦ (p1/p0, p2/p0)`, skipping poles.
pub fn curve_samples(
    t: &RationalTriple<Rational>,
    samples: usize,
    interval: (f64, f64),
) -> Vec<(f64, f64, f64)> {
    let to_f = |p: &Polynomial<Rational>| -> Vec<f64> {
        p.coeffs().iter().map(|c| c.to_complex().re).collect()
    };
    let (q0, q1, q2) = (to_f(&t.p0), to_f(&t.p1), to_f(&t.p2));
    let horner = |c: &[f64], s: f64| c.iter().rev().fold(0.0, |acc, a| acc * s + a);
    let (lo, hi) = interval;
    (0..samples)
        .filter_map(|k| {
            let s = if samples <= 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (samples - 1) as f64
            };
            let w = horner(&q0, s);
            (w != 0.0).then(|| (s, horner(&q1, s) / w, horner(&q2, s) / w))
        })
        .filter(|(_, a, b)| a.is_finite() && b.is_finite())
        .collect()
}

/// `t,x1,x2` header plus rows at 17 significant digits.
pub fn csv_rows(rows: &[(f64, f64, f64)]) -> String {
    let mut s = String::from("t,x1,x2\n");
    for (a, b, c) in rows {
        s.push_str(&format!("{a:.16e},{b:.16e},{c:.16e}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut argv = vec!["bezkit"];
        argv.extend_from_slice(args);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const PAIR: &str = r#"{"p":{"field":"Q","coeffs":[["-1","1"],["0","1"],["1","1"]]},
                          "q":{"field":"Q","coeffs":[["-4","1"],["0","1"],["1","1"]]}}"#;

    #[test]
    fn bezout_example() {
        let (code, out, _) = call(&["bezout"], PAIR);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "[[[\"0\",\"1\"],[\"-3\",\"1\"]],[[\"-3\",\"1\"],[\"0\",\"1\"]]]\n"
        );
    }

    #[test]
    fn field_override_promotes() {
        let (code, out, _) = call(&["bezout", "--field", "Qi"], PAIR);
        assert_eq!(code, 0);
        assert!(out.starts_with("[[[\"0\",\"1\",\"0\",\"1\"]"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["bezout"], "{ not json").0, 2);
        let (code, _, err) = call(&["bezout"], "{\n\"p\": 3}");
        assert_eq!(code, 2);
        assert!(err.contains("line 2"), "{err}");
        let zero = r#"{"p":{"field":"Q","coeffs":[]},"q":{"field":"Q","coeffs":[]}}"#;
        let (code, _, err) = call(&["common-zeros"], zero);
        assert_eq!(code, 3);
        assert!(err.contains("UndefinedGcd"), "{err}");
        assert_eq!(call(&["bezout", "--bogus"], PAIR).0, 1);
        assert_eq!(call(&["frobnicate"], PAIR).0, 1);
    }

    #[test]
    fn sample_emits_csv() {
        let triple = r#"{"p0":{"field":"Q","coeffs":[["1","1"]]},"p1":{"field":"Q","coeffs":[["0","1"],["1","1"]]},
                         "p2":{"field":"Q","coeffs":[["0","1"],["0","1"],["1","1"]]}}"#;
        let (code, out, _) = call(
            &["sample", "--samples", "3", "--interval", "-1", "1"],
            triple,
        );
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "t,x1,x2");
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[2],
            "0.0000000000000000e0,0.0000000000000000e0,0.0000000000000000e0"
        );
    }

    #[test]
    fn tolerance_validation() {
        let node = r#"{"a":{"re":[[0]],"im":[[0.5]]},"phi":{"re":[[1]]},"sigma":{"re":[[1]]}}"#;
        let (code, out, _) = call(&["vessel-check", "--tol", "1e-12"], node);
        assert_eq!(code, 0);
        assert!(out.contains("\"pass\":true"));
        assert_eq!(call(&["vessel-check", "--tol", "-1"], node).0, 1);
    }
}
