//! Command line front end.
//!
//! Everything except process exit lives here so it can be driven from tests
//! and fuzz targets: [`parse_args`] turns argv into a [`CliRequest`], [`run`]
//! executes it and [`main_with_args`] combines both into an [`Outcome`].
//!
//! Exit codes: 0 success, 1 identity does not hold (`verify`), 2 malformed
//! input, 3 domain error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{parse_rational, ParseRationalError, Polynomial, Rational};
use crate::error::Error;
use crate::linalg::{
    build_coefficient_matrix, build_dilation_matrix, build_vandermonde_matrix, Matrix,
};
use crate::refinement::{compute_mask, verify_refinement, Mask, RefinementProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_VERIFIED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("empty list literal")]
    EmptyList,
    #[error("list item {index}: {source}")]
    Rational {
        index: usize,
        #[source]
        source: ParseRationalError,
    },
    #[error("list item {index}: invalid integer {text:?}")]
    Integer { index: usize, text: String },
}

/// Parses a comma separated list of rational literals, e.g. `1,0,-3/4`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, LiteralError> {
    split_list(s)?
        .enumerate()
        .map(|(index, item)| {
            parse_rational(item).map_err(|source| LiteralError::Rational { index, source })
        })
        .collect()
}

/// Parses a comma separated list of `i64` literals, e.g. `-2,0,5`.
pub fn parse_integer_list(s: &str) -> Result<Vec<i64>, LiteralError> {
    split_list(s)?
        .enumerate()
        .map(|(index, item)| {
            let well_formed = {
                let digits = item.strip_prefix('-').unwrap_or(item);
                !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
            };
            well_formed
                .then(|| item.parse::<i64>().ok())
                .flatten()
                .ok_or_else(|| LiteralError::Integer {
                    index,
                    text: item.to_owned(),
                })
        })
        .collect()
}

fn split_list(s: &str) -> Result<impl Iterator<Item = &str>, LiteralError> {
    if s.trim().is_empty() {
        return Err(LiteralError::EmptyList);
    }
    Ok(s.split(',').map(str::trim))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    Verify,
    Matrices,
}

/// A fully parsed invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliRequest {
    pub command: Command,
    /// Ascending coefficients, `p_0` first.
    pub poly: Vec<Rational>,
    pub shifts: Vec<i64>,
    pub dilation: Rational,
    pub mask: Option<Vec<Rational>>,
    pub format: Format,
}

#[derive(Debug, Parser)]
#[command(
    name = "polyrefine",
    version,
    about = "Exact refinement masks of polynomials: p(x) = sum_i m_i p(a x - l_i)"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Compute the mask for the given shifts and dilation, then verify it.
    Solve(ProblemArgs),
    /// Check whether a given mask satisfies the refinement identity.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Mask entries aligned with --shifts, e.g. 5/8,-3/4,3/8
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_list)]
        mask: ::std::vec::Vec<Rational>,
    },
    /// Print D_a, C, V, their product and the coefficient vector p.
    Matrices(ProblemArgs),
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Coefficients in ASCENDING order (constant term first), e.g. 1,0,1 for x^2 + 1
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_list)]
    poly: ::std::vec::Vec<Rational>,
    /// Distinct integer shifts, one more than the degree, e.g. 0,1,2
    #[arg(long, allow_hyphen_values = true, value_parser = parse_integer_list)]
    shifts: ::std::vec::Vec<i64>,
    /// Nonzero rational dilation, e.g. 2 or -1/3
    #[arg(long, allow_hyphen_values = true, value_parser = parse_dilation)]
    dilation: Rational,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_dilation(s: &str) -> Result<Rational, ParseRationalError> {
    parse_rational(s.trim())
}

/// Parses argv (including the program name) into a request.
pub fn parse_args<I, T>(args: I) -> Result<CliRequest, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let (command, problem, mask) = match cli.command {
        CliCommand::Solve(p) => (Command::Solve, p, None),
        CliCommand::Verify { problem, mask } => (Command::Verify, problem, Some(mask)),
        CliCommand::Matrices(p) => (Command::Matrices, p, None),
    };
    Ok(CliRequest {
        command,
        poly: problem.poly,
        shifts: problem.shifts,
        dilation: problem.dilation,
        mask,
        format: problem.format,
    })
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn domain(err: Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: EXIT_DOMAIN,
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match parse_args(args) {
        Ok(request) => run(&request),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_PARSE,
                }
            } else {
                // --help / --version
                Outcome::ok(rendered, EXIT_OK)
            }
        }
    }
}

pub fn run(request: &CliRequest) -> Outcome {
    let result = match request.command {
        Command::Solve => cmd_solve(request),
        Command::Verify => cmd_verify(request),
        Command::Matrices => cmd_matrices(request),
    };
    result.unwrap_or_else(Outcome::domain)
}

fn problem_of(request: &CliRequest) -> Result<RefinementProblem, Error> {
    let poly = Polynomial::from_coeffs(request.poly.clone())?;
    RefinementProblem::new(poly, request.shifts.clone(), request.dilation.clone())
}

pub fn cmd_solve(request: &CliRequest) -> Result<Outcome, Error> {
    let problem = problem_of(request)?;
    let mask = compute_mask(&problem)?;
    let verified = verify_refinement(problem.poly(), problem.shifts(), problem.dilation(), &mask)?;
    let out = match request.format {
        Format::Text => {
            let mut s = text_header(&problem);
            s.push_str(&text_mask_table(problem.shifts(), &mask));
            let _ = writeln!(s, "mask sum: {}", mask.sum());
            let _ = writeln!(s, "verified: {verified}");
            s
        }
        Format::Json => {
            let mut v = json_header(&problem);
            v["mask"] = json_rationals(mask.entries());
            v["mask_sum"] = Value::String(mask.sum().to_string());
            v["verified"] = Value::Bool(verified);
            format!("{v}\n")
        }
        Format::Latex => {
            let mut s = latex_mask(problem.shifts(), &mask);
            let _ = writeln!(
                s,
                "\\[ \\sum_i \\alpha_{{\\ell_i}} = {} \\]",
                latex_rational(&mask.sum())
            );
            let _ = writeln!(s, "% verified: {verified}");
            s
        }
    };
    Ok(Outcome::ok(out, EXIT_OK))
}

pub fn cmd_verify(request: &CliRequest) -> Result<Outcome, Error> {
    let problem = problem_of(request)?;
    let entries = request.mask.clone().unwrap_or_default();
    if entries.len() != problem.shifts().len() {
        return Err(Error::ShiftCountMismatch {
            expected: problem.shifts().len(),
            actual: entries.len(),
        });
    }
    let mask = Mask::new(entries);
    let verified = verify_refinement(problem.poly(), problem.shifts(), problem.dilation(), &mask)?;
    let out = match request.format {
        Format::Text => {
            let mut s = text_header(&problem);
            s.push_str(&text_mask_table(problem.shifts(), &mask));
            let _ = writeln!(s, "verified: {verified}");
            s
        }
        Format::Json => {
            let mut v = json_header(&problem);
            v["mask"] = json_rationals(mask.entries());
            v["verified"] = Value::Bool(verified);
            format!("{v}\n")
        }
        Format::Latex => {
            let mut s = latex_mask(problem.shifts(), &mask);
            let _ = writeln!(s, "% verified: {verified}");
            s
        }
    };
    let code = if verified { EXIT_OK } else { EXIT_NOT_VERIFIED };
    Ok(Outcome::ok(out, code))
}

pub fn cmd_matrices(request: &CliRequest) -> Result<Outcome, Error> {
    let problem = problem_of(request)?;
    let d = build_dilation_matrix(problem.dilation(), problem.degree())?;
    let c = build_coefficient_matrix(problem.poly());
    let v = build_vandermonde_matrix(problem.shifts())?;
    let dcv = d.mul(&c)?.mul(&v)?;
    let p = problem.poly().coeffs();
    let named = [("D", &d), ("C", &c), ("V", &v), ("DCV", &dcv)];

    let out = match request.format {
        Format::Text => {
            let mut s = String::new();
            for (name, m) in named {
                let _ = writeln!(s, "{name}:");
                s.push_str(&text_matrix(m));
            }
            let _ = writeln!(s, "p: {}", join(p.iter().map(ToString::to_string), ", "));
            s
        }
        Format::Json => {
            let mut v = json!({});
            for (name, m) in named {
                v[name] = json_matrix(m);
            }
            v["p"] = json_rationals(p);
            format!("{v}\n")
        }
        Format::Latex => {
            let mut s = String::new();
            for (name, m) in [("D_a", &d), ("C", &c), ("V", &v), ("D_a C V", &dcv)] {
                let _ = writeln!(s, "{name} = {}", latex_matrix(m));
            }
            let col = join(p.iter().map(latex_rational), " \\\\ ");
            let _ = writeln!(s, "p = \\begin{{pmatrix}} {col} \\end{{pmatrix}}");
            s
        }
    };
    Ok(Outcome::ok(out, EXIT_OK))
}

fn join<I: Iterator<Item = String>>(items: I, sep: &str) -> String {
    items.collect::<Vec<_>>().join(sep)
}

fn text_header(problem: &RefinementProblem) -> String {
    format!(
        "polynomial: {}\ndegree: {}\ndilation: {}\n",
        problem.poly(),
        problem.degree(),
        problem.dilation()
    )
}

fn text_mask_table(shifts: &[i64], mask: &Mask) -> String {
    let width = shifts
        .iter()
        .map(|s| s.to_string().len())
        .max()
        .unwrap_or(0)
        .max("shift".len());
    let mut s = format!("{:<width$}  mask\n", "shift");
    for (l, m) in shifts.iter().zip(mask.entries()) {
        let _ = writeln!(s, "{l:<width$}  {m}");
    }
    s
}

fn text_matrix(m: &Matrix) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for row in cells {
        let line = join(row.iter().map(|c| format!("{c:>width$}")), "  ");
        let _ = writeln!(s, "  [ {line} ]");
    }
    s
}

fn json_header(problem: &RefinementProblem) -> Value {
    json!({
        "degree": problem.degree(),
        "dilation": problem.dilation().to_string(),
        "shifts": problem.shifts(),
    })
}

fn json_rationals(values: &[Rational]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|v| Value::String(v.to_string()))
            .collect(),
    )
}

fn json_matrix(m: &Matrix) -> Value {
    Value::Array(m.rows().map(json_rationals).collect())
}

/// `\frac{n}{d}` with the sign pulled out front, or a bare integer.
pub fn latex_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

fn latex_matrix(m: &Matrix) -> String {
    let body = join(
        m.rows().map(|r| join(r.iter().map(latex_rational), " & ")),
        " \\\\ ",
    );
    format!("\\begin{{pmatrix}} {body} \\end{{pmatrix}}")
}

fn latex_mask(shifts: &[i64], mask: &Mask) -> String {
    let terms = join(
        shifts
            .iter()
            .zip(mask.entries())
            .map(|(l, m)| format!("\\alpha_{{{l}}} = {}", latex_rational(m))),
        ",\\quad ",
    );
    format!("\\[ {terms} \\]\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<&str> {
        std::iter::once("polyrefine")
            .chain(s.split_whitespace())
            .collect()
    }

    #[test]
    fn list_literals() {
        assert_eq!(parse_integer_list("-2,0, 5").unwrap(), vec![-2, 0, 5]);
        assert_eq!(parse_integer_list(""), Err(LiteralError::EmptyList));
        assert!(parse_integer_list("1,,2").is_err());
        assert!(parse_integer_list("1,+2").is_err());
        assert!(parse_integer_list("99999999999999999999").is_err());
        assert_eq!(
            parse_rational_list("1,-3/4,10/4").unwrap(),
            vec![
                Rational::from_integer(1.into()),
                Rational::new((-3).into(), 4.into()),
                Rational::new(5.into(), 2.into())
            ]
        );
        assert!(matches!(
            parse_rational_list("1,2/0"),
            Err(LiteralError::Rational { index: 1, .. })
        ));
    }

    #[test]
    fn negative_values_are_not_flags() {
        let r = parse_args(args("solve --poly -1,2 --shifts -3,4 --dilation -1/2")).unwrap();
        assert_eq!(r.shifts, vec![-3, 4]);
        assert_eq!(r.dilation, Rational::new((-1).into(), 2.into()));
        assert_eq!(r.format, Format::Text);
    }

    #[test]
    fn solve_json_is_bit_exact() {
        let out = main_with_args(args(
            "solve --poly 1,0,1 --shifts 0,1,2 --dilation 2 --format json",
        ));
        assert_eq!(out.code, 0);
        assert_eq!(
            out.stdout.trim_end(),
            r#"{"degree":2,"dilation":"2","shifts":[0,1,2],"mask":["5/8","-3/4","3/8"],"mask_sum":"1/4","verified":true}"#
        );
    }

    #[test]
    fn solve_constant_text() {
        let out = main_with_args(args("solve --poly 7 --shifts 5 --dilation -3"));
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("5      1\n"), "{}", out.stdout);
        assert!(out.stdout.contains("verified: true"));
    }

    #[test]
    fn solve_domain_error() {
        let out = main_with_args(args("solve --poly 1,0,1 --shifts 0,0,1 --dilation 2"));
        assert_eq!(out.code, EXIT_DOMAIN);
        assert!(out.stderr.contains("DuplicateShifts"));
    }

    #[test]
    fn verify_exit_codes() {
        let ok = main_with_args(args(
            "verify --poly 1,0,1 --shifts 0,1,2 --dilation 2 --mask 5/8,-3/4,3/8",
        ));
        assert_eq!(ok.code, EXIT_OK);
        assert!(ok.stdout.contains("verified: true"));
        let bad = main_with_args(args(
            "verify --poly 1,0,1 --shifts 0,1,2 --dilation 2 --mask 1,0,0",
        ));
        assert_eq!(bad.code, EXIT_NOT_VERIFIED);
        assert!(bad.stdout.contains("verified: false"));
        let short = main_with_args(args(
            "verify --poly 1,0,1 --shifts 0,1,2 --dilation 2 --mask 1,0",
        ));
        assert_eq!(short.code, EXIT_DOMAIN);
        assert!(short.stderr.contains("ShiftCountMismatch"));
    }

    #[test]
    fn parse_failures_exit_two() {
        for bad in [
            "solve --poly 1,x --shifts 0,1 --dilation 2",
            "solve --poly 1,1 --shifts 0,1",
            "solve --poly 1,1 --shifts 0,1 --dilation 2/0",
            "solve --poly 1,1 --shifts 0,1 --dilation 2 --mask 1,1",
            "verify --poly 1,1 --shifts 0,1 --dilation 2",
            "solve --poly 1,1 --shifts 0,1 --dilation 2 --format yaml",
            "frobnicate",
        ] {
            let out = main_with_args(args(bad));
            assert_eq!(out.code, EXIT_PARSE, "{bad}: {out:?}");
            assert!(!out.stderr.is_empty());
        }
    }

    #[test]
    fn matrices_formats() {
        let json = main_with_args(args(
            "matrices --poly 1,0,1 --shifts 0,1,2 --dilation 2 --format json",
        ));
        let v: Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(
            v["D"],
            json!([["1", "0", "0"], ["0", "2", "0"], ["0", "0", "4"]])
        );
        assert_eq!(
            v["C"],
            json!([["1", "0", "1"], ["0", "2", "0"], ["0", "0", "1"]])
        );
        assert_eq!(
            v["V"],
            json!([["0", "1", "4"], ["0", "-1", "-2"], ["1", "1", "1"]])
        );
        assert_eq!(v["p"], json!(["1", "0", "1"]));

        let latex = main_with_args(args(
            "matrices --poly 3/2 --shifts 4 --dilation 5 --format latex",
        ));
        assert_eq!(latex.code, 0);
        assert!(latex
            .stdout
            .contains("D_a = \\begin{pmatrix} 1 \\end{pmatrix}"));
        assert!(latex
            .stdout
            .contains("C = \\begin{pmatrix} \\frac{3}{2} \\end{pmatrix}"));
        assert!(latex
            .stdout
            .contains("V = \\begin{pmatrix} 1 \\end{pmatrix}"));
    }

    #[test]
    fn latex_mask_uses_frac() {
        let out = main_with_args(args(
            "solve --poly 1,0,1 --shifts 0,1,2 --dilation 2 --format latex",
        ));
        assert!(
            out.stdout.contains("\\alpha_{1} = -\\frac{3}{4}"),
            "{}",
            out.stdout
        );
        assert!(out.stdout.contains("% verified: true"));
    }
}
