//! Command-line front end. `run` returns the process exit code:
//! 0 when everything passed, 1 on a failed check or an ill-defined
//! evaluation, 2 on a usage or parse error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::Error;
use crate::gosper::{definite_sum_via_certificate, family_term, gosper_summable, GosperVerdict, HyperTerm};
use crate::hyper::{evaluate, EvalResult, HGParams};
use crate::identities::{resolve_selector, verify_all, IdentityId, IdentityReport, SuiteConfig, Summary};
use crate::poly::{Polynomial, RationalFunction};
use crate::rational::{int, parse_rational, rational_pow, Rational};
use crate::series::hg_series;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hyperexact",
    version,
    about = "Exact hypergeometric evaluation, Gosper summation and identity checks"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Series truncation order.
    #[arg(long, global = true, default_value_t = crate::series::DEFAULT_ORDER)]
    order: usize,
    /// Enclosure width target, as a rational (`1/1000`) or `1e-30`.
    #[arg(long, global = true, default_value = "1e-30")]
    eps: String,
    /// Seed for randomized parameter draws.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// One JSON record per line instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate 2F1(a, b; c; x).
    Eval {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Coefficients of 2F1(a, b; c; x) up to --order.
    Series {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Gosper's algorithm on a term given by its ratio num(n)/den(n) and t(0).
    ///
    /// Polynomials are comma-separated coefficients, constant first. With
    /// --alpha and --k the built-in family term is used instead.
    Gosper {
        #[arg(allow_hyphen_values = true)]
        num: Option<String>,
        #[arg(allow_hyphen_values = true)]
        den: Option<String>,
        #[arg(allow_hyphen_values = true)]
        t0: Option<String>,
        n0: Option<u64>,
        n1: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Verify an identity by id, or `all`.
    Verify {
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        j: Option<u64>,
    },
    /// Closed form on the family a = -j/q - m, k = j + q m.
    Family {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long, default_value_t = 3)]
        m_max: u64,
    },
}

/// Parses `p/q` rational text, or decimal scientific notation like `1e-30`.
pub fn parse_eps(text: &str) -> Result<Rational, Error> {
    if let Ok(r) = parse_rational(text) {
        return Ok(r);
    }
    let (mantissa, exp) = text
        .split_once(['e', 'E'])
        .ok_or_else(|| Error::Parse(format!("bad tolerance `{text}`")))?;
    let exp: i64 = exp
        .parse()
        .map_err(|_| Error::Parse(format!("bad exponent in `{text}`")))?;
    Ok(parse_rational(mantissa)? * rational_pow(&int(10), exp)?)
}

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, err: impl ToString) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {}\n", err.to_string()),
        }
    }
}

fn usage_or_fail(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = dispatch(cli);
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = err.write_all(outcome.stderr.as_bytes());
    outcome.code
}

fn dispatch(cli: Cli) -> Outcome {
    let eps = match parse_eps(&cli.global.eps) {
        Ok(e) if e > int(0) => e,
        Ok(_) => return Outcome::error(EXIT_USAGE, "--eps must be positive"),
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    let g = &cli.global;
    match cli.command {
        Command::Eval { a, b, c, x } => cmd_eval(&[&a, &b, &c, &x], &eps, g.json),
        Command::Series { a, b, c } => cmd_series(&[&a, &b, &c], g.order, g.json),
        Command::Gosper {
            num,
            den,
            t0,
            n0,
            n1,
            alpha,
            k,
        } => cmd_gosper(num, den, t0, n0, n1, alpha, k, g.json),
        Command::Verify {
            id,
            alpha,
            k,
            m_max,
            q,
            j,
        } => {
            let Some(identities) = resolve_selector(&id) else {
                return Outcome::error(EXIT_USAGE, format!("unknown identity `{id}`"));
            };
            let alpha = match alpha.as_deref().map(parse_rational).transpose() {
                Ok(a) => a,
                Err(e) => return Outcome::error(EXIT_USAGE, e),
            };
            let mut cfg = SuiteConfig {
                identities,
                alpha,
                k,
                order: g.order,
                eps,
                seed: g.seed,
                ..SuiteConfig::default()
            };
            if let Some(m) = m_max {
                cfg.m_max = m;
                cfg.family_m_max = m;
            }
            cfg.family_q = q;
            cfg.family_j = j;
            emit_reports(&verify_all(&cfg), g.json)
        }
        Command::Family { q, j, m_max } => {
            let cfg = SuiteConfig {
                identities: vec![IdentityId::Family],
                family_q: Some(q),
                family_j: j,
                family_m_max: m_max,
                seed: g.seed,
                ..SuiteConfig::default()
            };
            emit_reports(&verify_all(&cfg), g.json)
        }
    }
}

fn parse_all(texts: &[&String]) -> Result<Vec<Rational>, Error> {
    texts.iter().map(|t| parse_rational(t)).collect()
}

fn cmd_eval(texts: &[&String; 4], eps: &Rational, json: bool) -> Outcome {
    let v = match parse_all(texts) {
        Ok(v) => v,
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    let params = HGParams::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
    let class = params.classify();
    match evaluate(&params, eps) {
        Ok(result) => {
            let line = if json {
                let value = match &result {
                    EvalResult::Exact(v) => json!(v.to_string()),
                    EvalResult::Enclosure { lo, hi } => json!({ "lo": lo.to_string(), "hi": hi.to_string() }),
                };
                json!({ "classification": class.name(), "value": value }).to_string()
            } else {
                format!("{class}: {result}")
            };
            Outcome::ok(line + "\n")
        }
        Err(e) => Outcome::error(usage_or_fail(&e), e),
    }
}

fn cmd_series(texts: &[&String; 3], order: usize, json: bool) -> Outcome {
    let v = match parse_all(texts) {
        Ok(v) => v,
        Err(e) => return Outcome::error(EXIT_USAGE, e),
    };
    match hg_series(&v[0], &v[1], &v[2], order) {
        Ok(s) => {
            let line = if json {
                serde_json::Value::Array(s.coeffs().iter().map(|c| json!(c.to_string())).collect()).to_string()
            } else {
                s.to_string()
            };
            Outcome::ok(line + "\n")
        }
        Err(e) => Outcome::error(usage_or_fail(&e), e),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gosper(
    num: Option<String>,
    den: Option<String>,
    t0: Option<String>,
    n0: Option<u64>,
    n1: Option<u64>,
    alpha: Option<String>,
    k: Option<u64>,
    json: bool,
) -> Outcome {
    let built = match (alpha, k) {
        (Some(alpha), Some(k)) => {
            if num.is_some() {
                return Outcome::error(EXIT_USAGE, "give either a ratio or --alpha/--k, not both");
            }
            parse_rational(&alpha)
                .and_then(|a| family_term(&a, k))
                .map(|t| (t, 0, k.saturating_sub(1)))
        }
        (None, None) => match (num, den, t0, n0, n1) {
            (Some(num), Some(den), Some(t0), Some(n0), Some(n1)) => (|| {
                let ratio = RationalFunction::new(Polynomial::parse(&num)?, Polynomial::parse(&den)?)?;
                Ok((HyperTerm::new(ratio, parse_rational(&t0)?), n0, n1))
            })(),
            _ => Err(Error::Parse("expected NUM DEN T0 N0 N1".into())),
        },
        _ => Err(Error::Parse("--alpha and --k go together".into())),
    };
    let (term, n0, n1) = match built {
        Ok(b) => b,
        Err(e) => return Outcome::error(usage_or_fail(&e), e),
    };
    let verdict = match gosper_summable(&term) {
        Ok(v) => v,
        Err(e) => return Outcome::error(EXIT_FAIL, e),
    };
    let GosperVerdict::Summable(cert) = verdict else {
        let text = if json {
            json!({ "summable": false }).to_string()
        } else {
            "not Gosper-summable".into()
        };
        return Outcome::ok(text + "\n");
    };
    match definite_sum_via_certificate(&term, n0, n1) {
        Ok(sum) => {
            let text = if json {
                json!({
                    "summable": true,
                    "a": cert.normal_form.a.to_string(),
                    "b": cert.normal_form.b.to_string(),
                    "c": cert.normal_form.c.to_string(),
                    "x": cert.xpoly.to_string(),
                    "certificate": cert.certificate.to_string(),
                    "n0": n0,
                    "n1": n1,
                    "sum": sum.to_string(),
                })
                .to_string()
            } else {
                format!("{cert}\nsum[{n0}..{n1}] = {sum}")
            };
            Outcome::ok(text + "\n")
        }
        Err(e) => Outcome::error(EXIT_FAIL, e),
    }
}

fn emit_reports(reports: &[IdentityReport], json: bool) -> Outcome {
    let mut stdout = String::new();
    for r in reports {
        stdout.push_str(&if json { r.to_json_line() } else { r.to_text_line() });
        stdout.push('\n');
    }
    let summary = Summary::of(reports);
    let tally = format!("{}/{} passed\n", summary.passed, summary.total);
    let (stdout, stderr) = if json {
        (stdout, tally)
    } else {
        (stdout + &tally, String::new())
    };
    let code = if summary.all_passed() { EXIT_OK } else { EXIT_FAIL };
    Outcome { code, stdout, stderr }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("hyperexact").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eps_parsing() {
        assert_eq!(parse_eps("1/1000").unwrap(), frac(1, 1000));
        assert_eq!(parse_eps("1e-3").unwrap(), frac(1, 1000));
        assert_eq!(parse_eps("25e1").unwrap(), int(250));
        assert!(parse_eps("tiny").is_err());
    }

    #[test]
    fn eval_commands() {
        let (code, out, _) = run_str(&["eval", "-1/2", "-1", "-2", "4/3"]);
        assert_eq!((code, out.as_str()), (0, "extended-terminating: 2/3\n"));
        let (code, out, _) = run_str(&["eval", "7/3", "0", "5", "9/2"]);
        assert_eq!(code, 0);
        assert!(out.ends_with(": 1\n"));
        let (code, _, err) = run_str(&["eval", "1/2", "1/2", "3/2", "1"]);
        assert_eq!(code, 1);
        assert!(err.contains("ill-defined"), "{err}");
        assert_eq!(run_str(&["eval", "1/0", "1", "1", "0"]).0, 2);
        assert_eq!(run_str(&["eval", "1", "1"]).0, 2);
    }

    #[test]
    fn gosper_commands() {
        let (code, out, _) = run_str(&["gosper", "1", "2", "1", "0", "9"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("sum[0..9] = 1023/512\n"), "{out}");
        let (code, out, _) = run_str(&["gosper", "--alpha", "1", "--k", "2"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("= 4/3\n"), "{out}");
        let (code, out, _) = run_str(&["gosper", "1,1", "2,1", "1", "0", "5"]);
        assert_eq!((code, out.as_str()), (0, "not Gosper-summable\n"));
    }

    #[test]
    fn verify_commands() {
        let (code, out, _) = run_str(&["verify", "case1", "--m-max", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 33);
        let (code, out, _) = run_str(&["--json", "verify", "gosper2", "--alpha", "1", "--k", "2"]);
        assert_eq!(code, 0);
        let r = IdentityReport::from_json_line(out.trim()).unwrap();
        assert_eq!(r.lhs, crate::identities::Side::Exact(frac(4, 3)));
        assert_eq!(run_str(&["verify", "nosuch"]).0, 2);
        assert_eq!(run_str(&["verify", "gosper2", "--bogus"]).0, 2);
    }
}
