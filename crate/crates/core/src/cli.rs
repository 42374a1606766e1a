//! The `mzstar` command line.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bell::{bell_plain, bell_tail};
use crate::cyclotomic::{t7_plain, t7_tail};
use crate::error::Error;
use crate::eval::{
    muneta_zeta_star_31, yamamoto_zstar, zeta_2_pow, zeta_31_pow, zeta_star_2_pow,
    zeta_star_31_pow, zeta_star_31_pow_2, zstar, zstar0, zstar1,
};
use crate::exact::{bernoulli, precompute_bernoulli, PiValue, Rational};
use crate::index::{classify, parse_index, render_index, Family, Index};
use crate::oracle::{mzsv_num, pi_value_num, NumericConfig};
use crate::series::{sin_norm, sinh_norm, tanh_cot, zeta_star_2_series, zeta_star_4_series, GradedSeries};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "mzstar", version, about = "Exact multiple zeta star values of {3,1}-block indices")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    pub json: bool,

    /// Working precision in bits for decimal output and numerics
    #[arg(long, global = true, env = "MZSTAR_PREC_BITS", default_value_t = NumericConfig::DEFAULT_PRECISION)]
    pub prec: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact value of an index in one of the closed-form families
    Eval(EvalArgs),
    /// Sum formula Z*, Z*_0 or Z*_1 over insertions of twos into {3,1}^d
    Sum(SumArgs),
    /// Compare independent formulas case by case
    Crosscheck(CrosscheckArgs),
    /// Time the linear and quadratic evaluations of zeta*({3,1}^d)
    Bench(BenchArgs),
    /// Truncated nested sum, for any convergent index
    Oracle(OracleArgs),
    /// Table of Bernoulli numbers
    Bernoulli(BernoulliArgs),
    /// Coefficients of a generating series
    Series(SeriesArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Index such as "{3,1}^2" or "{2}^3"
    #[arg(allow_hyphen_values = true)]
    pub index: String,
    /// Non-star value (strict inequalities)
    #[arg(long)]
    pub nostar: bool,
    /// Force one evaluation path
    #[arg(long, value_enum)]
    pub formula: Option<Formula>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// linear Bernoulli sum
    T4,
    /// quadratic Bernoulli convolution
    Muneta,
    /// cyclotomic field
    T7,
    /// modified Bell polynomial
    Bell,
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[arg(value_enum)]
    pub kind: SumKind,
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumKind {
    #[value(name = "Z")]
    Z,
    #[value(name = "Z0")]
    Z0,
    #[value(name = "Z1")]
    Z1,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub max_d: Option<usize>,
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub max_m: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// linear vs quadratic zeta*({3,1}^d)
    T4Muneta,
    /// Z* closed form vs composition sum
    T11Yamamoto,
    /// cyclotomic vs Bell polynomial block values
    T7Bell,
    /// Z* = Z*_0 + Z*_1
    Eq08,
    /// zeta*({3,1}^d) = sum_j zeta({3,1}^j) zeta*({4}^{d-j})
    In4,
    /// tanh*cot series coefficients vs closed forms
    T3Series,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub formula: BenchFormula,
    /// Depths to time; may be repeated
    #[arg(long, required = true, num_args = 1..)]
    pub d: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchFormula {
    T4,
    Muneta,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(allow_hyphen_values = true)]
    pub index: String,
    #[arg(long)]
    pub nostar: bool,
    /// Outer summation cutoff
    #[arg(long = "K", short = 'K', default_value_t = 10_000)]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct BernoulliArgs {
    #[arg(long)]
    pub max: usize,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(value_enum)]
    pub name: SeriesName,
    /// Highest power of z
    #[arg(long)]
    pub terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Tanhcot,
    Zstar2,
    Zstar4,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("no closed form for \"{index}\" (family {family}{detail}); try `mzstar oracle`")]
    Unsupported {
        index: String,
        family: &'static str,
        detail: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Parse { .. }) | CliError::Core(Error::InvalidArgument(_)) => 2,
            CliError::Unsupported { .. } => 3,
            CliError::Core(Error::Numeric(_)) | CliError::Core(Error::Divergent(_)) => 5,
            CliError::Core(_) => 1,
        }
    }
}

/// What a command prints, and the status it exits with.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

/// One exact result with its decimal rendering.
#[derive(Debug, Clone, Serialize)]
pub struct ExactOutput {
    pub index: String,
    pub family: String,
    pub pi_power: u32,
    pub numerator: String,
    pub denominator: String,
    pub decimal: String,
    pub formula: String,
}

impl ExactOutput {
    pub fn new(index: String, family: &str, value: &PiValue, formula: &str, prec: u32) -> Self {
        ExactOutput {
            index,
            family: family.to_string(),
            pi_power: value.pi_power(),
            numerator: value.coeff().numer().to_string(),
            denominator: value.coeff().denom().to_string(),
            decimal: decimal(value, prec),
            formula: formula.to_string(),
        }
    }

    fn human(&self, star: bool) -> String {
        let name = if star { "zeta*" } else { "zeta" };
        let pi = match self.pi_power {
            0 => String::new(),
            1 => " * pi".to_string(),
            p => format!(" * pi^{p}"),
        };
        let coeff = if self.denominator == "1" {
            self.numerator.clone()
        } else {
            format!("{}/{}", self.numerator, self.denominator)
        };
        format!(
            "{name}({}) = {coeff}{pi}\n  ~ {}\n  family {}, formula {}\n",
            self.index, self.decimal, self.family, self.formula
        )
    }
}

/// Digits after the point that `prec` bits support with some margin.
pub fn decimal_digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize - 2
}

pub fn decimal(value: &PiValue, prec: u32) -> String {
    pi_value_num(value, prec).to_decimal(decimal_digits(prec))
}

fn with_schema(mut v: Value) -> String {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn rational_json(q: &Rational) -> Value {
    json!({"numerator": q.numer().to_string(), "denominator": q.denom().to_string()})
}

fn unsupported(ix: &Index, family: Family, detail: impl Into<String>) -> CliError {
    CliError::Unsupported {
        index: render_index(ix),
        family: family.name(),
        detail: detail.into(),
    }
}

/// Evaluates a classified index; returns the value and the formula used.
pub fn evaluate_family(
    family: Family,
    star: bool,
    formula: Option<Formula>,
) -> std::result::Result<(PiValue, &'static str), Option<String>> {
    use Family::*;
    use Formula::*;
    let t7 = |r: crate::error::Result<PiValue>| r.map_err(|e| Some(e.to_string()));
    if !star {
        return match (family, formula) {
            (Twos { d }, None) => Ok((zeta_2_pow(d), "twos")),
            (ThreeOne { d }, None) => Ok((zeta_31_pow(d), "three-one")),
            _ => Err(None),
        };
    }
    match (family, formula) {
        (Twos { d }, None) => Ok((zeta_star_2_pow(d), "twos")),
        (ThreeOne { d }, None | Some(T4)) => Ok((zeta_star_31_pow(d), "t4")),
        (ThreeOne { d }, Some(Muneta)) => Ok((muneta_zeta_star_31(d), "muneta")),
        (ThreeOne { d }, Some(T7)) => Ok((t7(t7_plain(d, 0))?, "t7")),
        (ThreeOne { d }, Some(Bell)) => Ok((t7(bell_plain(d, 1))?, "bell")),
        (ThreeOneTwo { d }, None | Some(T4)) => Ok((zeta_star_31_pow_2(d), "t4")),
        (ThreeOneTwo { d }, Some(T7)) => Ok((t7(t7_tail(d, 0))?, "t7")),
        (ThreeOneTwo { d }, Some(Bell)) => Ok((t7(bell_tail(d, 1))?, "bell")),
        (Block { m, d }, None | Some(Bell)) => Ok((t7(bell_plain(d, m + 1))?, "bell")),
        (Block { m, d }, Some(T7)) => Ok((t7(t7_plain(d, m))?, "t7")),
        (BlockTail { m, d }, None | Some(Bell)) => Ok((t7(bell_tail(d, m + 1))?, "bell")),
        (BlockTail { m, d }, Some(T7)) => Ok((t7(t7_tail(d, m))?, "t7")),
        _ => Err(None),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, cli.json, cli.prec),
        Command::Sum(a) => cmd_sum(a, cli.json, cli.prec),
        Command::Crosscheck(a) => cmd_crosscheck(a, cli.json),
        Command::Bench(a) => cmd_bench(a, cli.json),
        Command::Oracle(a) => cmd_oracle(a, cli.json, cli.prec),
        Command::Bernoulli(a) => Ok(cmd_bernoulli(a, cli.json)),
        Command::Series(a) => cmd_series(a, cli.json),
    }
}

fn cmd_eval(a: &EvalArgs, json_out: bool, prec: u32) -> Result<Outcome, CliError> {
    let ix = parse_index(&a.index)?;
    if !ix.is_convergent() {
        return Err(Error::Divergent(render_index(&ix)).into());
    }
    let family = classify(&ix);
    let star = !a.nostar;
    let (value, formula) = evaluate_family(family, star, a.formula).map_err(|e| {
        let detail = match (e, a.formula) {
            (Some(msg), _) => format!(": {msg}"),
            (None, Some(f)) => format!(", formula {f:?} does not apply"),
            (None, None) if !star => ", no non-star closed form".into(),
            (None, None) => String::new(),
        };
        unsupported(&ix, family, detail)
    })?;
    let out = ExactOutput::new(render_index(&ix), family.name(), &value, formula, prec);
    Ok(Outcome::ok(if json_out {
        with_schema(serde_json::to_value(&out).expect("serializable"))
    } else {
        out.human(star)
    }))
}

fn cmd_sum(a: &SumArgs, json_out: bool, prec: u32) -> Result<Outcome, CliError> {
    let mut notice = None;
    let (value, formula) = if a.d == 0 {
        if a.kind != SumKind::Z {
            return Err(Error::InvalidArgument(
                "Z*_0 and Z*_1 need d >= 1".into(),
            )
            .into());
        }
        notice = Some("d = 0: Z*(0, n) is zeta*({2}^n), evaluated by the twos formula");
        (zeta_star_2_pow(a.n), "twos")
    } else {
        match a.kind {
            SumKind::Z => (zstar(a.d, a.n)?, "sum-z"),
            SumKind::Z0 => (zstar0(a.d, a.n)?, "sum-z0"),
            SumKind::Z1 => (zstar1(a.d, a.n)?, "sum-z1"),
        }
    };
    let label = format!("{:?}*(d={}, n={})", a.kind, a.d, a.n);
    let out = ExactOutput::new(label, "sum", &value, formula, prec);
    Ok(Outcome::ok(if json_out {
        let mut v = serde_json::to_value(&out).expect("serializable");
        if let Some(n) = notice {
            v["notice"] = json!(n);
        }
        with_schema(v)
    } else {
        let mut s = String::new();
        if let Some(n) = notice {
            writeln!(s, "note: {n}").unwrap();
        }
        let pi = match out.pi_power {
            0 => String::new(),
            p => format!(" * pi^{p}"),
        };
        writeln!(s, "{} = {}/{}{pi}\n  ~ {}", out.index, out.numerator, out.denominator, out.decimal).unwrap();
        s
    }))
}

/// One compared pair.
#[derive(Debug, Clone, Serialize)]
pub struct CheckCase {
    pub case: String,
    pub equal: bool,
    pub left: String,
    pub right: String,
}

fn case(label: String, left: &PiValue, right: &PiValue) -> CheckCase {
    CheckCase {
        case: label,
        equal: left == right,
        left: left.to_string(),
        right: right.to_string(),
    }
}

fn bound(value: Option<usize>, default: usize, limit: usize, name: &str) -> crate::error::Result<usize> {
    let v = value.unwrap_or(default);
    if v > limit {
        Err(Error::InvalidArgument(format!("--{name} {v} exceeds the limit {limit}")))
    } else {
        Ok(v)
    }
}

/// Runs one crosscheck suite and returns every case in a fixed order.
pub fn crosscheck_cases(
    suite: Suite,
    max_d: Option<usize>,
    max_n: Option<usize>,
    max_m: Option<usize>,
) -> crate::error::Result<Vec<CheckCase>> {
    let mut cases = Vec::new();
    match suite {
        Suite::T4Muneta => {
            for d in 0..=bound(max_d, 50, 400, "max-d")? {
                cases.push(case(format!("d={d}"), &zeta_star_31_pow(d), &muneta_zeta_star_31(d)));
            }
        }
        Suite::T11Yamamoto => {
            for d in 1..=bound(max_d, 8, 12, "max-d")? {
                for n in 0..=bound(max_n, 8, 12, "max-n")? {
                    cases.push(case(format!("d={d} n={n}"), &zstar(d, n)?, &yamamoto_zstar(d, n)));
                }
            }
        }
        Suite::Eq08 => {
            for d in 1..=bound(max_d, 5, 20, "max-d")? {
                for n in 0..=bound(max_n, 5, 20, "max-n")? {
                    let split = zstar0(d, n)?.checked_add(&zstar1(d, n)?)?;
                    cases.push(case(format!("d={d} n={n}"), &zstar(d, n)?, &split));
                }
            }
        }
        Suite::T7Bell => {
            for m in 0..=bound(max_m, 3, 5, "max-m")? {
                for d in 1..=bound(max_d, 3, 5, "max-d")? {
                    cases.push(case(format!("plain m={m} d={d}"), &t7_plain(d, m)?, &bell_plain(d, m + 1)?));
                    cases.push(case(format!("tail m={m} d={d}"), &t7_tail(d, m)?, &bell_tail(d, m + 1)?));
                }
            }
        }
        Suite::In4 => {
            let max_d = bound(max_d, 8, 30, "max-d")?;
            for d in 0..=max_d {
                let mut sum = PiValue::zero(4 * d as u32);
                for j in 0..=d {
                    let term = zeta_31_pow(j).mul(&zeta_star_4_series(d - j, 4 * max_d)?);
                    sum = sum.checked_add(&term)?;
                }
                cases.push(case(format!("d={d}"), &zeta_star_31_pow(d), &sum));
            }
        }
        Suite::T3Series => {
            let max_d = bound(max_d, 9, 40, "max-d")?;
            let product = tanh_cot(4 * max_d + 2);
            for d in 0..=max_d {
                let q = product.term(4 * d)?;
                cases.push(case(format!("z^{}", 4 * d), &zeta_star_31_pow(d), &q));
                let q = product.term(4 * d + 2)?.neg();
                cases.push(case(format!("z^{}", 4 * d + 2), &zeta_star_31_pow_2(d), &q));
            }
        }
    }
    Ok(cases)
}

fn cmd_crosscheck(a: &CrosscheckArgs, json_out: bool) -> Result<Outcome, CliError> {
    let cases = crosscheck_cases(a.suite, a.max_d, a.max_n, a.max_m)?;
    let failures = cases.iter().filter(|c| !c.equal).count();
    let name = a.suite.to_possible_value().expect("named").get_name().to_string();
    let output = if json_out {
        with_schema(json!({
            "suite": name,
            "cases": cases,
            "failures": failures,
        }))
    } else {
        let mut s = String::new();
        for c in &cases {
            let verdict = if c.equal { "equal" } else { "MISMATCH" };
            writeln!(s, "{name} {}: {verdict}", c.case).unwrap();
            if !c.equal {
                writeln!(s, "  left  {}\n  right {}", c.left, c.right).unwrap();
            }
        }
        writeln!(s, "{name}: {} cases, {failures} mismatches", cases.len()).unwrap();
        s
    };
    Ok(Outcome {
        output,
        code: if failures == 0 { 0 } else { 4 },
    })
}

/// Wall-clock statistics for one formula at one depth, in seconds.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub formula: BenchFormula,
    pub d: usize,
    pub mean: f64,
    pub stddev: f64,
}

/// Times `repetitions` evaluations after tabulating the Bernoulli numbers
/// the formula reads.
pub fn bench_formula(formula: BenchFormula, d: usize, repetitions: usize) -> BenchRow {
    precompute_bernoulli(4 * d + 2);
    let samples: Vec<f64> = (0..repetitions.max(1))
        .map(|_| {
            let start = Instant::now();
            let v = match formula {
                BenchFormula::T4 => zeta_star_31_pow(d),
                BenchFormula::Muneta => muneta_zeta_star_31(d),
            };
            let elapsed = start.elapsed().as_secs_f64();
            std::hint::black_box(v);
            elapsed
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / samples.len() as f64;
    BenchRow {
        formula,
        d,
        mean,
        stddev: var.sqrt(),
    }
}

fn cmd_bench(a: &BenchArgs, json_out: bool) -> Result<Outcome, CliError> {
    let rows: Vec<BenchRow> = a.d.iter().map(|&d| bench_formula(a.formula, d, a.repetitions)).collect();
    Ok(Outcome::ok(if json_out {
        with_schema(json!({"repetitions": a.repetitions.max(1), "rows": rows}))
    } else {
        let mut s = String::new();
        let mut prev: Option<&BenchRow> = None;
        for r in &rows {
            write!(s, "{:?} d={:<6} mean {:.6}s  stddev {:.6}s", r.formula, r.d, r.mean, r.stddev).unwrap();
            if let Some(p) = prev {
                write!(s, "  ratio {:.2}", r.mean / p.mean).unwrap();
            }
            s.push('\n');
            prev = Some(r);
        }
        s
    }))
}

fn cmd_oracle(a: &OracleArgs, json_out: bool, prec: u32) -> Result<Outcome, CliError> {
    let ix = parse_index(&a.index)?;
    let cfg = NumericConfig::new(prec, a.k)?;
    let r = mzsv_num(&ix, !a.nostar, &cfg)?;
    let digits = decimal_digits(prec);
    let value = r.value.to_decimal(digits);
    let tail = format!("{:e}", r.tail_estimate.to_f64());
    Ok(Outcome::ok(if json_out {
        with_schema(json!({
            "index": render_index(&ix),
            "star": !a.nostar,
            "K": a.k,
            "precision_bits": prec,
            "value": value,
            "tail_estimate": tail,
            "tail_estimate_kind": "heuristic",
        }))
    } else {
        let name = if a.nostar { "zeta" } else { "zeta*" };
        format!(
            "{name}({}) ~ {value}\n  +/- {tail} (heuristic tail, K = {})\n",
            render_index(&ix),
            a.k
        )
    }))
}

fn cmd_bernoulli(a: &BernoulliArgs, json_out: bool) -> Outcome {
    precompute_bernoulli(a.max);
    let rows: Vec<(usize, Rational)> = (0..=a.max).map(|k| (k, bernoulli(k))).collect();
    Outcome::ok(if json_out {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(k, b)| {
                let mut v = rational_json(b);
                v["k"] = json!(k);
                v
            })
            .collect();
        with_schema(json!({"rows": rows}))
    } else {
        rows.iter().map(|(k, b)| format!("B_{k} = {b}\n")).collect()
    })
}

fn cmd_series(a: &SeriesArgs, json_out: bool) -> Result<Outcome, CliError> {
    let t = a.terms;
    let s: GradedSeries = match a.name {
        SeriesName::Tanhcot => tanh_cot(t),
        SeriesName::Zstar2 => zeta_star_2_series(t),
        SeriesName::Zstar4 => sin_norm(t).mul(&sinh_norm(t)).reciprocal()?,
    };
    let name = a.name.to_possible_value().expect("named").get_name().to_string();
    Ok(Outcome::ok(if json_out {
        let coeffs: Vec<Value> = s
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, q)| {
                let mut v = rational_json(q);
                v["n"] = json!(n);
                v
            })
            .collect();
        with_schema(json!({
            "series": name,
            "grading": "coefficient n multiplies z^n * pi^n",
            "truncation": s.truncation(),
            "coefficients": coeffs,
        }))
    } else {
        let mut out = format!("{name}: q_n with z^n pi^n, through z^{}\n", s.truncation());
        for (n, q) in s.coeffs().iter().enumerate() {
            writeln!(out, "q_{n} = {q}").unwrap();
        }
        out
    }))
}

/// JSON or plain error report.
pub fn render_error(err: &CliError, json_out: bool) -> String {
    if json_out {
        with_schema(json!({"error": err.to_string(), "code": err.exit_code()}))
    } else {
        format!("error: {err}\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Outcome, CliError> {
        let mut full = vec!["mzstar"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).unwrap())
    }

    fn json_of(args: &[&str]) -> Value {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        serde_json::from_str(&run_args(&full).unwrap().output).unwrap()
    }

    #[test]
    fn eval_three_one() {
        let v = json_of(&["eval", "{3,1}^1"]);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["pi_power"], 4);
        assert_eq!(v["numerator"], "1");
        assert_eq!(v["denominator"], "72");
        assert_eq!(v["formula"], "t4");
        assert!(v["decimal"].as_str().unwrap().starts_with("1.3529040"));
    }

    #[test]
    fn eval_empty_and_twos() {
        let v = json_of(&["eval", ""]);
        assert_eq!((v["numerator"].as_str(), v["pi_power"].as_u64()), (Some("1"), Some(0)));
        let v = json_of(&["eval", "{2}^3"]);
        // (2^6 - 2) B_6 / 6! = 31/15120
        assert_eq!((v["numerator"].as_str(), v["denominator"].as_str()), (Some("31"), Some("15120")));
        let v = json_of(&["eval", "--nostar", "{2}^3"]);
        assert_eq!(v["denominator"], "5040");
    }

    #[test]
    fn formula_variants_agree() {
        for (ix, formulas) in [
            ("{3,1}^3", &["t4", "muneta", "t7", "bell"][..]),
            ("{3,1}^2,2", &["t4", "t7", "bell"][..]),
            ("{2,3,2,1}^2", &["t7", "bell"][..]),
            ("{2,2,3,2,2,1}^1,{2}^3", &["t7", "bell"][..]),
        ] {
            let values: Vec<Value> = formulas
                .iter()
                .map(|f| json_of(&["eval", ix, "--formula", f]))
                .collect();
            for v in &values {
                assert_eq!(v["numerator"], values[0]["numerator"], "{ix}");
                assert_eq!(v["denominator"], values[0]["denominator"], "{ix}");
            }
        }
    }

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(run_args(&["eval", "3,,1"]).unwrap_err().exit_code(), 2);
        assert_eq!(run_args(&["eval", "4"]).unwrap_err().exit_code(), 3);
        assert_eq!(run_args(&["eval", "{3,1}^2,2", "--formula", "muneta"]).unwrap_err().exit_code(), 3);
        assert_eq!(run_args(&["eval", "--nostar", "2,3,2,1"]).unwrap_err().exit_code(), 3);
        assert_eq!(run_args(&["oracle", "1,2"]).unwrap_err().exit_code(), 5);
        assert_eq!(run_args(&["oracle", "2", "--K", "5"]).unwrap_err().exit_code(), 5);
        assert_eq!(run_args(&["--prec", "16", "oracle", "2"]).unwrap_err().exit_code(), 5);
        assert_eq!(run_args(&["crosscheck", "t4-muneta", "--max-d", "100000"]).unwrap_err().exit_code(), 2);
        let e = run_args(&["--json", "eval", "4"]).unwrap_err();
        let v: Value = serde_json::from_str(&render_error(&e, true)).unwrap();
        assert_eq!((v["schema"].as_u64(), v["code"].as_i64()), (Some(1), Some(3)));
    }

    #[test]
    fn sums() {
        let v = json_of(&["sum", "Z", "--d", "1", "--n", "0"]);
        assert_eq!((v["numerator"].as_str(), v["denominator"].as_str()), (Some("1"), Some("72")));
        let v = json_of(&["sum", "Z1", "--d", "1", "--n", "0"]);
        assert_eq!(v["numerator"], "0");
        let v = json_of(&["sum", "Z0", "--d", "1", "--n", "0"]);
        assert_eq!(v["denominator"], "72");
        let v = json_of(&["sum", "Z", "--d", "0", "--n", "1"]);
        assert_eq!(v["denominator"], "6");
        assert!(v["notice"].is_string());
        assert_eq!(run_args(&["sum", "Z1", "--d", "0", "--n", "1"]).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn crosscheck_suites_pass() {
        for (suite, extra) in [
            ("t4-muneta", &["--max-d", "20"][..]),
            ("eq08", &["--max-d", "3", "--max-n", "3"][..]),
            ("t11-yamamoto", &["--max-d", "2", "--max-n", "3"][..]),
            ("t7-bell", &["--max-m", "1", "--max-d", "2"][..]),
            ("in4", &["--max-d", "4"][..]),
            ("t3-series", &["--max-d", "4"][..]),
        ] {
            let mut args = vec!["--json", "crosscheck", suite];
            args.extend_from_slice(extra);
            let out = run_args(&args).unwrap();
            assert_eq!(out.code, 0, "{suite}");
            let v: Value = serde_json::from_str(&out.output).unwrap();
            assert_eq!(v["failures"], 0);
            assert!(!v["cases"].as_array().unwrap().is_empty());
        }
    }

    #[test]
    fn tables() {
        let v = json_of(&["bernoulli", "--max", "12"]);
        let last = v["rows"].as_array().unwrap().last().unwrap().clone();
        assert_eq!((last["k"].as_u64(), last["numerator"].as_str()), (Some(12), Some("-691")));
        assert_eq!(last["denominator"], "2730");
        let v = json_of(&["series", "tanhcot", "--terms", "10"]);
        let c = v["coefficients"].as_array().unwrap();
        assert_eq!(c.len(), 11);
        assert_eq!((c[4]["numerator"].as_str(), c[4]["denominator"].as_str()), (Some("1"), Some("72")));
        assert!(c.iter().skip(1).step_by(2).all(|x| x["numerator"] == "0"));
    }

    #[test]
    fn oracle_output() {
        let v = json_of(&["oracle", "-2", "--K", "1000"]);
        let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
        assert!((x + 0.822467).abs() < 1e-6, "{x}");
        assert_eq!(v["tail_estimate_kind"], "heuristic");
        let v = json_of(&["--prec", "128", "oracle", "2", "--K", "100000"]);
        let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
        let tail: f64 = v["tail_estimate"].as_str().unwrap().parse().unwrap();
        assert!((x - std::f64::consts::PI.powi(2) / 6.0).abs() <= tail, "{x} {tail}");
    }

    #[test]
    fn bench_rows() {
        let v = json_of(&["bench", "t4", "--d", "4", "8", "--repetitions", "2"]);
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1]["formula"], "t4");
        assert!(rows[1]["mean"].as_f64().unwrap() >= 0.0);
    }
}
