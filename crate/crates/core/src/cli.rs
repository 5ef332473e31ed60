//! The `ratdec` command line.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::convex::{
    apply_map_to_function, convex_decompose_with, find_reduction_map, lattice_size, newton_polygon,
    support, MonomialAffineMap,
};
use crate::decompose::{
    check_hypothesis_h, decompose_with, prepare, DecomposeOptions, Decomposition, FactorOracle,
    Status, VariableShift, DEFAULT_SHIFT_RETRIES,
};
use crate::derivation::JacobianDerivation;
use crate::expr::{format_polynomial, format_univariate, parse_polynomial, parse_var_list};
use crate::factor::{factor_with_oracle, Factorization};
use crate::linalg::VectorQ;
use crate::poly::{compose_uni, format_rational, MultiPoly, RationalFunction, UniPoly};
use crate::{Error, Result};

pub const SEED_ENV: &str = "RATDEC_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Decompose f = u(h)
    Decompose,
    /// Check the genericity hypothesis on the last variable
    CheckH,
    /// Choose the homography making both sides squarefree
    GoodHomography,
    /// Factor numerator and denominator
    Factor,
    /// Cofactors of the irreducible factors (or of --of) for the derivation of f
    Cofactor,
    /// Monomial map reducing the dense size of a bivariate input
    ConvexMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Decompose multivariate rational functions over Q.
#[derive(Debug, Parser)]
#[command(name = "ratdec", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Ordered variable names, comma separated; the last one is the generic direction
    #[arg(long)]
    pub vars: String,
    /// Numerator expression, or @FILE
    #[arg(long)]
    pub num: String,
    /// Denominator expression, or @FILE
    #[arg(long, default_value = "1")]
    pub den: String,
    /// Reduce the dense size with a monomial map first (two variables)
    #[arg(long)]
    pub convex: bool,
    #[arg(long, default_value_t = DEFAULT_SHIFT_RETRIES)]
    pub shift_retries: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Irreducible factors of the numerator side, one expression per line
    #[arg(long)]
    pub factors_num: Option<String>,
    /// Irreducible factors of the denominator side, one expression per line
    #[arg(long)]
    pub factors_den: Option<String>,
    /// Polynomial whose cofactor is requested (cofactor command)
    #[arg(long)]
    pub of: Option<String>,
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisFailure(_)
        | Error::InsufficientCandidates
        | Error::NoGoodSpecialization(_) => 2,
        Error::BasisNotBoolean
        | Error::AmbiguousSolution(_)
        | Error::VerificationFailed
        | Error::NoSolution
        | Error::TooManyModularFactors { .. } => 3,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "Syntax",
        Error::UnknownVariable { .. } => "UnknownVariable",
        Error::BadExponent { .. } => "BadExponent",
        Error::Io(_) => "Io",
        Error::HypothesisFailure(_) => "HypothesisFailure",
        Error::InsufficientCandidates => "InsufficientCandidates",
        Error::NoGoodSpecialization(_) => "NoGoodSpecialization",
        Error::BasisNotBoolean => "BasisNotBoolean",
        Error::AmbiguousSolution(_) => "AmbiguousSolution",
        Error::VerificationFailed => "VerificationFailed",
        Error::NoSolution => "NoSolution",
        Error::MissingOracle(_) => "MissingOracle",
        Error::UnverifiedFactors(_) => "UnverifiedFactors",
        Error::WrongVariableCount { .. } => "WrongVariableCount",
        Error::ZeroDenominator => "ZeroDenominator",
        Error::TooManyModularFactors { .. } => "TooManyModularFactors",
        Error::NotDarboux => "NotDarboux",
        _ => "Error",
    }
}

/// Parses `args` (including the program name) and runs the command.
/// `seed` is the value of the seed environment variable, if set.
pub fn run_from<I, T>(args: I, seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, seed),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: &Cli, seed: Option<&str>) -> Outcome {
    let start = Instant::now();
    match execute(cli, seed) {
        Ok(mut report) => {
            let ms = start.elapsed().as_secs_f64() * 1000.0;
            report.json["timing_ms"] = json!(ms);
            let stdout = match cli.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&report.json).expect("serializable")
                ),
                Format::Text => format!("{}timing_ms: {ms:.3}\n", report.text),
            };
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            let stdout = match cli.format {
                Format::Json => {
                    let v = json!({
                        "status": "error",
                        "error": error_kind(&e),
                        "message": e.to_string(),
                        "verification": false,
                        "timing_ms": start.elapsed().as_secs_f64() * 1000.0,
                    });
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("serializable")
                    )
                }
                Format::Text => String::new(),
            };
            Outcome {
                code,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

struct Report {
    json: Value,
    text: String,
}

struct Input {
    vars: Vec<String>,
    f: RationalFunction,
    num: MultiPoly,
    den: MultiPoly,
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn read_factor_file(path: &str, vars: &[String]) -> Result<Vec<MultiPoly>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_polynomial(l, vars))
        .collect()
}

fn input(cli: &Cli) -> Result<Input> {
    let vars = parse_var_list(&cli.vars)?;
    let num = parse_polynomial(read_arg(&cli.num)?.trim(), &vars)?;
    let den = parse_polynomial(read_arg(&cli.den)?.trim(), &vars)?;
    let f = RationalFunction::new(num.clone(), den.clone())?;
    Ok(Input { vars, f, num, den })
}

fn oracle(cli: &Cli, vars: &[String]) -> Result<Option<FactorOracle>> {
    if cli.factors_num.is_none() && cli.factors_den.is_none() {
        return Ok(None);
    }
    let side = |p: &Option<String>| {
        p.as_deref()
            .map_or(Ok(Vec::new()), |p| read_factor_file(p, vars))
    };
    Ok(Some(FactorOracle {
        num: side(&cli.factors_num)?,
        den: side(&cli.factors_den)?,
    }))
}

fn options(cli: &Cli, seed: Option<&str>, vars: &[String]) -> Result<DecomposeOptions> {
    let seed = match seed {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Io(format!("{SEED_ENV} must be an unsigned integer, got `{s}`")))?,
        None => 0,
    };
    Ok(DecomposeOptions {
        max_shift_retries: cli.shift_retries,
        seed,
        oracle: oracle(cli, vars)?,
    })
}

fn execute(cli: &Cli, seed: Option<&str>) -> Result<Report> {
    let inp = input(cli)?;
    let opts = options(cli, seed, &inp.vars)?;
    match cli.command {
        Command::Decompose => cmd_decompose(cli, &inp, &opts),
        Command::CheckH => cmd_check_h(&inp),
        Command::GoodHomography => cmd_good_homography(&inp, &opts),
        Command::Factor => cmd_factor(&inp, &opts),
        Command::Cofactor => cmd_cofactor(cli, &inp, &opts),
        Command::ConvexMap => cmd_convex_map(&inp),
    }
}

fn coeff_list(p: &UniPoly) -> Value {
    json!(p.coeffs().iter().map(format_rational).collect::<Vec<_>>())
}

fn vector(v: &VectorQ) -> Value {
    json!(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn shift_json(s: &Option<VariableShift>) -> Value {
    match s {
        Some(s) if !s.is_identity() => json!({ "linear": s.linear, "offset": s.offset }),
        _ => Value::Null,
    }
}

fn map_json(m: &MonomialAffineMap) -> Value {
    json!({ "matrix": m.matrix, "translation": [m.translation.0, m.translation.1] })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Composite => "composite",
        Status::NonComposite => "non-composite",
    }
}

fn cmd_decompose(cli: &Cli, inp: &Input, opts: &DecomposeOptions) -> Result<Report> {
    let v = &inp.vars;
    let (d, map): (Decomposition, Option<MonomialAffineMap>) = if cli.convex {
        let c = convex_decompose_with(&inp.f, opts)?;
        (c.decomposition, Some(c.map))
    } else {
        (decompose_with(&inp.f, opts)?, None)
    };
    let verification = compose_uni(&d.u, &d.h)? == inp.f;
    if d.status == Status::Composite && !verification {
        return Err(Error::VerificationFailed);
    }
    let p = |q: &MultiPoly| format_polynomial(q, v);
    let certificate = d.certificate.as_ref().map_or(Value::Null, |c| {
        json!({
            "lambda_a": format_rational(&c.lambda_a),
            "lambda_b": format_rational(&c.lambda_b),
            "basis_num": c.basis_num.iter().map(vector).collect::<Vec<_>>(),
            "basis_den": c.basis_den.iter().map(vector).collect::<Vec<_>>(),
            "v_num": vector(&c.v_num),
            "v_den": vector(&c.v_den),
            "factors_num": c.factors_num.iter().map(p).collect::<Vec<_>>(),
            "factors_den": c.factors_den.iter().map(p).collect::<Vec<_>>(),
            "shift": shift_json(&c.hypothesis.shift_applied),
        })
    });
    let mut json = json!({
        "command": "decompose",
        "status": status_name(d.status),
        "vars": v,
        "u": {
            "num": coeff_list(d.u.num()),
            "den": coeff_list(d.u.den()),
            "expr": { "num": format_univariate(d.u.num(), "T"), "den": format_univariate(d.u.den(), "T") },
        },
        "h": { "num": p(d.h.num()), "den": p(d.h.den()) },
        "deg_u": d.u.degree(),
        "deg_h": d.h.degree(),
        "certificate": certificate,
        "verification": verification,
    });
    if let Some(m) = &map {
        json["map"] = map_json(m);
    }
    let mut text = String::new();
    writeln!(text, "status: {}", status_name(d.status)).unwrap();
    writeln!(
        text,
        "u(T) = ({}) / ({})",
        format_univariate(d.u.num(), "T"),
        format_univariate(d.u.den(), "T")
    )
    .unwrap();
    writeln!(text, "h = ({}) / ({})", p(d.h.num()), p(d.h.den())).unwrap();
    writeln!(text, "deg u = {}, deg h = {}", d.u.degree(), d.h.degree()).unwrap();
    if let Some(c) = &d.certificate {
        writeln!(
            text,
            "lambda_a = {}, lambda_b = {}",
            format_rational(&c.lambda_a),
            format_rational(&c.lambda_b)
        )
        .unwrap();
        let rows = |b: &[VectorQ]| {
            b.iter()
                .map(|r| format!("{:?}", r.iter().map(format_rational).collect::<Vec<_>>()))
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(text, "basis_num: {}", rows(&c.basis_num)).unwrap();
        writeln!(text, "basis_den: {}", rows(&c.basis_den)).unwrap();
    }
    if let Some(m) = &map {
        writeln!(
            text,
            "map: matrix {:?}, translation {:?}",
            m.matrix, m.translation
        )
        .unwrap();
    }
    writeln!(text, "verification: {verification}").unwrap();
    Ok(Report { json, text })
}

fn cmd_check_h(inp: &Input) -> Result<Report> {
    if inp.f.nvars() < 2 {
        return Err(Error::WrongVariableCount {
            expected: 2,
            found: inp.f.nvars(),
        });
    }
    let rep = check_hypothesis_h(&inp.f);
    let r = format_univariate(&rep.resultant_r, "L");
    let status = if rep.satisfied {
        "satisfied"
    } else {
        "not-satisfied"
    };
    let json = json!({
        "command": "check-h",
        "status": status,
        "degree_condition": rep.degree_condition,
        "resultant": { "expr": r, "coeffs": coeff_list(&rep.resultant_r) },
        "verification": true,
    });
    let text = format!(
        "status: {status}\ndegree_condition: {}\nR(L) = {r}\n",
        rep.degree_condition
    );
    Ok(Report { json, text })
}

fn cmd_good_homography(inp: &Input, opts: &DecomposeOptions) -> Result<Report> {
    let prep = prepare(&inp.f, opts)?;
    let g = &prep.homography;
    let verification = compose_uni(&g.homography.to_uni(), &inp.f)? == prep.transformed;
    let p = |q: &MultiPoly| format_polynomial(q, &inp.vars);
    let json = json!({
        "command": "good-homography",
        "status": "ok",
        "lambda_a": format_rational(&g.lambda_a),
        "lambda_b": format_rational(&g.lambda_b),
        "a_point": format_rational(&g.a_point),
        "b_point": format_rational(&g.b_point),
        "shift": shift_json(&prep.shift),
        "F": { "num": p(prep.transformed.num()), "den": p(prep.transformed.den()) },
        "verification": verification,
    });
    let text = format!(
        "lambda_a = {}\nlambda_b = {}\nF = ({}) / ({})\nverification: {verification}\n",
        format_rational(&g.lambda_a),
        format_rational(&g.lambda_b),
        p(prep.transformed.num()),
        p(prep.transformed.den())
    );
    Ok(Report { json, text })
}

fn factorization_json(fac: &Factorization, vars: &[String]) -> Value {
    json!({
        "unit": format_rational(&fac.unit),
        "factors": fac.factors.iter().map(|(p, e)| json!({ "expr": format_polynomial(p, vars), "multiplicity": e })).collect::<Vec<_>>(),
    })
}

fn factorization_text(fac: &Factorization, vars: &[String]) -> String {
    let mut s = format_rational(&fac.unit);
    for (p, e) in &fac.factors {
        write!(s, " * ({})", format_polynomial(p, vars)).unwrap();
        if *e > 1 {
            write!(s, "^{e}").unwrap();
        }
    }
    s
}

fn cmd_factor(inp: &Input, opts: &DecomposeOptions) -> Result<Report> {
    let o = opts.oracle.as_ref();
    let fnum = factor_with_oracle(&inp.num, o.map(|o| o.num.as_slice()))?;
    let fden = factor_with_oracle(&inp.den, o.map(|o| o.den.as_slice()))?;
    let verification = fnum.expand() == inp.num && fden.expand() == inp.den;
    let json = json!({
        "command": "factor",
        "status": "ok",
        "num": factorization_json(&fnum, &inp.vars),
        "den": factorization_json(&fden, &inp.vars),
        "verification": verification,
    });
    let text = format!(
        "num = {}\nden = {}\nverification: {verification}\n",
        factorization_text(&fnum, &inp.vars),
        factorization_text(&fden, &inp.vars)
    );
    Ok(Report { json, text })
}

fn cmd_cofactor(cli: &Cli, inp: &Input, opts: &DecomposeOptions) -> Result<Report> {
    let d = JacobianDerivation::new(&inp.f)?;
    let targets: Vec<MultiPoly> = match &cli.of {
        Some(e) => vec![parse_polynomial(read_arg(e)?.trim(), &inp.vars)?],
        None => {
            let o = opts.oracle.as_ref();
            let mut t =
                factor_with_oracle(inp.f.num(), o.map(|o| o.num.as_slice()))?.irreducibles();
            t.extend(factor_with_oracle(inp.f.den(), o.map(|o| o.den.as_slice()))?.irreducibles());
            t
        }
    };
    let p = |q: &MultiPoly| format_polynomial(q, &inp.vars);
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut verification = true;
    for t in &targets {
        let g = d.cofactor(t)?;
        let image = d.apply(t)?;
        verification &= image.iter().zip(&g.components).all(|(a, c)| *a == t * c);
        let comps: Vec<String> = g.components.iter().map(p).collect();
        writeln!(text, "cofactor of {}: [{}]", p(t), comps.join(", ")).unwrap();
        entries.push(json!({ "poly": p(t), "cofactor": comps }));
    }
    writeln!(text, "verification: {verification}").unwrap();
    let json = json!({ "command": "cofactor", "status": "ok", "cofactors": entries, "verification": verification });
    Ok(Report { json, text })
}

fn cmd_convex_map(inp: &Input) -> Result<Report> {
    let s = support(&inp.num)?.union(&support(&inp.den)?);
    let map = find_reduction_map(&s)?;
    let image = map.apply_support(&s);
    let g = apply_map_to_function(&map, &inp.f)?;
    let verification = apply_map_to_function(&map.inverse(), &g)? == inp.f;
    let size = lattice_size(&newton_polygon(&s)?);
    let p = |q: &MultiPoly| format_polynomial(q, &inp.vars);
    let json = json!({
        "command": "convex-map",
        "status": "ok",
        "map": map_json(&map),
        "lattice_size": size,
        "dense_size_before": s.dense_size(),
        "dense_size_after": image.dense_size(),
        "transformed": { "num": p(g.num()), "den": p(g.den()) },
        "verification": verification,
    });
    let text = format!(
        "map: matrix {:?}, translation {:?}\nlattice_size: {size}\ndense size: {} -> {}\ntransformed = ({}) / ({})\nverification: {verification}\n",
        map.matrix,
        map.translation,
        s.dense_size(),
        image.dense_size(),
        p(g.num()),
        p(g.den())
    );
    Ok(Report { json, text })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut v = vec!["ratdec"];
        v.extend_from_slice(args);
        run_from(v, None)
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::HypothesisFailure(5)), 2);
        assert_eq!(exit_code(&Error::BasisNotBoolean), 3);
        assert_eq!(exit_code(&Error::AmbiguousSolution(2)), 3);
        assert_eq!(
            exit_code(&Error::Syntax {
                pos: 0,
                msg: String::new()
            }),
            1
        );
    }

    #[test]
    fn malformed_expression() {
        let out = run_args(&[
            "decompose",
            "--vars",
            "X,Y",
            "--num",
            "X +* Y",
            "--den",
            "1",
            "--format",
            "json",
        ]);
        assert_eq!(out.code, 1);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"], "Syntax");
        assert_eq!(v["verification"], false);
        assert!(out.stderr.contains("position 3"));
    }

    #[test]
    fn usage_errors_are_input_errors() {
        assert_eq!(
            run_args(&["explode", "--vars", "X,Y", "--num", "X"]).code,
            1
        );
        assert_eq!(run_args(&["decompose", "--num", "X"]).code, 1);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn bad_seed() {
        let out = run_from(
            [
                "ratdec",
                "decompose",
                "--vars",
                "X,Y",
                "--num",
                "X^2+Y",
                "--den",
                "Y",
            ],
            Some("abc"),
        );
        assert_eq!(out.code, 1);
    }

    #[test]
    fn decompose_square() {
        let out = run_args(&[
            "decompose",
            "--vars",
            "X,Y",
            "--num",
            "(X+Y)^2",
            "--den",
            "(X-Y+1)^2",
            "--format",
            "json",
        ]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["status"], "composite");
        assert_eq!(v["deg_u"], 2);
        assert_eq!(v["verification"], true);
        assert!(v["timing_ms"].is_number());
    }
}
