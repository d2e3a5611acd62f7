//! Command-line front end. `dispatch` returns the exit code and the JSON
//! document to print; the binary only forwards them.

use std::collections::BTreeMap;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Limits;
use crate::density::{den_matrix, den_zn, zeta_value, DensityValue};
use crate::error::{Error, Result};
use crate::ffalg::make_field;
use crate::genff::{brute_count, count_gen_power_formula, generates, two_generators_ext, AlgebraShape, Block, GenTuple};
use crate::genz::{construct_m2z16, generates_z, zero_one_census, ZMat};
use crate::json;
use crate::polys::{f_poly, h_poly, is_irreducible_mod_p, min_generators, phi_poly, psi_poly, Irreducibility};
use crate::sampler::{exhaustive_poly_density, local_zero_count, mc_density, BoxModel, SHARD_SIZE};

/// Environment variable overriding the enumeration cap.
pub const ENUM_CAP_VAR: &str = "ALGEN_ENUM_CAP";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "algen", version, about = "Generation of matrix algebras over finite fields and the integers")]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Count generating k-tuples of M_n(F_{q^s})^m over F_q.
    Count(CountArgs),
    /// Zeta values and densities with certified error bounds.
    Density(DensityArgs),
    /// Monte-Carlo density of generating k-tuples of M_n(Z)^m.
    Mc(McArgs),
    /// Exact box density and local zero counts of a polynomial system.
    Exhaustive(ExhaustiveArgs),
    /// Decide generation of a JSON tuple over Z, or over F_q with --q.
    Checkgen(CheckgenArgs),
    /// Explicit generating tuples.
    Construct(ConstructArgs),
    /// The {0,1}-matrix pair census.
    Census(CensusArgs),
    /// Minimal number of generators of M_n(Z)^m.
    Thresholds(ThresholdsArgs),
    /// Polynomial families f, h, phi, psi.
    Poly(PolyArgs),
}

#[derive(Args, Debug, Serialize)]
struct CountArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, conflicts_with_all = ["formula", "verify"])]
    brute: bool,
    #[arg(long, conflicts_with = "verify")]
    formula: bool,
    /// Run both paths and fail on disagreement.
    #[arg(long)]
    verify: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum DensityKind {
    Zeta,
    Zn,
    Matrix,
}

#[derive(Args, Debug, Serialize)]
struct DensityArgs {
    #[arg(value_enum)]
    kind: DensityKind,
    /// Argument of zeta.
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, default_value_t = 1e-12)]
    eps: f64,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Prime bound for truncated products.
    #[arg(long = "P", alias = "prime-bound", default_value_t = 100_000)]
    #[serde(rename = "P")]
    prime_bound: u64,
}

#[derive(Args, Debug, Serialize)]
struct McArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long = "N", default_value_t = 500)]
    #[serde(rename = "N")]
    half_width: u64,
    #[arg(long, default_value_t = 20_000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args, Debug, Serialize)]
struct ExhaustiveArgs {
    /// JSON list of {"e1,e2,...": coefficient} maps, or @path.
    #[arg(long)]
    polys: String,
    /// Box half-width for the exact density.
    #[arg(long = "N")]
    #[serde(rename = "N")]
    half_width: Option<u64>,
    /// Prime for the local zero count.
    #[arg(long)]
    p: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
struct CheckgenArgs {
    /// Tuple JSON, or @path.
    #[arg(long)]
    tuple: String,
    /// Check over F_q instead of Z.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Matrix size, needed only for the empty tuple.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum ConstructKind {
    M2z16,
    Twogen,
}

#[derive(Args, Debug, Serialize)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: ConstructKind,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, default_value_t = 1)]
    s: u32,
}

#[derive(Args, Debug, Serialize)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug, Serialize)]
struct ThresholdsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    F,
    H,
    Phi,
    Psi,
}

#[derive(Args, Debug, Serialize)]
struct PolyArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    k: u32,
    /// Evaluate at this integer.
    #[arg(long)]
    eval: Option<String>,
    /// Irreducibility test modulo this prime.
    #[arg(long)]
    irred_mod: Option<u64>,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } | Error::FactorizationIncomplete(_) => EXIT_TOO_LARGE,
        Error::CertificationFailed(_) | Error::DivisionInexact(_) | Error::NotDivisible { .. } => EXIT_FAILURE,
        _ => EXIT_INVALID,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonPrime(_) => "NonPrime",
        Error::BadDegree(_) => "BadDegree",
        Error::DivisionByZero => "DivisionByZero",
        Error::DimensionMismatch { .. } => "DimensionMismatch",
        Error::BadParams(_) => "BadParams",
        Error::TooLarge { .. } => "TooLarge",
        Error::ShapeMismatch(_) => "ShapeMismatch",
        Error::UnsupportedSize(_) => "UnsupportedSize",
        Error::FactorizationIncomplete(_) => "FactorizationIncomplete",
        Error::CertificationFailed(_) => "CertificationFailed",
        Error::DivisionInexact(_) => "DivisionInexact",
        Error::NotDivisible { .. } => "NotDivisible",
        Error::DivergentTail(_) => "DivergentTail",
        Error::InvalidJson(_) => "InvalidJSON",
        Error::UnknownCommand(_) => "UnknownCommand",
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn error_doc(e: &Error, config: Option<&Value>) -> String {
    let mut doc = json!({ "error": { "kind": error_kind(e), "message": e.to_string() } });
    if let Some(c) = config {
        doc["config"] = c.clone();
    }
    render(&doc)
}

fn clap_message(e: &clap::Error) -> String {
    let text = e.to_string();
    let lines: Vec<&str> =
        text.lines().take_while(|l| !l.starts_with("Usage:")).map(str::trim).filter(|l| !l.is_empty()).collect();
    let msg = lines.join(" ");
    msg.strip_prefix("error: ").unwrap_or(&msg).to_string()
}

fn limits_from_env(threads: Option<usize>) -> Result<Limits> {
    let mut limits = Limits { threads, ..Limits::default() };
    if let Ok(v) = std::env::var(ENUM_CAP_VAR) {
        limits.enum_cap =
            v.trim().parse().map_err(|_| Error::bad(format!("{ENUM_CAP_VAR} must be a positive integer, got {v:?}")))?;
    }
    Ok(limits)
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code with the JSON output.
pub fn dispatch<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, e.to_string()),
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand => {
                    (EXIT_INVALID, error_doc(&Error::UnknownCommand(clap_message(&e)), None))
                }
                _ => (EXIT_INVALID, error_doc(&Error::bad(clap_message(&e)), None)),
            };
        }
    };
    let limits = match limits_from_env(cli.threads) {
        Ok(l) => l,
        Err(e) => return (exit_code(&e), error_doc(&e, None)),
    };
    let mut config = serde_json::to_value(&cli.command).expect("serializable");
    config["threads"] = json!(cli.threads);
    config["enum_cap"] = json!(limits.enum_cap);
    match run(&cli.command, &limits) {
        Ok(mut doc) => {
            doc["config"] = config;
            (EXIT_OK, render(&doc))
        }
        Err(e) => (exit_code(&e), error_doc(&e, Some(&config))),
    }
}

fn run(cmd: &Command, limits: &Limits) -> Result<Value> {
    match cmd {
        Command::Count(a) => count(a, limits),
        Command::Density(a) => density(a),
        Command::Mc(a) => mc(a, limits),
        Command::Exhaustive(a) => exhaustive(a, limits),
        Command::Checkgen(a) => checkgen(a),
        Command::Construct(a) => construct(a),
        Command::Census(a) => census(a, limits),
        Command::Thresholds(a) => thresholds(a),
        Command::Poly(a) => poly(a),
    }
}

/// Inline JSON, or the contents of a file when prefixed with `@`.
fn read_json(arg: &str) -> Result<Value> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::bad(format!("cannot read {path}: {e}")))?;
            json::parse(&text)
        }
        None => json::parse(arg),
    }
}

fn count(a: &CountArgs, limits: &Limits) -> Result<Value> {
    let params = json!({ "k": a.k, "n": a.n, "q": a.q, "s": a.s, "m": a.m });
    let brute = || brute_count(a.k, a.n, a.q, a.s, a.m, limits).map(|r| r.value);
    let formula = || count_gen_power_formula(a.k, a.n, a.q, a.s, a.m, limits);
    if a.verify {
        let (b, f) = (brute()?, formula()?);
        if b != f {
            return Err(Error::CertificationFailed(format!("brute count {b} differs from formula {f}")));
        }
        return Ok(json!({
            "method": "verified",
            "value": json::big_string(&b),
            "brute": json::big_string(&b),
            "formula": json::big_string(&f),
            "params": params,
        }));
    }
    let (method, value) = if a.brute { ("brute", brute()?) } else { ("formula", formula()?) };
    Ok(json!({ "method": method, "value": json::big_string(&value), "params": params }))
}

fn density_json(d: &DensityValue) -> Value {
    json!({
        "value": json::float(d.value),
        "error_bound": json::float(d.error_bound),
        "P": d.prime_bound,
        "method": d.method.as_str(),
    })
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::bad(format!("--{name} is required here")))
}

fn density(a: &DensityArgs) -> Result<Value> {
    let d = match a.kind {
        DensityKind::Zeta => zeta_value(need(a.s, "s")?, a.eps)?,
        DensityKind::Zn => den_zn(need(a.k, "k")?, need(a.n, "n")?)?,
        DensityKind::Matrix => den_matrix(need(a.n, "n")?, need(a.k, "k")?, a.prime_bound)?,
    };
    Ok(density_json(&d))
}

fn mc(a: &McArgs, limits: &Limits) -> Result<Value> {
    let shape = AlgebraShape::over_z(vec![Block::matrices(a.n, a.m)])?;
    let b = BoxModel { half_width: a.half_width, seed: a.seed, samples: a.samples };
    let est = mc_density(&shape, a.k, &b, limits)?;
    Ok(json!({
        "hits": est.hits,
        "trials": est.trials,
        "estimate": json::float(est.estimate),
        "ci95_halfwidth": json::float(est.ci95_halfwidth),
        "shard_size": SHARD_SIZE,
        "rng": "chacha8, stream = shard index",
    }))
}

fn exhaustive(a: &ExhaustiveArgs, limits: &Limits) -> Result<Value> {
    let polys = json::multipolys_from_json(&read_json(&a.polys)?)?;
    if a.half_width.is_none() && a.p.is_none() {
        return Err(Error::bad("give --N for the box density, --p for the local zero count, or both"));
    }
    let mut out = json!({ "polys": polys.iter().map(json::multipoly_to_json).collect::<Vec<_>>() });
    if let Some(h) = a.half_width {
        let d = exhaustive_poly_density(&polys, h, limits)?;
        out["density"] = json!({ "hits": d.hits, "total": d.total, "value": json::float(d.value()) });
    }
    if let Some(p) = a.p {
        out["zeros"] = json!(local_zero_count(&polys, p, limits)?);
    }
    Ok(out)
}

/// Consecutive factors of equal size form one block `M_n(.)^m`.
fn blocks_of(sizes: &[usize], s: u32) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for &n in sizes {
        match blocks.last_mut() {
            Some(b) if b.n == n => b.m += 1,
            _ => blocks.push(Block::new(n, s, 1)),
        }
    }
    blocks
}

fn tuple_sizes(v: &Value, n: Option<usize>) -> Result<Vec<usize>> {
    let first = json::tuple_elements(v)?
        .first()
        .map(|el| match el {
            Value::Array(ms) => ms.iter().map(|m| m.get("n").and_then(|x| x.as_u64()).map(|x| x as usize)).collect(),
            m => m.get("n").and_then(|x| x.as_u64()).map(|x| vec![x as usize]),
        });
    match first {
        Some(Some(sizes)) => Ok(sizes),
        Some(None) => Err(Error::InvalidJson("matrices need an \"n\" field".into())),
        None => n.map(|n| vec![n]).ok_or_else(|| Error::bad("the empty tuple needs --n")),
    }
}

fn checkgen(a: &CheckgenArgs) -> Result<Value> {
    let v = read_json(&a.tuple)?;
    let sizes = tuple_sizes(&v, a.n)?;
    match a.q {
        None => {
            if a.s != 1 {
                return Err(Error::bad("--s only applies together with --q"));
            }
            let t: GenTuple<ZMat> = json::tuple_from_json(&v, json::zmat_from_json)?;
            let shape = AlgebraShape::over_z(blocks_of(&sizes, 1))?;
            let r = generates_z(&shape, &t)?;
            let primes: Vec<Value> =
                r.bad_primes.iter().map(|p| p.to_u64().map(|x| json!(x)).unwrap_or_else(|| json!(p.to_string()))).collect();
            Ok(json!({ "generates": r.generates, "index": json::big_string(&r.index), "bad_primes": primes }))
        }
        Some(q) => {
            let (p, t) = crate::arith::prime_power(q).ok_or_else(|| Error::bad(format!("q = {q} is not a prime power")))?;
            let base = make_field(p, t)?;
            let shape = AlgebraShape::over_field(&base, blocks_of(&sizes, a.s))?;
            let field = shape.block_field(0).expect("field side").clone();
            let tuple = json::tuple_from_json(&v, |m| json::fqmat_from_json(&field, m))?;
            let dim = crate::genff::subalgebra_dimension(&shape, &tuple)?;
            Ok(json!({ "generates": generates(&shape, &tuple)?, "dimension": dim, "rank": shape.rank() }))
        }
    }
}

fn construct(a: &ConstructArgs) -> Result<Value> {
    match a.kind {
        ConstructKind::M2z16 => {
            let c = construct_m2z16()?;
            let mut out = json::tuple_to_json(&c.tuple, json::zmat_to_json);
            out["index"] = json::big_string(&c.report.index);
            out["generates"] = json!(c.report.generates);
            out["orbit_count"] = json!(c.orbit_count);
            out["generating_pairs_mod2"] = json!(c.generating_pairs_mod2);
            Ok(out)
        }
        ConstructKind::Twogen => {
            let g = two_generators_ext(a.n, a.q, a.s)?;
            let t = GenTuple::of_matrices(vec![g.a, g.b]);
            let mut out = json::tuple_to_json(&t, |m| json::fqmat_to_json(&g.field, m));
            out["field"] = json!({ "p": g.field.p(), "degree": g.field.s(), "modulus": g.field.modulus() });
            out["generates"] = json!(true);
            Ok(out)
        }
    }
}

fn census(a: &CensusArgs, limits: &Limits) -> Result<Value> {
    let c = zero_one_census(a.n, limits)?;
    let mut by_index: BTreeMap<BigInt, u64> = BTreeMap::new();
    for (_, i) in &c.failures {
        *by_index.entry(i.clone()).or_default() += 1;
    }
    let hist: serde_json::Map<String, Value> = by_index.iter().map(|(i, n)| (i.to_string(), json!(n))).collect();
    Ok(json!({
        "n": c.n,
        "gen_mod2": c.gen_mod2.to_string(),
        "fail_over_z": c.fail_over_z.to_string(),
        "failures_by_index": hist,
    }))
}

fn thresholds(a: &ThresholdsArgs) -> Result<Value> {
    let r = min_generators(a.n, a.m)?;
    Ok(json!({
        "n": r.n,
        "m": r.m,
        "r": r.r,
        "lower": json::big_string(&r.lower),
        "upper": json::big_string(&r.upper),
    }))
}

fn poly(a: &PolyArgs) -> Result<Value> {
    let f = match a.family {
        Family::F => f_poly(a.k)?,
        Family::H => h_poly(a.k)?,
        Family::Phi => phi_poly(a.k)?,
        Family::Psi => psi_poly(a.k)?,
    };
    let mut out = json!({ "coeffs": json::intpoly_to_json(&f), "degree": f.degree() });
    if let Some(x) = &a.eval {
        let x: BigInt = x.trim().parse().map_err(|_| Error::bad(format!("--eval needs an integer, got {x:?}")))?;
        out["value"] = json::big_string(&f.eval(&x));
    }
    if let Some(p) = a.irred_mod {
        let verdict = match is_irreducible_mod_p(&f, p)? {
            Irreducibility::Irreducible => "irreducible",
            Irreducibility::Reducible => "reducible",
            Irreducibility::Degenerate => "degenerate",
        };
        out["irreducibility"] = json!(verdict);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, Value) {
        let (code, out) = dispatch(std::iter::once("algen").chain(args.iter().copied()));
        (code, serde_json::from_str(&out).unwrap_or(Value::Null))
    }

    #[test]
    fn count_and_thresholds() {
        let (c, v) = run(&["count", "--k", "2", "--n", "2", "--q", "2", "--verify"]);
        assert_eq!(c, 0);
        assert_eq!(v["value"], json!("96"));
        assert_eq!(v["config"]["command"], json!("count"));
        let (c, v) = run(&["thresholds", "--n", "3", "--m", "769"]);
        assert_eq!((c, v["r"].clone()), (0, json!(3)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["frobnicate"]).0, EXIT_INVALID);
        assert_eq!(run(&["count", "--k", "2", "--n", "2", "--q", "6"]).0, EXIT_INVALID);
        let (c, v) = run(&["count", "--k", "3", "--n", "3", "--q", "3", "--brute"]);
        assert_eq!(c, EXIT_TOO_LARGE);
        assert_eq!(v["error"]["kind"], json!("TooLarge"));
        assert_eq!(run(&["checkgen", "--tuple", "{not json"]).0, EXIT_INVALID);
    }

    #[test]
    fn checkgen_identity_and_round_trip() {
        let id = r#"{"k": 1, "elements": [[{"n": 2, "entries": [1, 0, 0, 1]}]]}"#;
        let (c, v) = run(&["checkgen", "--tuple", id]);
        assert_eq!(c, 0);
        assert_eq!((v["generates"].clone(), v["index"].clone()), (json!(false), json!("0")));
        let (_, t) = run(&["construct", "twogen", "--n", "2", "--q", "2", "--s", "2"]);
        let (c, v) = run(&["checkgen", "--tuple", &t.to_string(), "--q", "2", "--s", "2"]);
        assert_eq!((c, v["generates"].clone(), v["dimension"].clone()), (0, json!(true), json!(8)));
    }

    #[test]
    fn density_and_poly() {
        let (c, v) = run(&["density", "zn", "--k", "2", "--n", "1"]);
        assert_eq!(c, 0);
        assert!((v["value"].as_f64().unwrap() - 0.607_927_101_854_027).abs() < 1e-14);
        assert_eq!(v["P"], Value::Null);
        let (_, v) = run(&["poly", "phi", "--k", "3", "--eval", "2", "--irred-mod", "2"]);
        assert_eq!(v["coeffs"], json!([1, 0, -2, -1, 1]));
        assert_eq!((v["value"].clone(), v["irreducibility"].clone()), (json!("1"), json!("irreducible")));
    }

    #[test]
    fn output_is_reproducible() {
        let args = ["mc", "--k", "2", "--N", "20", "--samples", "300", "--seed", "9"];
        assert_eq!(run(&args), run(&args));
        let (_, poly) = run(&["exhaustive", "--polys", r#"[{"1,0": 1}, {"0,1": 1}]"#, "--N", "3", "--p", "5"]);
        assert_eq!(poly["density"]["total"], json!(49));
        assert_eq!(poly["zeros"], json!(1));
    }
}
