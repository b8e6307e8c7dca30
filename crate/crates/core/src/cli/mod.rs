//! Batch front end.
//!
//! [`parse_and_run`] never panics on user input and never touches the
//! process state, so it is driven directly by the integration tests.
//! Exit codes: 0 on success, 1 when a verification suite has a false flag,
//! 2 on invalid input.

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::liecore::{classify_subalgebra_1d, classify_subalgebra_2d, SL2Elt, VirElt};
use crate::modzoo::{
    make_module, modvec_json, weight_decompose, BasisKey, ModVec, ModuleHandle, ModuleSpec, MuData, Sl2Module,
    DEFAULT_DEPTH,
};
use crate::pbw::SL2Monomial;
use crate::verify::{
    simplicity_test, generator_test, suite_dense, suite_restriction, suite_tensor_vermas, suite_twist_induction,
    SuiteReport,
};

/// Environment variable overriding the default depth.
pub const DEPTH_ENV: &str = "SL2VIR_DEPTH";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "sl2vir", version, about = "Exact computations with induced sl2 and Virasoro modules")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with_all = ["csv", "text"])]
    json: bool,
    /// CSV output.
    #[arg(long, global = true, conflicts_with = "text")]
    csv: bool,
    /// Plain text output.
    #[arg(long, global = true)]
    text: bool,
    /// Truncation depth (default: $SL2VIR_DEPTH or 6).
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Include elapsed_ms in reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Apply an sl2 or Vir element to a basis vector.
    Act {
        #[arg(long)]
        module: String,
        /// `e`, `h`, `f`, `z`, `e[n]`, or sl2 coordinates `a,b,c`.
        #[arg(long, allow_hyphen_values = true)]
        elt: String,
        /// Basis key such as `3`, `1,2` or `0,1,2`; defaults to the generator.
        #[arg(long, allow_hyphen_values = true)]
        key: Option<String>,
    },
    /// Classify the subalgebra spanned by one or two elements `a,b,c` of sl2.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Irreducibility of the dense module V(xi, tau).
    Simplicity {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// Only consider i >= 0 (whether v_xi generates).
        #[arg(long)]
        generator: bool,
    },
    /// Weight decomposition of basis vectors (the whole window by default).
    Weights {
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        key: Vec<String>,
    },
    /// Run one verification suite.
    Verify {
        #[command(subcommand)]
        suite: SuiteCmd,
    },
    /// Run the suites listed in a JSON config file.
    Report {
        #[arg(long)]
        config: String,
    },
}

#[derive(Subcommand, Debug)]
enum SuiteCmd {
    Dense {
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    Restriction {
        /// Factored polynomial, e.g. `(t-1)^2` or `(t-1)(t-2)`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Coefficients of p_i: groups separated by `;`, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    Tensor {
        #[arg(long, allow_hyphen_values = true)]
        l1: String,
        #[arg(long, allow_hyphen_values = true)]
        l2: String,
        #[arg(long, allow_hyphen_values = true)]
        m1: String,
        #[arg(long, allow_hyphen_values = true)]
        m2: String,
    },
    Induction {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        mu0: String,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn parse_and_run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let ctx = match Ctx::new(&cli.global) {
        Ok(c) => c,
        Err(e) => return Outcome::invalid(e),
    };
    match run(&ctx, &cli.verb) {
        Ok(o) => o,
        Err(e) => Outcome::invalid(e),
    }
}

struct Ctx {
    format: Format,
    depth: u32,
    timings: bool,
}

impl Ctx {
    fn new(g: &Global) -> Result<Ctx> {
        let format = match (g.json, g.csv, g.text) {
            (_, true, _) => Format::Csv,
            (_, _, true) => Format::Text,
            _ => Format::Json,
        };
        let depth = match g.depth {
            Some(d) => d,
            None => default_depth()?,
        };
        if depth == 0 {
            return Err(Error::InvalidParameter("depth must be at least 1".into()));
        }
        Ok(Ctx { format, depth, timings: g.timings })
    }
}

fn default_depth() -> Result<u32> {
    match std::env::var(DEPTH_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{DEPTH_ENV}={v} is not a depth"))),
        Err(_) => Ok(DEFAULT_DEPTH),
    }
}

fn run(ctx: &Ctx, verb: &Verb) -> Result<Outcome> {
    match verb {
        Verb::Act { module, elt, key } => {
            let m = make_module(&parse_module(module)?, ctx.depth)?;
            let v = match key {
                Some(k) => ModVec::basis(checked_key(&m, k)?),
                None => m.generator()?,
            };
            let out = match parse_element(elt)? {
                Element::Sl2(x) => m.act(&x, &v)?,
                Element::Vir(x) => m.act_vir(&x, &v)?,
            };
            Ok(Outcome::ok(render_modvec(ctx, &m, &out)?))
        }
        Verb::Classify { x, y } => {
            let x = parse_sl2(x)?;
            let value = match y {
                None => {
                    let c = classify_subalgebra_1d(&x)?;
                    json!({
                        "dimension": 1,
                        "kind": c.kind.to_string(),
                        "automorphism": c.automorphism.tag().to_string(),
                        "standard": format!("{:?}", c.standard).to_lowercase(),
                        "basis": c.basis.to_string(),
                    })
                }
                Some(y) => {
                    let c = classify_subalgebra_2d(&x, &parse_sl2(y)?)?;
                    json!({"dimension": 2, "kind": c.kind.to_string(), "automorphism": c.automorphism.tag().to_string()})
                }
            };
            Ok(Outcome::ok(render_value(ctx, &value)))
        }
        Verb::Simplicity { xi, tau, generator } => {
            let (xi, tau) = (scalar(xi)?, scalar(tau)?);
            let value = if *generator {
                serde_json::to_value(generator_test(&xi, &tau))
            } else {
                serde_json::to_value(simplicity_test(&xi, &tau))
            }
            .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Outcome::ok(render_value(ctx, &value)))
        }
        Verb::Weights { module, key } => {
            let m = make_module(&parse_module(module)?, ctx.depth)?;
            let keys = if key.is_empty() {
                m.window(ctx.depth)?
            } else {
                key.iter().map(|k| checked_key(&m, k)).collect::<Result<_>>()?
            };
            let mut v = ModVec::zero();
            for k in keys {
                v.add_term(k, &Scalar::one());
            }
            let groups = weight_decompose(&m, &v)?;
            Ok(Outcome::ok(render_weights(ctx, &groups)?))
        }
        Verb::Verify { suite } => {
            let job = Job::from_cmd(suite, ctx.depth)?;
            let report = job.run(ctx.timings)?;
            let code = if report.passed() { 0 } else { 1 };
            Ok(Outcome { code, stdout: render_report(ctx, &report)?, stderr: String::new() })
        }
        Verb::Report { config } => run_config(ctx, config),
    }
}

fn scalar(s: &str) -> Result<Scalar> {
    s.parse()
}

enum Element {
    Sl2(SL2Elt),
    Vir(VirElt),
}

fn parse_sl2(s: &str) -> Result<SL2Elt> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a, b, c] => Ok(SL2Elt::new(scalar(a)?, scalar(b)?, scalar(c)?)),
        _ => match s.trim() {
            "e" => Ok(SL2Elt::e()),
            "h" => Ok(SL2Elt::h()),
            "f" => Ok(SL2Elt::f()),
            _ => Err(Error::Parse(format!("expected e, h, f or coordinates a,b,c; got {s:?}"))),
        },
    }
}

fn parse_element(s: &str) -> Result<Element> {
    let t = s.trim();
    if t == "z" {
        return Ok(Element::Vir(VirElt::z()));
    }
    if let Some(inner) = t.strip_prefix("e[").and_then(|r| r.strip_suffix(']')) {
        let n: i64 = inner.trim().parse().map_err(|_| Error::Parse(format!("bad index in {s:?}")))?;
        return Ok(Element::Vir(VirElt::e(n)));
    }
    parse_sl2(t).map(Element::Sl2)
}

fn parse_key(s: &str) -> Result<BasisKey> {
    if let Some((a, b)) = s.split_once('|') {
        return Ok(BasisKey::tensor(parse_key(a)?, parse_key(b)?));
    }
    let bad = || Error::Parse(format!("bad basis key {s:?}"));
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nat = |p: &str| p.parse::<u32>().map_err(|_| bad());
    match parts.as_slice() {
        [i] => Ok(BasisKey::Index(i.parse().map_err(|_| bad())?)),
        [a, b] => Ok(BasisKey::Pair(nat(a)?, nat(b)?)),
        [a, b, c] => Ok(BasisKey::Mono(SL2Monomial::new(nat(a)?, nat(b)?, nat(c)?))),
        _ => Err(bad()),
    }
}

/// Rejects keys outside the module's basis.
fn checked_key(m: &ModuleHandle, s: &str) -> Result<BasisKey> {
    let k = parse_key(s)?;
    if !m.window(k.depth())?.contains(&k) {
        return Err(Error::InvalidParameter(format!("{s} is not a basis key of {}", m.spec())));
    }
    Ok(k)
}

/// `(t-a)^n (t+b) ...` into roots with multiplicities, in order of appearance.
pub fn parse_poly(s: &str) -> Result<Vec<(Scalar, u32)>> {
    let bad = |why: &str| Error::Parse(format!("bad polynomial {s:?}: {why}"));
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = src.as_str();
    let mut roots: Vec<(Scalar, u32)> = Vec::new();
    while !rest.is_empty() {
        rest = rest.strip_prefix('*').unwrap_or(rest);
        let (factor, after) = if let Some(r) = rest.strip_prefix('(') {
            let mut level = 1;
            let end = r
                .char_indices()
                .find(|&(_, c)| {
                    level += match c {
                        '(' => 1,
                        ')' => -1,
                        _ => 0,
                    };
                    level == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(|| bad("unbalanced parentheses"))?;
            (&r[..end], &r[end + 1..])
        } else {
            let end = rest.find(['(', '*', '^']).unwrap_or(rest.len());
            (&rest[..end], &rest[end..])
        };
        let (mult, after) = match after.strip_prefix('^') {
            Some(a) => {
                let end = a.find(|c: char| !c.is_ascii_digit()).unwrap_or(a.len());
                let n: u32 = a[..end].parse().map_err(|_| bad("bad exponent"))?;
                (n, &a[end..])
            }
            None => (1, after),
        };
        let body = factor.strip_prefix('t').ok_or_else(|| bad("factors must read t-a"))?;
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).map_or(body.to_string(), str::to_string);
        let root = if let Some(a) = body.strip_prefix('-') {
            unparen(a).parse::<Scalar>()?
        } else if let Some(a) = body.strip_prefix('+') {
            -unparen(a).parse::<Scalar>()?
        } else {
            return Err(bad("factors must read t-a"));
        };
        if mult == 0 {
            return Err(bad("zero exponent"));
        }
        match roots.iter_mut().find(|(r, _)| *r == root) {
            Some((_, n)) => *n += mult,
            None => roots.push((root, mult)),
        }
        rest = after;
    }
    if roots.is_empty() {
        return Err(bad("no factors"));
    }
    Ok(roots)
}

fn unparen(s: &str) -> &str {
    s.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(s)
}

/// Polynomial and `;`-separated coefficient groups into [`MuData`].
pub fn parse_mu(poly: &str, mu: &str) -> Result<MuData> {
    let roots = parse_poly(poly)?;
    let polys = mu
        .split(';')
        .map(|g| g.split(',').map(scalar).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    MuData::new(roots, polys)
}

/// Compact `family:args` or a JSON object with a `family` tag.
pub fn parse_module(s: &str) -> Result<ModuleSpec> {
    let t = s.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| Error::Parse(format!("module JSON: {e}")));
    }
    let (family, args) = t.split_once(':').ok_or_else(|| Error::Parse(format!("expected family:args, got {s:?}")))?;
    let list = |n: usize| -> Result<Vec<Scalar>> {
        let v: Vec<Scalar> = args.split(',').map(scalar).collect::<Result<_>>()?;
        if v.len() != n {
            return Err(Error::Parse(format!("{family} takes {n} parameter(s)")));
        }
        Ok(v)
    };
    Ok(match family.to_ascii_lowercase().as_str() {
        "w" => ModuleSpec::W { eta: list(1)?.remove(0) },
        "x" => ModuleSpec::X { xi: list(1)?.remove(0) },
        "xbar" => {
            let v = list(2)?;
            ModuleSpec::Xbar { xi: v[0].clone(), tau: v[1].clone() }
        }
        "vdense" => {
            let v = list(2)?;
            ModuleSpec::Vdense { xi: v[0].clone(), tau: v[1].clone() }
        }
        "verma" => ModuleSpec::Verma { delta: list(1)?.remove(0) },
        "lowverma" | "low_verma" => ModuleSpec::LowVerma { delta: list(1)?.remove(0) },
        "virpoly" | "vir_poly" => {
            let (poly, mu) = args.split_once(':').ok_or_else(|| Error::Parse("virpoly:POLY:MU".into()))?;
            ModuleSpec::VirPoly { mu: parse_mu(poly, mu)? }
        }
        "induced" => {
            let (basis, mu0) = args.rsplit_once(':').ok_or_else(|| Error::Parse("induced:a,b,c:MU0".into()))?;
            ModuleSpec::Induced { basis: parse_sl2(basis)?, mu0: scalar(mu0)? }
        }
        other => return Err(Error::Parse(format!("unknown module family {other:?}"))),
    })
}

/// A single suite invocation with parsed parameters.
#[derive(Debug, Clone)]
enum Job {
    Dense { xi: Scalar, tau: Scalar, depth: u32 },
    Restriction { mu: MuData, depth: u32 },
    Tensor { l: [Scalar; 4], depth: u32 },
    Induction { x: SL2Elt, mu0: Scalar, depth: u32 },
}

impl Job {
    fn from_cmd(cmd: &SuiteCmd, depth: u32) -> Result<Job> {
        Ok(match cmd {
            SuiteCmd::Dense { xi, tau } => Job::Dense { xi: scalar(xi)?, tau: scalar(tau)?, depth },
            SuiteCmd::Restriction { poly, mu } => Job::Restriction { mu: parse_mu(poly, mu)?, depth },
            SuiteCmd::Tensor { l1, l2, m1, m2 } => {
                Job::Tensor { l: [scalar(l1)?, scalar(l2)?, scalar(m1)?, scalar(m2)?], depth }
            }
            SuiteCmd::Induction { x, mu0 } => Job::Induction { x: parse_sl2(x)?, mu0: scalar(mu0)?, depth },
        })
    }

    fn from_config(entry: &ConfigSuite, default: u32) -> Result<Job> {
        let depth = entry.depth.unwrap_or(default);
        if depth == 0 {
            return Err(Error::InvalidParameter("depth must be at least 1".into()));
        }
        let p = |name: &str| -> Result<String> {
            match entry.params.get(name) {
                Some(Value::String(s)) => Ok(s.clone()),
                Some(Value::Number(n)) => Ok(n.to_string()),
                _ => Err(Error::Parse(format!("suite {} needs parameter {name:?}", entry.name))),
            }
        };
        let cmd = match entry.name.strip_prefix("suite_").unwrap_or(&entry.name) {
            "dense" => SuiteCmd::Dense { xi: p("xi")?, tau: p("tau")? },
            "restriction" => SuiteCmd::Restriction { poly: p("poly")?, mu: p("mu")? },
            "tensor" | "tensor_vermas" => SuiteCmd::Tensor { l1: p("l1")?, l2: p("l2")?, m1: p("m1")?, m2: p("m2")? },
            "induction" | "twist_induction" => SuiteCmd::Induction { x: p("x")?, mu0: p("mu0")? },
            other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
        };
        Job::from_cmd(&cmd, depth)
    }

    fn run(&self, timings: bool) -> Result<SuiteReport> {
        let start = Instant::now();
        let mut report = match self {
            Job::Dense { xi, tau, depth } => suite_dense(xi, tau, *depth)?.to_report(xi, tau),
            Job::Restriction { mu, depth } => suite_restriction(mu, *depth)?.to_report(),
            Job::Tensor { l, depth } => suite_tensor_vermas(&l[0], &l[1], &l[2], &l[3], *depth)?.to_report(),
            Job::Induction { x, mu0, depth } => suite_twist_induction(x, mu0, *depth)?.to_report(),
        };
        if timings {
            report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        Ok(report)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    suites: Vec<ConfigSuite>,
    #[serde(default)]
    parallel: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigSuite {
    name: String,
    #[serde(default)]
    params: BTreeMap<String, Value>,
    depth: Option<u32>,
}

fn run_config(ctx: &Ctx, path: &str) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    let config: Config = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config: {e}")))?;
    let jobs = config.suites.iter().map(|s| Job::from_config(s, ctx.depth)).collect::<Result<Vec<_>>>()?;
    let results: Vec<Result<SuiteReport>> = if config.parallel {
        jobs.par_iter().map(|j| j.run(ctx.timings)).collect()
    } else {
        jobs.iter().map(|j| j.run(ctx.timings)).collect()
    };
    let mut reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    reports.sort_by_cached_key(|r| (r.suite.clone(), serde_json::to_string(&r.params).unwrap_or_default()));
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let code = if failed > 0 { 1 } else { 0 };
    let stdout = match ctx.format {
        Format::Json => {
            let agg = json!({"schema": "report/1", "total": reports.len(), "failed": failed, "reports": reports});
            pretty(&agg)
        }
        Format::Csv => render_report_csv(&reports)?,
        Format::Text => reports.iter().map(render_report_text).collect(),
    };
    Ok(Outcome { code, stdout, stderr: String::new() })
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_out(rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_value(ctx: &Ctx, v: &Value) -> String {
    match ctx.format {
        Format::Json => pretty(v),
        Format::Csv | Format::Text => {
            let Value::Object(map) = v else { return format!("{v}\n") };
            let sep = if ctx.format == Format::Csv { "," } else { ": " };
            map.iter()
                .map(|(k, x)| match x {
                    Value::String(s) => format!("{k}{sep}{s}\n"),
                    other => format!("{k}{sep}{other}\n"),
                })
                .collect()
        }
    }
}

fn render_modvec(ctx: &Ctx, m: &ModuleHandle, v: &ModVec) -> Result<String> {
    Ok(match ctx.format {
        Format::Json => pretty(&modvec_json(m, v)),
        Format::Csv => csv_out(
            std::iter::once(vec!["key".to_string(), "coefficient".to_string()])
                .chain(v.terms().map(|(k, c)| vec![k.to_string(), c.to_string()])),
        )?,
        Format::Text => {
            if v.is_zero() {
                "0\n".to_string()
            } else {
                let parts: Vec<String> = v.terms().map(|(k, c)| format!("({c})[{k}]")).collect();
                format!("{}\n", parts.join(" + "))
            }
        }
    })
}

fn render_weights(ctx: &Ctx, groups: &[(Scalar, ModVec)]) -> Result<String> {
    let rows = groups.iter().flat_map(|(w, v)| v.terms().map(move |(k, c)| (w, k, c)));
    Ok(match ctx.format {
        Format::Csv => csv_out(
            std::iter::once(vec!["weight".to_string(), "key".to_string(), "coefficient".to_string()])
                .chain(rows.map(|(w, k, c)| vec![w.to_string(), k.to_string(), c.to_string()])),
        )?,
        Format::Json => {
            let list: Vec<Value> = rows.map(|(w, k, c)| json!({"weight": w, "key": k.to_json(), "coefficient": c})).collect();
            pretty(&list)
        }
        Format::Text => rows.map(|(w, k, c)| format!("{w}\t[{k}]\t{c}\n")).collect(),
    })
}

fn render_report(ctx: &Ctx, r: &SuiteReport) -> Result<String> {
    Ok(match ctx.format {
        Format::Json => pretty(r),
        Format::Csv => render_report_csv(std::slice::from_ref(r))?,
        Format::Text => render_report_text(r),
    })
}

fn render_report_csv(reports: &[SuiteReport]) -> Result<String> {
    let header = vec!["suite".to_string(), "params".to_string(), "flag".to_string(), "value".to_string()];
    let mut rows = vec![header];
    for r in reports {
        let params = serde_json::to_string(&r.params).expect("params serialize");
        for (f, b) in &r.flags {
            rows.push(vec![r.suite.clone(), params.clone(), f.clone(), b.to_string()]);
        }
    }
    csv_out(rows)
}

fn render_report_text(r: &SuiteReport) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut out = format!("{status} {} {} (verified to depth {})\n", r.suite, params.join(" "), r.depth);
    for (f, b) in &r.flags {
        out.push_str(&format!("  {f}: {b}\n"));
    }
    if let Some(w) = &r.witness {
        out.push_str(&format!("  witness: {w}\n"));
    }
    for (k, v) in &r.details {
        out.push_str(&format!("  {k}: {v}\n"));
    }
    if let Some(ms) = r.elapsed_ms {
        out.push_str(&format!("  elapsed_ms: {ms}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn polys() {
        assert_eq!(parse_poly("(t-1)^2").unwrap(), vec![(s("1"), 2)]);
        assert_eq!(parse_poly("(t-1)(t-2)").unwrap(), vec![(s("1"), 1), (s("2"), 1)]);
        assert_eq!(parse_poly("t+1/2").unwrap(), vec![(s("-1/2"), 1)]);
        assert_eq!(parse_poly("(t-(1+i))*(t-1)^2").unwrap(), vec![(s("1+i"), 1), (s("1"), 2)]);
        assert_eq!(parse_poly("(t-1)(t-1)").unwrap(), vec![(s("1"), 2)]);
        for bad in ["", "t", "(t-1", "x-1", "(t-1)^0", "(t-1)^a"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn modules() {
        assert_eq!(parse_module("verma:2").unwrap(), ModuleSpec::Verma { delta: s("2") });
        assert_eq!(parse_module("xbar:0,9").unwrap(), ModuleSpec::Xbar { xi: s("0"), tau: s("9") });
        let vp = parse_module("virpoly:(t-1)^2:0,1").unwrap();
        assert_eq!(vp, ModuleSpec::VirPoly { mu: MuData::new(vec![(s("1"), 2)], vec![vec![s("0"), s("1")]]).unwrap() });
        let json = serde_json::to_string(&vp).unwrap();
        assert_eq!(parse_module(&json).unwrap(), vp);
        assert!(parse_module("verma:1,2").is_err());
        assert!(parse_module("nope:1").is_err());
    }

    #[test]
    fn keys() {
        assert_eq!(parse_key("-3").unwrap(), BasisKey::Index(-3));
        assert_eq!(parse_key("1,2").unwrap(), BasisKey::Pair(1, 2));
        assert_eq!(parse_key("1|0").unwrap(), BasisKey::tensor(BasisKey::Index(1), BasisKey::Index(0)));
        assert!(parse_key("a").is_err());
    }
}
