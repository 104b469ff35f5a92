//! Command-line front end. Every command prints one JSON report on stdout.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus;
use crate::count::{
    count_compact_i, count_compact_ii, count_cyclic_cover, count_stratum, dwork_count, parameter_classes, CountResult,
    DworkSpec,
};
use crate::error::{Error, Result};
use crate::ffield::{field_of_size, ElementRepr, FieldDescriptor, FieldElement, GaussTable};
use crate::gammatriple::{
    balanced_triple_from_params, normalize_minors, params_from_triple, parse_fraction_list, triple_from_params,
    GammaTriple, HypergeometricParams,
};
use crate::hypersum::{f_extended, f_triple, serialize_complex, Definition};
use crate::oracle::{bf_compact_i, bf_compact_ii, bf_projective_dwork, bf_torus, OracleConfig};
use crate::selftest;
use crate::toric::{analyze, cyclic_cover_hypersurface, HypersurfaceJson, LaurentHypersurface};

pub const SCHEMA: &str = "hgm-report/1";

#[derive(Parser, Debug)]
#[command(name = "hgm", version, about = "Finite hypergeometric sums and toric point counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Oracle enumeration budget (field operations); overrides HGM_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Oracle worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct TripleArgs {
    /// Comma-separated γ.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Comma-separated δ (defaults to zeros).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long = "N", default_value_t = 1)]
    pub n: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Compactification {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    Torus,
    Cover,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TripleMethod {
    Example,
    Balanced,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate F_q from a gamma triple or from parameters.
    Hypersum {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        q: u64,
        /// Field element: integer code or digit list such as [1,2].
        #[arg(long)]
        t: String,
    },
    /// Hypergeometric parameters of a gamma triple.
    Params {
        #[command(flatten)]
        triple: TripleArgs,
    },
    /// A gamma triple representing the given parameters.
    Triple {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, value_enum, default_value = "example")]
        method: TripleMethod,
    },
    /// Point count of a hypersurface or cyclic cover.
    Count {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "II")]
        compactification: Compactification,
        #[command(flatten)]
        triple: TripleArgs,
        /// Field size for cyclic covers.
        #[arg(long)]
        q: Option<u64>,
        /// Parameter of the cyclic cover.
        #[arg(long)]
        t: Option<String>,
        /// Run the brute-force oracle and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Point count of the projective Dwork hypersurface.
    Dwork {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        u: String,
        #[arg(long)]
        verify: bool,
    },
    /// Gale data, face lattice and fan summary.
    Gale {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate random test hypersurfaces.
    Corpus {
        #[arg(long, default_value_t = selftest::CORPUS_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        per_pair: usize,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Run only this criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub formula: Option<u64>,
    pub oracle: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub residuals: Vec<f64>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub wall_seconds: f64,
}

/// Exit code for an error: 1 for parse errors, 3 for mismatches, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 1,
        Error::Mismatch(_) | Error::Residual { .. } | Error::Integrality(_) => 3,
        _ => 2,
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?} in {s:?}"))))
        .collect()
}

fn parse_element(field: &FieldDescriptor, s: &str) -> Result<FieldElement> {
    let repr: ElementRepr =
        serde_json::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad field element {s:?}")))?;
    field.from_repr(&repr)
}

fn parse_params(alpha: &str, beta: &str) -> Result<HypergeometricParams> {
    let conv = |s: &str| if s.trim().is_empty() { Ok(Vec::new()) } else { parse_fraction_list(s) };
    HypergeometricParams::new(conv(alpha)?, conv(beta)?)
}

impl TripleArgs {
    fn build(&self) -> Result<GammaTriple> {
        let gamma = parse_ints(self.gamma.as_deref().ok_or_else(|| Error::Parse("--gamma is required".into()))?)?;
        let delta = match &self.delta {
            Some(d) => parse_ints(d)?,
            None => vec![0; gamma.len()],
        };
        if delta.len() != gamma.len() {
            return Err(Error::Triple("γ and δ have different lengths".into()));
        }
        GammaTriple::new(gamma, delta, self.n)
    }
}

fn load_hypersurface(path: &PathBuf) -> Result<LaurentHypersurface> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let j: HypersurfaceJson =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    LaurentHypersurface::from_json(&j)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

#[derive(Serialize)]
struct Complex {
    #[serde(serialize_with = "serialize_complex")]
    value: num_complex::Complex64,
}

fn compare(name: &str, result: &CountResult, oracle: u64) -> Check {
    Check { name: name.into(), pass: result.rounded == oracle, formula: Some(result.rounded), oracle: Some(oracle) }
}

struct Outcome {
    inputs: Value,
    outputs: Value,
    residuals: Vec<f64>,
    checks: Vec<Check>,
}

fn cmd_hypersum(triple: &TripleArgs, alpha: &Option<String>, beta: &Option<String>, q: u64, t: &str) -> Result<Outcome> {
    let field = field_of_size(q)?;
    let gt = GaussTable::for_field(&field)?;
    let x = parse_element(&field, t)?;
    let (value, definition, used, params) = match (alpha, beta) {
        (Some(a), Some(b)) => {
            let p = parse_params(a, b)?;
            let v = f_extended(&p, &gt, x)?;
            (v.value, v.definition, v.triple, p)
        }
        (None, None) => {
            let tr = triple.build()?;
            let p = params_from_triple(&tr)?;
            (f_triple(&tr, &gt, x)?, Definition::Triple, Some(tr), p)
        }
        _ => return Err(Error::Parse("--alpha and --beta go together".into())),
    };
    Ok(Outcome {
        inputs: json!({ "q": q, "t": field.to_repr(x), "gamma": triple.gamma.as_deref().map(parse_ints).transpose()?,
            "delta": triple.delta.as_deref().map(parse_ints).transpose()?, "N": triple.n, "alpha": alpha, "beta": beta }),
        outputs: json!({
            "value": to_value(&Complex { value })["value"],
            "definition": definition,
            "triple": used,
            "params": params,
        }),
        residuals: vec![],
        checks: vec![],
    })
}

fn cmd_params(triple: &TripleArgs) -> Result<Outcome> {
    let t = triple.build()?;
    let p = params_from_triple(&t)?;
    let (r, s) = t.signs();
    Ok(Outcome {
        inputs: to_value(&t),
        outputs: json!({ "params": p, "r": r, "s": s }),
        residuals: vec![],
        checks: vec![],
    })
}

fn cmd_triple(alpha: &str, beta: &str, method: TripleMethod) -> Result<Outcome> {
    let p = parse_params(alpha, beta)?;
    let t = match method {
        TripleMethod::Example => triple_from_params(&p)?,
        TripleMethod::Balanced => balanced_triple_from_params(&p)?,
    };
    let back = params_from_triple(&t)?;
    let normalized = normalize_minors(&t).ok().map(|(t, k)| json!({ "triple": t, "k": k }));
    Ok(Outcome {
        inputs: json!({ "params": p }),
        outputs: json!({ "triple": t, "normalized": normalized }),
        residuals: vec![],
        checks: vec![Check { name: "round trip".into(), pass: back == p, formula: None, oracle: None }],
    })
}

fn cmd_count(
    input: &Option<PathBuf>,
    comp: Compactification,
    triple: &TripleArgs,
    q: Option<u64>,
    t: &Option<String>,
    verify: bool,
    cfg: &OracleConfig,
) -> Result<Outcome> {
    let mut checks = Vec::new();
    if comp == Compactification::Cover {
        let tr = triple.build()?;
        let q = q.ok_or_else(|| Error::Parse("--q is required for covers".into()))?;
        let field = field_of_size(q)?;
        let gt = GaussTable::for_field(&field)?;
        let tval = parse_element(&field, t.as_deref().ok_or_else(|| Error::Parse("--t is required for covers".into()))?)?;
        let result = count_cyclic_cover(&tr, &gt, tval)?;
        if verify {
            let (h, _) = cyclic_cover_hypersurface(&tr, &field, tval)?;
            checks.push(compare("compactification II oracle", &result, bf_compact_ii(&h, cfg)?.total));
        }
        return Ok(Outcome {
            inputs: json!({ "triple": tr, "q": q, "t": field.to_repr(tval), "compactification": "cover" }),
            residuals: vec![result.residual],
            outputs: to_value(&result),
            checks,
        });
    }
    let path = input.as_ref().ok_or_else(|| Error::Parse("--input is required".into()))?;
    let h = load_hypersurface(path)?;
    let g = analyze(&h)?;
    let gt = GaussTable::for_field(h.field())?;
    let (result, name) = match comp {
        Compactification::I => (count_compact_i(&g, &gt)?, "I"),
        Compactification::II => (count_compact_ii(&g, &gt)?, "II"),
        _ => (count_stratum(&g, &gt, &[])?, "torus"),
    };
    if verify {
        let oracle = match comp {
            Compactification::I => bf_compact_i(&h, cfg)?.total,
            Compactification::II => bf_compact_ii(&h, cfg)?.total,
            _ => bf_torus(&h, cfg)?,
        };
        checks.push(compare("oracle", &result, oracle));
    }
    Ok(Outcome {
        inputs: json!({ "hypersurface": h.to_json(), "compactification": name }),
        residuals: vec![result.residual],
        outputs: to_value(&result),
        checks,
    })
}

fn cmd_dwork(d: usize, q: u64, u: &str, verify: bool, cfg: &OracleConfig) -> Result<Outcome> {
    let field = field_of_size(q)?;
    let gt = GaussTable::for_field(&field)?;
    let u = parse_element(&field, u)?;
    let spec = DworkSpec::new(d, &gt, u)?;
    let result = dwork_count(&spec, &gt)?;
    let classes: Vec<Value> = parameter_classes(result.decomposition.as_deref().unwrap_or_default())
        .into_iter()
        .map(|(p, k)| json!({ "params": p, "multiplicity": k }))
        .collect();
    let mut checks = Vec::new();
    if verify {
        checks.push(compare("projective oracle", &result, bf_projective_dwork(&field, d, u, cfg)?));
    }
    let mut outputs = to_value(&result);
    outputs["classes"] = Value::Array(classes);
    Ok(Outcome { inputs: to_value(&spec), residuals: vec![result.residual], outputs, checks })
}

fn cmd_gale(input: &PathBuf) -> Result<Outcome> {
    let h = load_hypersurface(input)?;
    let g = analyze(&h)?;
    let lambdas = g.lambda_set()?;
    Ok(Outcome {
        inputs: json!({ "hypersurface": h.to_json() }),
        outputs: json!({
            "gale": g,
            "lambda": lambdas,
            "faces": g.faces(),
            "staircase_cones": g.staircase_fan().len(),
            "fan": g.fan_report()?,
            "regularity": g.regularity()?,
        }),
        residuals: vec![],
        checks: vec![],
    })
}

fn cmd_selftest(criterion: Option<usize>, cfg: &OracleConfig) -> Result<Outcome> {
    let reports = match criterion {
        Some(id) if !(1..=14).contains(&id) => return Err(Error::Domain(format!("no criterion {id}"))),
        Some(id) => vec![selftest::run(id, cfg)],
        None => selftest::run_all(cfg),
    };
    for r in &reports {
        eprintln!("{r}");
    }
    Ok(Outcome {
        inputs: json!({ "criterion": criterion }),
        checks: reports
            .iter()
            .map(|r| Check { name: format!("criterion {}: {}", r.id, r.title), pass: r.pass, formula: None, oracle: None })
            .collect(),
        outputs: to_value(&reports),
        residuals: vec![],
    })
}

fn dispatch(cli: &Cli, cfg: &OracleConfig) -> Result<(String, Outcome)> {
    let out = match &cli.command {
        Command::Hypersum { triple, alpha, beta, q, t } => ("hypersum", cmd_hypersum(triple, alpha, beta, *q, t)?),
        Command::Params { triple } => ("params", cmd_params(triple)?),
        Command::Triple { alpha, beta, method } => ("triple", cmd_triple(alpha, beta, *method)?),
        Command::Count { input, compactification, triple, q, t, verify } => {
            ("count", cmd_count(input, *compactification, triple, *q, t, *verify, cfg)?)
        }
        Command::Dwork { d, q, u, verify } => ("dwork", cmd_dwork(*d, *q, u, *verify, cfg)?),
        Command::Gale { input } => ("gale", cmd_gale(input)?),
        Command::Corpus { seed, per_pair } => (
            "corpus",
            Outcome {
                inputs: json!({ "seed": seed, "per_pair": per_pair }),
                outputs: to_value(&corpus::generate(*seed, *per_pair)?),
                residuals: vec![],
                checks: vec![],
            },
        ),
        Command::Selftest { criterion } => ("selftest", cmd_selftest(*criterion, cfg)?),
    };
    Ok((out.0.to_string(), out.1))
}

/// Runs the CLI on the given arguments and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut cfg = OracleConfig::from_env();
    if let Some(b) = cli.budget {
        cfg = cfg.with_budget(b);
    }
    if let Some(j) = cli.jobs {
        cfg = cfg.with_jobs(j);
    }
    let start = Instant::now();
    match dispatch(&cli, &cfg) {
        Ok((command, o)) => {
            let pass = o.checks.iter().all(|c| c.pass);
            let report = RunReport {
                schema: SCHEMA,
                command,
                inputs: o.inputs,
                outputs: o.outputs,
                residuals: o.residuals,
                checks: o.checks,
                pass,
                wall_seconds: start.elapsed().as_secs_f64(),
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            if pass {
                0
            } else {
                eprintln!("verification failed");
                3
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
