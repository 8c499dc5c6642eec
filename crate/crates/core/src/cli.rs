//! Batch command line interface: argument parsing, quiver loading and JSON
//! reports.
//!
//! Exit statuses: 0 verified success, 1 failure with a witness, 2 usage or
//! input error, 3 inconclusive oracle, 4 budget exhausted.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cone::{build_sigma_hrep, to_i64, HCone};
use crate::dw::{verify_dw, wcal_s, Circ, FaceSummary, DEFAULT_ENUMERATION_BUDGET};
use crate::error::{Error, Result};
use crate::homext::{HomExt, SamplingPolicy};
use crate::linalg::int_vec;
use crate::oracle::{
    alpha_circ_beta, derive_seed, is_semistable, random_rep, si_weights_by_degree, CountPolicy,
    DEFAULT_BUDGET, DEFAULT_MONOMIAL_BUDGET,
};
use crate::quiver::{DimensionVector, Quiver, RawQuiver, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

pub const CONVENTIONS_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(name = "quiver-cones", version, about = "Semi-invariant cones of acyclic quivers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// H- and V-description of the cone of weights of semi-invariants
    Cone(Flags),
    /// Faces of the cone up to a codimension
    Faces(Flags),
    /// Schur and rational Schur tests
    Schur(Flags),
    /// Canonical decomposition
    Candecomp(Flags),
    /// Well-covering decompositions by rational Schur roots
    Decomp(Flags),
    /// Check that well-covering decompositions parametrize the faces
    DwVerify(Flags),
    /// Finite-field oracles
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug, Clone)]
pub enum OracleCommand {
    /// Sampled generic hom against the recursion
    Hom(Flags),
    /// Sampled generic ext against the recursion
    Ext(Flags),
    /// Number of alpha-dimensional subrepresentations of a general (alpha+beta)-representation
    Circ(Flags),
    /// King semistability of random representations against cone membership
    Ss(Flags),
    /// Weights of semi-invariants by degree
    Si(Flags),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Quiver file (.json or .toml) or a builtin name such as A3 or K2
    #[arg(long)]
    pub quiver: Option<String>,
    /// Dimension vector, comma separated, in declared vertex order
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Weight, comma separated
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<String>,
    #[arg(long = "s-max")]
    pub s_max: Option<usize>,
    #[arg(long = "max-codim")]
    pub max_codim: Option<usize>,
    /// Maximal polynomial degree
    #[arg(long)]
    pub deg: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Comma separated primes
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Enumeration budget (subspace nodes, or monomials for `oracle si`)
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Cone,
    Faces,
    Schur,
    Candecomp,
    Decomp,
    DwVerify,
    OracleHom,
    OracleExt,
    OracleCirc,
    OracleSs,
    OracleSi,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Cone => "cone",
            CommandKind::Faces => "faces",
            CommandKind::Schur => "schur",
            CommandKind::Candecomp => "candecomp",
            CommandKind::Decomp => "decomp",
            CommandKind::DwVerify => "dw-verify",
            CommandKind::OracleHom => "oracle hom",
            CommandKind::OracleExt => "oracle ext",
            CommandKind::OracleCirc => "oracle circ",
            CommandKind::OracleSs => "oracle ss",
            CommandKind::OracleSi => "oracle si",
        }
    }

    pub fn randomized(self) -> bool {
        matches!(
            self,
            CommandKind::Decomp
                | CommandKind::DwVerify
                | CommandKind::OracleHom
                | CommandKind::OracleExt
                | CommandKind::OracleCirc
                | CommandKind::OracleSs
        )
    }
}

/// Validated command line, before any file is read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub quiver: Option<String>,
    pub beta: Vec<u32>,
    pub alpha: Option<Vec<u32>>,
    pub sigma: Option<Vec<i64>>,
    pub s_max: Option<usize>,
    pub max_codim: Option<usize>,
    pub deg: Option<u32>,
    pub seed: Option<u64>,
    pub primes: Option<Vec<u64>>,
    pub trials: Option<usize>,
    pub budget: Option<u64>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn parse_list<T: std::str::FromStr>(field: &str, s: &str) -> Result<Vec<T>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.is_empty() {
        return Err(Error::parse(field, "empty list"));
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::parse(field, format!("cannot read `{}`", x.trim())))
        })
        .collect()
}

fn positive<T: PartialOrd + Default + Copy>(field: &str, v: Option<T>) -> Result<Option<T>> {
    match v {
        Some(x) if x <= T::default() => Err(Error::parse(field, "must be positive")),
        _ => Ok(v),
    }
}

impl RunConfig {
    pub fn from_flags(command: CommandKind, f: &Flags) -> Result<Self> {
        let beta = parse_list("--beta", f.beta.as_deref().ok_or_else(|| Error::parse("--beta", "required"))?)?;
        let alpha = f.alpha.as_deref().map(|s| parse_list("--alpha", s)).transpose()?;
        let sigma = f.sigma.as_deref().map(|s| parse_list("--sigma", s)).transpose()?;
        let primes = f.primes.as_deref().map(|s| parse_list("--primes", s)).transpose()?;
        let needs_alpha = matches!(
            command,
            CommandKind::OracleHom | CommandKind::OracleExt | CommandKind::OracleCirc
        );
        if needs_alpha && alpha.is_none() {
            return Err(Error::parse("--alpha", "required"));
        }
        if command == CommandKind::OracleSs && sigma.is_none() {
            return Err(Error::parse("--sigma", "required"));
        }
        if command.randomized() && f.seed.is_none() {
            return Err(Error::parse("--seed", "required for randomized commands"));
        }
        Ok(RunConfig {
            command,
            quiver: f.quiver.clone(),
            beta,
            alpha,
            sigma,
            s_max: positive("--s-max", f.s_max)?,
            max_codim: f.max_codim,
            deg: f.deg,
            seed: f.seed,
            primes,
            trials: positive("--trials", f.trials)?,
            budget: positive("--budget", f.budget)?,
            out: f.out.clone(),
        })
    }
}

impl Command {
    fn split(&self) -> (CommandKind, &Flags) {
        match self {
            Command::Cone(f) => (CommandKind::Cone, f),
            Command::Faces(f) => (CommandKind::Faces, f),
            Command::Schur(f) => (CommandKind::Schur, f),
            Command::Candecomp(f) => (CommandKind::Candecomp, f),
            Command::Decomp(f) => (CommandKind::Decomp, f),
            Command::DwVerify(f) => (CommandKind::DwVerify, f),
            Command::Oracle(o) => match o {
                OracleCommand::Hom(f) => (CommandKind::OracleHom, f),
                OracleCommand::Ext(f) => (CommandKind::OracleExt, f),
                OracleCommand::Circ(f) => (CommandKind::OracleCirc, f),
                OracleCommand::Ss(f) => (CommandKind::OracleSs, f),
                OracleCommand::Si(f) => (CommandKind::OracleSi, f),
            },
        }
    }
}

/// Parses the command line (without reading any file).
pub fn parse_args<I, T>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::parse("arguments", e.to_string()))?;
    let (kind, flags) = cli.command.split();
    RunConfig::from_flags(kind, flags)
}

/// Reads a quiver from a `.json` or `.toml` file, or resolves a builtin name.
pub fn load_quiver(spec: &str) -> Result<Quiver> {
    let path = Path::new(spec);
    if !path.exists() {
        if let Some(q) = Quiver::named(spec) {
            return Ok(q);
        }
        return Err(Error::parse("--quiver", format!("no such file or builtin quiver `{spec}`")));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse("--quiver", format!("{}: {e}", path.display())))?;
    let raw: RawQuiver = match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::from_str(&text).map_err(|e| Error::parse("--quiver", e.to_string()))?,
        Some("json") => serde_json::from_str(&text).map_err(|e| Error::parse("--quiver", e.to_string()))?,
        _ => serde_json::from_str(&text)
            .or_else(|_| toml::from_str(&text))
            .map_err(|e: toml::de::Error| Error::parse("--quiver", e.to_string()))?,
    };
    Quiver::validate(&raw)
}

fn check_vector(q: &Quiver, field: &str, len: usize) -> Result<()> {
    if len != q.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "{field} has {len} entries but the quiver has {} vertices",
            q.num_vertices()
        )));
    }
    Ok(())
}

/// Parses the command line, loads the quiver and checks vector lengths.
pub fn parse_inputs<I, T>(args: I) -> Result<(RunConfig, Quiver, DimensionVector)>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = parse_args(args)?;
    let (q, beta) = load_for(&cfg)?;
    Ok((cfg, q, beta))
}

fn load_for(cfg: &RunConfig) -> Result<(Quiver, DimensionVector)> {
    let spec = cfg
        .quiver
        .as_deref()
        .ok_or_else(|| Error::parse("--quiver", "required"))?;
    let q = load_quiver(spec)?;
    check_vector(&q, "--beta", cfg.beta.len())?;
    if let Some(a) = &cfg.alpha {
        check_vector(&q, "--alpha", a.len())?;
    }
    if let Some(s) = &cfg.sigma {
        check_vector(&q, "--sigma", s.len())?;
    }
    Ok((q, DimensionVector::new(cfg.beta.clone())))
}

/// Conventions embedded in every report.
pub fn conventions() -> Value {
    json!({
        "version": CONVENTIONS_VERSION,
        "euler_form": "<alpha,beta> = sum_s alpha(s) beta(s) - sum_(a: t -> h) alpha(t) beta(h)",
        "weights": "sigma(alpha) = sum_s sigma(s) alpha(s); a semi-invariant f has weight tau when f(g.R) = prod_s det g(s)^tau(s) f(R), and the cone collects sigma = -tau",
        "action": "(g.R)(a) = g(head a) R(a) g(tail a)^-1",
        "cone": "Sigma(Q,beta) = { sigma : sigma(beta) = 0, sigma(alpha) <= 0 for every generic subdimension alpha of beta }; inequalities are written n.x <= 0",
        "vector_order": "vectors are aligned with the declared vertex order of the quiver file",
        "ordered_decomposition": "(beta_1, ..., beta_s) assigns weight s + 1 - k to beta_k; mu(sigma, D) = sum_k (s + 1 - k) sigma(beta_k)",
        "well_covering": "beta_i o beta_j = 1 for all i < j",
        "codimension": "faces are measured by codimension in the full weight space; theta of s parts is checked to have codimension s",
        "subrep_counts": "alpha o beta counts closed points of degree <= extension_degree over each prime, accepted only when all samples agree",
    })
}

#[derive(Debug)]
pub struct Outcome {
    pub report: String,
    pub exit: i32,
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Budget(_) | Error::TooLarge { .. } => EXIT_BUDGET,
        Error::Inconclusive { .. } => EXIT_INCONCLUSIVE,
        Error::NotWellCovering(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn error_value(e: &Error) -> Value {
    let mut v = json!({ "message": e.to_string() });
    if let Error::Inconclusive { evidence, .. } = e {
        v["evidence"] = serde_json::to_value(evidence).expect("serializable");
    }
    v
}

fn status_name(code: i32) -> &'static str {
    match code {
        EXIT_OK => "success",
        EXIT_FAILURE => "failure",
        EXIT_INCONCLUSIVE => "inconclusive",
        EXIT_BUDGET => "budget",
        _ => "usage-error",
    }
}

fn document(command: &str, inputs: Value, exit: i32, body: (&str, Value)) -> Outcome {
    let mut doc = serde_json::Map::new();
    doc.insert("tool".into(), json!("quiver-cones"));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("command".into(), json!(command));
    doc.insert("conventions".into(), conventions());
    doc.insert("inputs".into(), inputs);
    doc.insert("status".into(), json!(status_name(exit)));
    doc.insert("exit_code".into(), json!(exit));
    doc.insert(body.0.into(), body.1);
    let mut report = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
    report.push('\n');
    Outcome { report, exit }
}

/// Runs a validated configuration. Never panics on bad input; every error
/// becomes a report with its exit status.
pub fn run(cfg: &RunConfig) -> Outcome {
    let mut inputs = serde_json::to_value(cfg).expect("serializable");
    let result = load_for(cfg).and_then(|(q, beta)| {
        inputs["quiver_definition"] = serde_json::to_value(q.to_raw()).expect("serializable");
        execute(cfg, &q, &beta)
    });
    match result {
        Ok((exit, out)) => document(cfg.command.name(), inputs, exit, ("output", out)),
        Err(e) => {
            let code = exit_for(&e);
            document(cfg.command.name(), inputs, code, ("error", error_value(&e)))
        }
    }
}

/// Parses, runs and writes the report; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (kind, flags) = cli.command.split();
    let outcome = match RunConfig::from_flags(kind, flags) {
        Ok(cfg) => run(&cfg),
        Err(e) => document(kind.name(), json!({}), EXIT_USAGE, ("error", error_value(&e))),
    };
    match &flags.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.report) {
                eprintln!("cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{}", outcome.report),
    }
    outcome.exit
}

fn sampling(cfg: &RunConfig) -> SamplingPolicy {
    let d = SamplingPolicy::default();
    SamplingPolicy {
        trials: cfg.trials.unwrap_or(d.trials),
        primes: cfg.primes.clone().unwrap_or(d.primes),
        seed: cfg.seed.unwrap_or_default(),
    }
}

fn count_policy(cfg: &RunConfig) -> CountPolicy {
    let d = CountPolicy::default();
    CountPolicy {
        primes: cfg.primes.clone().unwrap_or(d.primes),
        samples_per_prime: cfg.trials.unwrap_or(d.samples_per_prime),
        budget: cfg.budget.unwrap_or(d.budget),
        seed: cfg.seed.unwrap_or_default(),
        ..d
    }
}

fn vecs(v: &[crate::linalg::IntVec]) -> Vec<Vec<i64>> {
    v.iter().map(|x| to_i64(x)).collect()
}

fn cone_value(c: &HCone) -> Value {
    let v = c.rays();
    let facets: Vec<Value> = c
        .facets()
        .into_iter()
        .map(|i| {
            let ineq = &c.inequalities()[i];
            json!({ "index": i, "normal": to_i64(&ineq.normal), "labels": ineq.labels })
        })
        .collect();
    let inequalities: Vec<Value> = c
        .inequalities()
        .iter()
        .map(|i| json!({ "normal": to_i64(&i.normal), "labels": i.labels }))
        .collect();
    json!({
        "ambient_dim": c.ambient_dim(),
        "equalities": vecs(c.equalities()),
        "inequalities": inequalities,
        "facets": facets,
        "implicit_equalities": c.implicit_equalities(),
        "rays": vecs(&v.rays),
        "lineality": vecs(&v.lineality),
        "cone_dim": c.cone_dim(),
    })
}

fn execute(cfg: &RunConfig, q: &Quiver, beta: &DimensionVector) -> Result<(i32, Value)> {
    let he = HomExt::new(q);
    let alpha = cfg.alpha.clone().map(DimensionVector::new);
    let n = q.num_vertices();
    match cfg.command {
        CommandKind::Cone => {
            let c = build_sigma_hrep(&he, beta)?;
            let mut out = cone_value(&c);
            out["rational_schur"] = json!(he.is_rational_schur_root(beta)?);
            Ok((EXIT_OK, out))
        }
        CommandKind::Faces => {
            let c = build_sigma_hrep(&he, beta)?;
            let k = cfg.max_codim.unwrap_or(n).min(n);
            let faces: Vec<FaceSummary> = c.faces_up_to_codim(k).iter().map(FaceSummary::from).collect();
            Ok((EXIT_OK, json!({ "cone": cone_value(&c), "max_codim": k, "faces": faces })))
        }
        CommandKind::Schur => Ok((
            EXIT_OK,
            json!({
                "schur": he.is_schur_root(beta)?,
                "rational_schur": he.is_rational_schur_root(beta)?,
                "generic_subdimensions": he.generic_subdims(beta)?,
            }),
        )),
        CommandKind::Candecomp => {
            let parts = he.canonical_decomposition(beta)?;
            Ok((EXIT_OK, json!({ "parts": parts })))
        }
        CommandKind::Decomp => {
            let circ = Circ::new(&he, count_policy(cfg));
            let s_max = cfg.s_max.unwrap_or(n);
            let mut steps = Vec::new();
            for s in 1..=s_max {
                let w = wcal_s(&circ, beta, s, DEFAULT_ENUMERATION_BUDGET)?;
                steps.push(json!({ "s": s, "sets": w.sets, "rejected": w.rejected }));
            }
            Ok((EXIT_OK, json!({ "steps": steps, "policy": circ.policy() })))
        }
        CommandKind::DwVerify => {
            let circ = Circ::new(&he, count_policy(cfg));
            let s_max = cfg.s_max.unwrap_or(n);
            let r = verify_dw(&circ, beta, s_max, DEFAULT_ENUMERATION_BUDGET)?;
            let code = if r.any_failure() {
                EXIT_FAILURE
            } else if r.any_inconclusive() {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            let mut out = serde_json::to_value(&r).expect("serializable");
            out["bijective"] = json!(r.bijective());
            out["policy"] = serde_json::to_value(circ.policy()).expect("serializable");
            Ok((code, out))
        }
        CommandKind::OracleHom | CommandKind::OracleExt => {
            let alpha = alpha.expect("validated");
            let sampled = he.generic_hom(&alpha, beta, &sampling(cfg))?;
            let recursive = he.recursive(&alpha, beta)?;
            let agree = sampled.hom == recursive.hom && sampled.ext == recursive.ext;
            let code = if agree { EXIT_OK } else { EXIT_FAILURE };
            Ok((
                code,
                json!({
                    "euler_form": q.euler_form(&alpha, beta)?,
                    "sampled": sampled,
                    "recursive": recursive,
                    "agree": agree,
                }),
            ))
        }
        CommandKind::OracleCirc => {
            let alpha = alpha.expect("validated");
            let policy = count_policy(cfg);
            let c = alpha_circ_beta(&he, &alpha, beta, &policy)?;
            Ok((EXIT_OK, json!({ "result": c, "policy": policy })))
        }
        CommandKind::OracleSs => {
            let sigma = Weight::new(cfg.sigma.clone().expect("validated"));
            let primes = cfg.primes.clone().unwrap_or_else(|| vec![32003]);
            let trials = cfg.trials.unwrap_or(5);
            let budget = cfg.budget.unwrap_or(DEFAULT_BUDGET);
            let seed = cfg.seed.expect("validated");
            let c = build_sigma_hrep(&he, beta)?;
            let member = c.contains(&int_vec(sigma.entries()));
            let mut samples = Vec::new();
            for &p in &primes {
                for t in 0..trials {
                    let s = derive_seed(seed, &[0x55, p, t as u64]);
                    let rep = random_rep(q, beta, p, s)?;
                    let ss = is_semistable(q, &rep, &sigma, budget)?;
                    samples.push(json!({ "prime": p, "seed": s, "semistable": ss }));
                }
            }
            let agree = samples.iter().all(|s| s["semistable"] == json!(member));
            let code = if agree { EXIT_OK } else { EXIT_FAILURE };
            Ok((code, json!({ "in_cone": member, "samples": samples, "agree": agree })))
        }
        CommandKind::OracleSi => {
            let dmax = cfg.deg.unwrap_or(3);
            let budget = cfg.budget.unwrap_or(DEFAULT_MONOMIAL_BUDGET);
            let weights = si_weights_by_degree(q, beta, dmax, budget)?;
            let c = build_sigma_hrep(&he, beta)?;
            let listed: Vec<Value> = weights
                .iter()
                .map(|w| {
                    json!({
                        "degree": w.degree,
                        "sigma": w.sigma,
                        "dim": w.dim,
                        "in_cone": c.contains(&int_vec(w.sigma.entries())),
                    })
                })
                .collect();
            let all_in = listed.iter().all(|w| w["in_cone"] == json!(true));
            let code = if all_in { EXIT_OK } else { EXIT_FAILURE };
            Ok((code, json!({ "dmax": dmax, "weights": listed, "all_in_cone": all_in })))
        }
    }
}
