//! The `prlab` command line.
//!
//! Every subcommand prints one JSON document on stdout and a run manifest
//! on stderr (or to `--manifest PATH`). The manifest records the command
//! with all configuration inlined, so `prlab replay` can rerun it and
//! compare output digests.

use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bounds::{
    bound_linear_equation, bound_obtuse, exact_bounded_monomial_count, gamma, gamma_exponent_identifier,
    gamma_range_check, identifier_exponent_discrepancies, markov_bound, markov_dominates,
    partition_rank_upper_bound_linear, partition_rank_upper_bound_polynomial, verify_poset_lemma,
};
use crate::error::{Error, Result};
use crate::ffield::{Field, FieldSpec, FieldVector};
use crate::indicators::{
    diagonal_value, distinctness_generator, indicator_coefficients, rank_generator, Domain, PartitionFunction,
};
use crate::partition::PartitionLattice;
use crate::scalars::{Rationals, Scalars};
use crate::search::{default_bounds, max_avoiding_set, sandwich_report, ProofStatus, SearchConfig};
use crate::selftest::{run_selftest_with_fault, Fault, Level};
use crate::tensors::{
    check_identifier, verify_decomposition, verify_diagonalization, verify_tensor_semantics, Mode, PropertySpec,
    DEFAULT_TUPLE_BUDGET,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

/// Environment variable overriding the default enumeration budgets.
pub const BUDGET_ENV: &str = "PRLAB_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "prlab", version, about = "Partition lattices, partition indicators and partition-rank bounds")]
pub struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pub human: bool,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the run manifest to this file instead of stderr.
    #[arg(long, global = true)]
    pub manifest: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    /// Partitions of {1..k} with ranks and the Möbius matrix.
    Lattice(LatticeArgs),
    /// Indicator coefficients and diagonal value of a partition function.
    Indicator(ConfigArg),
    /// Tensor and diagonalization checks for a property.
    Verify(ConfigArg),
    /// Closed-form bounds.
    Bound(BoundArgs),
    /// The constant Γ_{p,m} with a certified upper bracket.
    Gamma(GammaArgs),
    /// Largest subset of F_q^n avoiding a property.
    Search(ConfigArg),
    /// Search result compared with the applicable upper bounds.
    Sandwich(ConfigArg),
    /// Internal consistency checks.
    Selftest(SelftestArgs),
    /// Reruns the command recorded in a manifest and compares digests.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct LatticeArgs {
    #[arg(long)]
    pub k: usize,
    /// Leave out the Möbius matrix.
    #[arg(long)]
    #[serde(default)]
    pub no_mobius: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ConfigArg {
    /// JSON configuration: a file path, inline JSON, or `-` for stdin.
    #[arg(long)]
    pub config: String,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct BoundArgs {
    #[command(subcommand)]
    pub formula: Formula,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "formula", rename_all = "snake_case")]
pub enum Formula {
    /// Acute and obtuse angle bound C(n+q+1, q-1) + 4.
    Obtuse {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// (2^k - k - 2) Γ_{p,m}^n for balanced linear equations.
    Linear {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
    /// The exact count bound before the Markov step.
    LinearExact {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
    },
    /// The exponent C_{k,m} deg(g) (q-1) for identifier properties.
    IdentifierExponent {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        deg_g: u64,
        #[arg(long)]
        q: u64,
    },
    /// The two quoted closed-form exponents next to the general formula.
    ExponentDiscrepancies {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        q: u64,
    },
    /// The polynomial-in-n bound for identifier properties.
    Polynomial {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        deg_g: u64,
        #[arg(long)]
        q: u64,
    },
    /// The poset identity behind the rank generator's diagonal value.
    Poset {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        /// Reduce in F_p instead of working over Q.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Markov bound next to the exact monomial count, at x = num/den.
    Markov {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        /// A rational in (0, 1) such as `3/5`.
        #[arg(long)]
        x: String,
    },
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct GammaArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub m: Vec<u64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SelftestArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: LevelArg,
    /// Corrupt one table first: mobius, stirling, bell or residues.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest file written by an earlier run.
    #[arg(long = "from")]
    pub from: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// The command with every configuration inlined.
    pub invocation: Command,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_override: Option<u64>,
    pub elapsed_ms: u64,
    pub exit_code: i32,
    /// SHA-256 of the compact JSON output.
    pub output_sha256: String,
}

/// Outcome of one command: compact JSON output, exit code and manifest.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub output: Value,
    pub exit_code: i32,
    pub manifest: RunManifest,
}

impl Outcome {
    pub fn compact(&self) -> String {
        self.output.to_string()
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Budget(_) | Error::SizeLimit { .. } => EXIT_BUDGET,
        _ => EXIT_CONFIG,
    }
}

fn budget_override() -> Result<Option<u64>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Error::config(format!("{BUDGET_ENV} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn read_config(raw: &str) -> Result<Value> {
    let text = if raw == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::config(format!("reading stdin: {e}")))?;
        s
    } else if raw.trim_start().starts_with('{') {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw).map_err(|e| Error::config(format!("reading {raw}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::config(format!("config is not valid JSON: {e}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::config(e.to_string()))
}

/// Replaces file and stdin configuration with the JSON itself, so that the
/// command can be recorded and replayed.
fn inline(command: Command) -> Result<Command> {
    let fix = |c: ConfigArg| -> Result<ConfigArg> {
        Ok(ConfigArg {
            config: read_config(&c.config)?.to_string(),
        })
    };
    Ok(match command {
        Command::Indicator(c) => Command::Indicator(fix(c)?),
        Command::Verify(c) => Command::Verify(fix(c)?),
        Command::Search(c) => Command::Search(fix(c)?),
        Command::Sandwich(c) => Command::Sandwich(fix(c)?),
        other => other,
    })
}

/// Parses arguments, runs the command and returns its outcome. Errors are
/// reported as JSON `{"error": ...}` with the matching exit code.
pub fn run(cli: &Cli) -> Outcome {
    let threads = cli.threads.unwrap_or_else(rayon::current_num_threads);
    let start = Instant::now();
    let budget = budget_override();
    let invocation = inline(cli.command.clone());
    let (output, exit_code, seed) = match (&invocation, &budget) {
        (Err(e), _) | (_, Err(e)) => (json!({"error": e.to_string()}), exit_code_for(e), None),
        (Ok(cmd), Ok(budget)) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build();
            let result = match pool {
                Ok(pool) => pool.install(|| execute(cmd, *budget)),
                Err(e) => Err(Error::config(format!("thread pool: {e}"))),
            };
            match result {
                Ok((v, code, seed)) => (v, code, seed),
                Err(e) => (json!({"error": e.to_string()}), exit_code_for(&e), None),
            }
        }
    };
    let digest = hex(&Sha256::digest(output.to_string().as_bytes()));
    let manifest = RunManifest {
        tool: "prlab".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        invocation: invocation.unwrap_or_else(|_| cli.command.clone()),
        seed,
        threads,
        budget_override: budget.ok().flatten(),
        elapsed_ms: start.elapsed().as_millis() as u64,
        exit_code,
        output_sha256: digest,
    };
    Outcome {
        output,
        exit_code,
        manifest,
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

type Executed = Result<(Value, i32, Option<u64>)>;

fn execute(cmd: &Command, budget: Option<u64>) -> Executed {
    match cmd {
        Command::Lattice(a) => lattice(a, budget),
        Command::Indicator(c) => indicator(read_config(&c.config)?),
        Command::Verify(c) => verify(read_config(&c.config)?, budget),
        Command::Bound(b) => bound(&b.formula),
        Command::Gamma(g) => gamma_cmd(g),
        Command::Search(c) => search(read_config(&c.config)?, false, budget),
        Command::Sandwich(c) => search(read_config(&c.config)?, true, budget),
        Command::Selftest(s) => selftest(s),
        Command::Replay(r) => replay(&r.from),
    }
}

fn lattice(a: &LatticeArgs, budget: Option<u64>) -> Executed {
    let lat = PartitionLattice::new(a.k)?;
    let partitions: Vec<Value> = (0..lat.len())
        .map(|i| json!({"index": i, "partition": lat.partition(i).to_string(), "rank": lat.rank(i)}))
        .collect();
    let mut out = json!({"k": a.k, "size": lat.len(), "partitions": partitions});
    if !a.no_mobius {
        let cells = (lat.len() as u64).pow(2);
        let budget = budget.unwrap_or(DEFAULT_TUPLE_BUDGET);
        if cells > budget {
            return Err(Error::budget(format!(
                "dense Möbius matrix has {cells} entries, budget is {budget}; pass --no-mobius or raise {BUDGET_ENV}"
            )));
        }
        let m: Vec<Vec<Value>> = lat
            .mobius_matrix()
            .into_iter()
            .map(|row| row.into_iter().map(|v| Value::from(v.to_string().parse::<i64>().unwrap_or(0))).collect())
            .collect();
        out["mobius"] = Value::from(m);
    }
    Ok((out, EXIT_OK, None))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndicatorConfig {
    k: usize,
    /// Work over this field; over Q when absent.
    #[serde(default)]
    field: Option<FieldSpec>,
    #[serde(default = "excludes_top")]
    domain: Domain,
    #[serde(default)]
    f: Option<Value>,
    #[serde(default)]
    generator: Option<Generator>,
}

fn excludes_top() -> Domain {
    Domain::ExcludesTop
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Generator {
    Distinctness,
    Rank { r: usize },
}

fn build_function<S: Scalars>(
    lat: &PartitionLattice,
    s: S,
    domain: Domain,
    f: &Option<Value>,
    generator: &Option<Generator>,
) -> Result<PartitionFunction<S>> {
    match (f, generator) {
        (Some(v), None) => PartitionFunction::from_json(lat, s, domain, v),
        (None, Some(g)) => {
            let f = match g {
                Generator::Distinctness => distinctness_generator(lat, s.clone()),
                Generator::Rank { r } => rank_generator(lat, *r, s.clone())?,
            };
            Ok(if domain == Domain::IncludesTop { f.with_top(s.zero()) } else { f })
        }
        _ => Err(Error::config("give exactly one of \"f\" and \"generator\"")),
    }
}

fn indicator_report<S: Scalars>(lat: &PartitionLattice, f: &PartitionFunction<S>) -> Result<Value> {
    let s = f.scalars();
    let coeffs = indicator_coefficients(f, lat)?;
    let d = diagonal_value(f, lat)?;
    Ok(json!({
        "k": lat.k(),
        "scalars": s.name(),
        "f": f.to_json(lat),
        "coefficients": coeffs.to_json(),
        "support_size": coeffs.support_size(),
        "diagonal_value": s.to_json(&d),
        "diagonal_nonzero": !s.is_zero(&d),
    }))
}

fn indicator(config: Value) -> Executed {
    let c: IndicatorConfig = from_value(config)?;
    let lat = PartitionLattice::new(c.k)?;
    let out = match &c.field {
        None => indicator_report(&lat, &build_function(&lat, Rationals, c.domain, &c.f, &c.generator)?)?,
        Some(spec) => {
            let field = Field::new(spec)?;
            indicator_report(&lat, &build_function(&lat, field, c.domain, &c.f, &c.generator)?)?
        }
    };
    // a vanishing diagonal is reported, not treated as an error
    let code = if out["diagonal_nonzero"] == Value::Bool(true) { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((out, code, None))
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
enum VerifyCheck {
    Semantics,
    Identifier,
    Diagonalization,
    Decomposition,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyConfig {
    property: PropertySpec,
    check: VerifyCheck,
    #[serde(default = "exhaustive")]
    mode: Mode,
    #[serde(default)]
    set: Vec<Value>,
    #[serde(default)]
    f: Option<Value>,
    #[serde(default)]
    generator: Option<Generator>,
    #[serde(default)]
    budget: Option<u64>,
}

fn exhaustive() -> Mode {
    Mode::Exhaustive
}

fn verify(config: Value, budget: Option<u64>) -> Executed {
    let c: VerifyConfig = from_value(config)?;
    let budget = c.budget.or(budget).unwrap_or(DEFAULT_TUPLE_BUDGET);
    let spec = &c.property;
    let field = spec.field();
    let set = c.set.iter().map(|v| field.vector_from_json(v)).collect::<Result<Vec<FieldVector>>>()?;
    let (out, passed) = match c.check {
        VerifyCheck::Semantics => {
            let r = verify_tensor_semantics(spec, c.mode, budget)?;
            (to_json(&r), r.passed)
        }
        VerifyCheck::Identifier => {
            let r = check_identifier(spec, c.mode, budget)?;
            (to_json(&r), r.holds)
        }
        VerifyCheck::Diagonalization => {
            let lat = PartitionLattice::new(spec.k())?;
            let f = build_function(&lat, field.clone(), Domain::ExcludesTop, &c.f, &c.generator)?;
            let r = verify_diagonalization(&f, spec, &set, budget)?;
            (to_json(&r), r.conclusion_holds)
        }
        VerifyCheck::Decomposition => {
            let lat = PartitionLattice::new(spec.k())?;
            let f = build_function(&lat, field.clone(), Domain::IncludesTop, &c.f, &c.generator)?;
            let r = verify_decomposition(&f, spec, &set, budget)?;
            (to_json(&r), r.decomposition_holds && r.scalar_nonzero)
        }
    };
    Ok((out, if passed { EXIT_OK } else { EXIT_CHECK_FAILED }, None))
}

fn report_exit(passed: bool) -> i32 {
    if passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn bound(formula: &Formula) -> Executed {
    let (out, ok) = match *formula {
        Formula::Obtuse { n, q } => {
            let r = bound_obtuse(n, q)?;
            (to_json(&r), r.all_passed())
        }
        Formula::Linear { n, p, k, m } => {
            let r = bound_linear_equation(n, p, k, m)?;
            (to_json(&r), r.all_passed())
        }
        Formula::LinearExact { n, p, k, m } => {
            let v = partition_rank_upper_bound_linear(n, p, k, m)?;
            (json!({"n": n, "p": p, "k": k, "m": m, "value": v.to_string()}), true)
        }
        Formula::IdentifierExponent { k, m, deg_g, q } => {
            let r = gamma_exponent_identifier(k, m, deg_g, q)?;
            (to_json(&r), r.all_passed())
        }
        Formula::ExponentDiscrepancies { k, q } => {
            let rs = identifier_exponent_discrepancies(k, q)?;
            let ok = rs.iter().all(|r| r.all_passed());
            (to_json(&rs), ok)
        }
        Formula::Polynomial { n, k, m, deg_g, q } => {
            let r = partition_rank_upper_bound_polynomial(n, k, m, deg_g, q)?;
            (to_json(&r), r.all_passed())
        }
        Formula::Poset { k, r, p } => {
            let field = p.map(Field::prime).transpose()?;
            let rep = verify_poset_lemma(k, r, field.as_ref())?;
            (to_json(&rep), rep.all_passed())
        }
        Formula::Markov { n, p, m, ref x } => {
            let x: BigRational = x.parse().map_err(|_| Error::config(format!("x = {x:?} is not a rational")))?;
            let value = markov_bound(n, p, m, &x)?;
            let (dominates, count) = markov_dominates(n, p, m, &x)?;
            let d = n * (p - 1) / m;
            debug_assert_eq!(count, exact_bounded_monomial_count(n, p, d));
            (
                json!({"n": n, "p": p, "m": m, "x": x.to_string(), "markov": value, "exact_count": count.to_string(), "dominates": dominates}),
                dominates,
            )
        }
    };
    Ok((out, report_exit(ok), None))
}

fn gamma_cmd(g: &GammaArgs) -> Executed {
    let mut values = Vec::new();
    for &p in &g.p {
        for &m in &g.m {
            values.push(to_json(&gamma(p, m, g.tol)?));
        }
    }
    let check = gamma_range_check(&g.p, &g.m)?;
    let ok = check.all_passed();
    Ok((json!({"values": values, "range_check": check}), report_exit(ok), None))
}

fn search(mut config: Value, sandwich: bool, budget: Option<u64>) -> Executed {
    if let (Some(obj), Some(b)) = (config.as_object_mut(), budget) {
        obj.entry("node_budget").or_insert(Value::from(b));
    }
    let c: SearchConfig = from_value(config)?;
    let result = max_avoiding_set(&c)?;
    let seed = Some(c.seed);
    let exhausted = result.budget_exhausted && result.proof_status == ProofStatus::LowerBoundOnly;
    if !sandwich {
        let code = if !result.witness_check {
            EXIT_CHECK_FAILED
        } else if exhausted {
            EXIT_BUDGET
        } else {
            EXIT_OK
        };
        return Ok((to_json(&result), code, seed));
    }
    let report = sandwich_report(result, &default_bounds(&c)?);
    let code = if !report.consistent {
        EXIT_CHECK_FAILED
    } else if exhausted {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok((to_json(&report), code, seed))
}

fn selftest(s: &SelftestArgs) -> Executed {
    let level = match s.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let fault = s.inject_fault.as_deref().map(str::parse::<Fault>).transpose().map_err(Error::config)?;
    let report = run_selftest_with_fault(level, fault)?;
    Ok((to_json(&report), report_exit(report.passed), None))
}

fn replay(path: &str) -> Executed {
    let text = std::fs::read_to_string(path).map_err(|e| Error::config(format!("reading {path}: {e}")))?;
    let manifest: RunManifest = from_value(
        serde_json::from_str(&text).map_err(|e| Error::config(format!("manifest is not valid JSON: {e}")))?,
    )?;
    if matches!(manifest.invocation, Command::Replay(_)) {
        return Err(Error::config("a replay manifest cannot be replayed"));
    }
    let (output, code, _) = match execute(&manifest.invocation, manifest.budget_override) {
        Ok(r) => r,
        Err(e) => (json!({"error": e.to_string()}), exit_code_for(&e), None),
    };
    let digest = hex(&Sha256::digest(output.to_string().as_bytes()));
    let identical = digest == manifest.output_sha256 && code == manifest.exit_code;
    Ok((
        json!({
            "identical": identical,
            "recorded_sha256": manifest.output_sha256,
            "replayed_sha256": digest,
            "recorded_exit_code": manifest.exit_code,
            "replayed_exit_code": code,
            "output": output,
        }),
        report_exit(identical),
        manifest.seed,
    ))
}

/// Entry point for the binary: parses `std::env::args`, prints the output
/// and manifest, and returns the exit code.
pub fn main_with_args(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&cli);
    let text = if cli.human {
        serde_json::to_string_pretty(&outcome.output).expect("serializable")
    } else {
        outcome.compact()
    };
    println!("{text}");
    let manifest = serde_json::to_string(&outcome.manifest).expect("serializable");
    match &cli.manifest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, manifest + "\n") {
                eprintln!("{}", json!({"error": format!("writing manifest {path}: {e}")}));
            }
        }
        None => eprintln!("{manifest}"),
    }
    outcome.exit_code
}
