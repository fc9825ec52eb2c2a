//! Command-line front end: argument parsing, instance resolution, the
//! subcommands, and JSON/TSV report rendering.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::abelian_type::{
    characteristic_assumptions, classify, default_box_margin, default_h_family, enumerate_lambda_below, minimal_lambda,
    mod_p_datum, select_s, spanning_verdict_with, verification_search, verify_star, HFamilyOptions, ModPDatum,
    SpanningVerdict, Witness,
};
use crate::error::{Error, Result};
use crate::oracle::{oracle_k_alpha, oracle_l_alpha, oracle_l_h};
use crate::root_datum::{RootDatum, Series};
use crate::tangent_bounds::{cartan_cur, check_pair, l_h_detailed, tangent_dimension_cur, BoundTable, PhiSet};
use crate::vector::{format_rational, parse_half, parse_rational, HalfIntVector, Rational};
use crate::weyl_modules::{CartanElement, Characteristic, SearchSet};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_WITNESS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "schubert-tangent",
    version,
    about = "Curve, Finkelberg-Mirkovic and Cartan tangent bounds for affine Schubert varieties of classical type"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for sweeps. Output order does not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = parse_jobs)]
    pub jobs: usize,
}

fn parse_jobs(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// k_alpha and l_alpha for every root, with the relation checks.
    Bounds(InstanceArgs),
    /// The exponent sets Phi^cur and the Phi^FM bound, the Cartan profile and
    /// the curve-spanned tangent dimension.
    Phi(InstanceArgs),
    /// l_H for given or default Cartan directions against min-support k_{-beta}.
    Cartan(CartanArgs),
    /// Certify the root and Cartan equalities for one lambda or every lambda <= mu.
    Verify(VerifyArgs),
    /// Abelian-type classification, selector set and the (*) check.
    Classify(InstanceArgs),
    /// Sum cocharacters over residue embeddings and classify each factor.
    Modp(ModpArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct InstanceArgs {
    /// JSON instance file; inline flags override its fields.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Series letter: A, B, C or D.
    #[arg(long)]
    pub series: Option<String>,
    /// Rank; type A of rank n is modelled on GL_{n+1}.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Comma-separated coordinates, each "p" or "p/2".
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Dominant coweight lambda <= mu; verify sweeps every lambda when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Characteristic: 0 or an odd prime.
    #[arg(long = "char")]
    pub characteristic: Option<u64>,
    /// One-based fundamental weight indices of the search set.
    #[arg(long)]
    pub search: Option<String>,
    /// Margin of the coset box used by the (*) check.
    #[arg(long)]
    pub box_margin: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Random rational directions per support pattern.
    #[arg(long, default_value_t = HFamilyOptions::default().random_per_support)]
    pub random_h: usize,
    /// Seed of the random directions.
    #[arg(long, default_value_t = HFamilyOptions::default().seed)]
    pub seed: u64,
}

impl FamilyArgs {
    fn options(&self) -> HFamilyOptions {
        HFamilyOptions {
            random_per_support: self.random_h,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct CartanArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Coefficients m_beta of H = sum m_beta H_beta; the default family is used when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Cross-check every bound against the brute-force reference.
    #[arg(long)]
    pub oracle: bool,
    /// Treat Cartan witnesses at quaternionic lambda off the boundary as expected.
    #[arg(long)]
    pub expect_dh_gap: bool,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ModpArgs {
    /// JSON file with series, rank, residue_degree and groups.
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long = "char")]
    pub characteristic: Option<u64>,
    #[arg(long)]
    pub expect_dh_gap: bool,
    #[command(flatten)]
    pub family: FamilyArgs,
}

/// A coordinate given either as a JSON string or a JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn doubled(&self) -> Result<i64> {
        match self {
            Scalar::Text(s) => parse_half(s),
            Scalar::Int(i) => Ok(2 * i),
        }
    }
}

/// The JSON instance format.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub series: Option<String>,
    pub rank: Option<usize>,
    pub mu: Option<Vec<Scalar>>,
    #[serde(default)]
    pub lambda: Option<Vec<Scalar>>,
    #[serde(default)]
    pub characteristic: Option<u64>,
    #[serde(default)]
    pub search_set: Option<Vec<usize>>,
    #[serde(default)]
    pub box_margin: Option<i64>,
}

/// Errors reported to the user, tagged with the offending field when known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub kind: &'static str,
    pub field: Option<String>,
    pub message: String,
}

impl InputError {
    fn field(field: &str, message: impl Into<String>) -> Self {
        Self {
            kind: "input",
            field: Some(field.to_string()),
            message: message.into(),
        }
    }

    fn from_error(field: Option<&str>, e: Error) -> Self {
        let kind = match e {
            Error::NotBelow { .. } => "refusal",
            Error::Invariant(_) | Error::CapExceeded { .. } => "internal",
            _ => "input",
        };
        Self {
            kind,
            field: field.map(str::to_string),
            message: e.to_string(),
        }
    }

    fn exit_code(&self) -> i32 {
        if self.kind == "internal" {
            EXIT_INTERNAL
        } else {
            EXIT_INPUT
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self::from_error(None, e)
    }
}

type CliResult<T> = std::result::Result<T, InputError>;

/// A fully validated instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub datum: RootDatum,
    pub mu: HalfIntVector,
    pub lambda: Option<HalfIntVector>,
    pub ch: Characteristic,
    pub search: Option<Vec<usize>>,
    pub box_margin: Option<i64>,
}

impl Instance {
    fn descriptor(&self) -> Value {
        let mut m = Map::new();
        m.insert("type".into(), json!(self.datum.classical_type().to_string()));
        m.insert("mu".into(), json!(self.mu));
        if let Some(l) = &self.lambda {
            m.insert("lambda".into(), json!(l));
        }
        m.insert("characteristic".into(), json!(self.ch.value()));
        if let Some(s) = &self.search {
            m.insert("search_set".into(), json!(s.iter().map(|i| i + 1).collect::<Vec<_>>()));
        }
        if let Some(b) = self.box_margin {
            m.insert("box_margin".into(), json!(b));
        }
        Value::Object(m)
    }

    fn require_lambda(&self) -> CliResult<&HalfIntVector> {
        self.lambda
            .as_ref()
            .ok_or_else(|| InputError::field("lambda", "this command needs lambda"))
    }

    /// The explicit search set, or all fundamental weights.
    fn search_or_all(&self) -> CliResult<SearchSet> {
        let s = match &self.search {
            Some(idx) => SearchSet::new(&self.datum, idx),
            None => SearchSet::all_fundamental(&self.datum),
        };
        s.map_err(|e| InputError::from_error(Some("search_set"), e))
    }
}

fn vector_field(field: &str, raw: &[Scalar]) -> CliResult<HalfIntVector> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| {
            s.doubled()
                .map_err(|e| InputError::field(&format!("{field}[{i}]"), e.to_string()))
        })
        .collect::<CliResult<Vec<_>>>()
        .map(HalfIntVector::from_doubled)
}

fn inline_vector(field: &str, raw: &str) -> CliResult<Vec<Scalar>> {
    Ok(raw
        .split(',')
        .map(|s| Scalar::Text(s.trim().to_string()))
        .filter(|s| !matches!(s, Scalar::Text(t) if t.is_empty()))
        .collect::<Vec<_>>())
    .and_then(|v: Vec<Scalar>| {
        if v.is_empty() {
            Err(InputError::field(field, "empty coordinate list"))
        } else {
            Ok(v)
        }
    })
}

fn index_list(field: &str, raw: &str) -> CliResult<Vec<usize>> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| InputError::field(field, format!("{:?} is not a positive index", s.trim())))
        })
        .collect()
}

/// Parses a JSON instance file's contents; errors carry line and column.
pub fn parse_spec(text: &str) -> CliResult<InstanceSpec> {
    serde_json::from_str(text).map_err(|e| InputError {
        kind: "input",
        field: None,
        message: format!("instance file: {e}"),
    })
}

fn read_file(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| InputError::field("spec", format!("cannot read {}: {e}", path.display())))
}

/// Merges a spec file with inline flags and validates the result.
pub fn resolve(args: &InstanceArgs) -> CliResult<Instance> {
    let mut spec = match &args.spec {
        Some(p) => parse_spec(&read_file(p)?)?,
        None => InstanceSpec::default(),
    };
    if let Some(s) = &args.series {
        spec.series = Some(s.clone());
    }
    if let Some(r) = args.rank {
        spec.rank = Some(r);
    }
    if let Some(m) = &args.mu {
        spec.mu = Some(inline_vector("mu", m)?);
    }
    if let Some(l) = &args.lambda {
        spec.lambda = Some(inline_vector("lambda", l)?);
    }
    if let Some(c) = args.characteristic {
        spec.characteristic = Some(c);
    }
    if let Some(s) = &args.search {
        spec.search_set = Some(index_list("search_set", s)?);
    }
    if let Some(b) = args.box_margin {
        spec.box_margin = Some(b);
    }
    resolve_spec(&spec)
}

pub fn resolve_spec(spec: &InstanceSpec) -> CliResult<Instance> {
    let series: Series = spec
        .series
        .as_deref()
        .ok_or_else(|| InputError::field("series", "missing"))?
        .parse()
        .map_err(|e: Error| InputError::field("series", e.to_string()))?;
    let rank = spec.rank.ok_or_else(|| InputError::field("rank", "missing"))?;
    let datum = RootDatum::from_parts(series, rank).map_err(|e| InputError::from_error(Some("rank"), e))?;
    let mu = vector_field(
        "mu",
        spec.mu.as_deref().ok_or_else(|| InputError::field("mu", "missing"))?,
    )?;
    datum
        .check_dominant_coweight(&mu)
        .map_err(|e| InputError::from_error(Some("mu"), e))?;
    let lambda = match &spec.lambda {
        Some(raw) => {
            let l = vector_field("lambda", raw)?;
            datum
                .check_dominant_coweight(&l)
                .map_err(|e| InputError::from_error(Some("lambda"), e))?;
            check_pair(&datum, &l, &mu).map_err(|e| InputError::from_error(Some("lambda"), e))?;
            Some(l)
        }
        None => None,
    };
    let ch = Characteristic::new(spec.characteristic.unwrap_or(0))
        .map_err(|e| InputError::from_error(Some("characteristic"), e))?;
    let search = match &spec.search_set {
        Some(idx) => {
            let zero_based = idx
                .iter()
                .map(|&i| {
                    if i == 0 || i > datum.rank() {
                        Err(InputError::field(
                            "search_set",
                            format!("index {i} outside 1..={}", datum.rank()),
                        ))
                    } else {
                        Ok(i - 1)
                    }
                })
                .collect::<CliResult<Vec<_>>>()?;
            SearchSet::new(&datum, &zero_based).map_err(|e| InputError::from_error(Some("search_set"), e))?;
            Some(zero_based)
        }
        None => None,
    };
    if let Some(b) = spec.box_margin {
        if b < 0 {
            return Err(InputError::field("box_margin", "must be nonnegative"));
        }
    }
    Ok(Instance {
        datum,
        mu,
        lambda,
        ch,
        search,
        box_margin: spec.box_margin,
    })
}

/// The top-level report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub instance: Value,
    pub results: Value,
    pub witnesses: Vec<Value>,
    pub assumptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<Value>,
}

/// A TSV table.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join("\t");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
        out
    }
}

struct CommandOutput {
    instance: Value,
    results: Value,
    witnesses: Vec<Value>,
    assumptions: Vec<String>,
    table: Table,
    code: i32,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("error: cannot start {} worker threads: {e}\n", cli.jobs),
            }
        }
    };
    let result = pool.install(|| match &cli.command {
        Command::Bounds(a) => resolve(a).and_then(|i| cmd_bounds(&i)),
        Command::Phi(a) => resolve(a).and_then(|i| cmd_phi(&i)),
        Command::Cartan(a) => resolve(&a.instance).and_then(|i| cmd_cartan(&i, a)),
        Command::Verify(a) => resolve(&a.instance).and_then(|i| cmd_verify(&i, a)),
        Command::Classify(a) => resolve(a).and_then(|i| cmd_classify(&i)),
        Command::Modp(a) => cmd_modp(a),
    });
    match result {
        Ok(out) => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: name.to_string(),
                instance: out.instance,
                results: out.results,
                witnesses: out.witnesses,
                assumptions: out.assumptions,
                error: None,
            };
            let stdout = match cli.format {
                Format::Json => to_json(&report),
                Format::Tsv => out.table.render(),
            };
            Outcome {
                code: out.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                command: name.to_string(),
                instance: Value::Null,
                results: Value::Null,
                witnesses: vec![],
                assumptions: vec![],
                error: Some(json!({"kind": e.kind, "field": e.field, "message": e.message})),
            };
            let location = e
                .field
                .as_deref()
                .map(|f| format!(" (field `{f}`)"))
                .unwrap_or_default();
            Outcome {
                code: e.exit_code(),
                stdout: match cli.format {
                    Format::Json => to_json(&report),
                    Format::Tsv => String::new(),
                },
                stderr: format!("error{location}: {}\n", e.message),
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Bounds(_) => "bounds",
        Command::Phi(_) => "phi",
        Command::Cartan(_) => "cartan",
        Command::Verify(_) => "verify",
        Command::Classify(_) => "classify",
        Command::Modp(_) => "modp",
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

fn base_assumptions(inst: &Instance) -> Vec<String> {
    characteristic_assumptions(inst.datum.classical_type(), inst.ch)
}

fn search_note(datum: &RootDatum, search: &SearchSet) -> String {
    format!(
        "l bounds restricted to the search set {{{}}}",
        search.labels(datum).join(", ")
    )
}

fn cmd_bounds(inst: &Instance) -> CliResult<CommandOutput> {
    let lambda = inst.require_lambda()?;
    let datum = &inst.datum;
    let search = inst.search_or_all()?;
    let table = BoundTable::compute(datum, lambda, &inst.mu, &search)?;
    let k_rel = table.k_relation_failures(datum);
    let l_rel = table.l_relation_failures(datum);
    let ineq = table.inequality_failures();
    let mut witnesses = Vec::new();
    for (name, list) in [("k_relation", &k_rel), ("l_relation", &l_rel), ("k_le_l", &ineq)] {
        for &r in list {
            let e = &table.entries[r];
            witnesses.push(json!({"kind": name, "root": e.label, "k": e.k, "l": to_value(e)["l"]}));
        }
    }
    let mut tsv = Table::new(&["root", "vector", "lambda_pairing", "k", "l"]);
    for e in &table.entries {
        tsv.push(vec![
            e.label.clone(),
            e.vector.to_string(),
            e.lambda_pairing.to_string(),
            e.k.to_string(),
            e.l.map_or("unbounded-search".into(), |l| l.to_string()),
        ]);
    }
    let mut assumptions = base_assumptions(inst);
    assumptions.push(search_note(datum, &search));
    Ok(CommandOutput {
        instance: inst.descriptor(),
        results: json!({
            "search": table.search,
            "table": table.entries,
            "checks": {
                "k_relation": k_rel.is_empty(),
                "l_relation": l_rel.is_empty(),
                "k_le_l": ineq.is_empty(),
            },
        }),
        code: if witnesses.is_empty() { EXIT_OK } else { EXIT_WITNESS },
        witnesses,
        assumptions,
        table: tsv,
    })
}

fn phi_entries(datum: &RootDatum, phi: &PhiSet) -> Vec<Value> {
    phi.entries
        .iter()
        .map(|&(r, e)| json!({"root": datum.roots()[r].label, "exponent": e}))
        .collect()
}

fn cmd_phi(inst: &Instance) -> CliResult<CommandOutput> {
    let lambda = inst.require_lambda()?;
    let datum = &inst.datum;
    let search = inst.search_or_all()?;
    let table = BoundTable::compute(datum, lambda, &inst.mu, &search)?;
    let cur = PhiSet::cur_from_table(&table);
    let fm = PhiSet::fm_from_table(&table)?;
    let profile = cartan_cur(datum, lambda, &inst.mu)?;
    let dimension = tangent_dimension_cur(datum, lambda, &inst.mu)?;
    let two_rho_pairing = inst.mu.pairing(datum.two_rho())?;
    let mut tsv = Table::new(&["set", "root", "exponent"]);
    for (name, set) in [("cur", &cur), ("fm_bound", &fm)] {
        for &(r, e) in &set.entries {
            tsv.push(vec![name.into(), datum.roots()[r].label.clone(), e.to_string()]);
        }
    }
    for (i, k) in profile.exponents.iter().enumerate() {
        tsv.push(vec!["cartan".into(), RootDatum::simple_label(i), k.to_string()]);
    }
    let subset = cur.is_subset(&fm);
    let witnesses = if subset {
        vec![]
    } else {
        let extra: Vec<Value> = cur
            .entries
            .difference(&fm.entries)
            .map(|&(r, e)| json!({"root": datum.roots()[r].label, "exponent": e}))
            .collect();
        vec![json!({"kind": "cur_not_in_fm_bound", "entries": extra})]
    };
    let mut assumptions = base_assumptions(inst);
    assumptions.push(search_note(datum, &search));
    Ok(CommandOutput {
        instance: inst.descriptor(),
        results: json!({
            "search": table.search,
            "phi_cur": phi_entries(datum, &cur),
            "phi_fm_bound": phi_entries(datum, &fm),
            "cur_subset_of_fm_bound": subset,
            "cartan": {
                "exponents": profile.exponents.iter().enumerate()
                    .map(|(i, k)| json!({"root": RootDatum::simple_label(i), "exponent": k}))
                    .collect::<Vec<_>>(),
                "dimension": profile.dimension,
            },
            "tangent_dimension_cur": dimension,
            "mu_pairing_two_rho": format_rational(&two_rho_pairing),
        }),
        code: if subset { EXIT_OK } else { EXIT_WITNESS },
        witnesses,
        assumptions,
        table: tsv,
    })
}

fn parse_coefficients(datum: &RootDatum, raw: &str) -> CliResult<CartanElement> {
    let m = raw
        .split(',')
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| InputError::field(&format!("h[{i}]"), e.to_string())))
        .collect::<CliResult<Vec<Rational>>>()?;
    CartanElement::from_coroot_coefficients(datum, &m).map_err(|e| InputError::from_error(Some("h"), e))
}

fn cmd_cartan(inst: &Instance, args: &CartanArgs) -> CliResult<CommandOutput> {
    let lambda = inst.require_lambda()?;
    let datum = &inst.datum;
    let search = inst.search_or_all()?;
    let family = match &args.h {
        Some(raw) => vec![parse_coefficients(datum, raw)?],
        None => default_h_family(datum, args.family.options())?,
    };
    let profile = cartan_cur(datum, lambda, &inst.mu)?;
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    let mut tsv = Table::new(&["coefficients", "coords", "support", "l_h", "min_support_k"]);
    let mut skipped = 0;
    for h in &family {
        if h.check_characteristic(inst.ch).is_err() || h.is_zero_in(inst.ch) {
            if args.h.is_some() {
                h.check_characteristic(inst.ch)
                    .map_err(|e| InputError::from_error(Some("h"), e))?;
                return Err(InputError::from_error(Some("h"), Error::ZeroCartan));
            }
            skipped += 1;
            continue;
        }
        let pair = l_h_detailed(datum, lambda, &inst.mu, h, &search, inst.ch)?;
        let support = h.support(datum, inst.ch);
        let expected = match &support {
            None => 0,
            Some(s) => profile.min_over(s).ok_or(Error::ZeroCartan)?,
        };
        let coeffs: Vec<String> = h
            .coefficients()
            .map(|m| m.iter().map(format_rational).collect())
            .unwrap_or_default();
        let coords: Vec<String> = h.coords().iter().map(format_rational).collect();
        let support_1: Option<Vec<usize>> = support.map(|s| s.iter().map(|i| i + 1).collect());
        tsv.push(vec![
            coeffs.join(","),
            coords.join(","),
            support_1.as_ref().map_or("off-derived".into(), |s| {
                s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
            }),
            pair.value.to_string(),
            expected.to_string(),
        ]);
        let row = json!({
            "coefficients": coeffs,
            "coords": coords,
            "support": support_1,
            "l_h": pair.value,
            "min_support_k": expected,
            "search_weight": pair.search_weight,
            "weight": pair.weight,
        });
        if pair.value != expected {
            let mut w = row.clone();
            w["kind"] = json!("cartan");
            witnesses.push(w);
        }
        rows.push(row);
    }
    let mut assumptions = base_assumptions(inst);
    assumptions.push(search_note(datum, &search));
    if skipped > 0 {
        assumptions.push(format!(
            "{skipped} default directions vanish in characteristic {} and were skipped",
            inst.ch.value()
        ));
    }
    Ok(CommandOutput {
        instance: inst.descriptor(),
        results: json!({
            "search": search.labels(datum),
            "cartan_profile": profile,
            "directions": rows,
        }),
        code: if witnesses.is_empty() { EXIT_OK } else { EXIT_WITNESS },
        witnesses,
        assumptions,
        table: tsv,
    })
}

struct LambdaOutcome {
    lambda: HalfIntVector,
    verdict: SpanningVerdict,
    witnesses: Vec<Witness>,
    checks: Value,
    notes: Vec<String>,
}

fn oracle_checks(
    datum: &RootDatum,
    mu: &HalfIntVector,
    lambda: &HalfIntVector,
    search: &SearchSet,
    family: &[CartanElement],
    ch: Characteristic,
) -> Result<Vec<Witness>> {
    let table = BoundTable::compute(datum, lambda, mu, search)?;
    let weights: Vec<HalfIntVector> = search.entries().iter().map(|e| e.weight.clone()).collect();
    let mut out = Vec::new();
    let show = |v: Option<i64>| v.map_or("unbounded-search".to_string(), |x| x.to_string());
    for e in &table.entries {
        let root = &datum.roots()[e.root];
        let k = oracle_k_alpha(datum, lambda, mu, &root.coroot)?;
        if k != e.k {
            out.push(Witness::OracleMismatch {
                quantity: format!("k[{}]", e.label),
                optimized: e.k.to_string(),
                oracle: k.to_string(),
            });
        }
        let l = oracle_l_alpha(datum, lambda, mu, &root.vector, &weights)?;
        if l != e.l {
            out.push(Witness::OracleMismatch {
                quantity: format!("l[{}]", e.label),
                optimized: show(e.l),
                oracle: show(l),
            });
        }
    }
    if ch.value() == 0 {
        for h in family {
            let optimized = l_h_detailed(datum, lambda, mu, h, search, ch)?.value;
            let oracle = oracle_l_h(datum, lambda, mu, h.coords(), &weights)?;
            if oracle != Some(optimized) {
                out.push(Witness::OracleMismatch {
                    quantity: format!(
                        "l_H[{}]",
                        h.coords().iter().map(format_rational).collect::<Vec<_>>().join(",")
                    ),
                    optimized: optimized.to_string(),
                    oracle: show(oracle),
                });
            }
        }
    }
    Ok(out)
}

fn verify_one(
    inst: &Instance,
    lambda: &HalfIntVector,
    opts: HFamilyOptions,
    with_oracle: bool,
) -> Result<LambdaOutcome> {
    let datum = &inst.datum;
    let (verdict, report) = spanning_verdict_with(datum, &inst.mu, lambda, inst.ch, opts)?;
    let mut witnesses = report.witnesses.clone();
    let mut checks: Map<String, Value> = report
        .checks
        .iter()
        .map(|c| (c.name.clone(), json!({"passed": c.passed, "checked": c.checked})))
        .collect();
    if with_oracle {
        let (_, search) = verification_search(datum, &inst.mu)?;
        let family = default_h_family(datum, opts)?;
        let mismatches = oracle_checks(datum, &inst.mu, lambda, &search, &family, inst.ch)?;
        checks.insert("oracle_agreement".into(), json!({"passed": mismatches.is_empty()}));
        witnesses.extend(mismatches);
    }
    Ok(LambdaOutcome {
        lambda: lambda.clone(),
        verdict,
        witnesses,
        checks: Value::Object(checks),
        notes: report.notes,
    })
}

fn verdict_name(v: &SpanningVerdict) -> &'static str {
    match v {
        SpanningVerdict::Certified => "certified",
        SpanningVerdict::CertifiedMinimalLambda => "certified_minimal_lambda",
        SpanningVerdict::NotCertified { .. } => "not_certified",
    }
}

fn witness_with_lambda(w: &Witness, lambda: &HalfIntVector, extra: &[(&str, Value)]) -> Value {
    let mut v = to_value(w);
    if let Value::Object(m) = &mut v {
        m.insert("lambda".into(), json!(lambda));
        for (k, x) in extra {
            m.insert(k.to_string(), x.clone());
        }
    }
    v
}

fn cmd_verify(inst: &Instance, args: &VerifyArgs) -> CliResult<CommandOutput> {
    if inst.search.is_some() {
        return Err(InputError::field(
            "search_set",
            "verify always uses the selector set of the classification",
        ));
    }
    let datum = &inst.datum;
    let class = classify(datum, &inst.mu)?;
    let (_, search) = verification_search(datum, &inst.mu)?;
    let lambdas = match &inst.lambda {
        Some(l) => vec![l.clone()],
        None => enumerate_lambda_below(datum, &inst.mu)?,
    };
    let opts = args.family.options();
    let outcomes: Vec<LambdaOutcome> = lambdas
        .par_iter()
        .map(|l| verify_one(inst, l, opts, args.oracle))
        .collect::<Result<Vec<_>>>()?;
    let mut witnesses = Vec::new();
    let mut per_lambda = Vec::new();
    let mut tsv = Table::new(&["lambda", "verdict", "witnesses", "expected_gaps"]);
    let mut unexpected = 0;
    let mut expected_gaps = 0;
    for o in &outcomes {
        let gaps = o.witnesses.iter().filter(|w| w.is_expected_gap()).count();
        let others = o.witnesses.len() - gaps;
        expected_gaps += gaps;
        unexpected += if args.expect_dh_gap { others } else { o.witnesses.len() };
        for w in &o.witnesses {
            witnesses.push(witness_with_lambda(w, &o.lambda, &[]));
        }
        tsv.push(vec![
            o.lambda.to_string(),
            verdict_name(&o.verdict).into(),
            o.witnesses.len().to_string(),
            gaps.to_string(),
        ]);
        per_lambda.push(json!({
            "lambda": o.lambda,
            "verdict": verdict_name(&o.verdict),
            "checks": o.checks,
            "witness_count": o.witnesses.len(),
            "notes": o.notes,
        }));
    }
    let status = if unexpected > 0 {
        "witness"
    } else if expected_gaps > 0 {
        "certified_with_expected_gaps"
    } else {
        "certified"
    };
    let mut assumptions = base_assumptions(inst);
    assumptions.push(search_note(datum, &search));
    if args.expect_dh_gap {
        assumptions.push("Cartan witnesses at quaternionic lambda off the boundary are expected".into());
    }
    Ok(CommandOutput {
        instance: inst.descriptor(),
        results: json!({
            "classification": class,
            "status": status,
            "lambda_count": outcomes.len(),
            "expected_gaps": expected_gaps,
            "oracle": args.oracle,
            "h_family": {"random_per_support": opts.random_per_support, "seed": opts.seed},
            "per_lambda": per_lambda,
        }),
        code: if unexpected > 0 { EXIT_WITNESS } else { EXIT_OK },
        witnesses,
        assumptions,
        table: tsv,
    })
}

fn cmd_classify(inst: &Instance) -> CliResult<CommandOutput> {
    let datum = &inst.datum;
    let class = classify(datum, &inst.mu)?;
    let selector = select_s(datum, &class).ok();
    let star_set = inst
        .search
        .clone()
        .or_else(|| selector.as_ref().map(|s| s.indices.clone()));
    let star = match &star_set {
        Some(s) => Some(
            verify_star(datum, &inst.mu, s, inst.box_margin)
                .map_err(|e| InputError::from_error(Some("search_set"), e))?,
        ),
        None => None,
    };
    let minimal = minimal_lambda(datum, &inst.mu)?;
    let below = enumerate_lambda_below(datum, &inst.mu)?;
    let witnesses: Vec<Value> = star.iter().flat_map(|r| r.witnesses.iter().map(to_value)).collect();
    let mut tsv = Table::new(&["key", "value"]);
    tsv.push(vec!["type".into(), datum.classical_type().to_string()]);
    tsv.push(vec!["mu".into(), inst.mu.to_string()]);
    tsv.push(vec![
        "verdict".into(),
        to_value(&class)["verdict"].as_str().unwrap_or_default().to_string(),
    ]);
    tsv.push(vec![
        "selector".into(),
        selector.as_ref().map_or("-".into(), |s| s.labels.join(",")),
    ]);
    tsv.push(vec![
        "star".into(),
        star.as_ref().map_or("-".into(), |r| {
            if r.certified() {
                "certified".into()
            } else {
                "witness".into()
            }
        }),
    ]);
    tsv.push(vec!["minimal_lambda".into(), minimal.to_string()]);
    tsv.push(vec!["lambda_count".into(), below.len().to_string()]);
    let mut assumptions = base_assumptions(inst);
    assumptions.push(format!(
        "(*) checked on a coset box with margin {}",
        inst.box_margin.unwrap_or_else(|| default_box_margin(datum, &inst.mu))
    ));
    Ok(CommandOutput {
        instance: inst.descriptor(),
        results: json!({
            "classification": class,
            "selector": selector,
            "star": star.as_ref().map(|r| json!({
                "set": star_set.as_ref().map(|s| s.iter().map(|i| format!("varpi{}", i + 1)).collect::<Vec<_>>()),
                "certified": r.certified(),
                "checked": r.checks.first().map_or(0, |c| c.checked),
                "notes": r.notes,
            })),
            "minimal_lambda": minimal,
            "lambda_count": below.len(),
        }),
        code: if witnesses.is_empty() { EXIT_OK } else { EXIT_WITNESS },
        witnesses,
        assumptions,
        table: tsv,
    })
}

fn cmd_modp(args: &ModpArgs) -> CliResult<CommandOutput> {
    let text = read_file(&args.spec)?;
    let input: ModPDatum = serde_json::from_str(&text).map_err(|e| InputError {
        kind: "input",
        field: None,
        message: format!("mod-p datum file: {e}"),
    })?;
    let ch = Characteristic::new(args.characteristic.unwrap_or(0))
        .map_err(|e| InputError::from_error(Some("characteristic"), e))?;
    let (datum, result) = mod_p_datum(&input)?;
    let opts = args.family.options();
    let mut factors = Vec::new();
    let mut witnesses = Vec::new();
    let mut unexpected = 0;
    let mut tsv = Table::new(&[
        "factor",
        "mu",
        "verdict",
        "lambda_count",
        "certified",
        "minimal_lambda_certified",
        "not_certified",
    ]);
    for (i, factor) in result.factors.iter().enumerate() {
        let lambdas = enumerate_lambda_below(&datum, &factor.mu)?;
        let verdicts: Vec<(HalfIntVector, SpanningVerdict, Vec<Witness>)> = lambdas
            .par_iter()
            .map(|l| spanning_verdict_with(&datum, &factor.mu, l, ch, opts).map(|(v, r)| (l.clone(), v, r.witnesses)))
            .collect::<Result<Vec<_>>>()?;
        let count = |name: &str| verdicts.iter().filter(|(_, v, _)| verdict_name(v) == name).count();
        for (l, _, ws) in &verdicts {
            for w in ws {
                if !(args.expect_dh_gap && w.is_expected_gap()) {
                    unexpected += 1;
                }
                witnesses.push(witness_with_lambda(w, l, &[("factor", json!(i + 1))]));
            }
        }
        tsv.push(vec![
            (i + 1).to_string(),
            factor.mu.to_string(),
            to_value(&factor.classification)["verdict"]
                .as_str()
                .unwrap_or_default()
                .to_string(),
            lambdas.len().to_string(),
            count("certified").to_string(),
            count("certified_minimal_lambda").to_string(),
            count("not_certified").to_string(),
        ]);
        factors.push(json!({
            "mu": factor.mu,
            "classification": factor.classification,
            "lambda_count": lambdas.len(),
            "certified": count("certified"),
            "certified_minimal_lambda": count("certified_minimal_lambda"),
            "not_certified": count("not_certified"),
        }));
    }
    let mut assumptions = characteristic_assumptions(datum.classical_type(), ch);
    assumptions.push("a product is certified iff each factor is".into());
    Ok(CommandOutput {
        instance: json!({
            "type": result.ty,
            "residue_degree": input.residue_degree,
            "groups": input.groups,
            "characteristic": ch.value(),
        }),
        results: json!({
            "product": {"type": result.ty, "copies": result.copies},
            "factors": factors,
            "abelian_type": result.abelian_type,
        }),
        code: if unexpected > 0 { EXIT_WITNESS } else { EXIT_OK },
        witnesses,
        assumptions,
        table: tsv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("schubert-tangent").chain(args.iter().copied()))
    }

    fn json_of(o: &Outcome) -> Value {
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn bounds_gl2() {
        let o = run_args(&[
            "bounds", "--series", "A", "--rank", "1", "--mu", "2,0", "--lambda", "1,1",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v = json_of(&o);
        assert_eq!(v["schema_version"], 1);
        let table = v["results"]["table"].as_array().unwrap();
        assert!(table.iter().all(|e| e["k"] == 1));
    }

    #[test]
    fn bounds_counterexample() {
        let o = run_args(&[
            "bounds", "--series", "D", "--rank", "4", "--mu", "3,3,3,0", "--lambda", "1,1,1,0",
        ]);
        assert_eq!(o.code, 0);
        let v = json_of(&o);
        let row = v["results"]["table"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["label"] == "-e3+e4")
            .unwrap()
            .clone();
        assert_eq!(row["k"], 2);
    }

    #[test]
    fn zero_instance() {
        let o = run_args(&[
            "bounds", "--series", "C", "--rank", "2", "--mu", "0,0", "--lambda", "0,0",
        ]);
        let v = json_of(&o);
        assert!(v["results"]["table"].as_array().unwrap().iter().all(|e| e["k"] == 0));
        let o = run_args(&["phi", "--series", "C", "--rank", "2", "--mu", "0,0", "--lambda", "0,0"]);
        let v = json_of(&o);
        assert_eq!(v["results"]["phi_cur"].as_array().unwrap().len(), 0);
        assert_eq!(v["results"]["tangent_dimension_cur"], 0);
    }

    #[test]
    fn input_errors() {
        let o = run_args(&[
            "bounds", "--series", "A", "--rank", "1", "--mu", "1,1", "--lambda", "2,0",
        ]);
        assert_eq!(o.code, EXIT_INPUT);
        let v = json_of(&o);
        assert_eq!(v["error"]["kind"], "refusal");
        let o = run_args(&["bounds", "--series", "A", "--rank", "1", "--mu", "1,x"]);
        assert_eq!(o.code, EXIT_INPUT);
        assert_eq!(json_of(&o)["error"]["field"], "mu[1]");
        let o = run_args(&["bounds", "--series", "E", "--rank", "6", "--mu", "1"]);
        assert_eq!(o.code, EXIT_INPUT);
        let o = run_args(&["bounds", "--jobs", "0"]);
        assert_eq!(o.code, EXIT_INPUT);
        let o = run_args(&["phi", "--series", "A", "--rank", "1", "--mu", "2,0"]);
        assert_eq!(json_of(&o)["error"]["field"], "lambda");
    }

    #[test]
    fn spec_parse_diagnostics() {
        let err = parse_spec("{\n  \"series\": \"A\",\n  \"rank\": 1,\n  \"mu\": [\"2\", \"0\"],\n  \"bogus\": 1\n}")
            .unwrap_err();
        assert!(err.message.contains("line 5"), "{}", err.message);
        let spec =
            parse_spec(r#"{"series": "D", "rank": 4, "mu": ["3", "3", "3", 0], "lambda": ["1","1","1","0"]}"#).unwrap();
        let inst = resolve_spec(&spec).unwrap();
        assert_eq!(inst.mu, HalfIntVector::from_ints(&[3, 3, 3, 0]));
    }

    #[test]
    fn tsv_output() {
        let o = run_args(&[
            "phi", "--series", "A", "--rank", "1", "--mu", "2,0", "--lambda", "1,1", "--format", "tsv",
        ]);
        assert_eq!(o.code, 0);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines[0], "set\troot\texponent");
        assert_eq!(lines.len(), 1 + 2 + 2 + 1);
    }

    #[test]
    fn classify_wrong_selector() {
        let o = run_args(&[
            "classify",
            "--series",
            "D",
            "--rank",
            "4",
            "--mu",
            "2,0,0,0",
            "--search",
            "1",
            "--box-margin",
            "1",
        ]);
        assert_eq!(o.code, EXIT_WITNESS);
        let v = json_of(&o);
        assert_eq!(v["witnesses"][0]["nu"], json!(["1", "1", "1", "-1"]));
        let o = run_args(&["classify", "--series", "D", "--rank", "4", "--mu", "3,3,3,0"]);
        assert_eq!(o.code, 0);
        let v = json_of(&o);
        assert_eq!(v["results"]["classification"]["verdict"], "type_d_quaternionic");
        assert_eq!(v["results"]["minimal_lambda"], json!(["1", "0", "0", "0"]));
    }

    #[test]
    fn verify_gap_handling() {
        let base = [
            "verify", "--series", "D", "--rank", "4", "--mu", "3,3,3,0", "--lambda", "1,1,1,0",
        ];
        let o = run_args(&base);
        assert_eq!(o.code, EXIT_WITNESS);
        let mut with_flag = base.to_vec();
        with_flag.push("--expect-dh-gap");
        let o = run_args(&with_flag);
        assert_eq!(o.code, 0);
        assert_eq!(json_of(&o)["results"]["status"], "certified_with_expected_gaps");
    }

    #[test]
    fn verify_sweep_with_oracle() {
        let o = run_args(&[
            "verify", "--series", "C", "--rank", "2", "--mu", "1,1", "--oracle", "--jobs", "2",
        ]);
        assert_eq!(o.code, 0, "{}", o.stdout);
        let v = json_of(&o);
        assert_eq!(v["results"]["status"], "certified");
        assert_eq!(v["results"]["lambda_count"], 3);
    }
}
