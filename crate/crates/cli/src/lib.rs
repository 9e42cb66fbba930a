//! Command grammar, dispatch and report rendering for the `ncqm` binary.
//!
//! Every invocation produces one [`Report`] (or, with `--sweep`, an array of
//! them). Reports are JSON objects tagged with [`SCHEMA`]; rationals appear as
//! canonical `"p/q"` strings and object keys are emitted in sorted order, so
//! identical command lines yield byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use ncqm_core::{
    bopp, darboux, group, sector, starprod, CommutatorMatrix, Error as CoreError, Functional, GroupElement,
    PolySymbol, QuadraticForm, Rational, SectorLabel,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "ncqm-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verb {
    Sector,
    Bopp,
    Darboux,
    Spectrum,
    Group,
    Orbit,
    Star,
    Verdict,
}

impl Verb {
    pub const ALL: [Verb; 8] = [
        Verb::Sector,
        Verb::Bopp,
        Verb::Darboux,
        Verb::Spectrum,
        Verb::Group,
        Verb::Orbit,
        Verb::Star,
        Verb::Verdict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verb::Sector => "sector",
            Verb::Bopp => "bopp",
            Verb::Darboux => "darboux",
            Verb::Spectrum => "spectrum",
            Verb::Group => "group",
            Verb::Orbit => "orbit",
            Verb::Star => "star",
            Verb::Verdict => "verdict",
        }
    }

    pub fn from_name(name: &str) -> Option<Verb> {
        Verb::ALL.into_iter().find(|v| v.name() == name)
    }

    /// Accepted subverbs; the first is the default when none is given.
    pub fn subverbs(self) -> &'static [&'static str] {
        match self {
            Verb::Sector => &["classify", "omega"],
            Verb::Bopp => &["matrix"],
            Verb::Darboux => &["intrinsic", "canonicalize"],
            Verb::Spectrum => &["frequencies"],
            Verb::Group => &["multiply", "project"],
            Verb::Orbit => &["data", "act"],
            Verb::Star => &["product", "commutator", "shadow"],
            Verb::Verdict => &["reduce"],
        }
    }

    /// Whether the subverb may be omitted.
    pub fn has_default_subverb(self) -> bool {
        matches!(self, Verb::Verdict | Verb::Bopp | Verb::Spectrum)
    }

    /// Option flags (without `--`) accepted by this verb, besides `format` and `sweep`.
    pub fn flags(self) -> &'static [&'static str] {
        match self {
            Verb::Sector | Verb::Verdict => &["hbar", "theta", "b"],
            Verb::Bopp => &["hbar", "theta", "b", "r", "s"],
            Verb::Darboux => &["hbar", "theta", "b", "matrix"],
            Verb::Spectrum => &["hbar", "theta", "b", "matrix", "ham"],
            Verb::Group => &["g", "h"],
            Verb::Orbit => &["g", "l"],
            Verb::Star => &["hbar", "theta", "b", "matrix", "f", "g"],
        }
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Command {
    pub verb: Verb,
    pub subverb: String,
    pub options: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Failures surfaced in reports. Library errors keep their own kind strings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("unknown command: {0}")]
    UnknownCommand(String),
    #[error("missing required option --{0}")]
    MissingOption(&'static str),
    #[error("invalid value for --{flag}: {reason}")]
    InvalidInput { flag: String, reason: String },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::UnknownCommand(_) => "Unknown command",
            CliError::MissingOption(_) => "Missing option",
            CliError::InvalidInput { .. } => "Invalid input",
        }
    }

    /// Usage errors exit with 2; everything else is a domain error.
    pub fn is_usage(&self) -> bool {
        matches!(self, CliError::UnknownCommand(_) | CliError::MissingOption(_))
    }

    /// Every kind a report can carry.
    pub fn all_kinds() -> Vec<&'static str> {
        let mut kinds = CoreError::KINDS.to_vec();
        kinds.extend(["Unknown command", "Missing option", "Invalid input"]);
        kinds
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: Command,
    pub inputs: Value,
    pub outputs: Option<Value>,
    pub status: Status,
    pub error_kind: Option<String>,
    pub message: Option<String>,
    usage: bool,
}

impl Report {
    fn ok(command: Command, inputs: Value, outputs: Value) -> Self {
        Report {
            command,
            inputs,
            outputs: Some(outputs),
            status: Status::Ok,
            error_kind: None,
            message: None,
            usage: false,
        }
    }

    fn error(command: Command, inputs: Value, err: &CliError) -> Self {
        Report {
            command,
            inputs,
            outputs: None,
            status: Status::Error,
            error_kind: Some(err.kind().to_string()),
            message: Some(err.to_string()),
            usage: err.is_usage(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn exit_code(&self) -> i32 {
        match (self.status, self.usage) {
            (Status::Ok, _) => 0,
            (Status::Error, false) => 1,
            (Status::Error, true) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert(
            "command".into(),
            serde_json::to_value(&self.command).expect("command serializes"),
        );
        obj.insert("inputs".into(), self.inputs.clone());
        obj.insert("status".into(), serde_json::to_value(self.status).expect("status serializes"));
        if let Some(out) = &self.outputs {
            obj.insert("outputs".into(), out.clone());
        }
        if let Some(kind) = &self.error_kind {
            obj.insert("error_kind".into(), json!(kind));
        }
        if let Some(msg) = &self.message {
            obj.insert("message".into(), json!(msg));
        }
        Value::Object(obj)
    }
}

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Emitted {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

pub fn emit(report: &Report, format: Format) -> Emitted {
    let exit_code = report.exit_code();
    let stderr = match &report.message {
        Some(msg) => format!("error [{}]: {msg}\n", report.error_kind.as_deref().unwrap_or("")),
        None => String::new(),
    };
    let stdout = match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Text if report.is_ok() => render_text(report),
        Format::Text => String::new(),
    };
    Emitted {
        stdout,
        stderr,
        exit_code,
    }
}

pub fn emit_many(reports: &[Report], format: Format) -> Emitted {
    let exit_code = reports.iter().map(Report::exit_code).max().unwrap_or(0);
    let stderr: String = reports.iter().map(|r| emit(r, format).stderr).collect();
    let stdout = match format {
        Format::Json => format!("{}\n", Value::Array(reports.iter().map(Report::to_json).collect())),
        Format::Text => reports.iter().map(|r| emit(r, format).stdout).collect::<Vec<_>>().join("\n"),
    };
    Emitted {
        stdout,
        stderr,
        exit_code,
    }
}

fn render_text(report: &Report) -> String {
    let mut out = format!("{} {}\n", report.command.verb, report.command.subverb);
    let Some(Value::Object(outputs)) = &report.outputs else {
        return out;
    };
    for (key, value) in outputs {
        if key == "narrative" {
            continue;
        }
        let shown = match value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out.push_str(&format!("  {key}: {shown}\n"));
    }
    if let Some(Value::String(n)) = outputs.get("narrative") {
        out.push_str(&format!("\n{n}\n"));
    }
    out
}

/// Builds a command, validating the verb, subverb and flag set.
pub fn make_command(
    verb: &str,
    subverb: Option<&str>,
    options: BTreeMap<String, String>,
) -> Result<Command, CliError> {
    let verb = Verb::from_name(verb).ok_or_else(|| CliError::UnknownCommand(verb.to_string()))?;
    let subverb = match subverb {
        Some(s) if verb.subverbs().contains(&s) => s.to_string(),
        Some(s) => return Err(CliError::UnknownCommand(format!("{verb} {s}"))),
        None if verb.has_default_subverb() => verb.subverbs()[0].to_string(),
        None => return Err(CliError::UnknownCommand(format!("{verb} (missing subverb)"))),
    };
    if let Some(flag) = options.keys().find(|k| !verb.flags().contains(&k.as_str())) {
        return Err(CliError::UnknownCommand(format!("{verb} --{flag}")));
    }
    Ok(Command {
        verb,
        subverb,
        options,
    })
}

pub fn parse_rational(text: &str) -> Result<Rational, CoreError> {
    ncqm_core::parse_rational(text)
}

struct Inputs<'a> {
    options: &'a BTreeMap<String, String>,
    normalized: Map<String, Value>,
}

impl<'a> Inputs<'a> {
    fn new(options: &'a BTreeMap<String, String>) -> Self {
        Inputs {
            options,
            normalized: Map::new(),
        }
    }

    fn raw(&self, flag: &'static str) -> Result<&'a str, CliError> {
        self.options
            .get(flag)
            .map(String::as_str)
            .ok_or(CliError::MissingOption(flag))
    }

    fn has(&self, flag: &str) -> bool {
        self.options.contains_key(flag)
    }

    fn rational(&mut self, flag: &'static str) -> Result<Rational, CliError> {
        let value = parse_rational(self.raw(flag)?)?;
        self.normalized.insert(flag.into(), json!(ncqm_core::format_rational(&value)));
        Ok(value)
    }

    fn label(&mut self) -> Result<SectorLabel, CliError> {
        Ok(SectorLabel::new(self.rational("hbar")?, self.rational("theta")?, self.rational("b")?))
    }

    fn json<T: serde::de::DeserializeOwned + Serialize>(&mut self, flag: &'static str) -> Result<T, CliError> {
        let text = self.raw(flag)?;
        let value: T = serde_json::from_str(text).map_err(|e| CliError::InvalidInput {
            flag: flag.to_string(),
            reason: e.to_string(),
        })?;
        self.normalized.insert(
            flag.into(),
            serde_json::to_value(&value).expect("parsed inputs re-serialize"),
        );
        Ok(value)
    }

    /// `--matrix` when given, otherwise `Omega_NC` of the label flags.
    fn omega(&mut self) -> Result<CommutatorMatrix, CliError> {
        if self.has("matrix") {
            self.json("matrix")
        } else {
            Ok(sector::omega_nc(&self.label()?))
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

fn rational_value(x: &Rational) -> Value {
    json!(ncqm_core::format_rational(x))
}

/// Routes a command to the library and wraps the result in a report.
pub fn dispatch(cmd: &Command) -> Report {
    let mut inputs = Inputs::new(&cmd.options);
    let result = run(cmd, &mut inputs);
    let normalized = Value::Object(inputs.normalized);
    match result {
        Ok(outputs) => Report::ok(cmd.clone(), normalized, outputs),
        Err(e) => Report::error(cmd.clone(), normalized, &e),
    }
}

fn run(cmd: &Command, inp: &mut Inputs<'_>) -> Result<Value, CliError> {
    match (cmd.verb, cmd.subverb.as_str()) {
        (Verb::Sector, "classify") => {
            let label = inp.label()?;
            if !group::is_supported(&label) {
                return Err(CoreError::UnsupportedStratum.into());
            }
            let omega = sector::omega_nc(&label);
            Ok(json!({
                "label": to_value(&label),
                "kappa": rational_value(&label.kappa()),
                "regular": label.is_regular(),
                "factors_through_quotient": group::factors_through_quotient(&label),
                "omega": to_value(&omega),
                "pfaffian": rational_value(&sector::pfaffian(&omega)?),
                "central_character": to_value(&sector::central_character(&label)),
            }))
        }
        (Verb::Sector, "omega") => {
            let label = inp.label()?;
            let omega = sector::omega_nc(&label);
            Ok(json!({
                "omega": to_value(&omega),
                "pfaffian": rational_value(&sector::pfaffian(&omega)?),
            }))
        }
        (Verb::Bopp, "matrix") => {
            let label = inp.label()?;
            let params = bopp::BoppParams::new(inp.rational("r")?, inp.rational("s")?);
            let real = bopp::bopp_matrix(&label, &params)?;
            Ok(json!({
                "realization": to_value(&real),
                "a": rational_value(&bopp::a_coefficient(&label, &params.r)?),
                "determinant": rational_value(&real.matrix.determinant()),
                "sector_invariance": bopp::verify_sector_invariance(&real),
            }))
        }
        (Verb::Darboux, "intrinsic") => {
            let label = inp.label()?;
            let map = darboux::intrinsic_canonicalization(&label)?;
            Ok(darboux_value(&map)?)
        }
        (Verb::Darboux, "canonicalize") => {
            let omega: CommutatorMatrix = inp.json("matrix")?;
            let hbar = inp.rational("hbar")?;
            let map = darboux::canonicalize(&omega, &hbar)?;
            Ok(darboux_value(&map)?)
        }
        (Verb::Spectrum, "frequencies") => {
            let ham: QuadraticForm = inp.json("ham")?;
            let omega = inp.omega()?;
            let spectrum = darboux::williamson_frequencies(&ham, &omega)?;
            let ground = darboux::quadratic_spectrum(&spectrum, &vec![0; spectrum.frequencies.len()])?;
            Ok(json!({
                "spectrum": to_value(&spectrum),
                "ground_energy": ground,
            }))
        }
        (Verb::Group, "multiply") => {
            let g: GroupElement = inp.json("g")?;
            let h: GroupElement = inp.json("h")?;
            let gh = group::bch_multiply(&g, &h);
            Ok(json!({
                "product": to_value(&gh),
                "projection": to_value(&group::quotient_project(&gh)),
            }))
        }
        (Verb::Group, "project") => {
            let g: GroupElement = inp.json("g")?;
            Ok(json!({ "projection": to_value(&group::quotient_project(&g)) }))
        }
        (Verb::Orbit, "data") => {
            let l: Functional = inp.json("l")?;
            Ok(to_value(&group::orbit_data(&l)))
        }
        (Verb::Orbit, "act") => {
            let g: GroupElement = inp.json("g")?;
            let l: Functional = inp.json("l")?;
            let moved = group::coadjoint_act(&g, &l);
            Ok(json!({
                "functional": to_value(&moved),
                "orbit": to_value(&group::orbit_data(&moved)),
            }))
        }
        (Verb::Star, "product") => {
            let f: PolySymbol = inp.json("f")?;
            let g: PolySymbol = inp.json("g")?;
            let omega = inp.omega()?;
            let p = starprod::moyal_star(&f, &g, &omega)?;
            Ok(json!({ "product": to_value(&p), "display": p.to_string() }))
        }
        (Verb::Star, "commutator") => {
            let f: PolySymbol = inp.json("f")?;
            let g: PolySymbol = inp.json("g")?;
            let omega = inp.omega()?;
            let c = starprod::star_commutator(&f, &g, &omega)?;
            Ok(json!({ "commutator": to_value(&c), "display": c.to_string() }))
        }
        (Verb::Star, "shadow") => {
            let label = inp.label()?;
            Ok(to_value(&starprod::shadow_report(&label)?))
        }
        (Verb::Verdict, "reduce") => {
            let label = inp.label()?;
            let verdict = darboux::reduction_verdict(&label)?;
            let equivalence = group::decide_equivalence(&label, &label.quotient_sector());
            Ok(json!({
                "darboux_exists": verdict.darboux_exists,
                "conjugation_possible": verdict.conjugation_possible,
                "sectors_equivalent": verdict.sectors_equivalent,
                "equivalence": to_value(&equivalence),
                "narrative": verdict.narrative,
            }))
        }
        (verb, sub) => Err(CliError::UnknownCommand(format!("{verb} {sub}"))),
    }
}

fn darboux_value(map: &darboux::DarbouxMap) -> Result<Value, CliError> {
    Ok(json!({
        "matrix": to_value(&map.matrix),
        "source": to_value(&map.source),
        "hbar": rational_value(&map.hbar),
        "verified": darboux::is_darboux_map(&map.matrix, &map.source, &map.hbar)?,
    }))
}

/// Reads a sweep file: a JSON array of objects mapping flag names to values.
/// String values are taken verbatim; numbers and nested JSON are stringified.
pub fn read_sweep(path: &Path) -> Result<Vec<BTreeMap<String, String>>, CliError> {
    let invalid = |reason: String| CliError::InvalidInput {
        flag: "sweep".into(),
        reason,
    };
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    let entries: Vec<Map<String, Value>> = serde_json::from_str(&text).map_err(|e| invalid(e.to_string()))?;
    Ok(entries
        .into_iter()
        .map(|entry| {
            entry
                .into_iter()
                .map(|(k, v)| {
                    let s = match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    };
                    (k, s)
                })
                .collect()
        })
        .collect())
}

/// Runs `base` once per sweep entry, entry options overriding `base`'s.
/// Entries are evaluated in parallel; output order matches input order.
pub fn run_sweep(base: &Command, entries: &[BTreeMap<String, String>]) -> Vec<Report> {
    entries
        .par_iter()
        .map(|entry| {
            let mut options = base.options.clone();
            options.extend(entry.iter().map(|(k, v)| (k.clone(), v.clone())));
            match make_command(base.verb.name(), Some(&base.subverb), options.clone()) {
                Ok(cmd) => dispatch(&cmd),
                Err(e) => Report::error(
                    Command {
                        verb: base.verb,
                        subverb: base.subverb.clone(),
                        options,
                    },
                    Value::Object(Map::new()),
                    &e,
                ),
            }
        })
        .collect()
}
