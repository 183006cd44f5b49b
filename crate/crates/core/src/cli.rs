//! Command line front end. [`run`] parses arguments, writes the report to
//! the given sink and returns the process exit code.
//!
//! Exit codes: 0 success or property true, 1 property false or nothing
//! found, 2 usage or input error, 3 a size cap was hit, 4 a theorem check
//! produced a counterexample, 5 an imported table fails the ring axioms,
//! 70 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constructors::DEFAULT_ORDER_CAP;
use crate::decompose::{
    clean_decompositions, is_nil_clean_ring, nil_clean_decompositions, strongly_filter,
    Decomposition, IdealProperty,
};
use crate::error::Error;
use crate::ideals::ideal_generated;
use crate::ring::FiniteRing;
use crate::spec::RingSpec;
use crate::table::TableJson;
use crate::theorems::DEFAULT_IDEAL_CAP;
use crate::theorems::{
    explore_noncommutative, run_checks, CheckConfig, Finding, TheoremReport, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;
pub const EXIT_AXIOMS: i32 = 5;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "nilclean",
    version,
    about = "Idempotents, nilpotents and nil clean ideals of finite rings"
)]
pub struct Cli {
    /// Output format; JSON is stable, tables are for people.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    /// Largest ring order any command may build.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP, value_parser = positive, global = true)]
    pub order_cap: usize,

    /// Largest number of ideals enumerated per ring.
    #[arg(long, default_value_t = DEFAULT_IDEAL_CAP, value_parser = positive, global = true)]
    pub ideal_cap: usize,

    /// Ring spec for the theorem family; repeat to add more.
    #[arg(long = "family", value_name = "SPEC", global = true)]
    pub family: Vec<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, units, idempotents, nilpotents, Jacobson radical.
    Info { spec: String },
    /// Tests a property of the ideal generated by `--gens`.
    Ideal {
        spec: String,
        /// Generator element indices, comma separated; none gives the zero ideal.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        gens: Vec<usize>,
        /// clean, nil-clean, strongly-nil-clean, uniquely-nil-clean,
        /// uniquely-strongly-nil-clean or nil.
        #[arg(long)]
        property: String,
    },
    /// Lists every decomposition of one element.
    Decompose {
        spec: String,
        element: usize,
        /// clean or nil-clean.
        #[arg(long, default_value = "nil-clean")]
        kind: String,
        /// Keep only decompositions whose parts commute.
        #[arg(long)]
        strongly: bool,
    },
    /// Runs the registered theorem checks (all when no id is given).
    Theorems {
        ids: Vec<String>,
        /// Record per-check wall time in the report.
        #[arg(long)]
        timings: bool,
        /// Also evaluate the commutative characterizations on triangular rings.
        #[arg(long)]
        explore: bool,
        /// Worker threads (default: NILCLEAN_THREADS, then all cores).
        #[arg(long, value_parser = positive)]
        threads: Option<usize>,
    },
    /// Loads a JSON Cayley table, verifies it and prints its info.
    Import { path: PathBuf },
    /// Prints the Cayley tables of a ring as JSON.
    Export { spec: String },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::OrderCapExceeded { .. }
        | Error::ExhaustiveTooLarge { .. }
        | Error::CapExceeded { .. } => EXIT_CAP,
        Error::AxiomFailure(_) => EXIT_AXIOMS,
        Error::InternalInvariantViolation(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// An element index with its structured rendering.
#[derive(Debug, Serialize)]
pub struct ElementJson {
    pub index: usize,
    pub form: String,
}

fn element(ring: &FiniteRing, index: usize) -> ElementJson {
    ElementJson {
        index,
        form: ring.render(index),
    }
}

fn elements(ring: &FiniteRing, set: impl IntoIterator<Item = usize>) -> Vec<ElementJson> {
    set.into_iter().map(|x| element(ring, x)).collect()
}

#[derive(Debug, Serialize)]
struct InfoJson {
    ring: String,
    order: usize,
    commutative: bool,
    units: Vec<ElementJson>,
    idempotents: Vec<ElementJson>,
    nilpotents: Vec<ElementJson>,
    jacobson: Vec<ElementJson>,
    nil_clean_ring: bool,
}

#[derive(Debug, Serialize)]
struct IdealWitnessJson {
    element: ElementJson,
    /// The decompositions the property inspects; empty when none exist.
    decompositions: Vec<Decomposition>,
}

#[derive(Debug, Serialize)]
struct IdealReportJson {
    ring: String,
    generators: Vec<usize>,
    members: Vec<ElementJson>,
    property: IdealProperty,
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<IdealWitnessJson>,
}

#[derive(Debug, Serialize)]
struct DecomposeJson {
    ring: String,
    element: ElementJson,
    kind: String,
    strongly: bool,
    decompositions: Vec<Decomposition>,
}

#[derive(Debug, Serialize)]
struct ExploreJson {
    reports: Vec<TheoremReport>,
    findings: Vec<Finding>,
}

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
        writeln!(self.out, "{text}")
    }
}

/// Parses `args` (program name first) and runs the command.
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
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let mut output = Output {
        format: cli.format,
        out,
    };
    match dispatch(&cli, &mut output) {
        Ok(code) => code,
        Err(CliError::Engine(e)) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::AxiomFailure(report) = &e {
                for v in &report.violations {
                    let _ = writeln!(err, "  {:?} fails at {:?}", v.axiom, v.witness);
                }
            }
            exit_code(&e)
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INTERNAL
        }
    }
}

enum CliError {
    Engine(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<i32, CliError>;

fn build(spec: &str, cap: usize) -> Result<Arc<FiniteRing>, Error> {
    RingSpec::parse(spec)?.build(cap)
}

fn dispatch(cli: &Cli, out: &mut Output) -> CliResult {
    match &cli.command {
        Command::Info { spec } => {
            let ring = build(spec, cli.order_cap)?;
            info(&ring, out)
        }
        Command::Ideal {
            spec,
            gens,
            property,
        } => {
            let ring = build(spec, cli.order_cap)?;
            ideal(&ring, gens, property, out)
        }
        Command::Decompose {
            spec,
            element,
            kind,
            strongly,
        } => {
            let ring = build(spec, cli.order_cap)?;
            decompose(&ring, *element, kind, *strongly, out)
        }
        Command::Theorems {
            ids,
            timings,
            explore,
            threads,
        } => {
            let mut config = CheckConfig {
                order_cap: cli.order_cap,
                ideal_cap: cli.ideal_cap,
                record_timings: *timings,
                threads: *threads,
                ..CheckConfig::default()
            };
            if !cli.family.is_empty() {
                config.family = cli
                    .family
                    .iter()
                    .map(|s| RingSpec::parse(s))
                    .collect::<Result<_, _>>()?;
            }
            let ids = (!ids.is_empty()).then_some(ids.as_slice());
            let reports = run_checks(ids, &config)?;
            let findings = if *explore {
                Some(explore_noncommutative(cli.ideal_cap, cli.order_cap)?)
            } else {
                None
            };
            theorems(reports, findings, out)
        }
        Command::Import { path } => {
            let ring = TableJson::load(path)?.into_ring()?;
            info(&ring, out)
        }
        Command::Export { spec } => {
            let ring = build(spec, cli.order_cap)?;
            out.json(&TableJson::from_ring(&ring)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn join(list: &[ElementJson]) -> String {
    let parts: Vec<String> = list
        .iter()
        .map(|e| {
            if e.form == e.index.to_string() {
                e.form.clone()
            } else {
                format!("{}={}", e.index, e.form)
            }
        })
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn info(ring: &Arc<FiniteRing>, out: &mut Output) -> CliResult {
    let report = InfoJson {
        ring: ring.label().to_string(),
        order: ring.order(),
        commutative: ring.is_commutative(),
        units: elements(ring, ring.units().iter()),
        idempotents: elements(ring, ring.idempotents().iter().copied()),
        nilpotents: elements(ring, ring.nilpotents().iter()),
        jacobson: elements(ring, ring.jacobson_set().iter()),
        nil_clean_ring: is_nil_clean_ring(ring),
    };
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Table => {
            let w = &mut out.out;
            let rows = [
                ("ring".to_string(), report.ring.clone()),
                ("order".to_string(), report.order.to_string()),
                ("commutative".to_string(), report.commutative.to_string()),
                (
                    format!("units ({})", report.units.len()),
                    join(&report.units),
                ),
                (
                    format!("idempotents ({})", report.idempotents.len()),
                    join(&report.idempotents),
                ),
                (
                    format!("nilpotents ({})", report.nilpotents.len()),
                    join(&report.nilpotents),
                ),
                (
                    format!("jacobson ({})", report.jacobson.len()),
                    join(&report.jacobson),
                ),
                (
                    "nil clean ring".to_string(),
                    report.nil_clean_ring.to_string(),
                ),
            ];
            for (label, value) in rows {
                writeln!(w, "{label:<20}{value}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Decompositions relevant to `property` at `x`.
fn inspected(ring: &FiniteRing, property: IdealProperty, x: usize) -> Vec<Decomposition> {
    match property {
        IdealProperty::Clean => clean_decompositions(ring, x),
        IdealProperty::StronglyClean | IdealProperty::UniquelyStronglyClean => {
            strongly_filter(clean_decompositions(ring, x))
        }
        IdealProperty::NilClean | IdealProperty::UniquelyNilClean | IdealProperty::Nil => {
            nil_clean_decompositions(ring, x)
        }
        IdealProperty::StronglyNilClean | IdealProperty::UniquelyStronglyNilClean => {
            strongly_filter(nil_clean_decompositions(ring, x))
        }
    }
}

fn ideal(ring: &Arc<FiniteRing>, gens: &[usize], property: &str, out: &mut Output) -> CliResult {
    let property: IdealProperty = property.parse()?;
    if !IdealProperty::CLI.contains(&property) {
        return Err(
            Error::BadParameter(format!("property '{property}' is not offered here")).into(),
        );
    }
    let ideal = ideal_generated(ring, gens)?;
    let witness = if property == IdealProperty::Nil {
        ideal.iter().find(|&x| !ring.is_nilpotent(x))
    } else {
        property.witness(&ideal)
    };
    let report = IdealReportJson {
        ring: ring.label().to_string(),
        generators: gens.to_vec(),
        members: elements(ring, ideal.iter()),
        property,
        holds: witness.is_none(),
        witness: witness.map(|x| IdealWitnessJson {
            element: element(ring, x),
            decompositions: inspected(ring, property, x),
        }),
    };
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Table => {
            let w = &mut out.out;
            writeln!(w, "ring      {}", report.ring)?;
            writeln!(w, "ideal     {}", join(&report.members))?;
            writeln!(w, "{:<9} {}", property.name(), report.holds)?;
            if let Some(wit) = &report.witness {
                writeln!(w, "witness   {}", join(std::slice::from_ref(&wit.element)))?;
                if wit.decompositions.is_empty() {
                    writeln!(w, "          no decompositions")?;
                }
                for d in &wit.decompositions {
                    writeln!(
                        w,
                        "          {} = {} + {}",
                        d.element, d.idempotent, d.second
                    )?;
                }
            }
        }
    }
    Ok(if report.holds { EXIT_OK } else { EXIT_FALSE })
}

fn decompose(
    ring: &Arc<FiniteRing>,
    x: usize,
    kind: &str,
    strongly: bool,
    out: &mut Output,
) -> CliResult {
    let x = ring.elem(x)?.index();
    let mut list = match kind {
        "clean" => clean_decompositions(ring, x),
        "nil-clean" => nil_clean_decompositions(ring, x),
        other => {
            return Err(
                Error::BadParameter(format!("unknown kind '{other}' (clean or nil-clean)")).into(),
            )
        }
    };
    if strongly {
        list = strongly_filter(list);
    }
    let report = DecomposeJson {
        ring: ring.label().to_string(),
        element: element(ring, x),
        kind: kind.to_string(),
        strongly,
        decompositions: list,
    };
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Table => {
            let w = &mut out.out;
            writeln!(
                w,
                "{} in {} ({kind}{})",
                ring.render(x),
                report.ring,
                if strongly { ", strongly" } else { "" }
            )?;
            if report.decompositions.is_empty() {
                writeln!(w, "no decompositions")?;
            }
            for d in &report.decompositions {
                writeln!(
                    w,
                    "e={} ({})  second={} ({})  commutes={}{}",
                    d.idempotent,
                    ring.render(d.idempotent),
                    d.second,
                    ring.render(d.second),
                    d.commutes,
                    d.nil_index
                        .map(|k| format!("  index={k}"))
                        .unwrap_or_default()
                )?;
            }
        }
    }
    Ok(if report.decompositions.is_empty() {
        EXIT_FALSE
    } else {
        EXIT_OK
    })
}

fn theorems(
    reports: Vec<TheoremReport>,
    findings: Option<Vec<Finding>>,
    out: &mut Output,
) -> CliResult {
    let counterexample = reports.iter().any(|r| r.verdict == Verdict::Counterexample);
    let errored = reports.iter().any(|r| r.verdict == Verdict::Error);
    match out.format {
        Format::Json => match findings {
            Some(findings) => out.json(&ExploreJson { reports, findings })?,
            None => out.json(&reports)?,
        },
        Format::Table => {
            let w = &mut out.out;
            writeln!(
                w,
                "{:<16} {:<15} {:>8} {:>8}  directions",
                "check", "verdict", "tested", "met"
            )?;
            for r in &reports {
                let verdict = serde_json::to_value(r.verdict)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default();
                let dirs = r
                    .directions
                    .map(|d| format!("{} / {}", d.forward, d.converse))
                    .unwrap_or_default();
                writeln!(
                    w,
                    "{:<16} {:<15} {:>8} {:>8}  {dirs}",
                    r.id, verdict, r.instances_tested, r.hypotheses_met
                )?;
                for reading in &r.readings {
                    writeln!(w, "  reading {:<8} {:?}", reading.name, reading.verdict)?;
                }
                if let Some(wit) = &r.witness {
                    writeln!(
                        w,
                        "  witness {} {:?} {:?}: {}",
                        wit.ring, wit.ideal, wit.element, wit.reason
                    )?;
                }
                if let Some(e) = &r.error {
                    writeln!(w, "  error {e}")?;
                }
                for n in &r.notes {
                    writeln!(w, "  note {n}")?;
                }
            }
            if let Some(findings) = findings {
                writeln!(w)?;
                writeln!(w, "exploration (informational)")?;
                for f in findings {
                    writeln!(
                        w,
                        "{:<5} {:<8} agree {}/{}  disagree {:?}",
                        f.statement, f.ring, f.agreements, f.ideals_tested, f.disagreements
                    )?;
                }
            }
        }
    }
    Ok(if counterexample {
        EXIT_COUNTEREXAMPLE
    } else if errored {
        EXIT_CAP
    } else {
        EXIT_OK
    })
}
