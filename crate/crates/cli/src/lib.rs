//! Command-line front end for `singidx`.
//!
//! `singidx <subcommand> --file problem.prob` reads a problem file (see
//! [`problem`]), evaluates the index named by its `task:` line and prints a
//! report. Exit codes: 0 success, 1 mathematical precondition failure,
//! 2 parse or usage error, 3 oracle mismatch.

pub mod problem;
pub mod report;

use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use singidx::indices::{
    chern_obstruction_collection, collection_index, euler_obstruction_of_function_icis, gsv_index_1form,
    gsv_index_vf_hypersurface, homological_index_1form_icis, index_elk, index_holomorphic_vf, meromorphic_index,
    milnor_number_hypersurface, milnor_number_icis, radial_index_1form_icis, CollectionSpec, ICISPresentation,
    OneFormGerm, PoleChain,
};
use singidx::local::{colength, colength_truncation_oracle, DEFAULT_ORACLE_CAP};
use singidx::quadratic::VectorFieldGerm;
use singidx::strata::{
    bmps_function_obstruction, mobius_inverse, obstruction_from_radial, radial_from_obstructions, StrataPoset,
    StratumIndexData,
};
use singidx::{Colength, GenericitySampler, IdealPresentation, Index, OracleColength, Polynomial, Ring};

use problem::{parse_problem, Problem, Value};
use report::{emit_report, Format, OracleValue, ProvenanceRecord, Report, ResultValue, Status};

pub const SEED_ENV: &str = "SINGIDX_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    VfIndex,
    Elk,
    Gsv,
    Milnor,
    MilnorIcis,
    GmHypersurface,
    Homological,
    Radial,
    EulerObstruction,
    Meromorphic,
    Collection,
    Chern,
    Mobius,
    RadialFromEu,
    EuFromRadial,
    Bmps,
    OracleColength,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "singidx", version, about = "Exact indices of vector fields and 1-forms on singular germs")]
struct Cli {
    /// Operation to run; must match the `task:` line of the problem file.
    #[arg(value_enum)]
    command: Command,
    /// Problem file.
    #[arg(long)]
    file: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Recompute every reported colength with the truncation oracle.
    #[arg(long)]
    oracle: bool,
    /// Largest truncation degree tried by the oracle.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u32,
    /// Seed for generic choices; overrides the SINGIDX_SEED variable.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of independent generic samples that must agree.
    #[arg(long, default_value_t = GenericitySampler::DEFAULT_TRIALS)]
    trials: usize,
    /// Bound on numerators and denominators of sampled coefficients.
    #[arg(long, default_value_t = GenericitySampler::DEFAULT_HEIGHT)]
    height: u32,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<singidx::IndexError> for Failure {
    fn from(e: singidx::IndexError) -> Self {
        Failure::Math(e.to_string())
    }
}

impl From<singidx::strata::StrataError> for Failure {
    fn from(e: singidx::strata::StrataError) -> Self {
        Failure::Math(e.to_string())
    }
}

#[derive(Default)]
struct Outcome {
    result: Option<ResultValue>,
    provenance: Vec<(ProvenanceRecord, IdealPresentation)>,
    details: Vec<(String, String)>,
    gram: Option<Vec<Vec<String>>>,
}

impl From<Index> for Outcome {
    fn from(index: Index) -> Self {
        Outcome {
            result: Some(ResultValue::Integer(index.value)),
            provenance: index
                .provenance
                .into_iter()
                .map(|p| {
                    let record = ProvenanceRecord {
                        label: p.label,
                        ideal: p.ideal.to_string(),
                        colength: p.colength,
                        oracle_colength: None,
                    };
                    (record, p.ideal)
                })
                .collect(),
            details: index.details,
            gram: index.gram.map(|g| {
                let m = g.matrix();
                (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
            }),
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. `env_seed` is the value of `SINGIDX_SEED`, if set.
pub fn run<I, S>(args: I, env_seed: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                0
            } else {
                let _ = write!(err, "{text}");
                2
            };
        }
    };
    let seed = match (cli.seed, env_seed) {
        (Some(s), _) => s,
        (None, Some(s)) => match s.trim().parse::<u64>() {
            Ok(s) => s,
            Err(_) => {
                let _ = writeln!(err, "error: {SEED_ENV}={s} is not an unsigned integer");
                return 2;
            }
        },
        (None, None) => GenericitySampler::DEFAULT_SEED,
    };
    let sampler = match GenericitySampler::new(seed, cli.trials, cli.height) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", cli.file.display());
            return 2;
        }
    };

    let started = Instant::now();
    let mut report = Report::new(cli.command.name(), seed);
    let code = match parse_problem(&text) {
        Err(e) => {
            report.status = Status::Error;
            report.error = Some(format!("parse error: {e}"));
            2
        }
        Ok(problem) => {
            report.task = std::iter::once(problem.task.command.clone())
                .chain(problem.task.args.iter().cloned())
                .collect::<Vec<_>>()
                .join(" ");
            match evaluate(&problem, cli.command, &sampler) {
                Err(Failure::Usage(m)) => {
                    report.status = Status::Error;
                    report.error = Some(m);
                    2
                }
                Err(Failure::Math(m)) => {
                    report.status = Status::Error;
                    report.error = Some(m);
                    1
                }
                Ok(outcome) => finish(&mut report, outcome, cli.oracle.then_some(cli.oracle_cap)),
            }
        }
    };
    report.timing_ms = started.elapsed().as_millis() as u64;
    let _ = write!(out, "{}", emit_report(&report, cli.format));
    if let Some(e) = &report.error {
        let _ = writeln!(err, "error: {e}");
    }
    code
}

fn finish(report: &mut Report, outcome: Outcome, oracle_cap: Option<u32>) -> i32 {
    report.result = outcome.result;
    report.details = outcome.details.into_iter().collect();
    report.gram = outcome.gram;
    let (mut records, ideals): (Vec<ProvenanceRecord>, Vec<IdealPresentation>) = outcome.provenance.into_iter().unzip();
    let mut code = 0;
    if let Some(cap) = oracle_cap {
        let oracle = singidx::par::map(&ideals, |i| colength_truncation_oracle(i, cap));
        for (r, o) in records.iter_mut().zip(oracle) {
            r.oracle_colength = Some(match o {
                OracleColength::Finite(v) => OracleValue::Finite(v),
                inconclusive => OracleValue::Inconclusive(inconclusive.to_string()),
            });
        }
        report.oracle_checked = true;
        if !records.iter().all(ProvenanceRecord::agrees) {
            report.status = Status::Failed;
            report.error = Some("oracle colength disagrees with the standard-basis colength".into());
            code = 3;
        }
    }
    report.provenance = records;
    code
}

struct Args<'a> {
    problem: &'a Problem,
    args: &'a [String],
}

impl<'a> Args<'a> {
    fn expect(&self, names: &[&str]) -> Result<(), Failure> {
        if self.args.len() != names.len() {
            return Err(Failure::Usage(format!(
                "task `{}` expects arguments <{}>, got {}",
                self.problem.task.command,
                names.join("> <"),
                self.args.len()
            )));
        }
        Ok(())
    }

    fn ring(&self) -> Result<&'a Ring, Failure> {
        self.problem.ring.as_ref().ok_or_else(|| Failure::Usage("missing `vars:` line".into()))
    }

    fn value(&self, i: usize) -> Result<&'a Value, Failure> {
        let name = &self.args[i];
        self.problem
            .bindings
            .get(name)
            .map(|(_, v)| v)
            .ok_or_else(|| Failure::Usage(format!("undefined binding `{name}`")))
    }

    fn poly(&self, i: usize) -> Result<Polynomial, Failure> {
        match self.value(i)? {
            Value::Poly(p) => Ok(p.clone()),
            Value::List(_) => Err(Failure::Usage(format!("`{}` must be a polynomial", self.args[i]))),
        }
    }

    fn polys(&self, i: usize) -> Result<Vec<Polynomial>, Failure> {
        as_polys(self.value(i)?).ok_or_else(|| Failure::Usage(format!("`{}` must be a list of polynomials", self.args[i])))
    }

    fn icis(&self, i: usize) -> Result<ICISPresentation, Failure> {
        Ok(ICISPresentation::new(self.ring()?, self.polys(i)?)?)
    }

    fn form(&self, i: usize) -> Result<OneFormGerm, Failure> {
        Ok(OneFormGerm::new(self.ring()?, self.polys(i)?)?)
    }

    fn field(&self, i: usize) -> Result<VectorFieldGerm, Failure> {
        VectorFieldGerm::new(self.ring()?, self.polys(i)?).map_err(|e| Failure::Math(e.to_string()))
    }

    fn collection(&self, v: &ICISPresentation, i: usize) -> Result<CollectionSpec, Failure> {
        let shape = || Failure::Usage(format!("`{}` must be a list of groups of 1-forms", self.args[i]));
        let Value::List(groups) = self.value(i)? else {
            return Err(shape());
        };
        let ring = self.ring()?;
        let groups = groups
            .iter()
            .map(|g| {
                let Value::List(forms) = g else {
                    return Err(shape());
                };
                forms
                    .iter()
                    .map(|w| Ok(OneFormGerm::new(ring, as_polys(w).ok_or_else(shape)?)?))
                    .collect::<Result<Vec<_>, Failure>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CollectionSpec::new(v, groups)?)
    }
}

fn as_polys(v: &Value) -> Option<Vec<Polynomial>> {
    match v {
        Value::Poly(p) => Some(vec![p.clone()]),
        Value::List(items) => items
            .iter()
            .map(|x| match x {
                Value::Poly(p) => Some(p.clone()),
                Value::List(_) => None,
            })
            .collect(),
    }
}

fn evaluate(problem: &Problem, command: Command, sampler: &GenericitySampler) -> Result<Outcome, Failure> {
    if problem.task.command != command.name() {
        return Err(Failure::Usage(format!(
            "command line asks for `{}` but the problem file's task is `{}`",
            command.name(),
            problem.task.command
        )));
    }
    let a = Args { problem, args: &problem.task.args };
    let index = match command {
        Command::VfIndex => {
            a.expect(&["X"])?;
            index_holomorphic_vf(&a.field(0)?)?
        }
        Command::Elk => {
            a.expect(&["X"])?;
            index_elk(&a.field(0)?)?
        }
        Command::Gsv => {
            a.expect(&["V", "w"])?;
            gsv_index_1form(&a.icis(0)?, &a.form(1)?)?
        }
        Command::Milnor => {
            a.expect(&["f"])?;
            milnor_number_hypersurface(&a.poly(0)?)?
        }
        Command::MilnorIcis => {
            a.expect(&["V"])?;
            milnor_number_icis(&a.icis(0)?)?
        }
        Command::GmHypersurface => {
            a.expect(&["f", "X"])?;
            gsv_index_vf_hypersurface(&a.poly(0)?, &a.field(1)?)?
        }
        Command::Homological => {
            a.expect(&["V", "w"])?;
            homological_index_1form_icis(&a.icis(0)?, &a.form(1)?)?
        }
        Command::Radial => {
            a.expect(&["V", "w"])?;
            radial_index_1form_icis(&a.icis(0)?, &a.form(1)?)?
        }
        Command::EulerObstruction => {
            a.expect(&["V", "g"])?;
            euler_obstruction_of_function_icis(&a.icis(0)?, &a.poly(1)?, sampler)?
        }
        Command::Meromorphic => {
            a.expect(&["V", "w", "P"])?;
            let poles = PoleChain::new(a.ring()?, a.polys(2)?)?;
            meromorphic_index(&a.icis(0)?, &a.form(1)?, &poles)?
        }
        Command::Collection => {
            a.expect(&["V", "C"])?;
            let v = a.icis(0)?;
            collection_index(&v, &a.collection(&v, 1)?)?
        }
        Command::Chern => {
            a.expect(&["V", "C"])?;
            let v = a.icis(0)?;
            chern_obstruction_collection(&v, &a.collection(&v, 1)?, sampler)?
        }
        Command::OracleColength => {
            a.expect(&["I"])?;
            let ideal = IdealPresentation::new(a.ring()?, a.polys(0)?).map_err(|e| Failure::Math(e.to_string()))?;
            return oracle_colength(ideal);
        }
        Command::Mobius | Command::RadialFromEu | Command::EuFromRadial | Command::Bmps => {
            return strata_task(problem, command);
        }
    };
    Ok(index.into())
}

/// Colength of a bare ideal; the oracle check happens in [`finish`].
fn oracle_colength(ideal: IdealPresentation) -> Result<Outcome, Failure> {
    let Colength::Finite(c) = colength(&ideal) else {
        return Err(Failure::Math(format!("ideal {ideal} has infinite colength")));
    };
    let record = ProvenanceRecord { label: "I".into(), ideal: ideal.to_string(), colength: c, oracle_colength: None };
    Ok(Outcome {
        result: Some(ResultValue::Integer(i64::try_from(c).map_err(|_| Failure::Math("colength overflow".into()))?)),
        provenance: vec![(record, ideal)],
        ..Outcome::default()
    })
}

fn strata_task(problem: &Problem, command: Command) -> Result<Outcome, Failure> {
    let names: Vec<String> = problem.strata.iter().map(|s| s.name.clone()).collect();
    let mut position: HashMap<&str, usize> = HashMap::new();
    for (i, s) in problem.strata.iter().enumerate() {
        if position.insert(&s.name, i).is_some() {
            return Err(Failure::Usage(format!("line {}: stratum `{}` declared twice", s.line, s.name)));
        }
    }
    let lookup = |name: &str, line: usize| {
        position
            .get(name)
            .copied()
            .ok_or_else(|| Failure::Usage(format!("line {line}: unknown stratum `{name}`")))
    };
    let relations = problem
        .order
        .iter()
        .map(|o| Ok((lookup(&o.lower, o.line)?, lookup(&o.upper, o.line)?, o.n)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let poset = StrataPoset::new(names.clone(), &relations)?;
    let field = |key: &str| -> Vec<Option<i64>> { problem.strata.iter().map(|s| s.values.get(key).copied()).collect() };
    let data = StratumIndexData { n: field("n"), eu: field("eu"), rad: field("rad"), chi: field("chi"), eu_v: field("euv") };
    let args = &problem.task.args;
    let mut details = vec![("strata".to_string(), names.join(" "))];
    let result = match command {
        Command::Mobius => {
            if !args.is_empty() {
                return Err(Failure::Usage("task `mobius` takes no arguments".into()));
            }
            ResultValue::Matrix(mobius_inverse(&poset)?)
        }
        Command::RadialFromEu => {
            if !args.is_empty() {
                return Err(Failure::Usage("task `radial-from-eu` takes no arguments".into()));
            }
            ResultValue::Integer(radial_from_obstructions(&poset, &data)?)
        }
        Command::EuFromRadial => {
            if !args.is_empty() {
                return Err(Failure::Usage("task `eu-from-radial` takes no arguments".into()));
            }
            details.push(("top".into(), names[poset.top()?].clone()));
            ResultValue::Integer(obstruction_from_radial(&poset, &data)?)
        }
        Command::Bmps => {
            let eu0 = match args.as_slice() {
                [a] => a
                    .strip_prefix("euv0=")
                    .and_then(|v| v.parse::<i64>().ok())
                    .ok_or_else(|| Failure::Usage(format!("expected `euv0=<int>`, got `{a}`")))?,
                _ => return Err(Failure::Usage("task `bmps` expects `euv0=<int>`".into())),
            };
            ResultValue::Integer(bmps_function_obstruction(&poset, &data, eu0)?)
        }
        _ => unreachable!("not a strata command"),
    };
    Ok(Outcome { result: Some(result), details, ..Outcome::default() })
}
