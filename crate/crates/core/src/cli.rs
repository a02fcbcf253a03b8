//! Command-line front end.
//!
//! Every command produces a [`RunReport`]: a command echo, the parameters
//! that determine the output, and one row per computed value. Reports depend
//! only on those parameters, never on `--jobs` or timing, so reruns are
//! byte-identical.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::formulas::{self, Formula};
use crate::oracle::{self, Budget, Config};
use crate::qcalc::{compositions, decomposition_count, galois_number, gauss_binom, BigNat};
use crate::series::verify_riddell;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

type PairOracle = fn(usize, usize, u64, &Config) -> Result<BigUint>;

#[derive(Debug, Parser)]
#[command(
    name = "altspace",
    version,
    about = "Exact counts of graphs and alternating matrix spaces over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Print per-row wall time to standard error.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a sequence for n up to --n-max.
    Table {
        /// graphs, spaces, connected, no-isolated, nds, dis, read, read-q, ortho-q or rooted
        formula: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        c: Option<usize>,
    },
    /// Compare formulas against exhaustive enumeration.
    Verify {
        /// Comma-separated: census, decompositions, nds, dis, read-q, ortho-q,
        /// connected, no-isolated, read
        #[arg(long, value_delimiter = ',', required = true)]
        scope: Vec<String>,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        q: Option<u64>,
        /// One or more part counts, comma-separated.
        #[arg(long, value_delimiter = ',')]
        c: Vec<usize>,
        /// Worker threads for enumeration (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Largest enumeration any single count may perform.
        #[arg(long, default_value_t = Budget::DEFAULT_LIMIT)]
        budget: u64,
        /// Adds one to every formula value of the named scope.
        #[arg(long, hide = true)]
        perturb: Option<String>,
    },
    /// Check the exponential identity between all and indecomposable
    /// objects, coefficient by coefficient.
    Series {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        order: usize,
    },
}

/// One computed value, optionally paired with an independent count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub formula: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<String>,
    #[serde(default, rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

impl Row {
    fn value(
        formula: impl Into<String>,
        n: usize,
        c: Option<usize>,
        q: Option<u64>,
        value: &BigNat,
    ) -> Self {
        Row {
            formula: formula.into(),
            n,
            c,
            q,
            value: value.to_string(),
            oracle: None,
            matches: None,
        }
    }

    fn compared(
        formula: impl Into<String>,
        n: usize,
        c: Option<usize>,
        q: Option<u64>,
        value: &BigNat,
        oracle: &BigNat,
    ) -> Self {
        Row {
            oracle: Some(oracle.to_string()),
            matches: Some(value == oracle),
            ..Row::value(formula, n, c, q, value)
        }
    }

    fn sort_key(&self) -> (&str, usize, Option<usize>, Option<u64>) {
        (&self.formula, self.n, self.c, self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
}

impl RunReport {
    fn new(command: &str, params: BTreeMap<String, Value>, mut rows: Vec<Row>) -> Self {
        rows.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        RunReport {
            command: command.to_string(),
            params,
            rows,
        }
    }

    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches != Some(false))
    }

    /// Pretty JSON with object keys in sorted order, so any JSON parser's
    /// re-serialization of the output reproduces it byte for byte.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["formula", "n", "c", "q", "value", "oracle", "match"])
            .expect("in-memory write");
        let opt = |v: Option<String>| v.unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.formula.clone(),
                r.n.to_string(),
                opt(r.c.map(|c| c.to_string())),
                opt(r.q.map(|q| q.to_string())),
                r.value.clone(),
                opt(r.oracle.clone()),
                opt(r.matches.map(|m| m.to_string())),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::OverBudget { .. } | Error::UnsupportedField(_) | Error::InvalidArgument(_) => {
            EXIT_USAGE
        }
        Error::InexactDivision { .. }
        | Error::NegativeCount { .. }
        | Error::NonIntegralCoefficient { .. }
        | Error::SeriesMismatch(_) => EXIT_MISMATCH,
    }
}

/// Row timing, reported on standard error only.
struct Clock {
    enabled: bool,
}

impl Clock {
    fn time<T>(&self, label: impl FnOnce() -> String, f: impl FnOnce() -> T) -> T {
        if !self.enabled {
            return f();
        }
        let start = Instant::now();
        let out = f();
        eprintln!(
            "{:>10.3} ms  {}",
            start.elapsed().as_secs_f64() * 1e3,
            label()
        );
        out
    }
}

pub fn cmd_table(
    formula: &str,
    n_max: usize,
    q: Option<u64>,
    c: Option<usize>,
) -> Result<RunReport> {
    let formula: Formula = formula.parse()?;
    let table = formulas::table(formula, n_max, q, c)?;
    let rows = table
        .iter()
        .map(|(n, v)| Row::value(formula.id(), n, table.c, table.q, v))
        .collect();
    let mut params = BTreeMap::new();
    params.insert("formula".into(), json!(formula.id()));
    params.insert("n_max".into(), json!(n_max));
    if let Some(q) = q {
        params.insert("q".into(), json!(q));
    }
    if let Some(c) = c {
        params.insert("c".into(), json!(c));
    }
    Ok(RunReport::new("table", params, rows))
}

/// Scopes accepted by [`cmd_verify`].
pub const SCOPES: [&str; 9] = [
    "census",
    "decompositions",
    "nds",
    "dis",
    "read-q",
    "ortho-q",
    "connected",
    "no-isolated",
    "read",
];

/// Arguments of [`cmd_verify`].
#[derive(Debug, Clone)]
pub struct VerifyArgs {
    pub scopes: Vec<String>,
    pub n_max: usize,
    pub q: Option<u64>,
    pub c: Vec<usize>,
    pub jobs: usize,
    pub budget: u64,
    pub perturb: Option<String>,
}

struct Verifier<'a> {
    args: &'a VerifyArgs,
    config: Config,
    clock: Clock,
    rows: Vec<Row>,
}

impl Verifier<'_> {
    fn q(&self, scope: &str) -> Result<u64> {
        match self.args.q {
            Some(0) => Err(usage("q must be at least 1")),
            Some(q) => Ok(q),
            None => Err(usage(format!("scope `{scope}` needs --q"))),
        }
    }

    fn cs(&self, scope: &str) -> Result<&[usize]> {
        if self.args.c.is_empty() {
            return Err(usage(format!("scope `{scope}` needs --c")));
        }
        if self.args.c.contains(&0) {
            return Err(usage("c must be at least 1"));
        }
        Ok(&self.args.c)
    }

    #[allow(clippy::too_many_arguments)]
    fn compare(
        &mut self,
        scope: &str,
        formula: String,
        n: usize,
        c: Option<usize>,
        q: Option<u64>,
        value: BigNat,
        oracle: impl FnOnce(&Config) -> Result<BigUint>,
    ) -> Result<()> {
        let config = self.config;
        let label = || format!("{formula} n={n} c={c:?} q={q:?}");
        let expected = self.clock.time(label, || oracle(&config))?;
        let value = if self.args.perturb.as_deref() == Some(scope) {
            value + 1u32
        } else {
            value
        };
        self.rows
            .push(Row::compared(formula, n, c, q, &value, &expected));
        Ok(())
    }

    fn run(&mut self, scope: &str) -> Result<()> {
        let n_max = self.args.n_max;
        match scope {
            "census" => {
                let q = self.q(scope)?;
                for m in 0..=n_max {
                    let config = self.config;
                    let census = self.clock.time(
                        || format!("census m={m} q={q}"),
                        || oracle::subspace_census(m, q, &config),
                    )?;
                    let bump = u32::from(self.args.perturb.as_deref() == Some(scope));
                    for (d, count) in census.iter().enumerate() {
                        let value = gauss_binom(m, d, q) + bump;
                        self.rows.push(Row::compared(
                            "gauss-binom",
                            m,
                            Some(d),
                            Some(q),
                            &value,
                            count,
                        ));
                    }
                    let total: BigUint = census.iter().sum();
                    self.rows.push(Row::compared(
                        "galois",
                        m,
                        None,
                        Some(q),
                        &galois_number(m, q),
                        &total,
                    ));
                }
            }
            "decompositions" => {
                let q = self.q(scope)?;
                for n in 1..=n_max {
                    let parts: Vec<usize> = if self.args.c.is_empty() {
                        (1..=n).collect()
                    } else {
                        self.cs(scope)?.to_vec()
                    };
                    for c in parts {
                        for shape in compositions(n, c) {
                            let formula = format!("decomposition-count{shape}");
                            self.compare(
                                scope,
                                formula,
                                n,
                                Some(c),
                                Some(q),
                                decomposition_count(&shape, q),
                                |cfg| oracle::decomposition_census(n, &shape, q, cfg),
                            )?;
                        }
                    }
                }
            }
            "nds" => {
                let q = self.q(scope)?;
                for n in 0..=n_max {
                    let value = formulas::nds(n, q)?;
                    if q == 1 {
                        self.compare(scope, "nds".into(), n, None, Some(q), value, |cfg| {
                            oracle::count_no_isolated(n, cfg)
                        })?;
                    } else {
                        self.compare(scope, "nds".into(), n, None, Some(q), value, |cfg| {
                            oracle::oracle_nds(n, q, cfg)
                        })?;
                    }
                }
            }
            "dis" => {
                let q = self.q(scope)?;
                for n in Formula::Dis.min_n()..=n_max {
                    let value = formulas::dis(n, q)?;
                    if q == 1 {
                        self.compare(scope, "dis".into(), n, None, Some(q), value, |cfg| {
                            oracle::count_connected_no_isolated(n, cfg)
                        })?;
                    } else {
                        self.compare(scope, "dis".into(), n, None, Some(q), value, |cfg| {
                            oracle::oracle_dis(n, q, cfg)
                        })?;
                    }
                }
            }
            "read-q" | "ortho-q" => {
                let q = self.q(scope)?;
                for &c in self.cs(scope)?.to_vec().iter() {
                    for n in 0..=n_max {
                        let (value, oracle): (BigNat, PairOracle) = match (scope, q) {
                            ("read-q", 1) => {
                                (formulas::read_q_isotropic(n, c, q), |n, c, _, cfg| {
                                    oracle::count_colored_pairs(n, c, cfg)
                                })
                            }
                            ("read-q", _) => {
                                (formulas::read_q_isotropic(n, c, q), oracle::oracle_read_q)
                            }
                            (_, 1) => (formulas::ortho_q(n, c, q), |n, c, _, cfg| {
                                oracle::count_separated_pairs(n, c, cfg)
                            }),
                            _ => (formulas::ortho_q(n, c, q), oracle::oracle_ortho),
                        };
                        self.compare(
                            scope,
                            scope.to_string(),
                            n,
                            Some(c),
                            Some(q),
                            value,
                            |cfg| oracle(n, c, q, cfg),
                        )?;
                    }
                }
            }
            "connected" => {
                for n in Formula::Connected.min_n()..=n_max {
                    let value = formulas::connected_graphs(n)?;
                    self.compare(scope, scope.into(), n, None, None, value, |cfg| {
                        oracle::count_connected(n, cfg)
                    })?;
                }
            }
            "no-isolated" => {
                for n in 0..=n_max {
                    let value = formulas::no_isolated_graphs(n)?;
                    self.compare(scope, scope.into(), n, None, None, value, |cfg| {
                        oracle::count_no_isolated(n, cfg)
                    })?;
                }
            }
            "read" => {
                for &c in self.cs(scope)?.to_vec().iter() {
                    for n in 0..=n_max {
                        let value = formulas::read_colored(n, c);
                        self.compare(scope, scope.into(), n, Some(c), None, value, |cfg| {
                            oracle::count_colored_pairs(n, c, cfg)
                        })?;
                    }
                }
            }
            other => {
                return Err(usage(format!(
                    "unknown scope `{other}` (expected one of {})",
                    SCOPES.join(", ")
                )))
            }
        }
        Ok(())
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<RunReport> {
    cmd_verify_timed(args, false)
}

fn cmd_verify_timed(args: &VerifyArgs, timings: bool) -> Result<RunReport> {
    let mut scopes = args.scopes.clone();
    scopes.sort();
    scopes.dedup();
    let mut v = Verifier {
        args,
        config: Config::new(Budget::new(args.budget), args.jobs),
        clock: Clock { enabled: timings },
        rows: Vec::new(),
    };
    for scope in &scopes {
        v.run(scope)?;
    }
    let mut params = BTreeMap::new();
    params.insert("scope".into(), json!(scopes));
    params.insert("n_max".into(), json!(args.n_max));
    params.insert("budget".into(), json!(args.budget));
    if let Some(q) = args.q {
        params.insert("q".into(), json!(q));
    }
    if !args.c.is_empty() {
        params.insert("c".into(), json!(args.c));
    }
    Ok(RunReport::new("verify", params, v.rows))
}

pub fn cmd_series(q: u64, order: usize) -> Result<RunReport> {
    let report = verify_riddell(q, order)?;
    let rows = report
        .rows
        .iter()
        .map(|r| Row {
            formula: "riddell".into(),
            n: r.n,
            c: None,
            q: Some(q),
            value: r.expected.to_string(),
            oracle: Some(r.composed.to_string()),
            matches: Some(r.matches()),
        })
        .collect();
    let params = BTreeMap::from([
        ("q".to_string(), json!(q)),
        ("order".to_string(), json!(order)),
    ]);
    Ok(RunReport::new("series", params, rows))
}

fn execute(cli: &Cli) -> Result<RunReport> {
    match &cli.command {
        Command::Table {
            formula,
            n_max,
            q,
            c,
        } => cmd_table(formula, *n_max, *q, *c),
        Command::Verify {
            scope,
            n_max,
            q,
            c,
            jobs,
            budget,
            perturb,
        } => {
            let jobs = jobs.unwrap_or_else(|| Config::default().jobs);
            if jobs == 0 {
                return Err(usage("--jobs must be at least 1"));
            }
            let args = VerifyArgs {
                scopes: scope.clone(),
                n_max: *n_max,
                q: *q,
                c: c.clone(),
                jobs,
                budget: *budget,
                perturb: perturb.clone(),
            };
            cmd_verify_timed(&args, cli.timings)
        }
        Command::Series { q, order } => {
            let clock = Clock {
                enabled: cli.timings,
            };
            clock.time(
                || format!("series q={q} order={order}"),
                || cmd_series(*q, *order),
            )
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes the report. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let report = match execute(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = report.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if report.all_match() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(
        scopes: &[&str],
        n_max: usize,
        q: Option<u64>,
        c: &[usize],
        jobs: usize,
    ) -> Result<RunReport> {
        cmd_verify(&VerifyArgs {
            scopes: scopes.iter().map(|s| s.to_string()).collect(),
            n_max,
            q,
            c: c.to_vec(),
            jobs,
            budget: Budget::DEFAULT_LIMIT,
            perturb: None,
        })
    }

    #[test]
    fn table_rows() {
        let r = cmd_table("connected", 4, None, None).unwrap();
        let values: Vec<&str> = r.rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(values, ["1", "1", "4", "38"]);
        let r = cmd_table("nds", 3, Some(1), None).unwrap();
        let values: Vec<&str> = r.rows.iter().map(|r| r.value.as_str()).collect();
        assert_eq!(values, ["1", "0", "1", "4"]);
        assert!(matches!(
            cmd_table("nope", 3, None, None),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            cmd_table("read-q", 3, Some(2), None),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn verify_nds_has_five_rows() {
        let r = verify(&["nds"], 4, Some(2), &[], 2).unwrap();
        assert_eq!(r.rows.len(), 5);
        assert!(r.all_match());
    }

    #[test]
    fn q_one_scopes_use_graph_oracles() {
        let r = verify(
            &["nds", "dis", "read-q", "ortho-q"],
            5,
            Some(1),
            &[1, 2, 3],
            2,
        )
        .unwrap();
        assert!(r.all_match(), "{}", r.to_json());
    }

    #[test]
    fn rows_are_sorted() {
        let r = verify(&["read", "connected"], 3, None, &[3, 2], 1).unwrap();
        let keys: Vec<_> = r.rows.iter().map(Row::sort_key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn json_round_trip() {
        let r = verify(&["census", "decompositions"], 3, Some(2), &[], 1).unwrap();
        let text = r.to_json();
        let parsed: RunReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json(), text);
    }

    #[test]
    fn csv_layout() {
        let csv = cmd_series(2, 2).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("formula,n,c,q,value,oracle,match"));
        assert_eq!(lines.next(), Some("riddell,1,,2,0,0,true"));
    }

    #[test]
    fn error_classes() {
        assert!(matches!(
            verify(&["nds"], 4, Some(4), &[], 1),
            Err(Error::UnsupportedField(4))
        ));
        assert!(matches!(
            verify(&["bogus"], 2, Some(2), &[], 1),
            Err(Error::InvalidArgument(_))
        ));
        assert_eq!(exit_code(&Error::UnsupportedField(4)), EXIT_USAGE);
        assert_eq!(
            exit_code(&Error::NonIntegralCoefficient { n: 1 }),
            EXIT_MISMATCH
        );
    }
}
