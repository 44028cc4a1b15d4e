//! Command-line front end.
//!
//! Every command emits a table. CSV output starts with a header line,
//! followed by one row per record and then `# key=value` metadata lines.
//! JSON output is `{"metadata": {...}, "rows": [...]}` with one object per
//! row keyed by the CSV header names. Big integers and rationals are strings;
//! reals are fixed-point strings with `--digits` decimals.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde_json::{Map, Value};

use crate::arith::Rational;
use crate::asymptotics;
use crate::counting::{build_table, MapSpec, OrbitTable};
use crate::precision::{self, Precision};
use crate::tolerances as tol;
use crate::verify::{self, Status, VerifyConfig};
use crate::zeta::{self, Angle};

pub const MAX_TABLE_BOUND: u64 = 10_000;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "orbitkit", version, about = "Exact orbit counting and zeta functions for the circle-doubling map and its 3-adic extension")]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Decimal places for real-valued columns.
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: usize,

    /// Write to this file instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

/// Validated output settings.
#[derive(Debug, Clone)]
pub struct OutputConfig {
    pub format: Format,
    pub digits: usize,
    pub path: Option<PathBuf>,
}

impl TryFrom<&OutputArgs> for OutputConfig {
    type Error = anyhow::Error;

    fn try_from(args: &OutputArgs) -> anyhow::Result<Self> {
        if args.digits == 0 {
            bail!("--digits must be at least 1");
        }
        Ok(OutputConfig {
            format: args.format,
            digits: args.digits,
            path: args.output.clone(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    /// The 3-adic extension f.
    F,
    /// The circle-doubling map g.
    G,
    /// f composed with itself.
    F2,
    /// g composed with itself.
    G2,
    /// Orbit counts read from --orbits-file.
    Custom,
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    #[arg(long, value_enum)]
    pub map: MapArg,

    /// One O_n per line (line n holds O_n); used with --map custom.
    #[arg(long)]
    pub orbits_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rows (n, F_n, L_n, O_n).
    Table {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        max: u64,
    },
    /// Prime orbit counts and the ratio X*pi(X)/2^(X+1).
    Pnt {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = tol::DEFAULT_BURN_IN)]
        burn_in: u64,
    },
    /// Merten sums sum_{n<=X} O_n/2^n against ln X.
    Merten {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        max: u64,
    },
    /// Dynamical zeta function data.
    Zeta {
        #[command(subcommand)]
        command: ZetaCommand,
    },
    /// Runs the invariant suite; exits 2 if any check fails.
    Verify {
        #[arg(long)]
        max: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZetaCommand {
    /// Coefficients c_n of the zeta function.
    Coeffs {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Checks the two expansions of xi_1 coefficientwise.
    Xi1Check {
        #[arg(long)]
        degree: usize,
    },
    /// |zeta| along a ray, by the product formula and by the partial series.
    Boundary {
        /// Angle as a fraction of a full turn, e.g. 1/3.
        #[arg(long)]
        angle: String,
        /// Comma-separated radii in (0, 1/2).
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
        /// Number of factors kept from the infinite product.
        #[arg(long, default_value_t = 10)]
        terms: u32,
        /// Degree of the partial series.
        #[arg(long, default_value_t = 2000)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = MapArg::F)]
        map: MapArg,
        #[arg(long)]
        orbits_file: Option<PathBuf>,
    },
}

/// One output cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Index(u64),
    Text(String),
}

impl Cell {
    fn as_csv(&self) -> String {
        match self {
            Cell::Index(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn as_json(&self) -> Value {
        match self {
            Cell::Index(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<&BigUint> for Cell {
    fn from(v: &BigUint) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// A self-describing output table.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Vec<(String, String)>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            ..Default::default()
        }
    }

    fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> anyhow::Result<Vec<u8>> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::as_csv))?;
                }
                let mut out = w.into_inner().context("flushing CSV")?;
                for (k, v) in &self.metadata {
                    writeln!(out, "# {k}={v}")?;
                }
                Ok(out)
            }
            Format::Json => {
                let meta: Map<String, Value> = self
                    .metadata
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
                    .collect();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        Value::Object(
                            self.columns
                                .iter()
                                .zip(row)
                                .map(|(c, v)| (c.to_string(), v.as_json()))
                                .collect(),
                        )
                    })
                    .collect();
                let mut doc = Map::new();
                doc.insert("metadata".into(), Value::Object(meta));
                doc.insert("rows".into(), Value::Array(rows));
                let mut out = serde_json::to_vec_pretty(&Value::Object(doc))?;
                out.push(b'\n');
                Ok(out)
            }
        }
    }
}

fn fixed(q: &Rational, digits: usize) -> Cell {
    Cell::Text(precision::fmt_fixed(q, digits))
}

fn fixed_f64(x: f64, digits: usize) -> Cell {
    match Rational::from_float(x) {
        Some(q) => fixed(&q, digits),
        None => Cell::Text(x.to_string()),
    }
}

/// Reads a one-column file of orbit counts.
pub fn read_orbit_file(path: &Path) -> anyhow::Result<Vec<BigUint>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read orbit file {}", path.display()))?;
    let lines: Vec<&str> = text.lines().collect();
    let last = lines.iter().rposition(|l| !l.trim().is_empty()).map_or(0, |i| i + 1);
    lines[..last]
        .iter()
        .enumerate()
        .map(|(i, line)| {
            line.trim().parse::<BigUint>().with_context(|| {
                format!(
                    "{}:{}: expected a non-negative integer, got {:?}",
                    path.display(),
                    i + 1,
                    line.trim()
                )
            })
        })
        .collect()
}

fn map_spec(map: MapArg, orbits_file: Option<&Path>) -> anyhow::Result<MapSpec> {
    Ok(match map {
        MapArg::F => MapSpec::three_adic(),
        MapArg::G => MapSpec::circle_doubling(),
        MapArg::F2 => MapSpec::iterate(MapSpec::three_adic(), 2)?,
        MapArg::G2 => MapSpec::iterate(MapSpec::circle_doubling(), 2)?,
        MapArg::Custom => {
            let path = orbits_file.context("--map custom needs --orbits-file")?;
            MapSpec::custom(read_orbit_file(path)?)
        }
    })
}

fn check_bound(name: &str, value: u64) -> anyhow::Result<()> {
    if !(1..=MAX_TABLE_BOUND).contains(&value) {
        bail!("{name} must be between 1 and {MAX_TABLE_BOUND}, got {value}");
    }
    Ok(())
}

fn table_for(map: &MapArgs, max: u64) -> anyhow::Result<OrbitTable> {
    check_bound("--max", max)?;
    let spec = map_spec(map.map, map.orbits_file.as_deref())?;
    Ok(build_table(spec, max)?)
}

fn describe(table: &mut Table, spec: &MapSpec) {
    table.meta("map", spec.label());
    table.meta("entropy", spec.entropy());
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerificationFailed,
}

/// Builds the output table for a command.
pub fn execute(command: &Command, out: &OutputConfig) -> anyhow::Result<(Table, Outcome)> {
    let digits = out.digits;
    match command {
        Command::Table { map, max } => {
            let t = table_for(map, *max)?;
            let mut table = Table::new(&["n", "F_n", "L_n", "O_n"]);
            describe(&mut table, t.spec());
            table.meta("max", max);
            for n in 1..=*max {
                table.push(vec![
                    Cell::Index(n),
                    t.fixed(n)?.into(),
                    t.least(n)?.into(),
                    t.orbits(n)?.into(),
                ]);
            }
            Ok((table, Outcome::Success))
        }
        Command::Pnt { map, max, burn_in } => {
            let t = table_for(map, *max)?;
            let points = asymptotics::ratio_series(&t, *max, *burn_in)?;
            let mut table = Table::new(&["X", "pi", "ratio", "running_min", "running_max"]);
            describe(&mut table, t.spec());
            table.meta("max", max);
            table.meta("burn_in", burn_in);
            table.meta("ratio", "X*pi(X)/2^(X+1)");
            table.meta("band_slack", precision::fmt_rational(&tol::rational(tol::RATIO_BAND_SLACK)));
            table.meta("baseline_tolerance", precision::fmt_rational(&tol::rational(tol::PNT_BASELINE_TOL)));
            table.meta("digits", digits);
            for p in &points {
                table.push(vec![
                    Cell::Index(p.x),
                    (&p.pi).into(),
                    fixed(&p.ratio, digits),
                    fixed(&p.running_min, digits),
                    fixed(&p.running_max, digits),
                ]);
            }
            Ok((table, Outcome::Success))
        }
        Command::Merten { map, max } => {
            let t = table_for(map, *max)?;
            let precision = Precision::from_env()?;
            let points = asymptotics::merten_series(&t, *max, precision)?;
            let mut table = Table::new(&["X", "sum", "sum_decimal", "ln_X", "normalized"]);
            describe(&mut table, t.spec());
            table.meta("max", max);
            table.meta("precision_bits", precision.bits());
            table.meta("merten_window_start", tol::MERTEN_MIN_X);
            table.meta("merten_slack", tol::MERTEN_SLACK);
            table.meta("digits", digits);
            for p in &points {
                table.push(vec![
                    Cell::Index(p.x),
                    precision::fmt_rational(&p.sum).into(),
                    fixed(&p.sum, digits),
                    fixed(&p.log_x, digits),
                    p.normalized()
                        .map_or(Cell::Text(String::new()), |q| fixed(&q, digits)),
                ]);
            }
            Ok((table, Outcome::Success))
        }
        Command::Zeta { command } => execute_zeta(command, digits),
        Command::Verify { max, inject_fault } => {
            let config = VerifyConfig {
                max: *max,
                precision: Precision::from_env()?,
                inject_fault: *inject_fault,
            };
            let outcomes = verify::run(&config)?;
            let mut table = Table::new(&["check", "parameters", "status", "detail"]);
            table.meta("max", max);
            table.meta("precision_bits", config.precision.bits());
            for o in &outcomes {
                table.push(vec![
                    o.name.into(),
                    o.params.clone().into(),
                    o.status.to_string().into(),
                    o.detail.clone().into(),
                ]);
            }
            let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
            table.meta("failed", failed);
            let outcome = if verify::all_passed(&outcomes) {
                Outcome::Success
            } else {
                Outcome::VerificationFailed
            };
            Ok((table, outcome))
        }
    }
}

fn parse_angle(s: &str) -> anyhow::Result<Angle> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().with_context(|| format!("bad angle numerator in {s:?}"))?;
    let den: BigInt = den.parse().with_context(|| format!("bad angle denominator in {s:?}"))?;
    Ok(Angle::turns(num, den)?)
}

fn execute_zeta(command: &ZetaCommand, digits: usize) -> anyhow::Result<(Table, Outcome)> {
    match command {
        ZetaCommand::Coeffs { map, degree } => {
            check_bound("--degree", *degree as u64)?;
            let t = table_for(map, *degree as u64)?;
            let c = zeta::zeta_coefficients(&t, *degree)?;
            let mut table = Table::new(&["n", "c_n"]);
            describe(&mut table, t.spec());
            table.meta("degree", degree);
            for (n, c) in c.iter().enumerate() {
                table.push(vec![Cell::Index(n as u64), c.into()]);
            }
            Ok((table, Outcome::Success))
        }
        ZetaCommand::Xi1Check { degree } => {
            check_bound("--degree", *degree as u64)?;
            if *degree < 2 {
                bail!("--degree must be at least 2 for xi1-check");
            }
            let direct = zeta::xi1_direct(*degree)?;
            let closed = zeta::xi1_closed_form(*degree)?;
            let mismatch = direct
                .coeffs()
                .iter()
                .zip(closed.coeffs())
                .position(|(a, b)| a != b);
            let mut table = Table::new(&["degree", "status", "first_mismatch"]);
            table.meta("identity", "sum z^(2n)/n (4^n-1)|n|_3 = log((1-z^2)/(1-4z^2)) + 2 sum_j 9^-j log((1-(2z)^(2*3^j))/(1-z^(2*3^j)))");
            let (status, at, outcome) = match mismatch {
                None => ("PASS", String::new(), Outcome::Success),
                Some(n) => ("FAIL", n.to_string(), Outcome::VerificationFailed),
            };
            table.push(vec![Cell::Index(*degree as u64), status.into(), at.into()]);
            Ok((table, outcome))
        }
        ZetaCommand::Boundary {
            angle,
            radii,
            terms,
            degree,
            map,
            orbits_file,
        } => {
            check_bound("--degree", *degree as u64)?;
            let angle = parse_angle(angle)?;
            let spec = map_spec(*map, orbits_file.as_deref())?;
            let t = build_table(spec, *degree as u64)?;
            let rows = zeta::radial_scan(&t, &angle, radii, *terms, *degree)?;
            let mut table = Table::new(&[
                "radius",
                "angle_num",
                "angle_den",
                "terms",
                "degree",
                "product_modulus",
                "series_modulus",
            ]);
            describe(&mut table, t.spec());
            table.meta("angle", format!("2*pi*{}", precision::fmt_rational(angle.as_turns())));
            table.meta("terms", terms);
            table.meta("degree", degree);
            table.meta("arithmetic", "f64 complex");
            table.meta("digits", digits);
            for r in &rows {
                table.push(vec![
                    fixed_f64(r.radius, digits),
                    (&r.angle_num).into(),
                    (&r.angle_den).into(),
                    Cell::Index(r.terms as u64),
                    Cell::Index(r.degree as u64),
                    fixed_f64(r.product_modulus, digits),
                    fixed_f64(r.series_modulus, digits),
                ]);
            }
            Ok((table, Outcome::Success))
        }
    }
}

/// Writes the table where the output configuration points.
pub fn emit(table: &Table, out: &OutputConfig) -> anyhow::Result<()> {
    let bytes = table.render(out.format)?;
    match &out.path {
        Some(path) => fs::write(path, bytes)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&bytes)?;
            lock.flush()?;
        }
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let run = || -> anyhow::Result<Outcome> {
        let out = OutputConfig::try_from(&cli.output)?;
        let (table, outcome) = execute(&cli.command, &out)?;
        emit(&table, &out)?;
        Ok(outcome)
    };
    match run() {
        Ok(Outcome::Success) => EXIT_OK,
        Ok(Outcome::VerificationFailed) => {
            eprintln!("orbitkit: verification failed");
            EXIT_VERIFY_FAILED
        }
        Err(e) => {
            eprintln!("orbitkit: {e:#}");
            EXIT_INVALID
        }
    }
}
