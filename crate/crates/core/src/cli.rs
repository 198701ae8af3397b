//! Command-line front end. Every subcommand renders a [`Table`] whose rows
//! all carry an error bound; output is a pure function of the arguments and
//! input files.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Complex, Float, Rational};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::arith::{chebyshev_report, halfline_probe, sieve_mangoldt};
use crate::criteria::{
    derivative_criterion, fit_normalization_law, gen_li_derivative, gen_li_sum, identity_ratio, li_lambda,
    modified_sum, multiset_sum, voros_sum, CriterionParams, CriterionResult, Multiset, Verdict,
};
use crate::error::Error;
use crate::exact::{a_in_warning_zone, format_rational, parse_rational, CoeffTable};
use crate::numerics::{default_nodes, log_xi_derivs, log_xi_even_derivs, xi_even_derivs, PrecisionCtx};
use crate::zeros::{load_zeros, ZeroTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "xi-criteria",
    version,
    about = "Positivity criteria over zeta zeros and derivatives of ln xi"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Single index n.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Inclusive index range, e.g. `1..8`.
    #[arg(long, global = true, conflicts_with = "n")]
    pub n_range: Option<String>,
    /// Map parameter, decimal or `p/q`.
    #[arg(long, global = true, default_value = "2")]
    pub a: String,
    /// Centre of the maps for `multiset`.
    #[arg(long, global = true, default_value_t = 0.5)]
    pub sigma: f64,
    #[arg(long, global = true, default_value_t = 256, env = "RH_PRECISION_BITS")]
    pub precision_bits: u32,
    /// Contour radius for derivative subcommands.
    #[arg(long, global = true, default_value_t = 4.0)]
    pub radius: f64,
    /// Contour nodes; defaults to max(64, 8 * max order).
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    #[arg(long, global = true, default_value = "data/zeros.txt")]
    pub zeros_file: PathBuf,
    /// Decimal digits carried by the zeros file.
    #[arg(long, global = true, default_value_t = 9)]
    pub zeros_digits: u32,
    /// Number of leading zeros to sum; defaults to the whole table.
    #[arg(long, global = true)]
    pub max_zeros: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Subcommand)]
pub enum Command {
    /// Exact tables A_(k,n) and F_k.
    Coeffs,
    /// Modified zero sums.
    Sum,
    /// Derivative criterion at 1/2.
    Deriv,
    /// Zero sums against the derivative criterion, with the fitted constant.
    Verify,
    /// Voros sums at a = 2 from nested square roots.
    Voros,
    /// Li coefficients by contour and by zero sum.
    Lambda,
    /// Shifted Li sums: printed form, derivative form, expanded form.
    Genli,
    /// Finite multiset sums from a file of `re im mult` lines.
    Multiset { file: PathBuf },
    /// Von Mangoldt partial sums against -zeta'(a)/zeta(a).
    Arith {
        #[arg(long, value_delimiter = ',', default_value = "10000,100000,1000000")]
        checkpoints: Vec<u32>,
    },
    /// Even derivatives of xi at 1/2.
    Pustylnikov,
}

/// Validated arguments; every module precondition that can be checked
/// without computing is checked here.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub ns: Vec<usize>,
    pub a: Rational,
    pub sigma: f64,
    pub ctx: PrecisionCtx,
    pub radius: f64,
    pub nodes: Option<usize>,
    pub zeros_file: PathBuf,
    pub zeros_digits: u32,
    pub max_zeros: Option<usize>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_USAGE,
            Error::Parse { .. } | Error::InvalidValue { .. } | Error::Io { .. } => EXIT_INPUT,
            Error::Pole(_)
            | Error::BranchCut(_)
            | Error::Resolution(_)
            | Error::Numerical(_)
            | Error::Indeterminate(_) => EXIT_NUMERICAL,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_n_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::usage(format!("--n-range expects `lo..hi` with 1 <= lo <= hi, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let o = cli.options;
        let ns = match (o.n, &o.n_range) {
            (Some(0), _) => return Err(CliError::usage("--n must be positive")),
            (Some(n), _) => vec![n],
            (None, Some(r)) => parse_n_range(r)?,
            (None, None) => Vec::new(),
        };
        if ns.is_empty() && !matches!(cli.command, Command::Arith { .. }) {
            return Err(CliError::usage("--n or --n-range is required"));
        }
        let a = parse_rational(&o.a).map_err(|e| CliError::usage(e.to_string()))?;
        if a <= 0 && !matches!(cli.command, Command::Genli) {
            return Err(CliError::usage("--a must be positive"));
        }
        if o.max_zeros == Some(0) {
            return Err(CliError::usage("--max-zeros must be at least 1"));
        }
        if !(o.radius > 0.0 && o.radius.is_finite()) {
            return Err(CliError::usage("--radius must be positive"));
        }
        if !o.sigma.is_finite() {
            return Err(CliError::usage("--sigma must be finite"));
        }
        if let Command::Arith { checkpoints } = &cli.command {
            if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[1] <= w[0]) || checkpoints[0] < 2 {
                return Err(CliError::usage(
                    "--checkpoints must be strictly increasing and at least 2",
                ));
            }
        }
        let ctx = PrecisionCtx::new(o.precision_bits).map_err(|e| CliError::usage(e.to_string()))?;
        Ok(RunConfig {
            command: cli.command,
            ns,
            a,
            sigma: o.sigma,
            ctx,
            radius: o.radius,
            nodes: o.nodes,
            zeros_file: o.zeros_file,
            zeros_digits: o.zeros_digits,
            max_zeros: o.max_zeros,
            format: o.format,
            output: o.output,
        })
    }

    fn n_max(&self) -> usize {
        self.ns.iter().copied().max().unwrap_or(0)
    }

    fn nodes_for(&self, max_order: usize) -> usize {
        self.nodes.unwrap_or_else(|| default_nodes(max_order))
    }

    fn digits(&self) -> usize {
        (self.ctx.bits() / 4) as usize
    }

    fn load(&self) -> Result<(ZeroTable, usize), CliError> {
        let zeros = load_zeros(&self.zeros_file, self.zeros_digits)?;
        let m = self.max_zeros.unwrap_or(zeros.len());
        if m > zeros.len() {
            return Err(CliError::usage(format!(
                "--max-zeros {m} exceeds the {} ordinates in {}",
                zeros.len(),
                self.zeros_file.display()
            )));
        }
        Ok((zeros, m))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub precision_bits: u32,
    pub radius: Option<f64>,
    pub nodes: Option<usize>,
    pub a_bound_warning: bool,
}

/// Rows of JSON values rendered as CSV or JSON lines.
#[derive(Clone, Debug)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
    pub meta: Meta,
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Table {
    fn new(header: Vec<&'static str>, meta: Meta) -> Self {
        Table {
            header,
            rows: Vec::new(),
            meta,
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.header.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(csv_cell).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Format::Json => {
                let meta = serde_json::to_value(&self.meta).expect("meta serializes");
                for row in &self.rows {
                    let mut obj = Map::new();
                    for (k, v) in self.header.iter().zip(row) {
                        obj.insert((*k).to_string(), v.clone());
                    }
                    obj.insert("meta".into(), meta.clone());
                    out.push_str(&Value::Object(obj).to_string());
                    out.push('\n');
                }
            }
        }
        out
    }
}

const BASE_HEADER: [&str; 9] = [
    "kind",
    "n",
    "a",
    "sigma",
    "zeros_used",
    "T",
    "value",
    "error_bound",
    "verdict",
];

fn header_with(extra: &[&'static str]) -> Vec<&'static str> {
    BASE_HEADER.iter().chain(extra).copied().collect()
}

fn num(x: &Float, digits: usize) -> Value {
    Value::String(format!("{:.*}", digits, x))
}

fn base_row(r: &CriterionResult, digits: usize) -> Vec<Value> {
    vec![
        r.kind.as_str().into(),
        r.params.n.into(),
        r.params.a_string().into(),
        r.params.sigma.into(),
        r.zeros_used.into(),
        r.t.map_or(Value::Null, Value::from),
        num(&r.value, digits),
        num(&r.error_bound, digits),
        r.verdict.as_str().into(),
    ]
}

/// Reads `re im mult` lines; `#` starts a comment line.
pub fn read_multiset(path: &Path, prec: u32) -> Result<Multiset, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut ms = Multiset::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            msg,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(format!("expected `re im mult`, got {line:?}")));
        }
        let parse_real = |s: &str| {
            Float::parse(s)
                .map(|v| Float::with_val(prec, v))
                .map_err(|e| parse_err(format!("{s:?}: {e}")))
        };
        let re = parse_real(fields[0])?;
        let im = parse_real(fields[1])?;
        let mult: u32 = fields[2]
            .parse()
            .map_err(|_| parse_err(format!("multiplicity {:?} is not a nonnegative integer", fields[2])))?;
        ms.push(Complex::with_val(prec, (re, im)), mult)
            .map_err(|e| parse_err(e.to_string()))?;
    }
    Ok(ms)
}

/// Computes the table for a validated configuration.
pub fn execute(cfg: &RunConfig) -> Result<Table, CliError> {
    let ctx = &cfg.ctx;
    let digits = cfg.digits();
    let meta = |radius: Option<f64>, nodes: Option<usize>| Meta {
        precision_bits: ctx.bits(),
        radius,
        nodes,
        a_bound_warning: a_in_warning_zone(&cfg.a),
    };
    let n_max = cfg.n_max();
    let table = match &cfg.command {
        Command::Coeffs => {
            let mut t = Table::new(vec!["n", "k", "A_kn", "F_k"], meta(None, None));
            for &n in &cfg.ns {
                let c = CoeffTable::build(n, &cfg.a)?;
                for (k, a) in c.a_coeffs().iter().enumerate() {
                    let f = c.f_coeffs().get(k).map_or(Value::Null, |f| format_rational(f).into());
                    t.rows.push(vec![n.into(), k.into(), format_rational(a).into(), f]);
                }
            }
            t
        }
        Command::Sum => {
            let (zeros, m) = cfg.load()?;
            let mut t = Table::new(header_with(&[]), meta(None, None));
            for &n in &cfg.ns {
                let r = modified_sum(&CriterionParams::new(n, cfg.a.clone()), &zeros, m, ctx)?;
                t.rows.push(base_row(&r, digits));
            }
            t
        }
        Command::Voros => {
            if cfg.a != 2 {
                return Err(CliError::usage("voros sums are defined at a = 2 only"));
            }
            let (zeros, m) = cfg.load()?;
            let mut t = Table::new(header_with(&[]), meta(None, None));
            for &n in &cfg.ns {
                t.rows.push(base_row(&voros_sum(n, &zeros, m, ctx)?, digits));
            }
            t
        }
        Command::Deriv => {
            let nodes = cfg.nodes_for(2 * n_max);
            let derivs = log_xi_even_derivs(2 * n_max, cfg.radius, nodes, ctx)?;
            let mut t = Table::new(header_with(&[]), meta(Some(cfg.radius), Some(nodes)));
            for &n in &cfg.ns {
                let r = derivative_criterion(&CriterionParams::new(n, cfg.a.clone()), &derivs)?;
                t.rows.push(base_row(&r, digits));
            }
            t
        }
        Command::Verify => {
            let (zeros, m) = cfg.load()?;
            let nodes = cfg.nodes_for(2 * n_max);
            let derivs = log_xi_even_derivs(2 * n_max, cfg.radius, nodes, ctx)?;
            let reports = cfg
                .ns
                .iter()
                .map(|&n| identity_ratio(n, &cfg.a, &zeros, m, &derivs, ctx))
                .collect::<Result<Vec<_>, _>>()?;
            let fit = fit_normalization_law(&reports);
            let law: Value = fit.law.map_or("NONE".into(), |l| l.as_str().into());
            let mut t = Table::new(
                header_with(&["derivative", "derivative_error_bound", "ratio", "law"]),
                meta(Some(cfg.radius), Some(nodes)),
            );
            for r in &reports {
                let mut row = base_row(&r.modified, digits);
                row.push(num(&r.derivative.value, digits));
                row.push(num(&r.derivative.error_bound, digits));
                row.push(num(&r.ratio, digits));
                row.push(law.clone());
                t.rows.push(row);
            }
            t
        }
        Command::Lambda => {
            let (zeros, m) = cfg.load()?;
            let nodes = cfg.nodes_for(n_max);
            let center = Float::with_val(ctx.working(), 1);
            let derivs = log_xi_derivs(&center, n_max, cfg.radius, nodes, ctx)?;
            let mut t = Table::new(
                header_with(&["method", "consistent"]),
                meta(Some(cfg.radius), Some(nodes)),
            );
            for &n in &cfg.ns {
                let rep = li_lambda(n, &derivs, &zeros, m, ctx)?;
                for r in [&rep.contour, &rep.zero_sum] {
                    let mut row = base_row(r, digits);
                    row.push(r.method.as_str().into());
                    row.push(rep.consistent.into());
                    t.rows.push(row);
                }
            }
            t
        }
        Command::Genli => {
            let (zeros, m) = cfg.load()?;
            let derivs = gen_li_derivative(n_max, &cfg.a, ctx)?;
            let mut t = Table::new(
                header_with(&["method", "form", "consistent"]),
                meta(Some(derivs.radius()), Some(derivs.nodes())),
            );
            for &n in &cfg.ns {
                let rep = gen_li_sum(n, &cfg.a, &derivs, &zeros, m, ctx)?;
                let forms = [
                    (&rep.printed, "PRINTED", rep.consistent),
                    (&rep.derivative, "DERIVATIVE", true),
                    (&rep.expanded, "EXPANDED", rep.expanded_consistent),
                ];
                for (r, form, ok) in forms {
                    let mut row = base_row(r, digits);
                    row.push(r.method.as_str().into());
                    row.push(form.into());
                    row.push(ok.into());
                    t.rows.push(row);
                }
            }
            t
        }
        Command::Multiset { file } => {
            let ms = read_multiset(file, ctx.working())?;
            let mut t = Table::new(header_with(&["imag"]), meta(None, None));
            for &n in &cfg.ns {
                let r = multiset_sum(&ms, n, &cfg.a, cfg.sigma, ctx)?;
                let mut row = base_row(&r, digits);
                row.push(num(&r.imag, digits));
                t.rows.push(row);
            }
            t
        }
        Command::Arith { checkpoints } => {
            let a = cfg.a.to_f64();
            let limit = *checkpoints.last().expect("validated non-empty");
            let sieve = sieve_mangoldt(limit)?;
            let report = if a == 0.5 {
                halfline_probe(checkpoints, &sieve, ctx)?
            } else {
                chebyshev_report(a, checkpoints, &sieve, ctx)?
            };
            let mut t = Table::new(
                vec!["a", "N", "partial", "reference", "abs_error", "exploratory"],
                meta(None, None),
            );
            for c in &report.checkpoints {
                t.rows.push(vec![
                    format_rational(&cfg.a).into(),
                    c.n.into(),
                    num(&c.partial, digits),
                    num(&c.reference, digits),
                    num(&c.abs_error, digits),
                    report.labeled_exploratory.into(),
                ]);
            }
            t
        }
        Command::Pustylnikov => {
            let nodes = cfg.nodes_for(2 * n_max);
            let derivs = xi_even_derivs(2 * n_max, cfg.radius, nodes, ctx)?;
            let mut t = Table::new(
                vec!["order", "value", "error_bound", "verdict"],
                meta(Some(cfg.radius), Some(nodes)),
            );
            for order in (2..=2 * n_max).step_by(2) {
                let v = &derivs.orders()[order];
                let e = &derivs.error_estimate()[order];
                t.rows.push(vec![
                    order.into(),
                    num(v, digits),
                    num(e, digits),
                    Verdict::classify(v, e).as_str().into(),
                ]);
            }
            t
        }
    };
    Ok(table)
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    let io_err = |path: PathBuf, source| CliError::from(Error::Io { path, source });
    match &cfg.output {
        Some(path) => fs::write(path, text).map_err(|e| io_err(path.clone(), e)),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_err(PathBuf::from("<stdout>"), e)),
    }
}

/// Parses `argv`, runs the subcommand, and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| {
        let table = execute(&cfg)?;
        emit(&cfg, &table.render(cfg.format))
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
