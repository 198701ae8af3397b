//! Tables of zeta-zero ordinates and truncation tails of sums over them.

use std::fs;
use std::path::{Path, PathBuf};

use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Ascending ordinates `t_k > 14` of nontrivial zeros `1/2 + i t_k`.
#[derive(Clone, Debug)]
pub struct ZeroTable {
    ordinates: Vec<Float>,
    source_path: PathBuf,
    declared_digits: u32,
}

impl ZeroTable {
    /// Builds a table from already parsed ordinates, enforcing the same
    /// invariants as [`load_zeros`].
    pub fn from_ordinates(ordinates: Vec<Float>, source: impl Into<PathBuf>, declared_digits: u32) -> Result<Self> {
        let source_path = source.into();
        if ordinates.is_empty() {
            return Err(parse_err(&source_path, 0, "no ordinates"));
        }
        if ordinates[0] <= 14 {
            return Err(parse_err(
                &source_path,
                1,
                format!("first ordinate {} is not above 14", ordinates[0]),
            ));
        }
        for (i, w) in ordinates.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(parse_err(&source_path, i + 2, "ordinates are not strictly ascending"));
            }
        }
        Ok(ZeroTable {
            ordinates,
            source_path,
            declared_digits,
        })
    }

    pub fn ordinates(&self) -> &[Float] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn source_path(&self) -> &Path {
        &self.source_path
    }

    pub fn declared_digits(&self) -> u32 {
        self.declared_digits
    }

    /// Number of ordinates `<= t`.
    pub fn count_below(&self, t: f64) -> usize {
        self.ordinates.partition_point(|x| *x <= t)
    }
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Bits needed to hold `digits` significant decimals, with headroom.
fn storage_bits(digits: u32) -> u32 {
    ((digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32).max(64)
}

/// Reads one ordinate per line; blank lines and lines starting with `#` are
/// skipped. Line numbers in errors are 1-based file lines.
pub fn load_zeros(path: impl AsRef<Path>, declared_digits: u32) -> Result<ZeroTable> {
    let path = path.as_ref();
    if declared_digits == 0 {
        return Err(Error::domain("declared_digits must be positive"));
    }
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let prec = storage_bits(declared_digits);
    let mut ordinates: Vec<Float> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = Float::parse(line).map_err(|e| parse_err(path, line_no, format!("not a number: {e}")))?;
        let t = Float::with_val(prec, parsed);
        if !t.is_finite() {
            return Err(parse_err(path, line_no, "ordinate is not finite"));
        }
        match ordinates.last() {
            None if t <= 14 => {
                return Err(parse_err(
                    path,
                    line_no,
                    format!("first ordinate {line} is not above 14"),
                ));
            }
            Some(prev) if t <= *prev => {
                return Err(parse_err(
                    path,
                    line_no,
                    format!("ordinate {line} does not exceed its predecessor"),
                ));
            }
            _ => {}
        }
        ordinates.push(t);
    }
    if ordinates.is_empty() {
        return Err(parse_err(path, 0, "file contains no ordinates"));
    }
    Ok(ZeroTable {
        ordinates,
        source_path: path.to_path_buf(),
        declared_digits,
    })
}

/// Riemann-von Mangoldt main term `(T/2pi) ln(T/2pi) - T/2pi + 7/8`.
pub fn zero_count_estimate(t: f64) -> Result<f64> {
    let x = t / std::f64::consts::TAU;
    if x.is_nan() || x <= 1.0 {
        return Err(Error::domain(format!("zero count estimate needs T > 2 pi, got {t}")));
    }
    Ok(x * x.ln() - x + 0.875)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailEstimate {
    pub t: f64,
    pub bound: f64,
    pub model: String,
}

pub const TAIL_SAFETY: f64 = 2.0;

/// Bound on `|sum_{t_k > T} 2 f_2n(1/2 + i t_k)|` from the leading term
/// `2 A_{n-1,n} / t^2` integrated against the zero density `ln(t/2pi) / 2pi`.
pub fn tail_bound(n: usize, a: &Rational, t: f64, first_ordinate: f64) -> Result<TailEstimate> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if *a <= 0 {
        return Err(Error::domain("a must be positive"));
    }
    if t.is_nan() || t <= first_ordinate || t <= std::f64::consts::TAU {
        return Err(Error::domain(format!(
            "tail bound needs T above the first ordinate, got {t}"
        )));
    }
    let nn = n as f64;
    let a2 = Rational::from(a * a).to_f64();
    let a_prev = 2.0 * nn * nn / a2;
    let density = ((t / std::f64::consts::TAU).ln() + 1.0) / t;
    let bound = 2.0 * a_prev / std::f64::consts::PI * density * TAIL_SAFETY;
    Ok(TailEstimate {
        t,
        bound,
        model: format!("(2 A_(n-1,n) / pi) (ln(T/2pi) + 1) / T * {TAIL_SAFETY}, A_(n-1,n) = 2 n^2 / a^2"),
    })
}

/// Tail of `sum 2 Re[g(1/2 + i t_k)]` when the pair term decays like
/// `coeff / t^2`.
pub(crate) fn inverse_square_tail(coeff: f64, t: f64, model: String) -> TailEstimate {
    let density = ((t / std::f64::consts::TAU).ln() + 1.0) / t;
    TailEstimate {
        t,
        bound: coeff.abs() / std::f64::consts::TAU * density * TAIL_SAFETY,
        model,
    }
}
