//! Exact rational algebra for the coefficient tables.
//!
//! Everything here is computed with unbounded integers, so floating error only
//! enters once a table is evaluated at a point. `A[k]` holds
//! `a^(2k-2n) * sum_{l=k..n} C(2n,2l) C(l,k)` and `F[k] = 4 (n-k) A[k]` are the
//! coefficients of the even polynomial `F_2n(z) = sum_k F[k] (z-1/2)^(2k)`.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// Smallest admissible `a` (exclusive) for zero sums of the zeta function.
pub fn min_a() -> Rational {
    Rational::from((1, 14))
}

/// The bound `a > 1/4` stated alongside the sum criterion; values in
/// `(1/14, 1/4]` are accepted but flagged.
pub fn cautionary_a() -> Rational {
    Rational::from((1, 4))
}

/// Parses `"p/q"`, an integer, or a decimal such as `"0.125"` or `"2.5e-3"`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let invalid = |msg: &str| Error::InvalidValue {
        value: s.to_string(),
        msg: msg.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(invalid("empty"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = Integer::from_str(p.trim()).map_err(|_| invalid("bad numerator"))?;
        let q = Integer::from_str(q.trim()).map_err(|_| invalid("bad denominator"))?;
        if q == 0 {
            return Err(invalid("zero denominator"));
        }
        return Ok(Rational::from((p, q)));
    }

    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e = i32::from_str(&t[pos + 1..]).map_err(|_| invalid("bad exponent"))?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid("no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(invalid("not a decimal number"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num = Integer::from_str(if all_digits.is_empty() { "0" } else { &all_digits })
        .map_err(|_| invalid("not a decimal number"))?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = Integer::from(10);
    let value = if scale >= 0 {
        Rational::from(num * ten.pow(scale as u32))
    } else {
        Rational::from((num, ten.pow(scale.unsigned_abs())))
    };
    Ok(value)
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Pascal's triangle up to a fixed row, built by the additive recurrence.
#[derive(Clone, Debug)]
pub struct Binomials {
    rows: Vec<Vec<Integer>>,
}

impl Binomials {
    pub fn up_to(max_row: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(max_row + 1);
        rows.push(vec![Integer::from(1)]);
        for l in 1..=max_row {
            let prev = &rows[l - 1];
            let mut row = Vec::with_capacity(l + 1);
            row.push(Integer::from(1));
            for k in 1..l {
                row.push(Integer::from(&prev[k - 1] + &prev[k]));
            }
            row.push(Integer::from(1));
            rows.push(row);
        }
        Binomials { rows }
    }

    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(l, k)`, zero for `k > l`.
    ///
    /// Panics if `l` exceeds the row the table was built for.
    pub fn get(&self, l: usize, k: usize) -> &Integer {
        static ZERO: Integer = Integer::ZERO;
        let row = &self.rows[l];
        row.get(k).unwrap_or(&ZERO)
    }
}

/// Binomial coefficient `C(l, k) = l! / (k! (l-k)!)`, zero when `k > l`.
pub fn binom(l: usize, k: usize) -> Integer {
    if k > l {
        return Integer::new();
    }
    Binomials::up_to(l).get(l, k).clone()
}

fn check_a(a: &Rational) -> Result<()> {
    if *a == 0 {
        return Err(Error::domain("a must be nonzero"));
    }
    Ok(())
}

/// `a^(2k-2n) = (1/a^2)^(n-k)` for `k <= n`.
fn a_scale(n: usize, k: usize, a: &Rational) -> Rational {
    let inv_sq = Rational::from(a * a).recip();
    let mut out = Rational::from(1);
    for _ in k..n {
        out *= &inv_sq;
    }
    out
}

fn inner_sum(n: usize, k: usize, binoms: &Binomials) -> Integer {
    let mut s = Integer::new();
    for l in k..=n {
        s += Integer::from(binoms.get(2 * n, 2 * l) * binoms.get(l, k));
    }
    s
}

/// `A_{k,n} = a^(2k-2n) * sum_{l=k..n} C(2n, 2l) C(l, k)`.
pub fn coeff_a(n: usize, k: usize, a: &Rational) -> Result<Rational> {
    check_a(a)?;
    if n == 0 || k > n {
        return Err(Error::domain(format!("need 1 <= n and k <= n, got n={n}, k={k}")));
    }
    let binoms = Binomials::up_to(2 * n);
    Ok(a_scale(n, k, a) * inner_sum(n, k, &binoms))
}

/// The same coefficient through the shifted index `m = l - k`:
/// `a^(2k-2n) * sum_{m=0..n-k} C(2n, 2m+2k) C(m+k, k)`.
pub fn coeff_a_shifted(n: usize, k: usize, a: &Rational) -> Result<Rational> {
    check_a(a)?;
    if n == 0 || k > n {
        return Err(Error::domain(format!("need 1 <= n and k <= n, got n={n}, k={k}")));
    }
    let binoms = Binomials::up_to(2 * n);
    let mut s = Integer::new();
    for m in 0..=(n - k) {
        s += Integer::from(binoms.get(2 * n, 2 * m + 2 * k) * binoms.get(m + k, k));
    }
    Ok(a_scale(n, k, a) * s)
}

/// Exact coefficients of `f_2n` and `F_2n` for one `(n, a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    n: usize,
    a: Rational,
    a_coeffs: Vec<Rational>,
    f_coeffs: Vec<Rational>,
}

impl CoeffTable {
    /// Builds the table for zeta-zero sums, enforcing `a > 1/14`.
    pub fn build(n: usize, a: &Rational) -> Result<Self> {
        if *a <= min_a() {
            return Err(Error::domain(format!(
                "a = {} must exceed {}",
                format_rational(a),
                format_rational(&min_a())
            )));
        }
        if a_in_warning_zone(a) {
            log::warn!(
                "a = {} lies in (1/14, 1/4]: accepted, but the sum criterion is stated for a > 1/4",
                format_rational(a)
            );
        }
        Self::build_unrestricted(n, a)
    }

    /// Builds the table for any `a > 0`; used for general multisets where the
    /// zeta-specific lower bound does not apply.
    pub fn build_unrestricted(n: usize, a: &Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        if *a <= 0 {
            return Err(Error::domain(format!("a = {} must be positive", format_rational(a))));
        }
        let binoms = Binomials::up_to(2 * n);
        let inv_sq = Rational::from(a * a).recip();
        // A[k] for k = n down to 0, multiplying in one factor 1/a^2 per step.
        let mut a_coeffs = vec![Rational::new(); n + 1];
        let mut scale = Rational::from(1);
        for k in (0..=n).rev() {
            a_coeffs[k] = Rational::from(&scale * inner_sum(n, k, &binoms));
            scale *= &inv_sq;
        }
        let f_coeffs = (0..n)
            .map(|k| Rational::from(&a_coeffs[k] * (4 * (n - k) as u64)))
            .collect();
        Ok(CoeffTable {
            n,
            a: a.clone(),
            a_coeffs,
            f_coeffs,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// `A[k]` for `k = 0..=n`.
    pub fn a_coeffs(&self) -> &[Rational] {
        &self.a_coeffs
    }

    /// `F[k] = 4 (n-k) A[k]` for `k = 0..n`.
    pub fn f_coeffs(&self) -> &[Rational] {
        &self.f_coeffs
    }

    pub fn a_bound_warning(&self) -> bool {
        a_in_warning_zone(&self.a)
    }
}

pub fn a_in_warning_zone(a: &Rational) -> bool {
    *a > min_a() && *a <= cautionary_a()
}

/// `d^order/dz^order F_2n(z)` at `z = 1/2`: `F[k] (2k)!` for `order = 2k < 2n`,
/// zero for larger even orders.
pub fn f_deriv_at_half(table: &CoeffTable, order: usize) -> Result<Rational> {
    if order % 2 == 1 {
        return Err(Error::domain(format!(
            "odd derivative order {order}: F_2n is even about 1/2"
        )));
    }
    let k = order / 2;
    if k >= table.n {
        return Ok(Rational::new());
    }
    let fact = Integer::from(Integer::factorial(order as u32));
    Ok(Rational::from(&table.f_coeffs[k] * fact))
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n,k,A_kn,F_k")?;
        for k in 0..=self.n {
            let fk = self.f_coeffs.get(k).map(format_rational).unwrap_or_default();
            writeln!(f, "{},{},{},{}", self.n, k, format_rational(&self.a_coeffs[k]), fk)?;
        }
        Ok(())
    }
}
