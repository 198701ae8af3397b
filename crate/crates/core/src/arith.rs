//! Von Mangoldt partial sums and their limits `-zeta'(a)/zeta(a)` and
//! `ln zeta(a)`.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{zeta, zeta_derivs, PrecisionCtx};

/// Prime-power structure of `2..=limit`: `base[m]` is `p` when `m = p^k`,
/// otherwise 0. Logarithms are left to the consumer's precision.
#[derive(Clone, Debug)]
pub struct MangoldtTable {
    limit: u32,
    base: Vec<u32>,
}

/// Linear sieve for the smallest prime factor, then `m` is a prime power
/// exactly when `m / spf(m)` is 1 or a power of the same prime.
pub fn sieve_mangoldt(limit: u32) -> Result<MangoldtTable> {
    if limit < 2 {
        return Err(Error::domain(format!("sieve limit must be at least 2, got {limit}")));
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    for m in 2..=n {
        if spf[m] == 0 {
            spf[m] = m as u32;
            primes.push(m as u32);
        }
        let sm = spf[m];
        for &p in &primes {
            let q = m * p as usize;
            if p > sm || q > n {
                break;
            }
            spf[q] = p;
        }
    }
    let mut base = vec![0u32; n + 1];
    for m in 2..=n {
        let p = spf[m];
        let q = m / p as usize;
        if q == 1 || base[q] == p {
            base[m] = p;
        }
    }
    Ok(MangoldtTable { limit, base })
}

impl MangoldtTable {
    pub fn limit(&self) -> u32 {
        self.limit
    }

    /// `(p, k)` with `m = p^k`, or `None` when `Lambda(m) = 0`.
    pub fn get(&self, m: u32) -> Option<(u32, u32)> {
        let p = *self.base.get(m as usize)?;
        if p == 0 {
            return None;
        }
        let (mut r, mut k) = (m, 0);
        while r > 1 {
            r /= p;
            k += 1;
        }
        Some((p, k))
    }

    /// `Lambda(m)` at `prec` bits.
    pub fn lambda(&self, m: u32, prec: u32) -> Float {
        match self.get(m) {
            Some((p, _)) => Float::with_val(prec, p).ln(),
            None => Float::new(prec),
        }
    }

    /// Prime powers `p^k <= upto` in increasing order, as `(m, p, k)`.
    fn prime_powers(&self, upto: u32) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (2..=upto.min(self.limit)).filter_map(move |m| self.get(m).map(|(p, k)| (m, p, k)))
    }
}

/// `m^-a` for a prime power `m = p^k`, given `ln p`.
fn inverse_power(m: u32, k: u32, ln_p: &Float, a: f64, prec: u32) -> Float {
    if a.fract() == 0.0 && a > 0.0 && a <= 64.0 {
        Float::with_val(prec, m).pow(a as u32).recip()
    } else {
        let e = Float::with_val(prec, ln_p * (-(k as f64) * a));
        e.exp()
    }
}

fn check_a(a: f64) -> Result<()> {
    if !a.is_finite() {
        return Err(Error::domain("a must be finite"));
    }
    if a == 1.0 {
        return Err(Error::domain("a = 1 makes the compensator N^(1-a)/(1-a) degenerate"));
    }
    Ok(())
}

fn check_limit(n: u32, table: &MangoldtTable) -> Result<()> {
    if n < 1 || n > table.limit {
        return Err(Error::domain(format!(
            "N = {n} outside the sieve range 1..={}",
            table.limit
        )));
    }
    Ok(())
}

/// `N^(1-a) / (1-a)`.
fn compensator(n: u32, a: f64, prec: u32) -> Float {
    let e = 1.0 - a;
    let ln_n = Float::with_val(prec, n).ln();
    Float::with_val(prec, ln_n * e).exp() / e
}

/// `sum_{m<=N} Lambda(m)/m^a - N^(1-a)/(1-a)` at each checkpoint, in one pass.
fn chebyshev_series(a: f64, checkpoints: &[u32], table: &MangoldtTable, prec: u32) -> Result<Vec<Float>> {
    check_a(a)?;
    for w in checkpoints.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::domain("checkpoints must be strictly increasing"));
        }
    }
    for n in checkpoints {
        check_limit(*n, table)?;
    }
    let last = *checkpoints.last().unwrap_or(&1);
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    let mut sum = Float::with_val(prec, 0);
    let mut ln_p_cache: Option<(u32, Float)> = None;
    let flush =
        |upto: u32, sum: &Float, out: &mut Vec<Float>, next: &mut std::iter::Peekable<std::slice::Iter<u32>>| {
            while let Some(&&c) = next.peek() {
                if c > upto {
                    break;
                }
                out.push(Float::with_val(prec, sum - compensator(c, a, prec)));
                next.next();
            }
        };
    for (m, p, k) in table.prime_powers(last) {
        flush(m - 1, &sum, &mut out, &mut next);
        let ln_p = match &ln_p_cache {
            Some((q, l)) if *q == p => l.clone(),
            _ => Float::with_val(prec, p).ln(),
        };
        if k == 1 {
            ln_p_cache = Some((p, ln_p.clone()));
        }
        sum += inverse_power(m, k, &ln_p, a, prec) * &ln_p;
    }
    flush(last, &sum, &mut out, &mut next);
    Ok(out)
}

/// `sum_{m<=N} Lambda(m)/m^a - N^(1-a)/(1-a)`.
pub fn chebyshev_partial(a: f64, n: u32, table: &MangoldtTable, ctx: &PrecisionCtx) -> Result<Float> {
    if a <= 0.5 {
        return Err(Error::domain(format!("chebyshev_partial needs a > 1/2, got {a}")));
    }
    let v = chebyshev_series(a, &[n], table, ctx.working())?;
    Ok(Float::with_val(ctx.bits(), &v[0]))
}

/// `sum_{m<=N} Lambda(m) / (ln m * m^a) = sum_{p^k<=N} 1/(k p^(ka))`.
pub fn log_zeta_partial(a: f64, n: u32, table: &MangoldtTable, ctx: &PrecisionCtx) -> Result<Float> {
    if a <= 1.0 {
        return Err(Error::domain(format!("the series for ln zeta needs a > 1, got {a}")));
    }
    check_limit(n, table)?;
    let prec = ctx.working();
    let mut sum = Float::with_val(prec, 0);
    for (m, p, k) in table.prime_powers(n) {
        let ln_p = Float::with_val(prec, p).ln();
        sum += inverse_power(m, k, &ln_p, a, prec) / k;
    }
    Ok(Float::with_val(ctx.bits(), sum))
}

/// First term left out of [`log_zeta_partial`] at `N`: `1/(k p^(ka))` for the
/// smallest prime power above `N`.
pub fn log_zeta_first_omitted(a: f64, n: u32, table: &MangoldtTable, ctx: &PrecisionCtx) -> Result<Float> {
    let prec = ctx.working();
    for m in (n + 1)..=table.limit {
        if let Some((p, k)) = table.get(m) {
            let ln_p = Float::with_val(prec, p).ln();
            return Ok(Float::with_val(ctx.bits(), inverse_power(m, k, &ln_p, a, prec) / k));
        }
    }
    Err(Error::domain(format!(
        "no prime power in ({n}, {}]; extend the sieve",
        table.limit
    )))
}

/// `-zeta'(a)/zeta(a)` from contour derivatives of zeta about `a`.
pub fn neg_log_derivative_zeta(a: f64, ctx: &PrecisionCtx) -> Result<Float> {
    check_a(a)?;
    let radius = ((a - 1.0).abs() / 2.0).min(1.0);
    let center = Float::with_val(ctx.working(), a);
    let d = zeta_derivs(&center, 1, radius, 64, ctx)?;
    Ok(Float::with_val(
        ctx.bits(),
        -(Float::with_val(ctx.working(), &d.orders()[1] / &d.orders()[0])),
    ))
}

/// `ln zeta(a)` for real `a > 1`.
pub fn ln_zeta(a: f64, ctx: &PrecisionCtx) -> Result<Float> {
    if a <= 1.0 {
        return Err(Error::domain("ln zeta is taken for a > 1 only"));
    }
    let z = zeta(&ctx.complex(a, 0.0), ctx)?;
    Ok(Float::with_val(ctx.bits(), z.real().ln_ref()))
}

#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub n: u32,
    pub partial: Float,
    pub reference: Float,
    pub abs_error: Float,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub a: f64,
    pub checkpoints: Vec<Checkpoint>,
    /// Set when the limit is not known to hold; no verdict is attached.
    pub labeled_exploratory: bool,
}

impl ConvergenceReport {
    /// Largest error per decade `[10^d, 10^(d+1))` of `N`, as `(d, error)`.
    pub fn decade_envelope(&self) -> Vec<(u32, Float)> {
        let mut out: Vec<(u32, Float)> = Vec::new();
        for c in &self.checkpoints {
            let d = c.n.ilog10();
            match out.last_mut() {
                Some((last, e)) if *last == d => {
                    if c.abs_error > *e {
                        *e = c.abs_error.clone();
                    }
                }
                _ => out.push((d, c.abs_error.clone())),
            }
        }
        out
    }

    /// The decade envelope never grows.
    pub fn envelope_non_increasing(&self) -> bool {
        self.decade_envelope().windows(2).all(|w| w[1].1 <= w[0].1)
    }
}

fn report(
    a: f64,
    checkpoints: &[u32],
    table: &MangoldtTable,
    ctx: &PrecisionCtx,
    exploratory: bool,
) -> Result<ConvergenceReport> {
    let reference = neg_log_derivative_zeta(a, ctx)?;
    let partials = chebyshev_series(a, checkpoints, table, ctx.working())?;
    let checkpoints = checkpoints
        .iter()
        .zip(partials)
        .map(|(&n, p)| {
            let abs_error = Float::with_val(ctx.bits(), &p - &reference).abs();
            Checkpoint {
                n,
                partial: Float::with_val(ctx.bits(), p),
                reference: reference.clone(),
                abs_error,
            }
        })
        .collect();
    Ok(ConvergenceReport {
        a,
        checkpoints,
        labeled_exploratory: exploratory,
    })
}

/// Partial sums against `-zeta'(a)/zeta(a)` for `a > 1/2`, `a != 1`.
pub fn chebyshev_report(
    a: f64,
    checkpoints: &[u32],
    table: &MangoldtTable,
    ctx: &PrecisionCtx,
) -> Result<ConvergenceReport> {
    if a <= 0.5 {
        return Err(Error::domain(format!(
            "a must exceed 1/2, got {a}; use halfline_probe for a = 1/2"
        )));
    }
    report(a, checkpoints, table, ctx, false)
}

/// The same partial sums at `a = 1/2`, where convergence is not known.
pub fn halfline_probe(checkpoints: &[u32], table: &MangoldtTable, ctx: &PrecisionCtx) -> Result<ConvergenceReport> {
    report(0.5, checkpoints, table, ctx, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(128).unwrap()
    }

    #[test]
    fn small_table_by_definition() {
        let t = sieve_mangoldt(10).unwrap();
        let powers: Vec<u32> = (1..=10).filter(|m| t.get(*m).is_some()).collect();
        assert_eq!(powers, vec![2, 3, 4, 5, 7, 8, 9]);
        assert_eq!(t.get(8), Some((2, 3)));
        assert_eq!(t.get(9), Some((3, 2)));
        assert_eq!(t.get(6), None);
        assert!(sieve_mangoldt(1).is_err());
    }

    #[test]
    fn psi_100_by_trial_division() {
        let t = sieve_mangoldt(100).unwrap();
        let psi: f64 = (2..=100).map(|m| t.lambda(m, 64).to_f64()).sum();
        // independent: ln of lcm(1..100) = sum over primes p <= 100 of floor(log_p 100) ln p
        let mut oracle = 0.0;
        for p in (2u32..=100).filter(|p| (2..*p).all(|d| p % d != 0)) {
            let mut q = p;
            while q <= 100 {
                oracle += (p as f64).ln();
                q *= p;
            }
        }
        assert!((psi - oracle).abs() < 1e-9);
        assert!((psi - 94.045).abs() < 1e-3);
    }

    #[test]
    fn sieve_agrees_with_trial_division() {
        let t = sieve_mangoldt(5000).unwrap();
        for m in 2u32..=5000 {
            let p = (2..=m).find(|d| m % d == 0).unwrap();
            let mut r = m;
            while r % p == 0 {
                r /= p;
            }
            assert_eq!(t.get(m).is_some(), r == 1, "m = {m}");
        }
    }

    #[test]
    fn two_term_partial() {
        let t = sieve_mangoldt(10).unwrap();
        let a = 2.0;
        let v = chebyshev_partial(a, 2, &t, &ctx()).unwrap().to_f64();
        let want = 2f64.ln() / 4.0 - 2f64.powf(1.0 - a) / (1.0 - a);
        assert!((v - want).abs() < 1e-15);
        assert!(chebyshev_partial(1.0, 2, &t, &ctx()).is_err());
    }

    #[test]
    fn references() {
        let c = ctx();
        // -zeta'(2)/zeta(2) = -(ln 2pi + gamma - 12 ln A) with Glaisher's A
        let v = neg_log_derivative_zeta(2.0, &c).unwrap().to_f64();
        assert!((v - 0.569_960_993_094_532_5).abs() < 1e-14, "{v}");
        let h = neg_log_derivative_zeta(0.5, &c).unwrap().to_f64();
        // zeta'(1/2) = -3.92264613920915172747...; zeta(1/2) from MPFR
        let z_half = Float::with_val(128, Float::with_val(128, 0.5).zeta_ref()).to_f64();
        assert!((h - 3.922_646_139_209_151_7 / z_half).abs() < 1e-12, "{h}");
        let l = ln_zeta(2.0, &c).unwrap();
        let want = Float::with_val(128, Float::with_val(128, 2).zeta().ln_ref());
        assert!(Float::with_val(128, &l - &want).abs() < 1e-30);
    }

    #[test]
    fn probe_is_exploratory() {
        let t = sieve_mangoldt(1000).unwrap();
        let r = halfline_probe(&[10, 100, 1000], &t, &ctx()).unwrap();
        assert!(r.labeled_exploratory);
        assert_eq!(r.checkpoints.len(), 3);
        assert!(halfline_probe(&[100, 10], &t, &ctx()).is_err());
    }
}
