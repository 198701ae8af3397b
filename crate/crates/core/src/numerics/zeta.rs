//! Riemann zeta by Borwein's accelerated alternating series.
//!
//! `zeta(s) = -1 / (d_n (1 - 2^(1-s))) * sum_{k<n} (-1)^k (d_k - d_n) / (k+1)^s`
//! with `d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)`. The truncation
//! error is of order `(3 + sqrt 8)^-n * e^(pi |t| / 2)`, so the term count grows
//! with `|Im s|` while intermediate precision grows with `-Re s`.

use rug::ops::Pow;
use rug::{Complex, Float, Integer};

use super::{ensure_finite, PrecisionCtx};
use crate::error::{Error, Result};

/// `d_0 .. d_n` as exact integers.
fn borwein_weights(n: usize) -> Vec<Integer> {
    let nn = n as u64;
    let mut weights = Vec::with_capacity(n + 1);
    let mut term = Integer::from(1);
    let mut acc = Integer::new();
    for i in 0..=nn {
        acc += &term;
        weights.push(acc.clone());
        if i < nn {
            term *= 2 * (nn + i) * (nn - i);
            term.div_exact_mut(&Integer::from((2 * i + 1) * (i + 1)));
        }
    }
    weights
}

/// Number of series terms and the intermediate precision needed to reach
/// `target` bits at `s = sigma + i t`.
fn plan(target: u32, sigma: f64, t: f64, denom_loss: f64) -> (usize, u32) {
    let ln_rate = (3.0 + 8f64.sqrt()).ln();
    let mut loss = std::f64::consts::PI * t.abs() / 2.0 + (1.0 + 2.0 * t.abs()).ln() + 3f64.ln();
    if sigma < 0.5 {
        // 1/|Gamma(s)| in the error bound
        loss += (0.5 - sigma) * (2.0 + sigma.abs() + t.abs()).ln();
    }
    let needed = target as f64 * std::f64::consts::LN_2 + loss + denom_loss * std::f64::consts::LN_2;
    let mut n = (needed / ln_rate).ceil() as usize + 4;
    // (k+1)^-s grows like n^-sigma for sigma < 0, amplifying the weight error
    for _ in 0..3 {
        let amp = (-sigma).max(0.0) * (n as f64).ln();
        n = ((needed + amp) / ln_rate).ceil() as usize + 4;
    }
    let growth = (-sigma).max(0.0) * (n as f64).log2();
    let prec = target as f64 + growth + (n as f64).log2() + denom_loss + 16.0;
    (n, prec.ceil() as u32)
}

/// `m^-s` for `m = 1..=n`, built multiplicatively from prime powers.
fn inverse_powers(s: &Complex, n: usize, prec: u32) -> Vec<Complex> {
    let mut spf = vec![0usize; n + 1];
    for p in 2..=n {
        if spf[p] == 0 {
            let mut m = p;
            while m <= n {
                if spf[m] == 0 {
                    spf[m] = p;
                }
                m += p;
            }
        }
    }
    let neg_s = Complex::with_val(prec, -s);
    let mut out: Vec<Complex> = Vec::with_capacity(n + 1);
    out.push(Complex::with_val(prec, 0));
    out.push(Complex::with_val(prec, 1));
    for m in 2..=n {
        let p = spf[m];
        let v = if p == m {
            let ln_m = Float::with_val(prec, m as u64).ln();
            Complex::with_val(prec, &neg_s * ln_m).exp()
        } else {
            Complex::with_val(prec, &out[p] * &out[m / p])
        };
        out.push(v);
    }
    out
}

/// `zeta(s)` with relative error about `2^-target`; small values (near a zero)
/// are recomputed with the bits their magnitude costs, up to twice `target`.
pub(crate) fn zeta_at(s: &Complex, target: u32) -> Result<Complex> {
    let z = zeta_abs(s, target + 8)?;
    let mag = z.real().to_f64().hypot(z.imag().to_f64());
    if mag > 0.0 && mag < 0.5 {
        let extra = ((-mag.log2()).ceil() as u32 + 8).min(target);
        let z = zeta_abs(s, target + extra)?;
        return Ok(Complex::with_val(target, z));
    }
    Ok(Complex::with_val(target, z))
}

/// `zeta(s)` with absolute error about `2^-target`.
fn zeta_abs(s: &Complex, target: u32) -> Result<Complex> {
    ensure_finite(s, "zeta argument")?;
    if *s.real() == 1 && s.imag().is_zero() {
        return Err(Error::Pole("zeta at s = 1".into()));
    }
    let sigma = s.real().to_f64();
    let t = s.imag().to_f64();

    // 1 - 2^(1-s) vanishes at s = 1; bits lost to it are recovered up front.
    let probe = Complex::with_val(
        64,
        1 - Complex::with_val(64, 2).pow(Complex::with_val(64, 1 - s.clone())),
    );
    let probe_abs = probe.abs().real().to_f64();
    let denom_loss = if probe_abs > 0.0 {
        (-probe_abs.log2()).max(0.0)
    } else {
        64.0
    };

    let (n, prec) = plan(target, sigma, t, denom_loss);
    let s = Complex::with_val(prec, s);
    let weights = borwein_weights(n);
    let dn = Float::with_val(prec, &weights[n]);
    let powers = inverse_powers(&s, n, prec);

    let mut sum = Complex::with_val(prec, 0);
    for k in 0..n {
        let w = Float::with_val(prec, Integer::from(&weights[k] - &weights[n])) / &dn;
        let term = Complex::with_val(prec, &powers[k + 1] * &w);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let one_minus_s = Complex::with_val(prec, 1 - s.clone());
    let factor: Complex = 1 - Complex::with_val(prec, 2).pow(&one_minus_s);
    if factor.real().is_zero() && factor.imag().is_zero() {
        return Err(Error::numerical("1 - 2^(1-s) vanished"));
    }
    let z = Complex::with_val(target, -sum / factor);
    ensure_finite(&z, "zeta")?;
    Ok(z)
}

/// `zeta(z)` to `ctx.bits()` precision.
pub fn zeta(z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let v = zeta_at(z, ctx.working())?;
    Ok(Complex::with_val(ctx.bits(), v))
}
