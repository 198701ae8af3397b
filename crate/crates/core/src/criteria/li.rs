//! Li coefficients and their shifted generalisation, each by contour
//! derivatives of `ln xi` and by zero sums.

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use super::{within, CriterionParams, CriterionResult, Kind, Method};
use crate::error::{Error, Result};
use crate::exact::binom;
use crate::numerics::{default_nodes, log_xi_derivs, DerivSeries, FunctionTag, PrecisionCtx};
use crate::zeros::{inverse_square_tail, TailEstimate, ZeroTable};

pub const LI_RADIUS: f64 = 1.9;

/// `(1/(n-1)!) d^n/dz^n ((z - a)^(n-1) ln xi(z))` at `z = 1 - a` from a series
/// of `ln xi` derivatives taken there. With `u = 1 - 2a` the Leibniz rule gives
/// `sum_{m<n} C(n,m) u^(n-1-m) / (n-1-m)! * (ln xi)^(n-m)(1-a)`.
fn shifted_li_from_series(n: usize, a: &Rational, derivs: &DerivSeries) -> Result<(Float, Float)> {
    if derivs.function_tag() != FunctionTag::LogXi || derivs.max_order() < n {
        return Err(Error::domain(format!("need ln xi derivatives through order {n}")));
    }
    let prec = derivs.bits() + 32;
    let u: Rational = 1 - Rational::from(a * 2u32);
    let mut value = Float::with_val(prec, 0);
    let mut err = Float::with_val(prec, 0);
    for m in 0..n {
        let c = Rational::from(binom(n, m)) * u.clone().pow((n - 1 - m) as i32)
            / Integer::from(Integer::factorial((n - 1 - m) as u32));
        let cf = Float::with_val(prec, &c);
        value += Float::with_val(prec, &cf * &derivs.orders()[n - m]);
        err += Float::with_val(prec, cf.abs_ref()) * &derivs.error_estimate()[n - m];
    }
    Ok((
        Float::with_val(derivs.bits(), value),
        Float::with_val(derivs.bits(), err),
    ))
}

/// `ln xi` derivatives at `1 - a` through `max_order`, on a circle of
/// radius [`LI_RADIUS`].
pub fn gen_li_derivative(max_order: usize, a: &Rational, ctx: &PrecisionCtx) -> Result<DerivSeries> {
    let center = Float::with_val(ctx.working(), 1 - a.clone());
    log_xi_derivs(&center, max_order, LI_RADIUS, default_nodes(max_order), ctx)
}

/// `lambda_n` from derivatives of `ln xi` at 1.
pub fn li_lambda_contour(n: usize, derivs_at_one: &DerivSeries) -> Result<CriterionResult> {
    if *derivs_at_one.center().real() != 1 {
        return Err(Error::domain("Li coefficients need derivatives at z = 1"));
    }
    let (value, err) = shifted_li_from_series(n, &Rational::new(), derivs_at_one)?;
    let params = CriterionParams::new(n, Rational::new());
    Ok(CriterionResult::new(Kind::LiSum, Method::Contour, params, value, err))
}

/// `sum over zero pairs of 2 Re[1 - (b / (b - u))^n]` with `b = rho - shift`
/// and `u = 1 - 2 shift`, scaled by `scale`; the per-pair term decays like
/// `u^2 n^2 / t^2`.
fn mobius_zero_sum(
    n: usize,
    shift: &Rational,
    scale: &Rational,
    zeros: &ZeroTable,
    max_zeros: usize,
    ctx: &PrecisionCtx,
) -> Result<(Float, Float, f64, TailEstimate)> {
    if max_zeros == 0 || max_zeros > zeros.len() {
        return Err(Error::domain(format!("max_zeros must lie in 1..={}", zeros.len())));
    }
    let prec = ctx.working();
    let u: Rational = 1 - Rational::from(shift * 2u32);
    // rho = 1/2 + i t: Re b = 1/2 - shift, Re(b - u) = shift - 1/2
    let re_b = Float::with_val(prec, Rational::from((1, 2)) - shift);
    let re_den = Float::with_val(prec, &re_b - &Float::with_val(prec, &u));
    let mut sum = Float::with_val(prec, 0);
    for t in &zeros.ordinates()[..max_zeros] {
        let b = Complex::with_val(prec, (&re_b, t));
        let d = Complex::with_val(prec, (&re_den, t));
        let q = (b / d).pow(n as u32);
        sum += Float::with_val(prec, 1 - Float::with_val(prec, q.real()));
    }
    sum *= 2u32;
    let sf = Float::with_val(prec, scale);
    sum *= &sf;
    let t_last = zeros.ordinates()[max_zeros - 1].to_f64();
    let uf = u.to_f64();
    let coeff = uf * uf * (n * n) as f64 * scale.to_f64().abs();
    let tail = inverse_square_tail(
        coeff,
        t_last,
        format!(
            "|scale| u^2 n^2 (ln(T/2pi) + 1) / (2 pi T) * safety, u = {}",
            crate::exact::format_rational(&u)
        ),
    );
    let rounding = Float::with_val(prec, max_zeros as u64 * (n as u64 + 4) * 8) >> (prec as i32 - 8);
    Ok((Float::with_val(ctx.bits(), sum), rounding, t_last, tail))
}

/// `lambda_n = sum over zero pairs of 2 Re[1 - (1 - 1/rho)^n]`, truncated.
pub fn li_lambda_zeros(n: usize, zeros: &ZeroTable, max_zeros: usize, ctx: &PrecisionCtx) -> Result<CriterionResult> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    // the zero set is symmetric under rho -> 1 - rho, so rho/(rho - 1) may
    // stand in for (rho - 1)/rho
    let (value, rounding, t_last, tail) =
        mobius_zero_sum(n, &Rational::new(), &Rational::from(1), zeros, max_zeros, ctx)?;
    let bound = Float::with_val(ctx.bits(), tail.bound) + rounding;
    let params = CriterionParams::new(n, Rational::new());
    Ok(
        CriterionResult::new(Kind::LiSum, Method::ZeroSum, params, value, bound).with_zeros(
            max_zeros,
            t_last,
            Some(tail),
        ),
    )
}

#[derive(Clone, Debug)]
pub struct LiReport {
    pub contour: CriterionResult,
    pub zero_sum: CriterionResult,
    /// The two routes agree within their combined error.
    pub consistent: bool,
}

/// `lambda_n` by both routes.
pub fn li_lambda(
    n: usize,
    derivs_at_one: &DerivSeries,
    zeros: &ZeroTable,
    max_zeros: usize,
    ctx: &PrecisionCtx,
) -> Result<LiReport> {
    let contour = li_lambda_contour(n, derivs_at_one)?;
    let zero_sum = li_lambda_zeros(n, zeros, max_zeros, ctx)?;
    let budget = Float::with_val(ctx.bits(), &contour.error_bound + &zero_sum.error_bound);
    let consistent = within(&contour.value, &zero_sum.value, &budget);
    Ok(LiReport {
        contour,
        zero_sum,
        consistent,
    })
}

#[derive(Clone, Debug)]
pub struct GenLiReport {
    /// `sum_rho (1 - ((rho + a)/(rho - 1 - a))^n)` as printed.
    pub printed: CriterionResult,
    /// The derivative at `1 - a` by contour integration.
    pub derivative: CriterionResult,
    /// The zero sum that the derivative form expands to,
    /// `(1 - 2a)^-1 sum_rho (1 - ((rho - a)/(rho - 1 + a))^n)`.
    pub expanded: CriterionResult,
    /// Printed sum and derivative agree within error.
    pub consistent: bool,
    /// Expanded sum and derivative agree within error.
    pub expanded_consistent: bool,
}

/// The shifted Li sum as printed, its derivative form, and the zero sum
/// that the derivative form actually expands to.
pub fn gen_li_sum(
    n: usize,
    a: &Rational,
    derivs_at_shift: &DerivSeries,
    zeros: &ZeroTable,
    max_zeros: usize,
    ctx: &PrecisionCtx,
) -> Result<GenLiReport> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if *a == Rational::from((1, 2)) {
        return Err(Error::domain("a = 1/2 is excluded"));
    }
    let center = Float::with_val(derivs_at_shift.bits(), 1 - a.clone());
    let off = Float::with_val(center.prec(), derivs_at_shift.center().real() - &center).abs();
    if off > (Float::with_val(center.prec(), 1) >> (center.prec() / 2) as i32) {
        return Err(Error::domain(format!("derivatives must be taken at 1 - a = {center}")));
    }
    let params = CriterionParams::new(n, a.clone());

    let (dv, de) = shifted_li_from_series(n, a, derivs_at_shift)?;
    let derivative = CriterionResult::new(Kind::GenLiSum, Method::Contour, params.clone(), dv, de);

    let neg_a = Rational::from(-a);
    let (pv, pr, t_last, ptail) = mobius_zero_sum(n, &neg_a, &Rational::from(1), zeros, max_zeros, ctx)?;
    let pbound = Float::with_val(ctx.bits(), ptail.bound) + pr;
    let printed = CriterionResult::new(Kind::GenLiSum, Method::ZeroSum, params.clone(), pv, pbound).with_zeros(
        max_zeros,
        t_last,
        Some(ptail),
    );

    let u: Rational = 1 - Rational::from(a * 2u32);
    let (ev, er, _, etail) = mobius_zero_sum(n, a, &u.recip(), zeros, max_zeros, ctx)?;
    let ebound = Float::with_val(ctx.bits(), etail.bound) + er;
    let expanded = CriterionResult::new(Kind::GenLiSum, Method::ZeroSum, params, ev, ebound).with_zeros(
        max_zeros,
        t_last,
        Some(etail),
    );

    let b1 = Float::with_val(ctx.bits(), &printed.error_bound + &derivative.error_bound);
    let consistent = within(&printed.value, &derivative.value, &b1);
    let b2 = Float::with_val(ctx.bits(), &expanded.error_bound + &derivative.error_bound);
    let expanded_consistent = within(&expanded.value, &derivative.value, &b2);
    Ok(GenLiReport {
        printed,
        derivative,
        expanded,
        consistent,
        expanded_consistent,
    })
}
