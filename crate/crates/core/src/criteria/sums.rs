use rug::{Assign, Complex, Float, Rational};

use super::maps::{voros_term, F2n};
use super::{CriterionParams, CriterionResult, Kind, Method};
use crate::error::{Error, Result};
use crate::exact::CoeffTable;
use crate::numerics::PrecisionCtx;
use crate::zeros::{tail_bound, ZeroTable};

fn check_count(zeros: &ZeroTable, max_zeros: usize) -> Result<()> {
    if max_zeros == 0 {
        return Err(Error::domain("max_zeros must be at least 1"));
    }
    if max_zeros > zeros.len() {
        return Err(Error::domain(format!(
            "max_zeros = {max_zeros} exceeds the {} ordinates in {}",
            zeros.len(),
            zeros.source_path().display()
        )));
    }
    Ok(())
}

/// `sum_{k <= max_zeros} 2 f_2n(1/2 + i t_k)` with the tail bound at
/// `T = t_max_zeros` and an explicit rounding allowance.
pub fn modified_sum(
    params: &CriterionParams,
    zeros: &ZeroTable,
    max_zeros: usize,
    ctx: &PrecisionCtx,
) -> Result<CriterionResult> {
    check_count(zeros, max_zeros)?;
    let table = CoeffTable::build(params.n, &params.a)?;
    let prec = ctx.working();
    let eval = F2n::new(&table, prec);
    let mut sum = Float::with_val(prec, 0);
    let mut scale = Float::with_val(prec, 0);
    let mut t = Float::new(prec);
    for ordinate in &zeros.ordinates()[..max_zeros] {
        t.assign(ordinate);
        let (v, mag) = eval.on_line(&t);
        sum += v;
        scale += mag;
    }
    sum *= 2u32;
    // Horner with n+1 steps plus the running sum, relative 2^-prec each
    let steps = (params.n + 2 + max_zeros.ilog2() as usize) as u64;
    let rounding = Float::with_val(prec, &scale * (4 * steps)) >> (prec as i32 - 2);

    let t_last = zeros.ordinates()[max_zeros - 1].to_f64();
    let tail = tail_bound(params.n, &params.a, t_last, zeros.ordinates()[0].to_f64())?;
    let bound = Float::with_val(ctx.bits(), tail.bound) + rounding;
    let value = Float::with_val(ctx.bits(), sum);
    Ok(
        CriterionResult::new(Kind::ModifiedSum, Method::ZeroSum, params.clone(), value, bound).with_zeros(
            max_zeros,
            t_last,
            Some(tail),
        ),
    )
}

/// The Voros sum over zero pairs, each term from its nested square roots;
/// equal to [`modified_sum`] at `a = 2`.
pub fn voros_sum(n: usize, zeros: &ZeroTable, max_zeros: usize, ctx: &PrecisionCtx) -> Result<CriterionResult> {
    check_count(zeros, max_zeros)?;
    let prec = ctx.working();
    let a = Rational::from(2);
    let mut sum = Complex::with_val(prec, 0);
    for t in &zeros.ordinates()[..max_zeros] {
        let z = Complex::with_val(prec, (0.5, t));
        sum += voros_term(&z, n, ctx)?;
    }
    let value = Float::with_val(ctx.bits(), sum.real() * 2u32);
    let t_last = zeros.ordinates()[max_zeros - 1].to_f64();
    let tail = tail_bound(n, &a, t_last, zeros.ordinates()[0].to_f64())?;
    let rounding = Float::with_val(prec, max_zeros as u64 * 64) >> (prec as i32 - 8);
    let bound = Float::with_val(ctx.bits(), tail.bound) + rounding;
    let params = CriterionParams::new(n, a);
    Ok(
        CriterionResult::new(Kind::VorosSum, Method::ZeroSum, params, value, bound).with_zeros(
            max_zeros,
            t_last,
            Some(tail),
        ),
    )
}
