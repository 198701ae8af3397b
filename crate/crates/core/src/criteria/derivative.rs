use rug::{Float, Integer, Rational};

use super::sums::modified_sum;
use super::{within, CriterionParams, CriterionResult, Kind, Method};
use crate::error::{Error, Result};
use crate::exact::{binom, CoeffTable};
use crate::numerics::{DerivSeries, FunctionTag, PrecisionCtx};
use crate::zeros::ZeroTable;

fn factorial(m: usize) -> Integer {
    Integer::from(Integer::factorial(m as u32))
}

fn check_series(n: usize, derivs: &DerivSeries) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if derivs.function_tag() != FunctionTag::LogXi {
        return Err(Error::domain("the derivative criterion needs derivatives of ln xi"));
    }
    if *derivs.center().real() != 0.5 || !derivs.center().imag().is_zero() {
        return Err(Error::domain(format!(
            "derivatives must be taken at 1/2, not {}",
            derivs.center()
        )));
    }
    if derivs.max_order() < 2 * n {
        return Err(Error::domain(format!(
            "order {} derivatives needed for n = {n}, series stops at {}",
            2 * n,
            derivs.max_order()
        )));
    }
    Ok(())
}

/// `(1/(2n-1)!) d^2n/dz^2n (P(z) ln xi(z))` at 1/2 for a polynomial
/// `P(z) = sum_j poly[j] (z-1/2)^j`, by the Leibniz rule over all orders.
pub fn derivative_criterion_poly(
    params: &CriterionParams,
    poly: &[Rational],
    derivs: &DerivSeries,
) -> Result<CriterionResult> {
    let n = params.n;
    check_series(n, derivs)?;
    let prec = derivs.bits() + 32;
    let norm = factorial(2 * n - 1);
    let mut value = Float::with_val(prec, 0);
    let mut err = Float::with_val(prec, 0);
    for (j, p) in poly.iter().enumerate().take(2 * n + 1) {
        if p.is_zero() {
            continue;
        }
        // C(2n, j) P^(j)(1/2) / (2n-1)!, with P^(j)(1/2) = j! p_j
        let c = Rational::from(p * (binom(2 * n, j) * factorial(j))) / &norm;
        let cf = Float::with_val(prec, &c);
        value += Float::with_val(prec, &cf * &derivs.orders()[2 * n - j]);
        err += Float::with_val(prec, cf.abs_ref()) * &derivs.error_estimate()[2 * n - j];
    }
    let value = Float::with_val(derivs.bits(), value);
    let err = Float::with_val(derivs.bits(), err);
    Ok(CriterionResult::new(
        Kind::Derivative,
        Method::Contour,
        params.clone(),
        value,
        err,
    ))
}

/// Coefficients of `F_2n` in powers of `z - 1/2`.
pub(crate) fn f_poly(table: &CoeffTable) -> Vec<Rational> {
    let mut poly = vec![Rational::new(); 2 * table.n() - 1];
    for (k, f) in table.f_coeffs().iter().enumerate() {
        poly[2 * k] = f.clone();
    }
    poly
}

/// `(1/(2n-1)!) d^2n/dz^2n (F_2n(z) ln xi(z))` at 1/2. Only even Leibniz terms
/// enter since `F_2n` is even about 1/2.
pub fn derivative_criterion(params: &CriterionParams, derivs: &DerivSeries) -> Result<CriterionResult> {
    let table = CoeffTable::build(params.n, &params.a)?;
    derivative_criterion_poly(params, &f_poly(&table), derivs)
}

/// Candidate constants `c_n` in `modified_sum = c_n * derivative_criterion`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizationLaw {
    Unit,
    InverseTwoN,
}

impl NormalizationLaw {
    pub const ALL: [NormalizationLaw; 2] = [NormalizationLaw::Unit, NormalizationLaw::InverseTwoN];

    pub fn factor(&self, n: usize) -> Rational {
        match self {
            NormalizationLaw::Unit => Rational::from(1),
            NormalizationLaw::InverseTwoN => Rational::from((1, 2 * n as u64)),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            NormalizationLaw::Unit => "1",
            NormalizationLaw::InverseTwoN => "1/(2n)",
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub n: usize,
    pub modified: CriterionResult,
    pub derivative: CriterionResult,
    /// `modified.value / derivative.value`.
    pub ratio: Float,
}

impl IdentityReport {
    /// Whether `modified = c_n * derivative` within both error budgets.
    pub fn fits(&self, law: NormalizationLaw) -> bool {
        let c = Float::with_val(self.derivative.value.prec(), &law.factor(self.n));
        let predicted = Float::with_val(c.prec(), &c * &self.derivative.value);
        let budget = Float::with_val(c.prec(), &c * &self.derivative.error_bound) + &self.modified.error_bound;
        within(&self.modified.value, &predicted, &budget)
    }

    /// `|modified - c_n derivative|` divided by the combined budget.
    pub fn residual_ratio(&self, law: NormalizationLaw) -> f64 {
        let c = Float::with_val(self.derivative.value.prec(), &law.factor(self.n));
        let predicted = Float::with_val(c.prec(), &c * &self.derivative.value);
        let budget = Float::with_val(c.prec(), &c * &self.derivative.error_bound) + &self.modified.error_bound;
        (Float::with_val(c.prec(), &self.modified.value - &predicted).abs() / budget).to_f64()
    }
}

/// Compares the zero sum with the derivative criterion for one `n`.
pub fn identity_ratio(
    n: usize,
    a: &Rational,
    zeros: &ZeroTable,
    max_zeros: usize,
    derivs: &DerivSeries,
    ctx: &PrecisionCtx,
) -> Result<IdentityReport> {
    let params = CriterionParams::new(n, a.clone());
    let derivative = derivative_criterion(&params, derivs)?;
    if Float::with_val(derivative.value.prec(), derivative.value.abs_ref()) <= derivative.error_bound {
        return Err(Error::Indeterminate(format!(
            "derivative criterion for n = {n} is within its error of zero"
        )));
    }
    let modified = modified_sum(&params, zeros, max_zeros, ctx)?;
    let ratio = Float::with_val(ctx.bits(), &modified.value / &derivative.value);
    Ok(IdentityReport {
        n,
        modified,
        derivative,
        ratio,
    })
}

#[derive(Clone, Debug)]
pub struct LawFit {
    /// The unique law consistent with every report, if there is one.
    pub law: Option<NormalizationLaw>,
    /// `(law, fits all reports, worst residual / budget)` for each candidate.
    pub candidates: Vec<(NormalizationLaw, bool, f64)>,
}

/// Picks the normalization law that fits every report.
pub fn fit_normalization_law(reports: &[IdentityReport]) -> LawFit {
    let candidates: Vec<_> = NormalizationLaw::ALL
        .iter()
        .map(|law| {
            let ok = reports.iter().all(|r| r.fits(*law));
            let worst = reports.iter().map(|r| r.residual_ratio(*law)).fold(0.0, f64::max);
            (*law, ok, worst)
        })
        .collect();
    let fitting: Vec<_> = candidates.iter().filter(|c| c.1).collect();
    let law = if fitting.len() == 1 { Some(fitting[0].0) } else { None };
    LawFit { law, candidates }
}
