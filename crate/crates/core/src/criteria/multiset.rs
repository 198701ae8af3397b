use rug::{Complex, Float, Rational};

use super::maps::F2n;
use super::{CriterionParams, CriterionResult, Kind, Method};
use crate::error::{Error, Result};
use crate::exact::CoeffTable;
use crate::numerics::PrecisionCtx;

/// Complex points with multiplicities. Elements are used verbatim; no
/// conjugates are added.
#[derive(Clone, Debug, Default)]
pub struct Multiset {
    elements: Vec<(Complex, u32)>,
}

impl Multiset {
    pub fn new() -> Self {
        Multiset::default()
    }

    pub fn push(&mut self, value: Complex, multiplicity: u32) -> Result<()> {
        if multiplicity == 0 {
            return Err(Error::domain("multiplicity must be at least 1"));
        }
        if !value.real().is_finite() || !value.imag().is_finite() {
            return Err(Error::domain(format!("multiset element {value} is not finite")));
        }
        self.elements.push((value, multiplicity));
        Ok(())
    }

    pub fn elements(&self) -> &[(Complex, u32)] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Smallest `|Im rho|` over the elements.
    pub fn epsilon(&self) -> Option<f64> {
        self.elements
            .iter()
            .map(|(z, _)| z.imag().to_f64().abs())
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |m| m.min(v))))
    }
}

/// `sum_rho m_rho (2 - w_+^2n - w_-^2n)` for the maps recentred at `sigma`,
/// evaluated through the single-valued form `2 - 2 sum_k A_k (rho-sigma)^(2k-2n)`.
pub fn multiset_sum(ms: &Multiset, n: usize, a: &Rational, sigma: f64, ctx: &PrecisionCtx) -> Result<CriterionResult> {
    let table = CoeffTable::build_unrestricted(n, a)?;
    let params = CriterionParams { n, a: a.clone(), sigma };
    let cut = Rational::from(a.recip_ref()).to_f64();
    let sigma_f = Float::with_val(ctx.working(), sigma);
    let line_tol = Float::with_val(ctx.working(), 1) >> (ctx.bits() / 2) as i32;

    // cancellation in the Horner sum costs log2 of the magnitude scale
    let probe = F2n::new(&table, 64);
    let mut extra = 0u32;
    let mut offsets = Vec::with_capacity(ms.elements.len());
    for (z, _) in &ms.elements {
        let w = Complex::with_val(ctx.working(), z - &sigma_f);
        let on_line = Float::with_val(ctx.working(), w.real().abs_ref()) < line_tol;
        if on_line && w.imag().to_f64().abs() <= cut {
            return Err(Error::domain(format!(
                "multiset element {:.17} lies on the cut segment |Im| <= 1/a = {cut} of the line Re = {sigma}",
                z
            )));
        }
        let scale = probe.magnitude(&Complex::with_val(64, &w));
        extra = extra.max(scale.get_exp().unwrap_or(0).max(0) as u32);
        offsets.push(w);
    }
    let prec = ctx.working() + extra;
    let eval = F2n::new(&table, prec);
    let mut sum = Complex::with_val(prec, 0);
    let mut scale = Float::with_val(prec, 0);
    for ((_, mult), w) in ms.elements.iter().zip(&offsets) {
        let w = Complex::with_val(prec, w);
        let term = eval.at_offset(&w)?;
        sum += term * *mult;
        scale += eval.magnitude(&w) * *mult;
    }
    let steps = (n as u64 + 4) * 8;
    let err = Float::with_val(ctx.bits(), scale * steps) >> (prec as i32 - 4);
    let value = Float::with_val(ctx.bits(), sum.real());
    let mut result = CriterionResult::new(Kind::Multiset, Method::Finite, params, value, err);
    result.imag = Float::with_val(ctx.bits(), sum.imag());
    Ok(result)
}
