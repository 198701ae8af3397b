//! Taylor coefficients by the discretized Cauchy integral on a circle.
//!
//! `f^(m)(c) = m! / N * sum_j f(c + r w^j) w^(-mj) / r^m` with `w = e^(2 pi i / N)`.
//! Every series is evaluated on `2N` nodes; the even-indexed subset gives the
//! `N`-node estimate for free, and the difference between the two is the
//! reported error together with a rounding floor at the reported precision.

use rug::{Complex, Float, Integer};
use serde::Serialize;

use super::xi::xi_at;
use super::zeta::zeta_at;
use super::{pi, PrecisionCtx};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FunctionTag {
    LogXi,
    Xi,
    Zeta,
}

/// Derivatives `f^(m)(center)` for `m = 0..=max_order`, with an error
/// estimate per order.
#[derive(Clone, Debug)]
pub struct DerivSeries {
    center: Complex,
    function_tag: FunctionTag,
    orders: Vec<Float>,
    error_estimate: Vec<Float>,
    radius: f64,
    nodes: usize,
    bits: u32,
}

impl DerivSeries {
    pub fn center(&self) -> &Complex {
        &self.center
    }

    pub fn function_tag(&self) -> FunctionTag {
        self.function_tag
    }

    /// `orders()[m]` is the m-th derivative.
    pub fn orders(&self) -> &[Float] {
        &self.orders
    }

    pub fn error_estimate(&self) -> &[Float] {
        &self.error_estimate
    }

    pub fn max_order(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }
}

/// `max(64, 8 * max_order)`.
pub fn default_nodes(max_order: usize) -> usize {
    (8 * max_order).max(64)
}

fn check_grid(max_order: usize, radius: f64, nodes: usize) -> Result<()> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::domain(format!("contour radius must be positive, got {radius}")));
    }
    if nodes < 4 * max_order || nodes < 4 {
        return Err(Error::domain(format!(
            "{nodes} nodes cannot resolve order {max_order}; need at least 4 per order"
        )));
    }
    Ok(())
}

/// Continuous logarithm along the closed node sequence, anchored at a
/// positive real first value.
fn unwrap_log(values: &[Complex], prec: u32) -> Result<Vec<Complex>> {
    let first = &values[0];
    let tiny = Float::with_val(prec, first.abs_ref()) >> (prec / 2) as i32;
    if *first.real() <= 0 || Float::with_val(prec, first.imag().abs_ref()) > tiny {
        return Err(Error::Resolution(format!(
            "contour does not start at a positive real value ({first})"
        )));
    }
    let limit = Float::with_val(prec, pi(prec) / 2u32);
    let mut phase = Float::with_val(prec, 0);
    let mut out = Vec::with_capacity(values.len());
    for (j, v) in values.iter().enumerate() {
        if j > 0 {
            let step = (Complex::with_val(prec, values[j - 1].conj_ref()) * v)
                .arg()
                .real()
                .clone();
            if Float::with_val(prec, step.abs_ref()) > limit {
                return Err(Error::Resolution(format!(
                    "phase jump of {:.3} rad between nodes {} and {j}; increase nodes",
                    step.to_f64(),
                    j - 1
                )));
            }
            phase += step;
        }
        let ln_abs = Float::with_val(prec, v.abs_ref()).ln();
        out.push(Complex::with_val(prec, (ln_abs, &phase)));
    }
    let closing = (Complex::with_val(prec, values[values.len() - 1].conj_ref()) * &values[0])
        .arg()
        .real()
        .clone();
    let winding = Float::with_val(prec, &phase + closing);
    if Float::with_val(prec, winding.abs_ref()) > limit {
        return Err(Error::Resolution(format!(
            "logarithm winds by {:.3} rad around the contour; a zero lies inside or nodes are too sparse",
            winding.to_f64()
        )));
    }
    Ok(out)
}

/// Generic contour differentiation of `f` about a real `center`.
///
/// With `log_mode`, the derivatives are those of `ln f` with the imaginary
/// part of the logarithm unwrapped along the contour.
#[allow(clippy::too_many_arguments)]
pub fn contour_series<F>(
    f: F,
    center: &Float,
    radius: f64,
    nodes: usize,
    max_order: usize,
    ctx: &PrecisionCtx,
    log_mode: bool,
    tag: FunctionTag,
) -> Result<DerivSeries>
where
    F: Fn(&Complex, u32) -> Result<Complex>,
{
    check_grid(max_order, radius, nodes)?;
    let prec = ctx.working();
    let total = 2 * nodes;
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let roots: Vec<Complex> = (0..total)
        .map(|j| {
            let angle = Float::with_val(prec, &two_pi * j as u64) / total as u64;
            Complex::with_val(prec, (Float::new(prec), angle)).exp()
        })
        .collect();
    let r = Float::with_val(prec, radius);
    let c = Float::with_val(prec, center);

    let mut values = Vec::with_capacity(total);
    for w in &roots {
        let z = Complex::with_val(prec, w * &r) + &c;
        values.push(f(&z, prec)?);
    }
    let samples = if log_mode { unwrap_log(&values, prec)? } else { values };

    let max_abs = samples
        .iter()
        .map(|g| Float::with_val(prec, g.abs_ref()))
        .fold(Float::with_val(prec, 1), |acc, v| if v > acc { v } else { acc });

    let mut orders = Vec::with_capacity(max_order + 1);
    let mut errors = Vec::with_capacity(max_order + 1);
    let mut r_pow = Float::with_val(prec, 1);
    let mut factorial = Integer::from(1);
    for m in 0..=max_order {
        if m > 0 {
            r_pow *= &r;
            factorial *= m as u64;
        }
        let mut fine = Complex::with_val(prec, 0);
        let mut coarse = Complex::with_val(prec, 0);
        for (j, g) in samples.iter().enumerate() {
            let idx = (total - (m * j) % total) % total;
            let term = Complex::with_val(prec, g * &roots[idx]);
            if j % 2 == 0 {
                coarse += &term;
            }
            fine += term;
        }
        let scale = Float::with_val(prec, &factorial) / &r_pow;
        fine *= Float::with_val(prec, &scale / total as u64);
        coarse *= Float::with_val(prec, &scale / nodes as u64);

        let value = Float::with_val(ctx.bits(), fine.real());
        let mut err = Float::with_val(prec, fine.real() - coarse.real()).abs();
        err += Float::with_val(prec, fine.imag().abs_ref());
        let floor = Float::with_val(prec, &scale * &max_abs) >> (ctx.bits() as i32 - 8);
        err += floor;
        orders.push(value);
        errors.push(Float::with_val(ctx.bits(), err));
    }

    Ok(DerivSeries {
        center: Complex::with_val(ctx.bits(), (center, 0)),
        function_tag: tag,
        orders,
        error_estimate: errors,
        radius,
        nodes,
        bits: ctx.bits(),
    })
}

fn check_log_disk(radius: f64) -> Result<()> {
    // The nearest zeros of xi are at height 14.13 above the real axis.
    if radius >= 14.0 {
        return Err(Error::domain(format!(
            "radius {radius} reaches the zeros of xi; ln xi needs radius < 14"
        )));
    }
    Ok(())
}

/// Derivatives of `ln xi` about a real center (used at 1/2, 1, and 1-a).
pub fn log_xi_derivs(
    center: &Float,
    max_order: usize,
    radius: f64,
    nodes: usize,
    ctx: &PrecisionCtx,
) -> Result<DerivSeries> {
    check_log_disk(radius)?;
    let guard = ctx.bits() / 2;
    contour_series(
        |z, prec| xi_at(z, prec, guard),
        center,
        radius,
        nodes,
        max_order,
        ctx,
        true,
        FunctionTag::LogXi,
    )
}

fn check_even_order(max_order: usize) -> Result<()> {
    if max_order == 0 || max_order % 2 == 1 {
        return Err(Error::domain(format!(
            "max_order must be a positive even integer, got {max_order}"
        )));
    }
    Ok(())
}

/// `(ln xi)^(m)(1/2)` for `m = 0..=max_order`. Odd orders are kept; they vanish
/// by the functional equation and serve as a built-in accuracy check.
pub fn log_xi_even_derivs(max_order: usize, radius: f64, nodes: usize, ctx: &PrecisionCtx) -> Result<DerivSeries> {
    check_even_order(max_order)?;
    let half = Float::with_val(ctx.working(), 0.5);
    log_xi_derivs(&half, max_order, radius, nodes, ctx)
}

/// `xi^(m)(1/2)` for `m = 0..=max_order`.
pub fn xi_even_derivs(max_order: usize, radius: f64, nodes: usize, ctx: &PrecisionCtx) -> Result<DerivSeries> {
    check_even_order(max_order)?;
    if radius > 8.0 {
        return Err(Error::domain(format!(
            "radius {radius} exceeds 8; xi contours are kept within 8 for conditioning"
        )));
    }
    let half = Float::with_val(ctx.working(), 0.5);
    let guard = ctx.bits() / 2;
    contour_series(
        |z, prec| xi_at(z, prec, guard),
        &half,
        radius,
        nodes,
        max_order,
        ctx,
        false,
        FunctionTag::Xi,
    )
}

/// Derivatives of `zeta` about a real center; the disk must exclude the pole.
pub fn zeta_derivs(
    center: &Float,
    max_order: usize,
    radius: f64,
    nodes: usize,
    ctx: &PrecisionCtx,
) -> Result<DerivSeries> {
    let dist = (center.to_f64() - 1.0).abs();
    if radius >= dist {
        return Err(Error::domain(format!("radius {radius} encloses the pole of zeta at 1")));
    }
    contour_series(zeta_at, center, radius, nodes, max_order, ctx, false, FunctionTag::Zeta)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(256).unwrap()
    }

    #[test]
    fn exact_on_a_polynomial() {
        // f(z) = z^3 about 2: f = 8, f' = 12, f'' = 12, f''' = 6, f'''' = 0
        let c = ctx();
        let s = contour_series(
            |z, prec| Ok(Complex::with_val(prec, z * z) * z),
            &Float::with_val(256, 2),
            1.0,
            16,
            4,
            &c,
            false,
            FunctionTag::Xi,
        )
        .unwrap();
        for (m, want) in [8.0, 12.0, 12.0, 6.0, 0.0].iter().enumerate() {
            assert!((s.orders()[m].to_f64() - want).abs() < 1e-60, "order {m}");
            assert!(s.error_estimate()[m] > 0);
        }
    }

    #[test]
    fn log_mode_matches_known_logarithm() {
        // ln(2 + z) about 0: derivatives (-1)^(m-1) (m-1)! / 2^m
        let c = ctx();
        let s = contour_series(
            |z, prec| Ok(Complex::with_val(prec, z + 2u32)),
            &Float::with_val(256, 0),
            1.0,
            64,
            6,
            &c,
            true,
            FunctionTag::LogXi,
        )
        .unwrap();
        assert!((s.orders()[0].to_f64() - 2f64.ln()).abs() < 1e-15);
        let mut fact = 1.0;
        for m in 1..=6usize {
            if m > 1 {
                fact *= (m - 1) as f64;
            }
            let want = if m % 2 == 1 { 1.0 } else { -1.0 } * fact / 2f64.powi(m as i32);
            assert!((s.orders()[m].to_f64() - want).abs() < 1e-15, "order {m}");
        }
    }

    #[test]
    fn winding_is_detected() {
        // z has a zero at the center: its logarithm winds once.
        let c = ctx();
        let err = contour_series(
            |z, prec| Ok(Complex::with_val(prec, z + 0u32)),
            &Float::with_val(256, 0),
            1.0,
            64,
            4,
            &c,
            true,
            FunctionTag::LogXi,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Resolution(_)), "{err}");
    }

    #[test]
    fn rejects_bad_grids() {
        let c = ctx();
        assert!(log_xi_even_derivs(3, 4.0, 64, &c).is_err());
        assert!(log_xi_even_derivs(20, 4.0, 40, &c).is_err());
        assert!(log_xi_even_derivs(2, 14.5, 64, &c).is_err());
        assert!(xi_even_derivs(2, 9.0, 64, &c).is_err());
    }

    #[test]
    fn low_orders_at_half() {
        let c = ctx();
        let s = log_xi_even_derivs(2, 4.0, 64, &c).unwrap();
        let xi_half = 0.497_120_778_188_314_1_f64;
        assert!((s.orders()[0].to_f64() - xi_half.ln()).abs() < 1e-15);
        assert!(s.orders()[1].clone().abs() < s.error_estimate()[1]);
        // 2 * sum 1/t^2 over the zeros = 0.046209986...
        assert!(
            (s.orders()[2].to_f64() - 0.046_209_986).abs() < 1e-6,
            "{}",
            s.orders()[2]
        );

        let x = xi_even_derivs(4, 4.0, 64, &c).unwrap();
        assert!((x.orders()[0].to_f64() - xi_half).abs() < 1e-15);
        assert!(x.orders()[1].clone().abs() < x.error_estimate()[1]);
        assert!(x.orders()[2] > 0 && x.orders()[4] > 0);
    }
}
