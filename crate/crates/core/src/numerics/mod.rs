//! Arbitrary-precision evaluation of zeta, Gamma, xi and contour derivatives.
//!
//! Precision is always passed explicitly through [`PrecisionCtx`]; nothing in
//! this module reads or writes global precision state.

mod contour;
mod gamma;
mod xi;
mod zeta;

use rug::float::Constant;
use rug::{Complex, Float};

use crate::error::{Error, Result};

pub use contour::{
    contour_series, default_nodes, log_xi_derivs, log_xi_even_derivs, xi_even_derivs, zeta_derivs, DerivSeries,
    FunctionTag,
};
pub use gamma::{bernoulli, gamma, ln_gamma};
pub use xi::xi;
pub use zeta::zeta;

pub type BigReal = Float;
pub type BigComplex = Complex;

/// Working precision for one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionCtx {
    bits: u32,
    guard_bits: u32,
}

impl PrecisionCtx {
    pub const DEFAULT_GUARD_BITS: u32 = 32;

    pub fn new(bits: u32) -> Result<Self> {
        Self::with_guard(bits, Self::DEFAULT_GUARD_BITS)
    }

    pub fn with_guard(bits: u32, guard_bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::domain(format!("precision must be at least 64 bits, got {bits}")));
        }
        Ok(PrecisionCtx { bits, guard_bits })
    }

    /// Reported precision.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    /// Precision used for intermediate values.
    pub fn working(&self) -> u32 {
        self.bits + self.guard_bits
    }

    /// The same context with `extra` more reported bits.
    pub fn escalated(&self, extra: u32) -> Self {
        PrecisionCtx {
            bits: self.bits + extra,
            guard_bits: self.guard_bits,
        }
    }

    pub fn real(&self, v: f64) -> Float {
        Float::with_val(self.bits, v)
    }

    pub fn complex(&self, re: f64, im: f64) -> Complex {
        Complex::with_val(self.bits, (re, im))
    }

    /// `2^-e` at reported precision.
    pub fn ulp_scale(&self, e: i32) -> Float {
        Float::with_val(self.bits, 1) >> e
    }
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub(crate) fn ensure_finite(z: &Complex, what: &str) -> Result<()> {
    if z.real().is_finite() && z.imag().is_finite() {
        Ok(())
    } else {
        Err(Error::numerical(format!("{what} is not finite")))
    }
}

/// `|z|` as an `f64`, for step-size and term-count heuristics only.
pub(crate) fn abs_f64(z: &Complex) -> f64 {
    z.real().to_f64().hypot(z.imag().to_f64())
}
