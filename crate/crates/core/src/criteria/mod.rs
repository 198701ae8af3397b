//! Zero sums, the derivative criterion at 1/2, Li-type baselines and the
//! finite multiset version, each returned as a [`CriterionResult`] with a
//! three-valued verdict.

mod derivative;
mod li;
mod maps;
mod multiset;
mod sums;

use rug::{Float, Rational};
use serde::Serialize;

use crate::exact::{a_in_warning_zone, format_rational};
use crate::zeros::TailEstimate;

pub use derivative::{
    derivative_criterion, derivative_criterion_poly, fit_normalization_law, identity_ratio, IdentityReport, LawFit,
    NormalizationLaw,
};
pub use li::{gen_li_derivative, gen_li_sum, li_lambda, li_lambda_contour, li_lambda_zeros, GenLiReport, LiReport};
pub use maps::{f2n_eval, f2n_prime, f_map, f_map_about, sqrt_cut, voros_term, Branch, F2n};
pub use multiset::{multiset_sum, Multiset};
pub use sums::{modified_sum, voros_sum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kind {
    VorosSum,
    ModifiedSum,
    Derivative,
    LiSum,
    GenLiSum,
    Multiset,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::VorosSum => "VOROS_SUM",
            Kind::ModifiedSum => "MODIFIED_SUM",
            Kind::Derivative => "DERIVATIVE",
            Kind::LiSum => "LI_SUM",
            Kind::GenLiSum => "GEN_LI_SUM",
            Kind::Multiset => "MULTISET",
        }
    }
}

/// How a value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    /// Truncated sum over tabulated zeros.
    ZeroSum,
    /// Contour derivatives of `ln xi`.
    Contour,
    /// Exact finite sum.
    Finite,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ZeroSum => "ZERO_SUM",
            Method::Contour => "CONTOUR",
            Method::Finite => "FINITE",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    NonnegativeWithinError,
    Negative,
    Indeterminate,
}

impl Verdict {
    /// Nonnegative only if `value - bound >= 0`, negative only if
    /// `value + bound < 0`.
    pub fn classify(value: &Float, bound: &Float) -> Verdict {
        if Float::with_val(value.prec(), value - bound) >= 0 {
            Verdict::NonnegativeWithinError
        } else if Float::with_val(value.prec(), value + bound) < 0 {
            Verdict::Negative
        } else {
            Verdict::Indeterminate
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NonnegativeWithinError => "NONNEGATIVE_WITHIN_ERROR",
            Verdict::Negative => "NEGATIVE",
            Verdict::Indeterminate => "INDETERMINATE",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionParams {
    pub n: usize,
    pub a: Rational,
    pub sigma: f64,
}

impl CriterionParams {
    pub fn new(n: usize, a: Rational) -> Self {
        CriterionParams { n, a, sigma: 0.5 }
    }

    /// Half-length `1/a` of the cut segment of the square-root maps.
    pub fn cut_halflength(&self) -> Rational {
        Rational::from(self.a.recip_ref())
    }

    /// True when `a` lies in `(1/14, 1/4]`.
    pub fn a_bound_warning(&self) -> bool {
        a_in_warning_zone(&self.a)
    }

    pub fn a_string(&self) -> String {
        format_rational(&self.a)
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub kind: Kind,
    pub method: Method,
    pub params: CriterionParams,
    pub zeros_used: usize,
    /// Last ordinate included in a zero sum.
    pub t: Option<f64>,
    pub value: Float,
    /// Imaginary part, nonzero only for multiset sums over non-closed sets.
    pub imag: Float,
    pub tail: Option<TailEstimate>,
    /// Total error budget: tail bound plus rounding, or the propagated
    /// contour error.
    pub error_bound: Float,
    pub verdict: Verdict,
}

impl CriterionResult {
    pub(crate) fn new(kind: Kind, method: Method, params: CriterionParams, value: Float, error_bound: Float) -> Self {
        let verdict = Verdict::classify(&value, &error_bound);
        let imag = Float::new(value.prec());
        CriterionResult {
            kind,
            method,
            params,
            zeros_used: 0,
            t: None,
            value,
            imag,
            tail: None,
            error_bound,
            verdict,
        }
    }

    pub(crate) fn with_zeros(mut self, zeros_used: usize, t: f64, tail: Option<TailEstimate>) -> Self {
        self.zeros_used = zeros_used;
        self.t = Some(t);
        self.tail = tail;
        self
    }
}

/// `|x - y| <= bound`.
pub(crate) fn within(x: &Float, y: &Float, bound: &Float) -> bool {
    Float::with_val(x.prec().max(y.prec()), x - y).abs() <= *bound
}
