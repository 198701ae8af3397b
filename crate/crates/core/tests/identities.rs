use proptest::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float, Rational};

use xi_criteria::criteria::{
    derivative_criterion, f2n_eval, f2n_prime, multiset_sum, CriterionParams, Multiset, Verdict,
};
use xi_criteria::numerics::{default_nodes, log_xi_even_derivs, xi, PrecisionCtx};

/// `(1/2 pi i) \oint f'_2n(z) ln xi(z) dz` over `|z - 1/2| = 1` by the
/// trapezoid rule; the integrand's only singularity inside is the pole at 1/2.
fn residue_by_quadrature(n: usize, a: &Rational, nodes: usize, ctx: &PrecisionCtx) -> Float {
    let p = ctx.working();
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let mut acc = Complex::with_val(p, 0);
    for j in 0..nodes {
        let th = Float::with_val(p, &two_pi * j as u64) / nodes as u64;
        let w = Complex::with_val(p, (Float::new(p), th)).exp();
        let z = Complex::with_val(p, &w + 0.5);
        let lx = xi(&z, ctx).unwrap().ln();
        // dz = i w dtheta, so the 1/(2 pi i) leaves w / nodes per node
        acc += f2n_prime(&z, n, a, ctx).unwrap() * lx * w;
    }
    Float::with_val(ctx.bits(), acc.real() / nodes as u64)
}

#[test]
fn derivative_criterion_is_2n_times_the_residue() {
    let ctx = PrecisionCtx::new(192).unwrap();
    let a = Rational::from(2);
    let derivs = log_xi_even_derivs(8, 4.0, default_nodes(8), &ctx).unwrap();
    for n in 1..=4 {
        let d = derivative_criterion(&CriterionParams::new(n, a.clone()), &derivs).unwrap();
        let res = residue_by_quadrature(n, &a, 192, &ctx);
        let scaled = Float::with_val(192, &res * (2 * n) as u32);
        let gap = Float::with_val(192, &d.value - &scaled).abs().to_f64();
        assert!(
            gap < 1e-40,
            "n = {n}: derivative {} vs 2n * residue {}",
            d.value,
            scaled
        );
    }
}

#[test]
fn f_prime_decays_like_inverse_cube() {
    let ctx = PrecisionCtx::new(128).unwrap();
    let a = Rational::from(2);
    for n in 1..=4 {
        for angle in [0.3f64, 1.2, 2.5] {
            let scaled: Vec<f64> = [1e2, 1e4, 1e6]
                .iter()
                .map(|r| {
                    let z = ctx.complex(r * angle.cos(), r * angle.sin());
                    let d = f2n_prime(&z, n, &a, &ctx).unwrap();
                    Float::with_val(128, d.abs_ref()).to_f64() * r * r * r
                })
                .collect();
            assert!(scaled.iter().all(|v| v.is_finite() && *v > 0.0));
            assert!((scaled[2] / scaled[1] - 1.0).abs() < 1e-3, "n = {n}: {scaled:?}");
            assert!((scaled[1] / scaled[0] - 1.0).abs() < 0.2, "n = {n}: {scaled:?}");
        }
    }
}

#[test]
fn bare_offline_quadruple_goes_negative() {
    let ctx = PrecisionCtx::new(256).unwrap();
    let mut ms = Multiset::new();
    for (re, im) in [(0.9, 5.0), (0.1, -5.0), (0.9, -5.0), (0.1, 5.0)] {
        ms.push(ctx.complex(re, im), 1).unwrap();
    }
    let a = Rational::from(2);
    let hit = (1..=200).find(|&n| multiset_sum(&ms, n, &a, 0.5, &ctx).unwrap().verdict == Verdict::Negative);
    assert!(hit.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn on_line_terms_pair_to_twice_the_real_part(t in 14.0f64..1.0e4, n in 1usize..12) {
        let ctx = PrecisionCtx::new(256).unwrap();
        let a = Rational::from(2);
        let up = f2n_eval(&ctx.complex(0.5, t), n, &a, &ctx).unwrap();
        let down = f2n_eval(&ctx.complex(0.5, -t), n, &a, &ctx).unwrap();
        let pair = Complex::with_val(ctx.working(), &up + &down);
        let twice_re = Float::with_val(ctx.working(), up.real() * 2u32);
        let tol = Float::with_val(64, 1) >> (256 - 8);
        prop_assert!(Float::with_val(ctx.working(), pair.real() - &twice_re).abs() < tol);
        prop_assert!(Float::with_val(ctx.working(), pair.imag().abs_ref()) < tol);
    }

    #[test]
    fn derivative_criterion_scales_as_inverse_a_squared_power(p in 1u32..40, q in 1u32..40) {
        prop_assume!(Rational::from((p, q)) > Rational::from((1, 14)));
        let ctx = PrecisionCtx::new(128).unwrap();
        let derivs = log_xi_even_derivs(2, 4.0, 64, &ctx).unwrap();
        let a = Rational::from((p, q));
        let d = derivative_criterion(&CriterionParams::new(1, a.clone()), &derivs).unwrap();
        let reference = derivative_criterion(&CriterionParams::new(1, Rational::from(1)), &derivs).unwrap();
        // n = 1: F_2 = 4 A_0 = 4 * 2 / a^2
        let a2 = Float::with_val(128, Rational::from(&a * &a));
        let want = Float::with_val(128, &reference.value / &a2);
        prop_assert!(Float::with_val(128, &d.value - &want).abs() <= Float::with_val(128, &d.error_bound * 4u32));
    }
}
