use rug::Float;

use xi_criteria::arith::{
    chebyshev_partial, chebyshev_report, halfline_probe, ln_zeta, log_zeta_partial, sieve_mangoldt,
};
use xi_criteria::numerics::PrecisionCtx;

#[test]
fn error_envelope_shrinks_by_decade_at_three_halves() {
    let ctx = PrecisionCtx::new(128).unwrap();
    let table = sieve_mangoldt(10_000_000).unwrap();
    let mut checkpoints = Vec::new();
    let mut n = 10_000u32;
    while n < 10_000_000 {
        checkpoints.push(n);
        n *= 2;
    }
    checkpoints.push(10_000_000);
    let r = chebyshev_report(1.5, &checkpoints, &table, &ctx).unwrap();
    assert!(!r.labeled_exploratory);
    let env = r.decade_envelope();
    assert_eq!(env.len(), 4);
    assert!(r.envelope_non_increasing(), "{env:?}");
}

#[test]
fn partial_at_a_single_point_matches_report() {
    let ctx = PrecisionCtx::new(128).unwrap();
    let table = sieve_mangoldt(50_000).unwrap();
    let direct = chebyshev_partial(2.0, 50_000, &table, &ctx).unwrap();
    let r = chebyshev_report(2.0, &[1_000, 50_000], &table, &ctx).unwrap();
    assert_eq!(direct, r.checkpoints[1].partial);
    assert!(chebyshev_partial(0.5, 100, &table, &ctx).is_err());
    assert!(chebyshev_partial(2.0, 60_000, &table, &ctx).is_err());
}

#[test]
fn ln_zeta_series_converges_at_two_and_three() {
    let ctx = PrecisionCtx::new(128).unwrap();
    let table = sieve_mangoldt(100_000).unwrap();
    for a in [2.0, 3.0] {
        let reference = ln_zeta(a, &ctx).unwrap();
        let e3 = Float::with_val(128, log_zeta_partial(a, 1_000, &table, &ctx).unwrap() - &reference).abs();
        let e5 = Float::with_val(128, log_zeta_partial(a, 100_000, &table, &ctx).unwrap() - &reference).abs();
        assert!(e5 < e3, "a = {a}");
        // remaining tail of sum 1/(k p^(ka)) over p > N is at most its integral bound
        let n = 100_000f64;
        assert!(e5.to_f64() < 2.0 / ((a - 1.0) * n.powf(a - 1.0) * n.ln()), "a = {a}");
    }
}

#[test]
fn halfline_probe_has_a_row_per_checkpoint() {
    let ctx = PrecisionCtx::new(128).unwrap();
    let table = sieve_mangoldt(100_000).unwrap();
    let r = halfline_probe(&[1_000, 10_000, 100_000], &table, &ctx).unwrap();
    assert!(r.labeled_exploratory);
    assert_eq!(r.checkpoints.len(), 3);
    assert!((r.checkpoints[0].reference.to_f64() + 2.686_09).abs() < 1e-4);
}
