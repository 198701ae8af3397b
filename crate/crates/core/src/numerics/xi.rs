#[cfg(test)]
use rug::ops::Pow;
use rug::{Complex, Float};

use super::gamma::gamma;
use super::zeta::zeta_at;
use super::{ensure_finite, pi, PrecisionCtx};
use crate::error::{Error, Result};

/// `xi(z) = z (z-1) pi^(-z/2) Gamma(z/2) zeta(z) / 2` computed at `prec` bits.
///
/// `guard_bits` sets how close to the removable singularities at 0 and 1 the
/// argument may come: `|z|, |z-1| > 2^-(guard_bits)`.
pub(crate) fn xi_at(z: &Complex, prec: u32, guard_exponent: u32) -> Result<Complex> {
    ensure_finite(z, "xi argument")?;
    let tol = Float::with_val(prec, 1) >> guard_exponent as i32;
    let zm1 = Complex::with_val(prec, z - 1u32);
    if Complex::with_val(prec, z.abs_ref()).real() <= &tol || Complex::with_val(prec, zm1.abs_ref()).real() <= &tol {
        return Err(Error::domain(format!(
            "xi evaluated within 2^-{guard_exponent} of its removable singularity at {z}"
        )));
    }
    let z = Complex::with_val(prec, z);
    let half = Complex::with_val(prec, &z / 2u32);
    let g = gamma(&half, prec)?;
    let zeta = zeta_at(&z, prec)?;
    let ln_pi = Float::with_val(prec, pi(prec).ln());
    let pi_pow = (-Complex::with_val(prec, &half * &ln_pi)).exp();
    let mut out = Complex::with_val(prec, &z * &zm1) / 2u32;
    out *= pi_pow;
    out *= g;
    out *= zeta;
    ensure_finite(&out, "xi")?;
    Ok(out)
}

/// Riemann's xi function at `ctx.bits()` precision.
pub fn xi(z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let v = xi_at(z, ctx.working(), ctx.bits() / 2)?;
    Ok(Complex::with_val(ctx.bits(), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn value_at_half() {
        // xi(1/2) = -(1/8) pi^(-1/4) Gamma(1/4) zeta(1/2)
        let ctx = PrecisionCtx::new(256).unwrap();
        let v = xi(&ctx.complex(0.5, 0.0), &ctx).unwrap();
        let p = 300;
        let oracle = -(Float::with_val(p, pi(p).pow(-0.25f64))
            * Float::with_val(p, 0.25f64).gamma()
            * Float::with_val(p, 0.5f64).zeta())
            / 8u32;
        let err = Float::with_val(256, v.real() - &oracle).abs();
        assert!(err < Float::with_val(256, 1) >> 248, "{err}");
        assert!((v.real().to_f64() - 0.497_120_778_188_314_1).abs() < 1e-15);
    }

    #[test]
    fn functional_equation_in_annulus() {
        let ctx = PrecisionCtx::new(256).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let tol = Float::with_val(256, 1) >> (ctx.bits() - ctx.guard_bits()) as i32;
        for _ in 0..100 {
            let r: f64 = rng.gen_range(1.0..8.0);
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = ctx.complex(0.5 + r * th.cos(), r * th.sin());
            let w = Complex::with_val(256, 1u32 - z.clone());
            let a = xi(&z, &ctx).unwrap();
            let b = xi(&w, &ctx).unwrap();
            let rel = (Complex::with_val(256, &a - &b) / &a).abs().real().clone();
            assert!(rel < tol, "z = {z}: {rel}");
        }
    }

    #[test]
    fn removable_singularities_are_guarded() {
        let ctx = PrecisionCtx::new(128).unwrap();
        assert!(matches!(xi(&ctx.complex(0.0, 0.0), &ctx), Err(Error::Domain(_))));
        assert!(matches!(xi(&ctx.complex(1.0, 0.0), &ctx), Err(Error::Domain(_))));
        // just outside the guard the value tends to xi(0) = 1/2
        let z = Complex::with_val(128, (Float::with_val(128, 1) >> 40, 0));
        let v = xi(&z, &ctx).unwrap();
        assert!((v.real().to_f64() - 0.5).abs() < 1e-10);
    }
}
