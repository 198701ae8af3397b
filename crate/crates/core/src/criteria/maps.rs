//! The square-root maps `f_1a`, `f_2a`, the rational function `f_2n` and the
//! nested-root summand of the Voros sums.

use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};
use crate::exact::CoeffTable;
use crate::numerics::PrecisionCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

fn is_zero(z: &Complex) -> bool {
    z.real().is_zero() && z.imag().is_zero()
}

fn shifted(z: &Complex, center: &Float, prec: u32) -> Complex {
    Complex::with_val(prec, z - center)
}

fn half(prec: u32) -> Float {
    Float::with_val(prec, 0.5)
}

/// Principal square root, cut along `(-inf, 0]`. Arguments within
/// `2^-(bits/2)` of the negative real axis are rejected.
pub fn sqrt_cut(z: &Complex, ctx: &PrecisionCtx) -> Result<Complex> {
    let tol = Float::with_val(ctx.working(), 1) >> (ctx.bits() / 2) as i32;
    if *z.real() < 0 && Float::with_val(ctx.working(), z.imag().abs_ref()) < tol {
        return Err(Error::BranchCut(format!("{:.20}", z)));
    }
    Ok(Complex::with_val(ctx.working(), z.sqrt_ref()))
}

/// `(1 +- sqrt(1 + a^2 (z-1/2)^2)) / (a (z-1/2))`.
pub fn f_map(z: &Complex, a: &Rational, branch: Branch, ctx: &PrecisionCtx) -> Result<Complex> {
    f_map_about(z, &half(ctx.working()), a, branch, ctx)
}

/// [`f_map`] recentred at `center` instead of 1/2.
pub fn f_map_about(z: &Complex, center: &Float, a: &Rational, branch: Branch, ctx: &PrecisionCtx) -> Result<Complex> {
    let prec = ctx.working();
    let w = shifted(z, center, prec);
    if is_zero(&w) {
        return Err(Error::Pole(format!("f_map at its centre {center}")));
    }
    let af = Float::with_val(prec, a);
    let aw = Complex::with_val(prec, &w * &af);
    let inner = Complex::with_val(prec, aw.square_ref()) + 1u32;
    let s = sqrt_cut(&inner, ctx)?;
    let num = match branch {
        Branch::Plus => s + 1u32,
        Branch::Minus => 1u32 - s,
    };
    Ok(num / aw)
}

/// Evaluates `f_2n(z) = 2 - 2 sum_k A_k (z-c)^(2k-2n)` and its derivative for
/// one coefficient table.
#[derive(Clone, Debug)]
pub struct F2n {
    n: usize,
    prec: u32,
    a: Vec<Float>,
    f: Vec<Float>,
}

impl F2n {
    pub fn new(table: &CoeffTable, prec: u32) -> Self {
        F2n {
            n: table.n(),
            prec,
            a: table.a_coeffs().iter().map(|r| Float::with_val(prec, r)).collect(),
            f: table.f_coeffs().iter().map(|r| Float::with_val(prec, r)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// `sum_k A_k u^(n-k)` by Horner's rule in `u = w^-2`.
    fn poly_inv(&self, u: &Complex) -> Complex {
        let mut acc = Complex::with_val(self.prec, (&self.a[0], 0));
        for c in &self.a[1..] {
            acc *= u;
            acc += c;
        }
        acc
    }

    /// `f_2n(c + w)`.
    pub fn at_offset(&self, w: &Complex) -> Result<Complex> {
        if is_zero(w) {
            return Err(Error::Pole("f_2n at its centre".into()));
        }
        let u = Complex::with_val(self.prec, w.square_ref()).recip();
        let p = self.poly_inv(&u);
        Ok(2u32 - p * 2u32)
    }

    /// `f_2n(z)` about 1/2.
    pub fn at(&self, z: &Complex) -> Result<Complex> {
        self.at_offset(&shifted(z, &half(self.prec), self.prec))
    }

    /// `f_2n(1/2 + i t)`, which is real: `2 - 2 sum_k A_k (-t^2)^(k-n)`.
    /// Also returns `sum_k A_k t^(2k-2n)`, the magnitude scale for rounding.
    pub fn on_line(&self, t: &Float) -> (Float, Float) {
        let t2 = Float::with_val(self.prec, t.square_ref());
        let v = t2.recip();
        let u = Float::with_val(self.prec, -&v);
        let mut acc = self.a[0].clone();
        let mut mag = self.a[0].clone();
        for c in &self.a[1..] {
            acc *= &u;
            acc += c;
            mag *= &v;
            mag += c;
        }
        (2u32 - acc * 2u32, mag)
    }

    /// Magnitude scale `sum_k |A_k| |w|^(2k-2n)` at an arbitrary offset.
    pub fn magnitude(&self, w: &Complex) -> Float {
        let r2 = Float::with_val(self.prec, w.norm_ref()).recip();
        let mut mag = self.a[0].clone();
        for c in &self.a[1..] {
            mag *= &r2;
            mag += c;
        }
        mag
    }

    /// `f'_2n(z) = sum_{k<n} F_k (z-1/2)^(2k-2n-1)`.
    pub fn deriv(&self, z: &Complex) -> Result<Complex> {
        let w = shifted(z, &half(self.prec), self.prec);
        if is_zero(&w) {
            return Err(Error::Pole("f'_2n at 1/2".into()));
        }
        let u = Complex::with_val(self.prec, w.square_ref()).recip();
        let mut acc = Complex::with_val(self.prec, (&self.f[0], 0));
        for c in &self.f[1..] {
            acc *= &u;
            acc += c;
        }
        // acc = sum_k F_k u^(n-1-k); one more factor u/w gives w^(2k-2n-1)
        Ok(acc * u / w)
    }
}

/// `f_2n(z)` for parameter `a`, via the exact coefficient table.
pub fn f2n_eval(z: &Complex, n: usize, a: &Rational, ctx: &PrecisionCtx) -> Result<Complex> {
    let table = CoeffTable::build_unrestricted(n, a)?;
    F2n::new(&table, ctx.working()).at(z)
}

/// `f'_2n(z)`.
pub fn f2n_prime(z: &Complex, n: usize, a: &Rational, ctx: &PrecisionCtx) -> Result<Complex> {
    let table = CoeffTable::build_unrestricted(n, a)?;
    F2n::new(&table, ctx.working()).deriv(z)
}

/// The Voros summand for one zero, from its nested square roots:
/// `2 - B_-^-n - B_+^-n` with `B_+- = 1 + 1/(2w^2) +- sqrt(1 + 1/(4w^2)) / w`.
pub fn voros_term(z: &Complex, n: usize, ctx: &PrecisionCtx) -> Result<Complex> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let prec = ctx.working();
    let w = shifted(z, &half(prec), prec);
    if is_zero(&w) {
        return Err(Error::Pole("Voros term at 1/2".into()));
    }
    let inv_w = Complex::with_val(prec, w.recip_ref());
    let inv_w2 = Complex::with_val(prec, inv_w.square_ref());
    let root = sqrt_cut(&(Complex::with_val(prec, &inv_w2 / 4u32) + 1u32), ctx)?;
    let base = Complex::with_val(prec, &inv_w2 / 2u32) + 1u32;
    let lean = Complex::with_val(prec, &root * &inv_w);
    let minus = Complex::with_val(prec, &base - &lean);
    let plus = base + lean;
    let mut out = Complex::with_val(prec, 2);
    for b in [minus, plus] {
        if is_zero(&b) {
            return Err(Error::Pole("Voros base vanished".into()));
        }
        out -= b.pow(n as u32).recip();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(256).unwrap()
    }

    fn tol(bits: i32) -> Float {
        Float::with_val(256, 1) >> bits
    }

    fn dist(a: &Complex, b: &Complex) -> Float {
        Complex::with_val(300, a - b).abs().real().clone()
    }

    #[test]
    fn sqrt_cut_examples() {
        let c = ctx();
        let r = sqrt_cut(&c.complex(4.0, 0.0), &c).unwrap();
        assert!(dist(&r, &c.complex(2.0, 0.0)) < tol(250));
        let r = sqrt_cut(&c.complex(0.0, 2.0), &c).unwrap();
        assert!(dist(&r, &c.complex(1.0, 1.0)) < tol(250));
        assert!(matches!(sqrt_cut(&c.complex(-3.0, 0.0), &c), Err(Error::BranchCut(_))));
    }

    #[test]
    fn f2n_collapses_at_n_one() {
        // f_2 = -4 / (a^2 w^2); at w = i, a = 2 this is 1
        let c = ctx();
        let z = c.complex(0.5, 1.0);
        let v = f2n_eval(&z, 1, &Rational::from(2), &c).unwrap();
        assert!(dist(&v, &c.complex(1.0, 0.0)) < tol(250));
        let z = c.complex(1.3, -0.7);
        let v = f2n_eval(&z, 1, &Rational::from(3), &c).unwrap();
        let w = c.complex(0.8, -0.7);
        let want = Complex::with_val(300, w.square_ref()) * 9u32;
        let want = Complex::with_val(300, -4) / want;
        assert!(dist(&v, &want) < tol(248));
    }

    #[test]
    fn f2n_is_even_about_half() {
        let c = ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let z = c.complex(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let zr = Complex::with_val(256, 1u32 - z.clone());
            for n in [1, 2, 5] {
                let a = Rational::from((5, 2));
                let l = f2n_eval(&z, n, &a, &c).unwrap();
                let r = f2n_eval(&zr, n, &a, &c).unwrap();
                let scale = Complex::with_val(300, l.abs_ref())
                    .real()
                    .clone()
                    .max(&Float::with_val(300, 1));
                assert!(dist(&l, &r) / scale < tol(240));
            }
        }
    }

    #[test]
    fn on_line_form_matches_complex_form() {
        let c = ctx();
        let table = CoeffTable::build(4, &Rational::from(2)).unwrap();
        let e = F2n::new(&table, c.working());
        for t in [14.134725142, 21.0, 1000.5] {
            let (real, _) = e.on_line(&Float::with_val(288, t));
            let cz = e.at(&c.complex(0.5, t)).unwrap();
            assert!(Float::with_val(300, cz.real() - &real).abs() < tol(240));
            assert!(Float::with_val(300, cz.imag().abs_ref()) < tol(240));
        }
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let c = ctx();
        let a = Rational::from(2);
        let z = c.complex(1.1, 2.3);
        let h = Float::with_val(288, 1) >> 60;
        let zp = Complex::with_val(288, &z + &h);
        let zm = Complex::with_val(288, &z - &h);
        let fd = (f2n_eval(&zp, 3, &a, &c).unwrap() - f2n_eval(&zm, 3, &a, &c).unwrap()) / (h * 2u32);
        let d = f2n_prime(&z, 3, &a, &c).unwrap();
        assert!(dist(&fd, &d) < tol(100));
    }

    #[test]
    fn voros_example() {
        let c = ctx();
        let v = voros_term(&c.complex(0.5, 1.0), 1, &c).unwrap();
        assert!(dist(&v, &c.complex(1.0, 0.0)) < tol(248));
        let z = c.complex(0.9, 3.3);
        let zc = c.complex(0.9, -3.3);
        let l = voros_term(&z, 3, &c).unwrap();
        let r = voros_term(&zc, 3, &c).unwrap();
        assert!(dist(&Complex::with_val(256, l.conj_ref()), &r) < tol(248));
    }

    #[test]
    fn map_branches_multiply_to_minus_one() {
        let c = ctx();
        let a = Rational::from(2);
        // 1 + a^2 (z-1/2)^2 = -3 on the line itself, so step just off it
        let z = c.complex(0.5 + 1e-9, 1.0);
        let p = f_map(&z, &a, Branch::Plus, &c).unwrap();
        let m = f_map(&z, &a, Branch::Minus, &c).unwrap();
        assert!(dist(&(Complex::with_val(288, &p * &m)), &c.complex(-1.0, 0.0)) < tol(248));
        assert!(Complex::with_val(64, p.abs_ref()).real().to_f64() >= 1.0);
        assert!(Complex::with_val(64, m.abs_ref()).real().to_f64() <= 1.0);
        assert!(matches!(
            f_map(&c.complex(0.5, 0.0), &a, Branch::Plus, &c),
            Err(Error::Pole(_))
        ));
        assert!(matches!(
            f_map(&c.complex(0.5, 1.0), &a, Branch::Plus, &c),
            Err(Error::BranchCut(_))
        ));
    }
}
