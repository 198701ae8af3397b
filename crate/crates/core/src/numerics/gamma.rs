//! Complex Gamma function by Stirling's series with upward shift.

use std::sync::{Mutex, OnceLock};

use rug::{Complex, Float, Integer, Rational};

use super::{abs_f64, ensure_finite, pi};
use crate::error::{Error, Result};

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_2n` from the tangent numbers
/// (Brent-Harvey recurrence, integers only).
fn bernoulli_even(n: usize) -> Vec<Rational> {
    let mut t: Vec<Integer> = vec![Integer::new(); n + 1];
    if n == 0 {
        return Vec::new();
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let v = Integer::from(&t[j - 1] * (j - k) as u64) + Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = v;
        }
    }
    (1..=n)
        .map(|k| {
            let four_k = Integer::from(1) << (2 * k as u32);
            let den: Integer = &four_k * (&four_k - Integer::from(1));
            let num = Integer::from(&t[k] * (2 * k as u64));
            let b = Rational::from((num, den));
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Bernoulli number `B_m` (with `B_1 = -1/2`).
pub fn bernoulli(m: usize) -> Rational {
    match m {
        0 => return Rational::from(1),
        1 => return Rational::from((-1, 2)),
        _ if m % 2 == 1 => return Rational::new(),
        _ => {}
    }
    let k = m / 2;
    even_bernoulli_upto(k)[k - 1].clone()
}

fn even_bernoulli_upto(k: usize) -> Vec<Rational> {
    let mut cache = bernoulli_cache().lock().expect("bernoulli cache poisoned");
    if cache.len() < k {
        let target = k.max(2 * cache.len()).max(64);
        *cache = bernoulli_even(target);
    }
    cache[..k].to_vec()
}

fn check_pole(w: &Complex, prec: u32) -> Result<()> {
    let re = w.real().to_f64();
    if re > 0.5 {
        return Ok(());
    }
    let nearest = re.round();
    let tol = Float::with_val(prec, 1) >> (prec / 2) as i32;
    let d = Complex::with_val(prec, w - nearest).abs().real().clone();
    if d < tol {
        return Err(Error::Pole(format!("Gamma at {nearest}")));
    }
    Ok(())
}

/// `ln Gamma(u)` by Stirling's series; assumes `Re u` is large enough that the
/// series reaches `2^-prec` before its terms start to grow.
fn stirling(u: &Complex, prec: u32) -> Complex {
    let half_ln_2pi = Float::with_val(prec, pi(prec) * 2u32).ln() / 2u32;
    let ln_u = Complex::with_val(prec, u.ln_ref());
    let mut sum = Complex::with_val(prec, u - 0.5f64) * &ln_u - u + half_ln_2pi;

    let inv = Complex::with_val(prec, u.recip_ref());
    let inv_sq = Complex::with_val(prec, inv.square_ref());
    let mut power = inv;
    let cap = (std::f64::consts::PI * abs_f64(u)).floor() as usize;
    let tol = Float::with_val(prec, 1) >> (prec as i32 + 4);
    let mut bs = even_bernoulli_upto(cap.clamp(1, 64));
    for k in 1..=cap {
        if k > bs.len() {
            bs = even_bernoulli_upto((2 * bs.len()).min(cap));
        }
        let c = Float::with_val(prec, &bs[k - 1]) / ((2 * k * (2 * k - 1)) as u64);
        let term = Complex::with_val(prec, &power * &c);
        sum += &term;
        if Float::with_val(prec, term.abs_ref()) < tol {
            break;
        }
        power *= &inv_sq;
    }
    sum
}

fn shift_for(w: &Complex, prec: u32) -> u64 {
    let x = 0.12 * prec as f64 + 10.0;
    let re = w.real().to_f64();
    if re >= x {
        0
    } else {
        (x - re).ceil() as u64
    }
}

/// Principal `ln Gamma(w)` for `Re w > 0`.
pub fn ln_gamma(w: &Complex, prec: u32) -> Result<Complex> {
    ensure_finite(w, "Gamma argument")?;
    if *w.real() <= 0 {
        return Err(Error::domain("ln_gamma needs Re w > 0"));
    }
    let shift = shift_for(w, prec);
    let wp = prec + 16 + 64 - (shift.max(1)).leading_zeros();
    let w = Complex::with_val(wp, w);
    let u = Complex::with_val(wp, &w + shift);
    let mut lg = stirling(&u, wp);
    for j in 0..shift {
        lg -= Complex::with_val(wp, &w + j).ln();
    }
    ensure_finite(&lg, "ln Gamma")?;
    Ok(Complex::with_val(prec, lg))
}

/// `Gamma(w)` for any `w` away from the poles `0, -1, -2, ...`.
pub fn gamma(w: &Complex, prec: u32) -> Result<Complex> {
    ensure_finite(w, "Gamma argument")?;
    check_pole(w, prec)?;
    let shift = shift_for(w, prec);
    let wp = prec + 16 + 64 - (shift.max(1)).leading_zeros();
    let w = Complex::with_val(wp, w);
    let u = Complex::with_val(wp, &w + shift);
    let g = stirling(&u, wp).exp();
    let mut prod = Complex::with_val(wp, 1);
    for j in 0..shift {
        prod *= Complex::with_val(wp, &w + j);
    }
    let out = Complex::with_val(prec, g / prod);
    ensure_finite(&out, "Gamma")?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64, prec: u32) -> Complex {
        Complex::with_val(prec, (re, im))
    }

    #[test]
    fn bernoulli_numbers_match_known_values() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(6), Rational::from((1, 42)));
        assert_eq!(bernoulli(8), Rational::from((-1, 30)));
        assert_eq!(bernoulli(10), Rational::from((5, 66)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(7), 0);
    }

    #[test]
    fn gamma_matches_mpfr_on_the_real_axis() {
        let prec = 300;
        for x in [0.25, 0.5, 1.0, 3.5, 7.25, 40.0] {
            let g = gamma(&c(x, 0.0, prec), prec).unwrap();
            let reference = Float::with_val(prec, x).gamma();
            let rel = (Float::with_val(prec, g.real() - &reference) / &reference).abs();
            assert!(rel < Float::with_val(prec, 1) >> 290, "x = {x}: {rel}");
        }
    }

    #[test]
    fn gamma_of_negative_half() {
        // Gamma(-1/2) = -2 sqrt(pi)
        let prec = 256;
        let g = gamma(&c(-0.5, 0.0, prec), prec).unwrap();
        let expected = -Float::with_val(prec, pi(prec).sqrt()) * 2u32;
        let err = Float::with_val(prec, g.real() - expected).abs();
        assert!(err < Float::with_val(prec, 1) >> 245);
        assert!(matches!(gamma(&c(-3.0, 0.0, prec), prec), Err(Error::Pole(_))));
    }

    #[test]
    fn reflection_and_recurrence_off_axis() {
        let prec = 256;
        let tol = Float::with_val(prec, 1) >> 240;
        let z = c(0.3, 4.7, prec);
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let one_minus = Complex::with_val(prec, 1 - z.clone());
        let lhs = gamma(&z, prec).unwrap() * gamma(&one_minus, prec).unwrap();
        let rhs = Complex::with_val(prec, pi(prec)) / Complex::with_val(prec, &z * pi(prec)).sin();
        let rel = (Complex::with_val(prec, &lhs - &rhs) / &rhs).abs().real().clone();
        assert!(rel < tol, "{rel}");
        // ln Gamma(z+1) = ln Gamma(z) + ln z for Re z > 0
        let zp1 = Complex::with_val(prec, &z + 1u32);
        let d = ln_gamma(&zp1, prec).unwrap() - ln_gamma(&z, prec).unwrap() - Complex::with_val(prec, z.ln_ref());
        assert!(d.abs().real() < &tol);
    }
}
