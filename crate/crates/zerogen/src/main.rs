//! Fixture generator for ordinate tables of the nontrivial zeta zeros.
//!
//! Evaluates Hardy's Z(t) with the Riemann-Siegel formula (corrections C0..C4)
//! in f64, brackets zeros by Gram blocks and checks every block against
//! Rosser's rule, so a missing zero aborts the run instead of shifting the
//! index of every later ordinate. Rosser's rule holds far beyond the heights
//! this tool is meant for (t < 10^6).

mod rs_coeffs;

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Parser;

#[derive(Parser)]
#[command(about = "Write zeta-zero ordinates up to a height, one per line")]
struct Args {
    /// Largest ordinate to emit.
    #[arg(long, default_value_t = 150_000.0)]
    t_max: f64,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
    /// Decimal digits after the point.
    #[arg(long, default_value_t = 9)]
    decimals: usize,
}

fn theta(t: f64) -> f64 {
    let t2 = t * t;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
        + 127.0 / (430080.0 * t * t2 * t2 * t2)
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

struct Hardy {
    ln_n: Vec<f64>,
    inv_sqrt_n: Vec<f64>,
}

impl Hardy {
    fn new(t_max: f64) -> Self {
        let n_max = (t_max / (2.0 * PI)).sqrt() as usize + 2;
        Hardy {
            ln_n: (0..=n_max).map(|n| (n.max(1) as f64).ln()).collect(),
            inv_sqrt_n: (0..=n_max).map(|n| 1.0 / (n.max(1) as f64).sqrt()).collect(),
        }
    }

    fn z(&self, t: f64) -> f64 {
        let a = (t / (2.0 * PI)).sqrt();
        let n = a.floor() as usize;
        let x = a - n as f64 - 0.5;
        let th = theta(t);
        let mut sum = 0.0;
        for k in 1..=n {
            sum += (th - t * self.ln_n[k]).cos() * self.inv_sqrt_n[k];
        }
        let inv_a = 1.0 / a;
        let corr = horner(&rs_coeffs::C0, x)
            + inv_a
                * (horner(&rs_coeffs::C1, x)
                    + inv_a
                        * (horner(&rs_coeffs::C2, x)
                            + inv_a * (horner(&rs_coeffs::C3, x) + inv_a * horner(&rs_coeffs::C4, x))));
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        2.0 * sum + sign * corr / a.sqrt()
    }
}

/// Solves theta(g) = j*pi by Newton iteration from `guess`.
fn gram_point(j: i64, guess: f64) -> f64 {
    let target = j as f64 * PI;
    let mut g = guess;
    for _ in 0..50 {
        let step = (theta(g) - target) / (0.5 * (g / (2.0 * PI)).ln());
        g -= step;
        if step.abs() < 1e-13 * g {
            break;
        }
    }
    g
}

/// Illinois regula falsi on a bracket with a sign change.
fn refine(h: &Hardy, mut lo: f64, mut hi: f64, mut zlo: f64, mut zhi: f64) -> f64 {
    let mut side = 0;
    for _ in 0..200 {
        let mid = (lo * zhi - hi * zlo) / (zhi - zlo);
        let zm = h.z(mid);
        if zm == 0.0 || (hi - lo) < 1e-12 * hi {
            return mid;
        }
        if (zm > 0.0) == (zlo > 0.0) {
            lo = mid;
            zlo = zm;
            if side == -1 {
                zhi /= 2.0;
            }
            side = -1;
        } else {
            hi = mid;
            zhi = zm;
            if side == 1 {
                zlo /= 2.0;
            }
            side = 1;
        }
    }
    0.5 * (lo + hi)
}

/// Sign-change brackets in [lo, hi] using `pieces` equal subintervals.
fn brackets(h: &Hardy, lo: f64, hi: f64, zlo: f64, zhi: f64, pieces: usize) -> Vec<(f64, f64, f64, f64)> {
    let mut out = Vec::new();
    let mut prev = (lo, zlo);
    for i in 1..=pieces {
        let t = if i == pieces {
            hi
        } else {
            lo + (hi - lo) * i as f64 / pieces as f64
        };
        let zt = if i == pieces { zhi } else { h.z(t) };
        if (prev.1 > 0.0) != (zt > 0.0) {
            out.push((prev.0, t, prev.1, zt));
        }
        prev = (t, zt);
    }
    out
}

fn main() -> Result<()> {
    let args = Args::parse();
    let h = Hardy::new(args.t_max * 1.01);
    let file = File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "# Ordinates t_k of the nontrivial zeros of zeta(s), ascending.")?;
    writeln!(
        w,
        "# Riemann-Siegel Z(t) with corrections C0..C4, Gram blocks checked by Rosser's rule."
    )?;

    // Gram points g_j for j >= -1; g_{-1} ~ 9.667 precedes the first zero.
    let mut j: i64 = -1;
    let mut g = gram_point(j, 9.6);
    let mut zg = h.z(g);
    let mut block: Vec<(f64, f64)> = vec![(g, zg)];
    let mut emitted = 0usize;
    let mut last = 0.0f64;
    'outer: loop {
        j += 1;
        g = gram_point(j, g + PI / (0.5 * (g / (2.0 * PI)).ln()));
        zg = h.z(g);
        block.push((g, zg));
        let good = if j % 2 == 0 { zg > 0.0 } else { zg < 0.0 };
        if !good {
            continue;
        }
        let expected = block.len() - 1;
        let mut found = Vec::new();
        let mut pieces = 4;
        while pieces <= 1 << 14 {
            found.clear();
            for w in block.windows(2) {
                found.extend(brackets(&h, w[0].0, w[1].0, w[0].1, w[1].1, pieces));
            }
            if found.len() >= expected {
                break;
            }
            pieces *= 2;
        }
        if found.len() != expected {
            bail!(
                "Gram block [{}, {}] holds {} sign changes, expected {}",
                block[0].0,
                block[block.len() - 1].0,
                found.len(),
                expected
            );
        }
        for &(lo, hi, zlo, zhi) in &found {
            let t = refine(&h, lo, hi, zlo, zhi);
            if t > args.t_max {
                break 'outer;
            }
            if t <= last {
                bail!("non-ascending ordinate {t} after {last}");
            }
            writeln!(w, "{:.*}", args.decimals, t)?;
            last = t;
            emitted += 1;
        }
        block.clear();
        block.push((g, zg));
    }
    w.flush()?;
    eprintln!("wrote {emitted} ordinates up to {last}");
    Ok(())
}
