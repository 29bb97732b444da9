use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use super::real::Real;
use crate::intpoly::IntPoly;

/// An approximate root with a Weierstrass inclusion radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ApproxRoot {
    pub z: Complex64,
    pub radius: f64,
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of a squarefree polynomial by Aberth–Ehrlich iteration
/// in double precision, sorted by (real part, imaginary part).
pub fn aberth(p: &IntPoly) -> Vec<ApproxRoot> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let lead = p.lead().unwrap().to_f64().unwrap();
    let c: Vec<f64> = p.coeffs().iter().map(|x| x.to_f64().unwrap() / lead).collect();
    // Cauchy bound on root moduli
    let bound = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(bound * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (pv, dpv) = horner(&c, z[i]);
            if pv == Complex64::zero() {
                continue;
            }
            let ratio = pv / dpv;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    let mut roots: Vec<ApproxRoot> = (0..n)
        .map(|i| {
            let (pv, _) = horner(&c, z[i]);
            let prod: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            let w = if prod == Complex64::zero() { f64::INFINITY } else { (pv / prod).norm() };
            ApproxRoot { z: z[i], radius: n as f64 * w }
        })
        .collect();
    roots.sort_by(|a, b| a.z.re.total_cmp(&b.z.re).then(a.z.im.total_cmp(&b.z.im)));
    roots
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// A ball at scale `s` around a real root of `p` near `guess`, certified by
/// an exact sign change. `p` should be squarefree. Returns `None` when no
/// sign change is found near the guess.
pub fn refine_real_root(p: &IntPoly, guess: f64, s: u32) -> Option<Real> {
    let w = s + 5;
    let dp = p.derivative();
    let mut x = Real::parse_decimal(&format!("{guess:.17e}")).ok()?.rescale(w).mid().clone();
    // Newton on the integer representation: X ← X − P(X)/Q(X)
    for _ in 0..200 {
        // with U = 10^w: pv = p(x)·U^d and qv = p'(x)·U^(d−1), so the
        // Newton step p/p' measured in units of 1/U is pv/qv
        let pv = p.scaled_eval(&x, w);
        let qv = dp.scaled_eval(&x, w);
        if qv.is_zero() {
            break;
        }
        let step = &pv / &qv;
        if step.is_zero() {
            break;
        }
        x -= step;
    }
    for k in [1u32, 2, 10, 1000] {
        let lo = &x - k;
        let hi = &x + k;
        let (a, b) = (sign(&p.scaled_eval(&lo, w)), sign(&p.scaled_eval(&hi, w)));
        if a == 0 {
            return Some(Real::new(lo, BigInt::zero(), w).rescale(s));
        }
        if b == 0 {
            return Some(Real::new(hi, BigInt::zero(), w).rescale(s));
        }
        if a != b {
            return Some(bisect(p, lo, hi, w).rescale(s));
        }
    }
    None
}

/// Shrink a sign-change bracket at scale w to width ≤ 2 units.
fn bisect(p: &IntPoly, mut lo: BigInt, mut hi: BigInt, w: u32) -> Real {
    let slo = sign(&p.scaled_eval(&lo, w));
    while &hi - &lo > BigInt::from(2) {
        let mid: BigInt = (&lo + &hi) / 2;
        let sm = sign(&p.scaled_eval(&mid, w));
        if sm == 0 {
            return Real::new(mid, BigInt::zero(), w);
        }
        if sm == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid: BigInt = (&lo + &hi) / 2;
    let rad = (&hi - &mid).max(&mid - &lo);
    Real::new(mid, rad, w)
}
