//! Integral LLL reduction and minimal-polynomial detection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intpoly::IntPoly;
use crate::numeric::{pow10, Complex, Real};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    // nearest integer to n/d for d > 0
    let two = BigInt::from(2);
    (n * &two + d).div_floor(&(d * &two))
}

/// LLL-reduce the rows of `basis` in place with δ = 99/100, using exact
/// integer Gram–Schmidt data. Rows must be linearly independent.
pub fn lll(basis: &mut [Vec<BigInt>]) -> Result<()> {
    let n = basis.len();
    if n <= 1 {
        return Ok(());
    }
    // 1-indexed as in the textbook formulation; d[0] = 1
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    d[1] = dot(&basis[0], &basis[0]);
    let mut k = 2;
    let mut kmax = 1;

    let red = |basis: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &[BigInt], k: usize, l: usize| {
        if BigInt::from(2) * lam[k][l].abs() > d[l] {
            let q = round_div(&lam[k][l], &d[l]);
            let bl = basis[l - 1].clone();
            for (x, y) in basis[k - 1].iter_mut().zip(&bl) {
                *x -= &q * y;
            }
            lam[k][l] = &lam[k][l] - &q * &d[l];
            for i in 1..l {
                lam[k][i] = &lam[k][i] - &q * &lam[l][i];
            }
        }
    };

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&basis[k - 1], &basis[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::Invalid("lattice basis is linearly dependent".into()));
                    }
                    d[k] = u;
                }
            }
        }
        loop {
            red(basis, &mut lam, &d, k, k - 1);
            let lhs = BigInt::from(99) * &d[k - 1] * &d[k - 1];
            let rhs = BigInt::from(100) * (&d[k] * &d[k - 2] + &lam[k][k - 1] * &lam[k][k - 1]);
            if lhs > rhs {
                basis.swap(k - 1, k - 2);
                for j in 1..k - 1 {
                    let t = lam[k][j].clone();
                    lam[k][j] = lam[k - 1][j].clone();
                    lam[k - 1][j] = t;
                }
                let l = lam[k][k - 1].clone();
                let b = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
                for i in k + 1..=kmax {
                    let t = lam[i][k].clone();
                    lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
                    lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k];
                }
                d[k - 1] = b;
                if k > 2 {
                    k -= 1;
                }
            } else {
                for l in (1..k - 1).rev() {
                    red(basis, &mut lam, &d, k, l);
                }
                k += 1;
                break;
            }
        }
    }
    Ok(())
}

/// A candidate minimal polynomial found by [`detect_minpoly`].
#[derive(Clone, Debug, PartialEq)]
pub struct Detection {
    pub poly: IntPoly,
    /// Upper bound on |p(v)| over the input ball.
    pub residual: BigRational,
}

/// Search for an integer polynomial of degree ≤ `degree_bound` and height
/// ≤ `height_bound` vanishing at `v`.
///
/// `v` is a ball known to `precision` decimal digits. Degrees are tried in
/// increasing order; a candidate is returned only when its value on the ball
/// is below 10^(−precision/2) and the ball of p(v) contains zero.
pub fn detect_minpoly(v: &Complex, precision: u32, degree_bound: u32, height_bound: &BigInt) -> Result<Option<Detection>> {
    let need = 10 * degree_bound;
    if precision < need {
        return Err(Error::InsufficientPrecision { got: precision, need });
    }
    let w = precision + 10;
    let c = pow10(precision * 5 / 6);
    let c_real = Real::from_int(c.clone());
    let complex = !v.im.contains_zero() || !v.im.mid().is_zero();
    let mut powers = vec![Complex::real(Real::one())];
    for _ in 0..degree_bound {
        let next = powers.last().unwrap().mul(v, w);
        powers.push(next);
    }
    let tol = BigRational::new(BigInt::one(), pow10(precision / 2));
    for d in 1..=degree_bound as usize {
        let mut basis: Vec<Vec<BigInt>> = (0..=d)
            .map(|i| {
                let mut row = vec![BigInt::zero(); d + 1];
                row[i] = BigInt::one();
                row.push(powers[i].re.mul(&c_real, 0).mid().clone());
                if complex {
                    row.push(powers[i].im.mul(&c_real, 0).mid().clone());
                }
                row
            })
            .collect();
        lll(&mut basis)?;
        for row in basis.iter().take(1) {
            let p = IntPoly::new(row[..=d].to_vec());
            if p.degree().unwrap_or(0) == 0 {
                continue;
            }
            let p = p.primitive();
            if &p.height() > height_bound {
                continue;
            }
            let val = p.eval_complex(v, w);
            let residual = {
                let a = val.re.abs_upper();
                let b = val.im.abs_upper();
                if a > b {
                    a
                } else {
                    b
                }
            };
            if val.re.contains_zero() && val.im.contains_zero() && residual < tol {
                return Ok(Some(Detection { poly: p, residual }));
            }
        }
    }
    Ok(None)
}

/// A decimal string read as a ball of radius 10^(−precision) (plus rounding
/// when the string carries more digits than that).
pub fn decimal_ball(s: &str, precision: u32) -> Result<Real> {
    let x = Real::parse_decimal(s)?;
    Ok(x.rescale(precision).inflate(&BigInt::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn detect(s: &str, deg: u32) -> Option<IntPoly> {
        let v = Complex::real(decimal_ball(s, 60).unwrap());
        detect_minpoly(&v, 60, deg, &BigInt::from(1_000_000)).unwrap().map(|d| d.poly)
    }

    #[test]
    fn lll_reduces_a_textbook_basis() {
        let mut b: Vec<Vec<BigInt>> = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        lll(&mut b).unwrap();
        let norms: Vec<BigInt> = b.iter().map(|r| dot(r, r)).collect();
        assert!(norms[0] <= BigInt::from(3));
    }

    #[test]
    fn sqrt2_and_golden() {
        let sqrt2 = "1.414213562373095048801688724209698078569671875376948073176679";
        assert_eq!(detect(sqrt2, 4).unwrap().to_string(), "x^2 - 2");
        let phi = "1.618033988749894848204586834365638117720309179805762862135448";
        assert_eq!(detect(phi, 4).unwrap().to_string(), "x^2 - x - 1");
        assert_eq!(detect("0.5", 4).unwrap().to_string(), "2*x - 1");
    }

    #[test]
    fn noise_is_rejected() {
        assert_eq!(detect("0.1234567890", 4), None);
        assert_eq!(detect("0.738291046158302947561038274619203847561928374650192837465019", 6), None);
    }

    #[test]
    fn precision_floor() {
        let v = Complex::real(Real::one());
        assert_eq!(
            detect_minpoly(&v, 30, 4, &BigInt::from(10)).unwrap_err(),
            Error::InsufficientPrecision { got: 30, need: 40 }
        );
    }
}
