//! Dense univariate polynomials over Z.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cluster::MPoly;
use crate::numeric::{Complex, Real};

/// Σ c_i x^i with integer coefficients, trailing zeros stripped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        IntPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * i).collect())
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by its content, with positive leading coefficient.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().unwrap().is_negative() {
            g = -g;
        }
        IntPoly(self.0.iter().map(|c| c / &g).collect())
    }

    fn to_mpoly(&self) -> MPoly {
        MPoly::from_terms(1, self.0.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())))
    }

    fn from_mpoly(p: &MPoly) -> IntPoly {
        let d = p.degree_in(0).unwrap_or(0) as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for (e, v) in p.terms() {
            c[e[0] as usize] = v.clone();
        }
        IntPoly::new(c)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        IntPoly::from_mpoly(&self.to_mpoly().gcd(&o.to_mpoly()))
    }

    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        self.to_mpoly().exact_div(&d.to_mpoly()).map(|q| IntPoly::from_mpoly(&q))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// p / gcd(p, p'), primitive.
    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        self.primitive().exact_div(&g).expect("gcd divides").primitive()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// 10^(w·deg) · p(X / 10^w), an exact integer with the sign of p there.
    pub fn scaled_eval(&self, x: &BigInt, w: u32) -> BigInt {
        let u = crate::numeric::pow10(w);
        let mut acc = BigInt::zero();
        let mut upow = BigInt::one();
        // Horner on the homogenised form Σ c_i X^i U^(d−i)
        for c in self.0.iter().rev() {
            acc = acc * x + c * &upow;
            upow *= &u;
        }
        acc
    }

    pub fn eval_real(&self, x: &Real, s: u32) -> Real {
        self.0.iter().rev().fold(Real::zero(), |acc, c| acc.mul(x, s).add(&Real::from_int(c.clone())))
    }

    pub fn eval_complex(&self, z: &Complex, s: u32) -> Complex {
        self.0.iter().rev().fold(Complex::real(Real::zero()), |acc, c| {
            acc.mul(z, s).add(&Complex::real(Real::from_int(c.clone())))
        })
    }

    /// Height: the largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntPoly {
    /// `x^2 - x - 1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
