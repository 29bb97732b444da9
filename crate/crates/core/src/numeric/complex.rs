use std::fmt;

use num_rational::BigRational;

use super::real::Real;
use crate::error::Result;

/// A rectangular complex ball.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn real(re: Real) -> Self {
        Complex { re, im: Real::zero() }
    }

    pub fn add(&self, o: &Complex) -> Complex {
        Complex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &Complex) -> Complex {
        Complex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    pub fn scale(&self, k: &Real, s: u32) -> Complex {
        Complex::new(self.re.mul(k, s), self.im.mul(k, s))
    }

    pub fn mul(&self, o: &Complex, s: u32) -> Complex {
        let re = self.re.mul(&o.re, s).sub(&self.im.mul(&o.im, s));
        let im = self.re.mul(&o.im, s).add(&self.im.mul(&o.re, s));
        Complex::new(re, im)
    }

    pub fn div(&self, o: &Complex, s: u32) -> Result<Complex> {
        let w = s + 10;
        let den = o.re.square(w).add(&o.im.square(w));
        let re = self.re.mul(&o.re, w).add(&self.im.mul(&o.im, w));
        let im = self.im.mul(&o.re, w).sub(&self.re.mul(&o.im, w));
        Ok(Complex::new(re.div(&den, s)?, im.div(&den, s)?))
    }

    /// e^(2πi·α).
    pub fn unit(alpha: &Real, s: u32) -> Complex {
        let w = s + 5;
        let theta = Real::pi(w + 5).mul_int(&2.into()).mul(alpha, w);
        let (sn, cs) = theta.sin_cos(s);
        Complex::new(cs, sn)
    }

    pub fn exp(&self, s: u32) -> Complex {
        let w = s + 5;
        let m = self.re.exp(w);
        let (sn, cs) = self.im.sin_cos(w);
        Complex::new(m.mul(&cs, s), m.mul(&sn, s))
    }

    /// Upper bound on the distance to `o` in the max norm.
    pub fn dist_upper(&self, o: &Complex) -> BigRational {
        let a = self.re.dist_upper(&o.re);
        let b = self.im.dist_upper(&o.im);
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn overlaps(&self, o: &Complex) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn rescale(&self, s: u32) -> Complex {
        Complex::new(self.re.rescale(s), self.im.rescale(s))
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
