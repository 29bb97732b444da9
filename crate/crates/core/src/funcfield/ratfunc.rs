use std::fmt;

use super::apoly::APoly;
use super::tower::{FFElement, FieldTower};
use crate::error::{Error, Result};

/// An element of k = F_q(T) in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: APoly,
    den: APoly,
}

impl RatFunc {
    pub fn new(num: APoly, den: APoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc { num, den }.normalized())
    }

    pub fn from_poly(num: APoly) -> Self {
        let den = APoly::one(num.tower());
        RatFunc { num, den }
    }

    pub fn zero(tower: &FieldTower) -> Self {
        Self::from_poly(APoly::zero(tower))
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::from_poly(APoly::one(tower))
    }

    pub fn t(tower: &FieldTower) -> Self {
        Self::from_poly(APoly::t(tower))
    }

    pub fn constant(c: FFElement) -> Self {
        Self::from_poly(APoly::constant(c))
    }

    pub fn num(&self) -> &APoly {
        &self.num
    }

    pub fn den(&self) -> &APoly {
        &self.den
    }

    pub fn tower(&self) -> &FieldTower {
        self.num.tower()
    }

    /// Cancel the gcd and make the denominator monic. Idempotent.
    pub fn normalized(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc { num: self.num.clone(), den: APoly::one(self.tower()) };
        }
        let g = self.num.gcd(&self.den);
        let mut num = self.num.divrem(&g).unwrap().0;
        let mut den = self.den.divrem(&g).unwrap().0;
        let l = den.lead().unwrap().inv().unwrap();
        num = num.scale(&l);
        den = den.scale(&l);
        RatFunc { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc { num: self.num.add(&o.num), den: self.den.clone() }.normalized();
        }
        RatFunc {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .normalized()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.normalized()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    /// x^p; the p-power map on k.
    pub fn frobenius_power(&self) -> RatFunc {
        RatFunc { num: self.num.frobenius_power(), den: self.den.frobenius_power() }
    }

    /// Specialise T ↦ `gamma`.
    pub fn specialize(&self, gamma: &FFElement) -> Result<FFElement> {
        let d = self.den.eval(gamma)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.num.eval(gamma)?.div(&d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |s: String| if s.contains('+') { format!("({s})") } else { s };
        write!(f, "{}/{}", wrap(self.num.to_string()), wrap(self.den.to_string()))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
