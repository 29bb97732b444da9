use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::{render_terms, MPoly};
use crate::error::{Error, Result};

/// A reduced fraction of integer polynomials in the initial cluster
/// variables: gcd(num, den) = 1 and the leading coefficient of den is positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFn {
    num: MPoly,
    den: MPoly,
}

/// A Laurent polynomial: exponent vector (possibly negative) → coefficient.
pub type Laurent = BTreeMap<Vec<i64>, BigInt>;

impl RatFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: MPoly) -> Self {
        let n = p.nvars();
        RatFn { num: p, den: MPoly::one(n) }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::from_poly(MPoly::var(n, i))
    }

    pub fn constant(n: usize, c: BigInt) -> Self {
        Self::from_poly(MPoly::constant(n, c))
    }

    pub fn one(n: usize) -> Self {
        Self::from_poly(MPoly::one(n))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFn { num, den: MPoly::one(n) };
        }
        let (num, den) = if let Some(q) = num.exact_div(&den) {
            (q, MPoly::one(n))
        } else {
            let g = num.gcd(&den);
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        if den.lead().is_some_and(|(_, c)| c.is_negative()) {
            RatFn { num: num.neg(), den: den.neg() }
        } else {
            RatFn { num, den }
        }
    }

    pub fn add(&self, o: &RatFn) -> RatFn {
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        Self::reduce(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFn) -> RatFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RatFn) -> RatFn {
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn inv(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: u32) -> RatFn {
        RatFn { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// (Σ + Π) / x where the caller expects x to divide the numerator; falls
    /// back to a full gcd reduction when it does not.
    pub(crate) fn exchange(p: &RatFn, q: &RatFn, x: &RatFn) -> Result<RatFn> {
        let s = p.num.mul(&q.den).add(&q.num.mul(&p.den)).mul(&x.den);
        let d = p.den.mul(&q.den);
        if x.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match s.exact_div(&x.num) {
            Some(num) => Ok(Self::reduce(num, d)),
            None => RatFn::new(s, d.mul(&x.num)),
        }
    }

    /// Laurent expansion when the denominator is a monomial with unit
    /// coefficient.
    pub fn laurent(&self) -> Option<Laurent> {
        if !self.den.is_monomial() {
            return None;
        }
        let (de, dc) = self.den.lead()?;
        if !dc.is_one() {
            return None;
        }
        Some(
            self.num
                .terms()
                .iter()
                .map(|(e, c)| (e.iter().zip(de).map(|(a, b)| *a as i64 - *b as i64).collect(), c.clone()))
                .collect(),
        )
    }

    /// Build from a Laurent polynomial in `n` variables.
    pub fn from_laurent(n: usize, l: &Laurent) -> RatFn {
        let mut shift = vec![0i64; n];
        for e in l.keys() {
            for (s, &k) in shift.iter_mut().zip(e) {
                *s = (*s).min(k);
            }
        }
        let num = MPoly::from_terms(
            n,
            l.iter().map(|(e, c)| (e.iter().zip(&shift).map(|(a, s)| (a - s) as u32).collect(), c.clone())),
        );
        let den = MPoly::monomial(shift.iter().map(|s| (-s) as u32).collect(), BigInt::one());
        Self::reduce(num, den)
    }
}

/// Render a Laurent polynomial such as `x1^-1 + x1^-1*x2`.
pub fn render_laurent(l: &Laurent) -> String {
    render_terms(l.iter().map(|(e, c)| (e.clone(), c.clone())).collect())
}

/// Whether every coefficient is divisible by p.
pub fn congruent_zero(l: &Laurent, p: &BigInt) -> bool {
    l.values().all(|c| c.is_multiple_of(p))
}

/// Sum of two Laurent polynomials.
pub fn laurent_add(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MPoly| {
            let s = p.to_string();
            if p.terms().len() > 1 || (p.terms().len() == 1 && s.contains('*')) {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factors() {
        let x1 = RatFn::var(2, 0);
        let x2 = RatFn::var(2, 1);
        let one = RatFn::one(2);
        let a = x1.add(&one).mul(&x2.add(&one));
        let r = a.div(&x1.add(&one).mul(&x2)).unwrap();
        assert_eq!(r, x2.add(&one).div(&x2).unwrap());
        assert_eq!(r.to_string(), "(1 + x2)/x2");
    }

    #[test]
    fn laurent_round_trip() {
        let x1 = RatFn::var(2, 0);
        let x2 = RatFn::var(2, 1);
        let f = RatFn::one(2).add(&x2).div(&x1).unwrap();
        let l = f.laurent().unwrap();
        assert_eq!(l, Laurent::from([(vec![-1, 0], 1.into()), (vec![-1, 1], 1.into())]));
        assert_eq!(RatFn::from_laurent(2, &l), f);
        assert_eq!(render_laurent(&l), "x1^-1 + x1^-1*x2");
        assert!(RatFn::one(2).div(&x1.add(&x2)).unwrap().laurent().is_none());
    }

    #[test]
    fn congruence_examples() {
        let l = Laurent::from([(vec![-1, 0], 2.into()), (vec![0, 1], 4.into())]);
        assert!(congruent_zero(&l, &2.into()));
        assert!(!congruent_zero(&Laurent::from([(vec![1, 0], 3.into())]), &2.into()));
        let l = Laurent::from([(vec![0, 0], 3.into()), (vec![-1, 1], 6.into())]);
        assert!(congruent_zero(&l, &3.into()));
    }
}
