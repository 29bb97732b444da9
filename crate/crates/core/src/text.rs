//! Ring adapters for the expression grammar in [`crate::parse`].
//!
//! Symbols: `g` is the chosen field generator, `T` the polynomial variable
//! of A, `t` the Frobenius twist τ_p, `x` the variable of an ordinary
//! polynomial and `x1`, `x2`, … the cluster variables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cluster::RatFn;
use crate::error::{Error, Result};
use crate::funcfield::{APoly, FFElement, FieldTower, RatFunc, UPoly};
use crate::intpoly::IntPoly;
use crate::ore::{Coeff, OrePoly};
use crate::parse::{parse_in, Ring};

fn residue(n: &BigInt, p: u64) -> i64 {
    n.mod_floor(&BigInt::from(p)).to_i64().expect("residue fits")
}

/// Elements of F_{q^m}; `g` is the generator of that level.
pub struct FieldRing {
    pub tower: FieldTower,
    pub level: u32,
}

impl Ring for FieldRing {
    type Elem = FFElement;
    fn from_int(&self, n: &BigInt) -> Result<FFElement> {
        Ok(self.tower.from_int(self.level, residue(n, self.tower.p())))
    }
    fn var(&self, name: &str) -> Option<FFElement> {
        (name == "g").then(|| self.tower.generator(self.level))
    }
    fn add(&self, a: &FFElement, b: &FFElement) -> Result<FFElement> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &FFElement, b: &FFElement) -> Result<FFElement> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &FFElement, b: &FFElement) -> Result<FFElement> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &FFElement) -> Result<FFElement> {
        Ok(a.neg())
    }
    fn div(&self, a: &FFElement, b: &FFElement) -> Option<Result<FFElement>> {
        Some(a.div(b))
    }
}

/// A = F_q[T]; `g` generates F_q.
pub struct APolyRing {
    pub tower: FieldTower,
}

impl Ring for APolyRing {
    type Elem = APoly;
    fn from_int(&self, n: &BigInt) -> Result<APoly> {
        Ok(APoly::constant(self.tower.from_int(1, residue(n, self.tower.p()))))
    }
    fn var(&self, name: &str) -> Option<APoly> {
        match name {
            "T" => Some(APoly::t(&self.tower)),
            "g" => Some(APoly::constant(self.tower.gen())),
            _ => None,
        }
    }
    fn add(&self, a: &APoly, b: &APoly) -> Result<APoly> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &APoly, b: &APoly) -> Result<APoly> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &APoly, b: &APoly) -> Result<APoly> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &APoly) -> Result<APoly> {
        Ok(a.neg())
    }
}

/// k = F_q(T).
pub struct RatFuncRing {
    pub tower: FieldTower,
}

impl Ring for RatFuncRing {
    type Elem = RatFunc;
    fn from_int(&self, n: &BigInt) -> Result<RatFunc> {
        Ok(RatFunc::constant(self.tower.from_int(1, residue(n, self.tower.p()))))
    }
    fn var(&self, name: &str) -> Option<RatFunc> {
        APolyRing { tower: self.tower.clone() }.var(name).map(RatFunc::from_poly)
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &RatFunc) -> Result<RatFunc> {
        Ok(a.neg())
    }
    fn div(&self, a: &RatFunc, b: &RatFunc) -> Option<Result<RatFunc>> {
        Some(a.div(b))
    }
}

/// Twisted polynomials over a coefficient ring; `t` is τ_p.
pub struct OreRing<R: Ring>
where
    R::Elem: Coeff,
{
    pub base: R,
    pub ctx: <R::Elem as Coeff>::Ctx,
}

impl<R> Ring for OreRing<R>
where
    R: Ring,
    R::Elem: Coeff,
{
    type Elem = OrePoly<R::Elem>;
    fn from_int(&self, n: &BigInt) -> Result<Self::Elem> {
        Ok(OrePoly::constant(self.base.from_int(n)?))
    }
    fn var(&self, name: &str) -> Option<Self::Elem> {
        if name == "t" {
            return Some(OrePoly::tau_pow(&self.ctx, 1));
        }
        self.base.var(name).map(OrePoly::constant)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        a.add(b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        a.sub(b)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        a.mul(b)
    }
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem> {
        Ok(a.neg())
    }
    /// Right division by a nonzero constant.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Result<Self::Elem>> {
        Some(match b.degree() {
            Some(0) => b.coeff(0).inv().and_then(|c| a.mul(&OrePoly::constant(c))),
            _ => Err(Error::Invalid("only division by a nonzero constant is supported".into())),
        })
    }
}

/// Polynomials in `x` over F_{q^m}, as coefficient vectors.
pub struct UPolyRing {
    pub tower: FieldTower,
    pub level: u32,
}

impl UPolyRing {
    fn field(&self) -> FieldRing {
        FieldRing { tower: self.tower.clone(), level: self.level }
    }

    fn combine(&self, a: &[FFElement], b: &[FFElement], f: impl Fn(&FFElement, &FFElement) -> FFElement) -> Vec<FFElement> {
        let z = self.tower.zero(self.level);
        (0..a.len().max(b.len())).map(|i| f(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect()
    }
}

impl Ring for UPolyRing {
    type Elem = Vec<FFElement>;
    fn from_int(&self, n: &BigInt) -> Result<Self::Elem> {
        Ok(vec![self.field().from_int(n)?])
    }
    fn var(&self, name: &str) -> Option<Self::Elem> {
        match name {
            "x" => Some(vec![self.tower.zero(self.level), self.tower.one(self.level)]),
            _ => self.field().var(name).map(|c| vec![c]),
        }
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.combine(a, b, |x, y| x.add(y)))
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.combine(a, b, |x, y| x.sub(y)))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if a.is_empty() || b.is_empty() {
            return Ok(Vec::new());
        }
        let mut out = vec![self.tower.zero(self.level); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
        Ok(out)
    }
    fn neg(&self, a: &Self::Elem) -> Result<Self::Elem> {
        Ok(a.iter().map(|c| c.neg()).collect())
    }
}

/// Z[x].
pub struct IntPolyRing;

impl Ring for IntPolyRing {
    type Elem = IntPoly;
    fn from_int(&self, n: &BigInt) -> Result<IntPoly> {
        Ok(IntPoly::new(vec![n.clone()]))
    }
    fn var(&self, name: &str) -> Option<IntPoly> {
        (name == "x").then(IntPoly::x)
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> Result<IntPoly> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &IntPoly) -> Result<IntPoly> {
        Ok(a.neg())
    }
}

/// Rational functions in x1, …, xn over Q with integer coefficients.
pub struct ClusterRing {
    pub n: usize,
}

impl Ring for ClusterRing {
    type Elem = RatFn;
    fn from_int(&self, n: &BigInt) -> Result<RatFn> {
        Ok(RatFn::constant(self.n, n.clone()))
    }
    fn var(&self, name: &str) -> Option<RatFn> {
        let i: usize = name.strip_prefix('x')?.parse().ok()?;
        (1..=self.n).contains(&i).then(|| RatFn::var(self.n, i - 1))
    }
    fn add(&self, a: &RatFn, b: &RatFn) -> Result<RatFn> {
        Ok(a.add(b))
    }
    fn sub(&self, a: &RatFn, b: &RatFn) -> Result<RatFn> {
        Ok(a.sub(b))
    }
    fn mul(&self, a: &RatFn, b: &RatFn) -> Result<RatFn> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &RatFn) -> Result<RatFn> {
        Ok(a.neg())
    }
    fn div(&self, a: &RatFn, b: &RatFn) -> Option<Result<RatFn>> {
        Some(a.div(b))
    }
}

pub fn parse_field(tower: &FieldTower, level: u32, s: &str) -> Result<FFElement> {
    parse_in(s, &FieldRing { tower: tower.clone(), level })
}

pub fn parse_apoly(tower: &FieldTower, s: &str) -> Result<APoly> {
    parse_in(s, &APolyRing { tower: tower.clone() })
}

pub fn parse_ratfunc(tower: &FieldTower, s: &str) -> Result<RatFunc> {
    parse_in(s, &RatFuncRing { tower: tower.clone() })
}

/// A twisted polynomial over k.
pub fn parse_ore_k(tower: &FieldTower, s: &str) -> Result<OrePoly<RatFunc>> {
    parse_in(s, &OreRing { base: RatFuncRing { tower: tower.clone() }, ctx: tower.clone() })
}

/// A twisted polynomial over F_{q^m}.
pub fn parse_ore_field(tower: &FieldTower, level: u32, s: &str) -> Result<OrePoly<FFElement>> {
    parse_in(s, &OreRing { base: FieldRing { tower: tower.clone(), level }, ctx: (tower.clone(), level) })
}

pub fn parse_upoly(tower: &FieldTower, level: u32, s: &str) -> Result<UPoly> {
    let c = parse_in(s, &UPolyRing { tower: tower.clone(), level })?;
    UPoly::new(tower, level, c)
}

pub fn parse_intpoly(s: &str) -> Result<IntPoly> {
    parse_in(s, &IntPolyRing)
}

pub fn parse_cluster(n: usize, s: &str) -> Result<RatFn> {
    let r = parse_in(s, &ClusterRing { n })?;
    if r.is_zero() {
        return Err(Error::Invalid("cluster variable must be nonzero".into()));
    }
    Ok(r)
}
