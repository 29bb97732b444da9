//! The twisted polynomial ring L⟨τ⟩ with τ·c = c^p·τ.
//!
//! Coefficients come from one of two domains sharing the [`Coeff`] interface:
//! the rational function field k = F_q(T) ([`RatFunc`]) or a finite level
//! F_{q^m} ([`FFElement`]). The twist is always the p-power Frobenius; a
//! q-power twist is written τ^e.

use std::fmt;

use crate::error::{Error, Result};
use crate::funcfield::{FFElement, FieldTower, RatFunc};

/// Arithmetic needed from a coefficient domain of characteristic p.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Identifies the domain (tower, and level for finite carriers).
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    /// Image of an element of F_q (level 1).
    fn from_base(ctx: &Self::Ctx, c: &FFElement) -> Self;
    fn tower_of(ctx: &Self::Ctx) -> &FieldTower;

    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// x^(p^s).
    fn frob(&self, s: u32) -> Self;
}

impl Coeff for FFElement {
    type Ctx = (FieldTower, u32);

    fn ctx(&self) -> Self::Ctx {
        (self.tower().clone(), self.level())
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        ctx.0.zero(ctx.1)
    }
    fn one(ctx: &Self::Ctx) -> Self {
        ctx.0.one(ctx.1)
    }
    fn from_base(ctx: &Self::Ctx, c: &FFElement) -> Self {
        c.embed(ctx.1).expect("level 1 embeds everywhere")
    }
    fn tower_of(ctx: &Self::Ctx) -> &FieldTower {
        &ctx.0
    }
    fn is_zero(&self) -> bool {
        FFElement::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FFElement::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FFElement::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        FFElement::mul(self, o)
    }
    fn neg(&self) -> Self {
        FFElement::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        FFElement::inv(self)
    }
    fn frob(&self, s: u32) -> Self {
        self.frobenius(s as u64)
    }
}

impl Coeff for RatFunc {
    type Ctx = FieldTower;

    fn ctx(&self) -> Self::Ctx {
        self.tower().clone()
    }
    fn zero(ctx: &Self::Ctx) -> Self {
        RatFunc::zero(ctx)
    }
    fn one(ctx: &Self::Ctx) -> Self {
        RatFunc::one(ctx)
    }
    fn from_base(_ctx: &Self::Ctx, c: &FFElement) -> Self {
        RatFunc::constant(c.clone())
    }
    fn tower_of(ctx: &Self::Ctx) -> &FieldTower {
        ctx
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn frob(&self, s: u32) -> Self {
        let mut x = self.clone();
        for _ in 0..s {
            x = x.frobenius_power();
        }
        x
    }
}

/// Σ c_i τ^i, coefficients indexed by τ-degree.
#[derive(Clone, PartialEq)]
pub struct OrePoly<C: Coeff> {
    ctx: C::Ctx,
    coeffs: Vec<C>,
}

impl<C: Coeff> OrePoly<C> {
    pub fn new(ctx: &C::Ctx, coeffs: Vec<C>) -> Result<Self> {
        if coeffs.iter().any(|c| c.ctx() != *ctx) {
            return Err(Error::DomainMismatch);
        }
        let mut f = OrePoly { ctx: ctx.clone(), coeffs };
        f.strip();
        Ok(f)
    }

    fn from_raw(ctx: &C::Ctx, coeffs: Vec<C>) -> Self {
        let mut f = OrePoly { ctx: ctx.clone(), coeffs };
        f.strip();
        f
    }

    fn strip(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(ctx: &C::Ctx) -> Self {
        OrePoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &C::Ctx) -> Self {
        Self::constant(C::one(ctx))
    }

    pub fn constant(c: C) -> Self {
        let ctx = c.ctx();
        Self::from_raw(&ctx, vec![c])
    }

    /// τ^k.
    pub fn tau_pow(ctx: &C::Ctx, k: usize) -> Self {
        let mut coeffs = vec![C::zero(ctx); k + 1];
        coeffs[k] = C::one(ctx);
        OrePoly { ctx: ctx.clone(), coeffs }
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn twist(&self) -> u64 {
        C::tower_of(&self.ctx).p()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(|| C::zero(&self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lead(&self) -> Option<&C> {
        self.coeffs.last()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(Self::from_raw(&self.ctx, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect()))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        Ok(Self::from_raw(&self.ctx, (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect()))
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(&self.ctx, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    /// Left multiplication by a scalar: c·f.
    pub fn scale_left(&self, c: &C) -> Self {
        Self::from_raw(&self.ctx, self.coeffs.iter().map(|x| c.mul(x)).collect())
    }

    /// Product under (aτ^i)(bτ^j) = a·b^(p^i)·τ^(i+j).
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mut out = vec![C::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(&b.frob(i as u32)));
            }
        }
        Ok(Self::from_raw(&self.ctx, out))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self).expect("same domain");
        }
        acc
    }

    /// The additive form Σ c_i x^(p^i) evaluated at `x` in the same domain.
    pub fn eval(&self, x: &C) -> Result<C> {
        if x.ctx() != self.ctx {
            return Err(Error::DomainMismatch);
        }
        let mut acc = C::zero(&self.ctx);
        let mut xp = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = xp.frob(1);
            }
            if !c.is_zero() {
                acc = acc.add(&c.mul(&xp));
            }
        }
        Ok(acc)
    }

    /// The additive form is separable iff the τ^0 coefficient is nonzero.
    pub fn is_separable(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(!self.coeffs[0].is_zero())
    }

    /// Apply a map to every coefficient, landing in another domain.
    pub fn map_coeffs<D: Coeff>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> Result<D>) -> Result<OrePoly<D>> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        OrePoly::new(ctx, coeffs)
    }
}

impl OrePoly<FFElement> {
    /// Evaluate the additive form at an element of a (multiple) level.
    pub fn eval_at(&self, x: &FFElement) -> Result<FFElement> {
        let level = self.ctx.1;
        if x.level() == level {
            return self.eval(x);
        }
        if x.level() % level != 0 {
            return Err(Error::DomainMismatch);
        }
        self.embed(x.level())?.eval(x)
    }

    /// Carry coefficients into a larger level.
    pub fn embed(&self, to: u32) -> Result<OrePoly<FFElement>> {
        let ctx = (self.ctx.0.clone(), to);
        self.map_coeffs(&ctx, |c| c.embed(to))
    }

    /// The ordinary polynomial Σ c_i x^(p^i) as a dense [`UPoly`].
    pub fn additive_upoly(&self) -> Result<crate::funcfield::UPoly> {
        let (tower, level) = &self.ctx;
        let p = tower.p() as usize;
        let Some(d) = self.degree() else {
            return crate::funcfield::UPoly::new(tower, *level, Vec::new());
        };
        let mut dense = vec![tower.zero(*level); p.pow(d as u32) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[p.pow(i as u32)] = c.clone();
        }
        crate::funcfield::UPoly::new(tower, *level, dense)
    }
}

impl<C: Coeff> fmt::Display for OrePoly<C> {
    /// `c0 + c1*t + c2*t^2`, with `t` standing for τ.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains('+') || cs.contains('/') { format!("({cs})") } else { cs };
            let one = cs == "1";
            terms.push(match i {
                0 => cs,
                1 if one => "t".to_string(),
                1 => format!("{cs}*t"),
                i if one => format!("t^{i}"),
                i => format!("{cs}*t^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl<C: Coeff> fmt::Debug for OrePoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::APoly;

    fn k2() -> FieldTower {
        FieldTower::new(2, 1).unwrap()
    }

    #[test]
    fn tau_times_t() {
        let tw = k2();
        let tau = OrePoly::<RatFunc>::tau_pow(&tw, 1);
        let t = OrePoly::constant(RatFunc::t(&tw));
        let prod = tau.mul(&t).unwrap();
        assert_eq!(prod.coeffs(), &[RatFunc::zero(&tw), RatFunc::t(&tw).mul(&RatFunc::t(&tw))]);
    }

    #[test]
    fn square_of_t_plus_tau() {
        let tw = k2();
        let f = OrePoly::constant(RatFunc::t(&tw)).add(&OrePoly::tau_pow(&tw, 1)).unwrap();
        let sq = f.mul(&f).unwrap();
        let t = APoly::t(&tw);
        let t2 = t.mul(&t);
        assert_eq!(
            sq.coeffs(),
            &[
                RatFunc::from_poly(t2.clone()),
                RatFunc::from_poly(t.add(&t2)),
                RatFunc::one(&tw)
            ]
        );
        assert_eq!(OrePoly::one(&tw).mul(&f).unwrap(), f);
    }

    #[test]
    fn eval_examples_over_f4() {
        let tw = FieldTower::new(2, 2).unwrap();
        let ctx = (tw.clone(), 1);
        let g = tw.gen();
        let tau = OrePoly::<FFElement>::tau_pow(&ctx, 1);
        assert_eq!(tau.eval(&g).unwrap(), g.square());
        let f = OrePoly::constant(g.clone()).add(&tau).unwrap();
        assert!(f.eval(&g).unwrap().is_zero());
        assert!(f.eval(&tw.zero(1)).unwrap().is_zero());
    }

    #[test]
    fn separability() {
        let tw = k2();
        let f = OrePoly::constant(RatFunc::t(&tw)).add(&OrePoly::tau_pow(&tw, 1)).unwrap();
        assert!(f.is_separable().unwrap());
        assert!(!OrePoly::<RatFunc>::tau_pow(&tw, 2).is_separable().unwrap());
        assert!(OrePoly::<RatFunc>::one(&tw).is_separable().unwrap());
        assert_eq!(OrePoly::<RatFunc>::zero(&tw).is_separable().unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn display_uses_t_for_tau() {
        let tw = k2();
        let f = OrePoly::constant(RatFunc::t(&tw)).add(&OrePoly::tau_pow(&tw, 2)).unwrap();
        assert_eq!(f.to_string(), "T + t^2");
    }
}
