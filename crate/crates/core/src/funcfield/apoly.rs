use std::fmt;

use super::tower::{FFElement, FieldTower};
use crate::error::{Error, Result};

/// A polynomial in T over F_q; the ring A = F_q[T].
///
/// Coefficients are level-1 field elements in ascending T-degree, with
/// trailing zeros stripped. The zero polynomial has no coefficients and
/// [`APoly::degree`] returns `None` for it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct APoly {
    tower: FieldTower,
    coeffs: Vec<FFElement>,
}

impl APoly {
    pub fn new(tower: &FieldTower, coeffs: Vec<FFElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.level() == 1));
        let mut a = APoly { tower: tower.clone(), coeffs };
        a.strip();
        a
    }

    pub fn zero(tower: &FieldTower) -> Self {
        APoly { tower: tower.clone(), coeffs: Vec::new() }
    }

    pub fn one(tower: &FieldTower) -> Self {
        Self::constant(tower.one(1))
    }

    pub fn constant(c: FFElement) -> Self {
        let tower = c.tower().clone();
        APoly::new(&tower, vec![c])
    }

    /// The variable T.
    pub fn t(tower: &FieldTower) -> Self {
        APoly::new(tower, vec![tower.zero(1), tower.one(1)])
    }

    /// From integer coefficients (reduced into F_p ⊂ F_q).
    pub fn from_ints(tower: &FieldTower, coeffs: &[i64]) -> Self {
        APoly::new(tower, coeffs.iter().map(|&c| tower.from_int(1, c)).collect())
    }

    fn strip(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero(1))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lead(&self) -> Option<&FFElement> {
        self.coeffs.last()
    }

    pub fn add(&self, o: &APoly) -> APoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        APoly::new(&self.tower, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &APoly) -> APoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        APoly::new(&self.tower, (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }

    pub fn neg(&self) -> APoly {
        APoly::new(&self.tower, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn scale(&self, c: &FFElement) -> APoly {
        APoly::new(&self.tower, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn mul(&self, o: &APoly) -> APoly {
        if self.is_zero() || o.is_zero() {
            return APoly::zero(&self.tower);
        }
        let mut out = vec![self.tower.zero(1); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        APoly::new(&self.tower, out)
    }

    pub fn pow(&self, e: u32) -> APoly {
        let mut acc = APoly::one(&self.tower);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn divrem(&self, d: &APoly) -> Result<(APoly, APoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.coeffs[dd].inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.tower.zero(1); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap().mul(&inv);
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub(&c.mul(dj));
            }
            q[k] = c;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((APoly::new(&self.tower, q), APoly::new(&self.tower, r)))
    }

    pub fn rem(&self, d: &APoly) -> Result<APoly> {
        Ok(self.divrem(d)?.1)
    }

    pub fn monic(&self) -> APoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|l| l.is_one())
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &APoly) -> APoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Evaluate at an element of any level.
    pub fn eval(&self, x: &FFElement) -> Result<FFElement> {
        let m = x.level();
        let mut acc = self.tower.zero(m);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&c.embed(m)?);
        }
        Ok(acc)
    }

    /// Apply the p-power Frobenius: (Σ c_i T^i)^p = Σ c_i^p T^(ip).
    pub fn frobenius_power(&self) -> APoly {
        let p = self.tower.p() as usize;
        let Some(d) = self.degree() else { return self.clone() };
        let mut out = vec![self.tower.zero(1); d * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * p] = c.frobenius(1);
        }
        APoly::new(&self.tower, out)
    }

    /// All monic polynomials of degree `d`, in canonical order.
    pub fn monics_of_degree(tower: &FieldTower, d: usize) -> Vec<APoly> {
        let q = tower.q();
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(d + 1);
                for _ in 0..d {
                    c.push(tower.element_at(1, idx % q));
                    idx /= q;
                }
                c.push(tower.one(1));
                APoly::new(tower, c)
            })
            .collect()
    }

    /// All polynomials of degree < `d` (the residues of A/aA for deg a = d).
    pub fn all_below_degree(tower: &FieldTower, d: usize) -> Vec<APoly> {
        let q = tower.q();
        let count = q.pow(d as u32);
        (0..count)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(d);
                for _ in 0..d {
                    c.push(tower.element_at(1, idx % q));
                    idx /= q;
                }
                APoly::new(tower, c)
            })
            .collect()
    }

    /// Factorisation into monic irreducibles with multiplicity, by trial
    /// division. The unit factor is dropped.
    pub fn factor(&self) -> Vec<(APoly, u32)> {
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut d = 1;
        while rest.degree().unwrap_or(0) > 0 {
            if 2 * d > rest.degree().unwrap() {
                out.push((rest.clone(), 1));
                break;
            }
            for cand in APoly::monics_of_degree(&self.tower, d) {
                let mut k = 0;
                loop {
                    let (qq, r) = rest.divrem(&cand).unwrap();
                    if !r.is_zero() {
                        break;
                    }
                    rest = qq;
                    k += 1;
                }
                if k > 0 {
                    out.push((cand, k));
                }
            }
            d += 1;
        }
        // merge repeated entries that the early exit may have produced
        out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs)));
        let mut merged: Vec<(APoly, u32)> = Vec::new();
        for (f, k) in out {
            match merged.last_mut() {
                Some((g, kk)) if *g == f => *kk += k,
                _ => merged.push((f, k)),
            }
        }
        merged
    }
}

fn fmt_coeff(c: &FFElement) -> String {
    let s = c.to_string();
    if s.contains('+') {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "T".to_string(),
                i => format!("T^{i}"),
            };
            terms.push(match (i, c.is_one()) {
                (0, _) => fmt_coeff(c),
                (_, true) => mono,
                _ => format!("{}*{}", fmt_coeff(c), mono),
            });
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
