use std::fmt;

use rayon::prelude::*;

use super::tower::{FFElement, FieldTower};
use crate::error::{Error, Result};

/// A univariate polynomial in x with coefficients in one level F_{q^m}.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    tower: FieldTower,
    level: u32,
    coeffs: Vec<FFElement>,
}

impl UPoly {
    pub fn new(tower: &FieldTower, level: u32, coeffs: Vec<FFElement>) -> Result<Self> {
        if coeffs.iter().any(|c| c.level() != level) {
            return Err(Error::DomainMismatch);
        }
        let mut f = UPoly { tower: tower.clone(), level, coeffs };
        while f.coeffs.last().is_some_and(|c| c.is_zero()) {
            f.coeffs.pop();
        }
        Ok(f)
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients carried into level `to`.
    pub fn embed(&self, to: u32) -> Result<UPoly> {
        let coeffs = self.coeffs.iter().map(|c| c.embed(to)).collect::<Result<Vec<_>>>()?;
        UPoly::new(&self.tower, to, coeffs)
    }

    /// Evaluate at `x`, whose level must be a multiple of this polynomial's.
    pub fn eval(&self, x: &FFElement) -> Result<FFElement> {
        let f = if x.level() == self.level { self.clone() } else { self.embed(x.level())? };
        Ok(horner(&f.coeffs, x))
    }

    /// Synthetic division by (x - r); `r` must live at this level.
    fn deflate(&self, r: &FFElement) -> (UPoly, FFElement) {
        let n = self.coeffs.len();
        let mut q = vec![self.tower.zero(self.level); n.saturating_sub(1)];
        let mut carry = self.tower.zero(self.level);
        for i in (0..n).rev() {
            let v = self.coeffs[i].add(&carry.mul(r));
            if i == 0 {
                carry = v;
            } else {
                q[i - 1] = v.clone();
                carry = v;
            }
        }
        (UPoly { tower: self.tower.clone(), level: self.level, coeffs: q }, carry)
    }

    fn multiplicity(&self, r: &FFElement) -> u32 {
        let mut f = self.clone();
        let mut k = 0;
        loop {
            if f.is_zero() {
                return k;
            }
            let (q, rem) = f.deflate(r);
            if !rem.is_zero() {
                return k;
            }
            k += 1;
            f = q;
        }
    }
}

fn horner(coeffs: &[FFElement], x: &FFElement) -> FFElement {
    let mut acc = x.tower().zero(x.level());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            terms.push(match i {
                0 => cs,
                _ => {
                    let mono = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                    if c.is_one() { mono } else { format!("{cs}*{mono}") }
                }
            });
        }
        write!(f, "{}", if terms.is_empty() { "0".to_string() } else { terms.join("+") })
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Outcome of a bounded root search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSearch {
    /// Distinct roots with multiplicity, sorted canonically.
    pub roots: Vec<(FFElement, u32)>,
    /// Level the roots live in.
    pub level: u32,
    /// Whether the multiplicities add up to the degree.
    pub complete: bool,
}

impl RootSearch {
    pub fn count_with_multiplicity(&self) -> u64 {
        self.roots.iter().map(|(_, k)| *k as u64).sum()
    }

    pub fn distinct(&self) -> Vec<FFElement> {
        self.roots.iter().map(|(r, _)| r.clone()).collect()
    }
}

/// Exhaustive root search in F_{q^L} for L = m, 2m, … ≤ `max_level`.
///
/// Returns the roots at the first level where they account for the full
/// degree; otherwise the roots at the last level searched, flagged
/// incomplete. Levels larger than the tower's field bound are not searched.
pub fn roots_in_extension(f: &UPoly, max_level: u32) -> Result<RootSearch> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)? as u64;
    let m = f.level();
    if max_level < m {
        return Err(Error::Invalid(format!("max level {max_level} is below the coefficient level {m}")));
    }
    let tower = f.tower();
    let mut last: Option<RootSearch> = None;
    let mut level = m;
    while level <= max_level {
        let Ok(size) = tower.enumerable_size(level) else { break };
        let g = f.embed(level)?;
        let mut found: Vec<FFElement> = (0..size)
            .into_par_iter()
            .map(|i| tower.element_at(level, i))
            .filter(|x| horner(&g.coeffs, x).is_zero())
            .collect();
        found.sort();
        let roots: Vec<(FFElement, u32)> = found
            .into_iter()
            .map(|r| {
                let k = g.multiplicity(&r);
                (r, k)
            })
            .collect();
        let total: u64 = roots.iter().map(|(_, k)| *k as u64).sum();
        let res = RootSearch { roots, level, complete: total == deg };
        if res.complete {
            return Ok(res);
        }
        last = Some(res);
        level += m;
    }
    Ok(last.unwrap_or(RootSearch { roots: Vec::new(), level: m, complete: deg == 0 }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(t: &FieldTower, c: &[i64]) -> UPoly {
        UPoly::new(t, 1, c.iter().map(|&v| t.from_int(1, v)).collect()).unwrap()
    }

    #[test]
    fn x_squared_plus_x_over_f2() {
        let t = FieldTower::new(2, 1).unwrap();
        let r = roots_in_extension(&poly(&t, &[0, 1, 1]), 1).unwrap();
        assert!(r.complete);
        assert_eq!(r.distinct(), vec![t.from_int(1, 0), t.from_int(1, 1)]);
    }

    #[test]
    fn x_squared_plus_one_over_f3() {
        let t = FieldTower::new(3, 1).unwrap();
        let f = poly(&t, &[1, 0, 1]);
        let none = roots_in_extension(&f, 1).unwrap();
        assert!(!none.complete);
        assert!(none.roots.is_empty());
        let r = roots_in_extension(&f, 2).unwrap();
        assert!(r.complete);
        assert_eq!(r.level, 2);
        assert_eq!(r.roots.len(), 2);
    }

    #[test]
    fn x_alone() {
        let t = FieldTower::new(5, 1).unwrap();
        let r = roots_in_extension(&poly(&t, &[0, 1]), 1).unwrap();
        assert_eq!(r.roots, vec![(t.zero(1), 1)]);
    }

    #[test]
    fn multiplicity_counted() {
        let t = FieldTower::new(2, 1).unwrap();
        // x^2 = (x)^2 over F_2
        let r = roots_in_extension(&poly(&t, &[0, 0, 1]), 1).unwrap();
        assert_eq!(r.roots, vec![(t.zero(1), 2)]);
        assert!(r.complete);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let t = FieldTower::new(2, 1).unwrap();
        assert_eq!(roots_in_extension(&poly(&t, &[]), 1).unwrap_err(), Error::ZeroPolynomial);
    }
}
