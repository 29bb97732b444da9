use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial in `n` variables over Z, terms keyed by exponent vector.
///
/// The map's order is lexicographic on exponents, so the last entry is the
/// lex-leading term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(n: usize) -> Self {
        MPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: BigInt) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigInt::one())
    }

    /// The variable x_{i+1}.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigInt) -> Self {
        let n = exps.len();
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn lead(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigInt) -> MPoly {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        MPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = Self::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient self / d, or `None` when d does not divide self.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.lead()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = Self::zero(self.n);
        while let Some((e, c)) = rem.lead() {
            if e.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&de).map(|(a, b)| a - b).collect();
            let t = MPoly::monomial(qe, qc);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// gcd of the integer coefficients, non-negative.
    pub fn int_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Componentwise minimum of exponents over all terms.
    pub fn min_exponents(&self) -> Vec<u32> {
        let mut m: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.n])
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    /// Highest-indexed variable that occurs.
    fn main_var(&self) -> Option<usize> {
        (0..self.n).rev().find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    /// Coefficients as a polynomial in x_v (index = power of x_v).
    fn split(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.n); d + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[v] as usize;
            e2[v] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    fn join(parts: &[MPoly], v: usize, n: usize) -> MPoly {
        let mut r = Self::zero(n);
        for (k, p) in parts.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2[v] += k as u32;
                r.add_term(e2, c.clone());
            }
        }
        r
    }

    /// Make the lex-leading coefficient positive.
    pub fn normalize_sign(&self) -> MPoly {
        match self.lead() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Greatest common divisor in Z[x_1, …, x_n], with positive leading
    /// coefficient. Recursive on the main variable with primitive
    /// pseudo-remainder sequences.
    pub fn gcd(&self, o: &MPoly) -> MPoly {
        if self.is_zero() {
            return o.normalize_sign();
        }
        if o.is_zero() {
            return self.normalize_sign();
        }
        if self.is_monomial() || o.is_monomial() {
            return self.monomial_gcd(o);
        }
        let v = match (self.main_var(), o.main_var()) {
            (None, None) => return MPoly::constant(self.n, self.int_content().gcd(&o.int_content())),
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) | (None, Some(a)) => a,
        };
        let (cf, pf) = self.content_pp(v);
        let (cg, pg) = o.content_pp(v);
        let c = cf.gcd(&cg);
        let (mut f, mut g) = if pf.degree_in(v) >= pg.degree_in(v) { (pf, pg) } else { (pg, pf) };
        while !g.is_zero() && g.degree_in(v) > Some(0) {
            let r = f.prem(&g, v);
            f = g;
            g = if r.is_zero() { r } else { r.content_pp(v).1 };
        }
        // a nonzero constant remainder in x_v means the primitive parts are coprime
        let h = if g.is_zero() { f.content_pp(v).1 } else { MPoly::one(self.n) };
        h.mul(&c).normalize_sign()
    }

    /// gcd when one side is a single term: a monomial times an integer.
    fn monomial_gcd(&self, o: &MPoly) -> MPoly {
        let mut e = self.min_exponents();
        for (a, b) in e.iter_mut().zip(o.min_exponents()) {
            *a = (*a).min(b);
        }
        let c = self.int_content().gcd(&o.int_content());
        MPoly::monomial(e, c)
    }

    /// Content with respect to x_v (a polynomial in the other variables)
    /// and the primitive part.
    fn content_pp(&self, v: usize) -> (MPoly, MPoly) {
        let parts = self.split(v);
        let mut c = MPoly::zero(self.n);
        for p in &parts {
            c = c.gcd(p);
            if c.is_one() {
                break;
            }
        }
        let c = if self.lead().is_some_and(|(_, k)| k.is_negative()) { c.neg() } else { c };
        let pp_parts: Vec<MPoly> = parts.iter().map(|p| p.exact_div(&c).expect("content divides")).collect();
        (c, MPoly::join(&pp_parts, v, self.n))
    }

    /// Pseudo-remainder of self by g with respect to x_v.
    fn prem(&self, g: &MPoly, v: usize) -> MPoly {
        let gparts = g.split(v);
        let dg = gparts.len() - 1;
        let lg = gparts[dg].clone();
        let mut r = self.clone();
        loop {
            let rparts = r.split(v);
            if r.is_zero() || rparts.len() - 1 < dg {
                return r;
            }
            let dr = rparts.len() - 1;
            let lr = rparts[dr].clone();
            let mut shift = vec![0; self.n];
            shift[v] = (dr - dg) as u32;
            let t = MPoly::monomial(shift, BigInt::one()).mul(&lr);
            r = r.mul(&lg).sub(&t.mul(g));
        }
    }

    /// Evaluate at integer points.
    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(c.clone(), |acc, (k, xi)| acc * num_traits::pow(xi.clone(), *k as usize)))
            .sum()
    }
}

/// Renders a term list in increasing total degree, `x1` before `x2`.
pub(crate) fn render_terms<E: Clone + Into<i64>>(terms: Vec<(Vec<E>, BigInt)>) -> String {
    let mut terms: Vec<(Vec<i64>, BigInt)> =
        terms.into_iter().map(|(e, c)| (e.into_iter().map(Into::into).collect(), c)).collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|(a, _), (b, _)| {
        let da: i64 = a.iter().sum();
        let db: i64 = b.iter().sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let mut s = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(v, &k)| if k == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, k) })
            .collect();
        if mono.is_empty() {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
                s.push('*');
            }
            s.push_str(&mono.join("*"));
        }
    }
    s
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|&k| k as i64).collect::<Vec<i64>>(), c.clone()))
            .collect();
        write!(f, "{}", render_terms(terms))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
