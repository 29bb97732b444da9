use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::fp;
use crate::error::{Error, Result};

/// Default cap on the number of elements of any field that is enumerated.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 20;

/// F_q with q = p^e, together with the lazily built extensions F_{q^m}.
///
/// Level `m` is realised as F_p[x] / (M_m) where M_m is the lexicographically
/// smallest monic irreducible of degree `e·m` (coefficients compared constant
/// first). Embeddings between levels are computed on demand and cached.
#[derive(Clone)]
pub struct FieldTower(Arc<TowerInner>);

struct TowerInner {
    p: u64,
    e: u32,
    bound: u64,
    levels: Mutex<BTreeMap<u32, Arc<Level>>>,
    embeddings: Mutex<HashMap<(u32, u32), Arc<Vec<Vec<u64>>>>>,
}

pub(crate) struct Level {
    pub(crate) m: u32,
    pub(crate) n: usize,
    pub(crate) modulus: Vec<u64>,
}

impl FieldTower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_bound(p, e, DEFAULT_FIELD_BOUND)
    }

    pub fn with_bound(p: u64, e: u32, bound: u64) -> Result<Self> {
        if !fp::is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if e == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        match p.checked_pow(e) {
            Some(q) if q <= bound => {}
            _ => return Err(Error::BoundExceeded(format!("{p}^{e} exceeds {bound}"))),
        }
        let modulus = fp::smallest_irreducible(e as usize, p, true);
        let base = Arc::new(Level { m: 1, n: e as usize, modulus });
        let mut levels = BTreeMap::new();
        levels.insert(1, base);
        Ok(FieldTower(Arc::new(TowerInner {
            p,
            e,
            bound,
            levels: Mutex::new(levels),
            embeddings: Mutex::new(HashMap::new()),
        })))
    }

    /// Parse `"p^e"` or `"p"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (p, e) = match spec.split_once('^') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (spec, "1"),
        };
        let p: u64 = p.parse().map_err(|_| Error::Invalid(format!("bad field spec {spec:?}")))?;
        let e: u32 = e.parse().map_err(|_| Error::Invalid(format!("bad field spec {spec:?}")))?;
        Self::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u64 {
        self.0.p.pow(self.0.e)
    }

    pub fn field_bound(&self) -> u64 {
        self.0.bound
    }

    pub fn spec_string(&self) -> String {
        format!("{}^{}", self.0.p, self.0.e)
    }

    /// Monic modulus of level `m`, ascending coefficients.
    pub fn modulus(&self, m: u32) -> Vec<u64> {
        self.level(m).modulus.clone()
    }

    /// Number of elements of F_{q^m}, if it fits in a `u64`.
    pub fn size(&self, m: u32) -> Option<u64> {
        self.0.p.checked_pow(self.0.e.checked_mul(m)?)
    }

    pub(crate) fn level(&self, m: u32) -> Arc<Level> {
        assert!(m >= 1, "levels start at 1");
        let mut levels = self.0.levels.lock().unwrap();
        if let Some(l) = levels.get(&m) {
            return l.clone();
        }
        let n = self.0.e as usize * m as usize;
        let modulus = fp::smallest_irreducible(n, self.0.p, false);
        let l = Arc::new(Level { m, n, modulus });
        levels.insert(m, l.clone());
        l
    }

    pub fn zero(&self, m: u32) -> FFElement {
        let lvl = self.level(m);
        FFElement { tower: self.clone(), c: vec![0; lvl.n], lvl }
    }

    pub fn one(&self, m: u32) -> FFElement {
        self.from_int(m, 1)
    }

    pub fn from_int(&self, m: u32, v: i64) -> FFElement {
        let mut z = self.zero(m);
        z.c[0] = v.rem_euclid(self.0.p as i64) as u64;
        z
    }

    /// The class of `x` in F_p[x]/(M_m). For e = m = 1 this is 0.
    pub fn generator(&self, m: u32) -> FFElement {
        let lvl = self.level(m);
        let poly = fp::rem(&[0, 1], &lvl.modulus, self.0.p);
        self.from_fp_poly(lvl, &poly)
    }

    /// Generator of F_q (level 1).
    pub fn gen(&self) -> FFElement {
        self.generator(1)
    }

    pub fn from_coeffs(&self, m: u32, coeffs: &[i64]) -> Result<FFElement> {
        let lvl = self.level(m);
        if coeffs.len() > lvl.n {
            return Err(Error::Invalid(format!(
                "{} coefficients given for a level of degree {}",
                coeffs.len(),
                lvl.n
            )));
        }
        let mut c = vec![0; lvl.n];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v.rem_euclid(self.0.p as i64) as u64;
        }
        Ok(FFElement { tower: self.clone(), lvl, c })
    }

    fn from_fp_poly(&self, lvl: Arc<Level>, poly: &[u64]) -> FFElement {
        let mut c = vec![0; lvl.n];
        c[..poly.len()].copy_from_slice(poly);
        FFElement { tower: self.clone(), lvl, c }
    }

    /// Element with enumeration index `idx`: base-p digits, constant term
    /// most significant, so index order is the canonical element order.
    pub fn element_at(&self, m: u32, idx: u64) -> FFElement {
        let lvl = self.level(m);
        let p = self.0.p;
        let mut c = vec![0; lvl.n];
        let mut t = idx;
        for slot in c.iter_mut().rev() {
            *slot = t % p;
            t /= p;
        }
        FFElement { tower: self.clone(), lvl, c }
    }

    /// All elements of level `m` in canonical order (bounded enumeration).
    pub fn elements(&self, m: u32) -> Result<Vec<FFElement>> {
        let size = self.enumerable_size(m)?;
        Ok((0..size).map(|i| self.element_at(m, i)).collect())
    }

    pub(crate) fn enumerable_size(&self, m: u32) -> Result<u64> {
        match self.size(m) {
            Some(s) if s <= self.0.bound => Ok(s),
            _ => Err(Error::BoundExceeded(format!(
                "F_(q^{m}) over q = {} exceeds the field-size bound {}",
                self.q(),
                self.0.bound
            ))),
        }
    }

    /// Images of the basis `1, x, …, x^(n_from - 1)` of level `from` inside
    /// level `to`, as coefficient vectors.
    fn embedding(&self, from: u32, to: u32) -> Result<Arc<Vec<Vec<u64>>>> {
        if to % from != 0 {
            return Err(Error::Invalid(format!("level {from} does not divide level {to}")));
        }
        if let Some(e) = self.0.embeddings.lock().unwrap().get(&(from, to)) {
            return Ok(e.clone());
        }
        let src = self.level(from);
        let dst = self.level(to);
        let p = self.0.p;
        // The image of level `from` is the fixed space of x ↦ x^(p^n_from).
        let fixed = self.fixed_subspace(to, src.n as u32)?;
        let dim = fixed.len();
        debug_assert_eq!(dim, src.n);
        let count = p.checked_pow(dim as u32).filter(|&c| c <= self.0.bound).ok_or_else(|| {
            Error::BoundExceeded(format!("embedding level {from} into {to}"))
        })?;
        let modulus = &src.modulus;
        let root = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let mut c = vec![0u64; dst.n];
                let mut t = idx;
                for b in &fixed {
                    let d = t % p;
                    t /= p;
                    for (slot, &v) in c.iter_mut().zip(b) {
                        *slot = (*slot + fp::mul_mod(d, v, p)) % p;
                    }
                }
                let z = FFElement { tower: self.clone(), lvl: dst.clone(), c };
                let mut acc = self.zero(to);
                for &coef in modulus.iter().rev() {
                    acc = acc.mul(&z).add(&self.from_int(to, coef as i64));
                }
                acc.is_zero().then_some(z)
            })
            .min()
            .ok_or_else(|| Error::Invalid("modulus has no root in the larger level".into()))?;
        let mut images = Vec::with_capacity(src.n);
        let mut pw = self.one(to);
        for _ in 0..src.n {
            images.push(pw.c.clone());
            pw = pw.mul(&root);
        }
        let images = Arc::new(images);
        self.0.embeddings.lock().unwrap().insert((from, to), images.clone());
        Ok(images)
    }

    /// Basis of {y ∈ level `m` : y^(p^s) = y} via Gaussian elimination.
    fn fixed_subspace(&self, m: u32, s: u32) -> Result<Vec<Vec<u64>>> {
        let lvl = self.level(m);
        let n = lvl.n;
        let p = self.0.p;
        // columns: image of basis vector e_j under (Frob^s - id)
        let mut mat = vec![vec![0u64; n]; n];
        for j in 0..n {
            let mut v = self.zero(m);
            v.c[j] = 1;
            let w = v.frobenius(s as u64).sub(&v);
            for i in 0..n {
                mat[i][j] = w.c[i];
            }
        }
        Ok(kernel_mod_p(mat, p))
    }
}

/// Null space basis of an `n×k` matrix over F_p.
pub(crate) fn kernel_mod_p(mut mat: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| mat[i][c] != 0) else { continue };
        mat.swap(r, pr);
        let inv = fp::inv_p(mat[r][c], p);
        for v in mat[r].iter_mut() {
            *v = fp::mul_mod(*v, inv, p);
        }
        for i in 0..rows {
            if i != r && mat[i][c] != 0 {
                let f = mat[i][c];
                for j in 0..cols {
                    let t = fp::mul_mod(f, mat[r][j], p);
                    mat[i][j] = (mat[i][j] + p - t) % p;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - mat[i][f]) % p;
            }
            v
        })
        .collect()
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}

impl Eq for FieldTower {}

impl Hash for FieldTower {
    fn hash<H: Hasher>(&self, h: &mut H) {
        (self.0.p, self.0.e).hash(h);
    }
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.spec_string())
    }
}

/// An element of F_{q^m}, stored as a coefficient vector over F_p of length e·m.
#[derive(Clone)]
pub struct FFElement {
    tower: FieldTower,
    lvl: Arc<Level>,
    c: Vec<u64>,
}

impl FFElement {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn level(&self) -> u32 {
        self.lvl.m
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// Canonical enumeration index (see [`FieldTower::element_at`]).
    pub fn index(&self) -> u128 {
        let p = self.tower.p() as u128;
        self.c.iter().fold(0u128, |acc, &d| acc * p + d as u128)
    }

    /// True if the element lies in the prime field F_p.
    pub fn in_prime_field(&self) -> bool {
        self.frobenius(1) == *self
    }

    fn same_level(&self, o: &FFElement) {
        assert!(
            self.lvl.m == o.lvl.m && self.tower == o.tower,
            "mixed levels {} and {} (embed first)",
            self.lvl.m,
            o.lvl.m
        );
    }

    fn with(&self, c: Vec<u64>) -> FFElement {
        FFElement { tower: self.tower.clone(), lvl: self.lvl.clone(), c }
    }

    pub fn add(&self, o: &FFElement) -> FFElement {
        self.same_level(o);
        let p = self.tower.p();
        self.with(self.c.iter().zip(&o.c).map(|(&a, &b)| (a + b) % p).collect())
    }

    pub fn sub(&self, o: &FFElement) -> FFElement {
        self.same_level(o);
        let p = self.tower.p();
        self.with(self.c.iter().zip(&o.c).map(|(&a, &b)| (a + p - b) % p).collect())
    }

    pub fn neg(&self) -> FFElement {
        let p = self.tower.p();
        self.with(self.c.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn scale(&self, k: u64) -> FFElement {
        let p = self.tower.p();
        self.with(self.c.iter().map(|&a| fp::mul_mod(a, k % p, p)).collect())
    }

    pub fn mul(&self, o: &FFElement) -> FFElement {
        self.same_level(o);
        let p = self.tower.p();
        let n = self.lvl.n;
        let m = &self.lvl.modulus;
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // reduce by the monic modulus from the top
        for k in (n..prod.len()).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mj) in m.iter().take(n).enumerate() {
                let idx = k - n + j;
                prod[idx] = (prod[idx] + p - (t * mj) % p) % p;
            }
        }
        prod.truncate(n);
        self.with(prod)
    }

    pub fn square(&self) -> FFElement {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u128) -> FFElement {
        let mut acc = self.tower.one(self.level());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.square();
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<FFElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.tower.p();
        let a = fp::trim(self.c.clone());
        let inv = fp::inv_mod(&a, &self.lvl.modulus, p).ok_or(Error::DivisionByZero)?;
        let mut c = vec![0; self.lvl.n];
        c[..inv.len()].copy_from_slice(&inv);
        Ok(self.with(c))
    }

    pub fn div(&self, o: &FFElement) -> Result<FFElement> {
        Ok(self.mul(&o.inv()?))
    }

    /// x^(p^s). The Frobenius has order e·m on level m, so `s` is reduced first.
    pub fn frobenius(&self, s: u64) -> FFElement {
        let s = s % self.lvl.n as u64;
        let p = self.tower.p() as u128;
        let mut x = self.clone();
        for _ in 0..s {
            x = x.pow(p);
        }
        x
    }

    /// Image of this element in level `to` (which must be a multiple of the
    /// current level).
    pub fn embed(&self, to: u32) -> Result<FFElement> {
        let from = self.level();
        if from == to {
            return Ok(self.clone());
        }
        let images = self.tower.embedding(from, to)?;
        let p = self.tower.p();
        let mut z = self.tower.zero(to);
        for (&d, img) in self.c.iter().zip(images.iter()) {
            if d == 0 {
                continue;
            }
            for (slot, &v) in z.c.iter_mut().zip(img) {
                *slot = (*slot + fp::mul_mod(d, v, p)) % p;
            }
        }
        Ok(z)
    }

    /// Base-p digit lift Σ c_i p^i of the coefficient vector.
    pub fn digit_lift(&self) -> u128 {
        let p = self.tower.p() as u128;
        self.c.iter().rev().fold(0u128, |acc, &d| acc * p + d as u128)
    }
}

impl PartialEq for FFElement {
    fn eq(&self, o: &Self) -> bool {
        self.lvl.m == o.lvl.m && self.tower == o.tower && self.c == o.c
    }
}

impl Eq for FFElement {}

impl Hash for FFElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lvl.m.hash(state);
        self.c.hash(state);
    }
}

impl PartialOrd for FFElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FFElement {
    fn cmp(&self, o: &Self) -> Ordering {
        self.lvl.m.cmp(&o.lvl.m).then_with(|| self.c.cmp(&o.c))
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Renders as a polynomial in `g` (the class of x); level > 1 is suffixed.
impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            };
            terms.push(t);
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join("+") };
        if self.lvl.m == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "[{body}]@{}", self.lvl.m)
        }
    }
}
