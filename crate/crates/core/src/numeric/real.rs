use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Extra decimal digits carried inside elementary functions.
const GUARD: u32 = 30;
/// Bound, in units of the working scale, on truncation error inside the
/// elementary-function kernels.
const KERNEL_ERR: u64 = 1_000;

pub fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

/// Round n / d to the nearest integer, ties away from zero. Returns the
/// quotient and whether the division was exact.
fn div_round(n: &BigInt, d: &BigInt) -> (BigInt, bool) {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        return (q, true);
    }
    let twice = (r.abs() * 2u32).cmp(&d.abs());
    let away = if n.sign() == d.sign() || n.is_zero() { BigInt::one() } else { -BigInt::one() };
    (if twice != Ordering::Less { q + away } else { q }, false)
}

fn div_ceil_abs(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.abs().div_rem(&d.abs());
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// A decimal ball: the interval [(mid − rad)/10^scale, (mid + rad)/10^scale].
///
/// Exact operations (those whose result fits the target scale) leave the
/// radius untouched; every rounding adds one unit in the last place.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Real {
    mid: BigInt,
    rad: BigInt,
    scale: u32,
}

impl Real {
    pub fn new(mid: BigInt, rad: BigInt, scale: u32) -> Self {
        assert!(!rad.is_negative());
        Real { mid, rad, scale }
    }

    pub fn zero() -> Self {
        Real::from_int(0)
    }

    pub fn one() -> Self {
        Real::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Real { mid: n.into(), rad: BigInt::zero(), scale: 0 }
    }

    /// The nearest ball at `scale` to an exact rational.
    pub fn from_rational(q: &BigRational, scale: u32) -> Self {
        let (mid, exact) = div_round(&(q.numer() * pow10(scale)), q.denom());
        Real { mid, rad: if exact { BigInt::zero() } else { BigInt::one() }, scale }
    }

    /// Parse a decimal such as `-12.5`, `3e-7` or `1.25E+3`; exact.
    pub fn parse_decimal(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a decimal number: {s:?}"));
        let s = s.trim();
        let (mant, exp) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (neg, digits) = match mant.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, mant.strip_prefix('+').unwrap_or(mant)),
        };
        let (ip, fp) = digits.split_once('.').unwrap_or((digits, ""));
        if ip.is_empty() && fp.is_empty() || !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let all = format!("{ip}{fp}");
        let mut mid: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
        if neg {
            mid = -mid;
        }
        let scale = fp.len() as i64 - exp;
        if scale >= 0 {
            Ok(Real { mid, rad: BigInt::zero(), scale: scale as u32 })
        } else {
            Ok(Real { mid: mid * pow10((-scale) as u32), rad: BigInt::zero(), scale: 0 })
        }
    }

    /// A ball with the given decimal midpoint and decimal radius.
    pub fn parse_ball(mid: &str, rad: &str) -> Result<Self> {
        let m = Real::parse_decimal(mid)?;
        let r = Real::parse_decimal(rad)?;
        if r.mid.is_negative() {
            return Err(Error::Invalid("negative radius".into()));
        }
        let s = m.scale.max(r.scale);
        let m = m.with_scale_exact(s);
        let r = r.with_scale_exact(s);
        Ok(Real { mid: m.mid, rad: r.mid, scale: s })
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> &BigInt {
        &self.rad
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn mid_rational(&self) -> BigRational {
        BigRational::new(self.mid.clone(), pow10(self.scale))
    }

    pub fn rad_rational(&self) -> BigRational {
        BigRational::new(self.rad.clone(), pow10(self.scale))
    }

    /// An upper bound on |x| over the ball.
    pub fn abs_upper(&self) -> BigRational {
        BigRational::new(self.mid.abs() + &self.rad, pow10(self.scale))
    }

    /// A lower bound on |x| over the ball (zero if the ball meets zero).
    pub fn abs_lower(&self) -> BigRational {
        let v = self.mid.abs() - &self.rad;
        if v.is_negative() {
            BigRational::zero()
        } else {
            BigRational::new(v, pow10(self.scale))
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.mid_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.mid > self.rad
    }

    pub fn is_negative(&self) -> bool {
        -&self.mid > self.rad
    }

    /// Enlarge the radius by `r` units of the current scale.
    pub fn inflate(&self, r: &BigInt) -> Real {
        Real { mid: self.mid.clone(), rad: &self.rad + r.abs(), scale: self.scale }
    }

    /// Add an exact rational amount to the radius.
    pub fn inflate_by(&self, r: &BigRational) -> Real {
        let units = div_ceil_abs(&(r.numer() * pow10(self.scale)), r.denom());
        self.inflate(&units)
    }

    fn with_scale_exact(&self, s: u32) -> Real {
        debug_assert!(s >= self.scale);
        let f = pow10(s - self.scale);
        Real { mid: &self.mid * &f, rad: &self.rad * &f, scale: s }
    }

    /// Move to `s` fractional digits, rounding when digits are dropped.
    pub fn rescale(&self, s: u32) -> Real {
        if s >= self.scale {
            return self.with_scale_exact(s);
        }
        let d = pow10(self.scale - s);
        let (mid, exact) = div_round(&self.mid, &d);
        let mut rad = div_ceil_abs(&self.rad, &d);
        if !exact {
            rad += 1;
        }
        Real { mid, rad, scale: s }
    }

    fn align(&self, o: &Real) -> (Real, Real) {
        let s = self.scale.max(o.scale);
        (self.with_scale_exact(s), o.with_scale_exact(s))
    }

    pub fn add(&self, o: &Real) -> Real {
        let (a, b) = self.align(o);
        Real { mid: a.mid + b.mid, rad: a.rad + b.rad, scale: a.scale }
    }

    pub fn sub(&self, o: &Real) -> Real {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Real {
        Real { mid: -&self.mid, rad: self.rad.clone(), scale: self.scale }
    }

    pub fn abs(&self) -> Real {
        Real { mid: self.mid.abs(), rad: self.rad.clone(), scale: self.scale }
    }

    pub fn mul_int(&self, k: &BigInt) -> Real {
        Real { mid: &self.mid * k, rad: &self.rad * k.abs(), scale: self.scale }
    }

    /// Product, rounded to at most `s` fractional digits.
    pub fn mul(&self, o: &Real, s: u32) -> Real {
        let mid = &self.mid * &o.mid;
        let rad = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        let p = Real { mid, rad, scale: self.scale + o.scale };
        if p.scale > s {
            p.rescale(s)
        } else {
            p
        }
    }

    pub fn square(&self, s: u32) -> Real {
        self.mul(self, s)
    }

    /// Quotient at scale `s`; fails when the divisor's ball contains zero.
    pub fn div(&self, o: &Real, s: u32) -> Result<Real> {
        if o.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let (a, ra, sa) = (&self.mid, &self.rad, self.scale);
        let (b, rb, sb) = (&o.mid, &o.rad, o.scale);
        let n = a * pow10(s + sb);
        let d = b * pow10(sa);
        let (mid, exact) = div_round(&n, &d);
        let mut rad = BigInt::zero();
        if !ra.is_zero() || !rb.is_zero() {
            let num = (ra * b.abs() + a.abs() * rb) * pow10(s + sb);
            let den = pow10(sa) * b.abs() * (b.abs() - rb);
            rad = div_ceil_abs(&num, &den);
        }
        if !exact {
            rad += 1;
        }
        Ok(Real { mid, rad, scale: s })
    }

    pub fn inv(&self, s: u32) -> Result<Real> {
        Real::one().div(self, s)
    }

    /// Upper bound on |self − o| over both balls.
    pub fn dist_upper(&self, o: &Real) -> BigRational {
        self.sub(o).abs_upper()
    }

    /// Whether the two balls intersect.
    pub fn overlaps(&self, o: &Real) -> bool {
        self.sub(o).contains_zero()
    }

    /// Midpoint as a decimal with exactly `digits` fractional digits.
    pub fn to_decimal(&self, digits: u32) -> String {
        let r = self.rescale(digits);
        fixed_string(&r.mid, digits)
    }

    /// Radius as the shortest exact decimal, e.g. `3e-51`.
    pub fn radius_string(&self) -> String {
        exact_decimal_string(&self.rad, self.scale)
    }

    /// Midpoint at its own scale, exactly.
    pub fn mid_string(&self) -> String {
        fixed_string(&self.mid, self.scale)
    }

    // ----- elementary functions -----

    /// The ball at working scale `w`, as an exact integer interval [lo, hi].
    fn endpoints(&self, w: u32) -> (BigInt, BigInt) {
        if w >= self.scale {
            let f = pow10(w - self.scale);
            (&(&self.mid - &self.rad) * &f, &(&self.mid + &self.rad) * &f)
        } else {
            let d = pow10(self.scale - w);
            let lo = (&self.mid - &self.rad).div_floor(&d);
            let hi = (&self.mid + &self.rad).div_ceil(&d);
            (lo, hi)
        }
    }

    /// Ball at scale `s` enclosing [lo, hi] given at scale `w`.
    fn from_endpoints(lo: BigInt, hi: BigInt, w: u32, s: u32) -> Real {
        let d = pow10(w - s);
        let lo = lo.div_floor(&d);
        let hi = hi.div_ceil(&d);
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        let rad = (&hi - &mid).max(&mid - &lo);
        Real { mid, rad, scale: s }
    }

    /// Evaluate a monotone kernel at both ends of the ball.
    fn monotone(&self, s: u32, increasing: bool, f: impl Fn(&BigInt, u32) -> BigInt) -> Real {
        let w = s + GUARD;
        let (lo, hi) = self.endpoints(w);
        let err = BigInt::from(KERNEL_ERR);
        let (a, b) = if lo == hi {
            let v = f(&lo, w);
            (v.clone(), v)
        } else {
            (f(&lo, w), f(&hi, w))
        };
        let (a, b) = if increasing { (a, b) } else { (b, a) };
        Real::from_endpoints(a - &err, b + &err, w, s)
    }

    pub fn pi(s: u32) -> Real {
        let w = s + GUARD;
        let v = pi_fx(w);
        let e = BigInt::from(KERNEL_ERR);
        Real::from_endpoints(&v - &e, &v + &e, w, s)
    }

    pub fn exp(&self, s: u32) -> Real {
        self.monotone(s, true, exp_fx)
    }

    pub fn ln(&self, s: u32) -> Result<Real> {
        if !self.is_positive() {
            return Err(Error::Invalid("logarithm of a ball that is not positive".into()));
        }
        Ok(self.monotone(s, true, |x, w| ln_fx(x, w)))
    }

    pub fn sqrt(&self, s: u32) -> Result<Real> {
        if self.is_negative() || self.contains_zero() && !self.mid.is_zero() {
            return Err(Error::Invalid("square root of a ball that is not non-negative".into()));
        }
        Ok(self.monotone(s, true, |x, w| {
            if x.is_negative() {
                BigInt::zero()
            } else {
                (x * pow10(w)).sqrt()
            }
        }))
    }

    /// sin and cos; both are 1-Lipschitz, so the input radius carries over.
    pub fn sin_cos(&self, s: u32) -> (Real, Real) {
        let w = s + GUARD + 5;
        let m = self.rescale(w);
        let (sn, cs) = sin_cos_fx(&m.mid, w);
        let spread = &m.rad + BigInt::from(KERNEL_ERR);
        let sin = Real::from_endpoints(&sn - &spread, &sn + &spread, w, s);
        let cos = Real::from_endpoints(&cs - &spread, &cs + &spread, w, s);
        (sin, cos)
    }

    pub fn sin(&self, s: u32) -> Real {
        self.sin_cos(s).0
    }

    pub fn cos(&self, s: u32) -> Real {
        self.sin_cos(s).1
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.mid_string(), self.radius_string())
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fixed_string(m: &BigInt, digits: u32) -> String {
    let neg = m.is_negative();
    let mut s = m.abs().to_string();
    if digits > 0 {
        if s.len() <= digits as usize {
            s = format!("{}{}", "0".repeat(digits as usize + 1 - s.len()), s);
        }
        s.insert(s.len() - digits as usize, '.');
    }
    if neg {
        format!("-{s}")
    } else {
        s
    }
}

/// n / 10^scale as the shortest exact decimal.
fn exact_decimal_string(n: &BigInt, scale: u32) -> String {
    if n.is_zero() {
        return "0".into();
    }
    let mut n = n.clone();
    let mut scale = scale as i64;
    let ten = BigInt::from(10);
    while scale > 0 {
        let (q, r) = n.div_rem(&ten);
        if !r.is_zero() {
            break;
        }
        n = q;
        scale -= 1;
    }
    if scale == 0 {
        n.to_string()
    } else {
        format!("{n}e-{scale}")
    }
}

// ----- fixed-point kernels: an integer X stands for X / 10^w -----

fn fx_mul(a: &BigInt, b: &BigInt, w: u32) -> BigInt {
    (a * b).div_floor(&pow10(w))
}

/// atanh(1/k) · 10^w for an integer k ≥ 2.
fn atanh_inv_fx(k: u64, w: u32) -> BigInt {
    let one = pow10(w);
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = &one / &k;
    let mut sum = BigInt::zero();
    let mut n = 1u64;
    while !power.is_zero() {
        sum += &power / n;
        power /= &k2;
        n += 2;
    }
    sum
}

fn atan_inv_fx(k: u64, w: u32) -> BigInt {
    let one = pow10(w);
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = &one / &k;
    let mut sum = BigInt::zero();
    let mut n = 1u64;
    let mut sign = true;
    while !power.is_zero() {
        let t = &power / n;
        if sign {
            sum += t;
        } else {
            sum -= t;
        }
        sign = !sign;
        power /= &k2;
        n += 2;
    }
    sum
}

fn pi_fx(w: u32) -> BigInt {
    (atan_inv_fx(5, w + 5) * BigInt::from(16) - atan_inv_fx(239, w + 5) * BigInt::from(4)).div_floor(&pow10(5))
}

fn ln2_fx(w: u32) -> BigInt {
    atanh_inv_fx(3, w) * BigInt::from(2)
}

fn exp_fx(x: &BigInt, w: u32) -> BigInt {
    let extra = (x.abs().bits() as u32) / 3 + 10;
    let wp = w + extra;
    let one = pow10(wp);
    let xw = x * pow10(extra);
    let ln2 = ln2_fx(wp);
    let (k, _) = div_round(&xw, &ln2);
    let r = &xw - &k * &ln2;
    // Taylor series for |r| ≤ ln2/2
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut n = 1u64;
    loop {
        term = fx_mul(&term, &r, wp) / n;
        if term.is_zero() {
            break;
        }
        sum += &term;
        n += 1;
    }
    let k = k.to_i64().expect("exponent in range");
    let v = if k >= 0 { sum << (k as usize) } else { sum >> ((-k) as usize) };
    v.div_floor(&pow10(extra))
}

fn ln_fx(x: &BigInt, w: u32) -> BigInt {
    assert!(x.is_positive());
    let wp = w + 10;
    let one = pow10(wp);
    let xw = x * pow10(10);
    // x = y · 2^k with y ∈ [1, 2)
    let k = xw.bits() as i64 - one.bits() as i64;
    let mut y = if k >= 0 { &xw >> (k as usize) } else { &xw << ((-k) as usize) };
    let mut k = k;
    while y >= &one * 2 {
        y >>= 1;
        k += 1;
    }
    while y < one {
        y <<= 1;
        k -= 1;
    }
    // ln y = 2 atanh((y − 1)/(y + 1))
    let z = ((&y - &one) * &one).div_floor(&(&y + &one));
    let z2 = fx_mul(&z, &z, wp);
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut n = 1u64;
    while !power.is_zero() {
        sum += &power / n;
        power = fx_mul(&power, &z2, wp);
        n += 2;
    }
    let v: BigInt = sum * BigInt::from(2) + ln2_fx(wp) * BigInt::from(k);
    v.div_floor(&pow10(10))
}

fn sin_cos_fx(x: &BigInt, w: u32) -> (BigInt, BigInt) {
    let extra = (x.abs().bits() as u32) / 3 + 10;
    let wp = w + extra;
    let one = pow10(wp);
    let xw = x * pow10(extra);
    let two_pi = pi_fx(wp) * 2;
    let (k, _) = div_round(&xw, &two_pi);
    let r = &xw - &k * &two_pi;
    let r2 = fx_mul(&r, &r, wp);
    let mut term = r.clone();
    let mut sin = BigInt::zero();
    let mut n = 1u64;
    while !term.is_zero() {
        sin += &term;
        term = -fx_mul(&term, &r2, wp) / ((n + 1) * (n + 2));
        n += 2;
    }
    let mut term = one.clone();
    let mut cos = BigInt::zero();
    let mut n = 0u64;
    while !term.is_zero() {
        cos += &term;
        term = -fx_mul(&term, &r2, wp) / ((n + 1) * (n + 2));
        n += 2;
    }
    let d = pow10(extra);
    (sin.div_floor(&d), cos.div_floor(&d))
}

impl Real {
    /// Sign of the exact midpoint.
    pub fn mid_sign(&self) -> Sign {
        self.mid.sign()
    }
}
