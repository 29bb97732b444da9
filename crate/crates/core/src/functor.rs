//! From Drinfeld module data (or a monic integer polynomial) to real
//! multiplication data: companion matrix, Perron–Frobenius root ε, the
//! α-vector and the generator values built from them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::drinfeld::{DrinfeldModule, SpecialModule};
use crate::error::{Error, Result};
use crate::funcfield::{APoly, FFElement, RatFunc};
use crate::intpoly::IntPoly;
use crate::lattice::detect_minpoly;
use crate::nctorus::IMat;
use crate::numeric::{aberth, refine_real_root, ApproxRoot, Complex, Real};
use crate::ore::Coeff;

/// Largest additive-polynomial degree `lift_to_intpoly` will build.
pub const MAX_LIFT_DEGREE: u64 = 1 << 16;

/// How coefficients are carried to Z: the digit section of F_p, with T ↦ t0.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftSpec {
    a: APoly,
    t0: BigInt,
}

impl LiftSpec {
    pub fn new(a: APoly, t0: impl Into<BigInt>) -> Result<Self> {
        let t0 = t0.into();
        if t0 < BigInt::from(2) {
            return Err(Error::Invalid(format!("t0 = {t0} must be at least 2")));
        }
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(LiftSpec { a, t0 })
    }

    pub fn a(&self) -> &APoly {
        &self.a
    }

    pub fn t0(&self) -> &BigInt {
        &self.t0
    }
}

/// Coefficient domains whose elements lift to Q.
pub trait Liftable: Coeff {
    fn lift(&self, t0: &BigInt) -> BigRational;
}

fn lift_base(c: &FFElement) -> BigInt {
    BigInt::from(c.digit_lift())
}

fn lift_apoly(a: &APoly, t0: &BigInt) -> BigInt {
    a.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| acc * t0 + lift_base(c))
}

impl Liftable for FFElement {
    fn lift(&self, _t0: &BigInt) -> BigRational {
        BigRational::from_integer(lift_base(self))
    }
}

impl Liftable for RatFunc {
    fn lift(&self, t0: &BigInt) -> BigRational {
        // denominators are monic with non-negative lifted coefficients, so
        // their value at t0 ≥ 2 is positive
        BigRational::new(lift_apoly(self.num(), t0), lift_apoly(self.den(), t0))
    }
}

/// ρ_a(z) − z with lifted coefficients, made primitive with positive
/// leading coefficient.
pub fn lift_to_intpoly<C: Liftable>(d: &DrinfeldModule<C>, spec: &LiftSpec) -> Result<IntPoly> {
    let rho = d.rho_of(&spec.a);
    let p = d.tower().p();
    let top = rho.degree().unwrap_or(0);
    let deg = (p as u128).checked_pow(top as u32).filter(|&n| n <= MAX_LIFT_DEGREE as u128).ok_or_else(|| {
        Error::BoundExceeded(format!("additive polynomial of degree {p}^{top} is too large"))
    })? as usize;
    let mut coeffs = vec![BigRational::zero(); deg + 1];
    for (k, c) in rho.coeffs().iter().enumerate() {
        if !c.is_zero() {
            coeffs[(p as usize).pow(k as u32)] += c.lift(&spec.t0);
        }
    }
    if deg >= 1 {
        coeffs[1] -= BigRational::one();
    }
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut poly = IntPoly::new(ints).primitive();
    if poly.lead().is_some_and(|l| l.is_negative()) {
        poly = poly.neg();
    }
    match poly.degree() {
        Some(d) if d >= 1 => Ok(poly),
        _ => Err(Error::DegenerateLift("ρ_a(z) − z lifts to a constant".into())),
    }
}

/// The lexicographically least conjugate u·ρ·u⁻¹ over u ∈ L*, a
/// representative of the isomorphism class under constant units.
pub fn canonical_form(d: &SpecialModule) -> Result<SpecialModule> {
    let tower = d.tower();
    let level = d.level();
    let coeffs = d.rho_t().coeffs();
    let mut best: Option<(Vec<u128>, FFElement)> = None;
    for u in tower.elements(level)? {
        if u.is_zero() {
            continue;
        }
        let uinv = u.inv()?;
        let key: Vec<u128> = coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(k, c)| c.mul(&u).mul(&uinv.frobenius(k as u64)).index())
            .collect();
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, u));
        }
    }
    let (_, u) = best.expect("L* is non-empty");
    d.conjugate(&u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    DrinfeldLift { a: String, t0: BigInt },
    DirectMinpoly,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::DrinfeldLift { .. } => f.write_str("drinfeld+lift"),
            Provenance::DirectMinpoly => f.write_str("direct minpoly"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    NegativeCompanion,
    NonStrictDominance,
    Imprimitive,
    RepeatedRoots,
    OddDegree,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::NegativeCompanion => "negative-companion",
            Flag::NonStrictDominance => "non-strict-dominance",
            Flag::Imprimitive => "imprimitive",
            Flag::RepeatedRoots => "repeated-roots",
            Flag::OddDegree => "odd-degree",
        }
    }
}

/// Real-multiplication data attached to a monic integer polynomial.
#[derive(Clone, Debug)]
pub struct RMData {
    pub minpoly: IntPoly,
    pub companion: IMat,
    pub epsilon: Real,
    pub alphas: Vec<Real>,
    pub precision: u32,
    pub flags: Vec<Flag>,
    pub provenance: Provenance,
    /// All complex roots of the squarefree part, sorted by (re, im).
    pub roots: Vec<ApproxRoot>,
}

impl PartialEq for RMData {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly
            && self.companion == o.companion
            && self.epsilon == o.epsilon
            && self.alphas == o.alphas
            && self.precision == o.precision
            && self.flags == o.flags
            && self.provenance == o.provenance
    }
}

/// Companion matrix with ones on the subdiagonal and last column
/// (a_0, …, a_{m−1}), where p = x^m − Σ a_i x^i.
pub fn companion(p: &IntPoly) -> Result<IMat> {
    if !p.is_monic() || p.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid(format!("{p} is not monic of positive degree")));
    }
    let m = p.degree().unwrap();
    let mut b = vec![vec![BigInt::zero(); m]; m];
    for i in 0..m {
        if i + 1 < m {
            b[i + 1][i] = BigInt::one();
        }
        b[i][m - 1] = -p.coeff(i);
    }
    Ok(b)
}

/// det(xI − M) by the Faddeev–LeVerrier recursion.
pub fn charpoly(mat: &IMat) -> IntPoly {
    let n = mat.len();
    let mul = |x: &IMat, y: &IMat| -> IMat {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect()).collect()
    };
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk: IMat = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1} I, c_{n−k} = −tr(A M_k)/k
        let mut next = mul(mat, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(mat, &mk);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / BigInt::from(k);
    }
    IntPoly::new(c)
}

/// Wielandt's test: a non-negative matrix is primitive iff its
/// ((n−1)² + 1)-th power is positive.
fn is_primitive(b: &IMat) -> bool {
    let n = b.len();
    let pattern: Vec<Vec<bool>> = b.iter().map(|r| r.iter().map(|v| v.is_positive()).collect()).collect();
    let bool_mul = |x: &Vec<Vec<bool>>, y: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).any(|k| x[i][k] && y[k][j])).collect()).collect()
    };
    let mut e = (n - 1) * (n - 1) + 1;
    let mut base = pattern;
    let mut acc: Option<Vec<Vec<bool>>> = None;
    while e > 0 {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => bool_mul(&a, &base),
            });
        }
        base = bool_mul(&base, &base);
        e >>= 1;
    }
    acc.unwrap().iter().flatten().all(|&x| x)
}

/// RM data for a monic integer polynomial.
pub fn functor_map_poly(p: &IntPoly, precision: u32) -> Result<RMData> {
    rm_data(p, precision, Provenance::DirectMinpoly)
}

/// RM data for a monic polynomial with the given provenance.
pub fn rm_data(p: &IntPoly, precision: u32, provenance: Provenance) -> Result<RMData> {
    let b = companion(p)?;
    let m = b.len();
    let mut flags = Vec::new();
    if (0..m).any(|i| b[i][m - 1].is_negative()) {
        flags.push(Flag::NegativeCompanion);
    } else if !is_primitive(&b) {
        flags.push(Flag::Imprimitive);
    }
    if !p.is_squarefree() {
        flags.push(Flag::RepeatedRoots);
    }
    if m % 2 == 1 {
        flags.push(Flag::OddDegree);
    }
    let sq = p.squarefree_part();
    let roots = aberth(&sq);
    let maxmod = roots.iter().map(|r| r.z.norm()).fold(0.0, f64::max);
    let cand = roots
        .iter()
        .filter(|r| r.z.re > 0.0 && r.z.im.abs() <= r.radius + 1e-9 * r.z.norm())
        .filter(|r| r.z.norm() + r.radius >= maxmod * (1.0 - 1e-9))
        .max_by(|x, y| x.z.re.total_cmp(&y.z.re))
        .ok_or(Error::NoPerronRoot)?;
    let w = precision + 10;
    let eps = refine_real_root(&sq, cand.z.re, w)
        .ok_or_else(|| Error::PrecisionExhausted("could not isolate the dominant real root".into()))?;
    if !eps.sub(&Real::one()).is_positive() {
        return Err(Error::NoPerronRoot);
    }
    let ef = eps.to_f64();
    let others = roots.iter().filter(|r| !std::ptr::eq(*r, cand));
    if others.clone().any(|r| r.z.norm() + r.radius >= ef * (1.0 - 1e-9)) {
        flags.push(Flag::NonStrictDominance);
    }
    let mut alphas = Vec::with_capacity(m.saturating_sub(1));
    let mut pw = eps.clone();
    for _ in 1..m {
        alphas.push(pw.rescale(precision));
        pw = pw.mul(&eps, w);
    }
    flags.sort();
    Ok(RMData { minpoly: p.clone(), companion: b, epsilon: eps.rescale(precision), alphas, precision, flags, provenance, roots })
}

/// The companion polynomial x^M − Σ_{i<M} lift(c_i) x^i read off the
/// τ^(e·i) coefficients of ρ_a, M = r·deg a.
pub fn drinfeld_minpoly<C: Liftable>(d: &DrinfeldModule<C>, spec: &LiftSpec) -> Result<IntPoly> {
    let rho = d.rho_of(&spec.a);
    let e = d.tower().e() as usize;
    let big_m = rho.degree().unwrap_or(0) / e;
    if big_m == 0 {
        return Err(Error::DegenerateLift("ρ_a has τ-degree 0".into()));
    }
    let mut coeffs = Vec::with_capacity(big_m + 1);
    for i in 0..big_m {
        let l = rho.coeff(e * i).lift(&spec.t0);
        if !l.is_integer() {
            return Err(Error::DegenerateLift(format!("coefficient {} lifts to non-integer {l}", rho.coeff(e * i))));
        }
        coeffs.push(-l.to_integer());
    }
    coeffs.push(BigInt::one());
    Ok(IntPoly::new(coeffs))
}

fn provenance(spec: &LiftSpec) -> Provenance {
    Provenance::DrinfeldLift { a: spec.a.to_string(), t0: spec.t0.clone() }
}

/// RM data of a module over a special carrier, computed on its canonical
/// conjugate so that isomorphic modules give identical data.
pub fn functor_map_special(d: &SpecialModule, spec: &LiftSpec, precision: u32) -> Result<RMData> {
    let canon = canonical_form(d)?;
    rm_data(&drinfeld_minpoly(&canon, spec)?, precision, provenance(spec))
}

pub fn functor_map_generic(d: &DrinfeldModule<RatFunc>, spec: &LiftSpec, precision: u32) -> Result<RMData> {
    rm_data(&drinfeld_minpoly(d, spec)?, precision, provenance(spec))
}

fn log_eps(rm: &RMData, w: u32) -> Result<Real> {
    let l = rm.epsilon.ln(w)?;
    if !l.is_positive() {
        return Err(Error::NoPerronRoot);
    }
    Ok(l)
}

/// log(ε)·e^(2πiα_k) for every α_k.
pub fn torsion_image(rm: &RMData, precision: u32) -> Result<Vec<Complex>> {
    let w = precision + 10;
    let l = log_eps(rm, w)?;
    Ok(rm.alphas.iter().map(|a| Complex::unit(a, w).scale(&l, w).rescale(precision)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Complex,
    Real,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Complex => "complex",
            Mode::Real => "real",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    pub mode: Mode,
    pub values: Vec<Complex>,
    pub precision: u32,
    /// Detected minimal polynomials, when certification was requested.
    pub certified: Option<Vec<Option<IntPoly>>>,
}

/// Certification bounds for `generators`.
#[derive(Clone, Debug)]
pub struct CertifySpec {
    pub degree_bound: u32,
    pub height_bound: BigInt,
}

/// Complex mode: exp(2πiα_k + log log ε). Real mode: cos(2πα_k)·log ε.
pub fn generators(rm: &RMData, mode: Mode, precision: u32, certify: Option<&CertifySpec>) -> Result<GeneratorSet> {
    let w = precision + 10;
    let l = log_eps(rm, w)?;
    let two_pi = Real::pi(w).mul_int(&BigInt::from(2));
    let values: Vec<Complex> = match mode {
        Mode::Complex => {
            let ll = l.ln(w)?;
            rm.alphas
                .iter()
                .map(|a| Complex::new(ll.clone(), two_pi.mul(a, w)).exp(w).rescale(precision))
                .collect()
        }
        Mode::Real => rm
            .alphas
            .iter()
            .map(|a| Complex::real(two_pi.mul(a, w).cos(w).mul(&l, w).rescale(precision)))
            .collect(),
    };
    let certified = match certify {
        None => None,
        Some(c) => Some(
            values
                .iter()
                .map(|v| Ok(detect_minpoly(v, precision, c.degree_bound, &c.height_bound)?.map(|d| d.poly)))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(GeneratorSet { mode, values, precision, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::GenericModule;
    use crate::funcfield::FieldTower;
    use crate::ore::OrePoly;

    fn close(x: &Real, s: &str, tol: u32) -> bool {
        let y = Real::parse_decimal(s).unwrap();
        x.dist_upper(&y) < BigRational::new(1.into(), crate::numeric::pow10(tol))
    }

    #[test]
    fn golden_ratio() {
        let rm = functor_map_poly(&IntPoly::from_i64(&[-1, -1, 1]), 50).unwrap();
        assert_eq!(rm.companion, vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(1)]]);
        assert!(close(&rm.epsilon, "1.6180339887498948482045868343656381177203091798058", 45));
        assert!(close(&rm.alphas[0], "1.6180339887498948482045868343656381177203091798058", 45));
        assert!(rm.flags.is_empty());
        let t = torsion_image(&rm, 50).unwrap();
        let g = generators(&rm, Mode::Complex, 50, None).unwrap();
        assert!(t[0].dist_upper(&g.values[0]) < BigRational::new(1.into(), crate::numeric::pow10(45)));
        assert!(close(&t[0].re, "-0.35483062356222053995443525835090545653439220747", 40));
        assert!(close(&t[0].im, "-0.32505391731163636950245180435800114161376790699", 40));
    }

    #[test]
    fn reducible_and_failing() {
        let rm = functor_map_poly(&IntPoly::from_i64(&[0, -2, 1]), 30).unwrap();
        assert!(close(&rm.epsilon, "2", 28));
        assert!(close(&rm.alphas[0], "2", 28));
        assert!(rm.flags.contains(&Flag::Imprimitive));
        assert_eq!(functor_map_poly(&IntPoly::from_i64(&[1, 0, 1]), 30).unwrap_err(), Error::NoPerronRoot);
    }

    #[test]
    fn charpoly_matches() {
        let p = IntPoly::from_i64(&[3, -1, 4, -1, 5, 1]);
        let b = companion(&p).unwrap();
        assert_eq!(charpoly(&b), p);
    }

    #[test]
    fn lifts() {
        let f2 = FieldTower::new(2, 1).unwrap();
        let t = APoly::t(&f2);
        let spec = LiftSpec::new(t.clone(), 2).unwrap();
        let c = GenericModule::carlitz(&f2);
        assert_eq!(lift_to_intpoly(&c, &spec).unwrap().to_string(), "x^2 + x");
        let f3 = FieldTower::new(3, 1).unwrap();
        let c3 = GenericModule::carlitz(&f3);
        let spec3 = LiftSpec::new(APoly::t(&f3), 2).unwrap();
        assert_eq!(lift_to_intpoly(&c3, &spec3).unwrap().to_string(), "x^3 + x");
        let konst = LiftSpec::new(APoly::one(&f3), 2).unwrap();
        assert!(matches!(lift_to_intpoly(&c3, &konst), Err(Error::DegenerateLift(_))));
        assert!(LiftSpec::new(t, 1).is_err());
    }

    #[test]
    fn conjugates_share_rm_data() {
        let f4 = FieldTower::new(2, 2).unwrap();
        let g2 = f4.generator(2);
        let rho = OrePoly::new(
            &(f4.clone(), 2),
            vec![g2.clone(), f4.zero(2), g2.square(), f4.zero(2), f4.from_int(2, 1)],
        )
        .unwrap();
        let d = SpecialModule::new(rho).unwrap();
        let spec = LiftSpec::new(APoly::t(&f4), 2).unwrap();
        let u = g2.add(&f4.one(2));
        let d2 = d.conjugate(&u).unwrap();
        assert_ne!(d.rho_t(), d2.rho_t());
        let r1 = functor_map_special(&d, &spec, 30);
        let r2 = functor_map_special(&d2, &spec, 30);
        assert_eq!(r1.unwrap(), r2.unwrap());
    }
}
