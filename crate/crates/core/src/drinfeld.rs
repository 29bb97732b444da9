//! Drinfeld modules ρ: A → L⟨τ⟩ over a generic carrier (L = k) or a special
//! carrier (L = F_{q^m} through a structure map γ), their torsion, the
//! Frobenius action on torsion, and morphisms.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::funcfield::{roots_in_extension, APoly, FFElement, FieldTower, RatFunc};
use crate::ore::{Coeff, OrePoly};

/// A Drinfeld module determined by ρ_T.
///
/// `C = RatFunc` is the generic carrier with γ the inclusion A ⊂ k;
/// `C = FFElement` is a special carrier with γ(T) ∈ F_{q^m}.
#[derive(Clone, PartialEq, Debug)]
pub struct DrinfeldModule<C: Coeff> {
    rho_t: OrePoly<C>,
    rank: usize,
}

pub type GenericModule = DrinfeldModule<RatFunc>;
pub type SpecialModule = DrinfeldModule<FFElement>;

impl<C: Coeff> DrinfeldModule<C> {
    /// Validates ρ_T: positive τ-degree, only τ^(e·i) terms (so that ρ_T
    /// commutes with F_q), constant term γ(T).
    fn check(rho_t: OrePoly<C>, gamma_t: &C) -> Result<Self> {
        let tower = C::tower_of(rho_t.ctx()).clone();
        let e = tower.e() as usize;
        let deg = match rho_t.degree() {
            Some(d) if d > 0 => d,
            _ => return Err(Error::InvalidModule("ρ_T must have positive τ-degree".into())),
        };
        if let Some((i, _)) = rho_t.coeffs().iter().enumerate().find(|(i, c)| i % e != 0 && !c.is_zero()) {
            return Err(Error::InvalidModule(format!(
                "term τ^{i} is not F_{}-linear; τ-powers must be multiples of {e}",
                tower.q()
            )));
        }
        if rho_t.coeff(0) != *gamma_t {
            return Err(Error::InvalidModule(format!("constant term {} differs from γ(T) = {gamma_t}", rho_t.coeff(0))));
        }
        Ok(DrinfeldModule { rank: deg / e, rho_t })
    }

    pub fn tower(&self) -> &FieldTower {
        C::tower_of(self.rho_t.ctx())
    }

    pub fn ctx(&self) -> &C::Ctx {
        self.rho_t.ctx()
    }

    pub fn rho_t(&self) -> &OrePoly<C> {
        &self.rho_t
    }

    pub fn gamma_t(&self) -> C {
        self.rho_t.coeff(0)
    }

    /// Rank r: the τ-degree of ρ_T in units of τ^e.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// γ(a) = Σ a_i γ(T)^i.
    pub fn gamma(&self, a: &APoly) -> C {
        let ctx = self.ctx();
        let g = self.gamma_t();
        let mut acc = C::zero(ctx);
        for c in a.coeffs().iter().rev() {
            acc = acc.mul(&g).add(&C::from_base(ctx, c));
        }
        acc
    }

    /// ρ_a = Σ a_i (ρ_T)^i, by Horner's rule. Constants of F_q commute with
    /// ρ_T, so the order of scalar multiplication does not matter.
    pub fn rho_of(&self, a: &APoly) -> OrePoly<C> {
        let ctx = self.ctx();
        let mut acc = OrePoly::zero(ctx);
        for c in a.coeffs().iter().rev() {
            acc = acc
                .mul(&self.rho_t)
                .and_then(|x| x.add(&OrePoly::constant(C::from_base(ctx, c))))
                .expect("same domain");
        }
        acc
    }

    /// q^(r·deg a), the size of Λ[a] when ρ_a is separable.
    pub fn torsion_count_predict(&self, a: &APoly) -> Result<u128> {
        let Some(d) = a.degree() else { return Err(Error::ZeroPolynomial) };
        if !self.rho_of(a).is_separable()? {
            return Err(Error::Inseparable);
        }
        let exp = (self.rank * d) as u32;
        (self.tower().q() as u128)
            .checked_pow(exp)
            .ok_or_else(|| Error::BoundExceeded(format!("q^{exp} overflows")))
    }

    pub fn same_carrier(&self, o: &Self) -> Result<()> {
        if self.ctx() != o.ctx() {
            return Err(Error::CarrierMismatch("modules live over different carriers".into()));
        }
        Ok(())
    }

    /// Whether f·ρ_T = ρ̃_T·f. Together with F_q-linearity this gives
    /// f·ρ_a = ρ̃_a·f for every a.
    pub fn is_morphism(f: &OrePoly<C>, src: &Self, dst: &Self) -> Result<bool> {
        src.same_carrier(dst)?;
        if f.ctx() != src.ctx() {
            return Err(Error::CarrierMismatch("morphism coefficients live elsewhere".into()));
        }
        if src.rank != dst.rank {
            return Err(Error::CarrierMismatch(format!("ranks {} and {} differ", src.rank, dst.rank)));
        }
        Ok(f.mul(&src.rho_t)? == dst.rho_t.mul(f)?)
    }

    /// The conjugate u·ρ·u⁻¹, isomorphic to ρ through the unit u.
    pub fn conjugate(&self, u: &C) -> Result<Self> {
        let uinv = u.inv()?;
        let f = OrePoly::constant(u.clone());
        let rho = f.mul(&self.rho_t)?.mul(&OrePoly::constant(uinv))?;
        Self::check(rho, &self.gamma_t())
    }
}

impl GenericModule {
    /// A module over k; the constant term of ρ_T must be T.
    pub fn new(rho_t: OrePoly<RatFunc>) -> Result<Self> {
        let t = RatFunc::t(&rho_t.ctx().clone());
        Self::check(rho_t, &t)
    }

    /// The Carlitz module ρ_T = T + τ^e.
    pub fn carlitz(tower: &FieldTower) -> Self {
        let rho = OrePoly::constant(RatFunc::t(tower))
            .add(&OrePoly::tau_pow(tower, tower.e() as usize))
            .expect("same domain");
        Self::new(rho).expect("Carlitz is a Drinfeld module")
    }

    /// Specialise T ↦ γ(T) in every coefficient.
    pub fn specialize(&self, gamma_t: &FFElement) -> Result<SpecialModule> {
        let ctx = (self.tower().clone(), gamma_t.level());
        let rho = self.rho_t.map_coeffs(&ctx, |c| c.specialize(gamma_t))?;
        SpecialModule::new(rho)
    }
}

impl SpecialModule {
    /// A module over F_{q^m}; γ(T) is read off as the constant term.
    pub fn new(rho_t: OrePoly<FFElement>) -> Result<Self> {
        let g = rho_t.coeff(0);
        Self::check(rho_t, &g)
    }

    /// The Carlitz module with γ(T) = `gamma_t`.
    pub fn carlitz(gamma_t: &FFElement) -> Self {
        let ctx = gamma_t.ctx();
        let rho = OrePoly::constant(gamma_t.clone())
            .add(&OrePoly::tau_pow(&ctx, gamma_t.tower().e() as usize))
            .expect("same domain");
        Self::new(rho).expect("Carlitz is a Drinfeld module")
    }

    pub fn level(&self) -> u32 {
        self.ctx().1
    }

    /// Λ[a]: the roots of ρ_a, searched in F_{q^L} for L up to `max_level`.
    pub fn torsion(&self, a: &APoly, max_level: u32) -> Result<TorsionModule> {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let rho_a = self.rho_of(a);
        let separable = rho_a.is_separable()?;
        let search = roots_in_extension(&rho_a.additive_upoly()?, max_level.max(self.level()))?;
        let mut tm = TorsionModule {
            module: self.clone(),
            a: a.clone(),
            roots: search.distinct(),
            multiplicity: search.roots.first().map_or(1, |r| r.1),
            level: search.level,
            complete: search.complete,
            separable,
            structure: None,
        };
        if tm.complete {
            tm.structure = Some(tm.compute_structure()?);
        }
        Ok(tm)
    }

    /// Roots of the additive form of `f`, with multiplicity of 0.
    pub fn kernel(&self, f: &OrePoly<FFElement>, max_level: u32) -> Result<Kernel<FFElement>> {
        let search = roots_in_extension(&f.additive_upoly()?, max_level.max(self.level()))?;
        Ok(Kernel { poly: f.clone(), roots: Some(search.distinct()), complete: search.complete })
    }
}

/// Kernel of an isogeny: the additive polynomial, plus its roots when the
/// carrier is finite.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel<C: Coeff> {
    pub poly: OrePoly<C>,
    pub roots: Option<Vec<FFElement>>,
    pub complete: bool,
}

/// A morphism ρ → ρ̃ given by f with f·ρ_T = ρ̃_T·f.
#[derive(Clone, Debug, PartialEq)]
pub struct DrinfeldMorphism<C: Coeff> {
    pub source: DrinfeldModule<C>,
    pub target: DrinfeldModule<C>,
    pub f: OrePoly<C>,
}

impl<C: Coeff> DrinfeldMorphism<C> {
    pub fn new(f: OrePoly<C>, source: DrinfeldModule<C>, target: DrinfeldModule<C>) -> Result<Self> {
        if !DrinfeldModule::is_morphism(&f, &source, &target)? {
            return Err(Error::InvalidModule("f·ρ_T ≠ ρ̃_T·f".into()));
        }
        Ok(DrinfeldMorphism { source, target, f })
    }

    pub fn is_isogeny(&self) -> bool {
        !self.f.is_zero()
    }
}

/// Isogeny test for a generic carrier; the kernel is described by f itself.
pub fn is_isogeny_generic(f: &OrePoly<RatFunc>, src: &GenericModule, dst: &GenericModule) -> Result<(bool, Option<Kernel<RatFunc>>)> {
    if !DrinfeldModule::is_morphism(f, src, dst)? || f.is_zero() {
        return Ok((false, None));
    }
    Ok((true, Some(Kernel { poly: f.clone(), roots: None, complete: true })))
}

/// Isogeny test for a special carrier, with the kernel's roots.
pub fn is_isogeny_special(
    f: &OrePoly<FFElement>,
    src: &SpecialModule,
    dst: &SpecialModule,
    max_level: u32,
) -> Result<(bool, Option<Kernel<FFElement>>)> {
    if !DrinfeldModule::is_morphism(f, src, dst)? || f.is_zero() {
        return Ok((false, None));
    }
    Ok((true, Some(src.kernel(f, max_level)?)))
}

/// Λ_ρ[a] inside F_{q^L}.
#[derive(Clone, Debug)]
pub struct TorsionModule {
    pub module: SpecialModule,
    pub a: APoly,
    /// Distinct roots, sorted.
    pub roots: Vec<FFElement>,
    /// Multiplicity of every root (ρ_a is additive, so all agree).
    pub multiplicity: u32,
    pub level: u32,
    pub complete: bool,
    pub separable: bool,
    /// Invariant factors d_1 | d_2 | … as monic polynomials, when complete.
    pub structure: Option<Vec<APoly>>,
}

impl TorsionModule {
    /// Apply ρ_b to a root.
    pub fn act(&self, b: &APoly, x: &FFElement) -> Result<FFElement> {
        self.module.rho_of(b).eval_at(x)
    }

    /// Invariant factors from the sizes |Λ[π^j]| for each prime π | a.
    fn compute_structure(&self) -> Result<Vec<APoly>> {
        let tower = self.module.tower();
        let q = tower.q() as u128;
        let mut per_prime: Vec<(APoly, Vec<u32>)> = Vec::new();
        for (pi, k) in self.a.factor() {
            let d = pi.degree().unwrap() as u32;
            let unit = q.pow(d);
            let mut sizes = vec![0u32];
            let mut pj = APoly::one(tower);
            for _ in 0..k {
                pj = pj.mul(&pi);
                let rho = self.module.rho_of(&pj);
                let count = self
                    .roots
                    .iter()
                    .map(|x| rho.eval_at(x).map(|y| y.is_zero()))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .filter(|&z| z)
                    .count() as u128;
                sizes.push(log_exact(count, unit).ok_or_else(|| {
                    Error::Invalid(format!("|Λ[{pj}]| = {count} is not a power of {unit}"))
                })?);
            }
            // number of cyclic summands of order ≥ π^j is sizes[j] - sizes[j-1]
            let ge: Vec<u32> = (1..=k as usize).map(|j| sizes[j] - sizes[j - 1]).collect();
            let mut exps = Vec::new();
            for j in (1..=k as usize).rev() {
                let exact = ge[j - 1] - if j < k as usize { ge[j] } else { 0 };
                exps.extend(std::iter::repeat(j as u32).take(exact as usize));
            }
            per_prime.push((pi, exps));
        }
        let count = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        // exps are sorted descending; the largest factor is built from index 0
        let mut factors: Vec<APoly> = (0..count)
            .map(|i| {
                per_prime.iter().fold(APoly::one(tower), |acc, (pi, e)| match e.get(i) {
                    Some(&j) => acc.mul(&pi.pow(j)),
                    None => acc,
                })
            })
            .collect();
        factors.reverse();
        Ok(factors)
    }

    /// Whether Λ[a] ≅ (A/aA)^r.
    pub fn is_free(&self) -> bool {
        let target = self.a.monic();
        self.structure
            .as_ref()
            .is_some_and(|s| s.len() == self.module.rank() && s.iter().all(|f| *f == target))
    }

    /// A greedy A/aA-basis: the smallest root whose cyclic submodule is free
    /// and meets the current span trivially, repeated.
    pub fn basis(&self) -> Result<(Vec<FFElement>, HashMap<FFElement, Vec<APoly>>)> {
        if !self.complete {
            return Err(Error::IncompleteTorsion);
        }
        if !self.is_free() {
            return Err(Error::NonFreeStructure);
        }
        let tower = self.module.tower();
        let n = self.a.degree().unwrap();
        let residues = APoly::all_below_degree(tower, n);
        let zero = tower.zero(self.level);
        let mut coords: HashMap<FFElement, Vec<APoly>> = HashMap::from([(zero.clone(), Vec::new())]);
        let mut basis = Vec::new();
        let rank = self.module.rank();
        for lam in &self.roots {
            if basis.len() == rank {
                break;
            }
            let orbit: Vec<(APoly, FFElement)> = residues
                .iter()
                .map(|b| Ok((b.clone(), self.act(b, lam)?)))
                .collect::<Result<_>>()?;
            let distinct: HashSet<&FFElement> = orbit.iter().map(|(_, x)| x).collect();
            if distinct.len() != residues.len() {
                continue;
            }
            if orbit.iter().any(|(b, x)| !b.is_zero() && coords.contains_key(x)) {
                continue;
            }
            let mut next = HashMap::with_capacity(coords.len() * orbit.len());
            for (s, cs) in &coords {
                for (b, x) in &orbit {
                    let mut c = cs.clone();
                    c.resize(basis.len(), APoly::zero(tower));
                    c.push(b.clone());
                    next.insert(s.add(x), c);
                }
            }
            if next.len() != coords.len() * orbit.len() {
                continue;
            }
            coords = next;
            basis.push(lam.clone());
        }
        if basis.len() != rank || coords.len() != self.roots.len() {
            return Err(Error::NonFreeStructure);
        }
        Ok((basis, coords))
    }

    /// Matrix over A/aA of λ ↦ λ^(q^m), m the carrier level, on the greedy basis.
    pub fn frobenius_matrix(&self) -> Result<FrobeniusMatrix> {
        let (basis, coords) = self.basis()?;
        let tower = self.module.tower();
        let s = tower.e() as u64 * self.module.level() as u64;
        let r = basis.len();
        let mut entries = vec![vec![APoly::zero(tower); r]; r];
        for (j, b) in basis.iter().enumerate() {
            let img = b.frobenius(s);
            let c = coords.get(&img).ok_or_else(|| Error::Invalid("Frobenius left the torsion module".into()))?;
            for i in 0..r {
                entries[i][j] = c[i].clone();
            }
        }
        let m = FrobeniusMatrix { modulus: self.a.monic(), entries, basis };
        Ok(m)
    }
}

fn log_exact(mut n: u128, base: u128) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if n % base != 0 {
            return None;
        }
        n /= base;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// A square matrix over A/aA.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusMatrix {
    pub modulus: APoly,
    pub entries: Vec<Vec<APoly>>,
    pub basis: Vec<FFElement>,
}

impl FrobeniusMatrix {
    fn reduce(&self, x: APoly) -> APoly {
        x.rem(&self.modulus).expect("nonzero modulus")
    }

    pub fn mul(&self, o: &FrobeniusMatrix) -> FrobeniusMatrix {
        let r = self.entries.len();
        let tower = self.modulus.tower();
        let entries = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let s = (0..r).fold(APoly::zero(tower), |acc, k| acc.add(&self.entries[i][k].mul(&o.entries[k][j])));
                        self.reduce(s)
                    })
                    .collect()
            })
            .collect();
        FrobeniusMatrix { modulus: self.modulus.clone(), entries, basis: self.basis.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
    }

    /// Determinant reduced mod a, by cofactor expansion.
    pub fn det(&self) -> APoly {
        fn rec(m: &[Vec<APoly>], tower: &FieldTower) -> APoly {
            let n = m.len();
            if n == 0 {
                return APoly::one(tower);
            }
            let mut acc = APoly::zero(tower);
            for (j, x) in m[0].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<APoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = x.mul(&rec(&minor, tower));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        self.reduce(rec(&self.entries, self.modulus.tower()))
    }

    /// Invertible over A/aA iff gcd(det, a) = 1.
    pub fn is_invertible(&self) -> bool {
        self.det().gcd(&self.modulus).is_one()
    }

    /// Multiplicative order, searched up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apoly(t: &FieldTower, c: &[i64]) -> APoly {
        APoly::from_ints(t, c)
    }

    #[test]
    fn carlitz_rho_of_t_squared() {
        let tw = FieldTower::new(2, 1).unwrap();
        let d = GenericModule::carlitz(&tw);
        let rho = d.rho_of(&apoly(&tw, &[0, 0, 1]));
        let t = APoly::t(&tw);
        assert_eq!(
            rho.coeffs(),
            &[
                RatFunc::from_poly(t.mul(&t)),
                RatFunc::from_poly(t.add(&t.mul(&t))),
                RatFunc::one(&tw)
            ]
        );
        assert_eq!(d.rho_of(&APoly::one(&tw)), OrePoly::one(&tw));
        let t1 = apoly(&tw, &[1, 1]);
        assert_eq!(d.rho_of(&t1), d.rho_t().add(&OrePoly::one(&tw)).unwrap());
    }

    #[test]
    fn carlitz_over_f3_torsion() {
        let tw = FieldTower::new(3, 1).unwrap();
        let d = SpecialModule::carlitz(&tw.one(1));
        let tm = d.torsion(&APoly::t(&tw), 2).unwrap();
        assert!(tm.complete);
        assert_eq!(tm.roots.len(), 3);
        assert_eq!(tm.level, 2);
        assert_eq!(tm.structure.as_ref().unwrap(), &vec![APoly::t(&tw)]);
        let fm = tm.frobenius_matrix().unwrap();
        assert_eq!(fm.entries, vec![vec![apoly(&tw, &[2])]]);
        assert!(fm.is_invertible());
        assert_eq!(fm.order(10), Some(2));
    }

    #[test]
    fn f4_carlitz_needs_tau_squared() {
        let tw = FieldTower::new(2, 2).unwrap();
        let g = tw.gen();
        let ctx = (tw.clone(), 1);
        let bad = OrePoly::constant(g.clone()).add(&OrePoly::tau_pow(&ctx, 1)).unwrap();
        assert!(matches!(SpecialModule::new(bad), Err(Error::InvalidModule(_))));
        let d = SpecialModule::carlitz(&g);
        assert_eq!(d.rank(), 1);
        let tm = d.torsion(&APoly::t(&tw), 6).unwrap();
        assert!(tm.complete);
        assert_eq!(tm.roots.len(), 4);
        assert_eq!(tm.level, 3);
    }

    #[test]
    fn frobenius_trivial_when_roots_in_carrier() {
        let tw = FieldTower::new(2, 2).unwrap();
        let d = SpecialModule::carlitz(&tw.one(1));
        let tm = d.torsion(&APoly::t(&tw), 1).unwrap();
        assert!(tm.complete);
        assert_eq!(tm.roots.len(), 4);
        assert!(tm.frobenius_matrix().unwrap().is_identity());
    }

    #[test]
    fn unit_torsion_is_trivial() {
        let tw = FieldTower::new(3, 1).unwrap();
        let d = SpecialModule::carlitz(&tw.one(1));
        let tm = d.torsion(&APoly::one(&tw), 1).unwrap();
        assert_eq!(tm.roots, vec![tw.zero(1)]);
        assert_eq!(tm.structure.unwrap(), Vec::<APoly>::new());
    }

    #[test]
    fn count_predictions() {
        let tw2 = FieldTower::new(2, 1).unwrap();
        assert_eq!(SpecialModule::carlitz(&tw2.one(1)).torsion_count_predict(&APoly::t(&tw2)).unwrap(), 2);
        let tw3 = FieldTower::new(3, 1).unwrap();
        let ctx = (tw3.clone(), 1);
        let rho = OrePoly::constant(tw3.one(1))
            .add(&OrePoly::tau_pow(&ctx, 1))
            .unwrap()
            .add(&OrePoly::tau_pow(&ctx, 2))
            .unwrap();
        let d = SpecialModule::new(rho).unwrap();
        assert_eq!(d.torsion_count_predict(&APoly::t(&tw3)).unwrap(), 9);
        let tm = d.torsion(&APoly::t(&tw3), 6).unwrap();
        assert!(tm.complete);
        assert_eq!(tm.roots.len(), 9);
        assert!(tm.is_free());
        assert_eq!(d.torsion_count_predict(&APoly::one(&tw3)).unwrap(), 1);
        let d1 = SpecialModule::carlitz(&tw2.one(1));
        assert_eq!(d1.torsion_count_predict(&apoly(&tw2, &[1, 1])).unwrap_err(), Error::Inseparable);
    }

    #[test]
    fn morphisms() {
        let tw = FieldTower::new(2, 1).unwrap();
        let d = GenericModule::carlitz(&tw);
        let zero = OrePoly::zero(&tw);
        assert!(DrinfeldModule::is_morphism(&zero, &d, &d).unwrap());
        assert!(!is_isogeny_generic(&zero, &d, &d).unwrap().0);
        let (iso, k) = is_isogeny_generic(&OrePoly::one(&tw), &d, &d).unwrap();
        assert!(iso);
        assert_eq!(k.unwrap().poly, OrePoly::one(&tw));
        let (iso, k) = is_isogeny_generic(d.rho_t(), &d, &d).unwrap();
        assert!(iso);
        assert_eq!(&k.unwrap().poly, d.rho_t());

        let s = d.specialize(&tw.one(1)).unwrap();
        let (iso, k) = is_isogeny_special(s.rho_t(), &s, &s, 4).unwrap();
        assert!(iso);
        assert_eq!(k.unwrap().roots.unwrap(), s.torsion(&APoly::t(&tw), 4).unwrap().roots);
        let (_, k) = is_isogeny_special(&OrePoly::one(&(tw.clone(), 1)), &s, &s, 1).unwrap();
        assert_eq!(k.unwrap().roots.unwrap(), vec![tw.zero(1)]);
    }

    #[test]
    fn conjugation_is_an_isomorphism() {
        let tw = FieldTower::new(2, 1).unwrap();
        let ctx = (tw.clone(), 3);
        let g = tw.generator(3);
        let rho = OrePoly::constant(g.clone())
            .add(&OrePoly::constant(g.square()).mul(&OrePoly::tau_pow(&ctx, 1)).unwrap())
            .unwrap();
        let d = SpecialModule::new(rho).unwrap();
        let u = g.add(&tw.one(3));
        let d2 = d.conjugate(&u).unwrap();
        let f = OrePoly::constant(u);
        assert!(DrinfeldModule::is_morphism(&f, &d, &d2).unwrap());
    }
}
