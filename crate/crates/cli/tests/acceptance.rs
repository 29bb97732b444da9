//! Acceptance suite: one PASS/FAIL line per criterion. Runs with a custom
//! harness so the report is printed as-is.

use std::collections::HashSet;
use std::panic;
use std::process::Command;
use std::time::Instant;

use ncfield::cluster::{congruent_zero, laurent_add, ExchangeMatrix, Laurent, RatFn, Seed};
use ncfield::drinfeld::{DrinfeldModule, SpecialModule};
use ncfield::funcfield::{APoly, FFElement, FieldTower, RatFunc};
use ncfield::functor::{self, charpoly, companion, LiftSpec, Mode};
use ncfield::intpoly::IntPoly;
use ncfield::lattice::{decimal_ball, detect_minpoly};
use ncfield::nctorus::{SOmm, ThetaMatrix};
use ncfield::numeric::{pow10, Complex, Real};
use ncfield::ore::OrePoly;
use ncfield::text;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn tol(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow10(digits))
}

// ----- 1. twisted polynomial ring laws -----

fn random_ff(t: &FieldTower, rng: &mut StdRng) -> FFElement {
    t.element_at(1, rng.gen_range(0..t.q()))
}

fn random_ore_f(t: &FieldTower, rng: &mut StdRng, max_deg: usize) -> OrePoly<FFElement> {
    let n = rng.gen_range(0..=max_deg + 1);
    OrePoly::new(&(t.clone(), 1), (0..n).map(|_| random_ff(t, rng)).collect()).unwrap()
}

fn random_apoly(t: &FieldTower, rng: &mut StdRng, max_deg: usize) -> APoly {
    let n = rng.gen_range(0..=max_deg + 1);
    APoly::new(t, (0..n).map(|_| random_ff(t, rng)).collect())
}

fn random_ratfunc(t: &FieldTower, rng: &mut StdRng) -> RatFunc {
    let num = random_apoly(t, rng, 2);
    let mut den = random_apoly(t, rng, 2);
    while den.is_zero() {
        den = random_apoly(t, rng, 2);
    }
    RatFunc::new(num, den).unwrap()
}

fn random_ore_k(t: &FieldTower, rng: &mut StdRng) -> OrePoly<RatFunc> {
    let n = rng.gen_range(0..=3);
    OrePoly::new(t, (0..n).map(|_| random_ratfunc(t, rng)).collect()).unwrap()
}

fn ring_laws<C: ncfield::ore::Coeff>(f: &OrePoly<C>, g: &OrePoly<C>, h: &OrePoly<C>) -> bool {
    let assoc = f.mul(g).unwrap().mul(h).unwrap() == f.mul(&g.mul(h).unwrap()).unwrap();
    let left = f.mul(&g.add(h).unwrap()).unwrap() == f.mul(g).unwrap().add(&f.mul(h).unwrap()).unwrap();
    let right = f.add(g).unwrap().mul(h).unwrap() == f.mul(h).unwrap().add(&g.mul(h).unwrap()).unwrap();
    assoc && left && right
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn criterion1() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let f2 = FieldTower::new(2, 1).unwrap();
    for _ in 0..500 {
        let (f, g, h) = (random_ore_k(&f2, &mut rng), random_ore_k(&f2, &mut rng), random_ore_k(&f2, &mut rng));
        ensure!(ring_laws(&f, &g, &h), "ring law fails over F_2(T) for {f}, {g}, {h}");
    }
    for (p, e) in [(2, 2), (3, 2)] {
        let t = FieldTower::new(p, e).unwrap();
        for _ in 0..500 {
            let (f, g, h) = (random_ore_f(&t, &mut rng, 3), random_ore_f(&t, &mut rng, 3), random_ore_f(&t, &mut rng, 3));
            ensure!(ring_laws(&f, &g, &h), "ring law fails over F_{} for {f}, {g}, {h}", t.q());
        }
    }
    let mut fields = Vec::new();
    for p in (2..=81u64).filter(|&p| is_prime(p)) {
        let mut e = 1;
        while p.pow(e) <= 81 {
            fields.push((p, e));
            e += 1;
        }
    }
    let mut evals = 0u64;
    for &(p, e) in &fields {
        let t = FieldTower::new(p, e).unwrap();
        let all = t.elements(1).unwrap();
        for _ in 0..3 {
            let f = random_ore_f(&t, &mut rng, 3);
            let g = random_ore_f(&t, &mut rng, 3);
            let fg = f.mul(&g).unwrap();
            let fx: Vec<FFElement> = all.iter().map(|x| f.eval(x).unwrap()).collect();
            for (i, x) in all.iter().enumerate() {
                for (j, y) in all.iter().enumerate() {
                    ensure!(f.eval(&x.add(y)).unwrap() == fx[i].add(&fx[j]), "additivity fails over F_{}", t.q());
                }
                ensure!(fg.eval(x).unwrap() == f.eval(&g.eval(x).unwrap()).unwrap(), "composition fails over F_{}", t.q());
                evals += all.len() as u64 + 1;
            }
        }
    }
    Ok(format!("1500 random triples, {} fields with at most 81 elements, {evals} exhaustive evaluations", fields.len()))
}

// ----- 2 and 3. torsion and Frobenius -----

struct TorsionCase {
    label: String,
    tm: ncfield::drinfeld::TorsionModule,
}

fn torsion_cases() -> Result<(Vec<TorsionCase>, usize), String> {
    let mut out = Vec::new();
    let mut skipped = 0;
    for (p, e) in [(2, 1), (3, 1), (2, 2)] {
        let t = FieldTower::new(p, e).unwrap();
        let q = t.q();
        let tt = APoly::t(&t);
        let targets = [tt.clone(), tt.add(&APoly::one(&t)), tt.mul(&tt)];
        for gamma in t.elements(1).unwrap().into_iter().filter(|g| !g.is_zero()) {
            let d = SpecialModule::carlitz(&gamma);
            for a in &targets {
                let label = format!("F_{q}, γ(T) = {gamma}, a = {a}");
                // γ(a) = 0 exactly when ρ_a has no linear term
                if a.eval(&gamma).unwrap().is_zero() {
                    ensure!(d.torsion_count_predict(a).is_err(), "{label}: inseparable case not reported");
                    skipped += 1;
                    continue;
                }
                let tm = d.torsion(a, 12).map_err(|e| format!("{label}: {e}"))?;
                out.push(TorsionCase { label, tm });
            }
        }
    }
    Ok((out, skipped))
}

fn criterion2() -> Outcome {
    let (cases, skipped) = torsion_cases()?;
    for c in &cases {
        let tm = &c.tm;
        let t = tm.module.tower();
        let expect = (t.q() as usize).pow(tm.a.degree().unwrap() as u32);
        ensure!(tm.complete, "{}: search incomplete", c.label);
        ensure!(tm.roots.len() == expect, "{}: {} roots, expected {expect}", c.label, tm.roots.len());
        // brute-force count over the whole splitting field
        let rho = tm.module.rho_of(&tm.a).embed(tm.level).unwrap();
        let brute = t.elements(tm.level).unwrap().iter().filter(|x| rho.eval(x).unwrap().is_zero()).count();
        ensure!(brute == expect, "{}: brute force finds {brute} roots", c.label);
        let set: HashSet<&FFElement> = tm.roots.iter().collect();
        for x in &tm.roots {
            for y in &tm.roots {
                ensure!(set.contains(&x.add(y)), "{}: not closed under addition", c.label);
            }
            for b in APoly::all_below_degree(t, 3) {
                ensure!(set.contains(&tm.act(&b, x).unwrap()), "{}: not closed under ρ_{b}", c.label);
            }
        }
        ensure!(tm.structure == Some(vec![tm.a.monic()]), "{}: structure {:?} is not A/aA", c.label, tm.structure);
    }
    Ok(format!("{} separable cases exact, {skipped} inseparable cases reported", cases.len()))
}

fn criterion3() -> Outcome {
    let (cases, _) = torsion_cases()?;
    for c in &cases {
        let tm = &c.tm;
        let t = tm.module.tower();
        let fm = tm.frobenius_matrix().map_err(|e| format!("{}: {e}", c.label))?;
        ensure!(fm.is_invertible(), "{}: Frobenius matrix not invertible mod a", c.label);
        let s = t.e() as u64 * tm.module.level() as u64;
        for lam in &tm.roots {
            for b in APoly::all_below_degree(t, tm.a.degree().unwrap()) {
                let lhs = tm.act(&b, lam).unwrap().frobenius(s);
                let rhs = tm.act(&b, &lam.frobenius(s)).unwrap();
                ensure!(lhs == rhs, "{}: Frobenius does not commute with ρ_{b}", c.label);
            }
        }
        for (j, bj) in fm.basis.iter().enumerate() {
            let image = (0..fm.basis.len()).fold(t.zero(tm.level), |acc, i| acc.add(&tm.act(&fm.entries[i][j], &fm.basis[i]).unwrap()));
            ensure!(image == bj.frobenius(s), "{}: matrix column {j} does not describe Frobenius", c.label);
        }
    }
    let f3 = FieldTower::new(3, 1).unwrap();
    let tm = SpecialModule::carlitz(&f3.one(1)).torsion(&APoly::t(&f3), 12).map_err(|e| e.to_string())?;
    let fm = tm.frobenius_matrix().map_err(|e| e.to_string())?;
    ensure!(fm.entries == vec![vec![APoly::constant(f3.from_int(1, 2))]], "F_3 matrix is {:?}", fm.entries);
    ensure!(fm.order(100) == Some(2), "F_3 matrix order {:?}", fm.order(100));
    // roots of x^3 + x satisfy λ^3 = −λ
    ensure!(tm.roots.iter().all(|l| l.pow(3) == l.neg()), "F_3 Frobenius is not negation");
    Ok(format!("{} torsion modules; F_3, γ(T) = 1, a = T gives (2) of order 2", cases.len()))
}

// ----- 4. cluster algebras -----

fn random_seed(rng: &mut StdRng) -> Seed {
    let n = rng.gen_range(2..=4);
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(-2..=2);
            b[i][j] = v;
            b[j][i] = -v;
        }
    }
    let mut s = Seed::initial(ExchangeMatrix::new(b).unwrap());
    for _ in 0..rng.gen_range(0..=3) {
        s = s.mutate(rng.gen_range(1..=n)).unwrap();
    }
    s
}

fn scaled(l: &Laurent, k: &BigInt) -> Laurent {
    l.iter().map(|(e, c)| (e.clone(), c * k)).collect()
}

fn criterion4() -> Outcome {
    let a2 = Seed::initial(ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap());
    let found: HashSet<RatFn> = a2.cluster_variables(10).map_err(|e| e.to_string())?.into_iter().collect();
    let known: HashSet<RatFn> = ["x1", "x2", "(1 + x2)/x1", "(1 + x1)/x2", "(1 + x1 + x2)/(x1*x2)"]
        .iter()
        .map(|s| text::parse_cluster(2, s).unwrap())
        .collect();
    ensure!(found == known, "A_2 gives {} variables: {:?}", found.len(), found);
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..100 {
        let s = random_seed(&mut rng);
        for k in 1..=s.rank() {
            ensure!(s.mutate(k).unwrap().mutate(k).unwrap() == s, "μ_{k}μ_{k} ≠ id on {:?}", s.b);
        }
    }
    let s11 = Seed::initial(ExchangeMatrix::new(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).unwrap());
    let a2_vars = a2.cluster_variables(8).map_err(|e| e.to_string())?;
    let s11_vars = s11.cluster_variables(5).map_err(|e| e.to_string())?;
    let mut laurents = Vec::new();
    for v in a2_vars.iter().chain(&s11_vars) {
        let l = v.laurent().ok_or_else(|| format!("{v} is not Laurent"))?;
        laurents.push((v.nvars(), l));
    }
    let mut pairs = 0;
    while pairs < 200 {
        let (n1, l1) = &laurents[rng.gen_range(0..laurents.len())];
        let (n2, l2) = &laurents[rng.gen_range(0..laurents.len())];
        if n1 != n2 {
            continue;
        }
        let p = BigInt::from([2, 3, 5][rng.gen_range(0..3)]);
        let a = scaled(l1, &(&p * rng.gen_range(1..=4)));
        let b = scaled(l2, &(&p * rng.gen_range(-4..=-1)));
        ensure!(congruent_zero(&a, &p) && congruent_zero(&b, &p), "scaled variables fail the filter");
        let sum = laurent_add(&a, &b);
        ensure!(congruent_zero(&sum, &p), "filter not closed under addition mod {p}");
        ensure!(!congruent_zero(l1, &p), "unscaled variable passes the filter mod {p}");
        pairs += 1;
    }
    Ok(format!(
        "A_2: 5 variables; 100 involution checks; {} + {} Laurent certificates; 200 congruent pairs",
        a2_vars.len(),
        s11_vars.len()
    ))
}

// ----- 5. SO(m,m|Z) -----

fn random_block(m: usize, rng: &mut StdRng) -> Vec<Vec<i64>> {
    (0..m).map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect()).collect()
}

fn random_theta(m: usize, rng: &mut StdRng) -> ThetaMatrix {
    let mut e = vec![vec![Real::zero(); m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let digits: String = (0..40).map(|_| char::from(b'0' + rng.gen_range(0..10))).collect();
            let x = decimal_ball(&format!("{}{}.{digits}", if rng.gen_bool(0.5) { "-" } else { "" }, rng.gen_range(0..3)), 40).unwrap();
            e[j][i] = x.neg();
            e[i][j] = x;
        }
    }
    ThetaMatrix::new(e).unwrap()
}

/// CΘ + D over the rationals, with Θ replaced by its centres.
fn denominator(g: &SOmm, theta: &ThetaMatrix) -> Vec<Vec<BigRational>> {
    let m = g.dim();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..m).fold(BigRational::from_integer(g.d[i][j].clone()), |acc, k| {
                        acc + BigRational::from_integer(g.c[i][k].clone()) * theta.get(k, j).mid_rational()
                    })
                })
                .collect()
        })
        .collect()
}

fn rational_det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

fn criterion5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut members = 0;
    for k in 0..200 {
        let m = 2 + k % 2;
        let g = if k % 4 < 2 {
            SOmm::from_i64(&random_block(m, &mut rng), &random_block(m, &mut rng), &random_block(m, &mut rng), &random_block(m, &mut rng)).unwrap()
        } else {
            // a group element, with one entry nudged half the time
            let mut g = SOmm::random(m, 5, &mut rng);
            if rng.gen_bool(0.5) {
                let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..m));
                g.c[i][j] += rng.gen_range(1..=2);
            }
            g
        };
        ensure!(g.check() == g.preserves_form(), "checks disagree on {g:?}");
        members += g.check() as usize;
    }
    for k in 0..100 {
        let g = SOmm::random(2 + k % 2, 6, &mut rng);
        ensure!(g.check() && g.preserves_form(), "generated element rejected: {g:?}");
    }
    let mut pairs = 0;
    let mut skipped = 0;
    while pairs < 50 {
        let m = 2 + pairs % 2;
        let (g, h) = (SOmm::random(m, 4, &mut rng), SOmm::random(m, 4, &mut rng));
        let gh = g.mul(&h);
        ensure!(gh.check(), "product left the group");
        let theta = random_theta(m, &mut rng);
        // g acts on hΘ exactly when gh acts on Θ
        if rational_det(denominator(&h, &theta)).is_zero() || rational_det(denominator(&gh, &theta)).is_zero() {
            skipped += 1;
            continue;
        }
        let inner = h.act(&theta, 40).map_err(|e| format!("h: {e}"))?;
        let outer = g.act(&inner, 40).map_err(|e| format!("g after h: {e}"))?;
        let direct = gh.act(&theta, 40).map_err(|e| format!("gh: {e}"))?;
        for i in 0..m {
            for j in 0..m {
                let (a, b) = (direct.get(i, j), outer.get(i, j));
                let bound = (a.rad_rational() + b.rad_rational()) * BigRational::from_integer(10.into());
                let diff = (a.mid_rational() - b.mid_rational()).abs();
                ensure!(diff <= bound, "(gh)Θ and g(hΘ) differ at ({i},{j}) by more than 10× their error");
            }
        }
        pairs += 1;
    }
    for m in 2..=3 {
        let theta = random_theta(m, &mut rng);
        let out = SOmm::identity(m).act(&theta, 40).map_err(|e| e.to_string())?;
        ensure!(out == theta, "identity changes Θ");
    }
    Ok(format!("200 tuples ({members} members) agree; 50 action pairs coherent ({skipped} draws outside the domain redrawn); identity exact"))
}

// ----- 6. companion matrix and Perron–Frobenius data -----

/// det(B − xI) by the Leibniz expansion.
fn leibniz_det(b: &[Vec<BigInt>]) -> IntPoly {
    let n = b.len();
    let entry = |i: usize, j: usize| {
        let c = IntPoly::new(vec![b[i][j].clone()]);
        if i == j {
            c.sub(&IntPoly::x())
        } else {
            c
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = IntPoly::new(vec![]);
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let term = (0..n).fold(IntPoly::new(vec![BigInt::one()]), |acc, i| acc.mul(&entry(i, perm[i])));
        total = if inversions % 2 == 0 { total.add(&term) } else { total.sub(&term) };
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

fn criterion6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..100 {
        let d = rng.gen_range(1..=6);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-9..=9)).collect();
        c.push(1);
        let p = IntPoly::from_i64(&c);
        let b = companion(&p).map_err(|e| e.to_string())?;
        let det = leibniz_det(&b);
        ensure!(det == p || det == p.neg(), "det(B − xI) = {det} for p = {p}");
        ensure!(charpoly(&b) == p, "characteristic polynomial of the companion of {p} is {}", charpoly(&b));
    }
    let rm = functor::functor_map_poly(&IntPoly::from_i64(&[-1, -1, 1]), 50).map_err(|e| e.to_string())?;
    let reference = Real::parse_decimal("1.6180339887498949").unwrap();
    ensure!(rm.epsilon.dist_upper(&reference) < tol(15), "ε = {}", rm.epsilon);
    ensure!(rm.alphas[0].dist_upper(&reference) < tol(15), "α_1 = {}", rm.alphas[0]);
    Ok(format!("100 determinants exact; ε = α_1 = {}", rm.epsilon.to_decimal(20)))
}

// ----- 7. generator formulas -----

fn criterion7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let m = rng.gen_range(2..=4);
        let mut c: Vec<i64> = (0..m).map(|_| -rng.gen_range(1..=5)).collect();
        c.push(1);
        let rm = functor::functor_map_poly(&IntPoly::from_i64(&c), 50).map_err(|e| e.to_string())?;
        let ti = functor::torsion_image(&rm, 50).map_err(|e| e.to_string())?;
        let gs = functor::generators(&rm, Mode::Complex, 50, None).map_err(|e| e.to_string())?;
        for (a, b) in ti.iter().zip(&gs.values) {
            ensure!(a.dist_upper(b) < tol(40), "forms differ for {}", rm.minpoly);
        }
    }
    let golden = IntPoly::from_i64(&[-1, -1, 1]);
    let mut vals = Vec::new();
    for prec in [30, 50, 100] {
        let rm = functor::functor_map_poly(&golden, prec).map_err(|e| e.to_string())?;
        let g = functor::generators(&rm, Mode::Real, prec, None).map_err(|e| e.to_string())?;
        vals.push(g.values[0].re.clone());
    }
    for w in vals.windows(2) {
        ensure!(w[0].dist_upper(&w[1]) < tol(6), "real generator unstable: {} vs {}", w[0], w[1]);
    }
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let oracle = (2.0 * std::f64::consts::PI * phi).cos() * phi.ln();
    let got = vals[2].to_f64();
    ensure!((got - oracle).abs() < 1e-6, "real generator {got} differs from double-precision value {oracle}");
    let stated = -0.354915;
    Ok(format!(
        "20 random data agree to 1e-40; cos(2πφ)·log φ = {} at 30/50/100 digits (stated −0.354915… differs by {:.1e})",
        vals[2].to_decimal(12),
        (got - stated).abs()
    ))
}

// ----- 8. integer relation detection -----

const KNOWN: &[(&str, &str, &str, &[i64])] = &[
    ("√2", "1.414213562373095048801688724209698078569671875376948073176680", "0", &[-2, 0, 1]),
    ("φ", "1.618033988749894848204586834365638117720309179805762862135449", "0", &[-1, -1, 1]),
    ("2^(1/3)", "1.259921049894873164767210607278228350570251464701507980081975", "0", &[-2, 0, 0, 1]),
    ("√2+√3", "3.146264369941972342329135065715570445512477129187328701232487", "0", &[1, 0, -10, 0, 1]),
    ("√3", "1.732050807568877293527446341505872366942805253810380628055807", "0", &[-3, 0, 1]),
    ("√6", "2.449489742783178098197284074705891391965947480656670128432693", "0", &[-6, 0, 1]),
    ("3^(1/3)", "1.442249570307408382321638310780109588391869253499350577546416", "0", &[-3, 0, 0, 1]),
    ("2^(1/4)", "1.189207115002721066717499970560475915292972092463817413019002", "0", &[-2, 0, 0, 0, 1]),
    ("2^(1/5)", "1.148698354997035006798626946777927589443850889097797505513711", "0", &[-2, 0, 0, 0, 0, 1]),
    ("5^(1/5)", "1.379729661461214832390063464216017692855649877977606121772738", "0", &[-5, 0, 0, 0, 0, 1]),
    ("1+√2", "2.414213562373095048801688724209698078569671875376948073176680", "0", &[-1, -2, 1]),
    ("1/2+√2", "1.914213562373095048801688724209698078569671875376948073176680", "0", &[-7, -4, 4]),
    ("√2+√5", "3.650281539872884745210862392940974314010290234988473797447577", "0", &[9, 0, -14, 0, 1]),
    ("√(1+√2)", "1.553773974030037307344158953063146948164583499410307836332671", "0", &[-1, 0, -2, 0, 1]),
    ("2cos(2π/7)", "1.246979603717467061050009768008479621264549461792804210731099", "0", &[-1, -2, 1, 1]),
    ("plastic number", "1.324717957244746025960908854478097340734404056901733364534015", "0", &[-1, -1, 0, 1]),
    ("tribonacci constant", "1.839286755214161132551852564653286600424178746097592246778759", "0", &[-1, -1, -1, 1]),
    ("real root of x^5-x-1", "1.167303978261418684256045899854842180720560371525489039140082", "0", &[-1, -1, 0, 0, 0, 1]),
    ("i", "0", "1", &[1, 0, 1]),
    ("e^(2πi/3)", "-0.5000000000000000000000000000000000000000000000000000000000000", "0.8660254037844386467637231707529361834714026269051903140279035", &[1, 1, 1]),
    ("e^(πi/4)", "0.7071067811865475244008443621048490392848359376884740365883399", "0.7071067811865475244008443621048490392848359376884740365883399", &[1, 0, 0, 0, 1]),
];

fn criterion8() -> Outcome {
    let height = BigInt::from(1_000_000);
    for (name, re, im, poly) in KNOWN {
        let z = Complex::new(decimal_ball(re, 60).unwrap(), decimal_ball(im, 60).unwrap());
        let found = detect_minpoly(&z, 60, 6, &height).map_err(|e| e.to_string())?;
        let want = IntPoly::from_i64(poly);
        match found {
            Some(d) => ensure!(d.poly == want, "{name}: found {} instead of {want}", d.poly),
            None => return Err(format!("{name}: nothing found")),
        }
    }
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..10 {
        let digits: String = (0..60).map(|_| char::from(b'0' + rng.gen_range(0..10))).collect();
        let v = format!("0.{digits}");
        let z = Complex::real(decimal_ball(&v, 60).unwrap());
        if let Some(d) = detect_minpoly(&z, 60, 6, &height).map_err(|e| e.to_string())? {
            return Err(format!("false certificate {} for {v}", d.poly));
        }
    }
    Ok(format!("{} known numbers recovered exactly; 10 random decimals rejected", KNOWN.len()))
}

// ----- 9. functor coherence -----

fn random_unit(t: &FieldTower, level: u32, rng: &mut StdRng) -> FFElement {
    let n = t.size(level).unwrap();
    t.element_at(level, rng.gen_range(1..n))
}

fn criterion9() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut done = 0;
    let mut redrawn = 0;
    let mut ranks = [0; 2];
    while done < 10 {
        let (p, e) = [(2, 1), (3, 1), (2, 2)][rng.gen_range(0..3)];
        let t = FieldTower::new(p, e).unwrap();
        let level = rng.gen_range(1..=2);
        let rank = 1 + done % 2;
        let ctx = (t.clone(), level);
        let mut coeffs = vec![t.zero(level); e as usize * rank + 1];
        coeffs[0] = random_unit(&t, level, &mut rng);
        for i in 1..=rank {
            coeffs[e as usize * i] = if i == rank { random_unit(&t, level, &mut rng) } else { t.element_at(level, rng.gen_range(0..t.size(level).unwrap())) };
        }
        let d = SpecialModule::new(OrePoly::new(&ctx, coeffs).unwrap()).map_err(|e| e.to_string())?;
        let u = random_unit(&t, level, &mut rng);
        let d2 = d.conjugate(&u).map_err(|e| e.to_string())?;
        ensure!(
            DrinfeldModule::is_morphism(&OrePoly::constant(u.clone()), &d, &d2).unwrap(),
            "conjugation by {u} is not a morphism"
        );
        let spec = LiftSpec::new(APoly::t(&t), 2).unwrap();
        let r1 = functor::functor_map_special(&d, &spec, 40);
        let r2 = functor::functor_map_special(&d2, &spec, 40);
        match (r1, r2) {
            (Ok(a), Ok(b)) => {
                ensure!(a == b, "RM data differ for {} and its conjugate {}", d.rho_t(), d2.rho_t());
                done += 1;
                ranks[rank - 1] += 1;
            }
            (Err(a), Err(b)) => {
                ensure!(a == b, "different failures for a conjugate pair");
                redrawn += 1;
            }
            _ => return Err(format!("only one of {} and {} has RM data", d.rho_t(), d2.rho_t())),
        }
    }
    Ok(format!("10 conjugate pairs ({} rank 1, {} rank 2) give identical RM data; {redrawn} pairs without a Perron root redrawn", ranks[0], ranks[1]))
}

// ----- 10. CLI determinism -----

fn criterion10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ncfield");
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let f = |name: &str| format!("{data}/{name}");
    let golden = "1.61803398874989484820458683436563811772030917980576";
    let runs: Vec<Vec<String>> = vec![
        vec!["field".into(), "make".into(), "--q".into(), "2^2".into(), "--level".into(), "3".into()],
        vec!["field".into(), "roots".into(), "--q".into(), "3".into(), "--poly".into(), "x^9 - x".into()],
        vec!["ore".into(), "mul".into(), "--q".into(), "2".into(), "--f".into(), "T + t".into(), "--g".into(), "T^2 + t^2".into()],
        vec!["ore".into(), "eval".into(), "--q".into(), "2^2".into(), "--level".into(), "2".into(), "--f".into(), "g + t^2".into(), "--x".into(), "g".into()],
        vec!["drinfeld".into(), "rho".into(), "--module".into(), f("rank2_f4.json"), "--a".into(), "T^2 + 1".into()],
        vec!["drinfeld".into(), "torsion".into(), "--q".into(), "3".into(), "--gamma-t".into(), "1".into(), "--rho-t".into(), "T+t".into(), "--a".into(), "T".into()],
        vec!["drinfeld".into(), "frobenius".into(), "--module".into(), f("carlitz_f3.json"), "--a".into(), "T".into()],
        vec!["drinfeld".into(), "morphism".into(), "--module".into(), f("carlitz_f3.json"), "--target-rho-t".into(), "T + t".into(), "--f".into(), "1 + t".into()],
        vec!["cluster".into(), "mutate".into(), "--seed".into(), f("a2.json"), "--word".into(), "1,2,1,2,1,2,1,2,1,2".into()],
        vec!["cluster".into(), "laurent".into(), "--seed".into(), f("a2.json"), "--depth".into(), "10".into()],
        vec!["cluster".into(), "congruence".into(), "--seed".into(), f("s11_seed.json"), "--word".into(), "1,2".into(), "--p".into(), "2".into()],
        vec!["cluster".into(), "triangulate".into(), "--triangulation".into(), f("s11.json")],
        vec!["torus".into(), "build".into(), "--alphas".into(), format!("{golden},2.5")],
        vec!["torus".into(), "act".into(), "--theta".into(), f("theta2.json"), "--element".into(), f("swap2.json")],
        vec!["torus".into(), "check".into(), "--element".into(), f("shear3.json")],
        vec!["torus".into(), "check".into(), "--random".into(), "5".into(), "--m".into(), "3".into(), "--seed".into(), "11".into()],
        vec!["torus".into(), "scale".into(), "--alphas".into(), golden.into(), "--t".into(), "2".into()],
        vec!["torus".into(), "rm-certify".into(), "--alphas".into(), golden.into(), "--deg".into(), "4".into()],
        vec!["functor".into(), "lift".into(), "--q".into(), "2".into(), "--rho-t".into(), "T + t".into(), "--a".into(), "T".into()],
        vec!["functor".into(), "map".into(), "--minpoly".into(), "x^2-x-1".into(), "--precision".into(), "50".into()],
        vec!["functor".into(), "map".into(), "--module".into(), f("rank2_f4.json"), "--a".into(), "T".into()],
        vec!["functor".into(), "generators".into(), "--minpoly".into(), "x^3-x^2-x-1".into(), "--mode".into(), "real".into()],
        vec!["functor".into(), "torsion-image".into(), "--minpoly".into(), "x^2-x-1".into()],
        vec!["functor".into(), "detect".into(), "--value".into(), KNOWN[2].1.into(), "--precision".into(), "60".into()],
    ];
    let mut verbs = HashSet::new();
    for args in &runs {
        let once = || Command::new(bin).args(args).env("NCFIELD_THREADS", "2").output().expect("binary runs");
        let (a, b) = (once(), once());
        ensure!(a.status.success(), "`ncfield {}` failed: {}", args.join(" "), String::from_utf8_lossy(&a.stderr));
        ensure!(a.stdout == b.stdout && a.status == b.status, "`ncfield {}` is not deterministic", args.join(" "));
        serde_json::from_slice::<serde_json::Value>(&a.stdout).map_err(|e| format!("`ncfield {}`: {e}", args.join(" ")))?;
        verbs.insert(format!("{} {}", args[0], args[1]));
    }
    ensure!(verbs.len() == 22, "only {} verbs exercised", verbs.len());
    let failing: [(&[&str], i32); 3] = [
        (&["functor", "map", "--minpoly", "x^2+1"], 1),
        (&["field", "make", "--q", "6", "--level", "1"], 1),
        (&["functor", "detect", "--value", "0.1234567890123456789", "--precision", "60", "--require-certificate"], 2),
    ];
    for (args, code) in failing {
        let once = || Command::new(bin).args(args).output().expect("binary runs");
        let (a, b) = (once(), once());
        ensure!(a.status.code() == Some(code), "`ncfield {}` exits with {:?}, expected {code}", args.join(" "), a.status.code());
        ensure!(a.stdout == b.stdout && a.stderr == b.stderr, "`ncfield {}` is not deterministic", args.join(" "));
    }
    Ok(format!(
        "{} runs over all {} verbs byte-identical; {} error paths give stable exit codes",
        runs.len(),
        verbs.len(),
        failing.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("twisted polynomial ring laws", criterion1),
        ("torsion cardinality and closure", criterion2),
        ("Frobenius action on torsion", criterion3),
        ("cluster mutation engine", criterion4),
        ("SO(m,m|Z) checks and action", criterion5),
        ("companion matrix and Perron root", criterion6),
        ("generator formulas", criterion7),
        ("integer relation certification", criterion8),
        ("functor coherence under conjugation", criterion9),
        ("CLI determinism", criterion10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(d) if secs >= 60.0 => Err(format!("took {secs:.1}s, over the 60 s budget; {d}")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {d}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
