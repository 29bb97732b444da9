use ncfield::cluster::{ExchangeMatrix, Seed};
use ncfield::funcfield::{APoly, FFElement, FieldTower};
use ncfield::intpoly::IntPoly;
use ncfield::numeric::Real;
use ncfield::ore::OrePoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

fn towers() -> impl Strategy<Value = (FieldTower, u32)> {
    prop::sample::select(vec![(2u64, 1u32, 4u32), (2, 2, 3), (3, 1, 3), (3, 2, 2), (5, 1, 2), (7, 1, 1)])
        .prop_map(|(p, e, m)| (FieldTower::new(p, e).unwrap(), m))
}

fn elem(t: &FieldTower, m: u32, seed: u64) -> FFElement {
    t.element_at(m, seed % t.size(m).unwrap())
}

fn apoly(t: &FieldTower, seeds: &[u64]) -> APoly {
    APoly::new(t, seeds.iter().map(|&s| elem(t, 1, s)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms((t, m) in towers(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (elem(&t, m, a), elem(&t, m, b), elem(&t, m, c));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            prop_assert!(x.pow(t.size(m).unwrap() as u128 - 1).is_one());
        }
    }

    #[test]
    fn frobenius_is_a_field_map((t, m) in towers(), a in any::<u64>(), b in any::<u64>(), s in 0u64..6) {
        let (x, y) = (elem(&t, m, a), elem(&t, m, b));
        prop_assert_eq!(x.add(&y).frobenius(s), x.frobenius(s).add(&y.frobenius(s)));
        prop_assert_eq!(x.mul(&y).frobenius(s), x.frobenius(s).mul(&y.frobenius(s)));
        prop_assert_eq!(x.frobenius(t.e() as u64 * m as u64), x);
    }

    #[test]
    fn embedding_is_a_ring_map(a in any::<u64>(), b in any::<u64>()) {
        let t = FieldTower::new(2, 1).unwrap();
        let (x, y) = (elem(&t, 2, a), elem(&t, 2, b));
        let (ex, ey) = (x.embed(4).unwrap(), y.embed(4).unwrap());
        prop_assert_eq!(x.mul(&y).embed(4).unwrap(), ex.mul(&ey));
        prop_assert_eq!(x.add(&y).embed(4).unwrap(), ex.add(&ey));
    }

    #[test]
    fn polynomial_division(n in prop::collection::vec(any::<u64>(), 0..7), d in prop::collection::vec(any::<u64>(), 1..5)) {
        let t = FieldTower::new(3, 1).unwrap();
        let (n, d) = (apoly(&t, &n), apoly(&t, &d));
        prop_assume!(!d.is_zero());
        let (q, r) = n.divrem(&d).unwrap();
        prop_assert_eq!(q.mul(&d).add(&r), n);
        prop_assert!(r.degree() < d.degree());
    }

    #[test]
    fn factorisation_multiplies_back(c in prop::collection::vec(any::<u64>(), 2..7)) {
        let t = FieldTower::new(2, 2).unwrap();
        let f = apoly(&t, &c);
        prop_assume!(f.degree().unwrap_or(0) > 0);
        let product = f.factor().iter().fold(APoly::one(&t), |acc, (g, k)| acc.mul(&g.pow(*k)));
        prop_assert_eq!(product, f.monic());
    }

    #[test]
    fn ore_product_composes((t, m) in towers(), f in prop::collection::vec(any::<u64>(), 0..4), g in prop::collection::vec(any::<u64>(), 0..4), x in any::<u64>()) {
        let ctx = (t.clone(), m);
        let f = OrePoly::new(&ctx, f.iter().map(|&s| elem(&t, m, s)).collect()).unwrap();
        let g = OrePoly::new(&ctx, g.iter().map(|&s| elem(&t, m, s)).collect()).unwrap();
        let x = elem(&t, m, x);
        prop_assert_eq!(f.mul(&g).unwrap().eval(&x).unwrap(), f.eval(&g.eval(&x).unwrap()).unwrap());
    }

    #[test]
    fn intpoly_ring(a in prop::collection::vec(-50i64..50, 0..6), b in prop::collection::vec(-50i64..50, 0..6), x in -20i64..20) {
        let (p, q) = (IntPoly::from_i64(&a), IntPoly::from_i64(&b));
        let x = BigInt::from(x);
        prop_assert_eq!(p.mul(&q).eval_int(&x), p.eval_int(&x) * q.eval_int(&x));
        prop_assert_eq!(p.add(&q).sub(&q), p.clone());
        if !q.is_zero() {
            prop_assert_eq!(p.mul(&q).exact_div(&q), Some(p));
        }
    }

    #[test]
    fn ball_arithmetic_encloses(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let (x, y) = (BigRational::new(a.into(), b.into()), BigRational::new(c.into(), d.into()));
        let (bx, by) = (Real::from_rational(&x, 30), Real::from_rational(&y, 30));
        let inside = |ball: &Real, v: &BigRational| (ball.mid_rational() - v).abs() <= ball.rad_rational();
        prop_assert!(inside(&bx.add(&by), &(&x + &y)));
        prop_assert!(inside(&bx.mul(&by, 30), &(&x * &y)));
        if c != 0 {
            prop_assert!(inside(&bx.div(&by, 30).unwrap(), &(&x / &y)));
        }
    }

    #[test]
    fn mutation_is_an_involution(entries in prop::collection::vec(-1i64..=1, 6), word in prop::collection::vec(1usize..=4, 0..4), k in 1usize..=4) {
        let n = 4;
        let mut b = vec![vec![0i64; n]; n];
        let mut it = entries.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = *it.next().unwrap();
                b[i][j] = v;
                b[j][i] = -v;
            }
        }
        let s = Seed::initial(ExchangeMatrix::new(b).unwrap()).mutate_word(&word).unwrap();
        prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
    }
}

#[test]
fn transcendental_functions_match_known_digits() {
    let pi = Real::pi(40);
    assert!(pi.overlaps(&Real::parse_decimal("3.1415926535897932384626433832795028841971").unwrap()));
    let e = Real::one().exp(40);
    assert!(e.overlaps(&Real::parse_decimal("2.7182818284590452353602874713526624977572").unwrap()));
    let l = e.ln(40).unwrap();
    assert!(l.overlaps(&Real::one()));
    let (s, c) = Real::from_int(1).sin_cos(40);
    let unit = s.square(40).add(&c.square(40));
    assert!(unit.overlaps(&Real::one()));
}
