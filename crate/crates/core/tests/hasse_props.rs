use kakeya_core::polymethod::{MultiIndex, Poly};
use kakeya_core::scalar::{FieldSpec, Scalar};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::prime(101).unwrap()),
        Just(FieldSpec::Rational),
    ]
}

fn coeff(f: FieldSpec, v: i64) -> Scalar {
    match f {
        FieldSpec::Rational => Scalar::rational(v, 1 + v.rem_euclid(3)),
        _ => f.from_i64(v),
    }
}

fn poly(f: FieldSpec, n: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -9i64..10), 1..6).prop_map(
        move |terms| {
            Poly::from_terms(
                f,
                n,
                terms
                    .into_iter()
                    .map(|(e, c)| (MultiIndex::new(e), coeff(f, c))),
            )
            .unwrap()
        },
    )
}

fn field_poly() -> impl Strategy<Value = (FieldSpec, usize, Poly)> {
    (fields(), 1usize..4).prop_flat_map(|(f, n)| (Just(f), Just(n), poly(f, n, 4)))
}

fn index(n: usize, max: u32) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..=max, n).prop_map(MultiIndex::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn composition((f, n, p) in field_poly(), i in index(3, 2), j in index(3, 2)) {
        let i = MultiIndex::new(i.exponents()[..n].to_vec());
        let j = MultiIndex::new(j.exponents()[..n].to_vec());
        let lhs = p.hasse_derivative(&j).unwrap().hasse_derivative(&i).unwrap();
        let sum = i.add(&j);
        let factor = sum.binomial_in(&i, f);
        let rhs = p.hasse_derivative(&sum).unwrap().scale(&factor);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneity((_f, n, p) in field_poly(), j in index(3, 2)) {
        let j = MultiIndex::new(j.exponents()[..n].to_vec());
        let h = p.top_part().unwrap_or(p);
        prop_assume!(!h.is_zero());
        let d = h.hasse_derivative(&j).unwrap();
        prop_assert!(d.is_homogeneous());
        if let Some(dd) = d.degree() {
            prop_assert_eq!(dd, h.degree().unwrap() - j.wt());
        }
    }

    #[test]
    fn top_part_is_multiplicative((f, n, p) in field_poly(), seed in any::<u64>()) {
        let q = Poly::from_terms(f, n, (0..3).map(|k| {
            let e: Vec<u32> = (0..n).map(|i| ((seed >> (4 * (k * n + i))) & 3) as u32).collect();
            (MultiIndex::new(e), coeff(f, (seed >> (k * 7)) as i64 % 9 + 1))
        })).unwrap();
        prop_assume!(!p.is_zero() && !q.is_zero());
        let prod = p.mul(&q).unwrap();
        prop_assume!(!prod.is_zero());
        prop_assert_eq!(prod.top_part().unwrap(), p.top_part().unwrap().mul(&q.top_part().unwrap()).unwrap());
    }

    #[test]
    fn multiplicity_downgrade((f, n, h) in field_poly(), u in prop::collection::vec(-5i64..6, 3), jv in index(3, 3)) {
        // f(X) = h'(X − u) where h' keeps only terms of weight ≥ 2
        let high = Poly::from_terms(f, n, h.terms().filter(|(e, _)| e.wt() >= 2).map(|(e, c)| (e.clone(), c.clone()))).unwrap();
        prop_assume!(!high.is_zero());
        let u: Vec<Scalar> = u[..n].iter().map(|&v| f.from_i64(v)).collect();
        let neg: Vec<Scalar> = u.iter().map(|x| -x).collect();
        let g = high.taylor_shift(&neg).unwrap();
        let m = g.multiplicity_at(&u).unwrap();
        prop_assert!(m >= 2);
        let j = MultiIndex::new(jv.exponents()[..n].to_vec());
        prop_assume!(j.wt() <= m);
        let d = g.hasse_derivative(&j).unwrap();
        if !d.is_zero() {
            prop_assert!(d.multiplicity_at(&u).unwrap() >= m - j.wt());
        }
    }

    #[test]
    fn shift_coefficients_are_derivative_values((f, n, p) in field_poly(), u in prop::collection::vec(-5i64..6, 3)) {
        let u: Vec<Scalar> = u[..n].iter().map(|&v| f.from_i64(v)).collect();
        let shifted = p.taylor_shift(&u).unwrap();
        for j in MultiIndex::up_to_weight(n, 3) {
            prop_assert_eq!(shifted.coeff(&j), p.hasse_derivative(&j).unwrap().eval(&u).unwrap());
        }
    }
}

#[test]
fn characteristic_two_distinguishes_hasse_from_formal() {
    let f = FieldSpec::prime(2).unwrap();
    let x2 = Poly::monomial(f, MultiIndex::new(vec![2]), f.one());
    assert!(x2
        .hasse_derivative(&MultiIndex::new(vec![1]))
        .unwrap()
        .is_zero());
    assert_eq!(
        x2.hasse_derivative(&MultiIndex::new(vec![2])).unwrap(),
        Poly::constant(f, 1, f.one())
    );
}
