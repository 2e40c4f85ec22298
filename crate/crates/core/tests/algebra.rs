use proptest::prelude::*;
use wreathmac::exactalg::{parse, FieldElem, NVARS};
use wreathmac::multisym::{Endo, Generator, MultiSym};

fn arb_poly() -> impl Strategy<Value = FieldElem> {
    prop::collection::vec((prop::array::uniform5(-1i32..3), -3i64..4), 1..4).prop_map(|terms| {
        terms.into_iter().fold(FieldElem::zero(), |acc, (e, c)| {
            acc + FieldElem::laurent(e, c)
        })
    })
}

fn arb_elem() -> impl Strategy<Value = FieldElem> {
    (arb_poly(), arb_poly()).prop_map(|(n, d)| {
        if d.is_zero() {
            n
        } else {
            n.try_div(&d).unwrap()
        }
    })
}

fn arb_sym(l: usize) -> impl Strategy<Value = MultiSym> {
    let gen = (0..2usize, 0..l, 1..3usize).prop_map(|(a, c, n)| {
        if a == 0 {
            Generator::x(c, n)
        } else {
            Generator::y(c, n)
        }
    });
    let term = (prop::collection::vec(gen, 0..3), -3i64..4);
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        let mut f = MultiSym::zero(l);
        for (mut m, c) in terms {
            m.sort();
            f = f
                .try_add(&MultiSym::monomial(l, m, FieldElem::from_int(c)))
                .unwrap();
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_text_round_trips(a in arb_elem()) {
        let s = a.to_string();
        let back = parse(&s).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), s);
    }

    #[test]
    fn t_involutions(a in arb_elem()) {
        prop_assert_eq!(a.swap_t().swap_t(), a.clone());
        prop_assert_eq!(a.invert_t().invert_t(), a.clone());
    }

    #[test]
    fn gamma_has_inverse(f in arb_sym(3), x in prop::sample::select(vec!["t1", "t2", "t1*t2", "1/t2"])) {
        let x = parse(x).unwrap();
        let g = f.gamma(&x, false).unwrap().gamma(&x, true).unwrap();
        prop_assert!(g.field_eq(&f));
        let g = f.gamma(&x, true).unwrap().gamma(&x, false).unwrap();
        prop_assert!(g.field_eq(&f));
    }

    #[test]
    fn endomorphisms_are_multiplicative(f in arb_sym(2), g in arb_sym(2)) {
        let f = f.scale(&parse("t1/(1-t2)").unwrap());
        for e in [Endo::Neg, Endo::Swap, Endo::Inv] {
            let lhs = f.try_mul(&g).unwrap().endo(e);
            let rhs = f.endo(e).try_mul(&g.endo(e)).unwrap();
            prop_assert!(lhs.field_eq(&rhs));
            prop_assert!(f.endo(e).endo(e).field_eq(&f));
        }
    }

    #[test]
    fn derivative_is_leibniz(f in arb_sym(2), g in arb_sym(2), c in 0..2usize, n in 1..3usize) {
        let d = Generator::x(c, n);
        let lhs = f.try_mul(&g).unwrap().derivative(&d);
        let rhs = f.derivative(&d).try_mul(&g).unwrap()
            .try_add(&f.try_mul(&g.derivative(&d)).unwrap()).unwrap();
        prop_assert!(lhs.field_eq(&rhs));
    }

    #[test]
    fn multisym_json_round_trips(f in arb_sym(3)) {
        let s = serde_json::to_string(&f).unwrap();
        let back: MultiSym = serde_json::from_str(&s).unwrap();
        prop_assert!(back.field_eq(&f));
    }
}

#[test]
fn variable_count() {
    assert_eq!(NVARS, 5);
    assert!(parse("q").is_err());
    assert!(parse("1/(t1-t1)").is_err());
}
