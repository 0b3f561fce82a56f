//! Randomized algebraic properties.

use num::BigInt;
use podles_core::calculus::FormElement;
use podles_core::expr::{parse, Atom, Expr};
use podles_core::poisson::poisson_bracket;
use podles_core::rewrite::Strategy as Order;
use podles_core::sample::{self, SampleRng};
use podles_core::smash::normalize_smash;
use podles_core::verify::round_trip;
use podles_core::wpatch::{embed, embed_form};
use podles_core::zalgebra::{normalize_word, normalize_word_with};
use podles_core::Scalar;
use proptest::prelude::*;

fn rng() -> impl Strategy<Value = SampleRng> {
    any::<u64>().prop_map(sample::rng)
}

const ATOMS: [Atom; 17] = [
    Atom::Z, Atom::Zb, Atom::Dz, Atom::Dzb, Atom::Rhoi, Atom::Rho, Atom::Del, Atom::Delb, Atom::Zp, Atom::Zm,
    Atom::H, Atom::W, Atom::Wb, Atom::Dw, Atom::Dwb, Atom::Q, Atom::Lambda,
];

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|n| Expr::Int(BigInt::from(n))),
        (0usize..ATOMS.len()).prop_map(|i| Expr::Atom(ATOMS[i])),
        (0u32..6).prop_map(Expr::QInt),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            (inner, -3i64..4).prop_map(|(x, n)| Expr::Pow(Box::new(x), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn syntax_round_trip(e in expr_strategy()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn element_round_trip(mut r in rng(), g in 0u32..3) {
        let w = sample::form(&mut r, g, 4, 3);
        prop_assert!(round_trip(&w).is_ok(), "{}", w);
    }

    #[test]
    fn function_algebra(mut r in rng()) {
        let (x, y, z) = (sample::func(&mut r, 3, 3), sample::func(&mut r, 3, 3), sample::func(&mut r, 3, 3));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.mul(&y).bar_swap(), x.bar_swap().mul(&y.bar_swap()));
    }

    #[test]
    fn forms(mut r in rng()) {
        let x = sample::low_form(&mut r, 3);
        let y = sample::low_form(&mut r, 3);
        prop_assert!(x.d().d().is_zero());
        let sign = if x.grade() == Some(1) { -Scalar::one() } else { Scalar::one() };
        prop_assert_eq!(x.mul(&y).d(), x.d().mul(&y) + x.mul(&y.d()).scale(&sign));
        prop_assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
    }

    #[test]
    fn rewriting_is_confluent(mut r in rng()) {
        let w = sample::z_word(&mut r, 8);
        let one = Scalar::one();
        let fold = normalize_word(&w, one.clone());
        prop_assert_eq!(normalize_word_with(&w, one.clone(), Order::Leftmost), fold.clone());
        prop_assert_eq!(normalize_word_with(&w, one, Order::Rightmost), fold);
        for word in [sample::smash_word(&mut r, 6), sample::diff_word(&mut r, 6)] {
            let a = normalize_smash(vec![(Scalar::one(), word.clone())], Order::Leftmost).unwrap();
            let b = normalize_smash(vec![(Scalar::one(), word)], Order::Rightmost).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn patch_embedding(mut r in rng()) {
        let (x, y) = (sample::func(&mut r, 3, 2), sample::func(&mut r, 3, 2));
        prop_assert_eq!(embed(&x.mul(&y)), embed(&x).mul(&embed(&y)));
        let w = sample::low_form(&mut r, 3);
        prop_assert_eq!(embed_form(&w.d()), embed_form(&w).d());
        prop_assert_eq!(embed_form(&w.star()), embed_form(&w).star());
    }

    #[test]
    fn bracket_symmetry(mut r in rng()) {
        let x = sample::low_form(&mut r, 2);
        let y = sample::low_form(&mut r, 2);
        let xy = poisson_bracket(&x, &y).unwrap();
        let yx = poisson_bracket(&y, &x).unwrap();
        let odd = x.grade() == Some(1) && y.grade() == Some(1);
        let expect = if odd { yx } else { yx.scale(&num::BigRational::from_integer((-1).into())) };
        prop_assert_eq!(xy, expect);
    }
}

#[test]
fn zero_form_round_trips() {
    round_trip(&FormElement::zero()).unwrap();
}
