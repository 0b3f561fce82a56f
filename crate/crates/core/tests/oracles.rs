//! Known values, checked through the public API.

use num::BigRational;
use podles_core::calculus::{xi_forms, FormElement};
use podles_core::error::Error;
use podles_core::expr::{eval_local, eval_words, parse};
use podles_core::integration::{integrate_plane, integrate_sphere, IntegralStatus};
use podles_core::poisson::{classical_limit_elem, poisson_bracket, poisson_bracket_w, PoissonElement};
use podles_core::rewrite::Strategy;
use podles_core::smash::{normalize_smash, SmashElement};
use podles_core::suq2::{normalize_su_word, FrtPreset, SuLetter};
use podles_core::vfields::{build_bcd, invert_filtered, VField};
use podles_core::wpatch::{embed, w_generators, LocalElement};
use podles_core::{qint, FuncElement, Scalar};

fn norm(text: &str) -> SmashElement {
    let e = parse(text).unwrap_or_else(|e| panic!("{text}: {e}"));
    normalize_smash(eval_words(&e).unwrap(), Strategy::Leftmost).unwrap().canonical()
}

fn same(lhs: &str, rhs: &str) {
    assert_eq!(norm(lhs), norm(rhs), "{lhs} vs {rhs}");
}

fn form(text: &str) -> FormElement {
    match norm(text) {
        SmashElement::Form(w) => w,
        other => panic!("{text} is not a form: {other}"),
    }
}

fn func(text: &str) -> FuncElement {
    form(text).as_func().expect("function")
}

fn local(text: &str) -> LocalElement {
    eval_local(&parse(text).unwrap()).unwrap()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn scalars() {
    let q = Scalar::q();
    assert!((&q * &Scalar::q_pow(-1)).is_one());
    assert_eq!(Scalar::lambda() + Scalar::q_pow(-1), q);
    assert_eq!((Scalar::q_pow(2) - Scalar::one()) / (q.clone() - Scalar::one()), q + Scalar::one());
    assert!(qint(0).is_zero());
    assert!(qint(1).is_one());
    assert_eq!(qint(2), Scalar::one() + Scalar::q_pow(2));
    assert_eq!(qint(3).classical_limit(0).unwrap(), rat(3));
    assert_eq!((Scalar::q_pow(2) - Scalar::one()).classical_limit(1).unwrap(), rat(1));
    assert_eq!(Scalar::lambda().classical_limit(1).unwrap(), rat(1));
}

#[test]
fn z_algebra() {
    same("z*zb", "q^-2*zb*z + q^-2 - 1");
    same("rhoi*zb*z", "1 - rhoi");
    same("rhoi*rho", "1");
    same("zb*z*zb*z", "q^-2*zb^2*z^2 + (q^-2 - 1)*zb*z");
    assert_eq!(norm("1"), SmashElement::Form(FormElement::one()));
    assert_eq!(FuncElement::z().star(), FuncElement::zb());
    assert_eq!(FuncElement::rhoi().star(), FuncElement::rhoi());
    assert_eq!(FuncElement::z().bar_swap(), FuncElement::zb());
    assert_eq!(FuncElement::rhoi().bar_swap(), func("q^2*rhoi"));
}

#[test]
fn calculus() {
    same("z*dz - q^-2*dz*z", "0");
    same("dz*dz", "0");
    same("dz*rhoi", "rhoi*dz");
    assert_eq!(form("zb*z").d(), form("zb*dz + q^2*z*dzb"));
    assert_eq!(form("z").d(), FormElement::dz());
    let xi = xi_forms().unwrap();
    let z = form("z");
    assert_eq!(&(&xi.big_xi * &z) - &(&z * &xi.big_xi), FormElement::dz().scale(&Scalar::lambda()));
    assert_eq!(xi.d_big_xi, form("2*q*dzb*rhoi^2*dz"));
    assert_eq!(xi.big_xi_squared, form("q*lambda*dzb*rhoi^2*dz"));
}

#[test]
fn derivative_actions() {
    let del = |f: &str| podles_core::derivation::Derivation::Del.apply(&func(f));
    let delb = |f: &str| podles_core::derivation::Derivation::Delb.apply(&func(f));
    assert_eq!(del("z"), FuncElement::one());
    assert!(delb("z").is_zero());
    assert_eq!(del("z^2"), func("(1 + q^-2)*z"));
}

#[test]
fn vector_fields() {
    same("Zm*Zp", "q^2*Zp*Zm - q*H");
    same("Zp*z", "q^2*z*Zp + s*z^2");
    same("Zp*dzb", "q^-2*dzb*Zp");
    assert_eq!(VField::Zp.act(&form("zb")), FormElement::scalar(Scalar::s_pow(-3)));
    assert_eq!(VField::H.act(&form("z")), form("(1 + q^2)*z"));
    let bcd = build_bcd();
    assert_eq!(bcd.b.apply(&FuncElement::one()), FuncElement::one());
    assert_eq!(bcd.b.apply(&FuncElement::zb()), func("q^2*zb"));
    assert_eq!(bcd.c.apply(&FuncElement::zb()), FuncElement::zb());
    let b_inv = invert_filtered(&bcd.b, 4).unwrap();
    assert_eq!(b_inv.apply(&FuncElement::one()).unwrap(), FuncElement::one());
    assert_eq!(b_inv.apply(&FuncElement::zb()).unwrap(), func("q^-2*zb"));
}

#[test]
fn integration() {
    let v = integrate_sphere(&func("rhoi")).unwrap();
    assert_eq!(v.value, qint(2).inv().unwrap());
    let v = integrate_sphere(&func("zb*z*rhoi^2")).unwrap();
    assert_eq!(v.value, qint(2).inv().unwrap() - qint(3).inv().unwrap());
    let v = integrate_sphere(&func("zb*rhoi^2")).unwrap();
    assert!(v.value.is_zero());
    assert_eq!(v.status, IntegralStatus::ZeroByInvariance);
    assert_eq!(integrate_plane(&func("rhoi^4")).unwrap().value, qint(3).inv().unwrap());
    assert!(matches!(integrate_plane(&FuncElement::one()), Err(Error::NotIntegrable(_))));
    let f = podles_core::derivation::Derivation::Del.apply(&func("rhoi^3"));
    assert!(integrate_plane(&f).unwrap().value.is_zero());
}

#[test]
fn su_q2() {
    use SuLetter::*;
    let pr = FrtPreset::A;
    let ad = normalize_su_word(pr, &[Alpha, Delta]);
    let bg = normalize_su_word(pr, &[Beta, Gamma]).scale(&Scalar::q());
    assert_eq!(ad, &podles_core::suq2::Suq2Element::one(pr) + &bg);
    assert_eq!(normalize_su_word(pr, &[Beta, GammaInv]), normalize_su_word(pr, &[GammaInv, Beta]));
}

#[test]
fn w_patch() {
    assert_eq!(embed(&FuncElement::one()), LocalElement::one());
    assert_eq!(embed(&func("zb*z")), local("rho - 1"));
    assert_eq!(embed(&func("z*zb")), local("q^-2*rho - 1"));
    let g = w_generators();
    assert_eq!(g.w.mul(&embed(&FuncElement::z())), LocalElement::one());
    assert_eq!(g.w_bar.mul(&embed(&FuncElement::zb())), LocalElement::one());
    assert_eq!(g.dw, local("-q^-2*z^-2*dz"));
    assert!(local("w*wb - q^-2*wb*w - (q^-2 - 1)*w*wb^2*w").is_zero());
    assert!(local("w*dw - q^2*dw*w").is_zero());
    assert!(local("dz*w - q^-2*w*dz").is_zero());
}

#[test]
fn poisson() {
    let pb = |a: &str, b: &str| poisson_bracket(&form(a), &form(b)).unwrap();
    let lim = |a: &str| classical_limit_elem(&form(a)).unwrap();
    assert_eq!(lim("q^2*zb*z"), lim("zb*z"));
    assert_eq!(pb("zb", "z"), lim("rho"));
    assert_eq!(pb("dz", "z"), lim("z*dz"));
    let xi = xi_forms().unwrap();
    assert_eq!(poisson_bracket(&xi.big_xi, &form("z")).unwrap(), lim("dz"));
    assert!(classical_limit_elem(&xi.big_xi_squared).unwrap().is_zero());
    assert_eq!(classical_limit_elem(&xi.big_xi).unwrap(), lim("dz*rhoi*zb - dzb*rhoi*z"));
    assert!(matches!(pb("z", "z"), p if p == PoissonElement::zero()));
    let g = w_generators();
    let wbw = poisson_bracket_w(&g.w_bar, &g.w).unwrap();
    assert_eq!(wbw.to_string(), "(u + u^2)");
    assert!(poisson_bracket_w(&g.w, &g.w).unwrap().is_zero());
}
