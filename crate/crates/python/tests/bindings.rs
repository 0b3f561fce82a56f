//! Binding methods exercised from Rust.

use podles::{integrate, limit_classical, poisson_bracket, run, Element, PatchElement, Scalar};

fn el(text: &str) -> Element {
    Element::new(text).unwrap_or_else(|_| panic!("{text}"))
}

#[test]
fn scalars() {
    let x = Scalar::new("qint(3)").unwrap();
    assert_eq!(x.0.to_string(), "q^4 + q^2 + 1");
    assert_eq!(x.classical_limit(0).unwrap(), ("3".to_string(), "1".to_string()));
    assert!(Scalar::new("q - q").unwrap().is_zero());
    assert!((Scalar::new("lambda").unwrap().eval(1.0)).abs() < 1e-15);
}

#[test]
fn elements() {
    let z = el("z");
    let zb = el("zb");
    assert_eq!(z.comm(&zb).unwrap(), el("(q^-2 - 1) + (q^-2 - 1)*zb*z"));
    assert_eq!(el("z*dz").star("sphere").unwrap(), el("dzb*zb"));
    assert_eq!(el("zb*z").d().unwrap(), el("zb*dz + q^2*z*dzb"));
    assert_eq!(el("Zp").act(&z).unwrap(), el("s*z^2"));
    assert_eq!(el("del").act(&el("z^2")).unwrap(), el("(1 + q^-2)*z"));
    assert_eq!(el("del").star("plane").unwrap(), el("-q^2*delb"));
    assert_eq!(el("dz").grade(), Some(1));
    assert_eq!(el("Zm*Zp").kind(), "vector");
    assert_eq!(el("del*z").kind(), "diff");
}

#[test]
fn diff_and_vector_words_round_trip() {
    for text in ["Zm*Zp*z*dz", "H*rhoi*zb", "del*delb*z*rhoi", "delb*zb - z*del"] {
        let x = el(text);
        assert_eq!(Element::new(&x.0.to_string()).unwrap(), x, "{text}");
    }
}

#[test]
fn patch_and_brackets() {
    let w = PatchElement::new("w").unwrap();
    let z = PatchElement::new("z").unwrap();
    assert!(PatchElement::new("w*z - 1").unwrap().is_zero());
    assert_eq!(w.inverse().unwrap(), z);
    assert_eq!(poisson_bracket("zb", "z").unwrap(), "1 + zb * z");
    assert_eq!(poisson_bracket("wb", "w").unwrap(), "(u + u^2)");
    assert_eq!(limit_classical("q^2*zb*z").unwrap(), "zb * z");
    assert_eq!(integrate("rhoi^2", "sphere").unwrap().0.to_string(), "1/(q^4 + q^2 + 1)");
    assert_eq!(run(vec!["normalize".into(), "z*)".into()]).1, 1);
}
