//! Letter-level rewriting for the smash products of functions with forms,
//! derivatives and vector fields.
//!
//! Normal words read `ρ⁻ᵐ z̄ᵃ zᵇ · (dz)(dz̄) · ∂ᶜ∂̄ᵈ` or `… · 𝒵₊ⁱℋʲ𝒵₋ᵏ`.
//! Derivative letters never meet form or vector-field letters.

use crate::calculus::{DiffOp, FormBasis, FormElement};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::rewrite::{self, Replacement, Strategy, WordRewriting};
use crate::scalar::{qint, Scalar};
use crate::vfields::{VField, VectorOp};
use crate::zalgebra::{monomial_word, FuncElement, FuncMonomial, ZLetter, ZRewriting};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Rhoi,
    Zb,
    Z,
    Dz,
    Dzb,
    Del,
    Delb,
    Zp,
    H,
    Zm,
}

impl Letter {
    pub const ALL: [Letter; 10] = [
        Letter::Rhoi,
        Letter::Zb,
        Letter::Z,
        Letter::Dz,
        Letter::Dzb,
        Letter::Del,
        Letter::Delb,
        Letter::Zp,
        Letter::H,
        Letter::Zm,
    ];

    fn z_letter(self) -> Option<ZLetter> {
        match self {
            Letter::Rhoi => Some(ZLetter::Rhoi),
            Letter::Zb => Some(ZLetter::Zb),
            Letter::Z => Some(ZLetter::Z),
            _ => None,
        }
    }

    pub fn is_function(self) -> bool {
        self.z_letter().is_some()
    }

    pub fn is_form(self) -> bool {
        matches!(self, Letter::Dz | Letter::Dzb)
    }

    pub fn is_derivative(self) -> bool {
        matches!(self, Letter::Del | Letter::Delb)
    }

    pub fn vfield(self) -> Option<VField> {
        match self {
            Letter::Zp => Some(VField::Zp),
            Letter::H => Some(VField::H),
            Letter::Zm => Some(VField::Zm),
            _ => None,
        }
    }

    /// Charge: `z, dz ↦ 1`, `z̄, dz̄ ↦ -1`, otherwise 0.
    fn charge(self) -> i64 {
        match self {
            Letter::Z | Letter::Dz => 1,
            Letter::Zb | Letter::Dzb => -1,
            _ => 0,
        }
    }

    /// Star of a single letter, if it is again a letter.
    pub fn star(self) -> Option<Letter> {
        Some(match self {
            Letter::Rhoi => Letter::Rhoi,
            Letter::Zb => Letter::Z,
            Letter::Z => Letter::Zb,
            Letter::Dz => Letter::Dzb,
            Letter::Dzb => Letter::Dz,
            Letter::Zp => Letter::Zm,
            Letter::H => Letter::H,
            Letter::Zm => Letter::Zp,
            Letter::Del | Letter::Delb => return None,
        })
    }

    pub fn form(self) -> Option<FormElement> {
        Some(match self {
            Letter::Rhoi => FormElement::from_func(FuncElement::rhoi()),
            Letter::Zb => FormElement::from_func(FuncElement::zb()),
            Letter::Z => FormElement::from_func(FuncElement::z()),
            Letter::Dz => FormElement::dz(),
            Letter::Dzb => FormElement::dzb(),
            _ => return None,
        })
    }
}

impl From<VField> for Letter {
    fn from(x: VField) -> Self {
        match x {
            VField::Zp => Letter::Zp,
            VField::H => Letter::H,
            VField::Zm => Letter::Zm,
        }
    }
}

impl From<ZLetter> for Letter {
    fn from(x: ZLetter) -> Self {
        match x {
            ZLetter::Rhoi => Letter::Rhoi,
            ZLetter::Zb => Letter::Zb,
            ZLetter::Z => Letter::Z,
        }
    }
}

/// Coefficient-left words of a form.
pub fn form_words(w: &FormElement) -> Replacement<Letter> {
    let mut out = Vec::new();
    for (e, f) in w.parts() {
        let (eps, epsbar) = e.bits();
        for (x, c) in f.terms() {
            let mut word: Vec<Letter> = monomial_word(x).into_iter().map(Letter::from).collect();
            if eps {
                word.push(Letter::Dz);
            }
            if epsbar {
                word.push(Letter::Dzb);
            }
            out.push((c.clone(), word));
        }
    }
    out
}

/// `X g → (X ▷ g) + κ(g) g X` for a single letter `g`.
fn twisted_rule(action: FormElement, twist: i64, g: Letter, x: Letter) -> Replacement<Letter> {
    let mut out = form_words(&action);
    out.push((Scalar::q_pow(twist * g.charge()), vec![g, x]));
    out
}

pub struct SmashRewriting;

impl WordRewriting for SmashRewriting {
    type Letter = Letter;

    fn redex_at(&self, w: &[Letter], i: usize) -> Option<(usize, Replacement<Letter>)> {
        use Letter::*;
        let q = Scalar::q_pow;
        let (a, b) = (*w.get(i)?, *w.get(i + 1)?);
        if a.is_function() && b.is_function() {
            let run: Vec<ZLetter> = w[i..].iter().map_while(|l| l.z_letter()).collect();
            let (len, repl) = ZRewriting.redex_at(&run, 0)?;
            let repl = repl.into_iter().map(|(c, w)| (c, w.into_iter().map(Letter::from).collect())).collect();
            return Some((len, repl));
        }
        match (a, b) {
            (Dz | Dzb, g) if g.is_function() => Some((2, vec![(q(2 * g.charge()), vec![g, a])])),
            (Dz, Dz) | (Dzb, Dzb) => Some((2, vec![])),
            (Dzb, Dz) => Some((2, vec![(-q(2), vec![Dz, Dzb])])),
            (Del | Delb, g) if g.is_function() => {
                let der = if a == Del { Derivation::Del } else { Derivation::Delb };
                let f = g.form().and_then(|f| f.as_func()).expect("function letter");
                Some((2, twisted_rule(FormElement::from_func(der.apply(&f)), der.twist(), g, a)))
            }
            (Delb, Del) => Some((2, vec![(q(2), vec![Del, Delb])])),
            (x, g) if x.vfield().is_some() && (g.is_function() || g.is_form()) => {
                let v = x.vfield().expect("vector letter");
                let acted = v.act(&g.form().expect("function or form letter"));
                Some((2, twisted_rule(acted, v.twist(), g, x)))
            }
            (H, Zp) => Some((2, vec![(q(4), vec![Zp, H]), (qint(2), vec![Zp])])),
            (Zm, H) => Some((2, vec![(q(4), vec![H, Zm]), (qint(2), vec![Zm])])),
            (Zm, Zp) => Some((2, vec![(q(2), vec![Zp, Zm]), (-Scalar::q(), vec![H])])),
            _ => None,
        }
    }
}

/// An element of one of the smash products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SmashElement {
    Form(FormElement),
    Diff(DiffOp),
    Vector(VectorOp),
}

impl SmashElement {
    /// Demote to the smallest kind that holds the value.
    pub fn canonical(self) -> SmashElement {
        match self {
            SmashElement::Vector(v) if v.terms().all(|(m, _)| *m == (0, 0, 0)) => {
                SmashElement::Form(v.counit_part())
            }
            SmashElement::Diff(d) if d.terms().all(|(k, _)| k.c == 0 && k.d == 0) => {
                SmashElement::Form(FormElement::from_func(d.coefficient(0, 0)))
            }
            other => other,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SmashElement::Form(w) => w.is_zero(),
            SmashElement::Diff(d) => d.is_zero(),
            SmashElement::Vector(v) => v.is_zero(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SmashElement::Form(w) => w.to_json(),
            SmashElement::Diff(d) => {
                let terms: Vec<_> = d
                    .terms()
                    .map(|(k, c)| {
                        serde_json::json!({"coeff": c.to_string(), "m": k.mono.m, "a": k.mono.a, "b": k.mono.b, "del": k.c, "delb": k.d})
                    })
                    .collect();
                serde_json::json!({ "terms": terms })
            }
            SmashElement::Vector(v) => v.to_json(),
        }
    }
}

impl std::fmt::Display for SmashElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SmashElement::Form(w) => write!(f, "{w}"),
            SmashElement::Diff(d) => write!(f, "{d}"),
            SmashElement::Vector(v) => write!(f, "{v}"),
        }
    }
}

fn mixing_error() -> Error {
    Error::Domain("derivatives cannot be combined with forms or vector fields".into())
}

fn check_mix(words: &[&[Letter]]) -> Result<(bool, bool)> {
    let has = |p: fn(Letter) -> bool| words.iter().any(|w| w.iter().any(|l| p(*l)));
    let diff = has(Letter::is_derivative);
    let other = has(|l| l.is_form() || l.vfield().is_some());
    if diff && other {
        return Err(mixing_error());
    }
    Ok((diff, has(|l| l.vfield().is_some())))
}

/// Read a normal word as an element.
fn normal_word_element(w: &[Letter], c: Scalar, diff: bool) -> Result<SmashElement> {
    let count = |l: Letter| w.iter().filter(|x| **x == l).count() as u32;
    let mono = FuncMonomial::new(count(Letter::Rhoi), count(Letter::Zb), count(Letter::Z));
    let f = FuncElement::monomial(mono, c);
    let e = FormBasis::from_bits(count(Letter::Dz) > 0, count(Letter::Dzb) > 0);
    if diff {
        Ok(SmashElement::Diff(DiffOp::with_derivs(&f, count(Letter::Del), count(Letter::Delb))))
    } else {
        let pbw = (count(Letter::Zp), count(Letter::H), count(Letter::Zm));
        Ok(SmashElement::Vector(VectorOp::with_pbw(FormElement::with(f, e), pbw)))
    }
}

fn sum(parts: impl IntoIterator<Item = SmashElement>, diff: bool) -> SmashElement {
    if diff {
        let mut acc = DiffOp::zero();
        for p in parts {
            if let SmashElement::Diff(d) = p {
                acc = acc + d;
            }
        }
        SmashElement::Diff(acc)
    } else {
        let mut acc = VectorOp::zero();
        for p in parts {
            if let SmashElement::Vector(v) = p {
                acc = acc + v;
            }
        }
        SmashElement::Vector(acc)
    }
}

/// Normalize a combination of words with the letter-level rewriting system.
pub fn normalize_smash(words: Replacement<Letter>, strategy: Strategy) -> Result<SmashElement> {
    let refs: Vec<&[Letter]> = words.iter().map(|(_, w)| w.as_slice()).collect();
    let (diff, _) = check_mix(&refs)?;
    let normal = rewrite::normalize_words(&SmashRewriting, words, strategy);
    let parts = normal.into_iter().map(|(w, c)| normal_word_element(&w, c, diff)).collect::<Result<Vec<_>>>()?;
    Ok(sum(parts, diff).canonical())
}

/// Normalize a word by multiplying canonical elements left to right.
pub fn fold_word(word: &[Letter], coeff: Scalar) -> Result<SmashElement> {
    let (diff, _) = check_mix(&[word])?;
    if diff {
        let mut acc = DiffOp::scalar(coeff);
        for l in word {
            let op = match l {
                Letter::Del => DiffOp::del(),
                Letter::Delb => DiffOp::delb(),
                g => DiffOp::from_func(&g.form().and_then(|f| f.as_func()).expect("function letter")),
            };
            acc = acc * op;
        }
        return Ok(SmashElement::Diff(acc).canonical());
    }
    let mut acc = VectorOp::scalar(coeff);
    for l in word {
        let op = match l.vfield() {
            Some(x) => VectorOp::generator(x),
            None => VectorOp::from_form(l.form().expect("form letter")),
        };
        acc = acc * op;
    }
    Ok(SmashElement::Vector(acc).canonical())
}

/// Reverse a word and star each letter (`q* = q`, scalars are fixed).
pub fn star_word(word: &[Letter]) -> Option<Vec<Letter>> {
    word.iter().rev().map(|l| l.star()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn agree(word: &[Letter]) {
        let left = normalize_smash(vec![(Scalar::one(), word.to_vec())], Strategy::Leftmost).unwrap();
        let right = normalize_smash(vec![(Scalar::one(), word.to_vec())], Strategy::Rightmost).unwrap();
        let fold = fold_word(word, Scalar::one()).unwrap();
        assert_eq!(left, right, "{word:?}");
        assert_eq!(left, fold, "{word:?}");
    }

    #[test]
    fn rewriting_matches_products() {
        agree(&[Zm, Zp, Z, Dzb, Zb]);
        agree(&[H, Zp, Rhoi, Dz]);
        agree(&[Del, Delb, Z, Rhoi, Zb]);
        agree(&[Dzb, Z, Dz, Rhoi]);
        agree(&[Zm, H, Zp, Zb, Z]);
    }

    #[test]
    fn mixing_is_rejected() {
        assert!(normalize_smash(vec![(Scalar::one(), vec![Del, Dz])], Strategy::Leftmost).is_err());
    }

    #[test]
    fn star_of_vect1_is_vect2() {
        // 𝒵₊z - q²z𝒵₊ - q^{1/2}z² = 0 starred gives z̄𝒵₋ - q²𝒵₋z̄ - q^{1/2}z̄² = 0
        let rel = vec![
            (Scalar::one(), vec![Zp, Z]),
            (-Scalar::q_pow(2), vec![Z, Zp]),
            (-Scalar::s_pow(1), vec![Z, Z]),
        ];
        let starred: Vec<_> = rel.iter().map(|(c, w)| (c.clone(), star_word(w).unwrap())).collect();
        assert!(normalize_smash(starred, Strategy::Leftmost).unwrap().is_zero());
    }
}
