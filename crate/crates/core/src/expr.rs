//! Surface syntax for elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | primary ['^' int]
//! primary:= atom | integer | 'qint' '(' int ')' | '(' expr ')'
//! ```
//!
//! Division is only by scalars. Negative powers are allowed on scalars and
//! `rhoi`; in the patch context also on any invertible `f(ρ) zᵇ`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Zero};

use crate::error::{Error, Result};
use crate::rational_rho::RationalRho;
use crate::rewrite::Replacement;
use crate::scalar::{qint, Scalar};
use crate::smash::Letter;
use crate::wpatch::{w_generators, LocalElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Z,
    Zb,
    Dz,
    Dzb,
    Rhoi,
    Rho,
    Del,
    Delb,
    Zp,
    Zm,
    H,
    W,
    Wb,
    Dw,
    Dwb,
    Q,
    S,
    Lambda,
}

impl Atom {
    const NAMES: [(&'static str, Atom); 18] = [
        ("z", Atom::Z),
        ("zb", Atom::Zb),
        ("dz", Atom::Dz),
        ("dzb", Atom::Dzb),
        ("rhoi", Atom::Rhoi),
        ("rho", Atom::Rho),
        ("del", Atom::Del),
        ("delb", Atom::Delb),
        ("Zp", Atom::Zp),
        ("Zm", Atom::Zm),
        ("H", Atom::H),
        ("w", Atom::W),
        ("wb", Atom::Wb),
        ("dw", Atom::Dw),
        ("dwb", Atom::Dwb),
        ("q", Atom::Q),
        ("s", Atom::S),
        ("lambda", Atom::Lambda),
    ];

    pub fn name(self) -> &'static str {
        Atom::NAMES.iter().find(|(_, a)| *a == self).map(|(n, _)| *n).expect("every atom is named")
    }

    fn from_name(s: &str) -> Option<Atom> {
        Atom::NAMES.iter().find(|(n, _)| *n == s).map(|(_, a)| *a)
    }

    pub fn is_patch(self) -> bool {
        matches!(self, Atom::W | Atom::Wb | Atom::Dw | Atom::Dwb)
    }

    fn scalar(self) -> Option<Scalar> {
        match self {
            Atom::Q => Some(Scalar::q()),
            Atom::S => Some(Scalar::s_pow(1)),
            Atom::Lambda => Some(Scalar::lambda()),
            _ => None,
        }
    }

    fn letter(self) -> Option<Letter> {
        Some(match self {
            Atom::Z => Letter::Z,
            Atom::Zb => Letter::Zb,
            Atom::Dz => Letter::Dz,
            Atom::Dzb => Letter::Dzb,
            Atom::Rhoi => Letter::Rhoi,
            Atom::Del => Letter::Del,
            Atom::Delb => Letter::Delb,
            Atom::Zp => Letter::Zp,
            Atom::Zm => Letter::Zm,
            Atom::H => Letter::H,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Atom(Atom),
    QInt(u32),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Atom(_) | Expr::QInt(_) => 5,
        }
    }

    pub fn uses_patch_atoms(&self) -> bool {
        match self {
            Expr::Atom(a) => a.is_patch(),
            Expr::Int(_) | Expr::QInt(_) => false,
            Expr::Neg(x) | Expr::Pow(x, _) => x.uses_patch_atoms(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.uses_patch_atoms() || b.uses_patch_atoms()
            }
        }
    }

    /// Value when the expression contains no algebra atoms.
    pub fn scalar(&self) -> Result<Option<Scalar>> {
        Ok(match self {
            Expr::Int(n) => Some(Scalar::from_rational(num::BigRational::from_integer(n.clone()))),
            Expr::Atom(a) => a.scalar(),
            Expr::QInt(n) => Some(qint(*n)),
            Expr::Neg(x) => x.scalar()?.map(|v| -v),
            Expr::Add(a, b) => both(a, b, |x, y| Ok(x + y))?,
            Expr::Sub(a, b) => both(a, b, |x, y| Ok(x - y))?,
            Expr::Mul(a, b) => both(a, b, |x, y| Ok(x * y))?,
            Expr::Div(a, b) => both(a, b, |x, y| x.checked_div(&y))?,
            Expr::Pow(x, n) => match x.scalar()? {
                Some(v) if *n >= 0 => Some(v.pow(*n as u32)),
                Some(v) => Some(v.inv()?.pow((-n) as u32)),
                None => None,
            },
        })
    }
}

fn both(a: &Expr, b: &Expr, f: impl Fn(Scalar, Scalar) -> Result<Scalar>) -> Result<Option<Scalar>> {
    match (a.scalar()?, b.scalar()?) {
        (Some(x), Some(y)) => f(x, y).map(Some),
        _ => Ok(None),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8| if e.precedence() < min { format!("({e})") } else { e.to_string() };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Atom(a) => write!(f, "{}", a.name()),
            Expr::QInt(n) => write!(f, "qint({n})"),
            Expr::Neg(x) => write!(f, "-{}", wrap(x, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", wrap(a, 1), wrap(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", wrap(a, 1), wrap(b, 2)),
            Expr::Mul(a, b) => write!(f, "{} * {}", wrap(a, 2), wrap(b, 3)),
            Expr::Div(a, b) => write!(f, "{} / {}", wrap(a, 2), wrap(b, 3)),
            Expr::Pow(x, n) => write!(f, "{}^{n}", wrap(x, 5)),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(parse_error(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.primary()?;
        if self.eat(b'^') {
            let n = self.signed_int()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(parse_error(start, "expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let start = self.pos;
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| parse_error(start, "exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn primary(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return Err(parse_error(self.pos, "unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(b')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let d = self.digits()?;
            return Ok(Expr::Int(d.parse().expect("digits")));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            if name == "qint" {
                self.expect(b'(')?;
                let at = self.pos;
                let n: u32 = self.digits()?.parse().map_err(|_| parse_error(at, "qint argument out of range"))?;
                self.expect(b')')?;
                return Ok(Expr::QInt(n));
            }
            return Atom::from_name(name).map(Expr::Atom).ok_or_else(|| parse_error(start, format!("unknown atom '{name}'")));
        }
        Err(parse_error(self.pos, format!("unexpected '{}'", c as char)))
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(parse_error(p.pos, format!("unexpected '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

type Words = BTreeMap<Vec<Letter>, Scalar>;

fn words_scalar(c: Scalar) -> Words {
    let mut w = Words::new();
    if !c.is_zero() {
        w.insert(Vec::new(), c);
    }
    w
}

fn words_add(mut a: Words, b: Words, sign: &Scalar) -> Words {
    for (w, c) in b {
        let e = a.entry(w).or_default();
        *e += &(&c * sign);
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn words_mul(a: &Words, b: &Words) -> Words {
    let mut out = Words::new();
    for (x, c) in a {
        for (y, d) in b {
            let e = out.entry([x.clone(), y.clone()].concat()).or_default();
            *e += &(c * d);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn as_scalar(w: &Words) -> Option<Scalar> {
    match w.len() {
        0 => Some(Scalar::zero()),
        1 => w.get(&Vec::new()).cloned(),
        _ => None,
    }
}

/// Letter words of a sphere-context expression, ready for normalization.
pub fn eval_words(e: &Expr) -> Result<Replacement<Letter>> {
    Ok(words(e)?.into_iter().map(|(w, c)| (c, w)).collect())
}

fn words(e: &Expr) -> Result<Words> {
    if let Some(c) = e.scalar()? {
        return Ok(words_scalar(c));
    }
    let one = Scalar::one();
    Ok(match e {
        Expr::Atom(Atom::Rho) => words_add(words_scalar(one.clone()), Words::from([(vec![Letter::Zb, Letter::Z], one)]), &Scalar::one()),
        Expr::Atom(a) if a.is_patch() => {
            return Err(Error::Domain(format!("'{}' is only available under patch or pb", a.name())));
        }
        Expr::Atom(a) => Words::from([(vec![a.letter().expect("non-scalar atom")], one)]),
        Expr::Neg(x) => words_add(Words::new(), words(x)?, &-one),
        Expr::Add(a, b) => words_add(words(a)?, words(b)?, &one),
        Expr::Sub(a, b) => words_add(words(a)?, words(b)?, &-one),
        Expr::Mul(a, b) => words_mul(&words(a)?, &words(b)?),
        Expr::Div(a, b) => {
            let d = as_scalar(&words(b)?).ok_or_else(|| Error::Domain(format!("division by non-scalar '{b}'")))?;
            let inv = d.inv()?;
            words(a)?.into_iter().map(|(w, c)| (w, &c * &inv)).collect()
        }
        Expr::Pow(x, n) if *n >= 0 => {
            let base = words(x)?;
            (0..*n).fold(words_scalar(one), |acc, _| words_mul(&acc, &base))
        }
        Expr::Pow(x, n) => match x.as_ref() {
            Expr::Atom(Atom::Rhoi) => words(&Expr::Pow(Box::new(Expr::Atom(Atom::Rho)), -n))?,
            Expr::Atom(Atom::Rho) => words(&Expr::Pow(Box::new(Expr::Atom(Atom::Rhoi)), -n))?,
            _ => return Err(Error::Domain(format!("negative power of '{x}' needs the patch context"))),
        },
        Expr::Int(_) | Expr::QInt(_) => unreachable!("scalars handled above"),
    })
}

/// Evaluate in the localization; all atoms except derivatives and vector fields.
pub fn eval_local(e: &Expr) -> Result<LocalElement> {
    if let Some(c) = e.scalar()? {
        return Ok(LocalElement::scalar(c));
    }
    Ok(match e {
        Expr::Atom(a) => match a {
            Atom::Z => LocalElement::z_pow(1),
            Atom::Zb => LocalElement::zb(),
            Atom::Dz => LocalElement::dz(),
            Atom::Dzb => LocalElement::dzb(),
            Atom::Rhoi => LocalElement::rho_part(RationalRho::rho_pow(-1)),
            Atom::Rho => LocalElement::rho_part(RationalRho::rho_pow(1)),
            Atom::W => w_generators().w,
            Atom::Wb => w_generators().w_bar,
            Atom::Dw => w_generators().dw,
            Atom::Dwb => w_generators().dw_bar,
            other => return Err(Error::Domain(format!("'{}' has no meaning in the localization", other.name()))),
        },
        Expr::Neg(x) => eval_local(x)?.scale(&Scalar::from_int(-1)),
        Expr::Add(a, b) => eval_local(a)?.add(&eval_local(b)?),
        Expr::Sub(a, b) => eval_local(a)?.sub(&eval_local(b)?),
        Expr::Mul(a, b) => eval_local(a)?.mul(&eval_local(b)?),
        Expr::Div(a, b) => {
            let d = b.scalar()?.ok_or_else(|| Error::Domain(format!("division by non-scalar '{b}'")))?;
            eval_local(a)?.scale(&d.inv()?)
        }
        Expr::Pow(x, n) => {
            let base = eval_local(x)?;
            let base = if *n < 0 {
                base.inverse().ok_or_else(|| Error::Domain(format!("'{x}' is not invertible in the localization")))?
            } else {
                base
            };
            base.pow(n.unsigned_abs() as u32)
        }
        Expr::Int(_) | Expr::QInt(_) => unreachable!("scalars handled above"),
    })
}

impl Expr {
    pub fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Int(n) if n.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::Strategy;
    use crate::smash::normalize_smash;

    #[test]
    fn parses_examples() {
        assert!(parse("z*zb - q^-2*zb*z").is_ok());
        assert!(matches!(parse("qint(3)*rhoi^2").unwrap(), Expr::Mul(..)));
        match parse("z*)") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("z +"), Err(Error::Parse { offset: 3, .. })));
        assert!(matches!(parse("foo"), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn print_then_parse_is_identity() {
        for s in ["z*zb - q^-2*zb*z", "-(z + zb)^2 * rhoi", "qint(3)/(q - 1) - -dz", "(1 - 2) - (3 - 4)", "a"] {
            let Ok(e) = parse(s) else { continue };
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn zzb_relation_normalizes_to_zero() {
        let e = parse("z*zb - q^-2*zb*z - (q^-2 - 1)").unwrap();
        let v = normalize_smash(eval_words(&e).unwrap(), Strategy::Leftmost).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn context_rules() {
        assert!(matches!(eval_words(&parse("w").unwrap()), Err(Error::Domain(_))));
        assert!(matches!(eval_words(&parse("z^-1").unwrap()), Err(Error::Domain(_))));
        assert!(matches!(eval_words(&parse("z / z").unwrap()), Err(Error::Domain(_))));
        let w = eval_local(&parse("w * z").unwrap()).unwrap();
        assert_eq!(w, LocalElement::one());
        let r = eval_local(&parse("(rho - q^2)^-1 * (rho - q^2)").unwrap()).unwrap();
        assert_eq!(r, LocalElement::one());
        assert!(eval_local(&parse("Zp").unwrap()).is_err());
    }
}
