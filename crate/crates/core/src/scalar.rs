//! Exact coefficients: rational functions in `s = q^(1/2)` over the rationals.
//!
//! A [`Scalar`] is stored as `s^shift * num(s) / den(s)` where `num` and `den`
//! are dense polynomials with nonzero constant terms, `den` is monic and the
//! two are coprime. This makes equality structural. Laurent polynomials in `s`
//! (the overwhelmingly common case during normal ordering) keep `den == 1`
//! and never touch the gcd path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Poly(vec![c]).trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        Poly(coeffs).trimmed()
    }

    /// `s - root`
    pub fn linear(root: BigRational) -> Self {
        Poly(vec![-root, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Poly(out).trimmed()
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiply by `s^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.0.iter().cloned());
        Poly(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.0.len() < d.0.len() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.0.clone();
        let dl = d.lead();
        let dd = d.degree();
        let mut quot = vec![BigRational::zero(); self.0.len() - d.0.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly(quot).trimmed(), Poly(rem).trimmed())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        self.scale(&(BigRational::one() / l))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            if b.degree() == 0 {
                return Poly::one();
            }
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.0.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Number of leading zero coefficients (the power of `s` dividing `self`).
    fn low_order(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    fn drop_low(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }

    /// Coefficient-reversed polynomial `s^deg * p(1/s)`.
    fn reversed(&self) -> Poly {
        let mut v = self.0.clone();
        v.reverse();
        Poly(v).trimmed()
    }

    /// Divide out `(s - 1)` as often as possible; returns the multiplicity.
    fn strip_root_one(&self) -> (Poly, usize) {
        let one = BigRational::one();
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() && p.eval_rational(&one).is_zero() {
            p = p.div_rem(&Poly::linear(one.clone())).0;
            k += 1;
        }
        (p, k)
    }
}

/// Element of ℚ(s), `s = q^(1/2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar { shift: 0, num: Poly::constant(c), den: Poly::one() }.normalized()
    }

    /// `s^k`
    pub fn s_pow(k: i64) -> Self {
        Scalar { shift: k, num: Poly::one(), den: Poly::one() }
    }

    /// `q^k = s^(2k)`
    pub fn q_pow(k: i64) -> Self {
        Scalar::s_pow(2 * k)
    }

    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// `λ = q - q⁻¹`
    pub fn lambda() -> Self {
        Scalar::q_pow(1) - Scalar::q_pow(-1)
    }

    /// Build `s^shift * num / den` and bring it to canonical form.
    pub fn from_parts(shift: i64, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { shift, num, den }.normalized())
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        let k = self.num.low_order();
        if k > 0 {
            self.num = self.num.drop_low(k);
            self.shift += k as i64;
        }
        let k = self.den.low_order();
        if k > 0 {
            self.den = self.den.drop_low(k);
            self.shift -= k as i64;
        }
        if self.den.degree() > 0 && self.num.degree() > 0 {
            let g = self.num.gcd(&self.den);
            if g.degree() > 0 {
                self.num = self.num.div_rem(&g).0;
                self.den = self.den.div_rem(&g).0;
            }
        }
        let l = self.den.lead();
        if !l.is_one() {
            let inv = BigRational::one() / l;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial in `s`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// Constant rational value, if the scalar does not depend on `s`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.shift == 0 && self.num.degree() == 0 && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_parts(-self.shift, self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `s -> 1/s` (equivalently `q -> 1/q`).
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return Scalar::zero();
        }
        let shift = -self.shift - self.num.degree() as i64 + self.den.degree() as i64;
        Scalar { shift, num: self.num.reversed(), den: self.den.reversed() }.normalized()
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        s.powi(self.shift as i32) * self.num.eval_f64(s) / self.den.eval_f64(s)
    }

    /// `lim_{s→1} self / (q² - 1)^pole_order`.
    pub fn classical_limit(&self, pole_order: u32) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let (n, kn) = self.num.strip_root_one();
        let (d, kd) = self.den.strip_root_one();
        let order = kn as i64 - kd as i64;
        match order.cmp(&(pole_order as i64)) {
            Ordering::Less => Err(Error::PoleAtLimit(self.to_string())),
            Ordering::Greater => Ok(BigRational::zero()),
            Ordering::Equal => {
                // (s⁴-1)/(s-1) → 4 at s = 1
                let one = BigRational::one();
                let four = BigRational::from_integer(BigInt::from(4).pow(pole_order));
                Ok(n.eval_rational(&one) / d.eval_rational(&one) / four)
            }
        }
    }

    fn all_even(&self) -> bool {
        self.shift % 2 == 0
            && self.num.0.iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero())
            && self.den.0.iter().enumerate().all(|(i, c)| i % 2 == 0 || c.is_zero())
    }
}

/// `[n]_q = (q^{2n} - 1)/(q² - 1) = 1 + q² + ... + q^{2(n-1)}`
pub fn qint(n: u32) -> Scalar {
    (0..n as i64).fold(Scalar::zero(), |acc, k| acc + Scalar::q_pow(2 * k))
}

/// `[n]_{1/q}`
pub fn qint_bar(n: u32) -> Scalar {
    qint(n).bar()
}

/// `[n]_q` extended to negative `n` through `(q^{2n} - 1)/(q² - 1)`.
pub fn qint_signed(n: i64) -> Scalar {
    if n >= 0 {
        qint(n as u32)
    } else {
        -(Scalar::q_pow(2 * n) * qint((-n) as u32))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::from_rational(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.shift.min(rhs.shift);
        let a = self.num.shift_up((self.shift - e) as usize);
        let b = rhs.num.shift_up((rhs.shift - e) as usize);
        let (num, den) = if self.den == rhs.den {
            (a.add(&b), self.den.clone())
        } else {
            (a.mul(&rhs.den).add(&b.mul(&self.den)), self.den.mul(&rhs.den))
        };
        Scalar { shift: e, num, den }.normalized()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let shift = self.shift + rhs.shift;
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar { shift, num: self.num.mul(&rhs.num), den: Poly::one() };
        }
        Scalar { shift, num: self.num.mul(&rhs.num), den: self.den.mul(&rhs.den) }.normalized()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Panics on division by zero; use [`Scalar::checked_div`] when the divisor is untrusted.
impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.checked_div(&rhs).expect("scalar division by zero")
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Render `Σ c_i var^(i*step + offset)` highest power first.
fn fmt_poly(p: &Poly, offset: i64, var: &str, step: i64) -> String {
    let mut terms: Vec<(usize, &BigRational)> = p.0.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).collect();
    // lead with a positive term when there is one
    if terms.first().is_some_and(|(_, c)| c.is_negative()) && terms.iter().any(|(_, c)| c.is_positive()) {
        terms.reverse();
    }
    let mut out = String::new();
    for (i, c) in terms {
        let e = (i as i64 + offset) / step;
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if mono.is_empty() {
            out.push_str(&fmt_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{}*{}", fmt_rational(&a), mono));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    /// `q^2 + 1`, `(q^2 + 1)/q`, or in `s` when odd powers of `s` occur.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (var, step) = if self.all_even() { ("q", 2) } else { ("s", 1) };
        if self.den.is_one() {
            return write!(f, "{}", fmt_poly(&self.num, self.shift, var, step));
        }
        let (noff, doff) = if self.shift >= 0 { (self.shift, 0) } else { (0, -self.shift) };
        let n = fmt_poly(&self.num, noff, var, step);
        let d = fmt_poly(&self.den, doff, var, step);
        let single = |p: &Poly| p.0.iter().filter(|c| !c.is_zero()).count() == 1;
        let n = if single(&self.num) && !n.starts_with('-') { n } else { format!("({n})") };
        let d = if single(&self.den) && !d.contains('/') { d } else { format!("({d})") };
        write!(f, "{n}/{d}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn inverse_and_lambda() {
        assert!((q() * Scalar::q_pow(-1)).is_one());
        assert_eq!(Scalar::lambda() + Scalar::q_pow(-1), q());
    }

    #[test]
    fn gcd_reduction() {
        let num = Scalar::q_pow(2) - Scalar::one();
        let den = q() - Scalar::one();
        assert_eq!(num / den, q() + Scalar::one());
    }

    #[test]
    fn q_integers() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(2), Scalar::one() + Scalar::q_pow(2));
        for n in 0..=20 {
            assert_eq!(qint(n + 1), Scalar::q_pow(2) * qint(n) + Scalar::one());
        }
        // closed form (q^{2n}-1)/(q²-1)
        let n = 5;
        let closed = (Scalar::q_pow(2 * n) - Scalar::one()) / (Scalar::q_pow(2) - Scalar::one());
        assert_eq!(qint(n as u32), closed);
        assert_eq!(qint_bar(2), Scalar::one() + Scalar::q_pow(-2));
    }

    #[test]
    fn classical_limits() {
        let three = BigRational::from_integer(3.into());
        assert_eq!(qint(3).classical_limit(0).unwrap(), three);
        assert!((Scalar::q_pow(2) - Scalar::one()).classical_limit(1).unwrap().is_one());
        assert!(Scalar::lambda().classical_limit(1).unwrap().is_one());
        assert!(matches!(Scalar::one().classical_limit(1), Err(Error::PoleAtLimit(_))));
        let pole = Scalar::one() / (Scalar::q() - Scalar::one());
        assert!(pole.classical_limit(0).is_err());
    }

    #[test]
    fn bar_is_involution() {
        let x = (Scalar::q_pow(3) + Scalar::s_pow(1)) / (Scalar::q() + Scalar::from_int(2));
        assert_eq!(x.bar().bar(), x);
        assert_eq!(Scalar::q().bar(), Scalar::q_pow(-1));
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rendering() {
        assert_eq!((Scalar::q_pow(2) + Scalar::one()).to_string(), "q^2 + 1");
        let x = (Scalar::q_pow(2) + Scalar::one()) / Scalar::q();
        assert_eq!(x.to_string(), "q + q^-1");
        let y = Scalar::one() / qint(2);
        assert_eq!(y.to_string(), "1/(q^2 + 1)");
        assert_eq!(Scalar::s_pow(3).to_string(), "s^3");
        assert_eq!(Scalar::from_ratio(-1, 2).to_string(), "-1/2");
    }
}
