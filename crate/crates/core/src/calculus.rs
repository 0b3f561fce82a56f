//! Left-covariant differential calculus in the z-patch.
//!
//! Forms are stored coefficient-left on the ordered basis `{1, dz, dz̄, dz dz̄}`.
//! Both `dz` and `dz̄` move past functions by the same diagonal automorphism
//! `σ(z) = q² z, σ(z̄) = q⁻² z̄, σ(ρ) = ρ`, and `dz̄ dz = -q² dz dz̄`.
//!
//! Derivatives live in [`DiffOp`], which acts on functions only. On forms the
//! exterior derivative is fixed by graded Leibniz with `d(dz) = d(dz̄) = 0`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::render;
use crate::scalar::{qint, qint_bar, Scalar};
use crate::zalgebra::{owned_ops, FuncElement, FuncMonomial};

/// Twist exponent of `σ`: `dz f = σ(f) dz`.
pub const FORM_TWIST: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormBasis {
    One = 0,
    Dz = 1,
    Dzb = 2,
    DzDzb = 3,
}

impl FormBasis {
    pub const ALL: [FormBasis; 4] = [FormBasis::One, FormBasis::Dz, FormBasis::Dzb, FormBasis::DzDzb];

    pub fn grade(self) -> u32 {
        match self {
            FormBasis::One => 0,
            FormBasis::Dz | FormBasis::Dzb => 1,
            FormBasis::DzDzb => 2,
        }
    }

    pub fn from_bits(eps: bool, epsbar: bool) -> Self {
        match (eps, epsbar) {
            (false, false) => FormBasis::One,
            (true, false) => FormBasis::Dz,
            (false, true) => FormBasis::Dzb,
            (true, true) => FormBasis::DzDzb,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            FormBasis::One => (false, false),
            FormBasis::Dz => (true, false),
            FormBasis::Dzb => (false, true),
            FormBasis::DzDzb => (true, true),
        }
    }

    fn name(self) -> &'static str {
        match self {
            FormBasis::One => "",
            FormBasis::Dz => "dz",
            FormBasis::Dzb => "dzb",
            FormBasis::DzDzb => "dz * dzb",
        }
    }

    /// `e_i e_j = c · e_k`
    pub fn product(self, other: FormBasis) -> Option<(Scalar, FormBasis)> {
        use FormBasis::*;
        match (self, other) {
            (One, x) | (x, One) => Some((Scalar::one(), x)),
            (Dz, Dzb) => Some((Scalar::one(), DzDzb)),
            (Dzb, Dz) => Some((-Scalar::q_pow(2), DzDzb)),
            _ => None,
        }
    }
}

/// A differential form `Σ f_e · e`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FormElement {
    coeffs: [FuncElement; 4],
}

impl FormElement {
    pub fn zero() -> Self {
        FormElement::default()
    }

    pub fn one() -> Self {
        FormElement::from_func(FuncElement::one())
    }

    pub fn from_func(f: FuncElement) -> Self {
        FormElement::with(f, FormBasis::One)
    }

    pub fn scalar(c: Scalar) -> Self {
        FormElement::from_func(FuncElement::scalar(c))
    }

    /// `f · e`
    pub fn with(f: FuncElement, e: FormBasis) -> Self {
        let mut out = FormElement::zero();
        out.coeffs[e as usize] = f;
        out
    }

    pub fn dz() -> Self {
        FormElement::with(FuncElement::one(), FormBasis::Dz)
    }

    pub fn dzb() -> Self {
        FormElement::with(FuncElement::one(), FormBasis::Dzb)
    }

    pub fn coeff(&self, e: FormBasis) -> &FuncElement {
        &self.coeffs[e as usize]
    }

    pub fn parts(&self) -> impl Iterator<Item = (FormBasis, &FuncElement)> {
        FormBasis::ALL.into_iter().map(move |e| (e, &self.coeffs[e as usize])).filter(|(_, f)| !f.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The function part if the form has degree 0.
    pub fn as_func(&self) -> Option<FuncElement> {
        self.parts().all(|(e, _)| e == FormBasis::One).then(|| self.coeffs[0].clone())
    }

    /// Grade if homogeneous (zero is reported as grade 0).
    pub fn grade(&self) -> Option<u32> {
        let mut g = None;
        for (e, _) in self.parts() {
            match g {
                None => g = Some(e.grade()),
                Some(h) if h != e.grade() => return None,
                _ => {}
            }
        }
        Some(g.unwrap_or(0))
    }

    /// Even and odd components.
    pub fn split_parity(&self) -> (FormElement, FormElement) {
        let mut even = FormElement::zero();
        let mut odd = FormElement::zero();
        for (e, f) in self.parts() {
            let target = if e.grade() % 2 == 0 { &mut even } else { &mut odd };
            target.coeffs[e as usize] = f.clone();
        }
        (even, odd)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        FormElement { coeffs: self.coeffs.clone().map(|f| f.scale(c)) }
    }

    pub fn map_coeffs(&self, g: impl Fn(&FuncElement) -> FuncElement) -> Self {
        FormElement { coeffs: self.coeffs.clone().map(|f| g(&f)) }
    }

    /// Diagonal automorphism with `z, dz ↦ qᵗ·`, `z̄, dz̄ ↦ q⁻ᵗ·`, `ρ ↦ ρ`.
    pub fn twist(&self, t: i64) -> Self {
        let mut out = FormElement::zero();
        for (e, f) in self.parts() {
            let (eps, epsbar) = e.bits();
            let charge = eps as i64 - epsbar as i64;
            out.coeffs[e as usize] = f.twist(t).scale(&Scalar::q_pow(t * charge));
        }
        out
    }

    pub fn left_mul_func(&self, f: &FuncElement) -> Self {
        self.map_coeffs(|c| f.mul(c))
    }

    pub fn mul(&self, other: &FormElement) -> Self {
        let mut out = FormElement::zero();
        for (e, f) in self.parts() {
            for (e2, g) in other.parts() {
                if let Some((c, e3)) = e.product(e2) {
                    // f e g e2 = f σ^{|e|}(g) e e2
                    let moved = g.twist(FORM_TWIST * e.grade() as i64);
                    let term = f.mul(&moved).scale(&c);
                    out.coeffs[e3 as usize] = &out.coeffs[e3 as usize] + &term;
                }
            }
        }
        out
    }

    /// Sphere star (identical on forms for both involutions):
    /// `(f dz)* = dz̄ f*`, `(dz dz̄)* = dz dz̄`.
    pub fn star(&self) -> Self {
        let mut out = FormElement::zero();
        for (e, f) in self.parts() {
            let fs = FormElement::from_func(f.star());
            let es = match e {
                FormBasis::One => FormElement::one(),
                FormBasis::Dz => FormElement::dzb(),
                FormBasis::Dzb => FormElement::dz(),
                FormBasis::DzDzb => FormElement::dz().mul(&FormElement::dzb()),
            };
            out = out + es.mul(&fs);
        }
        out
    }

    /// Bar swap `z ↔ z̄, dz ↔ dz̄, q ↦ 1/q`; a ring homomorphism.
    pub fn bar_swap(&self) -> Self {
        let mut out = FormElement::zero();
        for (e, f) in self.parts() {
            let fe = FormElement::from_func(f.bar_swap());
            let ee = match e {
                FormBasis::One => FormElement::one(),
                FormBasis::Dz => FormElement::dzb(),
                FormBasis::Dzb => FormElement::dz(),
                FormBasis::DzDzb => FormElement::dzb().mul(&FormElement::dz()),
            };
            out = out + fe.mul(&ee);
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        self.delta() + self.delta_bar()
    }

    /// Holomorphic part `δ = dz ∂`.
    pub fn delta(&self) -> Self {
        let mut out = FormElement::zero();
        for (e, f) in self.parts() {
            let df = FormElement::dz().mul(&FormElement::from_func(Derivation::Del.apply(f)));
            match e {
                FormBasis::One => out = out + df,
                FormBasis::Dzb => out = out + df.mul(&FormElement::dzb()),
                _ => {}
            }
        }
        out
    }

    /// Antiholomorphic part `δ̄ = dz̄ ∂̄`.
    pub fn delta_bar(&self) -> Self {
        let mut out = FormElement::zero();
        for (e, f) in self.parts() {
            let df = FormElement::dzb().mul(&FormElement::from_func(Derivation::Delb.apply(f)));
            match e {
                FormBasis::One => out = out + df,
                FormBasis::Dz => out = out + df.mul(&FormElement::dz()),
                _ => {}
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut terms = Vec::new();
        for (e, f) in self.parts() {
            let (eps, epsbar) = e.bits();
            for (x, c) in f.terms() {
                terms.push(serde_json::json!({
                    "coeff": c.to_string(), "m": x.m, "a": x.a, "b": x.b,
                    "eps": eps as u8, "epsbar": epsbar as u8,
                }));
            }
        }
        let grade = self.grade().map(serde_json::Value::from).unwrap_or(serde_json::Value::Null);
        serde_json::json!({"grade": grade, "terms": terms})
    }
}

/// Graded commutator `xy - (-1)^{|x||y|} yx` extended bilinearly over parities.
pub fn graded_commutator(x: &FormElement, y: &FormElement) -> FormElement {
    let (xe, xo) = x.split_parity();
    let (ye, yo) = y.split_parity();
    let plain = |a: &FormElement, b: &FormElement| a.mul(b) - b.mul(a);
    let anti = |a: &FormElement, b: &FormElement| a.mul(b) + b.mul(a);
    plain(&xe, &ye) + plain(&xe, &yo) + plain(&xo, &ye) + anti(&xo, &yo)
}

impl fmt::Display for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (e, g) in self.parts() {
            for (x, c) in g.terms() {
                let mono = [x.render(), e.name().to_string()].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>();
                terms.push((c.clone(), mono.join(" * ")));
            }
        }
        write!(f, "{}", render::join_terms(terms))
    }
}

impl fmt::Debug for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormElement({self})")
    }
}

impl<'a> Add<&'a FormElement> for &'a FormElement {
    type Output = FormElement;
    fn add(self, rhs: &FormElement) -> FormElement {
        let mut out = self.clone();
        for i in 0..4 {
            out.coeffs[i] = &out.coeffs[i] + &rhs.coeffs[i];
        }
        out
    }
}

impl<'a> Sub<&'a FormElement> for &'a FormElement {
    type Output = FormElement;
    fn sub(self, rhs: &FormElement) -> FormElement {
        let mut out = self.clone();
        for i in 0..4 {
            out.coeffs[i] = &out.coeffs[i] - &rhs.coeffs[i];
        }
        out
    }
}

impl<'a> Mul<&'a FormElement> for &'a FormElement {
    type Output = FormElement;
    fn mul(self, rhs: &FormElement) -> FormElement {
        FormElement::mul(self, rhs)
    }
}

impl Neg for &FormElement {
    type Output = FormElement;
    fn neg(self) -> FormElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for FormElement {
    type Output = FormElement;
    fn neg(self) -> FormElement {
        -&self
    }
}

owned_ops!(FormElement);

impl From<FuncElement> for FormElement {
    fn from(f: FuncElement) -> Self {
        FormElement::from_func(f)
    }
}

/// Which involution to use on derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarVariant {
    /// `∂* = -q⁻²∂̄ + (1+q⁻²) z ρ⁻¹`, `∂̄* = -q²∂ + (1+q²) ρ⁻¹ z̄`
    Sphere,
    /// `∂* = -q²∂̄`, `∂̄* = -q⁻²∂`
    Plane,
}

/// Key of a [`DiffOp`] term `f · ∂ᶜ ∂̄ᵈ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffKey {
    pub mono: FuncMonomial,
    pub c: u32,
    pub d: u32,
}

/// Polynomial differential operator `Σ f ∂ᶜ ∂̄ᵈ`, functions on the left.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    terms: BTreeMap<DiffKey, Scalar>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn one() -> Self {
        DiffOp::from_func(&FuncElement::one())
    }

    pub fn from_func(f: &FuncElement) -> Self {
        DiffOp::with_derivs(f, 0, 0)
    }

    pub fn scalar(c: Scalar) -> Self {
        DiffOp::from_func(&FuncElement::scalar(c))
    }

    /// `f ∂ᶜ ∂̄ᵈ`
    pub fn with_derivs(f: &FuncElement, c: u32, d: u32) -> Self {
        let mut out = DiffOp::zero();
        for (x, k) in f.terms() {
            out.add_term(DiffKey { mono: *x, c, d }, k.clone());
        }
        out
    }

    pub fn del() -> Self {
        DiffOp::with_derivs(&FuncElement::one(), 1, 0)
    }

    pub fn delb() -> Self {
        DiffOp::with_derivs(&FuncElement::one(), 0, 1)
    }

    fn add_term(&mut self, k: DiffKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = DiffOp::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    /// Group terms by derivative monomial.
    fn grouped(&self) -> BTreeMap<(u32, u32), FuncElement> {
        let mut out: BTreeMap<(u32, u32), FuncElement> = BTreeMap::new();
        for (k, v) in &self.terms {
            let e = out.entry((k.c, k.d)).or_default();
            *e = &*e + &FuncElement::monomial(k.mono, v.clone());
        }
        out
    }

    fn from_grouped(groups: BTreeMap<(u32, u32), FuncElement>) -> Self {
        let mut out = DiffOp::zero();
        for ((c, d), f) in groups {
            for (x, v) in f.terms() {
                out.add_term(DiffKey { mono: *x, c, d }, v.clone());
            }
        }
        out
    }

    /// Functions that multiply each derivative monomial.
    pub fn coefficient(&self, c: u32, d: u32) -> FuncElement {
        self.grouped().remove(&(c, d)).unwrap_or_default()
    }

    /// `f · self`
    pub fn left_mul_func(&self, f: &FuncElement) -> Self {
        DiffOp::from_grouped(self.grouped().into_iter().map(|(k, g)| (k, f.mul(&g))).collect())
    }

    /// `∂ · self` (`bar = false`) or `∂̄ · self` (`bar = true`).
    fn left_mul_derivative(&self, bar: bool) -> Self {
        let der = if bar { Derivation::Delb } else { Derivation::Del };
        let mut groups: BTreeMap<(u32, u32), FuncElement> = BTreeMap::new();
        for ((c, d), g) in self.grouped() {
            let acted = der.apply(&g);
            let e = groups.entry((c, d)).or_default();
            *e = &*e + &acted;
            let moved = g.twist(der.twist());
            if bar {
                // ∂̄ ∂ᶜ = q^{2c} ∂ᶜ ∂̄
                let e = groups.entry((c, d + 1)).or_default();
                *e = &*e + &moved.scale(&Scalar::q_pow(2 * c as i64));
            } else {
                let e = groups.entry((c + 1, d)).or_default();
                *e = &*e + &moved;
            }
        }
        DiffOp::from_grouped(groups)
    }

    pub fn mul(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for ((c, d), f) in self.grouped() {
            let mut t = other.clone();
            for _ in 0..d {
                t = t.left_mul_derivative(true);
            }
            for _ in 0..c {
                t = t.left_mul_derivative(false);
            }
            out = out + t.left_mul_func(&f);
        }
        out
    }

    pub fn pow(&self, n: u32) -> DiffOp {
        (0..n).fold(DiffOp::one(), |acc, _| acc.mul(self))
    }

    /// Action on functions: move derivatives right and drop what remains.
    pub fn apply(&self, f: &FuncElement) -> FuncElement {
        let mut out = FuncElement::zero();
        for ((c, d), g) in self.grouped() {
            let mut h = f.clone();
            for _ in 0..d {
                h = Derivation::Delb.apply(&h);
            }
            for _ in 0..c {
                h = Derivation::Del.apply(&h);
            }
            out = out + g.mul(&h);
        }
        out
    }

    pub fn star(&self, variant: StarVariant) -> DiffOp {
        let (del_star, delb_star) = derivative_stars(variant);
        let mut out = DiffOp::zero();
        for ((c, d), g) in self.grouped() {
            // (g ∂ᶜ ∂̄ᵈ)* = (∂̄*)ᵈ (∂*)ᶜ g*
            let op = delb_star.pow(d).mul(&del_star.pow(c)).mul(&DiffOp::from_func(&g.star()));
            out = out + op;
        }
        out
    }

    /// Bar swap extended by `∂ ↔ ∂̄`.
    pub fn bar_swap(&self) -> DiffOp {
        let mut out = DiffOp::zero();
        for ((c, d), g) in self.grouped() {
            let op = DiffOp::from_func(&g.bar_swap()).mul(&DiffOp::delb().pow(c)).mul(&DiffOp::del().pow(d));
            out = out + op;
        }
        out
    }
}

fn derivative_stars(variant: StarVariant) -> (DiffOp, DiffOp) {
    let q = Scalar::q_pow;
    match variant {
        StarVariant::Sphere => {
            let zr = FuncElement::z().mul(&FuncElement::rhoi());
            let rzb = FuncElement::rhoi().mul(&FuncElement::zb());
            (
                DiffOp::delb().scale(&-q(-2)) + DiffOp::from_func(&zr.scale(&(Scalar::one() + q(-2)))),
                DiffOp::del().scale(&-q(2)) + DiffOp::from_func(&rzb.scale(&(Scalar::one() + q(2)))),
            )
        }
        StarVariant::Plane => (DiffOp::delb().scale(&-q(2)), DiffOp::del().scale(&-q(-2))),
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(k, c)| {
            let parts = [k.mono.render(), render::factors(&[("del", k.c as i64), ("delb", k.d as i64)])];
            let mono = parts.into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" * ");
            (c.clone(), mono)
        });
        write!(f, "{}", render::join_terms(terms))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        DiffOp::mul(self, rhs)
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&Scalar::from_int(-1))
    }
}

owned_ops!(DiffOp);

/// Canonical monomials `ρ⁻ᵐ z̄ᵃ zᵇ` with `m + a + b ≤ max_degree`.
pub fn basis_monomials(max_degree: u32) -> Vec<FuncMonomial> {
    let mut out = Vec::new();
    for m in 0..=max_degree {
        for a in 0..=max_degree - m {
            for b in 0..=max_degree - m - a {
                let x = FuncMonomial::new(m, a, b);
                if x.is_canonical() {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// `(∂⁽ⁿ⁾, ∂̄⁽ⁿ⁾) = (q^{4n}∂ - q²[2n]_q ρ⁻¹z̄, q^{-4n}∂̄ - q⁻²[2n]_{1/q} zρ⁻¹)`,
/// checked against `q^{±4n} ρ^{2n} ∂ ρ^{-2n}` on monomials up to degree 5.
pub fn gauge_derivative(n: u32) -> Result<(DiffOp, DiffOp)> {
    let n_i = n as i64;
    let q = Scalar::q_pow;
    let del_n = DiffOp::del().scale(&q(4 * n_i))
        - DiffOp::from_func(&FuncElement::rhoi().mul(&FuncElement::zb()).scale(&(q(2) * qint(2 * n))));
    let delb_n = DiffOp::delb().scale(&q(-4 * n_i))
        - DiffOp::from_func(&FuncElement::z().mul(&FuncElement::rhoi()).scale(&(q(-2) * qint_bar(2 * n))));
    let rho_up = FuncElement::rho_pow(2 * n_i);
    let rho_down = FuncElement::rho_pow(-2 * n_i);
    for x in basis_monomials(5) {
        let f = FuncElement::mono(x.m, x.a, x.b);
        let inner = &rho_down * &f;
        let conj = (&rho_up * &Derivation::Del.apply(&inner)).scale(&q(4 * n_i));
        if conj != del_n.apply(&f) {
            return Err(Error::VerificationFailure(format!("gauge derivative ∂^({n}) on {x}")));
        }
        let conj_b = (&rho_up * &Derivation::Delb.apply(&inner)).scale(&q(-4 * n_i));
        if conj_b != delb_n.apply(&f) {
            return Err(Error::VerificationFailure(format!("gauge derivative ∂̄^({n}) on {x}")));
        }
    }
    Ok((del_n, delb_n))
}

/// The one-forms built from `ξ = q dz ρ⁻¹ z̄`.
#[derive(Clone, Debug)]
pub struct XiForms {
    pub xi: FormElement,
    pub xi_star: FormElement,
    /// `Ξ = ξ - ξ*`
    pub big_xi: FormElement,
    pub d_big_xi: FormElement,
    pub big_xi_squared: FormElement,
}

/// Compute `ξ, ξ*, Ξ, dΞ, Ξ²` and check `dΞ = 2q dz̄ ρ⁻² dz`,
/// `Ξ² = qλ dz̄ ρ⁻² dz` and `Ξ* = -Ξ`.
pub fn xi_forms() -> Result<XiForms> {
    let q = Scalar::q();
    let xi = FormElement::dz().mul(&FormElement::from_func(FuncElement::rhoi().mul(&FuncElement::zb()))).scale(&q);
    let xi_star = xi.star();
    let big_xi = &xi - &xi_star;
    let d_big_xi = big_xi.d();
    let big_xi_squared = &big_xi * &big_xi;
    let area = FormElement::dzb().mul(&FormElement::from_func(FuncElement::rho_pow(-2))).mul(&FormElement::dz());
    if d_big_xi != area.scale(&(Scalar::from_int(2) * &q)) {
        return Err(Error::VerificationFailure(format!("dΞ = {d_big_xi}")));
    }
    if big_xi_squared != area.scale(&(&q * &Scalar::lambda())) {
        return Err(Error::VerificationFailure(format!("Ξ² = {big_xi_squared}")));
    }
    if big_xi.star() != -big_xi.clone() {
        return Err(Error::VerificationFailure("Ξ* = -Ξ".into()));
    }
    Ok(XiForms { xi, xi_star, big_xi, d_big_xi, big_xi_squared })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> Scalar {
        Scalar::q_pow(k)
    }

    fn func(m: u32, a: u32, b: u32) -> FormElement {
        FormElement::from_func(FuncElement::mono(m, a, b))
    }

    #[test]
    fn form_relations() {
        let z = func(0, 0, 1);
        let zb = func(0, 1, 0);
        let (dz, dzb) = (FormElement::dz(), FormElement::dzb());
        assert_eq!((&z * &dz), (&dz * &z).scale(&q(-2)));
        assert_eq!((&zb * &dz), (&dz * &zb).scale(&q(2)));
        assert_eq!((&z * &dzb), (&dzb * &z).scale(&q(-2)));
        assert_eq!((&zb * &dzb), (&dzb * &zb).scale(&q(2)));
        assert!((&dz * &dz).is_zero());
        assert!((&dzb * &dzb).is_zero());
        assert_eq!((&dz * &dzb), (&dzb * &dz).scale(&-q(-2)));
        // dz ρ⁻¹ = ρ⁻¹ dz
        let r = func(1, 0, 0);
        assert_eq!((&dz * &r), (&r * &dz));
    }

    #[test]
    fn d_of_simple_functions() {
        assert_eq!(func(0, 0, 1).d(), FormElement::dz());
        let expect = func(0, 1, 0).mul(&FormElement::dz()) + func(0, 0, 1).mul(&FormElement::dzb()).scale(&q(2));
        assert_eq!(func(0, 1, 1).d(), expect);
    }

    #[test]
    fn d_squared_vanishes() {
        for x in basis_monomials(6) {
            let f = func(x.m, x.a, x.b);
            assert!(f.d().d().is_zero(), "d² on {x}");
            assert!(f.delta().delta().is_zero());
            assert!((f.delta().delta_bar() + f.delta_bar().delta()).is_zero());
        }
    }

    #[test]
    fn derivative_rules_as_operators() {
        let z = DiffOp::from_func(&FuncElement::z());
        let zb = DiffOp::from_func(&FuncElement::zb());
        let (del, delb) = (DiffOp::del(), DiffOp::delb());
        assert_eq!((&del * &z), DiffOp::one() + (&z * &del).scale(&q(-2)));
        assert_eq!((&del * &zb), (&zb * &del).scale(&q(2)));
        assert_eq!((&delb * &z), (&z * &delb).scale(&q(-2)));
        assert_eq!((&delb * &zb), DiffOp::one() + (&zb * &delb).scale(&q(2)));
        assert_eq!((&del * &delb), (&delb * &del).scale(&q(-2)));
    }

    #[test]
    fn stars_on_derivatives() {
        let sphere = DiffOp::del().star(StarVariant::Sphere);
        let expect = DiffOp::delb().scale(&-q(-2))
            + DiffOp::from_func(&FuncElement::z().mul(&FuncElement::rhoi()).scale(&(Scalar::one() + q(-2))));
        assert_eq!(sphere, expect);
        assert_eq!(sphere.star(StarVariant::Sphere), DiffOp::del());
        assert_eq!(DiffOp::del().star(StarVariant::Plane), DiffOp::delb().scale(&-q(2)));
        assert_eq!(DiffOp::delb().star(StarVariant::Plane).star(StarVariant::Plane), DiffOp::delb());
    }

    #[test]
    fn gauge_derivatives() {
        let (d0, db0) = gauge_derivative(0).unwrap();
        assert_eq!(d0, DiffOp::del());
        assert_eq!(db0, DiffOp::delb());
        let (d1, _) = gauge_derivative(1).unwrap();
        let expect = DiffOp::del().scale(&q(4))
            - DiffOp::from_func(&FuncElement::rhoi().mul(&FuncElement::zb()).scale(&(q(2) * (Scalar::one() + q(2)))));
        assert_eq!(d1, expect);
    }

    #[test]
    fn xi_closed_forms() {
        let xi = xi_forms().unwrap();
        let z = func(0, 0, 1);
        let lhs = &xi.big_xi * &z - &z * &xi.big_xi;
        assert_eq!(lhs, FormElement::dz().scale(&Scalar::lambda()));
    }
}
