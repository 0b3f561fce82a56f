//! The classical limit `q → 1` and the graded Poisson brackets it induces.
//!
//! Brackets are never tabulated: `(x, y)` is the limit of the graded
//! commutator `(xy ∓ yx)/(q² - 1)` of quantum representatives.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num::complex::Complex64;
use num::{BigRational, One, Signed, Zero};

use crate::calculus::{graded_commutator, xi_forms, FormBasis, FormElement};
use crate::error::{Error, Result};
use crate::report::{residual, Check};
use crate::sample::{self, SampleRng};
use crate::scalar::Scalar;
use crate::wpatch::{w_generators, xi_in_w, ClassicalW, LocalElement};
use crate::zalgebra::{FuncElement, FuncMonomial};

/// Commutative graded element `Σ c ρ⁻ᵐ z̄ᵃ zᵇ e` over ℚ with `z̄z = ρ - 1`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PoissonElement {
    terms: BTreeMap<(FuncMonomial, FormBasis), BigRational>,
}

impl PoissonElement {
    pub fn zero() -> Self {
        PoissonElement::default()
    }

    pub fn one() -> Self {
        PoissonElement::mono(0, 0, 0, FormBasis::One, BigRational::one())
    }

    /// `c ρ⁻ᵐ z̄ᵃ zᵇ e`, reduced to canonical monomials.
    pub fn mono(m: u32, a: u32, b: u32, e: FormBasis, c: BigRational) -> Self {
        let mut out = PoissonElement::zero();
        out.add_mono(m, a, b, e, c);
        out
    }

    fn add_mono(&mut self, m: u32, a: u32, b: u32, e: FormBasis, c: BigRational) {
        if c.is_zero() {
            return;
        }
        if m >= 1 && a >= 1 && b >= 1 {
            // ρ⁻ᵐ z̄z = ρ⁻⁽ᵐ⁻¹⁾ - ρ⁻ᵐ
            self.add_mono(m - 1, a - 1, b - 1, e, c.clone());
            self.add_mono(m, a - 1, b - 1, e, -c);
            return;
        }
        let key = (FuncMonomial::new(m, a, b), e);
        let v = self.terms.entry(key).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(FuncMonomial, FormBasis), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &PoissonElement) -> Self {
        let mut out = self.clone();
        for ((x, e), c) in &other.terms {
            out.add_mono(x.m, x.a, x.b, *e, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = PoissonElement::zero();
        for ((x, e), d) in &self.terms {
            out.add_mono(x.m, x.a, x.b, *e, d * c);
        }
        out
    }

    pub fn sub(&self, other: &PoissonElement) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// Functions commute; `dz`, `dz̄` anticommute.
    pub fn mul(&self, other: &PoissonElement) -> Self {
        let mut out = PoissonElement::zero();
        for ((x, e1), c1) in &self.terms {
            for ((y, e2), c2) in &other.terms {
                let Some((e, sign)) = classical_form_product(*e1, *e2) else { continue };
                let c = c1 * c2 * BigRational::from_integer(sign.into());
                out.add_mono(x.m + y.m, x.a + y.a, x.b + y.b, e, c);
            }
        }
        out
    }

    /// Form degree of a homogeneous element.
    pub fn grade(&self) -> Option<u32> {
        let mut gs = self.terms.keys().map(|(_, e)| e.grade());
        let g = gs.next()?;
        gs.all(|h| h == g).then_some(g)
    }

    pub fn split_parity(&self) -> (PoissonElement, PoissonElement) {
        let mut even = PoissonElement::zero();
        let mut odd = PoissonElement::zero();
        for ((x, e), c) in &self.terms {
            let t = if e.grade() % 2 == 0 { &mut even } else { &mut odd };
            t.add_mono(x.m, x.a, x.b, *e, c.clone());
        }
        (even, odd)
    }

    /// Commutative exterior derivative, from `∂ρ⁻ᵐ/∂z = -m ρ⁻ᵐ⁻¹ z̄`.
    pub fn d(&self) -> Self {
        let mut out = PoissonElement::zero();
        let r = |n: i64| BigRational::from_integer(n.into());
        for ((x, e), c) in &self.terms {
            let (m, a, b) = (x.m, x.a, x.b);
            let mut dz_part = PoissonElement::zero();
            let mut dzb_part = PoissonElement::zero();
            if b > 0 {
                dz_part.add_mono(m, a, b - 1, FormBasis::One, c * r(b as i64));
            }
            if a > 0 {
                dzb_part.add_mono(m, a - 1, b, FormBasis::One, c * r(a as i64));
            }
            if m > 0 {
                dz_part.add_mono(m + 1, a + 1, b, FormBasis::One, c * r(-(m as i64)));
                dzb_part.add_mono(m + 1, a, b + 1, FormBasis::One, c * r(-(m as i64)));
            }
            let e_elem = PoissonElement::mono(0, 0, 0, *e, BigRational::one());
            let dz = PoissonElement::mono(0, 0, 0, FormBasis::Dz, BigRational::one());
            let dzb = PoissonElement::mono(0, 0, 0, FormBasis::Dzb, BigRational::one());
            out = out.add(&dz_part.mul(&dz).mul(&e_elem)).add(&dzb_part.mul(&dzb).mul(&e_elem));
        }
        out
    }

    /// A quantum representative with the same canonical coefficients.
    pub fn lift(&self) -> FormElement {
        let mut out = FormElement::zero();
        for ((x, e), c) in &self.terms {
            let f = FuncElement::monomial(*x, Scalar::from_rational(c.clone()));
            out = out + FormElement::with(f, *e);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|((x, e), c)| {
                let (eps, epsbar) = e.bits();
                serde_json::json!({"coeff": c.to_string(), "m": x.m, "a": x.a, "b": x.b, "eps": eps as u8, "epsbar": epsbar as u8})
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

/// `e₁ ∧ e₂ = sign · e` with `dz̄ ∧ dz = -dz ∧ dz̄`.
fn classical_form_product(a: FormBasis, b: FormBasis) -> Option<(FormBasis, i64)> {
    use FormBasis::*;
    match (a, b) {
        (One, x) | (x, One) => Some((x, 1)),
        (Dz, Dzb) => Some((DzDzb, 1)),
        (Dzb, Dz) => Some((DzDzb, -1)),
        _ => None,
    }
}

impl fmt::Display for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, ((x, e), c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            let mono = x.render();
            if !mono.is_empty() {
                factors.push(mono);
            }
            match e {
                FormBasis::One => {}
                FormBasis::Dz => factors.push("dz".into()),
                FormBasis::Dzb => factors.push("dzb".into()),
                FormBasis::DzDzb => factors.push("dz * dzb".into()),
            }
            let body = factors.join(" * ");
            let mag = c.abs();
            let text = match (body.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => body,
                (false, false) => format!("{mag} * {body}"),
            };
            match (i, c.is_negative()) {
                (0, true) => out.push_str(&format!("-{text}")),
                (0, false) => out.push_str(&text),
                (_, true) => out.push_str(&format!(" - {text}")),
                (_, false) => out.push_str(&format!(" + {text}")),
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PoissonElement({self})")
    }
}

fn limit_with(x: &FormElement, pole_order: u32) -> Result<PoissonElement> {
    let mut out = PoissonElement::zero();
    for (e, f) in x.parts() {
        for (m, c) in f.terms() {
            out.add_mono(m.m, m.a, m.b, e, c.classical_limit(pole_order)?);
        }
    }
    Ok(out)
}

/// Coefficient-wise `q → 1`.
pub fn classical_limit_elem(x: &FormElement) -> Result<PoissonElement> {
    limit_with(x, 0)
}

/// `lim (xy ∓ yx)/(q² - 1)`
pub fn poisson_bracket(x: &FormElement, y: &FormElement) -> Result<PoissonElement> {
    limit_with(&graded_commutator(x, y), 1)
}

/// Bracket of classical elements through quantum lifts; independent of the lift
/// because the commutator of any lifts vanishes at `q = 1`.
pub fn bracket(x: &PoissonElement, y: &PoissonElement) -> Result<PoissonElement> {
    poisson_bracket(&x.lift(), &y.lift())
}

fn local_graded_commutator(x: &LocalElement, y: &LocalElement) -> LocalElement {
    let parity = |v: &LocalElement| {
        let even = v.grade_part(0).add(&v.grade_part(2));
        (even, v.grade_part(1))
    };
    let (xe, xo) = parity(x);
    let (ye, yo) = parity(y);
    let plain = |a: &LocalElement, b: &LocalElement| a.mul(b).sub(&b.mul(a));
    let anti = |a: &LocalElement, b: &LocalElement| a.mul(b).add(&b.mul(a));
    plain(&xe, &ye).add(&plain(&xe, &yo)).add(&plain(&xo, &ye)).add(&anti(&xo, &yo))
}

/// Bracket computed in the localization and written in `w, w̄`.
pub fn poisson_bracket_w(x: &LocalElement, y: &LocalElement) -> Result<ClassicalW> {
    local_graded_commutator(x, y).classical(1)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn classical_mono(m: u32, a: u32, b: u32, e: FormBasis) -> PoissonElement {
    PoissonElement::mono(m, a, b, e, BigRational::one())
}

/// The displayed bracket values, each from a commutator limit.
pub fn check_brackets() -> Result<Vec<Check>> {
    let f = |m, a, b| FormElement::from_func(FuncElement::mono(m, a, b));
    let (z, zb) = (f(0, 0, 1), f(0, 1, 0));
    let (dz, dzb) = (FormElement::dz(), FormElement::dzb());
    let mut out = Vec::new();
    let mut expect = |id: &str, got: PoissonElement, want: PoissonElement| {
        let r = got.sub(&want);
        out.push(Check::new(id, residual(r.is_zero(), &got)));
    };
    // ρ = 1 + z̄z
    let rho = PoissonElement::one().add(&classical_mono(0, 1, 1, FormBasis::One));
    expect("(zb, z) = rho", poisson_bracket(&zb, &z)?, rho);
    expect("(dz, z) = z dz", poisson_bracket(&dz, &z)?, classical_mono(0, 0, 1, FormBasis::Dz));
    expect("(dzb, zb) = -zb dzb", poisson_bracket(&dzb, &zb)?, classical_mono(0, 1, 0, FormBasis::Dzb).scale(&rat(-1)));
    expect("(dzb, dz) = dzb dz", poisson_bracket(&dzb, &dz)?, classical_mono(0, 0, 0, FormBasis::DzDzb).scale(&rat(-1)));

    let xi = xi_forms()?;
    expect("Xi^2 at q = 1 vanishes", classical_limit_elem(&xi.big_xi_squared)?, PoissonElement::zero());
    // Ξ → dz ρ⁻¹ z̄ - dz̄ ρ⁻¹ z
    let xi_classical = classical_mono(1, 1, 0, FormBasis::Dz).sub(&classical_mono(1, 0, 1, FormBasis::Dzb));
    expect("Xi at q = 1", classical_limit_elem(&xi.big_xi)?, xi_classical);

    let mut bad = None;
    for x in crate::calculus::basis_monomials(4) {
        let g = FormElement::from_func(FuncElement::mono(x.m, x.a, x.b));
        let lhs = poisson_bracket(&xi.big_xi, &g)?;
        let rhs = classical_limit_elem(&g)?.d();
        if lhs != rhs && bad.is_none() {
            bad = Some(format!("fails on {}: {lhs} vs {rhs}", x.render()));
        }
    }
    out.push(Check::new("(Xi, f) = df on monomials of degree <= 4", bad));

    let mut bad = None;
    for x in crate::calculus::basis_monomials(5) {
        let g = FormElement::from_func(FuncElement::mono(x.m, x.a, x.b));
        if classical_limit_elem(&g.d())? != classical_limit_elem(&g)?.d() && bad.is_none() {
            bad = Some(format!("fails on {}", x.render()));
        }
    }
    out.push(Check::new("limit(d f) = d limit(f), degree <= 5", bad));

    let g = w_generators();
    let wb_w = poisson_bracket_w(&g.w_bar, &g.w)?;
    let u_one_u = wb_w.coefficient(0, FormBasis::One);
    let want = crate::scalar::Poly::from_coeffs(vec![rat(0), rat(1), rat(1)]);
    let ok = wb_w.terms().count() == 1 && u_one_u.0 == want && u_one_u.1.is_one();
    out.push(Check::new("(wb, w) = wb w (1 + wb w)", (!ok).then(|| wb_w.to_string())));
    let ww = poisson_bracket_w(&g.w, &g.w)?;
    out.push(Check::new("(w, w) = 0", residual(ww.is_zero(), &ww)));
    // Leibniz: (w̄w, w) = (w̄, w) w
    let direct = poisson_bracket_w(&g.w_bar.mul(&g.w), &g.w)?;
    let c = direct.coefficient(1, FormBasis::One);
    let ok = direct.terms().count() == 1 && c.0 == want && c.1.is_one();
    out.push(Check::new("(wb w, w) = (wb, w) w", (!ok).then(|| direct.to_string())));
    Ok(out)
}

fn sign(p: u32) -> BigRational {
    if p % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Antisymmetry, compatibility with `d`, Leibniz and Jacobi on seeded random elements.
pub fn check_bracket_properties(seed: u64, samples: usize) -> Result<Vec<Check>> {
    let mut rng: SampleRng = sample::rng(seed);
    let mut fails: BTreeMap<&'static str, String> = BTreeMap::new();
    let mut note = |name: &'static str, ok: bool, what: String| {
        if !ok {
            fails.entry(name).or_insert(what);
        }
    };
    for _ in 0..samples {
        let x = sample::low_form(&mut rng, 3);
        let y = sample::low_form(&mut rng, 3);
        let w = sample::low_form(&mut rng, 2);
        let (gx, gy) = (x.grade().unwrap_or(0), y.grade().unwrap_or(0));
        let xy = poisson_bracket(&x, &y)?;
        let yx = poisson_bracket(&y, &x)?;
        note("graded antisymmetry", xy == yx.scale(&-sign(gx * gy)), format!("{x} ; {y}"));

        let lhs = xy.d();
        let rhs = poisson_bracket(&x.d(), &y)?.add(&poisson_bracket(&x, &y.d())?.scale(&sign(gx)));
        note("d (x, y) = (dx, y) + (-1)^|x| (x, dy)", lhs == rhs, format!("{x} ; {y}"));

        let lhs = poisson_bracket(&x, &y.mul(&w))?;
        let (cy, cw) = (classical_limit_elem(&y)?, classical_limit_elem(&w)?);
        let rhs = xy.mul(&cw).add(&cy.mul(&poisson_bracket(&x, &w)?).scale(&sign(gx * gy)));
        note("(x, y w) = (x, y) w + (-1)^|x||y| y (x, w)", lhs == rhs, format!("{x} ; {y} ; {w}"));
    }
    for _ in 0..samples {
        let f = sample::func(&mut rng, 2, 2);
        let g = sample::func(&mut rng, 2, 2);
        let h = sample::func(&mut rng, 2, 2);
        let (f, g, h) = (FormElement::from_func(f), FormElement::from_func(g), FormElement::from_func(h));
        let (cf, cg, ch) = (classical_limit_elem(&f)?, classical_limit_elem(&g)?, classical_limit_elem(&h)?);
        let lhs = bracket(&cf, &bracket(&cg, &ch)?)?;
        let rhs = bracket(&bracket(&cf, &cg)?, &ch)?.add(&bracket(&cg, &bracket(&cf, &ch)?)?);
        note("Jacobi on even triples", lhs == rhs, format!("{f} ; {g} ; {h}"));
    }
    let names = [
        "graded antisymmetry",
        "d (x, y) = (dx, y) + (-1)^|x| (x, dy)",
        "(x, y w) = (x, y) w + (-1)^|x||y| y (x, w)",
        "Jacobi on even triples",
    ];
    Ok(names
        .into_iter()
        .map(|n| Check::new(format!("{n} ({samples} seeded samples)"), fails.get(n).map(|w| format!("fails on {w}"))))
        .collect())
}

/// One numeric comparison.
#[derive(Clone, Debug)]
pub struct NumericCheck {
    pub check: String,
    pub value: Complex64,
    pub expected: Complex64,
    pub abs_err: f64,
    pub passed: bool,
}

impl NumericCheck {
    fn relative(check: impl Into<String>, value: Complex64, expected: Complex64, rel_tol: f64) -> Self {
        let abs_err = (value - expected).norm();
        let passed = abs_err <= rel_tol * expected.norm().max(1e-300);
        NumericCheck { check: check.into(), value, expected, abs_err, passed }
    }

    fn absolute(check: impl Into<String>, value: Complex64, expected: Complex64, tol: f64) -> Self {
        let abs_err = (value - expected).norm();
        NumericCheck { check: check.into(), value, expected, abs_err, passed: abs_err <= tol }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.check,
            "value": {"re": self.value.re, "im": self.value.im},
            "expected": {"re": self.expected.re, "im": self.expected.im},
            "abs_err": self.abs_err,
            "passed": self.passed,
        })
    }

    pub fn to_check(&self) -> Check {
        let detail = (!self.passed).then(|| format!("value {} expected {} (abs err {:e})", self.value, self.expected, self.abs_err));
        Check::new(self.check.clone(), detail)
    }
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let out = quadrature::integrate(f, a, b, tol);
    if !out.error_estimate.is_finite() || out.error_estimate > 10.0 * tol.max(1e-14) {
        return Err(Error::QuadratureNotConverged(format!(
            "[{a}, {b}]: estimate {:e} after {} evaluations",
            out.error_estimate, out.num_function_evaluations
        )));
    }
    Ok(out.integral)
}

fn integrate_complex(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let re = integrate(|t| f(t).re, a, b, tol)?;
    let im = integrate(|t| f(t).im, a, b, tol)?;
    Ok(Complex64::new(re, im))
}

/// `∮_{|w| = r}` of a classical one-form, counterclockwise.
pub fn circle_integral(form: &ClassicalW, r: f64, tol: f64) -> Result<Complex64> {
    let i = Complex64::i();
    integrate_complex(
        |t| {
            let w = Complex64::from_polar(r, t);
            form.eval(FormBasis::Dz, w) * i * w - form.eval(FormBasis::Dzb, w) * i * w.conj()
        },
        0.0,
        2.0 * PI,
        tol,
    )
}

/// `∫_{|w| ≥ r}` of a classical two-form, using `dw ∧ dw̄ = -2i dx ∧ dy`.
pub fn exterior_area_integral(form: &ClassicalW, r: f64, tol: f64) -> Result<Complex64> {
    let c = |w: Complex64| form.eval(FormBasis::DzDzb, w) * Complex64::new(0.0, -2.0);
    // radius ρ = r + tan φ, φ ∈ [0, π/2)
    let radial = |phi: f64| -> Result<Complex64> {
        let t = phi.tan();
        let rad = r + t;
        let jac = rad / phi.cos().powi(2);
        let ang = integrate_complex(|th| c(Complex64::from_polar(rad, th)), 0.0, 2.0 * PI, tol * 1e-2)?;
        Ok(ang * jac)
    };
    let re = integrate(|phi| radial(phi).map(|v| v.re).unwrap_or(f64::NAN), 0.0, PI / 2.0, tol)?;
    let im = integrate(|phi| radial(phi).map(|v| v.im).unwrap_or(f64::NAN), 0.0, PI / 2.0, tol)?;
    Ok(Complex64::new(re, im))
}

/// `∫_{ℝ²} dx dy / (1 + x² + y²)²` by nested quadrature after `x = tan θ`, `y = tan φ`.
pub fn plane_area_integral(tol: f64) -> Result<f64> {
    let h = PI / 2.0;
    let inner = |th: f64| -> f64 {
        let x = th.tan();
        let jx = 1.0 / th.cos().powi(2);
        integrate(
            |ph| {
                let y = ph.tan();
                let jy = 1.0 / ph.cos().powi(2);
                jx * jy / (1.0 + x * x + y * y).powi(2)
            },
            -h,
            h,
            tol * 1e-2,
        )
        .unwrap_or(f64::NAN)
    };
    integrate(inner, -h, h, tol)
}

/// Circle integrals of `Ξ`, the total area of `Ω`, and the Stokes balance
/// against the `-4πi` point term at `w = 0`.
pub fn numeric_north_pole_checks(r_values: &[f64], tol: f64) -> Result<Vec<NumericCheck>> {
    let xi = xi_in_w()?;
    let four_pi_i = Complex64::new(0.0, 4.0 * PI);
    let mut out = Vec::new();
    let mut circles = Vec::new();
    for &r in r_values {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::Domain(format!("radius {r} outside (0, 1)")));
        }
        let v = circle_integral(&xi.big_xi, r, 1e-12)?;
        out.push(NumericCheck::relative(format!("circle integral of Xi, r = {r}"), v, -four_pi_i / (1.0 + r * r), tol));
        // ∮ (w̄dw - wdw̄)/(1 + w̄w) = ∮ Ξ + 4πi, which vanishes as r → 0
        let split = v + four_pi_i;
        let expect = four_pi_i * (r * r / (1.0 + r * r));
        out.push(NumericCheck::absolute(format!("regular part of circle integral, r = {r}"), split, expect, tol * 4.0 * PI));
        circles.push((r, v));
    }
    if circles.len() >= 2 {
        let mut sorted = circles.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        let ((r1, f1), (r2, f2)) = (sorted[0], sorted[1]);
        let (x1, x2) = (r1 * r1, r2 * r2);
        let extrapolated = (f1 * x2 - f2 * x1) / (x2 - x1);
        out.push(NumericCheck::relative("circle integral of Xi extrapolated to r = 0", extrapolated, -four_pi_i, 1e-5));
    }
    let plane = plane_area_integral(1e-10)?;
    out.push(NumericCheck::relative("integral of dx dy / (1 + x^2 + y^2)^2", Complex64::new(plane, 0.0), Complex64::new(PI, 0.0), 1e-6));
    out.push(NumericCheck::relative("integral of Omega = 4 i int dx dy/(1+r^2)^2", Complex64::new(0.0, 4.0 * plane), four_pi_i, 1e-6));
    let r = 0.1;
    let outside = exterior_area_integral(&xi.d_big_xi, r, 1e-10)?;
    let circle = circle_integral(&xi.big_xi, r, 1e-12)?;
    out.push(NumericCheck::relative(format!("Stokes: integral of dXi over |w| >= {r} equals -circle integral"), outside, -circle, 1e-6));
    let whole = exterior_area_integral(&xi.d_big_xi, 0.0, 1e-10)?;
    out.push(NumericCheck::relative("integral of dXi over the punctured sphere = 4 pi i", whole, four_pi_i, 1e-6));
    out.push(NumericCheck::absolute("punctured integral plus point term -4 pi i vanishes", whole - four_pi_i, Complex64::new(0.0, 0.0), 1e-5));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_arithmetic() {
        // z̄ · z = ρ - 1 stays as the canonical monomial z̄z
        let zb = classical_mono(0, 1, 0, FormBasis::One);
        let z = classical_mono(0, 0, 1, FormBasis::One);
        assert_eq!(zb.mul(&z), classical_mono(0, 1, 1, FormBasis::One));
        // ρ⁻¹ z̄ z = 1 - ρ⁻¹
        let r = classical_mono(1, 0, 0, FormBasis::One);
        assert_eq!(r.mul(&zb).mul(&z), PoissonElement::one().sub(&r));
        let dz = classical_mono(0, 0, 0, FormBasis::Dz);
        let dzb = classical_mono(0, 0, 0, FormBasis::Dzb);
        assert_eq!(dzb.mul(&dz), dz.mul(&dzb).scale(&rat(-1)));
        assert!(dz.mul(&dz).is_zero());
        assert!(r.d().d().is_zero());
    }

    #[test]
    fn limit_examples() {
        let f = FormElement::from_func(FuncElement::mono(0, 1, 1).scale(&Scalar::q_pow(2)));
        assert_eq!(classical_limit_elem(&f).unwrap(), classical_mono(0, 1, 1, FormBasis::One));
        let g = FormElement::from_func(FuncElement::one().scale(&(Scalar::q_pow(2) - Scalar::one()).inv().unwrap()));
        assert!(matches!(classical_limit_elem(&g), Err(Error::PoleAtLimit(_))));
    }

    #[test]
    fn displayed_brackets() {
        for c in check_brackets().unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn bracket_properties() {
        for c in check_bracket_properties(7, 12).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn numerics() {
        for c in numeric_north_pole_checks(&[0.5, 0.1, 0.01], 1e-8).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }
}
