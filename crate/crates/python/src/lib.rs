//! Python module `podles`.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use podles_core::calculus::{graded_commutator, StarVariant};
use podles_core::expr;
use podles_core::integration;
use podles_core::poisson;
use podles_core::rewrite::{Replacement, Strategy};
use podles_core::smash::{normalize_smash, star_word, Letter, SmashElement};
use podles_core::verify::{run as run_suites, VerifyConfig};
use podles_core::wpatch::LocalElement;
use podles_core::Error;

create_exception!(podles, PodlesError, PyValueError);
create_exception!(podles, ParseError, PodlesError);
create_exception!(podles, DomainError, PodlesError);
create_exception!(podles, NotIntegrable, DomainError);
create_exception!(podles, PoleAtLimit, DomainError);
create_exception!(podles, VerificationFailure, PodlesError);
create_exception!(podles, QuadratureNotConverged, PyArithmeticError);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Parse { .. } => ParseError::new_err(msg),
        Error::NotIntegrable(_) => NotIntegrable::new_err(msg),
        Error::PoleAtLimit(_) => PoleAtLimit::new_err(msg),
        Error::VerificationFailure(_) => VerificationFailure::new_err(msg),
        Error::QuadratureNotConverged(_) => QuadratureNotConverged::new_err(msg),
        _ => DomainError::new_err(msg),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for podles_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

/// Exact coefficient in `Q(s)`, `s = q^(1/2)`.
#[pyclass(module = "podles", frozen, eq, hash, from_py_object)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(pub podles_core::Scalar);

#[pymethods]
impl Scalar {
    /// Parse a scalar expression such as `"qint(3)/(q - 1)"`.
    #[new]
    pub fn new(text: &str) -> PyResult<Self> {
        let e = expr::parse(text).py()?;
        e.scalar().py()?.map(Scalar).ok_or_else(|| DomainError::new_err(format!("'{text}' is not a scalar")))
    }

    #[staticmethod]
    pub fn q_pow(k: i64) -> Self {
        Scalar(podles_core::Scalar::q_pow(k))
    }

    #[staticmethod]
    pub fn qint(n: u32) -> Self {
        Scalar(podles_core::qint(n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn inverse(&self) -> PyResult<Self> {
        self.0.inv().py().map(Scalar)
    }

    /// Value at `q = s^2` for real `s > 0`.
    pub fn eval(&self, s: f64) -> f64 {
        self.0.eval_f64(s)
    }

    /// `lim (q^2 - 1)^(-pole_order) x` at `q = 1`, as `(numerator, denominator)`.
    #[pyo3(signature = (pole_order = 0))]
    pub fn classical_limit(&self, pole_order: u32) -> PyResult<(String, String)> {
        let r = self.0.classical_limit(pole_order).py()?;
        Ok((r.numer().to_string(), r.denom().to_string()))
    }

    fn __add__(&self, o: &Scalar) -> Self {
        Scalar(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &Scalar) -> Self {
        Scalar(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &Scalar) -> Self {
        Scalar(&self.0 * &o.0)
    }

    fn __truediv__(&self, o: &Scalar) -> PyResult<Self> {
        self.0.checked_div(&o.0).py().map(Scalar)
    }

    fn __neg__(&self) -> Self {
        Scalar(-self.0.clone())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0)
    }
}

fn words_of(text: &str) -> PyResult<Replacement<Letter>> {
    expr::eval_words(&expr::parse(text).py()?).py()
}

fn normalized(w: Replacement<Letter>) -> PyResult<SmashElement> {
    Ok(normalize_smash(w, Strategy::Leftmost).py()?.canonical())
}

/// Normal-form element of the function algebra, forms, derivatives or vector fields.
#[pyclass(module = "podles", frozen, eq, from_py_object)]
#[derive(Clone, Debug, PartialEq)]
pub struct Element(pub SmashElement);

impl Element {
    /// Canonical words, recovered from the printed normal form.
    fn words(&self) -> PyResult<Replacement<Letter>> {
        words_of(&self.0.to_string())
    }

    fn combine(&self, o: &Element, f: impl Fn(Replacement<Letter>, Replacement<Letter>) -> Replacement<Letter>) -> PyResult<Element> {
        normalized(f(self.words()?, o.words()?)).map(Element)
    }
}

fn product(a: Replacement<Letter>, b: Replacement<Letter>) -> Replacement<Letter> {
    let mut out = Vec::new();
    for (c, x) in &a {
        for (d, y) in &b {
            out.push((c * d, [x.as_slice(), y.as_slice()].concat()));
        }
    }
    out
}

#[pymethods]
impl Element {
    #[new]
    pub fn new(text: &str) -> PyResult<Self> {
        normalized(words_of(text)?).map(Element)
    }

    /// `"form"`, `"diff"` or `"vector"`.
    #[getter]
    pub fn kind(&self) -> &'static str {
        match self.0 {
            SmashElement::Form(_) => "form",
            SmashElement::Diff(_) => "diff",
            SmashElement::Vector(_) => "vector",
        }
    }

    /// Form degree, when homogeneous.
    #[getter]
    pub fn grade(&self) -> Option<u32> {
        match &self.0 {
            SmashElement::Form(w) => w.grade(),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[pyo3(signature = (variant = "sphere"))]
    pub fn star(&self, variant: &str) -> PyResult<Element> {
        match &self.0 {
            SmashElement::Diff(d) => {
                let v = match variant {
                    "sphere" => StarVariant::Sphere,
                    "plane" => StarVariant::Plane,
                    other => return Err(DomainError::new_err(format!("unknown star variant '{other}'"))),
                };
                Ok(Element(SmashElement::Diff(d.star(v)).canonical()))
            }
            _ => {
                let starred: Option<Replacement<Letter>> =
                    self.words()?.into_iter().map(|(c, w)| star_word(&w).map(|s| (c, s))).collect();
                normalized(starred.ok_or_else(|| DomainError::new_err("element has no letter-wise star"))?).map(Element)
            }
        }
    }

    pub fn d(&self) -> PyResult<Element> {
        match &self.0 {
            SmashElement::Form(w) => Ok(Element(SmashElement::Form(w.d()))),
            _ => Err(DomainError::new_err("d applies to functions and forms")),
        }
    }

    /// Graded commutator `self * other ∓ other * self`.
    pub fn comm(&self, other: &Element) -> PyResult<Element> {
        if let (SmashElement::Form(x), SmashElement::Form(y)) = (&self.0, &other.0) {
            return Ok(Element(SmashElement::Form(graded_commutator(x, y))));
        }
        self.combine(other, |a, b| {
            let mut w = product(a.clone(), b.clone());
            w.extend(product(b, a).into_iter().map(|(c, x)| (-c, x)));
            w
        })
    }

    /// Action of this operator on a function or form.
    pub fn act(&self, target: &Element) -> PyResult<Element> {
        if !matches!(target.0, SmashElement::Form(_)) {
            return Err(DomainError::new_err("operators act on functions and forms"));
        }
        let w = product(self.words()?, target.words()?);
        let v = match normalize_smash(w, Strategy::Leftmost).py()? {
            SmashElement::Vector(v) => v.counit_part(),
            SmashElement::Diff(d) => podles_core::calculus::FormElement::from_func(d.coefficient(0, 0)),
            SmashElement::Form(f) => f,
        };
        Ok(Element(SmashElement::Form(v)))
    }

    pub fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __add__(&self, o: &Element) -> PyResult<Element> {
        self.combine(o, |mut a, b| {
            a.extend(b);
            a
        })
    }

    fn __sub__(&self, o: &Element) -> PyResult<Element> {
        self.combine(o, |mut a, b| {
            a.extend(b.into_iter().map(|(c, w)| (-c, w)));
            a
        })
    }

    fn __mul__(&self, o: &Element) -> PyResult<Element> {
        self.combine(o, product)
    }

    fn __neg__(&self) -> PyResult<Element> {
        normalized(self.words()?.into_iter().map(|(c, w)| (-c, w)).collect()).map(Element)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element('{}')", self.0)
    }
}

/// Element of the localization used near the north pole, with `w = z^-1`.
#[pyclass(module = "podles", frozen, eq, from_py_object)]
#[derive(Clone, Debug, PartialEq)]
pub struct PatchElement(pub LocalElement);

#[pymethods]
impl PatchElement {
    #[new]
    pub fn new(text: &str) -> PyResult<Self> {
        expr::eval_local(&expr::parse(text).py()?).py().map(PatchElement)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn d(&self) -> Self {
        PatchElement(self.0.d())
    }

    pub fn star(&self) -> Self {
        PatchElement(self.0.star())
    }

    pub fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(PatchElement).ok_or_else(|| DomainError::new_err("not invertible"))
    }

    /// Value at `q = 1` in `w, wb` with coefficients in `u = wb w`.
    #[pyo3(signature = (pole_order = 0))]
    pub fn classical(&self, pole_order: u32) -> PyResult<String> {
        Ok(self.0.classical(pole_order).py()?.to_string())
    }

    pub fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __add__(&self, o: &PatchElement) -> Self {
        PatchElement(self.0.add(&o.0))
    }

    fn __sub__(&self, o: &PatchElement) -> Self {
        PatchElement(self.0.sub(&o.0))
    }

    fn __mul__(&self, o: &PatchElement) -> Self {
        PatchElement(self.0.mul(&o.0))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PatchElement('{}')", self.0)
    }
}

/// Invariant integral over `"sphere"` or `"plane"`.
#[pyfunction]
#[pyo3(signature = (text, domain = "sphere"))]
pub fn integrate(text: &str, domain: &str) -> PyResult<Scalar> {
    let f = match Element::new(text)?.0 {
        SmashElement::Form(w) => w.as_func(),
        _ => None,
    }
    .ok_or_else(|| DomainError::new_err("only functions can be integrated"))?;
    let v = match domain {
        "sphere" => integration::integrate_sphere(&f),
        "plane" => integration::integrate_plane(&f),
        other => return Err(DomainError::new_err(format!("unknown domain '{other}'"))),
    };
    v.py().map(|v| Scalar(v.value))
}

/// Poisson bracket; `w` atoms select the north-pole chart.
#[pyfunction]
pub fn poisson_bracket(a: &str, b: &str) -> PyResult<String> {
    let (ea, eb) = (expr::parse(a).py()?, expr::parse(b).py()?);
    if ea.uses_patch_atoms() || eb.uses_patch_atoms() {
        let (x, y) = (expr::eval_local(&ea).py()?, expr::eval_local(&eb).py()?);
        return Ok(poisson::poisson_bracket_w(&x, &y).py()?.to_string());
    }
    let form = |e: &expr::Expr| -> PyResult<podles_core::calculus::FormElement> {
        match normalized(expr::eval_words(e).py()?)? {
            SmashElement::Form(w) => Ok(w),
            _ => Err(DomainError::new_err("brackets need functions or forms")),
        }
    };
    Ok(poisson::poisson_bracket(&form(&ea)?, &form(&eb)?).py()?.to_string())
}

#[pyfunction]
pub fn limit_classical(text: &str) -> PyResult<String> {
    match Element::new(text)?.0 {
        SmashElement::Form(w) => Ok(poisson::classical_limit_elem(&w).py()?.to_string()),
        _ => Err(DomainError::new_err("limits apply to functions and forms")),
    }
}

/// Run suites; returns `(passed, report_json)`.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = podles_core::sample::DEFAULT_SEED, max_degree = 6))]
pub fn verify(py: Python<'_>, suite: &str, seed: u64, max_degree: u32) -> PyResult<(bool, String)> {
    let cfg = VerifyConfig { seed, max_degree };
    let rep = py.detach(|| run_suites(suite, &cfg)).py()?;
    Ok((rep.passed(), rep.to_json().to_string()))
}

/// Command-line entry: `run(["comm", "z", "zb"])` returns `(output, exit_code)`.
#[pyfunction]
pub fn run(args: Vec<String>) -> (String, i32) {
    podles_core::cli::main_with(std::iter::once("podles".to_string()).chain(args))
}

#[pymodule]
fn podles(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scalar>()?;
    m.add_class::<Element>()?;
    m.add_class::<PatchElement>()?;
    m.add_function(wrap_pyfunction!(integrate, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(limit_classical, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    let py = m.py();
    m.add("PodlesError", py.get_type::<PodlesError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("NotIntegrable", py.get_type::<NotIntegrable>())?;
    m.add("PoleAtLimit", py.get_type::<PoleAtLimit>())?;
    m.add("VerificationFailure", py.get_type::<VerificationFailure>())?;
    m.add("QuadratureNotConverged", py.get_type::<QuadratureNotConverged>())?;
    Ok(())
}
