//! Verification suites: named identity sets with deterministic seeds.

use std::fmt;
use std::time::{Duration, Instant};

use num::complex::Complex64;
use rand::Rng;
use serde_json::json;

use crate::calculus::{basis_monomials, gauge_derivative, graded_commutator, xi_forms, DiffOp, FormBasis, FormElement, StarVariant};
use crate::error::{Error, Result};
use crate::expr;
use crate::integration;
use crate::poisson;
use crate::report::{residual, Check};
use crate::rewrite::Strategy;
use crate::sample;
use crate::scalar::Scalar;
use crate::smash::{normalize_smash, star_word, Letter, SmashElement};
use crate::suq2::{self, normalize_su_word, normalize_su_word_with};
use crate::vfields::{self, VField, VectorOp};
use crate::wpatch;
use crate::zalgebra::{self, normalize_word, normalize_word_with, FuncElement};

pub const SUITES: [&str; 10] =
    ["zalgebra", "calculus", "xi", "vfields", "pseudodiff", "integration", "suq2", "wpatch", "poisson", "confluence"];

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub max_degree: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: sample::DEFAULT_SEED, max_degree: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub id: String,
    /// Identity family the row belongs to.
    pub anchor: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<Row>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn row_count(&self) -> usize {
        self.suites.iter().map(|s| s.rows.len()).sum()
    }

    /// Timing is left out so identical runs serialize identically.
    pub fn to_json(&self) -> serde_json::Value {
        let suites: Vec<_> = self
            .suites
            .iter()
            .map(|s| {
                let rows: Vec<_> = s
                    .rows
                    .iter()
                    .map(|r| {
                        json!({
                            "id": r.id,
                            "anchor": r.anchor,
                            "status": if r.passed { "pass" } else { "fail" },
                            "counterexample": r.counterexample,
                        })
                    })
                    .collect();
                json!({"suite": s.suite, "passed": s.passed(), "rows": rows})
            })
            .collect();
        json!({"passed": self.passed(), "suites": suites})
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let ok = s.rows.iter().filter(|r| r.passed).count();
            writeln!(f, "[{}] {}/{} passed", s.suite, ok, s.rows.len())?;
            for r in &s.rows {
                write!(f, "  {} {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.id, r.anchor)?;
                if let Some(c) = &r.counterexample {
                    write!(f, ": {c}")?;
                }
                writeln!(f)?;
            }
        }
        write!(f, "{}", if self.passed() { "all identities hold" } else { "verification failed" })
    }
}

struct Rows {
    anchor: &'static str,
    rows: Vec<Row>,
}

impl Rows {
    fn new() -> Self {
        Rows { anchor: "", rows: Vec::new() }
    }

    fn anchor(&mut self, a: &'static str) -> &mut Self {
        self.anchor = a;
        self
    }

    fn push(&mut self, c: Check) {
        self.rows.push(Row { id: c.id, anchor: self.anchor.to_string(), passed: c.passed, counterexample: c.detail });
    }

    fn check(&mut self, id: impl Into<String>, residual: Option<String>) {
        self.push(Check::new(id, residual));
    }

    fn result(&mut self, id: impl Into<String>, r: Result<()>) {
        self.push(Check::from_result(id, r));
    }

    /// An error from the producing computation becomes one failing row.
    fn extend(&mut self, id: &str, checks: Result<Vec<Check>>) {
        match checks {
            Ok(cs) => cs.into_iter().for_each(|c| self.push(c)),
            Err(e) => self.check(id, Some(e.to_string())),
        }
    }
}

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

fn form(m: u32, a: u32, b: u32) -> FormElement {
    FormElement::from_func(FuncElement::mono(m, a, b))
}

fn basis_forms(max_degree: u32) -> Vec<FormElement> {
    let mut out = Vec::new();
    for x in basis_monomials(max_degree) {
        for e in FormBasis::ALL {
            out.push(FormElement::with(FuncElement::mono(x.m, x.a, x.b), e));
        }
    }
    out
}

/// First input where `ok` fails, rendered.
fn first_failure<T: fmt::Display>(items: impl IntoIterator<Item = T>, ok: impl Fn(&T) -> bool) -> Option<String> {
    items.into_iter().find(|x| !ok(x)).map(|x| format!("fails on {x}"))
}

fn zalgebra_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    r.anchor("defining relations");
    let zz = FuncElement::z() * FuncElement::zb()
        - FuncElement::zb().mul(&FuncElement::z()).scale(&q(-2))
        - FuncElement::scalar(q(-2) - Scalar::one());
    r.check("z zb = q^-2 zb z + q^-2 - 1", residual(zz.is_zero(), &zz));
    let rr = FuncElement::rhoi().mul(&FuncElement::rho()) - FuncElement::one();
    r.check("rhoi rho = 1", residual(rr.is_zero(), &rr));
    r.anchor("Podles relations and star structure");
    match zalgebra::podles_generators() {
        Ok(g) => {
            for (name, res) in zalgebra::podles_residuals(&g) {
                r.check(name, residual(res.is_zero(), &res));
            }
        }
        Err(e) => r.check("Podles generators", Some(e.to_string())),
    }
    r.anchor("star structure");
    let star_z = FuncElement::z().star() - FuncElement::zb();
    r.check("z* = zb", residual(star_z.is_zero(), &star_z));
    let star_rho = FuncElement::rhoi().star() - FuncElement::rhoi();
    r.check("rhoi* = rhoi", residual(star_rho.is_zero(), &star_rho));
    let mut rng = sample::rng(cfg.seed);
    let pairs: Vec<_> = (0..100).map(|_| (sample::func(&mut rng, 4, 3), sample::func(&mut rng, 4, 3))).collect();
    let bad = pairs.iter().find(|(x, y)| x.mul(y).star() != y.star().mul(&x.star()));
    r.check("star is antimultiplicative on 100 seeded pairs", bad.map(|(x, y)| format!("fails on ({x}, {y})")));
    r.check(
        "star^2 = id on basis monomials",
        first_failure(basis_monomials(cfg.max_degree), |x| {
            let f = FuncElement::mono(x.m, x.a, x.b);
            f.star().star() == f
        }),
    );
    r.anchor("multiplication");
    let triples: Vec<_> = (0..50).map(|_| (0..3).map(|_| sample::func(&mut rng, 3, 2)).collect::<Vec<_>>()).collect();
    let bad = triples.iter().find(|t| t[0].mul(&t[1]).mul(&t[2]) != t[0].mul(&t[1].mul(&t[2])));
    r.check("associativity on 50 seeded triples", bad.map(|t| format!("fails on ({}, {}, {})", t[0], t[1], t[2])));
    r.rows
}

fn calculus_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    let z = form(0, 0, 1);
    let zb = form(0, 1, 0);
    let rhoi = form(1, 0, 0);
    let (dz, dzb) = (FormElement::dz(), FormElement::dzb());
    let rel = |r: &mut Rows, id: &str, lhs: FormElement, rhs: FormElement| {
        let res = &lhs - &rhs;
        r.check(id, residual(res.is_zero(), &res));
    };
    r.anchor("zdz block");
    rel(&mut r, "z dz = q^-2 dz z", &z * &dz, (&dz * &z).scale(&q(-2)));
    rel(&mut r, "zb dz = q^2 dz zb", &zb * &dz, (&dz * &zb).scale(&q(2)));
    rel(&mut r, "z dzb = q^-2 dzb z", &z * &dzb, (&dzb * &z).scale(&q(-2)));
    rel(&mut r, "zb dzb = q^2 dzb zb", &zb * &dzb, (&dzb * &zb).scale(&q(2)));
    rel(&mut r, "dz dz = 0", &dz * &dz, FormElement::zero());
    rel(&mut r, "dzb dzb = 0", &dzb * &dzb, FormElement::zero());
    rel(&mut r, "dz dzb = -q^-2 dzb dz", &dz * &dzb, (&dzb * &dz).scale(&-q(-2)));
    rel(&mut r, "dz rhoi = rhoi dz", &dz * &rhoi, &rhoi * &dz);
    rel(&mut r, "d z = dz", z.d(), dz.clone());
    rel(&mut r, "d zb = dzb", zb.d(), dzb.clone());

    r.anchor("derivative block");
    let zo = DiffOp::from_func(&FuncElement::z());
    let zbo = DiffOp::from_func(&FuncElement::zb());
    let (del, delb) = (DiffOp::del(), DiffOp::delb());
    let op = |r: &mut Rows, id: &str, lhs: DiffOp, rhs: DiffOp| {
        let res = &lhs - &rhs;
        r.check(id, residual(res.is_zero(), &res));
    };
    op(&mut r, "del z = 1 + q^-2 z del", &del * &zo, DiffOp::one() + (&zo * &del).scale(&q(-2)));
    op(&mut r, "del zb = q^2 zb del", &del * &zbo, (&zbo * &del).scale(&q(2)));
    op(&mut r, "delb z = q^-2 z delb", &delb * &zo, (&zo * &delb).scale(&q(-2)));
    op(&mut r, "delb zb = 1 + q^2 zb delb", &delb * &zbo, DiffOp::one() + (&zbo * &delb).scale(&q(2)));
    op(&mut r, "del delb = q^-2 delb del", &del * &delb, (&delb * &del).scale(&q(-2)));
    r.check(
        "d f = dz del f + dzb delb f",
        first_failure(basis_monomials(cfg.max_degree), |x| {
            let f = FuncElement::mono(x.m, x.a, x.b);
            let split = FormElement::dz().mul(&FormElement::from_func(del.apply(&f)))
                + FormElement::dzb().mul(&FormElement::from_func(delb.apply(&f)));
            FormElement::from_func(f).d() == split
        }),
    );

    r.anchor("star structures");
    let sphere = del.star(StarVariant::Sphere);
    let expect = delb.scale(&-q(-2))
        + DiffOp::from_func(&FuncElement::z().mul(&FuncElement::rhoi()).scale(&(Scalar::one() + q(-2))));
    op(&mut r, "sphere: del* = -q^-2 delb + (1 + q^-2) z rhoi", sphere, expect);
    let expect = del.scale(&-q(2))
        + DiffOp::from_func(&FuncElement::rhoi().mul(&FuncElement::zb()).scale(&(Scalar::one() + q(2))));
    op(&mut r, "sphere: delb* = -q^2 del + (1 + q^2) rhoi zb", delb.star(StarVariant::Sphere), expect);
    op(&mut r, "plane: del* = -q^2 delb", del.star(StarVariant::Plane), delb.scale(&-q(2)));
    op(&mut r, "plane: delb* = -q^-2 del", delb.star(StarVariant::Plane), del.scale(&-q(-2)));
    for v in [StarVariant::Sphere, StarVariant::Plane] {
        let ops = [del.clone(), delb.clone(), &zo * &del, &del * &zbo, &(&delb * &del) * &zo];
        let bad = ops.iter().find(|o| o.star(v).star(v) != **o);
        r.check(format!("{v:?}: star^2 = id on operators"), bad.map(|o| format!("fails on {o}")));
    }
    rel(&mut r, "dz* = dzb", dz.star(), dzb.clone());
    r.check(
        "forms: star^2 = id",
        first_failure(basis_forms(cfg.max_degree.min(4)), |w| w.star().star() == *w),
    );
    let mut rng = sample::rng(cfg.seed ^ 0x3);
    let pairs: Vec<_> = (0..60).map(|_| (sample::low_form(&mut rng, 3), sample::low_form(&mut rng, 3))).collect();
    let bad = pairs.iter().find(|(x, y)| x.mul(y).star() != y.star().mul(&x.star()));
    r.check("forms: star is antimultiplicative", bad.map(|(x, y)| format!("fails on ({x}, {y})")));
    r.check(
        "(d w)* = (-1)^|w| d(w*)",
        first_failure(basis_forms(cfg.max_degree.min(4)), |w| {
            let sign = if w.grade() == Some(1) { -Scalar::one() } else { Scalar::one() };
            w.d().star() == w.star().d().scale(&sign)
        }),
    );

    r.anchor("gauge derivatives");
    for n in 0..=3u32 {
        match gauge_derivative(n) {
            Ok((dn, dbn)) => {
                r.check(format!("del^({n}) = q^{} rho^{} del rho^-{}", 4 * n, 2 * n, 2 * n), None);
                let res = &dn * &zo - DiffOp::one() - (&zo * &dn).scale(&q(-2));
                r.check(format!("del^({n}) z = 1 + q^-2 z del^({n})"), residual(res.is_zero(), &res));
                let res = &dbn * &zbo - DiffOp::one() - (&zbo * &dbn).scale(&q(2));
                r.check(format!("delb^({n}) zb = 1 + q^2 zb delb^({n})"), residual(res.is_zero(), &res));
            }
            Err(e) => r.check(format!("del^({n})"), Some(e.to_string())),
        }
    }

    r.anchor("delta split");
    let funcs: Vec<FuncElement> =
        basis_monomials(cfg.max_degree).into_iter().map(|x| FuncElement::mono(x.m, x.a, x.b)).collect();
    let bad = |ok: &dyn Fn(&FormElement) -> bool| {
        funcs.iter().map(|f| FormElement::from_func(f.clone())).find(|f| !ok(f)).map(|f| format!("fails on {f}"))
    };
    r.check("[delta, z] = dz", bad(&|f| (&z * f).delta() - z.mul(&f.delta()) == dz.mul(f)));
    r.check("[delta, zb] = 0", bad(&|f| (&zb * f).delta() == zb.mul(&f.delta())));
    r.check("[deltab, zb] = dzb", bad(&|f| (&zb * f).delta_bar() - zb.mul(&f.delta_bar()) == dzb.mul(f)));
    r.check("[deltab, z] = 0", bad(&|f| (&z * f).delta_bar() == z.mul(&f.delta_bar())));
    r.check("delta + deltab = d", bad(&|f| f.delta() + f.delta_bar() == f.d()));
    r.check("delta^2 = 0", bad(&|f| f.delta().delta().is_zero()));
    r.check("deltab^2 = 0", bad(&|f| f.delta_bar().delta_bar().is_zero()));
    r.check("delta deltab + deltab delta = 0", bad(&|f| (f.delta().delta_bar() + f.delta_bar().delta()).is_zero()));

    r.anchor("nilpotency");
    r.check(
        format!("d^2 = 0 on monomials and forms of degree <= {}", cfg.max_degree),
        first_failure(basis_forms(cfg.max_degree), |w| w.d().d().is_zero()),
    );
    r.check(
        "graded Leibniz d(xy) = dx y + (-1)^|x| x dy",
        first_failure(pairs.iter().map(|(x, y)| Pair(x.clone(), y.clone())), |Pair(x, y)| {
            let sign = if x.grade() == Some(1) { -Scalar::one() } else { Scalar::one() };
            x.mul(y).d() == x.d().mul(y) + x.mul(&y.d()).scale(&sign)
        }),
    );
    r.rows
}

struct Pair<T>(T, T);

impl<T: fmt::Display> fmt::Display for Pair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

fn xi_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    r.anchor("one-form implementing d");
    let xi = match xi_forms() {
        Ok(x) => x,
        Err(e) => {
            r.check("Xi closed forms", Some(e.to_string()));
            return r.rows;
        }
    };
    let lam = Scalar::lambda();
    r.check(
        format!("Xi f -+ f Xi = lambda df on basis elements of degree <= {}", cfg.max_degree),
        first_failure(basis_forms(cfg.max_degree), |w| graded_commutator(&xi.big_xi, w) == w.d().scale(&lam)),
    );
    let area = FormElement::dzb().mul(&form(2, 0, 0)).mul(&FormElement::dz());
    let res = &xi.d_big_xi - &area.scale(&(Scalar::from_int(2) * Scalar::q()));
    r.check("dXi = 2q dzb rhoi^2 dz", residual(res.is_zero(), &res));
    let res = &xi.big_xi_squared - &area.scale(&(Scalar::q() * &lam));
    r.check("Xi^2 = q lambda dzb rhoi^2 dz", residual(res.is_zero(), &res));
    let res = xi.big_xi.star() + xi.big_xi.clone();
    r.check("Xi* = -Xi", residual(res.is_zero(), &res));
    let res = &xi.xi - &FormElement::dz().mul(&form(1, 1, 0)).scale(&Scalar::q());
    r.check("xi = q dz rhoi zb", residual(res.is_zero(), &res));
    r.check(
        "Xi^2 central",
        first_failure(basis_forms(cfg.max_degree.min(4)), |w| {
            xi.big_xi_squared.mul(w) == w.mul(&xi.big_xi_squared)
        }),
    );
    let res = &xi.d_big_xi - &xi.big_xi_squared.scale(&(Scalar::from_int(2) * lam.inv().expect("lambda is nonzero")));
    r.check("dXi = (2/lambda) Xi^2", residual(res.is_zero(), &res));
    r.rows
}

fn vfields_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    let g = VectorOp::generator;
    let s = Scalar::s_pow;
    r.anchor("vector field relations");
    for c in vfields::check_vf_relations(cfg.max_degree.min(5)) {
        r.push(c);
    }
    let lhs = &g(VField::Zm) * &g(VField::Zp);
    let rhs = (&g(VField::Zp) * &g(VField::Zm)).scale(&q(2)) - g(VField::H).scale(&Scalar::q());
    r.check("Zm Zp = q^2 Zp Zm - q H (PBW)", residual(lhs == rhs, &(&lhs - &rhs)));
    let mut bad = None;
    for a in VField::ALL {
        for b in VField::ALL {
            for c in VField::ALL {
                let (x, y, z) = (g(a), g(b), g(c));
                if bad.is_none() && &(&x * &y) * &z != &x * &(&y * &z) {
                    bad = Some(format!("fails on ({}, {}, {})", a.name(), b.name(), c.name()));
                }
            }
        }
    }
    r.check("PBW product is associative on generator triples", bad);

    r.anchor("displayed actions");
    let z = form(0, 0, 1);
    let zb = form(0, 1, 0);
    let act = |r: &mut Rows, id: &str, v: FormElement, expect: FormElement| {
        r.check(id, residual(v == expect, &v));
    };
    act(&mut r, "Zp > z = q^1/2 z^2", VField::Zp.act(&z), form(0, 0, 2).scale(&s(1)));
    act(&mut r, "Zp > zb = q^-3/2", VField::Zp.act(&zb), FormElement::scalar(s(-3)));
    act(&mut r, "H > z = (1 + q^2) z", VField::H.act(&z), z.scale(&crate::qint(2)));
    act(&mut r, "H > zb = -q^-4 (1 + q^2) zb", VField::H.act(&zb), zb.scale(&-(q(-4) * crate::qint(2))));
    act(&mut r, "Zm > z = -q^1/2", VField::Zm.act(&z), FormElement::scalar(-s(1)));
    act(&mut r, "Zm > zb = -q^-3/2 zb^2", VField::Zm.act(&zb), form(0, 2, 0).scale(&-s(-3)));

    r.anchor("star consistency");
    use Letter::*;
    let vect1 = vec![(Scalar::one(), vec![Zp, Z]), (-q(2), vec![Z, Zp]), (-s(1), vec![Z, Z])];
    let starred: Option<Vec<_>> = vect1.iter().map(|(c, w)| star_word(w).map(|w| (c.clone(), w))).collect();
    let res = starred
        .ok_or_else(|| Error::Domain("unstarrable word".into()))
        .and_then(|w| normalize_smash(w, Strategy::Leftmost));
    r.check(
        "star of Zp z - q^2 z Zp - q^1/2 z^2 vanishes (vect1 -> vect2)",
        match res {
            Ok(v) => residual(v.is_zero(), &v),
            Err(e) => Some(e.to_string()),
        },
    );
    let vect2_words = vec![(Scalar::one(), vec![Zb, Zm]), (-q(2), vec![Zm, Zb]), (-s(1), vec![Zb, Zb])];
    let res = normalize_smash(vect2_words, Strategy::Leftmost);
    r.check(
        "zb Zm - q^2 Zm zb - q^1/2 zb^2 = 0",
        match res {
            Ok(v) => residual(v.is_zero(), &v),
            Err(e) => Some(e.to_string()),
        },
    );

    r.anchor("infinitesimal covariance");
    let one = Scalar::one();
    let cov: Vec<(&str, Vec<Letter>, Vec<(Scalar, Vec<Letter>)>)> = vec![
        ("z zb = q^-2 zb z + q^-2 - 1", vec![Z, Zb], vec![(q(-2), vec![Zb, Z]), (q(-2) - one.clone(), vec![])]),
        ("rhoi (1 + zb z) = 1", vec![Rhoi], vec![(-one.clone(), vec![Rhoi, Zb, Z]), (one.clone(), vec![])]),
        ("z dz = q^-2 dz z", vec![Z, Dz], vec![(q(-2), vec![Dz, Z])]),
        ("zb dz = q^2 dz zb", vec![Zb, Dz], vec![(q(2), vec![Dz, Zb])]),
        ("z dzb = q^-2 dzb z", vec![Z, Dzb], vec![(q(-2), vec![Dzb, Z])]),
        ("zb dzb = q^2 dzb zb", vec![Zb, Dzb], vec![(q(2), vec![Dzb, Zb])]),
        ("dz dz = 0", vec![Dz, Dz], vec![]),
        ("dzb dzb = 0", vec![Dzb, Dzb], vec![]),
        ("dz dzb = -q^-2 dzb dz", vec![Dz, Dzb], vec![(-q(-2), vec![Dzb, Dz])]),
    ];
    for (name, lhs, rhs) in cov {
        r.result(format!("covariance of {name}"), vfields::check_infinitesimal_covariance(&lhs, &rhs));
    }
    for c in vfields::check_d_compatibility(cfg.max_degree.min(4)) {
        r.push(c);
    }

    r.anchor("invariance of Xi");
    r.extend("Xi invariance", vfields::check_xi_invariance());
    r.rows
}

fn pseudodiff_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    r.anchor("pseudo-differential realizations");
    r.extend("realizations", vfields::check_pseudodiff_realizations(cfg.max_degree.min(5)));
    r.anchor("filtered inversion");
    let bcd = vfields::build_bcd();
    let deg = cfg.max_degree.max(8);
    r.result(format!("B B^-1 = B^-1 B = id to degree {deg}"), vfields::check_inverse_roundtrip(&bcd.b, deg));
    r.result(format!("C C^-1 = C^-1 C = id to degree {deg}"), vfields::check_inverse_roundtrip(&bcd.c, deg));
    r.result(format!("D D^-1 = D^-1 D = id to degree {deg}"), vfields::check_inverse_roundtrip(&bcd.d, deg));
    r.rows
}

fn integration_suite(_cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    r.anchor("invariance recursion");
    r.extend("recursion", integration::verify_invariance_recursion(12));
    r.anchor("zb z moments");
    r.extend("moments", integration::check_zbz_moments(2, 12));
    r.anchor("invariance under vector fields");
    r.extend("vector field invariance", integration::check_vector_field_invariance(6));
    r.anchor("plane translation invariance");
    r.extend("plane", integration::verify_plane_translation_invariance(&integration::plane_family(3, 8)));
    r.rows
}

fn suq2_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    r.anchor("preset selection");
    let preset = match suq2::select_preset() {
        Ok(p) => {
            r.check(format!("preset {} reproduces the sphere relations", p.name()), None);
            p
        }
        Err(e) => {
            r.check("preset selection", Some(e.to_string()));
            return r.rows;
        }
    };
    r.anchor("stereographic origin");
    for c in suq2::stereographic_checks(preset) {
        r.push(c);
    }
    r.anchor("homomorphism from the sphere");
    match zalgebra::podles_generators() {
        Ok(g) => {
            let st = suq2::stereographic_elements(preset);
            for (name, f, img) in [("b-", &g.b_minus, &st.b_minus), ("b+", &g.b_plus, &st.b_plus), ("b3", &g.b3, &st.b3)] {
                let v = suq2::psi(preset, f);
                r.check(format!("psi({name}) matches the SU_q(2) product"), residual(v == *img, &v));
            }
            let mut rng = sample::rng(cfg.seed ^ 0x5);
            let pairs: Vec<_> = (0..20).map(|_| (sample::func(&mut rng, 3, 2), sample::func(&mut rng, 3, 2))).collect();
            let bad = pairs
                .iter()
                .find(|(x, y)| suq2::psi(preset, &x.mul(y)) != suq2::psi(preset, x).mul(&suq2::psi(preset, y)));
            r.check("psi is multiplicative on 20 seeded pairs", bad.map(|(x, y)| format!("fails on ({x}, {y})")));
        }
        Err(e) => r.check("Podles generators", Some(e.to_string())),
    }
    r.anchor("fractional transformations");
    for c in suq2::coaction_homomorphism_check(preset) {
        r.push(c);
    }
    let mut rng = sample::rng(cfg.seed ^ 0x7);
    let mut c = || Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let samples: Vec<_> = (0..50).map(|_| (c(), c(), [c(), c(), c(), c()])).collect();
    r.push(suq2::classical_moebius_check(&samples, 1e-9));
    r.rows
}

fn wpatch_suite(_cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    r.anchor("w patch relations");
    r.extend("w relations", wpatch::verify_w_relations(4));
    r.anchor("xi in w");
    match wpatch::xi_in_w() {
        Ok(x) => x.checks.into_iter().for_each(|c| r.push(c)),
        Err(e) => r.check("xi in w", Some(e.to_string())),
    }
    r.rows
}

fn poisson_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    r.anchor("brackets as commutator limits");
    r.extend("brackets", poisson::check_brackets());
    r.anchor("bracket properties");
    r.extend("properties", poisson::check_bracket_properties(cfg.seed, 50));
    r.anchor("north pole numerics");
    match poisson::numeric_north_pole_checks(&[0.5, 0.1, 0.01], 1e-8) {
        Ok(cs) => cs.iter().for_each(|c| r.push(c.to_check())),
        Err(e) => r.check("numerics", Some(e.to_string())),
    }
    r.rows
}

pub const CONFLUENCE_SAMPLES: usize = 500;

fn confluence_suite(cfg: &VerifyConfig) -> Vec<Row> {
    let mut r = Rows::new();
    let n = CONFLUENCE_SAMPLES;
    r.anchor("confluence");
    let mut rng = sample::rng(cfg.seed);
    let bad = (0..n).map(|_| sample::z_word(&mut rng, 7)).find(|w| {
        let left = normalize_word_with(w, Scalar::one(), Strategy::Leftmost);
        left != normalize_word_with(w, Scalar::one(), Strategy::Rightmost) || left != normalize_word(w, Scalar::one())
    });
    r.check(format!("z-algebra: {n} words agree under both strategies"), bad.map(|w| format!("{w:?}")));

    let smash_agree = |w: &Vec<Letter>| -> bool {
        let one = || vec![(Scalar::one(), w.clone())];
        match (normalize_smash(one(), Strategy::Leftmost), normalize_smash(one(), Strategy::Rightmost)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    };
    let bad = (0..n).map(|_| sample::smash_word(&mut rng, 6)).find(|w| !smash_agree(w));
    r.check(format!("forms and vector fields: {n} words agree under both strategies"), bad.map(|w| format!("{w:?}")));
    let bad = (0..n).map(|_| sample::diff_word(&mut rng, 6)).find(|w| !smash_agree(w));
    r.check(format!("derivatives: {n} words agree under both strategies"), bad.map(|w| format!("{w:?}")));

    let preset = suq2::FrtPreset::A;
    let bad = (0..n).map(|_| sample::su_word(&mut rng, 6)).find(|w| {
        let fold = normalize_su_word(preset, w);
        normalize_su_word_with(preset, w, Strategy::Leftmost) != fold
            || normalize_su_word_with(preset, w, Strategy::Rightmost) != fold
    });
    r.check(format!("SU_q(2): {n} words agree under both strategies"), bad.map(|w| format!("{w:?}")));

    r.anchor("parse and print");
    let bad = (0..n)
        .map(|i| {
            let g = (i % 3) as u32;
            sample::form(&mut rng, g, 4, 3)
        })
        .find(|w| round_trip(w).is_err());
    r.check(
        format!("parse(print(x)) normalizes to x for {n} seeded elements"),
        bad.map(|w| format!("fails on {w}: {}", round_trip(&w).err().map(|e| e.to_string()).unwrap_or_default())),
    );
    r.rows
}

/// `parse(print(x))` normalizes back to `x`.
pub fn round_trip(w: &FormElement) -> Result<()> {
    let text = w.to_string();
    let e = expr::parse(&text)?;
    if expr::parse(&e.to_string())? != e {
        return Err(Error::VerificationFailure(format!("print/parse of the syntax tree differs for '{text}'")));
    }
    match normalize_smash(expr::eval_words(&e)?, Strategy::Leftmost)?.canonical() {
        SmashElement::Form(v) if v == *w => Ok(()),
        other => Err(Error::VerificationFailure(format!("'{text}' normalizes to {other}"))),
    }
}

type SuiteFn = fn(&VerifyConfig) -> Vec<Row>;

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "zalgebra" => zalgebra_suite,
        "calculus" => calculus_suite,
        "xi" => xi_suite,
        "vfields" => vfields_suite,
        "pseudodiff" => pseudodiff_suite,
        "integration" => integration_suite,
        "suq2" => suq2_suite,
        "wpatch" => wpatch_suite,
        "poisson" => poisson_suite,
        "confluence" => confluence_suite,
        _ => return None,
    })
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let f = suite_fn(name).ok_or_else(|| {
        Error::Domain(format!("unknown suite '{name}'; expected one of {} or all", SUITES.join(", ")))
    })?;
    let start = Instant::now();
    let rows = f(cfg);
    Ok(SuiteReport { suite: name.to_string(), rows, elapsed: start.elapsed() })
}

/// `selector` is a suite name or `all`; `all` runs suites on separate threads.
pub fn run(selector: &str, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if selector != "all" {
        return Ok(VerifyReport { suites: vec![run_suite(selector, cfg)?] });
    }
    let suites = std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES.iter().map(|n| scope.spawn(move || run_suite(n, cfg))).collect();
        handles
            .into_iter()
            .zip(SUITES)
            .map(|(h, n)| {
                h.join().unwrap_or_else(|_| {
                    Ok(SuiteReport {
                        suite: n.to_string(),
                        rows: vec![Row {
                            id: format!("{n} suite"),
                            anchor: "internal".into(),
                            passed: false,
                            counterexample: Some("suite panicked".into()),
                        }],
                        elapsed: Duration::ZERO,
                    })
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(VerifyReport { suites })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_domain_error() {
        assert!(matches!(run("nope", &VerifyConfig::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn fast_suites_pass() {
        let cfg = VerifyConfig { max_degree: 3, ..VerifyConfig::default() };
        for name in ["zalgebra", "calculus", "xi", "wpatch"] {
            let rep = run_suite(name, &cfg).unwrap();
            let bad: Vec<_> = rep.failures().collect();
            assert!(bad.is_empty(), "{name}: {bad:#?}");
        }
    }

    #[test]
    fn round_trip_examples() {
        let w = form(1, 0, 2).scale(&(Scalar::q_pow(3) + Scalar::from_int(2))) + FormElement::dz().mul(&form(0, 1, 0));
        round_trip(&w).unwrap();
        round_trip(&FormElement::zero()).unwrap();
        let half = Scalar::from_rational(num::BigRational::new(1.into(), 2.into())) * Scalar::s_pow(1);
        round_trip(&FormElement::with(FuncElement::mono(0, 2, 0), FormBasis::DzDzb).scale(&half)).unwrap();
    }
}
