//! Rational functions of `ρ` with poles only at `0` and `q^{2j}`.
//!
//! Stored in partial-fraction form `Σ c_k ρᵏ + Σ c_{j,r} (ρ - q^{2j})^{-r}`,
//! which is unique, so equality is structural.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num::{BigRational, One};

use crate::error::Result;
use crate::render;
use crate::scalar::{Poly, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RTerm {
    /// `ρᵏ`, `k ∈ ℤ`
    Pow(i64),
    /// `(ρ - q^{2j})^{-r}`, `r ≥ 1`
    Pole { j: i64, r: u32 },
}

impl RTerm {
    fn render(&self) -> String {
        match *self {
            RTerm::Pow(k) => render::factors(&[("rho", k)]),
            RTerm::Pole { j, r } => {
                let c = if j == 0 { "1".to_string() } else { Scalar::q_pow(2 * j).to_string() };
                format!("(rho - {c})^-{r}")
            }
        }
    }
}

thread_local! {
    static PRODUCTS: RefCell<HashMap<(RTerm, RTerm), RationalRho>> = RefCell::new(HashMap::new());
}

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct RationalRho {
    terms: BTreeMap<RTerm, Scalar>,
}

impl RationalRho {
    pub fn zero() -> Self {
        RationalRho::default()
    }

    pub fn one() -> Self {
        RationalRho::term(RTerm::Pow(0), Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        RationalRho::term(RTerm::Pow(0), c)
    }

    pub fn term(t: RTerm, c: Scalar) -> Self {
        let mut out = RationalRho::zero();
        out.add_term(t, c);
        out
    }

    pub fn rho_pow(k: i64) -> Self {
        RationalRho::term(RTerm::Pow(k), Scalar::one())
    }

    /// `(ρ - q^{2j})^{-r}`
    pub fn pole(j: i64, r: u32) -> Self {
        if r == 0 {
            return RationalRho::one();
        }
        RationalRho::term(RTerm::Pole { j, r }, Scalar::one())
    }

    /// `ρ - q^{2j}`
    pub fn linear(j: i64) -> Self {
        RationalRho::rho_pow(1).sub(&RationalRho::scalar(Scalar::q_pow(2 * j)))
    }

    /// `c · ρᵏ · Π (ρ - q^{2j})^{e_j}`
    pub fn factored(c: Scalar, k: i64, factors: &[(i64, i64)]) -> Self {
        let mut out = RationalRho::term(RTerm::Pow(k), c);
        for &(j, e) in factors {
            let f = if e >= 0 { RationalRho::linear(j).pow(e as u32) } else { RationalRho::pole(j, (-e) as u32) };
            out = out.mul(&f);
        }
        out
    }

    fn add_term(&mut self, t: RTerm, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(t).or_default();
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&RTerm::Pow(0)).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = RationalRho::zero();
        for (t, d) in &self.terms {
            out.add_term(*t, d * c);
        }
        out
    }

    pub fn add(&self, other: &RationalRho) -> Self {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(*t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RationalRho) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, other: &RationalRho) -> Self {
        let mut out = RationalRho::zero();
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let prod = term_product(*t1, *t2);
                let c = c1 * c2;
                for (t, d) in prod.terms {
                    out.add_term(t, &d * &c);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(RationalRho::one(), |acc, _| acc.mul(self))
    }

    /// Inverse, when the numerator splits over `{0} ∪ q^{2ℤ}`.
    pub fn inverse(&self) -> Option<RationalRho> {
        let (mut num, a, poles) = self.to_fraction();
        if num.is_empty() {
            return None;
        }
        let mut factors: BTreeMap<i64, i64> = poles.iter().map(|(&j, &r)| (j, r as i64)).collect();
        let mut k = a as i64;
        while num.first().is_some_and(|c| c.is_zero()) {
            num.remove(0);
            k -= 1;
        }
        let bound = num.len() as i64 + 8 + poles.keys().map(|j| j.abs()).max().unwrap_or(0);
        'outer: while num.len() > 1 {
            for j in -bound..=bound {
                if let Some(quot) = divide_root(&num, &Scalar::q_pow(2 * j)) {
                    num = quot;
                    *factors.entry(j).or_default() -= 1;
                    continue 'outer;
                }
            }
            return None;
        }
        let c = num[0].inv().ok()?;
        let list: Vec<(i64, i64)> = factors.into_iter().filter(|(_, e)| *e != 0).collect();
        Some(RationalRho::factored(c, k, &list))
    }

    /// `f(ρ) ↦ f(q^{-2b} ρ)`, so that `zᵇ f(ρ) = shift(f, b) zᵇ`.
    pub fn shift(&self, b: i64) -> Self {
        let mut out = RationalRho::zero();
        for (t, c) in &self.terms {
            match *t {
                RTerm::Pow(k) => out.add_term(*t, c * &Scalar::q_pow(-2 * b * k)),
                RTerm::Pole { j, r } => out.add_term(RTerm::Pole { j: j + b, r }, c * &Scalar::q_pow(2 * b * r as i64)),
            }
        }
        out
    }

    /// Common-denominator form: `num(ρ) / (ρᵃ Π (ρ - q^{2j})^{R_j})`, numerator
    /// coefficients lowest degree first.
    pub fn to_fraction(&self) -> (Vec<Scalar>, u32, BTreeMap<i64, u32>) {
        let mut a = 0u32;
        let mut poles: BTreeMap<i64, u32> = BTreeMap::new();
        for t in self.terms.keys() {
            match *t {
                RTerm::Pow(k) if k < 0 => a = a.max((-k) as u32),
                RTerm::Pow(_) => {}
                RTerm::Pole { j, r } => {
                    let e = poles.entry(j).or_default();
                    *e = (*e).max(r);
                }
            }
        }
        let mut num: Vec<Scalar> = Vec::new();
        for (t, c) in &self.terms {
            let mut p = vec![c.clone()];
            let (shift, skip) = match *t {
                RTerm::Pow(k) => ((k + a as i64) as usize, None),
                RTerm::Pole { j, r } => (a as usize, Some((j, r))),
            };
            p = poly_shift(&p, shift);
            for (&j, &rj) in &poles {
                let e = match skip {
                    Some((sj, r)) if sj == j => rj - r,
                    _ => rj,
                };
                for _ in 0..e {
                    p = poly_mul(&p, &[-Scalar::q_pow(2 * j), Scalar::one()]);
                }
            }
            num = poly_add(&num, &p);
        }
        (num, a, poles)
    }

    /// `q → 1` limit of `self / (q² - 1)^pole_order` as a rational function of
    /// `u = w̄w`, using `ρ = (1 + u)/u`. Returns `(num, den)` over ℚ.
    pub fn classical_in_u(&self, pole_order: u32) -> Result<(Poly, Poly)> {
        let (num, a, poles) = self.to_fraction();
        let n: Vec<BigRational> = num.iter().map(|c| c.classical_limit(pole_order)).collect::<Result<_>>()?;
        let big_r: u32 = poles.values().sum();
        let d = n.len().saturating_sub(1);
        // Σ n_i (1+u)^i u^{d-i}
        let one_plus_u = Poly::from_coeffs(vec![BigRational::one(), BigRational::one()]);
        let mut top = Poly::zero();
        for (i, c) in n.iter().enumerate() {
            let term = pow_poly(&one_plus_u, i as u32).shift_up(d - i).scale(c);
            top = top.add(&term);
        }
        // f = top · u^{a+R} / (u^d (1+u)^a)
        let mut numer = top;
        let mut denom = pow_poly(&one_plus_u, a);
        let up = (a + big_r) as i64 - d as i64;
        if up >= 0 {
            numer = numer.shift_up(up as usize);
        } else {
            denom = denom.shift_up((-up) as usize);
        }
        Ok(reduce(numer, denom))
    }
}

fn pow_poly(p: &Poly, n: u32) -> Poly {
    (0..n).fold(Poly::one(), |acc, _| acc.mul(p))
}

/// Cancel the gcd and make the denominator monic.
pub fn reduce(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    let g = num.gcd(&den);
    let (n, _) = num.div_rem(&g);
    let (d, _) = den.div_rem(&g);
    let lead = d.lead();
    let inv = BigRational::one() / lead;
    (n.scale(&inv), d.scale(&inv))
}

/// `p(ρ) / (ρ - c)` when `c` is a root; coefficients lowest degree first.
fn divide_root(p: &[Scalar], c: &Scalar) -> Option<Vec<Scalar>> {
    let n = p.len();
    let mut quot = vec![Scalar::zero(); n - 1];
    let mut carry = Scalar::zero();
    for i in (0..n).rev() {
        let v = &p[i] + &(&carry * c);
        if i == 0 {
            return v.is_zero().then_some(quot);
        }
        quot[i - 1] = v.clone();
        carry = v;
    }
    None
}

fn poly_shift(p: &[Scalar], k: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); k];
    out.extend(p.iter().cloned());
    out
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn poly_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

fn term_product(a: RTerm, b: RTerm) -> RationalRho {
    let key = if a <= b { (a, b) } else { (b, a) };
    if let Some(v) = PRODUCTS.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let v = compute_product(key.0, key.1);
    PRODUCTS.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

/// `Pow` sorts before `Pole`, so `a` is a `Pow` whenever the kinds differ.
fn compute_product(a: RTerm, b: RTerm) -> RationalRho {
    match (a, b) {
        (RTerm::Pow(x), RTerm::Pow(y)) => RationalRho::rho_pow(x + y),
        (RTerm::Pow(0), t) => RationalRho::term(t, Scalar::one()),
        (RTerm::Pow(k), RTerm::Pole { j, r }) if k > 0 => {
            // ρ (ρ - c)^{-r} = (ρ - c)^{-(r-1)} + c (ρ - c)^{-r}
            let c = Scalar::q_pow(2 * j);
            let once = RationalRho::pole(j, r - 1).add(&RationalRho::pole(j, r).scale(&c));
            RationalRho::rho_pow(k - 1).mul(&once)
        }
        (RTerm::Pow(k), RTerm::Pole { j, r }) => {
            // ρ⁻¹ (ρ - c)^{-r} = c⁻¹ [(ρ - c)^{-r} - ρ⁻¹ (ρ - c)^{-(r-1)}]
            let c_inv = Scalar::q_pow(-2 * j);
            let inner = RationalRho::rho_pow(-1).mul(&RationalRho::pole(j, r - 1));
            let once = RationalRho::pole(j, r).sub(&inner).scale(&c_inv);
            RationalRho::rho_pow(k + 1).mul(&once)
        }
        (RTerm::Pole { j: j1, r: r1 }, RTerm::Pole { j: j2, r: r2 }) if j1 == j2 => RationalRho::pole(j1, r1 + r2),
        (RTerm::Pole { j: j1, r: r1 }, RTerm::Pole { j: j2, r: r2 }) => {
            // 1/((ρ-c₁)(ρ-c₂)) = (c₁-c₂)⁻¹ [1/(ρ-c₁) - 1/(ρ-c₂)]
            let diff = (Scalar::q_pow(2 * j1) - Scalar::q_pow(2 * j2)).inv().expect("distinct poles");
            let left = RationalRho::pole(j1, r1).mul(&RationalRho::pole(j2, r2 - 1));
            let right = RationalRho::pole(j1, r1 - 1).mul(&RationalRho::pole(j2, r2));
            left.sub(&right).scale(&diff)
        }
        (RTerm::Pole { .. }, RTerm::Pow(_)) => unreachable!("keys are ordered"),
    }
}

impl fmt::Display for RationalRho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render::join_terms(self.terms.iter().map(|(t, c)| (c.clone(), t.render()))))
    }
}

impl fmt::Debug for RationalRho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalRho({self})")
    }
}

impl std::ops::Add for &RationalRho {
    type Output = RationalRho;
    fn add(self, rhs: &RationalRho) -> RationalRho {
        RationalRho::add(self, rhs)
    }
}

impl std::ops::Sub for &RationalRho {
    type Output = RationalRho;
    fn sub(self, rhs: &RationalRho) -> RationalRho {
        RationalRho::sub(self, rhs)
    }
}

impl std::ops::Mul for &RationalRho {
    type Output = RationalRho;
    fn mul(self, rhs: &RationalRho) -> RationalRho {
        RationalRho::mul(self, rhs)
    }
}

/// Evaluate at numeric `s` and `ρ`.
pub fn eval_f64(f: &RationalRho, s: f64, rho: f64) -> f64 {
    f.terms()
        .map(|(t, c)| {
            let v = match *t {
                RTerm::Pow(k) => rho.powi(k as i32),
                RTerm::Pole { j, r } => (rho - s.powi(4 * j as i32)).powi(-(r as i32)),
            };
            c.eval_f64(s) * v
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_agree_numerically() {
        let f = RationalRho::pole(0, 2).add(&RationalRho::rho_pow(-1)).add(&RationalRho::pole(1, 1));
        let g = RationalRho::rho_pow(2).add(&RationalRho::pole(-1, 1)).add(&RationalRho::pole(0, 1));
        let h = f.mul(&g);
        for &(s, rho) in &[(1.3, 0.7), (0.8, 2.9), (1.1, -1.6)] {
            let lhs = eval_f64(&h, s, rho);
            let rhs = eval_f64(&f, s, rho) * eval_f64(&g, s, rho);
            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()), "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn inverse_factors() {
        let x = RationalRho::linear(1);
        assert_eq!(x.mul(&RationalRho::pole(1, 1)), RationalRho::one());
        let f = RationalRho::factored(Scalar::one(), 1, &[(1, -1)]);
        let g = RationalRho::factored(Scalar::one(), -1, &[(1, 1)]);
        assert_eq!(f.mul(&g), RationalRho::one());
        assert_eq!(g, RationalRho::one().sub(&RationalRho::rho_pow(-1).scale(&Scalar::q_pow(2))));
    }

    #[test]
    fn inverse_splits_numerators() {
        let f = RationalRho::factored(Scalar::from_int(3), 2, &[(1, -1), (-2, 2)]);
        assert_eq!(f.mul(&f.inverse().unwrap()), RationalRho::one());
        let g = RationalRho::one().add(&RationalRho::pole(1, 1).scale(&Scalar::q_pow(2)));
        assert_eq!(g.inverse().unwrap(), RationalRho::one().sub(&RationalRho::rho_pow(-1).scale(&Scalar::q_pow(2))));
        assert!(RationalRho::rho_pow(2).add(&RationalRho::one()).inverse().is_none());
    }

    #[test]
    fn shift_matches_substitution() {
        let f = RationalRho::pole(0, 1).add(&RationalRho::rho_pow(-2));
        let g = f.shift(1);
        let (s, rho) = (1.2f64, 0.9f64);
        let q2 = s.powi(4);
        assert!((eval_f64(&g, s, rho) - eval_f64(&f, s, rho / q2)).abs() < 1e-12);
    }

    #[test]
    fn classical_conversion() {
        // 1/((ρ-1)(ρ-q²)) → u² at q = 1
        let f = RationalRho::pole(0, 1).mul(&RationalRho::pole(1, 1));
        let (n, d) = f.classical_in_u(0).unwrap();
        assert_eq!(n, Poly::one().shift_up(2));
        assert!(d.is_one());
    }
}
