//! Invariant integral on the sphere and the induced integral on the plane.
//!
//! `⟨ρ⁻ᵐ⟩ = 1/[m+1]_q` with `⟨1⟩ = 1`; monomials of nonzero charge integrate
//! to 0. A canonical monomial `ρ⁻ᵐz̄ᵃzᵇ` is integrable iff `a = b = 0` or
//! `2m - a - b ≥ 3`.

use std::fmt;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::report::{residual, Check};
use crate::scalar::{qint, Scalar};
use crate::vfields::{build_bcd, VField};
use crate::zalgebra::{FuncElement, FuncMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralStatus {
    Finite,
    /// Every contributing monomial carries charge.
    ZeroByInvariance,
}

impl IntegralStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            IntegralStatus::Finite => "finite",
            IntegralStatus::ZeroByInvariance => "zero-by-invariance",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralValue {
    pub value: Scalar,
    pub status: IntegralStatus,
}

impl fmt::Display for IntegralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn is_integrable(x: &FuncMonomial) -> bool {
    (x.a == 0 && x.b == 0) || 2 * x.m as i64 - x.a as i64 - x.b as i64 >= 3
}

pub fn integrate_monomial(x: &FuncMonomial) -> Result<Scalar> {
    if !is_integrable(x) {
        return Err(Error::NotIntegrable(x.render()));
    }
    if x.a != x.b {
        return Ok(Scalar::zero());
    }
    qint(x.m + 1).inv()
}

pub fn integrate_sphere(f: &FuncElement) -> Result<IntegralValue> {
    let mut value = Scalar::zero();
    let mut charged_only = true;
    for (x, c) in f.terms() {
        value += &(&integrate_monomial(x)? * c);
        charged_only &= x.a != x.b;
    }
    let status = if charged_only && !f.is_zero() { IntegralStatus::ZeroByInvariance } else { IntegralStatus::Finite };
    Ok(IntegralValue { value, status })
}

/// `∫ f = ⟨ρ² f⟩`
pub fn integrate_plane(f: &FuncElement) -> Result<IntegralValue> {
    integrate_sphere(&FuncElement::rho_pow(2).mul(f))
}

/// Solve `⟨𝒵₊ ▷ (z̄ρ⁻ˡ)⟩ = 0` for `⟨ρ⁻ˡ⟩` step by step from `⟨1⟩ = 1`,
/// compare with `1/[l+1]_q`, and confirm the closed form annihilates each image.
pub fn verify_invariance_recursion(l_max: u32) -> Result<Vec<Check>> {
    let mut known: Vec<Scalar> = vec![Scalar::one()];
    let mut out = Vec::new();
    for l in 1..=l_max {
        let image = VField::Zp.act_func(&FuncElement::mono(l, 1, 0));
        // unknowns are ⟨ρ⁻ᵏ⟩; charged terms drop out
        let mut lead = Scalar::zero();
        let mut rest = Scalar::zero();
        for (x, c) in image.terms() {
            if x.a != x.b {
                continue;
            }
            if x.a != 0 || x.m > l {
                return Err(Error::VerificationFailure(format!("unexpected term {} at l = {l}", x.render())));
            }
            if x.m == l {
                lead += c;
            } else {
                rest += &(c * &known[x.m as usize]);
            }
        }
        if lead.is_zero() {
            return Err(Error::VerificationFailure(format!("recursion degenerate at l = {l}")));
        }
        let solved = -(&rest / &lead);
        let closed = qint(l + 1).inv()?;
        let annihilated = integrate_sphere(&image)?.value;
        let detail = if solved != closed {
            Some(format!("recursion gives {solved}"))
        } else {
            residual(annihilated.is_zero(), &annihilated)
        };
        out.push(Check::new(format!("<rhoi^{l}> = 1/[{}]_q from invariance", l + 1), detail));
        known.push(solved);
    }
    Ok(out)
}

/// `⟨z̄zρ⁻ˡ⟩ = 1/[l]_q - 1/[l+1]_q`
pub fn check_zbz_moments(l_min: u32, l_max: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for l in l_min..=l_max {
        let f = FuncElement::zb().mul(&FuncElement::z()).mul(&FuncElement::rho_pow(-(l as i64)));
        let v = integrate_sphere(&f)?.value;
        let expect = qint(l).inv()? - qint(l + 1).inv()?;
        out.push(Check::new(format!("<zb z rhoi^{l}> = 1/[{l}]_q - 1/[{}]_q", l + 1), residual(v == expect, &v)));
    }
    Ok(out)
}

/// `⟨O ▷ f⟩ = 0` for each vector field and integrable monomial with `m ≤ m_max`
/// whose image stays integrable.
pub fn check_vector_field_invariance(m_max: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for x in VField::ALL {
        let mut bad = None;
        let mut tested = 0;
        for m in 0..=m_max {
            for a in 0..=2 * m {
                for b in 0..=2 * m {
                    let mono = FuncMonomial::new(m, a, b);
                    if !mono.is_canonical() || !is_integrable(&mono) {
                        continue;
                    }
                    let image = x.act_func(&FuncElement::mono(m, a, b));
                    let Ok(v) = integrate_sphere(&image) else { continue };
                    tested += 1;
                    if !v.value.is_zero() && bad.is_none() {
                        bad = Some(format!("<{} > {}> = {}", x.name(), mono.render(), v.value));
                    }
                }
            }
        }
        let detail = bad.or_else(|| (tested == 0).then(|| "no integrable images".to_string()));
        out.push(Check::new(format!("<{} f> = 0 for m <= {m_max}", x.name()), detail));
    }
    Ok(out)
}

/// The plane test family `{ρ⁻ˡ, z̄ρ⁻ˡ⁻¹, zρ⁻ˡ⁻¹ : l_min ≤ l ≤ l_max}`.
pub fn plane_family(l_min: u32, l_max: u32) -> Vec<FuncElement> {
    (l_min..=l_max)
        .flat_map(|l| [FuncElement::mono(l, 0, 0), FuncElement::mono(l + 1, 1, 0), FuncElement::mono(l + 1, 0, 1)])
        .collect()
}

/// `∫∂▷f = ∫∂̄▷f = 0`, cross-checked by rewriting `q⁻¹ρ²∂f` and `q⁻¹ρ²∂̄f`
/// as vector-field images of `B▷f`, each of which integrates to 0.
pub fn verify_plane_translation_invariance(family: &[FuncElement]) -> Result<Vec<Check>> {
    let b = build_bcd().b;
    let q = Scalar::q_pow;
    let s1 = Scalar::s_pow(1);
    let two = qint(2);
    let rho2 = FuncElement::rho_pow(2);
    let (z, zb) = (FuncElement::z(), FuncElement::zb());
    let act = |x: VField, f: &FuncElement| x.act_func(f);
    let mut out = Vec::new();
    for f in family {
        let del_f = Derivation::Del.apply(f);
        let delb_f = Derivation::Delb.apply(f);
        let i_del = integrate_plane(&del_f)?.value;
        let i_delb = integrate_plane(&delb_f)?.value;
        let g = b.apply(f);
        // pieces whose sum is q⁻¹ρ²∂̄f and q⁻¹ρ²∂f
        let delb_pieces = [
            act(VField::Zm, &z.mul(&act(VField::Zp, &g))),
            -act(VField::Zp, &z.mul(&act(VField::Zm, &g))).scale(&q(4)),
            act(VField::Zp, &g).scale(&(&s1 * &two)),
        ];
        let del_pieces = [
            act(VField::Zp, &zb.mul(&act(VField::Zm, &g))).scale(&q(4)),
            -act(VField::Zm, &zb.mul(&act(VField::Zp, &g))),
            -act(VField::Zm, &g).scale(&(&s1 * &two)),
        ];
        let sum = |p: &[FuncElement]| p.iter().fold(FuncElement::zero(), |acc, x| acc + x);
        let cross_ok = sum(&delb_pieces) == rho2.mul(&delb_f).scale(&q(-1))
            && sum(&del_pieces) == rho2.mul(&del_f).scale(&q(-1))
            && delb_pieces.iter().chain(del_pieces.iter()).all(|p| {
                integrate_sphere(p).map(|v| v.value.is_zero()).unwrap_or(false)
            });
        let detail = if !i_del.is_zero() {
            Some(format!("int del f = {i_del}"))
        } else if !i_delb.is_zero() {
            Some(format!("int delb f = {i_delb}"))
        } else if !cross_ok {
            Some("vector-field decomposition disagrees".into())
        } else {
            None
        };
        out.push(Check::new(format!("plane translation invariance for {f}"), detail));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let v = integrate_sphere(&FuncElement::rhoi()).unwrap();
        assert_eq!(v.value, qint(2).inv().unwrap());
        let v = integrate_sphere(&FuncElement::mono(2, 1, 0)).unwrap();
        assert!(v.value.is_zero());
        assert_eq!(v.status, IntegralStatus::ZeroByInvariance);
        let v = integrate_plane(&FuncElement::rho_pow(-4)).unwrap();
        assert_eq!(v.value, qint(3).inv().unwrap());
        assert!(matches!(integrate_plane(&FuncElement::one()), Err(Error::NotIntegrable(_))));
    }

    #[test]
    fn recursion_and_moments() {
        for c in verify_invariance_recursion(6).unwrap() {
            assert!(c.passed, "{c:?}");
        }
        for c in check_zbz_moments(2, 6).unwrap() {
            assert!(c.passed, "{c:?}");
        }
        let h = VField::H.act_func(&FuncElement::mono(3, 0, 1));
        assert!(integrate_sphere(&h).unwrap().value.is_zero());
    }

    #[test]
    fn invariance_and_translation() {
        for c in check_vector_field_invariance(4).unwrap() {
            assert!(c.passed, "{c:?}");
        }
        for c in verify_plane_translation_invariance(&plane_family(3, 4)).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn classical_moments() {
        for l in 0..6u32 {
            let v = integrate_sphere(&FuncElement::mono(l, 0, 0)).unwrap().value;
            let lim = v.classical_limit(0).unwrap();
            assert_eq!(lim, num::BigRational::new(1.into(), (l as i64 + 1).into()));
        }
    }
}
