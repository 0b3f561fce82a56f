//! Twisted derivations of the function algebra.
//!
//! Each of `∂, ∂̄, 𝒵₊, 𝒵₋` satisfies `X f = (X▷f) + κ(f) X` in its smash
//! product with functions, where `κ` is the diagonal automorphism
//! `z ↦ qᵗ z, z̄ ↦ q⁻ᵗ z̄, ρ ↦ ρ`. The action on products is therefore
//! `X▷(fg) = (X▷f) g + κ(f) (X▷g)`, which together with the values on `z`
//! and `z̄` determines `X▷` on the whole algebra.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::scalar::Scalar;
use crate::zalgebra::{FuncElement, FuncMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Derivation {
    /// ∂: `∂z = 1 + q⁻² z∂`, `∂z̄ = q² z̄∂`
    Del,
    /// ∂̄: `∂̄z = q⁻² z∂̄`, `∂̄z̄ = 1 + q² z̄∂̄`
    Delb,
    /// 𝒵₊: `𝒵₊z = q² z𝒵₊ + q^{1/2} z²`, `𝒵₊z̄ = q⁻² z̄𝒵₊ + q^{-3/2}`
    Zp,
    /// 𝒵₋: `𝒵₋z = q² z𝒵₋ - q^{1/2}`, `𝒵₋z̄ = q⁻² z̄𝒵₋ - q^{-3/2} z̄²`
    Zm,
}

thread_local! {
    static ACTION: RefCell<HashMap<(Derivation, FuncMonomial), FuncElement>> = RefCell::new(HashMap::new());
}

impl Derivation {
    /// Exponent `t` of the twist `κ(z) = qᵗ z`.
    pub fn twist(self) -> i64 {
        match self {
            Derivation::Del | Derivation::Delb => -2,
            Derivation::Zp | Derivation::Zm => 2,
        }
    }

    pub fn on_z(self) -> FuncElement {
        match self {
            Derivation::Del => FuncElement::one(),
            Derivation::Delb => FuncElement::zero(),
            Derivation::Zp => FuncElement::mono(0, 0, 2).scale(&Scalar::s_pow(1)),
            Derivation::Zm => FuncElement::scalar(-Scalar::s_pow(1)),
        }
    }

    pub fn on_zb(self) -> FuncElement {
        match self {
            Derivation::Del => FuncElement::zero(),
            Derivation::Delb => FuncElement::one(),
            Derivation::Zp => FuncElement::scalar(Scalar::s_pow(-3)),
            Derivation::Zm => FuncElement::mono(0, 2, 0).scale(&-Scalar::s_pow(-3)),
        }
    }

    /// `X▷ρ = (X▷z̄) z + κ(z̄) (X▷z)`
    pub fn on_rho(self) -> FuncElement {
        self.on_zb().mul(&FuncElement::z()) + FuncElement::zb().twist(self.twist()).mul(&self.on_z())
    }

    /// `X▷ρ⁻¹ = -ρ⁻¹ (X▷ρ) ρ⁻¹`
    pub fn on_rhoi(self) -> FuncElement {
        -(FuncElement::rhoi().mul(&self.on_rho()).mul(&FuncElement::rhoi()))
    }

    pub fn apply_monomial(self, x: FuncMonomial) -> FuncElement {
        if x == FuncMonomial::ONE {
            return FuncElement::zero();
        }
        if let Some(v) = ACTION.with(|c| c.borrow().get(&(self, x)).cloned()) {
            return v;
        }
        let t = self.twist();
        // peel one generator off the left: x = g · rest
        let (g, g_action, rest) = if x.m > 0 {
            (FuncElement::rhoi(), self.on_rhoi(), FuncMonomial::new(x.m - 1, x.a, x.b))
        } else if x.a > 0 {
            (FuncElement::zb(), self.on_zb(), FuncMonomial::new(0, x.a - 1, x.b))
        } else {
            (FuncElement::z(), self.on_z(), FuncMonomial::new(0, 0, x.b - 1))
        };
        let rest_el = FuncElement::mono(rest.m, rest.a, rest.b);
        let v = g_action.mul(&rest_el) + g.twist(t).mul(&self.apply_monomial(rest));
        ACTION.with(|c| c.borrow_mut().insert((self, x), v.clone()));
        v
    }

    pub fn apply(self, f: &FuncElement) -> FuncElement {
        let mut out = FuncElement::zero();
        for (x, c) in f.terms() {
            out = out + self.apply_monomial(*x).scale(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> FuncElement {
        FuncElement::scalar(Scalar::q_pow(k))
    }

    #[test]
    fn derivative_values() {
        let z = FuncElement::z();
        assert_eq!(Derivation::Del.apply(&z), FuncElement::one());
        assert!(Derivation::Delb.apply(&z).is_zero());
        // ∂▷z² = (1 + q⁻²) z
        let z2 = FuncElement::mono(0, 0, 2);
        assert_eq!(Derivation::Del.apply(&z2), (FuncElement::one() + q(-2)) * z);
    }

    #[test]
    fn rho_inverse_rules() {
        // ∂ρ⁻¹ = ρ⁻¹∂ - q⁴ z̄ ρ⁻², ∂̄ρ⁻¹ = ρ⁻¹∂̄ - q⁻² z ρ⁻²
        let rhoi2 = FuncElement::mono(2, 0, 0);
        assert_eq!(Derivation::Del.on_rhoi(), -(q(4) * FuncElement::zb() * rhoi2.clone()));
        assert_eq!(Derivation::Delb.on_rhoi(), -(q(-2) * FuncElement::z() * rhoi2));
    }

    #[test]
    fn respects_zz_relation() {
        // X▷(z z̄ - q⁻² z̄ z - q⁻² + 1) = 0
        let rel = FuncElement::z() * FuncElement::zb()
            - q(-2) * FuncElement::zb() * FuncElement::z()
            - FuncElement::scalar(Scalar::q_pow(-2) - Scalar::one());
        assert!(rel.is_zero());
        for d in [Derivation::Del, Derivation::Delb, Derivation::Zp, Derivation::Zm] {
            let zzb = d.apply_monomial(FuncMonomial::new(0, 0, 1)).mul(&FuncElement::zb())
                + FuncElement::z().twist(d.twist()).mul(&d.on_zb());
            let zbz = d.apply(&FuncElement::mono(0, 1, 1));
            assert_eq!(zzb, q(-2) * zbz, "{d:?}");
        }
    }
}
