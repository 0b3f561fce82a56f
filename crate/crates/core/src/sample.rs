//! Seeded random elements and words for property checks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::calculus::{FormBasis, FormElement};
use crate::scalar::Scalar;
use crate::smash::Letter;
use crate::suq2::SuLetter;
use crate::zalgebra::{FuncElement, FuncMonomial, ZLetter};

pub type SampleRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_coeff(rng: &mut SampleRng) -> Scalar {
    let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
    if rng.gen_bool(0.3) {
        Scalar::from_int(n) * Scalar::q_pow(rng.gen_range(-2..=2))
    } else {
        Scalar::from_int(n)
    }
}

/// Canonical monomial with `m + a + b ≤ max_degree`.
pub fn monomial(rng: &mut SampleRng, max_degree: u32) -> FuncMonomial {
    loop {
        let m = rng.gen_range(0..=max_degree);
        let a = rng.gen_range(0..=max_degree - m);
        let b = rng.gen_range(0..=max_degree - m - a);
        let x = FuncMonomial::new(m, a, b);
        if x.is_canonical() {
            return x;
        }
    }
}

pub fn func(rng: &mut SampleRng, max_degree: u32, max_terms: usize) -> FuncElement {
    let n = rng.gen_range(1..=max_terms);
    FuncElement::from_terms((0..n).map(|_| (monomial(rng, max_degree), small_coeff(rng))))
}

/// Homogeneous form of the given grade.
pub fn form(rng: &mut SampleRng, grade: u32, max_degree: u32, max_terms: usize) -> FormElement {
    let choices: Vec<FormBasis> = FormBasis::ALL.into_iter().filter(|e| e.grade() == grade).collect();
    let mut out = FormElement::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let e = *choices.choose(rng).expect("grade ≤ 2");
        out = out + FormElement::with(func(rng, max_degree, 1), e);
    }
    out
}

/// Form of random grade 0 or 1.
pub fn low_form(rng: &mut SampleRng, max_degree: u32) -> FormElement {
    let g = rng.gen_range(0..=1);
    form(rng, g, max_degree, 2)
}

pub fn z_word(rng: &mut SampleRng, max_len: usize) -> Vec<ZLetter> {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| *[ZLetter::Rhoi, ZLetter::Zb, ZLetter::Z].choose(rng).expect("nonempty")).collect()
}

/// Word over functions, forms and vector fields (no derivative letters).
pub fn smash_word(rng: &mut SampleRng, max_len: usize) -> Vec<Letter> {
    let pool = [Letter::Rhoi, Letter::Zb, Letter::Z, Letter::Dz, Letter::Dzb, Letter::Zp, Letter::H, Letter::Zm];
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| *pool.choose(rng).expect("nonempty")).collect()
}

/// Word over functions and the derivatives `∂, ∂̄`.
pub fn diff_word(rng: &mut SampleRng, max_len: usize) -> Vec<Letter> {
    let pool = [Letter::Rhoi, Letter::Zb, Letter::Z, Letter::Del, Letter::Delb];
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| *pool.choose(rng).expect("nonempty")).collect()
}

pub fn su_word(rng: &mut SampleRng, max_len: usize) -> Vec<SuLetter> {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| *SuLetter::ALL.choose(rng).expect("nonempty")).collect()
}
