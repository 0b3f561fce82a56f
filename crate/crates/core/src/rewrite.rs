//! Generic string rewriting over noncommutative words with scalar coefficients.
//!
//! Each algebra supplies its local rules through [`WordRewriting`]; the
//! engine reduces a linear combination of words until no redex is left.
//! Two redex-selection strategies are provided so that normal forms can be
//! compared across reduction orders.

use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::scalar::Scalar;

pub type Word<L> = Vec<L>;
pub type Replacement<L> = Vec<(Scalar, Word<L>)>;

pub trait WordRewriting {
    type Letter: Clone + Ord + Debug;

    /// If a redex starts at `pos`, return its length and the replacement words.
    fn redex_at(&self, word: &[Self::Letter], pos: usize) -> Option<(usize, Replacement<Self::Letter>)>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

const STEP_LIMIT: usize = 5_000_000;

/// Reduce `input` to normal form. Panics if the system fails to terminate
/// within a generous step budget.
pub fn normalize_words<R: WordRewriting>(
    system: &R,
    input: Replacement<R::Letter>,
    strategy: Strategy,
) -> BTreeMap<Word<R::Letter>, Scalar> {
    // keyed by (length, word) so the longest word is always processed first
    let mut pending: BTreeMap<(usize, Word<R::Letter>), Scalar> = BTreeMap::new();
    for (c, w) in input {
        accumulate(&mut pending, (w.len(), w), c);
    }
    let mut normal: BTreeMap<Word<R::Letter>, Scalar> = BTreeMap::new();
    let mut steps = 0usize;
    while let Some(((_, word), coeff)) = pending.pop_last() {
        if coeff.is_zero() {
            continue;
        }
        steps += 1;
        assert!(steps < STEP_LIMIT, "rewrite system did not terminate");
        let found = match strategy {
            Strategy::Leftmost => (0..word.len()).find_map(|i| system.redex_at(&word, i).map(|r| (i, r))),
            Strategy::Rightmost => (0..word.len()).rev().find_map(|i| system.redex_at(&word, i).map(|r| (i, r))),
        };
        match found {
            None => accumulate(&mut normal, word, coeff),
            Some((pos, (len, repl))) => {
                for (c, middle) in repl {
                    let mut w = Vec::with_capacity(word.len() + middle.len());
                    w.extend_from_slice(&word[..pos]);
                    w.extend(middle);
                    w.extend_from_slice(&word[pos + len..]);
                    accumulate(&mut pending, (w.len(), w), &coeff * &c);
                }
            }
        }
    }
    normal.retain(|_, c| !c.is_zero());
    normal
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, w: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(w).or_default();
    *e += &c;
}

#[cfg(test)]
mod tests {
    use super::*;

    /// q-commuting plane: y x -> q x y
    struct QPlane;

    impl WordRewriting for QPlane {
        type Letter = char;
        fn redex_at(&self, w: &[char], i: usize) -> Option<(usize, Replacement<char>)> {
            (w.get(i) == Some(&'y') && w.get(i + 1) == Some(&'x')).then(|| (2, vec![(Scalar::q(), vec!['x', 'y'])]))
        }
    }

    #[test]
    fn q_plane_normal_form() {
        let out = normalize_words(&QPlane, vec![(Scalar::one(), vec!['y', 'y', 'x'])], Strategy::Leftmost);
        assert_eq!(out.len(), 1);
        assert_eq!(out[&vec!['x', 'y', 'y']], Scalar::q_pow(2));
        let out2 = normalize_words(&QPlane, vec![(Scalar::one(), vec!['y', 'y', 'x'])], Strategy::Rightmost);
        assert_eq!(out, out2);
    }
}
