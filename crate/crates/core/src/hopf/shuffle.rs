//! The shuffle Hopf algebra on words: shuffle product, deconcatenation
//! coproduct and antipode `S(a₁…a_n) = (−1)ⁿa_n…a₁`. Its generators are
//! the Lyndon words; any word is a unique polynomial in them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::lyndon::{cfl_factorization, is_lyndon, lyndon_words};
use super::{Caches, HopfAlgebra};
use crate::error::{Error, Result};
use crate::graded::{Generator, GradedVector, Monomial, MonoidKind, TensorVector};
use crate::scalar::{int, Rational};

/// Words as letter indices.
pub type Word = Vec<u8>;

pub struct Shuffle {
    letters: Vec<char>,
    weights: Vec<u32>,
    caches: Caches,
}

impl Shuffle {
    /// Alphabet given as its letters in increasing order, each of weight 1.
    pub fn new(alphabet: &str) -> Result<Self> {
        let n = alphabet.chars().count();
        Self::with_weights(alphabet, &vec![1; n])
    }

    pub fn with_weights(alphabet: &str, weights: &[u32]) -> Result<Self> {
        let letters: Vec<char> = alphabet.chars().collect();
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if letters.is_empty() || sorted.len() != letters.len() || letters.len() > u8::MAX as usize {
            return Err(Error::InvalidArgument(format!("bad shuffle alphabet `{alphabet}`")));
        }
        if letters.iter().any(|c| matches!(c, '*' | '1' | '[' | ']' | ',' | ':')) {
            return Err(Error::InvalidArgument(format!("reserved character in alphabet `{alphabet}`")));
        }
        if weights.len() != letters.len() || weights.contains(&0) {
            return Err(Error::InvalidArgument("one positive weight per letter is required".into()));
        }
        Ok(Shuffle { letters, weights: weights.to_vec(), caches: Caches::default() })
    }

    pub fn alphabet(&self) -> String {
        self.letters.iter().collect()
    }

    pub fn letter_count(&self) -> u8 {
        self.letters.len() as u8
    }

    pub fn weight(&self, w: &[u8]) -> u32 {
        w.iter().map(|&l| self.weights[l as usize]).sum()
    }

    pub fn letter(&self, index: u8) -> Generator {
        Generator::new(self.letters[index as usize].to_string(), self.weights[index as usize])
    }

    pub fn word_monomial(&self, w: &[u8]) -> Monomial {
        Monomial::from_factors(MonoidKind::Word, w.iter().map(|&l| self.letter(l)).collect())
    }

    pub fn word_string(&self, w: &[u8]) -> String {
        w.iter().map(|&l| self.letters[l as usize]).collect()
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| {
                self.letters
                    .iter()
                    .position(|&l| l == c)
                    .map(|i| i as u8)
                    .ok_or_else(|| Error::Parse(format!("letter `{c}` not in alphabet `{}`", self.alphabet())))
            })
            .collect()
    }

    pub fn word_of(&self, m: &Monomial) -> Word {
        m.factors()
            .iter()
            .map(|g| {
                let c = g.key().chars().next().expect("letter key");
                self.letters.iter().position(|&l| l == c).expect("letter of this alphabet") as u8
            })
            .collect()
    }

    /// The generator for a Lyndon word.
    pub fn lyndon_generator(&self, w: &[u8]) -> Generator {
        debug_assert!(is_lyndon(w));
        Generator::new(self.word_string(w), self.weight(w))
    }

    /// Lyndon words up to weight `max_weight`, sorted by weight then lexicographically.
    pub fn lyndon_basis(&self, max_weight: u32) -> Vec<Word> {
        let mut words: Vec<Word> = lyndon_words(self.letter_count(), max_weight as usize)
            .into_iter()
            .filter(|w| self.weight(w) <= max_weight)
            .collect();
        words.sort_by(|a, b| self.weight(a).cmp(&self.weight(b)).then_with(|| a.cmp(b)));
        words
    }

    fn words_of_weight(&self, n: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_words(n, &mut current, &mut out);
        out
    }

    fn extend_words(&self, remaining: u32, current: &mut Word, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for l in 0..self.letter_count() {
            let w = self.weights[l as usize];
            if w <= remaining {
                current.push(l);
                self.extend_words(remaining - w, current, out);
                current.pop();
            }
        }
    }

    /// Expresses a word as a polynomial in Lyndon generators, by induction
    /// on the lexicographic order: the shuffle of the Chen–Fox–Lyndon
    /// factors of `w` equals `α·w` plus strictly smaller words.
    pub fn lyndon_rewrite(&self, w: &[u8]) -> GradedVector {
        (*self.polynomial(&self.word_monomial(w))).clone()
    }

    fn rewrite(&self, w: &[u8]) -> GradedVector {
        if w.is_empty() {
            return GradedVector::unit(MonoidKind::Commutative);
        }
        let factors = cfl_factorization(w);
        let lead = Monomial::from_factors(
            MonoidKind::Commutative,
            factors.iter().map(|l| self.lyndon_generator(l)).collect(),
        );
        if factors.len() == 1 {
            return GradedVector::from_monomial(lead);
        }
        let mut expansion = BTreeMap::from([(Vec::new(), Rational::one())]);
        for l in &factors {
            expansion = shuffle_into(&expansion, l);
        }
        let alpha = expansion.remove(w).expect("w occurs in the shuffle of its factors");
        let mut out = GradedVector::from_monomial(lead);
        for (u, beta) in expansion {
            assert!(u.as_slice() < w, "triangularity of Lyndon shuffles");
            out.add_scaled(&self.polynomial(&self.word_monomial(&u)), &-beta);
        }
        out.scaled(&(Rational::one() / alpha))
    }

    /// Expands a polynomial in Lyndon generators back into words.
    pub fn expand(&self, p: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (m, c) in p.iter() {
            let mut acc = BTreeMap::from([(Vec::new(), Rational::one())]);
            for g in m.factors() {
                let word = self.parse_word(g.key()).expect("Lyndon generator key");
                acc = shuffle_into(&acc, &word);
            }
            for (w, x) in acc {
                out.add_term(self.word_monomial(&w), x * c);
            }
        }
        out
    }
}

/// `u ⧢ v` as a map word → multiplicity.
pub fn shuffle_words(u: &[u8], v: &[u8]) -> BTreeMap<Word, Rational> {
    let mut out = BTreeMap::new();
    let mut prefix = Vec::with_capacity(u.len() + v.len());
    fn rec(u: &[u8], v: &[u8], prefix: &mut Word, out: &mut BTreeMap<Word, Rational>) {
        if u.is_empty() || v.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(u);
            w.extend_from_slice(v);
            *out.entry(w).or_insert_with(Rational::zero) += Rational::one();
            return;
        }
        prefix.push(u[0]);
        rec(&u[1..], v, prefix, out);
        prefix.pop();
        prefix.push(v[0]);
        rec(u, &v[1..], prefix, out);
        prefix.pop();
    }
    rec(u, v, &mut prefix, &mut out);
    out
}

fn shuffle_into(acc: &BTreeMap<Word, Rational>, w: &[u8]) -> BTreeMap<Word, Rational> {
    let mut out: BTreeMap<Word, Rational> = BTreeMap::new();
    for (u, c) in acc {
        for (x, d) in shuffle_words(u, w) {
            *out.entry(x).or_insert_with(Rational::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl HopfAlgebra for Shuffle {
    fn name(&self) -> String {
        format!("shuffle:{}", self.alphabet())
    }

    fn kind(&self) -> MonoidKind {
        MonoidKind::Word
    }

    fn max_degree(&self) -> u32 {
        10
    }

    fn enumerate_generators(&self, n: u32) -> Vec<Generator> {
        self.lyndon_basis(n)
            .into_iter()
            .filter(|w| self.weight(w) == n)
            .map(|w| self.lyndon_generator(&w))
            .collect()
    }

    fn enumerate_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self.words_of_weight(n).iter().map(|w| self.word_monomial(w)).collect();
        out.sort();
        out
    }

    fn product(&self, a: &Monomial, b: &Monomial) -> GradedVector {
        GradedVector::from_terms(
            shuffle_words(&self.word_of(a), &self.word_of(b))
                .into_iter()
                .map(|(w, c)| (self.word_monomial(&w), c)),
        )
    }

    fn coproduct_generator(&self, g: &Generator) -> TensorVector {
        self.compute_coproduct(&self.as_basis(g))
    }

    /// Deconcatenation.
    fn compute_coproduct(&self, m: &Monomial) -> TensorVector {
        let w = self.word_of(m);
        let mut t = TensorVector::zero();
        for i in 0..=w.len() {
            t.add_term(self.word_monomial(&w[..i]), self.word_monomial(&w[i..]), Rational::one());
        }
        t
    }

    fn explicit_antipode_generator(&self, g: &Generator) -> Option<GradedVector> {
        self.compute_explicit_antipode(&self.as_basis(g))
    }

    fn compute_explicit_antipode(&self, m: &Monomial) -> Option<GradedVector> {
        let mut w = self.word_of(m);
        let sign = if w.len().is_multiple_of(2) { 1 } else { -1 };
        w.reverse();
        Some(GradedVector::term(self.word_monomial(&w), int(sign)))
    }

    fn as_basis(&self, g: &Generator) -> Monomial {
        self.word_monomial(&self.parse_word(g.key()).expect("generator is a word of this alphabet"))
    }

    fn is_generator(&self, m: &Monomial) -> bool {
        is_lyndon(&self.word_of(m))
    }

    fn compute_polynomial(&self, m: &Monomial) -> GradedVector {
        self.rewrite(&self.word_of(m))
    }

    fn caches(&self) -> &Caches {
        &self.caches
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h() -> Shuffle {
        Shuffle::new("ab").unwrap()
    }

    fn w(h: &Shuffle, s: &str) -> Monomial {
        h.word_monomial(&h.parse_word(s).unwrap())
    }

    #[test]
    fn shuffle_examples() {
        let h = Shuffle::new("abc").unwrap();
        assert_eq!(
            h.product(&w(&h, "a"), &w(&h, "b")),
            GradedVector::from_terms([(w(&h, "ab"), int(1)), (w(&h, "ba"), int(1))])
        );
        assert_eq!(
            h.product(&w(&h, "ab"), &w(&h, "c")),
            GradedVector::from_terms([(w(&h, "abc"), int(1)), (w(&h, "acb"), int(1)), (w(&h, "cab"), int(1))])
        );
        assert_eq!(h.product(&w(&h, "a"), &w(&h, "a")), GradedVector::term(w(&h, "aa"), int(2)));
        let total: Rational = shuffle_words(&[0, 1, 0], &[1, 1]).values().sum();
        assert_eq!(total, int(10));
    }

    #[test]
    fn coproduct_and_antipode_examples() {
        let h = h();
        let d = h.coproduct(&w(&h, "ab"));
        assert_eq!(d.len(), 3);
        assert_eq!(d.coefficient(&w(&h, "a"), &w(&h, "b")), int(1));
        assert_eq!(*h.default_antipode(&w(&h, "ab")), GradedVector::from_monomial(w(&h, "ba")));
        assert_eq!(*h.default_antipode(&w(&h, "a")), GradedVector::term(w(&h, "a"), int(-1)));
    }

    #[test]
    fn rewrite_examples() {
        let h = h();
        let a = h.lyndon_generator(&[0]);
        let b = h.lyndon_generator(&[1]);
        let ab = h.lyndon_generator(&[0, 1]);
        let expected = GradedVector::from_terms([
            (Monomial::from_factors(MonoidKind::Commutative, vec![a.clone(), b]), int(1)),
            (Monomial::generator(MonoidKind::Commutative, ab), int(-1)),
        ]);
        assert_eq!(h.lyndon_rewrite(&[1, 0]), expected);
        assert_eq!(
            h.lyndon_rewrite(&[0]),
            GradedVector::from_monomial(Monomial::generator(MonoidKind::Commutative, a))
        );
    }

    #[test]
    fn rewrite_round_trips_for_short_words() {
        let h = Shuffle::new("abc").unwrap();
        for n in 1..=4 {
            for m in h.basis(n).iter() {
                let p = h.lyndon_rewrite(&h.word_of(m));
                assert_eq!(h.expand(&p), GradedVector::from_monomial(m.clone()), "{m}");
            }
        }
    }

    #[test]
    fn generators_are_lyndon_words() {
        let h = h();
        let keys: Vec<String> = (1..=3).flat_map(|n| h.generators(n).iter().map(|g| g.key().to_owned()).collect::<Vec<_>>()).collect();
        assert_eq!(keys, vec!["a", "b", "ab", "aab", "abb"]);
        assert!(Shuffle::new("aa").is_err());
        assert!(Shuffle::new("").is_err());
    }

    #[test]
    fn weighted_letters() {
        let h = Shuffle::with_weights("ab", &[1, 2]).unwrap();
        assert_eq!(h.basis(3).len(), 3); // aaa, ab, ba
        assert_eq!(w(&h, "ab").degree(), 3);
    }
}
