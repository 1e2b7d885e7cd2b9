//! Graded generators, free (commutative) monoids over them, and sparse
//! exact-rational vectors and tensors indexed by monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::growth::{GrowthFamily, Weight};
use crate::scalar::{format_rational, Rational};

/// An element of a pure graded alphabet: a canonical text key and a
/// positive degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    degree: u32,
    key: Arc<str>,
}

impl Generator {
    pub fn try_new(key: impl Into<Arc<str>>, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self { degree, key: key.into() })
    }

    /// # Panics
    /// If `degree == 0`.
    pub fn new(key: impl Into<Arc<str>>, degree: u32) -> Self {
        Self::try_new(key, degree).expect("generator degree must be positive")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn key(&self) -> &str {
        &self.key
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.key.cmp(&other.key))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoidKind {
    /// Free commutative monoid: factors stored as a sorted multiset.
    Commutative,
    /// Free monoid: factors form a word.
    Word,
}

/// A monomial over graded generators. The empty monomial is the unit and
/// the only element of degree zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    kind: MonoidKind,
    degree: u32,
    factors: Vec<Generator>,
}

impl Monomial {
    pub fn unit(kind: MonoidKind) -> Self {
        Self { kind, degree: 0, factors: Vec::new() }
    }

    pub fn from_factors(kind: MonoidKind, mut factors: Vec<Generator>) -> Self {
        if kind == MonoidKind::Commutative {
            factors.sort();
        }
        let degree = factors.iter().map(Generator::degree).sum();
        Self { kind, degree, factors }
    }

    pub fn generator(kind: MonoidKind, g: Generator) -> Self {
        Self { kind, degree: g.degree, factors: vec![g] }
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[Generator] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// The single generator, if this monomial has exactly one factor.
    pub fn as_generator(&self) -> Option<&Generator> {
        match self.factors.as_slice() {
            [g] => Some(g),
            _ => None,
        }
    }

    /// Multiset union (commutative) or concatenation (word).
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::ModeMismatch(self.kind, other.kind));
        }
        let factors = match self.kind {
            MonoidKind::Commutative => merge_sorted(&self.factors, &other.factors),
            MonoidKind::Word => {
                let mut f = Vec::with_capacity(self.factors.len() + other.factors.len());
                f.extend_from_slice(&self.factors);
                f.extend_from_slice(&other.factors);
                f
            }
        };
        Ok(Self { kind: self.kind, degree: self.degree + other.degree, factors })
    }

    /// Product of two monomials known to share a kind.
    pub(crate) fn mul(&self, other: &Self) -> Self {
        self.product(other).expect("monomial kinds agree")
    }

    pub fn pow(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::unit(self.kind), |acc, _| acc.mul(self))
    }

    /// Run-length view of a commutative monomial: `(generator, multiplicity)`.
    pub fn multiplicities(&self) -> Vec<(Generator, u32)> {
        let mut out: Vec<(Generator, u32)> = Vec::new();
        for g in &self.factors {
            match out.last_mut() {
                Some((last, m)) if last == g => *m += 1,
                _ => out.push((g.clone(), 1)),
            }
        }
        out
    }

    /// Text form: `1` for the unit, `*`-joined keys for commutative
    /// monomials, concatenated letters for words.
    pub fn encode(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_owned();
        }
        let sep = match self.kind {
            MonoidKind::Commutative => "*",
            MonoidKind::Word => "",
        };
        self.factors.iter().map(Generator::key).collect::<Vec<_>>().join(sep)
    }
}

fn merge_sorted(a: &[Generator], b: &[Generator]) -> Vec<Generator> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i].clone());
            i += 1;
        } else {
            out.push(b[j].clone());
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.factors.cmp(&other.factors))
            .then_with(|| self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

fn insert_term<K: Ord>(terms: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// A finitely supported linear combination of monomials. Zero coefficients
/// are never stored.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GradedVector {
    terms: BTreeMap<Monomial, Rational>,
}

impl GradedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(kind: MonoidKind) -> Self {
        Self::from_monomial(Monomial::unit(kind))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut v = Self::zero();
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        insert_term(&mut self.terms, m, c);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    /// Bilinear extension of the monoid product.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.product(b)?, x * y);
            }
        }
        Ok(out)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Sum of absolute values of the coefficients.
    pub fn mass(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Weighted ℓ¹ norm `Σ |c_m| ω_k(|m|)`.
    pub fn l1_norm(&self, family: &GrowthFamily, k: u32) -> Weight {
        self.terms.iter().fold(Weight::zero(), |acc, (m, c)| {
            acc.plus(&family.eval(k, m.degree()).scaled(&c.abs()))
        })
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}·{}", format_rational(c), m))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize)]
struct VectorTermRecord {
    monomial: String,
    numerator: String,
    denominator: String,
}

impl Serialize for GradedVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            seq.serialize_element(&VectorTermRecord {
                monomial: m.encode(),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })?;
        }
        seq.end()
    }
}

/// A finitely supported linear combination of pairs of monomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorVector {
    terms: BTreeMap<(Monomial, Monomial), Rational>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(left: Monomial, right: Monomial) -> Self {
        let mut t = Self::zero();
        t.add_term(left, right, Rational::one());
        t
    }

    pub fn add_term(&mut self, left: Monomial, right: Monomial, c: Rational) {
        insert_term(&mut self.terms, (left, right), c);
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for ((l, r), x) in &other.terms {
            self.add_term(l.clone(), r.clone(), x * c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Monomial, &Rational)> {
        self.terms.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, left: &Monomial, right: &Monomial) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Componentwise product `(a⊗b)(c⊗d) = ac⊗bd`, extended bilinearly.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((l1, r1), x) in &self.terms {
            for ((l2, r2), y) in &other.terms {
                out.add_term(l1.mul(l2), r1.mul(r2), x * y);
            }
        }
        out
    }

    /// Drops the two primitive terms `x⊗1` and `1⊗x`.
    pub fn reduced(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((l, r), _)| !l.is_unit() && !r.is_unit())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&Monomial, &Monomial) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((l, r), _)| keep(l, r))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn mass(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).sum()
    }

    /// Weighted ℓ¹ norm `Σ |c_{μ,σ}| ω_k(|μ|+|σ|)`.
    pub fn l1_norm(&self, family: &GrowthFamily, k: u32) -> Weight {
        self.terms.iter().fold(Weight::zero(), |acc, ((l, r), c)| {
            acc.plus(&family.eval(k, l.degree() + r.degree()).scaled(&c.abs()))
        })
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| format!("{}·{}⊗{}", format_rational(c), l, r))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TensorTermRecord {
    left: String,
    right: String,
    numerator: String,
    denominator: String,
}

impl Serialize for TensorVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((l, r), c) in &self.terms {
            seq.serialize_element(&TensorTermRecord {
                left: l.encode(),
                right: r.encode(),
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })?;
        }
        seq.end()
    }
}
