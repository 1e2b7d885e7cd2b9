//! Word series `W_δ(x) = Σ_w δ(w) f_w(x)` for `x' = Σ_a λ_a(t) f_a(x)`.
//! Word basis functions follow `f_{cw}(x) = f_w'(x) f_c(x)`, with
//! `f_∅(x) = x`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::poly::PolyVectorField;
use super::SeriesTerms;
use crate::character::Character;
use crate::error::{Error, Result};
use crate::evolution::TimePoly;
use crate::hopf::shuffle::{Shuffle, Word};
use crate::scalar::{Rational, TargetAlgebra};

/// Letters, one field `f_a` and one time coefficient `λ_a` per letter.
#[derive(Clone, Debug, PartialEq)]
pub struct WordSystem {
    alphabet: String,
    fields: Vec<PolyVectorField>,
    lambdas: Vec<TimePoly>,
}

impl WordSystem {
    pub fn new(alphabet: &str, fields: Vec<PolyVectorField>, lambdas: Vec<TimePoly>) -> Result<Self> {
        Shuffle::new(alphabet)?;
        let n = alphabet.chars().count();
        if fields.len() != n || lambdas.len() != n {
            return Err(Error::InvalidArgument(format!("{n} letters need {n} fields and {n} time coefficients")));
        }
        let d = fields[0].nvars();
        if fields.iter().any(|f| f.nvars() != d || f.dim() != d) {
            return Err(Error::InvalidArgument("word fields must all map ℝ^d → ℝ^d for one d".into()));
        }
        Ok(Self { alphabet: alphabet.to_owned(), fields, lambdas })
    }

    /// Every letter with `λ ≡ 1`.
    pub fn autonomous(alphabet: &str, fields: Vec<PolyVectorField>) -> Result<Self> {
        let lambdas = vec![TimePoly::constant(Rational::from_integer(1.into())); fields.len()];
        Self::new(alphabet, fields, lambdas)
    }

    pub fn alphabet(&self) -> &str {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.fields[0].nvars()
    }

    pub fn fields(&self) -> &[PolyVectorField] {
        &self.fields
    }

    pub fn lambdas(&self) -> &[TimePoly] {
        &self.lambdas
    }

    /// `{alphabet, fields: [field], lambdas: [[coeff]]}`; `lambdas` may be
    /// omitted for `λ ≡ 1`.
    pub fn to_json(&self) -> Value {
        json!({
            "alphabet": self.alphabet,
            "fields": self.fields.iter().map(PolyVectorField::to_json).collect::<Vec<_>>(),
            "lambdas": self.lambdas.iter().map(TimePoly::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let alphabet = v.get("alphabet").and_then(Value::as_str).ok_or_else(|| Error::Parse("word system: missing `alphabet`".into()))?;
        let fields = v
            .get("fields")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("word system: missing `fields`".into()))?
            .iter()
            .map(PolyVectorField::from_json)
            .collect::<Result<Vec<_>>>()?;
        match v.get("lambdas") {
            None | Some(Value::Null) => Self::autonomous(alphabet, fields),
            Some(Value::Array(ls)) => {
                let lambdas = ls.iter().map(TimePoly::from_json).collect::<Result<Vec<_>>>()?;
                Self::new(alphabet, fields, lambdas)
            }
            Some(other) => Err(Error::Parse(format!("word system: bad `lambdas` {other}"))),
        }
    }

    /// `Σ_a λ_a(t) f_a` evaluated at a fixed time.
    pub fn frozen(&self, t: &Rational) -> PolyVectorField {
        let mut acc = self.fields[0].scaled(&self.lambdas[0].eval(t));
        for (f, l) in self.fields.iter().zip(&self.lambdas).skip(1) {
            acc = acc.plus(&f.scaled(&l.eval(t)));
        }
        acc
    }

    fn letters(&self) -> u8 {
        self.fields.len() as u8
    }
}

/// Symbolic `f_w` for every word of length `1..=n`, grouped by length.
fn basis_by_length(sys: &WordSystem, n: u32) -> Vec<BTreeMap<Word, PolyVectorField>> {
    let mut levels = vec![BTreeMap::from([(Vec::new(), PolyVectorField::identity(sys.dim()))])];
    for k in 1..=n as usize {
        let prev = &levels[k - 1];
        let mut level = BTreeMap::new();
        for c in 0..sys.letters() {
            let fc = &sys.fields[c as usize];
            for (w, fw) in prev {
                let mut cw = vec![c];
                cw.extend_from_slice(w);
                let v = if w.is_empty() { fc.clone() } else { fw.derivative_along(fc) };
                level.insert(cw, v);
            }
        }
        levels.push(level);
    }
    levels
}

/// `f_w` as a polynomial field; `f_∅` is the identity.
pub fn word_basis_function(sys: &WordSystem, w: &[u8]) -> Result<PolyVectorField> {
    if let Some(&l) = w.iter().find(|&&l| l >= sys.letters()) {
        return Err(Error::InvalidArgument(format!("letter index {l} outside the alphabet")));
    }
    let mut f = PolyVectorField::identity(sys.dim());
    for (i, &c) in w.iter().enumerate().rev() {
        let fc = &sys.fields[c as usize];
        f = if i == w.len() - 1 { fc.clone() } else { f.derivative_along(fc) };
    }
    Ok(f)
}

/// The word series truncated at word length `n`.
pub fn wordseries_partial<B: TargetAlgebra>(
    delta: &(dyn Fn(&[u8]) -> B + Sync),
    sys: &WordSystem,
    x: &[Rational],
    n: u32,
) -> Result<SeriesTerms<B>> {
    if x.len() != sys.dim() {
        return Err(Error::InvalidArgument(format!("the point needs {} coordinates", sys.dim())));
    }
    let levels = basis_by_length(sys, n);
    let increments = levels
        .iter()
        .map(|level| {
            let mut inc = vec![B::zero(); x.len()];
            for (w, fw) in level {
                let c = delta(w);
                if c.is_zero() {
                    continue;
                }
                for (acc, v) in inc.iter_mut().zip(fw.eval(x)) {
                    if !v.is_zero() {
                        *acc = acc.plus(&c.scaled(&v));
                    }
                }
            }
            inc
        })
        .collect();
    Ok(SeriesTerms { increments })
}

/// `δ(a₁…a_n)(t) = ∫_{0<t₁<…<t_n<t} λ_{a₁}(t₁)…λ_{a_n}(t_n) dt` for all words
/// of length `≤ n`, built by `δ(wc) = ∫₀ᵗ δ(w)(s) λ_c(s) ds`.
pub fn iterated_integrals(sys: &WordSystem, n: u32) -> BTreeMap<Word, TimePoly> {
    let mut out = BTreeMap::from([(Vec::new(), TimePoly::one())]);
    let mut frontier = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for c in 0..sys.letters() {
                let v = out[w].times(&sys.lambdas[c as usize]).integral();
                let mut wc = w.clone();
                wc.push(c);
                out.insert(wc.clone(), v);
                next.push(wc);
            }
        }
        frontier = next;
    }
    out
}

/// The iterated-integral character on the shuffle algebra of the system's
/// alphabet, given by its values on Lyndon words of length `≤ n`.
pub fn iterated_integral_character(sys: &WordSystem, n: u32) -> Result<Character<TimePoly>> {
    let shuffle = Shuffle::new(&sys.alphabet)?;
    let all = iterated_integrals(sys, n);
    let values: Vec<_> = shuffle
        .lyndon_basis(n)
        .into_iter()
        .map(|w| (shuffle.lyndon_generator(&w), all[&w].clone()))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let hopf: Arc<dyn crate::HopfAlgebra> = Arc::new(shuffle);
    Character::new(hopf, n, values)
}
