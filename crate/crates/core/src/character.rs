//! Truncated characters, infinitesimal characters and linear maps on a
//! combinatorial Hopf algebra, with values in a commutative target algebra.
//!
//! Characters and infinitesimal characters are stored on the generators
//! `Σ` up to the truncation degree `N`; linear maps store a full table over
//! the basis monomials of degree `≤ N`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::{Generator, Monomial, MonoidKind};
use crate::growth::{GrowthFamily, Weight};
use crate::hopf::{commutative_monomials, degree_limit, ensure_degree, instance, HopfAlgebra};
use crate::par;
use crate::scalar::{factorial, Rational, TargetAlgebra};

/// Anything that assigns a value to a basis monomial.
pub trait Functional<B: TargetAlgebra>: Sync {
    fn value(&self, m: &Monomial) -> B;
}

fn same_instance(a: &dyn HopfAlgebra, b: &dyn HopfAlgebra) -> Result<()> {
    if a.name() == b.name() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("maps live on different Hopf algebras: {} and {}", a.name(), b.name())))
    }
}

fn same_degree(a: u32, b: u32) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("truncation degrees differ: {a} and {b}")))
    }
}

/// Values on generators, shared by characters and infinitesimal characters.
#[derive(Clone)]
struct GeneratorTable<B> {
    hopf: Arc<dyn HopfAlgebra>,
    n: u32,
    values: BTreeMap<Generator, B>,
}

impl<B: TargetAlgebra> GeneratorTable<B> {
    fn new(hopf: Arc<dyn HopfAlgebra>, n: u32, values: impl IntoIterator<Item = (Generator, B)>) -> Result<Self> {
        ensure_degree(n, degree_limit(hopf.as_ref()))?;
        let mut table = BTreeMap::new();
        for (g, v) in values {
            ensure_degree(g.degree(), n)?;
            if !hopf.generators(g.degree()).contains(&g) {
                return Err(Error::UnknownGenerator(g.key().to_owned()));
            }
            if !v.is_zero() {
                table.insert(g, v);
            }
        }
        Ok(Self { hopf, n, values: table })
    }

    fn get(&self, g: &Generator) -> B {
        self.values.get(g).cloned().unwrap_or_else(B::zero)
    }

    fn from_fn(hopf: Arc<dyn HopfAlgebra>, n: u32, f: impl Fn(&Generator) -> B + Sync) -> Self {
        let gens = hopf.generators_up_to(n);
        let values = par::map(&gens, |g| f(g));
        let values = gens.into_iter().zip(values).filter(|(_, v)| !v.is_zero()).collect();
        Self { hopf, n, values }
    }

    fn eq(&self, other: &Self) -> bool {
        self.hopf.name() == other.hopf.name() && self.n == other.n && self.values == other.values
    }

    fn debug(&self, f: &mut fmt::Formatter<'_>, label: &str) -> fmt::Result {
        f.debug_struct(label)
            .field("hopf", &self.hopf.name())
            .field("n", &self.n)
            .field("values", &self.values.iter().map(|(g, v)| (g.key().to_owned(), v)).collect::<Vec<_>>())
            .finish()
    }
}

/// A character `φ: H → B` truncated at degree `N`.
#[derive(Clone)]
pub struct Character<B> {
    table: GeneratorTable<B>,
}

/// An infinitesimal character (ε-derivation) truncated at degree `N`.
#[derive(Clone)]
pub struct InfChar<B> {
    table: GeneratorTable<B>,
}

/// A linear map tabulated on every basis monomial of degree `≤ N`.
#[derive(Clone)]
pub struct LinearMap<B> {
    hopf: Arc<dyn HopfAlgebra>,
    n: u32,
    values: BTreeMap<Monomial, B>,
}

macro_rules! generator_map_common {
    ($t:ident, $label:literal) => {
        impl<B: TargetAlgebra> $t<B> {
            /// Builds the map from its values on generators of degree `≤ n`.
            pub fn new(hopf: Arc<dyn HopfAlgebra>, n: u32, values: impl IntoIterator<Item = (Generator, B)>) -> Result<Self> {
                Ok(Self { table: GeneratorTable::new(hopf, n, values)? })
            }

            /// Builds the map from a function on generators.
            pub fn from_fn(hopf: Arc<dyn HopfAlgebra>, n: u32, f: impl Fn(&Generator) -> B + Sync) -> Self {
                Self { table: GeneratorTable::from_fn(hopf, n, f) }
            }

            pub fn hopf(&self) -> &Arc<dyn HopfAlgebra> {
                &self.table.hopf
            }

            pub fn truncation(&self) -> u32 {
                self.table.n
            }

            pub fn on_generator(&self, g: &Generator) -> B {
                self.table.get(g)
            }

            /// Applies `f` to every generator value.
            pub fn map<C: TargetAlgebra>(&self, f: impl Fn(&B) -> C) -> $t<C> {
                let values = self.table.values.iter().map(|(g, v)| (g.clone(), f(v))).filter(|(_, v)| !v.is_zero()).collect();
                $t { table: GeneratorTable { hopf: Arc::clone(&self.table.hopf), n: self.table.n, values } }
            }

            /// Nonzero generator values in generator order.
            pub fn values(&self) -> impl Iterator<Item = (&Generator, &B)> {
                self.table.values.iter()
            }

            /// Value on a basis monomial; fails beyond the truncation degree.
            pub fn evaluate(&self, m: &Monomial) -> Result<B> {
                ensure_degree(m.degree(), self.table.n)?;
                Ok(self.value(m))
            }

            /// Tabulates the map on every basis monomial of degree `≤ N`.
            pub fn table(&self) -> LinearMap<B> {
                LinearMap::tabulate(Arc::clone(&self.table.hopf), self.table.n, self)
            }

            /// `{hopf, N, B, values: [{generator, value}]}`.
            pub fn to_json(&self) -> Value {
                json!({
                    "hopf": self.table.hopf.name(),
                    "N": self.table.n,
                    "B": B::NAME,
                    "values": self
                        .table
                        .values
                        .iter()
                        .map(|(g, v)| json!({ "generator": g.key(), "value": v.to_json() }))
                        .collect::<Vec<_>>(),
                })
            }

            /// Reads the format written by `to_json`.
            pub fn from_json(v: &Value) -> Result<Self> {
                let (hopf, n, values) = read_generator_file::<B>(v)?;
                Self::new(hopf, n, values)
            }
        }

        impl<B: TargetAlgebra> PartialEq for $t<B> {
            fn eq(&self, other: &Self) -> bool {
                self.table.eq(&other.table)
            }
        }

        impl<B: TargetAlgebra> fmt::Debug for $t<B> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.table.debug(f, $label)
            }
        }
    };
}

generator_map_common!(Character, "Character");
generator_map_common!(InfChar, "InfChar");

type GeneratorFile<B> = (Arc<dyn HopfAlgebra>, u32, Vec<(Generator, B)>);

fn read_generator_file<B: TargetAlgebra>(v: &Value) -> Result<GeneratorFile<B>> {
    let bad = |what: &str| Error::Parse(format!("character file: {what}"));
    let hopf = instance(v.get("hopf").and_then(Value::as_str).ok_or_else(|| bad("missing `hopf`"))?)?;
    let n = v.get("N").and_then(Value::as_u64).ok_or_else(|| bad("missing `N`"))? as u32;
    ensure_degree(n, degree_limit(hopf.as_ref()))?;
    if let Some(tag) = v.get("B").and_then(Value::as_str) {
        if tag != B::NAME {
            return Err(bad(&format!("target algebra `{tag}` where `{}` was expected", B::NAME)));
        }
    }
    let lookup = generator_lookup(hopf.as_ref(), n);
    let mut values = Vec::new();
    for entry in v.get("values").and_then(Value::as_array).ok_or_else(|| bad("missing `values`"))? {
        let key = entry.get("generator").and_then(Value::as_str).ok_or_else(|| bad("entry without `generator`"))?;
        let g = lookup.get(key).cloned().ok_or_else(|| Error::UnknownGenerator(key.to_owned()))?;
        let value = B::from_json(entry.get("value").ok_or_else(|| bad("entry without `value`"))?)?;
        values.push((g, value));
    }
    Ok((hopf, n, values))
}

/// Generators of degree `≤ n` by key.
pub fn generator_lookup(h: &dyn HopfAlgebra, n: u32) -> HashMap<String, Generator> {
    h.generators_up_to(n).into_iter().map(|g| (g.key().to_owned(), g)).collect()
}

impl<B: TargetAlgebra> Functional<B> for Character<B> {
    /// Multiplicative evaluation through the polynomial form of `m`.
    fn value(&self, m: &Monomial) -> B {
        let h = &self.table.hopf;
        if h.kind() == MonoidKind::Commutative {
            return self.on_generators(m.factors());
        }
        h.polynomial(m)
            .iter()
            .fold(B::zero(), |acc, (p, c)| acc.plus(&self.on_generators(p.factors()).scaled(c)))
    }
}

impl<B: TargetAlgebra> Character<B> {
    /// The counit `ε`, neutral for convolution.
    pub fn counit(hopf: Arc<dyn HopfAlgebra>, n: u32) -> Result<Self> {
        Self::new(hopf, n, [])
    }

    /// The unique multiplicative extension of generator values.
    pub fn extend(hopf: Arc<dyn HopfAlgebra>, n: u32, values: impl IntoIterator<Item = (Generator, B)>) -> Result<Self> {
        Self::new(hopf, n, values)
    }

    /// Generator values taken as given; callers guarantee degrees `≤ n` and
    /// no zero entries.
    pub(crate) fn from_values_unchecked(hopf: Arc<dyn HopfAlgebra>, n: u32, values: BTreeMap<Generator, B>) -> Self {
        Character { table: GeneratorTable { hopf, n, values } }
    }

    /// `Π φ(g)` over a list of generators.
    pub fn on_generators(&self, factors: &[Generator]) -> B {
        let mut acc = B::one();
        for g in factors {
            let v = self.table.get(g);
            if v.is_zero() {
                return B::zero();
            }
            acc = acc.times(&v);
        }
        acc
    }

    /// `φ⋆ψ`, computed on generators only.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        same_instance(self.hopf().as_ref(), other.hopf().as_ref())?;
        same_degree(self.truncation(), other.truncation())?;
        let h = Arc::clone(self.hopf());
        Ok(Self::from_fn(Arc::clone(&h), self.truncation(), |g| convolve_at(h.as_ref(), self, other, &h.as_basis(g))))
    }

    /// `φ∘S`, the convolution inverse.
    pub fn inverse(&self) -> Self {
        let h = Arc::clone(self.hopf());
        Self::from_fn(Arc::clone(&h), self.truncation(), |g| {
            h.default_antipode(&h.as_basis(g))
                .iter()
                .fold(B::zero(), |acc, (m, c)| acc.plus(&self.value(m).scaled(c)))
        })
    }

    /// `log φ = Σ_{m≥1} (−1)^{m+1}(φ−ε)^{⋆m}/m`, exact up to degree `N`.
    pub fn log(&self) -> InfChar<B> {
        let h = Arc::clone(self.hopf());
        let n = self.truncation();
        let shifted = LinearMap::tabulate(Arc::clone(&h), n, &Shifted(self));
        let mut sum = GeneratorSum::new(h.as_ref(), n);
        let mut power = shifted.clone();
        for m in 1..=n {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            sum.add(&power, &Rational::new(sign.into(), m.into()));
            if m < n {
                power = convolve_maps(&h, n, &power, &shifted);
            }
        }
        InfChar { table: sum.finish(h, n) }
    }

    /// Checks the character law `φ(ab) = φ(a)φ(b)` against a full table:
    /// returns the first basis monomial where the table disagrees with the
    /// multiplicative evaluation.
    pub fn first_mismatch(&self, table: &LinearMap<B>) -> Option<Monomial> {
        self.hopf().basis_up_to(self.truncation()).into_iter().find(|m| self.value(m) != table.value(m))
    }
}

/// `φ − ε`.
struct Shifted<'a, B>(&'a Character<B>);

impl<B: TargetAlgebra> Functional<B> for Shifted<'_, B> {
    fn value(&self, m: &Monomial) -> B {
        if m.is_unit() {
            B::zero()
        } else {
            self.0.value(m)
        }
    }
}

impl<B: TargetAlgebra> Functional<B> for InfChar<B> {
    /// Vanishes on the unit and on every product of two or more generators.
    fn value(&self, m: &Monomial) -> B {
        let h = &self.table.hopf;
        if h.kind() == MonoidKind::Commutative {
            return m.as_generator().map_or_else(B::zero, |g| self.table.get(g));
        }
        h.polynomial(m).iter().fold(B::zero(), |acc, (p, c)| match p.as_generator() {
            Some(g) => acc.plus(&self.table.get(g).scaled(c)),
            None => acc,
        })
    }
}

impl<B: TargetAlgebra> InfChar<B> {
    pub fn zero(hopf: Arc<dyn HopfAlgebra>, n: u32) -> Result<Self> {
        Self::new(hopf, n, [])
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        same_instance(self.hopf().as_ref(), other.hopf().as_ref())?;
        same_degree(self.truncation(), other.truncation())?;
        Ok(Self::from_fn(Arc::clone(self.hopf()), self.truncation(), |g| {
            self.on_generator(g).plus(&other.on_generator(g))
        }))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self::from_fn(Arc::clone(self.hopf()), self.truncation(), |g| self.on_generator(g).scaled(c))
    }

    /// `[η₁, η₂] = η₁⋆η₂ − η₂⋆η₁`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        same_instance(self.hopf().as_ref(), other.hopf().as_ref())?;
        same_degree(self.truncation(), other.truncation())?;
        let h = Arc::clone(self.hopf());
        Ok(Self::from_fn(Arc::clone(&h), self.truncation(), |g| {
            let x = h.as_basis(g);
            convolve_at(h.as_ref(), self, other, &x).minus(&convolve_at(h.as_ref(), other, self, &x))
        }))
    }

    /// The full commutator table, for checking the derivation law.
    pub fn bracket_table(&self, other: &Self) -> LinearMap<B> {
        let h = self.hopf();
        let n = self.truncation();
        let ab = convolve_maps(h, n, self, other);
        let ba = convolve_maps(h, n, other, self);
        ab.minus(&ba)
    }

    /// `exp η = Σ_{m≥0} η^{⋆m}/m!`, exact up to degree `N`.
    pub fn exp(&self) -> Character<B> {
        let h = Arc::clone(self.hopf());
        let sum = self.exp_sum(|sum, power, m| sum.add(power, &Rational::new(1.into(), factorial(m))));
        Character { table: sum.finish(h, self.truncation()) }
    }

    /// `exp η` as a full table over basis monomials, without assuming the
    /// result is multiplicative.
    pub fn exp_table(&self) -> LinearMap<B> {
        let h = Arc::clone(self.hopf());
        let n = self.truncation();
        let mut total = LinearMap::unit(Arc::clone(&h), n);
        let eta = self.table();
        let mut power = eta.clone();
        for m in 1..=n {
            total = total.plus(&power.scaled(&Rational::new(1.into(), factorial(m))));
            if m < n {
                power = convolve_maps(&h, n, &power, &eta);
            }
        }
        total
    }

    fn exp_sum(&self, mut add: impl FnMut(&mut GeneratorSum<B>, &LinearMap<B>, u32)) -> GeneratorSum<B> {
        let h = self.hopf();
        let n = self.truncation();
        let eta = self.table();
        let mut sum = GeneratorSum::new(h.as_ref(), n);
        let mut power = eta.clone();
        for m in 1..=n {
            add(&mut sum, &power, m);
            if m < n {
                power = convolve_maps(h, n, &power, &eta);
            }
        }
        sum
    }

    /// Checks the derivation law against a full table.
    pub fn first_mismatch(&self, table: &LinearMap<B>) -> Option<Monomial> {
        self.hopf().basis_up_to(self.truncation()).into_iter().find(|m| self.value(m) != table.value(m))
    }
}

/// Accumulates `Σ c_m·T_m(g)` over generators `g`.
struct GeneratorSum<B> {
    gens: Vec<(Generator, Monomial)>,
    sums: Vec<B>,
}

impl<B: TargetAlgebra> GeneratorSum<B> {
    fn new(h: &dyn HopfAlgebra, n: u32) -> Self {
        let gens: Vec<(Generator, Monomial)> = h.generators_up_to(n).into_iter().map(|g| (g.clone(), h.as_basis(&g))).collect();
        let sums = vec![B::zero(); gens.len()];
        Self { gens, sums }
    }

    fn add(&mut self, map: &LinearMap<B>, c: &Rational) {
        for ((_, m), s) in self.gens.iter().zip(self.sums.iter_mut()) {
            *s = s.plus(&map.value(m).scaled(c));
        }
    }

    fn finish(self, hopf: Arc<dyn HopfAlgebra>, n: u32) -> GeneratorTable<B> {
        let values = self.gens.into_iter().map(|(g, _)| g).zip(self.sums).filter(|(_, v)| !v.is_zero()).collect();
        GeneratorTable { hopf, n, values }
    }
}

impl<B: TargetAlgebra> Functional<B> for LinearMap<B> {
    fn value(&self, m: &Monomial) -> B {
        self.values.get(m).cloned().unwrap_or_else(B::zero)
    }
}

impl<B: TargetAlgebra> LinearMap<B> {
    /// Tabulates `f` on every basis monomial of degree `≤ n`.
    pub fn tabulate(hopf: Arc<dyn HopfAlgebra>, n: u32, f: &(impl Functional<B> + ?Sized)) -> Self {
        let basis = hopf.basis_up_to(n);
        let values = par::map(&basis, |m| f.value(m));
        let values = basis.into_iter().zip(values).filter(|(_, v)| !v.is_zero()).collect();
        Self { hopf, n, values }
    }

    /// `u∘ε`: 1 on the unit, 0 elsewhere.
    pub fn unit(hopf: Arc<dyn HopfAlgebra>, n: u32) -> Self {
        let mut values = BTreeMap::new();
        values.insert(Monomial::unit(hopf.kind()), B::one());
        Self { hopf, n, values }
    }

    pub fn hopf(&self) -> &Arc<dyn HopfAlgebra> {
        &self.hopf
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &B)> {
        self.values.iter()
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.plus(b))
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a.minus(b))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let values = self.values.iter().map(|(m, v)| (m.clone(), v.scaled(c))).filter(|(_, v)| !v.is_zero()).collect();
        Self { hopf: Arc::clone(&self.hopf), n: self.n, values }
    }

    fn combine(&self, other: &Self, f: impl Fn(&B, &B) -> B) -> Self {
        let mut values = BTreeMap::new();
        for m in self.values.keys().chain(other.values.keys()) {
            if values.contains_key(m) {
                continue;
            }
            let v = f(&self.value(m), &other.value(m));
            if !v.is_zero() {
                values.insert(m.clone(), v);
            }
        }
        Self { hopf: Arc::clone(&self.hopf), n: self.n.min(other.n), values }
    }

    /// `f⋆g` on the full table.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        same_instance(self.hopf.as_ref(), other.hopf.as_ref())?;
        same_degree(self.n, other.n)?;
        Ok(convolve_maps(&self.hopf, self.n, self, other))
    }
}

impl<B: TargetAlgebra> PartialEq for LinearMap<B> {
    fn eq(&self, other: &Self) -> bool {
        self.hopf.name() == other.hopf.name() && self.n == other.n && self.values == other.values
    }
}

impl<B: TargetAlgebra> fmt::Debug for LinearMap<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearMap")
            .field("hopf", &self.hopf.name())
            .field("n", &self.n)
            .field("values", &self.values.iter().map(|(m, v)| (m.encode(), v)).collect::<Vec<_>>())
            .finish()
    }
}

/// `(f⋆g)(m) = Σ c·f(μ)g(σ)` over the terms of `Δ(m)`.
pub fn convolve_at<B: TargetAlgebra>(h: &dyn HopfAlgebra, f: &(impl Functional<B> + ?Sized), g: &(impl Functional<B> + ?Sized), m: &Monomial) -> B {
    h.coproduct(m).iter().fold(B::zero(), |acc, (l, r, c)| {
        let fl = f.value(l);
        if fl.is_zero() {
            return acc;
        }
        acc.plus(&fl.times(&g.value(r)).scaled(c))
    })
}

/// `f⋆g` tabulated on every basis monomial of degree `≤ n`.
pub fn convolve_maps<B: TargetAlgebra>(
    h: &Arc<dyn HopfAlgebra>,
    n: u32,
    f: &(impl Functional<B> + ?Sized),
    g: &(impl Functional<B> + ?Sized),
) -> LinearMap<B> {
    let basis = h.basis_up_to(n);
    let values = par::map(&basis, |m| convolve_at(h.as_ref(), f, g, m));
    let values = basis.into_iter().zip(values).filter(|(_, v)| !v.is_zero()).collect();
    LinearMap { hopf: Arc::clone(h), n, values }
}

impl<B: TargetAlgebra> InfChar<B> {
    /// Value on a product of generators: the generator value for a single
    /// factor, zero otherwise.
    pub fn on_generators(&self, factors: &[Generator]) -> B {
        match factors {
            [g] => self.table.get(g),
            _ => B::zero(),
        }
    }
}

/// Where the supremum of an ℓ∞ₖ norm is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormScope {
    /// Generators of degree `≤ N`.
    Generators,
    /// All monoid monomials in the generators of degree `≤ N`, the empty
    /// monomial included.
    Monomials,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    pub hopf: String,
    pub family: String,
    pub k: u32,
    #[serde(rename = "N")]
    pub truncation: u32,
    pub over: NormScope,
    /// `sup ‖φ(τ)‖ / ω_k(|τ|)`.
    pub value: Weight,
    pub argmax: String,
    pub degree: u32,
    pub scope: &'static str,
}

/// Least `k` whose finite-degree generator norm is within the radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ControlWitness {
    pub family: String,
    pub radius: Weight,
    pub k_max: u32,
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm: Option<Weight>,
    pub scope: &'static str,
}

/// `‖b‖` as a weight, exact when the target algebra has an exact norm.
pub fn norm_weight<B: TargetAlgebra>(b: &B) -> Weight {
    b.exact_norm().map_or_else(|| Weight::Approx(b.norm()), Weight::Exact)
}

fn linf_norm_with<B: TargetAlgebra>(
    h: &Arc<dyn HopfAlgebra>,
    n: u32,
    family: &GrowthFamily,
    k: u32,
    over: NormScope,
    on_factors: impl Fn(&[Generator]) -> B + Sync,
) -> NormReport {
    let items: Vec<Monomial> = match over {
        NormScope::Generators => h.generators_up_to(n).into_iter().map(|g| Monomial::generator(MonoidKind::Commutative, g)).collect(),
        NormScope::Monomials => std::iter::once(Monomial::unit(MonoidKind::Commutative))
            .chain((1..=n).flat_map(|d| commutative_monomials(d, &|e| h.generators(e).as_ref().clone())))
            .collect(),
    };
    let ratios = par::map(&items, |m| norm_weight(&on_factors(m.factors())).ratio(&family.eval(k, m.degree())));
    let (best, value) = ratios
        .into_iter()
        .enumerate()
        .fold((None, Weight::zero()), |(bi, bw), (i, w)| if bi.is_none() || bw.lt(&w) { (Some(i), w) } else { (bi, bw) });
    let (argmax, degree) = best.map_or((String::new(), 0), |i| (items[i].encode(), items[i].degree()));
    NormReport {
        hopf: h.name(),
        family: family.name(),
        k,
        truncation: n,
        over,
        value,
        argmax,
        degree,
        scope: "finite-degree proxy",
    }
}

macro_rules! norms {
    ($t:ident) => {
        impl<B: TargetAlgebra> $t<B> {
            /// Finite-degree `ℓ∞ₖ` norm over generators or over monomials.
            pub fn linf_norm(&self, family: &GrowthFamily, k: u32, over: NormScope) -> NormReport {
                linf_norm_with(self.hopf(), self.truncation(), family, k, over, |f| self.on_generators(f))
            }

            /// The least `k ≤ k_max` with generator norm `≤ radius`.
            pub fn controlling_k(&self, family: &GrowthFamily, radius: &Weight, k_max: u32) -> ControlWitness {
                let found = (1..=k_max)
                    .map(|k| (k, self.linf_norm(family, k, NormScope::Generators).value))
                    .find(|(_, v)| v.le(radius));
                ControlWitness {
                    family: family.name(),
                    radius: radius.clone(),
                    k_max,
                    k: found.as_ref().map(|(k, _)| *k),
                    norm: found.map(|(_, v)| v),
                    scope: "finite-degree proxy",
                }
            }
        }
    };
}

norms!(Character);
norms!(InfChar);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub hopf: &'static str,
    pub family: String,
    pub value: f64,
    pub k: u32,
    /// `ω_k(1) = e^{−1/k}`.
    pub threshold: f64,
    pub generator_norm: f64,
    pub controlled: bool,
    /// `(φ⋆φ)(X)`.
    pub product_value: f64,
    /// Values of `φ⋆φ` on `X, X², X³`.
    pub product_powers: Vec<f64>,
    pub k_searched: u32,
    /// `min_k (φ⋆φ)(X) − e^{−1/k}` over the searched range.
    pub smallest_excess: f64,
    pub product_uncontrolled: bool,
    pub trace: Vec<String>,
}

/// The binomial-algebra character `φ_{0.9}` is controlled for the weights
/// `e^{−n/k}` while its convolution square `φ_{1.8}` is not.
pub fn counterexample_demo() -> Result<CounterexampleReport> {
    const VALUE: f64 = 0.9;
    const K: u32 = 10;
    const K_SEARCHED: u32 = 1_000_000;
    const TOLERANCE: f64 = 1e-12;
    let h: Arc<dyn HopfAlgebra> = Arc::new(crate::hopf::Binomial::new());
    let anti = GrowthFamily::builtin("anti")?;
    let x = crate::hopf::Binomial::x();
    let phi = Character::<f64>::new(Arc::clone(&h), 3, [(x.clone(), VALUE)])?;
    let mut trace = vec![format!("φ(X) = {VALUE} on the binomial algebra, N = 3, B = float")];

    let threshold = anti.eval(K, 1).to_f64();
    let generator_norm = phi.linf_norm(&anti, K, NormScope::Generators).value.to_f64();
    let controlled = generator_norm <= 1.0 + TOLERANCE;
    trace.push(format!("ω_{K}(1) = e^(-1/{K}) = {threshold:.12}"));
    trace.push(format!("‖φ‖ over generators at k = {K}: {VALUE}/{threshold:.12} = {generator_norm:.12}"));

    let square = phi.convolve(&phi)?;
    let product_value = square.on_generator(&x);
    let product_powers: Vec<f64> = (1..=3).map(|i| square.value(&crate::hopf::Binomial::power(i))).collect();
    trace.push(format!("(φ⋆φ)(X) = {product_value}"));
    trace.push(format!("(φ⋆φ)(X^i) for i = 1..3: {product_powers:?}"));

    let smallest_excess = (1..=K_SEARCHED).map(|k| product_value - anti.eval(k, 1).to_f64()).fold(f64::INFINITY, f64::min);
    let product_uncontrolled = smallest_excess > 0.0;
    trace.push(format!(
        "min over k ≤ {K_SEARCHED} of (φ⋆φ)(X) − e^(-1/k) = {smallest_excess:.12}; every ω_k(1) < 1 < (φ⋆φ)(X)"
    ));
    Ok(CounterexampleReport {
        hopf: "binomial",
        family: anti.name(),
        value: VALUE,
        k: K,
        threshold,
        generator_norm,
        controlled,
        product_value,
        product_powers,
        k_searched: K_SEARCHED,
        smallest_excess,
        product_uncontrolled,
        trace,
    })
}
