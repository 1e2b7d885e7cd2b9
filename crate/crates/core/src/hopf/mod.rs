//! Combinatorial Hopf algebras: the common interface, the concrete
//! instances, the generic recursive antipodes and the axiom checker.

pub mod axioms;
pub mod bell;
pub mod binomial;
pub mod ck;
pub mod fdb;
pub mod lyndon;
pub mod shuffle;
pub mod tree;

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_traits::One;
use parking_lot::RwLock;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{Generator, GradedVector, Monomial, MonoidKind, TensorVector};
use crate::scalar::Rational;

pub use binomial::Binomial;
pub use ck::ConnesKreimer;
pub use fdb::{FaaDiBruno, FdbBasis};
pub use shuffle::Shuffle;

/// Which antipode to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AntipodeMethod {
    /// The instance's closed formula.
    Explicit,
    /// `S(x) = −x − Σ S(x′)x″` over the reduced coproduct.
    Rec1,
    /// `S(x) = −x − Σ x′S(x″)` over the reduced coproduct.
    Rec2,
}

type Memo<K, V> = RwLock<HashMap<K, Arc<V>>>;

fn memoised<K: Clone + Eq + Hash, V>(memo: &Memo<K, V>, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
    if let Some(v) = memo.read().get(key) {
        return Arc::clone(v);
    }
    let v = Arc::new(compute());
    Arc::clone(memo.write().entry(key.clone()).or_insert(v))
}

/// Per-instance memo tables. Safe for concurrent readers and writers; a
/// value computed twice by racing workers is identical, so either copy wins.
#[derive(Default)]
pub struct Caches {
    generators: Memo<u32, Vec<Generator>>,
    basis: Memo<u32, Vec<Monomial>>,
    coproduct: Memo<Monomial, TensorVector>,
    antipode: Memo<(AntipodeMethod, Monomial), GradedVector>,
    polynomial: Memo<Monomial, GradedVector>,
}

/// A graded connected Hopf algebra with a distinguished basis of monomials
/// and a graded generating set `Σ`.
///
/// For every instance except the shuffle algebra the basis monomials are
/// exactly the commutative monomials in `Σ`. The shuffle algebra uses the
/// word basis; its Lyndon generators are related to words by
/// [`HopfAlgebra::polynomial`].
pub trait HopfAlgebra: Send + Sync {
    fn name(&self) -> String;

    /// Monoid kind of the basis monomials.
    fn kind(&self) -> MonoidKind;

    /// Largest degree this instance accepts by default.
    fn max_degree(&self) -> u32;

    fn enumerate_generators(&self, n: u32) -> Vec<Generator>;

    /// `Δ` on a generator.
    fn coproduct_generator(&self, g: &Generator) -> TensorVector;

    /// Closed-form antipode on a generator, if the instance has one.
    fn explicit_antipode_generator(&self, g: &Generator) -> Option<GradedVector>;

    fn caches(&self) -> &Caches;

    /// Basis monomials of degree `n`.
    fn enumerate_basis(&self, n: u32) -> Vec<Monomial> {
        commutative_monomials(n, &|d| self.generators(d).as_ref().clone())
    }

    /// Product of two basis monomials.
    fn product(&self, a: &Monomial, b: &Monomial) -> GradedVector {
        GradedVector::from_monomial(a.mul(b))
    }

    /// `Δ` on a basis monomial; multiplicative by default.
    fn compute_coproduct(&self, m: &Monomial) -> TensorVector {
        let mut acc = TensorVector::pure(Monomial::unit(self.kind()), Monomial::unit(self.kind()));
        for g in m.factors() {
            acc = acc.product(&self.coproduct_generator(g));
        }
        acc
    }

    /// Closed-form antipode on a basis monomial; multiplicative by default,
    /// which is correct for commutative algebras.
    fn compute_explicit_antipode(&self, m: &Monomial) -> Option<GradedVector> {
        let mut acc = GradedVector::unit(self.kind());
        for g in m.factors() {
            acc = acc.product(&self.explicit_antipode_generator(g)?).ok()?;
        }
        Some(acc)
    }

    /// The basis element corresponding to a generator.
    fn as_basis(&self, g: &Generator) -> Monomial {
        Monomial::generator(self.kind(), g.clone())
    }

    /// Whether a basis monomial is (the image of) a single generator.
    fn is_generator(&self, m: &Monomial) -> bool {
        m.as_generator().is_some()
    }

    /// Expresses a basis monomial as a polynomial in the generators
    /// (commutative monomials over `Σ`).
    fn compute_polynomial(&self, m: &Monomial) -> GradedVector {
        GradedVector::from_monomial(m.clone())
    }

    fn generators(&self, n: u32) -> Arc<Vec<Generator>> {
        memoised(&self.caches().generators, &n, || self.enumerate_generators(n))
    }

    /// All generators with `1 ≤ degree ≤ n`.
    fn generators_up_to(&self, n: u32) -> Vec<Generator> {
        (1..=n).flat_map(|d| self.generators(d).as_ref().clone()).collect()
    }

    fn basis(&self, n: u32) -> Arc<Vec<Monomial>> {
        memoised(&self.caches().basis, &n, || self.enumerate_basis(n))
    }

    /// All basis monomials with `degree ≤ n`, the unit included.
    fn basis_up_to(&self, n: u32) -> Vec<Monomial> {
        (0..=n).flat_map(|d| self.basis(d).as_ref().clone()).collect()
    }

    fn coproduct(&self, m: &Monomial) -> Arc<TensorVector> {
        memoised(&self.caches().coproduct, m, || self.compute_coproduct(m))
    }

    /// `Δ(x) − x⊗1 − 1⊗x` for a basis monomial of positive degree.
    fn reduced_coproduct(&self, m: &Monomial) -> TensorVector {
        self.coproduct(m).reduced()
    }

    /// Generator⊗generator part of the reduced coproduct of a generator.
    fn elementary_coproduct(&self, g: &Generator) -> TensorVector {
        self.reduced_coproduct(&self.as_basis(g))
            .filter(|l, r| self.is_generator(l) && self.is_generator(r))
    }

    fn polynomial(&self, m: &Monomial) -> Arc<GradedVector> {
        memoised(&self.caches().polynomial, m, || self.compute_polynomial(m))
    }

    /// `S` on a basis monomial. `None` only for [`AntipodeMethod::Explicit`]
    /// on instances without a closed formula.
    fn antipode(&self, m: &Monomial, method: AntipodeMethod) -> Option<Arc<GradedVector>> {
        let key = (method, m.clone());
        if let Some(v) = self.caches().antipode.read().get(&key) {
            return Some(Arc::clone(v));
        }
        let value = if m.is_unit() {
            GradedVector::unit(self.kind())
        } else {
            match method {
                AntipodeMethod::Explicit => self.compute_explicit_antipode(m)?,
                AntipodeMethod::Rec1 | AntipodeMethod::Rec2 => {
                    let mut s = GradedVector::term(m.clone(), -Rational::one());
                    for (l, r, c) in self.reduced_coproduct(m).iter() {
                        let term = if method == AntipodeMethod::Rec1 {
                            self.vector_product(&*self.antipode(l, method)?, &GradedVector::from_monomial(r.clone()))
                        } else {
                            self.vector_product(&GradedVector::from_monomial(l.clone()), &*self.antipode(r, method)?)
                        };
                        s.add_scaled(&term, &-c);
                    }
                    s
                }
            }
        };
        Some(memoised(&self.caches().antipode, &key, || value))
    }

    /// The explicit antipode when available, else the rec:1 recursion.
    fn default_antipode(&self, m: &Monomial) -> Arc<GradedVector> {
        self.antipode(m, AntipodeMethod::Explicit)
            .or_else(|| self.antipode(m, AntipodeMethod::Rec1))
            .expect("recursive antipode always exists")
    }

    fn vector_product(&self, u: &GradedVector, v: &GradedVector) -> GradedVector {
        let mut out = GradedVector::zero();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                out.add_scaled(&self.product(a, b), &(x * y));
            }
        }
        out
    }

    fn coproduct_vector(&self, x: &GradedVector) -> TensorVector {
        let mut out = TensorVector::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.coproduct(m), c);
        }
        out
    }

    fn antipode_vector(&self, x: &GradedVector, method: AntipodeMethod) -> Option<GradedVector> {
        let mut out = GradedVector::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&*self.antipode(m, method)?, c);
        }
        Some(out)
    }

    /// `ε(x)`: the coefficient of the unit.
    fn counit(&self, x: &GradedVector) -> Rational {
        x.coefficient(&Monomial::unit(self.kind()))
    }
}

/// Commutative monomials of degree `n` over the generators produced by `gens`.
pub fn commutative_monomials(n: u32, gens: &dyn Fn(u32) -> Vec<Generator>) -> Vec<Monomial> {
    let pool: Vec<Generator> = (1..=n).flat_map(gens).collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, start: usize, pool: &[Generator], current: &mut Vec<Generator>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial::from_factors(MonoidKind::Commutative, current.clone()));
            return;
        }
        for i in start..pool.len() {
            if pool[i].degree() <= remaining {
                current.push(pool[i].clone());
                rec(remaining - pool[i].degree(), i, pool, current, out);
                current.pop();
            }
        }
    }
    rec(n, 0, &pool, &mut current, &mut out);
    out.sort();
    out
}

/// Instance names accepted by [`instance`].
pub const INSTANCE_NAMES: [&str; 6] = ["ck", "ck2", "shuffle:<alphabet>", "fdb-a", "fdb-x", "binomial"];

/// Builds an instance from its selection string.
pub fn instance(name: &str) -> Result<Arc<dyn HopfAlgebra>> {
    if let Some(alphabet) = name.strip_prefix("shuffle:") {
        return Ok(Arc::new(Shuffle::new(alphabet)?));
    }
    Ok(match name {
        "ck" => Arc::new(ConnesKreimer::new()),
        "ck2" => Arc::new(ConnesKreimer::coloured(2)),
        "fdb-a" => Arc::new(FaaDiBruno::new(FdbBasis::A)),
        "fdb-x" => Arc::new(FaaDiBruno::new(FdbBasis::X)),
        "binomial" => Arc::new(Binomial::new()),
        _ => return Err(Error::UnknownHopf(name.to_owned())),
    })
}

static LIMIT_OVERRIDE: AtomicU32 = AtomicU32::new(0);

/// Replaces every instance's compiled safety limit (`None` restores them).
pub fn set_degree_limit(limit: Option<u32>) {
    LIMIT_OVERRIDE.store(limit.unwrap_or(0), AtomicOrdering::Relaxed);
}

/// The largest truncation degree accepted for `h`.
pub fn degree_limit(h: &dyn HopfAlgebra) -> u32 {
    match LIMIT_OVERRIDE.load(AtomicOrdering::Relaxed) {
        0 => h.max_degree(),
        n => n,
    }
}

/// Checks `degree ≤ max` with a uniform error.
pub fn ensure_degree(degree: u32, max: u32) -> Result<()> {
    if degree > max {
        Err(Error::DegreeOverflow { degree, max })
    } else {
        Ok(())
    }
}
