//! The Faà di Bruno Hopf algebra `K[a₁,a₂,…]`, `|a_n| = n`, in the
//! a-basis and in the rescaled basis `X_n = (n+1)!·a_n`. In both bases
//! `a₀ = X₀ = 1`.

use num_bigint::BigInt;
use num_traits::One;

use super::bell::bell_partial_vector;
use super::{Caches, HopfAlgebra};
use crate::graded::{Generator, GradedVector, Monomial, MonoidKind, TensorVector};
use crate::scalar::{binomial, factorial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FdbBasis {
    A,
    X,
}

impl FdbBasis {
    fn prefix(self) -> &'static str {
        match self {
            FdbBasis::A => "a",
            FdbBasis::X => "X",
        }
    }
}

pub struct FaaDiBruno {
    basis: FdbBasis,
    caches: Caches,
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn generator(basis: FdbBasis, n: u32) -> Generator {
    Generator::new(format!("{}{}", basis.prefix(), n), n)
}

/// The monomial of `a_n` (or `X_n`); the unit for `n = 0`.
pub fn variable(basis: FdbBasis, n: u32) -> Monomial {
    if n == 0 {
        Monomial::unit(MonoidKind::Commutative)
    } else {
        Monomial::generator(MonoidKind::Commutative, generator(basis, n))
    }
}

/// `Π variable(i)^{powers[i−1]}`.
fn power_product(basis: FdbBasis, powers: &[u32]) -> Monomial {
    let mut factors = Vec::new();
    for (i, &p) in powers.iter().enumerate() {
        for _ in 0..p {
            factors.push(generator(basis, i as u32 + 1));
        }
    }
    Monomial::from_factors(MonoidKind::Commutative, factors)
}

/// Index `n` of `a_n` or `X_n`, which is its degree.
pub fn index_of(g: &Generator) -> u32 {
    g.degree()
}

/// Multiplicity vectors `(β₁,…,β_n)` with `Σ i·βᵢ = total` and `Σ βᵢ ≤ max_parts`.
fn weighted_multiplicities(n: u32, total: u32, max_parts: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut betas = vec![0u32; n as usize];
    fn rec(i: usize, sum_left: u32, parts_left: u32, betas: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == betas.len() {
            if sum_left == 0 {
                out.push(betas.clone());
            }
            return;
        }
        let size = i as u32 + 1;
        let mut b = 0;
        while b <= parts_left && b * size <= sum_left {
            betas[i] = b;
            rec(i + 1, sum_left - b * size, parts_left - b, betas, out);
            b += 1;
        }
        betas[i] = 0;
    }
    rec(0, total, max_parts, &mut betas, &mut out);
    out
}

/// `Δ(a_n) = Σ_r Σ_β (r+1)!/(β₀!β₁!⋯β_n!) a_r ⊗ a₁^{β₁}⋯a_n^{β_n}` with
/// `Σ iβᵢ = n−r`, `Σ_{i≥0} βᵢ = r+1`.
pub fn coproduct_a_multinomial(n: u32) -> TensorVector {
    let mut out = TensorVector::zero();
    for r in 0..=n {
        for betas in weighted_multiplicities(n, n - r, r + 1) {
            let used: u32 = betas.iter().sum();
            let beta0 = r + 1 - used;
            let denom = betas.iter().fold(factorial(beta0), |acc, &b| acc * factorial(b));
            let c = Rational::new(factorial(r + 1), denom);
            out.add_term(variable(FdbBasis::A, r), power_product(FdbBasis::A, &betas), c);
        }
    }
    out
}

/// `Δ(a_n) = Σ_r a_r ⊗ (r+1)!/(n+1)!·B_{n+1,r+1}(1!a₀, 2!a₁, …, (n−r+1)!a_{n−r})`.
pub fn coproduct_a_bell(n: u32) -> TensorVector {
    let mut out = TensorVector::zero();
    for r in 0..=n {
        let xs: Vec<GradedVector> = (1..=n - r + 1)
            .map(|j| GradedVector::term(variable(FdbBasis::A, j - 1), fact(j)))
            .collect();
        let bell = bell_partial_vector(n + 1, r + 1, &xs).scaled(&(fact(r + 1) / fact(n + 1)));
        for (m, c) in bell.iter() {
            out.add_term(variable(FdbBasis::A, r), m.clone(), c.clone());
        }
    }
    out
}

/// `Δ(X_n) = Σ_k X_k ⊗ B_{n+1,k+1}(X₀, X₁, …, X_{n−k})`.
pub fn coproduct_x_bell(n: u32) -> TensorVector {
    let mut out = TensorVector::zero();
    for k in 0..=n {
        let xs: Vec<GradedVector> =
            (0..=n - k).map(|j| GradedVector::from_monomial(variable(FdbBasis::X, j))).collect();
        for (m, c) in bell_partial_vector(n + 1, k + 1, &xs).iter() {
            out.add_term(variable(FdbBasis::X, k), m.clone(), c.clone());
        }
    }
    out
}

/// Compositions of `n` into exactly `parts` positive parts.
pub fn compositions(n: u32, parts: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=n.saturating_sub(parts - 1) {
        for mut rest in compositions(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Tuples `(m₁,…,m_r)` of nonnegative integers with `Σ mᵢ = r` and
/// `m₁+⋯+m_h ≥ h` for `h < r`.
pub fn admissible_tuples(r: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut ms = Vec::with_capacity(r as usize);
    fn rec(r: u32, partial: u32, ms: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let h = ms.len() as u32;
        if h == r {
            if partial == r {
                out.push(ms.clone());
            }
            return;
        }
        for m in 0..=(r - partial) {
            let s = partial + m;
            if h + 1 < r && s < h + 1 {
                continue;
            }
            ms.push(m);
            rec(r, s, ms, out);
            ms.pop();
        }
    }
    rec(r, 0, &mut ms, &mut out);
    out
}

/// `λ(n₁,…,n_r) = Σ binom(n₁+1,m₁)⋯binom(n_r+1,m_r)` over admissible tuples.
pub fn lambda(ns: &[u32]) -> BigInt {
    admissible_tuples(ns.len() as u32)
        .iter()
        .map(|ms| ns.iter().zip(ms).fold(BigInt::one(), |acc, (&n, &m)| acc * binomial(n + 1, m)))
        .sum()
}

/// `S(a_n) = −a_n − Σ_{r=1}^{n−1} (−1)^r Σ_{n₁+⋯+n_{r+1}=n} λ(n₁,…,n_r) a_{n₁}⋯a_{n_{r+1}}`,
/// abelianised.
pub fn antipode_a(n: u32) -> GradedVector {
    antipode_with(n, FdbBasis::A, |_| Rational::one())
}

/// The same formula in the X-basis, with the factor `(n+1)!/Π(nᵢ+1)!`.
pub fn antipode_x(n: u32) -> GradedVector {
    antipode_with(n, FdbBasis::X, |parts| {
        parts.iter().fold(fact(n + 1), |acc, &p| acc / fact(p + 1))
    })
}

fn antipode_with(n: u32, basis: FdbBasis, scale: impl Fn(&[u32]) -> Rational) -> GradedVector {
    let mut out = GradedVector::term(variable(basis, n), -Rational::one());
    for r in 1..n {
        let sign = if r % 2 == 0 { -Rational::one() } else { Rational::one() };
        for parts in compositions(n, r + 1) {
            let lam = Rational::from_integer(lambda(&parts[..r as usize]));
            let m = Monomial::from_factors(MonoidKind::Commutative, parts.iter().map(|&p| generator(basis, p)).collect());
            out.add_term(m, &sign * lam * scale(&parts));
        }
    }
    out
}

/// Rewrites a polynomial in the `X_n` into the a-basis via `X_n = (n+1)!a_n`.
pub fn x_to_a(v: &GradedVector) -> GradedVector {
    GradedVector::from_terms(v.iter().map(|(m, c)| {
        let (am, scale) = monomial_x_to_a(m);
        (am, c * scale)
    }))
}

fn monomial_x_to_a(m: &Monomial) -> (Monomial, Rational) {
    let mut scale = Rational::one();
    let factors = m
        .factors()
        .iter()
        .map(|g| {
            scale *= fact(g.degree() + 1);
            generator(FdbBasis::A, g.degree())
        })
        .collect();
    (Monomial::from_factors(MonoidKind::Commutative, factors), scale)
}

pub fn tensor_x_to_a(t: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero();
    for (l, r, c) in t.iter() {
        let (al, sl) = monomial_x_to_a(l);
        let (ar, sr) = monomial_x_to_a(r);
        out.add_term(al, ar, c * sl * sr);
    }
    out
}

impl FaaDiBruno {
    pub fn new(basis: FdbBasis) -> Self {
        FaaDiBruno { basis, caches: Caches::default() }
    }

    pub fn basis_kind(&self) -> FdbBasis {
        self.basis
    }

    pub fn variable(&self, n: u32) -> Monomial {
        variable(self.basis, n)
    }
}

impl HopfAlgebra for FaaDiBruno {
    fn name(&self) -> String {
        match self.basis {
            FdbBasis::A => "fdb-a".into(),
            FdbBasis::X => "fdb-x".into(),
        }
    }

    fn kind(&self) -> MonoidKind {
        MonoidKind::Commutative
    }

    fn max_degree(&self) -> u32 {
        14
    }

    fn enumerate_generators(&self, n: u32) -> Vec<Generator> {
        if n == 0 {
            Vec::new()
        } else {
            vec![generator(self.basis, n)]
        }
    }

    fn coproduct_generator(&self, g: &Generator) -> TensorVector {
        match self.basis {
            FdbBasis::A => coproduct_a_multinomial(index_of(g)),
            FdbBasis::X => coproduct_x_bell(index_of(g)),
        }
    }

    fn explicit_antipode_generator(&self, g: &Generator) -> Option<GradedVector> {
        Some(match self.basis {
            FdbBasis::A => antipode_a(index_of(g)),
            FdbBasis::X => antipode_x(index_of(g)),
        })
    }

    fn caches(&self) -> &Caches {
        &self.caches
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{catalan, int};

    fn a(n: u32) -> Monomial {
        variable(FdbBasis::A, n)
    }

    #[test]
    fn coproduct_examples() {
        let one = a(0);
        let d1 = coproduct_a_multinomial(1);
        assert_eq!(d1.len(), 2);
        let d2 = coproduct_a_multinomial(2);
        assert_eq!(d2.len(), 3);
        assert_eq!(d2.coefficient(&a(2), &one), int(1));
        assert_eq!(d2.coefficient(&a(1), &a(1)), int(2));
        assert_eq!(d2.coefficient(&one, &a(2)), int(1));
    }

    #[test]
    fn both_a_forms_agree() {
        for n in 1..=9 {
            assert_eq!(coproduct_a_multinomial(n), coproduct_a_bell(n), "n={n}");
        }
    }

    #[test]
    fn x_basis_examples() {
        let x = |n| variable(FdbBasis::X, n);
        let d2 = coproduct_x_bell(2);
        assert_eq!(d2.coefficient(&x(1), &x(1)), int(3));
        assert_eq!(d2.coefficient(&x(2), &x(0)), int(1));
        assert_eq!(d2.coefficient(&x(0), &x(2)), int(1));
        assert_eq!(d2.len(), 3);
        for n in 1..=6 {
            assert_eq!(tensor_x_to_a(&coproduct_x_bell(n)), {
                let mut t = TensorVector::zero();
                t.add_scaled(&coproduct_a_multinomial(n), &fact(n + 1));
                t
            });
            assert_eq!(x_to_a(&antipode_x(n)), antipode_a(n).scaled(&fact(n + 1)));
        }
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode_a(1), GradedVector::term(a(1), int(-1)));
        let s2 = antipode_a(2);
        assert_eq!(s2, GradedVector::from_terms([(a(2), int(-1)), (a(1).mul(&a(1)), int(2))]));
        assert_eq!(lambda(&[1]), BigInt::from(2));
    }

    #[test]
    fn admissible_counts_are_catalan() {
        for r in 0..=6 {
            assert_eq!(BigInt::from(admissible_tuples(r).len()), catalan(r), "r={r}");
        }
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }
}
