//! The polynomial algebra `K[X]` with `X` primitive.
//!
//! `Δ(Xⁱ) = Σ_k binom(i,k) Xᵏ⊗X^{i−k}` follows from multiplicativity, and
//! `S(Xⁱ) = (−1)ⁱXⁱ`. Its characters are determined by their value at `X`
//! and convolve by adding those values.

use num_traits::One;

use super::{Caches, HopfAlgebra};
use crate::graded::{Generator, GradedVector, Monomial, MonoidKind, TensorVector};
use crate::scalar::{int, Rational};

pub struct Binomial {
    caches: Caches,
}

impl Binomial {
    pub fn new() -> Self {
        Binomial { caches: Caches::default() }
    }

    pub fn x() -> Generator {
        Generator::new("X", 1)
    }

    /// The basis monomial `Xⁱ`.
    pub fn power(i: u32) -> Monomial {
        Monomial::generator(MonoidKind::Commutative, Self::x()).pow(i)
    }
}

impl Default for Binomial {
    fn default() -> Self {
        Self::new()
    }
}

impl HopfAlgebra for Binomial {
    fn name(&self) -> String {
        "binomial".into()
    }

    fn kind(&self) -> MonoidKind {
        MonoidKind::Commutative
    }

    fn max_degree(&self) -> u32 {
        64
    }

    fn enumerate_generators(&self, n: u32) -> Vec<Generator> {
        if n == 1 {
            vec![Self::x()]
        } else {
            Vec::new()
        }
    }

    fn coproduct_generator(&self, g: &Generator) -> TensorVector {
        let x = Monomial::generator(MonoidKind::Commutative, g.clone());
        let one = Monomial::unit(MonoidKind::Commutative);
        let mut t = TensorVector::zero();
        t.add_term(x.clone(), one.clone(), Rational::one());
        t.add_term(one, x, Rational::one());
        t
    }

    fn explicit_antipode_generator(&self, g: &Generator) -> Option<GradedVector> {
        Some(GradedVector::term(Monomial::generator(MonoidKind::Commutative, g.clone()), int(-1)))
    }

    fn caches(&self) -> &Caches {
        &self.caches
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::binomial;

    #[test]
    fn coproduct_carries_binomial_coefficients() {
        let h = Binomial::new();
        let d2 = h.coproduct(&Binomial::power(2));
        assert_eq!(d2.len(), 3);
        assert_eq!(d2.coefficient(&Binomial::power(1), &Binomial::power(1)), int(2));
        for i in 0..=8u32 {
            let d = h.coproduct(&Binomial::power(i));
            for k in 0..=i {
                let c = d.coefficient(&Binomial::power(k), &Binomial::power(i - k));
                assert_eq!(c, Rational::from_integer(binomial(i, k)));
            }
            assert_eq!(d.mass(), int(1 << i));
        }
    }

    #[test]
    fn antipode_alternates() {
        let h = Binomial::new();
        for i in 0..=10u32 {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            assert_eq!(*h.default_antipode(&Binomial::power(i)), GradedVector::term(Binomial::power(i), int(sign)));
        }
    }
}
