//! Partial Bell polynomials
//! `B_{n,k}(x₁,…,x_{n−k+1}) = Σ n!/(Π jᵢ!(i!)^{jᵢ}) Π xᵢ^{jᵢ}`, the sum running
//! over `Σ jᵢ = k`, `Σ i·jᵢ = n`.

use num_bigint::BigInt;

use crate::graded::GradedVector;
use crate::scalar::{factorial, Rational};

/// The terms of `B_{n,k}`: `(coefficient, multiplicities j₁…j_{n−k+1})`.
pub fn bell_terms(n: u32, k: u32) -> Vec<(BigInt, Vec<u32>)> {
    if k == 0 || k > n {
        return if n == 0 && k == 0 { vec![(BigInt::from(1), Vec::new())] } else { Vec::new() };
    }
    let len = (n - k + 1) as usize;
    let mut out = Vec::new();
    let mut js = vec![0u32; len];
    fn rec(i: usize, parts_left: u32, sum_left: u32, js: &mut Vec<u32>, n: u32, out: &mut Vec<(BigInt, Vec<u32>)>) {
        if i == js.len() {
            if parts_left == 0 && sum_left == 0 {
                let mut denom = BigInt::from(1);
                for (idx, &j) in js.iter().enumerate() {
                    denom *= factorial(j) * num_traits::pow(factorial(idx as u32 + 1), j as usize);
                }
                out.push((factorial(n) / denom, js.clone()));
            }
            return;
        }
        let size = i as u32 + 1;
        let mut j = 0;
        while j <= parts_left && j * size <= sum_left {
            js[i] = j;
            rec(i + 1, parts_left - j, sum_left - j * size, js, n, out);
            j += 1;
        }
        js[i] = 0;
    }
    rec(0, k, n, &mut js, n, &mut out);
    out
}

/// `B_{n,k}` at rational arguments (`xs[i]` is `x_{i+1}`).
pub fn bell_partial(n: u32, k: u32, xs: &[Rational]) -> Rational {
    bell_terms(n, k)
        .into_iter()
        .map(|(c, js)| {
            js.iter().enumerate().fold(Rational::from_integer(c), |acc, (i, &j)| {
                acc * num_traits::pow(xs[i].clone(), j as usize)
            })
        })
        .sum()
}

/// `B_{n,k}` at polynomial arguments in a commutative monoid algebra.
pub fn bell_partial_vector(n: u32, k: u32, xs: &[GradedVector]) -> GradedVector {
    let mut out = GradedVector::zero();
    for (c, js) in bell_terms(n, k) {
        let mut term: Option<GradedVector> = None;
        for (i, &j) in js.iter().enumerate() {
            for _ in 0..j {
                term = Some(match term {
                    None => xs[i].clone(),
                    Some(t) => t.product(&xs[i]).expect("commutative arguments"),
                });
            }
        }
        if let Some(t) = term {
            out.add_scaled(&t, &Rational::from_integer(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{binomial, int};

    #[test]
    fn small_values() {
        // B_{3,2}(x₁,x₂) = 3x₁x₂
        assert_eq!(bell_terms(3, 2), vec![(BigInt::from(3), vec![1, 1])]);
        // B_{n,n}(x₁) = x₁ⁿ
        for n in 1..8 {
            assert_eq!(bell_partial(n, n, &[int(3)]), int(3i64.pow(n)));
        }
        // B_{4,2} = 4x₁x₃ + 3x₂²
        assert_eq!(bell_partial(4, 2, &[int(1), int(2), int(5)]), int(4 * 5 + 3 * 4));
    }

    #[test]
    fn stirling_numbers_at_ones() {
        // B_{n,k}(1,…,1) = S(n,k)
        assert_eq!(bell_partial(5, 2, &vec![int(1); 4]), int(15));
        assert_eq!(bell_partial(6, 3, &vec![int(1); 4]), int(90));
    }

    #[test]
    fn lah_identity() {
        for n in 0..=10u32 {
            for r in 0..=n {
                let xs: Vec<Rational> = (1..=n - r + 1).map(|j| Rational::from_integer(factorial(j))).collect();
                let lhs = bell_partial(n + 1, r + 1, &xs);
                let rhs = Rational::from_integer(binomial(n, r) * factorial(n + 1)) / Rational::from_integer(factorial(r + 1));
                assert_eq!(lhs, rhs, "n={n} r={r}");
            }
        }
    }
}
