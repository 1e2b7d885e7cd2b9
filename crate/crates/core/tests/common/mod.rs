#![allow(dead_code)]

use std::sync::Arc;

use hopfchar::character::{Character, InfChar};
use hopfchar::scalar::{rat, Rational};
use hopfchar::HopfAlgebra;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small random rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 4`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

/// A random rational in `[−1, 1]` with denominator at most 8.
pub fn unit_rational(rng: &mut impl Rng) -> Rational {
    let q = rng.gen_range(1..=8);
    rat(rng.gen_range(-q..=q), q)
}

pub fn random_character(h: &Arc<dyn HopfAlgebra>, n: u32, seed: u64) -> Character<Rational> {
    let mut r = rng(seed);
    let values: Vec<_> = h.generators_up_to(n).into_iter().map(|g| (g, small_rational(&mut r))).collect();
    Character::new(Arc::clone(h), n, values).unwrap()
}

pub fn random_inf_char(h: &Arc<dyn HopfAlgebra>, n: u32, seed: u64) -> InfChar<Rational> {
    let mut r = rng(seed);
    let values: Vec<_> = h.generators_up_to(n).into_iter().map(|g| (g, small_rational(&mut r))).collect();
    InfChar::new(Arc::clone(h), n, values).unwrap()
}

/// A random polynomial field `ℝ^d → ℝ^d` of total degree `≤ 2`; the
/// second-order terms are never all zero.
pub fn random_field(d: usize, seed: u64) -> hopfchar::series::PolyVectorField {
    use hopfchar::series::Poly;
    let mut r = rng(seed);
    let mut exps: Vec<Vec<u32>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        exps.push(e);
        for j in i..d {
            let mut e = vec![0; d];
            e[i] += 1;
            e[j] += 1;
            exps.push(e);
        }
    }
    exps.push(vec![0; d]);
    loop {
        let comps: Vec<Poly> = (0..d)
            .map(|_| {
                let mut p = Poly::zero(d);
                for e in &exps {
                    if r.gen_bool(0.6) {
                        p.add_term(e.clone(), small_rational(&mut r));
                    }
                }
                p
            })
            .collect();
        if comps.iter().any(|p| p.degree() == 2) {
            return hopfchar::series::PolyVectorField::square(comps).unwrap();
        }
    }
}

/// A random point with small rational coordinates.
pub fn random_point(d: usize, seed: u64) -> Vec<Rational> {
    let mut r = rng(seed ^ 0x5eed);
    (0..d).map(|_| small_rational(&mut r)).collect()
}
