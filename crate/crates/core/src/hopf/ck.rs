//! The Connes–Kreimer Hopf algebra of rooted trees, plain or coloured.
//!
//! `Δ(τ) = Σ_{s ∈ OST(τ)} (τ∖s) ⊗ s`: the cut-off forest sits on the left,
//! the kept subtree (containing the root) on the right.

use num_traits::One;

use super::tree::{forest_monomial, trees_of_order, RootedTree};
use super::{Caches, HopfAlgebra};
use crate::graded::{Generator, GradedVector, Monomial, MonoidKind, TensorVector};
use crate::scalar::{int, Rational};

pub struct ConnesKreimer {
    colours: u8,
    caches: Caches,
}

impl ConnesKreimer {
    pub fn new() -> Self {
        ConnesKreimer { colours: 0, caches: Caches::default() }
    }

    /// Trees whose nodes carry colours `0..colours`.
    pub fn coloured(colours: u8) -> Self {
        assert!(colours >= 1, "at least one colour");
        ConnesKreimer { colours, caches: Caches::default() }
    }

    pub fn colours(&self) -> u8 {
        self.colours
    }

    pub fn trees(&self, order: u32) -> Vec<RootedTree> {
        trees_of_order(order, self.colours)
    }
}

impl Default for ConnesKreimer {
    fn default() -> Self {
        Self::new()
    }
}

pub fn ck_coproduct(tree: &RootedTree) -> TensorVector {
    let mut out = TensorVector::zero();
    for (forest, kept) in tree.ordered_subtrees() {
        let right = match kept {
            Some(s) => forest_monomial(&[s]),
            None => Monomial::unit(MonoidKind::Commutative),
        };
        out.add_term(forest_monomial(&forest), right, Rational::one());
    }
    out
}

/// `S(τ) = Σ_p (−1)^{#pieces} (τ∖p)` over edge subsets `p`.
pub fn ck_antipode(tree: &RootedTree) -> GradedVector {
    let mut out = GradedVector::zero();
    for forest in tree.edge_cut_forests() {
        let sign = if forest.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(forest_monomial(&forest), int(sign));
    }
    out
}

impl HopfAlgebra for ConnesKreimer {
    fn name(&self) -> String {
        match self.colours {
            0 => "ck".into(),
            c => format!("ck{c}"),
        }
    }

    fn kind(&self) -> MonoidKind {
        MonoidKind::Commutative
    }

    fn max_degree(&self) -> u32 {
        12
    }

    fn enumerate_generators(&self, n: u32) -> Vec<Generator> {
        let mut gens: Vec<Generator> = self.trees(n).iter().map(RootedTree::to_generator).collect();
        gens.sort();
        gens
    }

    fn coproduct_generator(&self, g: &Generator) -> TensorVector {
        ck_coproduct(&RootedTree::from_generator(g).expect("generator is a tree"))
    }

    fn explicit_antipode_generator(&self, g: &Generator) -> Option<GradedVector> {
        Some(ck_antipode(&RootedTree::from_generator(g).ok()?))
    }

    fn caches(&self) -> &Caches {
        &self.caches
    }
}
