//! Rooted trees (optionally coloured) in canonical form, with enumeration,
//! ordered subtrees, edge-cut partitions, symmetry coefficients and tree
//! factorials.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::graded::{Generator, Monomial, MonoidKind};
use crate::scalar::factorial;

/// A rooted tree whose children are kept sorted, so structural equality is
/// isomorphism of rooted (coloured) trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    colour: Option<u8>,
    children: Vec<RootedTree>,
    order: u32,
}

impl RootedTree {
    pub fn leaf(colour: Option<u8>) -> Self {
        RootedTree { colour, children: Vec::new(), order: 1 }
    }

    /// The tree `[children]` with a root of the given colour.
    pub fn graft(colour: Option<u8>, mut children: Vec<RootedTree>) -> Self {
        children.sort();
        let order = 1 + children.iter().map(|c| c.order).sum::<u32>();
        RootedTree { colour, children, order }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn colour(&self) -> Option<u8> {
        self.colour
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    pub fn edges(&self) -> u32 {
        self.order - 1
    }

    /// Butcher bracket notation: `B` for a node, `[t1,t2]` for a root with
    /// children, `:c` suffixed to coloured nodes.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        self.write_into(&mut s);
        s
    }

    fn write_into(&self, s: &mut String) {
        if self.children.is_empty() {
            s.push('B');
        } else {
            s.push('[');
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                c.write_into(s);
            }
            s.push(']');
        }
        if let Some(c) = self.colour {
            s.push(':');
            s.push_str(&c.to_string());
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let tree = parse_at(bytes, &mut pos).ok_or_else(|| Error::Parse(format!("bad tree `{text}`")))?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input in tree `{text}`")));
        }
        Ok(tree)
    }

    pub fn to_generator(&self) -> Generator {
        Generator::new(self.encode(), self.order)
    }

    /// Parses a generator key, memoised since coproducts reparse often.
    pub fn from_generator(g: &Generator) -> Result<Self> {
        static CACHE: OnceLock<RwLock<HashMap<String, RootedTree>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.read().get(g.key()) {
            return Ok(t.clone());
        }
        let t = Self::parse(g.key())?;
        cache.write().insert(g.key().to_owned(), t.clone());
        Ok(t)
    }

    /// Order of the automorphism group: `σ(•) = 1`,
    /// `σ([τ₁^{m₁},…,τ_j^{m_j}]) = Π mᵢ!·σ(τᵢ)^{mᵢ}`.
    pub fn symmetry(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.children.len() {
            let mut j = i;
            while j < self.children.len() && self.children[j] == self.children[i] {
                j += 1;
            }
            let m = (j - i) as u32;
            acc *= factorial(m) * num_traits::pow(self.children[i].symmetry(), m as usize);
            i = j;
        }
        acc
    }

    /// `τ! = |τ|·Π τᵢ!`.
    pub fn tree_factorial(&self) -> BigInt {
        self.children
            .iter()
            .fold(BigInt::from(self.order), |acc, c| acc * c.tree_factorial())
    }

    /// Every way of keeping a nonempty subtree containing the root: pairs
    /// (cut-off forest, kept subtree), with repetitions.
    pub fn rooted_cuts(&self) -> Vec<(Vec<RootedTree>, RootedTree)> {
        let mut partial: Vec<(Vec<RootedTree>, Vec<RootedTree>)> = vec![(Vec::new(), Vec::new())];
        for child in &self.children {
            let child_cuts = child.rooted_cuts();
            let mut next = Vec::with_capacity(partial.len() * (child_cuts.len() + 1));
            for (forest, kept) in &partial {
                let mut f = forest.clone();
                f.push(child.clone());
                next.push((f, kept.clone()));
                for (cf, ck) in &child_cuts {
                    let mut f = forest.clone();
                    f.extend(cf.iter().cloned());
                    let mut k = kept.clone();
                    k.push(ck.clone());
                    next.push((f, k));
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|(forest, kept)| (forest, RootedTree::graft(self.colour, kept)))
            .collect()
    }

    /// Ordered subtrees: all rooted cuts plus the empty subtree, as pairs
    /// `(τ∖s, s)` with `s = None` for the empty subtree.
    pub fn ordered_subtrees(&self) -> Vec<(Vec<RootedTree>, Option<RootedTree>)> {
        let mut out: Vec<_> = self.rooted_cuts().into_iter().map(|(f, s)| (f, Some(s))).collect();
        out.push((vec![self.clone()], None));
        out
    }

    /// The forests `τ∖p` obtained by deleting each subset `p` of edges.
    pub fn edge_cut_forests(&self) -> Vec<Vec<RootedTree>> {
        self.edge_cuts()
            .into_iter()
            .map(|(mut pieces, root)| {
                pieces.push(root);
                pieces
            })
            .collect()
    }

    fn edge_cuts(&self) -> Vec<(Vec<RootedTree>, RootedTree)> {
        let mut partial: Vec<(Vec<RootedTree>, Vec<RootedTree>)> = vec![(Vec::new(), Vec::new())];
        for child in &self.children {
            let child_cuts = child.edge_cuts();
            let mut next = Vec::with_capacity(partial.len() * child_cuts.len() * 2);
            for (pieces, kept) in &partial {
                for (cp, croot) in &child_cuts {
                    let mut p = pieces.clone();
                    p.extend(cp.iter().cloned());
                    p.push(croot.clone());
                    next.push((p, kept.clone()));
                    let mut p = pieces.clone();
                    p.extend(cp.iter().cloned());
                    let mut k = kept.clone();
                    k.push(croot.clone());
                    next.push((p, k));
                }
            }
            partial = next;
        }
        partial
            .into_iter()
            .map(|(pieces, kept)| (pieces, RootedTree::graft(self.colour, kept)))
            .collect()
    }
}

fn parse_at(b: &[u8], pos: &mut usize) -> Option<RootedTree> {
    let mut children = Vec::new();
    match b.get(*pos)? {
        b'B' => *pos += 1,
        b'[' => {
            *pos += 1;
            loop {
                children.push(parse_at(b, pos)?);
                match b.get(*pos)? {
                    b',' => *pos += 1,
                    b']' => {
                        *pos += 1;
                        break;
                    }
                    _ => return None,
                }
            }
        }
        _ => return None,
    }
    let colour = if b.get(*pos) == Some(&b':') {
        *pos += 1;
        let start = *pos;
        while b.get(*pos).is_some_and(u8::is_ascii_digit) {
            *pos += 1;
        }
        Some(std::str::from_utf8(&b[start..*pos]).ok()?.parse().ok()?)
    } else {
        None
    };
    Some(RootedTree::graft(colour, children))
}

/// Colour first, then order, then children lexicographically.
impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.colour
            .cmp(&other.colour)
            .then_with(|| self.order.cmp(&other.order))
            .then_with(|| self.children.cmp(&other.children))
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl FromStr for RootedTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// The commutative monomial of a forest.
pub fn forest_monomial(trees: &[RootedTree]) -> Monomial {
    Monomial::from_factors(MonoidKind::Commutative, trees.iter().map(RootedTree::to_generator).collect())
}

/// All trees of the given order, sorted. `colours = 0` gives uncoloured
/// trees; otherwise every node carries a colour in `0..colours`.
pub fn trees_of_order(order: u32, colours: u8) -> Vec<RootedTree> {
    let mut by_order: Vec<Vec<RootedTree>> = vec![Vec::new()];
    for n in 1..=order {
        let mut out = Vec::new();
        let palette: Vec<Option<u8>> = if colours == 0 { vec![None] } else { (0..colours).map(Some).collect() };
        for forest in forests(n - 1, &by_order) {
            for &c in &palette {
                out.push(RootedTree::graft(c, forest.clone()));
            }
        }
        out.sort();
        out.dedup();
        by_order.push(out);
    }
    by_order.pop().unwrap_or_default()
}

/// Multisets of trees with total order `n`, drawn from `by_order[1..]`.
fn forests(n: u32, by_order: &[Vec<RootedTree>]) -> Vec<Vec<RootedTree>> {
    let pool: Vec<&RootedTree> = by_order.iter().skip(1).flatten().collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        remaining: u32,
        start: usize,
        pool: &[&RootedTree],
        current: &mut Vec<RootedTree>,
        out: &mut Vec<Vec<RootedTree>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in start..pool.len() {
            if pool[i].order() <= remaining {
                current.push(pool[i].clone());
                rec(remaining - pool[i].order(), i, pool, current, out);
                current.pop();
            }
        }
    }
    rec(n, 0, &pool, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> RootedTree {
        RootedTree::parse(s).unwrap()
    }

    #[test]
    fn parse_and_encode_round_trip() {
        for s in ["B", "[B]", "[B,B]", "[B,[B]]", "[[B]]", "[B:0,B:1]:1"] {
            assert_eq!(t(s).encode(), s);
        }
        assert_eq!(t("[[B],B]").encode(), "[B,[B]]");
        assert!(RootedTree::parse("[B").is_err());
        assert!(RootedTree::parse("B]").is_err());
        assert!(RootedTree::parse("").is_err());
    }

    #[test]
    fn colours_sort_before_structure() {
        let tree = t("[[B:0]:0,B:1]:0");
        assert_eq!(tree.encode(), "[[B:0]:0,B:1]:0");
    }

    #[test]
    fn counts_per_order() {
        let counts: Vec<usize> = (1..=8).map(|n| trees_of_order(n, 0).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115]);
        let coloured: Vec<usize> = (1..=5).map(|n| trees_of_order(n, 2).len()).collect();
        assert_eq!(coloured, vec![2, 4, 14, 52, 214]);
    }

    #[test]
    fn subtrees_of_small_trees() {
        let tau2 = t("[B]");
        assert_eq!(tau2.ordered_subtrees().len(), 3);
        let cherry = t("[B,B]");
        // ∅, root, root+left, root+right, whole
        assert_eq!(cherry.ordered_subtrees().len(), 5);
        assert_eq!(t("[[B]]").edge_cut_forests().len(), 4);
    }

    #[test]
    fn symmetry_and_factorial() {
        assert_eq!(t("B").symmetry(), BigInt::from(1));
        assert_eq!(t("[B,B]").symmetry(), BigInt::from(2));
        assert_eq!(t("[[B]]").symmetry(), BigInt::from(1));
        assert_eq!(t("[B,B,B]").symmetry(), BigInt::from(6));
        assert_eq!(t("[[B,B],[B,B]]").symmetry(), BigInt::from(8));
        assert_eq!(t("[B,B]").tree_factorial(), BigInt::from(3));
        assert_eq!(t("[[B]]").tree_factorial(), BigInt::from(6));
    }

    proptest! {
        #[test]
        fn encoding_round_trips(order in 1u32..7, pick in 0usize..1000) {
            let trees = trees_of_order(order, 2);
            let tree = &trees[pick % trees.len()];
            prop_assert_eq!(&RootedTree::parse(&tree.encode()).unwrap(), tree);
            prop_assert_eq!(tree.edge_cut_forests().len(), 1usize << tree.edges());
        }
    }
}
