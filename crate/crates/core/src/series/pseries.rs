//! P-series for partitioned systems `ṗ = f(p,q)`, `q̇ = g(p,q)` indexed by
//! bicoloured trees: colour 0 (white) nodes carry `f`, colour 1 (black)
//! nodes carry `g`. A white child contributes a derivative in `p`, a black
//! child a derivative in `q`.

use serde_json::{json, Value};

use super::bseries::{differentials, sigma};
use super::poly::PolyVectorField;
use super::{powers, SeriesTerms};
use crate::error::{Error, Result};
use crate::hopf::tree::{trees_of_order, RootedTree};
use crate::scalar::{Rational, TargetAlgebra};

pub const WHITE: u8 = 0;
pub const BLACK: u8 = 1;

/// `f, g : ℝ^{2d} → ℝ^d`, variables ordered `(p₁…p_d, q₁…q_d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredPolySystem {
    d: usize,
    f: PolyVectorField,
    g: PolyVectorField,
}

impl ColouredPolySystem {
    pub fn new(f: PolyVectorField, g: PolyVectorField) -> Result<Self> {
        let d = f.dim();
        if g.dim() != d || f.nvars() != 2 * d || g.nvars() != 2 * d {
            return Err(Error::InvalidArgument(format!(
                "f and g must map ℝ^{} → ℝ^{d}; got {}→{} and {}→{}",
                2 * d,
                f.nvars(),
                f.dim(),
                g.nvars(),
                g.dim()
            )));
        }
        Ok(Self { d, f, g })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn f(&self) -> &PolyVectorField {
        &self.f
    }

    pub fn g(&self) -> &PolyVectorField {
        &self.g
    }

    /// The combined field `(f, g)` on `ℝ^{2d}`.
    pub fn joint(&self) -> PolyVectorField {
        let mut comps = self.f.components().to_vec();
        comps.extend_from_slice(self.g.components());
        PolyVectorField::new(comps).expect("same variable count")
    }

    /// `{f: field, g: field}`.
    pub fn to_json(&self) -> Value {
        json!({ "f": self.f.to_json(), "g": self.g.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let part = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("partitioned system: missing `{k}`")))
                .and_then(PolyVectorField::from_json)
        };
        Self::new(part("f")?, part("g")?)
    }

    fn field(&self, colour: Option<u8>) -> &PolyVectorField {
        if colour == Some(BLACK) {
            &self.g
        } else {
            &self.f
        }
    }

    fn lift(&self, colour: Option<u8>, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); 2 * self.d];
        let offset = if colour == Some(BLACK) { self.d } else { 0 };
        out[offset..offset + self.d].clone_from_slice(v);
        out
    }
}

/// The P-series truncated at order `n`; each increment is the vector
/// `(p-part, q-part)` of length `2d`.
pub fn pseries_partial<B: TargetAlgebra>(
    a: &(dyn Fn(&RootedTree) -> B + Sync),
    sys: &ColouredPolySystem,
    p: &[Rational],
    q: &[Rational],
    h: &Rational,
    n: u32,
) -> Result<SeriesTerms<B>> {
    let d = sys.d;
    if p.len() != d || q.len() != d {
        return Err(Error::InvalidArgument(format!("p and q need {d} coordinates each")));
    }
    let y: Vec<Rational> = p.iter().chain(q).cloned().collect();
    let diffs = differentials(n, 2, &y, &|c| sys.field(c), &|c, v| sys.lift(c, v));
    let hs = powers(h, n);
    let mut increments = vec![y.iter().map(B::from_rational).collect::<Vec<_>>()];
    increments.extend((1..=n).map(|k| {
        let mut inc = vec![B::zero(); 2 * d];
        for t in trees_of_order(k, 2) {
            let c = a(&t);
            if c.is_zero() {
                continue;
            }
            let w = &hs[k as usize] / sigma(&t);
            let offset = if t.colour() == Some(BLACK) { d } else { 0 };
            for (acc, v) in inc[offset..offset + d].iter_mut().zip(&diffs[&t]) {
                if !v.is_zero() {
                    *acc = acc.plus(&c.scaled(&(&w * v)));
                }
            }
        }
        inc
    }));
    Ok(SeriesTerms { increments })
}
