//! Exact verification of the Hopf axioms on basis elements.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{AntipodeMethod, HopfAlgebra};
use crate::graded::{GradedVector, Monomial};
use crate::par;
use crate::report::Status;
use crate::scalar::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Every term `μ⊗σ` of `Δ(x)` has `|μ|+|σ| = |x|`.
    DegreePreservation,
    /// `x⊗1` and `1⊗x` occur with coefficient 1.
    PrimitiveTerms,
    /// `(Δ⊗id)Δ = (id⊗Δ)Δ`.
    Coassociativity,
    /// `(ε⊗id)Δ = id`.
    CounitLeft,
    /// `(id⊗ε)Δ = id`.
    CounitRight,
    /// `m(S⊗id)Δ = uε`.
    AntipodeLeft,
    /// `m(id⊗S)Δ = uε`.
    AntipodeRight,
    /// rec:1, rec:2 and the closed formula (when present) coincide.
    AntipodeAgreement,
}

pub const ALL_CHECKS: [Check; 8] = [
    Check::DegreePreservation,
    Check::PrimitiveTerms,
    Check::Coassociativity,
    Check::CounitLeft,
    Check::CounitRight,
    Check::AntipodeLeft,
    Check::AntipodeRight,
    Check::AntipodeAgreement,
];

/// Which elements are checked: the generators, or every basis monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckScope {
    Generators,
    Basis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub instance: String,
    pub degree: u32,
    pub generator: String,
    pub check: Check,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomsReport {
    pub instance: String,
    pub max_degree: u32,
    pub scope: CheckScope,
    pub records: Vec<CheckRecord>,
}

impl AxiomsReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status.is_pass())
    }

    pub fn passed_check(&self, check: Check) -> bool {
        self.records.iter().filter(|r| r.check == check).all(|r| r.status.is_pass())
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.records.iter().find(|r| !r.status.is_pass())
    }

    /// Number of distinct elements checked.
    pub fn elements(&self) -> usize {
        self.records.iter().filter(|r| r.check == Check::DegreePreservation).count()
    }
}

type Triple = BTreeMap<(Monomial, Monomial, Monomial), Rational>;

fn add_triple(t: &mut Triple, key: (Monomial, Monomial, Monomial), c: Rational) {
    let e = t.entry(key).or_insert_with(Rational::zero);
    *e += c;
}

fn diff_witness(a: &GradedVector, b: &GradedVector) -> Option<String> {
    if a == b {
        return None;
    }
    let d = a.minus(b);
    let (m, c) = d.iter().next()?;
    Some(format!("coefficient of {m} differs by {}", format_rational(c)))
}

/// Runs every check on one basis element.
pub fn check_element(h: &dyn HopfAlgebra, x: &Monomial, label: &str) -> Vec<CheckRecord> {
    let delta = h.coproduct(x);
    let unit = Monomial::unit(h.kind());
    let xv = GradedVector::from_monomial(x.clone());
    let mut out = Vec::with_capacity(ALL_CHECKS.len());
    let mut record = |check: Check, witness: Option<String>| {
        out.push(CheckRecord {
            instance: h.name(),
            degree: x.degree(),
            generator: label.to_owned(),
            check,
            status: Status::from_bool(witness.is_none()),
            witness,
        });
    };

    record(
        Check::DegreePreservation,
        delta
            .iter()
            .find(|(l, r, _)| l.degree() + r.degree() != x.degree())
            .map(|(l, r, _)| format!("term {l}⊗{r} has degree {}", l.degree() + r.degree())),
    );

    let primitive = if x.is_unit() {
        (delta.coefficient(&unit, &unit) != Rational::one()).then(|| "1⊗1 coefficient is not 1".to_owned())
    } else if delta.coefficient(x, &unit) != Rational::one() {
        Some(format!("coefficient of {x}⊗1 is {}", format_rational(&delta.coefficient(x, &unit))))
    } else if delta.coefficient(&unit, x) != Rational::one() {
        Some(format!("coefficient of 1⊗{x} is {}", format_rational(&delta.coefficient(&unit, x))))
    } else {
        None
    };
    record(Check::PrimitiveTerms, primitive);

    let mut left = Triple::new();
    let mut right = Triple::new();
    for (l, r, c) in delta.iter() {
        for (ll, lr, d) in h.coproduct(l).iter() {
            add_triple(&mut left, (ll.clone(), lr.clone(), r.clone()), c * d);
        }
        for (rl, rr, d) in h.coproduct(r).iter() {
            add_triple(&mut right, (l.clone(), rl.clone(), rr.clone()), c * d);
        }
    }
    left.retain(|_, c| !c.is_zero());
    right.retain(|_, c| !c.is_zero());
    let coassoc = if left == right {
        None
    } else {
        let key = left
            .iter()
            .find(|(k, v)| right.get(*k) != Some(*v))
            .map(|(k, _)| k.clone())
            .or_else(|| right.keys().find(|k| !left.contains_key(*k)).cloned())
            .expect("maps differ");
        Some(format!("term {}⊗{}⊗{} differs", key.0, key.1, key.2))
    };
    record(Check::Coassociativity, coassoc);

    let mut counit_l = GradedVector::zero();
    let mut counit_r = GradedVector::zero();
    for (l, r, c) in delta.iter() {
        if l.is_unit() {
            counit_l.add_term(r.clone(), c.clone());
        }
        if r.is_unit() {
            counit_r.add_term(l.clone(), c.clone());
        }
    }
    record(Check::CounitLeft, diff_witness(&counit_l, &xv));
    record(Check::CounitRight, diff_witness(&counit_r, &xv));

    let expected = if x.is_unit() { GradedVector::unit(h.kind()) } else { GradedVector::zero() };
    let mut anti_l = GradedVector::zero();
    let mut anti_r = GradedVector::zero();
    for (l, r, c) in delta.iter() {
        anti_l.add_scaled(&h.vector_product(&h.default_antipode(l), &GradedVector::from_monomial(r.clone())), c);
        anti_r.add_scaled(&h.vector_product(&GradedVector::from_monomial(l.clone()), &h.default_antipode(r)), c);
    }
    record(Check::AntipodeLeft, diff_witness(&anti_l, &expected));
    record(Check::AntipodeRight, diff_witness(&anti_r, &expected));

    let rec1 = h.antipode(x, AntipodeMethod::Rec1).expect("recursive antipode");
    let rec2 = h.antipode(x, AntipodeMethod::Rec2).expect("recursive antipode");
    let agreement = diff_witness(&rec1, &rec2).map(|w| format!("rec:1 vs rec:2: {w}")).or_else(|| {
        h.antipode(x, AntipodeMethod::Explicit)
            .and_then(|e| diff_witness(&rec1, &e).map(|w| format!("rec:1 vs explicit: {w}")))
    });
    record(Check::AntipodeAgreement, agreement);
    out
}

/// Elements covered by a scope, with their labels, in increasing degree.
pub fn scope_elements(h: &dyn HopfAlgebra, max_degree: u32, scope: CheckScope) -> Vec<(Monomial, String)> {
    match scope {
        CheckScope::Generators => h
            .generators_up_to(max_degree)
            .into_iter()
            .map(|g| (h.as_basis(&g), g.key().to_owned()))
            .collect(),
        CheckScope::Basis => (1..=max_degree)
            .flat_map(|d| h.basis(d).as_ref().clone())
            .map(|m| {
                let label = m.encode();
                (m, label)
            })
            .collect(),
    }
}

/// Checks every element of the scope up to `max_degree`. Elements of one
/// degree run in parallel; degrees run in increasing order so that memo
/// tables for lower degrees are filled first.
pub fn check_hopf_axioms(h: &dyn HopfAlgebra, max_degree: u32, scope: CheckScope) -> AxiomsReport {
    let elements = scope_elements(h, max_degree, scope);
    let mut records = Vec::new();
    for d in 1..=max_degree {
        let level: Vec<_> = elements.iter().filter(|(m, _)| m.degree() == d).collect();
        for recs in par::map(&level, |(m, label)| check_element(h, m, label)) {
            records.extend(recs);
        }
    }
    AxiomsReport { instance: h.name(), max_degree, scope, records }
}

/// The scope the axiom suite uses by default for an instance: the full basis
/// for the shuffle and binomial algebras, generators elsewhere.
pub fn default_scope(h: &dyn HopfAlgebra) -> CheckScope {
    let name = h.name();
    if name.starts_with("shuffle:") || name == "binomial" {
        CheckScope::Basis
    } else {
        CheckScope::Generators
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{instance, ConnesKreimer};

    #[test]
    fn small_instances_pass() {
        for name in ["ck", "ck2", "shuffle:ab", "fdb-a", "fdb-x", "binomial"] {
            let h = instance(name).unwrap();
            let report = check_hopf_axioms(h.as_ref(), 4, default_scope(h.as_ref()));
            assert!(report.passed(), "{name}: {:?}", report.first_failure());
        }
    }

    #[test]
    fn basis_scope_covers_forests() {
        let ck = ConnesKreimer::new();
        let report = check_hopf_axioms(&ck, 3, CheckScope::Basis);
        assert_eq!(report.elements(), 1 + 2 + 4);
        assert!(report.passed());
    }
}
