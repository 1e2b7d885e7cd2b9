use hopfchar::control::{antipode_ratio, coproduct_ratio, operator_ratio, right_handed_check, rlb_check, Boundedness, Growth, Handedness, Operator};
use hopfchar::growth::{GrowthFamily, Weight};
use hopfchar::hopf::axioms::CheckScope;
use hopfchar::hopf::instance;
use hopfchar::scalar::{int, Rational};

fn pow() -> GrowthFamily {
    GrowthFamily::builtin("pow").unwrap()
}

fn exact(w: &Weight) -> Rational {
    w.as_exact().cloned().expect("exact weight")
}

#[test]
fn ck_coproduct_ratio_at_most_one() {
    let ck = instance("ck").unwrap();
    for k1 in 1..=3 {
        let r = coproduct_ratio(ck.as_ref(), &pow(), k1, 2 * k1, 8).unwrap();
        assert!(exact(&r.c_hat) <= int(1), "k1={k1}: {}", r.c_hat);
        assert_eq!(r.verdict, Boundedness::Bounded);
        assert_eq!(r.rows.len(), 8);
    }
}

#[test]
fn fdb_coproduct_ratio_at_most_one() {
    let fdb = instance("fdb-a").unwrap();
    for k1 in 1..=3 {
        let r = coproduct_ratio(fdb.as_ref(), &pow(), k1, 2 * k1, 8).unwrap();
        assert!(exact(&r.c_hat) <= int(1), "k1={k1}: {}", r.c_hat);
    }
}

#[test]
fn binomial_coproduct_mass_is_power_of_two() {
    let h = instance("binomial").unwrap();
    let r = coproduct_ratio(h.as_ref(), &pow(), 1, 2, 10).unwrap();
    for row in &r.rows {
        // ‖Δ(Xⁿ)‖ over ω₁ is the mass 2ⁿ, and ω₂(n) = 2ⁿ.
        assert_eq!(exact(&row.norm), int(1 << row.degree));
        assert_eq!(exact(&row.ratio), int(1));
    }
}

#[test]
fn antipode_ratios() {
    let ck = instance("ck").unwrap();
    let r = antipode_ratio(ck.as_ref(), &pow(), 1, 2, 8).unwrap();
    assert!(exact(&r.c_hat) <= int(1));

    let fdb = instance("fdb-a").unwrap();
    let r = antipode_ratio(fdb.as_ref(), &pow(), 1, 32, 8).unwrap();
    assert!(exact(&r.c_hat) <= int(1));
    assert_eq!(r.verdict, Boundedness::Bounded);

    let sh = instance("shuffle:ab").unwrap();
    let r = operator_ratio(sh.as_ref(), Operator::Antipode, &pow(), 2, 2, 6, CheckScope::Basis).unwrap();
    assert_eq!(exact(&r.c_hat), int(1));
}

#[test]
fn ratios_are_monotone_in_k2() {
    let ck = instance("ck").unwrap();
    for k2 in 2..6 {
        let lo = coproduct_ratio(ck.as_ref(), &pow(), 1, k2, 6).unwrap();
        let hi = coproduct_ratio(ck.as_ref(), &pow(), 1, k2 + 1, 6).unwrap();
        for (a, b) in lo.rows.iter().zip(&hi.rows) {
            assert!(b.ratio.le(&a.ratio));
        }
    }
}

#[test]
fn elementary_coproducts() {
    let ck = instance("ck").unwrap();
    let tau2 = ck.generators(2)[0].clone();
    let e = ck.elementary_coproduct(&tau2);
    assert_eq!(e.len(), 1);
    assert_eq!(e.mass(), int(1));
    assert!(ck.elementary_coproduct(&ck.generators(1)[0]).is_empty());

    let fdb = instance("fdb-a").unwrap();
    for n in 1..=10i64 {
        let g = fdb.generators(n as u32)[0].clone();
        assert_eq!(fdb.elementary_coproduct(&g).mass(), int(n * (n + 1) / 2 - 1), "n={n}");
    }
}

#[test]
fn elementary_is_part_of_reduced() {
    for name in ["ck", "fdb-a", "shuffle:ab", "ck2"] {
        let h = instance(name).unwrap();
        for g in h.generators_up_to(5) {
            let red = h.reduced_coproduct(&h.as_basis(&g));
            let el = h.elementary_coproduct(&g);
            assert!(el.len() <= red.len());
            for (l, r, c) in el.iter() {
                assert_eq!(&red.coefficient(l, r), c);
            }
        }
    }
}

#[test]
fn rlb_verdicts() {
    let ck = instance("ck").unwrap();
    let r = rlb_check(ck.as_ref(), 8).unwrap();
    assert_eq!(r.values, (1..=8).map(|n| int(n - 1)).collect::<Vec<_>>());
    assert_eq!((r.a.clone(), r.b.clone()), (int(1), int(0)));
    assert_eq!(r.verdict, Growth::Linear);

    let fdb = instance("fdb-a").unwrap();
    let r = rlb_check(fdb.as_ref(), 8).unwrap();
    assert_eq!(r.verdict, Growth::Superlinear);
    assert!(!r.holds());

    let sh = instance("shuffle:ab").unwrap();
    let r = rlb_check(sh.as_ref(), 7).unwrap();
    assert_eq!(r.rows.len(), 7);
}

#[test]
fn handedness() {
    let fdb = instance("fdb-a").unwrap();
    assert_eq!(right_handed_check(fdb.as_ref(), 8).unwrap().verdict, Handedness::Left);

    let ck = instance("ck").unwrap();
    let r = right_handed_check(ck.as_ref(), 6).unwrap();
    assert_eq!(r.verdict, Handedness::Right);
    assert!(r.left_violation.is_some());

    let sh = instance("shuffle:ab").unwrap();
    let r = right_handed_check(sh.as_ref(), 4).unwrap();
    assert_eq!(r.verdict, Handedness::Neither);
    let left = r.left_violation.unwrap();
    let right = r.right_violation.unwrap();
    assert_eq!((left.generator.as_str(), left.left.as_str()), ("aab", "aa"));
    assert_eq!((right.generator.as_str(), right.right.as_str()), ("abb", "bb"));
}
