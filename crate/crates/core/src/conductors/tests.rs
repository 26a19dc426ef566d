use std::collections::BTreeMap;

use super::*;
use crate::base::Var;
use crate::expr::{parse_ratfunc, Vocabulary};
use proptest::prelude::*;

fn le(s: &str, p: u32) -> LocalElem {
    LocalElem::new(parse_ratfunc(s, p, &Vocabulary::LOCAL).unwrap())
}

fn chi(p: u32, comps: &[&str]) -> Character {
    Character::new(WittVec::new(p, comps.iter().map(|c| le(c, p)).collect())).unwrap()
}

fn rf(s: &str, p: u32) -> RatFunc {
    parse_ratfunc(s, p, &Vocabulary::LOCAL).unwrap()
}

#[test]
fn pure_poles() {
    for p in [2u32, 3, 5] {
        for n in 1..10i64 {
            let c = chi(p, &[&format!("1/t^{n}")]);
            let inv = invariants(&c).unwrap();
            if n % p as i64 == 0 {
                // F_p coefficients at p-divisible poles are p-th powers
                assert!(inv.sw < n, "p={p} n={n}");
            } else {
                assert_eq!((inv.sw, inv.dt), (n, n + 1), "p={p} n={n}");
                let r = inv.rsw.unwrap();
                assert_eq!(r.alpha, RatFunc::constant(n, p));
                assert!(r.beta.is_zero());
            }
        }
    }
}

#[test]
fn x_over_pole_divisible_by_p() {
    for p in [2u32, 3] {
        let n = 2 * p as i64;
        let inv = invariants(&chi(p, &[&format!("x/t^{n}")])).unwrap();
        assert_eq!((inv.sw, inv.dt), (n, n));
        let cf = inv.cform.unwrap();
        assert!(cf.c_pi.is_zero());
        assert_eq!(cf.c_x, RatFunc::constant(-1, p));
    }
}

#[test]
fn exceptional_level_two() {
    let inv = invariants(&chi(2, &["x/t^2"])).unwrap();
    assert_eq!((inv.sw, inv.dt), (2, 2));
    let cf = inv.cform.unwrap();
    assert_eq!(cf.c_pi, RadicialElem::from_y(RatFunc::var(Var::X, 2)));
    assert_eq!(cf.c_x, RatFunc::one(2));
    assert!(cf.is_radicial());

    // 1/t^2 + 1/t = (F-1)(1/t) has no ramification; x^2/t^2 + x/t likewise
    for s in ["1/t^2 + 1/t", "x^2/t^2 + x/t"] {
        let inv = invariants(&chi(2, &[s])).unwrap();
        assert_eq!((inv.sw, inv.dt), (0, 1), "{s}");
        assert!(inv.cform.is_none());
    }
    let inv = invariants(&chi(2, &["x^2/t^2"])).unwrap();
    assert_eq!((inv.sw, inv.dt), (1, 2));
}

#[test]
fn exceptional_with_longer_witt_vector() {
    let inv = invariants(&chi(2, &["x", "x/t^2"])).unwrap();
    assert_eq!(inv.dt, 2);
    assert_eq!(inv.cform.unwrap().c_pi, RadicialElem::from_y(RatFunc::var(Var::X, 2)));
}

#[test]
fn trivial_twist() {
    let b = WittVec::scalar(le("x/t", 2));
    let c = Character::new(b.f_minus_one().unwrap()).unwrap();
    let inv = invariants(&c).unwrap();
    assert_eq!((inv.sw, inv.dt), (0, 1));
    assert!(inv.rsw.is_none());
}

#[test]
fn order_four_character() {
    // (1/t, 0) over F_2
    let inv = invariants(&chi(2, &["1/t", "0"])).unwrap();
    assert_eq!((inv.sw, inv.dt), (2, 3));
    assert_eq!(inv.rsw.unwrap().alpha, RatFunc::one(2));
}

#[test]
fn nonlog_form_needs_fil_prime() {
    let a = WittVec::scalar(le("1/t^2", 3));
    assert!(nonlog_graded_form(&a, 2).is_err());
    assert!(nonlog_graded_form(&a, 3).is_ok());
    assert!(nonlog_graded_form(&WittVec::scalar(le("1/t^3", 3)), 3).is_ok());
    assert!(log_graded_form(&a, 1).is_err());
}

#[test]
fn nonzero_forms_at_conductor() {
    let c = chi(3, &["x/t^3 + 1/t^2"]);
    assert!(!rsw(&c).unwrap().unwrap().is_zero());
    assert!(!cform(&c).unwrap().unwrap().is_zero());
    let d = cform(&c).unwrap().unwrap();
    assert!(d.describe().ends_with("/ t^3"));
}

#[test]
fn compatibility_rejects_bad_pairs() {
    assert!(check_compatibility(3, 5, None, None).is_err());
    assert!(check_compatibility(0, 2, None, None).is_err());
    let r = GradedLogForm { level: 2, alpha: RatFunc::one(3), beta: RatFunc::zero(3) };
    let c = GradedNonLogForm { level: 2, c_pi: RadicialElem::zero(3), c_x: RatFunc::one(3) };
    assert!(check_compatibility(2, 2, Some(&r), Some(&c)).is_err());
}

/// Reference Swan conductor over a perfect residue field: poles of a Laurent polynomial
/// with F_p coefficients, pushing p-divisible poles down by taking p-th roots.
fn naive_swan(p: u32, poles: &BTreeMap<i64, u32>) -> i64 {
    let mut poles: BTreeMap<i64, u32> = poles.iter().filter(|(_, c)| **c % p != 0).map(|(k, c)| (*k, *c % p)).collect();
    while let Some((&n, &c)) = poles.iter().next_back() {
        if n % p as i64 != 0 {
            return n;
        }
        poles.remove(&n);
        let e = poles.entry(n / p as i64).or_insert(0);
        // c^{1/p} = c in F_p
        *e = (*e + c) % p;
        if *e == 0 {
            poles.remove(&(n / p as i64));
        }
    }
    0
}

fn poles_strategy(p: u32) -> impl Strategy<Value = BTreeMap<i64, u32>> {
    prop::collection::btree_map(1i64..13, 1..p, 0..4)
}

fn from_poles(p: u32, poles: &BTreeMap<i64, u32>) -> LocalElem {
    poles.iter().fold(LocalElem::zero(p), |acc, (n, c)| {
        acc.add(&LocalElem::monomial(&RatFunc::constant(*c as i64, p), -n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]
    #[test]
    fn perfect_residue_oracle(
        (p, poles) in prop::sample::select(vec![2u32, 3]).prop_flat_map(|p| (Just(p), poles_strategy(p)))
    ) {
        let c = Character::new(WittVec::scalar(from_poles(p, &poles))).unwrap();
        let expected = naive_swan(p, &poles);
        let inv = invariants(&c).unwrap();
        prop_assert_eq!(inv.sw, expected);
        prop_assert_eq!(inv.dt, expected + 1);
    }

    #[test]
    fn invariants_survive_twists(
        n in 1i64..7, k in 1i64..4, cx in 0u32..2, cb in 1u32..3,
    ) {
        let p = 3;
        let a = LocalElem::monomial(&rf(&format!("x^{cx} + 1"), p), -n);
        let base = Character::new(WittVec::scalar(a)).unwrap();
        let b = WittVec::scalar(LocalElem::monomial(&rf(&format!("{cb}*x"), p), -k));
        let twisted = base.twist(&b).unwrap();
        let i0 = invariants(&base).unwrap();
        let i1 = invariants(&twisted).unwrap();
        prop_assert_eq!(i0.sw, i1.sw);
        prop_assert_eq!(i0.dt, i1.dt);
        prop_assert_eq!(i0.rsw, i1.rsw);
        prop_assert_eq!(i0.cform, i1.cform);
    }
}

#[test]
fn twist_invariance_length_two() {
    let p = 2;
    let base = chi(p, &["x/t", "1/t^3"]);
    let b = WittVec::new(p, vec![le("1/t", p), le("x/t^2", p)]);
    let i0 = invariants(&base).unwrap();
    let i1 = invariants(&base.twist(&b).unwrap()).unwrap();
    assert_eq!((i0.sw, i0.dt), (i1.sw, i1.dt));
    assert_eq!(i0.rsw, i1.rsw);
    assert_eq!(i0.cform, i1.cform);
}

#[test]
fn documented_examples() {
    for p in [2u32, 3, 5] {
        let c = chi(p, &[&format!("1/t^{p}")]);
        assert_eq!(swan_conductor(&c).unwrap().0, 1);
        let m = if p == 2 { 3 } else { 2 };
        let a = WittVec::scalar(le(&format!("x/t^{m}"), p));
        let r = log_graded_form(&a, m).unwrap();
        assert_eq!(r.alpha, rf(&format!("{m}*x"), p));
        assert_eq!(r.beta, RatFunc::constant(-1, p));
        let c = nonlog_graded_form(&a, m + 1).unwrap();
        assert_eq!(c.c_pi, RadicialElem::from_base(&rf(&format!("{m}*x"), p)));
        assert!(c.c_x.is_zero());
        assert!(log_graded_form(&WittVec::scalar(le("x + t", p)), 1).unwrap().is_zero());
    }
    assert!(log_graded_form(&WittVec::scalar(le("1/t^3", 3)), 3).unwrap().is_zero());
    for n in [1i64, 3, 5] {
        let inv = invariants(&chi(2, &[&format!("1/t^{n}"), "0"])).unwrap();
        assert_eq!(inv.sw, 2 * n);
    }
    let inv = invariants(&chi(2, &["x^2/t^2"])).unwrap();
    let cf = inv.cform.unwrap();
    assert_eq!(cf.c_pi, RadicialElem::from_base(&rf("x", 2)));
    assert!(cf.c_x.is_zero());
    let fm = WittVec::scalar(le("x/t", 2)).f_minus_one().unwrap();
    assert!(nonlog_graded_form(&fm, 2).unwrap().is_zero());
}
