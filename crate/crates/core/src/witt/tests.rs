use super::*;
use crate::base::{Mono, MultiPoly, RatFunc, Var};
use crate::expr::{parse_ratfunc, Vocabulary};
use crate::local::{LocalElem, Val};
use proptest::prelude::*;

fn le(s: &str, p: u32) -> LocalElem {
    LocalElem::new(parse_ratfunc(s, p, &Vocabulary::LOCAL).unwrap())
}

fn wv(p: u32, comps: &[&str]) -> WittVec<LocalElem> {
    WittVec::new(p, comps.iter().map(|c| le(c, p)).collect())
}

#[test]
fn additive_identities() {
    let a = wv(3, &["x/t^2", "1/t + x"]);
    assert_eq!(a.add(&WittVec::zero(3, 2)).unwrap(), a);
    assert!(a.add(&a.neg().unwrap()).unwrap().is_zero());
    assert!(a.sub(&a).unwrap().is_zero());
}

#[test]
fn carry_into_second_component() {
    // (1/t, 0) + (1/t, 0) = (0, 1/t^2) over F_2
    let a = wv(2, &["1/t", "0"]);
    assert_eq!(a.add(&a).unwrap(), wv(2, &["0", "1/t^2"]));
}

#[test]
fn length_mismatch_is_an_error() {
    let a = wv(2, &["1/t", "0"]);
    let b = wv(2, &["1/t"]);
    assert_eq!(a.add(&b), Err(Error::LengthMismatch(2, 1)));
}

#[test]
fn frobenius_verschiebung_projection() {
    let a = wv(2, &["x", "1/t"]);
    assert_eq!(a.frobenius(), wv(2, &["x^2", "1/t^2"]));
    assert!(WittVec::<LocalElem>::zero(2, 2).frobenius().is_zero());
    let b = wv(2, &["1/t", "1/t^3"]);
    assert_eq!(ord_w(&b), Val::Finite(-3));
    let c = wv(2, &["1/t", "0"]);
    assert_eq!(ord_w(&c), Val::Finite(-2));
    assert_eq!(ord_w(&c.frobenius()), Val::Finite(-4));
    assert_eq!(ord_w(&b.frobenius()), Val::Finite(-6));

    let empty = WittVec::<LocalElem>::zero(2, 0);
    assert_eq!(empty.verschiebung(), wv(2, &["0"]));
    assert_eq!(wv(2, &["1/t"]).verschiebung(), wv(2, &["0", "1/t"]));
    assert_eq!(ord_w(&wv(2, &["1/t"]).verschiebung()), Val::Finite(-1));

    let d = wv(3, &["x", "1/t"]);
    assert_eq!(d.project(0).unwrap().len(), 0);
    assert_eq!(d.project(2).unwrap(), d);
    assert_eq!(d.project(1).unwrap(), wv(3, &["x"]));
    assert!(d.project(3).is_err());
    assert_eq!(d.a(1), &le("x", 3));
}

#[test]
fn ord_and_fil_examples() {
    assert_eq!(ord_w(&wv(3, &["x", "x/t"])), Val::Finite(-1));
    let a = wv(3, &["1/t^3"]);
    assert!(in_fil(&a, 3));
    assert!(!in_fil(&a, 2));
    assert!(in_fil(&WittVec::<LocalElem>::zero(3, 2), 0));
    assert!(in_fil_r(&wv(2, &["1/t", "0"]), 4, 1));
}

#[test]
fn fil_prime_examples() {
    assert!(in_fil_prime(&wv(2, &["x/t^2"]), 2));
    for p in [2, 3, 5] {
        for n in 1..12i64 {
            if n % p as i64 == 0 {
                continue;
            }
            let a = WittVec::scalar(LocalElem::monomial(&RatFunc::one(p), -n));
            assert!(!in_fil_prime(&a, n));
            assert!(in_fil_prime(&a, n + 1));
        }
    }
}

fn local_poly(p: u32) -> impl Strategy<Value = LocalElem> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..p, -2i64..1), 0..3).prop_map(move |ts| {
        let mut acc = LocalElem::zero(p);
        for (a, b, c, k) in ts {
            let m = MultiPoly::term(Mono([a, b, 0, 0]), c, p);
            acc = acc.add(&LocalElem::new(RatFunc::from_poly(m)).shift(k));
        }
        acc
    })
}

fn witt(p: u32, s: usize) -> impl Strategy<Value = WittVec<LocalElem>> {
    prop::collection::vec(local_poly(p), s).prop_map(move |c| WittVec::new(p, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn ring_axioms_p2(a in witt(2, 2), b in witt(2, 2), c in witt(2, 2)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.sub(&b).unwrap(), a.add(&b.neg().unwrap()).unwrap());
        prop_assert!(a.add(&a.neg().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn ring_axioms_p3(a in witt(3, 2), b in witt(3, 2), c in witt(3, 2)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.sub(&b).unwrap().add(&b).unwrap(), a);
    }

    #[test]
    fn frobenius_scales_ord(a in witt(3, 2)) {
        prop_assert_eq!(ord_w(&a.frobenius()), ord_w(&a).scale(3));
        let fm = a.f_minus_one().unwrap();
        match ord_w(&a) {
            Val::Finite(v) if v < 0 => prop_assert_eq!(ord_w(&fm), Val::Finite(3 * v)),
            _ => prop_assert!(in_fil(&fm, 0)),
        }
    }

    #[test]
    fn fil_prime_closed_under_addition(a in witt(2, 2), b in witt(2, 2), m in 1i64..9) {
        if in_fil_prime(&a, m) && in_fil_prime(&b, m) {
            prop_assert!(in_fil_prime(&a.add(&b).unwrap(), m));
        }
        if in_fil_dprime(&a, m) && in_fil_dprime(&b, m) {
            prop_assert!(in_fil_dprime(&a.add(&b).unwrap(), m));
        }
    }

    #[test]
    fn q_identity(x in witt(2, 2), y in witt(2, 2)) {
        let q = q_polys(2, 2).unwrap();
        let xp = WittVec::new(2, x.comps().iter().zip(y.comps()).map(|(a, b)| a.mul(&LocalElem::one(2).add(b))).collect());
        prop_assert_eq!(xp.sub(&x).unwrap(), q.eval(&x, &y).unwrap());
    }
}

#[test]
fn universal_sum_over_ratfunc_coefficients() {
    let p = 3;
    let x = RatFunc::var(Var::X, p);
    let a = WittVec::new(p, vec![x.clone(), x.inv().unwrap()]);
    let b = WittVec::new(p, vec![x.pow(2), RatFunc::one(p)]);
    let s = a.add(&b).unwrap();
    assert_eq!(s.sub(&b).unwrap(), a);
}
