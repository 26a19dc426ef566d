//! Valuation of Witt vectors over K and the filtrations fil, fil^(r), fil', fil''.

use super::WittVec;
use crate::local::{LocalElem, Val};

/// `floor(m / k)` for k > 0.
pub fn floor_div(m: i64, k: i64) -> i64 {
    m.div_euclid(k)
}

/// p-adic valuation of a nonzero integer.
pub fn ord_p(m: i64, p: u32) -> u32 {
    assert!(m != 0, "ord_p(0) is infinite");
    let mut m = m.abs();
    let mut k = 0;
    while m % p as i64 == 0 {
        m /= p as i64;
        k += 1;
    }
    k
}

fn pw(p: u32, i: usize) -> i64 {
    (p as i64).pow(i as u32)
}

/// `min_i p^i ord(a_i)`.
pub fn ord_w(a: &WittVec<LocalElem>) -> Val {
    (0..a.len())
        .map(|i| a.a(i).ord().scale(pw(a.p(), i)))
        .min()
        .unwrap_or(Val::Infinity)
}

/// `a` in fil_n: `ord_w(a) >= -n`.
pub fn in_fil(a: &WittVec<LocalElem>, n: i64) -> bool {
    ord_w(a).at_least(-n)
}

/// `a` in fil^(r)_n = fil_{[n/p^r]}.
pub fn in_fil_r(a: &WittVec<LocalElem>, n: i64, r: u32) -> bool {
    in_fil(a, floor_div(n, pw(a.p(), r as usize)))
}

/// `s'' = max(0, min(ord_p m, s + r) - r)`; equals `min(ord_p m, s)` for r = 0.
pub fn s_double_prime(m: i64, s: usize, r: u32, p: u32) -> usize {
    let rp = (ord_p(m, p) as usize).min(s + r as usize);
    rp.saturating_sub(r as usize)
}

/// `s' = min(ord_p m, s)`.
pub fn s_prime(m: i64, s: usize, p: u32) -> usize {
    s_double_prime(m, s, 0, p)
}

/// Componentwise test: `p^i ord(a_i) >= -low` for `i < split`, `>= -high` otherwise.
fn split_bounds(a: &WittVec<LocalElem>, split: usize, low: i64, high: i64) -> bool {
    (0..a.len()).all(|i| {
        let bound = if i < split { low } else { high };
        a.a(i).ord().scale(pw(a.p(), i)).at_least(-bound)
    })
}

/// fil'^(r)_m = fil^(r)_{m-1} + V^{s-s''} fil^(r)_m W_{s''}.
pub fn in_fil_prime_r(a: &WittVec<LocalElem>, m: i64, r: u32) -> bool {
    assert!(m >= 1, "fil' is indexed by m >= 1");
    let p = a.p();
    let q = pw(p, r as usize);
    let split = s_double_prime(m, a.len(), r, p);
    split_bounds(a, split, floor_div(m, q), floor_div(m - 1, q))
}

pub fn in_fil_prime(a: &WittVec<LocalElem>, m: i64) -> bool {
    in_fil_prime_r(a, m, 0)
}

/// fil''^(r)_m = fil^(r)_{[(m-1)/p]} + V^{s-s''} fil^(r)_{[m/p]} W_{s''}.
pub fn in_fil_dprime_r(a: &WittVec<LocalElem>, m: i64, r: u32) -> bool {
    assert!(m >= 1, "fil'' is indexed by m >= 1");
    let p = a.p() as i64;
    let q = pw(a.p(), r as usize);
    let split = s_double_prime(m, a.len(), r, a.p());
    split_bounds(
        a,
        split,
        floor_div(floor_div(m, p), q),
        floor_div(floor_div(m - 1, p), q),
    )
}

pub fn in_fil_dprime(a: &WittVec<LocalElem>, m: i64) -> bool {
    in_fil_dprime_r(a, m, 0)
}

/// Least `m >= 1` with `a` in fil'_m.
pub fn least_fil_prime_level(a: &WittVec<LocalElem>) -> i64 {
    match ord_w(a) {
        Val::Infinity => 1,
        Val::Finite(v) if v >= 0 => 1,
        Val::Finite(v) => {
            let n = -v;
            if in_fil_prime(a, n) {
                n
            } else {
                n + 1
            }
        }
    }
}

/// Least `n >= 0` with `a` in fil_n.
pub fn least_fil_level(a: &WittVec<LocalElem>) -> i64 {
    match ord_w(a) {
        Val::Infinity => 0,
        Val::Finite(v) => (-v).max(0),
    }
}
