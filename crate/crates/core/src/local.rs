//! The local field K = F_p(x)((t)), modelled by its subfield F_p(x)(t).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::base::{Mono, MultiPoly, RatFunc, Var, VarNames};
use crate::error::Result;

/// A valuation: an integer, or +infinity for zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Val {
    Finite(i64),
    Infinity,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinity => None,
        }
    }

    /// `k * self` for k >= 1.
    pub fn scale(self, k: i64) -> Val {
        match self {
            Val::Finite(v) => Val::Finite(v * k),
            Val::Infinity => Val::Infinity,
        }
    }

    pub fn at_least(self, bound: i64) -> bool {
        self >= Val::Finite(bound)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinity => f.write_str("inf"),
        }
    }
}

/// Element of F_p(x)(t) viewed inside F_p(x)((t)); `t` is the uniformizer.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LocalElem {
    f: RatFunc,
}

/// Exact Laurent coefficients of a [`LocalElem`] on the window `lo <= e < hi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentTail {
    pub lo: i64,
    pub hi: i64,
    pub coeffs: BTreeMap<i64, RatFunc>,
}

impl LaurentTail {
    pub fn get(&self, e: i64) -> Option<&RatFunc> {
        self.coeffs.get(&e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

fn t_order(f: &MultiPoly) -> u32 {
    f.min_deg(Var::T).unwrap_or(0)
}

impl LocalElem {
    pub fn new(f: RatFunc) -> Self {
        debug_assert!(!f.uses(Var::W) && !f.uses(Var::Wp));
        Self { f }
    }

    pub fn zero(p: u32) -> Self {
        Self::new(RatFunc::zero(p))
    }

    pub fn one(p: u32) -> Self {
        Self::new(RatFunc::one(p))
    }

    pub fn t(p: u32) -> Self {
        Self::new(RatFunc::var(Var::T, p))
    }

    pub fn x(p: u32) -> Self {
        Self::new(RatFunc::var(Var::X, p))
    }

    /// `c * t^e` with `c` in F_p(x).
    pub fn monomial(c: &RatFunc, e: i64) -> Self {
        let p = c.p();
        Self::new(c.mul(&RatFunc::monomial(1, Var::T, e, p)))
    }

    pub fn value(&self) -> &RatFunc {
        &self.f
    }

    pub fn into_value(self) -> RatFunc {
        self.f
    }

    pub fn p(&self) -> u32 {
        self.f.p()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    /// t-adic valuation.
    pub fn ord(&self) -> Val {
        if self.f.is_zero() {
            return Val::Infinity;
        }
        Val::Finite(t_order(self.f.num()) as i64 - t_order(self.f.den()) as i64)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.f.add(&o.f))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.f.sub(&o.f))
    }

    pub fn neg(&self) -> Self {
        Self::new(self.f.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.f.mul(&o.f))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(Self::new(self.f.div(&o.f)?))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.f.pow(e))
    }

    pub fn frobenius(&self) -> Self {
        Self::new(self.f.frobenius())
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::new(self.f.scale(c))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        self.mul(&Self::new(RatFunc::monomial(1, Var::T, k, self.p())))
    }

    /// Laurent coefficients on `[e_lo, e_hi)`, by power-series inversion of the unit part.
    pub fn tail(&self, e_lo: i64, e_hi: i64) -> LaurentTail {
        assert!(e_lo <= e_hi, "empty window must satisfy e_lo <= e_hi");
        let mut out = LaurentTail {
            lo: e_lo,
            hi: e_hi,
            coeffs: BTreeMap::new(),
        };
        let Val::Finite(v) = self.ord() else {
            return out;
        };
        if e_hi <= v {
            return out;
        }
        let p = self.p();
        let a = t_order(self.f.num());
        let b = t_order(self.f.den());
        let u = self.f.num().div_mono(&Mono::var(Var::T, a)).coeffs_in(Var::T);
        let w = self.f.den().div_mono(&Mono::var(Var::T, b)).coeffs_in(Var::T);
        let n = (e_hi - v) as usize;
        let w0 = &w[0];
        // q_k = big_q[k] / w0^(k+1)
        let mut w0_pow = vec![MultiPoly::one(p)];
        for k in 1..n.max(w.len()) {
            w0_pow.push(w0_pow[k - 1].mul(w0));
        }
        let zero = MultiPoly::zero(p);
        let mut big_q: Vec<MultiPoly> = Vec::with_capacity(n);
        for k in 0..n {
            let uk = u.get(k).unwrap_or(&zero);
            let mut acc = uk.mul(&w0_pow[k]);
            for j in 1..=k.min(w.len() - 1) {
                if w[j].is_zero() || big_q[k - j].is_zero() {
                    continue;
                }
                acc = acc.sub(&w[j].mul(&big_q[k - j]).mul(&w0_pow[j - 1]));
            }
            let e = v + k as i64;
            if e >= e_lo && !acc.is_zero() {
                let c = RatFunc::normalize(acc.clone(), w0_pow[k].mul(w0)).unwrap();
                out.coeffs.insert(e, c);
            }
            big_q.push(acc);
        }
        out
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i64) -> RatFunc {
        self.tail(e, e + 1)
            .coeffs
            .remove(&e)
            .unwrap_or_else(|| RatFunc::zero(self.p()))
    }

    /// Partial derivatives `(d/dt, d/dx)`, so that `da = A dt + B dx`.
    pub fn d_form(&self) -> (LocalElem, LocalElem) {
        (
            Self::new(self.f.derivative(Var::T)),
            Self::new(self.f.derivative(Var::X)),
        )
    }

    pub fn to_expr(&self) -> String {
        self.f.to_expr(&VarNames::LOCAL)
    }
}

impl fmt::Display for LocalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_ratfunc, Vocabulary};
    use proptest::prelude::*;

    fn le(s: &str, p: u32) -> LocalElem {
        LocalElem::new(parse_ratfunc(s, p, &Vocabulary::LOCAL).unwrap())
    }

    #[test]
    fn ord_examples() {
        assert_eq!(le("x/t^3", 3).ord(), Val::Finite(-3));
        assert_eq!(le("(t^2 + t^3)/x", 3).ord(), Val::Finite(2));
        assert_eq!(LocalElem::zero(3).ord(), Val::Infinity);
        assert!(Val::Finite(i64::MAX) < Val::Infinity);
    }

    #[test]
    fn tail_examples() {
        let tl = le("1/(t*(1+t))", 5).tail(-1, 1);
        assert_eq!(tl.get(-1), Some(&RatFunc::one(5)));
        assert_eq!(tl.get(0), Some(&RatFunc::constant(-1, 5)));
        assert_eq!(tl.coeffs.len(), 2);
        assert!(le("x/t^2", 5).tail(-1, 1).is_zero());
        let tl = le("x", 5).tail(0, 1);
        assert_eq!(tl.get(0), Some(&RatFunc::var(Var::X, 5)));
        // coefficients with x in the unit part
        let a = le("1/(x + t)", 3);
        assert_eq!(a.coeff(1), le("-1/x^2", 3).into_value());
        assert_eq!(a.coeff(2), le("1/x^3", 3).into_value());
    }

    #[test]
    fn d_form_examples() {
        let (a, b) = le("x/t", 3).d_form();
        assert_eq!(a, le("-x/t^2", 3));
        assert_eq!(b, le("1/t", 3));
        let (a, b) = le("t^3", 3).d_form();
        assert!(a.is_zero() && b.is_zero());
        let (a, b) = le("x^2*t", 2).d_form();
        assert_eq!(a, le("x^2", 2));
        assert!(b.is_zero());
    }

    fn local_elem(p: u32) -> impl Strategy<Value = LocalElem> {
        let poly = move || {
            prop::collection::vec((0u32..4, 0u32..3, 0u32..p), 1..4).prop_map(move |ts| {
                MultiPoly::from_terms(p, ts.into_iter().map(|(a, b, c)| (Mono([a, b, 0, 0]), c)))
            })
        };
        (poly(), poly(), -3i64..3).prop_filter_map("zero denominator", |(n, d, k)| {
            RatFunc::normalize(n, d).ok().map(|f| LocalElem::new(f).shift(k))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn valuation_laws(a in local_elem(3), b in local_elem(3)) {
            let (va, vb) = (a.ord(), b.ord());
            if let (Val::Finite(x), Val::Finite(y)) = (va, vb) {
                prop_assert_eq!(a.mul(&b).ord(), Val::Finite(x + y));
                if x != y {
                    prop_assert_eq!(a.add(&b).ord(), Val::Finite(x.min(y)));
                }
            }
            prop_assert!(a.add(&b).ord() >= va.min(vb));
        }

        #[test]
        fn tail_is_additive_and_exact(a in local_elem(2), b in local_elem(2)) {
            let (lo, hi) = (-4, 3);
            let s = a.add(&b).tail(lo, hi);
            let ta = a.tail(lo, hi);
            let tb = b.tail(lo, hi);
            for e in lo..hi {
                let z = RatFunc::zero(2);
                let lhs = s.get(e).cloned().unwrap_or(z.clone());
                let rhs = ta.get(e).unwrap_or(&z).add(tb.get(e).unwrap_or(&z));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn d_of_pth_power_vanishes(a in local_elem(5)) {
            let (x, y) = a.pow(5).d_form();
            prop_assert!(x.is_zero() && y.is_zero());
        }
    }

    #[test]
    fn tail_matches_laurent_polynomial() {
        let a = le("3*x/t^2 + 1/t + 2*x^2 + t^4", 5);
        let tl = a.tail(-3, 5);
        assert_eq!(tl.get(-2), Some(&le("3*x", 5).into_value()));
        assert_eq!(tl.get(-1), Some(&RatFunc::one(5)));
        assert_eq!(tl.get(0), Some(&le("2*x^2", 5).into_value()));
        assert_eq!(tl.get(4), Some(&RatFunc::one(5)));
        assert_eq!(tl.coeffs.len(), 4);
    }
}
