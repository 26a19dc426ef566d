//! Truncated Witt vectors over rings of characteristic p.
//!
//! A vector is written `(a_{s-1}, ..., a_0)` with `a_i` of weight `p^i`; the leftmost
//! entry is the first Witt component. [`WittVec::comps`] returns the entries in that
//! written order, and [`WittVec::a`] indexes by weight.

pub mod filtration;
pub mod qpoly;
pub mod tables;
pub mod zpoly;

use std::collections::HashMap;
use std::fmt::Debug;

use crate::base::RatFunc;
use crate::error::{Error, Result};
use crate::local::LocalElem;

pub use filtration::*;
pub use qpoly::{q_polys, QPolynomials};
pub use tables::{build_universal_tables, check_size, max_length, UniversalWittTables};
use zpoly::{eval_fractions, FpPolyN};

/// Coefficient rings for Witt vectors.
pub trait WittCoeff: Clone + PartialEq + Debug {
    fn czero(p: u32) -> Self;
    fn cone(p: u32) -> Self;
    fn char_p(&self) -> u32;
    fn cis_zero(&self) -> bool;
    fn cadd(&self, o: &Self) -> Self;
    fn csub(&self, o: &Self) -> Self;
    fn cneg(&self) -> Self;
    fn cmul(&self, o: &Self) -> Self;
    fn cpow(&self, e: u32) -> Self;

    /// Evaluates a polynomial with F_p coefficients at `args`.
    fn eval(f: &FpPolyN, args: &[Self]) -> Self {
        let p = f.p();
        let mut cache: HashMap<(usize, u16), Self> = HashMap::new();
        let mut acc = Self::czero(p);
        for (e, c) in f.terms() {
            let mut term = Self::cone(p);
            let mut coeff = Self::czero(p);
            for _ in 0..*c {
                coeff = coeff.cadd(&Self::cone(p));
            }
            term = term.cmul(&coeff);
            for (i, k) in e.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, *k))
                    .or_insert_with(|| args[i].cpow(*k as u32))
                    .clone();
                term = term.cmul(&pw);
            }
            acc = acc.cadd(&term);
        }
        acc
    }
}

impl WittCoeff for RatFunc {
    fn czero(p: u32) -> Self {
        RatFunc::zero(p)
    }
    fn cone(p: u32) -> Self {
        RatFunc::one(p)
    }
    fn char_p(&self) -> u32 {
        self.p()
    }
    fn cis_zero(&self) -> bool {
        self.is_zero()
    }
    fn cadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn csub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn cneg(&self) -> Self {
        self.neg()
    }
    fn cmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn cpow(&self, e: u32) -> Self {
        self.pow(e)
    }
    fn eval(f: &FpPolyN, args: &[Self]) -> Self {
        let nums: Vec<_> = args.iter().map(|a| a.num()).collect();
        let dens: Vec<_> = args.iter().map(|a| a.den()).collect();
        let (n, d) = eval_fractions(f, &nums, &dens);
        RatFunc::normalize(n, d).expect("denominators are nonzero")
    }
}

impl WittCoeff for LocalElem {
    fn czero(p: u32) -> Self {
        LocalElem::zero(p)
    }
    fn cone(p: u32) -> Self {
        LocalElem::one(p)
    }
    fn char_p(&self) -> u32 {
        self.p()
    }
    fn cis_zero(&self) -> bool {
        self.is_zero()
    }
    fn cadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn csub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn cneg(&self) -> Self {
        self.neg()
    }
    fn cmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn cpow(&self, e: u32) -> Self {
        self.pow(e)
    }
    fn eval(f: &FpPolyN, args: &[Self]) -> Self {
        let vals: Vec<RatFunc> = args.iter().map(|a| a.value().clone()).collect();
        LocalElem::new(RatFunc::eval(f, &vals))
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct WittVec<R> {
    p: u32,
    comps: Vec<R>,
}

impl<R: WittCoeff> WittVec<R> {
    /// Builds `(a_{s-1}, ..., a_0)` from the entries in written order.
    pub fn new(p: u32, comps: Vec<R>) -> Self {
        debug_assert!(comps.iter().all(|c| c.char_p() == p));
        Self { p, comps }
    }

    pub fn zero(p: u32, s: usize) -> Self {
        Self::new(p, vec![R::czero(p); s])
    }

    /// The length-one vector `(a_0)`.
    pub fn scalar(a: R) -> Self {
        Self::new(a.char_p(), vec![a])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    /// Entries in written order `(a_{s-1}, ..., a_0)`.
    pub fn comps(&self) -> &[R] {
        &self.comps
    }

    /// The entry `a_i` of weight `p^i`.
    pub fn a(&self, i: usize) -> &R {
        &self.comps[self.comps.len() - 1 - i]
    }

    pub fn set_a(&mut self, i: usize, v: R) {
        let s = self.comps.len();
        self.comps[s - 1 - i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.cis_zero())
    }

    pub fn map<S: WittCoeff>(&self, f: impl Fn(&R) -> S) -> WittVec<S> {
        WittVec {
            p: self.p,
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn check_pair(&self, o: &Self) -> Result<()> {
        if self.p != o.p {
            return Err(Error::PrimeMismatch(self.p, o.p));
        }
        if self.len() != o.len() {
            return Err(Error::LengthMismatch(self.len(), o.len()));
        }
        Ok(())
    }

    fn binary(&self, o: &Self, pick: impl Fn(&UniversalWittTables) -> &Vec<FpPolyN>) -> Result<Self> {
        self.check_pair(o)?;
        let s = self.len();
        if s == 0 {
            return Ok(self.clone());
        }
        let tables = build_universal_tables(self.p, s)?;
        let polys = pick(&tables);
        let mut args: Vec<R> = self.comps.clone();
        args.extend(o.comps.iter().cloned());
        let comps = (0..s).map(|k| R::eval(&polys[k], &args)).collect();
        Ok(Self::new(self.p, comps))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            self.check_pair(o)?;
            return Ok(self.clone());
        }
        if self.is_zero() {
            self.check_pair(o)?;
            return Ok(o.clone());
        }
        self.binary(o, |t| &t.sum)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            self.check_pair(o)?;
            return Ok(self.clone());
        }
        self.binary(o, |t| &t.diff)
    }

    pub fn neg(&self) -> Result<Self> {
        let s = self.len();
        if s == 0 || self.is_zero() {
            return Ok(self.clone());
        }
        let tables = build_universal_tables(self.p, s)?;
        let comps = (0..s).map(|k| R::eval(&tables.neg[k], &self.comps)).collect();
        Ok(Self::new(self.p, comps))
    }

    /// Componentwise p-th power.
    pub fn frobenius(&self) -> Self {
        Self::new(self.p, self.comps.iter().map(|c| c.cpow(self.p)).collect())
    }

    /// `(F - 1)(self)`.
    pub fn f_minus_one(&self) -> Result<Self> {
        self.frobenius().sub(self)
    }

    /// `V`: prepends a zero entry, raising the length by one.
    pub fn verschiebung(&self) -> Self {
        let mut comps = Vec::with_capacity(self.len() + 1);
        comps.push(R::czero(self.p));
        comps.extend(self.comps.iter().cloned());
        Self::new(self.p, comps)
    }

    /// `V^k` into length `s + k`.
    pub fn verschiebung_n(&self, k: usize) -> Self {
        let mut v = self.clone();
        for _ in 0..k {
            v = v.verschiebung();
        }
        v
    }

    /// `pr_t`: keeps the `t` leftmost entries.
    pub fn project(&self, t: usize) -> Result<Self> {
        if t > self.len() {
            return Err(Error::Precondition(format!(
                "cannot project length {} onto length {t}",
                self.len()
            )));
        }
        Ok(Self::new(self.p, self.comps[..t].to_vec()))
    }
}

#[cfg(test)]
mod tests;
