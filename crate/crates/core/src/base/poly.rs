//! Sparse multivariate polynomials over F_p in a fixed set of four variable slots.
//!
//! Slot 0 is the uniformizer `t` (or `x1` for global characters), slot 1 is the
//! residue variable `x` (or `x2`, or the radicial `y`), slots 2 and 3 hold the
//! dilatation coordinates `w` and `w'`. Terms are kept in decreasing graded
//! lexicographic order with no zero coefficients.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::fp::{add_mod, inv_mod, mul_mod, neg_mod, pow_mod, sub_mod};

pub const NVARS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Var {
    T = 0,
    X = 1,
    W = 2,
    Wp = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::T, Var::X, Var::W, Var::Wp];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }
}

/// Display names for the four slots.
#[derive(Clone, Copy, Debug)]
pub struct VarNames(pub [&'static str; NVARS]);

impl VarNames {
    pub const LOCAL: VarNames = VarNames(["t", "x", "w", "w'"]);
    pub const RADICIAL: VarNames = VarNames(["t", "y", "w", "w'"]);
    pub const GLOBAL: VarNames = VarNames(["x1", "x2", "w", "w'"]);
}

/// Exponent vector. Ordered by total degree, then lexicographically with slot 0 highest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u32; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Mono {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Mono(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Mono(m)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut m = other.0;
        for (a, b) in m.iter_mut().zip(self.0.iter()) {
            *a -= *b;
        }
        Mono(m)
    }

    pub fn meet(&self, other: &Mono) -> Mono {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Mono(m)
    }

    pub fn scale(&self, k: u32) -> Mono {
        Mono(self.0.map(|e| e * k))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    p: u32,
    terms: Vec<(Mono, u32)>,
}

impl MultiPoly {
    pub fn zero(p: u32) -> Self {
        Self { p, terms: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(1, p)
    }

    pub fn constant(c: i64, p: u32) -> Self {
        let c = c.rem_euclid(p as i64) as u32;
        Self::term(Mono::ONE, c, p)
    }

    pub fn var(v: Var, p: u32) -> Self {
        Self::term(Mono::var(v, 1), 1, p)
    }

    pub fn term(m: Mono, c: u32, p: u32) -> Self {
        let c = c % p;
        if c == 0 {
            Self::zero(p)
        } else {
            Self {
                p,
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Mono, u32)>) -> Self {
        let mut acc: HashMap<Mono, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = add_mod(*e, c % p, p);
        }
        Self::from_map(p, acc)
    }

    fn from_map(p: u32, acc: HashMap<Mono, u32>) -> Self {
        let mut terms: Vec<(Mono, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self { p, terms }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == (Mono::ONE, 1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == Mono::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if *m == Mono::ONE => Some(*c),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, u32)> {
        self.terms.first()
    }

    pub fn lc(&self) -> u32 {
        self.terms.first().map(|t| t.1).unwrap_or(0)
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v.index()] > 0)
    }

    pub fn vars_used(&self) -> [bool; NVARS] {
        let mut used = [false; NVARS];
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                used[i] |= m.0[i] > 0;
            }
        }
        used
    }

    pub fn deg(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[v.index()]).max().unwrap_or(0)
    }

    /// Lowest exponent of `v` among the terms (`None` for zero).
    pub fn min_deg(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.0[v.index()]).min()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some((m0, _)) => it.fold(*m0, |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { neg_mod(b[j].1, p) } else { b[j].1 };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        sub_mod(a[i].1, b[j].1, p)
                    } else {
                        add_mod(a[i].1, b[j].1, p)
                    };
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { neg_mod(t.1, p) } else { t.1 };
            out.push((t.0, c));
        }
        Self { p, terms: out }
    }

    pub fn neg(&self) -> Self {
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(m, c)| (*m, neg_mod(*c, self.p))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p);
        }
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(m, k)| (*m, mul_mod(*k, c, self.p))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: u32) -> Self {
        let c = c % self.p;
        if c == 0 {
            return Self::zero(self.p);
        }
        Self {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(k, d)| (k.mul(m), mul_mod(*d, c, self.p)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms[0];
            return self.mul_term(&m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return other.mul_term(&m, c);
        }
        let p = self.p;
        let mut acc: HashMap<Mono, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = add_mod(*e, mul_mod(*ca, *cb, p), p);
            }
        }
        Self::from_map(p, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `f^p`, computed as the exponent scaling valid in characteristic p.
    pub fn frobenius(&self) -> Self {
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(m, c)| (m.scale(self.p), *c)).collect(),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        let i = v.index();
        let p = self.p;
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.0[i];
            let k = mul_mod(*c, e % p, p);
            if k == 0 {
                None
            } else {
                let mut n = m.0;
                n[i] -= 1;
                Some((Mono(n), k))
            }
        });
        Self::from_terms(p, terms)
    }

    /// True iff every exponent is divisible by p (the polynomial is a p-th power).
    pub fn all_exponents_divisible(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.0.iter().all(|e| e % self.p == 0))
    }

    /// Inverse of [`MultiPoly::frobenius`]; requires [`MultiPoly::all_exponents_divisible`].
    pub fn exponent_root(&self) -> Self {
        let p = self.p;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Mono(m.0.map(|e| e / p)), *c))
            .collect();
        // dividing every exponent by p preserves grlex order
        Self { p, terms }
    }

    /// Coefficients of `self` as a polynomial in `v`, indexed by degree.
    pub fn coeffs_in(&self, v: Var) -> Vec<MultiPoly> {
        let i = v.index();
        let d = self.deg(v) as usize;
        let mut buckets: Vec<Vec<(Mono, u32)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut n = m.0;
            n[i] = 0;
            buckets[e].push((Mono(n), *c));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // relative order is preserved except when the removed exponent reorders
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MultiPoly { p: self.p, terms: t }
            })
            .collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[MultiPoly], p: u32) -> Self {
        let mut acc = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            let m = Mono::var(v, e as u32);
            acc.extend(c.terms.iter().map(|(k, d)| (k.mul(&m), *d)));
        }
        Self::from_terms(p, acc)
    }

    /// Coefficient of `v^k` (a polynomial free of `v`).
    pub fn coeff_of(&self, v: Var, k: u32) -> Self {
        let i = v.index();
        let mut terms: Vec<(Mono, u32)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.0[i] == k)
            .map(|(m, c)| {
                let mut n = m.0;
                n[i] = 0;
                (Mono(n), *c)
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Self { p: self.p, terms }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_mono(&self, m: &Mono) -> Self {
        Self {
            p: self.p,
            terms: self.terms.iter().map(|(k, c)| (m.quotient_of(k), *c)).collect(),
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if d.terms.len() == 1 {
            let (dm, dc) = d.terms[0];
            if !self.terms.iter().all(|(m, _)| dm.divides(m)) {
                return None;
            }
            let inv = inv_mod(dc, p);
            return Some(Self {
                p,
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (dm.quotient_of(m), mul_mod(*c, inv, p)))
                    .collect(),
            });
        }
        let (dlm, dlc) = d.terms[0];
        let inv = inv_mod(dlc, p);
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, u32)> = Vec::new();
        while let Some(&(rm, rc)) = rem.terms.first() {
            if !dlm.divides(&rm) {
                return None;
            }
            let qm = dlm.quotient_of(&rm);
            let qc = mul_mod(rc, inv, p);
            quot.push((qm, qc));
            rem = rem.sub(&d.mul_term(&qm, qc));
        }
        // quotient terms come out in decreasing order
        Some(Self { p, terms: quot })
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if *c == 1 => self.clone(),
            Some((_, c)) => self.scale(inv_mod(*c, self.p)),
        }
    }

    /// Permutes the variable slots: slot `i` of the result holds slot `perm[i]` of `self`.
    pub fn permute(&self, perm: [usize; NVARS]) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut n = [0; NVARS];
            for i in 0..NVARS {
                n[i] = m.0[perm[i]];
            }
            (Mono(n), *c)
        });
        Self::from_terms(self.p, terms)
    }

    /// Evaluates at F_p values (`None` keeps the slot symbolic).
    pub fn eval_partial(&self, values: [Option<u32>; NVARS]) -> Self {
        let p = self.p;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut n = m.0;
            let mut k = *c;
            for i in 0..NVARS {
                if let Some(v) = values[i] {
                    k = mul_mod(k, pow_mod(v, n[i], p), p);
                    n[i] = 0;
                }
            }
            (Mono(n), k)
        });
        Self::from_terms(p, terms)
    }

    /// Formats with the given slot names, e.g. `2*t^3*x + 1`.
    pub fn to_expr(&self, names: &VarNames) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factors: Vec<String> = Vec::new();
                if *c != 1 || *m == Mono::ONE {
                    factors.push(c.to_string());
                }
                for i in 0..NVARS {
                    match m.0[i] {
                        0 => {}
                        1 => factors.push(names.0[i].to_string()),
                        e => factors.push(format!("{}^{}", names.0[i], e)),
                    }
                }
                factors.join("*")
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr(&VarNames::LOCAL))
    }
}
