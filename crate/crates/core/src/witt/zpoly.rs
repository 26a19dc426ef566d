//! Integer polynomials in many variables (for building universal Witt and Q polynomials)
//! and their reductions mod p.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::base::fp::reduce_i128;
use crate::base::MultiPoly;
use crate::error::{Error, Result};

pub type Exps = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    nvars: usize,
    terms: BTreeMap<Exps, i128>,
}

fn overflow() -> Error {
    Error::Integrality("integer overflow while building universal polynomials".into())
}

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: i128, nvars: usize) -> Self {
        let mut z = Self::zero(nvars);
        if c != 0 {
            z.terms.insert(vec![0; nvars], c);
        }
        z
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut z = Self::zero(nvars);
        z.terms.insert(e, 1);
        z
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &i128)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let v = out.terms.entry(e.clone()).or_insert(0);
            *v = v.checked_add(*c).ok_or_else(overflow)?;
            if *v == 0 {
                out.terms.remove(e);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i128) -> Result<Self> {
        if k == 0 {
            return Ok(Self::zero(self.nvars));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), c.checked_mul(k).ok_or_else(overflow)?);
        }
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut acc: HashMap<Exps, i128> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let prod = ca.checked_mul(*cb).ok_or_else(overflow)?;
                let v = acc.entry(e).or_insert(0);
                *v = v.checked_add(prod).ok_or_else(overflow)?;
            }
        }
        Ok(Self {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::constant(1, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Division by an integer, failing unless every coefficient is divisible.
    pub fn div_exact_int(&self, k: i128) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if c % k != 0 {
                return Err(Error::Integrality(format!(
                    "coefficient {c} not divisible by {k}"
                )));
            }
            terms.insert(e.clone(), c / k);
        }
        Ok(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Substitutes `x_i -> x_i^{k_i}`.
    pub fn inflate(&self, k: &[u16]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(k).map(|(a, b)| a * b).collect(), *c))
                .collect(),
        }
    }

    pub fn reduce(&self, p: u32) -> FpPolyN {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let r = reduce_i128(*c, p);
                (r != 0).then(|| (e.clone(), r))
            })
            .collect();
        FpPolyN {
            nvars: self.nvars,
            p,
            terms,
        }
    }
}

/// A polynomial in `nvars` variables over F_p, used for evaluation on coefficient rings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpPolyN {
    nvars: usize,
    p: u32,
    terms: Vec<(Exps, u32)>,
}

impl FpPolyN {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &[(Exps, u32)] {
        &self.terms
    }

    pub fn max_degrees(&self) -> Vec<u16> {
        let mut d = vec![0u16; self.nvars];
        for (e, _) in &self.terms {
            for i in 0..self.nvars {
                d[i] = d[i].max(e[i]);
            }
        }
        d
    }
}

/// Evaluates `f` at fractions `nums[i]/dens[i]` and returns an unreduced `(num, den)`.
pub fn eval_fractions(f: &FpPolyN, nums: &[&MultiPoly], dens: &[&MultiPoly]) -> (MultiPoly, MultiPoly) {
    let p = f.p;
    let degs = f.max_degrees();
    let n = f.nvars;
    assert_eq!(nums.len(), n);
    // table[i][k] = nums[i]^k * dens[i]^(degs[i]-k)
    let mut table: Vec<Vec<MultiPoly>> = Vec::with_capacity(n);
    let mut den = MultiPoly::one(p);
    for i in 0..n {
        let dg = degs[i] as usize;
        if nums[i].is_zero() {
            // only k = 0 survives
            let mut row = vec![MultiPoly::zero(p); dg + 1];
            row[0] = dens[i].pow(dg as u32);
            den = den.mul(&row[0]);
            table.push(row);
            continue;
        }
        let mut np = vec![MultiPoly::one(p)];
        let mut dp = vec![MultiPoly::one(p)];
        for k in 1..=dg {
            np.push(np[k - 1].mul(nums[i]));
            dp.push(dp[k - 1].mul(dens[i]));
        }
        den = den.mul(&dp[dg]);
        table.push((0..=dg).map(|k| np[k].mul(&dp[dg - k])).collect());
    }
    let mut num = MultiPoly::zero(p);
    'terms: for (e, c) in &f.terms {
        let mut prod = MultiPoly::constant(*c as i64, p);
        for i in 0..n {
            let factor = &table[i][e[i] as usize];
            if factor.is_zero() {
                continue 'terms;
            }
            if !factor.is_one() {
                prod = prod.mul(factor);
            }
        }
        num = num.add(&prod);
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_arithmetic() {
        let x = ZPoly::var(0, 2);
        let y = ZPoly::var(1, 2);
        let s = x.add(&y).unwrap().pow(3).unwrap();
        let d = s.sub(&x.pow(3).unwrap()).unwrap().sub(&y.pow(3).unwrap()).unwrap();
        let q = d.div_exact_int(3).unwrap();
        assert_eq!(q.terms().count(), 2);
        assert!(d.div_exact_int(2).is_err());
        let r = q.reduce(3);
        assert_eq!(r.terms().len(), 2);
    }
}
