//! The polynomials Q_d(T, S) describing `x' - x` for `x'_i = x_i (1 + y_i)`.

use std::sync::{Arc, OnceLock};

use super::tables::{cached, check_size, Cache};
use super::zpoly::{FpPolyN, ZPoly};
use super::{WittCoeff, WittVec};
use crate::error::{Error, Result};

/// `Q_0..Q_{s-1}` in variables `T_0..T_{s-1}` (slots `0..s`) and `S_0..S_{s-1}` (slots `s..2s`).
#[derive(Debug)]
pub struct QPolynomials {
    pub p: u32,
    pub s: usize,
    /// Integral polynomials, indexed by `d`.
    pub q_z: Vec<ZPoly>,
    pub q: Vec<FpPolyN>,
}

fn build(p: u32, s: usize) -> Result<QPolynomials> {
    let n = 2 * s;
    let pi = p as i128;
    let t = |i: usize| ZPoly::var(i, n);
    let sv = |i: usize| ZPoly::var(s + i, n);
    let one = ZPoly::constant(1, n);
    let mut q_z: Vec<ZPoly> = vec![ZPoly::zero(n); s];
    for d in (0..s).rev() {
        let mut acc = ZPoly::zero(n);
        for i in d..s {
            let e = p.pow((i - d) as u32);
            let grown = one.add(&sv(i))?.pow(e)?.sub(&one)?;
            let term = t(i).pow(e)?.mul(&grown)?.scale(pi.pow((s - 1 - i) as u32))?;
            acc = acc.add(&term)?;
        }
        for i in d + 1..s {
            let e = p.pow((i - d) as u32);
            let term = q_z[i].pow(e)?.scale(pi.pow((s - 1 - i) as u32))?;
            acc = acc.sub(&term)?;
        }
        q_z[d] = acc.div_exact_int(pi.pow((s - 1 - d) as u32))?;
    }
    let q = q_z.iter().map(|z| z.reduce(p)).collect();
    Ok(QPolynomials { p, s, q_z, q })
}

/// Cached Q polynomials for (p, s), subject to the same size caps as the Witt tables.
pub fn q_polys(p: u32, s: usize) -> Result<Arc<QPolynomials>> {
    check_size(p, s)?;
    static CACHE: Cache<QPolynomials> = OnceLock::new();
    cached(&CACHE, p, s, || build(p, s))
}

impl QPolynomials {
    /// `(Q_{s-1}(x, y), ..., Q_0(x, y))` as a Witt vector.
    pub fn eval<R: WittCoeff>(&self, x: &WittVec<R>, y: &WittVec<R>) -> Result<WittVec<R>> {
        if x.len() != self.s || y.len() != self.s {
            return Err(Error::LengthMismatch(x.len(), self.s));
        }
        let mut args: Vec<R> = (0..self.s).map(|i| x.a(i).clone()).collect();
        args.extend((0..self.s).map(|i| y.a(i).clone()));
        let comps = (0..self.s).rev().map(|d| R::eval(&self.q[d], &args)).collect();
        Ok(WittVec::new(self.p, comps))
    }

    /// Single `Q_d` evaluated at `T_i = x_i`, `S_i = y_i` (weight indices).
    pub fn eval_d<R: WittCoeff>(&self, d: usize, x: &[R], y: &[R]) -> R {
        let mut args: Vec<R> = x.to_vec();
        args.extend(y.iter().cloned());
        R::eval(&self.q[d], &args)
    }

    /// Every monomial of `Q_d` contains some `S_i`.
    pub fn in_s_ideal(&self, d: usize) -> bool {
        self.q_z[d]
            .terms()
            .all(|(e, _)| e[self.s..].iter().any(|&k| k > 0))
    }

    /// `Q_d - sum_i T_i^{p^{i-d}} S_i` lies in the ideal generated by the `S_i S_j`.
    pub fn linear_part_ok(&self, d: usize) -> Result<bool> {
        let n = 2 * self.s;
        let mut lin = ZPoly::zero(n);
        for i in d..self.s {
            let e = self.p.pow((i - d) as u32);
            lin = lin.add(&ZPoly::var(i, n).pow(e)?.mul(&ZPoly::var(self.s + i, n))?)?;
        }
        let rest = self.q_z[d].sub(&lin)?;
        let ok = rest
            .terms()
            .all(|(e, _)| e[self.s..].iter().map(|&k| k as u32).sum::<u32>() >= 2);
        Ok(ok)
    }

    /// After `T_i -> T_i^{p^{s-1-i}}`, `Q_d` is homogeneous of degree `p^{s-1-d}` in `T`.
    pub fn homogeneity_ok(&self, d: usize) -> bool {
        let mut k: Vec<u16> = (0..self.s)
            .map(|i| self.p.pow((self.s - 1 - i) as u32) as u16)
            .collect();
        k.extend(std::iter::repeat_n(1, self.s));
        let target = self.p.pow((self.s - 1 - d) as u32);
        self.q_z[d].inflate(&k).terms().all(|(e, _)| {
            e[..self.s].iter().map(|&x| x as u32).sum::<u32>() == target
        })
    }

    /// `Q_{s-1} = T_{s-1} S_{s-1}`.
    pub fn top_is_product(&self) -> Result<bool> {
        let n = 2 * self.s;
        let top = ZPoly::var(self.s - 1, n).mul(&ZPoly::var(2 * self.s - 1, n))?;
        Ok(self.q_z[self.s - 1] == top)
    }
}
