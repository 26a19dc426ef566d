use std::fmt;

use super::fp::inv_mod;
use super::gcd::gcd;
use super::poly::{Mono, MultiPoly, Var, VarNames, NVARS};
use crate::error::{Error, Result};

/// Reduced fraction of polynomials over F_p with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Canonical reduced form of `num/den`.
    pub fn normalize(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = num.p();
        if num.is_zero() {
            return Ok(Self::zero(p));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        Ok(Self::scaled(num, den))
    }

    /// Makes the denominator monic; assumes `num` and `den` coprime.
    fn scaled(num: MultiPoly, den: MultiPoly) -> Self {
        let lc = den.lc();
        if lc == 1 {
            Self { num, den }
        } else {
            let inv = inv_mod(lc, num.p());
            Self {
                num: num.scale(inv),
                den: den.scale(inv),
            }
        }
    }

    pub fn zero(p: u32) -> Self {
        Self {
            num: MultiPoly::zero(p),
            den: MultiPoly::one(p),
        }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(1, p)
    }

    pub fn constant(c: i64, p: u32) -> Self {
        Self {
            num: MultiPoly::constant(c, p),
            den: MultiPoly::one(p),
        }
    }

    pub fn var(v: Var, p: u32) -> Self {
        Self::from_poly(MultiPoly::var(v, p))
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        let p = num.p();
        Self {
            num,
            den: MultiPoly::one(p),
        }
    }

    /// `c * v^e` for any integer exponent.
    pub fn monomial(c: u32, v: Var, e: i64, p: u32) -> Self {
        let m = Mono::var(v, e.unsigned_abs() as u32);
        if e >= 0 {
            Self::from_poly(MultiPoly::term(m, c, p))
        } else if c.is_multiple_of(p) {
            Self::zero(p)
        } else {
            Self {
                num: MultiPoly::constant(c as i64, p),
                den: MultiPoly::term(m, 1, p),
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.num.p()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<u32> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.uses(v)
    }

    pub fn vars_used(&self) -> [bool; NVARS] {
        let a = self.num.vars_used();
        let b = self.den.vars_used();
        std::array::from_fn(|i| a[i] || b[i])
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        let combine = |x: &MultiPoly, y: &MultiPoly| if negate { x.sub(y) } else { x.add(y) };
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        if self.den == other.den {
            let num = combine(&self.num, &other.num);
            return Self::normalize(num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            let num = combine(&self.num.mul(&other.den), &other.num);
            return Self {
                num,
                den: other.den.clone(),
            };
        }
        if other.den.is_one() {
            let num = combine(&self.num, &other.num.mul(&self.den));
            return Self {
                num,
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = combine(&self.num.mul(&other.den), &other.num.mul(&self.den));
            return Self::scaled(num, self.den.mul(&other.den));
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = other.den.div_exact(&g).unwrap();
        let num = combine(&self.num.mul(&d2), &other.num.mul(&d1));
        if num.is_zero() {
            return Self::zero(self.p());
        }
        let h = gcd(&num, &g);
        let num = num.div_exact(&h).unwrap();
        let den = d1.mul(&d2).mul(&g.div_exact(&h).unwrap());
        Self::scaled(num, den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p());
        }
        let (a, d) = cancel(&self.num, &other.den);
        let (c, b) = cancel(&other.num, &self.den);
        Self::scaled(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::scaled(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn scale(&self, c: u32) -> Self {
        if c.is_multiple_of(self.p()) {
            Self::zero(self.p())
        } else {
            Self {
                num: self.num.scale(c),
                den: self.den.clone(),
            }
        }
    }

    /// Integer powers, negative exponents included (panics on 0^-k).
    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        base.pow(e.unsigned_abs() as u32)
    }

    /// Powers of a reduced fraction stay reduced.
    pub fn pow(&self, e: u32) -> Self {
        Self::scaled(self.num.pow(e), self.den.pow(e))
    }

    pub fn frobenius(&self) -> Self {
        Self {
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    pub fn derivative(&self, v: Var) -> Self {
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::normalize(num, self.den.mul(&self.den)).unwrap()
    }

    fn single_variable(&self) -> Result<Option<Var>> {
        let used = self.vars_used();
        let vars: Vec<usize> = (0..NVARS).filter(|&i| used[i]).collect();
        match vars.len() {
            0 => Ok(None),
            1 => Ok(Some(Var::from_index(vars[0]))),
            _ => Err(Error::Unsupported(
                "p-th power test needs at most one non-constant variable".into(),
            )),
        }
    }

    /// Whether `self` is a p-th power, decided by a vanishing derivative.
    pub fn is_pth_power(&self) -> Result<bool> {
        Ok(match self.single_variable()? {
            None => true,
            Some(v) => self.derivative(v).is_zero(),
        })
    }

    pub fn pth_root(&self) -> Result<Self> {
        if !self.is_pth_power()? {
            return Err(Error::NotPthPower);
        }
        Ok(Self {
            num: self.num.exponent_root(),
            den: self.den.exponent_root(),
        })
    }

    /// Permutes variable slots (see [`MultiPoly::permute`]).
    pub fn permute(&self, perm: [usize; NVARS]) -> Self {
        Self::scaled(self.num.permute(perm), self.den.permute(perm))
    }

    /// Substitutes rational functions for the listed variable slots, without the
    /// final gcd reduction. `None` keeps a slot unchanged.
    pub fn substitute_raw(&self, subs: &[Option<RatFunc>; NVARS]) -> Result<(MultiPoly, MultiPoly)> {
        let mut degs = [0u32; NVARS];
        for i in 0..NVARS {
            if subs[i].is_some() {
                degs[i] = self.num.deg(Var::from_index(i)).max(self.den.deg(Var::from_index(i)));
            }
        }
        let n = eval_common(&self.num, subs, &degs);
        let d = eval_common(&self.den, subs, &degs);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok((n, d))
    }

    pub fn substitute(&self, subs: &[Option<RatFunc>; NVARS]) -> Result<Self> {
        let (n, d) = self.substitute_raw(subs)?;
        Self::normalize(n, d)
    }

    pub fn to_expr(&self, names: &VarNames) -> String {
        let n = self.num.to_expr(names);
        if self.den.is_one() {
            return n;
        }
        let d = self.den.to_expr(names);
        let n = if self.num.n_terms() > 1 { format!("({n})") } else { n };
        let d = if self.den.n_terms() > 1 || d.contains('*') {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }
}

fn cancel(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
    if a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
    }
}

/// Evaluates `f` at `n_i/d_i` multiplied by `prod d_i^{degs_i}`, which is a polynomial.
fn eval_common(f: &MultiPoly, subs: &[Option<RatFunc>; NVARS], degs: &[u32; NVARS]) -> MultiPoly {
    let p = f.p();
    // powers[i][k] = n_i^k * d_i^(degs_i - k)
    let mut powers: Vec<Vec<MultiPoly>> = Vec::with_capacity(NVARS);
    for i in 0..NVARS {
        match &subs[i] {
            None => powers.push(Vec::new()),
            Some(r) => {
                let dg = degs[i] as usize;
                let mut np = vec![MultiPoly::one(p)];
                let mut dp = vec![MultiPoly::one(p)];
                for k in 1..=dg {
                    np.push(np[k - 1].mul(r.num()));
                    dp.push(dp[k - 1].mul(r.den()));
                }
                powers.push((0..=dg).map(|k| np[k].mul(&dp[dg - k])).collect());
            }
        }
    }
    let mut acc = MultiPoly::zero(p);
    for (m, c) in f.terms() {
        let mut keep = m.0;
        let mut term = MultiPoly::one(p);
        for i in 0..NVARS {
            if subs[i].is_some() {
                term = term.mul(&powers[i][m.0[i] as usize]);
                keep[i] = 0;
            }
        }
        acc = acc.add(&term.mul_term(&Mono(keep), *c));
    }
    acc
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr(&VarNames::LOCAL))
    }
}
