//! Coordinate model of the dilatation L^(r): the embeddings u, v of K, the valuation
//! bounds for Q_d(u(a), b), and the Artin-Schreier reduction that yields the
//! characteristic form geometrically.
//!
//! Elements live in F_p(t, x, w, w') with slots T, X, W, Wp; the valuation is t-adic and
//! the residue field at t = 0 is F_p(x, w, w').

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::base::{Mono, MultiPoly, RadicialElem, RatFunc, Var};
use crate::conductors::{total_dimension, Character, GradedNonLogForm};
use crate::error::{Error, Result};
use crate::local::{LocalElem, Val};
use crate::witt::zpoly::{eval_fractions, FpPolyN};
use crate::witt::{in_fil_prime, q_polys, WittCoeff, WittVec};

/// An unreduced fraction `num / den`; only monomial content is cancelled.
#[derive(Clone)]
pub struct DilatElem {
    num: MultiPoly,
    den: MultiPoly,
}

fn t_ord(f: &MultiPoly) -> Option<u32> {
    f.min_deg(Var::T)
}

impl DilatElem {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::trimmed(num, den))
    }

    fn trimmed(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return Self {
                den: MultiPoly::one(num.p()),
                num,
            };
        }
        let common = num.min_mono().meet(&den.min_mono());
        if common == Mono::default() {
            return Self { num, den };
        }
        Self {
            num: num.div_mono(&common),
            den: den.div_mono(&common),
        }
    }

    pub fn zero(p: u32) -> Self {
        Self {
            num: MultiPoly::zero(p),
            den: MultiPoly::one(p),
        }
    }

    pub fn one(p: u32) -> Self {
        Self {
            num: MultiPoly::one(p),
            den: MultiPoly::one(p),
        }
    }

    pub fn from_ratfunc(f: &RatFunc) -> Self {
        Self::trimmed(f.num().clone(), f.den().clone())
    }

    pub fn var(v: Var, p: u32) -> Self {
        Self::from_ratfunc(&RatFunc::var(v, p))
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

    pub fn ord(&self) -> Val {
        match (t_ord(&self.num), t_ord(&self.den)) {
            (Some(a), Some(b)) => Val::Finite(a as i64 - b as i64),
            _ => Val::Infinity,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::trimmed(self.num.add(&o.num), self.den.clone());
        }
        Self::trimmed(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p());
        }
        Self::trimmed(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::trimmed(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::trimmed(self.num.pow(e), self.den.pow(e))
    }

    /// Residue class at t = 0 as `(num, den)` polynomials in x, w, w'.
    pub fn residue(&self) -> Result<(MultiPoly, MultiPoly)> {
        let p = self.p();
        match self.ord() {
            Val::Infinity => Ok((MultiPoly::zero(p), MultiPoly::one(p))),
            Val::Finite(v) if v > 0 => Ok((MultiPoly::zero(p), MultiPoly::one(p))),
            Val::Finite(v) if v < 0 => Err(Error::NotRegular(format!("valuation {v} < 0"))),
            Val::Finite(_) => {
                let kn = t_ord(&self.num).unwrap_or(0);
                let kd = t_ord(&self.den).unwrap_or(0);
                Ok((self.num.coeff_of(Var::T, kn), self.den.coeff_of(Var::T, kd)))
            }
        }
    }

    pub fn to_ratfunc(&self) -> Result<RatFunc> {
        RatFunc::normalize(self.num.clone(), self.den.clone())
    }
}

impl PartialEq for DilatElem {
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl fmt::Debug for DilatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DilatElem({:?} / {:?})", self.num, self.den)
    }
}

impl WittCoeff for DilatElem {
    fn czero(p: u32) -> Self {
        DilatElem::zero(p)
    }
    fn cone(p: u32) -> Self {
        DilatElem::one(p)
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
        let nums: Vec<_> = args.iter().map(|a| &a.num).collect();
        let dens: Vec<_> = args.iter().map(|a| &a.den).collect();
        let (n, d) = eval_fractions(f, &nums, &dens);
        DilatElem::trimmed(n, d)
    }
}

/// First projection: the identity on (t, x).
pub fn embed_u(a: &LocalElem) -> DilatElem {
    DilatElem::from_ratfunc(a.value())
}

/// Second projection: `t -> t (1 + t^{r-1} w)`, `x -> x + t^r w'`.
pub fn embed_v(a: &LocalElem, r: u32) -> Result<DilatElem> {
    assert!(r >= 1, "dilatation radius must be positive");
    let p = a.p();
    let t = RatFunc::var(Var::T, p);
    let tr = t.pow(r);
    let vt = t.add(&tr.mul(&RatFunc::var(Var::W, p)));
    let vx = RatFunc::var(Var::X, p).add(&tr.mul(&RatFunc::var(Var::Wp, p)));
    let (n, d) = a.value().substitute_raw(&[Some(vt), Some(vx), None, None])?;
    DilatElem::new(n, d)
}

/// `b_i = v(a_i)/u(a_i) - 1`, or 0 when `a_i = 0`.
pub fn ratio_vector(a: &WittVec<LocalElem>, r: u32) -> Result<WittVec<DilatElem>> {
    let p = a.p();
    let mut comps = Vec::with_capacity(a.len());
    for c in a.comps() {
        if c.is_zero() {
            comps.push(DilatElem::zero(p));
        } else {
            comps.push(embed_v(c, r)?.div(&embed_u(c))?.sub(&DilatElem::one(p)));
        }
    }
    Ok(WittVec::new(p, comps))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// `p^d ord Q_d >= bound`
    AtLeast,
    /// `p^d ord Q_d > bound`
    Above,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub d: Option<usize>,
    /// Weighted valuation actually observed.
    pub value: Val,
    pub bound: i64,
    pub kind: BoundKind,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub m: i64,
    pub r: u32,
    pub checks: Vec<LemmaCheck>,
    /// `v(a) - u(a)` computed in W_s(L^(r)) equals `Q(u(a), b)`.
    pub q_identity: bool,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.q_identity && self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

fn check(name: &str, d: Option<usize>, value: Val, bound: i64, kind: BoundKind) -> LemmaCheck {
    let ok = match (&kind, value) {
        (_, Val::Infinity) => true,
        (BoundKind::AtLeast, Val::Finite(v)) => v >= bound,
        (BoundKind::Above, Val::Finite(v)) => v > bound,
    };
    LemmaCheck {
        name: name.to_string(),
        d,
        value,
        bound,
        kind,
        ok,
    }
}

/// Evaluates the valuation bounds on `Q_d(u(a), b)` in L^(r) for `a` in fil'_m.
pub fn check_valuation_lemmas(a: &WittVec<LocalElem>, r: u32, m: i64) -> Result<LemmaReport> {
    if m < 1 || r < 1 || !in_fil_prime(a, m) {
        return Err(Error::Precondition(format!("representative not in fil'_{m}")));
    }
    let p = a.p();
    let s = a.len();
    let q = q_polys(p, s)?;
    let ua = a.map(embed_u);
    let b = ratio_vector(a, r)?;
    let qv = q.eval(&ua, &b)?;
    let va = a.map(|c| embed_v(c, r).expect("denominators stay nonzero under v"));
    let q_identity = va.sub(&ua)? == qv;

    let mut checks = Vec::new();
    let weighted = |d: usize| qv.a(d).ord().scale((p as i64).pow(d as u32));
    let rr = r as i64;
    if m == 1 && r == 1 {
        for d in 0..s {
            checks.push(check("(m,r)=(1,1)", Some(d), weighted(d), 0, BoundKind::AtLeast));
        }
    }
    if r > 1 {
        for d in 1..s {
            checks.push(check("r>1, d>0", Some(d), weighted(d), -m + rr, BoundKind::Above));
        }
        if s > 0 {
            checks.push(check("r>1, d=0", Some(0), qv.a(0).ord(), -m + rr, BoundKind::AtLeast));
        }
    }
    if m >= 2 && rr == m && s > 0 {
        let mut lin = DilatElem::zero(p);
        for i in 0..s {
            lin = lin.add(&ua.a(i).pow(p.pow(i as u32)).mul(b.a(i)));
        }
        let diff = qv.a(0).sub(&lin);
        checks.push(check("r=m, Q_0 linear part", None, diff.ord(), 0, BoundKind::Above));
    }
    Ok(LemmaReport {
        m,
        r,
        checks,
        q_identity,
    })
}

/// Artin-Schreier class `c_w w + c_wp w'` over F_p(x, w, w').
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASLinearForm {
    pub c_w: RadicialElem,
    pub c_wp: RatFunc,
}

impl ASLinearForm {
    /// The non-logarithmic form under `w -> dt/t^m`, `w' -> dx/t^m`, with the sign that
    /// matches the Witt-vector side.
    pub fn to_form(&self, m: i64) -> GradedNonLogForm {
        GradedNonLogForm {
            level: m,
            c_pi: self.c_w.neg(),
            c_x: self.c_wp.neg(),
        }
    }
}

/// `R = sum_j u(a_j)^{p^j-1} (v(a_j) - u(a_j))` in L^(r).
pub fn torsor_equation(a: &WittVec<LocalElem>, r: u32) -> Result<DilatElem> {
    let p = a.p();
    let mut acc = DilatElem::zero(p);
    for j in 0..a.len() {
        let aj = a.a(j);
        if aj.is_zero() {
            continue;
        }
        let u = embed_u(aj);
        let diff = embed_v(aj, r)?.sub(&u);
        acc = acc.add(&u.pow(p.pow(j as u32) - 1).mul(&diff));
    }
    Ok(acc)
}

/// Reduces `R` mod t at r = m and brings the class to linear form in w, w'.
pub fn as_reduction(a: &WittVec<LocalElem>, m: i64) -> Result<ASLinearForm> {
    if m < 2 || !in_fil_prime(a, m) {
        return Err(Error::Precondition(format!("representative not in fil'_{m}")));
    }
    let p = a.p();
    let r = torsor_equation(a, m as u32)?;
    let (num, den) = r.residue()?;
    if den.uses(Var::W) || den.uses(Var::Wp) {
        return Err(Error::NotRegular("residue denominator involves w or w'".into()));
    }
    let mut groups: BTreeMap<(u32, u32), Vec<(Mono, u32)>> = BTreeMap::new();
    for (mono, c) in num.terms() {
        let key = (mono.0[Var::W.index()], mono.0[Var::Wp.index()]);
        let mut rest = *mono;
        rest.0[Var::W.index()] = 0;
        rest.0[Var::Wp.index()] = 0;
        groups.entry(key).or_default().push((rest, *c));
    }
    let mut c_w = RadicialElem::zero(p);
    let mut c_wp = RatFunc::zero(p);
    for ((dw, dwp), terms) in groups {
        let coeff = RatFunc::normalize(MultiPoly::from_terms(p, terms), den.clone())?;
        match (dw, dwp) {
            (1, 0) => c_w = c_w.add(&RadicialElem::from_base(&coeff)),
            (0, 1) => c_wp = c_wp.add(&coeff),
            (k, 0) if k == p => c_w = c_w.add(&RadicialElem::radicial_root(&coeff)),
            (0, k) if k == p && coeff.is_pth_power()? => c_wp = c_wp.add(&coeff.pth_root()?),
            _ => {
                return Err(Error::NonReducibleMonomial(format!(
                    "({}) w^{dw} w'^{dwp}",
                    coeff.to_expr(&crate::base::VarNames::LOCAL)
                )))
            }
        }
    }
    Ok(ASLinearForm { c_w, c_wp })
}

/// Characteristic form read off the dilatation fiber, at level dt.
pub fn geometric_cform(chi: &Character) -> Result<Option<GradedNonLogForm>> {
    let (m, rep) = total_dimension(chi)?;
    if m == 1 {
        return Ok(None);
    }
    Ok(Some(as_reduction(&rep, m)?.to_form(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conductors::cform;
    use crate::expr::{parse_ratfunc, Vocabulary};
    use proptest::prelude::*;

    fn le(s: &str, p: u32) -> LocalElem {
        LocalElem::new(parse_ratfunc(s, p, &Vocabulary::LOCAL).unwrap())
    }

    fn chi(p: u32, comps: &[&str]) -> Character {
        Character::new(WittVec::new(p, comps.iter().map(|c| le(c, p)).collect())).unwrap()
    }

    #[test]
    fn embedding_valuations() {
        for r in 1..5u32 {
            let t = le("t", 3);
            let ratio = embed_v(&t, r).unwrap().div(&embed_u(&t)).unwrap().sub(&DilatElem::one(3));
            assert_eq!(ratio.ord(), Val::Finite(r as i64 - 1));
            let x = le("x", 3);
            let ratio = embed_v(&x, r).unwrap().div(&embed_u(&x)).unwrap().sub(&DilatElem::one(3));
            assert_eq!(ratio.ord(), Val::Finite(r as i64));
        }
    }

    #[test]
    fn small_lemma_examples() {
        let a = WittVec::scalar(le("1/t", 3));
        let rep = check_valuation_lemmas(&a, 2, 2).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let q = q_polys(3, 1).unwrap();
        let qv = q.eval(&a.map(embed_u), &ratio_vector(&a, 2).unwrap()).unwrap();
        assert_eq!(qv.a(0).ord(), Val::Finite(0));

        let a = WittVec::scalar(le("x/t^2", 2));
        assert!(check_valuation_lemmas(&a, 2, 2).unwrap().passed());
        let a = WittVec::new(2, vec![le("x + t", 2), le("t^2", 2)]);
        for r in 1..4 {
            assert!(check_valuation_lemmas(&a, r, 1).unwrap().passed());
        }
    }

    #[test]
    fn exceptional_reduction() {
        let a = WittVec::scalar(le("x/t^2", 2));
        let f = as_reduction(&a, 2).unwrap();
        assert_eq!(f.c_w, RadicialElem::from_y(RatFunc::var(Var::X, 2)));
        assert_eq!(f.c_wp, RatFunc::one(2));
        let c = chi(2, &["x/t^2"]);
        assert_eq!(geometric_cform(&c).unwrap(), cform(&c).unwrap());
    }

    #[test]
    fn sign_is_fixed_at_p3() {
        let a = WittVec::scalar(le("x/t^3", 3));
        let f = as_reduction(&a, 3).unwrap();
        assert!(f.c_w.is_zero());
        assert_eq!(f.c_wp, RatFunc::one(3));
        let c = chi(3, &["x/t^3"]);
        assert_eq!(geometric_cform(&c).unwrap(), cform(&c).unwrap());
    }

    #[test]
    fn agrees_with_witt_side() {
        for (p, comps) in [
            (2, vec!["x/t^3"]),
            (2, vec!["x/t", "1/t^3"]),
            (3, vec!["x/t^2"]),
            (3, vec!["1/t^4 + x/t"]),
            (2, vec!["x^2/t^2"]),
            (2, vec!["0", "x/t"]),
        ] {
            let c = chi(p, &comps);
            assert_eq!(geometric_cform(&c).unwrap(), cform(&c).unwrap(), "{p} {comps:?}");
        }
    }

    #[test]
    fn integral_gives_zero_residue() {
        let a = WittVec::scalar(le("x + t", 2));
        let r = torsor_equation(&a, 2).unwrap();
        assert!(r.ord().at_least(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn u_is_multiplicative(i in 0i64..4, j in 0u32..3, k in 1u32..3) {
            let f = le(&format!("x^{j}/t^{i} + 1"), 3);
            let g = le(&format!("(x + t)^{k}"), 3);
            prop_assert_eq!(embed_u(&f.mul(&g)), embed_u(&f).mul(&embed_u(&g)));
            let r = k + 1;
            prop_assert_eq!(embed_v(&f.mul(&g), r).unwrap(), embed_v(&f, r).unwrap().mul(&embed_v(&g, r).unwrap()));
        }
    }
}
