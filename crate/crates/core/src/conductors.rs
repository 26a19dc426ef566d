//! Swan conductor, total dimension, refined Swan conductor and characteristic form
//! of characters given by Witt vector representatives over K = F_p(x)((t)).

use crate::base::{RadicialElem, RatFunc, VarNames};
use crate::error::{Error, Result};
use crate::local::LocalElem;
use crate::witt::{
    check_size, in_fil, in_fil_prime, least_fil_level, least_fil_prime_level, s_prime,
    WittVec,
};

/// A character, carried by a representative `a` of its class in W_s(K)/(F-1)W_s(K).
#[derive(Clone, PartialEq, Debug)]
pub struct Character {
    rep: WittVec<LocalElem>,
}

impl Character {
    pub fn new(rep: WittVec<LocalElem>) -> Result<Self> {
        check_size(rep.p(), rep.len())?;
        Ok(Self { rep })
    }

    pub fn p(&self) -> u32 {
        self.rep.p()
    }

    pub fn s(&self) -> usize {
        self.rep.len()
    }

    pub fn rep(&self) -> &WittVec<LocalElem> {
        &self.rep
    }

    /// The same character, represented by `a + (F-1)(b)`.
    pub fn twist(&self, b: &WittVec<LocalElem>) -> Result<Self> {
        Self::new(self.rep.add(&b.f_minus_one()?)?)
    }
}

/// `(alpha dt/t + beta dx) / t^level`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedLogForm {
    pub level: i64,
    pub alpha: RatFunc,
    pub beta: RatFunc,
}

impl GradedLogForm {
    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }
}

/// `(c_pi dt + c_x dx) / t^level` with `c_pi` in F_p(x)^{1/p}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedNonLogForm {
    pub level: i64,
    pub c_pi: RadicialElem,
    pub c_x: RatFunc,
}

impl GradedNonLogForm {
    pub fn is_zero(&self) -> bool {
        self.c_pi.is_zero() && self.c_x.is_zero()
    }

    /// Whether `c_pi` lies outside F_p(x).
    pub fn is_radicial(&self) -> bool {
        !self.c_pi.is_in_base()
    }

    pub fn neg(&self) -> Self {
        Self {
            level: self.level,
            c_pi: self.c_pi.neg(),
            c_x: self.c_x.neg(),
        }
    }

    pub fn describe(&self) -> String {
        let (c_pi, _) = self.c_pi.to_expr_preferring_base();
        format!(
            "(({c_pi}) dt + ({}) dx) / t^{}",
            self.c_x.to_expr(&VarNames::LOCAL),
            self.level
        )
    }
}

/// `-sum_i a_i^{p^i - 1} da_i = A dt + B dx`.
pub fn differential(a: &WittVec<LocalElem>) -> (LocalElem, LocalElem) {
    let p = a.p();
    let mut da = LocalElem::zero(p);
    let mut db = LocalElem::zero(p);
    for i in 0..a.len() {
        let ai = a.a(i);
        if ai.is_zero() {
            continue;
        }
        let (dt, dx) = ai.d_form();
        let w = ai.pow(p.pow(i as u32) - 1);
        da = da.sub(&w.mul(&dt));
        db = db.sub(&w.mul(&dx));
    }
    (da, db)
}

/// Class of `-sum a_i^{p^i-1} da_i` in gr_n of the logarithmic filtration on differentials.
pub fn log_graded_form(a: &WittVec<LocalElem>, n: i64) -> Result<GradedLogForm> {
    if n < 1 || !in_fil(a, n) {
        return Err(Error::Precondition(format!("representative not in fil_{n}")));
    }
    let (da, db) = differential(a);
    if !da.ord().at_least(-n - 1) || !db.ord().at_least(-n) {
        return Err(Error::Inconsistent(format!("differential has a pole beyond level {n}")));
    }
    Ok(GradedLogForm {
        level: n,
        alpha: da.coeff(-n - 1),
        beta: db.coeff(-n),
    })
}

/// Class of `-F^{s-1}d(a)` in the non-logarithmic graded piece at level `m`, including the
/// square-root term when `(p, m) = (2, 2)`.
pub fn nonlog_graded_form(a: &WittVec<LocalElem>, m: i64) -> Result<GradedNonLogForm> {
    if m < 2 || !in_fil_prime(a, m) {
        return Err(Error::Precondition(format!("representative not in fil'_{m}")));
    }
    let p = a.p();
    let (da, db) = differential(a);
    if !da.ord().at_least(-m) || !db.ord().at_least(-m) {
        return Err(Error::Inconsistent(format!("differential has a pole beyond level {m}")));
    }
    let mut c_pi = RadicialElem::from_base(&da.coeff(-m));
    if p == 2 && m == 2 && !a.is_empty() {
        let top = a.a(0).coeff(-2);
        c_pi = c_pi.add(&RadicialElem::radicial_root(&top));
    }
    Ok(GradedNonLogForm {
        level: m,
        c_pi,
        c_x: db.coeff(-m),
    })
}

/// Entries `(i, e, c)` with `p^i e = -level` and `c` the coefficient of `t^e` in `a_i`.
fn window(a: &WittVec<LocalElem>, level: i64, max_index: usize) -> Vec<(usize, i64, RatFunc)> {
    let p = a.p() as i64;
    let mut out = Vec::new();
    for i in 0..max_index.min(a.len()) {
        let w = p.pow(i as u32);
        if level % w != 0 {
            continue;
        }
        let e = -level / w;
        let c = a.a(i).coeff(e);
        if !c.is_zero() {
            out.push((i, e, c));
        }
    }
    out
}

/// Builds `b` with `F(b)` matching the window entries, or reports why that is impossible.
fn lift_window(a: &WittVec<LocalElem>, entries: &[(usize, i64, RatFunc)], what: &str) -> Result<WittVec<LocalElem>> {
    let p = a.p();
    let mut b = WittVec::zero(p, a.len());
    for (i, e, c) in entries {
        if e % p as i64 != 0 {
            return Err(Error::ExactnessViolation(format!(
                "{what}: vanishing form but a_{i} has a t^{e} term with p not dividing {e}"
            )));
        }
        if !c.is_pth_power()? {
            return Err(Error::ExactnessViolation(format!(
                "{what}: vanishing form but the t^{e} coefficient of a_{i} is not a p-th power"
            )));
        }
        b.set_a(*i, LocalElem::monomial(&c.pth_root()?, e / p as i64));
    }
    Ok(b)
}

/// Reduces the representative until its log graded form is nonzero; returns `(sw, reduced)`.
pub fn swan_conductor(chi: &Character) -> Result<(i64, WittVec<LocalElem>)> {
    let mut a = chi.rep().clone();
    let mut n = least_fil_level(&a);
    loop {
        if n == 0 {
            return Ok((0, a));
        }
        let form = log_graded_form(&a, n)?;
        if !form.is_zero() {
            return Ok((n, a));
        }
        let entries = window(&a, n, a.len());
        let b = lift_window(&a, &entries, &format!("log level {n}"))?;
        a = a.sub(&b.f_minus_one()?)?;
        let next = least_fil_level(&a);
        if next >= n {
            return Err(Error::ExactnessViolation(format!(
                "log level {n}: p-th root correction did not lower the level"
            )));
        }
        n = next;
    }
}

/// Reduces the representative until its non-log graded form is nonzero; returns `(dt, reduced)`.
pub fn total_dimension(chi: &Character) -> Result<(i64, WittVec<LocalElem>)> {
    let mut a = chi.rep().clone();
    let p = a.p();
    let mut m = least_fil_prime_level(&a);
    loop {
        if m == 1 {
            return Ok((1, a));
        }
        let form = nonlog_graded_form(&a, m)?;
        if !form.is_zero() {
            return Ok((m, a));
        }
        let entries = window(&a, m, s_prime(m, a.len(), p));
        let b = lift_window(&a, &entries, &format!("non-log level {m}"))?;
        a = a.sub(&b.f_minus_one()?)?;
        if !in_fil_prime(&a, m - 1) {
            return Err(Error::ExactnessViolation(format!(
                "non-log level {m}: corrected representative not in fil'_{}",
                m - 1
            )));
        }
        m = least_fil_prime_level(&a);
    }
}

pub fn rsw(chi: &Character) -> Result<Option<GradedLogForm>> {
    let (n, a) = swan_conductor(chi)?;
    if n == 0 {
        return Ok(None);
    }
    Ok(Some(log_graded_form(&a, n)?))
}

pub fn cform(chi: &Character) -> Result<Option<GradedNonLogForm>> {
    let (m, a) = total_dimension(chi)?;
    if m == 1 {
        return Ok(None);
    }
    Ok(Some(nonlog_graded_form(&a, m)?))
}

/// All four invariants, computed once and cross-checked against each other.
#[derive(Clone, PartialEq, Debug)]
pub struct Invariants {
    pub sw: i64,
    pub dt: i64,
    pub rsw: Option<GradedLogForm>,
    pub cform: Option<GradedNonLogForm>,
    pub sw_rep: WittVec<LocalElem>,
    pub dt_rep: WittVec<LocalElem>,
}

pub fn invariants(chi: &Character) -> Result<Invariants> {
    let (sw, sw_rep) = swan_conductor(chi)?;
    let (dt, dt_rep) = total_dimension(chi)?;
    let rsw = if sw >= 1 { Some(log_graded_form(&sw_rep, sw)?) } else { None };
    let cform = if dt >= 2 { Some(nonlog_graded_form(&dt_rep, dt)?) } else { None };
    check_compatibility(sw, dt, rsw.as_ref(), cform.as_ref())?;
    if let Some(r) = &rsw {
        // the non-log reduction must present the same log class
        if dt == sw && log_graded_form(&dt_rep, sw)? != *r {
            return Err(Error::Inconsistent("log class changed under non-log reduction".into()));
        }
    }
    Ok(Invariants {
        sw,
        dt,
        rsw,
        cform,
        sw_rep,
        dt_rep,
    })
}

/// `dt` in `{sw, sw + 1}`, `dt = 1` iff `sw = 0`, and the forms agree where their levels meet:
/// `dt = sw` forces `alpha = 0` and `c_x = beta`; `dt = sw + 1` forces `c_pi = alpha`, `c_x = 0`.
pub fn check_compatibility(
    sw: i64,
    dt: i64,
    rsw: Option<&GradedLogForm>,
    cform: Option<&GradedNonLogForm>,
) -> Result<()> {
    if dt != sw && dt != sw + 1 {
        return Err(Error::Inconsistent(format!("dt = {dt} but sw = {sw}")));
    }
    if (dt == 1) != (sw == 0) {
        return Err(Error::Inconsistent(format!("dt = {dt} with sw = {sw}")));
    }
    if let (Some(r), Some(c)) = (rsw, cform) {
        if r.is_zero() || c.is_zero() {
            return Err(Error::Inconsistent("vanishing refined form at the conductor".into()));
        }
        let ok = if dt == sw {
            r.alpha.is_zero() && c.c_x == r.beta
        } else {
            c.c_pi == RadicialElem::from_base(&r.alpha) && c.c_x.is_zero()
        };
        if !ok {
            return Err(Error::Inconsistent(format!(
                "rsw and cform disagree at sw = {sw}, dt = {dt}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
