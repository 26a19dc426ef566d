//! Characters on the affine plane with coordinates (x1, x2), ramified along the axes
//! D1 = {x1 = 0} and D2 = {x2 = 0}.
//!
//! Global rational functions use slot T for x1 and slot X for x2, so restricting to D1 is
//! a plain reinterpretation and restricting to D2 swaps the two slots.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::base::{MultiPoly, RatFunc, Var};
use crate::conductors::{invariants, Character, GradedNonLogForm, Invariants};
use crate::error::{Error, Result};
use crate::local::LocalElem;
use crate::witt::{check_size, in_fil_prime, WittVec};

const SWAP: [usize; 4] = [1, 0, 2, 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Component {
    D1,
    D2,
}

impl Component {
    pub const ALL: [Component; 2] = [Component::D1, Component::D2];

    pub fn other(self) -> Component {
        match self {
            Component::D1 => Component::D2,
            Component::D2 => Component::D1,
        }
    }
}

/// Poles must lie on D: each denominator is a monomial times a polynomial that is a
/// nonzero constant on both axes.
fn check_poles_on_axes(f: &RatFunc) -> Result<()> {
    if f.uses(Var::W) || f.uses(Var::Wp) {
        return Err(Error::Precondition("global components use only x1, x2".into()));
    }
    let den = f.den();
    let q = den.div_mono(&den.min_mono());
    for v in [Var::T, Var::X] {
        let mut at = [None; 4];
        at[v.index()] = Some(0);
        let r = q.eval_partial(at);
        if !r.is_constant() || r.is_zero() {
            return Err(Error::Precondition(format!(
                "denominator {} has zeros off the coordinate axes",
                den.to_expr(&crate::base::VarNames::GLOBAL)
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlobalCharacter {
    rep: WittVec<RatFunc>,
}

impl GlobalCharacter {
    pub fn new(rep: WittVec<RatFunc>) -> Result<Self> {
        check_size(rep.p(), rep.len())?;
        for c in rep.comps() {
            check_poles_on_axes(c)?;
        }
        Ok(Self { rep })
    }

    pub fn p(&self) -> u32 {
        self.rep.p()
    }

    pub fn rep(&self) -> &WittVec<RatFunc> {
        &self.rep
    }

    /// The restriction to the local field at the generic point of `c`.
    pub fn restrict(&self, c: Component) -> Result<Character> {
        let rep = match c {
            Component::D1 => self.rep.map(|f| LocalElem::new(f.clone())),
            Component::D2 => self.rep.map(|f| LocalElem::new(f.permute(SWAP))),
        };
        Character::new(rep)
    }

    /// `x1 <-> x2`.
    pub fn swap(&self) -> Self {
        Self {
            rep: self.rep.map(|f| f.permute(SWAP)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConductorDivisor {
    #[serde(rename = "D1")]
    pub d1: i64,
    #[serde(rename = "D2")]
    pub d2: i64,
}

impl ConductorDivisor {
    pub fn get(&self, c: Component) -> i64 {
        match c {
            Component::D1 => self.d1,
            Component::D2 => self.d2,
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            d1: self.d2,
            d2: self.d1,
        }
    }

    /// Components with positive multiplicity after subtracting `offset`.
    pub fn support_above(&self, offset: i64) -> Vec<Component> {
        Component::ALL
            .into_iter()
            .filter(|c| self.get(*c) > offset)
            .collect()
    }
}

fn local_invariants(a: &GlobalCharacter) -> Result<BTreeMap<Component, Invariants>> {
    Component::ALL
        .into_iter()
        .map(|c| Ok((c, invariants(&a.restrict(c)?)?)))
        .collect()
}

fn divisor_of(inv: &BTreeMap<Component, Invariants>, f: impl Fn(&Invariants) -> i64) -> ConductorDivisor {
    ConductorDivisor {
        d1: f(&inv[&Component::D1]),
        d2: f(&inv[&Component::D2]),
    }
}

pub fn swan_divisor(a: &GlobalCharacter) -> Result<ConductorDivisor> {
    Ok(divisor_of(&local_invariants(a)?, |i| i.sw))
}

pub fn dt_divisor(a: &GlobalCharacter) -> Result<ConductorDivisor> {
    Ok(divisor_of(&local_invariants(a)?, |i| i.dt))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum GermStatus {
    Consistent,
    Inconsistent(String),
    /// The global representative is not itself reduced along this component.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorReport {
    pub r_chi: ConductorDivisor,
    pub r_chi_prime: ConductorDivisor,
    pub forms: BTreeMap<Component, GradedNonLogForm>,
    pub germs: BTreeMap<Component, GermStatus>,
}

impl DivisorReport {
    /// Supp(R' - D) = Supp(R).
    pub fn supports_agree(&self) -> bool {
        self.r_chi_prime.support_above(1) == self.r_chi.support_above(0)
    }

    pub fn germs_consistent(&self) -> bool {
        !self
            .germs
            .values()
            .any(|g| matches!(g, GermStatus::Inconsistent(_)))
    }
}

/// `x1^{m1} x2^{m2} (A, B)` with `A dx1 + B dx2 = -sum a_i^{p^i-1} da_i`.
fn global_section(a: &GlobalCharacter, r: &ConductorDivisor) -> (RatFunc, RatFunc) {
    let p = a.p();
    let mut ga = RatFunc::zero(p);
    let mut gb = RatFunc::zero(p);
    for i in 0..a.rep.len() {
        let ai = a.rep.a(i);
        if ai.is_zero() {
            continue;
        }
        let w = ai.pow(p.pow(i as u32) - 1);
        ga = ga.sub(&w.mul(&ai.derivative(Var::T)));
        gb = gb.sub(&w.mul(&ai.derivative(Var::X)));
    }
    let scale = RatFunc::monomial(1, Var::T, r.d1, p).mul(&RatFunc::monomial(1, Var::X, r.d2, p));
    (ga.mul(&scale), gb.mul(&scale))
}

fn germ_status(
    a: &GlobalCharacter,
    c: Component,
    form: &GradedNonLogForm,
    section: &(RatFunc, RatFunc),
    r: &ConductorDivisor,
) -> Result<GermStatus> {
    let p = a.p();
    let m = r.get(c);
    if p == 2 && m == 2 {
        return Ok(GermStatus::Skipped("square-root term has no global differential".into()));
    }
    let local = a.restrict(c)?;
    if !in_fil_prime(local.rep(), m) {
        return Ok(GermStatus::Skipped(format!("representative not in fil'_{m} along {c:?}")));
    }
    // local coordinates: slot T is the uniformizer, dt-coefficient first
    let (sa, sb) = match c {
        Component::D1 => (section.0.clone(), section.1.clone()),
        Component::D2 => (section.1.permute(SWAP), section.0.permute(SWAP)),
    };
    let mut germs = Vec::new();
    for g in [sa, sb] {
        let g = LocalElem::new(g);
        if !g.ord().at_least(0) {
            return Ok(GermStatus::Inconsistent(format!("global section has a pole along {c:?}")));
        }
        germs.push(g.coeff(0));
    }
    let other = RatFunc::monomial(1, Var::X, r.get(c.other()), p);
    let c_pi = match form.c_pi.in_base()? {
        Some(f) => f,
        None => return Ok(GermStatus::Inconsistent("radicial coefficient outside the exceptional case".into())),
    };
    if germs[0] == c_pi.mul(&other) && germs[1] == form.c_x.mul(&other) {
        Ok(GermStatus::Consistent)
    } else {
        Ok(GermStatus::Inconsistent(format!("germ along {c:?} differs from the local form")))
    }
}

/// Divisors R and R', the local characteristic forms on Supp(R' - D), and the germ check
/// against the global differential section.
pub fn divisor_report(a: &GlobalCharacter) -> Result<DivisorReport> {
    let inv = local_invariants(a)?;
    let r_chi = divisor_of(&inv, |i| i.sw);
    let r_chi_prime = divisor_of(&inv, |i| i.dt);
    let section = global_section(a, &r_chi_prime);
    let mut forms = BTreeMap::new();
    let mut germs = BTreeMap::new();
    for c in r_chi_prime.support_above(1) {
        let form = inv[&c].cform.clone().ok_or_else(|| {
            Error::Inconsistent(format!("dt > 1 along {c:?} without a characteristic form"))
        })?;
        germs.insert(c, germ_status(a, c, &form, &section, &r_chi_prime)?);
        forms.insert(c, form);
    }
    Ok(DivisorReport {
        r_chi,
        r_chi_prime,
        forms,
        germs,
    })
}

/// The characteristic forms along Supp(R' - D), which must be nonempty.
pub fn global_cform(a: &GlobalCharacter) -> Result<DivisorReport> {
    let rep = divisor_report(a)?;
    if rep.forms.is_empty() {
        return Err(Error::Precondition("R' - D has empty support".into()));
    }
    Ok(rep)
}

/// Swapping x1 and x2 swaps both divisors and the forms.
pub fn swap_equivariant(a: &GlobalCharacter) -> Result<bool> {
    let r = divisor_report(a)?;
    let s = divisor_report(&a.swap())?;
    let forms_swap = r.forms.len() == s.forms.len()
        && r.forms.iter().all(|(c, f)| s.forms.get(&c.other()) == Some(f));
    Ok(s.r_chi == r.r_chi.swapped() && s.r_chi_prime == r.r_chi_prime.swapped() && forms_swap)
}

/// Shorthand used by tests and the CLI for a denominator-free check.
pub fn is_regular(a: &GlobalCharacter) -> bool {
    a.rep.comps().iter().all(|f| f.den() == &MultiPoly::one(a.p()))
}
