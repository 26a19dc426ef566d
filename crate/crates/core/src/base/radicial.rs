use super::poly::{Var, VarNames};
use super::ratfunc::RatFunc;
use crate::error::Result;

/// Element of F_p(y) with y^p = x, i.e. of the radicial extension F_p(x)^{1/p}.
///
/// The value is stored as a rational function in the residue slot, read as `y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RadicialElem {
    value: RatFunc,
}

impl RadicialElem {
    pub fn zero(p: u32) -> Self {
        Self {
            value: RatFunc::zero(p),
        }
    }

    /// The embedding F_p(x) -> F_p(y), x -> y^p.
    pub fn from_base(f: &RatFunc) -> Self {
        Self {
            value: f.frobenius(),
        }
    }

    /// `f` with x renamed to y; its p-th power is the embedding of `f`.
    pub fn radicial_root(f: &RatFunc) -> Self {
        Self { value: f.clone() }
    }

    /// Wraps a rational function already written in `y`.
    pub fn from_y(value: RatFunc) -> Self {
        Self { value }
    }

    pub fn y_value(&self) -> &RatFunc {
        &self.value
    }

    pub fn p(&self) -> u32 {
        self.value.p()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            value: self.value.add(&other.value),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            value: self.value.sub(&other.value),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            value: self.value.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            value: self.value.mul(&other.value),
        }
    }

    /// p-th power, landing in the embedded copy of F_p(x).
    pub fn pow_p(&self) -> RatFunc {
        self.value.clone()
    }

    /// The preimage in F_p(x) if this element lies in the base field.
    pub fn in_base(&self) -> Result<Option<RatFunc>> {
        if self.value.is_pth_power()? {
            Ok(Some(self.value.pth_root()?))
        } else {
            Ok(None)
        }
    }

    pub fn is_in_base(&self) -> bool {
        !self.value.uses(Var::X) || self.value.derivative(Var::X).is_zero()
    }

    pub fn to_expr(&self) -> String {
        self.value.to_expr(&VarNames::RADICIAL)
    }

    /// Prints in `x` when the element lies in F_p(x), otherwise in `y`.
    pub fn to_expr_preferring_base(&self) -> (String, bool) {
        match self.in_base() {
            Ok(Some(f)) => (f.to_expr(&VarNames::LOCAL), false),
            _ => (self.to_expr(), true),
        }
    }
}
