//! Exact arithmetic over F_p: prime field, polynomials, rational functions and F_p(y), y^p = x.

pub mod fp;
pub mod gcd;
pub mod poly;
pub mod radicial;
pub mod ratfunc;

pub use fp::{check_prime, PrimeFieldElem, SUPPORTED_PRIMES};
pub use poly::{Mono, MultiPoly, Var, VarNames, NVARS};
pub use radicial::RadicialElem;
pub use ratfunc::RatFunc;
