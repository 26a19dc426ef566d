use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::zpoly::{FpPolyN, ZPoly};
use crate::base::check_prime;
use crate::error::{Error, Result};

/// Largest supported Witt length for `p`.
pub fn max_length(p: u32) -> usize {
    match p {
        2 | 3 => 3,
        _ => 2,
    }
}

pub fn check_size(p: u32, s: usize) -> Result<()> {
    check_prime(p)?;
    if s > max_length(p) {
        return Err(Error::Unsupported(format!(
            "Witt length {s} exceeds the cap {} for p = {p}",
            max_length(p)
        )));
    }
    Ok(())
}

/// Universal polynomials for W_s over F_p, in the standard index (component 0 first).
///
/// `sum[k]` and `diff[k]` are in variables `X_0..X_{s-1}, Y_0..Y_{s-1}`; `neg[k]` in `X_0..X_{s-1}`.
#[derive(Debug)]
pub struct UniversalWittTables {
    pub p: u32,
    pub s: usize,
    pub sum_z: Vec<ZPoly>,
    pub diff_z: Vec<ZPoly>,
    pub neg_z: Vec<ZPoly>,
    pub sum: Vec<FpPolyN>,
    pub diff: Vec<FpPolyN>,
    pub neg: Vec<FpPolyN>,
}

/// Ghost component `w_k = sum_{j<=k} p^j X_{offset+j}^{p^{k-j}}`.
pub fn ghost(p: u32, k: usize, offset: usize, nvars: usize) -> Result<ZPoly> {
    let mut g = ZPoly::zero(nvars);
    for j in 0..=k {
        let term = ZPoly::var(offset + j, nvars)
            .pow(p.pow((k - j) as u32))?
            .scale((p as i128).pow(j as u32))?;
        g = g.add(&term)?;
    }
    Ok(g)
}

/// Solves `ghost_k(Z) = targets[k]` for integral `Z`, asserting every division is exact.
pub fn solve_ghost(p: u32, targets: &[ZPoly]) -> Result<Vec<ZPoly>> {
    let mut z: Vec<ZPoly> = Vec::with_capacity(targets.len());
    for (k, g) in targets.iter().enumerate() {
        let mut rest = g.clone();
        for (j, zj) in z.iter().enumerate() {
            let t = zj
                .pow(p.pow((k - j) as u32))?
                .scale((p as i128).pow(j as u32))?;
            rest = rest.sub(&t)?;
        }
        z.push(rest.div_exact_int((p as i128).pow(k as u32))?);
    }
    Ok(z)
}

fn build(p: u32, s: usize) -> Result<UniversalWittTables> {
    let n2 = 2 * s;
    let mut sum_t = Vec::new();
    let mut diff_t = Vec::new();
    let mut neg_t = Vec::new();
    for k in 0..s {
        let gx = ghost(p, k, 0, n2)?;
        let gy = ghost(p, k, s, n2)?;
        sum_t.push(gx.add(&gy)?);
        diff_t.push(gx.sub(&gy)?);
        neg_t.push(ghost(p, k, 0, s)?.neg());
    }
    let sum_z = solve_ghost(p, &sum_t)?;
    let diff_z = solve_ghost(p, &diff_t)?;
    let neg_z = solve_ghost(p, &neg_t)?;
    let red = |v: &[ZPoly]| v.iter().map(|z| z.reduce(p)).collect();
    Ok(UniversalWittTables {
        p,
        s,
        sum: red(&sum_z),
        diff: red(&diff_z),
        neg: red(&neg_z),
        sum_z,
        diff_z,
        neg_z,
    })
}

pub(crate) type Cache<T> = OnceLock<Mutex<HashMap<(u32, usize), Arc<T>>>>;

pub(crate) fn cached<T>(
    cache: &'static Cache<T>,
    p: u32,
    s: usize,
    make: impl FnOnce() -> Result<T>,
) -> Result<Arc<T>> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.get(&(p, s)) {
        return Ok(t.clone());
    }
    let t = Arc::new(make()?);
    guard.insert((p, s), t.clone());
    Ok(t)
}

/// Cached universal tables for (p, s).
pub fn build_universal_tables(p: u32, s: usize) -> Result<Arc<UniversalWittTables>> {
    check_size(p, s)?;
    static CACHE: Cache<UniversalWittTables> = OnceLock::new();
    cached(&CACHE, p, s, || build(p, s))
}
