//! Multivariate gcd over F_p by recursive primitive remainder sequences.

use super::fp::{inv_mod, mul_mod, sub_mod};
use super::poly::{Mono, MultiPoly, Var, NVARS};

/// Monic gcd of `a` and `b` (zero only if both are zero).
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let p = a.p();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(p);
    }
    // monomial content
    let ma = a.min_mono();
    let mb = b.min_mono();
    let g_mono = ma.meet(&mb);
    let a = a.div_mono(&ma);
    let b = b.div_mono(&mb);
    let head = MultiPoly::term(g_mono, 1, p);
    if a.is_constant() || b.is_constant() {
        return head;
    }
    head.mul(&gcd_no_mono(a, b))
}

fn gcd_no_mono(mut a: MultiPoly, mut b: MultiPoly) -> MultiPoly {
    let p = a.p();
    loop {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return MultiPoly::one(p);
        }
        if a.n_terms() <= b.n_terms() {
            if b.div_exact(&a).is_some() {
                return a.monic();
            }
        } else if a.div_exact(&b).is_some() {
            return b.monic();
        }
        let ua = a.vars_used();
        let ub = b.vars_used();
        // a variable present in one argument only contributes nothing but its content
        if let Some(i) = (0..NVARS).find(|&i| ua[i] && !ub[i]) {
            a = content(&a.coeffs_in(Var::from_index(i)));
            continue;
        }
        if let Some(i) = (0..NVARS).find(|&i| ub[i] && !ua[i]) {
            b = content(&b.coeffs_in(Var::from_index(i)));
            continue;
        }
        let common: Vec<usize> = (0..NVARS).filter(|&i| ua[i]).collect();
        if common.len() == 1 {
            return univariate_gcd(&a, &b, Var::from_index(common[0]));
        }
        // main variable: the one of least degree keeps the remainder sequence short
        let v = common
            .iter()
            .map(|&i| Var::from_index(i))
            .min_by_key(|&v| a.deg(v).max(b.deg(v)))
            .unwrap();
        return recursive_gcd(&a, &b, v);
    }
}

fn content(coeffs: &[MultiPoly]) -> MultiPoly {
    let p = coeffs[0].p();
    let mut g = MultiPoly::zero(p);
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(coeffs: &[MultiPoly]) -> (MultiPoly, Vec<MultiPoly>) {
    let c = content(coeffs);
    let pp = coeffs
        .iter()
        .map(|k| k.div_exact(&c).expect("content divides coefficients"))
        .collect();
    (c, pp)
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` (as coefficient vectors in the main variable).
fn prem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r: Vec<MultiPoly> = a.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for j in 0..=db {
            r[j + shift] = r[j + shift].sub(&lr.mul(&b[j]));
        }
        trim(&mut r);
    }
    r
}

fn recursive_gcd(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let p = a.p();
    let (ca, mut pa) = primitive_part(&a.coeffs_in(v));
    let (cb, mut pb) = primitive_part(&b.coeffs_in(v));
    let g_content = gcd(&ca, &cb);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        if pb.len() == 1 {
            // primitive of degree zero in v is a unit
            return g_content;
        }
        let r = prem(&pa, &pb);
        if r.is_empty() {
            let g = MultiPoly::from_coeffs_in(v, &pb, p);
            return g_content.mul(&g).monic();
        }
        let (_, pr) = primitive_part(&r);
        pa = pb;
        pb = pr;
    }
}

fn to_dense(f: &MultiPoly, v: Var) -> Vec<u32> {
    let mut d = vec![0u32; f.deg(v) as usize + 1];
    for (m, c) in f.terms() {
        d[m.0[v.index()] as usize] = *c;
    }
    d
}

fn univariate_gcd(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let p = a.p();
    let mut x = to_dense(a, v);
    let mut y = to_dense(b, v);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !(y.is_empty()) {
        // x mod y
        let dy = y.len() - 1;
        let inv = inv_mod(y[dy], p);
        while x.len() > dy && !x.is_empty() {
            let dx = x.len() - 1;
            let q = mul_mod(x[dx], inv, p);
            if q != 0 {
                for j in 0..=dy {
                    x[dx - dy + j] = sub_mod(x[dx - dy + j], mul_mod(q, y[j], p), p);
                }
            }
            x.pop();
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    let terms = x
        .iter()
        .enumerate()
        .map(|(e, c)| (Mono::var(v, e as u32), *c));
    MultiPoly::from_terms(p, terms).monic()
}
