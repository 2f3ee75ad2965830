//! Polynomial gcd and exact division over a coefficient field.
//!
//! The reduction strategy: strip common monomial content, then
//!
//! * no live variables — the gcd is `1`;
//! * one live variable — monic Euclid on the grid exponents;
//! * support on the `u = v` diagonal only — collapse to one variable;
//! * otherwise — a primitive pseudo-remainder sequence in the last live
//!   variable, with coefficient contents handled by recursion into fewer
//!   variables.
//!
//! Degrees here are always grid exponents; the entry points align scales so
//! exponent arithmetic is meaningful.

use super::laurent::{Exps, Field, LaurentPoly, Var, NVARS};
use num_traits::One;
use std::collections::BTreeMap;

/// Greatest common divisor, normalized so its lexicographically leading
/// coefficient is `1`. Inputs may be Laurent: the result includes the common
/// monomial factor `Π v^min(min_a, min_b)`.
pub(crate) fn poly_gcd<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    if a.is_zero_poly() {
        return monic(b.clone());
    }
    if b.is_zero_poly() {
        return monic(a.clone());
    }
    let (a, b) = LaurentPoly::aligned(a, b);
    let (pa, ma) = a.strip_monomial();
    let (pb, mb) = b.strip_monomial();
    let out = poly_gcd_stripped(&pa, &pb);
    let mut k: Exps = [0; NVARS];
    for i in 0..NVARS {
        k[i] = ma[i].min(mb[i]);
    }
    monic(attach_monomial(out, &a, k))
}

/// Multiplies `p` by the monomial with grid exponents `k` read on `grid`'s
/// scales. `p` may sit on a different (e.g. normalized) grid; going through
/// a one-term polynomial lets multiplication align the scales.
fn attach_monomial<C: Field>(
    p: LaurentPoly<C>,
    grid: &LaurentPoly<C>,
    k: Exps,
) -> LaurentPoly<C> {
    if k == [0; NVARS] || p.is_zero_poly() {
        return p;
    }
    let mut mono = grid.zero_like();
    mono.insert_term(k, C::one());
    &p * &mono
}

/// Exact division `a / b` in the Laurent ring; `None` when not divisible.
pub(crate) fn exact_div<C: Field>(
    a: &LaurentPoly<C>,
    b: &LaurentPoly<C>,
) -> Option<LaurentPoly<C>> {
    if b.is_zero_poly() {
        return None;
    }
    if a.is_zero_poly() {
        return Some(LaurentPoly::zero_poly());
    }
    let (a, b) = LaurentPoly::aligned(a, b);
    let (pa, ma) = a.strip_monomial();
    let (pb, mb) = b.strip_monomial();
    let q = exact_div_poly(&pa, &pb)?;
    let mut k: Exps = [0; NVARS];
    for i in 0..NVARS {
        k[i] = ma[i] - mb[i];
    }
    Some(attach_monomial(q, &a, k))
}

/// Division of true polynomials (min exponent zero) on a common grid.
///
/// Terminates because the remainder's lexicographic leading monomial
/// strictly decreases and lex on nonnegative exponent vectors is a
/// well-order.
fn exact_div_poly<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> Option<LaurentPoly<C>> {
    let (be, bc) = b.lex_lead().expect("nonzero divisor");
    let mut rem = a.clone();
    let mut q = a.zero_like();
    while !rem.is_zero_poly() {
        let (re, rc) = rem.lex_lead().unwrap();
        let mut qe: Exps = [0; NVARS];
        for i in 0..NVARS {
            qe[i] = re[i] - be[i];
            if qe[i] < 0 {
                return None;
            }
        }
        let qc = rc / bc.clone();
        let mut t = a.zero_like();
        t.insert_term(qe, qc.clone());
        q.insert_term(qe, qc);
        rem = &rem - &(&t * &*b);
    }
    Some(q)
}

fn monic<C: Field>(p: LaurentPoly<C>) -> LaurentPoly<C> {
    let mut p = p;
    p.normalize_scales();
    match p.lex_lead() {
        None => p,
        Some((_, c)) => {
            if c.is_one() {
                p
            } else {
                p.scale_coeff(&c.field_inv())
            }
        }
    }
}

/// Gcd of min-exponent-zero polynomials on a common grid.
fn poly_gcd_stripped<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    let mut live: Vec<Var> = Vec::new();
    for v in Var::ALL {
        if a.uses_var(v) || b.uses_var(v) {
            live.push(v);
        }
    }
    match live.len() {
        0 => LaurentPoly::one_poly(),
        1 => univ_gcd_on(a, b, live[0]),
        2 if live == [Var::U, Var::V] && is_diagonal(a) && is_diagonal(b) => diagonal_gcd(a, b),
        _ => prs_gcd(a, b, *live.last().unwrap()),
    }
}

/// True when every term has equal `u` and `v` grid exponents (on equal
/// grids), i.e. the polynomial is a function of `w = uv` alone.
fn is_diagonal<C: Field>(p: &LaurentPoly<C>) -> bool {
    if p.scale_of(Var::U) != p.scale_of(Var::V) {
        return false;
    }
    let (ui, vi) = (Var::U.index(), Var::V.index());
    p.exponents().all(|e| e[ui] == e[vi])
}

/// Gcd of two polynomials supported on the `u = v` diagonal.
fn diagonal_gcd<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>) -> LaurentPoly<C> {
    let scale = a.scale_of(Var::U);
    let g = univ_gcd(to_univ_diag(a), to_univ_diag(b));
    let mut out = LaurentPoly::zero_poly();
    out.set_scale(Var::U, scale);
    out.set_scale(Var::V, scale);
    for (k, c) in g {
        let mut e: Exps = [0; NVARS];
        e[Var::U.index()] = k;
        e[Var::V.index()] = k;
        out.insert_term(e, c);
    }
    monic(out)
}

/// Collapses a diagonal polynomial to its `u`-exponent profile.
fn to_univ_diag<C: Field>(p: &LaurentPoly<C>) -> BTreeMap<i64, C> {
    let mut out = BTreeMap::new();
    for (k, coeff) in p.coeffs_in(Var::U) {
        let c = coeff
            .subst_one(Var::V)
            .as_constant()
            .expect("diagonal polynomial collapses to constants");
        if !c.is_zero() {
            out.insert(k, c);
        }
    }
    out
}

/// Gcd when exactly one variable is live: coefficients are constants.
fn univ_gcd_on<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>, x: Var) -> LaurentPoly<C> {
    let to_map = |p: &LaurentPoly<C>| -> BTreeMap<i64, C> {
        p.coeffs_in(x)
            .into_iter()
            .map(|(k, q)| (k, q.as_constant().expect("constant coefficient")))
            .collect()
    };
    let g = univ_gcd(to_map(a), to_map(b));
    let mut out = LaurentPoly::zero_poly();
    out.set_scale(x, a.scale_of(x));
    for (k, c) in g {
        let mut e: Exps = [0; NVARS];
        e[x.index()] = k;
        out.insert_term(e, c);
    }
    monic(out)
}

/// Monic Euclid for univariate polynomials over a field.
fn univ_gcd<C: Field>(mut a: BTreeMap<i64, C>, mut b: BTreeMap<i64, C>) -> BTreeMap<i64, C> {
    loop {
        if b.is_empty() {
            return univ_monic(a);
        }
        let r = univ_rem(&a, &b);
        a = b;
        b = r;
    }
}

fn univ_monic<C: Field>(mut a: BTreeMap<i64, C>) -> BTreeMap<i64, C> {
    let inv = match a.iter().next_back() {
        Some((_, lc)) if !lc.is_one() => lc.clone().field_inv(),
        _ => return a,
    };
    for c in a.values_mut() {
        *c = c.clone() * inv.clone();
    }
    a
}

fn univ_rem<C: Field>(a: &BTreeMap<i64, C>, b: &BTreeMap<i64, C>) -> BTreeMap<i64, C> {
    let (&db, lb) = b.iter().next_back().expect("nonzero divisor");
    let mut r = a.clone();
    while let Some((&dr, _)) = r.iter().next_back() {
        if dr < db {
            break;
        }
        let c = r.get(&dr).unwrap().clone() / lb.clone();
        let shift = dr - db;
        for (e, k) in b {
            let target = e + shift;
            let delta = c.clone() * k.clone();
            let new = match r.remove(&target) {
                None => -delta,
                Some(old) => old - delta,
            };
            if !new.is_zero() {
                r.insert(target, new);
            }
        }
    }
    r
}

/// Primitive pseudo-remainder sequence in the main variable `x`.
fn prs_gcd<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>, x: Var) -> LaurentPoly<C> {
    let ca = content_in(a, x);
    let cb = content_in(b, x);
    let cont = poly_gcd(&ca, &cb);
    let mut p = exact_div(a, &ca).expect("content divides");
    let mut q = exact_div(b, &cb).expect("content divides");
    if deg_in(&p, x) < deg_in(&q, x) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero_poly() {
        let r = pseudo_rem(&p, &q, x);
        let r = if r.is_zero_poly() {
            r
        } else {
            let c = content_in(&r, x);
            exact_div(&r, &c).expect("content divides")
        };
        p = q;
        q = r;
    }
    monic(&cont * &p)
}

fn deg_in<C: Field>(p: &LaurentPoly<C>, x: Var) -> i64 {
    p.max_exp_grid(x).unwrap_or(i64::MIN)
}

/// Content: gcd of the coefficient polynomials with respect to `x`.
fn content_in<C: Field>(p: &LaurentPoly<C>, x: Var) -> LaurentPoly<C> {
    let mut acc = LaurentPoly::zero_poly();
    for coeff in p.coeffs_in(x).into_values() {
        acc = poly_gcd(&acc, &coeff);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Pseudo-remainder of `a` by `b` in `x`: `lc(b)^(deg a − deg b + 1) · a`
/// reduced modulo `b`, computed without fractions.
fn pseudo_rem<C: Field>(a: &LaurentPoly<C>, b: &LaurentPoly<C>, x: Var) -> LaurentPoly<C> {
    let da = deg_in(a, x);
    let db = deg_in(b, x);
    debug_assert!(da >= db && db >= 0);
    let lb = b.coeffs_in(x).remove(&db).expect("leading coefficient");
    let mut r = a.clone();
    let mut e = (da - db + 1) as u32;
    while !r.is_zero_poly() {
        let dr = deg_in(&r, x);
        if dr < db {
            break;
        }
        let lr = r.coeffs_in(x).remove(&dr).expect("leading coefficient");
        let shifted = b.mul_var_grid(x, dr - db);
        r = &(&lb * &r) - &(&lr * &shifted);
        e -= 1;
    }
    if e > 0 {
        r = &r * &lb.pow(e);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, Rational};

    type P = LaurentPoly<Rational>;

    fn w(k: i64) -> P {
        P::w_pow(&rat_int(k))
    }

    #[test]
    fn univariate_diagonal_gcd() {
        let a = w(2) - P::one_poly();
        let b = w(1) - P::one_poly();
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a = w(1) - P::one_poly();
        let b = w(1) + P::one_poly();
        assert!(poly_gcd(&a, &b).is_one());
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = w(3) - P::one_poly();
        let b = w(1) - P::one_poly();
        assert_eq!(exact_div(&a, &b).unwrap(), w(2) + w(1) + P::one_poly());
        assert!(exact_div(&b, &a).is_none());
    }

    #[test]
    fn mixed_variable_gcd() {
        let upv = P::var(Var::U) + P::var(Var::V);
        let a = &upv * &(w(1) - P::one_poly());
        let b = &upv * &(w(1) + P::one_poly());
        assert_eq!(poly_gcd(&a, &b), upv);
    }

    #[test]
    fn fractional_grid_gcd() {
        let a = w(1) - P::one_poly();
        let b = P::w_pow(&rat(1, 2)) - P::one_poly();
        assert_eq!(poly_gcd(&a, &b), b);
    }

    #[test]
    fn gcd_with_three_variables() {
        // gcd((s-1)(u+v), (s-1)(u-v)) = s - 1.
        let s1 = P::var(Var::S) - P::one_poly();
        let a = &s1 * &(P::var(Var::U) + P::var(Var::V));
        let b = &s1 * &(P::var(Var::U) - P::var(Var::V));
        assert_eq!(poly_gcd(&a, &b), s1);
    }
}
