//! Exact one-sided limits `x → 1` of rational expressions.
//!
//! The engine clears negative powers of the limit variable (harmless at 1),
//! evaluates numerator and denominator at 1, and on a `0/0` cancels one
//! factor of `(x - 1)` from each by exact synthetic division, repeating up
//! to the degree bound. A vanishing denominator with a nonvanishing
//! numerator is a genuine pole and is reported as such.

use super::laurent::{Field, LaurentPoly, Var};
use super::ratexpr::RatExpr;
use super::ExactError;
use std::collections::BTreeMap;

/// Computes `lim_{v → 1}` of `e` exactly.
///
/// The result no longer involves `v`. Errors: [`ExactError::PoleAtOne`] when
/// the limit diverges; the cancellation bound cannot trigger for genuine
/// polynomial data (it guards internal consistency).
pub fn limit_at_one<C: Field>(e: &RatExpr<C>, v: Var) -> Result<RatExpr<C>, ExactError> {
    limit_at_one_quotient(e.num(), e.den(), v)
}

/// Computes `lim_{v → 1}` of the quotient `num / den` exactly.
///
/// The quotient need not be in lowest terms: cancellation happens by
/// synthetic division in `v` alone, so callers assembling a sum of simple
/// fractions can pass the raw cross-multiplied numerator and denominator
/// and never pay for a multivariate gcd.
pub fn limit_at_one_quotient<C: Field>(
    num: &LaurentPoly<C>,
    den: &LaurentPoly<C>,
    v: Var,
) -> Result<RatExpr<C>, ExactError> {
    if !num.uses_var(v) && !den.uses_var(v) {
        return RatExpr::new(num.clone(), den.clone());
    }
    let (mut num, mut den) = LaurentPoly::aligned(num, den);
    let m = num
        .min_exp_grid(v)
        .unwrap_or(0)
        .min(den.min_exp_grid(v).unwrap_or(0))
        .min(0);
    if m < 0 {
        num = num.mul_var_grid(v, -m);
        den = den.mul_var_grid(v, -m);
    }
    let bound = (num.max_exp_grid(v).unwrap_or(0).max(den.max_exp_grid(v).unwrap_or(0)) + 1)
        .max(1) as usize;
    for _ in 0..bound {
        let d1 = den.subst_one(v);
        if !d1.is_zero_poly() {
            return RatExpr::new(num.subst_one(v), d1);
        }
        let n1 = num.subst_one(v);
        if !n1.is_zero_poly() {
            return Err(ExactError::PoleAtOne { var: v });
        }
        num = div_by_var_minus_one(&num, v);
        den = div_by_var_minus_one(&den, v);
    }
    Err(ExactError::CancellationDepthExceeded { var: v, bound })
}

/// Exact division of `p` by `(x - 1)` where `x` is the grid variable of `v`
/// (valid exactly when `p(1) = 0`, which callers have established).
///
/// With `p = Σ p_k x^k`, the quotient is `q_k = Σ_{j > k} p_j`.
fn div_by_var_minus_one<C: Field>(p: &LaurentPoly<C>, v: Var) -> LaurentPoly<C> {
    let scale = p.scale_of(v);
    let coeffs = p.coeffs_in(v);
    let dmax = match coeffs.keys().next_back() {
        None => return LaurentPoly::zero_poly(),
        Some(&d) => d,
    };
    debug_assert!(coeffs.keys().next().map(|&k| k >= 0).unwrap_or(true));
    let mut running = LaurentPoly::zero_poly();
    let mut out: BTreeMap<i64, LaurentPoly<C>> = BTreeMap::new();
    for k in (0..dmax).rev() {
        if let Some(c) = coeffs.get(&(k + 1)) {
            running = &running + c;
        }
        if !running.is_zero_poly() {
            out.insert(k, running.clone());
        }
    }
    LaurentPoly::from_coeffs_in(v, scale, &out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, Rational};

    type P = LaurentPoly<Rational>;
    type E = RatExpr<Rational>;

    fn s_pow(k: i64) -> P {
        P::var_pow(Var::S, &rat_int(k))
    }

    #[test]
    fn simple_cancellation() {
        // (s^2 - 1)/(s - 1) -> 2.
        let e = E::new(s_pow(2) - P::one_poly(), s_pow(1) - P::one_poly()).unwrap();
        let lim = limit_at_one(&e, Var::S).unwrap();
        assert_eq!(lim.as_rational().unwrap(), rat_int(2));
    }

    #[test]
    fn fractional_grid_cancellation() {
        // (s - 1)/(s^(1/3) - 1) -> 3.
        let e = E::new(
            s_pow(1) - P::one_poly(),
            P::var_pow(Var::S, &rat(1, 3)) - P::one_poly(),
        )
        .unwrap();
        let lim = limit_at_one(&e, Var::S).unwrap();
        assert_eq!(lim.as_rational().unwrap(), rat_int(3));
    }

    #[test]
    fn pole_is_detected() {
        let e = E::new(P::one_poly(), s_pow(1) - P::one_poly()).unwrap();
        assert_eq!(
            limit_at_one(&e, Var::S),
            Err(ExactError::PoleAtOne { var: Var::S })
        );
    }

    #[test]
    fn negative_exponents_are_cleared() {
        // (s^(-1) - 1)/(s - 1) = -(s-1)/(s(s-1)) -> -1.
        let e = E::new(s_pow(-1) - P::one_poly(), s_pow(1) - P::one_poly()).unwrap();
        let lim = limit_at_one(&e, Var::S).unwrap();
        assert_eq!(lim.as_rational().unwrap(), rat_int(-1));
    }

    #[test]
    fn double_cancellation_with_parameters() {
        // ((s-1)^2 (w+1)) / ((s-1)^2 (w-1)) -> (w+1)/(w-1).
        let s1 = s_pow(1) - P::one_poly();
        let sq = &s1 * &s1;
        let e = E::new(
            &sq * &(P::w_pow(&rat_int(1)) + P::one_poly()),
            &sq * &(P::w_pow(&rat_int(1)) - P::one_poly()),
        )
        .unwrap();
        let lim = limit_at_one(&e, Var::S).unwrap();
        let expect = E::new(
            P::w_pow(&rat_int(1)) + P::one_poly(),
            P::w_pow(&rat_int(1)) - P::one_poly(),
        )
        .unwrap();
        assert_eq!(lim, expect);
    }

    #[test]
    fn limit_of_var_free_expression_is_identity() {
        let e = E::new(
            P::w_pow(&rat_int(1)) + P::one_poly(),
            P::w_pow(&rat_int(2)) - P::one_poly(),
        )
        .unwrap();
        assert_eq!(limit_at_one(&e, Var::S).unwrap(), e);
    }
}
