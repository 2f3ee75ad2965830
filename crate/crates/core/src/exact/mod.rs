//! Exact arithmetic substrate: rationals, Laurent polynomials with rational
//! exponents, canonical rational expressions, and the specializations every
//! invariant in this crate is built from.
//!
//! # Design
//!
//! * Coefficients are arbitrary-precision rationals ([`Rational`], a reduced
//!   fraction of big integers with canonical sign), or more generally any
//!   type implementing the [`Field`] trait (the cyclotomic extensions used by
//!   equivariant elliptic sectors live in [`cyclotomic`]).
//! * Power products range over the six formal variables `u, v, s, t, y, z`
//!   ([`Var`]). Rational exponents are stored on a per-variable integer grid:
//!   a variable with scale `N` stores its formal `1/N`-th power, so the grid
//!   exponent `k` means `x^(k/N)`. Scales are aligned automatically (by
//!   least common multiple) whenever two polynomials meet.
//! * A [`RatExpr`] is a fraction of two Laurent polynomials kept in canonical
//!   form: numerator and denominator are coprime, the denominator is a true
//!   polynomial with per-variable minimum exponent zero, and its
//!   lexicographically leading coefficient is `1`. Equality of canonical
//!   forms is literal equality; `PartialEq` additionally short-circuits via
//!   cross-multiplication.
//! * [`limit_at_one`] computes `lim_{x → 1}` of a rational expression by
//!   exact cancellation of `(x - 1)` factors; it reports a genuine pole and
//!   never divides numerically.
//!
//! # Conventions
//!
//! * `w` is shorthand for `u·v`; see [`LaurentPoly::w_pow`].
//! * The variable `t` is reserved for the diagonal `u = v = t` substitution
//!   used by Euler-number specialization; `s` for perturbation bookkeeping;
//!   `y`, `z` for q-expansion coefficients.

mod cyclotomic;
mod gcd;
mod laurent;
mod limit;
mod parse;
mod ratexpr;

use num_traits::{One, Signed, Zero};
use std::fmt;

pub use cyclotomic::Cyclotomic;
pub(crate) use gcd::exact_div;
pub use laurent::{Field, LaurentPoly, Var, NVARS};
pub use limit::{limit_at_one, limit_at_one_quotient};
pub use parse::parse_ratexpr;
pub use ratexpr::RatExpr;

/// Arbitrary-precision rational number: a reduced fraction of big integers
/// with the sign carried by the numerator.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational constructor.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `p/q` as a rational. Panics if `q == 0` (callers pass literals).
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator in rational literal");
    Rational::new(p.into(), q.into())
}

/// Errors produced by the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    /// Division by the zero polynomial or zero expression.
    #[error("division by zero")]
    DivisionByZero,
    /// The requested limit does not exist: the denominator vanishes at the
    /// specialization point while the numerator does not.
    #[error("pole at {var:?} = 1: denominator vanishes, numerator does not")]
    PoleAtOne { var: Var },
    /// Internal guard for the cancellation loop of the limit engine; reaching
    /// it indicates a logic error rather than a user-input problem.
    #[error("cancellation depth exceeded while taking {var:?} -> 1 (bound {bound})")]
    CancellationDepthExceeded { var: Var, bound: usize },
    /// Text input could not be parsed; `pos` is a byte offset.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A computation that must produce a rational number produced something
    /// else (a nonconstant expression, or an irrational cyclotomic value).
    #[error("expected a rational result: {0}")]
    NonRationalResult(String),
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// A rational expression in the two E-function variables `u` and `v` only.
///
/// This is a semantic alias: use [`check_eexpr`] to validate that an
/// expression really only involves `u` and `v`.
pub type EExpr = RatExpr<Rational>;

/// Validates that `e` involves no variables besides `u` and `v`.
pub fn check_eexpr(e: &EExpr) -> Result<(), ExactError> {
    for var in [Var::S, Var::T, Var::Y, Var::Z] {
        if e.num().uses_var(var) || e.den().uses_var(var) {
            return Err(ExactError::InvalidArgument(format!(
                "expression uses variable {:?}; only u and v are allowed here",
                var
            )));
        }
    }
    Ok(())
}

/// The geometric factor `(uv - 1)/((uv)^(a+1) - 1)` attached to a divisor
/// with coefficient `a`.
///
/// For `a = 0` this is identically `1`; for negative exponents the factor is
/// a genuine Laurent fraction. The coefficient `a = -1` is rejected: those
/// divisors are handled by perturbation, never by this factor.
pub fn geometric_factor(a: &Rational) -> Result<EExpr, ExactError> {
    let a1 = a + Rational::one();
    if a1.is_zero() {
        return Err(ExactError::InvalidArgument(
            "geometric factor is undefined at coefficient -1".into(),
        ));
    }
    let num = LaurentPoly::w_pow(&Rational::one()) - LaurentPoly::one();
    let den = LaurentPoly::w_pow(&a1) - LaurentPoly::one();
    RatExpr::new(num, den)
}

/// Specializes an expression in `u, v` on the diagonal `u = v = t` and takes
/// the limit `t -> 1`, returning the resulting rational number.
///
/// This computes the Euler-characteristic specialization of an E-expression.
pub fn euler_specialize(e: &EExpr) -> Result<Rational, ExactError> {
    check_eexpr(e)?;
    let diag = e.rename_var(Var::U, Var::T).rename_var(Var::V, Var::T);
    let lim = limit_at_one(&diag, Var::T)?;
    lim.as_rational().ok_or_else(|| {
        ExactError::NonRationalResult(format!("diagonal limit is not constant: {}", lim))
    })
}

/// Specializes an expression in `u, v` at `v = 1` and renames `u` to `y`,
/// producing the χ_y-genus specialization.
///
/// The substitution `v = 1` must not kill the denominator (it never does for
/// the denominators produced by geometric factors, whose diagonal support
/// keeps a nontrivial `u`-part).
pub fn chi_y_specialize(e: &EExpr) -> Result<RatExpr<Rational>, ExactError> {
    check_eexpr(e)?;
    let num = e.num().subst_one(Var::V);
    let den = e.den().subst_one(Var::V);
    if den.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    RatExpr::new(num.rename_var(Var::U, Var::Y), den.rename_var(Var::U, Var::Y))
}

/// Formats a rational as a plain fraction string (`"5"`, `"-3/2"`).
pub fn rational_to_string(r: &Rational) -> String {
    r.to_string()
}

/// Parses a fraction string (`"5"`, `"-3/2"`, `"7/4"`).
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let t = text.trim();
    t.parse::<Rational>().map_err(|e| ExactError::Parse {
        pos: 0,
        msg: format!("invalid rational {:?}: {}", t, e),
    })
}

/// Renders a signed rational exponent for display: integers bare, fractions
/// and negatives parenthesized (`2`, `(1/3)`, `(-2)`).
pub(crate) fn exponent_string(e: &Rational) -> String {
    if e.is_integer() {
        if e.is_negative() {
            format!("({})", e)
        } else {
            e.to_string()
        }
    } else {
        format!("({})", e)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_factor_at_zero_is_one() {
        let f = geometric_factor(&rat_int(0)).unwrap();
        assert!(f.is_one());
        assert_eq!(f.to_string(), "1");
    }

    #[test]
    fn geometric_factor_rejects_minus_one() {
        assert!(geometric_factor(&rat_int(-1)).is_err());
    }

    #[test]
    fn geometric_factor_negative_half_collapses() {
        // (w - 1)/(w^(1/2) - 1) = w^(1/2) + 1.
        let f = geometric_factor(&rat(-1, 2)).unwrap();
        assert_eq!(f.to_string(), "w^(1/2) + 1");
    }

    #[test]
    fn euler_of_geometric_factor() {
        // (w - 1)/(w^3 - 1) -> 1/3 on the diagonal.
        let f = geometric_factor(&rat_int(2)).unwrap();
        assert_eq!(euler_specialize(&f).unwrap(), rat(1, 3));
    }

    #[test]
    fn chi_y_of_curve_polynomial() {
        // 1 - g u - g v + uv at v = 1 is (1 - g)(1 + y).
        let g = 3i64;
        let e = RatExpr::from_poly(
            LaurentPoly::one() - LaurentPoly::var(Var::U).scale(&rat_int(g))
                - LaurentPoly::var(Var::V).scale(&rat_int(g))
                + LaurentPoly::w_pow(&Rational::one()),
        );
        let chi = chi_y_specialize(&e).unwrap();
        let expect = RatExpr::from_poly(
            (LaurentPoly::one() + LaurentPoly::var(Var::Y)).scale(&rat_int(1 - g)),
        );
        assert_eq!(chi, expect);
    }
}
