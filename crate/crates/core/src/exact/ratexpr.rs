//! Canonical fractions of Laurent polynomials.
//!
//! A [`RatExpr`] keeps the invariants:
//!
//! * numerator and denominator are coprime (gcd `1` including monomial
//!   factors);
//! * the denominator is a true polynomial whose per-variable minimum
//!   exponent is zero (all Laurent monomial content is carried by the
//!   numerator);
//! * the denominator's lexicographically leading coefficient is `1`
//!   (global variable order, after grid normalization);
//! * `0` is represented as `0/1`.
//!
//! Two expressions constructed along different routes therefore agree as
//! mathematical functions exactly when their parts are literally equal;
//! `PartialEq` nevertheless compares by cross-multiplication, which is
//! cheaper in hot paths and agrees with canonical equality.

use super::gcd::{exact_div, poly_gcd};
use super::laurent::{Field, LaurentPoly, Var, NVARS};
use super::{ExactError, Rational};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A reduced fraction of Laurent polynomials over the field `C`.
#[derive(Clone, Debug)]
pub struct RatExpr<C: Field> {
    num: LaurentPoly<C>,
    den: LaurentPoly<C>,
}

impl<C: Field> RatExpr<C> {
    /// Builds and reduces `num/den`. Fails on a zero denominator.
    pub fn new(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Result<Self, ExactError> {
        if den.is_zero_poly() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    /// A polynomial viewed as an expression.
    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        RatExpr {
            num: p,
            den: LaurentPoly::one_poly(),
        }
    }

    /// The zero expression.
    pub fn zero_expr() -> Self {
        Self::from_poly(LaurentPoly::zero_poly())
    }

    /// The unit expression.
    pub fn one_expr() -> Self {
        Self::from_poly(LaurentPoly::one_poly())
    }

    /// A rational constant.
    pub fn constant(r: &Rational) -> Self {
        Self::from_poly(LaurentPoly::constant_rational(r))
    }

    /// Numerator (canonical form).
    pub fn num(&self) -> &LaurentPoly<C> {
        &self.num
    }

    /// Denominator (canonical form).
    pub fn den(&self) -> &LaurentPoly<C> {
        &self.den
    }

    /// Full reduction: gcd, monomial convention, monic denominator.
    fn reduced(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Self {
        debug_assert!(!den.is_zero_poly());
        if num.is_zero_poly() {
            return Self::zero_expr();
        }
        let (num, den) = LaurentPoly::aligned(&num, &den);
        let (pn, mn) = num.strip_monomial();
        let (pd, md) = den.strip_monomial();
        let g = poly_gcd(&pn, &pd);
        let (mut n, d) = if g.is_one() {
            (pn, pd)
        } else {
            (
                exact_div(&pn, &g).expect("gcd divides numerator"),
                exact_div(&pd, &g).expect("gcd divides denominator"),
            )
        };
        for i in 0..NVARS {
            let k = mn[i] - md[i];
            if k != 0 {
                n = n.mul_var_grid(Var::ALL[i], k);
            }
        }
        Self::normalized(n, d)
    }

    /// Normalization without gcd: assumes `num`, `den` already coprime with
    /// the denominator a min-exponent-zero polynomial up to a monomial.
    fn normalized(num: LaurentPoly<C>, den: LaurentPoly<C>) -> Self {
        debug_assert!(!den.is_zero_poly());
        if num.is_zero_poly() {
            return Self::zero_expr();
        }
        let (num, den) = LaurentPoly::aligned(&num, &den);
        // Move the denominator's monomial content into the numerator.
        let (mut den, md) = den.strip_monomial();
        let mut num = num;
        for i in 0..NVARS {
            if md[i] != 0 {
                num = num.mul_var_grid(Var::ALL[i], -md[i]);
            }
        }
        num.normalize_scales();
        den.normalize_scales();
        let (_, lc) = den.lex_lead().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.field_inv();
            num = num.scale_coeff(&inv);
            den = den.scale_coeff(&inv);
        }
        RatExpr { num, den }
    }

    /// Re-runs the full canonicalization. The result is always literally
    /// equal to `self` (canonical form is maintained as an invariant); the
    /// method exists so idempotence is testable and explicit at call sites.
    pub fn canonicalize(&self) -> Self {
        Self::reduced(self.num.clone(), self.den.clone())
    }

    /// True for the zero expression.
    pub fn is_zero_expr(&self) -> bool {
        self.num.is_zero_poly()
    }

    /// True for the unit expression.
    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value, if the expression is a constant.
    pub fn as_constant(&self) -> Option<C> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    /// The rational value, if the expression is a rational constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_constant().and_then(|c| c.as_rational())
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero_expr() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// Division.
    pub fn div(&self, rhs: &Self) -> Result<Self, ExactError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert (failing on zero).
    pub fn powi(&self, k: i64) -> Result<Self, ExactError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        // Coprimality and denominator normalization survive powers, so the
        // result is canonical without another reduction.
        Ok(RatExpr {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Substitutes `v = 1`; fails if the denominator vanishes there.
    pub fn subst_one(&self, v: Var) -> Result<Self, ExactError> {
        let den = self.den.subst_one(v);
        if den.is_zero_poly() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(self.num.subst_one(v), den)
    }

    /// Renames a variable in both parts (grids merge).
    pub fn rename_var(&self, from: Var, to: Var) -> Self {
        Self::reduced(
            self.num.rename_var(from, to),
            self.den.rename_var(from, to),
        )
    }

    /// True if either part uses the variable.
    pub fn uses_var(&self, v: Var) -> bool {
        self.num.uses_var(v) || self.den.uses_var(v)
    }

    /// Maps coefficients through a field morphism.
    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> RatExpr<D> {
        RatExpr::<D>::reduced(self.num.map_coeffs(&f), self.den.map_coeffs(&f))
    }

    /// Scales by a rational constant.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero_expr();
        }
        RatExpr {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }
}

impl<C: Field> PartialEq for RatExpr<C> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<C: Field> Add for &RatExpr<C> {
    type Output = RatExpr<C>;
    fn add(self, rhs: Self) -> RatExpr<C> {
        if self.is_zero_expr() {
            return rhs.clone();
        }
        if rhs.is_zero_expr() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatExpr::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RatExpr::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<C: Field> Sub for &RatExpr<C> {
    type Output = RatExpr<C>;
    fn sub(self, rhs: Self) -> RatExpr<C> {
        self + &(-rhs)
    }
}

impl<C: Field> Mul for &RatExpr<C> {
    type Output = RatExpr<C>;
    fn mul(self, rhs: Self) -> RatExpr<C> {
        if self.is_zero_expr() || rhs.is_zero_expr() {
            return RatExpr::zero_expr();
        }
        // Cross-cancel before multiplying: keeps intermediate sizes small and
        // the result reduced without a product-sized gcd.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let a = exact_div(&self.num, &g1).expect("gcd divides");
        let d = exact_div(&rhs.den, &g1).expect("gcd divides");
        let c = exact_div(&rhs.num, &g2).expect("gcd divides");
        let b = exact_div(&self.den, &g2).expect("gcd divides");
        RatExpr::normalized(&a * &c, &b * &d)
    }
}

impl<C: Field> Neg for &RatExpr<C> {
    type Output = RatExpr<C>;
    fn neg(self) -> RatExpr<C> {
        RatExpr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_expr_binop {
    ($trait:ident, $method:ident) => {
        impl<C: Field> $trait for RatExpr<C> {
            type Output = RatExpr<C>;
            fn $method(self, rhs: Self) -> RatExpr<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Field> $trait<&RatExpr<C>> for RatExpr<C> {
            type Output = RatExpr<C>;
            fn $method(self, rhs: &RatExpr<C>) -> RatExpr<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Field> $trait<RatExpr<C>> for &RatExpr<C> {
            type Output = RatExpr<C>;
            fn $method(self, rhs: RatExpr<C>) -> RatExpr<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_expr_binop!(Add, add);
forward_owned_expr_binop!(Sub, sub);
forward_owned_expr_binop!(Mul, mul);

impl<C: Field> Neg for RatExpr<C> {
    type Output = RatExpr<C>;
    fn neg(self) -> RatExpr<C> {
        -&self
    }
}

impl<C: Field> Zero for RatExpr<C> {
    fn zero() -> Self {
        Self::zero_expr()
    }
    fn is_zero(&self) -> bool {
        self.is_zero_expr()
    }
}

impl<C: Field> fmt::Display for RatExpr<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    type P = LaurentPoly<Rational>;
    type E = RatExpr<Rational>;

    fn w(k: i64) -> P {
        P::w_pow(&rat_int(k))
    }

    #[test]
    fn telescoping_quotient_reduces() {
        // (w^2 - 1)/(w - 1) = w + 1.
        let e = E::new(w(2) - P::one_poly(), w(1) - P::one_poly()).unwrap();
        assert!(e.den().is_one());
        assert_eq!(e.to_string(), "w + 1");
    }

    #[test]
    fn fractional_exponent_quotient() {
        // (w - 1)/(w^(1/3) - 1) = w^(2/3) + w^(1/3) + 1.
        let e = E::new(
            w(1) - P::one_poly(),
            P::w_pow(&rat(1, 3)) - P::one_poly(),
        )
        .unwrap();
        assert_eq!(e.to_string(), "w^(2/3) + w^(1/3) + 1");
    }

    #[test]
    fn canonical_display_keeps_irreducible_fraction() {
        // (w - 1)/(w^3 - 1) reduces to 1/(w^2 + w + 1) and stays a fraction.
        let e = E::new(w(1) - P::one_poly(), w(3) - P::one_poly()).unwrap();
        assert_eq!(e.to_string(), "(1)/(w^2 + w + 1)");
        // A fractional-grid denominator that does not divide the numerator.
        let f = E::new(
            w(1) - P::one_poly(),
            P::w_pow(&rat(1, 2)) - P::constant_rational(&rat_int(2)),
        )
        .unwrap();
        assert_eq!(f.to_string(), "(w - 1)/(w^(1/2) - 2)");
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = E::new(w(1) - P::one_poly(), w(2) - P::one_poly()).unwrap();
        let b = E::new(P::one_poly(), w(1) + P::one_poly()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn common_factor_cancellation_is_canonical() {
        // (P·R)/(Q·R) and P/Q canonicalize identically.
        let p = w(1) + P::one_poly();
        let q = w(2) + w(1) + P::one_poly();
        let r = w(1) - P::constant_rational(&rat(1, 2));
        let direct = E::new(p.clone(), q.clone()).unwrap();
        let padded = E::new(&p * &r, &q * &r).unwrap();
        assert_eq!(direct.num(), padded.num());
        assert_eq!(direct.den(), padded.den());
        assert_eq!(direct.to_string(), padded.to_string());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let e = E::new(
            (w(1) - P::one_poly()).scale(&rat(3, 7)),
            (w(3) - P::one_poly()).scale(&rat(-2, 5)),
        )
        .unwrap();
        let c = e.canonicalize();
        assert_eq!(c.num(), e.num());
        assert_eq!(c.den(), e.den());
    }

    #[test]
    fn monomial_content_lives_in_numerator() {
        // (w^(-2) - w^(-3)) / 1: denominator stays 1, numerator Laurent.
        let e = E::new(w(-2) - w(-3), P::one_poly()).unwrap();
        assert!(e.den().is_one());
        // 1/(w^(-1) - w^(-2)): denominator must be a true polynomial.
        let f = E::new(P::one_poly(), w(-1) - w(-2)).unwrap();
        assert_eq!(f.den().min_exp_grid(Var::U), Some(0));
        assert_eq!(f.to_string(), "(w^2)/(w - 1)");
    }

    #[test]
    fn arithmetic_and_powers() {
        let half = E::constant(&rat(1, 2));
        let sum = &half + &half;
        assert!(sum.is_one());
        let g = E::new(w(1) - P::one_poly(), w(3) - P::one_poly()).unwrap();
        let sq = g.powi(2).unwrap();
        assert_eq!(sq, &g * &g);
        let back = sq.powi(-1).unwrap();
        assert_eq!(back, g.powi(-2).unwrap());
    }
}
