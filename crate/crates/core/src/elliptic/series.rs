//! Truncated Laurent series in fractional powers of `q`, with coefficients
//! kept as *unreduced* fractions of Laurent polynomials.
//!
//! Every computation in this module pipeline is a balanced ratio of theta
//! products, so denominators only ever enter through series inversion — and
//! the inverted leading coefficients are small binomial-like polynomials.
//! [`Frac`] therefore stores its denominator as a multiset of normalized
//! factors: addition aligns denominators by structural matching instead of
//! gcd computations, and cancellation happens by cheap trial division.
//! Only fully assembled coefficients are converted to canonical [`RatExpr`]
//! fractions (or pushed through the perturbation limit).

use crate::exact::{
    exact_div, limit_at_one_quotient, rat_int, ExactError, Field, LaurentPoly, RatExpr, Rational,
    Var,
};
use num_traits::Zero;

use super::EllipticError;

/// An unreduced fraction `num / Π factorᵉ` of Laurent polynomials.
///
/// Denominator factors are kept in the normal form produced by
/// [`normalize_factor`] (minimum exponent zero in every variable, trailing
/// coefficient one) so that structurally equal factors from different terms
/// can be matched without any gcd machinery.
#[derive(Debug, Clone)]
pub(crate) struct Frac<C: Field> {
    num: LaurentPoly<C>,
    den: Vec<(LaurentPoly<C>, u32)>,
}

/// Splits `p` into `unit_coeff · unit_monomial · normal` where `normal` has
/// minimum exponent zero in every variable and trailing (lexicographically
/// smallest) coefficient one. Returns `(unit_coeff, unit_exponents, normal)`
/// with the exponents as rationals per variable.
fn normalize_factor<C: Field>(p: &LaurentPoly<C>) -> (C, Vec<(Var, Rational)>, LaurentPoly<C>) {
    assert!(!p.is_zero_poly(), "cannot normalize the zero factor");
    let mut unit_exps = Vec::new();
    let mut normal = p.clone();
    for v in normal.live_vars() {
        if let Some(min) = normal.min_exp_grid(v) {
            if min != 0 {
                let e = Rational::new(min.into(), (normal.scale_of(v) as i64).into());
                normal = normal.mul_var_pow(v, &-e.clone());
                unit_exps.push((v, e));
            }
        }
    }
    let trailing = normal
        .terms_rational()
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, c)| c)
        .expect("nonzero factor has a trailing term");
    let inv = trailing.field_inv();
    let normal = normal.scale_coeff(&inv);
    (trailing, unit_exps, normal)
}

impl<C: Field> Frac<C> {
    pub fn zero() -> Self {
        Frac {
            num: LaurentPoly::zero_poly(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Frac {
            num: LaurentPoly::one_poly(),
            den: Vec::new(),
        }
    }

    pub fn from_poly(p: LaurentPoly<C>) -> Self {
        Frac {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero_poly()
    }

    /// Cancels denominator factors that divide the numerator exactly.
    fn reduce(&mut self) {
        if self.num.is_zero_poly() {
            self.den.clear();
            return;
        }
        for (f, e) in &mut self.den {
            while *e > 0 {
                match exact_div(&self.num, f) {
                    Some(q) => {
                        self.num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        self.den.retain(|(_, e)| *e > 0);
    }

    /// Multiplies the numerator by `Π f^e` for the factors missing relative
    /// to `target` (which must dominate `self.den`).
    fn raise_to(&mut self, target: &[(LaurentPoly<C>, u32)]) {
        for (f, te) in target {
            let have = self
                .den
                .iter()
                .find(|(g, _)| g == f)
                .map(|(_, e)| *e)
                .unwrap_or(0);
            for _ in have..*te {
                self.num = &self.num * f;
            }
        }
        self.den = target.to_vec();
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Least common denominator by structural factor matching.
        let mut lcm = self.den.clone();
        for (f, e) in &other.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some((_, le)) => *le = (*le).max(*e),
                None => lcm.push((f.clone(), *e)),
            }
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.raise_to(&lcm);
        b.raise_to(&lcm);
        let mut out = Frac {
            num: &a.num + &b.num,
            den: lcm,
        };
        out.reduce();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Frac::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &other.den {
            match den.iter_mut().find(|(g, _)| g == f) {
                Some((_, de)) => *de += *e,
                None => den.push((f.clone(), *e)),
            }
        }
        let mut out = Frac {
            num: &self.num * &other.num,
            den,
        };
        out.reduce();
        out
    }

    pub fn neg(&self) -> Self {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly<C>) -> Self {
        if p.is_zero_poly() {
            return Frac::zero();
        }
        let mut out = Frac {
            num: &self.num * p,
            den: self.den.clone(),
        };
        out.reduce();
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Frac::zero();
        }
        Frac {
            num: self.num.scale(r),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse. The numerator becomes the (single, normalized)
    /// denominator factor; its stripped unit goes into the new numerator.
    pub fn inv(&self) -> Result<Self, EllipticError> {
        if self.is_zero() {
            return Err(EllipticError::DegenerateTheta(
                "inverted a series with zero leading coefficient".to_string(),
            ));
        }
        let (unit, exps, normal) = normalize_factor(&self.num);
        let mut num = self.expand_den();
        num = num.scale_coeff(&unit.field_inv());
        for (v, e) in exps {
            num = num.mul_var_pow(v, &-e);
        }
        let is_unit = normal.as_constant().map(|c| c.is_one()).unwrap_or(false);
        let den = if is_unit { Vec::new() } else { vec![(normal, 1)] };
        let mut out = Frac { num, den };
        out.reduce();
        Ok(out)
    }

    pub fn expand_den(&self) -> LaurentPoly<C> {
        let mut out = LaurentPoly::one_poly();
        for (f, e) in &self.den {
            for _ in 0..*e {
                out = &out * f;
            }
        }
        out
    }

    /// Canonical fraction; the only reduction cost paid in the pipeline.
    pub fn to_ratexpr(&self) -> Result<RatExpr<C>, ExactError> {
        RatExpr::new(self.num.clone(), self.expand_den())
    }

    /// Exact `var → 1` limit, straight on the unreduced quotient.
    pub fn limit_at_one(&self, var: Var) -> Result<RatExpr<C>, ExactError> {
        limit_at_one_quotient(&self.num, &self.expand_den(), var)
    }

    /// Exact `ε → 1` limit in the perturbation variable `S`, straight on the
    /// unreduced quotient.
    pub fn limit_s(&self) -> Result<RatExpr<C>, ExactError> {
        self.limit_at_one(Var::S)
    }
}

/// A truncated Laurent series `Σ_k c_k q^{k/scale}` with [`Frac`]
/// coefficients: entries for grid exponents `min_k ..= ord_k` are stored and
/// exact; nothing is known above `ord_k`.
#[derive(Debug, Clone)]
pub(crate) struct Ser<C: Field> {
    pub scale: i64,
    pub min_k: i64,
    pub ord_k: i64,
    coeffs: Vec<Frac<C>>,
}

impl<C: Field> Ser<C> {
    /// The zero series, known through `ord_k`.
    pub fn zero(scale: i64, ord_k: i64) -> Self {
        Ser {
            scale,
            min_k: ord_k + 1,
            ord_k,
            coeffs: Vec::new(),
        }
    }

    /// A single term `c·q^{k/scale}`, known through `ord_k`.
    pub fn monomial(scale: i64, k: i64, c: Frac<C>, ord_k: i64) -> Self {
        let mut s = Ser::zero(scale, ord_k);
        s.set(k, c);
        s
    }

    pub fn one(scale: i64, ord_k: i64) -> Self {
        Ser::monomial(scale, 0, Frac::one(), ord_k)
    }

    fn set(&mut self, k: i64, c: Frac<C>) {
        if c.is_zero() || k > self.ord_k {
            return;
        }
        if self.coeffs.is_empty() {
            self.min_k = k;
            self.coeffs.push(c);
            return;
        }
        if k < self.min_k {
            let pad = (self.min_k - k) as usize;
            let mut new = Vec::with_capacity(pad + self.coeffs.len());
            new.push(c);
            new.extend(std::iter::repeat_with(Frac::zero).take(pad - 1));
            new.append(&mut self.coeffs);
            self.coeffs = new;
            self.min_k = k;
        } else {
            let idx = (k - self.min_k) as usize;
            while self.coeffs.len() <= idx {
                self.coeffs.push(Frac::zero());
            }
            self.coeffs[idx] = c;
        }
    }

    pub fn get(&self, k: i64) -> Frac<C> {
        if k < self.min_k || k > self.ord_k {
            return Frac::zero();
        }
        let idx = (k - self.min_k) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(Frac::zero)
    }

    /// Drops leading zeros (tightening `min_k`) and trailing storage above
    /// `ord_k`.
    fn trim(&mut self) {
        let over = self.coeffs.len() as i64 - (self.ord_k - self.min_k + 1).max(0);
        if over > 0 {
            self.coeffs.truncate(self.coeffs.len() - over as usize);
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_k += lead as i64;
        }
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min_k = self.ord_k + 1;
        }
    }

    pub fn is_zero_through_ord(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Highest grid index with a stored coefficient, or `min_k − 1` when
    /// nothing is stored.
    fn stored_hi(&self) -> i64 {
        self.min_k + self.coeffs.len() as i64 - 1
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.scale, other.scale, "series grids must agree");
        let ord_k = self.ord_k.min(other.ord_k);
        let mut out = Ser::zero(self.scale, ord_k);
        // Walk only the union of the stored windows; everything outside is
        // an exact zero.
        let lo = self.min_k.min(other.min_k);
        let hi = self.stored_hi().max(other.stored_hi()).min(ord_k);
        for k in lo..=hi {
            let c = self.get(k).add(&other.get(k));
            out.set(k, c);
        }
        out.trim();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.scale, other.scale, "series grids must agree");
        let ord_k = (self.ord_k + other.min_k).min(other.ord_k + self.min_k);
        let mut acc: Vec<Frac<C>> = Vec::new();
        let min_k = self.min_k + other.min_k;
        if min_k <= ord_k {
            acc.resize_with((ord_k - min_k + 1) as usize, Frac::zero);
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let ka = self.min_k + i as i64;
                for (j, b) in other.coeffs.iter().enumerate() {
                    let kb = other.min_k + j as i64;
                    if ka + kb > ord_k {
                        break;
                    }
                    if b.is_zero() {
                        continue;
                    }
                    let idx = (ka + kb - min_k) as usize;
                    acc[idx] = acc[idx].add(&a.mul(b));
                }
            }
        }
        let mut out = Ser {
            scale: self.scale,
            min_k: min_k.min(ord_k + 1),
            ord_k,
            coeffs: acc,
        };
        out.trim();
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.neg();
        }
        out
    }

    /// Forgets everything above grid index `ord_k`, shrinking both the
    /// claimed validity and the stored coefficients. Cheap way to stop
    /// paying for precision nobody will read.
    pub fn truncate_to(&mut self, ord_k: i64) {
        if ord_k < self.ord_k {
            self.ord_k = ord_k;
            self.trim();
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul_poly(&self, p: &LaurentPoly<C>) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.mul_poly(p);
        }
        out.trim();
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.scale(r);
        }
        out.trim();
        out
    }

    /// Multiplicative inverse of a series whose lowest stored coefficient is
    /// nonzero after trimming. Validity improves for series with negative
    /// leading exponent: the result is exact through `ord_k - 2·lead`.
    pub fn inv(&self) -> Result<Self, EllipticError> {
        let mut s = self.clone();
        s.trim();
        if s.coeffs.is_empty() {
            return Err(EllipticError::DegenerateTheta(
                "inverted a series that vanishes through its known order".to_string(),
            ));
        }
        let m = s.min_k;
        let rel_ord = s.ord_k - m;
        let c0_inv = s.coeffs[0].inv()?;
        let mut d: Vec<Frac<C>> = Vec::with_capacity(rel_ord as usize + 1);
        d.push(c0_inv.clone());
        for k in 1..=rel_ord {
            let mut acc = Frac::zero();
            for i in 1..=k {
                let ci = s.get(m + i);
                if ci.is_zero() {
                    continue;
                }
                acc = acc.add(&ci.mul(&d[(k - i) as usize]));
            }
            d.push(acc.mul(&c0_inv).neg());
        }
        let mut out = Ser {
            scale: s.scale,
            min_k: -m,
            ord_k: s.ord_k - 2 * m,
            coeffs: d,
        };
        out.trim();
        Ok(out)
    }

    /// Nonzero stored entries as `(grid exponent, coefficient)` pairs.
    pub fn entries(&self) -> Vec<(i64, &Frac<C>)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.min_k + i as i64, c))
            .collect()
    }

    /// Checks the series is exact at least through `q^order` (an integer
    /// order in whole powers of `q`).
    pub fn check_order(&self, order: u32) -> Result<(), EllipticError> {
        let needed = order as i64 * self.scale;
        if self.ord_k < needed {
            return Err(EllipticError::TruncationExhausted {
                have: Rational::new(self.ord_k.into(), self.scale.into()),
                need: rat_int(order as i64),
            });
        }
        Ok(())
    }
}

/// Helper: `r·scale` as an exact grid index.
pub(crate) fn grid_index(r: &Rational, scale: i64) -> i64 {
    use num_traits::ToPrimitive;
    let scaled = r * rat_int(scale);
    assert!(
        scaled.is_integer(),
        "exponent {r} does not live on the 1/{scale} grid"
    );
    scaled
        .numer()
        .to_i64()
        .expect("grid exponent overflows i64")
}
