//! Laurent polynomials in six formal variables with rational exponents.
//!
//! Exponents live on per-variable integer grids: a variable whose scale is
//! `N` stores its formal `1/N`-th power, so grid exponent `k` represents
//! `x^(k/N)`. Binary operations align grids by least common multiple, and
//! [`LaurentPoly::normalize_scales`] reduces each grid to the coarsest one
//! that still represents the support exactly.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{exponent_string, Rational};

/// Number of formal variables.
pub const NVARS: usize = 6;

/// The formal variables, in the fixed global order used for lexicographic
/// comparisons (`u` most significant).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    /// First E-function variable.
    U,
    /// Second E-function variable.
    V,
    /// Perturbation tracking variable.
    S,
    /// Diagonal specialization variable (`u = v = t`).
    T,
    /// χ_y / elliptic-genus variable.
    Y,
    /// Equivariant parameter of elliptic localization.
    Z,
}

impl Var {
    /// All variables in global order.
    pub const ALL: [Var; NVARS] = [Var::U, Var::V, Var::S, Var::T, Var::Y, Var::Z];

    /// Index of this variable in the global order.
    pub fn index(self) -> usize {
        match self {
            Var::U => 0,
            Var::V => 1,
            Var::S => 2,
            Var::T => 3,
            Var::Y => 4,
            Var::Z => 5,
        }
    }

    /// Lower-case display name.
    pub fn name(self) -> char {
        match self {
            Var::U => 'u',
            Var::V => 'v',
            Var::S => 's',
            Var::T => 't',
            Var::Y => 'y',
            Var::Z => 'z',
        }
    }

    /// Inverse of [`Var::name`]. `w` is not a variable (it abbreviates `uv`).
    pub fn from_name(c: char) -> Option<Var> {
        match c {
            'u' => Some(Var::U),
            'v' => Some(Var::V),
            's' => Some(Var::S),
            't' => Some(Var::T),
            'y' => Some(Var::Y),
            'z' => Some(Var::Z),
            _ => None,
        }
    }
}

/// Coefficient field abstraction: exact field arithmetic with an embedding
/// of the rationals and a partial retraction back to them.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    /// Embeds a rational number.
    fn from_rational(r: &Rational) -> Self;
    /// Returns the value as a rational if it is one.
    fn as_rational(&self) -> Option<Rational>;
    /// Multiplicative inverse. Panics on zero (callers check).
    fn field_inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

impl Field for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

/// Grid exponent vector, indexed by [`Var::index`].
pub(crate) type Exps = [i64; NVARS];

/// A Laurent polynomial with coefficients in a [`Field`] and rational
/// exponents stored on per-variable grids.
///
/// Invariants: no explicit zero coefficients; `scales[i] >= 1`.
#[derive(Clone, Debug)]
pub struct LaurentPoly<C> {
    scales: [u32; NVARS],
    terms: BTreeMap<Exps, C>,
}

impl<C: Field> LaurentPoly<C> {
    /// The zero polynomial.
    pub fn zero_poly() -> Self {
        LaurentPoly {
            scales: [1; NVARS],
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one_poly() -> Self {
        Self::constant(C::one())
    }

    /// A constant polynomial.
    pub fn constant(c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NVARS], c);
        }
        LaurentPoly {
            scales: [1; NVARS],
            terms,
        }
    }

    /// A rational constant polynomial.
    pub fn constant_rational(r: &Rational) -> Self {
        Self::constant(C::from_rational(r))
    }

    /// The variable `v` to the first power.
    pub fn var(v: Var) -> Self {
        Self::var_pow(v, &Rational::one())
    }

    /// `v^e` for a rational exponent `e`.
    pub fn var_pow(v: Var, e: &Rational) -> Self {
        Self::term(C::one(), &[(v, e.clone())])
    }

    /// `w^e = (uv)^e`.
    pub fn w_pow(e: &Rational) -> Self {
        Self::term(C::one(), &[(Var::U, e.clone()), (Var::V, e.clone())])
    }

    /// A single term `c · Π v_i^{e_i}` with rational exponents.
    pub fn term(c: C, exps: &[(Var, Rational)]) -> Self {
        if c.is_zero() {
            return Self::zero_poly();
        }
        let mut scales = [1u32; NVARS];
        let mut e: Exps = [0; NVARS];
        for (v, r) in exps {
            let i = v.index();
            let den = r
                .denom()
                .to_u32()
                .expect("exponent denominator fits the grid");
            let num = r
                .numer()
                .to_i64()
                .expect("exponent numerator fits the grid");
            let lcm = (scales[i] as u64).lcm(&(den as u64)) as u32;
            e[i] = e[i] * (lcm / scales[i]) as i64 + num * (lcm / den) as i64;
            scales[i] = lcm;
        }
        let mut terms = BTreeMap::new();
        terms.insert(e, c);
        let mut p = LaurentPoly { scales, terms };
        p.normalize_scales();
        p
    }

    /// True if this is the zero polynomial.
    pub fn is_zero_poly(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Returns the constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<C> {
        if self.terms.is_empty() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            if e.iter().all(|&k| k == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// True if variable `v` occurs with a nonzero exponent.
    pub fn uses_var(&self, v: Var) -> bool {
        let i = v.index();
        self.terms.keys().any(|e| e[i] != 0)
    }

    /// The variables that occur with nonzero exponent, in global order.
    pub fn live_vars(&self) -> Vec<Var> {
        Var::ALL
            .iter()
            .copied()
            .filter(|&v| self.uses_var(v))
            .collect()
    }

    /// Grid scale of variable `v` (exponents are multiples of `1/scale`).
    pub fn scale_of(&self, v: Var) -> u32 {
        self.scales[v.index()]
    }

    /// Minimum grid exponent of `v` over the support (`None` when zero poly).
    pub fn min_exp_grid(&self, v: Var) -> Option<i64> {
        let i = v.index();
        self.terms.keys().map(|e| e[i]).min()
    }

    /// Maximum grid exponent of `v` over the support (`None` when zero poly).
    pub fn max_exp_grid(&self, v: Var) -> Option<i64> {
        let i = v.index();
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Rescales variable grids so each variable uses at least the given
    /// scales (which must be multiples of the current ones after lcm).
    fn rescale_to(&self, scales: &[u32; NVARS]) -> Self {
        let mut factors = [1i64; NVARS];
        for i in 0..NVARS {
            debug_assert!(scales[i] % self.scales[i] == 0);
            factors[i] = (scales[i] / self.scales[i]) as i64;
        }
        if factors.iter().all(|&f| f == 1) {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = *e;
                for i in 0..NVARS {
                    e2[i] *= factors[i];
                }
                (e2, c.clone())
            })
            .collect();
        LaurentPoly {
            scales: *scales,
            terms,
        }
    }

    /// Aligns two polynomials to a common grid (per-variable lcm of scales).
    pub(crate) fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let mut scales = [1u32; NVARS];
        for i in 0..NVARS {
            scales[i] = (a.scales[i] as u64).lcm(&(b.scales[i] as u64)) as u32;
        }
        (a.rescale_to(&scales), b.rescale_to(&scales))
    }

    /// Reduces each variable's grid to the coarsest exact representation and
    /// resets unused variables to scale 1.
    pub fn normalize_scales(&mut self) {
        for i in 0..NVARS {
            if self.scales[i] == 1 {
                continue;
            }
            let mut g: i64 = self.scales[i] as i64;
            for e in self.terms.keys() {
                g = g.gcd(&e[i]);
                if g == 1 {
                    break;
                }
            }
            // When the variable is unused every exponent is 0 and g stays at
            // the full scale, collapsing it to 1 below.
            if g > 1 {
                let new_terms = self
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let mut e2 = *e;
                        e2[i] /= g;
                        (e2, c.clone())
                    })
                    .collect();
                self.terms = new_terms;
                self.scales[i] /= g as u32;
            }
        }
    }

    /// Internal: inserts (adds) a term, dropping a vanishing sum.
    pub(crate) fn insert_term(&mut self, e: Exps, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Multiplies every coefficient by the scalar `c`.
    pub fn scale_coeff(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_poly();
        }
        LaurentPoly {
            scales: self.scales,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (*e, k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiplies every coefficient by the rational scalar `r`.
    pub fn scale(&self, r: &Rational) -> Self {
        self.scale_coeff(&C::from_rational(r))
    }

    /// Multiplies by `v^(k/scale_of(v))`, i.e. shifts the grid exponents of
    /// `v` by the integer `k` (in the polynomial's own grid units).
    pub(crate) fn mul_var_grid(&self, v: Var, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let i = v.index();
        LaurentPoly {
            scales: self.scales,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2[i] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Multiplies by `v^e` for a rational exponent.
    pub fn mul_var_pow(&self, v: Var, e: &Rational) -> Self {
        self * &Self::var_pow(v, e)
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_poly();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `v = 1`: drops the variable, merging terms.
    pub fn subst_one(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = LaurentPoly {
            scales: self.scales,
            terms: BTreeMap::new(),
        };
        out.scales[i] = 1;
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            out.insert_term(e2, c.clone());
        }
        out.normalize_scales();
        out
    }

    /// Renames `from` to `to`, merging exponents on a common grid. The `from`
    /// slot ends up unused. Renaming a variable to itself is a no-op.
    pub fn rename_var(&self, from: Var, to: Var) -> Self {
        if from == to || !self.uses_var(from) {
            return self.clone();
        }
        let fi = from.index();
        let ti = to.index();
        let sf = self.scales[fi] as u64;
        let st = self.scales[ti] as u64;
        let lcm = sf.lcm(&st);
        let (mf, mt) = ((lcm / sf) as i64, (lcm / st) as i64);
        let mut out = LaurentPoly {
            scales: self.scales,
            terms: BTreeMap::new(),
        };
        out.scales[fi] = 1;
        out.scales[ti] = lcm as u32;
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[ti] = e2[ti] * mt + e2[fi] * mf;
            e2[fi] = 0;
            out.insert_term(e2, c.clone());
        }
        out.normalize_scales();
        out
    }

    /// Univariate view: grid exponent of `v` mapped to the coefficient
    /// polynomial (with `v` removed). The coefficient polynomials keep the
    /// scales of `self`.
    pub(crate) fn coeffs_in(&self, v: Var) -> BTreeMap<i64, LaurentPoly<C>> {
        let i = v.index();
        let mut out: BTreeMap<i64, LaurentPoly<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut e2 = *e;
            e2[i] = 0;
            let entry = out.entry(e[i]).or_insert_with(|| {
                let mut p = Self::zero_poly();
                p.scales = self.scales;
                p.scales[i] = 1;
                p
            });
            entry.insert_term(e2, c.clone());
        }
        out.retain(|_, p| !p.is_zero_poly());
        out
    }

    /// Inverse of [`LaurentPoly::coeffs_in`]: rebuilds `Σ coeff_k · v^(k/scale)`
    /// from coefficient polynomials that do not use `v`.
    pub(crate) fn from_coeffs_in(
        v: Var,
        scale: u32,
        coeffs: &BTreeMap<i64, LaurentPoly<C>>,
    ) -> Self {
        let mut acc = Self::zero_poly();
        for (k, p) in coeffs {
            debug_assert!(!p.uses_var(v));
            let mut term = p.clone();
            term.set_scale(v, scale);
            let term = term.mul_var_grid(v, *k);
            acc = &acc + &term;
        }
        acc.normalize_scales();
        acc
    }

    /// Zero polynomial carrying the same grid scales as `self`.
    pub(crate) fn zero_like(&self) -> Self {
        LaurentPoly {
            scales: self.scales,
            terms: BTreeMap::new(),
        }
    }

    /// Overrides the grid scale of `v`. Only valid when `v` is unused (all
    /// grid exponents zero), so the represented polynomial is unchanged.
    pub(crate) fn set_scale(&mut self, v: Var, scale: u32) {
        debug_assert!(!self.uses_var(v) || self.scales[v.index()] == scale);
        self.scales[v.index()] = scale;
    }

    /// Iterates over raw grid exponent vectors.
    pub(crate) fn exponents(&self) -> impl Iterator<Item = &Exps> {
        self.terms.keys()
    }

    /// Lexicographically greatest monomial and its coefficient (global
    /// variable order, `u` most significant). `None` for the zero polynomial.
    ///
    /// Callers who need a scale-independent notion normalize scales first.
    pub(crate) fn lex_lead(&self) -> Option<(Exps, C)> {
        self.terms
            .iter()
            .next_back()
            .map(|(e, c)| (*e, c.clone()))
    }

    /// Per-variable minimum exponents (grid units), zero for unused
    /// variables; `None` for the zero polynomial.
    pub(crate) fn min_exps(&self) -> Option<Exps> {
        if self.terms.is_empty() {
            return None;
        }
        let mut m = [i64::MAX; NVARS];
        for e in self.terms.keys() {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        Some(m)
    }

    /// Divides all exponents down by the per-variable minima, returning the
    /// stripped polynomial and the monomial shift (grid units per variable).
    pub(crate) fn strip_monomial(&self) -> (Self, Exps) {
        match self.min_exps() {
            None => (self.clone(), [0; NVARS]),
            Some(m) => {
                if m.iter().all(|&k| k == 0) {
                    return (self.clone(), m);
                }
                let terms = self
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let mut e2 = *e;
                        for i in 0..NVARS {
                            e2[i] -= m[i];
                        }
                        (e2, c.clone())
                    })
                    .collect();
                (
                    LaurentPoly {
                        scales: self.scales,
                        terms,
                    },
                    m,
                )
            }
        }
    }

    /// Maps coefficients through `f`, dropping zeros.
    pub fn map_coeffs<D: Field>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        let mut out = LaurentPoly {
            scales: self.scales,
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            out.insert_term(*e, f(c));
        }
        out
    }

    /// Iterates over `(exponents-as-rationals, coefficient)` pairs.
    pub fn terms_rational(&self) -> Vec<(Vec<(Var, Rational)>, C)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let exps = Var::ALL
                    .iter()
                    .filter(|v| e[v.index()] != 0)
                    .map(|&v| {
                        (
                            v,
                            Rational::new(
                                e[v.index()].into(),
                                (self.scales[v.index()] as i64).into(),
                            ),
                        )
                    })
                    .collect();
                (exps, c.clone())
            })
            .collect()
    }

    /// The rational exponent of `v` in the sole term of a monomial, or the
    /// common exponent across all terms when they agree.
    pub fn uniform_exp(&self, v: Var) -> Option<Rational> {
        let i = v.index();
        let mut it = self.terms.keys();
        let first = it.next()?[i];
        if it.all(|e| e[i] == first) {
            Some(Rational::new(
                first.into(),
                (self.scales[i] as i64).into(),
            ))
        } else {
            None
        }
    }
}

impl<C: Field> PartialEq for LaurentPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        let (mut a, mut b) = Self::aligned(self, other);
        a.normalize_scales();
        b.normalize_scales();
        a.scales == b.scales && a.terms == b.terms
    }
}

impl<C: Field> Zero for LaurentPoly<C> {
    fn zero() -> Self {
        Self::zero_poly()
    }
    fn is_zero(&self) -> bool {
        self.is_zero_poly()
    }
}

impl<C: Field> One for LaurentPoly<C> {
    fn one() -> Self {
        Self::one_poly()
    }
    fn is_one(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }
}

impl<C: Field> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        let (mut a, b) = LaurentPoly::aligned(self, rhs);
        for (e, c) in b.terms {
            a.insert_term(e, c);
        }
        a
    }
}

impl<C: Field> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        let (mut a, b) = LaurentPoly::aligned(self, rhs);
        for (e, c) in b.terms {
            a.insert_term(e, -c);
        }
        a
    }
}

impl<C: Field> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut out = LaurentPoly {
            scales: a.scales,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let mut e = *ea;
                for i in 0..NVARS {
                    e[i] += eb[i];
                }
                out.insert_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Field> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            scales: self.scales,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl<C: Field> $trait for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: Self) -> LaurentPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Field> $trait<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Field> $trait<LaurentPoly<C>> for &LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<C: Field> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

/// Rendering. Terms are printed in descending lexicographic order; `u` and
/// `v` exponents that agree are merged into the shorthand `w`.
impl<C: Field> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = self.clone();
        p.normalize_scales();
        if p.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in p.terms.iter().rev() {
            let (sign_str, abs) = coefficient_parts(c);
            if first {
                if sign_str == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_str == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}", monomial_string(e, &p.scales, abs))?;
        }
        Ok(())
    }
}

/// Splits a coefficient into a sign marker and the absolute-value string.
/// Falls back to parenthesizing coefficients without a recognizable sign
/// (nonrational field elements).
fn coefficient_parts<C: Field>(c: &C) -> (&'static str, String) {
    if let Some(r) = c.as_rational() {
        if r.is_negative() {
            return ("-", (-r).to_string());
        }
        return ("+", r.to_string());
    }
    ("+", format!("({})", c))
}

/// Renders `|coeff| · monomial` for one term.
fn monomial_string(e: &Exps, scales: &[u32; NVARS], abs_coeff: String) -> String {
    let mut parts: Vec<String> = Vec::new();
    let ui = Var::U.index();
    let vi = Var::V.index();
    let mut skip = [false; NVARS];
    // Merge matching u/v exponents into w.
    if e[ui] != 0 && e[ui] == e[vi] && scales[ui] == scales[vi] {
        parts.push(var_power_string(
            'w',
            e[ui],
            scales[ui],
        ));
        skip[ui] = true;
        skip[vi] = true;
    }
    for v in Var::ALL {
        let i = v.index();
        if skip[i] || e[i] == 0 {
            continue;
        }
        parts.push(var_power_string(v.name(), e[i], scales[i]));
    }
    if parts.is_empty() {
        return abs_coeff;
    }
    let mono = parts.join("*");
    if abs_coeff == "1" {
        mono
    } else {
        format!("{}*{}", abs_coeff, mono)
    }
}

fn var_power_string(name: char, grid: i64, scale: u32) -> String {
    let e = Rational::new(grid.into(), (scale as i64).into());
    if e.is_one() {
        return name.to_string();
    }
    format!("{}^{}", name, exponent_string(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    type P = LaurentPoly<Rational>;

    #[test]
    fn grid_alignment_round_trips() {
        // w^(1/2) * w^(1/3) = w^(5/6)
        let a = P::w_pow(&rat(1, 2));
        let b = P::w_pow(&rat(1, 3));
        let c = &a * &b;
        assert_eq!(c, P::w_pow(&rat(5, 6)));
    }

    #[test]
    fn rescaling_is_lossless() {
        let p = P::var_pow(Var::S, &rat(3, 4)) + P::var_pow(Var::S, &rat(-1, 2));
        let mut q = p.rescale_to(&[1, 1, 8, 1, 1, 1]);
        q.normalize_scales();
        assert_eq!(p, q);
        assert_eq!(p.scale_of(Var::S), 4);
    }

    #[test]
    fn display_merges_diagonal_into_w() {
        let p = P::w_pow(&rat_int(2)) - P::one_poly();
        assert_eq!(p.to_string(), "w^2 - 1");
        let q = P::var(Var::U) + P::var(Var::V);
        assert_eq!(q.to_string(), "u + v");
    }

    #[test]
    fn display_fractional_and_negative_exponents() {
        let p = P::w_pow(&rat(1, 3)) - P::one_poly();
        assert_eq!(p.to_string(), "w^(1/3) - 1");
        let q = P::w_pow(&rat_int(-2)).scale(&rat(3, 2));
        assert_eq!(q.to_string(), "3/2*w^(-2)");
    }

    #[test]
    fn subst_one_merges_terms() {
        // u v + u at v = 1 -> 2u? no: u*v + u -> u + u = 2u.
        let p = &P::var(Var::U) * &P::var(Var::V) + P::var(Var::U);
        let q = p.subst_one(Var::V);
        assert_eq!(q, P::var(Var::U).scale(&rat_int(2)));
    }

    #[test]
    fn rename_merges_grids() {
        // u^(1/2) -> t^(1/2), then v·t^(1/2) stays mixed.
        let p = P::var_pow(Var::U, &rat(1, 2));
        let q = p.rename_var(Var::U, Var::T);
        assert_eq!(q, P::var_pow(Var::T, &rat(1, 2)));
        // u = v = t diagonal on w: w^(3/2) -> t^3.
        let w = P::w_pow(&rat(3, 2));
        let d = w.rename_var(Var::U, Var::T).rename_var(Var::V, Var::T);
        assert_eq!(d, P::var_pow(Var::T, &rat_int(3)));
    }

    #[test]
    fn strip_monomial_hits_floor_zero() {
        let p = P::w_pow(&rat_int(2)) + P::w_pow(&rat_int(1));
        let (s, m) = p.strip_monomial();
        assert_eq!(s, P::w_pow(&rat_int(1)) + P::one_poly());
        assert_eq!(m[Var::U.index()], 1);
        assert_eq!(m[Var::V.index()], 1);
    }
}
