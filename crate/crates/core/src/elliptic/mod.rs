//! Elliptic genera of compact toric pairs as exact, truncated `q`-series.
//!
//! Everything here is a `q`-expansion with canonical-fraction coefficients
//! in `y^{1/2}` (variable `Y`, `y = e^z`) and, transiently, the equivariant
//! character variable `Z`: the normalized theta factor ([`theta_q`]),
//! boundary divisor factors as nilpotent class jets ([`divisor_factor`]),
//! the closed genus formula for admissible pairs ([`ell_smooth_pair`]) with
//! its perturbation-limit twin ([`ell_smooth_pair_perturbed`]), the
//! fixed-point localization of the equivariant orbifold genus
//! ([`ell_toric_equivariant`]), and the rigidity vanishing test for log
//! Calabi–Yau pairs ([`rigidity_check`]).
//!
//! Two χ_y-level conventions coexist and are both exposed. The genus
//! functions return the *signed* convention, whose `q⁰` coefficient is
//! `y^{−n/2}·χ_y` with the Hirzebruch χ_y (alternating in the antiholomorphic
//! degree; its `y = 1` value is the signature). The E-function modules
//! specialize to the *plain* convention (all Hodge numbers counted
//! positively); on surfaces the two are related by the exact involution
//! `F ↦ −F(−y)` applied per `q`-coefficient. The raw theta builders
//! ([`theta_q`], [`divisor_factor`]) are convention-free and untwisted. The
//! helpers [`q0_chi_y`], [`q0_to_plain_chi_y`], [`q0_signed_chi_y_poly`],
//! and [`q0_signature`] apply the mappings exactly.

mod equivariant;
mod genus;
mod series;
mod theta;

#[cfg(test)]
mod tests;

pub use equivariant::{ell_toric_equivariant, rigidity_check, RigidityReport, TorusSubgroup};
pub use genus::{divisor_factor, ell_smooth_pair, ell_smooth_pair_perturbed, theta_q};

use crate::exact::{rat_int, EExpr, ExactError, LaurentPoly, RatExpr, Rational, Var};
use crate::stringy::StringyError;
use crate::toric::ToricError;
use num_traits::{One, Zero};

/// Errors of the elliptic-genus layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EllipticError {
    #[error("a boundary coefficient of -1 admits no finite divisor factor")]
    MinusOneCoefficient,
    #[error("pair is not admissible: {0}")]
    NotAdmissible(String),
    #[error("pair carries no log Calabi-Yau certificate")]
    NotCalabiYau,
    #[error("phase of {0} turns is not representable over the rationals")]
    NonRationalPhase(Rational),
    #[error("equivariant sum left a root of unity in a q-coefficient: {0}")]
    IrrationalResult(String),
    #[error("q-coefficient retains the equivariant parameter: {0}")]
    ZDependence(String),
    #[error("series is exact only through q^({have}) but q^({need}) was requested")]
    TruncationExhausted { have: Rational, need: Rational },
    #[error("theta series is degenerate: {0}")]
    DegenerateTheta(String),
    #[error("the signed convention is undefined for fractional y-exponents in {0}")]
    ConventionUndefined(String),
    #[error("the group presentation is not abelian")]
    NonAbelianGroup,
    #[error("invalid fan: {0}")]
    InvalidFan(#[from] ToricError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Stringy(#[from] StringyError),
}

/// An exact truncated `q`-expansion: finitely many nonzero coefficients on
/// a rational exponent grid, each a canonical fraction, valid through
/// `q^order`. Equality compares the nonzero entries only (two series that
/// agree coefficientwise are equal even if computed to different orders).
#[derive(Debug, Clone)]
pub struct QSeries {
    order: u32,
    entries: Vec<(Rational, EExpr)>,
}

impl QSeries {
    pub(crate) fn from_entries(order: u32, mut entries: Vec<(Rational, EExpr)>) -> Self {
        entries.retain(|(_, c)| !c.is_zero_expr());
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        for w in entries.windows(2) {
            assert!(w[0].0 < w[1].0, "duplicate q-exponent {}", w[0].0);
        }
        QSeries { order, entries }
    }

    /// The zero expansion, valid through `q^order`.
    pub fn zero(order: u32) -> Self {
        QSeries {
            order,
            entries: Vec::new(),
        }
    }

    /// The order through which the expansion is exact.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Nonzero `(exponent, coefficient)` entries in increasing exponent
    /// order.
    pub fn entries(&self) -> &[(Rational, EExpr)] {
        &self.entries
    }

    /// The coefficient of `q^e` (zero if absent).
    pub fn coefficient(&self, e: &Rational) -> EExpr {
        self.entries
            .iter()
            .find(|(k, _)| k == e)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(EExpr::zero_expr)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficientwise sum, valid through the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let bound = rat_int(order as i64);
        let mut merged: Vec<(Rational, EExpr)> = Vec::new();
        for (k, c) in self.entries.iter().chain(other.entries.iter()) {
            if *k > bound {
                continue;
            }
            match merged.iter_mut().find(|(e, _)| e == k) {
                Some((_, acc)) => *acc = &*acc + c,
                None => merged.push((k.clone(), c.clone())),
            }
        }
        QSeries::from_entries(order, merged)
    }

    /// Coefficientwise rational multiple.
    pub fn scale(&self, r: &Rational) -> Self {
        QSeries::from_entries(
            self.order,
            self.entries
                .iter()
                .map(|(k, c)| (k.clone(), c.scale(r)))
                .collect(),
        )
    }

    /// Applies the plain ↔ signed convention involution to every
    /// coefficient.
    pub(crate) fn into_signed(self) -> Result<Self, EllipticError> {
        let entries = self
            .entries
            .into_iter()
            .map(|(k, c)| Ok((k, convention_twist(&c)?)))
            .collect::<Result<Vec<_>, EllipticError>>()?;
        Ok(QSeries::from_entries(self.order, entries))
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl std::fmt::Display for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0 + O(q^{})", self.order as i64 + 1);
        }
        for (i, (k, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k.is_zero() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*q^({k})")?;
            }
        }
        write!(f, " + O(q^{})", self.order as i64 + 1)
    }
}

/// The 2-jet of a series-valued function of one nilpotent curve-class
/// symbol `d`: `slots[0] + slots[1]·d + slots[2]·d²`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassJet {
    pub slots: [QSeries; 3],
}

impl ClassJet {
    /// Whether the jet is the constant function 1.
    pub fn is_one(&self) -> bool {
        self.slots[0].entries() == [(Rational::zero(), EExpr::one_expr())]
            && self.slots[1].is_zero()
            && self.slots[2].is_zero()
    }
}

/// The `q⁰` coefficient of an expansion: for a genus of an `n`-fold this is
/// `y^{−n/2}·χ_y` in the signed convention.
pub fn q0_chi_y(s: &QSeries) -> EExpr {
    s.coefficient(&Rational::zero())
}

/// Substitutes `y ↦ r` into a fraction with integer `y`-exponents.
fn eval_y(e: &EExpr, r: &Rational) -> Result<Rational, EllipticError> {
    fn eval_poly(p: &LaurentPoly<Rational>, r: &Rational) -> Result<Rational, EllipticError> {
        let mut acc = Rational::zero();
        for (exps, c) in p.terms_rational() {
            let mut term = c;
            for (v, e) in exps {
                if v != Var::Y {
                    return Err(EllipticError::Internal(format!(
                        "expected a function of y alone, found {v:?}"
                    )));
                }
                if !e.is_integer() {
                    return Err(EllipticError::Internal(format!(
                        "y-exponent {e} is not an integer"
                    )));
                }
                use num_traits::ToPrimitive;
                let n = e.numer().to_i64().expect("exponent fits i64");
                let mut pow = Rational::one();
                let base = if n >= 0 { r.clone() } else { Rational::one() / r };
                for _ in 0..n.unsigned_abs() {
                    pow *= &base;
                }
                term *= pow;
            }
            acc += term;
        }
        Ok(acc)
    }
    let num = eval_poly(e.num(), r)?;
    let den = eval_poly(e.den(), r)?;
    if den.is_zero() {
        return Err(EllipticError::Internal(
            "denominator vanishes at the requested y".to_string(),
        ));
    }
    Ok(num / den)
}

/// Substitutes `y ↦ −y` into a fraction with integer `y`-exponents.
fn negate_y(e: &EExpr) -> Result<EExpr, EllipticError> {
    fn flip(p: &LaurentPoly<Rational>) -> Result<LaurentPoly<Rational>, EllipticError> {
        let mut out = LaurentPoly::zero_poly();
        for (exps, c) in p.terms_rational() {
            let mut sign = Rational::one();
            for (v, e) in &exps {
                if *v != Var::Y {
                    return Err(EllipticError::Internal(format!(
                        "expected a function of y alone, found {v:?}"
                    )));
                }
                if !e.is_integer() {
                    return Err(EllipticError::ConventionUndefined(format!(
                        "y-exponent {e}"
                    )));
                }
                if num_integer::Integer::is_odd(e.numer()) {
                    sign = -sign;
                }
            }
            out = &out + &LaurentPoly::term(c * sign, &exps);
        }
        Ok(out)
    }
    Ok(RatExpr::new(flip(e.num())?, flip(e.den())?)?)
}

/// The exact involution `F ↦ −F(−y)` translating a surface genus
/// coefficient between the plain and the signed convention (the square of
/// the map is the identity, so one function serves both directions).
pub(crate) fn convention_twist(e: &EExpr) -> Result<EExpr, EllipticError> {
    Ok(negate_y(e)?.scale(&(-Rational::one())))
}

/// Converts a surface genus `q⁰` coefficient (signed convention) to the
/// plain χ_y polynomial of the E-function modules: multiply by `y` (killing
/// the `y^{−n/2}` normalization at `n = 2`) and substitute `y ↦ −y`.
pub fn q0_to_plain_chi_y(c0: &EExpr) -> Result<EExpr, EllipticError> {
    let lifted = c0 * &RatExpr::from_poly(LaurentPoly::var(Var::Y));
    negate_y(&lifted)
}

/// The Hirzebruch χ_y polynomial of a surface genus `q⁰` coefficient in the
/// signed convention: the normalization `y^{n/2}·c₀` at `n = 2`.
pub fn q0_signed_chi_y_poly(c0: &EExpr) -> EExpr {
    c0 * &RatExpr::from_poly(LaurentPoly::var(Var::Y))
}

/// The signature of the underlying surface: the Hirzebruch χ_y polynomial
/// evaluated at `y = 1` (the classical σ = χ₁ identity; this is the exact
/// form of specializing the genus at the 2-torsion point `z = 1/2`).
pub fn q0_signature(c0: &EExpr) -> Result<Rational, EllipticError> {
    eval_y(&q0_signed_chi_y_poly(c0), &Rational::one())
}
