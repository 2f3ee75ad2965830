//! Elliptic genus of a compact smooth toric surface with boundary
//! coefficients: the closed pair formula with special factors for
//! coefficient −1 curves, and its perturbed variant whose coefficient-wise
//! `ε → 0` limit reproduces the closed formula.
//!
//! The integrand lives in the 2-step nilpotent ring spanned by `1`, the
//! boundary curve classes, and the point class. Per tangent Chern root `x`
//! the genus contributes `x·θ̂(x − z)/θ̂(x)`; each boundary curve `D` with
//! coefficient `a ≠ −1` contributes
//!
//! ```text
//! θ̂(D − (a+1)z)·θ̂(z) / (θ̂(D − z)·θ̂((a+1)z)),
//! ```
//!
//! which is identically 1 at `a = 0`; each coefficient −1 curve contributes
//! `θ̂(D + 2z)·θ̂(z)/(θ̂(D + z)·θ̂(2z))` plus the genus-level correction term
//! `m·θ̂(a₁z)·θ̂((a₁+2)z)/θ̂((a₁+1)z)²`, where `−m` is the curve's
//! self-intersection and `a₁` is either neighbor coefficient (the two
//! choices agree by theta oddness, since they sum to −2).

use crate::exact::{rat_int, EExpr, Rational, Var};
use crate::toric::ToricPair;
use num_traits::{One, Zero};

use super::series::{Frac, Ser};
use super::theta::{theta_jet, theta_ser, Jet, ThetaArg};
use super::{ClassJet, EllipticError, QSeries};

/// Intersection pairing of the boundary curves of a complete smooth toric
/// surface: `D_i²` on the diagonal, `1` for cyclically adjacent rays, `0`
/// otherwise.
pub(crate) struct SurfaceData {
    selfs: Vec<i64>,
    len: usize,
}

impl SurfaceData {
    pub fn of(pair: &ToricPair) -> Self {
        SurfaceData {
            selfs: pair.fan().self_intersections(),
            len: pair.fan().len(),
        }
    }

    pub fn inter(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.selfs[i]
        } else if (i + 1) % self.len == j || (j + 1) % self.len == i {
            1
        } else {
            0
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }
}

/// A degree-≤2 class expression with `q`-series coefficients: scalar part,
/// boundary-curve coordinates, and the (already integrated) point-class
/// coefficient.
pub(crate) struct ClassSeries<'a, C: crate::exact::Field> {
    data: &'a SurfaceData,
    c0: Ser<C>,
    c1: Vec<Ser<C>>,
    c2: Ser<C>,
}

impl<'a, C: crate::exact::Field> ClassSeries<'a, C> {
    /// Embeds the 2-jet of a function of the single curve class `D_i`.
    pub fn from_jet(data: &'a SurfaceData, jet: &Jet<C>, i: usize) -> Self {
        let scale = jet.slot(0).scale;
        let mut c1 = vec![Ser::zero(scale, i64::MAX / 4); data.len()];
        c1[i] = jet.slot(1).clone();
        let c2 = jet
            .slot(2)
            .scale_rational(&rat_int(data.inter(i, i)));
        ClassSeries {
            data,
            c0: jet.slot(0).clone(),
            c1,
            c2,
        }
    }

    /// The tangent-bundle contribution `Π_j f(x_j)` over the two Chern
    /// roots, expressed through `c₁(TX) = Σ_i D_i`, `∫c₁² = 12 − ℓ`,
    /// `∫c₂ = ℓ`.
    pub fn tangent(data: &'a SurfaceData, f: &Jet<C>) -> Self {
        let ell = data.len() as i64;
        let f0 = f.slot(0);
        let f1 = f.slot(1);
        let f2 = f.slot(2);
        let c0 = f0.mul(f0);
        let lin = f0.mul(f1);
        let c1 = vec![lin; data.len()];
        // ∫ f0·f2·(x₁² + x₂²) + f1²·x₁x₂ = f0f2(12 − 3ℓ) + f1²·ℓ.
        let c2 = f0
            .mul(f2)
            .scale_rational(&rat_int(12 - 3 * ell))
            .add(&f1.mul(f1).scale_rational(&rat_int(ell)));
        ClassSeries { data, c0, c1, c2 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(std::ptr::eq(self.data, other.data));
        let n = self.data.len();
        let c0 = self.c0.mul(&other.c0);
        let c1: Vec<Ser<C>> = (0..n)
            .map(|i| {
                self.c0
                    .mul(&other.c1[i])
                    .add(&other.c0.mul(&self.c1[i]))
            })
            .collect();
        let mut c2 = self
            .c0
            .mul(&other.c2)
            .add(&other.c0.mul(&self.c2));
        for i in 0..n {
            if self.c1[i].is_zero_through_ord() {
                continue;
            }
            for j in 0..n {
                let w = self.data.inter(i, j);
                if w == 0 || other.c1[j].is_zero_through_ord() {
                    continue;
                }
                c2 = c2.add(&self.c1[i].mul(&other.c1[j]).scale_rational(&rat_int(w)));
            }
        }
        ClassSeries {
            data: self.data,
            c0,
            c1,
            c2,
        }
    }

    /// Integration over the surface: the point-class coefficient.
    pub fn integrate(self) -> Ser<C> {
        self.c2
    }
}

/// Builds the 2-jet of the boundary factor for coefficient `a`, with an
/// optional perturbation weight entering as `εz` (variable `S`):
/// numerator `θ̂(D − (a+1)z − bεz)·θ̂(z)`, denominator
/// `θ̂(D − z)·θ̂((a+1)z + bεz)`.
fn boundary_jet(
    a: &Rational,
    b: &Rational,
    scale: i64,
    ord_k: i64,
) -> Result<Jet<Rational>, EllipticError> {
    let big_a = a + Rational::one();
    if big_a.is_zero() && b.is_zero() {
        return Err(EllipticError::MinusOneCoefficient);
    }
    let num = theta_jet::<Rational>(&ThetaArg::z_eps(-big_a.clone(), -b.clone()), scale, ord_k)?;
    let den = theta_jet::<Rational>(&ThetaArg::z(-Rational::one()), scale, ord_k)?;
    let z_ser = theta_ser::<Rational>(&ThetaArg::z(Rational::one()), scale, ord_k)?;
    let a_ser = theta_ser::<Rational>(&ThetaArg::z_eps(big_a, b.clone()), scale, ord_k)?;
    Ok(num
        .mul(&den.inv()?)
        .mul_ser(&z_ser.mul(&a_ser.inv()?)))
}

/// The 2-jet of the special factor attached to a coefficient −1 curve:
/// `θ̂(D + 2z)·θ̂(z)/(θ̂(D + z)·θ̂(2z))`.
fn minus_one_jet(scale: i64, ord_k: i64) -> Result<Jet<Rational>, EllipticError> {
    let num = theta_jet::<Rational>(&ThetaArg::z(rat_int(2)), scale, ord_k)?;
    let den = theta_jet::<Rational>(&ThetaArg::z(Rational::one()), scale, ord_k)?;
    let z_ser = theta_ser::<Rational>(&ThetaArg::z(Rational::one()), scale, ord_k)?;
    let two_z = theta_ser::<Rational>(&ThetaArg::z(rat_int(2)), scale, ord_k)?;
    Ok(num
        .mul(&den.inv()?)
        .mul_ser(&z_ser.mul(&two_z.inv()?)))
}

/// The per-Chern-root tangent jet `x·θ̂(x − z)/θ̂(x)`.
fn tangent_jet(scale: i64, ord_k: i64) -> Result<Jet<Rational>, EllipticError> {
    let shifted = theta_jet::<Rational>(&ThetaArg::z(-Rational::one()), scale, ord_k)?;
    let plain = theta_jet::<Rational>(&ThetaArg::z(Rational::zero()), scale, ord_k)?;
    let h = plain.div_x();
    Ok(shifted.mul(&h.inv()?))
}

/// Validated positions of the coefficient −1 curves of an admissible pair:
/// `(ray index, m = −self-intersection, neighbor coefficient a₁)`.
fn minus_one_curves(pair: &ToricPair) -> Result<Vec<(usize, i64, Rational)>, EllipticError> {
    let coeffs = pair.coeffs();
    let selfs = pair.fan().self_intersections();
    let n = coeffs.len();
    let minus_one = -Rational::one();
    let mut out = Vec::new();
    for i in 0..n {
        if coeffs[i] != minus_one {
            continue;
        }
        let prev = (i + n - 1) % n;
        let next = (i + 1) % n;
        if coeffs[prev] == minus_one || coeffs[next] == minus_one {
            return Err(EllipticError::NotAdmissible(format!(
                "boundary curves {prev} and {i} both have coefficient -1"
            )));
        }
        if &coeffs[prev] + &coeffs[next] != rat_int(-2) {
            return Err(EllipticError::NotAdmissible(format!(
                "neighbors of the coefficient -1 curve {i} have coefficients summing to {} instead of -2",
                &coeffs[prev] + &coeffs[next]
            )));
        }
        let m = -selfs[i];
        if m < 1 {
            return Err(EllipticError::NotAdmissible(format!(
                "coefficient -1 curve {i} has self-intersection {}, expected negative",
                selfs[i]
            )));
        }
        out.push((i, m, coeffs[prev].clone()));
    }
    Ok(out)
}

/// Elliptic genus of an admissible compact toric pair, as an exact
/// `q`-expansion through `q^order` in the signed convention (the `q⁰`
/// coefficient is `y^{−1}·χ_y` with the Hirzebruch χ_y).
pub fn ell_smooth_pair(pair: &ToricPair, order: u32) -> Result<QSeries, EllipticError> {
    let scale: i64 = 1;
    let ord_k = (order as i64 + 2) * scale;
    let data = SurfaceData::of(pair);
    let special = minus_one_curves(pair)?;
    let special_rays: Vec<usize> = special.iter().map(|(i, _, _)| *i).collect();
    let coeffs = pair.coeffs();

    let mut total = ClassSeries::tangent(&data, &tangent_jet(scale, ord_k)?);
    for (i, a) in coeffs.iter().enumerate() {
        let jet = if special_rays.contains(&i) {
            minus_one_jet(scale, ord_k)?
        } else {
            boundary_jet(a, &Rational::zero(), scale, ord_k)?
        };
        total = total.mul(&ClassSeries::from_jet(&data, &jet, i));
    }
    let mut result = total.integrate();

    for (_, m, a1) in &special {
        let n1 = theta_ser::<Rational>(&ThetaArg::z(a1.clone()), scale, ord_k)?;
        let n2 = theta_ser::<Rational>(&ThetaArg::z(a1 + rat_int(2)), scale, ord_k)?;
        let d = theta_ser::<Rational>(&ThetaArg::z(a1 + Rational::one()), scale, ord_k)?;
        let d_inv = d.inv()?;
        let addend = n1
            .mul(&n2)
            .mul(&d_inv.mul(&d_inv))
            .scale_rational(&rat_int(*m));
        result = result.add(&addend);
    }

    result.check_order(order)?;
    QSeries::from_ser_exact(&result, order)?.into_signed()
}

/// Elliptic genus of a compact toric pair with every boundary coefficient
/// `a_i` perturbed to `a_i + ε·b_i`, followed by the exact per-coefficient
/// `ε → 0` limit. For a null perturbation (zero degree on every boundary
/// curve, nonzero weight on every coefficient −1 curve) this equals
/// [`ell_smooth_pair`].
pub fn ell_smooth_pair_perturbed(
    pair: &ToricPair,
    weights: &[Rational],
    order: u32,
) -> Result<QSeries, EllipticError> {
    let coeffs = pair.coeffs();
    if weights.len() != coeffs.len() {
        return Err(EllipticError::NotAdmissible(format!(
            "{} perturbation weights for {} boundary curves",
            weights.len(),
            coeffs.len()
        )));
    }
    let minus_one = -Rational::one();
    for (i, (a, b)) in coeffs.iter().zip(weights).enumerate() {
        if *a == minus_one && b.is_zero() {
            return Err(EllipticError::NotAdmissible(format!(
                "coefficient -1 curve {i} needs a nonzero perturbation weight"
            )));
        }
    }
    let scale: i64 = 1;
    let ord_k = (order as i64 + 2) * scale;
    let data = SurfaceData::of(pair);

    let mut total = ClassSeries::tangent(&data, &tangent_jet(scale, ord_k)?);
    for (i, a) in coeffs.iter().enumerate() {
        let jet = boundary_jet(a, &weights[i], scale, ord_k)?;
        total = total.mul(&ClassSeries::from_jet(&data, &jet, i));
    }
    let result = total.integrate();
    result.check_order(order)?;
    QSeries::from_ser_limit(&result, order)?.into_signed()
}

/// Exact truncated `q`-expansion of `θ̂(α·z + m·λ̂)`, where `λ̂` is the
/// formal equivariant character variable.
pub fn theta_q(alpha: &Rational, lam_weight: i64, order: u32) -> Result<QSeries, EllipticError> {
    let arg = ThetaArg::sector(
        lam_weight,
        Rational::zero(),
        Rational::zero(),
        alpha.clone(),
        Rational::zero(),
    );
    let ser = theta_ser::<Rational>(&arg, 1, order as i64)?;
    QSeries::from_ser_exact(&ser, order)
}

/// The boundary factor of a curve with coefficient `a`, as the 2-jet of a
/// function of the (nilpotent) curve class: slot `k` is the `q`-expansion of
/// the `k`-th Taylor coefficient. Identically `[1, 0, 0]` when `a = 0`.
pub fn divisor_factor(a: &Rational, order: u32) -> Result<ClassJet, EllipticError> {
    if a == &(-Rational::one()) {
        return Err(EllipticError::MinusOneCoefficient);
    }
    let scale: i64 = 1;
    let ord_k = (order as i64 + 2) * scale;
    let jet = boundary_jet(a, &Rational::zero(), scale, ord_k)?;
    Ok(ClassJet {
        slots: [
            QSeries::from_ser_exact(jet.slot(0), order)?,
            QSeries::from_ser_exact(jet.slot(1), order)?,
            QSeries::from_ser_exact(jet.slot(2), order)?,
        ],
    })
}

/// Shared finisher: converts a [`Ser<Rational>`] into a public [`QSeries`]
/// by canonicalizing each stored fraction.
impl QSeries {
    pub(crate) fn from_ser_exact(ser: &Ser<Rational>, order: u32) -> Result<Self, EllipticError> {
        Self::from_ser_with(ser, order, |f| Ok(f.to_ratexpr()?))
    }

    pub(crate) fn from_ser_limit(ser: &Ser<Rational>, order: u32) -> Result<Self, EllipticError> {
        Self::from_ser_with(ser, order, |f| Ok(f.limit_s()?))
    }

    fn from_ser_with(
        ser: &Ser<Rational>,
        order: u32,
        finish: impl Fn(&Frac<Rational>) -> Result<EExpr, EllipticError>,
    ) -> Result<Self, EllipticError> {
        let mut entries = Vec::new();
        for (k, frac) in ser.entries() {
            if k > order as i64 * ser.scale {
                break;
            }
            let coeff = finish(frac)?;
            if coeff.is_zero_expr() {
                continue;
            }
            for v in [Var::U, Var::V, Var::S, Var::T] {
                if coeff.uses_var(v) {
                    return Err(EllipticError::Internal(format!(
                        "q-coefficient {k}/{} depends on auxiliary variable {v:?}",
                        ser.scale
                    )));
                }
            }
            entries.push((Rational::new(k.into(), ser.scale.into()), coeff));
        }
        Ok(QSeries::from_entries(order, entries))
    }
}
