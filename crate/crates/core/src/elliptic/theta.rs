//! The normalized Jacobi-type theta factor and its truncated `q`-expansions.
//!
//! We work with
//!
//! ```text
//! θ̂(u) = (ξ^{1/2} − ξ^{−1/2}) · Π_{n≥1} (1 − qⁿξ)(1 − qⁿξ^{−1}),   ξ = e^u,
//! ```
//!
//! i.e. the odd Jacobi theta function with its argument-independent prefactor
//! `q^{1/8}·Π(1−qⁿ)` dropped. Every formula in this module consumes balanced
//! ratios with equally many theta factors above and below the bar, so the
//! dropped prefactor cancels identically and the truncated products here are
//! exact coefficient-by-coefficient.
//!
//! Arguments are affine combinations `u = w·λ̂ + a + c·z + c_ε·εz − b·τ`:
//! `λ̂` is the formal equivariant parameter (variable `Z`), `a` is a rational
//! phase contributing `e^{2πi·a}` roots of unity, `z` is the elliptic-genus
//! parameter (`y = e^z`, variable `Y`), `εz` tracks coefficient perturbations
//! (`S = e^{εz}`), and a `τ`-shift by `b` moves `ξ`-powers along the `q`-grid
//! (`ξ ↦ ξ·q^{−b}` inside every factor). Arguments are taken as given — no
//! mod-1 normalization — so the exact oddness `θ̂(−u) = −θ̂(u)` holds at the
//! level of these expansions.

use crate::exact::{rat_int, Cyclotomic, Field, LaurentPoly, Rational, Var};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::series::{grid_index, Frac, Ser};
use super::EllipticError;

/// Coefficient fields able to represent the phases `e^{2πi·turns}` that a
/// theta argument requests.
pub(crate) trait Phase: Field {
    fn unit_phase(turns: &Rational) -> Result<Self, EllipticError>;
}

impl Phase for Rational {
    fn unit_phase(turns: &Rational) -> Result<Self, EllipticError> {
        let t = turns - turns.floor();
        if t.is_zero() {
            Ok(Rational::one())
        } else if t == Rational::new(1.into(), 2.into()) {
            Ok(-Rational::one())
        } else {
            Err(EllipticError::NonRationalPhase(turns.clone()))
        }
    }
}

impl Phase for Cyclotomic {
    fn unit_phase(turns: &Rational) -> Result<Self, EllipticError> {
        Ok(Cyclotomic::from_turns(turns))
    }
}

/// An affine theta argument `w·λ̂ + a + c·z + c_ε·εz − b·τ`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct ThetaArg {
    /// Coefficient of the equivariant parameter `λ̂` (variable `Z`).
    pub lam_weight: i64,
    /// Constant phase, in turns: contributes `e^{2πi·turns}`.
    pub turns: Rational,
    /// Coefficient `b` of `−τ`: shifts `ξ ↦ ξ·q^{−b}`.
    pub tau_shift: Rational,
    /// Coefficient of `z` (variable `Y`).
    pub z_mult: Rational,
    /// Coefficient of `εz` (variable `S`).
    pub eps_mult: Rational,
}

impl ThetaArg {
    /// `θ̂(c·z)`.
    pub fn z(c: Rational) -> Self {
        ThetaArg {
            lam_weight: 0,
            turns: Rational::zero(),
            tau_shift: Rational::zero(),
            z_mult: c,
            eps_mult: Rational::zero(),
        }
    }

    /// `θ̂(c·z + cε·εz)`.
    pub fn z_eps(c: Rational, c_eps: Rational) -> Self {
        ThetaArg {
            eps_mult: c_eps,
            ..ThetaArg::z(c)
        }
    }

    /// Full sector argument `w·λ̂ + a − b·τ + c·z + cε·εz`.
    pub fn sector(
        lam_weight: i64,
        turns: Rational,
        tau_shift: Rational,
        z_mult: Rational,
        eps_mult: Rational,
    ) -> Self {
        ThetaArg {
            lam_weight,
            turns,
            tau_shift,
            z_mult,
            eps_mult,
        }
    }

    /// The negated argument, for oddness checks.
    #[cfg(test)]
    pub fn neg(&self) -> Self {
        ThetaArg {
            lam_weight: -self.lam_weight,
            turns: -self.turns.clone(),
            tau_shift: -self.tau_shift.clone(),
            z_mult: -self.z_mult.clone(),
            eps_mult: -self.eps_mult.clone(),
        }
    }

    /// `ξ^r` as `(q-grid index, coefficient monomial)`.
    fn xi_pow<C: Phase>(
        &self,
        r: &Rational,
        scale: i64,
    ) -> Result<(i64, LaurentPoly<C>), EllipticError> {
        let phase = C::unit_phase(&(&self.turns * r))?;
        let mut exps: Vec<(Var, Rational)> = Vec::new();
        if self.lam_weight != 0 {
            exps.push((Var::Z, rat_int(self.lam_weight) * r));
        }
        if !self.z_mult.is_zero() {
            exps.push((Var::Y, &self.z_mult * r));
        }
        if !self.eps_mult.is_zero() {
            exps.push((Var::S, &self.eps_mult * r));
        }
        let grid = grid_index(&(-&self.tau_shift * r), scale);
        Ok((grid, LaurentPoly::term(phase, &exps)))
    }

    /// Number of binomial pairs needed so that everything dropped lies
    /// strictly above `ord_k` on the `1/scale` grid.
    fn binomial_count(&self, scale: i64, ord_k: i64) -> i64 {
        let bound = Rational::new(ord_k.into(), scale.into()) + self.tau_shift.abs();
        let n = bound.floor().to_integer().to_i64().unwrap_or(0) + 1;
        n.max(1)
    }
}

/// Truncated `q`-expansion of `θ̂(arg)`, exact through grid index `ord_k`
/// (possibly beyond, never claiming more than it knows).
pub(crate) fn theta_ser<C: Phase>(
    arg: &ThetaArg,
    scale: i64,
    ord_k: i64,
) -> Result<Ser<C>, EllipticError> {
    let half = Rational::new(1.into(), 2.into());
    let (gp, pp) = arg.xi_pow::<C>(&half, scale)?;
    let (gm, pm) = arg.xi_pow::<C>(&(-half.clone()), scale)?;
    let mut out = Ser::monomial(scale, gp, Frac::from_poly(pp), ord_k)
        .add(&Ser::monomial(scale, gm, Frac::from_poly(-pm), ord_k));
    let (_, xi) = arg.xi_pow::<C>(&Rational::one(), scale)?;
    let (_, xi_inv) = arg.xi_pow::<C>(&(-Rational::one()), scale)?;
    let b_grid = grid_index(&arg.tau_shift, scale);
    for n in 1..=arg.binomial_count(scale, ord_k) {
        // (1 − q^{n−b}·ξ) and (1 − q^{n+b}·ξ^{−1}); exact polynomials in q.
        let big = i64::MAX / 4;
        let up = Ser::one(scale, big).sub(&Ser::monomial(
            scale,
            n * scale - b_grid,
            Frac::from_poly(xi.clone()),
            big,
        ));
        let down = Ser::one(scale, big).sub(&Ser::monomial(
            scale,
            n * scale + b_grid,
            Frac::from_poly(xi_inv.clone()),
            big,
        ));
        out = out.mul(&up).mul(&down);
    }
    Ok(out)
}

/// A 2-jet (with one spare slot) of a series-valued function of a formal
/// nilpotent class variable `x`: slot `k` holds the Taylor coefficient of
/// `x^k`. Slot 3 exists so that `θ̂(x + …)/x` keeps three trustworthy slots;
/// after that shift the final slot is unreliable and is never read by any
/// degree-≤2 consumer.
#[derive(Debug, Clone)]
pub(crate) struct Jet<C: Field>(pub [Ser<C>; 4]);

impl<C: Field> Jet<C> {
    pub fn mul(&self, other: &Self) -> Self {
        let mut slots: Vec<Ser<C>> = Vec::with_capacity(4);
        for n in 0..4 {
            let mut acc: Option<Ser<C>> = None;
            for i in 0..=n {
                let p = self.0[i].mul(&other.0[n - i]);
                acc = Some(match acc {
                    None => p,
                    Some(a) => a.add(&p),
                });
            }
            slots.push(acc.unwrap());
        }
        Jet(slots.try_into().expect("four slots"))
    }

    pub fn inv(&self) -> Result<Self, EllipticError> {
        let r0 = self.0[0].inv()?;
        let mut slots: Vec<Ser<C>> = vec![r0.clone()];
        for n in 1..4 {
            let mut acc: Option<Ser<C>> = None;
            for i in 1..=n {
                let p = self.0[i].mul(&slots[n - i]);
                acc = Some(match acc {
                    None => p,
                    Some(a) => a.add(&p),
                });
            }
            slots.push(acc.unwrap().mul(&r0).neg());
        }
        Ok(Jet(slots.try_into().expect("four slots")))
    }

    /// Multiplies every slot by a scalar series.
    pub fn mul_ser(&self, s: &Ser<C>) -> Self {
        Jet([
            self.0[0].mul(s),
            self.0[1].mul(s),
            self.0[2].mul(s),
            self.0[3].mul(s),
        ])
    }

    /// `f(x)/x` for a jet with `f(0) = 0`: shifts slots down, leaving the
    /// last slot as unreliable filler.
    pub fn div_x(&self) -> Self {
        assert!(
            self.0[0].is_zero_through_ord(),
            "division by x requires a vanishing constant slot"
        );
        Jet([
            self.0[1].clone(),
            self.0[2].clone(),
            self.0[3].clone(),
            self.0[3].clone(),
        ])
    }

    pub fn slot(&self, k: usize) -> &Ser<C> {
        assert!(k < 3, "slot 3 is filler");
        &self.0[k]
    }
}

/// Truncated `q`-expansion of the 2-jet of `x ↦ θ̂(x + arg)`.
pub(crate) fn theta_jet<C: Phase>(
    arg: &ThetaArg,
    scale: i64,
    ord_k: i64,
) -> Result<Jet<C>, EllipticError> {
    let half = Rational::new(1.into(), 2.into());
    let (gp, pp) = arg.xi_pow::<C>(&half, scale)?;
    let (gm, pm) = arg.xi_pow::<C>(&(-half.clone()), scale)?;
    // Slot k of (ξ^{1/2}e^{x/2} − ξ^{−1/2}e^{−x/2}): (±1/2)^k/k! coefficients.
    let mut jet_slots: Vec<Ser<C>> = Vec::with_capacity(4);
    let mut kfact = Rational::one();
    let mut half_pow = Rational::one();
    for k in 0..4u32 {
        if k > 0 {
            kfact *= rat_int(k as i64);
            half_pow *= &half;
        }
        let cp = &half_pow / &kfact;
        let cm = if k % 2 == 0 { cp.clone() } else { -cp.clone() };
        let sp = Ser::monomial(scale, gp, Frac::from_poly(pp.scale(&cp)), ord_k);
        let sm = Ser::monomial(scale, gm, Frac::from_poly(pm.scale(&cm)), ord_k);
        jet_slots.push(sp.sub(&sm));
    }
    let mut out = Jet::<C>(jet_slots.try_into().expect("four slots"));

    let (_, xi) = arg.xi_pow::<C>(&Rational::one(), scale)?;
    let (_, xi_inv) = arg.xi_pow::<C>(&(-Rational::one()), scale)?;
    let b_grid = grid_index(&arg.tau_shift, scale);
    let big = i64::MAX / 4;
    for n in 1..=arg.binomial_count(scale, ord_k) {
        // Jet of (1 − q^{n−b}·ξ·e^x): slot k≥1 is −q^{n−b}ξ/k!.
        let up_g = n * scale - b_grid;
        let down_g = n * scale + b_grid;
        let mut up_slots: Vec<Ser<C>> = Vec::with_capacity(4);
        let mut down_slots: Vec<Ser<C>> = Vec::with_capacity(4);
        let mut kfact = Rational::one();
        for k in 0..4u32 {
            if k > 0 {
                kfact *= rat_int(k as i64);
            }
            let inv_kfact = Rational::one() / &kfact;
            let sign = if k % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let mut up =
                Ser::monomial(scale, up_g, Frac::from_poly(xi.scale(&-inv_kfact.clone())), big);
            let mut down = Ser::monomial(
                scale,
                down_g,
                Frac::from_poly(xi_inv.scale(&-(inv_kfact * sign))),
                big,
            );
            if k == 0 {
                up = Ser::one(scale, big).add(&up);
                down = Ser::one(scale, big).add(&down);
            }
            up_slots.push(up);
            down_slots.push(down);
        }
        let up_jet = Jet::<C>(up_slots.try_into().expect("four slots"));
        let down_jet = Jet::<C>(down_slots.try_into().expect("four slots"));
        out = out.mul(&up_jet).mul(&down_jet);
    }
    Ok(out)
}
