//! Orbifold E-functions of group actions on surface germs and pairs,
//! and the McKay-style comparison against the stringy E-function of the
//! quotient.
//!
//! An [`OrbifoldDatum`] couples a decorated dual graph (the *cover*: the
//! surface carrying the action, with its coefficients) with sector data
//! describing the fixed loci of the non-trivial group elements:
//!
//! * a [`SectorRecord::FixedCurve`] is a curve of the graph fixed
//!   pointwise; it contributes
//!   `w^F · (E(c°)·gf(a_c) + Σ_owned nodes gf·gf)`,
//!   where the fermionic shift `F` is the normal-bundle weight, each
//!   direction lying along a divisor `D_k` of the graph being twisted to
//!   `(1 + a_k)·weight`;
//! * a [`SectorRecord::FixedPoint`] is an isolated fixed point; it
//!   contributes `w^F · Π gf(a_c)` over the configuration curves through
//!   it, with `F` summing its two tangent weights, again `(1 + a)`-twisted
//!   when the direction runs along a curve of the graph;
//! * a [`RotationRecord`] covers the remaining case: a coefficient −1
//!   curve mapped to itself with its two nodes fixed. Both node
//!   contributions have poles; their sum is evaluated by the same
//!   `S`-perturbation limit as the stringy lumps (see
//!   [`h_rotation_limit`]), and has the closed form
//!   [`h_rotation_closed`].
//!
//! The identity class (`class_id` `"1"`) is implicit in the graph itself:
//! its contribution is the stringy E-function. The only explicit identity
//! records permitted are [`SectorRecord::FixedPoint`]s with zero weights,
//! describing the central fiber of a germ whose graph has no exceptional
//! curves (a smooth cover); in global mode these points already lie in
//! the ambient strata and are skipped.
//!
//! [`mckay_verify`] checks the correspondence: the orbifold E-function of
//! the cover equals the stringy E-function of the quotient.

use crate::dualgraph::{Curve, GraphError, ResolutionGraph};
use crate::exact::{
    geometric_factor, limit_at_one_quotient, rat, rat_int, EExpr, ExactError, LaurentPoly, RatExpr,
    Rational, Var,
};
use crate::stringy::{e_stringy, e_stringy_with, Perturbation, StringyError, StringyMode};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// The reserved identity class id.
pub const IDENTITY_CLASS: &str = "1";

/// Fixed-locus component of one group-element class.
#[derive(Clone, PartialEq, Debug)]
pub enum SectorRecord {
    /// A pointwise-fixed curve of the graph.
    FixedCurve {
        class_id: String,
        curve: String,
        /// Weight of the action on the normal line, for the part of the
        /// normal direction not running along a divisor of the graph.
        normal_weight: Rational,
        /// Weights whose directions run along graph divisors; each is
        /// twisted by `(1 + a_divisor)` in the fermionic shift.
        divisor_weights: Vec<(String, Rational)>,
    },
    /// An isolated fixed point on 0, 1, or 2 configuration curves.
    FixedPoint {
        class_id: String,
        /// Configuration curves through the point (at most two).
        curves: Vec<String>,
        /// The two tangent weights; the first `curves.len()` of them pair
        /// with `curves` in order and are `(1 + a)`-twisted, the rest
        /// count plainly.
        weights: Vec<Rational>,
    },
}

impl SectorRecord {
    pub fn class_id(&self) -> &str {
        match self {
            SectorRecord::FixedCurve { class_id, .. } => class_id,
            SectorRecord::FixedPoint { class_id, .. } => class_id,
        }
    }
}

/// A coefficient −1 curve mapped to itself by a class, rotating with
/// weight `alpha` at the node shared with the earlier-listed neighbor
/// (and `1 − alpha` at the other node); `gamma1`, `gamma2` are the
/// class's weights along the curve's own normal direction at the two
/// nodes, twisted by `(1 + a_t)` in the shifts.
#[derive(Clone, PartialEq, Debug)]
pub struct RotationRecord {
    pub class_id: String,
    pub curve: String,
    pub alpha: Rational,
    pub gamma1: Rational,
    pub gamma2: Rational,
}

/// A cover with its sector data.
#[derive(Clone, PartialEq, Debug)]
pub struct OrbifoldDatum {
    pub graph: ResolutionGraph,
    pub sectors: Vec<SectorRecord>,
    pub rotations: Vec<RotationRecord>,
}

/// Errors of the orbifold calculus.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OrbifoldError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Stringy(#[from] StringyError),
    #[error("invalid sector data: {0}")]
    InvalidSector(String),
    #[error("cover and quotient modes must both be local or both be global")]
    ModeMismatch,
    #[error("orbifold E-function {orbifold} differs from stringy E-function {stringy}")]
    McKayMismatch { orbifold: String, stringy: String },
}

impl OrbifoldDatum {
    /// Structural validation of the sector data against the (solved)
    /// graph.
    pub fn validate(&self) -> Result<(), OrbifoldError> {
        let g = &self.graph;
        let minus_one = -Rational::one();
        let bad = |msg: String| Err(OrbifoldError::InvalidSector(msg));

        // (class, curve) sets to catch duplicates and rotation overlap.
        let mut fixed_curves: BTreeSet<(String, usize)> = BTreeSet::new();
        let mut rotated: BTreeSet<(String, usize)> = BTreeSet::new();

        for r in &self.rotations {
            if r.class_id == IDENTITY_CLASS {
                return bad("the identity class cannot rotate a curve".into());
            }
            if r.class_id.is_empty() {
                return bad("empty class id".into());
            }
            let t = g.index_of(&r.curve)?;
            if *g.coeff(t)? != minus_one {
                return bad(format!(
                    "rotation record on curve {:?} whose coefficient is not -1",
                    r.curve
                ));
            }
            let nbrs = g.neighbors(t);
            if nbrs.len() != 2 || nbrs[0] == nbrs[1] {
                return bad(format!(
                    "rotated curve {:?} must meet exactly two distinct neighbors",
                    r.curve
                ));
            }
            if !(r.alpha > Rational::zero() && r.alpha < Rational::one()) {
                return bad(format!(
                    "rotation weight on {:?} must lie strictly between 0 and 1",
                    r.curve
                ));
            }
            if !rotated.insert((r.class_id.clone(), t)) {
                return bad(format!(
                    "curve {:?} rotated twice in class {:?}",
                    r.curve, r.class_id
                ));
            }
        }

        for s in &self.sectors {
            if s.class_id().is_empty() {
                return bad("empty class id".into());
            }
            match s {
                SectorRecord::FixedCurve {
                    class_id,
                    curve,
                    normal_weight,
                    divisor_weights,
                } => {
                    if class_id == IDENTITY_CLASS {
                        return bad(
                            "identity fixed curves are implicit in the graph; \
                             only zero-weight fixed points may be listed"
                                .into(),
                        );
                    }
                    let c = g.index_of(curve)?;
                    if *g.coeff(c)? == minus_one {
                        return bad(format!(
                            "fixed curve {:?} has coefficient -1; describe it with a \
                             rotation record instead",
                            curve
                        ));
                    }
                    if normal_weight.is_negative() {
                        return bad(format!("negative normal weight on {:?}", curve));
                    }
                    for (div, _) in divisor_weights {
                        g.index_of(div)?;
                    }
                    if rotated.contains(&(class_id.clone(), c)) {
                        return bad(format!(
                            "curve {:?} both fixed and rotated in class {:?}",
                            curve, class_id
                        ));
                    }
                    if !fixed_curves.insert((class_id.clone(), c)) {
                        return bad(format!(
                            "curve {:?} fixed twice in class {:?}",
                            curve, class_id
                        ));
                    }
                }
                SectorRecord::FixedPoint {
                    class_id,
                    curves,
                    weights,
                } => {
                    if weights.len() != 2 {
                        return bad(format!(
                            "a fixed point carries exactly two tangent weights, got {}",
                            weights.len()
                        ));
                    }
                    if curves.len() > 2 {
                        return bad(
                            "at most two configuration curves pass through a point".into(),
                        );
                    }
                    let mut seen = BTreeSet::new();
                    for c in curves {
                        let i = g.index_of(c)?;
                        if !seen.insert(i) {
                            return bad(format!("curve {:?} listed twice at a point", c));
                        }
                        if *g.coeff(i)? == minus_one {
                            return bad(format!(
                                "fixed point on coefficient -1 curve {:?}",
                                c
                            ));
                        }
                    }
                    if class_id == IDENTITY_CLASS
                        && weights.iter().any(|x| !x.is_zero())
                    {
                        return bad("identity fixed points must have zero weights".into());
                    }
                }
            }
        }

        // Two pointwise-fixed curves of one class cannot meet: the node
        // would be fixed in both tangent directions.
        for &(i, j) in g.node_indices() {
            let classes_i: BTreeSet<&String> = fixed_curves
                .iter()
                .filter(|(_, c)| *c == i)
                .map(|(cl, _)| cl)
                .collect();
            for (cl, c) in &fixed_curves {
                if *c == j && classes_i.contains(cl) {
                    return bad(format!(
                        "class {:?} fixes both ends of a node ({:?}, {:?})",
                        cl,
                        g.curves()[i].id,
                        g.curves()[j].id
                    ));
                }
            }
        }

        // Fixed curves own their nodes; a partner of coefficient −1 must
        // be rotated in the same class, anything else with −1 is a pole.
        for (cl, c) in &fixed_curves {
            for n in g.neighbors(*c) {
                if *g.coeff(n)? == minus_one && !rotated.contains(&(cl.clone(), n)) {
                    return bad(format!(
                        "node of fixed curve {:?} touches coefficient -1 curve {:?} \
                         which is not rotated in class {:?}",
                        g.curves()[*c].id,
                        g.curves()[n].id,
                        cl
                    ));
                }
            }
        }
        Ok(())
    }
}

/// `w^e` as an expression.
fn w_power(e: &Rational) -> EExpr {
    RatExpr::from_poly(LaurentPoly::w_pow(e))
}

/// Orbifold E-function. The identity class contributes the stringy
/// E-function of the graph in `mode` (plus any explicit zero-weight
/// identity fixed points, in local mode); every other record adds its
/// shifted fixed-locus strata. `pert` feeds both the identity lumps and
/// the rotation limits; `None` uses the default null perturbation.
pub fn e_orb(
    datum: &OrbifoldDatum,
    mode: &StringyMode,
    pert: Option<&Perturbation>,
) -> Result<EExpr, OrbifoldError> {
    datum.validate()?;
    let g = &datum.graph;
    let minus_one = -Rational::one();

    let mut total = match pert {
        Some(p) => e_stringy_with(g, mode, p)?,
        None => e_stringy(g, mode)?,
    };

    // Nodes touching a curve rotated in a given class belong to that
    // rotation's lump, not to an adjacent fixed curve of the class.
    let rotated: BTreeSet<(String, usize)> = datum
        .rotations
        .iter()
        .map(|r| Ok((r.class_id.clone(), g.index_of(&r.curve)?)))
        .collect::<Result<_, GraphError>>()?;

    for s in &datum.sectors {
        match s {
            SectorRecord::FixedPoint {
                class_id,
                curves,
                weights,
            } => {
                if class_id == IDENTITY_CLASS {
                    // Central-fiber points of a smooth cover: already part
                    // of the ambient strata in global mode.
                    if matches!(mode, StringyMode::Global(_)) {
                        continue;
                    }
                    let mut term = EExpr::one_expr();
                    for c in curves {
                        let i = g.index_of(c)?;
                        term = term * geometric_factor(g.coeff(i)?)?;
                    }
                    total = total + term;
                    continue;
                }
                let mut shift = Rational::zero();
                for (j, wgt) in weights.iter().enumerate() {
                    match curves.get(j) {
                        Some(c) => {
                            let i = g.index_of(c)?;
                            let twist = Rational::one() + g.coeff(i)?;
                            shift += wgt * twist;
                        }
                        None => shift += wgt.clone(),
                    }
                }
                let mut term = w_power(&shift);
                for c in curves {
                    let i = g.index_of(c)?;
                    term = term * geometric_factor(g.coeff(i)?)?;
                }
                total = total + term;
            }
            SectorRecord::FixedCurve {
                class_id,
                curve,
                normal_weight,
                divisor_weights,
            } => {
                let c = g.index_of(curve)?;
                let a_c = g.coeff(c)?.clone();
                let mut shift = normal_weight.clone();
                for (div, wgt) in divisor_weights {
                    let i = g.index_of(div)?;
                    let twist = Rational::one() + g.coeff(i)?;
                    shift += wgt * twist;
                }
                let gf_c = geometric_factor(&a_c)?;
                let mut bracket = open_part_expr(g, c) * gf_c.clone();
                for n in g.neighbors(c) {
                    if rotated.contains(&(class_id.clone(), n)) {
                        continue; // counted in the rotation's limit
                    }
                    let a_n = g.coeff(n)?;
                    if *a_n == minus_one {
                        // validate() only lets this through when rotated.
                        unreachable!("validated above");
                    }
                    bracket = bracket + gf_c.clone() * geometric_factor(a_n)?;
                }
                total = total + w_power(&shift) * bracket;
            }
        }
    }

    if !datum.rotations.is_empty() {
        let default_pert;
        let p = match pert {
            Some(p) => p,
            None => {
                default_pert = Perturbation::null_for(g)?;
                &default_pert
            }
        };
        for r in &datum.rotations {
            total = total + rotation_term(g, r, p)?;
        }
    }

    Ok(total)
}

/// E-polynomial of the open part of curve `i`.
fn open_part_expr(g: &ResolutionGraph, i: usize) -> EExpr {
    let genus = rat_int(g.curves()[i].genus as i64);
    let punctures = rat_int(g.node_count(i) as i64);
    RatExpr::from_poly(
        LaurentPoly::constant_rational(&(Rational::one() - punctures))
            - LaurentPoly::var(Var::U).scale(&genus)
            - LaurentPoly::var(Var::V).scale(&genus)
            + LaurentPoly::w_pow(&Rational::one()),
    )
}

/// The rotation contribution of one record, via the perturbed limit.
fn rotation_term(
    g: &ResolutionGraph,
    r: &RotationRecord,
    pert: &Perturbation,
) -> Result<EExpr, OrbifoldError> {
    let t = g.index_of(&r.curve)?;
    let nbrs = g.neighbors(t);
    let (n1, n2) = (nbrs[0], nbrs[1]);
    let m = -g.curves()[t].self_int;
    let a = Rational::one() + g.coeff(n1)?;
    let b = pert.values();
    Ok(h_rotation_limit(
        m,
        &a,
        &r.alpha,
        &r.gamma1,
        &r.gamma2,
        &b[t],
        &b[n1],
        &b[n2],
    )?)
}

/// Rotation contribution by the perturbed limit: with `A₁ = a` at the
/// first node and `A₂ = −a` implied by adjunction,
///
/// ```text
/// lim_{S→1} (w−1)²/(S^{b_t}−1) · [ w^{α a} S^{α b₁ + γ₁ b_t} / (w^{a} S^{b₁} − 1)
///                                + w^{−(1−α) a} S^{(1−α) b₂ + γ₂ b_t} / (w^{−a} S^{b₂} − 1) ]
/// ```
///
/// The value requires the null condition `b₁ + b₂ = m b_t` (and
/// `b_t ≠ 0`); it is then independent of `b`.
#[allow(clippy::too_many_arguments)]
pub fn h_rotation_limit(
    m: i64,
    a: &Rational,
    alpha: &Rational,
    gamma1: &Rational,
    gamma2: &Rational,
    b_t: &Rational,
    b1: &Rational,
    b2: &Rational,
) -> Result<EExpr, ExactError> {
    if b_t.is_zero() {
        return Err(ExactError::InvalidArgument(
            "perturbation must not vanish on the rotated curve".into(),
        ));
    }
    if &(b1 + b2) != &(rat_int(m) * b_t) {
        return Err(ExactError::InvalidArgument(
            "perturbation violates the null condition at the rotated curve".into(),
        ));
    }
    let one = Rational::one();
    let w1 = LaurentPoly::w_pow(&one) - LaurentPoly::one_poly();

    let mono = |w_exp: Rational, s_exp: Rational| {
        LaurentPoly::term(
            Rational::one(),
            &[(Var::U, w_exp.clone()), (Var::V, w_exp), (Var::S, s_exp)],
        )
    };
    let pole = |w_exp: Rational, s_exp: Rational| {
        mono(w_exp, s_exp) - LaurentPoly::one_poly()
    };

    // Sum the two node fractions over their product denominator and attach
    // the (w−1)²/(S^{b_t}−1) prefactor; the limit cancels without reducing.
    let one_minus_alpha = &one - alpha;
    let mono1 = mono(alpha * a, alpha * b1 + gamma1 * b_t);
    let mono2 = mono(
        -(&one_minus_alpha * a),
        &one_minus_alpha * b2 + gamma2 * b_t,
    );
    let pole1 = pole(a.clone(), b1.clone());
    let pole2 = pole(-a.clone(), b2.clone());
    let own = LaurentPoly::var_pow(Var::S, b_t) - LaurentPoly::one_poly();

    let num = &(&w1 * &w1) * &(&(&mono1 * &pole2) + &(&mono2 * &pole1));
    let den = &own * &(&pole1 * &pole2);
    limit_at_one_quotient(&num, &den, Var::S)
}

/// Closed form of [`h_rotation_limit`]:
///
/// ```text
/// − w^{α a} (w−1)²/(w^a−1)² · [ α m + γ₁ − γ₂ + w^a ((1−α) m + γ₂ − γ₁) ]
/// ```
pub fn h_rotation_closed(
    m: i64,
    a: &Rational,
    alpha: &Rational,
    gamma1: &Rational,
    gamma2: &Rational,
) -> Result<EExpr, ExactError> {
    if a.is_zero() {
        return Err(ExactError::InvalidArgument(
            "the node coefficient offset a must be nonzero".into(),
        ));
    }
    let one = Rational::one();
    let w1 = LaurentPoly::w_pow(&one) - LaurentPoly::one_poly();
    let pole = LaurentPoly::w_pow(a) - LaurentPoly::one_poly();
    let g12 = gamma1 - gamma2;
    let c0 = alpha * rat_int(m) + &g12;
    let c1 = (&one - alpha) * rat_int(m) - &g12;
    let bracket = LaurentPoly::constant_rational(&c0)
        + LaurentPoly::w_pow(a).scale(&c1);
    let num = LaurentPoly::w_pow(&(alpha * a)) * (&w1 * &w1) * bracket;
    Ok(-RatExpr::new(num, &pole * &pole)?)
}

/// Verifies the correspondence: orbifold E-function of the cover equals
/// the stringy E-function of the quotient. Both sides must be computed in
/// the same kind of mode (each side carries its own ambient in global
/// mode). Returns the common value.
pub fn mckay_verify(
    cover: &OrbifoldDatum,
    cover_mode: &StringyMode,
    quotient: &ResolutionGraph,
    quotient_mode: &StringyMode,
) -> Result<EExpr, OrbifoldError> {
    let kinds_match = matches!(
        (cover_mode, quotient_mode),
        (StringyMode::Local, StringyMode::Local)
            | (StringyMode::Global(_), StringyMode::Global(_))
    );
    if !kinds_match {
        return Err(OrbifoldError::ModeMismatch);
    }
    let orb = e_orb(cover, cover_mode, None)?;
    let str_e = e_stringy(quotient, quotient_mode)?;
    if orb == str_e {
        Ok(orb)
    } else {
        Err(OrbifoldError::McKayMismatch {
            orbifold: orb.to_string(),
            stringy: str_e.to_string(),
        })
    }
}

/// Orbifold Euler number.
pub fn orbifold_euler(
    datum: &OrbifoldDatum,
    mode: &StringyMode,
) -> Result<Rational, OrbifoldError> {
    let e = e_orb(datum, mode, None)?;
    Ok(crate::exact::euler_specialize(&e)?)
}

/// Orbifold χ_y genus.
pub fn orbifold_chi_y(
    datum: &OrbifoldDatum,
    mode: &StringyMode,
) -> Result<RatExpr<Rational>, OrbifoldError> {
    let e = e_orb(datum, mode, None)?;
    Ok(crate::exact::chi_y_specialize(&e)?)
}

/// Coefficient transport along a degree-`r` cyclic cover totally ramified
/// over the divisor: quotient coefficient `a` pulls back to
/// `−1 + r(a + 1)`.
pub fn cover_coefficient(quotient_coeff: &Rational, ramification: i64) -> Rational {
    -Rational::one() + rat_int(ramification) * (quotient_coeff + Rational::one())
}

/// The Euler-number identity for cone quotients: a degree-`d` cone base
/// curve with Euler number `e = d(3−d)`, quotiented by a group of order
/// `n`, has stringy Euler number `(n+1)·e/(3−d) − d = n·d`. Undefined at
/// `d = 3`.
pub fn euler_cone_quotient(
    d: i64,
    group_order: i64,
    curve_euler: &Rational,
) -> Result<Rational, ExactError> {
    if d == 3 {
        return Err(ExactError::InvalidArgument(
            "the cone over a cubic is strictly log canonical; no finite Euler number".into(),
        ));
    }
    Ok(rat_int(group_order + 1) * curve_euler / rat_int(3 - d) - rat_int(d))
}

/// Cover datum for the order-`n` cyclic scaling action on the cone over
/// a smooth plane curve of degree `d ≠ 3`: the graph is the minimal
/// resolution (one curve of genus `(d−1)(d−2)/2` and self-intersection
/// `−d`), and the class of `g^k` fixes that curve with normal weight
/// `k/n` along it.
pub fn cone_cover_datum(d: i64, n: u32) -> Result<OrbifoldDatum, OrbifoldError> {
    if d < 1 || d == 3 {
        return Err(OrbifoldError::InvalidSector(format!(
            "cone degree must be positive and not 3, got {}",
            d
        )));
    }
    let genus = ((d - 1) * (d - 2) / 2) as u32;
    let graph = ResolutionGraph::new(vec![Curve::exceptional("C", genus, -d)], &[])?
        .solve_discrepancies()?;
    let sectors = (1..n as i64)
        .map(|k| SectorRecord::FixedCurve {
            class_id: format!("g{}", k),
            curve: "C".to_string(),
            normal_weight: Rational::zero(),
            divisor_weights: vec![("C".to_string(), rat(k, n as i64))],
        })
        .collect();
    Ok(OrbifoldDatum {
        graph,
        sectors,
        rotations: Vec::new(),
    })
}

/// Resolution graph of the quotient of the degree-`d` cone by the
/// order-`n` scaling action: one curve of the same genus,
/// self-intersection `−d·n`, coefficient `−1 + (3−d)/n`.
pub fn cone_quotient_graph(d: i64, n: u32) -> Result<ResolutionGraph, OrbifoldError> {
    let genus = ((d - 1) * (d - 2) / 2) as u32;
    Ok(
        ResolutionGraph::new(vec![Curve::exceptional("C", genus, -d * n as i64)], &[])?
            .solve_discrepancies()?,
    )
}

/// Cover datum for the smooth germ with the `±1` involution: an empty
/// graph, the origin as identity central fiber, and the involution's
/// fixed point with both tangent weights `1/2`.
pub fn a1_cover_datum() -> OrbifoldDatum {
    let graph = ResolutionGraph::new(Vec::new(), &[]).expect("empty graph");
    OrbifoldDatum {
        graph,
        sectors: vec![
            SectorRecord::FixedPoint {
                class_id: IDENTITY_CLASS.to_string(),
                curves: Vec::new(),
                weights: vec![Rational::zero(), Rational::zero()],
            },
            SectorRecord::FixedPoint {
                class_id: "g".to_string(),
                curves: Vec::new(),
                weights: vec![rat(1, 2), rat(1, 2)],
            },
        ],
        rotations: Vec::new(),
    }
}

/// Resolution graph of the ordinary double point: one rational −2 curve.
pub fn a1_quotient_graph() -> ResolutionGraph {
    ResolutionGraph::new(vec![Curve::exceptional("C", 0, -2)], &[])
        .expect("valid graph")
        .solve_discrepancies()
        .expect("negative definite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::Curve;
    use crate::exact::parse_ratexpr;

    #[test]
    fn a1_mckay_local_and_global() {
        let cover = a1_cover_datum();
        let quotient = a1_quotient_graph();
        let local = mckay_verify(
            &cover,
            &StringyMode::Local,
            &quotient,
            &StringyMode::Local,
        )
        .unwrap();
        assert_eq!(local, parse_ratexpr("u*v + 1").unwrap());

        let cover_ambient = parse_ratexpr("u^2*v^2").unwrap();
        let quot_ambient = parse_ratexpr("u^2*v^2 + u*v").unwrap();
        let global = mckay_verify(
            &cover,
            &StringyMode::Global(cover_ambient),
            &quotient,
            &StringyMode::Global(quot_ambient),
        )
        .unwrap();
        assert_eq!(global, parse_ratexpr("u^2*v^2 + u*v").unwrap());

        assert!(matches!(
            mckay_verify(
                &cover,
                &StringyMode::Local,
                &quotient,
                &StringyMode::Global(parse_ratexpr("u*v").unwrap()),
            ),
            Err(OrbifoldError::ModeMismatch)
        ));
    }

    #[test]
    fn cone_mckay_family() {
        for d in [2i64, 4, 5] {
            for n in [1u32, 2, 3] {
                let cover = cone_cover_datum(d, n).unwrap();
                let quotient = cone_quotient_graph(d, n).unwrap();
                let e = mckay_verify(
                    &cover,
                    &StringyMode::Local,
                    &quotient,
                    &StringyMode::Local,
                )
                .unwrap();
                let euler = crate::exact::euler_specialize(&e).unwrap();
                assert_eq!(euler, rat_int(n as i64 * d));
                // The same number via the closed identity on the base
                // curve's Euler number d(3−d).
                let curve_euler = rat_int(d * (3 - d));
                assert_eq!(
                    euler_cone_quotient(d, n as i64, &curve_euler).unwrap(),
                    euler
                );
            }
        }
    }

    #[test]
    fn cone_chi_y_shifted_value() {
        // χ_y of the quotient: (1−g)(y²−1)/(y^{(3−d)/n}−1).
        for (d, n) in [(2i64, 2u32), (4, 2), (5, 3)] {
            let g = (d - 1) * (d - 2) / 2;
            let quotient = cone_quotient_graph(d, n).unwrap();
            let chi = crate::stringy::stringy_chi_y(&quotient, &StringyMode::Local).unwrap();
            let expected = parse_ratexpr(&format!(
                "({})*(y^2 - 1)/(y^({}/{}) - 1)",
                1 - g,
                3 - d,
                n
            ))
            .unwrap();
            assert_eq!(chi, expected);
            // And the orbifold side specializes identically.
            let cover = cone_cover_datum(d, n).unwrap();
            let chi_orb = orbifold_chi_y(&cover, &StringyMode::Local).unwrap();
            assert_eq!(chi_orb, expected);
        }
    }

    #[test]
    fn smooth_cone_quotients() {
        // Degree 1: the cover is a smooth germ seen through one blow-up;
        // the quotient is the cone over a rational normal curve.
        for n in [2u32, 3, 4] {
            let cover = cone_cover_datum(1, n).unwrap();
            let quotient = cone_quotient_graph(1, n).unwrap();
            let e = mckay_verify(
                &cover,
                &StringyMode::Local,
                &quotient,
                &StringyMode::Local,
            )
            .unwrap();
            // Σ_{k=0}^{n−1} w^{2k/n}
            let mut expected = EExpr::zero_expr();
            for k in 0..n as i64 {
                expected = expected + w_power(&rat(2 * k, n as i64));
            }
            assert_eq!(e, expected);
            assert_eq!(
                crate::exact::euler_specialize(&e).unwrap(),
                rat_int(n as i64)
            );
        }
    }

    #[test]
    fn rotation_closed_form_oracle() {
        // α = 1/2, γ₁ = γ₂, m = 2, a = 2:
        // −w(1+w²)(w−1)²/(w²−1)².
        let h = h_rotation_closed(2, &rat_int(2), &rat(1, 2), &rat(1, 3), &rat(1, 3)).unwrap();
        let expected =
            parse_ratexpr("-(w*(1 + w^2)*(w - 1)^2)/((w^2 - 1)^2)").unwrap();
        assert_eq!(h, expected);
    }

    #[test]
    fn rotation_limit_matches_closed_form() {
        let cases = [
            (2i64, rat_int(2), rat(1, 2), rat(1, 3), rat(1, 3)),
            (3, rat(1, 2), rat(1, 4), rat_int(0), rat_int(1)),
            (1, rat(-3, 2), rat(2, 3), rat(1, 5), rat(-2, 5)),
            (5, rat(7, 3), rat(5, 7), rat(-1, 2), rat(3, 4)),
        ];
        for (m, a, alpha, g1, g2) in cases {
            let closed = h_rotation_closed(m, &a, &alpha, &g1, &g2).unwrap();
            // Any b with b₁ + b₂ = m b_t gives the same limit.
            for (bt, b1) in [(rat_int(1), rat_int(0)), (rat_int(2), rat(3, 2))] {
                let b2 = rat_int(m) * &bt - &b1;
                let lim =
                    h_rotation_limit(m, &a, &alpha, &g1, &g2, &bt, &b1, &b2).unwrap();
                assert_eq!(lim, closed);
            }
            // Euler number −m/a².
            assert_eq!(
                crate::exact::euler_specialize(&closed).unwrap(),
                rat_int(-m) / (&a * &a)
            );
            // Relabeling the two nodes.
            let swapped = h_rotation_closed(
                m,
                &-a.clone(),
                &(Rational::one() - &alpha),
                &g2,
                &g1,
            )
            .unwrap();
            assert_eq!(swapped, closed);
        }
    }

    #[test]
    fn rotation_in_a_datum() {
        // A −1 curve between boundary curves with coefficients 1 and −3,
        // rotated by an involution fixing the two nodes.
        let graph = ResolutionGraph::new(
            vec![
                Curve::exceptional("T", 0, -2),
                Curve::boundary_full("B0", 0, -1, rat_int(1)),
                Curve::boundary_full("B1", 0, -1, rat_int(-3)),
            ],
            &[("T".into(), "B0".into()), ("T".into(), "B1".into())],
        )
        .unwrap()
        .solve_discrepancies()
        .unwrap();
        let datum = OrbifoldDatum {
            graph: graph.clone(),
            sectors: Vec::new(),
            rotations: vec![RotationRecord {
                class_id: "g".to_string(),
                curve: "T".to_string(),
                alpha: rat(1, 2),
                gamma1: Rational::zero(),
                gamma2: Rational::zero(),
            }],
        };
        let identity = e_stringy(&graph, &StringyMode::Local).unwrap();
        let h = h_rotation_closed(2, &rat_int(2), &rat(1, 2), &Rational::zero(), &Rational::zero())
            .unwrap();
        let total = e_orb(&datum, &StringyMode::Local, None).unwrap();
        assert_eq!(total, identity + h);

        // Perturbation independence of the full datum.
        let p = Perturbation::from_pairs(
            &graph,
            &[
                ("T".to_string(), rat_int(3)),
                ("B0".to_string(), rat(5, 2)),
                ("B1".to_string(), rat(7, 2)),
            ],
        )
        .unwrap();
        assert_eq!(e_orb(&datum, &StringyMode::Local, Some(&p)).unwrap(), total);
    }

    #[test]
    fn invalid_sector_data_rejected() {
        let quotient = a1_quotient_graph();
        // Identity fixed curve.
        let d1 = OrbifoldDatum {
            graph: quotient.clone(),
            sectors: vec![SectorRecord::FixedCurve {
                class_id: IDENTITY_CLASS.into(),
                curve: "C".into(),
                normal_weight: Rational::zero(),
                divisor_weights: vec![],
            }],
            rotations: vec![],
        };
        assert!(matches!(
            d1.validate(),
            Err(OrbifoldError::InvalidSector(_))
        ));
        // Rotation on a curve whose coefficient is not −1.
        let d2 = OrbifoldDatum {
            graph: quotient.clone(),
            sectors: vec![],
            rotations: vec![RotationRecord {
                class_id: "g".into(),
                curve: "C".into(),
                alpha: rat(1, 2),
                gamma1: Rational::zero(),
                gamma2: Rational::zero(),
            }],
        };
        assert!(matches!(
            d2.validate(),
            Err(OrbifoldError::InvalidSector(_))
        ));
        // Identity fixed point with nonzero weight.
        let d3 = OrbifoldDatum {
            graph: quotient.clone(),
            sectors: vec![SectorRecord::FixedPoint {
                class_id: IDENTITY_CLASS.into(),
                curves: vec![],
                weights: vec![rat(1, 2), Rational::zero()],
            }],
            rotations: vec![],
        };
        assert!(matches!(
            d3.validate(),
            Err(OrbifoldError::InvalidSector(_))
        ));
        // A class fixing both ends of a node.
        let two = ResolutionGraph::new(
            vec![
                Curve::exceptional("E0", 0, -3),
                Curve::exceptional("E1", 0, -3),
            ],
            &[("E0".into(), "E1".into())],
        )
        .unwrap()
        .solve_discrepancies()
        .unwrap();
        let d4 = OrbifoldDatum {
            graph: two,
            sectors: ["E0", "E1"]
                .iter()
                .map(|c| SectorRecord::FixedCurve {
                    class_id: "g".into(),
                    curve: c.to_string(),
                    normal_weight: rat(1, 2),
                    divisor_weights: vec![],
                })
                .collect(),
            rotations: vec![],
        };
        assert!(matches!(
            d4.validate(),
            Err(OrbifoldError::InvalidSector(_))
        ));
    }

    #[test]
    fn cover_coefficient_transport() {
        // Quotient cone coefficient −1 + (3−d)/n pulls back to 2−d.
        for (d, n) in [(2i64, 2i64), (4, 3), (5, 2)] {
            let a_q = rat(3 - d, n) - Rational::one();
            assert_eq!(cover_coefficient(&a_q, n), rat_int(2 - d));
        }
    }
}
