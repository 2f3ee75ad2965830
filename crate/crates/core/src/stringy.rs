//! Stringy E-functions of decorated dual graphs.
//!
//! The invariant is a sum over strata of the configuration. Each stratum
//! contributes its Hodge–Deligne polynomial in `u, v` times one geometric
//! factor `(uv−1)/((uv)^{a_i+1}−1)` per curve through it:
//!
//! * the open part of a curve `D_i` (the curve minus its nodes)
//!   contributes `E(D_i°) · gf(a_i)`;
//! * a node of `D_i ∩ D_j` contributes `gf(a_i) · gf(a_j)`;
//! * in [`StringyMode::Global`], the complement of the configuration in
//!   the ambient surface contributes its own E-polynomial with factor 1.
//!
//! [`StringyMode::Local`] keeps only the strata lying over the singular
//! point: open parts of exceptional curves and nodes with at least one
//! exceptional endpoint.
//!
//! # Coefficient −1 curves
//!
//! The geometric factor has a pole at `a = −1`. Strata touching a
//! coefficient −1 curve `t` are grouped into a *lump* — `t`'s open part
//! together with `t`'s nodes — and evaluated by perturbing every
//! coefficient `a_i ⇝ a_i + ε b_i` (realized as an extra factor `S^{b_i}`
//! in the pole, `S = (uv)^ε`), then taking the limit `S → 1` of the whole
//! lump at once. The perturbation must satisfy the *null condition*
//! `Σ_i b_i (D_i · D_t) = 0` at every coefficient −1 curve `t`, with
//! `b_t ≠ 0`; the limit value is then independent of the choice of `b`
//! ([`Perturbation::null_for`] constructs one, pinning `b_t = 1` and
//! setting the remaining free values to zero).
//!
//! For a rational two-node curve with adjunction-compatible data the lump
//! has a closed form, exposed as [`curve_contribution_closed`].

use crate::dualgraph::{BlowupSite, GraphError, ResolutionGraph, Role};
use crate::exact::{
    geometric_factor, limit_at_one_quotient, rat_int, EExpr, ExactError, LaurentPoly, RatExpr,
    Rational,
    Var,
};
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// Which strata to sum.
#[derive(Clone, PartialEq, Debug)]
pub enum StringyMode {
    /// Only strata over the singular point: exceptional open parts and
    /// nodes with at least one exceptional endpoint.
    Local,
    /// All strata of the pair; carries the E-polynomial of the smooth
    /// ambient surface.
    Global(EExpr),
}

/// Errors of the stringy calculus.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StringyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("coefficient -1 curves {0:?} and {1:?} meet; their lumped limits are not separable")]
    AdjacentMinusOneCurves(String, String),
    #[error(
        "boundary curve {0:?} has coefficient -1 and meets the exceptional set; \
         its lump is not a local stratum (use global mode)"
    )]
    BoundaryMinusOneLocal(String),
    #[error("no null perturbation exists for this configuration")]
    NoNullPerturbation,
    #[error("perturbation violates the null condition at curve {0:?}")]
    PerturbationNotNull(String),
    #[error("perturbation vanishes at coefficient -1 curve {0:?}")]
    PerturbationVanishes(String),
    #[error("perturbation assigns a value to unknown curve {0:?}")]
    PerturbationUnknownCurve(String),
    #[error("blow-up changed the invariant: {before} became {after}")]
    FunctorialityViolation { before: String, after: String },
    #[error("re-solving after blow-up gave {resolved} for curve {id:?}, transport gave {transported}")]
    TransportMismatch {
        id: String,
        transported: String,
        resolved: String,
    },
}

/// A perturbation direction `b`: one rational per curve, same order as
/// the graph's curves.
#[derive(Clone, PartialEq, Debug)]
pub struct Perturbation {
    values: Vec<Rational>,
}

impl Perturbation {
    /// The values, indexed like the graph's curves.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Builds the default null perturbation: `b_t = 1` at every
    /// coefficient −1 curve, the null conditions
    /// `Σ_i b_i (D_i·D_t) = 0` as equations, remaining freedom set to 0.
    pub fn null_for(g: &ResolutionGraph) -> Result<Self, StringyError> {
        let n = g.curves().len();
        let minus_one_curves = minus_one_indices(g)?;
        // Augmented rows [coefficients | rhs].
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for &t in &minus_one_curves {
            let mut pin = vec![Rational::zero(); n + 1];
            pin[t] = Rational::one();
            pin[n] = Rational::one();
            rows.push(pin);
            let mut null = vec![Rational::zero(); n + 1];
            for i in 0..n {
                null[i] = rat_int(g.pair_intersection(i, t));
            }
            rows.push(null);
        }
        let values = solve_affine(rows, n).ok_or(StringyError::NoNullPerturbation)?;
        Ok(Perturbation { values })
    }

    /// Wraps explicit values (unlisted curves get 0) and validates the
    /// null conditions.
    pub fn from_pairs(
        g: &ResolutionGraph,
        pairs: &[(String, Rational)],
    ) -> Result<Self, StringyError> {
        let mut values = vec![Rational::zero(); g.curves().len()];
        for (id, b) in pairs {
            let i = g
                .index_of(id)
                .map_err(|_| StringyError::PerturbationUnknownCurve(id.clone()))?;
            values[i] = b.clone();
        }
        let p = Perturbation { values };
        p.validate(g)?;
        Ok(p)
    }

    /// Checks the null condition and non-vanishing at every coefficient
    /// −1 curve.
    pub fn validate(&self, g: &ResolutionGraph) -> Result<(), StringyError> {
        for t in minus_one_indices(g)? {
            if self.values[t].is_zero() {
                return Err(StringyError::PerturbationVanishes(
                    g.curves()[t].id.clone(),
                ));
            }
            let mut sum = Rational::zero();
            for i in 0..g.curves().len() {
                sum += &self.values[i] * rat_int(g.pair_intersection(i, t));
            }
            if !sum.is_zero() {
                return Err(StringyError::PerturbationNotNull(
                    g.curves()[t].id.clone(),
                ));
            }
        }
        Ok(())
    }
}

fn minus_one_indices(g: &ResolutionGraph) -> Result<Vec<usize>, GraphError> {
    let minus_one = -Rational::one();
    let mut out = Vec::new();
    for i in 0..g.curves().len() {
        if *g.coeff(i)? == minus_one {
            out.push(i);
        }
    }
    Ok(out)
}

/// Gauss–Jordan over the rationals on augmented rows; free variables are
/// set to zero. `None` when the system is inconsistent.
fn solve_affine(mut rows: Vec<Vec<Rational>>, n: usize) -> Option<Vec<Rational>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= lead.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=n {
                    let s = &f * &rows[r][j];
                    rows[i][j] -= s;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // Inconsistent: a zero row with nonzero rhs.
    for row in &rows {
        if row[..n].iter().all(|x| x.is_zero()) && !row[n].is_zero() {
            return None;
        }
    }
    Some(
        (0..n)
            .map(|c| match pivot_of_col[c] {
                Some(r) => rows[r][n].clone(),
                None => Rational::zero(),
            })
            .collect(),
    )
}

/// `uv − 1` (the numerator of every geometric factor).
fn w_minus_one() -> LaurentPoly<Rational> {
    LaurentPoly::w_pow(&Rational::one()) - LaurentPoly::one_poly()
}

/// `(uv)^A · S^b − 1` (a perturbed pole).
fn perturbed_pole(a_plus_one: &Rational, b: &Rational) -> LaurentPoly<Rational> {
    LaurentPoly::term(
        Rational::one(),
        &[
            (Var::U, a_plus_one.clone()),
            (Var::V, a_plus_one.clone()),
            (Var::S, b.clone()),
        ],
    ) - LaurentPoly::one_poly()
}

/// E-polynomial of the open part of curve `i`: the smooth projective
/// curve minus its incident nodes.
fn open_part_poly(g: &ResolutionGraph, i: usize) -> LaurentPoly<Rational> {
    let genus = rat_int(g.curves()[i].genus as i64);
    let punctures = rat_int(g.node_count(i) as i64);
    LaurentPoly::constant_rational(&(Rational::one() - punctures))
        - LaurentPoly::var(Var::U).scale(&genus)
        - LaurentPoly::var(Var::V).scale(&genus)
        + LaurentPoly::w_pow(&Rational::one())
}

/// The strata selected by `mode`: curve open parts and nodes (as indices
/// into the graph's node list).
fn selected_strata(g: &ResolutionGraph, mode: &StringyMode) -> (Vec<usize>, Vec<usize>) {
    match mode {
        StringyMode::Local => {
            let exc: BTreeSet<usize> = g.exceptional_indices().into_iter().collect();
            let nodes = g
                .node_indices()
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| exc.contains(&i) || exc.contains(&j))
                .map(|(k, _)| k)
                .collect();
            (exc.into_iter().collect(), nodes)
        }
        StringyMode::Global(_) => (
            (0..g.curves().len()).collect(),
            (0..g.node_indices().len()).collect(),
        ),
    }
}

/// Stringy E-function with the default null perturbation (when one is
/// needed at all).
pub fn e_stringy(g: &ResolutionGraph, mode: &StringyMode) -> Result<EExpr, StringyError> {
    preflight(g, mode)?;
    if minus_one_indices(g)?.is_empty() {
        return e_stringy_direct(g, mode, None);
    }
    let pert = Perturbation::null_for(g)?;
    e_stringy_direct(g, mode, Some(&pert))
}

/// Stringy E-function with an explicit perturbation (validated).
pub fn e_stringy_with(
    g: &ResolutionGraph,
    mode: &StringyMode,
    pert: &Perturbation,
) -> Result<EExpr, StringyError> {
    pert.validate(g)?;
    e_stringy_direct(g, mode, Some(pert))
}

/// Checks that every coefficient −1 curve's lump is representable in the
/// selected strata: its open part must be selected, and no selected node
/// may join two coefficient −1 curves.
fn preflight(g: &ResolutionGraph, mode: &StringyMode) -> Result<(), StringyError> {
    let minus_one = -Rational::one();
    let (open_curves, node_ids) = selected_strata(g, mode);
    let open_set: BTreeSet<usize> = open_curves.iter().copied().collect();
    for k in &node_ids {
        let (i, j) = g.node_indices()[*k];
        let ai = g.coeff(i)?;
        let aj = g.coeff(j)?;
        if *ai == minus_one && *aj == minus_one {
            return Err(StringyError::AdjacentMinusOneCurves(
                g.curves()[i].id.clone(),
                g.curves()[j].id.clone(),
            ));
        }
        for x in [i, j] {
            if *g.coeff(x)? == minus_one && !open_set.contains(&x) {
                return Err(StringyError::BoundaryMinusOneLocal(
                    g.curves()[x].id.clone(),
                ));
            }
        }
    }
    Ok(())
}

fn e_stringy_direct(
    g: &ResolutionGraph,
    mode: &StringyMode,
    pert: Option<&Perturbation>,
) -> Result<EExpr, StringyError> {
    let minus_one = -Rational::one();
    preflight(g, mode)?;
    let (open_curves, node_ids) = selected_strata(g, mode);

    let mut total = EExpr::zero_expr();

    // Ambient complement (global mode only).
    if let StringyMode::Global(ambient) = mode {
        let mut complement = ambient.clone();
        for i in 0..g.curves().len() {
            complement = complement - RatExpr::from_poly(open_part_poly(g, i));
        }
        let n_nodes = rat_int(g.node_indices().len() as i64);
        complement = complement - RatExpr::constant(&n_nodes);
        total = total + complement;
    }

    // Open parts and lumps.
    for &i in &open_curves {
        let a = g.coeff(i)?.clone();
        if a != minus_one {
            let gf = geometric_factor(&a)?;
            total = total + RatExpr::from_poly(open_part_poly(g, i)) * gf;
            continue;
        }
        // Lump: open part of the −1 curve plus all its selected nodes,
        // perturbed in S, one limit for the whole group. The bracket is
        // accumulated as a raw quotient so no reduction is ever needed
        // before the cancellation.
        let pert = pert.ok_or(StringyError::NoNullPerturbation)?;
        let mut num = open_part_poly(g, i);
        let mut den = LaurentPoly::one_poly();
        for &k in &node_ids {
            let (p, q) = g.node_indices()[k];
            let other = if p == i {
                q
            } else if q == i {
                p
            } else {
                continue;
            };
            let a_other = g.coeff(other)?.clone() + Rational::one();
            let pole = perturbed_pole(&a_other, &pert.values[other]);
            num = &(&num * &pole) + &(&w_minus_one() * &den);
            den = &den * &pole;
        }
        let own_pole = perturbed_pole(&Rational::zero(), &pert.values[i]);
        num = &num * &w_minus_one();
        den = &den * &own_pole;
        total = total + limit_at_one_quotient(&num, &den, Var::S)?;
    }

    // Nodes not absorbed into a lump.
    for &k in &node_ids {
        let (i, j) = g.node_indices()[k];
        let ai = g.coeff(i)?.clone();
        let aj = g.coeff(j)?.clone();
        if ai == minus_one || aj == minus_one {
            continue; // inside that curve's lump
        }
        total = total + geometric_factor(&ai)? * geometric_factor(&aj)?;
    }

    Ok(total)
}

/// Stringy Euler number: the `u, v → 1` limit of the stringy E-function.
pub fn stringy_euler(g: &ResolutionGraph, mode: &StringyMode) -> Result<Rational, StringyError> {
    let e = e_stringy(g, mode)?;
    Ok(crate::exact::euler_specialize(&e)?)
}

/// Stringy χ_y genus: the `v → 1, u → y` specialization of the stringy
/// E-function.
pub fn stringy_chi_y(
    g: &ResolutionGraph,
    mode: &StringyMode,
) -> Result<RatExpr<Rational>, StringyError> {
    let e = e_stringy(g, mode)?;
    Ok(crate::exact::chi_y_specialize(&e)?)
}

/// Closed form for the contribution of one rational exceptional curve
/// `t` together with its nodes, valid when the coefficients satisfy
/// adjunction. `m` is `−D_t²` and `neighbors` lists the coefficients of
/// the 0, 1, or 2 curves meeting `t` (none of them −1); the coefficient
/// of `t` itself is determined by `Σ a_i + 2 = m (a_t + 1)` and may be
/// −1, in which case this equals the lumped limit.
///
/// With `A = a_t + 1` and `A_i = a_i + 1`:
///
/// * two nodes: `(w−1)² Ψ / ((w^{A₁}−1)(w^{A₂}−1))`,
/// * one node: `(w−1) Ψ / (w^{A₁}−1)`,
/// * no nodes: `Ψ`,
///
/// where `Ψ = (w^{mA}−1)/(w^A−1)`, read as `m` when `A = 0`.
pub fn curve_contribution_closed(
    m: i64,
    neighbors: &[Rational],
) -> Result<EExpr, ExactError> {
    if m <= 0 {
        return Err(ExactError::InvalidArgument(format!(
            "multiplicity must be positive, got {}",
            m
        )));
    }
    if neighbors.len() > 2 {
        return Err(ExactError::InvalidArgument(
            "closed form covers at most two neighbors".to_string(),
        ));
    }
    let big_a = (neighbors.iter().fold(rat_int(2), |acc, a| acc + a)) / rat_int(m);
    let psi = if big_a.is_zero() {
        RatExpr::constant(&rat_int(m))
    } else {
        RatExpr::new(
            LaurentPoly::w_pow(&(rat_int(m) * &big_a)) - LaurentPoly::one_poly(),
            LaurentPoly::w_pow(&big_a) - LaurentPoly::one_poly(),
        )?
    };
    let mut out = psi;
    for a in neighbors {
        let a1 = a.clone() + Rational::one();
        out = out
            * RatExpr::new(
                w_minus_one(),
                LaurentPoly::w_pow(&a1) - LaurentPoly::one_poly(),
            )?;
    }
    Ok(out)
}

/// Blows up, re-solves the discrepancies from scratch (checking they
/// agree with coefficient transport), computes the invariant before and
/// after, and demands equality. In global mode the ambient E-polynomial
/// gains `uv` (the class of the new curve). Returns the common value.
pub fn verify_functoriality(
    g: &ResolutionGraph,
    site: &BlowupSite,
    new_id: &str,
    mode: &StringyMode,
) -> Result<EExpr, StringyError> {
    let before = e_stringy(g, mode)?;
    let blown = g.blowup(site, new_id)?;

    // Independent check: solving the adjunction system on the blown-up
    // graph reproduces the transported coefficients.
    let mut stripped = blown.clone();
    stripped.strip_exceptional_coefficients();
    let resolved = stripped.solve_discrepancies()?;
    for i in 0..blown.curves().len() {
        if blown.curves()[i].role == Role::Exceptional {
            let transported = blown.coeff(i)?;
            let from_solve = resolved.coeff(i)?;
            if transported != from_solve {
                return Err(StringyError::TransportMismatch {
                    id: blown.curves()[i].id.clone(),
                    transported: crate::exact::rational_to_string(transported),
                    resolved: crate::exact::rational_to_string(from_solve),
                });
            }
        }
    }

    let mode_after = match mode {
        StringyMode::Local => StringyMode::Local,
        StringyMode::Global(ambient) => StringyMode::Global(
            ambient.clone() + RatExpr::from_poly(LaurentPoly::w_pow(&Rational::one())),
        ),
    };
    let after = e_stringy(&blown, &mode_after)?;
    if before == after {
        Ok(before)
    } else {
        Err(StringyError::FunctorialityViolation {
            before: before.to_string(),
            after: after.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dualgraph::Curve;
    use crate::exact::{parse_ratexpr, rat};

    fn chain_of_minus_two(n: usize) -> ResolutionGraph {
        let curves = (0..n)
            .map(|i| Curve::exceptional(&format!("E{}", i), 0, -2))
            .collect();
        let nodes: Vec<(String, String)> = (0..n - 1)
            .map(|i| (format!("E{}", i), format!("E{}", i + 1)))
            .collect();
        ResolutionGraph::new(curves, &nodes)
            .unwrap()
            .solve_discrepancies()
            .unwrap()
    }

    fn cone_graph(d: i64) -> ResolutionGraph {
        let g = ((d - 1) * (d - 2) / 2) as u32;
        ResolutionGraph::new(vec![Curve::exceptional("C", g, -d)], &[])
            .unwrap()
            .solve_discrepancies()
            .unwrap()
    }

    fn lumped_minus_two_between_boundaries() -> ResolutionGraph {
        ResolutionGraph::new(
            vec![
                Curve::exceptional("E", 0, -2),
                Curve::boundary_full("B0", 0, -1, rat_int(-3)),
                Curve::boundary_full("B1", 0, -1, rat_int(1)),
            ],
            &[("E".into(), "B0".into()), ("E".into(), "B1".into())],
        )
        .unwrap()
        .solve_discrepancies()
        .unwrap()
    }

    #[test]
    fn chain_local_values() {
        for n in [1usize, 2, 3, 5] {
            let e = e_stringy(&chain_of_minus_two(n), &StringyMode::Local).unwrap();
            let expected = parse_ratexpr(&format!("{}*u*v + 1", n)).unwrap();
            assert_eq!(e, expected);
            assert_eq!(
                stringy_euler(&chain_of_minus_two(n), &StringyMode::Local).unwrap(),
                rat_int(n as i64 + 1)
            );
        }
    }

    #[test]
    fn cone_local_values() {
        // One curve of genus (d−1)(d−2)/2 and coefficient 2−d:
        // (1 − g u − g v + uv)(w−1)/(w^{3−d}−1).
        for d in [2i64, 4, 5, 7] {
            let g = (d - 1) * (d - 2) / 2;
            let e = e_stringy(&cone_graph(d), &StringyMode::Local).unwrap();
            let open = parse_ratexpr(&format!("1 - {}*u - {}*v + u*v", g, g)).unwrap();
            let gf = parse_ratexpr(&format!("(w - 1)/(w^({}) - 1)", 3 - d)).unwrap();
            assert_eq!(e, open * gf);
            assert_eq!(
                stringy_euler(&cone_graph(d), &StringyMode::Local).unwrap(),
                rat_int(d)
            );
        }
    }

    #[test]
    fn cone_over_cubic_diverges() {
        // d = 3: coefficient −1 on a genus 1 curve with no null direction.
        assert!(e_stringy(&cone_graph(3), &StringyMode::Local).is_err());
    }

    #[test]
    fn lumped_minus_two_curve_limit() {
        let g = lumped_minus_two_between_boundaries();
        let e = e_stringy(&g, &StringyMode::Local).unwrap();
        let expected = parse_ratexpr("(-2*w^2)/(w^2 + 2*w + 1)").unwrap();
        assert_eq!(e, expected);
        assert_eq!(stringy_euler(&g, &StringyMode::Local).unwrap(), rat(-1, 2));
        // Closed form: m = 2, neighbor coefficients −3 and 1.
        let closed = curve_contribution_closed(2, &[rat_int(-3), rat_int(1)]).unwrap();
        assert_eq!(e, closed);
    }

    #[test]
    fn lump_perturbation_independence() {
        let g = lumped_minus_two_between_boundaries();
        let reference = e_stringy(&g, &StringyMode::Local).unwrap();
        for pairs in [
            vec![
                ("E".to_string(), rat_int(1)),
                ("B0".to_string(), rat_int(0)),
                ("B1".to_string(), rat_int(2)),
            ],
            vec![
                ("E".to_string(), rat_int(2)),
                ("B0".to_string(), rat(3, 2)),
                ("B1".to_string(), rat(5, 2)),
            ],
            vec![
                ("E".to_string(), rat(1, 3)),
                ("B0".to_string(), rat(7, 5)),
                ("B1".to_string(), rat(-11, 15)),
            ],
        ] {
            let p = Perturbation::from_pairs(&g, &pairs).unwrap();
            assert_eq!(e_stringy_with(&g, &StringyMode::Local, &p).unwrap(), reference);
        }
        // A non-null direction is rejected.
        assert!(matches!(
            Perturbation::from_pairs(&g, &[("E".into(), rat_int(1))]),
            Err(StringyError::PerturbationNotNull(_))
        ));
    }

    #[test]
    fn one_node_minus_one_curve() {
        // t of self-intersection −m with a single boundary neighbor of
        // coefficient −2 solves to a_t = −1 and contributes −m·w.
        for m in [1i64, 2, 3] {
            let g = ResolutionGraph::new(
                vec![
                    Curve::exceptional("T", 0, -m),
                    Curve::boundary_full("B", 0, -1, rat_int(-2)),
                ],
                &[("T".into(), "B".into())],
            )
            .unwrap()
            .solve_discrepancies()
            .unwrap();
            assert_eq!(*g.coeff(0).unwrap(), rat_int(-1));
            let e = e_stringy(&g, &StringyMode::Local).unwrap();
            assert_eq!(e, parse_ratexpr(&format!("-{}*u*v", m)).unwrap());
            let closed = curve_contribution_closed(m, &[rat_int(-2)]).unwrap();
            assert_eq!(e, closed);
        }
    }

    #[test]
    fn closed_form_matches_direct_sum_when_regular() {
        // Middle curve of a −2 chain: a_t = 0, both neighbors 0, m = 2:
        // (w−1) + 1 + 1 = w + 1.
        let c = curve_contribution_closed(2, &[rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(c, parse_ratexpr("u*v + 1").unwrap());
        // Generic perturbed-limit agreement: m = 3, neighbors 1/2 and
        // −5/2 force a_t = −1.
        let g = ResolutionGraph::new(
            vec![
                Curve::exceptional("T", 0, -3),
                Curve::boundary_full("B0", 0, -1, rat(1, 2)),
                Curve::boundary_full("B1", 0, -1, rat(-5, 2)),
            ],
            &[("T".into(), "B0".into()), ("T".into(), "B1".into())],
        )
        .unwrap()
        .solve_discrepancies()
        .unwrap();
        assert_eq!(*g.coeff(0).unwrap(), rat_int(-1));
        let e = e_stringy(&g, &StringyMode::Local).unwrap();
        let closed = curve_contribution_closed(3, &[rat(1, 2), rat(-5, 2)]).unwrap();
        assert_eq!(e, closed);
    }

    #[test]
    fn global_mode_plane_with_line() {
        // A line in the plane: E(P²) = 1 + w + w²; with coefficient 0 the
        // pair is trivial and the global invariant is E(P²) itself.
        let ambient = parse_ratexpr("1 + u*v + u^2*v^2").unwrap();
        let g = ResolutionGraph::new(
            vec![Curve::boundary_full("L", 0, 1, rat_int(0))],
            &[],
        )
        .unwrap();
        let e = e_stringy(&g, &StringyMode::Global(ambient.clone())).unwrap();
        assert_eq!(e, ambient);
        // With coefficient c the line's stratum is rescaled.
        let g2 = ResolutionGraph::new(
            vec![Curve::boundary_full("L", 0, 1, rat(1, 2))],
            &[],
        )
        .unwrap();
        let e2 = e_stringy(&g2, &StringyMode::Global(ambient.clone())).unwrap();
        let expected = ambient - parse_ratexpr("u*v + 1").unwrap()
            + parse_ratexpr("(u*v + 1)*(w - 1)/(w^(3/2) - 1)").unwrap();
        assert_eq!(e2, expected);
    }

    #[test]
    fn functoriality_local_node_and_point() {
        let two_threes = ResolutionGraph::new(
            vec![
                Curve::exceptional("E0", 0, -3),
                Curve::exceptional("E1", 0, -3),
            ],
            &[("E0".into(), "E1".into())],
        )
        .unwrap()
        .solve_discrepancies()
        .unwrap();
        verify_functoriality(
            &two_threes,
            &BlowupSite::Node("E0".into(), "E1".into()),
            "F",
            &StringyMode::Local,
        )
        .unwrap();
        verify_functoriality(
            &two_threes,
            &BlowupSite::PointOn("E0".into()),
            "F",
            &StringyMode::Local,
        )
        .unwrap();
        let a2 = chain_of_minus_two(2);
        verify_functoriality(
            &a2,
            &BlowupSite::Node("E0".into(), "E1".into()),
            "F",
            &StringyMode::Local,
        )
        .unwrap();
    }

    #[test]
    fn functoriality_global_free_point() {
        let ambient = parse_ratexpr("1 + u*v + u^2*v^2").unwrap();
        let g = ResolutionGraph::new(
            vec![Curve::boundary_full("L", 0, 1, rat(1, 3))],
            &[],
        )
        .unwrap();
        let mode = StringyMode::Global(ambient);
        verify_functoriality(&g, &BlowupSite::FreePoint, "F", &mode).unwrap();
        verify_functoriality(&g, &BlowupSite::PointOn("L".into()), "F", &mode).unwrap();
    }

    #[test]
    fn minus_one_boundary_is_global_only() {
        let g = ResolutionGraph::new(
            vec![
                Curve::exceptional("E", 0, -2),
                Curve::boundary_full("B", 0, -1, rat_int(-1)),
            ],
            &[("E".into(), "B".into())],
        )
        .unwrap()
        .solve_discrepancies()
        .unwrap();
        assert!(matches!(
            e_stringy(&g, &StringyMode::Local),
            Err(StringyError::BoundaryMinusOneLocal(_))
        ));
    }

    #[test]
    fn adjacent_minus_one_curves_rejected() {
        let g = ResolutionGraph::new(
            vec![
                Curve::boundary_full("B0", 0, -2, rat_int(-1)),
                Curve::boundary_full("B1", 0, -2, rat_int(-1)),
            ],
            &[("B0".into(), "B1".into())],
        )
        .unwrap();
        let ambient = parse_ratexpr("1 + 2*u*v + u^2*v^2").unwrap();
        assert!(matches!(
            e_stringy(&g, &StringyMode::Global(ambient)),
            Err(StringyError::AdjacentMinusOneCurves(_, _))
        ));
    }

    #[test]
    fn chi_y_of_chain() {
        // n·uv + 1 specializes to n·y + 1.
        let chi = stringy_chi_y(&chain_of_minus_two(3), &StringyMode::Local).unwrap();
        assert_eq!(chi, parse_ratexpr("3*y + 1").unwrap());
    }
}
