//! Decorated dual graphs of good resolutions of normal surface
//! singularities (and more general simple-normal-crossing pairs on smooth
//! surfaces).
//!
//! A [`ResolutionGraph`] records, per curve: genus, self-intersection, a
//! role (exceptional component versus strict transform of a boundary
//! divisor), and a coefficient — either already known (boundary data) or
//! to be solved (exceptional discrepancies). Nodes are unordered pairs of
//! distinct curves; a pair may appear several times (tangential
//! configurations are excluded, multiple transverse intersections are not).
//!
//! # Conventions
//!
//! * The adjunction relation on a smooth surface, `K·E = 2g(E) − 2 − E²`,
//!   turns the defining condition `(K − Σ a_i D_i)·E_j = 0` for every
//!   exceptional `E_j` into the linear system solved by
//!   [`ResolutionGraph::solve_discrepancies`].
//! * Coefficients are the discrepancy-style `a_i` (log-terminal means
//!   `a_i > −1` for all curves).
//! * An abstract blow-up ([`ResolutionGraph::blowup`]) transports
//!   coefficients by `a_new = 1 + Σ_{centre} a_i` and updates
//!   self-intersections of the curves through the centre.

use crate::exact::{rat_int, ExactError, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Identifier of a curve in a graph (unique within the graph).
pub type CurveId = String;

/// Role of a curve in the configuration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    /// A component of the exceptional fiber of the resolution.
    Exceptional,
    /// The strict transform of a boundary divisor through the singularity.
    StrictTransform,
}

/// A coefficient slot: boundary curves come with values, exceptional
/// curves start unsolved.
#[derive(Clone, PartialEq, Debug)]
pub enum Coefficient {
    Known(Rational),
    Unsolved,
}

/// One decorated curve.
#[derive(Clone, PartialEq, Debug)]
pub struct Curve {
    pub id: CurveId,
    pub genus: u32,
    pub self_int: i64,
    pub role: Role,
    pub coeff: Coefficient,
}

impl Curve {
    /// An exceptional curve with unsolved coefficient.
    pub fn exceptional(id: &str, genus: u32, self_int: i64) -> Self {
        Curve {
            id: id.to_string(),
            genus,
            self_int,
            role: Role::Exceptional,
            coeff: Coefficient::Unsolved,
        }
    }

    /// A boundary (strict-transform) curve with a known coefficient.
    pub fn boundary(id: &str, coeff: Rational) -> Self {
        Curve {
            id: id.to_string(),
            genus: 0,
            self_int: 0,
            role: Role::StrictTransform,
            coeff: Coefficient::Known(coeff),
        }
    }

    /// Same, with explicit genus and self-intersection (needed when the
    /// boundary curve participates in perturbation constraints).
    pub fn boundary_full(id: &str, genus: u32, self_int: i64, coeff: Rational) -> Self {
        Curve {
            id: id.to_string(),
            genus,
            self_int,
            role: Role::StrictTransform,
            coeff: Coefficient::Known(coeff),
        }
    }
}

/// Errors from graph construction, solving, and rewriting.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("duplicate curve id {0:?}")]
    DuplicateId(CurveId),
    #[error("unknown curve id {0:?}")]
    UnknownCurve(CurveId),
    #[error("node joins curve {0:?} to itself; components must be smooth")]
    SelfNode(CurveId),
    #[error("coefficient of curve {0:?} is not solved")]
    UnsolvedCoefficient(CurveId),
    #[error("exceptional intersection matrix is singular")]
    SingularMatrix,
    #[error("exceptional intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("blow-up at a generic point of the coefficient -1 curve {0:?} is not allowed")]
    BlowupAtMinusOneCurve(CurveId),
    #[error("graph is not admissible: {0}")]
    NotAdmissible(String),
    #[error("no node joins {0:?} and {1:?}")]
    MissingNode(CurveId, CurveId),
    #[error("invalid graph data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Log-discrepancy trichotomy of the configuration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SingularityClass {
    /// Every coefficient is greater than −1.
    LogTerminal,
    /// Every coefficient is at least −1 and some equals −1.
    StrictlyLogCanonical,
    /// Some coefficient is below −1.
    NotLogCanonical,
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SingularityClass::LogTerminal => "log-terminal",
            SingularityClass::StrictlyLogCanonical => "strictly-log-canonical",
            SingularityClass::NotLogCanonical => "not-log-canonical",
        };
        write!(f, "{}", s)
    }
}

/// Where to blow up.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BlowupSite {
    /// A point away from the configuration.
    FreePoint,
    /// A generic point of one curve.
    PointOn(CurveId),
    /// A node of the configuration (one copy, if several run between the
    /// same pair).
    Node(CurveId, CurveId),
}

/// A decorated dual graph.
#[derive(Clone, PartialEq, Debug)]
pub struct ResolutionGraph {
    curves: Vec<Curve>,
    /// Index pairs `(i, j)` with `i < j`; multiset.
    nodes: Vec<(usize, usize)>,
}

impl ResolutionGraph {
    /// Builds a graph, checking id uniqueness and node endpoints.
    pub fn new(curves: Vec<Curve>, nodes: &[(CurveId, CurveId)]) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for c in &curves {
            if !seen.insert(c.id.clone()) {
                return Err(GraphError::DuplicateId(c.id.clone()));
            }
        }
        let mut g = ResolutionGraph {
            curves,
            nodes: Vec::new(),
        };
        for (a, b) in nodes {
            let i = g.index_of(a)?;
            let j = g.index_of(b)?;
            if i == j {
                return Err(GraphError::SelfNode(a.clone()));
            }
            g.nodes.push((i.min(j), i.max(j)));
        }
        g.nodes.sort_unstable();
        Ok(g)
    }

    /// The curves, in input order.
    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    /// The nodes as index pairs (`i < j`), sorted.
    pub fn node_indices(&self) -> &[(usize, usize)] {
        &self.nodes
    }

    /// Index lookup by id.
    pub fn index_of(&self, id: &str) -> Result<usize, GraphError> {
        self.curves
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| GraphError::UnknownCurve(id.to_string()))
    }

    /// Solved coefficient of curve `i`.
    pub fn coeff(&self, i: usize) -> Result<&Rational, GraphError> {
        match &self.curves[i].coeff {
            Coefficient::Known(r) => Ok(r),
            Coefficient::Unsolved => {
                Err(GraphError::UnsolvedCoefficient(self.curves[i].id.clone()))
            }
        }
    }

    /// Indices of exceptional curves, in input order.
    pub fn exceptional_indices(&self) -> Vec<usize> {
        (0..self.curves.len())
            .filter(|&i| self.curves[i].role == Role::Exceptional)
            .collect()
    }

    /// Intersection number `D_i · D_j` (self-intersection on the diagonal,
    /// node multiplicity off it).
    pub fn pair_intersection(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return self.curves[i].self_int;
        }
        let key = (i.min(j), i.max(j));
        self.nodes.iter().filter(|&&n| n == key).count() as i64
    }

    /// Incident node count of curve `i` (with multiplicity): the number of
    /// points of the curve lying on the rest of the configuration.
    pub fn node_count(&self, i: usize) -> usize {
        self.nodes
            .iter()
            .filter(|&&(a, b)| a == i || b == i)
            .count()
    }

    /// Neighbor indices of curve `i`, with multiplicity, ascending.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.nodes {
            if a == i {
                out.push(b);
            } else if b == i {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// The exceptional intersection matrix, indexed by
    /// [`ResolutionGraph::exceptional_indices`].
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let exc = self.exceptional_indices();
        exc.iter()
            .map(|&i| exc.iter().map(|&j| self.pair_intersection(i, j)).collect())
            .collect()
    }

    /// Negative-definiteness of the exceptional intersection matrix, by
    /// alternation of the leading principal minors (exact arithmetic).
    pub fn is_negative_definite(&self) -> bool {
        let m = self.intersection_matrix();
        let n = m.len();
        for k in 1..=n {
            let sub: Vec<Vec<Rational>> = (0..k)
                .map(|i| (0..k).map(|j| rat_int(m[i][j])).collect())
            .collect();
            let d = determinant(sub);
            let sign_ok = if k % 2 == 0 {
                d.is_positive()
            } else {
                d.is_negative()
            };
            if !sign_ok {
                return false;
            }
        }
        true
    }

    /// Whether the exceptional curves form a connected configuration
    /// (vacuously true when there are none).
    pub fn exceptional_connected(&self) -> bool {
        let exc = self.exceptional_indices();
        if exc.is_empty() {
            return true;
        }
        let excset: BTreeSet<usize> = exc.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut stack = vec![exc[0]];
        while let Some(i) = stack.pop() {
            if !seen.insert(i) {
                continue;
            }
            for n in self.neighbors(i) {
                if excset.contains(&n) && !seen.contains(&n) {
                    stack.push(n);
                }
            }
        }
        seen.len() == exc.len()
    }

    /// Solves the exceptional coefficients from adjunction:
    /// for every exceptional `E_j`,
    /// `Σ_i a_i (D_i·E_j) = 2g_j − 2 − E_j² − Σ_boundary c_i (D_i·E_j)`.
    ///
    /// Returns a copy of the graph with every coefficient known. Fails when
    /// a boundary coefficient is missing or the exceptional matrix is
    /// singular.
    pub fn solve_discrepancies(&self) -> Result<ResolutionGraph, GraphError> {
        let exc = self.exceptional_indices();
        // Boundary contributions need known coefficients.
        let mut rhs: Vec<Rational> = Vec::with_capacity(exc.len());
        for &j in &exc {
            let c = &self.curves[j];
            let mut r = rat_int(2 * c.genus as i64 - 2 - c.self_int);
            for (i, other) in self.curves.iter().enumerate() {
                if other.role == Role::StrictTransform {
                    let m = self.pair_intersection(i, j);
                    if m != 0 {
                        let ci = match &other.coeff {
                            Coefficient::Known(x) => x.clone(),
                            Coefficient::Unsolved => {
                                return Err(GraphError::UnsolvedCoefficient(other.id.clone()))
                            }
                        };
                        r -= ci * rat_int(m);
                    }
                }
            }
            rhs.push(r);
        }
        let mat: Vec<Vec<Rational>> = exc
            .iter()
            .map(|&j| {
                exc.iter()
                    .map(|&i| rat_int(self.pair_intersection(i, j)))
                    .collect()
            })
            .collect();
        let sol = solve_linear(mat, rhs).ok_or(GraphError::SingularMatrix)?;
        let mut out = self.clone();
        for (pos, &j) in exc.iter().enumerate() {
            out.curves[j].coeff = Coefficient::Known(sol[pos].clone());
        }
        Ok(out)
    }

    /// Classifies the configuration by its coefficients (all of them:
    /// exceptional discrepancies and boundary multiplicities alike).
    pub fn classify(&self) -> Result<SingularityClass, GraphError> {
        let minus_one = -Rational::one();
        let mut saw_minus_one = false;
        for i in 0..self.curves.len() {
            let a = self.coeff(i)?;
            if *a < minus_one {
                return Ok(SingularityClass::NotLogCanonical);
            }
            if *a == minus_one {
                saw_minus_one = true;
            }
        }
        Ok(if saw_minus_one {
            SingularityClass::StrictlyLogCanonical
        } else {
            SingularityClass::LogTerminal
        })
    }

    /// Admissibility of the configuration for the limit calculus:
    ///
    /// * every coefficient −1 curve is rational, meets the rest of the
    ///   configuration in at most two nodes, its neighbors are distinct,
    ///   and none of them has coefficient −1;
    /// * every exceptional curve with coefficient 0 has self-intersection
    ///   at most −2.
    pub fn check_admissible(&self) -> Result<(), GraphError> {
        let minus_one = -Rational::one();
        for i in 0..self.curves.len() {
            let a = self.coeff(i)?.clone();
            let c = &self.curves[i];
            if a == minus_one {
                if c.genus != 0 {
                    return Err(GraphError::NotAdmissible(format!(
                        "coefficient -1 curve {:?} has genus {}",
                        c.id, c.genus
                    )));
                }
                let nbrs = self.neighbors(i);
                if nbrs.len() > 2 {
                    return Err(GraphError::NotAdmissible(format!(
                        "coefficient -1 curve {:?} meets {} nodes (max 2)",
                        c.id,
                        nbrs.len()
                    )));
                }
                if nbrs.len() == 2 && nbrs[0] == nbrs[1] {
                    return Err(GraphError::NotAdmissible(format!(
                        "coefficient -1 curve {:?} meets a neighbor twice",
                        c.id
                    )));
                }
                for &n in &nbrs {
                    if *self.coeff(n)? == minus_one {
                        return Err(GraphError::NotAdmissible(format!(
                            "coefficient -1 curves {:?} and {:?} are adjacent",
                            c.id, self.curves[n].id
                        )));
                    }
                }
            }
            if a.is_zero() && c.role == Role::Exceptional && c.self_int > -2 {
                return Err(GraphError::NotAdmissible(format!(
                    "coefficient 0 exceptional curve {:?} has self-intersection {} > -2",
                    c.id, c.self_int
                )));
            }
        }
        Ok(())
    }

    /// Resets every exceptional coefficient to unsolved, for an
    /// independent re-run of [`ResolutionGraph::solve_discrepancies`].
    pub fn strip_exceptional_coefficients(&mut self) {
        for c in &mut self.curves {
            if c.role == Role::Exceptional {
                c.coeff = Coefficient::Unsolved;
            }
        }
    }

    /// Abstract blow-up at `site`, inserting a new exceptional curve named
    /// `new_id` with genus 0, self-intersection −1, and coefficient
    /// `1 + Σ_centre a_i`. Curves through the centre lose 1 from their
    /// self-intersection; a blown-up node is replaced by two nodes through
    /// the new curve.
    pub fn blowup(&self, site: &BlowupSite, new_id: &str) -> Result<ResolutionGraph, GraphError> {
        if self.curves.iter().any(|c| c.id == new_id) {
            return Err(GraphError::DuplicateId(new_id.to_string()));
        }
        let mut out = self.clone();
        let new_index = out.curves.len();
        let coeff_sum = match site {
            BlowupSite::FreePoint => Rational::zero(),
            BlowupSite::PointOn(id) => {
                let i = self.index_of(id)?;
                let a = self.coeff(i)?.clone();
                if a == -Rational::one() {
                    return Err(GraphError::BlowupAtMinusOneCurve(id.clone()));
                }
                out.curves[i].self_int -= 1;
                out.nodes.push((i.min(new_index), i.max(new_index)));
                a
            }
            BlowupSite::Node(p, q) => {
                let i = self.index_of(p)?;
                let j = self.index_of(q)?;
                let key = (i.min(j), i.max(j));
                let pos = out
                    .nodes
                    .iter()
                    .position(|&n| n == key)
                    .ok_or_else(|| GraphError::MissingNode(p.clone(), q.clone()))?;
                out.nodes.remove(pos);
                out.curves[i].self_int -= 1;
                out.curves[j].self_int -= 1;
                out.nodes.push((i.min(new_index), i.max(new_index)));
                out.nodes.push((j.min(new_index), j.max(new_index)));
                self.coeff(i)?.clone() + self.coeff(j)?.clone()
            }
        };
        out.curves.push(Curve {
            id: new_id.to_string(),
            genus: 0,
            self_int: -1,
            role: Role::Exceptional,
            coeff: Coefficient::Known(coeff_sum + Rational::one()),
        });
        out.nodes.sort_unstable();
        Ok(out)
    }
}

/// Exact determinant by fraction-full Gaussian elimination.
fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let pivot = match pivot {
            None => return Rational::zero(),
            Some(p) => p,
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= p.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Solves `M x = b` exactly; `None` when `M` is singular.
fn solve_linear(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        b.swap(pivot, col);
        let p = m[col][col].clone();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
            let sub = &f * &b[col];
            b[r] -= sub;
        }
    }
    Some(
        (0..n)
            .map(|i| &b[i] / &m[i][i])
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// One rational curve of self-intersection −d, genus (d−1)(d−2)/2:
    /// the resolution graph of the cone over a smooth plane curve of
    /// degree d.
    pub(crate) fn cone_graph(d: i64) -> ResolutionGraph {
        let g = ((d - 1) * (d - 2) / 2) as u32;
        ResolutionGraph::new(vec![Curve::exceptional("C", g, -d)], &[]).unwrap()
    }

    fn chain_of_minus_two(n: usize) -> ResolutionGraph {
        let curves = (0..n)
            .map(|i| Curve::exceptional(&format!("E{}", i), 0, -2))
            .collect();
        let nodes: Vec<(CurveId, CurveId)> = (0..n - 1)
            .map(|i| (format!("E{}", i), format!("E{}", i + 1)))
            .collect();
        ResolutionGraph::new(curves, &nodes).unwrap()
    }

    #[test]
    fn cone_discrepancies() {
        for d in 2..=8 {
            let solved = cone_graph(d).solve_discrepancies().unwrap();
            assert_eq!(*solved.coeff(0).unwrap(), rat_int(2 - d));
        }
    }

    #[test]
    fn chain_discrepancies_vanish() {
        let solved = chain_of_minus_two(5).solve_discrepancies().unwrap();
        for i in 0..5 {
            assert!(solved.coeff(i).unwrap().is_zero());
        }
        assert_eq!(
            solved.classify().unwrap(),
            SingularityClass::LogTerminal
        );
        solved.check_admissible().unwrap();
    }

    #[test]
    fn two_minus_three_curves() {
        let g = ResolutionGraph::new(
            vec![
                Curve::exceptional("E0", 0, -3),
                Curve::exceptional("E1", 0, -3),
            ],
            &[("E0".into(), "E1".into())],
        )
        .unwrap();
        let solved = g.solve_discrepancies().unwrap();
        assert_eq!(*solved.coeff(0).unwrap(), rat(-1, 2));
        assert_eq!(*solved.coeff(1).unwrap(), rat(-1, 2));
    }

    #[test]
    fn negative_definiteness() {
        assert!(chain_of_minus_two(4).is_negative_definite());
        assert!(cone_graph(5).is_negative_definite());
        let bad = ResolutionGraph::new(vec![Curve::exceptional("E", 0, 0)], &[]).unwrap();
        assert!(!bad.is_negative_definite());
        assert!(bad.solve_discrepancies().is_err());
    }

    #[test]
    fn classification_of_cones() {
        // d = 2: coefficient 0, log-terminal; d = 3: coefficient −1,
        // strictly log canonical; d ≥ 4: below −1.
        assert_eq!(
            cone_graph(2).solve_discrepancies().unwrap().classify().unwrap(),
            SingularityClass::LogTerminal
        );
        assert_eq!(
            cone_graph(3).solve_discrepancies().unwrap().classify().unwrap(),
            SingularityClass::StrictlyLogCanonical
        );
        assert_eq!(
            cone_graph(5).solve_discrepancies().unwrap().classify().unwrap(),
            SingularityClass::NotLogCanonical
        );
    }

    #[test]
    fn admissibility_rejects_high_genus_minus_one() {
        // Cone over a cubic: genus 1 curve with coefficient −1.
        let solved = cone_graph(3).solve_discrepancies().unwrap();
        assert!(matches!(
            solved.check_admissible(),
            Err(GraphError::NotAdmissible(_))
        ));
    }

    #[test]
    fn blowup_of_node_transports_coefficients() {
        let g = ResolutionGraph::new(
            vec![
                Curve::exceptional("E0", 0, -3),
                Curve::exceptional("E1", 0, -3),
            ],
            &[("E0".into(), "E1".into())],
        )
        .unwrap()
        .solve_discrepancies()
        .unwrap();
        let blown = g
            .blowup(
                &BlowupSite::Node("E0".into(), "E1".into()),
                "F",
            )
            .unwrap();
        // Transported coefficient: 1 + (−1/2) + (−1/2) = 0.
        let f = blown.index_of("F").unwrap();
        assert_eq!(*blown.coeff(f).unwrap(), rat_int(0));
        assert_eq!(blown.curves()[0].self_int, -4);
        assert_eq!(blown.curves()[1].self_int, -4);
        assert_eq!(blown.curves()[f].self_int, -1);
        // Re-solving from scratch reproduces the transported values.
        let mut fresh = blown.clone();
        for c in &mut fresh.curves {
            if c.role == Role::Exceptional {
                c.coeff = Coefficient::Unsolved;
            }
        }
        let resolved = fresh.solve_discrepancies().unwrap();
        for i in 0..resolved.curves().len() {
            assert_eq!(resolved.coeff(i).unwrap(), blown.coeff(i).unwrap());
        }
    }

    #[test]
    fn blowup_site_errors() {
        let g = chain_of_minus_two(2).solve_discrepancies().unwrap();
        assert!(matches!(
            g.blowup(&BlowupSite::Node("E0".into(), "E0".into()), "F"),
            Err(GraphError::MissingNode(_, _)) | Err(GraphError::SelfNode(_))
        ));
        assert!(matches!(
            g.blowup(&BlowupSite::PointOn("nope".into()), "F"),
            Err(GraphError::UnknownCurve(_))
        ));
        assert!(matches!(
            g.blowup(&BlowupSite::PointOn("E0".into()), "E1"),
            Err(GraphError::DuplicateId(_))
        ));
    }

    #[test]
    fn free_blowup_adds_isolated_curve() {
        let g = chain_of_minus_two(2).solve_discrepancies().unwrap();
        let blown = g.blowup(&BlowupSite::FreePoint, "F").unwrap();
        let f = blown.index_of("F").unwrap();
        assert_eq!(*blown.coeff(f).unwrap(), rat_int(1));
        assert_eq!(blown.node_count(f), 0);
        assert!(!blown.exceptional_connected());
    }

    #[test]
    fn boundary_forced_chain_solves_to_minus_one() {
        // Exceptional −2 curve between boundary curves with coefficients
        // −3 and 1: the solved coefficient is exactly −1.
        let g = ResolutionGraph::new(
            vec![
                Curve::exceptional("E", 0, -2),
                Curve::boundary_full("B0", 0, -1, rat_int(-3)),
                Curve::boundary_full("B1", 0, -1, rat_int(1)),
            ],
            &[("E".into(), "B0".into()), ("E".into(), "B1".into())],
        )
        .unwrap();
        let solved = g.solve_discrepancies().unwrap();
        assert_eq!(*solved.coeff(0).unwrap(), rat_int(-1));
        solved.check_admissible().unwrap();
        assert_eq!(
            solved.classify().unwrap(),
            SingularityClass::NotLogCanonical
        );
    }
}
