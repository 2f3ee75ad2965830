//! Complete smooth fans in the plane and toric boundary pairs.
//!
//! A [`Fan2D`] is the combinatorial skeleton of a smooth complete toric
//! surface: primitive integer rays in strict counterclockwise order, every
//! adjacent pair a basis of the lattice (determinant one), going exactly once
//! around the origin. From the fan alone follow the self-intersection numbers
//! of the boundary curves, the torus-fixed points with their dual coordinate
//! weights, and equivariant blow-ups (star subdivision at a two-dimensional
//! cone).
//!
//! A [`ToricPair`] decorates the rays with rational coefficients. Its key
//! questions: does a character `m` certify the log Calabi–Yau condition
//! `⟨m, v_i⟩ = a_i + 1` for every ray, how do coefficients transport under
//! blow-ups (`a = a_left + a_right + 1`), and what decorated dual graph the
//! boundary cycle induces. [`ToricPair::local_model`] builds the standard
//! compactified model of a coefficient `−1` curve of prescribed
//! self-intersection meeting two transverse divisors.

use crate::dualgraph::{Curve, GraphError, ResolutionGraph};
use crate::exact::{rat_int, EExpr, LaurentPoly, RatExpr, Rational};
use num_traits::One;
use thiserror::Error;

/// Errors from fan validation and toric pair construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToricError {
    /// A complete fan in the plane needs at least three rays.
    #[error("a complete fan needs at least 3 rays, got {0}")]
    TooFewRays(usize),
    /// Ray `index` is the zero vector or has a common coordinate factor.
    #[error("ray {index} = ({x}, {y}) is not primitive")]
    NotPrimitive { index: usize, x: i64, y: i64 },
    /// Rays `index` and `index+1` are not in strict counterclockwise order.
    #[error("rays {index} and {next} do not turn counterclockwise", next = (.index + 1))]
    NotCounterClockwise { index: usize },
    /// Adjacent rays `index`, `index+1` span a singular cone.
    #[error(
        "rays {index} and {next} span a cone of determinant {det}; \
         a smooth fan needs determinant 1",
        next = (.index + 1)
    )]
    NotSmooth { index: usize, det: i64 },
    /// The rays do not wrap around the origin exactly once.
    #[error("the rays do not go around the origin exactly once")]
    NotComplete,
    /// The number of coefficients differs from the number of rays.
    #[error("{rays} rays but {coeffs} coefficients")]
    LengthMismatch { rays: usize, coeffs: usize },
    /// Invalid arguments to a model constructor.
    #[error("invalid model: {0}")]
    InvalidModel(String),
    /// Errors from the induced dual graph.
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A complete smooth fan in `ℤ²`: primitive rays, strictly counterclockwise,
/// adjacent determinants `1`, winding exactly once around the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan2D {
    rays: Vec<[i64; 2]>,
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

#[cfg(test)]
fn dot(m: [i64; 2], v: [i64; 2]) -> i64 {
    m[0] * v[0] + m[1] * v[1]
}

/// `true` when `v` points into the closed upper half plane, with the
/// boundary split so that exactly the directions in `[0, π)` count.
fn upper_half(v: [i64; 2]) -> bool {
    v[1] > 0 || (v[1] == 0 && v[0] > 0)
}

impl Fan2D {
    /// Validates and wraps a ray list.
    pub fn new(rays: Vec<[i64; 2]>) -> Result<Self, ToricError> {
        if rays.len() < 3 {
            return Err(ToricError::TooFewRays(rays.len()));
        }
        for (i, &[x, y]) in rays.iter().enumerate() {
            if (x == 0 && y == 0) || gcd_i64(x, y) != 1 {
                return Err(ToricError::NotPrimitive { index: i, x, y });
            }
        }
        let n = rays.len();
        let mut half_switches = 0usize;
        for i in 0..n {
            let a = rays[i];
            let b = rays[(i + 1) % n];
            let d = det(a, b);
            if d <= 0 {
                return Err(ToricError::NotCounterClockwise { index: i });
            }
            if d != 1 {
                return Err(ToricError::NotSmooth { index: i, det: d });
            }
            if upper_half(a) != upper_half(b) {
                half_switches += 1;
            }
        }
        // Each counterclockwise step turns by less than π, so it crosses the
        // horizontal line at most once; one trip around crosses it twice.
        if half_switches != 2 {
            return Err(ToricError::NotComplete);
        }
        Ok(Fan2D { rays })
    }

    /// The rays, in counterclockwise order.
    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    /// Number of rays (= number of boundary curves).
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    /// Never true for a valid fan; included for interface completeness.
    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// Topological Euler number of the surface: the number of torus-fixed
    /// points, one per two-dimensional cone.
    pub fn euler_number(&self) -> i64 {
        self.rays.len() as i64
    }

    /// E-polynomial of the smooth complete surface:
    /// `(uv)² + (ℓ−2)·uv + 1` for `ℓ` rays.
    pub fn ambient_e(&self) -> EExpr {
        let l = rat_int(self.rays.len() as i64 - 2);
        RatExpr::from_poly(
            LaurentPoly::w_pow(&rat_int(2))
                + LaurentPoly::w_pow(&Rational::one()).scale(&l)
                + LaurentPoly::one_poly(),
        )
    }

    /// Self-intersection numbers `D_i²`, from the ray relation
    /// `v_{i−1} + v_{i+1} = −(D_i²)·v_i`.
    pub fn self_intersections(&self) -> Vec<i64> {
        let n = self.rays.len();
        (0..n)
            .map(|i| {
                let prev = self.rays[(i + n - 1) % n];
                let next = self.rays[(i + 1) % n];
                let v = self.rays[i];
                let sum = [prev[0] + next[0], prev[1] + next[1]];
                // sum is an integer multiple of v because the two adjacent
                // cones are unimodular.
                let k = if v[0] != 0 {
                    debug_assert_eq!(sum[0] % v[0], 0);
                    sum[0] / v[0]
                } else {
                    debug_assert_eq!(sum[1] % v[1], 0);
                    sum[1] / v[1]
                };
                debug_assert_eq!([k * v[0], k * v[1]], sum);
                -k
            })
            .collect()
    }

    /// Noether consistency: `Σ D_i² = 12 − 3ℓ` on a smooth complete surface.
    pub fn noether_check(&self) -> bool {
        let sum: i64 = self.self_intersections().iter().sum();
        sum == 12 - 3 * self.rays.len() as i64
    }

    /// The two-dimensional cones as adjacent ray-index pairs
    /// `(i, i+1 mod ℓ)`, one per torus-fixed point.
    pub fn cones(&self) -> Vec<(usize, usize)> {
        let n = self.rays.len();
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    /// Dual basis of the unimodular cone spanned by `(v, w)`:
    /// `m¹ = (w_2, −w_1)` pairs to `1` with `v` and to `0` with `w`;
    /// `m² = (−v_2, v_1)` the other way around.
    pub fn dual_basis(v: [i64; 2], w: [i64; 2]) -> ([i64; 2], [i64; 2]) {
        debug_assert_eq!(det(v, w), 1);
        ([w[1], -w[0]], [-v[1], v[0]])
    }

    /// Chart data of every torus-fixed point: for the cone on rays
    /// `(v_i, v_{i+1})`, the coordinate with weight vector `m¹` cuts out the
    /// divisor of `v_i` and the coordinate with weight `m²` cuts out the
    /// divisor of `v_{i+1}`.
    pub fn fixed_point_data(&self) -> Vec<FixedPointChart> {
        self.cones()
            .into_iter()
            .map(|(i, j)| {
                let (m1, m2) = Self::dual_basis(self.rays[i], self.rays[j]);
                FixedPointChart {
                    duals: [m1, m2],
                    ray_indices: [i, j],
                }
            })
            .collect()
    }

    /// Star subdivision at the cone `(v_i, v_{i+1})`: inserts the ray
    /// `v_i + v_{i+1}`. Always yields a valid fan.
    pub fn blowup(&self, cone_index: usize) -> Result<Fan2D, ToricError> {
        let n = self.rays.len();
        if cone_index >= n {
            return Err(ToricError::InvalidModel(format!(
                "cone index {cone_index} out of range for {n} rays"
            )));
        }
        let a = self.rays[cone_index];
        let b = self.rays[(cone_index + 1) % n];
        let mut rays = self.rays.clone();
        rays.insert(cone_index + 1, [a[0] + b[0], a[1] + b[1]]);
        Fan2D::new(rays)
    }
}

/// One torus-fixed point of the surface: the dual basis of its cone and the
/// indices of the two boundary curves through it. `duals[k]` is the weight
/// vector of the local coordinate whose zero locus is the divisor of ray
/// `ray_indices[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointChart {
    pub duals: [[i64; 2]; 2],
    pub ray_indices: [usize; 2],
}

/// A fan with one rational coefficient per ray: the toric pair
/// `(X, Σ a_i D_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToricPair {
    fan: Fan2D,
    coeffs: Vec<Rational>,
}

impl ToricPair {
    /// Pairs a fan with boundary coefficients (one per ray).
    pub fn new(fan: Fan2D, coeffs: Vec<Rational>) -> Result<Self, ToricError> {
        if coeffs.len() != fan.len() {
            return Err(ToricError::LengthMismatch {
                rays: fan.len(),
                coeffs: coeffs.len(),
            });
        }
        Ok(ToricPair { fan, coeffs })
    }

    pub fn fan(&self) -> &Fan2D {
        &self.fan
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The log Calabi–Yau certificate: the unique `m ∈ ℚ²` with
    /// `⟨m, v_i⟩ = a_i + 1` on the first cone, provided it works for every
    /// ray; `None` otherwise.
    pub fn cy_certificate(&self) -> Option<(Rational, Rational)> {
        let v0 = self.fan.rays[0];
        let v1 = self.fan.rays[1];
        let c0 = &self.coeffs[0] + Rational::one();
        let c1 = &self.coeffs[1] + Rational::one();
        // det(v0, v1) = 1, so Cramer needs no division.
        let m1 = &c0 * rat_int(v1[1]) - &c1 * rat_int(v0[1]);
        let m2 = &c1 * rat_int(v0[0]) - &c0 * rat_int(v1[0]);
        for (i, v) in self.fan.rays.iter().enumerate() {
            let lhs = &m1 * rat_int(v[0]) + &m2 * rat_int(v[1]);
            if lhs != &self.coeffs[i] + Rational::one() {
                return None;
            }
        }
        Some((m1, m2))
    }

    /// Whether a log Calabi–Yau certificate exists.
    pub fn is_cy(&self) -> bool {
        self.cy_certificate().is_some()
    }

    /// Blow-up at the fixed point of cone `(v_i, v_{i+1})`: the new ray
    /// `v_i + v_{i+1}` carries coefficient `a_i + a_{i+1} + 1`, which
    /// preserves any log Calabi–Yau certificate.
    pub fn blowup(&self, cone_index: usize) -> Result<ToricPair, ToricError> {
        let fan = self.fan.blowup(cone_index)?;
        let n = self.fan.len();
        let a_new =
            &self.coeffs[cone_index] + &self.coeffs[(cone_index + 1) % n] + Rational::one();
        let mut coeffs = self.coeffs.clone();
        coeffs.insert(cone_index + 1, a_new);
        ToricPair::new(fan, coeffs)
    }

    /// The decorated dual graph of the boundary cycle: one rational curve per
    /// ray with its fan self-intersection and pair coefficient, one node per
    /// fixed point. All curves enter as strict transforms (nothing here is
    /// exceptional for a germ resolution); ids are `D0, D1, …` in ray order.
    pub fn to_resolution_graph(&self) -> Result<ResolutionGraph, ToricError> {
        let selfs = self.fan.self_intersections();
        let curves: Vec<Curve> = selfs
            .iter()
            .enumerate()
            .map(|(i, &s)| Curve::boundary_full(&format!("D{i}"), 0, s, self.coeffs[i].clone()))
            .collect();
        let nodes: Vec<(String, String)> = self
            .fan
            .cones()
            .into_iter()
            .map(|(i, j)| (format!("D{i}"), format!("D{j}")))
            .collect();
        Ok(ResolutionGraph::new(curves, &nodes)?)
    }

    /// The standard compactified local model of a coefficient `−1` curve:
    /// on `ℙ¹×ℙ¹` with boundary coefficients `(a₁, a₂, −a₁−2, −a₂−2)`
    /// (so the certificate is `m = (a₁+1, a₂+1)`), blow up the cone
    /// `(e₁, e₂)` once — the new curve `E` has coefficient `a₁ + a₂ + 1 = −1`
    /// — and then `m_t − 1` more times at the fixed point where `E` meets the
    /// latest inserted curve, driving `E²` down to `−m_t`. Requires
    /// `a₁ + a₂ = −2` and `m_t ≥ 1`.
    pub fn local_model(m_t: i64, a1: &Rational, a2: &Rational) -> Result<ToricPair, ToricError> {
        if m_t < 1 {
            return Err(ToricError::InvalidModel(format!(
                "self-intersection parameter must be positive, got {m_t}"
            )));
        }
        if &(a1 + a2) != &rat_int(-2) {
            return Err(ToricError::InvalidModel(format!(
                "coefficients must sum to -2 for a coefficient -1 curve, got {a1} + {a2}"
            )));
        }
        let fan = Fan2D::new(vec![[1, 0], [0, 1], [-1, 0], [0, -1]])?;
        let minus_two = rat_int(-2);
        let coeffs = vec![
            a1.clone(),
            a2.clone(),
            &minus_two - a1,
            &minus_two - a2,
        ];
        let mut pair = ToricPair::new(fan, coeffs)?;
        // First blow-up at cone (e₁, e₂) creates E = (1,1) at index 1.
        pair = pair.blowup(0)?;
        // Each further blow-up at the cone (E, latest ray) = index 1 inserts
        // a ray between them and drops E² by one.
        for _ in 1..m_t {
            pair = pair.blowup(1)?;
        }
        Ok(pair)
    }

    /// Index of the ray of the local model's exceptional-style curve `E`
    /// (the coefficient `−1` curve): always `1` by construction.
    pub fn local_model_center() -> usize {
        1
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
