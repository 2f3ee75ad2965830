//! Exact computation of stringy and orbifold invariants of normal surface
//! singularities from combinatorial resolution data.
//!
//! Everything in this crate is exact: coefficients are arbitrary-precision
//! rationals, power products carry rational exponents on per-variable grids,
//! and every "limit" is a symbolic cancellation, never a numerical one.
//!
//! # Layout
//!
//! * [`exact`] — the arithmetic substrate: Laurent polynomials in the formal
//!   variables `u, v, s, t, y, z` with rational exponents, canonical rational
//!   expressions (reduced fractions of Laurent polynomials), a one-sided
//!   limit engine for specializing a variable to `1`, and the geometric-series
//!   factors that all stringy computations are assembled from.
//! * [`dualgraph`] — decorated dual graphs of good resolutions: curve records,
//!   intersection matrices, negative-definiteness, discrepancy solving,
//!   singularity classification, admissibility, and abstract blow-ups.
//! * [`stringy`] — stringy E-functions of resolved surface germs and pairs,
//!   including the perturbation treatment of coefficient `-1` curves, closed
//!   forms for their contributions, Euler and χ_y specializations, and a
//!   blow-up functoriality verifier.
//! * [`orbifold`] — orbifold E-functions of quotient data: fixed-curve,
//!   isolated-fixed-point and rotation sectors, fermionic shifts, and the
//!   comparison against the stringy E-function of the quotient (the McKay
//!   correspondence check, plus cyclic-cover coefficient transport).
//! * [`toric`] — complete 2d fans: validation, self-intersections,
//!   log Calabi–Yau certificates, equivariant blow-ups, the local model fans
//!   attached to coefficient `-1` curves, and translation to dual graphs.
//! * [`elliptic`] — q-expansions of elliptic genera of pairs: Jacobi-theta
//!   building blocks, the smooth-pair formula integrated over a toric surface,
//!   torus-equivariant localization with a finite abelian group twist, and
//!   the rigidity checks for log Calabi–Yau pairs.
//! * [`io`] — the JSON schemas for graphs, orbifold data and fans shared by
//!   the command-line tool and the test corpus.
//!
//! # Conventions
//!
//! * `w` abbreviates the product `u·v`; text input and output use `w`
//!   whenever the `u` and `v` exponents agree.
//! * Curve coefficients are the discrepancy-style coefficients `a_i` with
//!   log-terminal meaning `a_i > -1`; the geometric factor attached to a
//!   coefficient is `(uv - 1)/((uv)^(a+1) - 1)`.
//! * All public functions that can fail return `Result`; nothing panics on
//!   user input.

pub mod dualgraph;
pub mod elliptic;
pub mod exact;
pub mod io;
pub mod orbifold;
pub mod stringy;
pub mod toric;

pub use exact::{
    chi_y_specialize, euler_specialize, geometric_factor, limit_at_one, limit_at_one_quotient,
    EExpr, ExactError, LaurentPoly, RatExpr, Rational, Var,
};

pub use dualgraph::{Curve, CurveId, GraphError, ResolutionGraph};
pub use elliptic::{
    ell_smooth_pair, ell_toric_equivariant, rigidity_check, EllipticError, QSeries,
    RigidityReport, TorusSubgroup,
};
pub use toric::{Fan2D, ToricError, ToricPair};
