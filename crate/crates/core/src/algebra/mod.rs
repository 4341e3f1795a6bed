//! Exact scalars, Laurent polynomials, Newton polytopes and integer lattices.

mod lattice;
mod laurent;
mod polytope;
mod scalar;

pub use lattice::{affinely_independent, polytope_lattice, saturated_span, IndependenceReport, IntegerLattice};
pub(crate) use laurent::monomial;
pub use laurent::{LaurentPolynomial, Term};
pub use polytope::{extreme_points, in_convex_hull, newton_polytope, NewtonPolytope};
pub use scalar::{format_rational, parse_rational, rational_to_f64, GaussianRational, Rational, Scalar};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AlgebraError {
    #[error("zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyPointSet,
    #[error("empty list of polytopes")]
    EmptyPolytopeList,
    #[error("lattice basis entry does not fit in 64 bits")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}
