//! Amoebas of subvarieties of the algebraic torus `(ℂ*)ⁿ`.
//!
//! * [`algebra`]: exact Gaussian-rational scalars, Laurent polynomials, Newton
//!   polytopes and saturated integer lattices.
//! * [`line`]: parametrized lines, their ends, real/complex classification,
//!   reduction to the smallest affine subtorus, and logarithmic limit rays.
//! * [`semialg`]: the semi-algebraic description of the algebraic amoeba of a
//!   line (planar triangle inequalities plus quadric/quartic surfaces),
//!   membership, and fiber solving.
//! * [`sampling`]: point clouds, plane-curve scans, rasters, numeric amoeba
//!   dimension, coamoeba samples.
//! * [`basis`]: lopsidedness, hypersurface amoeba membership, independent
//!   complete intersections, and grid verification of amoeba bases.
//! * [`io`]: graymap, CSV and JSON document formats.

pub mod algebra;
pub mod basis;
pub mod io;
pub mod line;
pub mod sampling;
pub mod semialg;

pub use algebra::{GaussianRational, IntegerLattice, LaurentPolynomial, NewtonPolytope, Scalar};
pub use line::{LineCoordinate, ParametricLine};
pub use semialg::LineAmoebaDescription;
