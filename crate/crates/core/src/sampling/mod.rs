//! Numeric amoeba machinery: point clouds of `|V|` and of the coamoeba,
//! plane-curve fiber scans, rasters of `Log` images, and numeric dimension.

mod cloud;
mod dimension;
mod raster;
pub mod roots;

pub use cloud::{
    coamoeba_point, log_grid, principal_arg, sample_coamoeba, sample_line, sample_parameters, sample_plane_curve,
    CloudMode, PointCloud, SamplingStrategy, END_AVOIDANCE,
};
pub use dimension::{
    amoeba_dimension, diminishing_check, log_jacobian, DimensionReport, MonomialOrbit, Parametrization, Product,
    RANK_TOL,
};
pub use raster::{rasterize, rasterize_log_points, RasterGrid};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SamplingError {
    #[error("plane-curve scan needs a polynomial in 2 variables, got {0}")]
    NotPlaneCurve(usize),
    #[error("polynomial does not depend on the second variable")]
    IndependentOfSecondVariable,
    #[error("grid moduli must be positive and finite, got {0}")]
    InvalidModulus(f64),
    #[error("window must satisfy lo < hi on every axis and resolution must be positive")]
    DegenerateWindow,
    #[error("grid has too many cells")]
    GridTooLarge,
    #[error("grids differ in window or resolution")]
    ShapeMismatch,
    #[error("invalid axis selection")]
    InvalidAxes,
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot rasterize an empty cloud")]
    EmptyCloud,
    #[error("rasterization needs a moduli cloud")]
    WrongMode,
    #[error("no smooth probe found")]
    NoSmoothProbe,
    #[error("inconsistent dimensions (dimT={dim_t}, dimV={dim_v}, dimW={dim_w}, n={n})")]
    InconsistentDimensions { dim_t: usize, dim_v: usize, dim_w: usize, n: usize },
}
