use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the geometric and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    // numerics
    #[error("no sign change on [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
    #[error("matrix is rank deficient (smallest pivot {pivot:e}, threshold {threshold:e})")]
    RankDeficient { pivot: f64, threshold: f64 },

    // quadrics
    #[error("point is off the surface (residual {residual:e})")]
    OffSurface { residual: f64 },
    #[error("quadric is not an ellipsoid")]
    NotAnEllipsoid,

    // confocal
    #[error("parameter {lambda} hits the focal membrane at index {index}")]
    OnFocalMembrane { lambda: f64, index: usize },
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("coordinate {index} is {value:e}, inside the axis guard {guard:e}")]
    DegeneratePoint { index: usize, value: f64, guard: f64 },
    #[error("squared coordinate {index} is negative ({value:e})")]
    NegativeSquare { index: usize, value: f64 },
    #[error("curve parameter {tau} sits on a pole")]
    PoleParameter { tau: f64 },
    #[error("no real tangency for this parameter (support square {support_sq:e})")]
    NoRealTangency { support_sq: f64 },

    // cones
    #[error("point is not exterior to the ellipsoid (value {value:e})")]
    NotExterior { value: f64 },
    #[error("cone family is not confocal (defect {defect:e})")]
    NotConfocal { defect: f64 },
    #[error("confocal parameters coincide (gap {gap:e})")]
    CoincidentParameters { gap: f64 },
    #[error("no real common edge passes the residual test (worst {residual:e})")]
    NoRealEdge { residual: f64 },
    #[error("edge is parallel to the intercept hyperplane")]
    ParallelEdge,

    // staude
    #[error("line does not meet the coordinate plane {axis}")]
    NoIntersection { axis: usize },
    #[error("conjugate pair is degenerate")]
    DegeneratePair,
    #[error("conjugate triple is degenerate")]
    DegenerateTriple,
    #[error("configuration could not be constructed: {0}")]
    UnconstructibleConfiguration(String),
}

impl Error {
    /// Stable snake-case identifier used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NoSignChange { .. } => "no_sign_change",
            Error::NonConvergence { .. } => "non_convergence",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::OffSurface { .. } => "off_surface",
            Error::NotAnEllipsoid => "not_an_ellipsoid",
            Error::OnFocalMembrane { .. } => "on_focal_membrane",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DegeneratePoint { .. } => "degenerate_point",
            Error::NegativeSquare { .. } => "negative_square",
            Error::PoleParameter { .. } => "pole_parameter",
            Error::NoRealTangency { .. } => "no_real_tangency",
            Error::NotExterior { .. } => "not_exterior",
            Error::NotConfocal { .. } => "not_confocal",
            Error::CoincidentParameters { .. } => "coincident_parameters",
            Error::NoRealEdge { .. } => "no_real_edge",
            Error::ParallelEdge => "parallel_edge",
            Error::NoIntersection { .. } => "no_intersection",
            Error::DegeneratePair => "degenerate_pair",
            Error::DegenerateTriple => "degenerate_triple",
            Error::UnconstructibleConfiguration(_) => "unconstructible_configuration",
        }
    }

    /// True for failures caused by the numeric position of the input
    /// (degenerate points, coincident parameters) rather than malformed data.
    pub fn is_numeric(&self) -> bool {
        !matches!(
            self,
            Error::InvalidInput(_) | Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. }
        )
    }
}

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
