use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("eigenvalue {0} lies within cluster tolerance of the selection boundary")]
    BoundaryEigenvalue(Complex64),
    #[error("matrix is not symmetric (relative residual {0:e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive definite (least eigenvalue {0:e})")]
    NotPositiveDefinite(f64),
    #[error("matrix is numerically singular: {0}")]
    Singular(&'static str),
    #[error("eigenvalue {0} is within cluster tolerance of the real axis")]
    RealEigenvalue(Complex64),
    #[error("Lagrangian plane is not a graph over the x-coordinates")]
    GraphSingular,
    #[error("plane is not negative: -Im A has least eigenvalue {0:e}")]
    NotNegative(f64),
    #[error("plane is not positive: Im A has least eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("1 + C+ is numerically singular")]
    SingularPencil,
    #[error("D - FB is singular; the Gaussian degenerates")]
    DegenerateTransport,
    #[error("weight is not strictly convex (least Hessian eigenvalue {0:e})")]
    NotConvex(f64),
    #[error("quadrature refinements disagree (relative difference {0:e})")]
    QuadratureNotConverged(f64),
    #[error("iteration did not converge: {0}")]
    NotConverged(String),
    #[error("|C+| = {0:e} is too small for the asymptotic expansion")]
    DegenerateCplus(f64),
    #[error("optimizer multistart spread {0:e} exceeds tolerance")]
    OptimizerNotConverged(f64),
    #[error("symbol is not partially elliptic ({0})")]
    NotCovered(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for failures caused by bad input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Dimension(_)
                | Error::NotSymmetric(_)
                | Error::Input(_)
                | Error::NotCovered(_)
                | Error::NotConvex(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
