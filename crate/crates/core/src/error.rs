use thiserror::Error;

use crate::mat4::Mat4;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero in the fraction field (singular elimination pivot)")]
    ZeroDivision,

    #[error("matrix is not in the span of the basis; residual:\n{residual}")]
    NotInSpan { residual: Box<Mat4> },

    #[error("basis matrices are linearly dependent")]
    DependentBasis,

    #[error("coefficient {0} is not a Laurent polynomial in q and pi")]
    NotRingValued(String),

    #[error("q must be positive and finite, got {0}")]
    NonPositiveQ(f64),

    #[error("radius must be positive and finite, got {0}")]
    NonPositiveRadius(f64),

    #[error("parameter must be finite, got {0}")]
    NonFiniteParameter(f64),

    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),

    #[error("no closed-form flow for generator {0}")]
    NoClosedForm(String),

    #[error("integrand is not finite at q = {0}")]
    NonFiniteIntegrand(f64),

    #[error("invalid quadrature settings: {0}")]
    InvalidQuadrature(String),

    #[error("fixture data: {0}")]
    Fixture(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
