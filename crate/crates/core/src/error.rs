use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("{routine} hit its iteration limit ({iterations})")]
    IterationLimit { routine: &'static str, iterations: usize },

    #[error("{routine} did not converge: {detail}")]
    NonConvergence { routine: &'static str, detail: String },

    #[error("singular Jacobian in {routine} (determinant {det:e})")]
    SingularJacobian { routine: &'static str, det: f64 },

    #[error("converged to a simple root, not a fold (|F_ss| = {curvature:e})")]
    NotAFold { curvature: f64 },

    #[error("least-squares fit is ill-conditioned: {0}")]
    FitConditioning(String),

    #[error("E = {re} + {im}i is not an eigenvalue (pivot ratio {pivot_ratio:e})")]
    NotAnEigenvalue { re: f64, im: f64, pivot_ratio: f64 },

    #[error("lost track of a root pair near Z = {z}: {detail}")]
    TrackingLoss { z: f64, detail: String },

    #[error("Z = {z} is below the critical coupling {z_crit} of this pair")]
    BelowFold { z: f64, z_crit: f64 },

    #[error("solve failed at Z = {z}: {source}")]
    AtCoupling {
        z: f64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
