use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("element is not in {algebra} (relative residual {residual:.3e})")]
    NotInAlgebra { algebra: String, residual: f64 },

    #[error("not a group element: {0}")]
    NotInGroup(String),

    /// μ pairing or vanishing pattern violated beyond tolerance.
    #[error("realization error: {0}")]
    Realization(String),

    #[error("non-integral eigenvalues: {0}")]
    NonIntegral(String),

    #[error("numerical rank ambiguity: {0}")]
    RankAmbiguity(String),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ρ(A₀) is not in the split torus; conjugate the triple first")]
    NotDiagonal,

    #[error("genus condition violated: genus {genus} < {required} = |Λ|")]
    GenusCondition { genus: usize, required: usize },

    #[error("element is not hyperbolic: {0}")]
    NotHyperbolic(String),

    #[error("deformation parameter t must be nonzero")]
    ZeroParameter,

    #[error("Weyl group of rank {0} is too large to enumerate (cap is 8)")]
    WeylTooLarge(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
