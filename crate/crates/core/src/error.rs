use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The responder problem has no unique threshold when κ = 1.
    #[error("rejection threshold indeterminate at kappa = 1")]
    ThresholdIndeterminate,

    #[error("not in symmetric regime: bracket [{lo}, {hi}] is empty")]
    NotSymmetricRegime { lo: f64, hi: f64 },

    /// ᾱ is infinite because the selfish offer already equals w/2.
    #[error("alpha_bar infinite: selfish offer equals w/2, spite threshold vacuous")]
    InfiniteAlphaBar,

    #[error("alpha_tilde infinite at kappa = {kappa}: constrained offer equals w/2")]
    InfiniteAlphaTilde { kappa: f64 },

    #[error("nondifferentiable point: finite-difference stencil crosses the diagonal at x1={x1}, x2={x2}")]
    Nondifferentiable { x1: f64, x2: f64 },

    #[error("NEC undefined: lnL_K equals lnL_1")]
    NecUndefined,

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate subject id `{0}`")]
    DuplicateId(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Bracketing and convergence failures, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Numeric(_)
                | Error::NotSymmetricRegime { .. }
                | Error::InfiniteAlphaBar
                | Error::InfiniteAlphaTilde { .. }
                | Error::NecUndefined
        )
    }
}
