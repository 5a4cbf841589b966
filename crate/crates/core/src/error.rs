use thiserror::Error;

/// Which side of the exceptional-zero window an input fell outside of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowSide {
    /// `beta1 <= 1 - 1/(10 log q)`: not exceptional.
    Lower,
    /// `beta1 >= 1 - B/(q^eps (log q)^2)`: excluded by the Siegel-type bound.
    Upper,
}

impl std::fmt::Display for WindowSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WindowSide::Lower => f.write_str("lower"),
            WindowSide::Upper => f.write_str("upper"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: {count} exceeds the configured cap of {cap}")]
    CapExceeded { what: &'static str, count: u64, cap: u64 },

    #[error("evaluation box contains or touches the pole at s = 1")]
    PoleProximity,

    #[error("hypothesis not satisfied: {0}")]
    InvalidHypothesis(String),

    #[error("sigma = {sigma} lies outside [1/2, 1 + eta] with eta = {eta}")]
    SigmaOutOfRange { sigma: f64, eta: f64 },

    #[error("beta = {0} lies outside (1/2, 1)")]
    BetaOutOfRange(f64),

    #[error("exceptional-zero window violated on the {side} side")]
    WindowViolated { side: WindowSide },

    #[error("integrand form is not registered: {0}")]
    UnregisteredForm(String),

    #[error("integral does not converge: decay exponent {0} must exceed 1")]
    Nonconvergent(f64),

    #[error("prime product tail diverges: every exponent must exceed 1")]
    DivergentTail,

    #[error("series term is not eventually monotone with an integrable majorant")]
    NonmonotoneUnmajorized,

    #[error("unknown certificate `{0}`")]
    UnknownCertificate(String),

    #[error("characters have different moduli ({0} and {1})")]
    ModulusMismatch(u64, u64),

    #[error("preset `{0}` is ineffective and cannot certify explicit constants")]
    Ineffective(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
