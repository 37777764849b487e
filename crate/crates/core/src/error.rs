use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid qubit pair ({0}, {1}): expected i < j in 1..=3")]
    InvalidQubitPair(usize, usize),

    #[error("invalid spin label {0:?}: expected three characters from {{u, d}}")]
    InvalidSpinLabel(String),

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error(
        "wave number k0 = {k0} is at or outside the band edge (need 0 < k0 < pi, sin k0 > 1e-9)"
    )]
    BandEdge { k0: f64 },

    #[error("on-site Green's function requested through the off-diagonal form (separation 0)")]
    ZeroSeparation,

    #[error("scattering system is singular at k0 = {k0} (condition number {condition:.3e})")]
    Singular { k0: f64, condition: f64 },

    #[error("both reflected and transmitted spin states vanish")]
    UndefinedState,

    #[error("{0} is only defined for the chain lattice")]
    ChainOnly(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "oracle did not converge: error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    OracleFailure { estimate: f64, tolerance: f64 },
}
