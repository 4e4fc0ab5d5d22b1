use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed notation: {0}")]
    MalformedNotation(String),
    #[error("inconsistent diagram: {0}")]
    NonPlanarOrInconsistent(String),
    #[error("braid letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i64, strands: usize },
    #[error("unknown component {0}")]
    UnknownComponent(usize),
    #[error("diagram is split into {0} pieces")]
    DisconnectedDiagram(usize),
    #[error("determinant is zero; the dihedral solution space is infinite")]
    ZeroDeterminant,
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("dihedral tests disagree: frame test says {frame}, involution test says {involution}")]
    TestDisagreement { frame: bool, involution: bool },
    #[error("ill-conditioned rank decision: singular value gap {gap:.3e} below 1e2")]
    IllConditioned { gap: f64 },
    #[error("filling relator of component {component} is not killed (deviation {deviation:.3e})")]
    FillingNotKilled { component: usize, deviation: f64 },
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

impl Error {
    /// Internal consistency failures, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::OracleMismatch(_) | Error::TestDisagreement { .. }
        )
    }
}
