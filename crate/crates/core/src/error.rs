use crate::realization::SearchBounds;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An input outside the operation's domain (zero denominator, non-prime
    /// modulus, empty generator list, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A configurable cap was hit before the computation finished.
    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: &'static str, cap: u64 },
    /// The bounded realization search found nothing.
    #[error("no realization of {target} within bounds {bounds}")]
    NotFound { target: String, bounds: SearchBounds },
    /// A staged query touched a stage that has not been built yet.
    #[error("stage {required} is not materialized ({available} available)")]
    StageNotMaterialized { required: usize, available: usize },
    /// A failure while building a particular stage.
    #[error("stage {stage}: {source}")]
    AtStage { stage: usize, source: Box<Error> },
    /// A post-hoc verification failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Resource,
    State,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_) => ErrorKind::Domain,
            Error::Resource { .. } | Error::NotFound { .. } => ErrorKind::Resource,
            Error::StageNotMaterialized { .. } => ErrorKind::State,
            Error::AtStage { source, .. } => source.kind(),
            Error::Internal(_) => ErrorKind::Internal,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn at_stage(self, stage: usize) -> Self {
        Error::AtStage {
            stage,
            source: Box::new(self),
        }
    }
}
