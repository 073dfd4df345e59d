use tdlc_core::coxeter::CoxeterError;
use tdlc_core::davis::DavisError;
use tdlc_core::euler::EulerError;
use tdlc_core::graphs_of_groups::GogError;
use tdlc_core::group::GroupError;
use tdlc_core::ratlin::RatLinError;
use tdlc_core::serre_graphs::GraphError;
use tdlc_core::simplicial::SimplicialError;

/// Failures of a single invocation, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The input violates an invariant; exit code 2.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// A valid input could not be processed (resource caps, I/O); exit code 1.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn invalid(msg: impl ToString) -> Self {
        Self::Invalid(msg.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Invalid(_) => 2,
            Self::Internal(_) => 1,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::invalid(e)
    }
}

impl From<SimplicialError> for CliError {
    fn from(e: SimplicialError) -> Self {
        Self::invalid(e)
    }
}

impl From<RatLinError> for CliError {
    fn from(e: RatLinError) -> Self {
        Self::invalid(e)
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        Self::invalid(e)
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        Self::invalid(e)
    }
}

impl From<GogError> for CliError {
    fn from(e: GogError) -> Self {
        match e {
            GogError::BallTooLarge(_) => Self::Internal(e.to_string()),
            _ => Self::invalid(e),
        }
    }
}

impl From<CoxeterError> for CliError {
    fn from(e: CoxeterError) -> Self {
        match e {
            CoxeterError::StateExplosion(_) | CoxeterError::Overflow => Self::Internal(e.to_string()),
            _ => Self::invalid(e),
        }
    }
}

impl From<DavisError> for CliError {
    fn from(e: DavisError) -> Self {
        match e {
            DavisError::PosetTooLarge(_) => Self::Internal(e.to_string()),
            _ => Self::invalid(e),
        }
    }
}

impl From<EulerError> for CliError {
    fn from(e: EulerError) -> Self {
        match e {
            EulerError::Coxeter(inner) => inner.into(),
            _ => Self::invalid(e),
        }
    }
}
