//! Command-line surface of the monotypy toolkit.
//!
//! Exit codes: `0` when a command ran to completion (the verdict is in the
//! output), `1` for usage and input errors, `2` when an internal invariant
//! is violated.

pub mod args;
pub mod commands;
pub mod report;

use monotypy::cone::ConeError;
use monotypy::criteria::CriteriaError;
use monotypy::format::FormatError;
use monotypy::polytope::PolytopeError;
use monotypy::search::SearchError;
use monotypy::witness::WitnessError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn input(context: &str, e: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{context}: {e}"))
    }
}

fn cone_internal(e: &ConeError) -> bool {
    matches!(e, ConeError::Invariant(_))
}

fn polytope_internal(e: &PolytopeError) -> bool {
    match e {
        PolytopeError::Invariant(_) => true,
        PolytopeError::Cone(c) => cone_internal(c),
        _ => false,
    }
}

fn classify<E: std::fmt::Display>(e: E, internal: bool) -> CliError {
    if internal {
        CliError::Internal(e.to_string())
    } else {
        CliError::Input(e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        let internal = match &e {
            FormatError::Polytope(p) => polytope_internal(p),
            FormatError::Normals(c) => cone_internal(c),
            _ => false,
        };
        classify(e, internal)
    }
}

impl From<PolytopeError> for CliError {
    fn from(e: PolytopeError) -> Self {
        let internal = polytope_internal(&e);
        classify(e, internal)
    }
}

impl From<CriteriaError> for CliError {
    fn from(e: CriteriaError) -> Self {
        let internal = matches!(&e, CriteriaError::Cone(c) if cone_internal(c));
        classify(e, internal)
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        let internal = match &e {
            WitnessError::Invariant(_) => true,
            WitnessError::Polytope(p) => polytope_internal(p),
            WitnessError::Cone(c) => cone_internal(c),
            WitnessError::Criteria(CriteriaError::Cone(c)) => cone_internal(c),
            _ => false,
        };
        classify(e, internal)
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        let internal = match &e {
            SearchError::Polytope(p) => polytope_internal(p),
            SearchError::Cone(c) => cone_internal(c),
            SearchError::Criteria(CriteriaError::Cone(c)) => cone_internal(c),
            _ => false,
        };
        classify(e, internal)
    }
}
