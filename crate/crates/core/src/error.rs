use thiserror::Error;

use crate::diagram::DiagramError;
use crate::document::ParseError;
use crate::families::FamilyError;
use crate::invariants::BracketError;
use crate::surgery::SurgeryError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::Bracket(_) | Error::Family(FamilyError::Bracket(_)))
    }
}
