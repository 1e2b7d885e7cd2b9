use thiserror::Error;

use crate::graded::MonoidKind;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot combine monomials of kind {0:?} and {1:?}")]
    ModeMismatch(MonoidKind, MonoidKind),

    #[error("degree {degree} exceeds the truncation degree {max}")]
    DegreeOverflow { degree: u32, max: u32 },

    #[error("generators must have positive degree")]
    ZeroDegree,

    #[error("unknown growth family `{0}`")]
    UnknownFamily(String),

    #[error("unknown Hopf algebra `{0}`")]
    UnknownHopf(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
