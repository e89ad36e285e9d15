use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient must be nonzero and finite")]
    ZeroLeadingCoefficient,

    #[error("not one of the fourteen cubic types: {0}")]
    NotClassifiable(String),

    #[error("invalid magnitudes for type {type_id}: {reason}")]
    InvalidForm { type_id: u8, reason: &'static str },

    #[error("not a second-degree curve: A, B and C are all zero")]
    NotQuadratic,

    #[error("non-finite coefficient")]
    NonFinite,

    #[error("the two conics are proportional")]
    ProportionalConics,

    #[error("the two conics share a common component")]
    CommonComponent,

    #[error("division by zero in chain ratio {0}")]
    DivisionByZero(&'static str),

    #[error("no curve point falls inside the viewport")]
    EmptyViewport,

    #[error("invalid figure: {0}")]
    InvalidFigure(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}
