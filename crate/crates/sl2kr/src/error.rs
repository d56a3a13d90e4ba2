use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic {0} divides a required denominator")]
    Characteristic(u32),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("inhomogeneous decoration")]
    Inhomogeneous,
    #[error("web not reducible: {0}")]
    WebNotReducible(String),
    #[error("planarity failure: {0}")]
    NonPlanar(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no twist placement makes the differential equivariant: {0}")]
    NoEquivariantTwist(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error("inconsistent module data: {0}")]
    Inconsistent(String),
    #[error("operator is not nilpotent of order p: {0}")]
    NotNilpotent(String),
    #[error("location mismatch: {0}")]
    Location(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
