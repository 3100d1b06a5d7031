use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not abelian")]
    NotAbelian,
    #[error("cochain is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("group of order {0} is outside the catalog bound {1}")]
    OrderOutOfCatalog(usize, usize),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("invalid duality datum: {0}")]
    InvalidDatum(String),
    #[error("internal lift failed during the zig-zag: {0}")]
    LiftFailure(String),
    #[error("unsupported spectral sequence position ({0},{1})")]
    UnsupportedPosition(usize, usize),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("malformed input: {0}")]
    BadInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
