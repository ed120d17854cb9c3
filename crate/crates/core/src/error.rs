use thiserror::Error;

use crate::lp::LpError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("convex body has empty interior")]
    EmptyInterior,
    #[error("convex body is unbounded")]
    Unbounded,
    #[error("origin is not an interior point of the unit ball")]
    OriginNotInterior,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("linear program failed: {0}")]
    Lp(#[from] LpError),
    #[error("bounce point {index} is off the boundary (distance {distance:.3e})")]
    OffBoundary { index: usize, distance: f64 },
    #[error("empty normal cone at bounce point {0}")]
    EmptyNormalCone(usize),
    #[error("normal {index} is not dual-unit (dual norm {norm})")]
    NotNormalized { index: usize, norm: f64 },
    #[error("cell enumeration budget exceeded: {0} planks (limit 20)")]
    BudgetExceeded(usize),
    #[error("gradient vanishes near {0:?}")]
    Stall(Vec<f64>),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("degenerate edge {0}")]
    DegenerateEdge(usize),
    #[error("body is not inscribed in the unit square: {0}")]
    NotInscribed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

pub(crate) fn check_finite(xs: &[f64], what: &'static str) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
