//! Connections, curvature, line elements and the solution catalog.

pub mod catalog;
pub mod connection;
pub mod line_element;
pub mod patching;
pub mod rhat;

use thiserror::Error;

use crate::ncpoly::NcError;
use crate::scalars::ScalarError;

pub use catalog::{solution, SolutionEntry, SolutionName};
pub use connection::{
    connection_from_flip, curvature, curvature_alternative, curvature_from_forms, curvature_limit_q1,
    Connection, Curvature,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("coefficient has a pole at q = 1: {term}")]
    PoleAtCommutativePoint { term: String },
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("unknown solution `{0}`")]
    UnknownSolution(String),
    #[error("zeta must be nonzero for this entry")]
    ZeroZeta,
}
