use thiserror::Error;

use crate::farey::Slope;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("slopes {0} and {1} are not Farey neighbours")]
    NotNeighbors(Slope, Slope),
    #[error("integer overflow in Farey descent")]
    Overflow,
    #[error("objective returned non-finite value {value} at slope {slope}")]
    NonFinite { slope: Slope, value: f64 },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("point outside the chart: {0}")]
    OutOfChart(String),
    #[error("tangent vector not tangent to the Markov variety (residual {0:e})")]
    NotTangent(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
