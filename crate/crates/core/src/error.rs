use alloc::boxed::Box;
use alloc::string::String;

use num_bigint::BigUint;

use crate::rational::{Point, Rational};

/// Errors raised by the exact geometry and rain constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what} must be positive, got {value}")]
    NotPositive { what: &'static str, value: Rational },
    #[error("a point needs at least one coordinate")]
    EmptyPoint,
    #[error("no orbit witness: edge products {left} and {right} differ")]
    NoWitness { left: Box<Rational>, right: Box<Rational> },
    #[error("{0} is not a layer point of the rain")]
    NotALayerPoint(Point),
    #[error("{0} is a layer point but not the apex of a unit simplex on the base")]
    NotAnApex(Point),
    #[error("rain of length {have} is too short, need at least {need}")]
    RainTooShort { have: usize, need: BigUint },
    #[error("rain length must be at least 2, got {0}")]
    RainLength(usize),
    #[error("{count} points exceed the enumeration limit {limit}")]
    LimitExceeded { count: u128, limit: u128 },
    #[error("map is not volume preserving (scale product {0})")]
    NotVolumePreserving(Rational),
    #[error("color {color} out of range for {colors} colors")]
    ColorOutOfRange { color: u32, colors: u32 },
    #[error("invalid argument: {0}")]
    Invalid(String),
}
