use thiserror::Error;

use crate::rig::Elem;

/// Failure to turn raw operation tables into a structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("carrier of {0} elements exceeds the table representation limit")]
    CarrierTooLarge(usize),
    #[error("{table} table has {found} entries, expected {expected}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table entry at {at:?} is {value}, outside the carrier of size {size}")]
    EntryOutOfRange {
        table: &'static str,
        at: Vec<Elem>,
        value: Elem,
        size: usize,
    },
    #[error("derived order is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    OrderNotAntisymmetric(Elem, Elem),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error("carrier of {size} elements exceeds the configured bound of {bound}")]
    SizeBound { size: usize, bound: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unit vector entry {value} at position {index} is not 0 or 1")]
    InvalidUnit { index: usize, value: i64 },
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("element {0} is outside the carrier")]
    ElementOutOfRange(Elem),
    #[error("operation requires a commutative rig")]
    NotCommutative,
    #[error("operation requires a nontrivial algebra")]
    Trivial,
    #[error("a P-filter must be generated by a nonempty set")]
    EmptySeed,
    #[error("the joined P-filter of the generators is proper, so they do not cover")]
    NotACover,
    #[error("requires a commutative rig with a unit element")]
    GateNotMet,
    #[error("carrier is not closed under {op}: {op}({}) = {value}", inputs.join(", "))]
    ClosureViolation {
        op: &'static str,
        inputs: Vec<String>,
        value: String,
    },
    #[error("not an ideal: {0}")]
    NotAnIdeal(crate::ideals::IdealViolation),
    #[error("not a congruence: clause {clause} fails at {witness:?}")]
    NotACongruence {
        clause: &'static str,
        witness: Vec<Elem>,
    },
    #[error("not a homomorphism: clause {clause} fails at {witness:?}")]
    NotAHomomorphism {
        clause: &'static str,
        witness: Vec<Elem>,
    },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
