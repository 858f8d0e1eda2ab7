//! Crate-wide error type. One enum keeps matching cheap for callers; variants
//! carry enough context to render a precise message without a backtrace.

use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested vertex count exceeds the fixed bitset capacity.
    TooManyVertices { n: usize },
    /// Vertex id outside `0..n`.
    VertexOutOfRange { v: u32, n: u32 },
    /// Self-loops are not representable.
    SelfLoop { v: u32 },
    /// An operation requiring a nonempty vertex set got an empty one.
    EmptySet,
    /// A parameter is outside the operation's domain.
    BadArgument { what: &'static str },
    /// The input is structurally valid but excluded from the formula's domain.
    Domain { what: &'static str },
    /// A construction family was asked for a size it cannot realize.
    Residue {
        family: &'static str,
        n: u32,
        requirement: &'static str,
    },
    /// A witness does not validate against the graph it claims to live in.
    InvalidWitness { what: &'static str },
    /// graph6 parse failure, with the byte offset of the offending input.
    Graph6 { kind: Graph6Error, offset: usize },
    /// Exhaustive search only supports single-word adjacency rows.
    SearchTooLarge { n: u32, max: u32 },
    /// A closed-form cross-check disagreed with exhaustive search.
    FormulaMismatch {
        formula: &'static str,
        n: u32,
        expected: u64,
        got: u64,
    },
    /// A stop callback fired before an all-or-nothing computation finished.
    Stopped,
    /// An inequality evaluation would divide by zero.
    DivisionByZero { what: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Graph6Error {
    /// Empty input where a graph was expected.
    Empty,
    /// Byte outside the printable graph6 range 63..=126.
    BadChar,
    /// Length header malformed (e.g. truncated multi-byte form).
    BadLength,
    /// Multi-byte length header used for a size that has a shorter form.
    NonCanonicalLength,
    /// Input ended before all adjacency bits were read.
    Truncated,
    /// Extra bytes after the adjacency bits.
    TrailingData,
    /// Padding bits after the last adjacency bit were not zero.
    PaddingBits,
    /// Encoded vertex count exceeds the supported capacity.
    TooLarge,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooManyVertices { n } => {
                write!(f, "{n} vertices exceed the capacity of {}", crate::MAX_VERTICES)
            }
            Error::VertexOutOfRange { v, n } => write!(f, "vertex {v} out of range for n={n}"),
            Error::SelfLoop { v } => write!(f, "self-loop at vertex {v} is not allowed"),
            Error::EmptySet => write!(f, "operation requires a nonempty vertex set"),
            Error::BadArgument { what } => write!(f, "bad argument: {what}"),
            Error::Domain { what } => write!(f, "outside domain: {what}"),
            Error::Residue { family, n, requirement } => {
                write!(f, "construction {family} undefined for n={n}: requires {requirement}")
            }
            Error::InvalidWitness { what } => write!(f, "invalid witness: {what}"),
            Error::Graph6 { kind, offset } => {
                write!(f, "graph6 parse error at byte {offset}: {kind}")
            }
            Error::SearchTooLarge { n, max } => {
                write!(f, "exhaustive search supports n <= {max}, got n={n}")
            }
            Error::FormulaMismatch { formula, n, expected, got } => write!(
                f,
                "formula cross-check failed for {formula} at n={n}: formula {expected}, search {got}"
            ),
            Error::Stopped => write!(f, "stopped by the budget callback before completion"),
            Error::DivisionByZero { what } => write!(f, "division by zero evaluating {what}"),
        }
    }
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Graph6Error::Empty => "empty input",
            Graph6Error::BadChar => "byte outside printable range 63..=126",
            Graph6Error::BadLength => "malformed length header",
            Graph6Error::NonCanonicalLength => "non-canonical length header",
            Graph6Error::Truncated => "input ends before all adjacency bits",
            Graph6Error::TrailingData => "trailing bytes after adjacency bits",
            Graph6Error::PaddingBits => "nonzero padding bits",
            Graph6Error::TooLarge => "vertex count exceeds capacity",
        };
        f.write_str(msg)
    }
}

impl core::error::Error for Error {}
