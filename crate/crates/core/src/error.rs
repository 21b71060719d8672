//! Typed errors for every partial operation in the crate.
//!
//! Each variant carries a stable machine-readable category (kebab-case),
//! exposed via [`Error::category`]; the CLI prints it on failure.

use thiserror::Error;

/// Library-wide error type. No library routine panics on invalid
/// mathematical input; it returns one of these instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two elements from different rings were combined.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    /// An operation needed a unit (invertible element) and got a non-unit.
    #[error("non-unit leading coefficient or constant term: {0}")]
    NonUnit(String),
    /// Order of an all-zero (within its window) series is indeterminate.
    #[error("indeterminate order: {0}")]
    IndeterminateOrder(String),
    /// Derivation exceeded the jet-order bound of a differential-polynomial ring.
    #[error("jet order exceeded: {0}")]
    JetOrderExceeded(String),
    /// The requested value is not determined at the available precision.
    #[error("zero precision: {0}")]
    ZeroPrecision(String),
    /// N-th root asked for an N that does not divide the order.
    #[error("order not divisible: {0}")]
    OrderNotDivisible(String),
    /// The argument must be monic (leading coefficient exactly 1).
    #[error("not monic: {0}")]
    NotMonic(String),
    /// Composition/reversion argument has the wrong valuation.
    #[error("bad valuation: {0}")]
    BadValuation(String),
    /// Composition requires a substituend of strictly positive valuation.
    #[error("nonpositive valuation: {0}")]
    NonpositiveValuation(String),
    /// An operation required an operator of a specific order shape.
    #[error("wrong order: {0}")]
    WrongOrder(String),
    /// σ or act applied over a ring without an x-series structure,
    /// or another structurally unsupported ring was supplied.
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    /// A basis that was expected to lie in the big cell does not.
    #[error("not in the big cell: {0}")]
    NotBigCell(String),
    /// Conjugation produced non-constant coefficients: generators do not commute.
    #[error("non-commuting generators: {0}")]
    NonCommuting(String),
    /// No generator (or product) of positive order was found.
    #[error("no positive-order element: {0}")]
    NoPositiveOrder(String),
    /// A·W ⊄ W: the algebra does not stabilize the subspace.
    #[error("stability violation: {0}")]
    StabilityViolation(String),
    /// The requested computation needs a larger window/depth/precision.
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    /// A genus/gap computation did not stabilize below the supplied bound.
    #[error("unstable bound: {0}")]
    UnstableBound(String),
    /// An operator that must be differential has negative ∂-powers.
    #[error("not a differential operator: {0}")]
    NotDifferential(String),
    /// Zero-ness of a classification parameter could not be decided.
    #[error("undecidable zero test: {0}")]
    UndecidableZero(String),
    /// A named symbol is not declared in the ring.
    #[error("unknown symbol: {0}")]
    UnknownSymbol(String),
    /// Expression parsing failed.
    #[error("parse error: {0}")]
    Parse(String),
    /// Malformed JSON for a ring, element, or pair.
    #[error("bad encoding: {0}")]
    BadEncoding(String),
    /// A precondition not covered by a more specific variant was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable kebab-case category for machine consumption.
    pub fn category(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "ring-mismatch",
            Error::NonUnit(_) => "non-unit-leading",
            Error::IndeterminateOrder(_) => "indeterminate-order",
            Error::JetOrderExceeded(_) => "jet-order-exceeded",
            Error::ZeroPrecision(_) => "zero-precision",
            Error::OrderNotDivisible(_) => "divisibility-violation",
            Error::NotMonic(_) => "not-monic",
            Error::BadValuation(_) => "bad-valuation",
            Error::NonpositiveValuation(_) => "nonpositive-valuation",
            Error::WrongOrder(_) => "wrong-order",
            Error::UnsupportedRing(_) => "unsupported-ring",
            Error::NotBigCell(_) => "not-big-cell",
            Error::NonCommuting(_) => "non-commuting",
            Error::NoPositiveOrder(_) => "no-positive-order",
            Error::StabilityViolation(_) => "stability-violation",
            Error::WindowTooSmall(_) => "window-too-small",
            Error::UnstableBound(_) => "unstable-bound",
            Error::NotDifferential(_) => "not-differential",
            Error::UndecidableZero(_) => "undecidable-zero",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::Parse(_) => "parse-error",
            Error::BadEncoding(_) => "bad-encoding",
            Error::InvalidInput(_) => "invalid-input",
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
