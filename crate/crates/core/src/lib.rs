//! Exact-arithmetic calculus of truncated Laurent series and formal
//! pseudo-differential operators, with conjugation normal forms, the operator
//! ↔ triangular-basis correspondence, and classification helpers for
//! commutative algebras of ordinary differential operators.

pub mod error;
pub mod ring;
pub mod schur;
pub mod normalize;
pub mod pdo;
pub mod series;

pub use error::{Error, Result};
