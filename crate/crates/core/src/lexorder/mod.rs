//! Complex arithmetic and the dictionary (lexicographic) order on ℂ.
//!
//! `A ≤ B` iff `Re A < Re B`, or `Re A = Re B` and `Im A ≤ Im B`. The order
//! is total and extends the real order; it is compatible with addition and
//! with real scaling, but not with complex multiplication. [`laws`] checks
//! all of that empirically.

mod complex;
pub mod laws;
mod order;

pub use complex::{
    complex_add, complex_div, complex_mul, complex_square, complex_sub, polar_decompose,
    principal_angle, Complex, Polar,
};
pub use laws::{check_all, check_law, Law, LawReport, Outcome, SampleDomain};
pub use order::{lex_cmp, lex_ge, lex_le, LexKey, LexOrdering};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
}
