//! Lexicographic order on ℂ, a region-transform algebra built on the
//! half-planes `𝒟(A) = {Z : Z ≥ A}`, and closed-form solvers for linear,
//! linear-system, linear-fractional and quadratic complex inequalities.
//!
//! ```
//! use lexineq::{solver::solve_fractional, Complex, MembershipResult};
//!
//! // 1/Z >= 1 is a disc of radius 1/2 centred at 1/2, minus the pole at 0.
//! let set = solve_fractional(Complex::ZERO, Complex::ONE, Complex::ZERO, Complex::ONE);
//! assert_eq!(set.contains(Complex::new(0.5, 0.0)), MembershipResult::In);
//! assert_eq!(set.contains(Complex::new(2.0, 0.0)), MembershipResult::Out);
//! assert_eq!(set.contains(Complex::ZERO), MembershipResult::Pole);
//! ```

pub mod cli;
pub mod lexorder;
pub mod oracle;
pub mod region;
pub mod solver;

pub use lexorder::{lex_cmp, polar_decompose, Complex, LexError, LexOrdering, Polar};
pub use region::{Membership, MembershipResult, Region, Transform};
pub use solver::{InequalityProblem, SolutionSet};
