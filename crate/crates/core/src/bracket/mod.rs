//! A bracket state sum for labeled diagrams.
//!
//! Crossing variables `A_{a,b}`, `B_{a,b}` are indexed by the (under, over)
//! arc labels of the crossing, and every loop of a state contributes
//! `δ_0` or `δ_1` according to the parity of the marks on it. No loop is
//! omitted, so disjoint unions multiply.

mod invariance;
pub mod poly;
mod relations;
mod specialization;
mod state_sum;

pub use invariance::{framing_factor, invariance_report, InvarianceError, InvarianceRow};
pub use poly::{BracketPolynomial, Laurent, Monomial, Var};
pub use relations::{check_relations, Family3, RelationFailure, RelationReport, Solve};
pub use specialization::{evaluate, EvalError, Expr, SpecError, Specialization};
pub use state_sum::{state_sum, state_sum_with, state_terms, StateTerm, DEFAULT_WARN_CROSSINGS};
