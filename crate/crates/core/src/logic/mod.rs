//! Terms, unification, belief storage and the logical-consequence solver.

mod beliefs;
mod formula;
mod solve;
mod term;

pub use beliefs::BeliefBase;
pub use formula::{BeliefRule, LogicalFormula, RelOp, RuleError};
pub use solve::{SolveError, Solver, DEFAULT_DEPTH_LIMIT};
pub use term::{eval_arith, unify, unify_in_place, ArithError, Substitution, Term};
