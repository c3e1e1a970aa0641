//! Exact rational arithmetic, dense matrices and linear programming.

pub mod lp;
pub mod matrix;
pub mod rational;

pub use lp::{solve_lp, LpOutcome, LpProblem, LpSolution, Relation, Sense, VarBound};
pub use matrix::RationalMatrix;
pub use rational::Rational;
