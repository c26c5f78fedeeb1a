//! Monadic second-order logic over graphs and triangulations: syntax,
//! sort checking, brute-force semantics, the two translations into graph
//! formulas, and generic extremum and evaluation solvers.

mod ast;
mod check;
mod eval;
pub mod library;
mod model;
mod parse;
mod translate;

use thiserror::Error;

pub use ast::{
    adj, adjc, and, col, eq, exists, forall, implies, inc, member, not, or, sub, Declarations, Formula, Signature, Sort,
};
pub use check::check;
pub use eval::{
    count_solutions, evaluate, evaluate_with_budget, holds, solutions, solve_evaluation, solve_extremum,
    EvaluationMode, EvaluationProblem, Extremum, ExtremumProblem, Ring, Value, DEFAULT_BUDGET, MAX_SET_CARRIER,
};
pub use model::Model;
pub use parse::{parse_formula, parse_syntax, parse_with_declarations};
pub use translate::{chain_colours, expand_subface_relation, translate_coloured, translate_triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MsoError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("sort error in `{atom}`: {message}")]
    Sort { atom: String, message: String },
    #[error("search budget of {limit} steps exceeded")]
    Budget { limit: u64 },
    #[error("set variables over {sort} need at most 128 elements, carrier has {size}")]
    CarrierTooLarge { sort: String, size: usize },
    #[error("bad assignment: {0}")]
    Assignment(String),
    #[error("translation error: {0}")]
    Translation(String),
}
