//! The contract between agents and their environment.

use thiserror::Error;

use crate::logic::Term;

/// Crisp sensor readings plus ground facts delivered to one agent at the
/// start of a cycle. Readings are fuzzified (or reduced to a dominant label
/// in Boolean mode); facts replace any previous facts with the same functor
/// and arity.
#[derive(Debug, Clone, Default)]
pub struct Percepts {
    pub readings: Vec<(String, f64)>,
    pub facts: Vec<Term>,
}

/// How an action call affects the control flow of the reasoning cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionOutcome {
    /// Plain actuation; the intention keeps running.
    Done,
    /// The action requested fresh percepts. The intention suspends and
    /// resumes after the next perceive.
    Sense,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnvError {
    #[error("missing percept for variable `{0}`")]
    MissingPercept(String),
    #[error("invalid action `{0}`")]
    InvalidAction(String),
    #[error("action `{0}` failed: {1}")]
    ActionFailure(String, String),
}

/// One scenario environment, shared by every agent in a system.
pub trait Environment {
    fn percepts(&mut self, agent: &str) -> Result<Percepts, EnvError>;
    fn act(&mut self, agent: &str, action: &Term) -> Result<ActionOutcome, EnvError>;
}
