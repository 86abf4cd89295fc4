//! An agent-reasoning spectrum in one runtime — direct if/then rule
//! evaluation, Boolean BDI, and fuzzy-BDI with loose or tight coupling —
//! plus a sense-to-act worst-case-execution-time benchmark harness.
//!
//! - [`logic`]: terms, unification, belief bases and a Prolog-style solver
//!   with negation-as-failure.
//! - [`asl`]: parser/pretty-printer for the AgentSpeak subset the agent
//!   programs are written in.
//! - [`fuzzy`]: membership functions, linguistic variables, fuzzification
//!   and membership-scaled actions.
//! - [`runtime`]: the BDI reasoning cycle with Boolean / fuzzy-tight /
//!   fuzzy-loose plan selection and inter-agent messaging.
//! - [`scenarios`]: three case-study environments, program generators for
//!   all four modes, and the rule-multiplication / recursive-chain
//!   transformations.
//! - [`bench`]: the benchmark runner, descriptive statistics, ANOVA and
//!   pairwise post-hoc tests, and report emission.

pub mod asl;
pub mod bench;
pub mod fuzzy;
pub mod logic;
pub mod runtime;
pub mod scenarios;
