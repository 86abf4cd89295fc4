//! Logical-consequence solver over a belief base and derived-predicate rules.
//!
//! Solutions are produced in a fixed order: belief-base insertion order first,
//! then rule textual order, depth-first. That determinism is what makes plan
//! selection (and the timing built on top of it) reproducible.

use std::cell::Cell;

use thiserror::Error;

use super::beliefs::BeliefBase;
use super::formula::{BeliefRule, LogicalFormula, RelOp};
use super::term::{eval_arith, unify_in_place, ArithError, Substitution, Term};

pub const DEFAULT_DEPTH_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("comparison operand `{0}` is unbound after substitution")]
    NonGroundComparison(String),
    #[error("comparison operand is not comparable: {0}")]
    BadComparison(String),
    #[error("rule recursion exceeded depth limit {0}")]
    DepthExceeded(usize),
}

/// Continue enumerating or stop after the current solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

pub struct Solver<'a> {
    beliefs: &'a BeliefBase,
    rules: &'a [BeliefRule],
    depth_limit: usize,
    fresh: Cell<u64>,
}

impl<'a> Solver<'a> {
    pub fn new(beliefs: &'a BeliefBase, rules: &'a [BeliefRule]) -> Solver<'a> {
        Solver {
            beliefs,
            rules,
            depth_limit: DEFAULT_DEPTH_LIMIT,
            fresh: Cell::new(0),
        }
    }

    pub fn with_depth_limit(mut self, limit: usize) -> Solver<'a> {
        self.depth_limit = limit;
        self
    }

    /// All substitutions under which `f` is a consequence of beliefs ∪ rules.
    pub fn solutions(
        &self,
        f: &LogicalFormula,
        s: &Substitution,
    ) -> Result<Vec<Substitution>, SolveError> {
        let mut out = Vec::new();
        self.solve(f, s, 0, &mut |sol| {
            out.push(sol.clone());
            Flow::Continue
        })?;
        Ok(out)
    }

    /// The first solution in enumeration order, if any.
    pub fn first(
        &self,
        f: &LogicalFormula,
        s: &Substitution,
    ) -> Result<Option<Substitution>, SolveError> {
        let mut out = None;
        self.solve(f, s, 0, &mut |sol| {
            out = Some(sol.clone());
            Flow::Stop
        })?;
        Ok(out)
    }

    pub fn exists(&self, f: &LogicalFormula, s: &Substitution) -> Result<bool, SolveError> {
        Ok(self.first(f, s)?.is_some())
    }

    fn solve(
        &self,
        f: &LogicalFormula,
        s: &Substitution,
        depth: usize,
        sink: &mut dyn FnMut(&Substitution) -> Flow,
    ) -> Result<Flow, SolveError> {
        match f {
            LogicalFormula::True => Ok(sink(s)),
            LogicalFormula::False => Ok(Flow::Continue),
            LogicalFormula::Literal(term) => self.solve_literal(term, s, depth, sink),
            LogicalFormula::Not(inner) => {
                if self.exists_at(inner, s, depth)? {
                    Ok(Flow::Continue)
                } else {
                    Ok(sink(s))
                }
            }
            LogicalFormula::And(left, right) => {
                let mut flow = Flow::Continue;
                let mut error = None;
                self.solve(left, s, depth, &mut |mid| {
                    match self.solve(right, mid, depth, sink) {
                        Ok(inner_flow) => {
                            if inner_flow == Flow::Stop {
                                flow = Flow::Stop;
                                Flow::Stop
                            } else {
                                Flow::Continue
                            }
                        }
                        Err(e) => {
                            error = Some(e);
                            Flow::Stop
                        }
                    }
                })?;
                if let Some(e) = error {
                    return Err(e);
                }
                Ok(flow)
            }
            LogicalFormula::Or(left, right) => {
                if self.solve(left, s, depth, sink)? == Flow::Stop {
                    return Ok(Flow::Stop);
                }
                self.solve(right, s, depth, sink)
            }
            LogicalFormula::Relational { op, lhs, rhs } => {
                if self.compare(*op, lhs, rhs, s)? {
                    Ok(sink(s))
                } else {
                    Ok(Flow::Continue)
                }
            }
        }
    }

    fn exists_at(
        &self,
        f: &LogicalFormula,
        s: &Substitution,
        depth: usize,
    ) -> Result<bool, SolveError> {
        let mut found = false;
        self.solve(f, s, depth, &mut |_| {
            found = true;
            Flow::Stop
        })?;
        Ok(found)
    }

    fn solve_literal(
        &self,
        term: &Term,
        s: &Substitution,
        depth: usize,
        sink: &mut dyn FnMut(&Substitution) -> Flow,
    ) -> Result<Flow, SolveError> {
        // Belief facts first, in insertion order.
        for fact in self.beliefs.iter() {
            let mut candidate = s.clone();
            if unify_in_place(term, fact, &mut candidate) && sink(&candidate) == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        // Then rules, in textual order, standardized apart.
        for rule in self.rules {
            if rule.head.functor() != term.functor() || rule.head.arity() != term.arity() {
                continue;
            }
            if depth >= self.depth_limit {
                return Err(SolveError::DepthExceeded(self.depth_limit));
            }
            let id = self.fresh.get();
            self.fresh.set(id + 1);
            let renamed = rule.rename_vars(&format!("#{id}"));
            let mut candidate = s.clone();
            if !unify_in_place(term, &renamed.head, &mut candidate) {
                continue;
            }
            if self.solve(&renamed.body, &candidate, depth + 1, sink)? == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn compare(
        &self,
        op: RelOp,
        lhs: &Term,
        rhs: &Term,
        s: &Substitution,
    ) -> Result<bool, SolveError> {
        let left = s.apply(lhs);
        let right = s.apply(rhs);
        for side in [&left, &right] {
            if let Term::Var(name) = side {
                return Err(SolveError::NonGroundComparison(name.clone()));
            }
        }
        match op {
            RelOp::Eq | RelOp::Neq => {
                // Numeric comparison when both sides evaluate; structural otherwise.
                let equal = match (eval_arith(&left, s), eval_arith(&right, s)) {
                    (Ok(a), Ok(b)) => a == b,
                    _ => left == right,
                };
                Ok(if op == RelOp::Eq { equal } else { !equal })
            }
            RelOp::Gt | RelOp::Lt | RelOp::Ge | RelOp::Le => {
                let a = self.numeric(&left, s)?;
                let b = self.numeric(&right, s)?;
                Ok(match op {
                    RelOp::Gt => a > b,
                    RelOp::Lt => a < b,
                    RelOp::Ge => a >= b,
                    RelOp::Le => a <= b,
                    _ => unreachable!(),
                })
            }
        }
    }

    fn numeric(&self, t: &Term, s: &Substitution) -> Result<f64, SolveError> {
        eval_arith(t, s).map_err(|e| match e {
            ArithError::NonGround(name) => SolveError::NonGroundComparison(name),
            other => SolveError::BadComparison(other.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degreed(pred: &str, label: &str, degree: f64) -> Term {
        Term::compound(pred, vec![Term::atom(label), Term::num(degree)])
    }

    /// The dominant-label rule shape used throughout the fan and scaler
    /// programs: `isit(T) :- temp(T,D1) & not(temp(_,D2) & D2>D1).`
    fn argmax_rule(pred: &str, head: &str) -> BeliefRule {
        BeliefRule::new(
            Term::compound(head, vec![Term::var("T")]),
            LogicalFormula::and(
                LogicalFormula::lit(Term::compound(
                    pred,
                    vec![Term::var("T"), Term::var("D1")],
                )),
                LogicalFormula::not(LogicalFormula::and(
                    LogicalFormula::lit(Term::compound(
                        pred,
                        vec![Term::var("_"), Term::var("D2")],
                    )),
                    LogicalFormula::rel(RelOp::Gt, Term::var("D2"), Term::var("D1")),
                )),
            ),
        )
        .unwrap()
    }

    #[test]
    fn argmax_rule_selects_highest_degree() {
        let beliefs: BeliefBase = [
            degreed("temp", "cold", 0.2),
            degreed("temp", "warm", 0.7),
            degreed("temp", "hot", 0.1),
        ]
        .into_iter()
        .collect();
        let rules = vec![argmax_rule("temp", "isit")];
        let solver = Solver::new(&beliefs, &rules);
        let goal = LogicalFormula::lit(Term::compound("isit", vec![Term::var("T")]));
        let sols = solver.solutions(&goal, &Substitution::new()).unwrap();

        // Brute-force oracle: keep labels with no strictly greater degree.
        let pairs = [("cold", 0.2), ("warm", 0.7), ("hot", 0.1)];
        let expected: Vec<&str> = pairs
            .iter()
            .filter(|(_, d)| !pairs.iter().any(|(_, other)| other > d))
            .map(|(l, _)| *l)
            .collect();
        let got: Vec<Term> = sols.iter().map(|s| s.lookup("T").unwrap()).collect();
        assert_eq!(
            got,
            expected.iter().map(|l| Term::atom(l)).collect::<Vec<_>>()
        );
        assert_eq!(got, vec![Term::atom("warm")]);
    }

    #[test]
    fn negation_as_failure_on_absent_belief() {
        let beliefs: BeliefBase = [Term::compound(
            "pos",
            vec![Term::atom("r1"), Term::num(0.0), Term::num(0.0)],
        )]
        .into_iter()
        .collect();
        let solver = Solver::new(&beliefs, &[]);
        let goal = LogicalFormula::not(LogicalFormula::lit(Term::compound(
            "pos",
            vec![Term::atom("r1"), Term::num(6.0), Term::num(7.0)],
        )));
        let sols = solver.solutions(&goal, &Substitution::new()).unwrap();
        assert_eq!(sols, vec![Substitution::new()]);
    }

    #[test]
    fn failing_conjunct_kills_conjunction() {
        let beliefs: BeliefBase = [Term::compound("temp", vec![Term::atom("hot")])]
            .into_iter()
            .collect();
        let solver = Solver::new(&beliefs, &[]);
        let goal = LogicalFormula::and(
            LogicalFormula::lit(Term::compound("temp", vec![Term::atom("hot")])),
            LogicalFormula::lit(Term::compound("temp", vec![Term::atom("cold")])),
        );
        assert!(solver.solutions(&goal, &Substitution::new()).unwrap().is_empty());
    }

    #[test]
    fn negation_soundness_matches_positive_query() {
        let beliefs: BeliefBase = [
            degreed("workLoad", "low", 0.3),
            degreed("workLoad", "high", 0.9),
        ]
        .into_iter()
        .collect();
        let solver = Solver::new(&beliefs, &[]);
        for label in ["low", "high", "medium"] {
            let positive = LogicalFormula::lit(Term::compound(
                "workLoad",
                vec![Term::atom(label), Term::var("_")],
            ));
            let negative = LogicalFormula::not(positive.clone());
            let pos_any = solver.exists(&positive, &Substitution::new()).unwrap();
            let neg_any = solver.exists(&negative, &Substitution::new()).unwrap();
            assert_eq!(pos_any, !neg_any, "NAF soundness broke for {label}");
        }
    }

    #[test]
    fn non_ground_comparison_is_an_error() {
        let beliefs = BeliefBase::new();
        let solver = Solver::new(&beliefs, &[]);
        let goal = LogicalFormula::rel(RelOp::Gt, Term::var("X"), Term::num(1.0));
        assert_eq!(
            solver.solutions(&goal, &Substitution::new()),
            Err(SolveError::NonGroundComparison("X".into()))
        );
    }

    #[test]
    fn atom_equality_comparisons() {
        let beliefs = BeliefBase::new();
        let solver = Solver::new(&beliefs, &[]);
        let mut s = Substitution::new();
        s = {
            let mut tmp = s.clone();
            assert!(unify_in_place(
                &Term::var("M"),
                &Term::atom("empty"),
                &mut tmp
            ));
            tmp
        };
        let eq = LogicalFormula::rel(RelOp::Eq, Term::var("M"), Term::atom("empty"));
        assert!(solver.exists(&eq, &s).unwrap());
        let neq = LogicalFormula::rel(RelOp::Neq, Term::var("M"), Term::atom("full"));
        assert!(solver.exists(&neq, &s).unwrap());
    }

    #[test]
    fn recursion_depth_limit_is_enforced() {
        // p(X) :- p(X).  — cyclic rule, must hit the limit.
        let rule = BeliefRule::new(
            Term::compound("p", vec![Term::var("X")]),
            LogicalFormula::lit(Term::compound("p", vec![Term::var("X")])),
        )
        .unwrap();
        let beliefs = BeliefBase::new();
        let rules = vec![rule];
        let solver = Solver::new(&beliefs, &rules).with_depth_limit(16);
        let goal = LogicalFormula::lit(Term::compound("p", vec![Term::atom("a")]));
        assert_eq!(
            solver.solutions(&goal, &Substitution::new()),
            Err(SolveError::DepthExceeded(16))
        );
    }

    #[test]
    fn solutions_are_deterministic() {
        let beliefs: BeliefBase = [
            degreed("temp", "cold", 0.4),
            degreed("temp", "warm", 0.4),
        ]
        .into_iter()
        .collect();
        let rules = vec![argmax_rule("temp", "isit")];
        let solver = Solver::new(&beliefs, &rules);
        let goal = LogicalFormula::lit(Term::compound("isit", vec![Term::var("T")]));
        let a = solver.solutions(&goal, &Substitution::new()).unwrap();
        let b = solver.solutions(&goal, &Substitution::new()).unwrap();
        let labels = |sols: &[Substitution]| {
            sols.iter().map(|s| s.lookup("T").unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(labels(&a), labels(&b));
        // A tie keeps both maximizers, in insertion order.
        assert_eq!(labels(&a), vec![Term::atom("cold"), Term::atom("warm")]);
    }
}
