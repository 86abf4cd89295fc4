//! Logical formulas for plan contexts and belief-rule bodies.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use super::term::Term;

/// Comparison operators usable between ground operands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelOp {
    Eq,
    Neq,
    Gt,
    Lt,
    Ge,
    Le,
}

impl RelOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            RelOp::Eq => "==",
            RelOp::Neq => "\\==",
            RelOp::Gt => ">",
            RelOp::Lt => "<",
            RelOp::Ge => ">=",
            RelOp::Le => "<=",
        }
    }
}

/// A context or rule-body formula. Negation is negation-as-failure: `not g`
/// succeeds exactly when `g` has no solutions.
#[derive(Debug, Clone, PartialEq)]
pub enum LogicalFormula {
    True,
    False,
    Literal(Term),
    Not(Box<LogicalFormula>),
    And(Box<LogicalFormula>, Box<LogicalFormula>),
    Or(Box<LogicalFormula>, Box<LogicalFormula>),
    Relational {
        op: RelOp,
        lhs: Term,
        rhs: Term,
    },
}

impl LogicalFormula {
    pub fn lit(term: Term) -> LogicalFormula {
        LogicalFormula::Literal(term)
    }

    pub fn not(inner: LogicalFormula) -> LogicalFormula {
        LogicalFormula::Not(Box::new(inner))
    }

    pub fn and(left: LogicalFormula, right: LogicalFormula) -> LogicalFormula {
        LogicalFormula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: LogicalFormula, right: LogicalFormula) -> LogicalFormula {
        LogicalFormula::Or(Box::new(left), Box::new(right))
    }

    pub fn rel(op: RelOp, lhs: Term, rhs: Term) -> LogicalFormula {
        LogicalFormula::Relational { op, lhs, rhs }
    }

    /// Conjoins all formulas, or `True` for an empty list.
    pub fn conjoin(parts: Vec<LogicalFormula>) -> LogicalFormula {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => LogicalFormula::True,
            Some(first) => iter.fold(first, LogicalFormula::and),
        }
    }

    pub fn rename_vars(&self, suffix: &str) -> LogicalFormula {
        match self {
            LogicalFormula::True => LogicalFormula::True,
            LogicalFormula::False => LogicalFormula::False,
            LogicalFormula::Literal(t) => LogicalFormula::Literal(t.rename_vars(suffix)),
            LogicalFormula::Not(inner) => LogicalFormula::not(inner.rename_vars(suffix)),
            LogicalFormula::And(l, r) => {
                LogicalFormula::and(l.rename_vars(suffix), r.rename_vars(suffix))
            }
            LogicalFormula::Or(l, r) => {
                LogicalFormula::or(l.rename_vars(suffix), r.rename_vars(suffix))
            }
            LogicalFormula::Relational { op, lhs, rhs } => LogicalFormula::Relational {
                op: *op,
                lhs: lhs.rename_vars(suffix),
                rhs: rhs.rename_vars(suffix),
            },
        }
    }

    fn collect_vars(&self, out: &mut HashSet<String>) {
        fn term_vars(t: &Term, out: &mut HashSet<String>) {
            match t {
                Term::Var(name) if name != "_" => {
                    out.insert(name.clone());
                }
                Term::Compound(_, args) => args.iter().for_each(|a| term_vars(a, out)),
                _ => {}
            }
        }
        match self {
            LogicalFormula::True | LogicalFormula::False => {}
            LogicalFormula::Literal(t) => term_vars(t, out),
            LogicalFormula::Not(inner) => inner.collect_vars(out),
            LogicalFormula::And(l, r) | LogicalFormula::Or(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            LogicalFormula::Relational { lhs, rhs, .. } => {
                term_vars(lhs, out);
                term_vars(rhs, out);
            }
        }
    }
}

// Precedence levels for printing: | = 1, & = 2, everything else atomic.
fn precedence(f: &LogicalFormula) -> u8 {
    match f {
        LogicalFormula::Or(..) => 1,
        LogicalFormula::And(..) => 2,
        _ => 3,
    }
}

fn fmt_child(f: &LogicalFormula, parent: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if precedence(f) < parent {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl fmt::Display for LogicalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogicalFormula::True => write!(f, "true"),
            LogicalFormula::False => write!(f, "false"),
            LogicalFormula::Literal(t) => write!(f, "{t}"),
            LogicalFormula::Not(inner) => match inner.as_ref() {
                LogicalFormula::Literal(t) => write!(f, "not {t}"),
                other => write!(f, "not ({other})"),
            },
            LogicalFormula::And(l, r) => {
                fmt_child(l, 2, f)?;
                write!(f, " & ")?;
                fmt_child(r, 2, f)
            }
            LogicalFormula::Or(l, r) => {
                fmt_child(l, 1, f)?;
                write!(f, " | ")?;
                fmt_child(r, 1, f)
            }
            LogicalFormula::Relational { op, lhs, rhs } => {
                write!(f, "{} {} {}", lhs, op.symbol(), rhs)
            }
        }
    }
}

/// Errors raised while constructing a belief rule.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("belief-rule head must be an atom or compound, got `{0}`")]
    InvalidHead(String),
    #[error("head variable `{0}` does not appear in the rule body")]
    UnboundHeadVariable(String),
}

/// A derived predicate: `head :- body.`
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefRule {
    pub head: Term,
    pub body: LogicalFormula,
}

impl BeliefRule {
    /// Builds a rule, enforcing range-restriction: every variable in the head
    /// must occur in the body.
    pub fn new(head: Term, body: LogicalFormula) -> Result<BeliefRule, RuleError> {
        if !matches!(head, Term::Compound(..) | Term::Atom(_)) {
            return Err(RuleError::InvalidHead(head.to_string()));
        }
        let mut head_vars = HashSet::new();
        LogicalFormula::Literal(head.clone()).collect_vars(&mut head_vars);
        let mut body_vars = HashSet::new();
        body.collect_vars(&mut body_vars);
        if let Some(missing) = head_vars.difference(&body_vars).next() {
            return Err(RuleError::UnboundHeadVariable(missing.clone()));
        }
        Ok(BeliefRule { head, body })
    }

    pub fn rename_vars(&self, suffix: &str) -> BeliefRule {
        BeliefRule {
            head: self.head.rename_vars(suffix),
            body: self.body.rename_vars(suffix),
        }
    }
}

impl fmt::Display for BeliefRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :- {}", self.head, self.body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_restriction_enforced() {
        let head = Term::compound("isit", vec![Term::var("T")]);
        let body = LogicalFormula::lit(Term::compound(
            "temp",
            vec![Term::var("T"), Term::var("D1")],
        ));
        assert!(BeliefRule::new(head.clone(), body).is_ok());

        let bad_body = LogicalFormula::lit(Term::compound("temp", vec![Term::atom("hot")]));
        assert_eq!(
            BeliefRule::new(head, bad_body),
            Err(RuleError::UnboundHeadVariable("T".into()))
        );
    }

    #[test]
    fn display_parenthesizes_or_inside_and() {
        let f = LogicalFormula::and(
            LogicalFormula::or(
                LogicalFormula::not(LogicalFormula::lit(Term::compound(
                    "pos",
                    vec![Term::atom("r1"), Term::num(6.0), Term::num(7.0)],
                ))),
                LogicalFormula::lit(Term::compound(
                    "continue",
                    vec![Term::atom("r1"), Term::atom("true")],
                )),
            ),
            LogicalFormula::lit(Term::compound("bag", vec![Term::var("M")])),
        );
        assert_eq!(f.to_string(), "(not pos(r1,6,7) | continue(r1,true)) & bag(M)");
    }
}
