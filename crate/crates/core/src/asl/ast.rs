//! AST for the AgentSpeak subset: beliefs, belief rules, initial goals and
//! plans with optional `[fuzzy]` annotations.

use crate::logic::{BeliefRule, LogicalFormula, Term};

/// A parsed agent program. Plan order equals source textual order; plan
/// selection depends on it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Program {
    pub initial_beliefs: Vec<Term>,
    pub belief_rules: Vec<BeliefRule>,
    pub initial_goals: Vec<Term>,
    pub plans: Vec<Plan>,
}

impl Program {
    /// Total `[fuzzy]` annotations across triggers, subgoals and actions.
    pub fn fuzzy_annotation_count(&self) -> usize {
        self.plans
            .iter()
            .map(|p| {
                let trigger = usize::from(p.trigger_fuzzy);
                let body: usize = p
                    .body
                    .iter()
                    .map(|s| match s {
                        BodyStep::Action { fuzzy: true, .. }
                        | BodyStep::Subgoal { fuzzy: true, .. } => 1,
                        _ => 0,
                    })
                    .sum();
                trigger + body
            })
            .sum()
    }
}

/// One plan: `+!trigger[fuzzy] : context <- body.`
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub trigger: Term,
    pub trigger_fuzzy: bool,
    pub context: LogicalFormula,
    pub body: Vec<BodyStep>,
}

impl Plan {
    pub fn new(trigger: Term, trigger_fuzzy: bool, context: LogicalFormula, body: Vec<BodyStep>) -> Plan {
        Plan {
            trigger,
            trigger_fuzzy,
            context,
            body,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Performative {
    Tell,
    Achieve,
}

impl Performative {
    pub fn as_str(&self) -> &'static str {
        match self {
            Performative::Tell => "tell",
            Performative::Achieve => "achieve",
        }
    }
}

/// One body step.
#[derive(Debug, Clone, PartialEq)]
pub enum BodyStep {
    /// Environment action, optionally `[fuzzy]`-annotated for degree scaling.
    Action { term: Term, fuzzy: bool },
    /// `!g` — posts an achievement subgoal, optionally `[fuzzy]`.
    Subgoal { term: Term, fuzzy: bool },
    /// `?b(X)` — queries the belief base, extending the substitution.
    TestGoal(Term),
    /// `-+b(t)` — atomic retract-then-add of a belief predicate.
    BeliefReplace(Term),
    /// `X = expr` — arithmetic assignment.
    Assign { var: String, expr: Term },
    /// `.send(receiver, tell|achieve, content)`.
    Send {
        receiver: String,
        performative: Performative,
        content: Term,
    },
}

impl BodyStep {
    pub fn action(term: Term) -> BodyStep {
        BodyStep::Action { term, fuzzy: false }
    }

    pub fn fuzzy_action(term: Term) -> BodyStep {
        BodyStep::Action { term, fuzzy: true }
    }

    pub fn subgoal(term: Term) -> BodyStep {
        BodyStep::Subgoal { term, fuzzy: false }
    }

    pub fn fuzzy_subgoal(term: Term) -> BodyStep {
        BodyStep::Subgoal { term, fuzzy: true }
    }

    pub fn send(receiver: &str, performative: Performative, content: Term) -> BodyStep {
        BodyStep::Send {
            receiver: receiver.to_string(),
            performative,
            content,
        }
    }
}
