//! The BDI reasoning cycle.
//!
//! One cycle: deliver mailbox, perceive, then either resume the suspended
//! intention or pop one event and run its selected plan to completion —
//! chained subgoals included — until the intention finishes, fails, or
//! issues a sensing action. Sensing suspends the intention so the next
//! cycle re-enters perceive; that run-to-completion contract makes a
//! recursive plan chain accrue into a single sense-to-act window.

mod env;
mod system;

use std::collections::VecDeque;
use std::sync::Arc;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::asl::{BodyStep, Performative, Program};
use crate::fuzzy::LinguisticVariable;
use crate::logic::{
    eval_arith, unify, BeliefBase, LogicalFormula, Solver, Substitution, Term,
};

pub use env::{ActionOutcome, EnvError, Environment, Percepts};
pub use system::System;

/// Plan-selection semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Crisp labels, first applicable plan in textual order.
    Boolean,
    /// Degreed beliefs; the selector picks the applicable plan with the
    /// highest context membership degree and scales `[fuzzy]` actions by it.
    FuzzyTight,
    /// Degreed beliefs; argmax is encoded in user-level belief rules and
    /// degrees travel through explicit test-goal arguments.
    FuzzyLoose,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Boolean => "boolean",
            Mode::FuzzyTight => "fuzzy-tight",
            Mode::FuzzyLoose => "fuzzy-loose",
        }
    }
}

/// Where an event came from.
#[derive(Debug, Clone, PartialEq)]
pub enum EventSource {
    InitialGoal,
    Message(String),
}

/// A pending achievement-goal event (`+!g`).
#[derive(Debug, Clone, PartialEq)]
pub struct Event {
    pub trigger: Term,
    pub fuzzy: bool,
    pub source: EventSource,
}

/// One applicable plan: its index, the substitution that satisfied trigger
/// and context, and the context membership degree (1.0 outside fuzzy-tight).
#[derive(Debug, Clone)]
pub struct Candidate {
    pub plan_idx: usize,
    pub subst: Substitution,
    pub degree: f64,
}

/// An inter-agent message.
#[derive(Debug, Clone, PartialEq)]
pub struct Message {
    pub from: String,
    pub to: String,
    pub performative: Performative,
    pub content: Term,
}

#[derive(Debug, Clone)]
struct Frame {
    plan_idx: usize,
    subst: Substitution,
    remaining: VecDeque<BodyStep>,
    degree: f64,
}

/// A stack of plan instances; a subgoal suspends the current frame and
/// pushes the child plan's frame.
#[derive(Debug, Clone, Default)]
pub struct Intention {
    frames: Vec<Frame>,
}

/// What happened during one reasoning cycle.
#[derive(Debug, Clone, Default)]
pub struct CycleReport {
    pub cycle: u64,
    /// Elapsed from perceive entry to the end of the cycle's run.
    pub elapsed: Duration,
    /// An intention was started or resumed.
    pub processed: bool,
    /// Plan indices selected this cycle, in selection order.
    pub selections: Vec<usize>,
    /// Ground actuation actions accepted by the environment.
    pub actions: Vec<Term>,
    /// The cycle ended by issuing a sensing action.
    pub sensed: bool,
    pub completed: bool,
    pub failed: Option<String>,
    pub dropped_events: u32,
    pub outgoing: Vec<Message>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuntimeError {
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error("context evaluation failed: {0}")]
    Solve(#[from] crate::logic::SolveError),
}

const STEP_BUDGET: usize = 1_000_000;

/// One agent: program, belief base, event queue, mailbox and selection mode.
#[derive(Debug, Clone)]
pub struct AgentRuntime {
    pub name: String,
    program: Arc<Program>,
    mode: Mode,
    /// Variables whose percept readings get fuzzified into beliefs.
    variables: Arc<Vec<LinguisticVariable>>,
    pub beliefs: BeliefBase,
    events: VecDeque<Event>,
    suspended: Option<Intention>,
    mailbox: VecDeque<Message>,
    depth_limit: usize,
    cycles: u64,
}

impl AgentRuntime {
    pub fn new(
        name: &str,
        program: Arc<Program>,
        mode: Mode,
        variables: Arc<Vec<LinguisticVariable>>,
    ) -> AgentRuntime {
        let mut agent = AgentRuntime {
            name: name.to_string(),
            program,
            mode,
            variables,
            beliefs: BeliefBase::new(),
            events: VecDeque::new(),
            suspended: None,
            mailbox: VecDeque::new(),
            depth_limit: crate::logic::DEFAULT_DEPTH_LIMIT,
            cycles: 0,
        };
        agent.reset();
        agent
    }

    /// Restores initial beliefs and goals, clearing all runtime state.
    pub fn reset(&mut self) {
        self.beliefs.clear();
        self.events.clear();
        self.suspended = None;
        self.mailbox.clear();
        self.cycles = 0;
        for belief in &self.program.initial_beliefs {
            self.beliefs.add(belief.clone());
        }
        for goal in &self.program.initial_goals {
            self.events.push_back(Event {
                trigger: goal.clone(),
                fuzzy: false,
                source: EventSource::InitialGoal,
            });
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn post_message(&mut self, msg: Message) {
        self.mailbox.push_back(msg);
    }

    pub fn post_event(&mut self, event: Event) {
        self.events.push_back(event);
    }

    /// Pending work: queued events or a suspended intention.
    pub fn has_work(&self) -> bool {
        self.suspended.is_some() || !self.events.is_empty()
    }

    /// Updates the belief base from fresh percepts. Fuzzified variables are
    /// replaced wholesale: Boolean mode keeps only the dominant label,
    /// fuzzy modes keep one degreed belief per label. Facts replace earlier
    /// facts with the same functor and arity.
    pub fn perceive(&mut self, percepts: &Percepts) -> Result<(), EnvError> {
        for var in self.variables.iter() {
            let x = percepts
                .readings
                .iter()
                .find(|(name, _)| name == &var.name)
                .ok_or_else(|| EnvError::MissingPercept(var.name.clone()))?
                .1;
            self.beliefs.retract_functor(&var.name, 1);
            self.beliefs.retract_functor(&var.name, 2);
            match self.mode {
                Mode::Boolean => {
                    let (label, _) = var.dominant(x);
                    self.beliefs
                        .add(Term::compound(&var.name, vec![Term::atom(&label)]));
                }
                Mode::FuzzyTight | Mode::FuzzyLoose => {
                    for (label, degree) in var.fuzzify(x) {
                        self.beliefs.add(Term::compound(
                            &var.name,
                            vec![Term::atom(&label), Term::Num(degree)],
                        ));
                    }
                }
            }
        }
        let mut replaced: Vec<(String, usize)> = Vec::new();
        for fact in &percepts.facts {
            if let Some(functor) = fact.functor() {
                let key = (functor.to_string(), fact.arity());
                if !replaced.contains(&key) {
                    self.beliefs.retract_functor(&key.0, key.1);
                    replaced.push(key);
                }
            }
        }
        for fact in &percepts.facts {
            self.beliefs.add(fact.clone());
        }
        Ok(())
    }

    /// Every applicable plan for the event, in textual order. In fuzzy-tight
    /// mode each candidate carries its context membership degree.
    pub fn applicable_plans(&self, event: &Event) -> Result<Vec<Candidate>, RuntimeError> {
        let mut out = Vec::new();
        for (idx, plan) in self.program.plans.iter().enumerate() {
            if plan.trigger_fuzzy != event.fuzzy {
                continue;
            }
            let Some(subst) = unify(&plan.trigger, &event.trigger, &Substitution::new()) else {
                continue;
            };
            if let Some(candidate) = self.evaluate_context(idx, &plan.context, subst)? {
                out.push(candidate);
            }
        }
        Ok(out)
    }

    /// Plan selection. Boolean and fuzzy-loose take the first applicable
    /// plan in textual order and stop scanning there; fuzzy-tight must
    /// evaluate every relevant plan to take the maximum-degree candidate
    /// (ties go to textual order).
    pub fn select_for_event(&self, event: &Event) -> Result<Option<Candidate>, RuntimeError> {
        match self.mode {
            Mode::Boolean | Mode::FuzzyLoose => {
                for (idx, plan) in self.program.plans.iter().enumerate() {
                    if plan.trigger_fuzzy != event.fuzzy {
                        continue;
                    }
                    let Some(subst) = unify(&plan.trigger, &event.trigger, &Substitution::new())
                    else {
                        continue;
                    };
                    if let Some(candidate) = self.evaluate_context(idx, &plan.context, subst)? {
                        return Ok(Some(candidate));
                    }
                }
                Ok(None)
            }
            Mode::FuzzyTight => {
                let candidates = self.applicable_plans(event)?;
                Ok(select_max_degree(candidates))
            }
        }
    }

    fn evaluate_context(
        &self,
        plan_idx: usize,
        context: &LogicalFormula,
        subst: Substitution,
    ) -> Result<Option<Candidate>, RuntimeError> {
        match self.mode {
            Mode::Boolean | Mode::FuzzyLoose => {
                let solver = Solver::new(&self.beliefs, &self.program.belief_rules)
                    .with_depth_limit(self.depth_limit);
                Ok(solver.first(context, &subst)?.map(|s| Candidate {
                    plan_idx,
                    subst: s,
                    degree: 1.0,
                }))
            }
            Mode::FuzzyTight => {
                Ok(self
                    .fuzzy_context_first(context, &subst)?
                    .map(|(s, degree)| Candidate {
                        plan_idx,
                        subst: s,
                        degree,
                    }))
            }
        }
    }

    /// Fuzzy-tight context evaluation: a positive literal `pred(label)` over
    /// a fuzzified variable resolves to that label's stored degree (degree 0
    /// still satisfies); conjunctions aggregate by minimum; negations,
    /// comparisons and ordinary crisp literals contribute 1 when satisfied.
    /// Returns the first solution in enumeration order with its degree.
    fn fuzzy_context_first(
        &self,
        context: &LogicalFormula,
        subst: &Substitution,
    ) -> Result<Option<(Substitution, f64)>, RuntimeError> {
        let mut found = None;
        self.fuzzy_context_walk(context, subst, &mut |s, d| {
            found = Some((s.clone(), d));
            false
        })?;
        Ok(found)
    }

    fn fuzzy_context_walk(
        &self,
        f: &LogicalFormula,
        s: &Substitution,
        sink: &mut dyn FnMut(&Substitution, f64) -> bool, // false = stop
    ) -> Result<bool, RuntimeError> {
        let solver = Solver::new(&self.beliefs, &self.program.belief_rules)
            .with_depth_limit(self.depth_limit);
        match f {
            LogicalFormula::True => Ok(sink(s, 1.0)),
            LogicalFormula::False => Ok(true),
            LogicalFormula::Literal(term) => {
                let resolved = s.apply(term);
                if let (Some(functor), 1) = (resolved.functor(), resolved.arity()) {
                    if self.variables.iter().any(|v| v.name == functor) {
                        if let Term::Atom(label) = &resolved.args()[0] {
                            return match self.beliefs.degree_of(functor, label) {
                                Some(degree) => Ok(sink(s, degree)),
                                None => Ok(true),
                            };
                        }
                    }
                }
                for sol in solver.solutions(&LogicalFormula::Literal(resolved), s)? {
                    if !sink(&sol, 1.0) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            LogicalFormula::Not(inner) => {
                let mut any = false;
                self.fuzzy_context_walk(inner, s, &mut |_, _| {
                    any = true;
                    false
                })?;
                if any {
                    Ok(true)
                } else {
                    Ok(sink(s, 1.0))
                }
            }
            LogicalFormula::And(left, right) => {
                let mut keep_going = true;
                let mut error: Option<RuntimeError> = None;
                self.fuzzy_context_walk(left, s, &mut |mid, d1| {
                    match self.fuzzy_context_walk(right, mid, &mut |out, d2| {
                        sink(out, d1.min(d2))
                    }) {
                        Ok(cont) => {
                            keep_going = cont;
                            cont
                        }
                        Err(e) => {
                            error = Some(e);
                            false
                        }
                    }
                })?;
                if let Some(e) = error {
                    return Err(e);
                }
                Ok(keep_going)
            }
            LogicalFormula::Or(left, right) => {
                if !self.fuzzy_context_walk(left, s, sink)? {
                    return Ok(false);
                }
                self.fuzzy_context_walk(right, s, sink)
            }
            LogicalFormula::Relational { .. } => {
                if solver.exists(f, s)? {
                    Ok(sink(s, 1.0))
                } else {
                    Ok(true)
                }
            }
        }
    }

    /// Runs one reasoning cycle against the environment.
    pub fn reasoning_cycle(&mut self, env: &mut dyn Environment) -> Result<CycleReport, RuntimeError> {
        let mut report = CycleReport {
            cycle: self.cycles,
            ..CycleReport::default()
        };
        self.cycles += 1;

        // Mail is delivered before perceive so a told belief is visible to
        // this cycle's context checks.
        while let Some(msg) = self.mailbox.pop_front() {
            match msg.performative {
                Performative::Tell => self.beliefs.add(msg.content),
                Performative::Achieve => self.events.push_back(Event {
                    trigger: msg.content,
                    fuzzy: false,
                    source: EventSource::Message(msg.from),
                }),
            }
        }

        let started = Instant::now();
        let percepts = env.percepts(&self.name)?;
        self.perceive(&percepts)?;

        if let Some(intention) = self.suspended.take() {
            report.processed = true;
            self.run_intention(intention, env, &mut report)?;
        } else if let Some(event) = self.events.pop_front() {
            report.processed = true;
            match self.select_for_event(&event)? {
                Some(candidate) => {
                    report.selections.push(candidate.plan_idx);
                    let intention = Intention {
                        frames: vec![self.frame_for(candidate)],
                    };
                    self.run_intention(intention, env, &mut report)?;
                }
                None => report.dropped_events += 1,
            }
        }

        report.elapsed = started.elapsed();
        Ok(report)
    }

    fn frame_for(&self, candidate: Candidate) -> Frame {
        let plan = &self.program.plans[candidate.plan_idx];
        Frame {
            plan_idx: candidate.plan_idx,
            subst: candidate.subst,
            remaining: plan.body.iter().cloned().collect(),
            degree: candidate.degree,
        }
    }

    fn run_intention(
        &mut self,
        mut intention: Intention,
        env: &mut dyn Environment,
        report: &mut CycleReport,
    ) -> Result<(), RuntimeError> {
        let mut steps = 0usize;
        loop {
            steps += 1;
            if steps > STEP_BUDGET {
                report.failed = Some("intention exceeded the per-cycle step budget".into());
                return Ok(());
            }
            let Some(frame) = intention.frames.last_mut() else {
                report.completed = true;
                return Ok(());
            };
            let Some(step) = frame.remaining.pop_front() else {
                intention.frames.pop();
                continue;
            };
            match step {
                BodyStep::Action { term, fuzzy } => {
                    let mut ground = frame.subst.apply(&term);
                    if fuzzy && self.mode == Mode::FuzzyTight {
                        scale_first_numeric_arg(&mut ground, frame.degree);
                    }
                    match env.act(&self.name, &ground) {
                        Ok(ActionOutcome::Done) => report.actions.push(ground),
                        Ok(ActionOutcome::Sense) => {
                            report.sensed = true;
                            self.suspended = Some(intention);
                            return Ok(());
                        }
                        Err(e) => {
                            report.failed = Some(e.to_string());
                            return Ok(());
                        }
                    }
                }
                BodyStep::Subgoal { term, fuzzy } => {
                    let trigger = frame.subst.apply(&term);
                    let event = Event {
                        trigger,
                        fuzzy,
                        source: EventSource::InitialGoal,
                    };
                    match self.select_for_event(&event)? {
                        Some(candidate) => {
                            report.selections.push(candidate.plan_idx);
                            let child = self.frame_for(candidate);
                            intention.frames.push(child);
                        }
                        // No applicable plan: the event is dropped and the
                        // parent continues (its remaining steps, if any).
                        None => report.dropped_events += 1,
                    }
                }
                BodyStep::TestGoal(term) => {
                    let solver = Solver::new(&self.beliefs, &self.program.belief_rules)
                        .with_depth_limit(self.depth_limit);
                    let goal = LogicalFormula::Literal(term.clone());
                    match solver.first(&goal, &frame.subst)? {
                        Some(extended) => frame.subst = extended,
                        None => {
                            report.failed =
                                Some(format!("test goal ?{} had no solution", term));
                            return Ok(());
                        }
                    }
                }
                BodyStep::BeliefReplace(term) => {
                    let ground = frame.subst.apply(&term);
                    if let Some(functor) = ground.functor() {
                        self.beliefs.retract_functor(functor, ground.arity());
                    }
                    self.beliefs.add(ground);
                }
                BodyStep::Assign { var, expr } => match eval_arith(&expr, &frame.subst) {
                    Ok(value) => frame.subst.bind(&var, Term::Num(value)),
                    Err(e) => {
                        report.failed = Some(e.to_string());
                        return Ok(());
                    }
                },
                BodyStep::Send {
                    receiver,
                    performative,
                    content,
                } => {
                    report.outgoing.push(Message {
                        from: self.name.clone(),
                        to: receiver,
                        performative,
                        content: frame.subst.apply(&content),
                    });
                }
            }
        }
    }
}

/// Max-degree candidate, ties resolved toward the earliest plan.
fn select_max_degree(candidates: Vec<Candidate>) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    for candidate in candidates {
        match &best {
            Some(current) if candidate.degree <= current.degree => {}
            _ => best = Some(candidate),
        }
    }
    best
}

/// Replaces the first numeric argument with its degree-scaled value.
fn scale_first_numeric_arg(action: &mut Term, degree: f64) {
    if let Term::Compound(_, args) = action {
        for arg in args.iter_mut() {
            if let Term::Num(value) = arg {
                // degree comes from fuzzification, always within [0,1]
                *arg = Term::Num(crate::fuzzy::scale_action(*value, degree).unwrap_or(*value * degree));
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests;
