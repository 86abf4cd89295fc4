use std::sync::Arc;

use super::*;
use crate::asl::parse_program;
use crate::fuzzy::fan_temperature_variable;
use crate::runtime::system::System;

/// Records actuation; any action named in `sense_actions` suspends the cycle.
struct TestEnv {
    temp: f64,
    sense_actions: Vec<&'static str>,
    actions: Vec<Term>,
}

impl TestEnv {
    fn new(temp: f64) -> TestEnv {
        TestEnv {
            temp,
            sense_actions: vec!["senseEnv", "sampleSensorData"],
            actions: Vec::new(),
        }
    }
}

impl Environment for TestEnv {
    fn percepts(&mut self, _agent: &str) -> Result<Percepts, EnvError> {
        Ok(Percepts {
            readings: vec![("temp".to_string(), self.temp)],
            facts: vec![],
        })
    }

    fn act(&mut self, _agent: &str, action: &Term) -> Result<ActionOutcome, EnvError> {
        if action
            .functor()
            .is_some_and(|f| self.sense_actions.contains(&f))
        {
            return Ok(ActionOutcome::Sense);
        }
        self.actions.push(action.clone());
        Ok(ActionOutcome::Done)
    }
}

struct NullEnv;

impl Environment for NullEnv {
    fn percepts(&mut self, _agent: &str) -> Result<Percepts, EnvError> {
        Ok(Percepts::default())
    }

    fn act(&mut self, _agent: &str, _action: &Term) -> Result<ActionOutcome, EnvError> {
        Ok(ActionOutcome::Done)
    }
}

const TIGHT_FAN: &str = "\
!sense.
+!sense: true <- senseEnv; !keepCool[fuzzy].
+!keepCool[fuzzy]: temp(warm) <- fanAction(650)[fuzzy].
+!keepCool[fuzzy]: temp(cold) <- fanAction(450)[fuzzy].
+!keepCool[fuzzy]: temp(hot) <- fanAction(750)[fuzzy].
";

fn fan_agent(mode: Mode) -> AgentRuntime {
    let program = Arc::new(parse_program(TIGHT_FAN).unwrap());
    AgentRuntime::new(
        "fan",
        program,
        mode,
        Arc::new(vec![fan_temperature_variable()]),
    )
}

fn degreed(pred: &str, label: &str, d: f64) -> Term {
    Term::compound(pred, vec![Term::atom(label), Term::Num(d)])
}

#[test]
fn perceive_fuzzy_stores_one_degreed_belief_per_label() {
    let mut agent = fan_agent(Mode::FuzzyLoose);
    let percepts = Percepts {
        readings: vec![("temp".into(), 18.0)],
        facts: vec![],
    };
    agent.perceive(&percepts).unwrap();
    assert!((agent.beliefs.degree_of("temp", "cold").unwrap() - 0.1).abs() < 1e-12);
    assert!((agent.beliefs.degree_of("temp", "warm").unwrap() - 8.0 / 12.0).abs() < 1e-12);
    assert_eq!(agent.beliefs.degree_of("temp", "hot"), Some(0.0));
    assert_eq!(agent.beliefs.len(), 3);
    // re-perceiving replaces, never accumulates
    agent.perceive(&percepts).unwrap();
    assert_eq!(agent.beliefs.len(), 3);
}

#[test]
fn perceive_boolean_keeps_dominant_label_only() {
    let mut agent = fan_agent(Mode::Boolean);
    agent
        .perceive(&Percepts {
            readings: vec![("temp".into(), 18.0)],
            facts: vec![],
        })
        .unwrap();
    assert!(agent.beliefs.contains(&Term::compound("temp", vec![Term::atom("warm")])));
    assert_eq!(agent.beliefs.len(), 1);

    // exactly at the cold peak
    agent
        .perceive(&Percepts {
            readings: vec![("temp".into(), 0.0)],
            facts: vec![],
        })
        .unwrap();
    assert!(agent.beliefs.contains(&Term::compound("temp", vec![Term::atom("cold")])));
    assert_eq!(agent.beliefs.len(), 1);
}

#[test]
fn perceive_missing_reading_errors() {
    let mut agent = fan_agent(Mode::Boolean);
    let err = agent.perceive(&Percepts::default()).unwrap_err();
    assert_eq!(err, EnvError::MissingPercept("temp".into()));
}

#[test]
fn applicable_plans_carry_degrees_in_textual_order() {
    let mut agent = fan_agent(Mode::FuzzyTight);
    agent.beliefs.add(degreed("temp", "warm", 8.0 / 12.0));
    agent.beliefs.add(degreed("temp", "cold", 0.1));
    agent.beliefs.add(degreed("temp", "hot", 0.0));
    let event = Event {
        trigger: Term::atom("keepCool"),
        fuzzy: true,
        source: EventSource::InitialGoal,
    };
    let candidates = agent.applicable_plans(&event).unwrap();
    assert_eq!(candidates.len(), 3);
    let degrees: Vec<f64> = candidates.iter().map(|c| c.degree).collect();
    assert!((degrees[0] - 8.0 / 12.0).abs() < 1e-12);
    assert!((degrees[1] - 0.1).abs() < 1e-12);
    assert_eq!(degrees[2], 0.0);
    // plan order warm, cold, hot mirrors the program text
    assert_eq!(
        candidates.iter().map(|c| c.plan_idx).collect::<Vec<_>>(),
        vec![1, 2, 3]
    );

    let selected = agent.select_for_event(&event).unwrap().unwrap();
    assert_eq!(selected.plan_idx, 1, "argmax picks the warm plan");
}

#[test]
fn boolean_selection_takes_first_satisfied_context() {
    let src = "\
+!keepCool: temp(cold) <- fanAction(450).
+!keepCool: temp(warm) <- fanAction(650).
+!keepCool: temp(hot) <- fanAction(750).
";
    let program = Arc::new(parse_program(src).unwrap());
    let mut agent = AgentRuntime::new(
        "fan",
        program,
        Mode::Boolean,
        Arc::new(vec![fan_temperature_variable()]),
    );
    agent.beliefs.add(Term::compound("temp", vec![Term::atom("cold")]));
    let event = Event {
        trigger: Term::atom("keepCool"),
        fuzzy: false,
        source: EventSource::InitialGoal,
    };
    let candidates = agent.applicable_plans(&event).unwrap();
    assert_eq!(candidates.len(), 1);
    assert_eq!(candidates[0].plan_idx, 0);

    let missing = Event {
        trigger: Term::atom("noSuchGoal"),
        fuzzy: false,
        source: EventSource::InitialGoal,
    };
    assert!(agent.applicable_plans(&missing).unwrap().is_empty());
}

#[test]
fn tie_breaks_toward_first_plan() {
    let mut agent = fan_agent(Mode::FuzzyTight);
    agent.beliefs.add(degreed("temp", "warm", 0.5));
    agent.beliefs.add(degreed("temp", "cold", 0.5));
    agent.beliefs.add(degreed("temp", "hot", 0.0));
    let event = Event {
        trigger: Term::atom("keepCool"),
        fuzzy: true,
        source: EventSource::InitialGoal,
    };
    let selected = agent.select_for_event(&event).unwrap().unwrap();
    assert_eq!(selected.plan_idx, 1, "tie goes to textual order");
}

#[test]
fn tight_cycle_scales_action_by_context_degree() {
    let mut agent = fan_agent(Mode::FuzzyTight);
    let mut env = TestEnv::new(18.0);
    // cycle 1 bootstraps: select the sense plan, suspend at senseEnv
    let first = agent.reasoning_cycle(&mut env).unwrap();
    assert!(first.sensed);
    assert!(env.actions.is_empty());
    // cycle 2 resumes with fresh percepts and acts exactly once
    let second = agent.reasoning_cycle(&mut env).unwrap();
    assert!(second.completed);
    assert_eq!(env.actions.len(), 1);
    let expected = 650.0 * (8.0 / 12.0);
    match &env.actions[0] {
        Term::Compound(name, args) => {
            assert_eq!(name, "fanAction");
            match args[0] {
                Term::Num(v) => assert!((v - expected).abs() < 1e-9, "got {v}"),
                ref other => panic!("unexpected arg {other:?}"),
            }
        }
        other => panic!("unexpected action {other:?}"),
    }
}

#[test]
fn scaled_multiplication_oracle() {
    // 650 multiplied by a 0.667 membership degree
    let mut action = Term::compound("fanAction", vec![Term::Num(650.0)]);
    scale_first_numeric_arg(&mut action, 0.667);
    assert_eq!(action.args()[0], Term::Num(650.0 * 0.667));
    assert!((650.0 * 0.667 - 433.55).abs() < 1e-9);
}

#[test]
fn belief_replace_is_atomic() {
    let src = "buildStatus(2).\n!go.\n+!go : true <- -+buildStatus(0).";
    let program = Arc::new(parse_program(src).unwrap());
    let mut agent = AgentRuntime::new("build", program, Mode::Boolean, Arc::new(vec![]));
    let mut env = NullEnv;
    agent.reasoning_cycle(&mut env).unwrap();
    assert!(agent.beliefs.contains(&Term::compound("buildStatus", vec![Term::Num(0.0)])));
    assert_eq!(agent.beliefs.len(), 1);
}

#[test]
fn tell_adds_belief_without_creating_events() {
    let sender = parse_program("!go.\n+!go : true <- .send(r2,tell,moveCount(r1,2)).").unwrap();
    let receiver = parse_program("").unwrap();
    let mut system = System::new(
        vec![
            AgentRuntime::new("r1", Arc::new(sender), Mode::Boolean, Arc::new(vec![])),
            AgentRuntime::new("r2", Arc::new(receiver), Mode::Boolean, Arc::new(vec![])),
        ],
        NullEnv,
    );
    let reports = system.step_round().unwrap();
    assert_eq!(reports[0].outgoing.len(), 1);
    let r2 = system.agent("r2").unwrap();
    assert!(r2
        .beliefs
        .contains(&Term::compound("moveCount", vec![Term::atom("r1"), Term::Num(2.0)])));
    assert!(!r2.has_work(), "tell must not create events");
}

#[test]
fn achieve_posts_event_at_receiver_only() {
    let sender = parse_program("!go.\n+!go : true <- .send(worker,achieve,build).").unwrap();
    let worker = parse_program("+!build : true <- pressOnce.").unwrap();
    let mut system = System::new(
        vec![
            AgentRuntime::new("boss", Arc::new(sender), Mode::Boolean, Arc::new(vec![])),
            AgentRuntime::new("worker", Arc::new(worker), Mode::Boolean, Arc::new(vec![])),
        ],
        NullEnv,
    );
    let boss_beliefs_before = system.agent("boss").unwrap().beliefs.len();
    system.step_round().unwrap();
    let reports = system.step_round().unwrap();
    // worker acted on the achieve in its own cycle
    assert!(reports
        .iter()
        .any(|r| r.actions.iter().any(|a| a.functor() == Some("pressOnce"))));
    assert_eq!(system.agent("boss").unwrap().beliefs.len(), boss_beliefs_before);
}

#[test]
fn unknown_receiver_is_counted_not_fatal() {
    let sender = parse_program("!go.\n+!go : true <- .send(ghost,tell,x(1)).").unwrap();
    let mut system = System::new(
        vec![AgentRuntime::new("a", Arc::new(sender), Mode::Boolean, Arc::new(vec![]))],
        NullEnv,
    );
    system.step_round().unwrap();
    assert_eq!(system.unknown_receivers, 1);
}

#[test]
fn idle_agent_cycles_are_noops() {
    let program = Arc::new(parse_program("").unwrap());
    let mut agent = AgentRuntime::new("idle", program, Mode::Boolean, Arc::new(vec![]));
    let mut env = NullEnv;
    let report = agent.reasoning_cycle(&mut env).unwrap();
    assert!(!report.processed);
    assert!(report.actions.is_empty());
    assert!(report.selections.is_empty());
}

#[test]
fn test_goal_failure_drops_intention() {
    let src = "!go.\n+!go : true <- ?missing(X); act(X).";
    let program = Arc::new(parse_program(src).unwrap());
    let mut agent = AgentRuntime::new("t", program, Mode::Boolean, Arc::new(vec![]));
    let mut env = NullEnv;
    let report = agent.reasoning_cycle(&mut env).unwrap();
    assert!(report.failed.is_some());
    assert!(report.actions.is_empty());
}

#[test]
fn test_goal_binds_degree_argument() {
    let src = "!go.\n+!go : true <- ?temp(warm,D1); fanActionFuzzy(650,D1).";
    let program = Arc::new(parse_program(src).unwrap());
    let mut agent = AgentRuntime::new("t", program, Mode::FuzzyLoose, Arc::new(vec![]));
    agent.beliefs.add(degreed("temp", "warm", 0.7));
    let mut env = TestEnv::new(0.0);
    env.sense_actions.clear();
    // no fuzzified variables configured, percepts carry no readings
    let report = agent.reasoning_cycle(&mut env).unwrap();
    assert!(report.completed, "failed: {:?}", report.failed);
    assert_eq!(
        env.actions[0],
        Term::compound("fanActionFuzzy", vec![Term::Num(650.0), Term::Num(0.7)])
    );
}
