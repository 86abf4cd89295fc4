//! Structured JSON view of a parsed program, used by `parse --dump`.

use serde_json::{json, Value};

use super::ast::{BodyStep, Program};

/// Serializes the AST with stable field names: `beliefs`, `rules`, `goals`,
/// `plans[].trigger`, `plans[].fuzzy`, `plans[].context`, `plans[].body`.
pub fn program_to_json(program: &Program) -> Value {
    json!({
        "beliefs": program.initial_beliefs.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "rules": program.belief_rules.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "goals": program.initial_goals.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "plans": program.plans.iter().map(|p| json!({
            "trigger": p.trigger.to_string(),
            "fuzzy": p.trigger_fuzzy,
            "context": p.context.to_string(),
            "body": p.body.iter().map(render_step).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn render_step(step: &BodyStep) -> Value {
    match step {
        BodyStep::Action { term, fuzzy } => json!({
            "kind": "action", "term": term.to_string(), "fuzzy": fuzzy,
        }),
        BodyStep::Subgoal { term, fuzzy } => json!({
            "kind": "subgoal", "term": term.to_string(), "fuzzy": fuzzy,
        }),
        BodyStep::TestGoal(term) => json!({ "kind": "test", "term": term.to_string() }),
        BodyStep::BeliefReplace(term) => json!({ "kind": "replace", "term": term.to_string() }),
        BodyStep::Assign { var, expr } => json!({
            "kind": "assign", "var": var, "expr": expr.to_string(),
        }),
        BodyStep::Send {
            receiver,
            performative,
            content,
        } => json!({
            "kind": "send",
            "receiver": receiver,
            "performative": performative.as_str(),
            "content": content.to_string(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_program;
    use super::*;

    #[test]
    fn json_has_stable_field_names() {
        let program =
            parse_program("!go.\n+!go[fuzzy] : temp(warm) <- fanAction(650)[fuzzy].").unwrap();
        let value = program_to_json(&program);
        assert_eq!(value["goals"][0], "go");
        assert_eq!(value["plans"][0]["fuzzy"], true);
        assert_eq!(value["plans"][0]["context"], "temp(warm)");
        assert_eq!(value["plans"][0]["body"][0]["kind"], "action");
    }
}
