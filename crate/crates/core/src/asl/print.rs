//! Canonical pretty-printer. `parse_program(pretty_print(p))` is structurally
//! equal to `p` for every program the parser accepts.

use std::fmt::Write;

use super::ast::{BodyStep, Plan, Program};

pub fn pretty_print(program: &Program) -> String {
    let mut out = String::new();
    for belief in &program.initial_beliefs {
        let _ = writeln!(out, "{belief}.");
    }
    for rule in &program.belief_rules {
        let _ = writeln!(out, "{rule}.");
    }
    for goal in &program.initial_goals {
        let _ = writeln!(out, "!{goal}.");
    }
    for plan in &program.plans {
        let _ = writeln!(out, "{}", render_plan(plan));
    }
    out
}

fn render_plan(plan: &Plan) -> String {
    let fuzzy = if plan.trigger_fuzzy { "[fuzzy]" } else { "" };
    let steps: Vec<String> = plan.body.iter().map(render_step).collect();
    format!(
        "+!{}{} : {} <- {}.",
        plan.trigger,
        fuzzy,
        plan.context,
        steps.join("; ")
    )
}

fn render_step(step: &BodyStep) -> String {
    match step {
        BodyStep::Action { term, fuzzy } => {
            format!("{term}{}", if *fuzzy { "[fuzzy]" } else { "" })
        }
        BodyStep::Subgoal { term, fuzzy } => {
            format!("!{term}{}", if *fuzzy { "[fuzzy]" } else { "" })
        }
        BodyStep::TestGoal(term) => format!("?{term}"),
        BodyStep::BeliefReplace(term) => format!("-+{term}"),
        BodyStep::Assign { var, expr } => format!("{var} = {expr}"),
        BodyStep::Send {
            receiver,
            performative,
            content,
        } => format!(".send({receiver},{},{content})", performative.as_str()),
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_program;
    use super::*;

    fn roundtrip(src: &str) {
        let first = parse_program(src).unwrap();
        let printed = pretty_print(&first);
        let second = parse_program(&printed)
            .unwrap_or_else(|e| panic!("printed form failed to reparse: {e}\n{printed}"));
        assert_eq!(first, second, "round-trip mismatch for:\n{printed}");
    }

    #[test]
    fn roundtrips_boolean_fan_controller() {
        roundtrip(
            "!init.\n+!init: true <-!sense.\n+!sense: true <- senseEnv; !keepCool.\n\
             +!keepCool: temp(cold) <- fanAction(450);!sense.\n\
             +!keepCool: temp(warm) <- fanAction(650);!sense.\n\
             +!keepCool: temp(hot) <- fanAction(750);!sense.",
        );
    }

    #[test]
    fn roundtrips_send_and_arith() {
        roundtrip(
            "+!check(slots) : (not pos(r1,6,7) | continue(r1,true)) & vacuumBagFull(r1,M) & M==empty \
             <- .send(r3,tell,continue(r3,true)); .send(r2,tell,moveCount(r1,2)).\n\
             +!build : true <- -+buildFree(false); buildStatus(M); K = M+1; -+buildStatus(K); !state.",
        );
    }

    #[test]
    fn roundtrips_nested_arithmetic() {
        roundtrip("+!calc : X > Y+1 & Z == 2*3+4 <- K = (A+B)*C; act(K).");
    }
}
