//! Recursive-descent parser for the AgentSpeak subset.
//!
//! Grammar notes:
//! - `&` binds tighter than `|`; `not` binds tightest; parentheses override.
//! - `not` accepts either a literal (`not p(x)`) or a parenthesized formula.
//! - `-+b(t)` is an atomic belief replace; `X = expr` an assignment.
//! - `[fuzzy]` may annotate plan triggers, subgoals and actions.

use thiserror::Error;

use crate::logic::{BeliefRule, LogicalFormula, RelOp, Term};

use super::ast::{BodyStep, Performative, Plan, Program};
use super::lexer::{lex, LexError, Spanned, Token};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("{0}")]
    Lex(#[from] LexError),
    #[error("syntax error at {line}:{col}: found {found}, expected {}", expected.join(" or "))]
    Syntax {
        line: usize,
        col: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("invalid belief rule at {line}:{col}: {message}")]
    BadRule {
        line: usize,
        col: usize,
        message: String,
    },
}

/// Parses a complete `.asl` program.
pub fn parse_program(source: &str) -> Result<Program, ParseError> {
    let tokens = lex(source)?;
    let mut parser = Parser { tokens, pos: 0 };
    parser.program()
}

/// Parses a context/rule-body formula on its own (used by generators/tests).
pub fn parse_formula(source: &str) -> Result<LogicalFormula, ParseError> {
    let tokens = lex(source)?;
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.formula()?;
    parser.expect(Token::Eof, "end of input")?;
    Ok(formula)
}

/// Parses a single term (used by generators/tests).
pub fn parse_term(source: &str) -> Result<Term, ParseError> {
    let tokens = lex(source)?;
    let mut parser = Parser { tokens, pos: 0 };
    let term = parser.expr()?;
    parser.expect(Token::Eof, "end of input")?;
    Ok(term)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].token
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let idx = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[idx].token
    }

    fn here(&self) -> (usize, usize) {
        let s = &self.tokens[self.pos.min(self.tokens.len() - 1)];
        (s.line, s.col)
    }

    fn bump(&mut self) -> Token {
        let token = self.tokens[self.pos].token.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    fn error<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax {
            line,
            col,
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn expect(&mut self, token: Token, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == token {
            self.bump();
            Ok(())
        } else {
            self.error(&[expected])
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == token {
            self.bump();
            true
        } else {
            false
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut program = Program::default();
        while *self.peek() != Token::Eof {
            match self.peek() {
                Token::Plus => {
                    program.plans.push(self.plan()?);
                }
                Token::Bang => {
                    self.bump();
                    let goal = self.expr()?;
                    self.expect(Token::Dot, "`.`")?;
                    program.initial_goals.push(goal);
                }
                Token::Ident(_) => {
                    let (line, col) = self.here();
                    let head = self.expr()?;
                    match self.peek() {
                        Token::ColonDash => {
                            self.bump();
                            let body = self.formula()?;
                            self.expect(Token::Dot, "`.`")?;
                            let rule = BeliefRule::new(head, body).map_err(|e| {
                                ParseError::BadRule {
                                    line,
                                    col,
                                    message: e.to_string(),
                                }
                            })?;
                            program.belief_rules.push(rule);
                        }
                        Token::Dot => {
                            self.bump();
                            program.initial_beliefs.push(head);
                        }
                        _ => return self.error(&["`:-`", "`.`"]),
                    }
                }
                _ => return self.error(&["`+!` plan", "`!` initial goal", "belief or rule"]),
            }
        }
        Ok(program)
    }

    fn plan(&mut self) -> Result<Plan, ParseError> {
        self.expect(Token::Plus, "`+`")?;
        if *self.peek() != Token::Bang {
            // belief-addition triggers are out of grammar scope
            return self.error(&["`!` achievement trigger"]);
        }
        self.bump();
        let trigger = self.expr()?;
        let trigger_fuzzy = self.annotation()?;
        let context = if self.eat(&Token::Colon) {
            self.formula()?
        } else {
            LogicalFormula::True
        };
        self.expect(Token::Arrow, "`<-`")?;
        let mut body = vec![self.body_step()?];
        while self.eat(&Token::Semicolon) {
            body.push(self.body_step()?);
        }
        self.expect(Token::Dot, "`.`")?;
        Ok(Plan::new(trigger, trigger_fuzzy, context, body))
    }

    /// `[fuzzy]` after a trigger or action term.
    fn annotation(&mut self) -> Result<bool, ParseError> {
        if !self.eat(&Token::LBracket) {
            return Ok(false);
        }
        match self.bump() {
            Token::Ident(name) if name == "fuzzy" => {}
            _ => return self.error(&["`fuzzy`"]),
        }
        self.expect(Token::RBracket, "`]`")?;
        Ok(true)
    }

    fn body_step(&mut self) -> Result<BodyStep, ParseError> {
        match self.peek().clone() {
            Token::Bang => {
                self.bump();
                let term = self.expr()?;
                let fuzzy = self.annotation()?;
                Ok(BodyStep::Subgoal { term, fuzzy })
            }
            Token::Question => {
                self.bump();
                Ok(BodyStep::TestGoal(self.expr()?))
            }
            Token::MinusPlus => {
                self.bump();
                Ok(BodyStep::BeliefReplace(self.expr()?))
            }
            Token::DotIdent(name) => {
                if name != "send" {
                    return self.error(&["`.send`"]);
                }
                self.bump();
                self.expect(Token::LParen, "`(`")?;
                let receiver = match self.bump() {
                    Token::Ident(r) => r,
                    _ => return self.error(&["receiver atom"]),
                };
                self.expect(Token::Comma, "`,`")?;
                let performative = match self.bump() {
                    Token::Ident(p) if p == "tell" => Performative::Tell,
                    Token::Ident(p) if p == "achieve" => Performative::Achieve,
                    _ => return self.error(&["`tell`", "`achieve`"]),
                };
                self.expect(Token::Comma, "`,`")?;
                let content = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(BodyStep::Send {
                    receiver,
                    performative,
                    content,
                })
            }
            Token::VarIdent(name) => {
                if *self.peek_at(1) == Token::Assign {
                    self.bump();
                    self.bump();
                    let expr = self.expr()?;
                    Ok(BodyStep::Assign { var: name, expr })
                } else {
                    // bare variable in action position (late-bound action)
                    self.bump();
                    let fuzzy = self.annotation()?;
                    Ok(BodyStep::Action {
                        term: Term::Var(name),
                        fuzzy,
                    })
                }
            }
            Token::Ident(_) => {
                let term = self.expr()?;
                let fuzzy = self.annotation()?;
                Ok(BodyStep::Action { term, fuzzy })
            }
            _ => self.error(&["body step"]),
        }
    }

    // formula := and_expr { `|` and_expr }
    fn formula(&mut self) -> Result<LogicalFormula, ParseError> {
        let mut left = self.and_expr()?;
        while self.eat(&Token::Pipe) {
            let right = self.and_expr()?;
            left = LogicalFormula::or(left, right);
        }
        Ok(left)
    }

    fn and_expr(&mut self) -> Result<LogicalFormula, ParseError> {
        let mut left = self.unary_formula()?;
        while self.eat(&Token::Amp) {
            let right = self.unary_formula()?;
            left = LogicalFormula::and(left, right);
        }
        Ok(left)
    }

    fn unary_formula(&mut self) -> Result<LogicalFormula, ParseError> {
        match self.peek().clone() {
            Token::Ident(name) if name == "not" => {
                self.bump();
                let inner = self.unary_formula()?;
                Ok(LogicalFormula::not(inner))
            }
            Token::Ident(name) if name == "true" && *self.peek_at(1) != Token::LParen => {
                self.bump();
                Ok(LogicalFormula::True)
            }
            Token::Ident(name) if name == "false" && *self.peek_at(1) != Token::LParen => {
                self.bump();
                Ok(LogicalFormula::False)
            }
            Token::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> Result<LogicalFormula, ParseError> {
        let lhs = self.expr()?;
        let op = match self.peek() {
            Token::EqEq => Some(RelOp::Eq),
            Token::Neq => Some(RelOp::Neq),
            Token::Gt => Some(RelOp::Gt),
            Token::Lt => Some(RelOp::Lt),
            Token::Ge => Some(RelOp::Ge),
            Token::Le => Some(RelOp::Le),
            _ => None,
        };
        match op {
            Some(op) => {
                self.bump();
                let rhs = self.expr()?;
                Ok(LogicalFormula::Relational { op, lhs, rhs })
            }
            None => match lhs {
                Term::Atom(_) | Term::Compound(..) => Ok(LogicalFormula::Literal(lhs)),
                other => {
                    let (line, col) = self.here();
                    Err(ParseError::Syntax {
                        line,
                        col,
                        found: format!("term `{other}`"),
                        expected: vec!["literal or comparison".into()],
                    })
                }
            },
        }
    }

    // expr := mul { (`+`|`-`) mul }
    fn expr(&mut self) -> Result<Term, ParseError> {
        let mut left = self.mul()?;
        loop {
            let op = match self.peek() {
                Token::Plus => "+",
                Token::Minus => "-",
                _ => break,
            };
            self.bump();
            let right = self.mul()?;
            left = Term::compound(op, vec![left, right]);
        }
        Ok(left)
    }

    fn mul(&mut self) -> Result<Term, ParseError> {
        let mut left = self.factor()?;
        loop {
            let op = match self.peek() {
                Token::Star => "*",
                Token::Slash => "/",
                _ => break,
            };
            self.bump();
            let right = self.factor()?;
            left = Term::compound(op, vec![left, right]);
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Token::Minus => {
                self.bump();
                match self.factor()? {
                    Term::Num(v) => Ok(Term::Num(-v)),
                    other => Ok(Term::compound("-", vec![other])),
                }
            }
            Token::Num(value) => {
                self.bump();
                Ok(Term::Num(value))
            }
            Token::Str(value) => {
                self.bump();
                Ok(Term::Str(value))
            }
            Token::VarIdent(name) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Token::Ident(name) => {
                self.bump();
                if self.eat(&Token::LParen) {
                    let mut args = vec![self.expr()?];
                    while self.eat(&Token::Comma) {
                        args.push(self.expr()?);
                    }
                    self.expect(Token::RParen, "`)`")?;
                    Ok(Term::Compound(name, args))
                } else {
                    Ok(Term::Atom(name))
                }
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.error(&["term"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::LogicalFormula as F;

    #[test]
    fn parses_single_initial_goal() {
        let program = parse_program("!init.").unwrap();
        assert_eq!(program.initial_goals, vec![Term::atom("init")]);
        assert!(program.plans.is_empty());
    }

    #[test]
    fn parses_tight_fan_controller() {
        let src = "\
!sense.
+!sense: true <-  senseEnv; !keepCool[fuzzy].
+!keepCool[fuzzy]:temp(warm)<- fanAction(450)[fuzzy].
+!keepCool[fuzzy]:temp(cold) <- fanAction(650)[fuzzy].
+!keepCool[fuzzy]:temp(hot)  <- fanAction(750)[fuzzy].
";
        let program = parse_program(src).unwrap();
        assert_eq!(program.initial_goals.len(), 1);
        assert_eq!(program.plans.len(), 4);
        assert!(!program.plans[0].trigger_fuzzy);
        for plan in &program.plans[1..] {
            assert!(plan.trigger_fuzzy);
            assert!(matches!(
                plan.body.last(),
                Some(BodyStep::Action { term, fuzzy: true })
                    if term.functor() == Some("fanAction")
            ));
        }
    }

    #[test]
    fn parses_argmax_belief_rule_structure() {
        let src = "isit(T) :- temp(T,D1) & not(temp(_,D2) & D2>D1).";
        let program = parse_program(src).unwrap();
        assert_eq!(program.belief_rules.len(), 1);
        let rule = &program.belief_rules[0];
        assert_eq!(rule.head, Term::compound("isit", vec![Term::var("T")]));
        let expected = F::and(
            F::lit(Term::compound("temp", vec![Term::var("T"), Term::var("D1")])),
            F::not(F::and(
                F::lit(Term::compound("temp", vec![Term::var("_"), Term::var("D2")])),
                F::rel(RelOp::Gt, Term::var("D2"), Term::var("D1")),
            )),
        );
        assert_eq!(rule.body, expected);
    }

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        let f = parse_formula("a & b | c & d").unwrap();
        assert_eq!(
            f,
            F::or(
                F::and(F::lit(Term::atom("a")), F::lit(Term::atom("b"))),
                F::and(F::lit(Term::atom("c")), F::lit(Term::atom("d"))),
            )
        );
    }

    #[test]
    fn prefix_not_without_parens() {
        let f = parse_formula("not pos(r1,6,7) | continue(r1,true)").unwrap();
        assert_eq!(
            f,
            F::or(
                F::not(F::lit(Term::compound(
                    "pos",
                    vec![Term::atom("r1"), Term::num(6.0), Term::num(7.0)]
                ))),
                F::lit(Term::compound(
                    "continue",
                    vec![Term::atom("r1"), Term::atom("true")]
                )),
            )
        );
    }

    #[test]
    fn parses_send_replace_assign_and_test() {
        let src = "+!build : true <- -+buildFree(false); buildStatus(M); K = M+1; -+buildStatus(K); !state.\n\
                   +!notify : true <- .send(r2,tell,moveCount(r1,2)); ?temp(cold,D1).";
        let program = parse_program(src).unwrap();
        let body = &program.plans[0].body;
        assert!(matches!(body[0], BodyStep::BeliefReplace(_)));
        assert!(matches!(body[1], BodyStep::Action { .. }));
        assert!(matches!(body[2], BodyStep::Assign { ref var, .. } if var == "K"));
        let body2 = &program.plans[1].body;
        assert!(matches!(
            body2[0],
            BodyStep::Send {
                performative: Performative::Tell,
                ..
            }
        ));
        assert!(matches!(body2[1], BodyStep::TestGoal(_)));
    }

    #[test]
    fn negative_thresholds_fold_to_numbers() {
        let program = parse_program("+!scale : true <- scaleFactor(-15).").unwrap();
        match &program.plans[0].body[0] {
            BodyStep::Action { term, .. } => {
                assert_eq!(term.args()[0], Term::num(-15.0));
            }
            other => panic!("unexpected step {other:?}"),
        }
    }

    #[test]
    fn syntax_error_carries_position_and_expectations() {
        let err = parse_program("+!g : a <- .").unwrap_err();
        match err {
            ParseError::Syntax { line, col, expected, .. } => {
                assert_eq!(line, 1);
                assert!(col > 0);
                assert!(!expected.is_empty());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn string_arguments_survive() {
        let program = parse_program("+!d : red(high) <- saveResult(\"Dark Green\").").unwrap();
        match &program.plans[0].body[0] {
            BodyStep::Action { term, .. } => {
                assert_eq!(term.args()[0], Term::string("Dark Green"));
            }
            other => panic!("unexpected step {other:?}"),
        }
    }
}
