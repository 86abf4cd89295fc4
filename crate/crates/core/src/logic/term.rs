//! First-order terms, substitutions and Robinson unification.
//!
//! Terms follow the AgentSpeak lexical convention: variables start with an
//! uppercase letter or `_`, atoms and functors start lowercase. `_` is the
//! anonymous variable; it unifies with anything and never produces a binding.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// A first-order term.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Atom(String),
    Var(String),
    Num(f64),
    Str(String),
    Compound(String, Vec<Term>),
}

impl Term {
    pub fn atom(name: &str) -> Term {
        Term::Atom(name.to_string())
    }

    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn num(value: f64) -> Term {
        Term::Num(value)
    }

    pub fn string(value: &str) -> Term {
        Term::Str(value.to_string())
    }

    pub fn compound(functor: &str, args: Vec<Term>) -> Term {
        debug_assert!(!args.is_empty(), "compound arity must be >= 1");
        Term::Compound(functor.to_string(), args)
    }

    /// Functor name for atoms and compounds.
    pub fn functor(&self) -> Option<&str> {
        match self {
            Term::Atom(name) => Some(name),
            Term::Compound(functor, _) => Some(functor),
            _ => None,
        }
    }

    /// Arity: 0 for atoms, argument count for compounds.
    pub fn arity(&self) -> usize {
        match self {
            Term::Compound(_, args) => args.len(),
            _ => 0,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Compound(_, args) => args,
            _ => &[],
        }
    }

    pub fn is_anonymous(&self) -> bool {
        matches!(self, Term::Var(name) if name == "_")
    }

    /// True when the term contains no variables.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    /// True when `var` occurs anywhere in the term (the occurs-check probe).
    fn contains_var(&self, var: &str) -> bool {
        match self {
            Term::Var(name) => name == var,
            Term::Compound(_, args) => args.iter().any(|a| a.contains_var(var)),
            _ => false,
        }
    }

    /// Renames every named variable with a suffix, for standardizing rule
    /// clauses apart. The anonymous variable stays anonymous.
    pub fn rename_vars(&self, suffix: &str) -> Term {
        match self {
            Term::Var(name) if name != "_" => Term::Var(format!("{name}{suffix}")),
            Term::Compound(functor, args) => Term::Compound(
                functor.clone(),
                args.iter().map(|a| a.rename_vars(suffix)).collect(),
            ),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(name) | Term::Var(name) => write!(f, "{name}"),
            Term::Num(value) => write!(f, "{value}"),
            Term::Str(value) => write!(f, "\"{}\"", value.replace('\\', "\\\\").replace('"', "\\\"")),
            // arithmetic compounds print infix, parenthesized, so that the
            // rendered form re-parses to the same tree
            Term::Compound(op, args)
                if args.len() == 2 && matches!(op.as_str(), "+" | "-" | "*" | "/") =>
            {
                write!(f, "({}{op}{})", args[0], args[1])
            }
            Term::Compound(op, args) if args.len() == 1 && op == "-" => {
                write!(f, "(-{})", args[0])
            }
            Term::Compound(functor, args) => {
                write!(f, "{functor}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{arg}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A variable-to-term binding map. Bindings resolve transitively through
/// [`Substitution::apply`], so the observable substitution is idempotent.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Substitution {
    bindings: HashMap<String, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    /// Fully resolved binding for `var`, if any.
    pub fn lookup(&self, var: &str) -> Option<Term> {
        self.bindings.get(var).map(|t| self.apply(t))
    }

    /// Resolves one level: a bound variable chain is followed until a
    /// non-variable term or an unbound variable is reached.
    fn walk<'a>(&'a self, term: &'a Term) -> &'a Term {
        let mut current = term;
        while let Term::Var(name) = current {
            match self.bindings.get(name) {
                Some(next) => current = next,
                None => break,
            }
        }
        current
    }

    /// Applies the substitution to a term, resolving bindings recursively.
    pub fn apply(&self, term: &Term) -> Term {
        let walked = self.walk(term);
        match walked {
            Term::Compound(functor, args) => Term::Compound(
                functor.clone(),
                args.iter().map(|a| self.apply(a)).collect(),
            ),
            other => other.clone(),
        }
    }

    /// Binds `var` to `term`. The caller must have run the occurs-check.
    fn bind(&mut self, var: &str, term: Term) {
        self.bindings.insert(var.to_string(), term);
    }
}

/// Unifies `a` and `b` under `s`, returning the extended substitution, or
/// `None` when the terms are not unifiable. The occurs-check is enabled:
/// a variable never binds to a term containing itself.
pub fn unify(a: &Term, b: &Term, s: &Substitution) -> Option<Substitution> {
    let mut out = s.clone();
    if unify_in_place(a, b, &mut out) {
        Some(out)
    } else {
        None
    }
}

/// In-place variant used on hot paths to avoid cloning on failure-heavy scans.
pub fn unify_in_place(a: &Term, b: &Term, s: &mut Substitution) -> bool {
    let a = s.walk(a).clone();
    let b = s.walk(b).clone();
    match (&a, &b) {
        (Term::Var(x), _) if x == "_" => true,
        (_, Term::Var(y)) if y == "_" => true,
        (Term::Var(x), Term::Var(y)) if x == y => true,
        (Term::Var(x), other) | (other, Term::Var(x)) => {
            let resolved = s.apply(other);
            if resolved.contains_var(x) {
                return false;
            }
            s.bind(x, resolved);
            true
        }
        (Term::Atom(x), Term::Atom(y)) => x == y,
        (Term::Num(x), Term::Num(y)) => x == y,
        (Term::Str(x), Term::Str(y)) => x == y,
        (Term::Compound(f1, args1), Term::Compound(f2, args2)) => {
            if f1 != f2 || args1.len() != args2.len() {
                return false;
            }
            args1
                .iter()
                .zip(args2.iter())
                .all(|(x, y)| unify_in_place(x, y, s))
        }
        _ => false,
    }
}

/// Arithmetic evaluation failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("unbound variable `{0}` in arithmetic expression")]
    NonGround(String),
    #[error("non-numeric term `{0}` in arithmetic expression")]
    NonNumeric(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// Evaluates an arithmetic term (`Num`, `+`, `-`, `*`, `/`, unary `-`) under
/// a substitution.
pub fn eval_arith(term: &Term, s: &Substitution) -> Result<f64, ArithError> {
    let resolved = s.walk(term);
    match resolved {
        Term::Num(value) => Ok(*value),
        Term::Var(name) => Err(ArithError::NonGround(name.clone())),
        Term::Compound(op, args) => match (op.as_str(), args.len()) {
            ("+", 2) => Ok(eval_arith(&args[0], s)? + eval_arith(&args[1], s)?),
            ("-", 2) => Ok(eval_arith(&args[0], s)? - eval_arith(&args[1], s)?),
            ("*", 2) => Ok(eval_arith(&args[0], s)? * eval_arith(&args[1], s)?),
            ("/", 2) => {
                let denom = eval_arith(&args[1], s)?;
                if denom == 0.0 {
                    return Err(ArithError::DivisionByZero);
                }
                Ok(eval_arith(&args[0], s)? / denom)
            }
            ("-", 1) => Ok(-eval_arith(&args[0], s)?),
            _ => Err(ArithError::NonNumeric(resolved.to_string())),
        },
        other => Err(ArithError::NonNumeric(other.to_string())),
    }
}
