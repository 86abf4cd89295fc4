//! Insertion-ordered ground-fact store.

use super::term::{unify, Substitution, Term};

/// A belief base: a set of ground terms that remembers insertion order, which
/// keeps query enumeration (and therefore plan selection) deterministic.
#[derive(Debug, Clone, Default)]
pub struct BeliefBase {
    facts: Vec<Term>,
}

impl BeliefBase {
    pub fn new() -> BeliefBase {
        BeliefBase::default()
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Term> {
        self.facts.iter()
    }

    /// Adds a fact unless an identical one is already present.
    pub fn add(&mut self, fact: Term) {
        if !self.facts.contains(&fact) {
            self.facts.push(fact);
        }
    }

    /// Removes every fact with the given functor and arity.
    pub fn retract_functor(&mut self, functor: &str, arity: usize) {
        self.facts
            .retain(|f| !(f.functor() == Some(functor) && f.arity() == arity));
    }

    /// Removes every fact unifiable with the pattern.
    pub fn retract_matching(&mut self, pattern: &Term) {
        self.facts
            .retain(|f| unify(pattern, f, &Substitution::new()).is_none());
    }

    pub fn contains(&self, fact: &Term) -> bool {
        self.facts.contains(fact)
    }

    /// Stored membership degree for `pred(label, D)`, if present.
    pub fn degree_of(&self, pred: &str, label: &str) -> Option<f64> {
        self.facts.iter().find_map(|f| match f {
            Term::Compound(functor, args)
                if functor == pred
                    && args.len() == 2
                    && args[0] == Term::Atom(label.to_string()) =>
            {
                match args[1] {
                    Term::Num(d) => Some(d),
                    _ => None,
                }
            }
            _ => None,
        })
    }

    pub fn clear(&mut self) {
        self.facts.clear();
    }
}

impl FromIterator<Term> for BeliefBase {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> BeliefBase {
        let mut base = BeliefBase::new();
        for fact in iter {
            base.add(fact);
        }
        base
    }
}
