//! Deterministic finite acceptors and their Boolean combinations.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol};
use crate::automaton::{product, DetAutomaton, Product, ProductMode, State};
use crate::error::{Error, Result};

/// A deterministic complete automaton with a set of final states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    automaton: DetAutomaton,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(automaton: DetAutomaton, accepting: impl IntoIterator<Item = State>) -> Result<Self> {
        let mut flags = vec![false; automaton.state_count()];
        for q in accepting {
            if q >= flags.len() {
                return Err(Error::StateOutOfRange {
                    state: q,
                    count: flags.len(),
                });
            }
            flags[q] = true;
        }
        Ok(Dfa {
            automaton,
            accepting: flags,
        })
    }

    pub fn automaton(&self) -> &DetAutomaton {
        &self.automaton
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.automaton.alphabet()
    }

    pub fn state_count(&self) -> usize {
        self.automaton.state_count()
    }

    pub fn initial(&self) -> State {
        self.automaton.initial()
    }

    pub fn is_accepting(&self, q: State) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> BTreeSet<State> {
        (0..self.state_count()).filter(|&q| self.accepting[q]).collect()
    }

    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.accepting[self.automaton.run_initial(word)]
    }

    /// Same automaton, final states swapped with non-final ones.
    pub fn complement(&self) -> Dfa {
        Dfa {
            automaton: self.automaton.clone(),
            accepting: self.accepting.iter().map(|f| !f).collect(),
        }
    }

    /// Same automaton and final states, started in `q`.
    pub fn with_initial(&self, q: State) -> Dfa {
        Dfa {
            automaton: self.automaton.with_initial(q),
            accepting: self.accepting.clone(),
        }
    }

    /// Same structure with a different final-state set.
    pub fn with_accepting(&self, accepting: impl IntoIterator<Item = State>) -> Result<Dfa> {
        Dfa::new(self.automaton.clone(), accepting)
    }

    /// `D1 ⊗ D2`: product automaton with final states `F1 × F2`.
    pub fn and(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa> {
        self.combine(other, mode, |f1, f2| f1 && f2)
    }

    /// `D1 ⊕ D2`: product automaton with final states `F1 × A2 ∪ A1 × F2`.
    pub fn or(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa> {
        self.combine(other, mode, |f1, f2| f1 || f2)
    }

    fn combine(&self, other: &Dfa, mode: ProductMode, op: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        let Product { automaton, pairs } = product(&self.automaton, &other.automaton, mode)?;
        let accepting = pairs
            .iter()
            .map(|&(q1, q2)| op(self.accepting[q1], other.accepting[q2]))
            .collect();
        Ok(Dfa {
            automaton,
            accepting,
        })
    }

    /// True if no word is accepted.
    pub fn is_empty(&self) -> bool {
        self.automaton
            .reachable_states()
            .into_iter()
            .all(|q| !self.accepting[q])
    }
}

/// Intersection of two DFAs over the reachable product.
pub fn dfa_and(d1: &Dfa, d2: &Dfa) -> Result<Dfa> {
    d1.and(d2, ProductMode::Reachable)
}

/// Union of two DFAs over the reachable product.
pub fn dfa_or(d1: &Dfa, d2: &Dfa) -> Result<Dfa> {
    d1.or(d2, ProductMode::Reachable)
}
