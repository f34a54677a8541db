//! Transition structures over an indexed alphabet.
//!
//! [`Automaton`] is the general (possibly partial, possibly nondeterministic)
//! form used while building or parsing. [`DetAutomaton`] is the deterministic
//! complete form every algorithm on DFAs and FDFAs runs on; it stores its
//! transition function as a dense `state × symbol` table.

use std::collections::VecDeque;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

/// Index of a state.
pub type State = usize;

/// A finite automaton without acceptance condition. Successor lists are kept
/// sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    states: usize,
    initial: State,
    // successors[q][a]
    successors: Vec<Vec<Vec<State>>>,
}

impl Automaton {
    /// An automaton with `states` states and no transitions.
    pub fn new(alphabet: Alphabet, states: usize, initial: State) -> Result<Self> {
        if initial >= states {
            return Err(Error::StateOutOfRange {
                state: initial,
                count: states,
            });
        }
        let successors = vec![vec![Vec::new(); alphabet.len()]; states];
        Ok(Automaton {
            alphabet,
            states,
            initial,
            successors,
        })
    }

    pub fn add_transition(&mut self, from: State, sym: Symbol, to: State) -> Result<()> {
        for q in [from, to] {
            if q >= self.states {
                return Err(Error::StateOutOfRange {
                    state: q,
                    count: self.states,
                });
            }
        }
        self.alphabet.check_word(&[sym])?;
        let succ = &mut self.successors[from][sym];
        if let Err(pos) = succ.binary_search(&to) {
            succ.insert(pos, to);
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn successors(&self, q: State, sym: Symbol) -> &[State] {
        &self.successors[q][sym]
    }

    /// All transitions as `(from, symbol, to)`, ordered by source, symbol and target.
    pub fn transitions(&self) -> impl Iterator<Item = (State, Symbol, State)> + '_ {
        self.successors.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, succ)| succ.iter().map(move |&t| (q, a, t)))
        })
    }

    pub fn is_deterministic(&self) -> bool {
        self.successors.iter().flatten().all(|s| s.len() <= 1)
    }

    pub fn is_complete(&self) -> bool {
        self.successors.iter().flatten().all(|s| !s.is_empty())
    }

    /// `(state, symbol)` pairs without a successor.
    pub fn missing_transitions(&self) -> Vec<(State, Symbol)> {
        let mut out = Vec::new();
        for (q, row) in self.successors.iter().enumerate() {
            for (a, succ) in row.iter().enumerate() {
                if succ.is_empty() {
                    out.push((q, a));
                }
            }
        }
        out
    }

    /// Returns an equivalent complete automaton. If any transition is
    /// missing, a sink state is appended as the highest-numbered state and
    /// all missing transitions lead to it; otherwise the automaton is
    /// returned unchanged.
    pub fn complete(&self) -> Automaton {
        if self.is_complete() {
            return self.clone();
        }
        let sink = self.states;
        let mut out = self.clone();
        out.states += 1;
        out.successors.push(vec![vec![sink]; self.alphabet.len()]);
        for row in out.successors.iter_mut().take(sink) {
            for succ in row.iter_mut() {
                if succ.is_empty() {
                    succ.push(sink);
                }
            }
        }
        out
    }

    /// States reachable from the initial state, in increasing order.
    pub fn reachable_states(&self) -> Vec<State> {
        let mut seen = vec![false; self.states];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(q) = stack.pop() {
            for succ in &self.successors[q] {
                for &t in succ {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        (0..self.states).filter(|&q| seen[q]).collect()
    }

    /// Converts to the dense deterministic form. Fails on the first state
    /// with zero or several successors on some symbol.
    pub fn to_deterministic(&self) -> Result<DetAutomaton> {
        let k = self.alphabet.len();
        let mut table = Vec::with_capacity(self.states * k);
        for (q, row) in self.successors.iter().enumerate() {
            for (a, succ) in row.iter().enumerate() {
                match succ.as_slice() {
                    [t] => table.push(*t),
                    [] => {
                        return Err(Error::Incomplete {
                            state: q,
                            symbol: self.alphabet.name(a).to_string(),
                        })
                    }
                    many => {
                        return Err(Error::NotDeterministic {
                            state: q,
                            symbol: self.alphabet.name(a).to_string(),
                            count: many.len(),
                        })
                    }
                }
            }
        }
        Ok(DetAutomaton {
            alphabet: self.alphabet.clone(),
            states: self.states,
            initial: self.initial,
            table,
        })
    }
}

/// A deterministic complete automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetAutomaton {
    alphabet: Alphabet,
    states: usize,
    initial: State,
    // table[q * |Σ| + a] = δ(q, a)
    table: Vec<State>,
}

impl DetAutomaton {
    /// Builds from a row-major table: `table[q * |Σ| + a]` is the successor
    /// of `q` on `a`.
    pub fn from_table(
        alphabet: Alphabet,
        states: usize,
        initial: State,
        table: Vec<State>,
    ) -> Result<Self> {
        if states == 0 || initial >= states {
            return Err(Error::StateOutOfRange {
                state: initial,
                count: states,
            });
        }
        if table.len() != states * alphabet.len() {
            return Err(Error::Internal(format!(
                "transition table has {} entries, expected {}",
                table.len(),
                states * alphabet.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= states) {
            return Err(Error::StateOutOfRange {
                state: bad,
                count: states,
            });
        }
        Ok(DetAutomaton {
            alphabet,
            states,
            initial,
            table,
        })
    }

    /// Builds from a successor function.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        initial: State,
        delta: impl Fn(State, Symbol) -> State,
    ) -> Result<Self> {
        let k = alphabet.len();
        let table = (0..states)
            .flat_map(|q| (0..k).map(move |a| (q, a)))
            .map(|(q, a)| delta(q, a))
            .collect();
        DetAutomaton::from_table(alphabet, states, initial, table)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: State, sym: Symbol) -> State {
        self.table[q * self.alphabet.len() + sym]
    }

    /// δ(from, word). Symbols are assumed in range; see [`DetAutomaton::try_run`].
    pub fn run(&self, from: State, word: &[Symbol]) -> State {
        word.iter().fold(from, |q, &a| self.step(q, a))
    }

    /// δ(from, word), checking the state and every symbol first.
    pub fn try_run(&self, from: State, word: &[Symbol]) -> Result<State> {
        if from >= self.states {
            return Err(Error::StateOutOfRange {
                state: from,
                count: self.states,
            });
        }
        self.alphabet.check_word(word)?;
        Ok(self.run(from, word))
    }

    /// δ(ι, word).
    pub fn run_initial(&self, word: &[Symbol]) -> State {
        self.run(self.initial, word)
    }

    /// The same transition structure started in `q`.
    pub fn with_initial(&self, q: State) -> DetAutomaton {
        assert!(q < self.states, "state {q} out of range");
        DetAutomaton {
            initial: q,
            ..self.clone()
        }
    }

    pub fn row(&self, q: State) -> &[State] {
        let k = self.alphabet.len();
        &self.table[q * k..(q + 1) * k]
    }

    pub fn to_automaton(&self) -> Automaton {
        let k = self.alphabet.len();
        Automaton {
            alphabet: self.alphabet.clone(),
            states: self.states,
            initial: self.initial,
            successors: (0..self.states)
                .map(|q| (0..k).map(|a| vec![self.step(q, a)]).collect())
                .collect(),
        }
    }

    /// Shortest word reaching each state from `from` (BFS, ties broken by
    /// alphabet order); `None` for unreachable states.
    pub fn access_words(&self, from: State) -> Vec<Option<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.states];
        words[from] = Some(Vec::new());
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for a in 0..self.alphabet.len() {
                let t = self.step(q, a);
                if words[t].is_none() {
                    let mut w = words[q].clone().unwrap();
                    w.push(a);
                    words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
        words
    }

    /// States reachable from the initial state, in BFS discovery order.
    pub fn reachable_states(&self) -> Vec<State> {
        let mut seen = vec![false; self.states];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for &t in self.row(q) {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }
}

/// Whether a product materializes every state pair or only the pairs
/// reachable from the initial pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ProductMode {
    #[default]
    Reachable,
    Full,
}

/// A product automaton together with the provenance of each product state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub automaton: DetAutomaton,
    /// `pairs[s] = (q1, q2)` for product state `s`.
    pub pairs: Vec<(State, State)>,
}

impl Product {
    /// The product state for `(q1, q2)`, if materialized.
    pub fn index_of(&self, q1: State, q2: State) -> Option<State> {
        self.pairs.iter().position(|&p| p == (q1, q2))
    }
}

/// The synchronous product `a1 × a2`. In [`ProductMode::Full`] the pair
/// `(q1, q2)` gets index `q1 * |a2| + q2`; in [`ProductMode::Reachable`]
/// pairs are numbered in BFS discovery order from `(ι1, ι2)`.
pub fn product(a1: &DetAutomaton, a2: &DetAutomaton, mode: ProductMode) -> Result<Product> {
    if a1.alphabet() != a2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let k = a1.alphabet().len();
    let (n1, n2) = (a1.state_count(), a2.state_count());
    match mode {
        ProductMode::Full => {
            let pairs: Vec<_> = (0..n1)
                .flat_map(|q1| (0..n2).map(move |q2| (q1, q2)))
                .collect();
            let automaton = DetAutomaton::from_fn(
                a1.alphabet().clone(),
                n1 * n2,
                a1.initial() * n2 + a2.initial(),
                |s, a| a1.step(s / n2, a) * n2 + a2.step(s % n2, a),
            )?;
            Ok(Product { automaton, pairs })
        }
        ProductMode::Reachable => {
            let mut index = vec![usize::MAX; n1 * n2];
            let mut pairs = vec![(a1.initial(), a2.initial())];
            index[a1.initial() * n2 + a2.initial()] = 0;
            let mut table = Vec::new();
            let mut head = 0;
            while head < pairs.len() {
                let (q1, q2) = pairs[head];
                head += 1;
                for a in 0..k {
                    let (t1, t2) = (a1.step(q1, a), a2.step(q2, a));
                    let slot = &mut index[t1 * n2 + t2];
                    if *slot == usize::MAX {
                        *slot = pairs.len();
                        pairs.push((t1, t2));
                    }
                    table.push(*slot);
                }
            }
            let automaton =
                DetAutomaton::from_table(a1.alphabet().clone(), pairs.len(), 0, table)?;
            Ok(Product { automaton, pairs })
        }
    }
}
