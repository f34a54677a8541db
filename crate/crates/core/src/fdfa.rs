//! Families of DFAs: the data model, pair normalization and acceptance.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::automaton::{Automaton, DetAutomaton, State};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::word::UpWord;

/// `(leading state count, largest progress state count)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FdfaSize {
    pub n: usize,
    pub k: usize,
}

impl fmt::Display for FdfaSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.k)
    }
}

/// The normalization `(x, y) = (u·v^i, v^j)` of a pair `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedPair {
    pub x: Word,
    pub y: Word,
    pub i: usize,
    pub j: usize,
    /// Leading state reached on `x` (and again on `x·y`).
    pub state: State,
}

/// Exponents of the normalization of `(u, v)` w.r.t. `lead`, without
/// building the words: the smallest `i ≥ 0, j ≥ 1` with
/// `lead(u·v^i) = lead(u·v^(i+j))`, and that state.
pub fn normal_exponents(lead: &DetAutomaton, u: &[Symbol], v: &[Symbol]) -> Result<(usize, usize, State)> {
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    lead.alphabet().check_word(u)?;
    lead.alphabet().check_word(v)?;
    let mut q = lead.run_initial(u);
    let mut first_seen: HashMap<State, usize> = HashMap::new();
    let mut t = 0;
    loop {
        if let Some(&i) = first_seen.get(&q) {
            return Ok((i, t - i, q));
        }
        first_seen.insert(q, t);
        q = lead.run(q, v);
        t += 1;
    }
}

/// The normalization of `(u, v)` with respect to `lead`.
pub fn normalize(lead: &DetAutomaton, u: &[Symbol], v: &[Symbol]) -> Result<NormalizedPair> {
    let (i, j, state) = normal_exponents(lead, u, v)?;
    let mut x = u.to_vec();
    for _ in 0..i {
        x.extend_from_slice(v);
    }
    let y = v.repeat(j);
    Ok(NormalizedPair { x, y, i, j, state })
}

/// Outcome of a membership query, with the normalization trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub accepted: bool,
    pub i: usize,
    pub j: usize,
    pub leading_state: State,
    pub progress_state: State,
}

/// A located well-formedness violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// An unchecked progress automaton, as read from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgressParts {
    pub automaton: Automaton,
    pub accepting: BTreeSet<State>,
}

/// An unchecked FDFA, as read from input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdfaParts {
    pub leading: Automaton,
    pub progress: Vec<ProgressParts>,
}

fn structure_diagnostics(a: &Automaton, location: &str, out: &mut Vec<Diagnostic>) {
    for q in 0..a.state_count() {
        for sym in 0..a.alphabet().len() {
            let name = a.alphabet().name(sym);
            match a.successors(q, sym).len() {
                0 => out.push(Diagnostic::new(
                    location,
                    format!("missing transition from state {q} on `{name}`"),
                )),
                1 => {}
                n => out.push(Diagnostic::new(
                    location,
                    format!("nondeterministic: state {q} has {n} successors on `{name}`"),
                )),
            }
        }
    }
}

/// Checks every FDFA invariant; an empty result means
/// [`Fdfa::from_parts`] will succeed.
pub fn validate(parts: &FdfaParts) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    structure_diagnostics(&parts.leading, "leading", &mut out);
    let n = parts.leading.state_count();
    if parts.progress.len() != n {
        out.push(Diagnostic::new(
            "progress",
            format!(
                "progress count mismatch: {} leading states but {} progress DFAs",
                n,
                parts.progress.len()
            ),
        ));
    }
    for (q, p) in parts.progress.iter().enumerate() {
        let loc = format!("progress[{q}]");
        if p.automaton.alphabet() != parts.leading.alphabet() {
            out.push(Diagnostic::new(&loc, "alphabet differs from the leading automaton"));
            continue;
        }
        structure_diagnostics(&p.automaton, &loc, &mut out);
        for &f in &p.accepting {
            if f >= p.automaton.state_count() {
                out.push(Diagnostic::new(
                    &loc,
                    format!(
                        "accepting state {f} out of range ({} states)",
                        p.automaton.state_count()
                    ),
                ));
            }
        }
    }
    out
}

/// A family of DFAs: a leading automaton without acceptance and one
/// progress DFA per leading state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fdfa {
    leading: DetAutomaton,
    progress: Vec<Dfa>,
}

impl Fdfa {
    pub fn new(leading: DetAutomaton, progress: Vec<Dfa>) -> Result<Self> {
        if progress.len() != leading.state_count() {
            return Err(Error::InvalidFdfa(vec![Diagnostic::new(
                "progress",
                format!(
                    "progress count mismatch: {} leading states but {} progress DFAs",
                    leading.state_count(),
                    progress.len()
                ),
            )]));
        }
        if let Some(q) = progress.iter().position(|p| p.alphabet() != leading.alphabet()) {
            return Err(Error::InvalidFdfa(vec![Diagnostic::new(
                format!("progress[{q}]"),
                "alphabet differs from the leading automaton",
            )]));
        }
        Ok(Fdfa { leading, progress })
    }

    pub fn from_parts(parts: &FdfaParts) -> Result<Self> {
        let diags = validate(parts);
        if !diags.is_empty() {
            return Err(Error::InvalidFdfa(diags));
        }
        let leading = parts.leading.to_deterministic()?;
        let progress = parts
            .progress
            .iter()
            .map(|p| Dfa::new(p.automaton.to_deterministic()?, p.accepting.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Fdfa::new(leading, progress)
    }

    pub fn to_parts(&self) -> FdfaParts {
        FdfaParts {
            leading: self.leading.to_automaton(),
            progress: self
                .progress
                .iter()
                .map(|p| ProgressParts {
                    automaton: p.automaton().to_automaton(),
                    accepting: p.accepting_states(),
                })
                .collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.leading.alphabet()
    }

    pub fn leading(&self) -> &DetAutomaton {
        &self.leading
    }

    pub fn progress(&self, q: State) -> &Dfa {
        &self.progress[q]
    }

    pub fn progress_dfas(&self) -> &[Dfa] {
        &self.progress
    }

    pub fn size(&self) -> FdfaSize {
        FdfaSize {
            n: self.leading.state_count(),
            k: self
                .progress
                .iter()
                .map(Dfa::state_count)
                .max()
                .unwrap_or(0),
        }
    }

    /// Normalizes `(u, v)` w.r.t. the leading automaton.
    pub fn normalize(&self, u: &[Symbol], v: &[Symbol]) -> Result<NormalizedPair> {
        normalize(&self.leading, u, v)
    }

    /// Membership with trace. Runs on `u` and repeated copies of `v`; the
    /// normalized words are never built.
    pub fn membership(&self, u: &[Symbol], v: &[Symbol]) -> Result<Membership> {
        let (i, j, q) = normal_exponents(&self.leading, u, v)?;
        let p = &self.progress[q];
        let mut s = p.initial();
        for _ in 0..j {
            s = p.automaton().run(s, v);
        }
        Ok(Membership {
            accepted: p.is_accepting(s),
            i,
            j,
            leading_state: q,
            progress_state: s,
        })
    }

    pub fn accepts(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
        Ok(self.membership(u, v)?.accepted)
    }

    pub fn accepts_up(&self, w: &UpWord) -> Result<bool> {
        self.accepts(w.prefix(), w.period())
    }

    /// Same family with every progress DFA replaced by `f(q, P_q)`.
    pub(crate) fn map_progress(&self, f: impl Fn(State, &Dfa) -> Dfa) -> Fdfa {
        Fdfa {
            leading: self.leading.clone(),
            progress: self
                .progress
                .iter()
                .enumerate()
                .map(|(q, p)| f(q, p))
                .collect(),
        }
    }
}
