//! Acceptance conditions and the deterministic lasso check on
//! ultimately periodic words.

use std::collections::{BTreeSet, HashMap};

use crate::alphabet::Symbol;
use crate::automaton::{DetAutomaton, State};
use crate::error::{Error, Result};

/// Acceptance payload attached to a transition structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// Finite-word acceptance.
    FinalStates(BTreeSet<State>),
    /// Visit the set infinitely often.
    Buchi(BTreeSet<State>),
    /// Visit the set only finitely often.
    CoBuchi(BTreeSet<State>),
    /// `colors[q] ∈ [1..k]`; the least color seen infinitely often must be odd.
    Parity(Vec<u32>),
}

impl Acceptance {
    /// Checks the payload against a state count.
    pub fn check(&self, states: usize) -> Result<()> {
        match self {
            Acceptance::FinalStates(set) | Acceptance::Buchi(set) | Acceptance::CoBuchi(set) => {
                match set.iter().find(|&&q| q >= states) {
                    Some(&q) => Err(Error::StateOutOfRange { state: q, count: states }),
                    None => Ok(()),
                }
            }
            Acceptance::Parity(colors) => {
                if colors.len() != states {
                    return Err(Error::InvalidAcceptance(format!(
                        "{} colors given for {} states",
                        colors.len(),
                        states
                    )));
                }
                if let Some(q) = colors.iter().position(|&c| c == 0) {
                    return Err(Error::InvalidAcceptance(format!(
                        "state {q} has color 0; colors start at 1"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Number of parity colors `k` (the largest color used).
    pub fn color_count(&self) -> Option<u32> {
        match self {
            Acceptance::Parity(colors) => colors.iter().copied().max(),
            _ => None,
        }
    }

    /// Decides the condition for a run whose infinity set is `inf`.
    pub fn accepts_infinity_set(&self, inf: &BTreeSet<State>) -> Result<bool> {
        match self {
            Acceptance::Buchi(f) => Ok(inf.iter().any(|q| f.contains(q))),
            Acceptance::CoBuchi(f) => Ok(inf.iter().all(|q| !f.contains(q))),
            Acceptance::Parity(colors) => Ok(inf
                .iter()
                .map(|&q| colors[q])
                .min()
                .is_some_and(|c| c % 2 == 1)),
            Acceptance::FinalStates(_) => Err(Error::InvalidAcceptance(
                "final-state acceptance has no meaning on infinite runs".into(),
            )),
        }
    }
}

/// The set of states visited infinitely often by the run of `a` on `u·v^ω`.
///
/// Runs `u`, then copies of `v`, recording the state at each `v`-boundary
/// until a boundary state repeats; the states traversed inside that loop
/// (both endpoints included) form the infinity set.
pub fn infinity_set(a: &DetAutomaton, u: &[Symbol], v: &[Symbol]) -> Result<BTreeSet<State>> {
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    a.alphabet().check_word(u)?;
    a.alphabet().check_word(v)?;
    let mut q = a.run_initial(u);
    let mut boundary: HashMap<State, usize> = HashMap::new();
    let mut segments: Vec<Vec<State>> = Vec::new();
    loop {
        if let Some(&start) = boundary.get(&q) {
            return Ok(segments[start..].iter().flatten().copied().collect());
        }
        boundary.insert(q, segments.len());
        let mut seg = Vec::with_capacity(v.len() + 1);
        seg.push(q);
        for &sym in v {
            q = a.step(q, sym);
            seg.push(q);
        }
        segments.push(seg);
    }
}

/// Whether the unique run of `a` on `u·v^ω` satisfies `acc`.
pub fn det_accepts_up(a: &DetAutomaton, acc: &Acceptance, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
    acc.check(a.state_count())?;
    let inf = infinity_set(a, u, v)?;
    acc.accepts_infinity_set(&inf)
}
