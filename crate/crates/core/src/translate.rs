//! Translations between FDFAs and ω-automata.
//!
//! Deterministic Büchi, co-Büchi and parity automata translate to saturated
//! families whose progress DFAs are copies of the source automaton that
//! remember the best acceptance level seen on the period. In the other
//! direction, a saturated family translates to a nondeterministic Büchi
//! automaton for `⋃ M_q · N_{q,f}^ω`.

use std::collections::{BTreeSet, HashMap};
use std::ops::Range;

use crate::acceptance::{det_accepts_up, Acceptance};
use crate::alphabet::{Alphabet, Symbol};
use crate::automaton::{Automaton, DetAutomaton, State};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::fdfa::Fdfa;

/// Deterministic Büchi automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dba {
    pub automaton: DetAutomaton,
    pub accepting: BTreeSet<State>,
}

/// Deterministic co-Büchi automaton: accepts when the set is visited only
/// finitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dca {
    pub automaton: DetAutomaton,
    pub rejecting: BTreeSet<State>,
}

/// Deterministic parity automaton with colors in `[1..k]`; the least color
/// seen infinitely often must be odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dpa {
    pub automaton: DetAutomaton,
    pub colors: Vec<u32>,
}

/// Common view of the deterministic ω-automata.
pub trait DetOmega {
    fn automaton(&self) -> &DetAutomaton;
    fn acceptance(&self) -> Acceptance;

    /// Whether the run on `u·v^ω` is accepting.
    fn accepts_up(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
        det_accepts_up(self.automaton(), &self.acceptance(), u, v)
    }
}

impl Dba {
    pub fn new(automaton: DetAutomaton, accepting: BTreeSet<State>) -> Result<Self> {
        Acceptance::Buchi(accepting.clone()).check(automaton.state_count())?;
        Ok(Dba { automaton, accepting })
    }
}

impl Dca {
    pub fn new(automaton: DetAutomaton, rejecting: BTreeSet<State>) -> Result<Self> {
        Acceptance::CoBuchi(rejecting.clone()).check(automaton.state_count())?;
        Ok(Dca { automaton, rejecting })
    }
}

impl Dpa {
    pub fn new(automaton: DetAutomaton, colors: Vec<u32>) -> Result<Self> {
        Acceptance::Parity(colors.clone()).check(automaton.state_count())?;
        Ok(Dpa { automaton, colors })
    }

    /// Number of colors `k`.
    pub fn color_count(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(1)
    }
}

impl DetOmega for Dba {
    fn automaton(&self) -> &DetAutomaton {
        &self.automaton
    }
    fn acceptance(&self) -> Acceptance {
        Acceptance::Buchi(self.accepting.clone())
    }
}

impl DetOmega for Dca {
    fn automaton(&self) -> &DetAutomaton {
        &self.automaton
    }
    fn acceptance(&self) -> Acceptance {
        Acceptance::CoBuchi(self.rejecting.clone())
    }
}

impl DetOmega for Dpa {
    fn automaton(&self) -> &DetAutomaton {
        &self.automaton
    }
    fn acceptance(&self) -> Acceptance {
        Acceptance::Parity(self.colors.clone())
    }
}

/// Two copies of `d`: copy 0 until an `α`-state is entered, copy 1 after.
/// State `(p, c)` has index `c·n + p`.
fn two_copy_fdfa(d: &DetAutomaton, alpha: &BTreeSet<State>, accept_copy: usize) -> Result<Fdfa> {
    let n = d.state_count();
    let progress = (0..n)
        .map(|q| {
            let a = DetAutomaton::from_fn(d.alphabet().clone(), 2 * n, q, |s, sym| {
                let (p, copy) = (s % n, s / n);
                let t = d.step(p, sym);
                let next = if copy == 1 || alpha.contains(&t) { 1 } else { 0 };
                next * n + t
            })?;
            Dfa::new(a, accept_copy * n..(accept_copy + 1) * n)
        })
        .collect::<Result<Vec<_>>>()?;
    Fdfa::new(d.clone(), progress)
}

/// Saturated FDFA of size `(n, 2n)` for a DBA; progress accepts in copy 1.
pub fn dba_to_fdfa(d: &Dba) -> Result<Fdfa> {
    two_copy_fdfa(&d.automaton, &d.accepting, 1)
}

/// Saturated FDFA of size `(n, 2n)` for a DCA; progress accepts in copy 0.
pub fn dca_to_fdfa(d: &Dca) -> Result<Fdfa> {
    two_copy_fdfa(&d.automaton, &d.rejecting, 0)
}

/// Saturated FDFA of size `(n, kn)` for a DPA. Progress state `(p, i)`,
/// `i` the least color seen so far, has index `(i-1)·n + p`; it starts in
/// `(q, κ(q))` and accepts when `i` is odd.
pub fn dpa_to_fdfa(d: &Dpa) -> Result<Fdfa> {
    let n = d.automaton.state_count();
    let k = d.color_count() as usize;
    let color = |p: State| d.colors[p] as usize;
    let progress = (0..n)
        .map(|q| {
            let a = DetAutomaton::from_fn(
                d.automaton.alphabet().clone(),
                k * n,
                (color(q) - 1) * n + q,
                |s, sym| {
                    let (p, i) = (s % n, s / n + 1);
                    let t = d.automaton.step(p, sym);
                    (i.min(color(t)) - 1) * n + t
                },
            )?;
            let odd = (1..=k).step_by(2).flat_map(|i| (i - 1) * n..i * n);
            Dfa::new(a, odd)
        })
        .collect::<Result<Vec<_>>>()?;
    Fdfa::new(d.automaton.clone(), progress)
}

/// Nondeterministic Büchi automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nba {
    pub automaton: Automaton,
    pub accepting: BTreeSet<State>,
}

impl Nba {
    /// Requires a complete transition structure.
    pub fn new(automaton: Automaton, accepting: BTreeSet<State>) -> Result<Self> {
        if let Some(&(state, sym)) = automaton.missing_transitions().first() {
            return Err(Error::Incomplete {
                state,
                symbol: automaton.alphabet().name(sym).to_string(),
            });
        }
        Acceptance::Buchi(accepting.clone()).check(automaton.state_count())?;
        Ok(Nba { automaton, accepting })
    }

    pub fn state_count(&self) -> usize {
        self.automaton.state_count()
    }

    pub fn accepts_up(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
        nba_accepts_up(self, u, v)
    }
}

/// Whether some run of `b` on `u·v^ω` visits the accepting set infinitely
/// often.
///
/// Builds the relation `T_v` of pairs `(s, t)` such that reading `v` can lead
/// from `s` to `t`, flagged when some state on the way (endpoints included)
/// is accepting. The word is accepted iff some flagged edge `(s, t)` has `s`
/// reachable from `δ(ι, u)` through `T_v` and `t` leading back to `s`.
pub fn nba_accepts_up(b: &Nba, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let a = &b.automaton;
    a.alphabet().check_word(u)?;
    a.alphabet().check_word(v)?;
    let n = a.state_count();
    let acc = |q: State| b.accepting.contains(&q);

    let mut start = vec![false; n];
    start[a.initial()] = true;
    for &sym in u {
        let mut next = vec![false; n];
        for q in (0..n).filter(|&q| start[q]) {
            for &t in a.successors(q, sym) {
                next[t] = true;
            }
        }
        start = next;
    }

    // edge[s][t]: 0 = none, 1 = unflagged only, 2 = flagged
    let mut edge = vec![vec![0u8; n]; n];
    for s in 0..n {
        // cur[q * 2 + flag]
        let mut cur = vec![false; 2 * n];
        cur[s * 2 + acc(s) as usize] = true;
        for &sym in v {
            let mut next = vec![false; 2 * n];
            for (idx, _) in cur.iter().enumerate().filter(|(_, &on)| on) {
                let (q, flag) = (idx / 2, idx % 2 == 1);
                for &t in a.successors(q, sym) {
                    next[t * 2 + (flag || acc(t)) as usize] = true;
                }
            }
            cur = next;
        }
        for t in 0..n {
            edge[s][t] = if cur[t * 2 + 1] {
                2
            } else if cur[t * 2] {
                1
            } else {
                0
            };
        }
    }

    let reach_from = |sources: &[bool]| {
        let mut seen = sources.to_vec();
        let mut stack: Vec<State> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for t in 0..n {
                if edge[q][t] > 0 && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    };
    let reachable = reach_from(&start);
    for s in (0..n).filter(|&s| reachable[s]) {
        for t in (0..n).filter(|&t| edge[s][t] == 2) {
            let mut from_t = vec![false; n];
            from_t[t] = true;
            if reach_from(&from_t)[s] {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// DFA for `M_q = {u | Q(u) = q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MqDfa {
    pub q: State,
    pub dfa: Dfa,
}

/// DFA for `N_{q,f} = {v | δ(q,v) = q ∧ P_q(v) = f ∧ δ_q(f,v) = f}`: the
/// product of the leading automaton started in `q`, `P_q`, and `P_q`
/// started in `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NqfDfa {
    pub q: State,
    pub f: State,
    pub dfa: Dfa,
    /// Component states of each product state.
    pub components: Vec<(State, State, State)>,
}

fn check_reachable(f: &Fdfa, q: State) -> Result<()> {
    let n = f.leading().state_count();
    if q >= n {
        return Err(Error::StateOutOfRange { state: q, count: n });
    }
    if !f.leading().reachable_states().contains(&q) {
        return Err(Error::Unreachable(q));
    }
    Ok(())
}

pub fn build_mq(f: &Fdfa, q: State) -> Result<MqDfa> {
    check_reachable(f, q)?;
    Ok(MqDfa {
        q,
        dfa: Dfa::new(f.leading().clone(), [q])?,
    })
}

pub fn build_nqf(f: &Fdfa, q: State, fst: State) -> Result<NqfDfa> {
    check_reachable(f, q)?;
    let p = f.progress(q);
    if fst >= p.state_count() || !p.is_accepting(fst) {
        return Err(Error::NotAccepting { leading: q, state: fst });
    }
    let lead = f.leading();
    let pa = p.automaton();
    let start = (q, p.initial(), fst);
    let mut index: HashMap<(State, State, State), State> = HashMap::from([(start, 0)]);
    let mut components = vec![start];
    let mut table = Vec::new();
    let mut head = 0;
    while head < components.len() {
        let (l, s, t) = components[head];
        head += 1;
        for sym in 0..f.alphabet().len() {
            let next = (lead.step(l, sym), pa.step(s, sym), pa.step(t, sym));
            let id = *index.entry(next).or_insert_with(|| {
                components.push(next);
                components.len() - 1
            });
            table.push(id);
        }
    }
    let automaton = DetAutomaton::from_table(f.alphabet().clone(), components.len(), 0, table)?;
    let accepting = index.get(&(q, fst, fst)).copied();
    Ok(NqfDfa {
        q,
        f: fst,
        dfa: Dfa::new(automaton, accepting)?,
        components,
    })
}

/// One `M_q · N_{q,f}^ω` block of a translated NBA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbaComponent {
    pub q: State,
    pub f: State,
    /// NBA states realizing `N_{q,f}^ω`.
    pub states: Range<State>,
    /// The Büchi state of this block, entered exactly when an `N_{q,f}`
    /// iteration completes.
    pub hub: State,
}

/// Result of [`fdfa_to_nba`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbaTranslation {
    pub nba: Nba,
    /// NBA states `0..leading_states` copy the reachable leading automaton.
    pub leading_states: usize,
    pub components: Vec<NbaComponent>,
    /// `n·k·(n + n·k²)` for an input of size `(n, k)`.
    pub state_bound: usize,
    /// The language is only guaranteed for saturated input.
    pub requires_saturated_input: bool,
}

/// Translates a (saturated) family to an NBA for `⋃_{q, f ∈ F_q} M_q · N_{q,f}^ω`.
///
/// States `0..m` copy the reachable part of the leading automaton (the
/// `M_q` part, shared by all blocks); its initial state is the NBA's. Each
/// `(q, f)` with a nonempty `N_{q,f}` contributes the reachable part of the
/// `N_{q,f}` product DFA and a hub state. Every transition into the
/// `N`-accepting state is doubled by a transition into the hub, the hub
/// behaves like the `N`-initial state, and the hub is the only Büchi state of
/// the block. The hub is the `N`-initial state itself when no ordinary
/// transition enters that state, or when it is also the `N`-accepting state. The silent move from `M_q` into the block
/// is replaced by copying the hub's outgoing transitions onto leading state
/// `q`.
pub fn fdfa_to_nba(f: &Fdfa) -> Result<NbaTranslation> {
    let sigma: &Alphabet = f.alphabet();
    let lead = f.leading();
    let size = f.size();
    let state_bound = size.n * size.k * (size.n + size.n * size.k * size.k);

    let lead_order = lead.reachable_states();
    let mut lead_index = vec![usize::MAX; lead.state_count()];
    for (i, &q) in lead_order.iter().enumerate() {
        lead_index[q] = i;
    }
    let m = lead_order.len();
    // (from, symbol, to) in NBA numbering
    let mut edges: Vec<(State, Symbol, State)> = Vec::new();
    for &q in &lead_order {
        for sym in 0..sigma.len() {
            edges.push((lead_index[q], sym, lead_index[lead.step(q, sym)]));
        }
    }

    let mut next_state = m;
    let mut accepting = BTreeSet::new();
    let mut components = Vec::new();
    for &q in &lead_order {
        let p = f.progress(q);
        for fst in p.accepting_states() {
            let nqf = build_nqf(f, q, fst)?;
            let d = nqf.dfa.automaton();
            let Some(acc) = (0..d.state_count()).find(|&s| nqf.dfa.is_accepting(s)) else {
                continue;
            };
            let entered = |target: State| {
                (0..d.state_count()).any(|s| d.row(s).contains(&target))
            };
            if !entered(acc) {
                // only ε reaches the accepting state: N has no nonempty word
                continue;
            }
            let base = next_state;
            // re-entering an initial state that is also accepting already
            // marks a completed iteration
            let fresh_hub = entered(d.initial()) && d.initial() != acc;
            let hub = if fresh_hub { base + d.state_count() } else { base + d.initial() };
            for s in 0..d.state_count() {
                for sym in 0..sigma.len() {
                    let t = d.step(s, sym);
                    edges.push((base + s, sym, base + t));
                    if t == acc {
                        edges.push((base + s, sym, hub));
                    }
                }
            }
            let mut hub_out = Vec::new();
            for sym in 0..sigma.len() {
                let t = d.step(d.initial(), sym);
                hub_out.push((sym, base + t));
                if t == acc {
                    hub_out.push((sym, hub));
                }
            }
            if fresh_hub {
                edges.extend(hub_out.iter().map(|&(sym, t)| (hub, sym, t)));
            }
            edges.extend(hub_out.iter().map(|&(sym, t)| (lead_index[q], sym, t)));
            next_state = base + d.state_count() + fresh_hub as usize;
            accepting.insert(hub);
            components.push(NbaComponent {
                q,
                f: fst,
                states: base..next_state,
                hub,
            });
        }
    }

    let mut automaton = Automaton::new(sigma.clone(), next_state, lead_index[lead.initial()])?;
    for (from, sym, to) in edges {
        automaton.add_transition(from, sym, to)?;
    }
    Ok(NbaTranslation {
        nba: Nba::new(automaton, accepting)?,
        leading_states: m,
        components,
        state_bound,
        requires_saturated_input: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{fig1_saturated, gen_ln};

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn w(s: &str) -> Vec<Symbol> {
        ab().parse_word(s).unwrap()
    }

    // state 1 = last letter was a
    fn last_a() -> DetAutomaton {
        DetAutomaton::from_table(ab(), 2, 0, vec![1, 0, 1, 0]).unwrap()
    }

    #[test]
    fn dba_translation_size_and_semantics() {
        let d = Dba::new(last_a(), [1].into()).unwrap();
        let f = dba_to_fdfa(&d).unwrap();
        assert_eq!((f.size().n, f.size().k), (2, 4));
        assert!(f.accepts(&[], &w("a")).unwrap());
        assert!(!f.accepts(&[], &w("b")).unwrap());

        let all = Dba::new(last_a(), [0, 1].into()).unwrap();
        let f = dba_to_fdfa(&all).unwrap();
        for u in ab().words_up_to(3) {
            for v in ab().words_up_to(3).filter(|v| !v.is_empty()) {
                assert!(f.accepts(&u, &v).unwrap());
            }
        }
    }

    #[test]
    fn dpa_translation_size_and_trivial_case() {
        let one = DetAutomaton::from_table(ab(), 1, 0, vec![0, 0]).unwrap();
        let f = dpa_to_fdfa(&Dpa::new(one, vec![1]).unwrap()).unwrap();
        assert_eq!((f.size().n, f.size().k), (1, 1));
        assert!(f.accepts(&w("ab"), &w("b")).unwrap());

        let d = Dpa::new(last_a(), vec![2, 1]).unwrap();
        let f = dpa_to_fdfa(&d).unwrap();
        assert_eq!((f.size().n, f.size().k), (2, 4));
    }

    #[test]
    fn mq_and_nqf_on_saturated_fixture() {
        let s = fig1_saturated();
        let m = build_mq(&s, 0).unwrap();
        assert!(m.dfa.accepts(&w("")));
        assert!(m.dfa.accepts(&w("ba")));
        assert!(!m.dfa.accepts(&w("b")));

        let f0 = s.progress(0).initial();
        let n = build_nqf(&s, 0, f0).unwrap();
        assert!(n.dfa.accepts(&w("a")));
        assert!(n.dfa.accepts(&w("aa")));
        assert!(!n.dfa.accepts(&w("ab")));
        let size = s.size();
        assert!(n.dfa.state_count() <= size.n * size.k * size.k);

        assert_eq!(build_nqf(&s, 0, 1).unwrap_err(), Error::NotAccepting { leading: 0, state: 1 });
    }

    #[test]
    fn nba_for_fig1_saturated() {
        let t = fdfa_to_nba(&fig1_saturated()).unwrap();
        assert!(t.nba.state_count() <= t.state_bound);
        assert!(t.nba.accepts_up(&[], &w("a")).unwrap());
        assert!(t.nba.accepts_up(&w("ba"), &w("b")).unwrap());
        assert!(!t.nba.accepts_up(&[], &w("ab")).unwrap());
    }

    #[test]
    fn empty_progress_gives_empty_nba() {
        let s = fig1_saturated();
        let none = s.map_progress(|_, p| p.with_accepting([]).unwrap());
        let t = fdfa_to_nba(&none).unwrap();
        assert!(t.components.is_empty());
        assert!(t.nba.accepting.is_empty());
        for u in ab().words_up_to(2) {
            for v in ab().words_up_to(2).filter(|v| !v.is_empty()) {
                assert!(!t.nba.accepts_up(&u, &v).unwrap());
            }
        }
    }

    /// A saturated family for "infinitely many a" whose accepting progress
    /// state is absorbing: a run may stay in the `N`-accepting state forever
    /// without completing further iterations, so the Büchi set must not be
    /// the `N`-accepting states.
    #[test]
    fn absorbing_progress_state_does_not_leak() {
        let lead = DetAutomaton::from_table(ab(), 1, 0, vec![0, 0]).unwrap();
        // 0 = ι, 1 = f (absorbing, accepting), 2 = seen only b so far
        let p = DetAutomaton::from_table(ab(), 3, 0, vec![1, 2, 1, 1, 1, 2]).unwrap();
        let f = Fdfa::new(lead, vec![Dfa::new(p, [1]).unwrap()]).unwrap();
        let t = fdfa_to_nba(&f).unwrap();
        assert!(!t.nba.accepts_up(&w("a"), &w("b")).unwrap());
        assert!(t.nba.accepts_up(&[], &w("ab")).unwrap());
        assert!(t.nba.accepts_up(&w("bbb"), &w("ba")).unwrap());
    }

    #[test]
    fn nba_trivial_cases() {
        let mut a = Automaton::new(ab(), 1, 0).unwrap();
        a.add_transition(0, 0, 0).unwrap();
        a.add_transition(0, 1, 0).unwrap();
        let yes = Nba::new(a.clone(), [0].into()).unwrap();
        let no = Nba::new(a, BTreeSet::new()).unwrap();
        for u in ab().words_up_to(2) {
            for v in ab().words_up_to(2).filter(|v| !v.is_empty()) {
                assert!(yes.accepts_up(&u, &v).unwrap());
                assert!(!no.accepts_up(&u, &v).unwrap());
            }
        }
        assert_eq!(yes.accepts_up(&[], &[]), Err(Error::EmptyPeriod));
    }

    #[test]
    fn incomplete_nba_rejected() {
        let a = Automaton::new(ab(), 1, 0).unwrap();
        assert!(matches!(Nba::new(a, BTreeSet::new()), Err(Error::Incomplete { .. })));
    }

    #[test]
    fn ln2_nba_within_bound() {
        let f = gen_ln(2).unwrap().fdfa;
        let t = fdfa_to_nba(&f).unwrap();
        assert!(t.nba.state_count() <= t.state_bound);
    }
}
