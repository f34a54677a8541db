//! Brute-force reference implementations.
//!
//! Everything here works directly from definitions on explicitly built
//! words and state graphs, and shares no algorithm with the library beyond
//! single transition lookups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use fdfa::translate::Nba;
use fdfa::{Acceptance, Alphabet, DetAutomaton, Fdfa, State, Symbol, Word};

/// All words over `sigma` of length at most `max`, shortest first.
pub fn words(sigma: &Alphabet, max: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w: &Word| {
                (0..sigma.len()).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// All pairs `(u, v)` with `|u| ≤ max_u` and `1 ≤ |v| ≤ max_v`.
pub fn pairs(sigma: &Alphabet, max_u: usize, max_v: usize) -> Vec<(Word, Word)> {
    let us = words(sigma, max_u);
    let vs: Vec<Word> = words(sigma, max_v).into_iter().filter(|v| !v.is_empty()).collect();
    us.iter()
        .flat_map(|u| vs.iter().map(move |v| (u.clone(), v.clone())))
        .collect()
}

pub fn concat(parts: &[&[Symbol]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

pub fn power(v: &[Symbol], k: usize) -> Word {
    v.repeat(k)
}

fn run(a: &DetAutomaton, from: State, w: &[Symbol]) -> State {
    w.iter().fold(from, |q, &s| a.step(q, s))
}

/// FDFA acceptance straight from the definition: try `i = 0, 1, …` and
/// `j = 1, 2, …` in order of `i + j`, building `u·v^i` and `v^j` explicitly.
pub fn accepts(f: &Fdfa, u: &[Symbol], v: &[Symbol]) -> bool {
    let (x, y) = normalization(f.leading(), u, v);
    let q = run(f.leading(), f.leading().initial(), &x);
    let p = f.progress(q);
    p.is_accepting(run(p.automaton(), p.initial(), &y))
}

/// Smallest `(i, j)` (by `i`, then `j`) with `Q(u·v^i) = Q(u·v^(i+j))`,
/// returned as the words `(u·v^i, v^j)`.
pub fn normalization(lead: &DetAutomaton, u: &[Symbol], v: &[Symbol]) -> (Word, Word) {
    let n = lead.state_count();
    for i in 0..=n {
        for j in 1..=n {
            let x = concat(&[u, &power(v, i)]);
            let xy = concat(&[&x, &power(v, j)]);
            if run(lead, lead.initial(), &x) == run(lead, lead.initial(), &xy) {
                return (x, power(v, j));
            }
        }
    }
    unreachable!("some boundary state repeats within n + 1 copies")
}

/// Letter `i` of `u·v^ω`.
pub fn letter(u: &[Symbol], v: &[Symbol], i: usize) -> Symbol {
    if i < u.len() {
        u[i]
    } else {
        v[(i - u.len()) % v.len()]
    }
}

/// Equality of `u1·v1^ω` and `u2·v2^ω` by comparing a prefix long enough
/// that both words have entered their periods and run through a full
/// common period.
pub fn same_word(u1: &[Symbol], v1: &[Symbol], u2: &[Symbol], v2: &[Symbol]) -> bool {
    let len = u1.len().max(u2.len()) + v1.len() * v2.len();
    (0..len).all(|i| letter(u1, v1, i) == letter(u2, v2, i))
}

/// The infinity set of the run of `a` on `u·v^ω` via the lasso graph over
/// `(state, position)` nodes.
pub fn infinity_set(a: &DetAutomaton, u: &[Symbol], v: &[Symbol]) -> BTreeSet<State> {
    let period = u.len() + v.len();
    let next_pos = |pos: usize| if pos + 1 == period { u.len() } else { pos + 1 };
    let mut seen: Vec<(State, usize)> = Vec::new();
    let mut node = (a.initial(), 0);
    loop {
        if let Some(start) = seen.iter().position(|&n| n == node) {
            return seen[start..].iter().map(|&(q, _)| q).collect();
        }
        seen.push(node);
        let (q, pos) = node;
        node = (a.step(q, letter(u, v, pos)), next_pos(pos));
    }
}

/// Deterministic ω-acceptance on `u·v^ω`.
pub fn det_accepts(a: &DetAutomaton, acc: &Acceptance, u: &[Symbol], v: &[Symbol]) -> bool {
    let inf = infinity_set(a, u, v);
    match acc {
        Acceptance::Buchi(f) => inf.iter().any(|q| f.contains(q)),
        Acceptance::CoBuchi(f) => !inf.iter().any(|q| f.contains(q)),
        Acceptance::Parity(c) => inf.iter().map(|&q| c[q]).min().unwrap() % 2 == 1,
        Acceptance::FinalStates(_) => panic!("not an ω-condition"),
    }
}

/// NBA acceptance on `u·v^ω`: an accepting node of the product with the
/// lasso that is reachable from the start and lies on a cycle.
pub fn nba_accepts(b: &Nba, u: &[Symbol], v: &[Symbol]) -> bool {
    let a = &b.automaton;
    let period = u.len() + v.len();
    let next_pos = |pos: usize| if pos + 1 == period { u.len() } else { pos + 1 };
    let succ = |(q, pos): (State, usize)| -> Vec<(State, usize)> {
        a.successors(q, letter(u, v, pos))
            .iter()
            .map(|&t| (t, next_pos(pos)))
            .collect()
    };
    let reach = |from: Vec<(State, usize)>| {
        let mut seen: HashSet<(State, usize)> = from.iter().copied().collect();
        let mut queue: VecDeque<_> = from.into();
        while let Some(n) = queue.pop_front() {
            for m in succ(n) {
                if seen.insert(m) {
                    queue.push_back(m);
                }
            }
        }
        seen
    };
    let reachable = reach(vec![(a.initial(), 0)]);
    reachable
        .iter()
        .filter(|&&(q, _)| b.accepting.contains(&q))
        .any(|&n| reach(succ(n)).contains(&n))
}

/// Leading states reachable by some word of length at most `max`.
pub fn reachable_by_enumeration(a: &DetAutomaton, max: usize) -> BTreeSet<State> {
    words(a.alphabet(), max)
        .iter()
        .map(|w| run(a, a.initial(), w))
        .collect()
}

/// Some pair with `|u| ≤ max_u`, `|v| ≤ max_v` on which `pred` holds.
pub fn find_pair(
    sigma: &Alphabet,
    max_u: usize,
    max_v: usize,
    mut pred: impl FnMut(&[Symbol], &[Symbol]) -> bool,
) -> Option<(Word, Word)> {
    let us = words(sigma, max_u);
    for v in words(sigma, max_v).into_iter().filter(|v| !v.is_empty()) {
        for u in &us {
            if pred(u, &v) {
                return Some((u.clone(), v));
            }
        }
    }
    None
}

/// A random complete FDFA over `{a, b}` with `n` leading states and progress
/// DFAs of `1..=k` states each.
pub fn random_fdfa(seed: u64, n: usize, k: usize) -> Fdfa {
    use fdfa::Dfa;
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(seed);
    let sigma = Alphabet::new(["a", "b"]).unwrap();
    let table = |rng: &mut StdRng, states: usize| -> DetAutomaton {
        let t = (0..states * 2).map(|_| rng.gen_range(0..states)).collect();
        DetAutomaton::from_table(sigma.clone(), states, 0, t).unwrap()
    };
    let leading = table(&mut rng, n);
    let progress = (0..n)
        .map(|_| {
            let states = rng.gen_range(1..=k);
            let a = table(&mut rng, states);
            let acc: Vec<State> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
            Dfa::new(a, acc).unwrap()
        })
        .collect();
    Fdfa::new(leading, progress).unwrap()
}
