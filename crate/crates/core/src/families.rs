//! Concrete families: the two-state examples over `{a, b}` and the `Lₙ`
//! succinctness family over `{1..n}`.
//!
//! `Lₙ` contains the words in which every letter `i` is followed by some
//! `j ≤ i + 1`, and the number of distinct letters occurring infinitely
//! often is odd.

use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Symbol};
use crate::automaton::DetAutomaton;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::fdfa::Fdfa;
use crate::translate::{dba_to_fdfa, dca_to_fdfa, dpa_to_fdfa, DetOmega, Dba, Dca, Dpa};
use crate::acceptance::Acceptance;

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).expect("valid alphabet")
}

fn dfa(states: usize, table: Vec<usize>, accepting: &[usize]) -> Dfa {
    let a = DetAutomaton::from_table(ab(), states, 0, table).expect("valid table");
    Dfa::new(a, accepting.iter().copied()).expect("valid final states")
}

/// The unsaturated family `U`: leading `l -b-> l`, `l -a-> r`, `r -a,b-> l`;
/// `P_l` accepts every word, `P_r` accepts the words containing `b`.
/// Leading state 0 is `l`, 1 is `r`.
pub fn fig1_unsaturated() -> Fdfa {
    let leading = DetAutomaton::from_table(ab(), 2, 0, vec![1, 0, 0, 0]).expect("valid table");
    let p_l = dfa(1, vec![0, 0], &[0]);
    let p_r = dfa(2, vec![0, 1, 1, 1], &[1]);
    Fdfa::new(leading, vec![p_l, p_r]).expect("well-formed family")
}

/// The saturated family `S` for `(a+b)*(a^ω + b^ω)`: the leading automaton
/// remembers the last letter (`l` after `a` or at the start, `r` after `b`);
/// `P_l` accepts `a⁺`, `P_r` accepts `b⁺`.
pub fn fig1_saturated() -> Fdfa {
    let leading = DetAutomaton::from_table(ab(), 2, 0, vec![0, 1, 0, 1]).expect("valid table");
    let p_l = dfa(2, vec![0, 1, 1, 1], &[0]);
    let p_r = dfa(2, vec![1, 0, 1, 1], &[0]);
    Fdfa::new(leading, vec![p_l, p_r]).expect("well-formed family")
}

/// A generated `Lₙ` family.
///
/// Leading state `q_i` (last letter read was `i`) has index `i - 1`; the
/// rejecting sink `⊥` has index `n`. Progress state `(s, b)` (least and
/// greatest letter read) has index `(s - 1)·n + (b - 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LnInstance {
    pub n: usize,
    pub fdfa: Fdfa,
}

impl LnInstance {
    pub fn bottom(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.fdfa.alphabet()
    }
}

/// The saturated FDFA of size `(n+1, n²)` for `Lₙ`.
pub fn gen_ln(n: usize) -> Result<LnInstance> {
    if n < 1 {
        return Err(Error::ZeroParameter);
    }
    let alphabet = Alphabet::numeric(n)?;
    let bottom = n;
    // symbol index j-1 is letter j; state index i-1 is q_i
    let leading = DetAutomaton::from_fn(alphabet.clone(), n + 1, n - 1, |q, sym| {
        if q == bottom || sym > q + 1 {
            bottom
        } else {
            sym
        }
    })?;
    let idx = |s: usize, b: usize| (s - 1) * n + (b - 1);
    let minmax = DetAutomaton::from_fn(alphabet.clone(), n * n, idx(n, 1), |state, sym| {
        let (s, b) = (state / n + 1, state % n + 1);
        let letter = sym + 1;
        idx(s.min(letter), b.max(letter))
    })?;
    let accepting: BTreeSet<usize> = (1..=n)
        .flat_map(|s| (1..=n).map(move |b| (s, b)))
        .filter(|&(s, b)| s.abs_diff(b) % 2 == 0)
        .map(|(s, b)| idx(s, b))
        .collect();
    let progress_q = Dfa::new(minmax, accepting)?;
    let sink = Dfa::new(DetAutomaton::from_fn(alphabet, 1, 0, |_, _| 0)?, [])?;
    let mut progress = vec![progress_q; n];
    progress.push(sink);
    Ok(LnInstance {
        n,
        fdfa: Fdfa::new(leading, progress)?,
    })
}

/// Direct semantic membership of `u·v^ω` in `Lₙ`.
///
/// Symbols are indices into `{1..n}` (index `i` is letter `i + 1`). The
/// safety rule is checked on every adjacent pair of `u·v·v`, which covers
/// the wrap-around from one copy of `v` to the next; the letters occurring
/// infinitely often are exactly the letters of `v`.
pub fn ln_semantic_member(n: usize, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
    if n < 1 {
        return Err(Error::ZeroParameter);
    }
    if v.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    if let Some(&bad) = u.iter().chain(v).find(|&&s| s >= n) {
        return Err(Error::LetterOutOfRange { letter: bad + 1, n });
    }
    let word: Vec<Symbol> = u.iter().chain(v).chain(v).copied().collect();
    let safe = word.windows(2).all(|w| w[1] <= w[0] + 1);
    let distinct: BTreeSet<Symbol> = v.iter().copied().collect();
    Ok(safe && distinct.len() % 2 == 1)
}

/// A deterministic ω-automaton of any of the supported acceptance types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetFixture {
    Dba(Dba),
    Dca(Dca),
    Dpa(Dpa),
}

impl DetFixture {
    pub fn automaton(&self) -> &DetAutomaton {
        match self {
            DetFixture::Dba(d) => d.automaton(),
            DetFixture::Dca(d) => d.automaton(),
            DetFixture::Dpa(d) => d.automaton(),
        }
    }

    pub fn acceptance(&self) -> Acceptance {
        match self {
            DetFixture::Dba(d) => d.acceptance(),
            DetFixture::Dca(d) => d.acceptance(),
            DetFixture::Dpa(d) => d.acceptance(),
        }
    }

    pub fn accepts_up(&self, u: &[Symbol], v: &[Symbol]) -> Result<bool> {
        match self {
            DetFixture::Dba(d) => d.accepts_up(u, v),
            DetFixture::Dca(d) => d.accepts_up(u, v),
            DetFixture::Dpa(d) => d.accepts_up(u, v),
        }
    }

    pub fn to_fdfa(&self) -> Result<Fdfa> {
        match self {
            DetFixture::Dba(d) => dba_to_fdfa(d),
            DetFixture::Dca(d) => dca_to_fdfa(d),
            DetFixture::Dpa(d) => dpa_to_fdfa(d),
        }
    }
}

fn table(states: usize, t: Vec<usize>) -> DetAutomaton {
    DetAutomaton::from_table(ab(), states, 0, t).expect("valid table")
}

// state 1 = last letter was a
fn last_a() -> DetAutomaton {
    table(2, vec![1, 0, 1, 0])
}

// 0 = start or after b, 1 = after a, 2 = just read ab
fn seen_ab() -> DetAutomaton {
    table(3, vec![1, 0, 1, 2, 1, 0])
}

// 0 = start, 1 = single a, 2 = after aa, 3 = after b
fn seen_aa() -> DetAutomaton {
    table(4, vec![1, 3, 2, 3, 2, 3, 1, 3])
}

/// Deterministic Büchi, co-Büchi and parity fixtures over `{a, b}`.
pub fn deterministic_fixtures() -> Vec<(&'static str, DetFixture)> {
    let dba = |a, acc: &[usize]| DetFixture::Dba(Dba::new(a, acc.iter().copied().collect()).expect("valid"));
    let dca = |a, rej: &[usize]| DetFixture::Dca(Dca::new(a, rej.iter().copied().collect()).expect("valid"));
    let dpa = |a, colors: Vec<u32>| DetFixture::Dpa(Dpa::new(a, colors).expect("valid"));
    vec![
        ("dba-inf-a", dba(last_a(), &[1])),
        ("dca-fin-a", dca(last_a(), &[1])),
        ("dba-all", dba(last_a(), &[0, 1])),
        ("dba-inf-ab", dba(seen_ab(), &[2])),
        ("dca-fin-b", dca(last_a(), &[0])),
        ("dpa-inf-a", dpa(last_a(), vec![2, 1])),
        ("dpa-inf-aa", dpa(seen_aa(), vec![3, 3, 1, 2])),
    ]
}

/// Every FDFA fixture by name: `U`, `S`, `L2`, `L3` and the translations of
/// [`deterministic_fixtures`].
pub fn fdfa_fixtures() -> Vec<(String, Fdfa)> {
    let mut out = vec![
        ("fig1-U".to_string(), fig1_unsaturated()),
        ("fig1-S".to_string(), fig1_saturated()),
    ];
    for n in 2..=3 {
        out.push((format!("ln-{n}"), gen_ln(n).expect("n >= 1").fdfa));
    }
    for (name, d) in deterministic_fixtures() {
        out.push((format!("from-{name}"), d.to_fdfa().expect("valid fixture")));
    }
    out
}
