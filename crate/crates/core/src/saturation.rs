//! Saturation checking.
//!
//! A family is saturated when any two pairs denoting the same ultimately
//! periodic word get the same verdict. [`check_saturation_bounded`] refutes
//! saturation by enumerating short pairs; [`check_saturation_exact`]
//! decides it by exploring the transformation monoid of the leading
//! automaton together with two progress DFAs.

use std::collections::{BTreeMap, HashMap};

use crate::alphabet::{Symbol, Word};
use crate::automaton::{DetAutomaton, State};
use crate::error::{Error, Result};
use crate::fdfa::Fdfa;
use crate::word::{canonicalize, UpWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturationVerdict {
    /// No counterexample among the enumerated pairs.
    SaturatedUpToBound,
    /// Saturation was decided and holds.
    SaturatedExact,
    Unsaturated,
}

/// Two pairs denoting the same ω-word on which the family disagrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationCounterexample {
    pub first: UpWord,
    pub second: UpWord,
    pub first_accepted: bool,
    pub second_accepted: bool,
}

/// Where an exact-check counterexample came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformWitness {
    /// Leading state reached on `u`.
    pub q: State,
    /// Leading state reached on `u·v'`.
    pub q_prime: State,
    pub u: Word,
    pub v1: Word,
    pub v2: Word,
    /// The first pair is `(u, (v'v'')^l)`.
    pub l: usize,
    /// The second pair is `(u·v', (v''v')^r)`.
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationReport {
    pub verdict: SaturationVerdict,
    pub counterexample: Option<SaturationCounterexample>,
    pub transform: Option<TransformWitness>,
    pub bound_used: String,
}

fn checked_counterexample(f: &Fdfa, first: UpWord, second: UpWord) -> Result<SaturationCounterexample> {
    let first_accepted = f.accepts_up(&first)?;
    let second_accepted = f.accepts_up(&second)?;
    if first_accepted == second_accepted || !first.same_word(&second) {
        return Err(Error::Internal(format!(
            "saturation counterexample {first:?} / {second:?} failed re-verification"
        )));
    }
    Ok(SaturationCounterexample {
        first,
        second,
        first_accepted,
        second_accepted,
    })
}

/// Enumerates every pair with `|u| ≤ max_u` and `1 ≤ |v| ≤ max_v` (by `|u|`,
/// then `|v|`, then lexicographically), grouping pairs by canonical form.
/// The first pair whose verdict differs from the first member of its group
/// yields the counterexample.
pub fn check_saturation_bounded(f: &Fdfa, max_u: usize, max_v: usize) -> Result<SaturationReport> {
    if max_v < 1 {
        return Err(Error::ZeroParameter);
    }
    let sigma = f.alphabet();
    let mut groups: HashMap<UpWord, (UpWord, bool)> = HashMap::new();
    for ulen in 0..=max_u {
        for u in sigma.words_of_len(ulen) {
            for vlen in 1..=max_v {
                for v in sigma.words_of_len(vlen) {
                    let pair = UpWord::new(u.clone(), v)?;
                    let accepted = f.accepts_up(&pair)?;
                    let key = canonicalize(&pair);
                    match groups.get(&key) {
                        None => {
                            groups.insert(key, (pair, accepted));
                        }
                        Some((rep, rep_accepted)) if *rep_accepted != accepted => {
                            let cex = checked_counterexample(f, rep.clone(), pair)?;
                            return Ok(SaturationReport {
                                verdict: SaturationVerdict::Unsaturated,
                                counterexample: Some(cex),
                                transform: None,
                                bound_used: format!("|u| <= {max_u}, |v| <= {max_v}"),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(SaturationReport {
        verdict: SaturationVerdict::SaturatedUpToBound,
        counterexample: None,
        transform: None,
        bound_used: format!("|u| <= {max_u}, |v| <= {max_v}"),
    })
}

/// Resource limit for [`check_saturation_exact`]: the largest admissible
/// `|X|²`, where `X` is the set of transformation classes explored for one
/// ordered pair of leading states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_class_pairs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_class_pairs: 4_000_000,
        }
    }
}

/// `(χ^Q_w, χ^{P}_w, χ^{P'}_w)` stored as one concatenated vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Triple(Vec<u32>);

struct TransformClass {
    word: Word,
    triple: Triple,
}

struct Monoid<'a> {
    parts: [&'a DetAutomaton; 3],
    offsets: [usize; 3],
}

impl<'a> Monoid<'a> {
    fn new(parts: [&'a DetAutomaton; 3]) -> Self {
        let o1 = parts[0].state_count();
        let o2 = o1 + parts[1].state_count();
        Monoid {
            parts,
            offsets: [0, o1, o2],
        }
    }

    fn identity(&self) -> Triple {
        let mut v = Vec::new();
        for p in self.parts {
            v.extend((0..p.state_count()).map(|q| q as u32));
        }
        Triple(v)
    }

    /// χ_{wσ} from χ_w.
    fn extend(&self, t: &Triple, sym: Symbol) -> Triple {
        let mut v = t.0.clone();
        for (part, &off) in self.parts.iter().zip(&self.offsets) {
            for q in 0..part.state_count() {
                v[off + q] = part.step(t.0[off + q] as usize, sym) as u32;
            }
        }
        Triple(v)
    }

    fn apply(&self, t: &Triple, part: usize, q: State) -> State {
        t.0[self.offsets[part] + q] as State
    }

    /// `χ_ε` first, then the classes of nonempty words in BFS order (ties by
    /// alphabet order), each with its shortest representative.
    fn classes(&self, letters: usize, budget: Budget) -> Result<Vec<TransformClass>> {
        let id = self.identity();
        let mut out = vec![TransformClass {
            word: Vec::new(),
            triple: id.clone(),
        }];
        let mut seen: BTreeMap<Triple, usize> = BTreeMap::new();
        let mut head = 1;
        let mut frontier = vec![(Vec::new(), id)];
        loop {
            for (word, t) in frontier.drain(..) {
                for a in 0..letters {
                    let next = self.extend(&t, a);
                    if !seen.contains_key(&next) {
                        let mut w = word.clone();
                        w.push(a);
                        seen.insert(next.clone(), out.len());
                        out.push(TransformClass { word: w, triple: next });
                        let explored = out.len() as u64;
                        if explored.saturating_mul(explored) > budget.max_class_pairs {
                            return Err(Error::BudgetExceeded {
                                explored: out.len(),
                                budget: budget.max_class_pairs,
                            });
                        }
                    }
                }
            }
            if head == out.len() {
                return Ok(out);
            }
            frontier = out[head..]
                .iter()
                .map(|c| (c.word.clone(), c.triple.clone()))
                .collect();
            head = out.len();
        }
    }
}

/// Decides saturation.
///
/// For each ordered pair of leading states `(q, q')` with `q` reachable
/// (shortest access word `u`), explores the classes `X` of words under
/// `w ↦ (χ^Q_w, χ^{P_q}_w, χ^{P_q'}_w)`. For every `(v', v'') ∈ X × X` with
/// `q -v'-> q'`, `q' -v''-> q` and `v'v''` nonempty, and every
/// `l, r ∈ [1..k]`, the pairs `(u, (v'v'')^l)` and `(u·v', (v''v')^r)`
/// denote the same ω-word and are both self-normalized, so their verdicts are
/// read off the stored functions. Any disagreement refutes saturation;
/// otherwise the family is saturated.
///
/// Fails with [`Error::BudgetExceeded`] when `|X|²` outgrows the budget.
pub fn check_saturation_exact(f: &Fdfa, budget: Budget) -> Result<SaturationReport> {
    let lead = f.leading();
    let k = f.size().k;
    let access = lead.access_words(lead.initial());
    let letters = f.alphabet().len();
    for q in lead.reachable_states() {
        let u = access[q].clone().expect("reachable");
        for q2 in 0..lead.state_count() {
            let (p, p2) = (f.progress(q), f.progress(q2));
            let monoid = Monoid::new([lead, p.automaton(), p2.automaton()]);
            let classes = monoid.classes(letters, budget)?;
            for c1 in &classes {
                if monoid.apply(&c1.triple, 0, q) != q2 {
                    continue;
                }
                for c2 in &classes {
                    if monoid.apply(&c2.triple, 0, q2) != q {
                        continue;
                    }
                    if c1.word.is_empty() && c2.word.is_empty() {
                        continue;
                    }
                    // verdicts of (u, (v'v'')^l) for l = 1..k, read on P_q
                    let mut left = Vec::with_capacity(k);
                    let mut s = p.initial();
                    for _ in 0..k {
                        s = monoid.apply(&c2.triple, 1, monoid.apply(&c1.triple, 1, s));
                        left.push(p.is_accepting(s));
                    }
                    // verdicts of (u·v', (v''v')^r) for r = 1..k, read on P_q'
                    let mut right = Vec::with_capacity(k);
                    let mut s = p2.initial();
                    for _ in 0..k {
                        s = monoid.apply(&c1.triple, 2, monoid.apply(&c2.triple, 2, s));
                        right.push(p2.is_accepting(s));
                    }
                    let hit = (0..k).find_map(|l| (0..k).find(|&r| left[l] != right[r]).map(|r| (l + 1, r + 1)));
                    if let Some((l, r)) = hit {
                        let loop1: Word = c1.word.iter().chain(&c2.word).copied().collect();
                        let loop2: Word = c2.word.iter().chain(&c1.word).copied().collect();
                        let mut u2 = u.clone();
                        u2.extend_from_slice(&c1.word);
                        let first = UpWord::new(u.clone(), loop1.repeat(l))?;
                        let second = UpWord::new(u2, loop2.repeat(r))?;
                        let cex = checked_counterexample(f, first, second)?;
                        return Ok(SaturationReport {
                            verdict: SaturationVerdict::Unsaturated,
                            counterexample: Some(cex),
                            transform: Some(TransformWitness {
                                q,
                                q_prime: q2,
                                u,
                                v1: c1.word.clone(),
                                v2: c2.word.clone(),
                                l,
                                r,
                            }),
                            bound_used: format!("exact, |X| = {}", classes.len()),
                        });
                    }
                }
            }
        }
    }
    Ok(SaturationReport {
        verdict: SaturationVerdict::SaturatedExact,
        counterexample: None,
        transform: None,
        bound_used: format!("exact, k = {k}"),
    })
}
