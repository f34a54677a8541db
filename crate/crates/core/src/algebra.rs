//! Boolean operations and decision procedures on FDFAs.
//!
//! Intersection, union, containment and equality are only guaranteed to be
//! semantically meaningful on saturated inputs. They are not rejected
//! otherwise (checking saturation is expensive); results carry a
//! `requires_saturated_inputs` caveat instead.

use std::collections::VecDeque;

use crate::alphabet::Word;
use crate::automaton::{product, ProductMode, State};
use crate::error::{Error, Result};
use crate::fdfa::{Fdfa, FdfaSize};

/// Swaps accepting and non-accepting states in every progress DFA.
pub fn complement(f: &Fdfa) -> Fdfa {
    f.map_progress(|_, p| p.complement())
}

/// A product family with the provenance of its leading states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFdfa {
    pub fdfa: Fdfa,
    /// `leading_pairs[s] = (q1, q2)` for leading state `s`.
    pub leading_pairs: Vec<(State, State)>,
    /// `(n1·n2, k1·k2)`: the size of the fully materialized product.
    pub full_size: FdfaSize,
    pub requires_saturated_inputs: bool,
}

#[derive(Clone, Copy)]
enum Combine {
    And,
    Or,
}

fn product_fdfa(f1: &Fdfa, f2: &Fdfa, mode: ProductMode, op: Combine) -> Result<ProductFdfa> {
    if f1.alphabet() != f2.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let lead = product(f1.leading(), f2.leading(), mode)?;
    let progress = lead
        .pairs
        .iter()
        .map(|&(q1, q2)| {
            let (p1, p2) = (f1.progress(q1), f2.progress(q2));
            match op {
                Combine::And => p1.and(p2, mode),
                Combine::Or => p1.or(p2, mode),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let (s1, s2) = (f1.size(), f2.size());
    Ok(ProductFdfa {
        fdfa: Fdfa::new(lead.automaton, progress)?,
        leading_pairs: lead.pairs,
        full_size: FdfaSize {
            n: s1.n * s2.n,
            k: s1.k * s2.k,
        },
        requires_saturated_inputs: true,
    })
}

/// `(Q1 × Q2, P1 ⊗ P2)`, reachable part only.
pub fn intersect(f1: &Fdfa, f2: &Fdfa) -> Result<ProductFdfa> {
    product_fdfa(f1, f2, ProductMode::Reachable, Combine::And)
}

/// `(Q1 × Q2, P1 ⊕ P2)`, reachable part only.
pub fn union(f1: &Fdfa, f2: &Fdfa) -> Result<ProductFdfa> {
    product_fdfa(f1, f2, ProductMode::Reachable, Combine::Or)
}

/// Intersection with a chosen materialization mode.
pub fn intersect_with(f1: &Fdfa, f2: &Fdfa, mode: ProductMode) -> Result<ProductFdfa> {
    product_fdfa(f1, f2, mode, Combine::And)
}

/// Union with a chosen materialization mode.
pub fn union_with(f1: &Fdfa, f2: &Fdfa, mode: ProductMode) -> Result<ProductFdfa> {
    product_fdfa(f1, f2, mode, Combine::Or)
}

/// A pair `(x, y)` with `Q(x) = Q(x·y)`: it is its own normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub x: Word,
    pub y: Word,
}

/// An accepted self-normalized pair.
pub type EmptinessWitness = PairWitness;

/// Answer to a decision query with its evidence. For emptiness the witness
/// (if any) is an accepted pair; for universality a rejected pair; for
/// containment and equality a pair on which the two families disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub holds: bool,
    pub witness: Option<PairWitness>,
    pub requires_saturated_inputs: bool,
}

/// Shortest nonempty `y` with `Q(q·y) = q` and `P_q(y) ∈ F_q`, by BFS over
/// `Q × P_q` started at `(q, ι_q)`.
fn accepted_loop(f: &Fdfa, q: State) -> Option<Word> {
    const ROOT: usize = usize::MAX;
    let lead = f.leading();
    let p = f.progress(q);
    let width = p.state_count();
    let node = |l: State, s: State| l * width + s;
    // parent[node] = (predecessor node or ROOT, letter)
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; lead.state_count() * width];
    // the root is expanded but not marked, so it can be reached again by a nonempty word
    let mut queue = VecDeque::from([(q, p.initial(), true)]);
    while let Some((l, s, is_root)) = queue.pop_front() {
        let id = if is_root { ROOT } else { node(l, s) };
        if !is_root && l == q && p.is_accepting(s) {
            let mut y = Vec::new();
            let mut cur = id;
            while cur != ROOT {
                let (from, a) = parent[cur].expect("visited node has a parent");
                y.push(a);
                cur = from;
            }
            y.reverse();
            return Some(y);
        }
        for a in 0..f.alphabet().len() {
            let (tl, ts) = (lead.step(l, a), p.automaton().step(s, a));
            let t = node(tl, ts);
            if parent[t].is_none() {
                parent[t] = Some((id, a));
                queue.push_back((tl, ts, false));
            }
        }
    }
    None
}

/// Searches for an accepted pair `(x, y)` with `Q(x) = Q(x·y)`. Leading
/// states are tried in BFS order from `ι`; `x` and `y` are shortest.
pub fn find_accepted_pair(f: &Fdfa) -> Option<PairWitness> {
    let lead = f.leading();
    let access = lead.access_words(lead.initial());
    lead.reachable_states().into_iter().find_map(|q| {
        accepted_loop(f, q).map(|y| PairWitness {
            x: access[q].clone().expect("reachable"),
            y,
        })
    })
}

fn verify(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!("{what} failed re-verification")))
    }
}

/// Emptiness. A nonempty answer comes with an accepted self-normalized pair.
pub fn is_empty(f: &Fdfa) -> Result<Decision> {
    let witness = find_accepted_pair(f);
    if let Some(w) = &witness {
        verify(f.accepts(&w.x, &w.y)?, "emptiness witness")?;
    }
    Ok(Decision {
        holds: witness.is_none(),
        witness,
        requires_saturated_inputs: false,
    })
}

/// Universality: emptiness of the complement. A negative answer comes with
/// a rejected pair.
pub fn is_universal(f: &Fdfa) -> Result<Decision> {
    let witness = find_accepted_pair(&complement(f));
    if let Some(w) = &witness {
        verify(!f.accepts(&w.x, &w.y)?, "universality counterexample")?;
    }
    Ok(Decision {
        holds: witness.is_none(),
        witness,
        requires_saturated_inputs: false,
    })
}

/// `L(f1) ⊆ L(f2)` via emptiness of `f1 ∩ f2^c`. A negative answer comes
/// with a pair accepted by `f1` and rejected by `f2`.
pub fn is_contained(f1: &Fdfa, f2: &Fdfa) -> Result<Decision> {
    let diff = intersect(f1, &complement(f2))?;
    let witness = find_accepted_pair(&diff.fdfa);
    if let Some(w) = &witness {
        verify(
            f1.accepts(&w.x, &w.y)? && !f2.accepts(&w.x, &w.y)?,
            "containment counterexample",
        )?;
    }
    Ok(Decision {
        holds: witness.is_none(),
        witness,
        requires_saturated_inputs: true,
    })
}

/// `L(f1) = L(f2)` via two containments.
pub fn is_equal(f1: &Fdfa, f2: &Fdfa) -> Result<Decision> {
    let forward = is_contained(f1, f2)?;
    if !forward.holds {
        return Ok(forward);
    }
    is_contained(f2, f1)
}
