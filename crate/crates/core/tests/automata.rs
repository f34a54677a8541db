use fdfa::acceptance::det_accepts_up;
use fdfa::automaton::product;
use fdfa::dfa::{dfa_and, dfa_or};
use fdfa::families::{deterministic_fixtures, fig1_saturated, fig1_unsaturated};
use fdfa::{Alphabet, DetAutomaton, Dfa, ProductMode};
use fdfa_testkit as oracle;
use proptest::prelude::*;

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

#[test]
fn reachable_product_matches_enumeration() {
    let (u, s) = (fig1_unsaturated(), fig1_saturated());
    let p = product(u.leading(), s.leading(), ProductMode::Reachable).unwrap();
    let bound = u.leading().state_count() * s.leading().state_count();
    let by_words: std::collections::BTreeSet<_> = oracle::words(&ab(), bound)
        .iter()
        .map(|w| {
            (
                u.leading().run_initial(w),
                s.leading().run_initial(w),
            )
        })
        .collect();
    let computed: std::collections::BTreeSet<_> = p.pairs.iter().copied().collect();
    assert_eq!(computed, by_words);
    for w in oracle::words(&ab(), 5) {
        let q = p.automaton.run_initial(&w);
        assert_eq!(p.pairs[q], (u.leading().run_initial(&w), s.leading().run_initial(&w)));
    }
}

#[test]
fn full_product_state_count() {
    let (u, s) = (fig1_unsaturated(), fig1_saturated());
    let p = product(u.leading(), s.leading(), ProductMode::Full).unwrap();
    assert_eq!(p.automaton.state_count(), 4);
    let d = deterministic_fixtures();
    let a = d[3].1.automaton();
    let p = product(a, s.leading(), ProductMode::Full).unwrap();
    assert_eq!(p.automaton.state_count(), a.state_count() * 2);
}

#[test]
fn dfa_boolean_operations_pointwise() {
    let ends_a = Dfa::new(DetAutomaton::from_table(ab(), 2, 0, vec![1, 0, 1, 0]).unwrap(), [1]).unwrap();
    let even_b = Dfa::new(DetAutomaton::from_table(ab(), 2, 0, vec![0, 1, 1, 0]).unwrap(), [0]).unwrap();
    let and = dfa_and(&ends_a, &even_b).unwrap();
    let or = dfa_or(&ends_a, &even_b).unwrap();
    let none = dfa_and(&ends_a, &ends_a.complement()).unwrap();
    for w in oracle::words(&ab(), 6) {
        let (x, y) = (ends_a.accepts(&w), even_b.accepts(&w));
        assert_eq!(and.accepts(&w), x && y);
        assert_eq!(or.accepts(&w), x || y);
        assert!(!none.accepts(&w));
    }
    assert!(none.is_empty());
}

#[test]
fn det_acceptance_matches_lasso_oracle() {
    for (name, d) in deterministic_fixtures() {
        for (u, v) in oracle::pairs(&ab(), 3, 3) {
            assert_eq!(
                det_accepts_up(d.automaton(), &d.acceptance(), &u, &v).unwrap(),
                oracle::det_accepts(d.automaton(), &d.acceptance(), &u, &v),
                "{name} on ({u:?}, {v:?})"
            );
        }
    }
}

fn word(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..2, 0..=max)
}

proptest! {
    #[test]
    fn run_composes(seed in any::<u64>(), w1 in word(8), w2 in word(8), n in 1usize..6) {
        let a = oracle::random_fdfa(seed, n, 1);
        let lead = a.leading();
        for s in 0..lead.state_count() {
            let mut w = w1.clone();
            w.extend(&w2);
            prop_assert_eq!(lead.run(s, &w), lead.run(lead.run(s, &w1), &w2));
        }
    }

    #[test]
    fn det_acceptance_is_representation_invariant(
        fixture in 0usize..7,
        u in word(4),
        v in word(4).prop_filter("nonempty", |v| !v.is_empty()),
        i in 0usize..3,
        j in 1usize..3,
    ) {
        let (_, d) = &deterministic_fixtures()[fixture];
        let x = oracle::concat(&[&u, &oracle::power(&v, i)]);
        let y = oracle::power(&v, j);
        prop_assert_eq!(
            det_accepts_up(d.automaton(), &d.acceptance(), &x, &y).unwrap(),
            det_accepts_up(d.automaton(), &d.acceptance(), &u, &v).unwrap()
        );
    }
}
