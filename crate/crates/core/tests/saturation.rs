use fdfa::families::{fdfa_fixtures, fig1_saturated, fig1_unsaturated};
use fdfa::saturation::{check_saturation_bounded, check_saturation_exact, Budget, SaturationVerdict};
use fdfa::{Alphabet, Error};
use fdfa_testkit as oracle;
use proptest::prelude::*;

fn w(s: &str) -> Vec<usize> {
    Alphabet::new(["a", "b"]).unwrap().parse_word(s).unwrap()
}

#[test]
fn fig1_verdicts() {
    let u = fig1_unsaturated();
    for report in [check_saturation_bounded(&u, 3, 3).unwrap(), check_saturation_exact(&u, Budget::default()).unwrap()] {
        assert_eq!(report.verdict, SaturationVerdict::Unsaturated);
        let c = report.counterexample.unwrap();
        assert!(oracle::same_word(c.first.prefix(), c.first.period(), c.second.prefix(), c.second.period()));
        assert_ne!(oracle::accepts(&u, c.first.prefix(), c.first.period()), oracle::accepts(&u, c.second.prefix(), c.second.period()));
    }
    let t = check_saturation_exact(&u, Budget::default()).unwrap().transform.unwrap();
    assert_eq!((t.q, t.q_prime, t.l, t.r), (0, 1, 1, 1));
    assert_eq!((t.v1, t.v2), (w("a"), w("a")));
    // the (b, a) / (ba, aa) disagreement is also a genuine conflict
    assert!(u.accepts(&w("b"), &w("a")).unwrap() && !u.accepts(&w("ba"), &w("aa")).unwrap());

    let s = fig1_saturated();
    assert_eq!(check_saturation_bounded(&s, 3, 3).unwrap().verdict, SaturationVerdict::SaturatedUpToBound);
    assert_eq!(check_saturation_exact(&s, Budget::default()).unwrap().verdict, SaturationVerdict::SaturatedExact);
}

#[test]
fn saturated_fixtures_pass_both_checks() {
    for (name, f) in fdfa_fixtures().into_iter().skip(1) {
        let max_u = if f.alphabet().len() == 2 { 3 } else { 2 };
        assert_eq!(check_saturation_bounded(&f, max_u, 3).unwrap().verdict, SaturationVerdict::SaturatedUpToBound, "{name}");
        assert_eq!(check_saturation_exact(&f, Budget::default()).unwrap().verdict, SaturationVerdict::SaturatedExact, "{name}");
    }
}

#[test]
fn budget_is_enforced() {
    let r = check_saturation_exact(&fig1_saturated(), Budget { max_class_pairs: 1 });
    assert!(matches!(r, Err(Error::BudgetExceeded { .. })), "{r:?}");
}

#[test]
fn zero_period_bound_rejected() {
    assert_eq!(check_saturation_bounded(&fig1_saturated(), 2, 0).unwrap_err(), Error::ZeroParameter);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// The exact check refutes whenever enumeration does, never refutes
    /// with a bogus pair, and its verdict holds up against enumeration.
    #[test]
    fn exact_agrees_with_enumeration(seed in any::<u64>(), n in 1usize..4, k in 1usize..4) {
        let f = oracle::random_fdfa(seed, n, k);
        let exact = check_saturation_exact(&f, Budget::default()).unwrap();
        let conflict = oracle::pairs(f.alphabet(), 3, 4).into_iter().find_map(|(u1, v1)| {
            oracle::pairs(f.alphabet(), 3, 4).into_iter().find(|(u2, v2)| {
                oracle::same_word(&u1, &v1, u2, v2)
                    && oracle::accepts(&f, &u1, &v1) != oracle::accepts(&f, u2, v2)
            })
        });
        match exact.verdict {
            SaturationVerdict::SaturatedExact => prop_assert!(conflict.is_none(), "{conflict:?}"),
            SaturationVerdict::Unsaturated => {
                let c = exact.counterexample.unwrap();
                prop_assert!(oracle::same_word(c.first.prefix(), c.first.period(), c.second.prefix(), c.second.period()));
                prop_assert_ne!(oracle::accepts(&f, c.first.prefix(), c.first.period()), oracle::accepts(&f, c.second.prefix(), c.second.period()));
            }
            SaturationVerdict::SaturatedUpToBound => prop_assert!(false, "exact check returned a bounded verdict"),
        }
        let bounded = check_saturation_bounded(&f, 3, 4).unwrap();
        prop_assert_eq!(bounded.verdict == SaturationVerdict::Unsaturated, conflict.is_some());
    }
}
