//! The acceptance suite: one check per criterion, each with its runtime
//! limit. Prints one PASS/FAIL line per criterion and fails if any does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{rngs::StdRng, Rng, SeedableRng};

use fdfa::algebra::{complement, intersect, intersect_with, is_contained, is_empty, is_equal, is_universal, union, union_with};
use fdfa::families::{
    deterministic_fixtures, fdfa_fixtures, fig1_saturated, fig1_unsaturated, gen_ln, ln_semantic_member, DetFixture,
};
use fdfa::saturation::{check_saturation_bounded, check_saturation_exact, Budget, SaturationVerdict};
use fdfa::translate::{build_mq, build_nqf, fdfa_to_nba, nba_accepts_up};
use fdfa::{Alphabet, DetAutomaton, Dfa, Fdfa, FdfaSize, ProductMode};
use fdfa_cli::document::{self, Document};
use fdfa_testkit as oracle;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ab() -> Alphabet {
    Alphabet::new(["a", "b"]).unwrap()
}

fn w(s: &str) -> Vec<usize> {
    ab().parse_word(s).unwrap()
}

/// `(3, 3)` on two-letter alphabets, `(2, 3)` on three letters.
fn bounds(f: &Fdfa) -> (usize, usize) {
    if f.alphabet().len() <= 2 {
        (3, 3)
    } else {
        (2, 3)
    }
}

fn translated() -> Vec<(String, Fdfa)> {
    deterministic_fixtures()
        .into_iter()
        .map(|(name, d)| (format!("from-{name}"), d.to_fdfa().unwrap()))
        .collect()
}

fn saturated() -> Vec<(String, Fdfa)> {
    fdfa_fixtures().into_iter().filter(|(n, _)| n != "fig1-U").collect()
}

fn odd_period_trap() -> Fdfa {
    let lead = DetAutomaton::from_table(ab(), 2, 0, vec![1, 1, 0, 0]).unwrap();
    let odd = Dfa::new(DetAutomaton::from_table(ab(), 2, 0, vec![1, 1, 0, 0]).unwrap(), [1]).unwrap();
    Fdfa::new(lead, vec![odd.clone(), odd]).unwrap()
}

fn criterion_1() -> Check {
    let (u, s) = (fig1_unsaturated(), fig1_saturated());
    ensure!(u.accepts(&w("b"), &w("a")).unwrap(), "(b, a) should be accepted by U");
    ensure!(!u.accepts(&w("ba"), &w("aa")).unwrap(), "(ba, aa) should be rejected by U");
    let n = u.normalize(&w("b"), &w("a")).unwrap();
    ensure!((n.x.clone(), n.y.clone()) == (w("b"), w("aa")), "normalize(U, b, a) = {n:?}");
    let reports = [
        check_saturation_bounded(&u, 3, 3).unwrap(),
        check_saturation_exact(&u, Budget::default()).unwrap(),
    ];
    for r in &reports {
        ensure!(r.verdict == SaturationVerdict::Unsaturated, "U reported {:?}", r.verdict);
        let c = r.counterexample.as_ref().ok_or("missing counterexample")?;
        ensure!(
            oracle::same_word(c.first.prefix(), c.first.period(), c.second.prefix(), c.second.period()),
            "counterexample pairs denote different words"
        );
        ensure!(
            oracle::accepts(&u, c.first.prefix(), c.first.period()) != oracle::accepts(&u, c.second.prefix(), c.second.period()),
            "counterexample verdicts agree"
        );
    }
    ensure!(
        check_saturation_bounded(&s, 3, 3).unwrap().verdict == SaturationVerdict::SaturatedUpToBound,
        "S fails bounded saturation"
    );
    ensure!(
        check_saturation_exact(&s, Budget::default()).unwrap().verdict == SaturationVerdict::SaturatedExact,
        "S fails exact saturation"
    );
    Ok(())
}

fn criterion_2() -> Check {
    let mut fixtures = vec![
        ("U".to_string(), fig1_unsaturated()),
        ("S".to_string(), fig1_saturated()),
        ("L2".to_string(), gen_ln(2).unwrap().fdfa),
        ("L3".to_string(), gen_ln(3).unwrap().fdfa),
    ];
    fixtures.extend(translated());
    for (name, f) in &fixtures {
        let c = complement(f);
        ensure!(c.size() == f.size(), "{name}: size {} vs {}", c.size(), f.size());
        let (mu, mv) = bounds(f);
        for (u, v) in oracle::pairs(f.alphabet(), mu, mv) {
            ensure!(
                c.accepts(&u, &v).unwrap() != oracle::accepts(f, &u, &v),
                "{name}: complement agrees with the original on ({u:?}, {v:?})"
            );
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let all = fdfa_fixtures();
    for (n1, f1) in &all {
        for (n2, f2) in all.iter().filter(|(_, f)| f.alphabet() == f1.alphabet()) {
            let (s1, s2) = (f1.size(), f2.size());
            let expected = FdfaSize { n: s1.n * s2.n, k: s1.k * s2.k };
            let i = intersect_with(f1, f2, ProductMode::Full).unwrap().fdfa.size();
            let u = union_with(f1, f2, ProductMode::Full).unwrap().fdfa.size();
            ensure!(i == expected && u == expected, "{n1} × {n2}: {i}, {u} instead of {expected}");
        }
    }
    let sat = saturated();
    for (n1, f1) in &sat {
        for (n2, f2) in sat.iter().filter(|(_, f)| f.alphabet() == f1.alphabet()) {
            let and = intersect(f1, f2).unwrap().fdfa;
            let or = union(f1, f2).unwrap().fdfa;
            let (mu, mv) = bounds(f1);
            for (u, v) in oracle::pairs(f1.alphabet(), mu, mv) {
                let (a, b) = (oracle::accepts(f1, &u, &v), oracle::accepts(f2, &u, &v));
                ensure!(and.accepts(&u, &v).unwrap() == (a && b), "{n1} ∩ {n2} on ({u:?}, {v:?})");
                ensure!(or.accepts(&u, &v).unwrap() == (a || b), "{n1} ∪ {n2} on ({u:?}, {v:?})");
            }
            for (op, p) in [("∩", &and), ("∪", &or)] {
                let r = check_saturation_bounded(p, 3, 3).unwrap();
                ensure!(r.verdict == SaturationVerdict::SaturatedUpToBound, "{n1} {op} {n2} is not saturated: {r:?}");
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let s = fig1_saturated();
    let mut instances: Vec<(String, Fdfa)> = saturated()
        .into_iter()
        .filter(|(_, f)| *f.alphabet() == ab() && f.size().n * f.size().k <= 12)
        .collect();
    instances.push(("trap".into(), odd_period_trap()));
    instances.push(("trap^c".into(), complement(&odd_period_trap())));
    instances.push(("S∩S^c".into(), intersect(&s, &complement(&s)).unwrap().fdfa));
    instances.push(("S∪S^c".into(), union(&s, &complement(&s)).unwrap().fdfa));
    instances.push(("S^c".into(), complement(&s)));
    ensure!(instances.len() >= 10, "only {} instances", instances.len());

    let accepted_pair = |f: &Fdfa| {
        let z = f.size();
        oracle::find_pair(f.alphabet(), z.n, z.n * z.k, |u, v| oracle::accepts(f, u, v))
    };
    for (name, f) in &instances {
        let e = is_empty(f).unwrap();
        ensure!(e.holds == accepted_pair(f).is_none(), "emptiness of {name}");
        let un = is_universal(f).unwrap();
        ensure!(un.holds == accepted_pair(&complement(f)).is_none(), "universality of {name}");
    }
    ensure!(is_empty(&odd_period_trap()).unwrap().holds, "the odd-period trap is empty");
    for (n1, f1) in &instances {
        for (n2, f2) in &instances {
            let diff = intersect(f1, &complement(f2)).unwrap().fdfa;
            let z = diff.size();
            let disagree = oracle::find_pair(&ab(), z.n, (z.n * z.k).min(12), |u, v| {
                oracle::accepts(f1, u, v) && !oracle::accepts(f2, u, v)
            });
            ensure!(is_contained(f1, f2).unwrap().holds == disagree.is_none(), "{n1} ⊆ {n2}");
        }
        ensure!(is_equal(f1, f1).unwrap().holds, "{n1} = {n1}");
        ensure!(!is_equal(f1, &complement(f1)).unwrap().holds, "{n1} ≠ complement");
    }
    Ok(())
}

fn criterion_5() -> Check {
    let fixtures = deterministic_fixtures();
    ensure!(fixtures.len() >= 6, "only {} fixtures", fixtures.len());
    for (name, d) in &fixtures {
        let f = d.to_fdfa().unwrap();
        let n = d.automaton().state_count();
        let k = match d {
            DetFixture::Dpa(p) => p.color_count() as usize * n,
            _ => 2 * n,
        };
        ensure!(f.size() == FdfaSize { n, k }, "{name}: size {}", f.size());
        for (u, v) in oracle::pairs(f.alphabet(), 3, 3) {
            let expected = d.accepts_up(&u, &v).unwrap();
            ensure!(
                expected == oracle::det_accepts(d.automaton(), &d.acceptance(), &u, &v),
                "{name}: det_accepts_up disagrees with the lasso oracle on ({u:?}, {v:?})"
            );
            ensure!(f.accepts(&u, &v).unwrap() == expected, "{name} on ({u:?}, {v:?})");
        }
        let r = check_saturation_bounded(&f, 3, 3).unwrap();
        ensure!(r.verdict == SaturationVerdict::SaturatedUpToBound, "{name} not saturated");
    }
    Ok(())
}

fn criterion_6() -> Check {
    for (name, f) in fdfa_fixtures() {
        let t = fdfa_to_nba(&f).unwrap();
        ensure!(t.nba.state_count() <= t.state_bound, "{name}: {} > {}", t.nba.state_count(), t.state_bound);
    }
    let mut faithful = vec![("S".to_string(), fig1_saturated()), ("L2".to_string(), gen_ln(2).unwrap().fdfa)];
    faithful.extend(translated());
    for (name, f) in &faithful {
        let t = fdfa_to_nba(f).unwrap();
        for (u, v) in oracle::pairs(f.alphabet(), 3, 3) {
            ensure!(
                nba_accepts_up(&t.nba, &u, &v).unwrap() == f.accepts(&u, &v).unwrap(),
                "{name} on ({u:?}, {v:?})"
            );
        }
        let lead = f.leading();
        let ws = oracle::words(f.alphabet(), 4);
        for q in lead.reachable_states() {
            let m = build_mq(f, q).unwrap();
            for fst in f.progress(q).accepting_states() {
                let nq = build_nqf(f, q, fst).unwrap();
                let ms: Vec<_> = ws.iter().filter(|x| m.dfa.accepts(x)).collect();
                let ns: Vec<_> = ws.iter().filter(|x| nq.dfa.accepts(x)).collect();
                for y in &ns {
                    for x in &ms {
                        ensure!(m.dfa.accepts(&oracle::concat(&[x, y])), "{name}: M_{q}·N ⊄ M_{q}");
                    }
                    for x in &ns {
                        ensure!(nq.dfa.accepts(&oracle::concat(&[x, y])), "{name}: N_{q},{fst}² ⊄ N");
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    for n in 1..=6 {
        let size = gen_ln(n).unwrap().fdfa.size();
        ensure!(size == FdfaSize { n: n + 1, k: n * n }, "size(L{n}) = {size}");
    }
    for n in 2..=4 {
        let ln = gen_ln(n).unwrap();
        for (u, v) in oracle::pairs(ln.alphabet(), 3, 4) {
            ensure!(
                ln.fdfa.accepts(&u, &v).unwrap() == ln_semantic_member(n, &u, &v).unwrap(),
                "L{n} on ({u:?}, {v:?})"
            );
        }
    }
    let l4 = gen_ln(4).unwrap();
    let p4 = |s: &str| l4.alphabet().parse_word(s).unwrap();
    ensure!(l4.fdfa.accepts(&p4("2331"), &p4("22343233")).unwrap(), "2331(22343233)^ω ∉ L4");
    let l3 = gen_ln(3).unwrap();
    let p3 = |s: &str| l3.alphabet().parse_word(s).unwrap();
    ensure!(!l3.fdfa.accepts(&p3("1"), &p3("233")).unwrap(), "1(233)^ω ∈ L3");
    Ok(())
}

fn criterion_8() -> Check {
    let fixtures = fdfa_fixtures();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..500 {
        let (name, f) = &fixtures[rng.gen_range(0..fixtures.len())];
        let sigma = f.alphabet().len();
        let mut word = |min: usize| -> Vec<usize> {
            let len = rng.gen_range(min..=4);
            (0..len).map(|_| rng.gen_range(0..sigma)).collect()
        };
        let (u, v) = (word(0), word(1));
        let norm = f.normalize(&u, &v).unwrap();
        let (x, y) = (&norm.x, &norm.y);
        for i in 0..=2 {
            for j in 1..=2 {
                for cut in 0..=y.len() {
                    let (y1, y2) = y.split_at(cut);
                    let x2 = oracle::concat(&[x, &oracle::power(y, i), y1]);
                    let y2 = oracle::power(&oracle::concat(&[y2, y1]), j);
                    let again = f.normalize(&x2, &y2).unwrap();
                    ensure!((&again.x, &again.y) == (&x2, &y2), "{name}: ({x2:?}, {y2:?}) renormalized to {again:?}");
                }
            }
        }
    }
    Ok(())
}

fn fdfa_bin(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_fdfa"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn criterion_9() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, listing, _) = fdfa_bin(&["fixtures", "--dir", d], None);
    ensure!(code == 0, "fixtures exited {code}");
    for file in listing.lines() {
        let path = dir.path().join(file);
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = document::parse(&text).map_err(|e| format!("{file}: {e}"))?;
        ensure!(document::serialize(&doc) == text, "{file}: serialization is not byte-stable");
        let (code, out, _) = fdfa_bin(&["fixtures", file.rsplit_once('.').unwrap().0], None);
        ensure!(code == 0 && out == text, "{file}: fixture output differs from the written file");
        if let Document::Fdfa(_) = doc {
            let (code, once, _) = fdfa_bin(&["complement", path.to_str().unwrap()], None);
            let (_, twice, _) = fdfa_bin(&["complement", "-"], Some(&once));
            ensure!(code == 0 && twice == text, "{file}: double complement is not the identity");
        }
    }
    let u = dir.path().join("fig1-U.fdfa");
    let u = u.to_str().unwrap();
    let cases: [(&[&str], i32); 8] = [
        (&["member", u, "--u", "b", "--v", "a"], 0),
        (&["member", u, "--u", "ba", "--v", "aa"], 1),
        (&["saturated", u, "--max-u", "3", "--max-v", "3"], 1),
        (&["saturated", "--exact", &format!("{d}/fig1-S.fdfa")], 0),
        (&["saturated", "--exact", "--budget", "1", &format!("{d}/ln-3.fdfa")], 3),
        (&["member", u, "--u", "c", "--v", "a"], 2),
        (&["no-such-command"], 2),
        (&["from-nba", u], 2),
    ];
    for (args, expected) in cases {
        let (code, _, _) = fdfa_bin(args, None);
        ensure!(code == expected, "{args:?} exited {code}, expected {expected}");
    }
    let (code, _, err) = fdfa_bin(&["validate", "-"], Some("{ \"kind\": \"fdfa\",\n oops }"));
    ensure!(code == 2 && err.contains("line 2"), "syntax error not located: {err}");
    let (_, _, err) = fdfa_bin(&["from-nba", u], None);
    ensure!(err.contains("determinization") && err.contains("out of scope"), "from-nba message: {err}");
    let (_, out, _) = fdfa_bin(&["size"], Some(&fdfa_bin(&["gen-ln", "3"], None).1));
    ensure!(out.trim() == "(4, 9)", "gen-ln 3 | size printed {out}");
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 Fig. 1 semantics", criterion_1, Duration::from_secs(1)),
        ("2 complement involution and size", criterion_2, Duration::from_secs(10)),
        ("3 union and intersection", criterion_3, Duration::from_secs(30)),
        ("4 decision procedures vs brute force", criterion_4, Duration::from_secs(30)),
        ("5 DBA/DCA/DPA to FDFA", criterion_5, Duration::from_secs(30)),
        ("6 FDFA to NBA", criterion_6, Duration::from_secs(60)),
        ("7 Ln family", criterion_7, Duration::from_secs(60)),
        ("8 normalization lemma", criterion_8, Duration::from_secs(10)),
        ("9 CLI", criterion_9, Duration::from_secs(5)),
    ];
    let mut failed = Vec::new();
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match &result {
            Ok(()) => println!("PASS  criterion {name} ({elapsed:.2?}, limit {limit:?})"),
            Err(why) => {
                println!("FAIL  criterion {name} ({elapsed:.2?}, limit {limit:?}): {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
