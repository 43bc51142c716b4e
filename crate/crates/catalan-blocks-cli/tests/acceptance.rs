//! The nine acceptance checks, one test per criterion. Each prints a
//! single PASS line with its measured numbers and enforces its runtime
//! budget (debug profile).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use catalan_blocks::bijection::{f_inverse, f_map, trace};
use catalan_blocks::catalan::{ballot, catalan, gf_coefficients};
use catalan_blocks::perm::{enumerate_avoiders, Permutation};
use catalan_blocks::symfun::{
    check_pair, ldes_inverse_level_set, q_of, schur_expand, Expansion, Statistic,
};
use catalan_blocks::tableaux::{rsk, rsk_inverse};
use catalan_blocks::verify::{
    verify_cardinalities, verify_equidist, verify_hilbert, verify_schur,
};

fn p(s: &str) -> Permutation {
    s.parse().expect("valid word")
}

fn pat321() -> Permutation {
    p("321")
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(n: usize, prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::from_word(prefix.iter().copied()).unwrap());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(n, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

#[test]
fn criterion_1_worked_example() {
    let input = p("31254786");
    let expected = p("41263785");

    let t = Instant::now();
    let image = f_map(&input).unwrap();
    let map_time = t.elapsed();
    assert_eq!(image, expected);

    let t = Instant::now();
    let steps = trace(&input).unwrap();
    let trace_time = t.elapsed();
    let cases: Vec<String> = steps.iter().take(7).map(|s| s.case.to_string()).collect();
    assert_eq!(cases, ["B", "C", "A", "C", "A", "C", "C"]);
    let cycles: Vec<Option<Vec<usize>>> = steps.iter().take(7).map(|s| s.cycle.clone()).collect();
    assert_eq!(
        cycles,
        [
            Some(vec![4, 5]),
            Some(vec![4, 5, 6, 7]),
            None,
            Some(vec![3, 4, 5]),
            None,
            Some(vec![2, 3]),
            Some(vec![1, 2]),
        ]
    );

    let t = Instant::now();
    let back = f_inverse(&expected).unwrap();
    let inverse_time = t.elapsed();
    assert_eq!(back, input);

    let budget = Duration::from_millis(1);
    assert!(
        map_time < budget && trace_time < budget && inverse_time < budget,
        "worked example exceeded 1 ms: map {map_time:?}, trace {trace_time:?}, inverse {inverse_time:?}"
    );

    // The CLI reproduces the same bytes (spawn time not part of the budget).
    let out = Command::new(env!("CARGO_BIN_EXE_catalan-blocks"))
        .args(["bijection", "map", "31254786"])
        .output()
        .expect("binary runs");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "41263785\n");
    let out = Command::new(env!("CARGO_BIN_EXE_catalan-blocks"))
        .args(["bijection", "inverse", "41263785"])
        .output()
        .expect("binary runs");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "31254786\n");

    println!(
        "criterion 1 (worked example map/trace/inverse): PASS image={} cases=B,C,A,C,A,C,C map_us={} trace_us={} inverse_us={}",
        image.to_compact_string(),
        map_time.as_micros(),
        trace_time.as_micros(),
        inverse_time.as_micros()
    );
}

#[test]
fn criterion_2_bijection_exhaustive_to_n9() {
    let t = Instant::now();
    let mut total = 0usize;
    for n in 1..=9usize {
        let avoiders: Vec<Permutation> = enumerate_avoiders(n, &pat321()).collect();
        let mut images = BTreeSet::new();
        for q in &avoiders {
            let img = f_map(q).unwrap();
            assert!(img.avoids(&pat321()), "image leaves the class at {q}");
            assert_eq!(img.ltr_set(), q.ltr_set(), "Ltr not preserved at {q}");
            assert_eq!(
                img.inverse().ldes(),
                n - q.block_number(),
                "block number not mapped to n - ldes at {q}"
            );
            assert_eq!(f_inverse(&img).unwrap(), *q, "inverse fails at {q}");
            images.insert(img.to_vec());
        }
        assert_eq!(images.len(), avoiders.len(), "not injective at n={n}");
        total += avoiders.len();
    }
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "criterion 2 (bijection exhaustive n<=9): PASS permutations={total} elapsed_ms={}",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_3_equidistribution_to_n10() {
    let t = Instant::now();
    let reports = verify_equidist(10).unwrap();
    let elapsed = t.elapsed();
    assert_eq!(reports.len(), 20);
    for r in &reports {
        assert!(r.passed(), "{} failed at {:?}: {:?}", r.claim_id, r.n_range, r.counterexample);
    }
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 3 (trivariate equidistribution n<=10): PASS reports={} elapsed_ms={}",
        reports.len(),
        elapsed.as_millis()
    );
}

#[test]
fn criterion_4_cardinality_triangle_to_n10() {
    let t = Instant::now();
    let reports = verify_cardinalities(10).unwrap();
    let elapsed = t.elapsed();
    assert_eq!(reports.len(), 10);
    for r in &reports {
        assert!(r.passed(), "cardinalities failed at {:?}: {:?}", r.n_range, r.counterexample);
    }
    let row4: Vec<String> = (1..=4).map(|k| ballot(4, k).unwrap().to_string()).collect();
    assert_eq!(row4, ["5", "5", "3", "1"]);
    assert_eq!(ballot(10, 1).unwrap().to_string(), "4862");
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 4 (cardinality four-way n<=10): PASS row4=5,5,3,1 c10_1=4862 elapsed_ms={}",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_5_restriction_identity_to_n8() {
    let t = Instant::now();
    let reports = verify_schur(8).unwrap();
    assert_eq!(reports.len(), 16);
    for r in &reports {
        assert!(r.passed(), "{} failed at {:?}: {:?}", r.claim_id, r.n_range, r.counterexample);
    }
    let l74 = ldes_inverse_level_set(7, 4);
    let coeff = match schur_expand(&q_of(7, l74.iter()).unwrap()).unwrap() {
        Expansion::Symmetric(sv) => sv
            .to_json()["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .find(|e| e["shape"] == serde_json::json!([5, 2]))
            .map(|e| e["c"].as_str().unwrap().to_string()),
        Expansion::NotSymmetric(w) => panic!("level set not symmetric: {w:?}"),
    };
    assert_eq!(coeff.as_deref(), Some("3"));
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "criterion 5 (restriction identity n<=8): PASS reports={} coeff_5_2=3 elapsed_ms={}",
        reports.len(),
        elapsed.as_millis()
    );
}

#[test]
fn criterion_6_rsk_exhaustive_over_s7() {
    let t = Instant::now();
    let perms = all_perms(7);
    assert_eq!(perms.len(), 5040);
    for q in &perms {
        let (pt, qt) = rsk(q);
        assert_eq!(pt.des_set(), q.inverse().des_set(), "insertion descents at {q}");
        assert_eq!(qt.des_set(), q.des_set(), "recording descents at {q}");
        assert_eq!(rsk_inverse(&pt, &qt).unwrap(), *q, "roundtrip at {q}");
        assert_eq!(pt.height() < 3, q.avoids(&pat321()), "height criterion at {q}");
    }
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!(
        "criterion 6 (RSK exhaustive over S_7): PASS permutations=5040 elapsed_ms={}",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_7_hilbert_series_to_n10() {
    let t = Instant::now();
    let reports = verify_hilbert(10).unwrap();
    let elapsed = t.elapsed();
    assert_eq!(reports.len(), 10);
    for r in &reports {
        assert!(r.passed(), "hilbert failed at {:?}: {:?}", r.n_range, r.counterexample);
    }
    let mut coeffs = vec![0u64; 3];
    for q in enumerate_avoiders(3, &pat321()) {
        coeffs[3 - q.block_number()] += 1;
    }
    assert_eq!(coeffs, [1, 2, 2]);
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 7 (Hilbert coefficients n<=10): PASS n3=1+2q+2q^2 elapsed_ms={}",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_8_pair_positivity() {
    let t = Instant::now();
    let mut levels = 0usize;
    for n in 1..=8 {
        let r = check_pair(&[p("321")], Statistic::BlockNumber, n).unwrap();
        assert!(r.all_positive(), "({{321}}, bl) fails at n={n}");
        levels += r.levels.len();
    }
    for n in 1..=7 {
        let r = check_pair(&[p("123")], Statistic::Ides, n).unwrap();
        assert!(r.all_positive(), "(e_3, ides) fails at n={n}");
        levels += r.levels.len();
    }
    for n in 1..=7 {
        let r = check_pair(&[p("132"), p("312")], Statistic::Imaj, n).unwrap();
        assert!(r.all_positive(), "({{132,312}}, imaj) fails at n={n}");
        levels += r.levels.len();
    }
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "criterion 8 (pair positivity): PASS certified_levels={levels} elapsed_ms={}",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_9_generating_function_identities() {
    // Arithmetic part, under its own budget.
    let t = Instant::now();
    for k in 0..=10usize {
        let coeffs = gf_coefficients(k, 10);
        for n in 0..k.min(11) {
            assert_eq!(coeffs[n].to_string(), "0", "k={k} n={n}");
        }
        for n in k..=10 {
            assert_eq!(coeffs[n], ballot(n, k).unwrap(), "k={k} n={n}");
        }
    }
    let cs: Vec<_> = (0..=21usize).map(catalan).collect();
    for n in 0..=20usize {
        let mut acc = &cs[0] * &cs[n];
        for i in 1..=n {
            acc += &cs[i] * &cs[n - i];
        }
        assert_eq!(acc, cs[n + 1], "convolution at n={n}");
    }
    let arithmetic = t.elapsed();
    assert!(arithmetic < Duration::from_secs(1), "arithmetic took {arithmetic:?}");

    // Enumerated block counts agree with the triangle (outside the budget).
    for n in 1..=10usize {
        let mut counts = vec![0u64; n + 1];
        for q in enumerate_avoiders(n, &pat321()) {
            counts[q.block_number()] += 1;
        }
        for k in 1..=n {
            assert_eq!(counts[k].to_string(), ballot(n, k).unwrap().to_string(), "n={n} k={k}");
        }
    }
    println!(
        "criterion 9 (generating-function identities): PASS convolution_to=20 arithmetic_ms={}",
        arithmetic.as_millis()
    );
}
