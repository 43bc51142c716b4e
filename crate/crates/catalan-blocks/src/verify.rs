//! Exhaustive verification of the named claims at desk scale.
//!
//! Each checker emits one machine-readable report per claim per n. A failed
//! report always carries a counterexample payload; witness lists are capped
//! so a systematic failure stays readable.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::catalan::ballot;
use crate::perm::{enumerate_avoiders, Permutation, PositionSet};
use crate::symfun::{
    bl_level_set, check_pair, is_schur_positive, q_of, restricted_character_image,
    schur_basis_vector, schur_expand, Expansion, PositivityCertificate, Statistic,
};
use crate::tableaux::{rotate_180, syt_enumerate, Shape, SkewShape};

pub const MAX_EQUIDIST_N: usize = 11;
pub const MAX_SCHUR_N: usize = 9;
pub const MAX_CARDINALITIES_N: usize = 10;
pub const MAX_HILBERT_N: usize = 10;
pub const MAX_PAIRS_N: usize = 8;

pub const DEFAULT_EQUIDIST_N: usize = 10;
pub const DEFAULT_SCHUR_N: usize = 8;
pub const DEFAULT_CARDINALITIES_N: usize = 10;
pub const DEFAULT_HILBERT_N: usize = 10;
pub const DEFAULT_PAIRS_N: usize = 7;

/// Most witnesses ever embedded in one counterexample payload.
pub const WITNESS_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum VerifyError {
    #[error("n_max {got} out of range; {command} supports 1..={max}")]
    RangeGuard { command: &'static str, got: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One verified claim at one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub n_range: (usize, usize),
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    fn pass(claim_id: &str, n: usize, elapsed_ms: u64) -> Self {
        VerificationReport {
            claim_id: claim_id.to_string(),
            n_range: (n, n),
            status: Status::Pass,
            counterexample: None,
            elapsed_ms,
        }
    }

    fn fail(claim_id: &str, n: usize, counterexample: serde_json::Value, elapsed_ms: u64) -> Self {
        VerificationReport {
            claim_id: claim_id.to_string(),
            n_range: (n, n),
            status: Status::Fail,
            counterexample: Some(counterexample),
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn ms(t0: Instant) -> u64 {
    t0.elapsed().as_millis() as u64
}

fn pat(s: &str) -> Permutation {
    s.parse().expect("fixed pattern word")
}

fn avoiders321(n: usize) -> impl Iterator<Item = Permutation> {
    enumerate_avoiders(n, &pat("321"))
}

/// (n-1, n-k) with trailing zeros trimmed.
fn two_row(n: usize, k: usize) -> Shape {
    Shape::new([n - 1, n - k]).expect("weakly decreasing pair")
}

type Counter<K> = BTreeMap<K, i64>;

fn bump<K: Ord>(m: &mut Counter<K>, key: K) {
    *m.entry(key).or_insert(0) += 1;
}

fn divergences<K: Ord + Clone>(a: &Counter<K>, b: &Counter<K>) -> Vec<(K, i64, i64)> {
    let mut out = Vec::new();
    for (k, &ca) in a {
        let cb = b.get(k).copied().unwrap_or(0);
        if ca != cb {
            out.push((k.clone(), ca, cb));
        }
    }
    for (k, &cb) in b {
        if !a.contains_key(k) && cb != 0 {
            out.push((k.clone(), 0, cb));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

fn multiset_report<K: Ord + Clone>(
    claim: &str,
    n: usize,
    left: &Counter<K>,
    right: &Counter<K>,
    t0: Instant,
    key_json: impl Fn(&K) -> serde_json::Value,
) -> VerificationReport {
    let divergent = divergences(left, right);
    let elapsed = ms(t0);
    if divergent.is_empty() {
        return VerificationReport::pass(claim, n, elapsed);
    }
    let items: Vec<serde_json::Value> = divergent
        .iter()
        .take(WITNESS_CAP)
        .map(|(k, l, r)| json!({ "key": key_json(k), "left": l, "right": r }))
        .collect();
    let payload = json!({ "divergent": items, "truncated": divergent.len() > WITNESS_CAP });
    VerificationReport::fail(claim, n, payload, elapsed)
}

/// Trivariate equidistribution at one n: the (Ltr, position of n, bl)
/// distribution over the 321-avoiders equals the (Ltr, position of n,
/// n - ldes of inverse) distribution, and likewise with the descent set in
/// place of the left-to-right maxima.
pub fn verify_equidist_at(n: usize) -> Vec<VerificationReport> {
    assert!(n >= 1, "claims are stated for n >= 1");
    let mut reports = Vec::new();

    let t0 = Instant::now();
    let mut left: Counter<(u64, usize, usize)> = BTreeMap::new();
    let mut right: Counter<(u64, usize, usize)> = BTreeMap::new();
    for q in avoiders321(n) {
        let ltr = q.ltr_set().mask();
        let pos = q.position_of(n);
        bump(&mut left, (ltr, pos, q.block_number()));
        bump(&mut right, (ltr, pos, n - q.inverse().ldes()));
    }
    reports.push(multiset_report("thm-1.3", n, &left, &right, t0, |&(mask, pos, v)| {
        json!({ "ltr": PositionSet::from_mask(n, mask).to_vec(), "pos_n": pos, "value": v })
    }));

    let t0 = Instant::now();
    let mut left: Counter<(u64, usize, usize)> = BTreeMap::new();
    let mut right: Counter<(u64, usize, usize)> = BTreeMap::new();
    for q in avoiders321(n) {
        let des = q.des_set().mask();
        let pos = q.position_of(n);
        bump(&mut left, (des, pos, q.block_number()));
        bump(&mut right, (des, pos, n - q.inverse().ldes()));
    }
    reports.push(multiset_report("cor-4.16", n, &left, &right, t0, |&(mask, pos, v)| {
        json!({ "des": PositionSet::from_mask(n.saturating_sub(1), mask).to_vec(), "pos_n": pos, "value": v })
    }));

    reports
}

fn mask_divergences(a: &crate::symfun::QSymVector, b: &crate::symfun::QSymVector) -> Vec<serde_json::Value> {
    let u = a.universe();
    let mut masks: Vec<u64> = a.terms().into_iter().map(|(m, _)| m).collect();
    masks.extend(b.terms().into_iter().map(|(m, _)| m));
    masks.sort_unstable();
    masks.dedup();
    masks
        .into_iter()
        .filter(|&m| a.coeff_mask(m) != b.coeff_mask(m))
        .take(WITNESS_CAP)
        .map(|m| {
            json!({
                "set": PositionSet::from_mask(u, m).to_vec(),
                "left": a.coeff_mask(m),
                "right": b.coeff_mask(m),
            })
        })
        .collect()
}

/// Schur side at one n: Q(Bl_{n,k}) equals the restricted character image
/// (the single-row Schur vector when k = n), expands with nonnegative
/// integer coefficients, and each coefficient matches two independent
/// skew-tableau counts; then the descent-set refinement, comparing every
/// fundamental coefficient against the truncated-descent tableau count.
pub fn verify_schur_at(n: usize) -> Vec<VerificationReport> {
    assert!(n >= 1, "claims are stated for n >= 1");
    let mut reports = Vec::new();

    let t0 = Instant::now();
    let mut failures: Vec<serde_json::Value> = Vec::new();
    for k in 1..=n {
        let perms = bl_level_set(n, k);
        let lhs = q_of(n, perms.iter()).expect("uniform degree");
        let target = if k < n {
            restricted_character_image(&two_row(n, k), n).expect("restriction level fits")
        } else {
            schur_basis_vector(&Shape::new([n]).unwrap()).expect("small shape")
        };
        if lhs != target {
            failures.push(json!({
                "k": k,
                "kind": "restriction-mismatch",
                "divergent": mask_divergences(&lhs, &target),
            }));
            continue;
        }
        let sv = match is_schur_positive(&lhs).expect("degree within limit") {
            PositivityCertificate::Positive(sv) => sv,
            other => {
                failures.push(json!({ "k": k, "kind": "not-positive", "certificate": other.to_json() }));
                continue;
            }
        };
        let mut expected: BTreeMap<Shape, i64> = BTreeMap::new();
        let mut skew_ok = true;
        if k < n {
            let outer = two_row(n, k);
            for m in 1..=n / 2 {
                let inner = Shape::new([n - m, m]).unwrap();
                let (direct, rotated) = match SkewShape::new(outer.clone(), inner.clone()) {
                    Ok(skew) => {
                        let direct = syt_enumerate(&skew).expect("size within guard").len();
                        let rot = rotate_180(&skew, n).expect("two rows inside the box");
                        (direct, syt_enumerate(&rot).expect("size within guard").len())
                    }
                    Err(_) => (0, 0),
                };
                if direct != rotated {
                    failures.push(json!({
                        "k": k,
                        "kind": "rotation-count-mismatch",
                        "shape": inner.parts(),
                        "direct": direct,
                        "rotated": rotated,
                    }));
                    skew_ok = false;
                }
                if direct != 0 {
                    expected.insert(inner, direct as i64);
                }
            }
        } else {
            expected.insert(Shape::new([n]).unwrap(), 1);
        }
        if !skew_ok {
            continue;
        }
        let got: BTreeMap<Shape, i64> = sv
            .iter()
            .map(|(s, c)| (s.clone(), c.numer().to_i64().expect("desk-scale coefficient")))
            .collect();
        if got != expected {
            let shapes: Vec<&Shape> = got.keys().chain(expected.keys()).collect();
            let mut shapes: Vec<&Shape> = shapes;
            shapes.sort();
            shapes.dedup();
            let items: Vec<serde_json::Value> = shapes
                .into_iter()
                .filter(|s| got.get(*s) != expected.get(*s))
                .take(WITNESS_CAP)
                .map(|s| {
                    json!({
                        "shape": s.parts(),
                        "expansion": got.get(s).copied().unwrap_or(0),
                        "skew_count": expected.get(s).copied().unwrap_or(0),
                    })
                })
                .collect();
            failures.push(json!({ "k": k, "kind": "skew-coefficient-mismatch", "divergent": items }));
        }
    }
    let elapsed = ms(t0);
    reports.push(if failures.is_empty() {
        VerificationReport::pass("thm-1.2", n, elapsed)
    } else {
        let truncated = failures.len() > WITNESS_CAP;
        failures.truncate(WITNESS_CAP);
        VerificationReport::fail(
            "thm-1.2",
            n,
            json!({ "failures": failures, "truncated": truncated }),
            elapsed,
        )
    });

    let t0 = Instant::now();
    let mut failures: Vec<serde_json::Value> = Vec::new();
    for k in 1..=n {
        let v = q_of(n, bl_level_set(n, k).iter()).expect("uniform degree");
        let truncate = if n == 1 { 0 } else { (1u64 << (n - 1)) - 1 };
        let mut counts: Counter<u64> = BTreeMap::new();
        for t in syt_enumerate(&SkewShape::straight(two_row(n, k))).expect("size within guard") {
            bump(&mut counts, t.des_set().mask() & truncate);
        }
        for mask in 0..(1u64 << (n - 1)) {
            let l = v.coeff_mask(mask);
            let r = counts.get(&mask).copied().unwrap_or(0);
            if l != r {
                failures.push(json!({
                    "k": k,
                    "set": PositionSet::from_mask(n - 1, mask).to_vec(),
                    "q_coefficient": l,
                    "tableau_count": r,
                }));
            }
        }
    }
    let elapsed = ms(t0);
    reports.push(if failures.is_empty() {
        VerificationReport::pass("cor-5.3", n, elapsed)
    } else {
        let truncated = failures.len() > WITNESS_CAP;
        failures.truncate(WITNESS_CAP);
        VerificationReport::fail(
            "cor-5.3",
            n,
            json!({ "failures": failures, "truncated": truncated }),
            elapsed,
        )
    });

    reports
}

/// Four-way cardinality agreement at one n: enumeration by block number,
/// enumeration by last descent of the inverse, tableau enumeration, and
/// the ballot formula.
pub fn verify_cardinalities_at(n: usize) -> Vec<VerificationReport> {
    assert!(n >= 1, "claims are stated for n >= 1");
    let t0 = Instant::now();
    let mut by_bl = vec![0u64; n + 1];
    let mut by_ldes = vec![0u64; n + 1];
    for q in avoiders321(n) {
        by_bl[q.block_number()] += 1;
        by_ldes[n - q.inverse().ldes()] += 1;
    }
    let mut bad_rows: Vec<serde_json::Value> = Vec::new();
    for k in 1..=n {
        let syt = syt_enumerate(&SkewShape::straight(two_row(n, k)))
            .expect("size within guard")
            .len() as u64;
        let b = ballot(n, k)
            .expect("k <= n")
            .to_u64()
            .expect("desk-scale count");
        if by_bl[k] != b || by_ldes[k] != b || syt != b {
            bad_rows.push(json!({
                "k": k,
                "by_bl": by_bl[k],
                "by_ldes_inverse": by_ldes[k],
                "syt": syt,
                "ballot": b,
            }));
        }
    }
    let elapsed = ms(t0);
    let report = if bad_rows.is_empty() {
        VerificationReport::pass("cor-3.7", n, elapsed)
    } else {
        let truncated = bad_rows.len() > WITNESS_CAP;
        bad_rows.truncate(WITNESS_CAP);
        VerificationReport::fail(
            "cor-3.7",
            n,
            json!({ "rows": bad_rows, "truncated": truncated }),
            elapsed,
        )
    };
    vec![report]
}

/// Hilbert-series coefficients at one n: the q^{n-bl} distribution equals
/// the ldes distribution over the 321-avoiders, and the coefficient of
/// q^{n-k} is the ballot number C_{n,k}.
pub fn verify_hilbert_at(n: usize) -> Vec<VerificationReport> {
    assert!(n >= 1, "claims are stated for n >= 1");
    let t0 = Instant::now();
    let mut left = vec![0u64; n];
    let mut right = vec![0u64; n];
    for q in avoiders321(n) {
        left[n - q.block_number()] += 1;
        right[q.ldes()] += 1;
    }
    let mut problems: Vec<serde_json::Value> = Vec::new();
    if left != right {
        problems.push(json!({ "kind": "distribution-mismatch", "left": left, "right": right }));
    }
    for k in 1..=n {
        let b = ballot(n, k)
            .expect("k <= n")
            .to_u64()
            .expect("desk-scale count");
        if left[n - k] != b {
            problems.push(json!({
                "kind": "ballot-mismatch",
                "k": k,
                "coefficient": left[n - k],
                "ballot": b,
            }));
        }
    }
    let elapsed = ms(t0);
    let report = if problems.is_empty() {
        VerificationReport::pass("prop-6.1", n, elapsed)
    } else {
        let truncated = problems.len() > WITNESS_CAP;
        problems.truncate(WITNESS_CAP);
        VerificationReport::fail(
            "prop-6.1",
            n,
            json!({ "problems": problems, "truncated": truncated }),
            elapsed,
        )
    };
    vec![report]
}

/// Pattern-statistic pair positivity at one n, plus the deliberate
/// negative control at n = 3 proving the checker can reject.
pub fn verify_pairs_at(n: usize) -> Vec<VerificationReport> {
    assert!(n >= 1, "claims are stated for n >= 1");
    let mut reports = Vec::new();
    let cases: [(&str, Vec<Permutation>, Statistic); 3] = [
        ("pair-321-bl", vec![pat("321")], Statistic::BlockNumber),
        ("pair-e3-ides", vec![pat("123")], Statistic::Ides),
        ("pair-132-312-imaj", vec![pat("132"), pat("312")], Statistic::Imaj),
    ];
    for (claim, patterns, stat) in cases {
        let t0 = Instant::now();
        let pair = check_pair(&patterns, stat, n).expect("n within pair bound");
        let elapsed = ms(t0);
        reports.push(if pair.all_positive() {
            VerificationReport::pass(claim, n, elapsed)
        } else {
            let bad: Vec<serde_json::Value> = pair
                .levels
                .iter()
                .filter(|l| !l.certificate.is_positive())
                .take(WITNESS_CAP)
                .map(|l| {
                    json!({
                        "value": l.value,
                        "count": l.count,
                        "certificate": l.certificate.to_json(),
                    })
                })
                .collect();
            VerificationReport::fail(claim, n, json!({ "levels": bad }), elapsed)
        });
    }
    if n == 3 {
        let t0 = Instant::now();
        let control = q_of(3, [&pat("213")]).expect("degree matches");
        let report = match schur_expand(&control).expect("degree within limit") {
            Expansion::NotSymmetric(_) => {
                VerificationReport::pass("pair-negative-control", 3, ms(t0))
            }
            Expansion::Symmetric(sv) => VerificationReport::fail(
                "pair-negative-control",
                3,
                json!({ "unexpected_expansion": sv.to_json() }),
                ms(t0),
            ),
        };
        reports.push(report);
    }
    reports
}

fn guard(command: &'static str, n_max: usize, max: usize) -> Result<(), VerifyError> {
    if n_max < 1 || n_max > max {
        return Err(VerifyError::RangeGuard { command, got: n_max, max });
    }
    Ok(())
}

pub fn verify_equidist(n_max: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    guard("equidist", n_max, MAX_EQUIDIST_N)?;
    Ok((1..=n_max).flat_map(verify_equidist_at).collect())
}

pub fn verify_schur(n_max: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    guard("schur", n_max, MAX_SCHUR_N)?;
    Ok((1..=n_max).flat_map(verify_schur_at).collect())
}

pub fn verify_cardinalities(n_max: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    guard("cardinalities", n_max, MAX_CARDINALITIES_N)?;
    Ok((1..=n_max).flat_map(verify_cardinalities_at).collect())
}

pub fn verify_hilbert(n_max: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    guard("hilbert", n_max, MAX_HILBERT_N)?;
    Ok((1..=n_max).flat_map(verify_hilbert_at).collect())
}

pub fn verify_pairs(n_max: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    guard("pairs", n_max, MAX_PAIRS_N)?;
    Ok((1..=n_max).flat_map(verify_pairs_at).collect())
}
