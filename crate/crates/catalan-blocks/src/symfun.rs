//! Degree-homogeneous quasi-symmetric functions in the fundamental basis,
//! Schur expansion with exact rational arithmetic, positivity certificates,
//! Frobenius images of restricted characters, and the closed registry of
//! pattern-statistic pairs.
//!
//! A vector of degree n is a map from subsets of {1, ..., n-1} (descent
//! sets, encoded as masks) to integers. Nothing here is ever evaluated as a
//! power series; the basis elements are purely formal.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::perm::{enumerate_avoiding, PermError, Permutation, PositionSet};
use crate::tableaux::{syt_enumerate, Shape, SkewShape, TableauxError};

/// Degrees up to this bound store coefficients densely by mask and may be
/// Schur-expanded; larger degrees fall back to sparse storage.
pub const DENSE_LIMIT: usize = 16;

/// Largest n accepted by `check_pair`.
pub const MAX_PAIR_N: usize = 9;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum SymfunError {
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("degree {0} exceeds the expansion limit of {DENSE_LIMIT}")]
    DegreeTooLarge(usize),
    #[error("restriction level {m} exceeds the shape size {size}")]
    BadRestriction { m: usize, size: usize },
    #[error("pair checks support n <= {MAX_PAIR_N}, got {0}")]
    PairTooLarge(usize),
    #[error("unknown statistic {0:?}; expected bl, ldes_inverse, ides or imaj")]
    UnknownStatistic(String),
    #[error(transparent)]
    Tableaux(#[from] TableauxError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Coeffs {
    Dense(Vec<i64>),
    Sparse(BTreeMap<u64, i64>),
}

/// A degree-n quasi-symmetric function in the fundamental basis: the
/// coefficient at mask D is the multiplicity of F_{n,D}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSymVector {
    degree: usize,
    coeffs: Coeffs,
}

impl QSymVector {
    pub fn new(degree: usize) -> Self {
        let coeffs = if degree <= DENSE_LIMIT {
            Coeffs::Dense(vec![0; 1 << degree.saturating_sub(1)])
        } else {
            Coeffs::Sparse(BTreeMap::new())
        };
        QSymVector { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Size of the subset universe, degree - 1 (0 for degree 0).
    pub fn universe(&self) -> usize {
        self.degree.saturating_sub(1)
    }

    pub fn coeff_mask(&self, mask: u64) -> i64 {
        match &self.coeffs {
            Coeffs::Dense(v) => v[mask as usize],
            Coeffs::Sparse(m) => m.get(&mask).copied().unwrap_or(0),
        }
    }

    pub fn coeff(&self, set: &PositionSet) -> i64 {
        assert_eq!(set.universe(), self.universe(), "subset universe mismatch");
        self.coeff_mask(set.mask())
    }

    pub fn add_mask(&mut self, mask: u64, delta: i64) {
        debug_assert_eq!(mask >> self.universe(), 0, "mask outside the universe");
        match &mut self.coeffs {
            Coeffs::Dense(v) => v[mask as usize] += delta,
            Coeffs::Sparse(m) => {
                let slot = m.entry(mask).or_insert(0);
                *slot += delta;
                if *slot == 0 {
                    m.remove(&mask);
                }
            }
        }
    }

    pub fn add_term(&mut self, set: &PositionSet, delta: i64) -> Result<(), SymfunError> {
        if set.universe() != self.universe() {
            return Err(SymfunError::DegreeMismatch {
                expected: self.degree,
                got: set.universe() + 1,
            });
        }
        self.add_mask(set.mask(), delta);
        Ok(())
    }

    /// Nonzero coefficients, ascending by mask.
    pub fn terms(&self) -> Vec<(u64, i64)> {
        match &self.coeffs {
            Coeffs::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(mask, &c)| (mask as u64, c))
                .collect(),
            Coeffs::Sparse(m) => m.iter().map(|(&mask, &c)| (mask, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Dense(v) => v.iter().all(|&c| c == 0),
            Coeffs::Sparse(m) => m.is_empty(),
        }
    }

    /// Componentwise sum; degrees must agree.
    pub fn plus(&self, other: &QSymVector) -> Result<QSymVector, SymfunError> {
        if self.degree != other.degree {
            return Err(SymfunError::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (mask, c) in other.terms() {
            out.add_mask(mask, c);
        }
        Ok(out)
    }

    /// `{"degree": n, "coeffs": [{"set": [...], "c": int}, ...]}`, entries
    /// sorted by set mask.
    pub fn to_json(&self) -> serde_json::Value {
        let u = self.universe();
        let coeffs: Vec<serde_json::Value> = self
            .terms()
            .into_iter()
            .map(|(mask, c)| json!({ "set": PositionSet::from_mask(u, mask).to_vec(), "c": c }))
            .collect();
        json!({ "degree": self.degree, "coeffs": coeffs })
    }
}

/// Q(A) = sum of F_{n, Des(p)} over the multiset A.
pub fn q_of<'a, I>(degree: usize, perms: I) -> Result<QSymVector, SymfunError>
where
    I: IntoIterator<Item = &'a Permutation>,
{
    let mut out = QSymVector::new(degree);
    for p in perms {
        if p.len() != degree {
            return Err(SymfunError::DegreeMismatch { expected: degree, got: p.len() });
        }
        out.add_mask(p.des_set().mask(), 1);
    }
    Ok(out)
}

/// s_lambda in the fundamental basis: the coefficient of D counts the
/// standard tableaux of the shape with descent set D.
pub fn schur_basis_vector(shape: &Shape) -> Result<QSymVector, SymfunError> {
    let mut out = QSymVector::new(shape.size());
    for t in syt_enumerate(&SkewShape::straight(shape.clone()))? {
        out.add_mask(t.des_set().mask(), 1);
    }
    Ok(out)
}

/// ch of the restriction of the irreducible character of `shape` down to
/// S_m: the sum of F_{m, Des(T) truncated to [m-1]} over SYT of the shape.
pub fn restricted_character_image(shape: &Shape, m: usize) -> Result<QSymVector, SymfunError> {
    let size = shape.size();
    if m > size {
        return Err(SymfunError::BadRestriction { m, size });
    }
    let truncate = if m == 0 { 0 } else { (1u64 << (m - 1)) - 1 };
    let mut out = QSymVector::new(m);
    for t in syt_enumerate(&SkewShape::straight(shape.clone()))? {
        out.add_mask(t.des_set().mask() & truncate, 1);
    }
    Ok(out)
}

/// A vector in the Schur basis, exact rational coefficients, zeros absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurVector {
    degree: usize,
    coeffs: BTreeMap<Shape, BigRational>,
}

impl SchurVector {
    fn from_coeffs(degree: usize, entries: Vec<(Shape, BigRational)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (shape, c) in entries {
            debug_assert_eq!(shape.size(), degree, "shape is not a partition of the degree");
            if !c.is_zero() {
                coeffs.insert(shape, c);
            }
        }
        SchurVector { degree, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, shape: &Shape) -> BigRational {
        self.coeffs.get(shape).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero coefficients in reverse-lexicographic shape order, (n) first.
    pub fn iter(&self) -> impl Iterator<Item = (&Shape, &BigRational)> {
        self.coeffs.iter().rev()
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// `{"degree": n, "coeffs": [{"shape": [...], "c": "p/q"}, ...]}` in
    /// reverse-lexicographic shape order; integral values print without /q.
    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<serde_json::Value> = self
            .iter()
            .map(|(shape, c)| json!({ "shape": shape.parts(), "c": rational_string(c) }))
            .collect();
        json!({ "degree": self.degree, "coeffs": coeffs })
    }
}

fn rational_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Two descent sets whose induced monomial coefficients disagree although
/// the underlying compositions are rearrangements of each other; no
/// symmetric function can do that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotSymmetricWitness {
    pub degree: usize,
    pub set_a: PositionSet,
    pub set_b: PositionSet,
    pub coeff_a: i64,
    pub coeff_b: i64,
}

impl NotSymmetricWitness {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "set_a": self.set_a.to_vec(),
            "set_b": self.set_b.to_vec(),
            "coeff_a": self.coeff_a,
            "coeff_b": self.coeff_b,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expansion {
    Symmetric(SchurVector),
    NotSymmetric(NotSymmetricWitness),
}

/// All partitions of n in reverse-lexicographic order: (n) first,
/// (1, ..., 1) last.
pub fn partitions_of(n: usize) -> Vec<Shape> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Shape>) {
        if remaining == 0 {
            out.push(Shape::new(prefix.iter().copied()).unwrap());
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// The composition of n cut at the positions of `mask`, sorted into a
/// partition; masks in the same class correspond to the same monomial
/// symmetric function.
fn partition_key(n: usize, mask: u64) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut prev = 0usize;
    for i in 1..n {
        if mask >> (i - 1) & 1 == 1 {
            parts.push(i - prev);
            prev = i;
        }
    }
    if n > 0 {
        parts.push(n - prev);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Symmetry test via the monomial basis: expanding F_D = sum of M_E over
/// E containing D, the vector is symmetric iff the M-coefficient map is
/// constant on rearrangement classes of compositions. Returns the first
/// violating pair, comparing each mask against the smallest one in its
/// class, in increasing mask order.
fn symmetry_witness(v: &QSymVector) -> Option<NotSymmetricWitness> {
    let n = v.degree();
    let u = v.universe();
    let size = 1usize << u;
    let mut m: Vec<i64> = (0..size as u64).map(|mask| v.coeff_mask(mask)).collect();
    for b in 0..u {
        for mask in 0..size {
            if mask >> b & 1 == 1 {
                m[mask] += m[mask ^ (1 << b)];
            }
        }
    }
    let mut first: BTreeMap<Vec<usize>, (u64, i64)> = BTreeMap::new();
    for mask in 0..size as u64 {
        let key = partition_key(n, mask);
        match first.get(&key) {
            None => {
                first.insert(key, (mask, m[mask as usize]));
            }
            Some(&(mask0, c0)) => {
                if m[mask as usize] != c0 {
                    return Some(NotSymmetricWitness {
                        degree: n,
                        set_a: PositionSet::from_mask(u, mask0),
                        set_b: PositionSet::from_mask(u, mask),
                        coeff_a: c0,
                        coeff_b: m[mask as usize],
                    });
                }
            }
        }
    }
    None
}

/// Expand `v` in the Schur basis, or report why it is not symmetric.
///
/// After the symmetry pre-check the vector provably lies in the span of
/// the Schur basis vectors, so the Gauss-Jordan elimination below (pivot
/// rows in increasing mask order, columns in reverse-lexicographic
/// partition order) always completes; the remaining equations are still
/// scanned as a zero-residual check.
pub fn schur_expand(v: &QSymVector) -> Result<Expansion, SymfunError> {
    let n = v.degree();
    if n > DENSE_LIMIT {
        return Err(SymfunError::DegreeTooLarge(n));
    }
    if let Some(w) = symmetry_witness(v) {
        return Ok(Expansion::NotSymmetric(w));
    }
    let shapes = partitions_of(n);
    let columns: Vec<QSymVector> =
        shapes.iter().map(schur_basis_vector).collect::<Result<_, _>>()?;
    let p = shapes.len();
    let size = 1u64 << v.universe();

    // Fully reduced pivot rows: (pivot column, row, rhs).
    let mut pivots: Vec<(usize, Vec<BigRational>, BigRational)> = Vec::new();
    for mask in 0..size {
        let mut row: Vec<BigRational> = columns
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(c.coeff_mask(mask))))
            .collect();
        let mut rhs = BigRational::from_integer(BigInt::from(v.coeff_mask(mask)));
        for (pc, prow, prhs) in &pivots {
            if !row[*pc].is_zero() {
                let f = row[*pc].clone();
                for j in 0..p {
                    if !prow[j].is_zero() {
                        row[j] -= &prow[j] * &f;
                    }
                }
                rhs -= prhs * &f;
            }
        }
        match row.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                let lead = row[pc].clone();
                for x in row.iter_mut() {
                    *x /= &lead;
                }
                rhs /= &lead;
                for (_, orow, orhs) in pivots.iter_mut() {
                    if !orow[pc].is_zero() {
                        let f = orow[pc].clone();
                        for j in 0..p {
                            if !row[j].is_zero() {
                                orow[j] -= &row[j] * &f;
                            }
                        }
                        *orhs -= &rhs * &f;
                    }
                }
                pivots.push((pc, row, rhs));
            }
            None => {
                // Residual equation; must be consistent for symmetric input.
                assert!(
                    rhs.is_zero(),
                    "nonzero residual in the Schur system for a symmetric vector"
                );
            }
        }
    }
    assert_eq!(pivots.len(), p, "Schur basis vectors must be linearly independent");

    let mut entries = Vec::with_capacity(p);
    for (pc, _, rhs) in pivots {
        entries.push((shapes[pc].clone(), rhs));
    }
    Ok(Expansion::Symmetric(SchurVector::from_coeffs(n, entries)))
}

/// Outcome of a positivity test: the expansion itself when every
/// coefficient is a nonnegative integer, otherwise the obstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositivityCertificate {
    Positive(SchurVector),
    BadCoefficient { shape: Shape, coeff: BigRational },
    NotSymmetric(NotSymmetricWitness),
}

impl PositivityCertificate {
    pub fn is_positive(&self) -> bool {
        matches!(self, PositivityCertificate::Positive(_))
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            PositivityCertificate::Positive(sv) => {
                json!({ "positive": true, "schur": sv.to_json() })
            }
            PositivityCertificate::BadCoefficient { shape, coeff } => json!({
                "positive": false,
                "shape": shape.parts(),
                "coeff": rational_string(coeff),
            }),
            PositivityCertificate::NotSymmetric(w) => {
                json!({ "positive": false, "not_symmetric": w.to_json() })
            }
        }
    }
}

/// Schur positivity with certificate: expansion exists and every
/// coefficient is a nonnegative integer.
pub fn is_schur_positive(v: &QSymVector) -> Result<PositivityCertificate, SymfunError> {
    match schur_expand(v)? {
        Expansion::NotSymmetric(w) => Ok(PositivityCertificate::NotSymmetric(w)),
        Expansion::Symmetric(sv) => {
            for (shape, coeff) in sv.iter() {
                if coeff.is_negative() || !coeff.is_integer() {
                    return Ok(PositivityCertificate::BadCoefficient {
                        shape: shape.clone(),
                        coeff: coeff.clone(),
                    });
                }
            }
            Ok(PositivityCertificate::Positive(sv))
        }
    }
}

/// The closed statistic registry for pattern-statistic pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    BlockNumber,
    LdesInverse,
    Ides,
    Imaj,
}

impl Statistic {
    pub fn eval(&self, p: &Permutation) -> usize {
        match self {
            Statistic::BlockNumber => p.block_number(),
            Statistic::LdesInverse => p.inverse().ldes(),
            Statistic::Ides => p.ides(),
            Statistic::Imaj => p.imaj(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Statistic::BlockNumber => "bl",
            Statistic::LdesInverse => "ldes_inverse",
            Statistic::Ides => "ides",
            Statistic::Imaj => "imaj",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = SymfunError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bl" => Ok(Statistic::BlockNumber),
            "ldes_inverse" => Ok(Statistic::LdesInverse),
            "ides" => Ok(Statistic::Ides),
            "imaj" => Ok(Statistic::Imaj),
            other => Err(SymfunError::UnknownStatistic(other.to_string())),
        }
    }
}

/// Positivity of one level set of a statistic over a pattern class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelReport {
    pub value: usize,
    pub count: usize,
    pub certificate: PositivityCertificate,
}

/// check_pair output: one report per attained statistic value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub patterns: Vec<Permutation>,
    pub statistic: Statistic,
    pub n: usize,
    pub levels: Vec<LevelReport>,
}

impl PairReport {
    pub fn all_positive(&self) -> bool {
        self.levels.iter().all(|l| l.certificate.is_positive())
    }
}

/// For each value of `stat` over the avoiders of `patterns` in S_n,
/// certify Schur positivity of the level set.
pub fn check_pair(
    patterns: &[Permutation],
    stat: Statistic,
    n: usize,
) -> Result<PairReport, SymfunError> {
    if n > MAX_PAIR_N {
        return Err(SymfunError::PairTooLarge(n));
    }
    let mut levels: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
    for q in enumerate_avoiding(n, patterns) {
        levels.entry(stat.eval(&q)).or_default().push(q);
    }
    let mut reports = Vec::with_capacity(levels.len());
    for (value, perms) in levels {
        let v = q_of(n, perms.iter())?;
        let certificate = is_schur_positive(&v)?;
        reports.push(LevelReport { value, count: perms.len(), certificate });
    }
    Ok(PairReport { patterns: patterns.to_vec(), statistic: stat, n, levels: reports })
}

/// Bl_{n,k}: the 321-avoiders of S_n with block number k, in
/// lexicographic order.
pub fn bl_level_set(n: usize, k: usize) -> Vec<Permutation> {
    let pat = Permutation::from_word([3, 2, 1]).unwrap();
    crate::perm::enumerate_avoiders(n, &pat)
        .filter(|q| q.block_number() == k)
        .collect()
}

/// L_{n,k}: the 321-avoiders of S_n whose inverse has last descent k, in
/// lexicographic order.
pub fn ldes_inverse_level_set(n: usize, k: usize) -> Vec<Permutation> {
    let pat = Permutation::from_word([3, 2, 1]).unwrap();
    crate::perm::enumerate_avoiders(n, &pat)
        .filter(|q| q.inverse().ldes() == k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    use crate::catalan::ballot;
    use crate::tableaux::{rsk, StandardTableau};

    fn p(s: &str) -> Permutation {
        s.parse().expect("valid word")
    }

    fn sh(s: &str) -> Shape {
        s.parse().expect("valid shape")
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

    fn expand_ok(v: &QSymVector) -> SchurVector {
        match schur_expand(v).unwrap() {
            Expansion::Symmetric(sv) => sv,
            Expansion::NotSymmetric(w) => panic!("unexpected asymmetry: {w:?}"),
        }
    }

    fn int(c: &BigRational) -> i64 {
        assert!(c.is_integer(), "non-integer coefficient {c}");
        c.numer().to_i64().unwrap()
    }

    #[test]
    fn q_of_singletons_and_identity() {
        for n in 1..=7 {
            let id = Permutation::identity(n);
            let v = q_of(n, [&id]).unwrap();
            assert_eq!(v.coeff_mask(0), 1);
            assert_eq!(v.terms().len(), 1);
        }
        let v = q_of(4, [&p("2413")]).unwrap();
        assert_eq!(v.coeff(&p("2413").des_set()), 1);
        assert_eq!(v.terms().len(), 1);
    }

    #[test]
    fn q_of_rejects_mixed_sizes() {
        let a = p("12");
        let b = p("123");
        assert_eq!(
            q_of(2, [&a, &b]),
            Err(SymfunError::DegreeMismatch { expected: 2, got: 3 })
        );
    }

    #[test]
    fn q_of_is_linear_on_disjoint_unions() {
        let a = vec![p("2413"), p("1234"), p("2413")];
        let b = vec![p("4321"), p("2413")];
        let both: Vec<&Permutation> = a.iter().chain(b.iter()).collect();
        let va = q_of(4, a.iter()).unwrap();
        let vb = q_of(4, b.iter()).unwrap();
        assert_eq!(va.plus(&vb).unwrap(), q_of(4, both.into_iter()).unwrap());
        assert_eq!(va.coeff(&p("2413").des_set()), 2);
    }

    #[test]
    fn add_term_checks_the_universe() {
        let mut v = QSymVector::new(3);
        let ok = PositionSet::from_positions(2, [1]);
        v.add_term(&ok, 5).unwrap();
        assert_eq!(v.coeff(&ok), 5);
        let wrong = PositionSet::from_positions(3, [1]);
        assert!(v.add_term(&wrong, 1).is_err());
    }

    #[test]
    fn schur_basis_small_shapes() {
        let row = schur_basis_vector(&sh("(4)")).unwrap();
        assert_eq!(row.terms(), vec![(0, 1)]);
        let col = schur_basis_vector(&sh("(1,1)")).unwrap();
        assert_eq!(col.terms(), vec![(1, 1)]); // mask 1 = {1}
        for n in 2..=8usize {
            for k in 1..=n {
                let s = Shape::new([n - 1, n - k]).unwrap();
                let v = schur_basis_vector(&s).unwrap();
                let mass: i64 = v.terms().into_iter().map(|(_, c)| c).sum();
                assert_eq!(
                    num_bigint::BigUint::from(mass as u64),
                    ballot(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn partitions_are_listed_in_reverse_lex_order() {
        let parts: Vec<String> = partitions_of(4).iter().map(|s| s.to_string()).collect();
        assert_eq!(parts, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
        assert_eq!(partitions_of(0), vec![Shape::empty()]);
        assert_eq!(partitions_of(9).len(), 30);
    }

    #[test]
    fn expanding_a_basis_vector_gives_a_unit_vector() {
        for n in 0..=7 {
            for shape in partitions_of(n) {
                let sv = expand_ok(&schur_basis_vector(&shape).unwrap());
                assert_eq!(sv.support_size(), 1, "shape {shape}");
                assert_eq!(sv.coeff(&shape), BigRational::one(), "shape {shape}");
            }
        }
    }

    #[test]
    fn basis_sum_expands_to_all_ones_at_degree_nine() {
        // One full-rank solve at the largest degree the invariants name.
        let mut sum = QSymVector::new(9);
        for shape in partitions_of(9) {
            sum = sum.plus(&schur_basis_vector(&shape).unwrap()).unwrap();
        }
        let sv = expand_ok(&sum);
        assert_eq!(sv.support_size(), 30);
        assert!(sv.iter().all(|(_, c)| c == &BigRational::one()));
    }

    #[test]
    fn example_coefficient_of_the_paper() {
        let l74 = ldes_inverse_level_set(7, 4);
        let sv = expand_ok(&q_of(7, l74.iter()).unwrap());
        assert_eq!(int(&sv.coeff(&sh("(5,2)"))), 3);
        // Same multiset of descent sets on the block side.
        let bl73 = bl_level_set(7, 3);
        assert_eq!(
            q_of(7, bl73.iter()).unwrap(),
            q_of(7, l74.iter()).unwrap()
        );
    }

    #[test]
    fn block_level_sets_at_n2() {
        let sv = expand_ok(&q_of(2, bl_level_set(2, 1).iter()).unwrap());
        assert_eq!(sv.support_size(), 1);
        assert_eq!(int(&sv.coeff(&sh("(1,1)"))), 1);
        let sv = expand_ok(&q_of(2, bl_level_set(2, 2).iter()).unwrap());
        assert_eq!(sv.support_size(), 1);
        assert_eq!(int(&sv.coeff(&sh("(2)"))), 1);
    }

    #[test]
    fn full_block_count_expands_to_single_row_schur() {
        for n in 1..=6 {
            let sv = expand_ok(&q_of(n, bl_level_set(n, n).iter()).unwrap());
            assert_eq!(sv.support_size(), 1);
            assert_eq!(int(&sv.coeff(&Shape::new([n]).unwrap())), 1);
        }
    }

    #[test]
    fn restriction_at_full_level_is_the_schur_vector() {
        for shape in [sh("(3,1)"), sh("(2,2)"), sh("(4,2,1)")] {
            let full = restricted_character_image(&shape, shape.size()).unwrap();
            assert_eq!(full, schur_basis_vector(&shape).unwrap());
        }
    }

    #[test]
    fn restriction_of_2_1_down_to_m2() {
        let v = restricted_character_image(&sh("(2,1)"), 2).unwrap();
        assert_eq!(v.terms(), vec![(0, 1), (1, 1)]); // F_{2,{}} + F_{2,{1}}
        assert_eq!(
            restricted_character_image(&sh("(2,1)"), 4),
            Err(SymfunError::BadRestriction { m: 4, size: 3 })
        );
    }

    #[test]
    fn restriction_matches_block_level_sets() {
        for n in 2..=7usize {
            for k in 1..n {
                let shape = Shape::new([n - 1, n - k]).unwrap();
                let lhs = q_of(n, bl_level_set(n, k).iter()).unwrap();
                let rhs = restricted_character_image(&shape, n).unwrap();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn descent_coefficients_match_truncated_tableaux() {
        for n in 2..=7usize {
            for k in 1..=n {
                let v = q_of(n, bl_level_set(n, k).iter()).unwrap();
                let shape = Shape::new([n - 1, n - k]).unwrap();
                let mut expect = QSymVector::new(n);
                let truncate = (1u64 << (n - 1)) - 1;
                for t in syt_enumerate(&SkewShape::straight(shape)).unwrap() {
                    expect.add_mask(t.des_set().mask() & truncate, 1);
                }
                assert_eq!(v, expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn positive_level_sets_have_reflected_descent_multisets() {
        for n in 2..=6usize {
            for k in 1..=n {
                let perms = bl_level_set(n, k);
                let v = q_of(n, perms.iter()).unwrap();
                let mut reflected = QSymVector::new(n);
                for q in &perms {
                    reflected.add_mask(q.des_set().reflect().mask(), 1);
                }
                assert_eq!(v, reflected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn asymmetric_vector_yields_the_smallest_witness_pair() {
        let v = q_of(3, [&p("213")]).unwrap();
        match schur_expand(&v).unwrap() {
            Expansion::Symmetric(_) => panic!("a single F is never symmetric for n = 3"),
            Expansion::NotSymmetric(w) => {
                assert_eq!(w.degree, 3);
                assert_eq!(w.set_a.to_vec(), vec![1]);
                assert_eq!(w.set_b.to_vec(), vec![2]);
                assert_eq!((w.coeff_a, w.coeff_b), (1, 0));
            }
        }
    }

    #[test]
    fn positivity_certificates() {
        // Full S_2 is a union of Knuth classes.
        let both = vec![p("12"), p("21")];
        match is_schur_positive(&q_of(2, both.iter()).unwrap()).unwrap() {
            PositivityCertificate::Positive(sv) => {
                assert_eq!(int(&sv.coeff(&sh("(2)"))), 1);
                assert_eq!(int(&sv.coeff(&sh("(1,1)"))), 1);
            }
            other => panic!("expected positive, got {other:?}"),
        }
        // A negated Schur vector is symmetric but not positive.
        let mut neg = QSymVector::new(2);
        neg.add_mask(0, -1);
        match is_schur_positive(&neg).unwrap() {
            PositivityCertificate::BadCoefficient { shape, coeff } => {
                assert_eq!(shape, sh("(2)"));
                assert_eq!(coeff, -BigRational::one());
            }
            other => panic!("expected a negative coefficient, got {other:?}"),
        }
        // Asymmetric input propagates its witness.
        let asym = q_of(3, [&p("213")]).unwrap();
        assert!(!is_schur_positive(&asym).unwrap().is_positive());
    }

    #[test]
    fn knuth_classes_are_schur_positive() {
        use std::collections::BTreeMap;
        let mut classes: BTreeMap<Vec<Vec<usize>>, Vec<Permutation>> = BTreeMap::new();
        for q in all_perms(5) {
            let (pt, _) = rsk(&q);
            classes.entry(pt.rows().to_vec()).or_default().push(q);
        }
        for (rows, members) in classes {
            let v = q_of(5, members.iter()).unwrap();
            let cert = is_schur_positive(&v).unwrap();
            match cert {
                PositivityCertificate::Positive(sv) => {
                    // A Knuth class expands to exactly its own shape.
                    let t = StandardTableau::from_rows(rows).unwrap();
                    let shape = t.shape().outer().clone();
                    assert_eq!(sv.support_size(), 1);
                    assert_eq!(int(&sv.coeff(&shape)), 1);
                }
                other => panic!("class not positive: {other:?}"),
            }
        }
    }

    #[test]
    fn statistic_registry_round_trips() {
        for stat in [
            Statistic::BlockNumber,
            Statistic::LdesInverse,
            Statistic::Ides,
            Statistic::Imaj,
        ] {
            assert_eq!(stat.name().parse::<Statistic>().unwrap(), stat);
        }
        assert_eq!(
            "major".parse::<Statistic>(),
            Err(SymfunError::UnknownStatistic("major".into()))
        );
        let q = p("31254786");
        assert_eq!(Statistic::BlockNumber.eval(&q), 3);
        assert_eq!(Statistic::LdesInverse.eval(&p("41263785")), 5);
        assert_eq!(Statistic::Ides.eval(&q), 3);
        assert_eq!(Statistic::Imaj.eval(&q), 12);
    }

    #[test]
    fn pair_checks_on_the_named_pairs() {
        let pat321 = [p("321")];
        for n in 1..=6 {
            let report = check_pair(&pat321, Statistic::BlockNumber, n).unwrap();
            assert!(report.all_positive(), "({{321}}, bl) at n={n}");
            let total: usize = report.levels.iter().map(|l| l.count).sum();
            assert_eq!(
                total,
                crate::perm::enumerate_avoiders(n, &p("321")).count()
            );
            assert!(report.levels.windows(2).all(|w| w[0].value < w[1].value));
        }
        let e3 = [p("123")];
        for n in 1..=5 {
            assert!(check_pair(&e3, Statistic::Ides, n).unwrap().all_positive());
        }
        let pair = [p("132"), p("312")];
        for n in 1..=5 {
            assert!(check_pair(&pair, Statistic::Imaj, n).unwrap().all_positive());
        }
        assert_eq!(
            check_pair(&pat321, Statistic::BlockNumber, 10),
            Err(SymfunError::PairTooLarge(10))
        );
    }

    #[test]
    fn level_set_helpers_partition_the_avoiders() {
        for n in 1..=7usize {
            let total: usize = (1..=n).map(|k| bl_level_set(n, k).len()).sum();
            assert_eq!(total, crate::perm::enumerate_avoiders(n, &p("321")).count());
            let total: usize = (0..n).map(|k| ldes_inverse_level_set(n, k).len()).sum();
            assert_eq!(total, crate::perm::enumerate_avoiders(n, &p("321")).count());
        }
        assert!(bl_level_set(3, 1).iter().all(|q| q.block_number() == 1));
        assert_eq!(bl_level_set(3, 3), vec![p("123")]);
    }

    #[test]
    fn qsym_json_shape() {
        let v = q_of(3, [&p("213")]).unwrap();
        assert_eq!(
            v.to_json(),
            serde_json::json!({ "degree": 3, "coeffs": [{ "set": [1], "c": 1 }] })
        );
    }

    #[test]
    fn schur_json_shape_and_rational_rendering() {
        let both = vec![p("12"), p("21")];
        let sv = expand_ok(&q_of(2, both.iter()).unwrap());
        assert_eq!(
            sv.to_json(),
            serde_json::json!({
                "degree": 2,
                "coeffs": [
                    { "shape": [2], "c": "1" },
                    { "shape": [1, 1], "c": "1" },
                ]
            })
        );
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_string(&half), "1/2");
        assert_eq!(rational_string(&BigRational::from_integer(BigInt::from(-3))), "-3");
    }

    #[test]
    fn sparse_degrees_still_support_arithmetic() {
        let n = DENSE_LIMIT + 2;
        let id = Permutation::identity(n);
        let v = q_of(n, [&id]).unwrap();
        assert_eq!(v.coeff_mask(0), 1);
        assert_eq!(v.plus(&v).unwrap().coeff_mask(0), 2);
        assert_eq!(schur_expand(&v), Err(SymfunError::DegreeTooLarge(n)));
    }
}
