//! Permutations of {1, ..., n} with the statistics used throughout the
//! crate: descent and left-to-right-maximum sets, block (plus-indecomposable
//! summand) structure, and pattern avoidance with a pruned lexicographic
//! enumerator.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Longest word we store. Keeps every position set inside one 64-bit mask.
pub const MAX_LEN: usize = 64;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum PermError {
    #[error("word of length {0} exceeds the supported maximum of {MAX_LEN}")]
    TooLong(usize),
    #[error("value {value} is out of range for a word of length {n}")]
    ValueOutOfRange { value: usize, n: usize },
    #[error("value {0} appears more than once")]
    DuplicateValue(usize),
    #[error("empty text: a permutation word needs at least one value")]
    EmptyText,
    #[error("cannot parse {0:?} as a permutation value")]
    BadToken(String),
    #[error("size mismatch: left word has {left} values, right word has {right}")]
    SizeMismatch { left: usize, right: usize },
}

/// A subset of positions {1, ..., universe}, universe <= 64, as a bitmask.
///
/// Bit i-1 set means position i is in the set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PositionSet {
    mask: u64,
    universe: u8,
}

impl PositionSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_LEN, "universe {universe} exceeds {MAX_LEN}");
        PositionSet { mask: 0, universe: universe as u8 }
    }

    pub fn from_mask(universe: usize, mask: u64) -> Self {
        let mut s = Self::empty(universe);
        if universe < MAX_LEN {
            assert_eq!(mask >> universe, 0, "mask has bits outside the universe");
        }
        s.mask = mask;
        s
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(universe: usize, positions: I) -> Self {
        let mut s = Self::empty(universe);
        for p in positions {
            s.insert(p);
        }
        s
    }

    pub fn insert(&mut self, position: usize) {
        assert!(
            position >= 1 && position <= self.universe as usize,
            "position {position} outside universe {}",
            self.universe
        );
        self.mask |= 1 << (position - 1);
    }

    pub fn contains(&self, position: usize) -> bool {
        position >= 1 && position <= self.universe as usize && self.mask >> (position - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    /// Largest member, or None when empty.
    pub fn max(&self) -> Option<usize> {
        if self.mask == 0 {
            None
        } else {
            Some(64 - self.mask.leading_zeros() as usize)
        }
    }

    /// The set {universe + 1 - p : p in self}, in the same universe.
    pub fn reflect(&self) -> Self {
        let mut out = Self::empty(self.universe());
        for p in self.iter() {
            out.insert(self.universe() + 1 - p);
        }
        out
    }

    /// Ascending positions.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (1..=self.universe as usize).filter(move |p| mask >> (p - 1) & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A permutation of {1, ..., n} in one-line notation, 1-indexed.
///
/// The empty permutation (n = 0) is valid and is the neutral element for
/// [`Permutation::direct_sum`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from a 1-indexed word, validating that it is a
    /// rearrangement of 1..=n with n <= 64.
    pub fn from_word<I: IntoIterator<Item = usize>>(word: I) -> Result<Self, PermError> {
        let values: Vec<usize> = word.into_iter().collect();
        let n = values.len();
        if n > MAX_LEN {
            return Err(PermError::TooLong(n));
        }
        let mut seen = 0u64;
        let mut out = Vec::with_capacity(n);
        for v in values {
            if v < 1 || v > n {
                return Err(PermError::ValueOutOfRange { value: v, n });
            }
            if seen >> (v - 1) & 1 == 1 {
                return Err(PermError::DuplicateValue(v));
            }
            seen |= 1 << (v - 1);
            out.push(v as u8);
        }
        Ok(Permutation { word: out })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_LEN);
        Permutation { word: (1..=n as u8).collect() }
    }

    pub fn empty() -> Self {
        Permutation { word: Vec::new() }
    }

    /// The cycle (values[0] values[1] ... values[m-1]) as a permutation of
    /// {1, ..., n}: values[0] maps to values[1], and so on around.
    pub fn from_cycle(n: usize, values: &[usize]) -> Self {
        assert!(n <= MAX_LEN);
        let mut word: Vec<u8> = (1..=n as u8).collect();
        for (i, &v) in values.iter().enumerate() {
            assert!(v >= 1 && v <= n, "cycle value {v} outside 1..={n}");
            let next = values[(i + 1) % values.len()];
            word[v - 1] = next as u8;
        }
        // A repeated value would have overwritten an earlier image.
        debug_assert!(Self::from_word(word.iter().map(|&v| v as usize)).is_ok());
        Permutation { word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// One-line word as 1-indexed values.
    pub fn word(&self) -> impl Iterator<Item = usize> + '_ {
        self.word.iter().map(|&v| v as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.word().collect()
    }

    /// Image of position i (1-indexed).
    pub fn value_at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    /// Position of value v (1-indexed).
    pub fn position_of(&self, v: usize) -> usize {
        self.word.iter().position(|&x| x as usize == v).expect("value in range") + 1
    }

    /// Group inverse: q with q(p(i)) = i.
    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0u8; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word }
    }

    /// Left multiplication (self o p)(i) = self(p(i)): relabels the values
    /// of `p` through `self` while keeping positions fixed.
    pub fn compose(&self, p: &Permutation) -> Result<Permutation, PermError> {
        if self.len() != p.len() {
            return Err(PermError::SizeMismatch { left: self.len(), right: p.len() });
        }
        let word = p.word.iter().map(|&v| self.word[v as usize - 1]).collect();
        Ok(Permutation { word })
    }

    /// Direct sum: `self` on {1..m} followed by `other` shifted up by m.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let m = self.len();
        let n = m + other.len();
        assert!(n <= MAX_LEN, "direct sum of length {n} exceeds {MAX_LEN}");
        let mut word = self.word.clone();
        word.extend(other.word.iter().map(|&v| v + m as u8));
        Permutation { word }
    }

    /// Descent set Des = {i < n : p(i) > p(i+1)}, a subset of {1..n-1}.
    pub fn des_set(&self) -> PositionSet {
        let n = self.len();
        let mut s = PositionSet::empty(n.saturating_sub(1));
        for i in 1..n {
            if self.word[i - 1] > self.word[i] {
                s.insert(i);
            }
        }
        s
    }

    /// Positions of left-to-right maxima, a subset of {1..n}. Nonempty for
    /// n >= 1 (position 1 and the position of n always qualify).
    pub fn ltr_set(&self) -> PositionSet {
        let n = self.len();
        let mut s = PositionSet::empty(n);
        let mut max = 0u8;
        for i in 1..=n {
            if self.word[i - 1] > max {
                max = self.word[i - 1];
                s.insert(i);
            }
        }
        s
    }

    /// Last descent: max Des, or 0 when Des is empty.
    pub fn ldes(&self) -> usize {
        self.des_set().max().unwrap_or(0)
    }

    /// Number of inverse descents |Des(p^-1)|.
    pub fn ides(&self) -> usize {
        self.inverse().des_set().len()
    }

    /// Inverse major index: sum of Des(p^-1).
    pub fn imaj(&self) -> usize {
        self.inverse().des_set().iter().sum()
    }

    /// Block number: |{i : p maps {1..i} onto {1..i}}|, the number of
    /// plus-indecomposable summands. 0 for the empty permutation.
    pub fn block_number(&self) -> usize {
        let mut count = 0;
        let mut max = 0usize;
        for (i, &v) in self.word.iter().enumerate() {
            max = max.max(v as usize);
            if max == i + 1 {
                count += 1;
            }
        }
        count
    }

    /// The plus-indecomposable summands, standardized; their direct sum is
    /// `self` and there are `block_number()` of them.
    pub fn blocks(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut start = 0usize;
        let mut max = 0usize;
        for (i, &v) in self.word.iter().enumerate() {
            max = max.max(v as usize);
            if max == i + 1 {
                let word = self.word[start..=i].iter().map(|&x| x - start as u8).collect();
                out.push(Permutation { word });
                start = i + 1;
            }
        }
        out
    }

    /// Positions (i, j, k) of a 321 occurrence, if any. O(n): a letter
    /// completes a 321 exactly when it undercuts the largest value that
    /// already has a larger value before it (the best available middle).
    pub fn find_321(&self) -> Option<(usize, usize, usize)> {
        let mut max_val = 0usize;
        let mut max_pos = 0usize;
        let mut mid: Option<(usize, usize, usize)> = None; // (value, high_pos, mid_pos)
        for (idx, &v) in self.word.iter().enumerate() {
            let v = v as usize;
            let pos = idx + 1;
            if let Some((m, hi, mj)) = mid {
                if v < m {
                    return Some((hi, mj, pos));
                }
            }
            if v < max_val && mid.map_or(true, |(m, _, _)| v > m) {
                mid = Some((v, max_pos, pos));
            }
            if v > max_val {
                max_val = v;
                max_pos = pos;
            }
        }
        None
    }

    /// Does `self` contain `pattern` as a classical pattern?
    pub fn contains(&self, pattern: &Permutation) -> bool {
        if pattern.is_empty() {
            return true;
        }
        if pattern.word == [3, 2, 1] {
            return self.find_321().is_some();
        }
        if pattern.len() > self.len() {
            return false;
        }
        contains_from(&self.word, &pattern.word, &mut Vec::new(), 0)
    }

    /// Pattern avoidance; the 321 case runs in O(n).
    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }
}

/// DFS over occurrences: `chosen` holds values for pattern roles 0..j.
fn contains_from(word: &[u8], pattern: &[u8], chosen: &mut Vec<u8>, start: usize) -> bool {
    let j = chosen.len();
    if j == pattern.len() {
        return true;
    }
    for pos in start..word.len() {
        let v = word[pos];
        if chosen
            .iter()
            .enumerate()
            .all(|(i, &c)| (v < c) == (pattern[j] < pattern[i]))
        {
            chosen.push(v);
            if contains_from(word, pattern, chosen, pos + 1) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
    }
    false
}

impl fmt::Display for Permutation {
    /// Space-separated values; the canonical emitted form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Permutation {
    /// Compact digit form when every value fits one digit ("31254786"),
    /// otherwise the space-separated form.
    pub fn to_compact_string(&self) -> String {
        if self.len() <= 9 {
            self.word().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts space-separated values for any n, or contiguous digits for
    /// n <= 9 ("31254786").
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::EmptyText);
        }
        if s.split_whitespace().nth(1).is_some() {
            let values: Result<Vec<usize>, _> = s
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| PermError::BadToken(t.to_string())))
                .collect();
            return Permutation::from_word(values?);
        }
        if s.len() <= 9 && s.bytes().all(|b| b.is_ascii_digit()) {
            return Permutation::from_word(s.bytes().map(|b| (b - b'0') as usize));
        }
        let v = s.parse::<usize>().map_err(|_| PermError::BadToken(s.to_string()))?;
        Permutation::from_word([v])
    }
}

/// All permutations of [n] avoiding every pattern in `patterns`, streamed in
/// lexicographic order of the one-line word. Prefixes that already contain a
/// pattern are pruned. For the single pattern 321 the prune is O(1) per
/// extension; general patterns use a matcher anchored at the new last letter.
pub fn enumerate_avoiding(n: usize, patterns: &[Permutation]) -> AvoiderIter {
    assert!(n <= MAX_LEN);
    let fast321 = patterns.len() == 1 && patterns[0].word == [3, 2, 1];
    AvoiderIter {
        n,
        patterns: patterns.to_vec(),
        fast321,
        prefix: Vec::with_capacity(n),
        used: 0,
        resume: vec![1; n + 1],
        state321: vec![(0, 0); n + 1],
        done: false,
    }
}

/// Single-pattern convenience for [`enumerate_avoiding`].
pub fn enumerate_avoiders(n: usize, pattern: &Permutation) -> AvoiderIter {
    enumerate_avoiding(n, std::slice::from_ref(pattern))
}

pub struct AvoiderIter {
    n: usize,
    patterns: Vec<Permutation>,
    fast321: bool,
    prefix: Vec<u8>,
    used: u64,
    /// resume[d]: next candidate value to try at depth d.
    resume: Vec<u8>,
    /// state321[d]: (max value, best middle value) of prefix[..d]; the best
    /// middle is the largest value with a larger value before it, 0 when
    /// there is none. Extending with v < best middle completes a 321.
    state321: Vec<(u8, u8)>,
    done: bool,
}

impl AvoiderIter {
    fn extension_ok(&self, v: u8) -> bool {
        if self.fast321 {
            // Appending v completes a 321 exactly when v undercuts the best
            // available middle element (0 when the prefix has none).
            let (_, best_mid) = self.state321[self.prefix.len()];
            return v > best_mid;
        }
        let d = self.prefix.len();
        for q in &self.patterns {
            let m = q.word.len();
            if m == 0 {
                return false;
            }
            if m > d + 1 {
                continue;
            }
            // Any new occurrence must use the new letter, necessarily in the
            // last role of the pattern.
            if ends_occurrence(&self.prefix, &q.word, v) {
                return false;
            }
        }
        true
    }

    fn pop_frame(&mut self) {
        let v = self.prefix.pop().expect("nonempty prefix");
        self.used &= !(1 << (v - 1));
        self.resume[self.prefix.len()] = v + 1;
    }
}

/// Does prefix + v contain `pattern` with v playing the final role?
fn ends_occurrence(prefix: &[u8], pattern: &[u8], v: u8) -> bool {
    // chosen[i] holds the value for role i; roles 0..m-1 come from the prefix.
    fn dfs(prefix: &[u8], pattern: &[u8], v: u8, chosen: &mut Vec<u8>, start: usize) -> bool {
        let j = chosen.len();
        let m = pattern.len();
        if j == m - 1 {
            return true;
        }
        for pos in start..prefix.len() {
            let c = prefix[pos];
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(i, &ci)| (c < ci) == (pattern[j] < pattern[i]))
                && ((c < v) == (pattern[j] < pattern[m - 1]));
            if consistent {
                chosen.push(c);
                if dfs(prefix, pattern, v, chosen, pos + 1) {
                    chosen.pop();
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if pattern.len() == 1 {
        return true;
    }
    dfs(prefix, pattern, v, &mut Vec::with_capacity(pattern.len() - 1), 0)
}

impl Iterator for AvoiderIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        loop {
            if self.prefix.len() == self.n {
                let out = Permutation { word: self.prefix.clone() };
                if self.n == 0 {
                    self.done = true;
                } else {
                    self.pop_frame();
                }
                return Some(out);
            }
            let d = self.prefix.len();
            let mut v = self.resume[d];
            let mut pushed = false;
            while (v as usize) <= self.n {
                if self.used >> (v - 1) & 1 == 0 && self.extension_ok(v) {
                    // Push v at depth d.
                    if self.fast321 {
                        let (mx, bm) = self.state321[d];
                        let nmx = mx.max(v);
                        let nbm = if v < mx { bm.max(v) } else { bm };
                        self.state321[d + 1] = (nmx, nbm);
                    }
                    self.prefix.push(v);
                    self.used |= 1 << (v - 1);
                    self.resume[d] = v + 1;
                    self.resume[d + 1] = 1;
                    pushed = true;
                    break;
                }
                v += 1;
            }
            if !pushed {
                if d == 0 {
                    self.done = true;
                    return None;
                }
                self.pop_frame();
            }
        }
    }
}
