//! A recursive bijection on 321-avoiding permutations that exchanges the
//! block number for the last descent of the inverse: a word with k blocks
//! maps to a word whose inverse has last descent n - k, preserving the set
//! of left-to-right maxima and the position of the largest letter.
//!
//! Both directions peel the largest letter off level by level (an explicit
//! loop, no recursion), recording one [`TraceStep`] per level, and then
//! rebuild on the way back up.

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BijectionError {
    #[error("the empty word is outside the domain")]
    EmptyWord,
    #[error("word contains the pattern 321 at positions ({0}, {1}, {2})")]
    Contains321(usize, usize, usize),
    #[error("internal inconsistency at level {level}: case recovery left a word outside the domain")]
    Inconsistency { level: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    /// Largest letter sits in the last position: delete it, recurse, append.
    A,
    /// Largest letter right of the second largest but not last: delete it,
    /// recurse, reinsert in place, swap two values below.
    B,
    /// Largest letter left of the second largest (which is then forced to be
    /// last): swap the top two values, do case A, rotate a value range.
    C,
    /// Level 1.
    Base,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::A => write!(f, "A"),
            CaseLabel::B => write!(f, "B"),
            CaseLabel::C => write!(f, "C"),
            CaseLabel::Base => write!(f, "base"),
        }
    }
}

/// One level of the recursion, from level n down to level 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub level: usize,
    pub case: CaseLabel,
    /// Position the letter `level` was removed from descending and
    /// reinserted at ascending. None at the base.
    pub deleted_from: Option<usize>,
    /// Cycle applied on the left after reinsertion, as its value sequence
    /// (two values form a transposition). None for case A and the base.
    pub cycle: Option<Vec<usize>>,
    /// Restriction of the input at this level.
    pub pi: Permutation,
    /// Image of `pi` under the level map.
    pub f: Permutation,
}

impl TraceStep {
    /// `level=<i> case=<A|B|C|base> cycle=<(a b ...)|-> pi=<word> f=<word>`
    pub fn render(&self) -> String {
        let cycle = match &self.cycle {
            Some(values) => {
                let inner: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                format!("({})", inner.join(" "))
            }
            None => "-".to_string(),
        };
        format!(
            "level={} case={} cycle={} pi={} f={}",
            self.level,
            self.case,
            cycle,
            self.pi.to_compact_string(),
            self.f.to_compact_string()
        )
    }

    /// Same fields as [`render`](Self::render), as a JSON object.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "level": self.level,
            "case": self.case.to_string(),
            "cycle": self.cycle,
            "pi": self.pi.to_vec(),
            "f": self.f.to_vec(),
        })
    }
}

fn check_domain(p: &Permutation) -> Result<(), BijectionError> {
    if p.is_empty() {
        return Err(BijectionError::EmptyWord);
    }
    if let Some((i, j, k)) = p.find_321() {
        return Err(BijectionError::Contains321(i, j, k));
    }
    Ok(())
}

/// Word minus its largest letter (no relabeling needed).
fn remove_top(p: &Permutation) -> Permutation {
    let n = p.len();
    Permutation::from_word(p.word().filter(|&v| v != n)).expect("valid word")
}

/// Swap the values a and b in the word (left multiplication by (a b)).
fn swap_values(p: &Permutation, a: usize, b: usize) -> Permutation {
    Permutation::from_word(p.word().map(|v| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    }))
    .expect("valid word")
}

/// Insert the new largest letter at `position` (1-indexed).
fn insert_top(p: &Permutation, position: usize) -> Permutation {
    let mut word = p.to_vec();
    word.insert(position - 1, p.len() + 1);
    Permutation::from_word(word).expect("valid word")
}

/// The case analysis for one level, descending.
fn classify(cur: &Permutation) -> (CaseLabel, usize, Option<Vec<usize>>, Permutation) {
    let i = cur.len();
    debug_assert!(i >= 2);
    let pos_top = cur.position_of(i);
    if pos_top == i {
        return (CaseLabel::A, i, None, remove_top(cur));
    }
    let k = cur.block_number();
    if cur.position_of(i - 1) < pos_top {
        // Case B. The block count k is at most i - 2 here, so the
        // transposition values stay positive.
        debug_assert!(k <= i - 2);
        let cycle = vec![i - k - 1, i - k];
        (CaseLabel::B, pos_top, Some(cycle), remove_top(cur))
    } else {
        // Case C: avoiding 321 forces the letter i - 1 to be last.
        debug_assert_eq!(cur.position_of(i - 1), i);
        let cycle: Vec<usize> = (i - k..=i).collect();
        let swapped = swap_values(cur, i - 1, i);
        (CaseLabel::C, i, Some(cycle), remove_top(&swapped))
    }
}

/// Peels the input down to level 1 and rebuilds the image, producing one
/// step per level in descending order.
pub fn trace(p: &Permutation) -> Result<Vec<TraceStep>, BijectionError> {
    check_domain(p)?;
    let n = p.len();
    let mut steps: Vec<TraceStep> = Vec::with_capacity(n);
    let mut cur = p.clone();
    for level in (2..=n).rev() {
        let (case, deleted_from, cycle, next) = classify(&cur);
        steps.push(TraceStep {
            level,
            case,
            deleted_from: Some(deleted_from),
            cycle,
            pi: cur,
            f: Permutation::empty(), // filled ascending
        });
        cur = next;
    }
    steps.push(TraceStep {
        level: 1,
        case: CaseLabel::Base,
        deleted_from: None,
        cycle: None,
        pi: cur.clone(),
        f: cur,
    });
    // Ascend: rebuild images level by level.
    let mut image = steps.last().expect("base step").f.clone();
    for step in steps.iter_mut().rev().skip(1) {
        let level = step.level;
        image = match step.case {
            CaseLabel::A => insert_top(&image, level),
            CaseLabel::B | CaseLabel::C => {
                let inserted = insert_top(&image, step.deleted_from.expect("set descending"));
                let cycle = Permutation::from_cycle(level, step.cycle.as_ref().expect("set"));
                cycle.compose(&inserted).expect("same size")
            }
            CaseLabel::Base => unreachable!("base handled before the loop"),
        };
        step.f = image.clone();
    }
    Ok(steps)
}

/// Image of `p` under the bijection.
pub fn f_map(p: &Permutation) -> Result<Permutation, BijectionError> {
    let steps = trace(p)?;
    Ok(steps.first().expect("at least the base").f.clone())
}

/// Preimage under the bijection: recovers the case labels from the image
/// alone and undoes each level.
pub fn f_inverse(image: &Permutation) -> Result<Permutation, BijectionError> {
    check_domain(image)?;
    let n = image.len();
    enum Up {
        A,
        B(usize),
        C,
    }
    let mut cases: Vec<Up> = Vec::with_capacity(n);
    let mut cur = image.clone();
    for level in (2..=n).rev() {
        let i = level;
        if cur.value_at(i) == i {
            cases.push(Up::A);
            cur = remove_top(&cur);
        } else {
            // The image of a k-block word has last inverse descent i - k.
            let k = i - cur.inverse().ldes();
            debug_assert!(k >= 1 && k < i);
            let is_c =
                k == i - 1 || cur.position_of(i - k + 1) < cur.position_of(i - k - 1);
            if is_c {
                // Undo the cycle (i-k .. i); the top letter must land last.
                let reversed: Vec<usize> = (i - k..=i).rev().collect();
                let inv_cycle = Permutation::from_cycle(i, &reversed);
                let unrolled = inv_cycle.compose(&cur).expect("same size");
                if unrolled.value_at(i) != i {
                    return Err(BijectionError::Inconsistency { level: i });
                }
                cases.push(Up::C);
                cur = remove_top(&unrolled);
            } else {
                // Undo the transposition (i-k-1, i-k), then extract the top.
                let unswapped = swap_values(&cur, i - k - 1, i - k);
                let pos = unswapped.position_of(i);
                cases.push(Up::B(pos));
                cur = remove_top(&unswapped);
            }
        }
        if cur.find_321().is_some() {
            return Err(BijectionError::Inconsistency { level: i });
        }
    }
    // Rebuild the preimage ascending.
    let mut pi = cur; // the single letter 1
    for (idx, case) in cases.iter().rev().enumerate() {
        let level = idx + 2;
        pi = match case {
            Up::A => insert_top(&pi, level),
            Up::B(pos) => insert_top(&pi, *pos),
            Up::C => swap_values(&insert_top(&pi, level), level - 1, level),
        };
        if pi.find_321().is_some() {
            return Err(BijectionError::Inconsistency { level });
        }
    }
    Ok(pi)
}
