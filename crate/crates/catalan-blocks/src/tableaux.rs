//! Standard Young tableaux of straight and skew shapes: enumeration,
//! descent statistics, 180-degree rotation of two-row skew shapes inside a
//! 2 x n box, and Robinson-Schensted row insertion.
//!
//! English convention throughout: row indices increase from top to bottom,
//! and row 1 is printed first.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{Permutation, PositionSet};

/// Largest shape size `syt_enumerate` will expand.
pub const MAX_SYT_SIZE: usize = 25;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TableauxError {
    #[error("shape parts must be positive and weakly decreasing")]
    BadShape,
    #[error("inner shape does not fit inside the outer shape")]
    InnerNotContained,
    #[error("shape of size {0} exceeds the enumeration limit of {MAX_SYT_SIZE}")]
    TooLarge(usize),
    #[error("rotation is defined for skew shapes with at most two rows")]
    MoreThanTwoRows,
    #[error("shape does not fit in a 2 x {0} box")]
    BoxTooSmall(usize),
    #[error("filling does not match the shape or is not standard")]
    BadFilling,
    #[error("P and Q must be standard tableaux of the same straight shape")]
    ShapeMismatch,
    #[error("cannot parse {0:?} as part of a shape or tableau")]
    BadText(String),
}

/// An integer partition: weakly decreasing positive parts.
///
/// The derived order is lexicographic on the part vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    /// Trailing zeros are dropped; zeros elsewhere are rejected.
    pub fn new<I: IntoIterator<Item = usize>>(parts: I) -> Result<Self, TableauxError> {
        let mut parts: Vec<usize> = parts.into_iter().collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauxError::BadShape);
        }
        Ok(Shape { parts })
    }

    pub fn empty() -> Self {
        Shape { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The i-th part (0-indexed), 0 beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Shape {
    type Err = TableauxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t)
            .trim();
        if t.is_empty() {
            return Ok(Shape::empty());
        }
        let parts: Result<Vec<usize>, _> = t
            .split(',')
            .map(|w| {
                w.trim()
                    .parse::<usize>()
                    .map_err(|_| TableauxError::BadText(w.trim().to_string()))
            })
            .collect();
        Shape::new(parts?)
    }
}

/// A skew shape outer/inner; a straight shape is the inner-empty case.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    outer: Shape,
    inner: Shape,
}

impl SkewShape {
    pub fn new(outer: Shape, inner: Shape) -> Result<Self, TableauxError> {
        if inner.len() > outer.len()
            || inner.parts().iter().enumerate().any(|(i, &p)| p > outer.part(i))
        {
            return Err(TableauxError::InnerNotContained);
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Shape) -> Self {
        SkewShape { outer, inner: Shape::empty() }
    }

    pub fn outer(&self) -> &Shape {
        &self.outer
    }

    pub fn inner(&self) -> &Shape {
        &self.inner
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    /// Cells of row i occupy the half-open column range lo..hi (0-indexed).
    fn row_span(&self, i: usize) -> (usize, usize) {
        (self.inner.part(i), self.outer.part(i))
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_straight() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for SkewShape {
    type Err = TableauxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            None => Ok(SkewShape::straight(s.parse()?)),
            Some((o, i)) => SkewShape::new(o.parse()?, i.parse()?),
        }
    }
}

/// A standard Young tableau: the cells of a skew shape filled with
/// 1..size, rows increasing left to right and columns top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: SkewShape,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    /// `rows[i]` lists the entries of the present cells of row i.
    pub fn new(shape: SkewShape, rows: Vec<Vec<usize>>) -> Result<Self, TableauxError> {
        let m = shape.size();
        if rows.len() != shape.outer().len() {
            return Err(TableauxError::BadFilling);
        }
        let mut seen = vec![false; m + 1];
        for (i, row) in rows.iter().enumerate() {
            let (lo, hi) = shape.row_span(i);
            if row.len() != hi - lo {
                return Err(TableauxError::BadFilling);
            }
            for (j, &e) in row.iter().enumerate() {
                if e == 0 || e > m || seen[e] {
                    return Err(TableauxError::BadFilling);
                }
                seen[e] = true;
                if j > 0 && row[j - 1] >= e {
                    return Err(TableauxError::BadFilling);
                }
                if i > 0 {
                    // The cell above, when present, must hold a smaller entry.
                    let col = lo + j;
                    let (plo, phi) = shape.row_span(i - 1);
                    if col >= plo && col < phi && rows[i - 1][col - plo] >= e {
                        return Err(TableauxError::BadFilling);
                    }
                }
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    /// Straight tableau from its rows alone.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self, TableauxError> {
        let shape = Shape::new(rows.iter().map(|r| r.len()))?;
        Self::new(SkewShape::straight(shape), rows)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn is_empty(&self) -> bool {
        self.size() == 0
    }

    /// Number of rows.
    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// Row index (0-based) holding `entry`.
    pub fn row_of(&self, entry: usize) -> Option<usize> {
        self.rows.iter().position(|r| r.contains(&entry))
    }

    /// Rows concatenated top to bottom; the enumeration order key.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    /// {i : i + 1 sits in a lower row than i}, a subset of {1, ..., size - 1}.
    pub fn des_set(&self) -> PositionSet {
        let m = self.size();
        let mut row_of = vec![0usize; m + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for &e in row {
                row_of[e] = i;
            }
        }
        let mut s = PositionSet::empty(m.saturating_sub(1));
        for i in 1..m {
            if row_of[i + 1] > row_of[i] {
                s.insert(i);
            }
        }
        s
    }

    /// Largest descent, 0 when there is none.
    pub fn ldes(&self) -> usize {
        self.des_set().max().unwrap_or(0)
    }

    /// Smallest descent; the size when there is none (mirror of ldes = 0).
    pub fn first_descent(&self) -> usize {
        self.des_set().iter().next().unwrap_or_else(|| self.size())
    }
}

impl fmt::Display for StandardTableau {
    /// Rows separated by `/`, entries space-separated: `1 2 3 4 7 / 5 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for StandardTableau {
    type Err = TableauxError;

    /// Straight tableaux only; skew fillings have no text form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rows = Vec::new();
        for chunk in s.split('/') {
            let row: Result<Vec<usize>, _> = chunk
                .split_whitespace()
                .map(|w| {
                    w.parse::<usize>()
                        .map_err(|_| TableauxError::BadText(w.to_string()))
                })
                .collect();
            rows.push(row?);
        }
        Self::from_rows(rows)
    }
}

/// Every standard filling of `shape`, sorted by reading word.
///
/// Backtracks over the placements of 1, 2, ...: the next value may go in
/// any cell whose left and upper neighbours are already filled, which
/// keeps the filling standard by construction.
pub fn syt_enumerate(shape: &SkewShape) -> Result<Vec<StandardTableau>, TableauxError> {
    let m = shape.size();
    if m > MAX_SYT_SIZE {
        return Err(TableauxError::TooLarge(m));
    }

    fn place(
        v: usize,
        m: usize,
        shape: &SkewShape,
        fill: &mut [usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if v > m {
            let t = StandardTableau::new(shape.clone(), rows.clone())
                .expect("placement keeps the filling standard");
            out.push(t);
            return;
        }
        for i in 0..rows.len() {
            let (lo, hi) = shape.row_span(i);
            let col = lo + fill[i];
            if col >= hi {
                continue;
            }
            if i > 0 {
                let (plo, _) = shape.row_span(i - 1);
                // Skip while the cell above exists but is still empty.
                if col >= plo && fill[i - 1] <= col - plo {
                    continue;
                }
            }
            fill[i] += 1;
            rows[i].push(v);
            place(v + 1, m, shape, fill, rows, out);
            rows[i].pop();
            fill[i] -= 1;
        }
    }

    let nrows = shape.outer().len();
    let mut fill = vec![0usize; nrows];
    let mut rows = vec![Vec::new(); nrows];
    let mut out = Vec::new();
    place(1, m, shape, &mut fill, &mut rows, &mut out);
    out.sort_by(|a, b| a.reading_word().cmp(&b.reading_word()));
    Ok(out)
}

/// Rotate a two-row skew shape 180 degrees inside a 2 x n box:
/// (a,b)/(c,d) becomes (n-d,n-c)/(n-b,n-a). An involution that preserves
/// the number of standard fillings.
pub fn rotate_180(s: &SkewShape, n: usize) -> Result<SkewShape, TableauxError> {
    if s.outer().len() > 2 {
        return Err(TableauxError::MoreThanTwoRows);
    }
    if s.outer().part(0) > n {
        return Err(TableauxError::BoxTooSmall(n));
    }
    let (a, b) = (s.outer().part(0), s.outer().part(1));
    let (c, d) = (s.inner().part(0), s.inner().part(1));
    let outer = Shape::new([n - d, n - c]).expect("rotated outer shape is valid");
    let inner = Shape::new([n - b, n - a]).expect("rotated inner shape is valid");
    SkewShape::new(outer, inner)
}

/// Row-insertion RSK: the insertion tableau P and recording tableau Q,
/// standard of the same straight shape.
pub fn rsk(p: &Permutation) -> (StandardTableau, StandardTableau) {
    let mut p_rows: Vec<Vec<usize>> = Vec::new();
    let mut q_rows: Vec<Vec<usize>> = Vec::new();
    for (idx, v) in p.word().enumerate() {
        let mut x = v;
        let mut r = 0;
        loop {
            if r == p_rows.len() {
                p_rows.push(vec![x]);
                q_rows.push(vec![idx + 1]);
                break;
            }
            let row = &mut p_rows[r];
            // x bumps the leftmost entry larger than it.
            let j = row.partition_point(|&e| e < x);
            if j == row.len() {
                row.push(x);
                q_rows[r].push(idx + 1);
                break;
            }
            std::mem::swap(&mut row[j], &mut x);
            r += 1;
        }
    }
    let pt = StandardTableau::from_rows(p_rows).expect("insertion tableau is standard");
    let qt = StandardTableau::from_rows(q_rows).expect("recording tableau is standard");
    (pt, qt)
}

/// The unique permutation with rsk image (P, Q), by reverse bumping.
pub fn rsk_inverse(
    pt: &StandardTableau,
    qt: &StandardTableau,
) -> Result<Permutation, TableauxError> {
    if pt.shape() != qt.shape() || !pt.shape().is_straight() {
        return Err(TableauxError::ShapeMismatch);
    }
    let m = pt.size();
    let mut row_of = vec![0usize; m + 1];
    for (i, row) in qt.rows().iter().enumerate() {
        for &e in row {
            row_of[e] = i;
        }
    }
    let mut rows = pt.rows().to_vec();
    let mut word = vec![0usize; m];
    for v in (1..=m).rev() {
        // v is maximal among the remaining entries of Q, so its cell is the
        // last one of its row in the current shape.
        let r = row_of[v];
        let mut x = rows[r].pop().expect("cell recorded in Q exists in P");
        for j in (0..r).rev() {
            let row = &mut rows[j];
            // x replaces the rightmost entry smaller than it.
            let idx = row.partition_point(|&e| e < x);
            debug_assert!(idx > 0, "reverse bump always finds a smaller entry above");
            std::mem::swap(&mut row[idx - 1], &mut x);
        }
        word[v - 1] = x;
    }
    Ok(Permutation::from_word(word).expect("reverse insertion emits each letter once"))
}
