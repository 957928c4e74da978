//! Moon polyominoes stored as one column interval per row.
//!
//! Coordinates are 1-based: row 1 is the top row, column 1 the leftmost
//! column. A moon polyomino is convex (every row and column is a contiguous
//! run of cells) and intersection-free (any two rows are nested intervals).
//! Those two conditions together force the column-length sequence to be
//! unimodal, which the column order and the h-vector rely on.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowInterval {
    pub left: usize,
    pub right: usize,
}

impl RowInterval {
    pub fn new(left: usize, right: usize) -> Self {
        RowInterval { left, right }
    }

    pub fn len(&self) -> usize {
        self.right + 1 - self.left
    }

    pub fn is_empty(&self) -> bool {
        self.right < self.left
    }

    pub fn contains(&self, column: usize) -> bool {
        self.left <= column && column <= self.right
    }

    pub fn contains_interval(&self, other: &RowInterval) -> bool {
        self.left <= other.left && other.right <= self.right
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    Rectangle,
    Ferrers,
    LeftStack,
    TopStack,
    General,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeClass::Rectangle => "rectangle",
            ShapeClass::Ferrers => "ferrers",
            ShapeClass::LeftStack => "left_stack",
            ShapeClass::TopStack => "top_stack",
            ShapeClass::General => "general",
        })
    }
}

/// An axis-parallel block of cells, inclusive on all four sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub top: usize,
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
}

impl Rect {
    pub fn new(top: usize, bottom: usize, left: usize, right: usize) -> Self {
        Rect { top, bottom, left, right }
    }

    pub fn height(&self) -> usize {
        self.bottom + 1 - self.top
    }

    pub fn width(&self) -> usize {
        self.right + 1 - self.left
    }

    pub fn contains(&self, row: usize, column: usize) -> bool {
        (self.top..=self.bottom).contains(&row) && (self.left..=self.right).contains(&column)
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.top <= other.top
            && other.bottom <= self.bottom
            && self.left <= other.left
            && other.right <= self.right
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let r = Rect {
            top: self.top.max(other.top),
            bottom: self.bottom.min(other.bottom),
            left: self.left.max(other.left),
            right: self.right.min(other.right),
        };
        (r.top <= r.bottom && r.left <= r.right).then_some(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// The total order on columns used by the column-wise major index and the
/// h-vector: shorter columns first; among equal lengths, left-part columns
/// before right-part columns, left-part columns left to right, right-part
/// columns right to left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnOrder {
    /// Column indices, smallest first.
    pub order: Vec<usize>,
    /// `side[j - 1]` is the part column `j` belongs to.
    pub side: Vec<Side>,
    /// First column of the right part.
    pub k: usize,
}

impl ColumnOrder {
    pub fn side_of(&self, column: usize) -> Side {
        self.side[column - 1]
    }

    /// Position of `column` in the order, 0-based.
    pub fn rank(&self, column: usize) -> usize {
        self.order.iter().position(|&c| c == column).expect("column in order")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
struct ColumnSpan {
    top: usize,
    bottom: usize,
}

#[derive(Serialize, Deserialize)]
struct ShapeJson {
    rows: Vec<RowInterval>,
}

impl TryFrom<ShapeJson> for MoonPolyomino {
    type Error = Error;

    fn try_from(raw: ShapeJson) -> Result<Self> {
        MoonPolyomino::new(raw.rows)
    }
}

impl From<MoonPolyomino> for ShapeJson {
    fn from(shape: MoonPolyomino) -> Self {
        ShapeJson { rows: shape.rows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ShapeJson", into = "ShapeJson")]
pub struct MoonPolyomino {
    rows: Vec<RowInterval>,
    width: usize,
    columns: Vec<ColumnSpan>,
    class: ShapeClass,
}

/// Validates a raw row-interval sequence. The validator is the only way to
/// build a shape from outside data.
pub fn validate(rows: &[(usize, usize)]) -> Result<MoonPolyomino> {
    MoonPolyomino::from_pairs(rows)
}

impl MoonPolyomino {
    pub fn new(rows: Vec<RowInterval>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyShape);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.left == 0 || r.is_empty() {
                return Err(Error::EmptyRow { row: i + 1, left: r.left, right: r.right });
            }
        }
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                if !rows[a].contains_interval(&rows[b]) && !rows[b].contains_interval(&rows[a]) {
                    return Err(Error::NotComparable { row_a: a + 1, row_b: b + 1 });
                }
            }
        }
        let min_left = rows.iter().map(|r| r.left).min().unwrap();
        if min_left != 1 {
            return Err(Error::NotNormalized(min_left));
        }
        let width = rows.iter().map(|r| r.right).max().unwrap();
        let mut columns = Vec::with_capacity(width);
        for j in 1..=width {
            let hits: Vec<usize> = (1..=rows.len()).filter(|&i| rows[i - 1].contains(j)).collect();
            // comparability puts every column inside the widest row
            let (top, bottom) = (hits[0], *hits.last().unwrap());
            if bottom + 1 - top != hits.len() {
                return Err(Error::NotConvex { column: j });
            }
            columns.push(ColumnSpan { top, bottom });
        }
        let mut shape = MoonPolyomino { rows, width, columns, class: ShapeClass::General };
        shape.class = shape.classify();
        debug_assert!(is_unimodal(&shape.column_lengths()));
        Ok(shape)
    }

    pub fn from_pairs(rows: &[(usize, usize)]) -> Result<Self> {
        MoonPolyomino::new(rows.iter().map(|&(l, r)| RowInterval::new(l, r)).collect())
    }

    /// Builds a shape from its columns, each given as an inclusive
    /// `(top, bottom)` row range, left to right.
    pub fn from_columns(columns: &[(usize, usize)]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyShape);
        }
        let height = columns.iter().map(|c| c.1).max().unwrap();
        let mut rows = Vec::with_capacity(height);
        for i in 1..=height {
            let hits: Vec<usize> = (1..=columns.len())
                .filter(|&j| columns[j - 1].0 <= i && i <= columns[j - 1].1)
                .collect();
            let Some(&left) = hits.first() else {
                return Err(Error::EmptyRow { row: i, left: 0, right: 0 });
            };
            let right = *hits.last().unwrap();
            if right + 1 - left != hits.len() {
                return Err(Error::InfeasibleSpec(format!("row {i} is not contiguous")));
            }
            rows.push(RowInterval::new(left, right));
        }
        let shape = MoonPolyomino::new(rows)?;
        if shape.columns() != columns {
            return Err(Error::InfeasibleSpec("columns do not start at row 1".into()));
        }
        Ok(shape)
    }

    /// Left-aligned rows of the given lengths, top to bottom.
    pub fn left_stack(row_lengths: &[usize]) -> Result<Self> {
        MoonPolyomino::new(row_lengths.iter().map(|&w| RowInterval::new(1, w)).collect())
    }

    pub fn rectangle(height: usize, width: usize) -> Self {
        MoonPolyomino::new(vec![RowInterval::new(1, width); height]).expect("rectangle is a moon polyomino")
    }

    fn classify(&self) -> ShapeClass {
        let left = self.is_left_aligned();
        let top = self.is_top_aligned();
        if self.rows.iter().all(|r| *r == self.rows[0]) {
            ShapeClass::Rectangle
        } else if left && top {
            ShapeClass::Ferrers
        } else if left {
            ShapeClass::LeftStack
        } else if top {
            ShapeClass::TopStack
        } else {
            ShapeClass::General
        }
    }

    pub fn class(&self) -> ShapeClass {
        self.class
    }

    pub fn is_left_aligned(&self) -> bool {
        self.rows.iter().all(|r| r.left == 1)
    }

    pub fn is_top_aligned(&self) -> bool {
        self.columns.iter().all(|c| c.top == 1)
    }

    pub fn rows(&self) -> &[RowInterval] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> RowInterval {
        self.rows[i - 1]
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(RowInterval::len).sum()
    }

    pub fn contains(&self, row: usize, column: usize) -> bool {
        row >= 1 && row <= self.rows.len() && self.rows[row - 1].contains(column)
    }

    pub fn contains_rect(&self, rect: &Rect) -> bool {
        rect.top >= 1
            && rect.bottom <= self.height()
            && (rect.top..=rect.bottom).all(|i| self.rows[i - 1].contains_interval(&RowInterval::new(rect.left, rect.right)))
    }

    /// `(top, bottom)` row range of every column, left to right.
    pub fn columns(&self) -> Vec<(usize, usize)> {
        self.columns.iter().map(|c| (c.top, c.bottom)).collect()
    }

    pub fn column_span(&self, column: usize) -> (usize, usize) {
        let c = self.columns[column - 1];
        (c.top, c.bottom)
    }

    pub fn column_length(&self, column: usize) -> Result<usize> {
        if column == 0 || column > self.width {
            return Err(Error::ColumnOutOfRange { column, width: self.width });
        }
        let c = self.columns[column - 1];
        Ok(c.bottom + 1 - c.top)
    }

    pub fn column_lengths(&self) -> Vec<usize> {
        self.columns.iter().map(|c| c.bottom + 1 - c.top).collect()
    }

    /// The same shape reflected left to right.
    pub fn mirrored(&self) -> Self {
        let w = self.width;
        let rows = self.rows.iter().map(|r| RowInterval::new(w + 1 - r.right, w + 1 - r.left)).collect();
        MoonPolyomino::new(rows).expect("mirror of a moon polyomino")
    }

    pub fn column_order(&self) -> ColumnOrder {
        let lengths = self.column_lengths();
        let max = *lengths.iter().max().unwrap();
        let k = lengths.iter().position(|&l| l == max).unwrap() + 1;
        let side: Vec<Side> = (1..=self.width).map(|j| if j < k { Side::Left } else { Side::Right }).collect();
        let mut order: Vec<usize> = (1..=self.width).collect();
        order.sort_by_key(|&j| {
            let tie = match side[j - 1] {
                Side::Left => (0, j as isize),
                Side::Right => (1, -(j as isize)),
            };
            (lengths[j - 1], tie)
        });
        ColumnOrder { order, side, k }
    }

    /// All inclusion-maximal rectangles, increasing in height.
    ///
    /// Each distinct row interval `I` gives exactly one, namely the rows
    /// whose interval contains `I`, times `I`.
    pub fn maximal_rectangles(&self) -> Vec<Rect> {
        let distinct: BTreeSet<RowInterval> = self.rows.iter().copied().collect();
        let mut rects: Vec<Rect> = distinct
            .into_iter()
            .map(|iv| {
                let hits: Vec<usize> =
                    (1..=self.height()).filter(|&i| self.rows[i - 1].contains_interval(&iv)).collect();
                Rect::new(hits[0], *hits.last().unwrap(), iv.left, iv.right)
            })
            .collect();
        rects.sort_by_key(|r| r.height());
        rects
    }

    fn column_covers(&self, column: usize, top: usize, bottom: usize) -> bool {
        let c = self.columns[column - 1];
        c.top <= top && bottom <= c.bottom
    }

    /// The rectangle attached to a column by the column-wise major index:
    /// for a left-part column, the widest rectangle on its rows having it as
    /// leftmost column; for a right-part column, the widest one having it as
    /// rightmost column that avoids left-part columns of the same length.
    pub fn column_rectangle(&self, ord: &ColumnOrder, column: usize) -> Rect {
        let (top, bottom) = self.column_span(column);
        let len = bottom + 1 - top;
        match ord.side_of(column) {
            Side::Left => {
                let mut right = column;
                while right < self.width && self.column_covers(right + 1, top, bottom) {
                    right += 1;
                }
                Rect::new(top, bottom, column, right)
            }
            Side::Right => {
                let mut left = column;
                while left > 1 && self.column_covers(left - 1, top, bottom) {
                    let cand = left - 1;
                    let cand_len = self.column_length(cand).unwrap();
                    if ord.side_of(cand) == Side::Left && cand_len == len {
                        break;
                    }
                    left = cand;
                }
                Rect::new(top, bottom, left, column)
            }
        }
    }

    /// Largest top-and-left aligned subdiagram containing the whole top row:
    /// row `i` keeps columns `1..=min(|r_1|, ..., |r_i|)`.
    pub fn maximal_ferrers_prefix(&self) -> Result<MoonPolyomino> {
        if !self.is_left_aligned() {
            return Err(Error::WrongShapeClass { expected: "left-aligned stack", found: self.class });
        }
        let widths = self.ferrers_prefix_widths();
        MoonPolyomino::left_stack(&widths)
    }

    pub(crate) fn ferrers_prefix_widths(&self) -> Vec<usize> {
        let mut cur = usize::MAX;
        self.rows
            .iter()
            .map(|r| {
                cur = cur.min(r.right);
                cur
            })
            .collect()
    }

    /// Shape with the given rows (1-based) removed. Removing rows keeps the
    /// nesting structure, but the leftmost column may disappear, in which case
    /// the result is shifted to start at column 1.
    pub fn without_rows(&self, drop: &BTreeSet<usize>) -> Option<(MoonPolyomino, usize)> {
        let kept: Vec<RowInterval> = (1..=self.height())
            .filter(|i| !drop.contains(i))
            .map(|i| self.rows[i - 1])
            .collect();
        if kept.is_empty() {
            return None;
        }
        let offset = kept.iter().map(|r| r.left).min().unwrap() - 1;
        let rows = kept.iter().map(|r| RowInterval::new(r.left - offset, r.right - offset)).collect();
        Some((MoonPolyomino::new(rows).expect("row deletion keeps moon shape"), offset))
    }
}

fn is_unimodal(seq: &[usize]) -> bool {
    let peak = seq.iter().enumerate().max_by_key(|&(i, &v)| (v, std::cmp::Reverse(i))).map(|(i, _)| i).unwrap_or(0);
    seq[..=peak].windows(2).all(|w| w[0] <= w[1]) && seq[peak..].windows(2).all(|w| w[0] >= w[1])
}
