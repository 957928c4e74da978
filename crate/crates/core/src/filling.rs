//! 01-fillings with at most one 1 per row, their statistics, and exhaustive
//! enumeration of a filling class `F(M, s; A)`.
//!
//! Statistics on a sub-rectangle always use global row indices; rows whose 1
//! falls outside the rectangle count as empty there.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shape::{MoonPolyomino, Rect, ShapeClass};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FillingJson", into = "FillingJson")]
pub struct Filling {
    shape: MoonPolyomino,
    cells: Vec<Option<usize>>,
}

#[derive(Serialize, Deserialize)]
struct FillingJson {
    shape: MoonPolyomino,
    cells: Vec<Option<usize>>,
}

impl TryFrom<FillingJson> for Filling {
    type Error = Error;

    fn try_from(raw: FillingJson) -> Result<Self> {
        Filling::new(raw.shape, raw.cells)
    }
}

impl From<Filling> for FillingJson {
    fn from(f: Filling) -> Self {
        FillingJson { shape: f.shape, cells: f.cells }
    }
}

impl Filling {
    /// `cells[i]` is the column of the 1 in row `i + 1`, if any.
    pub fn new(shape: MoonPolyomino, cells: Vec<Option<usize>>) -> Result<Self> {
        if cells.len() != shape.height() {
            return Err(Error::RowCountMismatch { expected: shape.height(), found: cells.len() });
        }
        for (i, c) in cells.iter().enumerate() {
            if let Some(j) = *c {
                if !shape.contains(i + 1, j) {
                    return Err(Error::CellOutsideShape { row: i + 1, column: j });
                }
            }
        }
        Ok(Filling { shape, cells })
    }

    pub(crate) fn new_unchecked(shape: MoonPolyomino, cells: Vec<Option<usize>>) -> Self {
        debug_assert!(Filling::new(shape.clone(), cells.clone()).is_ok());
        Filling { shape, cells }
    }

    pub fn empty(shape: MoonPolyomino) -> Self {
        let n = shape.height();
        Filling { shape, cells: vec![None; n] }
    }

    pub fn shape(&self) -> &MoonPolyomino {
        &self.shape
    }

    pub fn cells(&self) -> &[Option<usize>] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Option<usize>> {
        self.cells
    }

    /// Column of the 1 in row `row` (1-based).
    pub fn one_in_row(&self, row: usize) -> Option<usize> {
        self.cells[row - 1]
    }

    /// All 1-cells as `(row, column)`, top to bottom.
    pub fn ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter().enumerate().filter_map(|(i, c)| c.map(|j| (i + 1, j)))
    }

    pub fn column_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.shape.width()];
        for (_, j) in self.ones() {
            sums[j - 1] += 1;
        }
        sums
    }

    pub fn empty_rows(&self) -> BTreeSet<usize> {
        (1..=self.cells.len()).filter(|&i| self.cells[i - 1].is_none()).collect()
    }

    /// The class `F(M, s; A)` this filling belongs to.
    pub fn class_spec(&self) -> FillingClassSpec {
        FillingClassSpec {
            shape: self.shape.clone(),
            s: self.column_sums(),
            empty_rows: self.empty_rows(),
        }
    }

    /// Columns of the 1s inside `rect`, top to bottom.
    pub fn columns_in(&self, rect: &Rect) -> Vec<usize> {
        (rect.top..=rect.bottom)
            .filter_map(|i| self.cells[i - 1].filter(|&j| rect.left <= j && j <= rect.right))
            .collect()
    }

    /// Whether the 1-cells `upper` and `lower` form an NE chain.
    pub fn is_ne_chain(&self, upper: (usize, usize), lower: (usize, usize)) -> bool {
        is_ne_chain(&self.shape, upper, lower)
    }
}

/// `upper` strictly above and strictly right of `lower`, with the bounding
/// rectangle inside the shape. For moon polyominoes it suffices to test the
/// two missing corners.
pub(crate) fn is_ne_chain(shape: &MoonPolyomino, upper: (usize, usize), lower: (usize, usize)) -> bool {
    upper.0 < lower.0
        && upper.1 > lower.1
        && shape.contains(upper.0, lower.1)
        && shape.contains(lower.0, upper.1)
}

pub fn ne_count(f: &Filling) -> usize {
    let ones: Vec<(usize, usize)> = f.ones().collect();
    let mut count = 0;
    for (a, &upper) in ones.iter().enumerate() {
        for &lower in &ones[a + 1..] {
            if is_ne_chain(&f.shape, upper, lower) {
                count += 1;
            }
        }
    }
    count
}

fn des_seq(cols: &[usize]) -> usize {
    cols.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Each descent between the d-th and (d+1)-th nonempty row lies in the
/// `n - d` top prefixes that reach past it.
fn maj_seq(cols: &[usize]) -> usize {
    let n = cols.len();
    cols.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(d, _)| n - (d + 1))
        .sum()
}

/// Descents of the filling restricted to `rect`.
pub fn des_rect(f: &Filling, rect: &Rect) -> usize {
    des_seq(&f.columns_in(rect))
}

/// Major index of the filling restricted to `rect`.
pub fn maj_rect(f: &Filling, rect: &Rect) -> usize {
    maj_seq(&f.columns_in(rect))
}

fn maj_opt(f: &Filling, rect: Option<Rect>) -> usize {
    rect.map_or(0, |r| maj_rect(f, &r))
}

/// Inclusion-exclusion over a chain of rectangles.
fn maj_chain(f: &Filling, rects: &[Rect]) -> usize {
    let plus: usize = rects.iter().map(|r| maj_rect(f, r)).sum();
    let minus: usize = rects.windows(2).map(|w| maj_opt(f, w[0].intersect(&w[1]))).sum();
    plus - minus
}

/// Major index via the maximal rectangles ordered by height.
pub fn maj_maxrect(f: &Filling) -> usize {
    maj_chain(f, &f.shape.maximal_rectangles())
}

/// Per-rectangle terms of [`maj_maxrect`]: `(rectangle terms, intersection terms)`.
pub fn maj_maxrect_terms(f: &Filling) -> (Vec<usize>, Vec<usize>) {
    let rects = f.shape.maximal_rectangles();
    chain_terms(f, &rects)
}

fn chain_terms(f: &Filling, rects: &[Rect]) -> (Vec<usize>, Vec<usize>) {
    (
        rects.iter().map(|r| maj_rect(f, r)).collect(),
        rects.windows(2).map(|w| maj_opt(f, w[0].intersect(&w[1]))).collect(),
    )
}

fn column_rectangles(shape: &MoonPolyomino) -> Vec<Rect> {
    let ord = shape.column_order();
    ord.order.iter().map(|&j| shape.column_rectangle(&ord, j)).collect()
}

/// Major index via the column rectangles taken in column order.
pub fn maj_columns(f: &Filling) -> usize {
    maj_chain(f, &column_rectangles(&f.shape))
}

pub fn maj_columns_terms(f: &Filling) -> (Vec<usize>, Vec<usize>) {
    chain_terms(f, &column_rectangles(&f.shape))
}

/// The major index of a filling. Same as [`maj_maxrect`].
pub fn maj(f: &Filling) -> usize {
    maj_maxrect(f)
}

/// Major index of a top-aligned stack filling as a sum of descents of the
/// widest rectangles ending at each nonempty row.
pub fn maj_top_stack(f: &Filling) -> Result<usize> {
    Ok(maj_top_stack_terms(f)?.iter().sum())
}

pub fn maj_top_stack_terms(f: &Filling) -> Result<Vec<usize>> {
    let shape = &f.shape;
    if !shape.is_top_aligned() {
        return Err(Error::WrongShapeClass { expected: "top-aligned stack", found: shape.class() });
    }
    Ok(f.ones()
        .map(|(i, _)| {
            let iv = shape.row(i);
            let mut top = i;
            while top > 1 && shape.row(top - 1).contains_interval(&iv) {
                top -= 1;
            }
            des_rect(f, &Rect::new(top, i, iv.left, iv.right))
        })
        .collect())
}

/// Descents of a filling of a rectangular shape.
pub fn des(f: &Filling) -> Result<usize> {
    if f.shape.class() != ShapeClass::Rectangle {
        return Err(Error::WrongShapeClass { expected: "rectangle", found: f.shape.class() });
    }
    Ok(des_rect(f, &Rect::new(1, f.shape.height(), 1, f.shape.width())))
}

/// Column sums `s` and empty-row set `A` over a shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FillingClassSpec {
    pub shape: MoonPolyomino,
    pub s: Vec<usize>,
    #[serde(rename = "A")]
    pub empty_rows: BTreeSet<usize>,
}

impl FillingClassSpec {
    pub fn new(shape: MoonPolyomino, s: Vec<usize>, empty_rows: BTreeSet<usize>) -> Result<Self> {
        if s.len() != shape.width() {
            return Err(Error::InfeasibleSpec(format!(
                "{} column sums given for {} columns",
                s.len(),
                shape.width()
            )));
        }
        if let Some(&bad) = empty_rows.iter().find(|&&i| i == 0 || i > shape.height()) {
            return Err(Error::RowOutOfRange { row: bad, height: shape.height() });
        }
        let lengths = shape.column_lengths();
        if let Some(j) = (0..s.len()).find(|&j| s[j] > lengths[j]) {
            return Err(Error::InfeasibleSpec(format!(
                "column {} sum {} exceeds its length {}",
                j + 1,
                s[j],
                lengths[j]
            )));
        }
        let total: usize = s.iter().sum();
        if total != shape.height() - empty_rows.len() {
            return Err(Error::InfeasibleSpec(format!(
                "column sums total {total} but {} rows are nonempty",
                shape.height() - empty_rows.len()
            )));
        }
        Ok(FillingClassSpec { shape, s, empty_rows })
    }

    pub fn contains(&self, f: &Filling) -> bool {
        f.shape == self.shape && f.column_sums() == self.s && f.empty_rows() == self.empty_rows
    }
}

/// Available cells per column when columns are filled in column order,
/// indexed by column (`h[j - 1]`). May be negative for empty classes.
pub fn h_vector(spec: &FillingClassSpec) -> Vec<i64> {
    let shape = &spec.shape;
    let ord = shape.column_order();
    let mut h = vec![0i64; shape.width()];
    let mut used = 0i64;
    for &j in &ord.order {
        let (top, bottom) = shape.column_span(j);
        let a = spec.empty_rows.iter().filter(|&&i| top <= i && i <= bottom).count() as i64;
        h[j - 1] = (bottom + 1 - top) as i64 - a - used;
        used += spec.s[j - 1] as i64;
    }
    h
}

/// Visits every filling of the class in lexicographic order of the row-wise
/// column choices. The visitor returns `false` to stop early.
pub fn for_each_in_class<F>(spec: &FillingClassSpec, mut visit: F)
where
    F: FnMut(&[Option<usize>]) -> bool,
{
    let shape = &spec.shape;
    let n = shape.height();
    let mut need: Vec<usize> = spec.s.clone();
    // rows_left[j] = number of free rows at or below the cursor meeting column j
    let mut rows_left = vec![0usize; shape.width()];
    for i in 1..=n {
        if !spec.empty_rows.contains(&i) {
            let iv = shape.row(i);
            for j in iv.left..=iv.right {
                rows_left[j - 1] += 1;
            }
        }
    }
    if (0..need.len()).any(|j| need[j] > rows_left[j]) {
        return;
    }
    let mut cells = vec![None; n];
    struct Ctx<'a, F> {
        spec: &'a FillingClassSpec,
        visit: F,
        stopped: bool,
    }
    fn rec<F: FnMut(&[Option<usize>]) -> bool>(
        ctx: &mut Ctx<'_, F>,
        row: usize,
        cells: &mut Vec<Option<usize>>,
        need: &mut Vec<usize>,
        rows_left: &mut Vec<usize>,
    ) {
        if ctx.stopped {
            return;
        }
        let n = cells.len();
        if row > n {
            if !(ctx.visit)(cells) {
                ctx.stopped = true;
            }
            return;
        }
        if ctx.spec.empty_rows.contains(&row) {
            rec(ctx, row + 1, cells, need, rows_left);
            return;
        }
        let iv = ctx.spec.shape.row(row);
        for j in iv.left..=iv.right {
            rows_left[j - 1] -= 1;
        }
        for j in iv.left..=iv.right {
            if need[j - 1] == 0 {
                continue;
            }
            need[j - 1] -= 1;
            let ok = (iv.left..=iv.right).all(|c| need[c - 1] <= rows_left[c - 1]);
            if ok {
                cells[row - 1] = Some(j);
                rec(ctx, row + 1, cells, need, rows_left);
                cells[row - 1] = None;
            }
            need[j - 1] += 1;
            if ctx.stopped {
                break;
            }
        }
        for j in iv.left..=iv.right {
            rows_left[j - 1] += 1;
        }
    }
    let mut ctx = Ctx { spec, visit: &mut visit, stopped: false };
    rec(&mut ctx, 1, &mut cells, &mut need, &mut rows_left);
}

/// All fillings of the class, in lexicographic order.
pub fn enumerate(spec: &FillingClassSpec) -> Vec<Filling> {
    let mut out = Vec::new();
    for_each_in_class(spec, |cells| {
        out.push(Filling::new_unchecked(spec.shape.clone(), cells.to_vec()));
        true
    });
    out
}

/// Every filling of the shape, over all classes (each row empty or one 1).
pub fn all_fillings(shape: &MoonPolyomino) -> impl Iterator<Item = Filling> + '_ {
    let n = shape.height();
    let mut cur: Option<Vec<Option<usize>>> = Some(vec![None; n]);
    std::iter::from_fn(move || {
        let cells = cur.take()?;
        let out = Filling::new_unchecked(shape.clone(), cells.clone());
        let mut next = cells;
        let mut i = n;
        loop {
            if i == 0 {
                break;
            }
            let iv = shape.row(i);
            match next[i - 1] {
                None => {
                    next[i - 1] = Some(iv.left);
                    cur = Some(next);
                    break;
                }
                Some(j) if j < iv.right => {
                    next[i - 1] = Some(j + 1);
                    cur = Some(next);
                    break;
                }
                Some(_) => {
                    next[i - 1] = None;
                    i -= 1;
                }
            }
        }
        Some(out)
    })
}
