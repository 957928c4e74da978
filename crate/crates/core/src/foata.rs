//! A Foata-type bijection `phi` on fillings of left-aligned stack
//! polyominoes (Ferrers diagrams included) with `maj(F) = ne(phi(F))`.
//!
//! `phi` is built one row at a time from the bottom. Adding a row whose 1 is
//! in column `j*` runs `gamma_r` on the rows below, restricted to the
//! largest Ferrers diagram that contains the new row. `gamma_r` works on the
//! rows meeting column `j*`; a 1 there is *left* if it lies strictly left of
//! `j*` and *right* otherwise. `delta_r` undoes `gamma_r`.
//!
//! Inside a Ferrers region every operation only exchanges the columns of
//! 1s between rows, so column sums and the set of nonempty rows are kept.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filling::{is_ne_chain, Filling};
use crate::shape::MoonPolyomino;

/// Swaps the 1-cells `(i1, j1)` and `(i2, j2)`: the 1s move to `(i1, j2)`
/// and `(i2, j1)`.
pub fn swap_cells(f: &Filling, c1: (usize, usize), c2: (usize, usize)) -> Result<Filling> {
    for c in [c1, c2] {
        if c.0 == 0 || c.0 > f.shape().height() || f.one_in_row(c.0) != Some(c.1) {
            return Err(Error::Parse(format!("({}, {}) is not a 1-cell", c.0, c.1)));
        }
    }
    if c1.0 == c2.0 || c1.1 == c2.1 {
        return Err(Error::Parse("cells must be in distinct rows and columns".into()));
    }
    let mut cells = f.cells().to_vec();
    cells[c1.0 - 1] = Some(c2.1);
    cells[c2.0 - 1] = Some(c1.1);
    Filling::new(f.shape().clone(), cells)
}

/// The row sets `gamma_r` works on, with 1-based rows of the filling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionContext {
    pub pivot: usize,
    pub rows: Vec<usize>,
    pub left_cells: Vec<(usize, usize)>,
    pub right_cells: Vec<(usize, usize)>,
    pub clc: Option<(usize, usize)>,
    pub crc: Option<(usize, usize)>,
    pub r1: Vec<usize>,
    pub r2: Vec<usize>,
}

/// A Ferrers region: `widths` is weakly decreasing and `cells[k]`, if set,
/// is at most `widths[k]`. Rows are 0-based here.
struct Region<'a> {
    widths: &'a [usize],
    cells: &'a mut [Option<usize>],
    pivot: usize,
}

struct Split {
    rows: Vec<usize>,
    clc: Option<usize>,
    crc: Option<usize>,
    r1: Vec<usize>,
    r2: Vec<usize>,
}

impl Region<'_> {
    fn col(&self, k: usize) -> usize {
        self.cells[k].expect("row of R is nonempty")
    }

    fn is_left(&self, k: usize) -> bool {
        self.col(k) < self.pivot
    }

    fn col_len(&self, j: usize) -> usize {
        self.widths.iter().take_while(|&&w| w >= j).count()
    }

    fn ne(&self, upper: usize, lower: usize) -> bool {
        upper < lower && self.col(upper) > self.col(lower) && self.widths[lower] >= self.col(upper)
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.cells.swap(a, b);
    }

    fn rows(&self) -> Vec<usize> {
        (0..self.widths.len())
            .take_while(|&k| self.widths[k] >= self.pivot)
            .filter(|&k| self.cells[k].is_some())
            .collect()
    }

    fn left_columns(&self) -> Vec<usize> {
        self.rows().into_iter().filter(|&k| self.is_left(k)).map(|k| self.col(k)).collect()
    }

    fn split(&self) -> Split {
        let rows = self.rows();
        let clc = rows.iter().copied().find(|&k| self.is_left(k));
        let Some(clc) = clc else {
            return Split { rows, clc: None, crc: None, r1: Vec::new(), r2: Vec::new() };
        };
        let crc = rows
            .iter()
            .copied()
            .filter(|&k| k < clc && !self.is_left(k))
            .min_by_key(|&k| (self.col(k), std::cmp::Reverse(k)));
        let Some(crc) = crc else {
            let r2 = rows.iter().copied().filter(|&k| k >= clc).collect();
            return Split { rows, clc: Some(clc), crc: None, r1: Vec::new(), r2 };
        };
        let c = self.col(crc);
        let r1 = rows.iter().copied().filter(|&k| k >= crc && self.widths[k] >= c).collect();
        let r2 = rows.iter().copied().filter(|&k| self.widths[k] < c).collect();
        Split { rows, clc: Some(clc), crc: Some(crc), r1, r2 }
    }

    fn check_inside(&self) {
        debug_assert!(self.cells.iter().zip(self.widths).all(|(c, &w)| c.is_none_or(|c| c <= w)));
    }

    fn gamma(&mut self) {
        let before = cfg!(debug_assertions).then(|| self.left_columns());
        let split = self.split();
        if let Some(crc) = split.crc {
            self.gamma1(&split.r1, self.col_len(self.col(crc)));
        }
        self.gamma2(&split.r2);
        self.check_inside();
        if let Some(before) = before {
            debug_assert_eq!(before, self.left_columns(), "left 1-cells changed order");
        }
    }

    fn gamma1(&mut self, r1: &[usize], crc_len: usize) {
        if r1.is_empty() {
            return;
        }
        let mut p1 = 0;
        for p2 in 1..r1.len() {
            let (k1, k2) = (r1[p1], r1[p2]);
            debug_assert!(
                (k1 + 1..k2).all(|k| self.cells[k].is_none_or(|c| c > self.col(k1))),
                "a 1 between the pointers lies weakly left of C1"
            );
            debug_assert_eq!(self.col_len(self.col(k1)), crc_len);
            if self.is_left(k2) {
                self.swap(k1, k2);
                p1 = p2;
                continue;
            }
            let (c1, c2) = (self.col(k1), self.col(k2));
            let (l1, l2) = (self.col_len(c1), self.col_len(c2));
            if l1 == l2 {
                p1 = p2;
            } else if c1 < c2 && l1 > l2 {
            } else {
                assert!(c1 > c2 && l1 < l2, "unreachable configuration in gamma");
                let l = (0..k1)
                    .rev()
                    .find(|&k| self.widths[k] >= self.pivot && self.cells[k].is_some_and(|c| c < self.pivot))
                    .expect("a left 1-cell above C1");
                let cl = self.col(l);
                self.cells[l] = Some(c2);
                self.cells[k1] = Some(cl);
                self.cells[k2] = Some(c1);
                p1 = p2;
            }
        }
        debug_assert_eq!(p1, r1.len() - 1, "gamma stopped above the last row of R1");
    }

    fn gamma2(&mut self, r2: &[usize]) {
        let Some(&top) = r2.first() else {
            return;
        };
        if !self.is_left(top) {
            let l = (0..top)
                .rev()
                .find(|&k| self.widths[k] >= self.pivot && self.cells[k].is_some_and(|c| c < self.pivot))
                .expect("a left 1-cell above the top of R2");
            self.swap(top, l);
        }
        for w in r2.windows(2) {
            if !self.is_left(w[1]) {
                self.swap(w[0], w[1]);
            }
        }
    }

    fn delta(&mut self) {
        let before = cfg!(debug_assertions).then(|| self.left_columns());
        let rows = self.rows();
        if rows.iter().all(|&k| !self.is_left(k)) {
            return;
        }
        let c_star = rows
            .iter()
            .copied()
            .filter(|&k| !self.is_left(k) && !rows.iter().any(|&k2| self.ne(k, k2)))
            .max();
        let r2: Vec<usize> = match c_star {
            Some(cs) => rows.iter().copied().filter(|&k| k > cs).collect(),
            None => rows.clone(),
        };
        self.delta2(&rows, &r2);
        let rest: Vec<usize> = rows.iter().copied().filter(|k| !r2.contains(k)).collect();
        self.delta1(&rest);
        self.check_inside();
        if let Some(before) = before {
            debug_assert_eq!(before, self.left_columns(), "left 1-cells changed order");
        }
    }

    fn delta2(&mut self, rows: &[usize], r2: &[usize]) {
        let Some(&top) = r2.first() else {
            return;
        };
        for w in r2.windows(2).rev() {
            if !self.is_left(w[0]) {
                self.swap(w[1], w[0]);
            }
        }
        let above = rows.iter().copied().filter(|&k| k < top && !self.is_left(k) && self.ne(k, top)).max();
        if let Some(k) = above {
            let blocked = rows.iter().any(|&m| k < m && m < top && self.is_left(m));
            if !blocked {
                self.swap(k, top);
            }
        }
    }

    fn delta1(&mut self, rows: &[usize]) {
        if rows.is_empty() {
            return;
        }
        let mut p1 = rows.len() - 1;
        for p2 in (0..rows.len() - 1).rev() {
            let (k1, k2) = (rows[p1], rows[p2]);
            if self.is_left(k2) {
                let len1 = self.col_len(self.col(k1));
                let found = rows[..p2]
                    .iter()
                    .rev()
                    .take_while(|&&k| !self.is_left(k))
                    .copied()
                    .find(|&k| self.col_len(self.col(k)) > len1);
                match found {
                    Some(k3) => {
                        let (c1, c2, c3) = (self.col(k1), self.col(k2), self.col(k3));
                        self.cells[k1] = Some(c3);
                        self.cells[k2] = Some(c1);
                        self.cells[k3] = Some(c2);
                    }
                    None => self.swap(k1, k2),
                }
                p1 = p2;
            } else if self.col_len(self.col(k1)) == self.col_len(self.col(k2)) {
                p1 = p2;
            }
        }
    }
}

fn ferrers_widths(shape: &MoonPolyomino) -> Result<Vec<usize>> {
    let widths: Vec<usize> = shape.rows().iter().map(|r| r.right).collect();
    if !shape.is_left_aligned() || widths.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::WrongShapeClass { expected: "ferrers", found: shape.class() });
    }
    Ok(widths)
}

fn check_pivot(shape: &MoonPolyomino, pivot: usize) -> Result<()> {
    if pivot == 0 || pivot > shape.width() {
        return Err(Error::ColumnOutOfRange { column: pivot, width: shape.width() });
    }
    Ok(())
}

/// Row indices, widths and cells of the nonempty rows.
type NonemptyRows = (Vec<usize>, Vec<usize>, Vec<Option<usize>>);

/// The nonempty rows of a Ferrers filling. Empty rows play no part in the
/// region algorithms.
fn nonempty_rows(g: &Filling, pivot: usize) -> Result<NonemptyRows> {
    let widths = ferrers_widths(g.shape())?;
    check_pivot(g.shape(), pivot)?;
    let kept: Vec<usize> = (0..widths.len()).filter(|&k| g.cells()[k].is_some()).collect();
    let w = kept.iter().map(|&k| widths[k]).collect();
    let c = kept.iter().map(|&k| g.cells()[k]).collect();
    Ok((kept, w, c))
}

pub fn compute_regions(g: &Filling, pivot: usize) -> Result<RegionContext> {
    let (kept, widths, mut cells) = nonempty_rows(g, pivot)?;
    let region = Region { widths: &widths, cells: &mut cells, pivot };
    let split = region.split();
    let row = |k: usize| kept[k] + 1;
    let cell = |k: usize| (row(k), region.col(k));
    let (left, right): (Vec<usize>, Vec<usize>) = split.rows.iter().partition(|&&k| region.is_left(k));
    Ok(RegionContext {
        pivot,
        rows: split.rows.iter().map(|&k| row(k)).collect(),
        left_cells: left.into_iter().map(cell).collect(),
        right_cells: right.into_iter().map(cell).collect(),
        clc: split.clc.map(cell),
        crc: split.crc.map(cell),
        r1: split.r1.iter().map(|&k| row(k)).collect(),
        r2: split.r2.iter().map(|&k| row(k)).collect(),
    })
}

fn apply(g: &Filling, pivot: usize, inverse: bool) -> Result<Filling> {
    let (kept, widths, mut cells) = nonempty_rows(g, pivot)?;
    let mut region = Region { widths: &widths, cells: &mut cells, pivot };
    if inverse {
        region.delta();
    } else {
        region.gamma();
    }
    let mut out = g.cells().to_vec();
    for (&k, c) in kept.iter().zip(cells) {
        out[k] = c;
    }
    Ok(Filling::new_unchecked(g.shape().clone(), out))
}

/// One insertion step on a Ferrers filling with pivot column `pivot`.
/// Empty rows are ignored and stay empty.
pub fn gamma_r(g: &Filling, pivot: usize) -> Result<Filling> {
    apply(g, pivot, false)
}

/// Inverse of [`gamma_r`].
pub fn delta_r(g: &Filling, pivot: usize) -> Result<Filling> {
    apply(g, pivot, true)
}

/// Runs `gamma` (or `delta`) for each row `t`, in the given order, on the
/// rows below it restricted to the largest Ferrers diagram containing row
/// `t`. `rights` are the row lengths.
fn sweep(rights: &[usize], cells: &mut [Option<usize>], ts: impl Iterator<Item = usize>, inverse: bool) {
    let mut widths = Vec::with_capacity(rights.len());
    let mut local = Vec::with_capacity(rights.len());
    for t in ts {
        let pivot = cells[t].expect("empty rows are stripped");
        widths.clear();
        let mut cur = rights[t];
        for &w in &rights[t + 1..] {
            cur = cur.min(w);
            widths.push(cur);
        }
        local.clear();
        local.extend(cells[t + 1..].iter().zip(&widths).map(|(c, &w)| c.filter(|&c| c <= w)));
        let mut region = Region { widths: &widths, cells: &mut local, pivot };
        if inverse {
            region.delta();
        } else {
            region.gamma();
        }
        for (dst, &src) in cells[t + 1..].iter_mut().zip(&local) {
            if src.is_some() {
                *dst = src;
            }
        }
    }
}

fn transform(f: &Filling, inverse: bool) -> Result<Filling> {
    if !f.shape().is_left_aligned() {
        return Err(Error::WrongShapeClass { expected: "left-aligned stack", found: f.shape().class() });
    }
    let kept: Vec<usize> = (0..f.cells().len()).filter(|&i| f.cells()[i].is_some()).collect();
    let rights: Vec<usize> = kept.iter().map(|&i| f.shape().rows()[i].right).collect();
    let mut cells: Vec<Option<usize>> = kept.iter().map(|&i| f.cells()[i]).collect();
    let n = cells.len();
    if inverse {
        sweep(&rights, &mut cells, 0..n.saturating_sub(1), true);
    } else {
        sweep(&rights, &mut cells, (0..n.saturating_sub(1)).rev(), false);
    }
    let mut out = vec![None; f.cells().len()];
    for (&i, c) in kept.iter().zip(cells) {
        out[i] = c;
    }
    Ok(Filling::new_unchecked(f.shape().clone(), out))
}

/// The bijection on `F(M, s; A)` for a left-aligned stack polyomino `M`
/// sending `maj` to `ne`.
pub fn phi(f: &Filling) -> Result<Filling> {
    transform(f, false)
}

pub fn phi_inverse(f: &Filling) -> Result<Filling> {
    transform(f, true)
}

/// 1-cells with no 1 strictly above and weakly left of them.
pub fn maximal_cells(f: &Filling) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut min_col = usize::MAX;
    for (i, j) in f.ones() {
        if j < min_col {
            out.push((i, j));
            min_col = j;
        }
    }
    out
}

/// Leftmost column right of the maximal cell `c` holding a 1 that forms an
/// NE chain with `c`; `None` when there is none.
pub fn chain_column(f: &Filling, c: (usize, usize)) -> Option<usize> {
    f.ones().filter(|&d| d.1 > c.1 && is_ne_chain(f.shape(), d, c)).map(|d| d.1).min()
}
