//! Rearranging a moon polyomino into the left-aligned stack with the same
//! row lengths, and the two filling maps that ride along: `f` keeps `maj`,
//! `g` keeps `ne`. Together with `phi` they give `psi = g^-1 . phi . f`, a
//! bijection on `F(M, s; A)` with `maj(F) = ne(psi(F))` for every moon
//! polyomino `M`.
//!
//! Each step of `alpha` takes the rectangle `rows(c_1) x [1, w]`, where
//! `c_1` is the leftmost column and `w` is as large as possible, and moves
//! `c_1` to the right end of it. Rows outside the rectangle lie in columns
//! `2..=w` and slide one column left.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::foata::{phi, phi_inverse};
use crate::shape::{MoonPolyomino, Rect, RowInterval, ShapeClass};

/// One step of `alpha`: `rect` (in the coordinates before the step) has its
/// first column moved to its last column. `moved_column` is the label of
/// that column in the original shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub rect: Rect,
    pub moved_column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alpha {
    pub source: MoonPolyomino,
    pub target: MoonPolyomino,
    pub moves: Vec<Move>,
    /// Column `j` of the target is column `permutation[j - 1]` of the source.
    pub permutation: Vec<usize>,
}

fn move_shape(shape: &MoonPolyomino, rect: &Rect, forward: bool) -> MoonPolyomino {
    let rows = shape
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let i = i + 1;
            if rect.top <= i && i <= rect.bottom {
                *r
            } else if forward {
                RowInterval::new(r.left - 1, r.right - 1)
            } else {
                RowInterval::new(r.left + 1, r.right + 1)
            }
        })
        .collect();
    MoonPolyomino::new(rows).expect("column move keeps a moon polyomino")
}

pub fn alpha(m: &MoonPolyomino) -> Alpha {
    let mut shape = m.clone();
    let mut moves = Vec::new();
    let mut permutation: Vec<usize> = (1..=m.width()).collect();
    while !shape.is_left_aligned() {
        let (top, bottom) = shape.column_span(1);
        let w = (top..=bottom).map(|i| shape.row(i).right).min().unwrap();
        assert!(w >= 2, "a shape that is not left-aligned has a rectangle of width at least 2");
        let rect = Rect::new(top, bottom, 1, w);
        moves.push(Move { rect, moved_column: permutation[0] });
        permutation[..w].rotate_left(1);
        shape = move_shape(&shape, &rect, true);
    }
    let lengths = shape.column_lengths();
    assert!(lengths.windows(2).all(|p| p[0] >= p[1]));
    Alpha { source: m.clone(), target: shape, moves, permutation }
}

/// Replays the moves on the cells, transforming each moved rectangle with
/// `step(local cells, width)`. Local cells are `Some(c)` only for `c <= w`.
fn replay(
    cells: &mut [Option<usize>],
    moves: &[Move],
    forward: bool,
    step: impl Fn(&[Option<usize>], usize) -> Vec<Option<usize>>,
) {
    let mut apply = |mv: &Move| {
        let Rect { top, bottom, right: w, .. } = mv.rect;
        let local: Vec<Option<usize>> = cells[top - 1..bottom].iter().map(|c| c.filter(|&c| c <= w)).collect();
        let out = step(&local, w);
        for (i, c) in cells.iter_mut().enumerate() {
            let row = i + 1;
            if top <= row && row <= bottom {
                if let Some(new) = out[row - top] {
                    *c = Some(new);
                }
            } else if let Some(col) = c.as_mut() {
                if forward {
                    *col -= 1;
                } else {
                    *col += 1;
                }
            }
        }
    };
    if forward {
        moves.iter().for_each(&mut apply);
    } else {
        moves.iter().rev().for_each(&mut apply);
    }
}

fn rect_filling(f: &Filling) -> Result<(Vec<Option<usize>>, usize)> {
    if f.shape().class() != ShapeClass::Rectangle {
        return Err(Error::WrongShapeClass { expected: "rectangle", found: f.shape().class() });
    }
    Ok((f.cells().to_vec(), f.shape().width()))
}

/// Moves the 1s of `chain` (0-based rows) one step along the chain: each
/// takes the column of the next one, and the last goes to column `last`.
fn shift_chain(cells: &mut [Option<usize>], chain: &[usize], last: usize) {
    for p in 0..chain.len() {
        cells[chain[p]] = Some(match chain.get(p + 1) {
            Some(&next) => cells[next].unwrap(),
            None => last,
        });
    }
}

fn tau_cells(cells: &[Option<usize>], m: usize) -> Vec<Option<usize>> {
    let mut cur = cells.to_vec();
    let last = m + 1;
    let ones: Vec<usize> = (0..cur.len()).filter(|&k| cur[k] == Some(1)).collect();
    for r in (0..ones.len()).rev() {
        let c = ones[r];
        let prev = r.checked_sub(1).map(|p| ones[p]);
        let da = (0..c).rev().find(|&k| cur[k].is_some());
        let db = (c + 1..cur.len()).find(|&k| cur[k].is_some());
        let col = |k: usize, cur: &[Option<usize>]| cur[k].unwrap();
        let above_ok = da.is_none() || da == prev;
        if above_ok && db.is_none() {
            cur[c] = Some(last);
        } else if (above_ok && db.is_some())
            || matches!((da, db), (Some(a), Some(b)) if col(a, &cur) > col(b, &cur))
        {
            let mut chain = vec![c];
            let mut k = c;
            while let Some(next) = (k + 1..cur.len()).find(|&n| cur[n].is_some()) {
                if col(k, &cur) > col(next, &cur) {
                    break;
                }
                chain.push(next);
                k = next;
            }
            shift_chain(&mut cur, &chain, last);
        } else {
            let mut chain = vec![c];
            let mut k = c;
            while let Some(next) = (0..k).rev().find(|&n| cur[n].is_some()) {
                if col(next, &cur) <= col(k, &cur) {
                    break;
                }
                chain.push(next);
                k = next;
            }
            shift_chain(&mut cur, &chain, last);
        }
    }
    cur.iter()
        .map(|c| {
            c.map(|j| {
                debug_assert!(j > 1);
                j - 1
            })
        })
        .collect()
}

fn rotate(cells: &[Option<usize>], m: usize) -> Vec<Option<usize>> {
    cells.iter().rev().map(|c| c.map(|j| m + 1 - j)).collect()
}

fn tau_inverse_cells(cells: &[Option<usize>], m: usize) -> Vec<Option<usize>> {
    rotate(&tau_cells(&rotate(cells, m), m), m)
}

/// Descent-preserving transformation of a rectangular filling that rotates
/// its column sums from `(s_1, ..., s_m)` to `(s_2, ..., s_m, s_1)`.
pub fn tau(r: &Filling) -> Result<Filling> {
    let (cells, m) = rect_filling(r)?;
    Ok(Filling::new_unchecked(r.shape().clone(), tau_cells(&cells, m)))
}

pub fn tau_inverse(r: &Filling) -> Result<Filling> {
    let (cells, m) = rect_filling(r)?;
    Ok(Filling::new_unchecked(r.shape().clone(), tau_inverse_cells(&cells, m)))
}

fn g_cells(cells: &[Option<usize>], w: usize) -> Vec<Option<usize>> {
    let white: Vec<usize> = (0..cells.len()).filter(|&k| cells[k].is_some()).collect();
    let mut ls = Vec::new();
    let mut others = Vec::new();
    for &k in &white {
        match cells[k] {
            Some(1) => ls.push(others.len()),
            Some(c) => others.push(c - 1),
            None => unreachable!(),
        }
    }
    let n = white.len();
    let mut out = vec![None; cells.len()];
    for (i, &l) in ls.iter().enumerate() {
        out[white[n - 1 - (l + i)]] = Some(w);
    }
    let mut rest = others.into_iter();
    for &k in &white {
        if out[k].is_none() {
            out[k] = rest.next();
        }
    }
    out
}

fn g_inverse_cells(cells: &[Option<usize>], w: usize) -> Vec<Option<usize>> {
    let white: Vec<usize> = (0..cells.len()).filter(|&k| cells[k].is_some()).collect();
    let mut ls = Vec::new();
    let mut others = Vec::new();
    for &k in white.iter().rev() {
        match cells[k] {
            Some(c) if c == w => ls.push(others.len()),
            Some(c) => others.push(c + 1),
            None => unreachable!(),
        }
    }
    others.reverse();
    let mut out = vec![None; cells.len()];
    for (i, &l) in ls.iter().enumerate() {
        out[white[l + i]] = Some(1);
    }
    let mut rest = others.into_iter();
    for &k in &white {
        if out[k].is_none() {
            out[k] = rest.next();
        }
    }
    out
}

impl Alpha {
    fn check_source(&self, m: &Filling) -> Result<()> {
        if m.shape() != &self.source {
            return Err(Error::WrongShapeClass { expected: "the plan's source shape", found: m.shape().class() });
        }
        Ok(())
    }

    fn check_target(&self, n: &Filling) -> Result<()> {
        if n.shape() != &self.target {
            return Err(Error::WrongShapeClass { expected: "the plan's target shape", found: n.shape().class() });
        }
        Ok(())
    }

    fn forward(&self, m: &Filling, step: impl Fn(&[Option<usize>], usize) -> Vec<Option<usize>>) -> Result<Filling> {
        self.check_source(m)?;
        let mut cells = m.cells().to_vec();
        replay(&mut cells, &self.moves, true, step);
        Ok(Filling::new_unchecked(self.target.clone(), cells))
    }

    fn backward(&self, n: &Filling, step: impl Fn(&[Option<usize>], usize) -> Vec<Option<usize>>) -> Result<Filling> {
        self.check_target(n)?;
        let mut cells = n.cells().to_vec();
        replay(&mut cells, &self.moves, false, step);
        Ok(Filling::new_unchecked(self.source.clone(), cells))
    }

    /// [`f`] for fillings of the source shape.
    pub fn f(&self, m: &Filling) -> Result<Filling> {
        self.forward(m, tau_cells)
    }

    pub fn f_inverse(&self, n: &Filling) -> Result<Filling> {
        self.backward(n, tau_inverse_cells)
    }

    /// [`g`] for fillings of the source shape.
    pub fn g(&self, m: &Filling) -> Result<Filling> {
        self.forward(m, g_cells)
    }

    pub fn g_inverse(&self, n: &Filling) -> Result<Filling> {
        self.backward(n, g_inverse_cells)
    }

    /// [`psi`] for fillings of the source shape.
    pub fn psi(&self, m: &Filling) -> Result<Filling> {
        self.g_inverse(&phi(&self.f(m)?)?)
    }

    pub fn psi_inverse(&self, m: &Filling) -> Result<Filling> {
        self.f_inverse(&phi_inverse(&self.g(m)?)?)
    }
}

/// Filling of `alpha(M).target` with the same `maj`.
pub fn f(m: &Filling) -> Filling {
    alpha(m.shape()).f(m).expect("plan built from this shape")
}

/// Inverse of [`f`]; `plan` is `alpha` of the original shape.
pub fn f_inverse(n: &Filling, plan: &Alpha) -> Result<Filling> {
    plan.f_inverse(n)
}

/// Filling of `alpha(M).target` with the same `ne`.
pub fn g(m: &Filling) -> Filling {
    alpha(m.shape()).g(m).expect("plan built from this shape")
}

/// Inverse of [`g`]; `plan` is `alpha` of the original shape.
pub fn g_inverse(n: &Filling, plan: &Alpha) -> Result<Filling> {
    plan.g_inverse(n)
}

/// `g^-1 . phi . f`: a bijection on `F(M, s; A)` with `maj(F) = ne(psi(F))`.
pub fn psi(m: &Filling) -> Filling {
    alpha(m.shape()).psi(m).expect("plan built from this shape")
}

pub fn psi_inverse(m: &Filling) -> Filling {
    alpha(m.shape()).psi_inverse(m).expect("plan built from this shape")
}
