//! Words and arc diagrams, their classical statistics, and their encodings
//! as fillings of rectangles and staircase Ferrers diagrams.
//!
//! Word convention: for `w = w_1 ... w_n` over `[m]`, the letter `w_i` is
//! the 1 in row `n - i + 1`, column `m - w_i + 1` of an `n x m` rectangle.
//! Under this encoding descents, major index and inversions of the word are
//! the descents, major index and NE chains of the filling.
//!
//! Arc convention: the staircase of order `n` has columns labelled `1..n-1`
//! left to right and rows labelled `n, n-1, ..., 2` top to bottom; the row
//! labelled `j` has columns `1..j-1`. Arc `(i, j)` is the 1 in column `i` of
//! the row labelled `j`, so NE chains are exactly crossings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::shape::{MoonPolyomino, ShapeClass};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if letters.contains(&0) {
            return Err(Error::Parse("word letters must be positive".into()));
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        *self.0.iter().max().unwrap()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn des_word(w: &[u32]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Sum of the descent positions (1-based).
pub fn maj_word(w: &[u32]) -> usize {
    w.windows(2).enumerate().filter(|(_, p)| p[0] > p[1]).map(|(i, _)| i + 1).sum()
}

pub fn inv_word(w: &[u32]) -> usize {
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

pub fn word_to_filling(w: &Word, alphabet: u32) -> Result<Filling> {
    if let Some(&bad) = w.letters().iter().find(|&&l| l > alphabet) {
        return Err(Error::LetterOutOfRange { letter: bad, alphabet });
    }
    let n = w.len();
    let m = alphabet as usize;
    let mut cells = vec![None; n];
    for (i, &l) in w.letters().iter().enumerate() {
        cells[n - 1 - i] = Some(m - l as usize + 1);
    }
    Filling::new(MoonPolyomino::rectangle(n, m), cells)
}

/// Inverse of [`word_to_filling`]; the filling must be a rectangle with no
/// empty rows.
pub fn filling_to_word(f: &Filling) -> Result<Word> {
    if f.shape().class() != ShapeClass::Rectangle {
        return Err(Error::WrongShapeClass { expected: "rectangle", found: f.shape().class() });
    }
    let n = f.shape().height();
    let m = f.shape().width();
    let letters = (0..n)
        .map(|i| {
            f.one_in_row(n - i)
                .map(|c| (m - c + 1) as u32)
                .ok_or_else(|| Error::Parse(format!("row {} is empty", n - i)))
        })
        .collect::<Result<Vec<_>>>()?;
    Word::new(letters)
}

/// `gamma_a`: cut `w` after every letter on the same side of `a` as the
/// last letter, and move each cut letter to the front of its block.
fn gamma(w: &[u32], a: u32) -> Vec<u32> {
    let Some(&last) = w.last() else {
        return Vec::new();
    };
    let is_cut = |x: u32| if last <= a { x <= a } else { x > a };
    let mut out = Vec::with_capacity(w.len());
    let mut block: Vec<u32> = Vec::new();
    for &x in w {
        if is_cut(x) {
            out.push(x);
            out.append(&mut block);
        } else {
            block.push(x);
        }
    }
    debug_assert!(block.is_empty());
    out
}

/// Foata's second fundamental transformation: `maj(w) = inv(foata_word(w))`.
pub fn foata_word(w: &Word) -> Word {
    let letters = w.letters();
    let mut acc: Vec<u32> = vec![letters[0]];
    for &a in &letters[1..] {
        acc = gamma(&acc, a);
        acc.push(a);
    }
    Word(acc)
}

/// A set of arcs `(i, j)`, `1 <= i < j <= n`, each vertex the right endpoint
/// of at most one arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcDiagram {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl ArcDiagram {
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        arcs.sort_unstable();
        arcs.dedup();
        let mut rights = BTreeSet::new();
        for &(i, j) in &arcs {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::InvalidArcs(format!("arc ({i},{j}) not in 1 <= i < j <= {n}")));
            }
            if !rights.insert(j) {
                return Err(Error::InvalidArcs(format!("vertex {j} ends two arcs")));
            }
        }
        Ok(ArcDiagram { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Each vertex is also the left endpoint of at most one arc.
    pub fn is_set_partition(&self) -> bool {
        let lefts: BTreeSet<usize> = self.arcs.iter().map(|a| a.0).collect();
        lefts.len() == self.arcs.len()
    }

    /// Each vertex lies on at most one arc.
    pub fn is_matching(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.arcs.iter().all(|&(i, j)| seen.insert(i) && seen.insert(j))
    }

    pub fn left_endpoints(&self) -> BTreeSet<usize> {
        self.arcs.iter().map(|a| a.0).collect()
    }

    pub fn right_endpoints(&self) -> BTreeSet<usize> {
        self.arcs.iter().map(|a| a.1).collect()
    }
}

pub fn crossings(d: &ArcDiagram) -> usize {
    count_pairs(d, |(i1, j1), (i2, j2)| i1 < i2 && i2 < j1 && j1 < j2)
}

pub fn nestings(d: &ArcDiagram) -> usize {
    count_pairs(d, |(i1, j1), (i2, j2)| i1 < i2 && j2 < j1)
}

fn count_pairs(d: &ArcDiagram, rel: impl Fn((usize, usize), (usize, usize)) -> bool) -> usize {
    let mut count = 0;
    for &a in &d.arcs {
        for &b in &d.arcs {
            if rel(a, b) {
                count += 1;
            }
        }
    }
    count
}

/// The staircase Ferrers diagram of order `n` (`n >= 2`).
pub fn staircase(n: usize) -> Result<MoonPolyomino> {
    if n < 2 {
        return Err(Error::InvalidArcs("the staircase needs at least 2 vertices".into()));
    }
    MoonPolyomino::left_stack(&(1..n).rev().collect::<Vec<_>>())
}

pub fn partition_to_filling(d: &ArcDiagram) -> Result<Filling> {
    let shape = staircase(d.n)?;
    let mut cells = vec![None; d.n - 1];
    for &(i, j) in &d.arcs {
        cells[d.n - j] = Some(i);
    }
    Filling::new(shape, cells)
}

/// Inverse of [`partition_to_filling`] on staircase fillings.
pub fn filling_to_partition(f: &Filling) -> Result<ArcDiagram> {
    let n = f.shape().height() + 1;
    if *f.shape() != staircase(n)? {
        return Err(Error::WrongShapeClass { expected: "staircase", found: f.shape().class() });
    }
    ArcDiagram::new(n, f.ones().map(|(r, c)| (c, n + 1 - r)).collect())
}

/// Major index of a matching or set partition, from the backward sequence
/// of words attached to the right endpoints.
///
/// Arcs get labels `k, k-1, ..., 1` by increasing left endpoint. With the
/// right endpoints `r_1 > r_2 > ... > r_k`, the first word is the label of
/// the arc ending at `r_1`; the next word drops the labels of arcs starting
/// in `[r_{i+1}, r_i)` and prepends the label of the arc ending at
/// `r_{i+1}`. The result is the total number of descents over all words.
pub fn pmaj(d: &ArcDiagram) -> Result<usize> {
    if !d.is_set_partition() {
        return Err(Error::InvalidArcs("pmaj needs distinct left endpoints".into()));
    }
    let k = d.arcs.len();
    let label: BTreeMap<usize, u32> = d.arcs.iter().enumerate().map(|(idx, &(i, _))| (i, (k - idx) as u32)).collect();
    let mut by_right: Vec<(usize, usize)> = d.arcs.iter().map(|&(i, j)| (j, i)).collect();
    by_right.sort_unstable_by(|a, b| b.cmp(a));
    let mut word: Vec<u32> = Vec::new();
    let mut total = 0;
    let mut prev_right: Option<usize> = None;
    for &(r, l) in &by_right {
        if let Some(pr) = prev_right {
            let dropped: BTreeSet<u32> = d
                .arcs
                .iter()
                .filter(|&&(i, _)| r <= i && i < pr)
                .map(|&(i, _)| label[&i])
                .collect();
            word.retain(|x| !dropped.contains(x));
        }
        word.insert(0, label[&l]);
        total += des_word(&word);
        prev_right = Some(r);
    }
    Ok(total)
}

/// Every matching on `[n]` whose left endpoints are `lefts` and whose right
/// endpoints are `rights`.
pub fn matchings_with_endpoints(n: usize, lefts: &BTreeSet<usize>, rights: &BTreeSet<usize>) -> Result<Vec<ArcDiagram>> {
    if lefts.len() != rights.len() || !lefts.is_disjoint(rights) {
        return Err(Error::InvalidArcs("endpoint sets must be disjoint and of equal size".into()));
    }
    let lefts: Vec<usize> = lefts.iter().copied().collect();
    let rights: Vec<usize> = rights.iter().copied().collect();
    let mut out = Vec::new();
    let mut used = vec![false; rights.len()];
    let mut arcs = Vec::new();
    fn rec(
        idx: usize,
        n: usize,
        lefts: &[usize],
        rights: &[usize],
        used: &mut [bool],
        arcs: &mut Vec<(usize, usize)>,
        out: &mut Vec<ArcDiagram>,
    ) -> Result<()> {
        if idx == lefts.len() {
            out.push(ArcDiagram::new(n, arcs.clone())?);
            return Ok(());
        }
        for (r, &right) in rights.iter().enumerate() {
            if !used[r] && right > lefts[idx] {
                used[r] = true;
                arcs.push((lefts[idx], right));
                rec(idx + 1, n, lefts, rights, used, arcs, out)?;
                arcs.pop();
                used[r] = false;
            }
        }
        Ok(())
    }
    rec(0, n, &lefts, &rights, &mut used, &mut arcs, &mut out)?;
    Ok(out)
}
