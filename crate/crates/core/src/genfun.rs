//! Distribution polynomials of `maj` and `ne` over a filling class, the
//! closed product of Gaussian binomials, and the word-insertion multiset.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::encode::{maj_word, Word};
use crate::error::{Error, Result};
use crate::filling::{for_each_in_class, h_vector, maj_maxrect, ne_count, Filling, FillingClassSpec};
use crate::qpoly::{qbinomial, QPoly};

pub const DEFAULT_MAX_COUNT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Maj,
    Ne,
}

impl Statistic {
    pub fn eval(self, f: &Filling) -> usize {
        match self {
            Statistic::Maj => maj_maxrect(f),
            Statistic::Ne => ne_count(f),
        }
    }
}

/// `{"coeffs": [...], "count": N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    pub coeffs: QPoly,
    pub count: u64,
}

/// `sum q^stat(F)` over the class by exhaustive enumeration, refusing
/// classes larger than `max_count`.
pub fn distribution(spec: &FillingClassSpec, stat: Statistic, max_count: u64) -> Result<Distribution> {
    let mut hist: Vec<u64> = Vec::new();
    let mut count = 0u64;
    let mut over = false;
    for_each_in_class(spec, |cells| {
        count += 1;
        if count > max_count {
            over = true;
            return false;
        }
        let f = Filling::new_unchecked(spec.shape.clone(), cells.to_vec());
        let v = stat.eval(&f);
        if hist.len() <= v {
            hist.resize(v + 1, 0);
        }
        hist[v] += 1;
        true
    });
    if over {
        return Err(Error::TooManyFillings { limit: max_count });
    }
    Ok(Distribution { coeffs: QPoly::from_counts(&hist), count })
}

pub fn maj_distribution(spec: &FillingClassSpec) -> Result<QPoly> {
    Ok(distribution(spec, Statistic::Maj, DEFAULT_MAX_COUNT)?.coeffs)
}

pub fn ne_distribution(spec: &FillingClassSpec) -> Result<QPoly> {
    Ok(distribution(spec, Statistic::Ne, DEFAULT_MAX_COUNT)?.coeffs)
}

/// `prod_i [h_i choose s_i]_q`.
pub fn product_formula(spec: &FillingClassSpec) -> QPoly {
    h_vector(spec)
        .iter()
        .zip(&spec.s)
        .map(|(&h, &s)| qbinomial(h, s as i64))
        .product()
}

/// Multiset `{maj(w') - maj(w)}` over all ways of inserting `copies` copies of
/// `letter` into `w`, as a map value -> multiplicity. The letter must be
/// larger than every letter of `w` or smaller than every letter of `w`.
pub fn insertion_multiset(w: &Word, letter: u32, copies: usize) -> Result<BTreeMap<usize, u64>> {
    let letters = w.letters();
    if !letters.iter().all(|&l| l < letter) && !letters.iter().all(|&l| l > letter) {
        return Err(Error::LetterInsideRange { letter });
    }
    let base = maj_word(letters);
    let k = letters.len();
    let mut out = BTreeMap::new();
    // gaps[g] = copies placed before letters[g] (g = k: at the end)
    let mut gaps = vec![0usize; k + 1];
    fn rec(
        gap: usize,
        left: usize,
        gaps: &mut Vec<usize>,
        letters: &[u32],
        letter: u32,
        base: usize,
        out: &mut BTreeMap<usize, u64>,
    ) {
        let k = letters.len();
        if gap == k {
            gaps[k] = left;
            let mut word = Vec::with_capacity(k + gaps.iter().sum::<usize>());
            for g in 0..=k {
                word.extend(std::iter::repeat_n(letter, gaps[g]));
                if g < k {
                    word.push(letters[g]);
                }
            }
            *out.entry(maj_word(&word) - base).or_insert(0) += 1;
            return;
        }
        for c in 0..=left {
            gaps[gap] = c;
            rec(gap + 1, left - c, gaps, letters, letter, base, out);
        }
    }
    rec(0, copies, &mut gaps, letters, letter, base, &mut out);
    Ok(out)
}

/// Whether two classes whose shapes differ by a column permutation have the
/// same maj distribution. Errors unless the columns, with their sums, are a
/// rearrangement of each other and `A` agrees.
pub fn check_column_permutation_invariance(a: &FillingClassSpec, b: &FillingClassSpec) -> Result<bool> {
    if a.empty_rows != b.empty_rows {
        return Err(Error::ColumnMismatch("empty-row sets differ".into()));
    }
    let key = |spec: &FillingClassSpec| {
        let mut cols: Vec<((usize, usize), usize)> = spec.shape.columns().into_iter().zip(spec.s.iter().copied()).collect();
        cols.sort();
        cols
    };
    if key(a) != key(b) {
        return Err(Error::ColumnMismatch("column multisets with sums differ".into()));
    }
    Ok(maj_distribution(a)? == maj_distribution(b)?)
}
