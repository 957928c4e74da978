//! Exhaustive and seeded-random generators for moon polyominoes, fillings
//! and filling classes.
//!
//! Every moon polyomino is a chain of distinct row intervals
//! `J_1 ⊋ J_2 ⊋ ... ⊋ J_t` with `J_1 = [1, m]`, laid out unimodally: the
//! copies of `J_1` form a middle block, and each smaller `J_i` contributes
//! `a_i` rows above the block and `b_i` rows below it. The parameters
//! `(J_i, a_i, b_i)` determine the shape uniquely, which is what both
//! generators walk.

use rand::Rng;

use crate::filling::{Filling, FillingClassSpec};
use crate::shape::{MoonPolyomino, RowInterval};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeFamily {
    Any,
    LeftStack,
    TopStack,
    Ferrers,
}

impl ShapeFamily {
    fn left_aligned(self) -> bool {
        matches!(self, ShapeFamily::LeftStack | ShapeFamily::Ferrers)
    }

    /// Top-aligned shapes have the widest block first and nothing above it.
    fn top_aligned(self) -> bool {
        matches!(self, ShapeFamily::TopStack | ShapeFamily::Ferrers)
    }

    pub fn admits(self, shape: &MoonPolyomino) -> bool {
        (!self.left_aligned() || shape.is_left_aligned()) && (!self.top_aligned() || shape.is_top_aligned())
    }
}

fn assemble(widest: RowInterval, middle: usize, layers: &[(RowInterval, usize, usize)]) -> MoonPolyomino {
    let mut rows = Vec::new();
    for &(iv, above, _) in layers.iter().rev() {
        rows.extend(std::iter::repeat_n(iv, above));
    }
    rows.extend(std::iter::repeat_n(widest, middle));
    for &(iv, _, below) in layers {
        rows.extend(std::iter::repeat_n(iv, below));
    }
    MoonPolyomino::new(rows).expect("chain layout is a moon polyomino")
}

/// Every moon polyomino in the family with at most `max_cells` cells, in a
/// fixed deterministic order.
pub fn all_shapes(family: ShapeFamily, max_cells: usize) -> Vec<MoonPolyomino> {
    fn extend(
        family: ShapeFamily,
        widest: RowInterval,
        middle: usize,
        layers: &mut Vec<(RowInterval, usize, usize)>,
        budget: usize,
        out: &mut Vec<MoonPolyomino>,
    ) {
        out.push(assemble(widest, middle, layers));
        let outer = layers.last().map_or(widest, |l| l.0);
        for left in outer.left..=outer.right {
            if family.left_aligned() && left != 1 {
                break;
            }
            for right in left..=outer.right {
                let iv = RowInterval::new(left, right);
                if iv == outer {
                    continue;
                }
                let w = iv.len();
                for total in 1..=budget / w {
                    for above in 0..=total {
                        if family.top_aligned() && above > 0 {
                            break;
                        }
                        layers.push((iv, above, total - above));
                        extend(family, widest, middle, layers, budget - total * w, out);
                        layers.pop();
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for m in 1..=max_cells {
        let widest = RowInterval::new(1, m);
        for middle in 1..=max_cells / m {
            extend(family, widest, middle, &mut Vec::new(), max_cells - middle * m, &mut out);
        }
    }
    out
}

pub fn all_moon_shapes(max_cells: usize) -> Vec<MoonPolyomino> {
    all_shapes(ShapeFamily::Any, max_cells)
}

/// A random shape in the family with at most `max_cells` cells and at most
/// `max_columns` columns.
pub fn random_shape<R: Rng>(rng: &mut R, family: ShapeFamily, max_cells: usize, max_columns: usize) -> MoonPolyomino {
    let m = rng.gen_range(1..=max_columns.min(max_cells).max(1));
    let widest = RowInterval::new(1, m);
    let middle = rng.gen_range(1..=(max_cells / m).clamp(1, 3));
    let mut budget = max_cells - middle * m;
    let mut layers: Vec<(RowInterval, usize, usize)> = Vec::new();
    let mut outer = widest;
    while outer.len() > 1 && budget > 0 && rng.gen_bool(0.75) {
        let left = if family.left_aligned() { 1 } else { rng.gen_range(outer.left..=outer.right) };
        let right_hi = if left == outer.left { outer.right - 1 } else { outer.right };
        if right_hi < left {
            break;
        }
        let right = rng.gen_range(left..=right_hi);
        let iv = RowInterval::new(left, right);
        let w = iv.len();
        if w > budget {
            break;
        }
        let total = rng.gen_range(1..=(budget / w).min(3));
        let above = if family.top_aligned() { 0 } else { rng.gen_range(0..=total) };
        layers.push((iv, above, total - above));
        budget -= total * w;
        outer = iv;
    }
    assemble(widest, middle, &layers)
}

/// A random filling; each row is left empty with probability `p_empty`.
pub fn random_filling<R: Rng>(rng: &mut R, shape: &MoonPolyomino, p_empty: f64) -> Filling {
    let cells = shape
        .rows()
        .iter()
        .map(|iv| (!rng.gen_bool(p_empty)).then(|| rng.gen_range(iv.left..=iv.right)))
        .collect();
    Filling::new_unchecked(shape.clone(), cells)
}

/// A random nonempty class: the class of a random filling.
pub fn random_class<R: Rng>(rng: &mut R, shape: &MoonPolyomino) -> FillingClassSpec {
    let p = rng.gen_range(0.0..0.4);
    random_filling(rng, shape, p).class_spec()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    /// All interval sequences with the given cell budget, filtered through
    /// the validator.
    fn brute_shapes(max_cells: usize) -> HashSet<Vec<RowInterval>> {
        fn rec(rows: &mut Vec<RowInterval>, budget: usize, width: usize, out: &mut HashSet<Vec<RowInterval>>) {
            if !rows.is_empty() {
                if let Ok(s) = MoonPolyomino::new(rows.clone()) {
                    out.insert(s.rows().to_vec());
                }
            }
            for l in 1..=width {
                for r in l..=width {
                    let w = r + 1 - l;
                    if w <= budget {
                        rows.push(RowInterval::new(l, r));
                        rec(rows, budget - w, width, out);
                        rows.pop();
                    }
                }
            }
        }
        let mut out = HashSet::new();
        rec(&mut Vec::new(), max_cells, max_cells, &mut out);
        out
    }

    #[test]
    fn exhaustive_generator_matches_brute_force() {
        let got = all_moon_shapes(6);
        let set: HashSet<Vec<RowInterval>> = got.iter().map(|s| s.rows().to_vec()).collect();
        assert_eq!(set.len(), got.len(), "duplicates");
        assert_eq!(set, brute_shapes(6));
    }

    #[test]
    fn family_generators_are_filters_of_any() {
        let any = all_moon_shapes(8);
        for family in [ShapeFamily::LeftStack, ShapeFamily::TopStack, ShapeFamily::Ferrers] {
            let want: HashSet<_> = any.iter().filter(|s| family.admits(s)).map(|s| s.rows().to_vec()).collect();
            let got: Vec<_> = all_shapes(family, 8);
            assert_eq!(got.len(), want.len(), "{family:?}");
            assert_eq!(got.iter().map(|s| s.rows().to_vec()).collect::<HashSet<_>>(), want);
        }
    }

    #[test]
    fn random_shapes_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for family in [ShapeFamily::Any, ShapeFamily::LeftStack, ShapeFamily::TopStack, ShapeFamily::Ferrers] {
            for _ in 0..300 {
                let s = random_shape(&mut rng, family, 18, 7);
                assert!(s.cell_count() <= 18);
                assert!(s.width() <= 7);
                assert!(family.admits(&s));
            }
        }
    }
}
