//! Seeded randomized checks of the main identities, reporting the first
//! counterexample found. Every run is a pure function of its parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::encode::{crossings, matchings_with_endpoints, maj_word, pmaj, ArcDiagram, Word};
use crate::error::{Error, Result};
use crate::filling::{maj, ne_count, FillingClassSpec};
use crate::foata::{phi, phi_inverse};
use crate::gen::{random_class, random_filling, random_shape, ShapeFamily};
use crate::genfun::{
    check_column_permutation_invariance, distribution, insertion_multiset, product_formula, Statistic,
    DEFAULT_MAX_COUNT,
};
use crate::qpoly::{qbinomial, QPoly};
use crate::rearrange::{psi, psi_inverse};
use crate::shape::MoonPolyomino;

pub const MAX_COLUMNS: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// maj distribution equals the Gaussian product.
    MajProduct,
    /// maj distribution is invariant under column permutations.
    ColumnPermutation,
    /// ne distribution equals the Gaussian product.
    NeProduct,
    /// maj and ne are equidistributed.
    MajNe,
    /// `phi` sends maj to ne on left-aligned stacks.
    Phi,
    /// `psi` sends maj to ne on moon polyominoes.
    Psi,
    /// Inserting copies of an extreme letter shifts maj by partitions.
    Insertion,
    /// pmaj and crossings are equidistributed for fixed endpoints.
    Pmaj,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::MajProduct,
        Identity::ColumnPermutation,
        Identity::NeProduct,
        Identity::MajNe,
        Identity::Phi,
        Identity::Psi,
        Identity::Insertion,
        Identity::Pmaj,
    ];

    /// Accepted command-line spellings; the first is the short token.
    pub fn names(self) -> &'static [&'static str] {
        match self {
            Identity::MajProduct => &["4.1", "maj-product"],
            Identity::ColumnPermutation => &["4.3", "column-permutation"],
            Identity::NeProduct => &["4.4", "ne-product"],
            Identity::MajNe => &["4.5", "maj-ne"],
            Identity::Phi => &["5.7", "phi"],
            Identity::Psi => &["5.11", "psi"],
            Identity::Insertion => &["lemma4.6", "insertion"],
            Identity::Pmaj => &["pmaj"],
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.names()[0])
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|t| t.names().contains(&s))
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub theorem: String,
    pub trials: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Copy, Debug)]
pub struct Params {
    pub seed: u64,
    pub trials: usize,
    pub max_cells: usize,
}

/// `Ok(None)` when the trial passed, `Ok(Some(witness))` when it failed.
type Trial = Result<Option<Value>>;

pub fn run(identity: Identity, params: Params) -> Result<Report> {
    if params.max_cells == 0 {
        return Err(Error::Parse("max-cells must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..params.trials {
        let outcome = match identity {
            Identity::MajProduct => product_trial(&mut rng, params.max_cells, Statistic::Maj)?,
            Identity::NeProduct => product_trial(&mut rng, params.max_cells, Statistic::Ne)?,
            Identity::MajNe => maj_ne_trial(&mut rng, params.max_cells)?,
            Identity::ColumnPermutation => column_permutation_trial(&mut rng, params.max_cells)?,
            Identity::Phi => phi_trial(&mut rng, params.max_cells)?,
            Identity::Psi => psi_trial(&mut rng, params.max_cells)?,
            Identity::Insertion => insertion_trial(&mut rng)?,
            Identity::Pmaj => pmaj_trial(&mut rng)?,
        };
        if let Some(witness) = outcome {
            return Ok(Report {
                theorem: identity.to_string(),
                trials: params.trials,
                status: Status::Counterexample,
                counterexample: Some(witness),
            });
        }
    }
    Ok(Report { theorem: identity.to_string(), trials: params.trials, status: Status::Verified, counterexample: None })
}

fn random_spec<R: Rng>(rng: &mut R, max_cells: usize) -> FillingClassSpec {
    let shape = random_shape(rng, ShapeFamily::Any, max_cells, MAX_COLUMNS);
    random_class(rng, &shape)
}

fn product_trial<R: Rng>(rng: &mut R, max_cells: usize, stat: Statistic) -> Trial {
    let spec = random_spec(rng, max_cells);
    let got = distribution(&spec, stat, DEFAULT_MAX_COUNT)?.coeffs;
    let want = product_formula(&spec);
    Ok((got != want).then(|| json!({ "spec": spec, "distribution": got, "product": want })))
}

fn maj_ne_trial<R: Rng>(rng: &mut R, max_cells: usize) -> Trial {
    let spec = random_spec(rng, max_cells);
    let a = distribution(&spec, Statistic::Maj, DEFAULT_MAX_COUNT)?.coeffs;
    let b = distribution(&spec, Statistic::Ne, DEFAULT_MAX_COUNT)?.coeffs;
    Ok((a != b).then(|| json!({ "spec": spec, "maj": a, "ne": b })))
}

/// A random spec together with one obtained by permuting its columns so
/// that the result is again a moon polyomino.
pub fn random_permuted_pair<R: Rng>(rng: &mut R, max_cells: usize) -> (FillingClassSpec, FillingClassSpec) {
    let spec = random_spec(rng, max_cells);
    let cols = spec.shape.columns();
    let m = cols.len();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut chosen = None;
    for _ in 0..30 {
        perm.shuffle(rng);
        let permuted: Vec<(usize, usize)> = perm.iter().map(|&j| cols[j]).collect();
        if let Ok(shape) = MoonPolyomino::from_columns(&permuted) {
            chosen = Some((shape, perm.clone()));
            if perm.iter().enumerate().any(|(i, &j)| i != j) {
                break;
            }
        }
    }
    let (shape, perm) = chosen.unwrap_or_else(|| (spec.shape.mirrored(), (0..m).rev().collect()));
    let s = perm.iter().map(|&j| spec.s[j]).collect();
    let other = FillingClassSpec::new(shape, s, spec.empty_rows.clone()).expect("permuted spec stays feasible");
    (spec, other)
}

fn column_permutation_trial<R: Rng>(rng: &mut R, max_cells: usize) -> Trial {
    let (a, b) = random_permuted_pair(rng, max_cells);
    Ok((!check_column_permutation_invariance(&a, &b)?).then(|| json!({ "spec": a, "permuted": b })))
}

fn phi_trial<R: Rng>(rng: &mut R, max_cells: usize) -> Trial {
    let shape = random_shape(rng, ShapeFamily::LeftStack, max_cells, MAX_COLUMNS);
    let p = rng.gen_range(0.0..0.4);
    let f = random_filling(rng, &shape, p);
    let g = phi(&f)?;
    let ok = maj(&f) == ne_count(&g) && g.class_spec() == f.class_spec() && phi_inverse(&g)? == f;
    Ok((!ok).then(|| json!({ "filling": f, "image": g, "maj": maj(&f), "ne": ne_count(&g) })))
}

fn psi_trial<R: Rng>(rng: &mut R, max_cells: usize) -> Trial {
    let shape = random_shape(rng, ShapeFamily::Any, max_cells, MAX_COLUMNS);
    let p = rng.gen_range(0.0..0.4);
    let f = random_filling(rng, &shape, p);
    let g = psi(&f);
    let ok = maj(&f) == ne_count(&g) && g.class_spec() == f.class_spec() && psi_inverse(&g) == f;
    Ok((!ok).then(|| json!({ "filling": f, "image": g, "maj": maj(&f), "ne": ne_count(&g) })))
}

/// Multiset of `i_1 + ... + i_m` over `0 <= i_1 <= ... <= i_m <= k`.
pub fn partition_sums(k: usize, m: usize) -> BTreeMap<usize, u64> {
    fn rec(left: usize, lo: usize, k: usize, sum: usize, out: &mut BTreeMap<usize, u64>) {
        if left == 0 {
            *out.entry(sum).or_insert(0) += 1;
            return;
        }
        for i in lo..=k {
            rec(left - 1, i, k, sum + i, out);
        }
    }
    let mut out = BTreeMap::new();
    rec(m, 0, k, 0, &mut out);
    out
}

/// Checks one word: the insertion multiset against [`partition_sums`], and
/// its generating function against `q^maj(w) [k+m choose m]`.
pub fn check_insertion(w: &Word, letter: u32, copies: usize) -> Result<bool> {
    let got = insertion_multiset(w, letter, copies)?;
    let k = w.len();
    let base = maj_word(w.letters());
    let mut counts = vec![0u64; got.keys().max().map_or(0, |&v| v + 1)];
    for (&v, &c) in &got {
        counts[v] = c;
    }
    let genfun = QPoly::from_counts(&counts).shift(base);
    let want = qbinomial((k + copies) as i64, copies as i64).shift(base);
    Ok(got == partition_sums(k, copies) && genfun == want)
}

fn insertion_trial<R: Rng>(rng: &mut R) -> Trial {
    let n: u32 = rng.gen_range(2..=5);
    let k = rng.gen_range(1..=5);
    let letters: Vec<u32> = (0..k).map(|_| rng.gen_range(1..n)).collect();
    let copies = rng.gen_range(0..=3);
    let w = Word::new(letters)?;
    Ok((!check_insertion(&w, n, copies)?).then(|| json!({ "word": w, "letter": n, "copies": copies })))
}

/// Whether pmaj and crossings have the same distribution over all matchings
/// sharing the endpoint sets of `d`.
pub fn check_pmaj(d: &ArcDiagram) -> Result<bool> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for e in matchings_with_endpoints(d.n(), &d.left_endpoints(), &d.right_endpoints())? {
        a.push(pmaj(&e)?);
        b.push(crossings(&e));
    }
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

fn pmaj_trial<R: Rng>(rng: &mut R) -> Trial {
    let n = rng.gen_range(2..=10);
    let mut vertices: Vec<usize> = (1..=n).collect();
    vertices.shuffle(rng);
    let arcs_n = rng.gen_range(1..=(n / 2).min(5));
    let mut arcs = Vec::new();
    for pair in vertices.chunks(2).take(arcs_n) {
        arcs.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
    }
    let d = ArcDiagram::new(n, arcs)?;
    debug_assert!(d.is_matching());
    Ok((!check_pmaj(&d)?).then(|| json!({ "arcs": d })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for t in Identity::ALL {
            for name in t.names() {
                assert_eq!(name.parse::<Identity>().unwrap(), t);
            }
        }
        assert!("9.9".parse::<Identity>().is_err());
    }

    #[test]
    fn partition_sums_examples() {
        assert_eq!(partition_sums(2, 1), BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(partition_sums(3, 0), BTreeMap::from([(0, 1)]));
        // [4 choose 2] = 1 + q + 2q^2 + q^3 + q^4
        assert_eq!(partition_sums(2, 2), BTreeMap::from([(0, 1), (1, 1), (2, 2), (3, 1), (4, 1)]));
    }

    #[test]
    fn every_identity_verifies_briefly() {
        for t in Identity::ALL {
            let report = run(t, Params { seed: 7, trials: 15, max_cells: 10 }).unwrap();
            assert_eq!(report.status, Status::Verified, "{t}: {:?}", report.counterexample);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let p = Params { seed: 11, trials: 10, max_cells: 9 };
        assert_eq!(run(Identity::Psi, p).unwrap(), run(Identity::Psi, p).unwrap());
        let json = serde_json::to_string(&run(Identity::Pmaj, p).unwrap()).unwrap();
        assert_eq!(json, r#"{"theorem":"pmaj","trials":10,"status":"verified"}"#);
    }

    #[test]
    fn permuted_pairs_are_column_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let (a, b) = random_permuted_pair(&mut rng, 12);
            assert!(check_column_permutation_invariance(&a, &b).unwrap());
        }
    }
}
