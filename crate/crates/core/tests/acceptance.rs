//! Acceptance suite: one PASS/FAIL/SKIP line per criterion, each timed
//! against its budget. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use moonmaj::encode::{
    crossings, filling_to_word, foata_word, maj_word, partition_to_filling, pmaj, word_to_filling, ArcDiagram, Word,
};
use moonmaj::filling::{
    all_fillings, enumerate, h_vector, maj, maj_columns, maj_maxrect, maj_top_stack, ne_count,
};
use moonmaj::foata::{compute_regions, delta_r, gamma_r, phi, phi_inverse};
use moonmaj::gen::{all_moon_shapes, all_shapes, random_class, random_shape, ShapeFamily};
use moonmaj::genfun::{distribution, maj_distribution, ne_distribution, product_formula, Statistic, DEFAULT_MAX_COUNT};
use moonmaj::qpoly::{qbinomial, qmultinomial};
use moonmaj::rearrange::{alpha, tau, tau_inverse};
use moonmaj::shape::validate;
use moonmaj::verify::{check_insertion, random_permuted_pair};
use moonmaj::{Filling, FillingClassSpec, MoonPolyomino, QPoly};

enum Outcome {
    Pass(String),
    Skip(String),
}

type Check = fn() -> Outcome;

/// Two statistic samples per key, compared as multisets.
type Samples<K> = BTreeMap<K, (Vec<usize>, Vec<usize>)>;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

// Oracles written independently of the library.

/// NE chains by checking every pair of 1-cells and every cell of their
/// bounding box.
fn ne_oracle(f: &Filling) -> usize {
    let ones: Vec<(usize, usize)> = f.ones().collect();
    let shape = f.shape();
    let mut n = 0;
    for &(r1, c1) in &ones {
        for &(r2, c2) in &ones {
            if r1 < r2 && c1 > c2 && (r1..=r2).all(|r| (c2..=c1).all(|c| shape.contains(r, c))) {
                n += 1;
            }
        }
    }
    n
}

fn inv_oracle(w: &[u32]) -> usize {
    (0..w.len()).flat_map(|i| (i + 1..w.len()).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count()
}

fn crossings_oracle(arcs: &[(usize, usize)]) -> usize {
    let mut n = 0;
    for &(a, b) in arcs {
        for &(c, d) in arcs {
            if a < c && c < b && b < d {
                n += 1;
            }
        }
    }
    n
}

fn histogram(values: impl IntoIterator<Item = usize>) -> QPoly {
    let mut counts = Vec::new();
    for v in values {
        if counts.len() <= v {
            counts.resize(v + 1, 0u64);
        }
        counts[v] += 1;
    }
    QPoly::from_counts(&counts)
}

/// Distinct rearrangements of the multiset with the given multiplicities of
/// letters `1, 2, ...`.
fn rearrangements(mult: &[usize]) -> Vec<Vec<u32>> {
    fn rec(left: &mut [usize], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i as u32 + 1);
                rec(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut mult.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Multiplicity vectors with all entries positive, at most `parts` entries
/// and total at most `max_total`.
fn multiplicities(parts: usize, max_total: usize) -> Vec<Vec<usize>> {
    fn rec(parts: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == parts {
            return;
        }
        for c in 1..=budget {
            cur.push(c);
            rec(parts, budget - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, max_total, &mut Vec::new(), &mut out);
    out
}

/// Every partial matching on `1..=n` with at most `max_arcs` arcs.
fn matchings(n: usize, max_arcs: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(v: usize, n: usize, used: &mut Vec<bool>, arcs: &mut Vec<(usize, usize)>, max: usize, out: &mut Vec<Vec<(usize, usize)>>) {
        if v > n {
            out.push(arcs.clone());
            return;
        }
        if used[v] {
            return rec(v + 1, n, used, arcs, max, out);
        }
        rec(v + 1, n, used, arcs, max, out);
        if arcs.len() < max {
            for w in v + 1..=n {
                if !used[w] {
                    used[w] = true;
                    arcs.push((v, w));
                    rec(v + 1, n, used, arcs, max, out);
                    arcs.pop();
                    used[w] = false;
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(1, n, &mut vec![false; n + 2], &mut Vec::new(), max_arcs, &mut out);
    out
}

// Criteria.

fn worked_example() -> Outcome {
    let shape = validate(&[(3, 4), (2, 4), (1, 5), (1, 5), (2, 5), (3, 4)]).unwrap();
    let spec = FillingClassSpec::new(shape, vec![1, 0, 2, 1, 1], BTreeSet::from([5])).unwrap();
    let h = h_vector(&spec);
    assert_eq!((h[0], h[4], h[1], h[3], h[2]), (2, 1, 1, 3, 2), "h = {h:?}");
    let all = enumerate(&spec);
    assert_eq!(all.len(), 6);
    let want = QPoly::from_i64s(&[1, 2, 2, 1]);
    assert_eq!(maj_distribution(&spec).unwrap(), want);
    assert_eq!(ne_distribution(&spec).unwrap(), want);
    assert_eq!(product_formula(&spec), want);
    assert_eq!(histogram(all.iter().map(ne_oracle)), want);
    Outcome::Pass("h, 6 fillings, 1+2q+2q^2+q^3".into())
}

fn product_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4d4f4f4e);
    let (mut classes, mut fillings, mut largest) = (0u64, 0u64, 0);
    for _ in 0..500 {
        let shape = random_shape(&mut rng, ShapeFamily::Any, 18, 7);
        assert!(shape.cell_count() <= 18 && shape.width() <= 7);
        largest = largest.max(shape.cell_count());
        let spec = random_class(&mut rng, &shape);
        let m = distribution(&spec, Statistic::Maj, DEFAULT_MAX_COUNT).unwrap();
        let n = distribution(&spec, Statistic::Ne, DEFAULT_MAX_COUNT).unwrap();
        let p = product_formula(&spec);
        assert_eq!(m.coeffs, p, "maj vs product on {spec:?}");
        assert_eq!(n.coeffs, p, "ne vs product on {spec:?}");
        // every other class of the same shape, from one pass over its fillings
        let mut by_class: Samples<(Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for f in all_fillings(&shape) {
            let key = (f.column_sums(), f.empty_rows().into_iter().collect());
            let e = by_class.entry(key).or_default();
            e.0.push(maj(&f));
            e.1.push(ne_oracle(&f));
            fillings += 1;
        }
        for ((s, a), (majs, nes)) in by_class {
            let spec = FillingClassSpec::new(shape.clone(), s, a.into_iter().collect()).unwrap();
            let p = product_formula(&spec);
            assert_eq!(histogram(majs), p, "maj vs product on {spec:?}");
            assert_eq!(histogram(nes), p, "ne vs product on {spec:?}");
            classes += 1;
        }
    }
    Outcome::Pass(format!("500 shapes up to {largest} cells, {classes} classes, {fillings} fillings"))
}

fn column_permutations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let (mut pairs, mut drawn) = (0, 0);
    while pairs < 100 {
        drawn += 1;
        assert!(drawn < 10_000, "too few shapes with a distinct column permutation");
        let (a, b) = random_permuted_pair(&mut rng, 18);
        if a.shape == b.shape {
            continue;
        }
        let (mut ca, mut cb) = (a.shape.column_lengths(), b.shape.column_lengths());
        ca.sort_unstable();
        cb.sort_unstable();
        assert_eq!(ca, cb);
        assert_eq!(maj_distribution(&a).unwrap(), maj_distribution(&b).unwrap(), "{a:?} vs {b:?}");
        pairs += 1;
    }
    Outcome::Pass(format!("100 pairs of distinct shapes ({drawn} drawn)"))
}

fn maj_definitions() -> Outcome {
    let mut count = 0u64;
    for shape in all_moon_shapes(14) {
        let top = shape.is_top_aligned();
        for f in all_fillings(&shape) {
            let a = maj_maxrect(&f);
            assert_eq!(a, maj_columns(&f), "{f:?}");
            if top {
                assert_eq!(a, maj_top_stack(&f).unwrap(), "{f:?}");
            }
            count += 1;
        }
    }
    Outcome::Pass(format!("{count} fillings"))
}

fn phi_bijection() -> Outcome {
    let mut count = 0u64;
    for shape in all_shapes(ShapeFamily::LeftStack, 14) {
        let mut seen = HashSet::new();
        for f in all_fillings(&shape) {
            let g = phi(&f).unwrap();
            assert_eq!(maj(&f), ne_count(&g), "{f:?}");
            assert_eq!(g.column_sums(), f.column_sums());
            assert_eq!(g.empty_rows(), f.empty_rows());
            assert!(seen.insert(g.into_cells()), "phi not injective on {shape:?}");
            count += 1;
        }
    }
    let mut pairs = 0u64;
    for shape in all_shapes(ShapeFamily::Ferrers, 12) {
        for g in all_fillings(&shape) {
            for pivot in 1..=shape.width() {
                assert_eq!(delta_r(&gamma_r(&g, pivot).unwrap(), pivot).unwrap(), g, "pivot {pivot}");
                pairs += 1;
            }
        }
    }
    Outcome::Pass(format!("phi on {count} fillings; delta after gamma on {pairs} (filling, pivot) pairs"))
}

fn chain_delta_law() -> Outcome {
    let mut count = 0u64;
    for shape in all_shapes(ShapeFamily::Ferrers, 12) {
        for g in all_fillings(&shape) {
            for pivot in 1..=shape.width() {
                let ctx = compute_regions(&g, pivot).unwrap();
                let h = gamma_r(&g, pivot).unwrap();
                let left_r1 = ctx.left_cells.iter().filter(|c| ctx.r1.contains(&c.0)).count() as i64;
                let right_r2 = ctx.right_cells.iter().filter(|c| ctx.r2.contains(&c.0)).count() as i64;
                assert_eq!(ne_oracle(&h) as i64 - ne_oracle(&g) as i64, right_r2 - left_r1, "pivot {pivot}: {g:?}");
                count += 1;
            }
        }
    }
    Outcome::Pass(format!("{count} (filling, pivot) pairs"))
}

fn rearrangement_maps() -> Outcome {
    let mut rects = 0u64;
    for h in 1..=5 {
        for m in 1..=4 {
            for r in all_fillings(&MoonPolyomino::rectangle(h, m)) {
                let t = tau(&r).unwrap();
                let descents = |f: &Filling| {
                    let ones: Vec<(usize, usize)> = f.ones().collect();
                    ones.windows(2).filter(|p| p[0].1 > p[1].1).map(|p| p[0].0).collect::<Vec<_>>()
                };
                assert_eq!(descents(&t), descents(&r), "{r:?}");
                assert_eq!(tau_inverse(&t).unwrap(), r);
                rects += 1;
            }
        }
    }
    let mut count = 0u64;
    for shape in all_moon_shapes(14) {
        let plan = alpha(&shape);
        let mut seen = HashSet::new();
        for m in all_fillings(&shape) {
            let fm = plan.f(&m).unwrap();
            assert_eq!(maj(&fm), maj(&m), "f on {m:?}");
            let gm = plan.g(&m).unwrap();
            assert_eq!(ne_count(&gm), ne_count(&m), "g on {m:?}");
            let p = plan.psi(&m).unwrap();
            assert_eq!(ne_count(&p), maj(&m), "psi on {m:?}");
            assert_eq!(p.column_sums(), m.column_sums());
            assert_eq!(p.empty_rows(), m.empty_rows());
            assert!(seen.insert(p.into_cells()), "psi not injective on {shape:?}");
            count += 1;
        }
    }
    Outcome::Pass(format!("tau on {rects} rectangles; f, g, psi on {count} fillings"))
}

fn classical_reductions() -> Outcome {
    let mut words = 0u64;
    for mult in multiplicities(4, 7) {
        let k = mult.len() as u32;
        let all = rearrangements(&mult);
        let want = qmultinomial(&mult);
        assert_eq!(histogram(all.iter().map(|w| inv_oracle(w))), want, "{mult:?}");
        assert_eq!(histogram(all.iter().map(|w| maj_word(w))), want, "{mult:?}");
        let mut rect_route = Vec::with_capacity(all.len());
        for letters in &all {
            let w = Word::new(letters.clone()).unwrap();
            let f = word_to_filling(&w, k).unwrap();
            rect_route.push(maj(&f));
            let fw = foata_word(&w);
            assert_eq!(maj_word(letters), inv_oracle(fw.letters()), "{w}");
            assert_eq!(letters.last(), fw.letters().last());
            let g = phi(&f).unwrap();
            assert_eq!(filling_to_word(&g).unwrap(), fw, "{w}");
            words += 1;
        }
        assert_eq!(histogram(rect_route), want, "{mult:?}");
    }
    Outcome::Pass(format!("{words} words"))
}

fn insertion_lemma() -> Outcome {
    let mut count = 0u64;
    for n in 2..=5u32 {
        for len in 1..=5 {
            let mut word = vec![1u32; len];
            loop {
                let w = Word::new(word.clone()).unwrap();
                for copies in 0..=3 {
                    assert!(check_insertion(&w, n, copies).unwrap(), "{w} + {copies} x {n}");
                    count += 1;
                }
                let Some(i) = (0..len).rev().find(|&i| word[i] + 1 < n) else { break };
                word[i] += 1;
                word[i + 1..].iter_mut().for_each(|x| *x = 1);
            }
        }
    }
    // spot check of the closed form used by the library
    assert_eq!(qbinomial(4, 2), QPoly::from_i64s(&[1, 1, 2, 1, 1]));
    Outcome::Pass(format!("{count} (word, copies) cases"))
}

fn pmaj_and_crossings() -> Outcome {
    let mut groups: Samples<(usize, Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for n in 2..=10 {
        for arcs in matchings(n, 5) {
            if arcs.is_empty() {
                continue;
            }
            let d = ArcDiagram::new(n, arcs.clone()).unwrap();
            let lefts = arcs.iter().map(|a| a.0).collect::<BTreeSet<_>>().into_iter().collect();
            let rights = arcs.iter().map(|a| a.1).collect::<BTreeSet<_>>().into_iter().collect();
            let e = groups.entry((n, lefts, rights)).or_default();
            e.0.push(pmaj(&d).unwrap());
            e.1.push(crossings_oracle(&arcs));
        }
    }
    for (key, (mut a, mut b)) in groups.clone() {
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "endpoint sets {key:?}");
    }
    let mut diagrams = 0u64;
    for n in 2..=8 {
        for arcs in matchings(n, n / 2) {
            let d = ArcDiagram::new(n, arcs.clone()).unwrap();
            let c = crossings_oracle(&arcs);
            assert_eq!(crossings(&d), c);
            assert_eq!(ne_count(&partition_to_filling(&d).unwrap()), c, "{arcs:?}");
            diagrams += 1;
        }
    }
    Outcome::Pass(format!("{} endpoint classes; {diagrams} matchings on <= 8 vertices", groups.len()))
}

/// A transcribed figure: a filling plus whatever the figure shows about it.
#[derive(Deserialize)]
struct Fixture {
    filling: Filling,
    ne: Option<usize>,
    maj: Option<usize>,
    phi: Option<Filling>,
    tau: Option<Filling>,
    g: Option<Filling>,
}

fn figure_fixtures() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut paths: Vec<_> = match std::fs::read_dir(&dir) {
        Ok(entries) => entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect(),
        Err(_) => Vec::new(),
    };
    if paths.is_empty() {
        return Outcome::Skip(format!("no figure fixtures in {}", dir.display()));
    }
    paths.sort();
    for path in &paths {
        let text = std::fs::read_to_string(path).unwrap();
        let fx: Fixture = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let name = path.display();
        if let Some(v) = fx.ne {
            assert_eq!(ne_count(&fx.filling), v, "{name}");
        }
        if let Some(v) = fx.maj {
            assert_eq!(maj(&fx.filling), v, "{name}");
        }
        if let Some(want) = &fx.phi {
            assert_eq!(&phi(&fx.filling).unwrap(), want, "{name}");
            assert_eq!(phi_inverse(want).unwrap(), fx.filling, "{name}");
        }
        if let Some(want) = &fx.tau {
            assert_eq!(&tau(&fx.filling).unwrap(), want, "{name}");
        }
        if let Some(want) = &fx.g {
            assert_eq!(&alpha(fx.filling.shape()).g(&fx.filling).unwrap(), want, "{name}");
        }
    }
    Outcome::Pass(format!("{} fixtures", paths.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Option<Duration>); 11] = [
        ("1 worked example", worked_example, Some(secs(1))),
        ("2 maj = ne = product on random classes", product_suite, Some(secs(120))),
        ("3 column permutation invariance", column_permutations, Some(secs(60))),
        ("4 equivalent maj definitions", maj_definitions, Some(secs(120))),
        ("5 phi bijection and delta after gamma", phi_bijection, Some(secs(300))),
        ("6 chain delta law", chain_delta_law, None),
        ("7 tau, f, g, psi", rearrangement_maps, Some(secs(300))),
        ("8 MacMahon and Foata on words", classical_reductions, Some(secs(120))),
        ("9 insertion lemma", insertion_lemma, None),
        ("10 pmaj and crossings", pmaj_and_crossings, Some(secs(60))),
        ("11 figure fixtures", figure_fixtures, None),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let took = start.elapsed();
        let line = match outcome {
            Ok(Outcome::Skip(why)) => format!("SKIP {name}: {why}"),
            Ok(Outcome::Pass(detail)) => match budget {
                Some(b) if took > b => {
                    failed += 1;
                    format!("FAIL {name}: {detail}, but took {took:.2?} > {b:?}")
                }
                _ => format!("PASS {name}: {detail} ({took:.2?})"),
            },
            Err(_) => {
                failed += 1;
                format!("FAIL {name} ({took:.2?})")
            }
        };
        println!("{line}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
