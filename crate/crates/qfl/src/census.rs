//! Closed-form counts, generating series, and the named verification
//! suites behind the CLI's `verify` command.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::forest::{
    enumerate_bnfor, enumerate_ltforest, enumerate_normal_forms, enumerate_plain_forests,
    enumerate_trees, enumerate_zigzag, forest_for_nc, forest_to_pair, pair_to_forest,
    word_to_string, BnForest, Letter,
};
use crate::geom::{
    cell_membership, chart_weights, facet_holds, in_qfl, is_simple_cone, moment_edge_pairs,
    moment_vertices, perturb_step, pivot_perm, plucker_support, random_flag, related_premise,
    root_parallel, same_flag_except, sample_orbit_point, tree_facets,
};
use crate::gkm::{
    build_nc_gkm, class_from_poly, expand_in_flowup, flowup_class, flowup_diagonal, is_gkm_class,
    GkmClass,
};
use crate::permnc::{all_perms, bruhat_leq, enumerate_nc, enumerate_nc_by_filter, kreweras_leq, Perm};
use crate::polyalg::eqsym::{expand_forest_basis, graham_positivity, ideal_member, Positivity};
use crate::polyalg::forestpoly::{forest_poly, specialize_t_zero, truncate_vars};
use crate::polyalg::linalg::{rat, Eliminator};
use crate::polyalg::mpoly::Expo;
use crate::polyalg::ops::{ev, localization_functional};
use crate::polyalg::schubert::schubert_double;
use crate::polyalg::MPoly;

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// (2n - 1)!!, the number of building words of length n using no RPlus
/// letter: step k chooses among k RMinus and k - 1 E letters.
pub fn double_factorial_odd(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=n {
        acc *= BigInt::from(2 * i - 1);
    }
    acc
}

/// Plain forests on n leaves with k internal nodes:
/// ((n - k) / (n + k)) C(n + k, k).
pub fn plain_forest_count(n: usize, k: usize) -> BigInt {
    if k >= n {
        return BigInt::zero();
    }
    BigInt::from(n - k) * binomial(n + k, k) / BigInt::from(n + k)
}

/// Normal forms on n leaves with k black nodes:
/// (1 / n) C(2n, n - k - 1) C(n + k - 1, k).
pub fn normal_form_count(n: usize, k: usize) -> BigInt {
    if n == 0 || k >= n {
        return BigInt::zero();
    }
    binomial(2 * n, n - k - 1) * binomial(n + k - 1, k) / BigInt::from(n)
}

/// Building words of length n: the k-th letter has 3k - 2 choices.
pub fn word_count(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 1..=n {
        acc *= BigInt::from(3 * k - 2);
    }
    acc
}

/// Large Schröder numbers 1, 2, 6, 22, 90, 394, ...
pub fn schroder(n: usize) -> BigInt {
    let mut s: Vec<BigInt> = vec![BigInt::one()];
    for m in 0..n {
        let mut next = s[m].clone();
        for k in 0..=m {
            next += &s[k] * &s[m - k];
        }
        s.push(next);
    }
    s[n].clone()
}

/// Polynomials in the black-count marker, lowest degree first.
pub type UPoly = Vec<BigInt>;

fn up_trim(a: &mut UPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn up_add_assign(a: &mut UPoly, b: &UPoly) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (i, v) in b.iter().enumerate() {
        a[i] += v;
    }
    up_trim(a);
}

fn up_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    up_trim(&mut out);
    out
}

fn up_eval_one(a: &UPoly) -> BigInt {
    a.iter().sum()
}

/// g_n counts normal forms on n leaves by black nodes:
/// g_0 = 1 and g_n = sum_{a+b=n-1} g_a g_b + u sum_{a+b=n, a,b>=1} g_a g_b.
pub fn normal_forest_series(nmax: usize) -> Vec<UPoly> {
    let mut g: Vec<UPoly> = vec![vec![BigInt::one()]];
    for n in 1..=nmax {
        let mut acc: UPoly = Vec::new();
        for a in 0..n {
            let term = up_mul(&g[a], &g[n - 1 - a]);
            up_add_assign(&mut acc, &term);
        }
        let mut black: UPoly = Vec::new();
        for a in 1..n {
            let term = up_mul(&g[a], &g[n - a]);
            up_add_assign(&mut black, &term);
        }
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(black);
        up_add_assign(&mut acc, &shifted);
        g.push(acc);
    }
    g
}

/// h_n counts normal-form trees on n leaves by black nodes:
/// h_0 = 1 and h_n = h_{n-1} + u sum_{a+b=n, a,b>=1} h_a h_b.
pub fn normal_tree_series(nmax: usize) -> Vec<UPoly> {
    let mut h: Vec<UPoly> = vec![vec![BigInt::one()]];
    for n in 1..=nmax {
        let mut acc = h[n - 1].clone();
        let mut black: UPoly = Vec::new();
        for a in 1..n {
            let term = up_mul(&h[a], &h[n - a]);
            up_add_assign(&mut black, &term);
        }
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(black);
        up_add_assign(&mut acc, &shifted);
        h.push(acc);
    }
    h
}

fn zseries_mul(a: &[UPoly], b: &[UPoly], nmax: usize) -> Vec<UPoly> {
    let mut out = vec![Vec::new(); nmax + 1];
    for i in 0..=nmax {
        for j in 0..=nmax - i {
            if a[i].is_empty() || b[j].is_empty() {
                continue;
            }
            let prod = up_mul(&a[i], &b[j]);
            up_add_assign(&mut out[i + j], &prod);
        }
    }
    out
}

/// Substitutes w = z g(z) into the tree series; the result reproduces the
/// forest series order by order.
pub fn tree_substitution(nmax: usize) -> Vec<UPoly> {
    let g = normal_forest_series(nmax);
    let h = normal_tree_series(nmax);
    let mut w: Vec<UPoly> = vec![Vec::new(); nmax + 1];
    for m in 1..=nmax {
        w[m] = g[m - 1].clone();
    }
    let mut out: Vec<UPoly> = vec![Vec::new(); nmax + 1];
    out[0] = vec![BigInt::one()];
    let mut wpow = w.clone();
    for j in 1..=nmax {
        for m in 0..=nmax {
            if wpow[m].is_empty() {
                continue;
            }
            let term = up_mul(&h[j], &wpow[m]);
            up_add_assign(&mut out[m], &term);
        }
        if j < nmax {
            wpow = zseries_mul(&wpow, &w, nmax);
        }
    }
    out
}

/// Coefficients in q of sum_k f_{n,k} (q - 1)^k.
pub fn forest_count_q(n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n.max(1)];
    for k in 0..n {
        let f = normal_form_count(n, k);
        for j in 0..=k {
            let term = &f * binomial(k, j);
            if (k - j) % 2 == 0 {
                out[j] += term;
            } else {
                out[j] -= term;
            }
        }
    }
    out
}

/// The q-count of normal forms refines the plain forest count:
/// sum_k c_{n,k} q^k = sum_k f_{n,k} (q - 1)^k.
pub fn fq_matches(n: usize) -> bool {
    forest_count_q(n)
        .iter()
        .enumerate()
        .all(|(k, v)| *v == plain_forest_count(n, k))
}

/// prod_{k=1}^{n} (k + (k - 1) t), the E-count generating polynomial over
/// building words of length n using no RPlus letter.
pub fn rplus_free_word_product(n: usize) -> UPoly {
    let mut out = vec![BigInt::one()];
    for k in 1..=n {
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i] += c * BigInt::from(k);
            next[i + 1] += c * BigInt::from(k - 1);
        }
        up_trim(&mut next);
        out = next;
    }
    out
}

/// Black-node census of bicolored nested forests on n leaves. A forest is
/// a noncrossing partition with a binary tree per block and freely colored
/// nodes, so a block of size c weighs Catalan(c-1) (1 + t)^{c-1}.
pub fn bnfor_black_census(n: usize) -> UPoly {
    let mut counts: Vec<UPoly> = vec![vec![BigInt::one()]];
    for m in 1..=n {
        // gaps[c][r]: censuses of c independent gaps holding r leaves total;
        // the block through the smallest leaf leaves exactly its size in gaps
        let mut gaps: Vec<Vec<UPoly>> = vec![vec![Vec::new(); m + 1]; m + 1];
        gaps[0][0] = vec![BigInt::one()];
        for cc in 1..=m {
            for r in 0..=m - cc {
                let mut acc: UPoly = Vec::new();
                for j in 0..=r {
                    if gaps[cc - 1][r - j].is_empty() {
                        continue;
                    }
                    let term = up_mul(&counts[j], &gaps[cc - 1][r - j]);
                    up_add_assign(&mut acc, &term);
                }
                gaps[cc][r] = acc;
            }
        }
        let mut total: UPoly = Vec::new();
        for csize in 1..=m {
            let cat = catalan(csize - 1);
            let mut weight: UPoly = (0..csize).map(|i| &cat * binomial(csize - 1, i)).collect();
            up_trim(&mut weight);
            let term = up_mul(&weight, &gaps[csize][m - csize]);
            up_add_assign(&mut total, &term);
        }
        counts.push(total);
    }
    counts.swap_remove(n)
}

type RPoly = Vec<BigRational>;

fn rp_trim(a: &mut RPoly) {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
}

fn rp_mul(a: &[BigRational], b: &[BigRational]) -> RPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rp_trim(&mut out);
    out
}

fn rp_sub_assign(a: &mut RPoly, b: &[BigRational]) {
    if a.len() < b.len() {
        a.resize(b.len(), BigRational::zero());
    }
    for (i, v) in b.iter().enumerate() {
        a[i] -= v;
    }
    rp_trim(a);
}

/// Square root of a z-series with coefficients in Q[u] and constant term 1.
fn series_sqrt(s: &[RPoly], nmax: usize) -> Vec<RPoly> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut r: Vec<RPoly> = vec![vec![BigRational::one()]];
    for k in 1..=nmax {
        let mut acc = s.get(k).cloned().unwrap_or_default();
        for j in 1..k {
            rp_sub_assign(&mut acc, &rp_mul(&r[j], &r[k - j]));
        }
        for v in &mut acc {
            *v *= &half;
        }
        r.push(acc);
    }
    r
}

fn rp_div_2u(a: &[BigRational]) -> RPoly {
    assert!(
        a.first().is_none() || a[0].is_zero(),
        "division by 2u needs a vanishing constant term"
    );
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    a.iter().skip(1).map(|c| c * &half).collect()
}

fn rp_to_integers(a: &[BigRational]) -> UPoly {
    a.iter()
        .map(|c| {
            assert!(c.is_integer(), "series coefficient is not an integer");
            c.to_integer()
        })
        .collect()
}

/// z-series of (1 + 2u - sqrt(1 - 4(u + 1)z)) / (2(z + u)); term n lists
/// normal forms on n leaves by black count, reproducing the recursion.
pub fn closed_forest_series(nmax: usize) -> Vec<UPoly> {
    let rone = BigRational::one;
    let s: Vec<RPoly> = vec![
        vec![rone()],
        vec![-BigRational::from(BigInt::from(4)), -BigRational::from(BigInt::from(4))],
    ];
    let root = series_sqrt(&s, nmax);
    // numerator 1 + 2u - root, then long division by 2(z + u)
    let mut g: Vec<UPoly> = Vec::new();
    let mut prev: RPoly = Vec::new();
    for k in 0..=nmax {
        let mut num: RPoly = root[k].iter().map(|c| -c).collect();
        if k == 0 {
            rp_sub_assign(&mut num, &[-rone(), -(rone() + rone())]);
        }
        rp_sub_assign(&mut num, &prev.iter().map(|c| c + c).collect::<RPoly>());
        let quot = rp_div_2u(&num);
        g.push(rp_to_integers(&quot));
        prev = quot;
    }
    g
}

/// z-series of (1 + 2u - z - sqrt(1 + z^2 - 2(2u + 1)z)) / (2u); term n
/// lists single-tree normal forms on n leaves by black count.
pub fn closed_tree_series(nmax: usize) -> Vec<UPoly> {
    let rone = BigRational::one;
    let two = || rone() + rone();
    let s: Vec<RPoly> = vec![
        vec![rone()],
        vec![-two(), -two() - two()],
        vec![rone()],
    ];
    let root = series_sqrt(&s, nmax);
    let mut h: Vec<UPoly> = Vec::new();
    for k in 0..=nmax {
        let mut num: RPoly = root[k].iter().map(|c| -c).collect();
        if k == 0 {
            rp_sub_assign(&mut num, &[-rone(), -two()]);
        }
        if k == 1 {
            rp_sub_assign(&mut num, &[rone()]);
        }
        h.push(rp_to_integers(&rp_div_2u(&num)));
    }
    h
}

/// Outcome of one verification suite. `failures` is truncated to the first
/// 200 messages; `cases` always counts every check attempted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub n: usize,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SUITES: [&str; 10] = [
    "enumeration",
    "tamari",
    "duality",
    "flowup",
    "gkm",
    "plucker",
    "paving",
    "borel",
    "positivity",
    "polytope",
];

const FAILURE_CAP: usize = 200;

struct Collector {
    cases: usize,
    failures: Vec<String>,
}

impl Collector {
    fn new() -> Self {
        Collector { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < FAILURE_CAP {
            self.failures.push(label());
        }
    }

    fn absorb(&mut self, cases: usize, fails: Vec<String>) {
        self.cases += cases;
        for f in fails {
            if self.failures.len() >= FAILURE_CAP {
                break;
            }
            self.failures.push(f);
        }
    }
}

fn par_check<T, F>(items: &[T], f: F) -> (usize, Vec<String>)
where
    T: Sync,
    F: Fn(&T) -> Option<String> + Sync + Send,
{
    let fails: Vec<String> = items.par_iter().filter_map(f).collect();
    (items.len(), fails)
}

/// Runs one named suite at level cap `n`. Suites clamp `n` to the range
/// each check supports; `seed` feeds the sampling-based suites. Returns
/// None for an unknown suite name.
pub fn run_suite(suite: &str, n: usize, seed: u64) -> Option<Report> {
    let mut c = Collector::new();
    match suite {
        "enumeration" => suite_enumeration(n, &mut c),
        "tamari" => suite_tamari(n, &mut c),
        "duality" => suite_duality(n, &mut c),
        "flowup" => suite_flowup(n, &mut c),
        "gkm" => suite_gkm(n, &mut c),
        "plucker" => suite_plucker(n, seed, &mut c),
        "paving" => suite_paving(n, seed, &mut c),
        "borel" => suite_borel(n, seed, &mut c),
        "positivity" => suite_positivity(n, &mut c),
        "polytope" => suite_polytope(n, &mut c),
        _ => return None,
    }
    Some(Report {
        suite: suite.to_string(),
        n,
        seed,
        cases: c.cases,
        failures: c.failures,
    })
}

fn count_words(n: usize) -> (usize, BTreeSet<BnForest>) {
    fn rec(f: &BnForest, left: usize, words: &mut usize, seen: &mut BTreeSet<BnForest>) {
        if left == 0 {
            *words += 1;
            seen.insert(f.clone());
            return;
        }
        let leaves = f.nleaves() as u8;
        for i in 1..=leaves + 1 {
            let mut g = f.clone();
            g.apply_letter(Letter::RMinus(i)).unwrap();
            rec(&g, left - 1, words, seen);
        }
        for i in 1..=leaves {
            for l in [Letter::RPlus(i), Letter::E(i)] {
                let mut g = f.clone();
                g.apply_letter(l).unwrap();
                rec(&g, left - 1, words, seen);
            }
        }
    }
    let mut words = 0;
    let mut seen = BTreeSet::new();
    rec(&BnForest::empty(), n, &mut words, &mut seen);
    (words, seen)
}

/// E-count histogram over legal length-n words that avoid RPlus.
fn count_rplus_free(n: usize) -> UPoly {
    fn rec(f: &BnForest, left: usize, es: usize, hist: &mut [BigInt]) {
        if left == 0 {
            hist[es] += 1;
            return;
        }
        let leaves = f.nleaves() as u8;
        for i in 1..=leaves + 1 {
            let mut g = f.clone();
            g.apply_letter(Letter::RMinus(i)).unwrap();
            rec(&g, left - 1, es, hist);
        }
        for i in 1..=leaves {
            let mut g = f.clone();
            g.apply_letter(Letter::E(i)).unwrap();
            rec(&g, left - 1, es + 1, hist);
        }
    }
    let mut hist = vec![BigInt::zero(); n + 1];
    rec(&BnForest::empty(), n, 0, &mut hist);
    up_trim(&mut hist);
    hist
}

fn suite_enumeration(n: usize, c: &mut Collector) {
    for m in 1..=n.min(8) {
        c.check(
            BigInt::from(enumerate_nc(m).len()) == catalan(m),
            || format!("noncrossing count at n={m}"),
        );
        c.check(
            BigInt::from(enumerate_trees(m).len()) == catalan(m - 1),
            || format!("tree count at n={m}"),
        );
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for f in enumerate_plain_forests(m).iter() {
            *hist.entry(f.internal_count()).or_default() += 1;
        }
        for k in 0..m {
            c.check(
                BigInt::from(hist.get(&k).copied().unwrap_or(0)) == plain_forest_count(m, k),
                || format!("plain forest count at n={m} k={k}"),
            );
        }
        c.check(fq_matches(m), || format!("q-count identity at n={m}"));
    }
    for m in 1..=n.min(5) {
        let direct: BTreeSet<Perm> = enumerate_nc(m).into_iter().collect();
        let filtered: BTreeSet<Perm> = enumerate_nc_by_filter(m).into_iter().collect();
        c.check(direct == filtered, || {
            format!("noncrossing enumerations agree at n={m}")
        });
    }
    let closed_h = closed_tree_series(7);
    for m in 1..=n.min(7) {
        let all = enumerate_bnfor(m);
        let census = bnfor_black_census(m);
        let mut by_black = vec![0usize; m + 1];
        let mut nf_by_black = vec![0usize; m + 1];
        let mut tree_by_black = vec![0usize; m + 1];
        for f in all.iter() {
            by_black[f.black_count()] += 1;
            if f.is_normal() {
                nf_by_black[f.black_count()] += 1;
                if f.roots().len() == 1 {
                    tree_by_black[f.black_count()] += 1;
                }
            }
        }
        for k in 0..=m {
            let want = census.get(k).cloned().unwrap_or_default();
            c.check(
                BigInt::from(by_black[k]) == want,
                || format!("black-count histogram at n={m} k={k}"),
            );
            c.check(
                BigInt::from(nf_by_black[k]) == normal_form_count(m, k),
                || format!("normal form count at n={m} k={k}"),
            );
            let tree_want = closed_h[m].get(k).cloned().unwrap_or_default();
            c.check(
                BigInt::from(tree_by_black[k]) == tree_want,
                || format!("normal tree histogram at n={m} k={k}"),
            );
        }
    }
    for m in 1..=n.min(5) {
        let (words, seen) = count_words(m);
        c.check(
            BigInt::from(words) == word_count(m),
            || format!("word count at n={m}"),
        );
        let listed: BTreeSet<BnForest> = enumerate_bnfor(m).iter().cloned().collect();
        c.check(seen == listed, || {
            format!("word closure matches the forest enumeration at n={m}")
        });
        let hist = count_rplus_free(m);
        c.check(
            up_eval_one(&hist) == double_factorial_odd(m),
            || format!("restricted word count at n={m}"),
        );
        c.check(hist == rplus_free_word_product(m), || {
            format!("restricted word histogram at n={m}")
        });
    }
    let g = normal_forest_series(7);
    for (m, poly) in g.iter().enumerate().skip(1) {
        for k in 0..m {
            c.check(
                poly.get(k).cloned().unwrap_or_default() == normal_form_count(m, k),
                || format!("series coefficient z^{m} u^{k}"),
            );
        }
    }
    c.check(tree_substitution(7) == g, || {
        "tree series composes to the forest series".to_string()
    });
    c.check(closed_forest_series(7) == g, || {
        "closed form matches the forest series".to_string()
    });
    let h = normal_tree_series(7);
    c.check(closed_h == h, || {
        "closed form matches the tree series".to_string()
    });
    for (m, poly) in h.iter().enumerate().skip(1) {
        c.check(up_eval_one(poly) == schroder(m - 1), || {
            format!("tree series at u=1 for n={m}")
        });
    }
}

fn suite_tamari(n: usize, c: &mut Collector) {
    for m in 1..=n.min(5) {
        for f in enumerate_bnfor(m).iter() {
            let word = || word_to_string(&f.canonical_word());
            let k = f.black_count() as u32;
            c.check(f.face_set().len() == 3usize.pow(k), || {
                format!("face count for {}", word())
            });
            let verts = f.vert_set();
            c.check(verts.len() == 2usize.pow(k), || {
                format!("vertex count for {}", word())
            });
            let fixed = f.fixed_set();
            c.check(fixed.len() == 2usize.pow(k), || {
                format!("fixed point count for {}", word())
            });
            c.check(fixed.iter().all(Perm::is_noncrossing), || {
                format!("fixed points noncrossing for {}", word())
            });
            let mut vp: Vec<Perm> = verts.iter().map(BnForest::ncperm).collect();
            vp.sort();
            vp.dedup();
            c.check(vp == fixed, || {
                format!("vertices realize the fixed points for {}", word())
            });
            let nf = f.tamari_normal_form();
            c.check(nf.is_normal(), || format!("normal form of {}", word()));
            c.check(nf.ncperm() == f.ncperm(), || {
                format!("rotation keeps the permutation for {}", word())
            });
            c.check(nf.fixed_set() == fixed, || {
                format!("rotation keeps the fixed points for {}", word())
            });
            let base = f.ncperm();
            for i in 1..=m as u8 + 1 {
                let mut g = f.clone();
                g.apply_letter(Letter::RMinus(i)).unwrap();
                c.check(g.ncperm() == base.psi_minus(i), || {
                    format!("white insertion at {i} for {}", word())
                });
                if i <= m as u8 {
                    let mut g = f.clone();
                    g.apply_letter(Letter::RPlus(i)).unwrap();
                    c.check(g.ncperm() == base.psi_plus(i), || {
                        format!("white split at {i} for {}", word())
                    });
                }
            }
        }
        let nfs: BTreeSet<BnForest> = enumerate_bnfor(m)
            .iter()
            .map(BnForest::tamari_normal_form)
            .collect();
        let listed: BTreeSet<BnForest> = enumerate_normal_forms(m).into_iter().collect();
        c.check(nfs == listed, || {
            format!("normal forms represent rotation classes at n={m}")
        });
        for h in enumerate_normal_forms(m) {
            let ok = forest_to_pair(&h)
                .ok()
                .and_then(|(plain, s)| pair_to_forest(&plain, &s).ok())
                .is_some_and(|back| back == h);
            c.check(ok, || {
                format!("pair encoding roundtrip for {}", word_to_string(&h.canonical_word()))
            });
        }
    }
    for m in 1..=n.min(6) {
        for f in enumerate_plain_forests(m).iter() {
            let v = f.for_to_nc().unwrap();
            let mut sp = f.spreads();
            sp.sort_unstable();
            let mut inv = v.noncrossing_inversions();
            inv.sort_unstable();
            c.check(sp == inv, || {
                format!("spreads match inversions for {}", word_to_string(&f.canonical_word()))
            });
            c.check(forest_for_nc(&v).as_ref() == Some(f), || {
                format!("forest recovered from {v}")
            });
        }
    }
    for m in 1..=n.min(4) {
        let all = enumerate_bnfor(m);
        let data: Vec<(BTreeSet<BnForest>, BTreeSet<Perm>, BnForest)> = all
            .iter()
            .map(|f| {
                let nf = f.tamari_normal_form();
                let faces: BTreeSet<BnForest> = nf
                    .face_set()
                    .iter()
                    .map(BnForest::tamari_normal_form)
                    .collect();
                let fixed: BTreeSet<Perm> = f.fixed_set().into_iter().collect();
                (faces, fixed, nf)
            })
            .collect();
        for (fi, fd) in data.iter().enumerate() {
            for (gi, gd) in data.iter().enumerate() {
                let lhs = fd.0.contains(&gd.2);
                let rhs = gd.1.is_subset(&fd.1);
                c.check(lhs == rhs, || {
                    format!(
                        "containment mismatch at n={m}: F={}, G={}",
                        word_to_string(&all[fi].canonical_word()),
                        word_to_string(&all[gi].canonical_word())
                    )
                });
            }
        }
    }
}

fn suite_duality(n: usize, c: &mut Collector) {
    for m in 1..=n.min(5) {
        let plains = enumerate_plain_forests(m);
        let polys: Vec<MPoly> = plains.iter().map(|f| (*forest_poly(f)).clone()).collect();
        let words: Vec<Vec<Letter>> = plains.iter().map(BnForest::canonical_word).collect();
        let pairs: Vec<(usize, usize)> = (0..plains.len())
            .flat_map(|a| (0..plains.len()).map(move |b| (a, b)))
            .collect();
        let (cases, fails) = par_check(&pairs, |&(a, b)| {
            let q = localization_functional(&words[b], &polys[a]);
            let want = if a == b { MPoly::one() } else { MPoly::zero() };
            (q != want).then(|| {
                format!(
                    "pairing at n={m}: F={}, G={}",
                    word_to_string(&words[a]),
                    word_to_string(&words[b])
                )
            })
        });
        c.absorb(cases, fails);
    }
}

fn suite_flowup(n: usize, c: &mut Collector) {
    for m in 1..=n.min(5) {
        let graph = build_nc_gkm(m);
        let ncs = enumerate_nc(m);
        for v in &ncs {
            let cls = flowup_class(v, m);
            let diag = flowup_diagonal(v);
            c.check(cls[v] == diag, || {
                format!("diagonal value at {v} (n={m})")
            });
            for w in &ncs {
                if !bruhat_leq(v, w) {
                    c.check(cls[w].is_zero(), || {
                        format!("class of {v} must vanish at {w}")
                    });
                }
            }
            c.check(is_gkm_class(&graph, &cls), || {
                format!("edge divisibility for the class of {v}")
            });
            match expand_in_flowup(m, &cls) {
                Some(exp) => {
                    for (u, coeff) in &exp {
                        let want = if u == v { MPoly::one() } else { MPoly::zero() };
                        c.check(*coeff == want, || {
                            format!("self expansion of {v} at {u}")
                        });
                    }
                }
                None => c.check(false, || format!("self expansion of {v} exists")),
            }
        }
    }
    if n >= 4 {
        let v = Perm::parse("4213").unwrap();
        let f = forest_for_nc(&v).unwrap();
        c.check(
            word_to_string(&f.canonical_word()) == "r1- e1 e1 e2",
            || "pinned forest word at 4213".to_string(),
        );
        let a = |i: usize, j: usize| MPoly::t(j).sub(&MPoly::t(i));
        let prod = a(1, 2).mul(&a(1, 4)).mul(&a(3, 4));
        let cls = flowup_class(&v, 4);
        c.check(cls[&v] == prod, || "pinned diagonal at 4213".to_string());
        for w in enumerate_nc(4) {
            let expect_zero = !bruhat_leq(&v, &w);
            c.check(cls[&w].is_zero() == expect_zero, || {
                format!("pinned support at {w}")
            });
        }
    }
}

fn suite_gkm(n: usize, c: &mut Collector) {
    for m in 1..=n.min(5) {
        let graph = build_nc_gkm(m);
        let verts = graph.verts();
        let below = |u: &Perm, w: &Perm| kreweras_leq(u, w) && u != w;
        let mut edge_pairs: BTreeSet<(Perm, Perm)> = BTreeSet::new();
        for &(i, j, _) in graph.edges() {
            let (u, w) = (&verts[i], &verts[j]);
            let (lo, hi) = if below(u, w) {
                (u, w)
            } else if below(w, u) {
                (w, u)
            } else {
                c.check(false, || format!("edge {u} -- {w} is not comparable"));
                continue;
            };
            let cover = !verts.iter().any(|z| below(lo, z) && below(z, hi));
            c.check(cover, || format!("edge {lo} -- {hi} skips a level"));
            edge_pairs.insert((lo.clone(), hi.clone()));
        }
        for u in verts {
            for w in verts {
                if !below(u, w) || verts.iter().any(|z| below(u, z) && below(z, w)) {
                    continue;
                }
                c.check(edge_pairs.contains(&(u.clone(), w.clone())), || {
                    format!("cover {u} -- {w} is missing from the graph")
                });
            }
        }
    }
    for m in 1..=n.min(4) {
        let graph = build_nc_gkm(m);
        for w in all_perms(m) {
            let cls = class_from_poly(&graph, &schubert_double(&w));
            c.check(is_gkm_class(&graph, &cls), || {
                format!("restriction of the {w} class (n={m})")
            });
            c.check(expand_in_flowup(m, &cls).is_some(), || {
                format!("restricted {w} class expands (n={m})")
            });
        }
        let ncs = enumerate_nc(m);
        let classes: Vec<GkmClass> = ncs.iter().map(|v| flowup_class(v, m)).collect();
        for (ai, ca) in classes.iter().enumerate() {
            for (bi, cb) in classes.iter().enumerate() {
                let prod: GkmClass = ca
                    .iter()
                    .map(|(w, val)| (w.clone(), val.mul(&cb[w])))
                    .collect();
                c.check(expand_in_flowup(m, &prod).is_some(), || {
                    format!("product of {} and {} expands (n={m})", ncs[ai], ncs[bi])
                });
            }
        }
    }
}

fn suite_plucker(n: usize, seed: u64, c: &mut Collector) {
    for m in 1..=n.min(4) {
        let forests = enumerate_bnfor(m);
        let jobs: Vec<(usize, u64)> = (0..forests.len())
            .flat_map(|idx| (0..20u64).map(move |s| (idx, s)))
            .collect();
        let (cases, fails) = par_check(&jobs, |&(idx, s)| {
            let f = &forests[idx];
            let pt_seed = seed
                .wrapping_add(m as u64 * 1_000_000)
                .wrapping_add(idx as u64 * 100)
                .wrapping_add(s);
            match sample_orbit_point(f, pt_seed) {
                Ok(mat) => {
                    let ok = plucker_support(&mat) == f.fixed_set() && in_qfl(&mat);
                    (!ok).then(|| {
                        format!(
                            "support mismatch for {} seed {s}",
                            word_to_string(&f.canonical_word())
                        )
                    })
                }
                Err(_) => Some(format!(
                    "degenerate sampling for {} (n={m})",
                    word_to_string(&f.canonical_word())
                )),
            }
        });
        c.absorb(cases, fails);
        for (idx, f) in forests.iter().enumerate() {
            if let Ok(mat) = sample_orbit_point(f, seed.wrapping_add(idx as u64)) {
                for i in 1..m {
                    if !related_premise(&mat, i) {
                        continue;
                    }
                    let moved = perturb_step(&mat, i, &rat(3));
                    c.check(
                        same_flag_except(&mat, &moved, i) && in_qfl(&moved),
                        || {
                            format!(
                                "step {i} move leaves the variety for {}",
                                word_to_string(&f.canonical_word())
                            )
                        },
                    );
                }
            }
        }
    }
    for m in 3..=n.min(4) {
        for w in all_perms(m).into_iter().filter(|w| !w.is_noncrossing()) {
            let mat: Vec<Vec<BigRational>> = (1..=m)
                .map(|r| {
                    (1..=m)
                        .map(|col| {
                            if w.apply(col as u8) as usize == r {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            c.check(!in_qfl(&mat), || {
                format!("coordinate flag of crossing {w} lands inside (n={m})")
            });
        }
        // a small-entry sample can hit the variety by accident, so each
        // slot redraws until a witness appears
        for s in 0..50u64 {
            let outside = (0..20u64).any(|attempt| {
                let mat = random_flag(
                    m,
                    seed.wrapping_add(9_000_000 + m as u64 * 1_000_000 + s * 100 + attempt),
                );
                !in_qfl(&mat)
            });
            c.check(outside, || {
                format!("no generic flag escapes the variety (slot {s}, n={m})")
            });
        }
    }
}

fn suite_paving(n: usize, seed: u64, c: &mut Collector) {
    for m in 1..=n.min(4) {
        let forests = enumerate_bnfor(m);
        let idxs: Vec<usize> = (0..forests.len()).collect();
        let (cases, fails) = par_check(&idxs, |&idx| {
            let f = &forests[idx];
            match sample_orbit_point(f, seed.wrapping_add(idx as u64)) {
                Ok(mat) => {
                    let v = pivot_perm(&mat);
                    let ok = v.is_noncrossing() && cell_membership(&mat, &v);
                    (!ok).then(|| {
                        format!(
                            "sample outside its cell for {}",
                            word_to_string(&f.canonical_word())
                        )
                    })
                }
                Err(_) => Some(format!(
                    "degenerate sampling for {}",
                    word_to_string(&f.canonical_word())
                )),
            }
        });
        c.absorb(cases, fails);
    }
    for m in 1..=n.min(5) {
        let graph = build_nc_gkm(m);
        let verts = graph.verts();
        for (vi, v) in verts.iter().enumerate() {
            let mut down: Vec<(u8, u8)> = Vec::new();
            for &(i, j, lab) in graph.edges() {
                let other = if i == vi {
                    j
                } else if j == vi {
                    i
                } else {
                    continue;
                };
                if verts[other].length() < v.length() {
                    down.push(lab);
                }
            }
            down.sort_unstable();
            c.check(down == chart_weights(v), || {
                format!("chart weights differ from down edges at {v}")
            });
        }
    }
    for m in 1..=n.min(6) {
        for v in enumerate_nc(m) {
            c.check(is_simple_cone(&chart_weights(&v), m), || {
                format!("weight cone at {v} is not simple")
            });
        }
    }
}

fn random_xpoly(rng: &mut ChaCha8Rng, nvars: usize, dmax: usize) -> MPoly {
    loop {
        let mut f = MPoly::zero();
        for _ in 0..rng.gen_range(1..=5) {
            let coeff: i64 = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let mut mono = MPoly::from_int(coeff);
            for _ in 0..rng.gen_range(0..=dmax) {
                mono = mono.mul(&MPoly::x(rng.gen_range(1..=nvars)));
            }
            f = f.add(&mono);
        }
        if !f.is_zero() {
            return f;
        }
    }
}

fn compositions_of(total: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(rem: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if left == 0 {
            return;
        }
        for first in 1..=rem {
            cur.push(first);
            go(rem - first, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// M_alpha(x_1..x_m): the sum of x_{i_1}^{a_1} ... x_{i_l}^{a_l} over all
/// strictly increasing index choices i_1 < ... < i_l within [m].
fn monomial_qsym(alpha: &[usize], m: usize) -> MPoly {
    fn go(alpha: &[usize], lo: usize, m: usize, e: Expo, out: &mut MPoly) {
        match alpha.split_first() {
            None => *out = out.add(&MPoly::monomial(e, BigInt::one())),
            Some((&a, rest)) => {
                for i in lo..=m - rest.len() {
                    let mut e2 = e;
                    e2.xs[i - 1] = a as u8;
                    go(rest, i + 1, m, e2, out);
                }
            }
        }
    }
    let mut out = MPoly::zero();
    if alpha.len() <= m {
        go(alpha, 1, m, Expo::unit(), &mut out);
    }
    out
}

fn monomials_of_degree(d: usize, m: usize) -> Vec<MPoly> {
    fn go(d: usize, var: usize, m: usize, e: Expo, out: &mut Vec<MPoly>) {
        if var == m {
            let mut e2 = e;
            e2.xs[m - 1] = d as u8;
            out.push(MPoly::monomial(e2, BigInt::one()));
            return;
        }
        for take in 0..=d {
            let mut e2 = e;
            e2.xs[var - 1] = take as u8;
            go(d - take, var + 1, m, e2, out);
        }
    }
    let mut out = Vec::new();
    go(d, 1, m, Expo::unit(), &mut out);
    out
}

fn poly_row(p: &MPoly, cols: &mut BTreeMap<Expo, usize>) -> Vec<(usize, BigRational)> {
    p.terms()
        .map(|(e, coef)| {
            let next = cols.len();
            let col = *cols.entry(*e).or_insert(next);
            (col, BigRational::from_integer(coef.clone()))
        })
        .collect()
}

fn suite_borel(n: usize, seed: u64, c: &mut Collector) {
    for m in 1..=n.min(4) {
        let ncs = enumerate_nc(m);
        let classes = enumerate_ltforest(m, 4);
        let overflow: Vec<&BnForest> = classes.iter().filter(|f| f.nleaves() > m).collect();
        for f in &overflow {
            let p = truncate_vars(&forest_poly(f), m);
            for w in &ncs {
                c.check(ev(&p, w).is_zero(), || {
                    format!(
                        "truncation of {} survives at {w} (n={m})",
                        word_to_string(&f.canonical_word())
                    )
                });
            }
        }
        for d in 1..=4usize {
            let slice: Vec<&&BnForest> = overflow
                .iter()
                .filter(|f| f.internal_count() == d)
                .collect();
            let singles: Vec<MPoly> = slice
                .iter()
                .map(|f| specialize_t_zero(&truncate_vars(&forest_poly(f), m)))
                .collect();
            let mut cols: BTreeMap<Expo, usize> = BTreeMap::new();
            let mut span = Eliminator::new();
            for k in 1..=d {
                for alpha in compositions_of(k, m) {
                    let gen = monomial_qsym(&alpha, m);
                    for mono in monomials_of_degree(d - k, m) {
                        span.add_vector(poly_row(&gen.mul(&mono), &mut cols));
                    }
                }
            }
            let rank = span.rank();
            c.check(singles.len() == rank, || {
                format!(
                    "{} degree {d} singles against slice rank {rank} (n={m})",
                    singles.len()
                )
            });
            for (g, f) in singles.iter().zip(&slice) {
                c.check(!span.add_vector(poly_row(g, &mut cols)), || {
                    format!(
                        "single of {} escapes the ideal slice (n={m})",
                        word_to_string(&f.canonical_word())
                    )
                });
            }
            let mut indep = Eliminator::new();
            let mut ok = true;
            for g in &singles {
                ok &= indep.add_vector(poly_row(g, &mut cols));
            }
            c.check(ok, || {
                format!("degree {d} singles are dependent (n={m})")
            });
        }
        for z in enumerate_zigzag(m, 4) {
            let p = truncate_vars(&forest_poly(&z), m);
            let vals: Vec<MPoly> = ncs.iter().map(|w| ev(&p, w)).collect();
            c.check(vals.windows(2).all(|pair| pair[0] == pair[1]), || {
                format!(
                    "zigzag {} is not constant on fixed points (n={m})",
                    word_to_string(&z.canonical_word())
                )
            });
            c.check(ideal_member(&p.sub(&vals[0]), m), || {
                format!(
                    "recentered zigzag {} escapes the evaluation kernel (n={m})",
                    word_to_string(&z.canonical_word())
                )
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(m as u64));
        for trial in 0..100 {
            let f = random_xpoly(&mut rng, m, 4);
            let exp = expand_forest_basis(&f, m);
            let mut remainder = MPoly::zero();
            for (class, q) in &exp {
                if class.nleaves() > m {
                    remainder = remainder.add(&q.mul(&truncate_vars(&forest_poly(class), m)));
                }
            }
            c.check(
                ncs.iter().all(|w| ev(&remainder, w).is_zero()),
                || format!("remainder of trial {trial} survives on fixed points (n={m})"),
            );
        }
    }
}

fn suite_positivity(n: usize, c: &mut Collector) {
    for m in 1..=n.min(4) {
        let plains = enumerate_plain_forests(m);
        let words: Vec<Vec<Letter>> = plains.iter().map(BnForest::canonical_word).collect();
        let perms = all_perms(m);
        let jobs: Vec<(usize, usize)> = (0..perms.len())
            .flat_map(|wi| (0..words.len()).map(move |fi| (wi, fi)))
            .collect();
        let (cases, fails) = par_check(&jobs, |&(wi, fi)| {
            let q = localization_functional(&words[fi], &schubert_double(&perms[wi]));
            (graham_positivity(&q) != Positivity::Positive).then(|| {
                format!(
                    "coefficient of {} in the {} class is not positive (n={m})",
                    word_to_string(&words[fi]),
                    perms[wi]
                )
            })
        });
        c.absorb(cases, fails);
    }
}

fn suite_polytope(n: usize, c: &mut Collector) {
    let t = BnForest::from_word_str("r1- e1 e1 e3").unwrap();
    let facets = tree_facets(&t);
    let expected: [(&[u8], bool); 6] = [
        (&[2, 3], true),
        (&[1, 2], false),
        (&[1], true),
        (&[1], false),
        (&[3], true),
        (&[3], false),
    ];
    c.check(
        facets.len() == expected.len()
            && expected
                .iter()
                .all(|(l, lo)| facets.iter().any(|f| f.labels == *l && f.lower == *lo)),
        || "pinned facet system of the balanced tree".to_string(),
    );
    for m in 1..=n.min(5) {
        let lambda: Vec<i64> = (1..=m as i64).rev().collect();
        for tree in enumerate_trees(m) {
            let word = || word_to_string(&tree.canonical_word());
            let facets = tree_facets(&tree);
            for z in moment_vertices(&tree, &lambda) {
                for fac in &facets {
                    c.check(facet_holds(fac, &z, &lambda), || {
                        format!("vertex {z:?} breaks a facet of {}", word())
                    });
                }
            }
        }
        for f in enumerate_plain_forests(m).iter() {
            for (p, q) in moment_edge_pairs(f, &lambda) {
                c.check(root_parallel(&p, &q), || {
                    format!(
                        "edge {p:?} -- {q:?} of {} is not root parallel",
                        word_to_string(&f.canonical_word())
                    )
                });
            }
        }
        if m <= 4 {
            for f in enumerate_bnfor(m).iter() {
                for (p, q) in moment_edge_pairs(f, &lambda) {
                    c.check(root_parallel(&p, &q), || {
                        format!(
                            "edge {p:?} -- {q:?} of {} is not root parallel",
                            word_to_string(&f.canonical_word())
                        )
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let cats: Vec<i64> = vec![1, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &v) in cats.iter().enumerate() {
            assert_eq!(catalan(n), BigInt::from(v));
        }
        let dfs: Vec<i64> = vec![1, 1, 3, 15, 105, 945, 10395];
        for (n, &v) in dfs.iter().enumerate() {
            assert_eq!(double_factorial_odd(n), BigInt::from(v));
        }
        assert_eq!(word_count(3), BigInt::from(28));
        assert_eq!(word_count(7), BigInt::from(1_106_560));
    }

    #[test]
    fn forest_count_tables() {
        let c3: Vec<i64> = vec![1, 2, 2];
        for (k, &v) in c3.iter().enumerate() {
            assert_eq!(plain_forest_count(3, k), BigInt::from(v));
        }
        let f3: Vec<i64> = vec![5, 6, 2];
        for (k, &v) in f3.iter().enumerate() {
            assert_eq!(normal_form_count(3, k), BigInt::from(v));
        }
        let f5: Vec<i64> = vec![42, 120, 135, 70, 14];
        for (k, &v) in f5.iter().enumerate() {
            assert_eq!(normal_form_count(5, k), BigInt::from(v));
        }
        let f7: Vec<i64> = vec![429, 2002, 4004, 4368, 2730, 924, 132];
        for (k, &v) in f7.iter().enumerate() {
            assert_eq!(normal_form_count(7, k), BigInt::from(v));
        }
        // totals agree with the q = 2 specialization
        for n in 1..=8 {
            assert!(fq_matches(n), "q identity at {n}");
        }
    }

    #[test]
    fn series_agree_with_counts() {
        let g = normal_forest_series(7);
        for (n, poly) in g.iter().enumerate().skip(1) {
            for k in 0..n {
                assert_eq!(
                    poly.get(k).cloned().unwrap_or_default(),
                    normal_form_count(n, k),
                    "z^{n} u^{k}"
                );
            }
        }
        assert_eq!(tree_substitution(7), g);
        let h = normal_tree_series(6);
        let at_one: Vec<BigInt> = h.iter().map(up_eval_one).collect();
        let want: Vec<i64> = vec![1, 1, 2, 6, 22, 90, 394];
        for (n, &v) in want.iter().enumerate() {
            assert_eq!(at_one[n], BigInt::from(v));
        }
    }

    fn ints(v: &[i64]) -> UPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn rplus_free_histograms() {
        assert_eq!(rplus_free_word_product(3), ints(&[6, 7, 2]));
        assert_eq!(rplus_free_word_product(4), ints(&[24, 46, 29, 6]));
        for n in 0..=6 {
            assert_eq!(up_eval_one(&rplus_free_word_product(n)), double_factorial_odd(n));
        }
    }

    #[test]
    fn black_census_by_cycle_blocks() {
        assert_eq!(bnfor_black_census(3), ints(&[6, 7, 2]));
        // diverges from the r-plus-free word histogram from n = 4 on
        assert_eq!(bnfor_black_census(4), ints(&[22, 41, 25, 5]));
        let totals: Vec<i64> = vec![1, 1, 3, 15, 93, 645];
        for (n, &v) in totals.iter().enumerate() {
            assert_eq!(up_eval_one(&bnfor_black_census(n)), BigInt::from(v));
        }
    }

    #[test]
    fn closed_series_match_tables() {
        let g = closed_forest_series(7);
        assert_eq!(g[3], ints(&[5, 6, 2]));
        assert_eq!(g[7], ints(&[429, 2002, 4004, 4368, 2730, 924, 132]));
        assert_eq!(g, normal_forest_series(7));
        let h = closed_tree_series(6);
        assert_eq!(h[3], ints(&[1, 3, 2]));
        assert_eq!(h, normal_tree_series(6));
    }

    #[test]
    fn unknown_suite_is_none() {
        assert!(run_suite("nonsense", 3, 0).is_none());
    }

    #[test]
    fn quick_suite_smoke() {
        for suite in SUITES {
            let n = if suite == "enumeration" { 3 } else { 2 };
            let report = run_suite(suite, n, 1).unwrap();
            assert!(report.passed(), "{suite}: {:?}", report.failures);
            assert!(report.cases > 0, "{suite} ran no cases");
        }
    }
}
