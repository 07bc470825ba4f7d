//! Exact matrix geometry over the rationals: flags as column spans,
//! row/column insertion maps, pattern charts, Plücker support, orbit
//! sampling, and moment polytopes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::forest::{BnForest, Color, Letter, Node};
use crate::permnc::{all_perms, Perm};
use crate::polyalg::linalg::Eliminator;

/// Row-major square matrix; columns span the flag steps.
pub type Mat = Vec<Vec<BigRational>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("sampling kept missing the expected fixed-point support")]
    DegenerateSample,
}

pub fn mat_identity(n: usize) -> Mat {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// The permutation matrix with column j equal to e_{w(j)}.
pub fn mat_from_perm(w: &Perm) -> Mat {
    let n = w.n();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for j in 1..=n {
        m[w.apply(j as u8) as usize - 1][j - 1] = BigRational::one();
    }
    m
}

/// Inserts a new row i and new column j (both 1-indexed) with a single 1 at
/// their crossing; old entries keep their relative order.
pub fn psi_insert(m: &Mat, i: usize, j: usize) -> Mat {
    let k = m.len();
    let mut out = vec![vec![BigRational::zero(); k + 1]; k + 1];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            let (r1, c1) = (r + 1, c + 1);
            if r1 == i && c1 == j {
                *slot = BigRational::one();
            } else if r1 != i && c1 != j {
                let or = r1 - usize::from(r1 > i);
                let oc = c1 - usize::from(c1 > j);
                *slot = m[or - 1][oc - 1].clone();
            }
        }
    }
    out
}

pub fn psi_minus(m: &Mat, i: usize) -> Mat {
    psi_insert(m, i, i)
}

pub fn psi_plus(m: &Mat, i: usize) -> Mat {
    psi_insert(m, i, i + 1)
}

/// One-parameter chart insertion: new column i+1 is e_i and the embedded
/// old column i picks up c in its new row.
pub fn g_insert(m: &Mat, i: usize, c: BigRational) -> Mat {
    let mut out = psi_insert(m, i, i + 1);
    out[i - 1][i - 1] = c;
    out
}

/// The companion insertion: new column i is e_i plus c at the row holding
/// the 1 of the embedded old column i. Needs that old column to be a
/// coordinate vector.
pub fn g_prime_insert(m: &Mat, i: usize, c: BigRational) -> Mat {
    let mut out = psi_insert(m, i, i);
    let moved = i; // old column i now sits at 0-indexed position i
    let nonzero: Vec<usize> = (0..out.len())
        .filter(|&r| !out[r][moved].is_zero())
        .collect();
    let [row] = nonzero[..] else {
        panic!("companion insertion needs a coordinate column");
    };
    assert!(out[row][moved].is_one(), "companion insertion needs a unit column");
    out[row][i - 1] += c;
    out
}

/// Column-reduced form that identifies flags: scanning left to right, each
/// column is cleared at the pivot rows of earlier columns, its pivot is the
/// bottom-most remaining nonzero, and the column is scaled to pivot 1.
pub fn flag_canonical_form(m: &Mat) -> Mat {
    let n = m.len();
    let mut out = m.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    for c in 0..n {
        for &(pr, pc) in &pivots {
            let factor = out[pr][c].clone();
            if factor.is_zero() {
                continue;
            }
            for r in 0..n {
                let delta = &factor * &out[r][pc];
                out[r][c] -= delta;
            }
        }
        let pivot_row = (0..n)
            .rev()
            .find(|&r| !out[r][c].is_zero())
            .expect("flag matrix must be invertible");
        let scale = out[pivot_row][c].clone();
        for r in 0..n {
            let v = &out[r][c] / &scale;
            out[r][c] = v;
        }
        pivots.push((pivot_row, c));
    }
    out
}

fn determinant(mut m: Mat) -> BigRational {
    let k = m.len();
    let mut det = BigRational::one();
    for c in 0..k {
        let Some(piv) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            det = -det;
        }
        let lead = m[c][c].clone();
        det *= &lead;
        for r in c + 1..k {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = &m[r][c] / &lead;
            for cc in c..k {
                let delta = &factor * &m[c][cc];
                m[r][cc] -= delta;
            }
        }
    }
    det
}

/// Determinant of the submatrix on the given 1-indexed rows and the first
/// `rows.len()` columns.
pub fn leading_minor(m: &Mat, rows: &[u8]) -> BigRational {
    let sub: Mat = rows
        .iter()
        .map(|&r| m[r as usize - 1][..rows.len()].to_vec())
        .collect();
    determinant(sub)
}

/// The product over k of the minor on rows {w(1..k)}.
pub fn plucker_coord(m: &Mat, w: &Perm) -> BigRational {
    let mut prod = BigRational::one();
    let mut rows: Vec<u8> = Vec::new();
    for k in 1..=w.n() {
        rows.push(w.apply(k as u8));
        rows.sort_unstable();
        prod *= leading_minor(m, &rows);
        if prod.is_zero() {
            return prod;
        }
    }
    prod
}

/// Permutations with nonzero Plücker coordinate, sorted.
pub fn plucker_support(m: &Mat) -> Vec<Perm> {
    let mut out: Vec<Perm> = all_perms(m.len())
        .into_iter()
        .filter(|w| !plucker_coord(m, w).is_zero())
        .collect();
    out.sort();
    out
}

/// The flag lies in the subvariety cut out by noncrossing support.
pub fn in_qfl(m: &Mat) -> bool {
    plucker_support(m).iter().all(Perm::is_noncrossing)
}

/// Pivot rows of the canonical form, read off column by column.
pub fn pivot_perm(m: &Mat) -> Perm {
    let can = flag_canonical_form(m);
    let n = m.len();
    let line: Vec<u8> = (0..n)
        .map(|c| {
            (0..n)
                .rev()
                .find(|&r| !can[r][c].is_zero())
                .map(|r| r as u8 + 1)
                .unwrap()
        })
        .collect();
    Perm::from_one_line(line).expect("canonical form has one pivot per row")
}

/// Star pattern of a noncrossing cell: pivots at (v(j), j), free entries at
/// (v(j), i) for noncrossing inversions (i, j), zero elsewhere.
pub struct CellPattern {
    pub v: Perm,
    pub stars: Vec<(u8, u8)>,
}

pub fn nc_cell_pattern(v: &Perm) -> CellPattern {
    let stars = v
        .noncrossing_inversions()
        .into_iter()
        .map(|(i, j)| (v.apply(j), i))
        .collect();
    CellPattern { v: v.clone(), stars }
}

/// Membership in the noncrossing cell of v, decided on the canonical form.
pub fn cell_membership(m: &Mat, v: &Perm) -> bool {
    let n = m.len();
    if v.n() != n {
        return false;
    }
    let can = flag_canonical_form(m);
    let pattern = nc_cell_pattern(v);
    for c in 1..=n as u8 {
        for r in 1..=n as u8 {
            let val = &can[r as usize - 1][c as usize - 1];
            if r == v.apply(c) {
                if !val.is_one() {
                    return false;
                }
            } else if !pattern.stars.contains(&(r, c)) && !val.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Torus weights of the chart at v: (a, b) stands for e_a - e_b, one per
/// noncrossing inversion, with a = v(j) < b = v(i).
pub fn chart_weights(v: &Perm) -> Vec<(u8, u8)> {
    let mut out: Vec<(u8, u8)> = v
        .noncrossing_inversions()
        .into_iter()
        .map(|(i, j)| (v.apply(j), v.apply(i)))
        .collect();
    out.sort_unstable();
    out
}

/// The weights are independent and no root e_a - e_b outside the list lies
/// in their nonnegative span.
pub fn is_simple_cone(weights: &[(u8, u8)], n: usize) -> bool {
    let one = || BigRational::one();
    let mut indep = Eliminator::new();
    for (a, b) in weights {
        let added = indep.add_vector([
            (*a as usize - 1, one()),
            (*b as usize - 1, -one()),
        ]);
        if !added {
            return false;
        }
    }
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            if a == b || weights.contains(&(a, b)) {
                continue;
            }
            let mut elim = Eliminator::new();
            for dim in 1..=n as u8 {
                let coeffs: Vec<(usize, BigRational)> = weights
                    .iter()
                    .enumerate()
                    .filter_map(|(k, (wa, wb))| {
                        if *wa == dim {
                            Some((k, one()))
                        } else if *wb == dim {
                            Some((k, -one()))
                        } else {
                            None
                        }
                    })
                    .collect();
                let rhs = if dim == a {
                    one()
                } else if dim == b {
                    -one()
                } else {
                    BigRational::zero()
                };
                elim.add_row(coeffs, rhs);
            }
            if let Some(sol) = elim.solve(weights.len()) {
                if sol.iter().all(|v| *v >= BigRational::zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// e_i lies in the span of the first i+1 columns, and row i of the first
/// i-1 columns vanishes.
pub fn related_premise(m: &Mat, i: usize) -> bool {
    let n = m.len();
    assert!(i >= 1 && i < n);
    let mut elim = Eliminator::new();
    for c in 0..=i {
        elim.add_vector(
            (0..n)
                .filter(|&r| !m[r][c].is_zero())
                .map(|r| (r, m[r][c].clone())),
        );
    }
    let rank = elim.rank();
    if elim.add_vector([(i - 1, BigRational::one())]) || rank != i + 1 {
        return false;
    }
    (0..i.saturating_sub(1)).all(|c| m[i - 1][c].is_zero())
}

/// Replaces column i by itself plus c times column i+1: the flag moves only
/// in step i.
pub fn perturb_step(m: &Mat, i: usize, c: &BigRational) -> Mat {
    let mut out = m.clone();
    for r in 0..m.len() {
        let delta = c * &m[r][i];
        out[r][i - 1] += delta;
    }
    out
}

/// The two matrices span the same F_j for every j except possibly i.
pub fn same_flag_except(m1: &Mat, m2: &Mat, i: usize) -> bool {
    let n = m1.len();
    for j in 1..=n {
        if j == i {
            continue;
        }
        let mut elim = Eliminator::new();
        for c in 0..j {
            elim.add_vector(
                (0..n)
                    .filter(|&r| !m1[r][c].is_zero())
                    .map(|r| (r, m1[r][c].clone())),
            );
        }
        if elim.rank() != j {
            return false;
        }
        for c in 0..j {
            if elim.add_vector(
                (0..n)
                    .filter(|&r| !m2[r][c].is_zero())
                    .map(|r| (r, m2[r][c].clone())),
            ) {
                return false;
            }
        }
    }
    true
}

fn random_c(rng: &mut ChaCha8Rng) -> BigRational {
    const CHOICES: [(i64, i64); 10] = [
        (1, 1),
        (-1, 1),
        (2, 1),
        (-2, 1),
        (3, 1),
        (-3, 1),
        (1, 2),
        (-1, 2),
        (5, 1),
        (-5, 1),
    ];
    let (num, den) = CHOICES[rng.gen_range(0..CHOICES.len())];
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Folds the forest's building word into a matrix: white letters insert a
/// fixed point, black letters open a chart coordinate drawn from a small
/// rational pool. Resamples until the Plücker support hits the forest's
/// fixed-point set exactly, giving up after three attempts.
pub fn sample_orbit_point(f: &BnForest, seed: u64) -> Result<Mat, GeomError> {
    let expected = f.fixed_set();
    let word = f.canonical_word();
    for attempt in 0..3u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt));
        let mut m: Mat = Vec::new();
        for &l in &word {
            m = match l {
                Letter::RMinus(i) => psi_minus(&m, i as usize),
                Letter::RPlus(i) => psi_plus(&m, i as usize),
                Letter::E(i) => g_insert(&m, i as usize, random_c(&mut rng)),
            };
        }
        if plucker_support(&m) == expected {
            return Ok(m);
        }
    }
    Err(GeomError::DegenerateSample)
}

/// A full-rank matrix with entries from the sampling pool.
pub fn random_flag(n: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m: Mat = (0..n)
            .map(|_| (0..n).map(|_| random_c(&mut rng)).collect())
            .collect();
        if !determinant(m.clone()).is_zero() {
            return m;
        }
    }
}

/// w · λ permutes point coordinates: coordinate i receives λ_{w^{-1}(i)}.
pub fn apply_to_point(w: &Perm, lambda: &[i64]) -> Vec<i64> {
    let winv = w.inverse();
    (1..=w.n())
        .map(|i| lambda[winv.apply(i as u8) as usize - 1])
        .collect()
}

/// Moment-map images of the fixed points, aligned with `fixed_set` order.
pub fn moment_vertices(f: &BnForest, lambda: &[i64]) -> Vec<Vec<i64>> {
    f.fixed_set()
        .iter()
        .map(|w| apply_to_point(w, lambda))
        .collect()
}

fn colored_taus(f: &BnForest) -> Vec<((u8, u8), Color)> {
    fn walk(node: &Node, out: &mut Vec<((u8, u8), Color)>) {
        if let Node::Internal { color, left, right } = node {
            out.push(((left.max_leaf(), node.max_leaf()), *color));
            walk(left, out);
            walk(right, out);
        }
    }
    let mut out = Vec::new();
    for r in f.roots() {
        walk(r, &mut out);
    }
    out
}

/// Vertex pairs whose tau subwords differ in exactly one black factor;
/// white factors are always present.
pub fn moment_edge_pairs(f: &BnForest, lambda: &[i64]) -> Vec<(Vec<i64>, Vec<i64>)> {
    let taus = colored_taus(f);
    let n = f.nleaves();
    let blacks: Vec<usize> = taus
        .iter()
        .enumerate()
        .filter(|(_, (_, c))| *c == Color::Black)
        .map(|(idx, _)| idx)
        .collect();
    let k = blacks.len();
    let prod = |mask: usize| -> Perm {
        let mut acc = Perm::identity(n);
        for (idx, ((a, b), color)) in taus.iter().enumerate() {
            let on = *color == Color::White
                || blacks.iter().position(|&p| p == idx).is_some_and(|bit| mask & (1 << bit) != 0);
            if on {
                acc = acc.compose(&Perm::from_cycles(&[vec![*b, *a]], n).unwrap());
            }
        }
        acc
    };
    let mut out = Vec::new();
    for mask in 0..1usize << k {
        for bit in 0..k {
            if mask & (1 << bit) == 0 {
                let u = prod(mask);
                let v = prod(mask | (1 << bit));
                out.push((apply_to_point(&u, lambda), apply_to_point(&v, lambda)));
            }
        }
    }
    out
}

/// The difference sits on two coordinates with opposite entries.
pub fn root_parallel(p: &[i64], q: &[i64]) -> bool {
    let nz: Vec<i64> = p
        .iter()
        .zip(q)
        .map(|(a, b)| a - b)
        .filter(|&v| v != 0)
        .collect();
    matches!(nz[..], [a, b] if a == -b)
}

/// One inequality of a tree's moment polytope: the z-sum over `labels` is
/// bounded below by the λ-sum shifted one step (lower = true) or above by
/// the plain λ-sum (lower = false).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeFacet {
    pub labels: Vec<u8>,
    pub lower: bool,
}

/// Facet system of a single all-black tree: each internal node, through its
/// canonical label i, bounds {i} ∪ (right-subtree labels) from below and
/// {i} ∪ (left-subtree labels) from above.
pub fn tree_facets(t: &BnForest) -> Vec<TreeFacet> {
    assert_eq!(t.roots().len(), 1, "facet system is for trees");
    fn internal_labels(node: &Node, out: &mut Vec<u8>) {
        if let Node::Internal { left, right, .. } = node {
            out.push(left.max_leaf());
            internal_labels(left, out);
            internal_labels(right, out);
        }
    }
    fn walk(node: &Node, out: &mut Vec<TreeFacet>) {
        if let Node::Internal { left, right, .. } = node {
            let label = left.max_leaf();
            let mut right_side = vec![label];
            internal_labels(right, &mut right_side);
            right_side.sort_unstable();
            let mut left_side = vec![label];
            internal_labels(left, &mut left_side);
            left_side.sort_unstable();
            out.push(TreeFacet { labels: right_side, lower: true });
            out.push(TreeFacet { labels: left_side, lower: false });
            walk(left, out);
            walk(right, out);
        }
    }
    let mut out = Vec::new();
    walk(&t.roots()[0], &mut out);
    out
}

pub fn facet_holds(facet: &TreeFacet, z: &[i64], lambda: &[i64]) -> bool {
    let zsum: i64 = facet.labels.iter().map(|&j| z[j as usize - 1]).sum();
    let lsum: i64 = facet
        .labels
        .iter()
        .map(|&j| {
            if facet.lower {
                lambda[j as usize]
            } else {
                lambda[j as usize - 1]
            }
        })
        .sum();
    if facet.lower {
        zsum >= lsum
    } else {
        zsum <= lsum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permnc::enumerate_nc;

    fn pm(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn insertions_match_permutation_maps() {
        for w in all_perms(3) {
            let m = mat_from_perm(&w);
            for i in 1..=4u8 {
                assert_eq!(psi_minus(&m, i as usize), mat_from_perm(&w.psi_minus(i)));
                assert_eq!(
                    psi_insert(&m, 1, i as usize),
                    mat_from_perm(&w.epsilon(i))
                );
            }
            for i in 1..=3u8 {
                assert_eq!(psi_plus(&m, i as usize), mat_from_perm(&w.psi_plus(i)));
            }
        }
    }

    #[test]
    fn canonical_form_identifies_flags() {
        let mut m = mat_from_perm(&pm("231"));
        // column operations must not change the canonical form
        let base = flag_canonical_form(&m);
        for r in 0..3 {
            let delta = &m[r][0] * rat(5);
            m[r][1] += delta;
        }
        assert_eq!(flag_canonical_form(&m), base);
        assert_eq!(flag_canonical_form(&base), base);
    }

    #[test]
    fn support_of_fixed_point_is_singleton() {
        for w in all_perms(3) {
            assert_eq!(plucker_support(&mat_from_perm(&w)), vec![w.clone()]);
        }
    }

    #[test]
    fn chart_and_companion_give_the_same_flag() {
        for w in all_perms(3) {
            let m = mat_from_perm(&w);
            for i in 1..=3usize {
                for c in [rat(2), rat(-3), BigRational::new(1.into(), 2.into())] {
                    let a = g_insert(&m, i, c.clone());
                    let b = g_prime_insert(&m, i, c.recip());
                    assert_eq!(
                        flag_canonical_form(&a),
                        flag_canonical_form(&b),
                        "w={w} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn orbit_sample_hits_fixed_support() {
        let f = BnForest::from_word_str("r1- e1 r2+ e2").unwrap();
        let m = sample_orbit_point(&f, 7).unwrap();
        assert_eq!(plucker_support(&m), f.fixed_set());
        assert!(in_qfl(&m));
    }

    #[test]
    fn pattern_matrices_lie_in_their_cell() {
        for v in enumerate_nc(4) {
            let mut m = mat_from_perm(&v);
            for (k, (r, c)) in nc_cell_pattern(&v).stars.iter().enumerate() {
                m[*r as usize - 1][*c as usize - 1] = rat(k as i64 + 2);
            }
            assert!(cell_membership(&m, &v), "{v}");
            assert!(in_qfl(&m), "{v}");
        }
    }

    #[test]
    fn chart_weight_cones_are_simple_small() {
        for v in enumerate_nc(4) {
            assert!(is_simple_cone(&chart_weights(&v), 4), "{v}");
        }
    }

    #[test]
    fn moment_image_of_single_node() {
        let f = BnForest::from_word_str("r1- e1").unwrap();
        let verts = moment_vertices(&f, &[2, 1]);
        assert!(verts.contains(&vec![2, 1]) && verts.contains(&vec![1, 2]));
        for (p, q) in moment_edge_pairs(&f, &[2, 1]) {
            assert!(root_parallel(&p, &q));
        }
    }

    #[test]
    fn balanced_tree_facets() {
        let t = BnForest::from_word_str("r1- e1 e1 e3").unwrap();
        let facets = tree_facets(&t);
        let expect = [
            (vec![2u8, 3], true),
            (vec![1, 2], false),
            (vec![1], true),
            (vec![1], false),
            (vec![3], true),
            (vec![3], false),
        ];
        assert_eq!(facets.len(), expect.len());
        for (labels, lower) in expect {
            assert!(
                facets.iter().any(|f| f.labels == labels && f.lower == lower),
                "missing facet over {labels:?}"
            );
        }
        let lambda = [4i64, 3, 2, 1];
        for z in moment_vertices(&t, &lambda) {
            for facet in &facets {
                assert!(facet_holds(facet, &z, &lambda), "{facet:?} at {z:?}");
            }
        }
    }

    #[test]
    fn premise_and_perturbation() {
        let f = BnForest::from_word_str("r1- e1 r3-").unwrap();
        let m = sample_orbit_point(&f, 3).unwrap();
        for i in 1..3 {
            if related_premise(&m, i) {
                let m2 = perturb_step(&m, i, &rat(3));
                assert!(same_flag_except(&m, &m2, i));
                assert!(in_qfl(&m2), "step {i} must stay inside");
            }
        }
    }
}
