//! Permutations in one-line notation, noncrossing permutations, and the
//! Kreweras and Bruhat orders.
//!
//! A permutation of [n] is stored as its one-line word `w(1) … w(n)`.
//! Composition is `(u ∘ v)(i) = u(v(i))`.
//!
//! A permutation is *noncrossing* when every nontrivial cycle, written
//! starting from its largest element, is strictly decreasing (a "backwards"
//! cycle), and the cycle supports form a noncrossing set partition. The
//! backwards cycle `(b_1 … b_r)` with `b_1 > … > b_r` maps `b_i ↦ b_{i+1}`
//! and `b_r ↦ b_1`.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("one-line word {0:?} is not a permutation of 1..{1}")]
    NotAPermutation(Vec<u8>, usize),
    #[error("permutation sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("{0:?} is not noncrossing")]
    NotNoncrossing(Vec<u8>),
}

/// A permutation of `[n]` in one-line notation, entries `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Perm(Vec<u8>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.0 {
            if self.0.len() > 9 {
                write!(f, "[{v}]")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl TryFrom<Vec<u8>> for Perm {
    type Error = PermError;
    fn try_from(v: Vec<u8>) -> Result<Self, PermError> {
        Perm::from_one_line(v)
    }
}

impl From<Perm> for Vec<u8> {
    fn from(p: Perm) -> Vec<u8> {
        p.0
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as u8).collect())
    }

    pub fn from_one_line(word: Vec<u8>) -> Result<Perm, PermError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(PermError::NotAPermutation(word.clone(), n));
            }
            seen[v as usize] = true;
        }
        Ok(Perm(word))
    }

    /// Parse a one-line word given as digits, e.g. "612543".
    /// Values above 9 may be written in brackets: "[10]1[11]…".
    pub fn parse(s: &str) -> Result<Perm, PermError> {
        let mut vals = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            match c {
                '0'..='9' => vals.push(c as u8 - b'0'),
                '[' => {
                    let mut num = 0u8;
                    for d in chars.by_ref() {
                        if d == ']' {
                            break;
                        }
                        num = num * 10 + (d as u8 - b'0');
                    }
                    vals.push(num);
                }
                ' ' | ',' => {}
                _ => return Err(PermError::NotAPermutation(vec![], 0)),
            }
        }
        Perm::from_one_line(vals)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.0
    }

    /// `w(i)` with `i` 1-indexed.
    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Perm(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    /// Left multiplication by the transposition `(a b)`: swaps the values a, b.
    pub fn swap_values(&self, a: u8, b: u8) -> Perm {
        Perm(
            self.0
                .iter()
                .map(|&v| {
                    if v == a {
                        b
                    } else if v == b {
                        a
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Right multiplication by `(i j)`: swaps positions i, j of the word.
    pub fn swap_positions(&self, i: u8, j: u8) -> Perm {
        let mut w = self.0.clone();
        w.swap(i as usize - 1, j as usize - 1);
        Perm(w)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Nontrivial cycles, each rotated to start at its largest element,
    /// sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n as u8 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![];
            let mut cur = start;
            loop {
                seen[cur as usize] = true;
                cyc.push(cur);
                cur = self.apply(cur);
                if cur == start {
                    break;
                }
            }
            let maxpos = cyc
                .iter()
                .enumerate()
                .max_by_key(|(_, v)| **v)
                .map(|(i, _)| i)
                .unwrap();
            cyc.rotate_left(maxpos);
            out.push(cyc);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Builds the permutation whose cycles are the given blocks read as
    /// cyclic words, on ground set `[n]`.
    pub fn from_cycles(cycles: &[Vec<u8>], n: usize) -> Result<Perm, PermError> {
        let mut word: Vec<u8> = (1..=n as u8).collect();
        let mut touched = vec![false; n + 1];
        for cyc in cycles {
            for (k, &v) in cyc.iter().enumerate() {
                if v == 0 || v as usize > n || touched[v as usize] {
                    return Err(PermError::NotAPermutation(cyc.clone(), n));
                }
                touched[v as usize] = true;
                word[v as usize - 1] = cyc[(k + 1) % cyc.len()];
            }
        }
        Ok(Perm(word))
    }

    pub fn inversions(&self) -> Vec<(u8, u8)> {
        let n = self.n() as u8;
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if self.apply(i) > self.apply(j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        self.inversions().len()
    }

    /// Inversions `(i, j)` whose position swap stays noncrossing:
    /// `InvNC(w) = {(i,j) ∈ Inv(w) : w·(i j) ∈ NC_n}`.
    pub fn noncrossing_inversions(&self) -> Vec<(u8, u8)> {
        self.inversions()
            .into_iter()
            .filter(|&(i, j)| self.swap_positions(i, j).is_noncrossing())
            .collect()
    }

    /// Every nontrivial cycle is backwards and the supports are pairwise
    /// noncrossing.
    pub fn is_noncrossing(&self) -> bool {
        let cycles = self.cycles();
        for cyc in &cycles {
            if cyc.windows(2).any(|w| w[0] <= w[1]) {
                return false;
            }
        }
        let mut supports: Vec<Vec<u8>> = cycles
            .iter()
            .map(|c| {
                let mut s = c.clone();
                s.sort_unstable();
                s
            })
            .collect();
        supports.sort();
        for a in 0..supports.len() {
            for b in a + 1..supports.len() {
                if blocks_cross(&supports[a], &supports[b]) {
                    return false;
                }
            }
        }
        true
    }

    /// The Kreweras partition: all blocks (including fixed points), each
    /// written in decreasing order, sorted by minimum. `None` if crossing.
    pub fn nc_blocks(&self) -> Option<Vec<Vec<u8>>> {
        if !self.is_noncrossing() {
            return None;
        }
        let n = self.n() as u8;
        let mut blocks: Vec<Vec<u8>> = self
            .cycles()
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by(|a, b| b.cmp(a));
                c
            })
            .collect();
        for v in 1..=n {
            if self.apply(v) == v {
                blocks.push(vec![v]);
            }
        }
        blocks.sort_by_key(|b| *b.last().unwrap());
        Some(blocks)
    }

    pub fn from_nc_blocks(blocks: &[Vec<u8>], n: usize) -> Result<Perm, PermError> {
        let cycles: Vec<Vec<u8>> = blocks
            .iter()
            .map(|b| {
                let mut c = b.clone();
                c.sort_unstable_by(|a, b| b.cmp(a));
                c
            })
            .collect();
        let p = Perm::from_cycles(&cycles, n)?;
        if !p.is_noncrossing() {
            return Err(PermError::NotNoncrossing(p.0));
        }
        Ok(p)
    }

    /// Inserts 1 at position `i` after shifting every value up by one.
    /// Maps `S_{m}` to `S_{m+1}`.
    pub fn epsilon(&self, i: u8) -> Perm {
        let mut w: Vec<u8> = self.0.iter().map(|&v| v + 1).collect();
        w.insert(i as usize - 1, 1);
        Perm(w)
    }

    /// The increasing injection of `S_m` onto `{u ∈ S_{m+1} : u(i) = i}`:
    /// values and positions at or above `i` shift up, and `i` becomes fixed.
    pub fn psi_minus(&self, i: u8) -> Perm {
        let mut w: Vec<u8> = self
            .0
            .iter()
            .map(|&v| if v >= i { v + 1 } else { v })
            .collect();
        w.insert(i as usize - 1, i);
        Perm(w)
    }

    /// `Ψ_i^+ w = (Ψ_i^- w)·s_i`.
    pub fn psi_plus(&self, i: u8) -> Perm {
        self.psi_minus(i).swap_positions(i, i + 1)
    }
}

/// Two sorted blocks cross when neither fits inside a single gap of the
/// other (nesting and disjointness are both fine).
fn blocks_cross(a: &[u8], b: &[u8]) -> bool {
    if a.len() == 1 || b.len() == 1 {
        return false;
    }
    // a and b interleave iff some a-elements separate two b-elements and
    // vice versa; with sorted blocks it suffices to check b against a's gaps.
    let inside_one_gap = |outer: &[u8], inner: &[u8]| -> bool {
        // gap index for x: number of outer elements below x
        let gap = |x: u8| outer.iter().take_while(|&&o| o < x).count();
        if inner.iter().any(|&x| outer.contains(&x)) {
            return false;
        }
        let g0 = gap(inner[0]);
        inner.iter().all(|&x| gap(x) == g0)
    };
    !inside_one_gap(a, b) && !inside_one_gap(b, a)
}

/// Bruhat order via the tableau criterion: `u ≤ w` iff for every prefix
/// length k the sorted value sets satisfy componentwise ≤.
pub fn bruhat_leq(u: &Perm, w: &Perm) -> bool {
    assert_eq!(u.n(), w.n());
    let n = u.n();
    let mut us: Vec<u8> = Vec::with_capacity(n);
    let mut ws: Vec<u8> = Vec::with_capacity(n);
    for k in 0..n {
        let uv = u.one_line()[k];
        let wv = w.one_line()[k];
        us.insert(us.partition_point(|&x| x < uv), uv);
        ws.insert(ws.partition_point(|&x| x < wv), wv);
        if us.iter().zip(&ws).any(|(a, b)| a > b) {
            return false;
        }
    }
    true
}

/// Kreweras order on noncrossing permutations: refinement of the block
/// partitions. Panics if either argument is crossing.
pub fn kreweras_leq(u: &Perm, w: &Perm) -> bool {
    let ub = u.nc_blocks().expect("kreweras_leq: crossing argument");
    let wb = w.nc_blocks().expect("kreweras_leq: crossing argument");
    ub.iter().all(|block| {
        let lead = block[0];
        let host = wb.iter().find(|wb| wb.contains(&lead)).unwrap();
        block.iter().all(|v| host.contains(v))
    })
}

/// If `w = (a b) ∘ u` for a transposition, returns `(a, b)` with `a < b`.
pub fn cayley_edge(u: &Perm, w: &Perm) -> Option<(u8, u8)> {
    if u.n() != w.n() {
        return None;
    }
    let diff: Vec<u8> = (1..=u.n() as u8).filter(|&i| u.apply(i) != w.apply(i)).collect();
    if let [i, j] = diff[..] {
        let (a, b) = (u.apply(i), u.apply(j));
        if w.apply(i) == b && w.apply(j) == a {
            return Some((a.min(b), a.max(b)));
        }
    }
    None
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut word: Vec<u8> = (1..=n as u8).collect();
    heap_permute(&mut word, n, &mut out);
    out.sort();
    out
}

fn heap_permute(word: &mut Vec<u8>, k: usize, out: &mut Vec<Perm>) {
    if k <= 1 {
        out.push(Perm(word.clone()));
        return;
    }
    for i in 0..k {
        heap_permute(word, k - 1, out);
        if k % 2 == 0 {
            word.swap(i, k - 1);
        } else {
            word.swap(0, k - 1);
        }
    }
}

/// All noncrossing permutations of `[n]`, sorted, generated directly from
/// noncrossing partitions (each block oriented as a backwards cycle).
pub fn enumerate_nc(n: usize) -> Vec<Perm> {
    let ground: Vec<u8> = (1..=n as u8).collect();
    let mut parts = Vec::new();
    nc_partitions(&ground, &mut Vec::new(), &mut parts);
    let mut out: Vec<Perm> = parts
        .into_iter()
        .map(|blocks| Perm::from_nc_blocks(&blocks, n).unwrap())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Noncrossing partitions of a sorted ground set: the block of the minimum
/// splits the rest into independent gap segments.
fn nc_partitions(ground: &[u8], acc: &mut Vec<Vec<u8>>, out: &mut Vec<Vec<Vec<u8>>>) {
    if ground.is_empty() {
        out.push(acc.clone());
        return;
    }
    let first = ground[0];
    let rest = &ground[1..];
    // choose the block of `first` as a subset of rest, then partition each gap
    for mask in 0..(1u32 << rest.len()) {
        let mut block = vec![first];
        let mut gaps: Vec<Vec<u8>> = vec![Vec::new()];
        for (idx, &v) in rest.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                block.push(v);
                gaps.push(Vec::new());
            } else {
                gaps.last_mut().unwrap().push(v);
            }
        }
        acc.push(block);
        distribute_gaps(&gaps, 0, acc, out);
        acc.pop();
    }
}

fn distribute_gaps(
    gaps: &[Vec<u8>],
    k: usize,
    acc: &mut Vec<Vec<u8>>,
    out: &mut Vec<Vec<Vec<u8>>>,
) {
    if k == gaps.len() {
        out.push(acc.clone());
        return;
    }
    // partition gap k, then recurse into the remaining gaps for each result
    let mut sub = Vec::new();
    nc_partitions(&gaps[k], &mut Vec::new(), &mut sub);
    for parts in sub {
        let len = acc.len();
        acc.extend(parts);
        distribute_gaps(gaps, k + 1, acc, out);
        acc.truncate(len);
    }
}

/// Slow reference route: filter the full symmetric group.
pub fn enumerate_nc_by_filter(n: usize) -> Vec<Perm> {
    all_perms(n).into_iter().filter(Perm::is_noncrossing).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        Perm::parse(s).unwrap()
    }

    #[test]
    fn compose_order_is_u_after_v() {
        let u = p("231");
        let v = p("213");
        // (u∘v)(1) = u(2) = 3
        assert_eq!(u.compose(&v), p("321"));
    }

    #[test]
    fn backwards_cycle_pair_is_612543() {
        let w = Perm::from_cycles(&[vec![6, 3, 2, 1], vec![5, 4]], 6).unwrap();
        assert_eq!(w, p("612543"));
        assert!(w.is_noncrossing());
        assert_eq!(w.length(), 8);
    }

    #[test]
    fn crossing_examples() {
        assert!(!p("231").is_noncrossing()); // forward 3-cycle
        assert!(p("312").is_noncrossing()); // backwards 3-cycle
        assert!(!Perm::from_cycles(&[vec![3, 1], vec![4, 2]], 4)
            .unwrap()
            .is_noncrossing()); // interleaved supports
        assert!(Perm::from_cycles(&[vec![4, 1], vec![3, 2]], 4)
            .unwrap()
            .is_noncrossing()); // nested supports
    }

    #[test]
    fn nc_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429];
        for n in 1..=7 {
            let direct = enumerate_nc(n);
            assert_eq!(direct.len(), catalan[n], "n={n}");
            assert_eq!(direct, enumerate_nc_by_filter(n), "n={n}");
        }
    }

    #[test]
    fn invnc_of_612543() {
        let w = p("612543");
        assert_eq!(
            w.noncrossing_inversions(),
            vec![(1, 2), (1, 3), (1, 6), (4, 5), (4, 6)]
        );
    }

    #[test]
    fn invnc_of_4213() {
        let w = p("4213");
        assert_eq!(w.noncrossing_inversions(), vec![(1, 3), (1, 4), (2, 3)]);
    }

    #[test]
    fn bruhat_tableau_matches_cover_closure() {
        for n in 2..=4 {
            let perms = all_perms(n);
            // reflexive-transitive closure of length-increasing transposition covers
            let idx = |q: &Perm| perms.binary_search(q).unwrap();
            let m = perms.len();
            let mut leq = vec![vec![false; m]; m];
            for (i, u) in perms.iter().enumerate() {
                leq[i][i] = true;
                for a in 1..=n as u8 {
                    for b in a + 1..=n as u8 {
                        let v = u.swap_values(a, b);
                        if v.length() == u.length() + 1 {
                            leq[i][idx(&v)] = true;
                        }
                    }
                }
            }
            for _ in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        if leq[i][j] {
                            for k in 0..m {
                                if leq[j][k] {
                                    leq[i][k] = true;
                                }
                            }
                        }
                    }
                }
            }
            for (i, u) in perms.iter().enumerate() {
                for (j, w) in perms.iter().enumerate() {
                    assert_eq!(bruhat_leq(u, w), leq[i][j], "{u:?} vs {w:?}");
                }
            }
        }
    }

    #[test]
    fn kreweras_covers_are_cayley_edges() {
        for n in 2..=5 {
            let nc = enumerate_nc(n);
            for u in &nc {
                for w in &nc {
                    if u == w {
                        continue;
                    }
                    let cover = kreweras_leq(u, w)
                        && nc.iter().all(|m| {
                            !(kreweras_leq(u, m) && kreweras_leq(m, w) && m != u && m != w)
                        });
                    let edge = cayley_edge(u, w).is_some() && kreweras_leq(u, w);
                    assert_eq!(cover, edge, "n={n} {u:?} {w:?}");
                }
            }
        }
    }

    #[test]
    fn epsilon_example() {
        let w = p("15684237");
        assert_eq!(w.epsilon(3), p("261795348"));
    }

    #[test]
    fn psi_on_permutations() {
        assert_eq!(p("21").psi_minus(2), p("321"));
        assert_eq!(p("21").psi_plus(1), p("312"));
        assert_eq!(p("1").psi_plus(1), p("21"));
        assert_eq!(p("321").psi_minus(3), p("4231"));
    }

    #[test]
    fn blocks_roundtrip() {
        for w in enumerate_nc(6) {
            let blocks = w.nc_blocks().unwrap();
            assert_eq!(Perm::from_nc_blocks(&blocks, 6).unwrap(), w);
        }
    }
}
