//! Bicolored nested forests, their word calculus, colored Tamari rewriting,
//! faces, and torus fixed-point sets.
//!
//! A forest is a sequence of planar binary trees whose leaves are labeled
//! `1..=n` left to right across the whole forest. Tree supports are pairwise
//! noncrossing; nesting is allowed (an entire root may sit inside a gap of
//! another root's span). Internal nodes are colored black or white.
//!
//! Forests are built by words in the letters `r_i^-` (insert an isolated
//! leaf at position i), `r_i^+` (replace leaf i by a white node with leaf
//! children i, i+1), and `e_i` (same with a black node). Distinct words can
//! build the same forest; forest equality is structural.

use crate::permnc::Perm;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("letter {0} cannot be applied: {1}")]
    BadLetter(String, String),
    #[error("cannot parse word: {0}")]
    Parse(String),
    #[error("forest is not a normal form")]
    NotNormal,
    #[error("forest is not plain (all-black, nesting-free)")]
    NotPlain,
    #[error("leaf labels must be 1..=n exactly once")]
    BadLabels,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

/// A node of a planar binary tree with u8 leaf labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Node {
    Leaf(u8),
    Internal {
        color: Color,
        left: Box<Node>,
        right: Box<Node>,
    },
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        matches!(self, Node::Leaf(_))
    }

    pub fn min_leaf(&self) -> u8 {
        match self {
            Node::Leaf(i) => *i,
            Node::Internal { left, .. } => left.min_leaf(),
        }
    }

    pub fn max_leaf(&self) -> u8 {
        match self {
            Node::Leaf(i) => *i,
            Node::Internal { right, .. } => right.max_leaf(),
        }
    }

    fn shift_labels(&mut self, from: u8, by: i8) {
        match self {
            Node::Leaf(i) => {
                if *i >= from {
                    *i = (*i as i16 + by as i16) as u8;
                }
            }
            Node::Internal { left, right, .. } => {
                left.shift_labels(from, by);
                right.shift_labels(from, by);
            }
        }
    }

    /// Replaces the leaf labeled `i` (which must exist in this subtree for
    /// the call to have effect) by a colored node over leaves i, i+1.
    /// Caller shifts higher labels first.
    fn split_leaf(&mut self, i: u8, color: Color) -> bool {
        match self {
            Node::Leaf(j) if *j == i => {
                *self = Node::Internal {
                    color,
                    left: Box::new(Node::Leaf(i)),
                    right: Box::new(Node::Leaf(i + 1)),
                };
                true
            }
            Node::Leaf(_) => false,
            Node::Internal { left, right, .. } => {
                left.split_leaf(i, color) || right.split_leaf(i, color)
            }
        }
    }

    fn internal_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Internal { left, right, .. } => 1 + left.internal_count() + right.internal_count(),
        }
    }

    fn black_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Internal { color, left, right } => {
                (*color == Color::Black) as usize + left.black_count() + right.black_count()
            }
        }
    }

    fn leaves(&self, out: &mut Vec<u8>) {
        match self {
            Node::Leaf(i) => out.push(*i),
            Node::Internal { left, right, .. } => {
                left.leaves(out);
                right.leaves(out);
            }
        }
    }
}

/// One letter of a building word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    RMinus(u8),
    RPlus(u8),
    E(u8),
}

impl Letter {
    pub fn index(&self) -> u8 {
        match self {
            Letter::RMinus(i) | Letter::RPlus(i) | Letter::E(i) => *i,
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            Letter::E(_) => 0,
            Letter::RMinus(_) => 1,
            Letter::RPlus(_) => 2,
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.index(), self.kind_rank()).cmp(&(other.index(), other.kind_rank()))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::RMinus(i) => write!(f, "r{i}-"),
            Letter::RPlus(i) => write!(f, "r{i}+"),
            Letter::E(i) => write!(f, "e{i}"),
        }
    }
}

pub type Word = Vec<Letter>;

pub fn parse_word(s: &str) -> Result<Word, ForestError> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let bad = || ForestError::Parse(tok.to_string());
        let (head, idx_str, sign) = if let Some(rest) = tok.strip_prefix('r') {
            if let Some(core) = rest.strip_suffix('-') {
                ('r', core, '-')
            } else if let Some(core) = rest.strip_suffix('+') {
                ('r', core, '+')
            } else {
                return Err(bad());
            }
        } else if let Some(rest) = tok.strip_prefix('e') {
            ('e', rest, ' ')
        } else {
            return Err(bad());
        };
        let i: u8 = idx_str.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        out.push(match (head, sign) {
            ('r', '-') => Letter::RMinus(i),
            ('r', '+') => Letter::RPlus(i),
            ('e', _) => Letter::E(i),
            _ => return Err(bad()),
        });
    }
    Ok(out)
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// A bicolored nested forest. Roots are kept sorted by minimum leaf.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BnForest {
    roots: Vec<Node>,
}

impl BnForest {
    pub fn empty() -> BnForest {
        BnForest { roots: Vec::new() }
    }

    /// Assembles a forest from root trees, checking that the leaf labels are
    /// exactly 1..=n.
    pub fn from_roots(roots: Vec<Node>) -> Result<BnForest, ForestError> {
        let mut f = BnForest { roots };
        f.sort_roots();
        let mut leaves = Vec::new();
        for r in &f.roots {
            r.leaves(&mut leaves);
        }
        let mut sorted = leaves;
        sorted.sort_unstable();
        if sorted != (1..=sorted.len() as u8).collect::<Vec<_>>() {
            return Err(ForestError::BadLabels);
        }
        Ok(f)
    }

    pub fn roots(&self) -> &[Node] {
        &self.roots
    }

    pub fn nleaves(&self) -> usize {
        let mut v = Vec::new();
        for r in &self.roots {
            r.leaves(&mut v);
        }
        v.len()
    }

    /// Number of internal nodes.
    pub fn internal_count(&self) -> usize {
        self.roots.iter().map(Node::internal_count).sum()
    }

    pub fn black_count(&self) -> usize {
        self.roots.iter().map(Node::black_count).sum()
    }

    fn sort_roots(&mut self) {
        self.roots.sort_by_key(Node::min_leaf);
    }

    pub fn apply_letter(&mut self, l: Letter) -> Result<(), ForestError> {
        let n = self.nleaves() as u8;
        let err = |msg: &str| Err(ForestError::BadLetter(l.to_string(), msg.to_string()));
        match l {
            Letter::RMinus(i) => {
                if i > n + 1 {
                    return err("insert position out of range");
                }
                for r in &mut self.roots {
                    r.shift_labels(i, 1);
                }
                self.roots.push(Node::Leaf(i));
                self.sort_roots();
            }
            Letter::RPlus(i) | Letter::E(i) => {
                if i > n {
                    return err("no such leaf");
                }
                let color = if matches!(l, Letter::E(_)) {
                    Color::Black
                } else {
                    Color::White
                };
                for r in &mut self.roots {
                    r.shift_labels(i + 1, 1);
                }
                let hit = self.roots.iter_mut().any(|r| r.split_leaf(i, color));
                debug_assert!(hit);
                self.sort_roots();
            }
        }
        Ok(())
    }

    pub fn from_word(w: &[Letter]) -> Result<BnForest, ForestError> {
        let mut f = BnForest::empty();
        for &l in w {
            f.apply_letter(l)?;
        }
        Ok(f)
    }

    pub fn from_word_str(s: &str) -> Result<BnForest, ForestError> {
        BnForest::from_word(&parse_word(s)?)
    }

    /// All-black and nesting-free: the canonical forests counted by Catalan
    /// numbers, whose words are (r_1^-)^{n-k} followed by e-letters.
    pub fn is_plain(&self) -> bool {
        fn tree_contiguous(node: &Node, all_black: &mut bool) -> bool {
            match node {
                Node::Leaf(_) => true,
                Node::Internal { color, left, right } => {
                    if *color != Color::Black {
                        *all_black = false;
                    }
                    tree_contiguous(left, all_black)
                        && tree_contiguous(right, all_black)
                        && left.max_leaf() + 1 == right.min_leaf()
                }
            }
        }
        let mut all_black = true;
        self.roots
            .iter()
            .all(|r| tree_contiguous(r, &mut all_black))
            && all_black
    }

    /// Every internal right child is black.
    pub fn is_normal(&self) -> bool {
        fn ok(node: &Node) -> bool {
            match node {
                Node::Leaf(_) => true,
                Node::Internal { left, right, .. } => {
                    let right_ok = match right.as_ref() {
                        Node::Leaf(_) => true,
                        Node::Internal { color, .. } => *color == Color::Black,
                    };
                    right_ok && ok(left) && ok(right)
                }
            }
        }
        self.roots.iter().all(ok)
    }

    /// Colored Tamari normal form: rotate away white internal right
    /// children. `v_c(A, w_white(B, C)) → v'_white(z_c(A, B), C)`.
    pub fn tamari_normal_form(&self) -> BnForest {
        fn rotate(node: &mut Node) -> bool {
            if let Node::Internal { color, left, right } = node {
                if let Node::Internal {
                    color: Color::White,
                    left: b,
                    right: c,
                } = right.as_mut()
                {
                    let z = Node::Internal {
                        color: *color,
                        left: std::mem::replace(left, Box::new(Node::Leaf(0))),
                        right: std::mem::replace(b, Box::new(Node::Leaf(0))),
                    };
                    let c = std::mem::replace(c, Box::new(Node::Leaf(0)));
                    *node = Node::Internal {
                        color: Color::White,
                        left: Box::new(z),
                        right: c,
                    };
                    return true;
                }
                return rotate(left) || rotate(right);
            }
            false
        }
        let mut f = self.clone();
        loop {
            let mut changed = false;
            for r in &mut f.roots {
                while rotate(r) {
                    changed = true;
                }
            }
            if !changed {
                return f;
            }
        }
    }

    pub fn tamari_equivalent(&self, other: &BnForest) -> bool {
        self.tamari_normal_form() == other.tamari_normal_form()
    }

    /// Transpositions `τ_v = (rightmost leaf of left child, rightmost leaf
    /// of v)` in ancestors-first, left-to-right order.
    pub fn taus(&self) -> Vec<(u8, u8)> {
        fn walk(node: &Node, out: &mut Vec<(u8, u8)>) {
            if let Node::Internal { left, right, .. } = node {
                out.push((left.max_leaf(), node.max_leaf()));
                walk(left, out);
                walk(right, out);
            }
        }
        let mut out = Vec::new();
        for r in &self.roots {
            walk(r, &mut out);
        }
        out
    }

    /// The noncrossing permutation `Π τ_v` over any ancestors-first order.
    pub fn ncperm(&self) -> Perm {
        let n = self.nleaves();
        let mut acc = Perm::identity(n);
        for (a, b) in self.taus() {
            acc = acc.compose(&Perm::from_cycles(&[vec![b, a]], n).unwrap());
        }
        acc
    }

    /// `(min leaf, max leaf)` of every internal node, sorted.
    pub fn spreads(&self) -> Vec<(u8, u8)> {
        fn walk(node: &Node, out: &mut Vec<(u8, u8)>) {
            if let Node::Internal { left, right, .. } = node {
                out.push((node.min_leaf(), node.max_leaf()));
                walk(left, out);
                walk(right, out);
            }
        }
        let mut out = Vec::new();
        for r in &self.roots {
            walk(r, &mut out);
        }
        out.sort_unstable();
        out
    }

    /// Canonical label of each internal node: the rightmost leaf of its
    /// left child (the first component of τ_v). Sorted.
    pub fn canonical_labels(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.taus().iter().map(|t| t.0).collect();
        out.sort_unstable();
        out
    }

    /// Candidate last letters with the forest they leave behind.
    fn peel_candidates(&self) -> Vec<(Letter, BnForest)> {
        let mut out = Vec::new();
        for (ri, root) in self.roots.iter().enumerate() {
            match root {
                Node::Leaf(i) => {
                    let mut f = self.clone();
                    f.roots.remove(ri);
                    for r in &mut f.roots {
                        r.shift_labels(i + 1, -1);
                    }
                    out.push((Letter::RMinus(*i), f));
                }
                Node::Internal { .. } => {}
            }
        }
        // terminal nodes over consecutive leaves (i, i+1)
        fn scan(node: &Node, path: &mut Vec<u8>, hits: &mut Vec<(u8, Color, Vec<u8>)>, depth: u8) {
            if let Node::Internal { color, left, right } = node {
                if let (Node::Leaf(a), Node::Leaf(b)) = (left.as_ref(), right.as_ref()) {
                    if *b == *a + 1 {
                        hits.push((*a, *color, path.clone()));
                    }
                }
                path.push(0);
                scan(left, path, hits, depth + 1);
                path.pop();
                path.push(1);
                scan(right, path, hits, depth + 1);
                path.pop();
            }
        }
        for (ri, root) in self.roots.iter().enumerate() {
            let mut hits = Vec::new();
            scan(root, &mut Vec::new(), &mut hits, 0);
            for (a, color, path) in hits {
                let mut f = self.clone();
                // collapse that node back to a single leaf
                {
                    let mut cur = &mut f.roots[ri];
                    for step in &path {
                        cur = match cur {
                            Node::Internal { left, right, .. } => {
                                if *step == 0 {
                                    left.as_mut()
                                } else {
                                    right.as_mut()
                                }
                            }
                            Node::Leaf(_) => unreachable!(),
                        };
                    }
                    *cur = Node::Leaf(a);
                }
                for r in &mut f.roots {
                    r.shift_labels(a + 2, -1);
                }
                f.sort_roots();
                let letter = if color == Color::Black {
                    Letter::E(a)
                } else {
                    Letter::RPlus(a)
                };
                out.push((letter, f));
            }
        }
        out
    }

    /// A deterministic building word: repeatedly peel the largest valid
    /// last letter (letters ordered by index, then e < r- < r+).
    pub fn canonical_word(&self) -> Word {
        let mut rev = Vec::new();
        let mut cur = self.clone();
        while cur.nleaves() > 0 {
            let (letter, rest) = cur
                .peel_candidates()
                .into_iter()
                .max_by_key(|(l, _)| *l)
                .expect("nonempty forest has a last letter");
            rev.push(letter);
            cur = rest;
        }
        rev.reverse();
        rev
    }

    /// Collapses the terminal node over leaves (i, i+1) back to leaf i,
    /// renumbering higher leaves down. None if there is no such node.
    pub fn collapse_terminal(&self, i: u8) -> Option<BnForest> {
        self.peel_candidates()
            .into_iter()
            .find(|(l, _)| matches!(l, Letter::E(a) | Letter::RPlus(a) if *a == i))
            .map(|(_, f)| f)
    }

    /// Face set: all forests obtained by switching any subset of the black
    /// nodes' e-letters to r^- or r^+ in a building word.
    pub fn face_set(&self) -> Vec<BnForest> {
        let word = self.canonical_word();
        let e_positions: Vec<usize> = word
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, Letter::E(_)))
            .map(|(p, _)| p)
            .collect();
        let k = e_positions.len();
        let mut out = Vec::with_capacity(3usize.pow(k as u32));
        let mut choice = vec![0u8; k];
        loop {
            let mut w = word.clone();
            for (slot, &pos) in choice.iter().zip(&e_positions) {
                let i = w[pos].index();
                w[pos] = match slot {
                    0 => Letter::E(i),
                    1 => Letter::RMinus(i),
                    _ => Letter::RPlus(i),
                };
            }
            out.push(BnForest::from_word(&w).expect("face word is valid"));
            // odometer over {0,1,2}^k
            let mut c = 0;
            while c < k {
                choice[c] += 1;
                if choice[c] < 3 {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
            if c == k {
                break;
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The 0-dimensional faces: every black node resolved to r^- or r^+.
    pub fn vert_set(&self) -> Vec<BnForest> {
        self.face_set()
            .into_iter()
            .filter(|g| g.black_count() == 0)
            .collect()
    }

    pub fn leq_re(&self, bigger: &BnForest) -> bool {
        bigger.face_set().binary_search(self).is_ok()
    }

    /// Torus fixed points of the associated variety: NCPerm over the
    /// vertices of the face cube.
    pub fn fixed_set(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = self.vert_set().iter().map(BnForest::ncperm).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Deletes the left edge at every internal right child (all black in a
    /// normal form), then takes NCPerm. Defined on normal forms.
    pub fn for_to_nc(&self) -> Result<Perm, ForestError> {
        if !self.is_normal() {
            return Err(ForestError::NotNormal);
        }
        fn strip(node: Node, is_right_child: bool, extras: &mut Vec<Node>) -> Node {
            match node {
                Node::Leaf(_) => node,
                Node::Internal { color, left, right } => {
                    let left = strip(*left, false, extras);
                    let right = strip(*right, true, extras);
                    if is_right_child {
                        extras.push(left);
                        right
                    } else {
                        Node::Internal {
                            color,
                            left: Box::new(left),
                            right: Box::new(right),
                        }
                    }
                }
            }
        }
        let mut f = BnForest::empty();
        let mut extras = Vec::new();
        for r in self.roots.clone() {
            f.roots.push(strip(r, false, &mut extras));
        }
        f.roots.extend(extras);
        f.sort_roots();
        Ok(f.ncperm())
    }
}

impl fmt::Display for BnForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", word_to_string(&self.canonical_word()))
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        match self {
            Node::Leaf(i) => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("leaf", i)?;
                m.end()
            }
            Node::Internal { color, left, right } => {
                let mut m = s.serialize_map(Some(2))?;
                m.serialize_entry("color", color)?;
                m.serialize_entry("children", &[left.as_ref(), right.as_ref()])?;
                m.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Node, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            leaf: Option<u8>,
            color: Option<Color>,
            children: Option<Vec<Node>>,
        }
        let raw = Raw::deserialize(d)?;
        match (raw.leaf, raw.color, raw.children) {
            (Some(i), None, None) => Ok(Node::Leaf(i)),
            (None, Some(color), Some(ch)) if ch.len() == 2 => {
                let mut it = ch.into_iter();
                Ok(Node::Internal {
                    color,
                    left: Box::new(it.next().unwrap()),
                    right: Box::new(it.next().unwrap()),
                })
            }
            _ => Err(D::Error::custom("expected {leaf} or {color, children}")),
        }
    }
}

impl Serialize for BnForest {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.roots.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BnForest {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<BnForest, D::Error> {
        let roots = Vec::<Node>::deserialize(d)?;
        BnForest::from_roots(roots).map_err(D::Error::custom)
    }
}

type ForestCache = Mutex<HashMap<usize, Arc<Vec<BnForest>>>>;

fn bnfor_cache() -> &'static ForestCache {
    static CACHE: OnceLock<ForestCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn plain_cache() -> &'static ForestCache {
    static CACHE: OnceLock<ForestCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All bicolored nested forests on n leaves, deduplicated over every
/// building word.
pub fn enumerate_bnfor(n: usize) -> Arc<Vec<BnForest>> {
    if let Some(hit) = bnfor_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut level: HashSet<BnForest> = HashSet::new();
    level.insert(BnForest::empty());
    for k in 1..=n {
        let mut next = HashSet::with_capacity(level.len() * (3 * k - 2));
        for f in &level {
            for i in 1..=k as u8 {
                let mut g = f.clone();
                g.apply_letter(Letter::RMinus(i)).unwrap();
                next.insert(g);
                if i < k as u8 {
                    let mut g = f.clone();
                    g.apply_letter(Letter::RPlus(i)).unwrap();
                    next.insert(g);
                    let mut g = f.clone();
                    g.apply_letter(Letter::E(i)).unwrap();
                    next.insert(g);
                }
            }
        }
        level = next;
    }
    let mut out: Vec<BnForest> = level.into_iter().collect();
    out.sort();
    let arc = Arc::new(out);
    bnfor_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

/// Plain forests (all-black, contiguous tree supports): the Catalan family
/// underlying the forest polynomial basis.
pub fn enumerate_plain_forests(n: usize) -> Arc<Vec<BnForest>> {
    if let Some(hit) = plain_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    fn trees(lo: u8, hi: u8) -> Vec<Node> {
        if lo == hi {
            return vec![Node::Leaf(lo)];
        }
        let mut out = Vec::new();
        for s in lo..hi {
            for l in trees(lo, s) {
                for r in trees(s + 1, hi) {
                    out.push(Node::Internal {
                        color: Color::Black,
                        left: Box::new(l.clone()),
                        right: Box::new(r),
                    });
                }
            }
        }
        out
    }
    fn forests(lo: u8, hi: u8) -> Vec<Vec<Node>> {
        if lo > hi {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for m in lo..=hi {
            // first component spans [lo..=m] (a single leaf when m == lo)
            for t in trees(lo, m) {
                for rest in forests(m + 1, hi) {
                    let mut f = vec![t.clone()];
                    f.extend(rest);
                    out.push(f);
                }
            }
        }
        out
    }
    let mut out: Vec<BnForest> = if n == 0 {
        vec![BnForest::empty()]
    } else {
        forests(1, n as u8)
            .into_iter()
            .map(|roots| BnForest { roots })
            .collect()
    };
    out.sort();
    let arc = Arc::new(out);
    plain_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

/// Single all-black trees spanning [1..=n].
pub fn enumerate_trees(n: usize) -> Vec<BnForest> {
    enumerate_plain_forests(n)
        .iter()
        .filter(|f| f.roots.len() == 1 && f.internal_count() == n - 1)
        .cloned()
        .collect()
}

pub fn enumerate_normal_forms(n: usize) -> Vec<BnForest> {
    enumerate_bnfor(n)
        .iter()
        .filter(|f| f.is_normal())
        .cloned()
        .collect()
}

/// Memoized inverse of `for_to_nc` restricted to plain forests.
pub fn forest_for_nc(v: &Perm) -> Option<BnForest> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<HashMap<Perm, BnForest>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let n = v.n();
    let map = {
        let mut guard = cache.lock().unwrap();
        guard
            .entry(n)
            .or_insert_with(|| {
                Arc::new(
                    enumerate_plain_forests(n)
                        .iter()
                        .map(|f| (f.for_to_nc().unwrap(), f.clone()))
                        .collect(),
                )
            })
            .clone()
    };
    map.get(v).cloned()
}

/// Writes a normal form as (plain forest, subset of its internal nodes).
/// The subset is returned as a sorted list of node spreads.
pub fn forest_to_pair(h: &BnForest) -> Result<(BnForest, Vec<(u8, u8)>), ForestError> {
    if !h.is_normal() {
        return Err(ForestError::NotNormal);
    }
    // whites of h survive in the plain forest with the same spread
    fn white_spreads(node: &Node, out: &mut Vec<(u8, u8)>) {
        if let Node::Internal { color, left, right } = node {
            if *color == Color::White {
                out.push((node.min_leaf(), node.max_leaf()));
            }
            white_spreads(left, out);
            white_spreads(right, out);
        }
    }
    let mut s: Vec<(u8, u8)> = Vec::new();
    for r in h.roots() {
        white_spreads(r, &mut s);
    }
    // blacken, then reattach nested roots right-to-left with new black nodes
    let mut roots: Vec<Node> = h
        .roots
        .iter()
        .cloned()
        .map(|mut r| {
            fn blacken(n: &mut Node) {
                if let Node::Internal { color, left, right } = n {
                    *color = Color::Black;
                    blacken(left);
                    blacken(right);
                }
            }
            blacken(&mut r);
            r
        })
        .collect();
    loop {
        // a nested root lies strictly inside some other root's span
        let nested = roots.iter().position(|r| {
            roots.iter().any(|host| {
                !std::ptr::eq(host, r)
                    && host.min_leaf() < r.min_leaf()
                    && r.max_leaf() < host.max_leaf()
            })
        });
        let Some(pos) = nested else { break };
        // among nested roots pick the rightmost so gap chains attach correctly
        let pos = roots
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                roots.iter().any(|host| {
                    !std::ptr::eq(host, *r)
                        && host.min_leaf() < r.min_leaf()
                        && r.max_leaf() < host.max_leaf()
                })
            })
            .max_by_key(|(_, r)| r.min_leaf())
            .map(|(i, _)| i)
            .unwrap_or(pos);
        let r = roots.remove(pos);
        let (lo, hi) = (r.min_leaf(), r.max_leaf());
        // innermost containing root; containers form a chain
        let host = roots
            .iter_mut()
            .filter(|host| host.min_leaf() < lo && hi < host.max_leaf())
            .max_by_key(|host| host.min_leaf())
            .expect("nested root has a host");
        // descend to the deepest node whose child gap contains [lo, hi]
        fn attach(v: &mut Node, lo: u8, hi: u8, r: Node, s: &mut Vec<(u8, u8)>) {
            let Node::Internal { left, right, .. } = v else {
                unreachable!("gap search reached a leaf")
            };
            if lo > left.min_leaf() && hi < left.max_leaf() {
                return attach(left, lo, hi, r, s);
            }
            if lo > right.min_leaf() && hi < right.max_leaf() {
                return attach(right, lo, hi, r, s);
            }
            // it sits in the middle gap: new black node on the right edge
            debug_assert!(left.max_leaf() < lo && hi < right.min_leaf());
            let old_right = std::mem::replace(right, Box::new(Node::Leaf(0)));
            let z = Node::Internal {
                color: Color::Black,
                left: Box::new(r),
                right: old_right,
            };
            s.push((z.min_leaf(), z.max_leaf()));
            *right = Box::new(z);
        }
        attach(host, lo, hi, r, &mut s);
    }
    let mut plain = BnForest { roots };
    plain.sort_roots();
    if !plain.is_plain() {
        return Err(ForestError::NotPlain);
    }
    s.sort_unstable();
    Ok((plain, s))
}

/// Inverse of `forest_to_pair`: delete the chosen right children, whiten the
/// rest of the chosen nodes.
pub fn pair_to_forest(plain: &BnForest, s: &[(u8, u8)]) -> Result<BnForest, ForestError> {
    if !plain.is_plain() {
        return Err(ForestError::NotPlain);
    }
    let chosen: HashSet<(u8, u8)> = s.iter().copied().collect();
    fn walk(
        node: Node,
        is_right_child: bool,
        chosen: &HashSet<(u8, u8)>,
        extras: &mut Vec<Node>,
    ) -> Node {
        match node {
            Node::Leaf(_) => node,
            Node::Internal { color, left, right } => {
                let spread = (left.min_leaf(), right.max_leaf());
                let left = walk(*left, false, chosen, extras);
                let right = walk(*right, true, chosen, extras);
                if chosen.contains(&spread) {
                    if is_right_child {
                        extras.push(left);
                        return right;
                    }
                    return Node::Internal {
                        color: Color::White,
                        left: Box::new(left),
                        right: Box::new(right),
                    };
                }
                Node::Internal {
                    color,
                    left: Box::new(left),
                    right: Box::new(right),
                }
            }
        }
    }
    let mut extras = Vec::new();
    let mut roots = Vec::new();
    for r in plain.roots.clone() {
        roots.push(walk(r, false, &chosen, &mut extras));
    }
    roots.extend(extras);
    let mut f = BnForest { roots };
    f.sort_roots();
    Ok(f)
}

/// Labels i such that the forest has a terminal node over leaves (i, i+1).
pub fn lter(f: &BnForest) -> Vec<u8> {
    fn walk(node: &Node, out: &mut Vec<u8>) {
        if let Node::Internal { left, right, .. } = node {
            if let (Node::Leaf(a), Node::Leaf(b)) = (left.as_ref(), right.as_ref()) {
                if *b == *a + 1 {
                    out.push(*a);
                }
            }
            walk(left, out);
            walk(right, out);
        }
    }
    let mut out = Vec::new();
    for r in &f.roots {
        walk(r, &mut out);
    }
    out.sort_unstable();
    out
}

/// Removes trailing isolated leaves, the representative map for forest
/// classes modulo trailing leaves.
pub fn strip_trailing(f: &BnForest) -> BnForest {
    let mut g = f.clone();
    loop {
        let n = g.nleaves() as u8;
        let trailing = g
            .roots
            .iter()
            .position(|r| matches!(r, Node::Leaf(i) if *i == n));
        match trailing {
            Some(p) if n > 0 => {
                g.roots.remove(p);
            }
            _ => return g,
        }
    }
}

pub fn add_trailing(f: &BnForest, upto: usize) -> BnForest {
    let mut g = f.clone();
    let mut n = g.nleaves();
    while n < upto {
        n += 1;
        g.roots.push(Node::Leaf(n as u8));
    }
    g.sort_roots();
    g
}

/// Plain forest classes modulo trailing leaves with every terminal label in
/// [n] and at most `dmax` internal nodes, sorted. Degree-d support is
/// bounded by n + d.
pub fn enumerate_ltforest(n: usize, dmax: usize) -> Vec<BnForest> {
    let m = n + dmax + 1;
    let mut out: Vec<BnForest> = enumerate_plain_forests(m)
        .iter()
        .filter(|f| f.internal_count() <= dmax)
        .map(strip_trailing)
        .filter(|f| {
            let lt = lter(f);
            lt.iter().all(|&i| i as usize <= n)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Zigzag classes: LTer(F) = {n} exactly. Degree d contributes one class
/// per composition of d with at most n parts.
pub fn enumerate_zigzag(n: usize, dmax: usize) -> Vec<BnForest> {
    enumerate_ltforest(n, dmax)
        .into_iter()
        .filter(|f| lter(f) == vec![n as u8])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest(s: &str) -> BnForest {
        BnForest::from_word_str(s).unwrap()
    }

    #[test]
    fn word_insertion_semantics() {
        // r1- e1 r2-: black node over leaves (1,3), isolated leaf 2 nested
        let f = forest("r1- e1 r2-");
        assert_eq!(f.nleaves(), 3);
        assert_eq!(f.spreads(), vec![(1, 3)]);
        assert_eq!(f.roots().len(), 2);
        assert!(!f.is_plain());
    }

    #[test]
    fn bnfor_counts() {
        let expected = [1usize, 1, 3, 15, 93, 645];
        for n in 0..=5 {
            assert_eq!(enumerate_bnfor(n).len(), expected[n], "n={n}");
        }
    }

    #[test]
    fn plain_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429, 1430];
        for n in 0..=8 {
            let all = enumerate_plain_forests(n);
            assert_eq!(all.len(), catalan[n], "n={n}");
            assert!(all.iter().all(|f| f.is_plain()));
        }
        assert_eq!(enumerate_trees(4).len(), 5);
        assert_eq!(enumerate_trees(8).len(), 429);
    }

    #[test]
    fn black_census_polynomial() {
        // Σ_{F ∈ bnfor_3} t^{blacks} = 6 + 7t + 2t²
        let mut by_black = [0usize; 4];
        for f in enumerate_bnfor(3).iter() {
            by_black[f.black_count()] += 1;
        }
        assert_eq!(&by_black[..3], &[6, 7, 2]);
    }

    #[test]
    fn normal_form_census_n3() {
        let nf = enumerate_normal_forms(3);
        assert_eq!(nf.len(), 13);
        let mut by_black = [0usize; 3];
        for f in &nf {
            by_black[f.black_count()] += 1;
        }
        assert_eq!(by_black, [5, 6, 2]);
    }

    #[test]
    fn ncperm_left_comb_is_312() {
        let f = forest("r1- e1 e2");
        assert_eq!(f.ncperm(), Perm::parse("312").unwrap());
    }

    #[test]
    fn ncperm_six_leaf_example() {
        // NCPerm = (6321)(54) in cycle form
        let f = forest("r1- r1+ r2- e1 e3 r2+");
        assert_eq!(f.ncperm(), Perm::parse("612543").unwrap());
    }

    #[test]
    fn ncperm_respects_word_recursion() {
        // NCPerm(F·r_i^±) = Ψ_i^± NCPerm(F) on every bnfor_4 element
        for f in enumerate_bnfor(4).iter() {
            let base = f.ncperm();
            let k = f.nleaves() + 1;
            for i in 1..k as u8 {
                let mut g = f.clone();
                g.apply_letter(Letter::RMinus(i)).unwrap();
                assert_eq!(g.ncperm(), base.psi_minus(i));
                let mut g = f.clone();
                g.apply_letter(Letter::RPlus(i)).unwrap();
                assert_eq!(g.ncperm(), base.psi_plus(i));
            }
            let mut g = f.clone();
            g.apply_letter(Letter::RMinus(k as u8)).unwrap();
            assert_eq!(g.ncperm(), base.psi_minus(k as u8));
        }
    }

    #[test]
    fn canonical_word_roundtrip() {
        for f in enumerate_bnfor(5).iter() {
            let w = f.canonical_word();
            assert_eq!(&BnForest::from_word(&w).unwrap(), f);
        }
    }

    #[test]
    fn tamari_normal_form_is_normal_and_invariant() {
        for f in enumerate_bnfor(4).iter() {
            let nf = f.tamari_normal_form();
            assert!(nf.is_normal());
            assert_eq!(nf.tamari_normal_form(), nf);
            if f.is_normal() {
                assert_eq!(&nf, f);
            }
        }
    }

    #[test]
    fn tamari_rotation_matches_word_relations() {
        // e_i r_{i+1}^+ ~ r_i^+ e_i and r_i^+ r_{i+1}^+ ~ r_i^+ r_i^+
        for prefix in [vec![], parse_word("r1- r1-").unwrap()] {
            let base = BnForest::from_word(&prefix).unwrap();
            let k = base.nleaves() as u8;
            for i in 1..=k + 1 {
                let mk = |letters: [Letter; 2]| {
                    let mut w = prefix.clone();
                    w.push(Letter::RMinus(i));
                    w.extend(letters);
                    BnForest::from_word(&w)
                };
                let a = mk([Letter::E(i), Letter::RPlus(i + 1)]).unwrap();
                let b = mk([Letter::RPlus(i), Letter::E(i)]).unwrap();
                assert_ne!(a, b);
                assert!(a.tamari_equivalent(&b));
                let c = mk([Letter::RPlus(i), Letter::RPlus(i + 1)]).unwrap();
                let d = mk([Letter::RPlus(i), Letter::RPlus(i)]).unwrap();
                assert!(c.tamari_equivalent(&d));
            }
        }
    }

    #[test]
    fn for_to_nc_right_comb() {
        let f = forest("r1- e1 e2 e3");
        assert_eq!(f.for_to_nc().unwrap(), Perm::parse("4231").unwrap());
    }

    #[test]
    fn for_to_nc_follows_psi_rule() {
        // ForToNC(G·x_i) = Ψ_i^- ForToNC(G) iff x_i = r_i^- or leaf i is a
        // right child; Ψ_i^+ otherwise.
        for g in enumerate_bnfor(4).iter().filter(|g| g.is_normal()) {
            let base = g.for_to_nc().unwrap();
            let k = g.nleaves() as u8;
            for i in 1..=k {
                let mut h = g.clone();
                h.apply_letter(Letter::E(i)).unwrap();
                if !h.is_normal() {
                    continue;
                }
                let is_right_child = g.roots().iter().any(|r| {
                    fn find(n: &Node, i: u8, as_right: bool) -> Option<bool> {
                        match n {
                            Node::Leaf(j) => (*j == i).then_some(as_right),
                            Node::Internal { left, right, .. } => {
                                find(left, i, false).or_else(|| find(right, i, true))
                            }
                        }
                    }
                    find(r, i, false) == Some(true)
                });
                let expect = if is_right_child {
                    base.psi_minus(i)
                } else {
                    base.psi_plus(i)
                };
                assert_eq!(h.for_to_nc().unwrap(), expect);
            }
        }
    }

    #[test]
    fn fig8_forest_to_nc() {
        let f = forest("r1- e1 e1 e2");
        assert_eq!(f.for_to_nc().unwrap(), Perm::parse("4213").unwrap());
        assert_eq!(f.spreads(), vec![(1, 3), (1, 4), (2, 3)]);
    }

    #[test]
    fn spreads_equal_invnc_of_for_to_nc() {
        for n in 1..=6 {
            for f in enumerate_plain_forests(n).iter() {
                let v = f.for_to_nc().unwrap();
                let invnc: Vec<(u8, u8)> = v.noncrossing_inversions();
                assert_eq!(f.spreads(), invnc, "n={n} f={f}");
            }
        }
    }

    #[test]
    fn face_set_sizes_and_vertices() {
        for f in enumerate_bnfor(4).iter() {
            let k = f.black_count() as u32;
            let faces = f.face_set();
            assert_eq!(faces.len(), 3usize.pow(k), "f={f}");
            let verts = f.vert_set();
            assert_eq!(verts.len(), 2usize.pow(k));
            let fixed = f.fixed_set();
            assert_eq!(fixed.len(), 2usize.pow(k));
            assert!(faces.iter().all(|g| g.leq_re(f)));
        }
    }

    #[test]
    fn face_set_matches_edge_deletion_example() {
        let f = forest("r1- r1+ r2- e1 e3 r2+");
        let faces = f.face_set();
        for w in [
            "r1- r1+ r2- r1+ e3 r2+",
            "r1- r1+ r2- e1 r3- r2+",
            "r1- r1+ r2- r1- e3 r2+",
        ] {
            assert!(faces.binary_search(&forest(w)).is_ok(), "{w}");
        }
    }

    #[test]
    fn fixed_point_words_example() {
        let f = forest("r1- r1+ r2- e1 e3 r2+");
        let fixed = f.fixed_set();
        let expect = [
            Perm::from_cycles(&[vec![6, 3, 2, 1], vec![5, 4]], 6).unwrap(),
            Perm::from_cycles(&[vec![6, 3, 2, 1]], 6).unwrap(),
            Perm::from_cycles(&[vec![6, 3, 2], vec![5, 4]], 6).unwrap(),
            Perm::from_cycles(&[vec![6, 3, 2]], 6).unwrap(),
        ];
        assert_eq!(fixed.len(), 4);
        for w in expect {
            assert!(fixed.contains(&w));
        }
        // the two all-white vertices named by explicit words
        let verts = f.vert_set();
        assert!(verts.contains(&forest("r1- r1+ r2- r1- r3+ r2+")));
        assert!(verts.contains(&forest("r1- r1+ r2- r1- r3- r2+")));
    }

    #[test]
    fn pair_bijection_roundtrip() {
        for n in 1..=5 {
            let mut seen = HashSet::new();
            for f in enumerate_plain_forests(n).iter() {
                let spreads = f.spreads();
                for mask in 0..(1u32 << spreads.len()) {
                    let s: Vec<(u8, u8)> = spreads
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &p)| p)
                        .collect();
                    let h = pair_to_forest(f, &s).unwrap();
                    assert!(h.is_normal());
                    let (f2, s2) = forest_to_pair(&h).unwrap();
                    assert_eq!(&f2, f, "n={n} f={f} s={s:?}");
                    assert_eq!(s2, s);
                    assert_eq!(h.for_to_nc().unwrap(), f.for_to_nc().unwrap());
                    seen.insert(h);
                }
            }
            assert_eq!(seen.len(), enumerate_normal_forms(n).len(), "n={n}");
        }
    }

    #[test]
    fn ltforest_and_zigzag_counts() {
        // degree-d zigzags number 2^{d-1} once n >= d
        for n in 1..=4 {
            let zz = enumerate_zigzag(n, n);
            for d in 1..=n {
                let count = zz.iter().filter(|f| f.internal_count() == d).count();
                assert_eq!(count, 1 << (d - 1), "n={n} d={d}");
            }
        }
        // LTForest_1 is the left-comb chain: one class per degree
        let lt1 = enumerate_ltforest(1, 4);
        for d in 0..=4 {
            assert_eq!(lt1.iter().filter(|f| f.internal_count() == d).count(), 1);
        }
        // LTForest_2 degree-2 classes: X matches the rank of the degree
        let lt2 = enumerate_ltforest(2, 3);
        assert_eq!(lt2.iter().filter(|f| f.internal_count() == 2).count(), 3);
    }

    #[test]
    fn epsilon_recursion_links_trees_to_richardson_pairs() {
        // for a tree word r1- e_{i1} … e_{i_{n-1}}:
        //   u = ε_{i_{n-1}} ⋯ ε_{i_1}(id_{S_1}) has u(n) = n,
        //   v built from shifted indices equals u ∘ [n, 1, 2, …, n-1]
        for n in 2..=5 {
            for t in enumerate_trees(n) {
                let word = t.canonical_word();
                let indices: Vec<u8> = word[1..].iter().map(Letter::index).collect();
                let mut u = Perm::identity(1);
                let mut v = Perm::identity(1);
                for &i in &indices {
                    u = u.epsilon(i);
                    v = v.epsilon(i + 1);
                }
                assert_eq!(u.apply(n as u8), n as u8);
                let mut cox: Vec<u8> = vec![n as u8];
                cox.extend(1..n as u8);
                let c = Perm::from_one_line(cox).unwrap();
                assert_eq!(v, u.compose(&c), "tree {t}");
            }
        }
    }

    #[test]
    fn serde_roundtrip() {
        for f in enumerate_bnfor(4).iter().take(40) {
            let js = serde_json::to_string(f).unwrap();
            let back: BnForest = serde_json::from_str(&js).unwrap();
            assert_eq!(&back, f);
        }
        let f = forest("r1- e1 r2-");
        let js = serde_json::to_string(&f).unwrap();
        assert!(js.contains("\"color\":\"black\""));
        assert!(js.contains("\"leaf\":2"));
    }
}
