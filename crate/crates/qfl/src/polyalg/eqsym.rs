//! Forest-basis expansions, the equivariant quasisymmetric membership and
//! ideal tests, composition zigzags, and the positivity gates.

use std::collections::BTreeMap;

use num_bigint::Sign;

use super::forestpoly::{forest_poly, truncate_vars};
use super::mpoly::{MPoly, MAXV};
use super::ops::{ev, localization_functional, translate_t};
use crate::forest::{add_trailing, enumerate_ltforest, lter, BnForest, Node, Word};
use crate::permnc::enumerate_nc;

/// The building word used to extract a class's expansion coefficient:
/// the class padded with trailing leaves up to n.
pub fn expansion_word(class: &BnForest, n: usize) -> Word {
    add_trailing(class, n).canonical_word()
}

/// Expands f over the forest classes with terminal labels in [n]:
/// f = sum over classes of q_F(t) P_F with the polynomials truncated at n
/// and every coefficient free of x and of slots beyond n. The
/// reconstruction identity is checked exactly before returning.
pub fn expand_forest_basis(f: &MPoly, n: usize) -> BTreeMap<BnForest, MPoly> {
    assert!(
        f.max_x() <= n && f.max_t() <= n,
        "expansion over n = {n} needs support within the first {n} slots"
    );
    let mut out = BTreeMap::new();
    let mut recon = MPoly::zero();
    for class in enumerate_ltforest(n, f.x_degree() as usize) {
        let q = localization_functional(&expansion_word(&class, n), f);
        assert!(q.is_t_only(), "expansion coefficients live in Z[t]");
        let q = truncate_vars(&q, n);
        if q.is_zero() {
            continue;
        }
        recon = recon.add(&q.mul(&truncate_vars(&forest_poly(&class), n)));
        out.insert(class, q);
    }
    assert_eq!(recon, *f, "forest-basis expansion must reconstruct f");
    out
}

/// Membership in the equivariant quasisymmetric subring: the expansion may
/// touch only the empty class and zigzags (terminal label set exactly {n}).
pub fn is_eqsym(f: &MPoly, n: usize) -> bool {
    expand_forest_basis(f, n)
        .keys()
        .all(|class| class.nleaves() == 0 || lter(class) == [n as u8])
}

/// Membership in the kernel of every noncrossing fixed-point evaluation.
pub fn ideal_member(f: &MPoly, n: usize) -> bool {
    enumerate_nc(n).iter().all(|w| ev(f, w).is_zero())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Positivity {
    NotTranslationInvariant,
    Positive,
    NotPositive,
}

/// Graham's criterion for a coefficient in Z[t]: the polynomial must be
/// invariant under a common shift of all t variables, and nonnegative once
/// each t_i is rewritten as a sum of simple roots a_1 + ... + a_{i-1}
/// (the root a_j is carried as t_j in the output of the substitution).
pub fn graham_positivity(f: &MPoly) -> Positivity {
    assert!(f.max_x() == 0, "positivity gate applies to t polynomials");
    assert!(f.max_t() < MAXV, "top t slot is reserved for the shift");
    if translate_t(f, MAXV) != *f {
        return Positivity::NotTranslationInvariant;
    }
    let tv: Vec<Option<MPoly>> = (1..=f.max_t())
        .map(|i| {
            let mut s = MPoly::zero();
            for j in 1..i {
                s = s.add(&MPoly::t(j));
            }
            Some(s)
        })
        .collect();
    let rooted = f.subst_all(&[], &tv);
    if rooted.terms().all(|(_, c)| c.sign() != Sign::Minus) {
        Positivity::Positive
    } else {
        Positivity::NotPositive
    }
}

/// The zigzag class of a composition alpha inside level n: a path tree
/// whose terminal pair lands on (n, n+1), preceded by isolated leaves.
/// Climbing from the terminal, step s attaches a new leaf on the left
/// exactly when d - s is a partial sum of alpha, d the degree.
pub fn zigzag_for_composition(alpha: &[u8], n: usize) -> BnForest {
    let parts = alpha.len();
    assert!(parts >= 1 && alpha.iter().all(|&a| a >= 1), "parts must be positive");
    assert!(parts <= n, "composition needs at most n parts");
    let d: u32 = alpha.iter().map(|&a| a as u32).sum();
    let mut descents = Vec::new();
    let mut acc = 0u32;
    for &a in &alpha[..parts - 1] {
        acc += a as u32;
        descents.push(acc);
    }
    let mut lo = n as u8;
    let mut hi = n as u8 + 1;
    let mut tree = Node::Internal {
        color: crate::forest::Color::Black,
        left: Box::new(Node::Leaf(lo)),
        right: Box::new(Node::Leaf(hi)),
    };
    for s in 1..d {
        if descents.binary_search(&(d - s)).is_ok() {
            lo -= 1;
            tree = Node::Internal {
                color: crate::forest::Color::Black,
                left: Box::new(Node::Leaf(lo)),
                right: Box::new(tree),
            };
        } else {
            hi += 1;
            tree = Node::Internal {
                color: crate::forest::Color::Black,
                left: Box::new(tree),
                right: Box::new(Node::Leaf(hi)),
            };
        }
    }
    let mut roots: Vec<Node> = (1..lo).map(Node::Leaf).collect();
    roots.push(tree);
    let f = BnForest::from_roots(roots).expect("zigzag construction is well formed");
    debug_assert_eq!(lter(&f), vec![n as u8]);
    f
}

/// The double fundamental of a composition in level n: the zigzag's
/// polynomial truncated to the first n slots.
pub fn fundamental_double(alpha: &[u8], n: usize) -> MPoly {
    truncate_vars(&forest_poly(&zigzag_for_composition(alpha, n)), n)
}
