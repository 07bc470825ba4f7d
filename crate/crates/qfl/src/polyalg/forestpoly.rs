//! Double forest polynomials, indexed by plain forests modulo trailing
//! leaves. On a stripped class with N leaves the family is pinned down by
//! the trimming recursion
//!
//!   r_i^+ P_F - r_i^- P_F = (x_i - t_i) shift_i(P_{F/e_i})  for terminal i,
//!   r_i^+ P_F - r_i^- P_F = 0                               for other i < N,
//!   P_F(t; t) = 0                                           for nonempty F,
//!
//! where F/e_i collapses the terminal node over (i, i+1) and shift_i sends
//! t_j to t_{j+1} for j >= i, freeing the slot the collapse consumed. A
//! collapse drops one leaf, so only x_1..x_{N-1} and t_1..t_N can occur and
//! each class is one small exact linear solve on its homogeneous degree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::linalg::{to_integers, Eliminator};
use super::mpoly::{Expo, MPoly, MAXV};
use super::ops::{e_op, r_minus_expo, r_plus_expo};
use crate::forest::{lter, strip_trailing, BnForest};

static CACHE: OnceLock<Mutex<HashMap<BnForest, Arc<MPoly>>>> = OnceLock::new();

/// Exponent patterns of joint degree d in x_1..x_nx, t_1..t_nt.
fn degree_monomials(d: u32, nx: usize, nt: usize) -> Vec<Expo> {
    let mut out = Vec::new();
    let mut slots = vec![0u8; nx + nt];
    fn rec(slots: &mut Vec<u8>, pos: usize, left: u32, nx: usize, out: &mut Vec<Expo>) {
        if pos + 1 == slots.len() {
            slots[pos] = left as u8;
            let mut e = Expo::unit();
            for (k, &v) in slots.iter().enumerate() {
                if k < nx {
                    e.xs[k] = v;
                } else {
                    e.ts[k - nx] = v;
                }
            }
            out.push(e);
            slots[pos] = 0;
            return;
        }
        for v in 0..=left {
            slots[pos] = v as u8;
            rec(slots, pos + 1, left - v, nx, out);
        }
        slots[pos] = 0;
    }
    rec(&mut slots, 0, d, nx, &mut out);
    out
}

fn diagonal_expo(e: &Expo) -> Expo {
    let mut out = *e;
    for k in 0..out.xs.len() {
        out.ts[k] += out.xs[k];
        out.xs[k] = 0;
    }
    out
}

/// t_j := t_{j+1} for j >= i, leaving t_i unused.
fn shift_t_up(f: &MPoly, i: usize) -> MPoly {
    f.map_monomials(|e| {
        let mut out = *e;
        assert!(out.ts[MAXV - 1] == 0, "t shift out of room");
        for k in (i..MAXV).rev() {
            out.ts[k] = out.ts[k - 1];
        }
        out.ts[i - 1] = 0;
        out
    })
}

fn trim_target(rep: &BnForest, i: usize) -> MPoly {
    let collapsed = rep.collapse_terminal(i as u8).unwrap();
    shift_t_up(&forest_poly(&collapsed), i)
}

fn solve_class(rep: &BnForest) -> MPoly {
    let n = rep.nleaves();
    let lt = lter(rep);
    let d = rep.internal_count() as u32;
    let monos = degree_monomials(d, n - 1, n);
    let mut elim = Eliminator::new();
    let one = BigRational::from(BigInt::from(1));

    for i in 1..n {
        let target = if lt.binary_search(&(i as u8)).is_ok() {
            MPoly::x(i).sub(&MPoly::t(i)).mul(&trim_target(rep, i))
        } else {
            MPoly::zero()
        };
        let mut rows: HashMap<Expo, Vec<(usize, BigRational)>> = HashMap::new();
        for (j, m) in monos.iter().enumerate() {
            let plus = r_plus_expo(m, i, i);
            let minus = r_minus_expo(m, i, i);
            if plus != minus {
                rows.entry(plus).or_default().push((j, one.clone()));
                rows.entry(minus).or_default().push((j, -one.clone()));
            }
        }
        for (e, _) in target.terms() {
            rows.entry(*e).or_default();
        }
        for (e, entries) in rows {
            elim.add_row(entries, BigRational::from(target.coeff(&e)));
        }
    }

    let mut diag: HashMap<Expo, Vec<(usize, BigRational)>> = HashMap::new();
    for (j, m) in monos.iter().enumerate() {
        diag.entry(diagonal_expo(m)).or_default().push((j, one.clone()));
    }
    for (_, entries) in diag {
        elim.add_row(entries, BigRational::zero());
    }

    let sol = elim
        .solve(monos.len())
        .expect("trimming recursion has a unique solution");
    let coeffs = to_integers(&sol).expect("forest polynomials are integral");
    let mut p = MPoly::zero();
    for (j, c) in coeffs.into_iter().enumerate() {
        if !c.is_zero() {
            p = p.add(&MPoly::monomial(monos[j], c));
        }
    }

    for i in 1..n {
        let expect = if lt.binary_search(&(i as u8)).is_ok() {
            trim_target(rep, i)
        } else {
            MPoly::zero()
        };
        assert_eq!(e_op(&p, i), expect, "trim check failed for label {i}");
    }
    p
}

/// The double forest polynomial of (the class of) a plain forest. Memoized
/// by stripped representative.
pub fn forest_poly(f: &BnForest) -> Arc<MPoly> {
    let rep = strip_trailing(f);
    assert!(
        rep.is_plain(),
        "forest polynomials are indexed by all-black forests"
    );
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&rep) {
        return hit.clone();
    }
    let poly = if rep.nleaves() == 0 {
        Arc::new(MPoly::one())
    } else {
        Arc::new(solve_class(&rep))
    };
    cache
        .lock()
        .unwrap()
        .entry(rep)
        .or_insert(poly)
        .clone()
}

/// Kills every term involving x_j or t_j with j > n, the image under
/// x_j, t_j := 0 for j > n.
pub fn truncate_vars(f: &MPoly, n: usize) -> MPoly {
    f.filter_terms(|e| e.max_x() <= n && e.max_t() <= n)
}

/// The t -> 0 specialization.
pub fn specialize_t_zero(f: &MPoly) -> MPoly {
    f.filter_terms(|e| e.t_degree() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::enumerate_ltforest;
    use crate::permnc::Perm;
    use crate::polyalg::ops::ev;

    fn cls(word: &str) -> BnForest {
        BnForest::from_word_str(word).unwrap()
    }

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn empty_class_is_one() {
        assert_eq!(*forest_poly(&BnForest::empty()), MPoly::one());
        assert_eq!(*forest_poly(&cls("r1- r2- r3-")), MPoly::one());
    }

    #[test]
    fn single_node_classes_are_window_sums() {
        assert_eq!(*forest_poly(&cls("r1- e1")), p("x1 - t1"));
        assert_eq!(*forest_poly(&cls("r1- r2- e2")), p("x1 + x2 - t1 - t2"));
        assert_eq!(
            *forest_poly(&cls("r1- r2- r3- e3")),
            p("x1 + x2 + x3 - t1 - t2 - t3")
        );
    }

    #[test]
    fn left_combs_are_shifted_products() {
        assert_eq!(
            *forest_poly(&cls("r1- e1 e1")),
            p("x1 - t1").mul(&p("x1 - t2"))
        );
        assert_eq!(
            *forest_poly(&cls("r1- e1 e1 e1")),
            p("x1 - t1").mul(&p("x1 - t2")).mul(&p("x1 - t3"))
        );
    }

    #[test]
    fn right_comb_factors() {
        let rc = cls("r1- e1 e2");
        assert_eq!(*forest_poly(&rc), p("x1 - t1").mul(&p("x2 - t1")));
    }

    #[test]
    fn offset_comb_matches_hand_solution() {
        let f = cls("r1- r2- e2 e2");
        let expect = p("x2 - t3")
            .mul(&p("x1 + x2 - t1 - t2"))
            .add(&p("x1 - t1").mul(&p("x1 - t2")));
        assert_eq!(*forest_poly(&f), expect);
    }

    #[test]
    fn classes_are_homogeneous_on_their_support() {
        for f in enumerate_ltforest(3, 3) {
            if f.nleaves() == 0 {
                continue;
            }
            let poly = forest_poly(&f);
            let n = f.nleaves();
            assert!(poly.is_homogeneous());
            assert_eq!(poly.joint_degree(), f.internal_count() as u32);
            assert!(poly.max_x() < n);
            assert!(poly.max_t() <= n);
            let id = Perm::identity(n);
            assert!(ev(&poly, &id).is_zero());
        }
    }

    #[test]
    fn truncation_and_specialization() {
        let f = p("x1*t3 + x2");
        assert_eq!(truncate_vars(&f, 2), p("x2"));
        assert_eq!(specialize_t_zero(&p("x1^2 - x1*t1")), p("x1^2"));
    }
}
