//! Trimming operators on double polynomials: the variable-removing
//! substitutions r_i^-, r_i^+, their difference quotient e_i, divided
//! differences, and fixed-point evaluation.

use std::collections::BTreeSet;

use super::mpoly::{Expo, MPoly, MAXV};
use crate::forest::Letter;
use crate::permnc::Perm;

fn remove_x_slot(e: &mut Expo, i: usize) {
    for k in i - 1..MAXV - 1 {
        e.xs[k] = e.xs[k + 1];
    }
    e.xs[MAXV - 1] = 0;
}

pub(crate) fn r_minus_expo(e: &Expo, i: usize, target: usize) -> Expo {
    let mut out = *e;
    out.ts[target - 1] += out.xs[i - 1];
    remove_x_slot(&mut out, i);
    out
}

pub(crate) fn r_plus_expo(e: &Expo, i: usize, target: usize) -> Expo {
    let mut out = *e;
    out.ts[target - 1] += out.xs[i];
    remove_x_slot(&mut out, i + 1);
    out
}

/// x_i := t_target, x_j := x_{j-1} for j > i.
pub fn r_minus_to(f: &MPoly, i: usize, target: usize) -> MPoly {
    f.map_monomials(|e| r_minus_expo(e, i, target))
}

/// x_{i+1} := t_target, x_j := x_{j-1} for j > i + 1.
pub fn r_plus_to(f: &MPoly, i: usize, target: usize) -> MPoly {
    f.map_monomials(|e| r_plus_expo(e, i, target))
}

pub fn r_minus(f: &MPoly, i: usize) -> MPoly {
    r_minus_to(f, i, i)
}

pub fn r_plus(f: &MPoly, i: usize) -> MPoly {
    r_plus_to(f, i, i)
}

/// (r_i^+ f - r_i^- f)/(x_i - t_target). The two substitutions agree once
/// x_i is also sent to the target, so the quotient is always a polynomial.
pub fn e_op_to(f: &MPoly, i: usize, target: usize) -> MPoly {
    let num = r_plus_to(f, i, target).sub(&r_minus_to(f, i, target));
    if num.is_zero() {
        return MPoly::zero();
    }
    let den = MPoly::x(i).sub(&MPoly::t(target));
    num.div_exact(&den)
        .expect("r+ and r- images agree at x_i = t_target")
}

pub fn e_op(f: &MPoly, i: usize) -> MPoly {
    e_op_to(f, i, i)
}

/// x_i and x_{i+1} exchanged.
pub fn swap_xs(f: &MPoly, i: usize) -> MPoly {
    f.map_monomials(|e| {
        let mut out = *e;
        out.xs.swap(i - 1, i);
        out
    })
}

/// Newton divided difference (f - s_i f)/(x_i - x_{i+1}).
pub fn divided_difference(f: &MPoly, i: usize) -> MPoly {
    let num = f.sub(&swap_xs(f, i));
    if num.is_zero() {
        return MPoly::zero();
    }
    let den = MPoly::x(i).sub(&MPoly::x(i + 1));
    num.div_exact(&den)
        .expect("f - s_i f vanishes on the diagonal x_i = x_{i+1}")
}

/// Evaluation at the fixed point of w: every x_k becomes t_{w(k)}.
pub fn ev(f: &MPoly, w: &Perm) -> MPoly {
    assert!(
        f.max_x() <= w.n(),
        "evaluation needs a permutation covering every x variable"
    );
    f.map_monomials(|e| {
        let mut out = *e;
        for k in 1..=w.n() {
            out.ts[w.apply(k as u8) as usize - 1] += out.xs[k - 1];
            out.xs[k - 1] = 0;
        }
        out
    })
}

/// The i-th smallest positive integer outside the mask.
pub fn masked_index(i: usize, mask: &BTreeSet<usize>) -> usize {
    let mut seen = 0;
    let mut v = 0;
    while seen < i {
        v += 1;
        if !mask.contains(&v) {
            seen += 1;
        }
    }
    v
}

/// Mask extended by the slot that `masked_index` picks for i.
pub fn star(i: usize, mask: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut out = mask.clone();
    out.insert(masked_index(i, mask));
    out
}

/// Letters applied right to left where each letter consumes a t slot, so
/// later letters aim past slots already used. Over an all-r word this is
/// evaluation at the word's fixed point. For the padded building word of a
/// forest class this extracts the class's coefficient in the forest-basis
/// expansion of f.
pub fn localization_functional(word: &[Letter], f: &MPoly) -> MPoly {
    let mut acc = f.clone();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for l in word.iter().rev() {
        let i = l.index() as usize;
        let target = masked_index(i, &used);
        acc = match l {
            Letter::RMinus(_) => r_minus_to(&acc, i, target),
            Letter::RPlus(_) => r_plus_to(&acc, i, target),
            Letter::E(_) => e_op_to(&acc, i, target),
        };
        used.insert(target);
        if acc.is_zero() {
            return acc;
        }
    }
    acc
}

/// Every t_j (j != s) shifted by +t_s simultaneously.
pub fn translate_t(f: &MPoly, s: usize) -> MPoly {
    let shift = MPoly::t(s);
    let tv: Vec<Option<MPoly>> = (1..=MAXV)
        .map(|j| (j != s).then(|| MPoly::t(j).add(&shift)))
        .collect();
    f.subst_all(&[], &tv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::parse_word;

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn trimming_substitutions_shift() {
        assert_eq!(r_minus(&p("x2"), 1), p("x1"));
        assert_eq!(r_plus(&p("x2"), 1), p("t1"));
        assert_eq!(r_minus(&p("x1*x3"), 2), p("x1*x2"));
        assert_eq!(r_plus(&p("x1"), 3), p("x1"));
        assert_eq!(r_minus(&p("x1^2"), 1), p("t1^2"));
    }

    #[test]
    fn e_basics() {
        assert_eq!(e_op(&p("x1"), 1), p("1"));
        assert_eq!(e_op(&p("x2"), 1), p("-1"));
        assert_eq!(e_op(&p("x1^2"), 1), p("x1 + t1"));
        assert_eq!(e_op(&p("x1"), 2), MPoly::zero());
        // the top trim reduces to substitution of x_n
        assert_eq!(e_op(&p("x2^2"), 2), p("x2 + t2"));
    }

    #[test]
    fn e_is_t_linear() {
        let f = p("x1^2 + x2*t3");
        let lhs = e_op(&f.mul(&p("t2")), 1);
        assert_eq!(lhs, e_op(&f, 1).mul(&p("t2")));
    }

    #[test]
    fn divided_difference_basics() {
        assert_eq!(divided_difference(&p("x1"), 1), p("1"));
        assert_eq!(divided_difference(&p("x1^2"), 1), p("x1 + x2"));
        assert_eq!(divided_difference(&p("x1*x2"), 1), MPoly::zero());
    }

    #[test]
    fn ev_substitutes_by_values() {
        let w = Perm::from_one_line(vec![2, 1]).unwrap();
        assert_eq!(ev(&p("x1^2*x2"), &w), p("t2^2*t1"));
        assert_eq!(ev(&p("x1 - x2"), &w), p("t2 - t1"));
    }

    #[test]
    fn masked_slots() {
        let mask: BTreeSet<usize> = [1, 3].into_iter().collect();
        assert_eq!(masked_index(1, &mask), 2);
        assert_eq!(masked_index(2, &mask), 4);
        assert_eq!(masked_index(3, &mask), 5);
        let grown = star(2, &mask);
        assert!(grown.contains(&4) && grown.len() == 3);
    }

    #[test]
    fn localization_over_r_word_is_fixed_point_evaluation() {
        let word = parse_word("r1- r1+").unwrap();
        let f = p("x1 - x2");
        let w = Perm::from_one_line(vec![2, 1]).unwrap();
        assert_eq!(localization_functional(&word, &f), ev(&f, &w));
    }

    #[test]
    fn localization_extracts_basis_coefficients() {
        // x1^2 = t1^2 + (t1 + t2)(x1 - t1) + (x1 - t1)(x1 - t2)
        let f = p("x1^2");
        let leaf = parse_word("r1-").unwrap();
        let node = parse_word("r1- e1").unwrap();
        let left = parse_word("r1- e1 e1").unwrap();
        let right = parse_word("r1- e1 e2").unwrap();
        assert_eq!(localization_functional(&leaf, &f), p("t1^2"));
        assert_eq!(localization_functional(&node, &f), p("t1 + t2"));
        assert_eq!(localization_functional(&left, &f), p("1"));
        assert_eq!(localization_functional(&right, &f), MPoly::zero());
    }

    #[test]
    fn localization_vanishes_on_mixed_schubert() {
        // Schubert polynomial of 312 has no degree-one classes in its
        // expansion, only the left comb.
        let f = p("x1^2 - x1*t1 - x1*t2 + t1*t2");
        let node = parse_word("r1- e1").unwrap();
        assert_eq!(localization_functional(&node, &f), MPoly::zero());
        let comb = parse_word("r1- e1 e1").unwrap();
        assert_eq!(localization_functional(&comb, &f), p("1"));
    }

    #[test]
    fn translation_shifts_all_t() {
        let f = p("t2 - t1");
        assert_eq!(translate_t(&f, 16), f);
        let g = p("x1 - t1");
        assert_eq!(translate_t(&g, 16), p("x1 - t1 - t16"));
    }
}
