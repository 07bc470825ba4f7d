//! Double Schubert polynomials, built by divided differences descending
//! from the staircase product at the longest element.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::mpoly::MPoly;
use super::ops::divided_difference;
use crate::permnc::Perm;

static CACHE: OnceLock<Mutex<HashMap<Perm, Arc<MPoly>>>> = OnceLock::new();

fn staircase(n: usize) -> MPoly {
    let mut f = MPoly::one();
    for i in 1..=n {
        for j in 1..=n - i {
            f = f.mul(&MPoly::x(i).sub(&MPoly::t(j)));
        }
    }
    f
}

/// The double Schubert polynomial of w. Memoized; every permutation on the
/// divided-difference path down from the longest element is cached too.
pub fn schubert_double(w: &Perm) -> Arc<MPoly> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(w) {
        return hit.clone();
    }
    let n = w.n();
    let first_ascent = (1..n as u8).find(|&i| w.apply(i) < w.apply(i + 1));
    let poly = match first_ascent {
        None => Arc::new(staircase(n)),
        Some(i) => {
            let longer = w.swap_positions(i, i + 1);
            let up = schubert_double(&longer);
            Arc::new(divided_difference(&up, i as usize))
        }
    };
    cache
        .lock()
        .unwrap()
        .entry(w.clone())
        .or_insert(poly)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permnc::{all_perms, Perm};
    use crate::polyalg::ops::ev;

    fn pm(line: &[u8]) -> Perm {
        Perm::from_one_line(line.to_vec()).unwrap()
    }

    fn p(s: &str) -> MPoly {
        MPoly::parse(s).unwrap()
    }

    #[test]
    fn small_closed_forms() {
        assert_eq!(*schubert_double(&pm(&[1])), MPoly::one());
        assert_eq!(*schubert_double(&pm(&[2, 1])), p("x1 - t1"));
        assert_eq!(*schubert_double(&pm(&[1, 3, 2])), p("x1 + x2 - t1 - t2"));
        assert_eq!(
            *schubert_double(&pm(&[3, 1, 2])),
            p("x1^2 - x1*t1 - x1*t2 + t1*t2")
        );
        assert_eq!(
            *schubert_double(&pm(&[2, 3, 1])),
            p("x1*x2 - x1*t1 - x2*t1 + t1^2")
        );
        let w0 = pm(&[3, 2, 1]);
        let expect = p("x1 - t1").mul(&p("x1 - t2")).mul(&p("x2 - t1"));
        assert_eq!(*schubert_double(&w0), expect);
    }

    #[test]
    fn stable_under_trailing_fixed_points() {
        for line in [[2u8, 1].as_slice(), &[1, 3, 2], &[3, 1, 2]] {
            let mut padded = line.to_vec();
            padded.push(padded.len() as u8 + 1);
            assert_eq!(
                *schubert_double(&pm(line)),
                *schubert_double(&pm(&padded))
            );
        }
    }

    #[test]
    fn vanishing_at_identity_fixed_point() {
        let id = pm(&[1, 2, 3, 4]);
        for w in all_perms(4).iter() {
            let f = schubert_double(w);
            let at_id = ev(&f, &id);
            if w.is_identity() {
                assert_eq!(at_id, MPoly::one());
            } else {
                assert!(at_id.is_zero(), "Schubert of {w} should vanish at id");
            }
        }
    }

    #[test]
    fn degree_matches_length() {
        for w in all_perms(4).iter() {
            let f = schubert_double(w);
            assert!(f.is_homogeneous());
            assert_eq!(f.joint_degree(), w.length() as u32);
        }
    }
}
