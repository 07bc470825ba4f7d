//! Exact linear algebra over the rationals, sized for ansatz solves and
//! rank checks on a few hundred unknowns.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

type SparseRow = BTreeMap<usize, BigRational>;

/// Online Gaussian eliminator. Rows are sparse (column, value) lists with a
/// right-hand side; pivot rows are kept normalized to leading coefficient 1
/// and reduced against all earlier pivots.
pub struct Eliminator {
    pivots: BTreeMap<usize, (SparseRow, BigRational)>,
    inconsistent: bool,
}

impl Eliminator {
    pub fn new() -> Self {
        Eliminator { pivots: BTreeMap::new(), inconsistent: false }
    }

    /// Feeds one equation. Returns true when the row added a new pivot.
    pub fn add_row<I>(&mut self, coeffs: I, rhs: BigRational) -> bool
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        let mut row: SparseRow = BTreeMap::new();
        for (col, v) in coeffs {
            if v.is_zero() {
                continue;
            }
            let slot = row.entry(col).or_insert_with(BigRational::zero);
            *slot += v;
            if slot.is_zero() {
                row.remove(&col);
            }
        }
        let mut rhs = rhs;
        loop {
            let Some((&col, _)) = row.first_key_value() else { break };
            let Some((prow, prhs)) = self.pivots.get(&col) else { break };
            let factor = row.remove(&col).unwrap();
            for (c, v) in prow {
                let delta = &factor * v;
                let slot = row.entry(*c).or_insert_with(BigRational::zero);
                *slot -= delta;
                if slot.is_zero() {
                    row.remove(c);
                }
            }
            rhs -= &factor * prhs;
        }
        if row.is_empty() {
            if !rhs.is_zero() {
                self.inconsistent = true;
            }
            return false;
        }
        let (&lead, _) = row.first_key_value().unwrap();
        let scale = row.remove(&lead).unwrap();
        let mut norm: SparseRow = BTreeMap::new();
        for (c, v) in row {
            norm.insert(c, v / &scale);
        }
        self.pivots.insert(lead, (norm, rhs / &scale));
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    /// The unique solution on `nunknowns` variables, if the system pins one
    /// down exactly. None when inconsistent, underdetermined, or when a pivot
    /// column falls outside the variable range.
    pub fn solve(&self, nunknowns: usize) -> Option<Vec<BigRational>> {
        if self.inconsistent || self.pivots.len() != nunknowns {
            return None;
        }
        if self.pivots.keys().any(|&c| c >= nunknowns) {
            return None;
        }
        let mut sol = vec![BigRational::zero(); nunknowns];
        for (&col, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = rhs.clone();
            for (c, coef) in row {
                v -= coef * &sol[*c];
            }
            sol[col] = v;
        }
        Some(sol)
    }

    /// Rank-only feed for independence checks.
    pub fn add_vector<I>(&mut self, coeffs: I) -> bool
    where
        I: IntoIterator<Item = (usize, BigRational)>,
    {
        self.add_row(coeffs, BigRational::zero())
    }
}

impl Default for Eliminator {
    fn default() -> Self {
        Self::new()
    }
}

/// Solves a sparse integer system for its unique rational solution.
pub fn solve_unique(
    rows: &[(Vec<(usize, BigInt)>, BigInt)],
    nunknowns: usize,
) -> Option<Vec<BigRational>> {
    let mut elim = Eliminator::new();
    for (coeffs, rhs) in rows {
        elim.add_row(
            coeffs.iter().map(|(c, v)| (*c, BigRational::from(v.clone()))),
            BigRational::from(rhs.clone()),
        );
    }
    elim.solve(nunknowns)
}

/// Converts a rational solution known to be integral.
pub fn to_integers(sol: &[BigRational]) -> Option<Vec<BigInt>> {
    sol.iter()
        .map(|v| v.is_integer().then(|| v.to_integer()))
        .collect()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_two_by_two() {
        // x + 2y = 5, 3x - y = 1
        let rows = vec![
            (vec![(0, BigInt::from(1)), (1, BigInt::from(2))], BigInt::from(5)),
            (vec![(0, BigInt::from(3)), (1, BigInt::from(-1))], BigInt::from(1)),
        ];
        let sol = solve_unique(&rows, 2).unwrap();
        assert_eq!(sol[0], rat(1));
        assert_eq!(sol[1], rat(2));
    }

    #[test]
    fn detects_inconsistency() {
        let mut e = Eliminator::new();
        e.add_row([(0, rat(1))], rat(1));
        e.add_row([(0, rat(2))], rat(3));
        assert!(!e.is_consistent());
        assert_eq!(e.solve(1), None);
    }

    #[test]
    fn underdetermined_is_none() {
        let rows = vec![(vec![(0, BigInt::from(1)), (1, BigInt::from(1))], BigInt::from(2))];
        assert_eq!(solve_unique(&rows, 2), None);
    }

    #[test]
    fn redundant_rows_keep_consistency() {
        let mut e = Eliminator::new();
        assert!(e.add_row([(0, rat(1)), (1, rat(1))], rat(3)));
        assert!(e.add_row([(0, rat(1)), (1, rat(-1))], rat(1)));
        assert!(!e.add_row([(0, rat(2))], rat(4)));
        assert!(e.is_consistent());
        let sol = e.solve(2).unwrap();
        assert_eq!((sol[0].clone(), sol[1].clone()), (rat(2), rat(1)));
    }

    #[test]
    fn rank_counts_independent_vectors() {
        let mut e = Eliminator::new();
        assert!(e.add_vector([(0, rat(1)), (2, rat(1))]));
        assert!(e.add_vector([(1, rat(1))]));
        assert!(!e.add_vector([(0, rat(2)), (1, rat(2)), (2, rat(2))]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn rational_pivots() {
        let rows = vec![
            (vec![(0, BigInt::from(2)), (1, BigInt::from(3))], BigInt::from(1)),
            (vec![(1, BigInt::from(2))], BigInt::from(1)),
        ];
        let sol = solve_unique(&rows, 2).unwrap();
        assert_eq!(sol[0], rat_frac(-1, 4));
        assert_eq!(sol[1], rat_frac(1, 2));
        assert_eq!(to_integers(&sol), None);
    }
}
