//! Exact nullspace computation over `Q(zeta_p)`.
//!
//! Constraint rows arrive one at a time (there is typically one per point of
//! a dual space, far more than there are unknowns), so the solver keeps a
//! running reduced echelon basis of the row space and discards dependent
//! rows immediately; memory stays `O(rank * ncols)`.

use crate::cyclotomic::CycNum;

pub struct NullspaceSolver {
    p: usize,
    ncols: usize,
    /// `(pivot column, row)` with rows fully reduced against each other and
    /// normalized to pivot 1, kept sorted by pivot column.
    pivots: Vec<(usize, Vec<CycNum>)>,
}

impl NullspaceSolver {
    pub fn new(p: usize, ncols: usize) -> Self {
        NullspaceSolver {
            p,
            ncols,
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds the constraint `sum_j row[j] a_j = 0`. Returns true if the row
    /// increased the rank.
    pub fn add_constraint(&mut self, mut row: Vec<CycNum>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (col, pivot_row) in &self.pivots {
            if !row[*col].is_zero() {
                let factor = row[*col].clone();
                for j in 0..self.ncols {
                    let t = pivot_row[j].try_mul(&factor).unwrap();
                    row[j] -= &t;
                }
            }
        }
        let Some(col) = (0..self.ncols).find(|&j| !row[j].is_zero()) else {
            return false;
        };
        let inv = row[col].inverse().expect("leading entry is nonzero");
        for v in row.iter_mut() {
            *v = &*v * &inv;
        }
        // Back-eliminate the new pivot column from existing rows.
        for (_, existing) in self.pivots.iter_mut() {
            if !existing[col].is_zero() {
                let factor = existing[col].clone();
                for j in 0..self.ncols {
                    let t = row[j].try_mul(&factor).unwrap();
                    existing[j] -= &t;
                }
            }
        }
        let at = self
            .pivots
            .binary_search_by_key(&col, |(c, _)| *c)
            .unwrap_err();
        self.pivots.insert(at, (col, row));
        true
    }

    /// Basis of the solution space, one vector per free column, with 1 in
    /// the free coordinate.
    pub fn nullspace_basis(&self) -> Vec<Vec<CycNum>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|(c, _)| *c).collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![CycNum::zero(self.p); self.ncols];
            v[free] = CycNum::one(self.p);
            for (col, row) in &self.pivots {
                v[*col] = CycNum::zero(self.p) - &row[free];
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: usize, n: i64) -> CycNum {
        CycNum::from_integer(p, n)
    }

    #[test]
    fn full_rank_system_has_trivial_nullspace() {
        let mut s = NullspaceSolver::new(3, 2);
        assert!(s.add_constraint(vec![c(3, 1), c(3, 1)]));
        assert!(s.add_constraint(vec![c(3, 1), c(3, -1)]));
        assert_eq!(s.nullity(), 0);
        assert!(s.nullspace_basis().is_empty());
    }

    #[test]
    fn dependent_rows_are_discarded() {
        let mut s = NullspaceSolver::new(5, 3);
        assert!(s.add_constraint(vec![c(5, 1), c(5, 2), c(5, 0)]));
        assert!(!s.add_constraint(vec![c(5, 2), c(5, 4), c(5, 0)]));
        assert_eq!(s.rank(), 1);
        let basis = s.nullspace_basis();
        assert_eq!(basis.len(), 2);
        // Every basis vector satisfies the constraint.
        for v in &basis {
            let lhs = v[0].clone() + &(&v[1] * &c(5, 2));
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn cyclotomic_coefficients() {
        // a_0 + zeta a_1 = 0 and zeta^2 a_0 + a_2 = 0 over Q(zeta_5).
        let p = 5;
        let z = CycNum::zeta_pow(p, 1);
        let mut s = NullspaceSolver::new(p, 3);
        s.add_constraint(vec![CycNum::one(p), z.clone(), CycNum::zero(p)]);
        s.add_constraint(vec![&z * &z, CycNum::zero(p), CycNum::one(p)]);
        assert_eq!(s.nullity(), 1);
        let basis = s.nullspace_basis();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!((v[0].clone() + &v[1].try_mul(&z).unwrap()).is_zero());
        assert!((v[0].try_mul(&(&z * &z)).unwrap() + &v[2]).is_zero());
    }
}
