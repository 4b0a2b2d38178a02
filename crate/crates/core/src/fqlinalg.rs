//! Dense linear algebra and polynomial arithmetic over `F_q`.
//!
//! Sizes in this crate are tiny (matrix dimensions are graded-piece
//! dimensions, almost always <= 6), so clarity wins over asymptotics: rank
//! and kernels go through reduced row echelon form, characteristic
//! polynomials through a subset-DP determinant of `xI - A`, and polynomial
//! factorization through trial division by monic polynomials of increasing
//! degree (any divisor found that way is automatically irreducible).

use crate::finitefield::{FqElem, FqField};

/// Dense row-major matrix over `F_q`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqMat {
    pub field: FqField,
    pub rows: usize,
    pub cols: usize,
    data: Vec<FqElem>,
}

impl FqMat {
    pub fn zero(field: &FqField, rows: usize, cols: usize) -> Self {
        FqMat {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &FqField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: &FqField,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> FqElem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        FqMat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &FqElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FqElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FqElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &FqMat) -> FqMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let f = &self.field;
        let mut out = FqMat::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(a, other.get(k, c));
                    let cur = f.add(out.get(r, c), &t);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FqMat) -> FqMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = f.add(&self.data[i], &other.data[i]);
        }
        out
    }

    pub fn sub(&self, other: &FqMat) -> FqMat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let f = &self.field;
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = f.sub(&self.data[i], &other.data[i]);
        }
        out
    }

    pub fn scalar_mul(&self, s: &FqElem) -> FqMat {
        let f = &self.field;
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = f.mul(x, s);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> FqMat {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = FqMat::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> FqMat {
        FqMat::from_fn(&self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn mul_vec(&self, v: &[FqElem]) -> Vec<FqElem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(r, c), &v[c]));
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot column list.
    pub fn rref(&self) -> (FqMat, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(pr) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            for c in 0..m.cols {
                let tmp = m.get(row, c).clone();
                let other = m.get(pr, c).clone();
                m.set(row, c, other);
                m.set(pr, c, tmp);
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !f.is_zero(m.get(r, col)) {
                    let factor = m.get(r, col).clone();
                    for c in 0..m.cols {
                        let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : A v = 0}`, each vector of length
    /// `cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<FqElem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Expresses `v` as a combination of the rows of `self` (which need not
    /// be in echelon form). Returns the coefficient vector if `v` lies in the
    /// row space.
    pub fn solve_in_rowspace(&self, v: &[FqElem]) -> Option<Vec<FqElem>> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        // Augment [self^T | v^T] and reduce: coefficients x with x * self = v
        // solve self^T x^T = v^T.
        let mut aug = FqMat::zero(f, self.cols, self.rows + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(c, r, self.get(r, c).clone());
            }
        }
        for c in 0..self.cols {
            aug.set(c, self.rows, v[c].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.rows) {
            return None; // inconsistent: pivot in the augmented column
        }
        let mut x = vec![f.zero(); self.rows];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.rows).clone();
        }
        Some(x)
    }

    /// Characteristic polynomial `det(xI - A)` via subset dynamic
    /// programming over column subsets (exact, division-free).
    pub fn char_poly(&self) -> FqPoly {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return FqPoly::one(f);
        }
        // Entries of xI - A as degree <= 1 polynomials.
        let entry = |r: usize, c: usize| -> FqPoly {
            let mut coeffs = vec![f.neg(self.get(r, c))];
            if r == c {
                coeffs.push(f.one());
            }
            FqPoly::new(f, coeffs)
        };
        // dp[S] = determinant of the minor on rows 0..|S| and column set S,
        // up to the sign (-1)^(|S|(|S|-1)/2) coming from expanding along the
        // last row without the (-1)^row factor.
        let mut dp: Vec<Option<FqPoly>> = vec![None; 1 << n];
        dp[0] = Some(FqPoly::one(f));
        for mask in 1usize..(1 << n) {
            let row = (mask as u32).count_ones() as usize - 1;
            let mut acc = FqPoly::zero(f);
            let mut sign_flip = false;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let sub = dp[mask ^ (1 << c)].as_ref().unwrap();
                let term = sub.mul(&entry(row, c));
                acc = if sign_flip {
                    acc.sub(&term)
                } else {
                    acc.add(&term)
                };
                sign_flip = !sign_flip;
            }
            dp[mask] = Some(acc);
        }
        let mut out = dp[(1 << n) - 1].take().unwrap();
        if (n * (n - 1) / 2) % 2 == 1 {
            out = FqPoly::zero(f).sub(&out);
        }
        out.normalize();
        out
    }
}

/// Dense polynomial over `F_q`, low-to-high coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqPoly {
    pub field: FqField,
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(field: &FqField, coeffs: Vec<FqElem>) -> Self {
        let mut p = FqPoly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    pub fn zero(field: &FqField) -> Self {
        FqPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &FqField) -> Self {
        FqPoly {
            field: field.clone(),
            coeffs: vec![field.one()],
        }
    }

    /// The monomial `x`.
    pub fn x(field: &FqField) -> Self {
        FqPoly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    fn normalize(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if self.field.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports `None`.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            out.push(f.add(&a, &b));
        }
        FqPoly::new(f, out)
    }

    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| f.zero());
            out.push(f.sub(&a, &b));
        }
        FqPoly::new(f, out)
    }

    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return FqPoly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        FqPoly::new(f, out)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &FqPoly) -> (FqPoly, FqPoly) {
        let f = &self.field;
        let d = divisor.deg().expect("division by zero polynomial");
        let lead_inv = f.inv(&divisor.coeffs[d]).unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let top = rem.len() - 1;
            let c = f.mul(&rem[top], &lead_inv);
            if !f.is_zero(&c) {
                let shift = top - d;
                quot[shift] = c.clone();
                for j in 0..=d {
                    rem[shift + j] = f.sub(&rem[shift + j], &f.mul(&c, &divisor.coeffs[j]));
                }
            }
            rem.pop();
        }
        (FqPoly::new(f, quot), FqPoly::new(f, rem))
    }

    pub fn divides(&self, other: &FqPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    pub fn monic(&self) -> FqPoly {
        let f = &self.field;
        match self.deg() {
            None => self.clone(),
            Some(d) => {
                let inv = f.inv(&self.coeffs[d]).unwrap();
                FqPoly::new(f, self.coeffs.iter().map(|c| f.mul(c, &inv)).collect())
            }
        }
    }

    pub fn eval(&self, x: &FqElem) -> FqElem {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluates the polynomial at a square matrix.
    pub fn eval_matrix(&self, a: &FqMat) -> FqMat {
        let f = &self.field;
        let n = a.rows;
        let mut acc = FqMat::zero(f, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Canonical integer encoding `sum index(c_j) q^j`, used to order
    /// irreducible factors deterministically.
    pub fn encoding(&self) -> u128 {
        let f = &self.field;
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            acc = acc * f.q() as u128 + f.index(c) as u128;
        }
        acc
    }

    /// Factors a nonzero polynomial into monic irreducibles with
    /// multiplicities, sorted by (degree, encoding).
    ///
    /// Trial division by all monic polynomials of increasing degree: by the
    /// time degree `d` is reached the remainder has no factors of smaller
    /// degree, so every degree-`d` divisor found is irreducible.
    pub fn factor(&self) -> Vec<(FqPoly, usize)> {
        let f = &self.field;
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut rem = self.monic();
        let mut out: Vec<(FqPoly, usize)> = Vec::new();
        let mut d = 1usize;
        while rem.deg() != Some(0) {
            let remaining = rem.deg().unwrap();
            if d > remaining / 2 && d < remaining {
                // No factor of degree <= remaining/2: remainder is irreducible.
                d = remaining;
            }
            if d > remaining {
                break;
            }
            let count = (f.q() as u128).pow(d as u32);
            for i in 0..count {
                let mut coeffs = Vec::with_capacity(d + 1);
                let mut v = i;
                for _ in 0..d {
                    coeffs.push(f.from_index((v % f.q() as u128) as u64));
                    v /= f.q() as u128;
                }
                coeffs.push(f.one());
                let cand = FqPoly::new(f, coeffs);
                let mut mult = 0usize;
                loop {
                    let (q, r) = rem.div_rem(&cand);
                    if r.is_zero() {
                        rem = q;
                        mult += 1;
                    } else {
                        break;
                    }
                }
                if mult > 0 {
                    out.push((cand, mult));
                }
                if rem.deg() == Some(0) {
                    break;
                }
            }
            d += 1;
        }
        out.sort_by_key(|(g, _)| (g.deg().unwrap(), g.encoding()));
        out
    }
}

/// All `d`-dimensional subspaces of `F_q^n`, each as the rows of a reduced
/// row-echelon basis matrix (`d x n`). Deterministic order.
pub fn enumerate_subspaces(field: &FqField, n: usize, d: usize) -> Vec<FqMat> {
    assert!(d <= n);
    if d == 0 {
        return vec![FqMat::zero(field, 0, n)];
    }
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose_pivots(field, n, d, 0, &mut pivots, &mut out);
    out
}

fn choose_pivots(
    field: &FqField,
    n: usize,
    d: usize,
    from: usize,
    pivots: &mut Vec<usize>,
    out: &mut Vec<FqMat>,
) {
    if pivots.len() == d {
        fill_free_entries(field, n, pivots, out);
        return;
    }
    let need = d - pivots.len();
    for c in from..=n - need {
        pivots.push(c);
        choose_pivots(field, n, d, c + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_free_entries(field: &FqField, n: usize, pivots: &[usize], out: &mut Vec<FqMat>) {
    let d = pivots.len();
    // Free positions: (row, col) with col > pivots[row] and col not a pivot.
    let mut free = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                free.push((r, c));
            }
        }
    }
    let q = field.q();
    let total = (q as u128).pow(free.len() as u32);
    for idx in 0..total {
        let mut m = FqMat::zero(field, d, n);
        for (r, &p) in pivots.iter().enumerate() {
            m.set(r, p, field.one());
        }
        let mut v = idx;
        for &(r, c) in &free {
            m.set(r, c, field.from_index((v % q as u128) as u64));
            v /= q as u128;
        }
        out.push(m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitefield::FqField;

    fn f3() -> FqField {
        FqField::for_q(3).unwrap()
    }

    fn mat(field: &FqField, rows: usize, cols: usize, vals: &[i64]) -> FqMat {
        FqMat::from_fn(field, rows, cols, |r, c| field.from_int(vals[r * cols + c]))
    }

    #[test]
    fn rank_and_kernel() {
        let f = f3();
        let a = mat(&f, 2, 3, &[1, 2, 0, 2, 4, 0]);
        assert_eq!(a.rank(), 1);
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // Companion matrix of x^3 + 2x + 1 over F_3.
        let f = f3();
        let a = mat(&f, 3, 3, &[0, 0, -1, 1, 0, -2, 0, 1, 0]);
        let cp = a.char_poly();
        let expected = FqPoly::new(
            &f,
            vec![f.from_int(1), f.from_int(2), f.from_int(0), f.from_int(1)],
        );
        assert_eq!(cp, expected);
    }

    #[test]
    fn char_poly_empty_matrix() {
        let f = f3();
        let a = FqMat::zero(&f, 0, 0);
        assert_eq!(a.char_poly(), FqPoly::one(&f));
    }

    #[test]
    fn cayley_hamilton_spot_check() {
        let f = FqField::for_q(5).unwrap();
        let a = mat(&f, 3, 3, &[1, 2, 3, 0, 4, 1, 2, 2, 0]);
        let cp = a.char_poly();
        assert!(cp.eval_matrix(&a).is_zero());
    }

    #[test]
    fn factoring() {
        let f = f3();
        // x^2 + 1 is irreducible over F_3.
        let p = FqPoly::new(&f, vec![f.one(), f.zero(), f.one()]);
        let factors = p.factor();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 1);
        assert_eq!(factors[0].0, p);

        // x^2 - 1 = (x+1)(x+2) over F_3.
        let p = FqPoly::new(&f, vec![f.from_int(-1), f.zero(), f.one()]);
        let factors = p.factor();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(g, m)| g.deg() == Some(1) && *m == 1));

        // x^4: one factor with multiplicity 4.
        let p = FqPoly::new(&f, vec![f.zero(), f.zero(), f.zero(), f.zero(), f.one()]);
        let factors = p.factor();
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].1, 4);
        assert_eq!(factors[0].0, FqPoly::x(&f));
    }

    #[test]
    fn factor_product_reconstructs() {
        let f = FqField::for_q(5).unwrap();
        let a = FqPoly::new(&f, vec![f.from_int(2), f.one()]); // x + 2
        let b = FqPoly::new(&f, vec![f.from_int(3), f.from_int(0), f.one()]); // x^2 + 3
        let p = a.mul(&a).mul(&b);
        let mut rebuilt = FqPoly::one(&f);
        for (g, m) in p.factor() {
            for _ in 0..m {
                rebuilt = rebuilt.mul(&g);
            }
        }
        assert_eq!(rebuilt, p.monic());
    }

    #[test]
    fn solve_in_rowspace_works() {
        let f = f3();
        let basis = mat(&f, 2, 3, &[1, 0, 2, 0, 1, 1]);
        let v = vec![f.from_int(2), f.from_int(1), f.from_int(2)]; // 2*r0 + 1*r1
        let x = basis.solve_in_rowspace(&v).unwrap();
        assert_eq!(x, vec![f.from_int(2), f.from_int(1)]);
        let outside = vec![f.zero(), f.zero(), f.one()];
        assert!(basis.solve_in_rowspace(&outside).is_none());
    }

    #[test]
    fn subspace_enumeration_counts() {
        // Gaussian binomials: [n choose d]_q.
        let gauss = |q: u64, n: u32, d: u32| -> u64 {
            let mut num = 1u64;
            let mut den = 1u64;
            for i in 0..d {
                num *= q.pow(n - i) - 1;
                den *= q.pow(d - i) - 1;
            }
            num / den
        };
        let f = f3();
        for n in 0..=3usize {
            for d in 0..=n {
                let subs = enumerate_subspaces(&f, n, d);
                assert_eq!(
                    subs.len() as u64,
                    gauss(3, n as u32, d as u32),
                    "n={n} d={d}"
                );
                // All distinct row spaces: RREF is canonical, so matrices distinct.
                for (i, a) in subs.iter().enumerate() {
                    for b in subs.iter().skip(i + 1) {
                        assert_ne!(a, b);
                    }
                }
                for s in &subs {
                    assert_eq!(s.rank(), d);
                }
            }
        }
    }
}
