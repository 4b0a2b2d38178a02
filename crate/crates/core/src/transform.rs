//! Dense exact function tables on coordinatized `F_q`-spaces and the
//! unnormalized Fourier transform with respect to a coordinate-matched
//! pairing, plus generalized Kloosterman sums.
//!
//! A space descriptor fixes an ordered coordinate list and a pairing with a
//! dual descriptor of the form `kappa(x, y) = sum_j c_j x_j y_{perm(j)}`
//! with unit or scalar coefficients; every pairing in this crate (trace
//! pairing on quiver spaces, split quadratic forms, the strictly
//! upper/lower matrix pairing) is of this shape in its natural coordinates.
//!
//! The transform is computed unnormalized, `fhat(y) = sum_x psi(kappa(x,y))
//! f(x)`; the normalization `q^{-N/2}` the analytic convention would divide
//! out is irrational in `Q(zeta_p)` for odd `N` and is tracked as metadata
//! instead. The kernel runs one 1-dimensional character pass per axis
//! (`O(N q^{N+1})` ring operations) followed by a layout permutation into
//! the dual ordering; `fourier_naive` is the quadratic-cost reference.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::finitefield::{FqElem, FqField};
use crate::quiver::{GradedDims, QuiverRep};
use crate::{Error, Result};

/// A coordinate label. `Block` coordinates index quiver-space entries;
/// `Named` coordinates are used by the standalone case studies.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CoordTag {
    Block {
        vertex: usize,
        row: usize,
        col: usize,
    },
    Named(String),
}

/// A coordinatized `F_q`-space together with its dual and the coordinate
/// matching that realizes the pairing.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub field: FqField,
    pub coords: Vec<CoordTag>,
    pub dual_coords: Vec<CoordTag>,
    /// Coordinate `j` of this space pairs with dual coordinate `perm[j]`.
    pub pair_perm: Vec<usize>,
    /// `kappa(x, y) = sum_j coeff[j] * x_j * y_{perm[j]}`.
    pub pair_coeff: Vec<FqElem>,
}

impl SpaceDescriptor {
    pub fn new(
        field: FqField,
        coords: Vec<CoordTag>,
        dual_coords: Vec<CoordTag>,
        pair_perm: Vec<usize>,
        pair_coeff: Vec<FqElem>,
    ) -> Result<Self> {
        let n = coords.len();
        if dual_coords.len() != n || pair_perm.len() != n || pair_coeff.len() != n {
            return Err(Error::ShapeMismatch(
                "descriptor component lengths disagree".into(),
            ));
        }
        let mut seen = vec![false; n];
        for &j in &pair_perm {
            if j >= n || seen[j] {
                return Err(Error::ShapeMismatch("pairing is not a bijection".into()));
            }
            seen[j] = true;
        }
        if pair_coeff.iter().any(|c| field.is_zero(c)) {
            return Err(Error::ShapeMismatch(
                "pairing has a zero coefficient".into(),
            ));
        }
        Ok(SpaceDescriptor {
            field,
            coords,
            dual_coords,
            pair_perm,
            pair_coeff,
        })
    }

    /// The trace-pairing descriptor of `E^eps_V`, dual to `E^{-eps}_V`:
    /// coordinate `(i, r, s)` pairs with dual coordinate `(i+eps, s, r)`
    /// with coefficient 1.
    pub fn for_quiver(field: &FqField, dims: &GradedDims, eps: i32) -> Self {
        let coords: Vec<CoordTag> = QuiverRep::coordinates(dims, eps)
            .into_iter()
            .map(|(vertex, row, col)| CoordTag::Block { vertex, row, col })
            .collect();
        let dual_raw = QuiverRep::coordinates(dims, -eps);
        let dual_coords: Vec<CoordTag> = dual_raw
            .iter()
            .map(|&(vertex, row, col)| CoordTag::Block { vertex, row, col })
            .collect();
        let m = dims.m as isize;
        let pair_perm = coords
            .iter()
            .map(|tag| {
                let CoordTag::Block { vertex, row, col } = tag else {
                    unreachable!()
                };
                let target = (
                    (*vertex as isize + eps as isize).rem_euclid(m) as usize,
                    *col,
                    *row,
                );
                dual_raw
                    .iter()
                    .position(|&t| t == target)
                    .expect("dual coordinate exists")
            })
            .collect();
        let pair_coeff = vec![field.one(); coords.len()];
        SpaceDescriptor {
            field: field.clone(),
            coords,
            dual_coords,
            pair_perm,
            pair_coeff,
        }
    }

    /// A self-dual descriptor from a symmetric Gram matrix that is a
    /// generalized permutation matrix (exactly one nonzero entry per row).
    pub fn self_dual_from_gram(
        field: &FqField,
        coords: Vec<CoordTag>,
        gram: &[Vec<FqElem>],
    ) -> Result<Self> {
        let n = coords.len();
        let mut perm = vec![usize::MAX; n];
        let mut coeff = vec![field.zero(); n];
        for (j, row) in gram.iter().enumerate() {
            let nz: Vec<usize> = (0..n).filter(|&k| !field.is_zero(&row[k])).collect();
            if nz.len() != 1 {
                return Err(Error::ShapeMismatch(format!(
                    "gram row {j} has {} nonzero entries, need exactly 1",
                    nz.len()
                )));
            }
            perm[j] = nz[0];
            coeff[j] = row[nz[0]].clone();
        }
        // Symmetry: gram[j][perm[j]] = gram[perm[j]][j].
        for j in 0..n {
            if perm[perm[j]] != j || coeff[perm[j]] != coeff[j] {
                return Err(Error::ShapeMismatch("gram matrix is not symmetric".into()));
            }
        }
        SpaceDescriptor::new(field.clone(), coords.clone(), coords, perm, coeff)
    }

    /// Descriptor of the product space, pairing blockwise with the product
    /// of the duals.
    pub fn product(&self, other: &SpaceDescriptor) -> SpaceDescriptor {
        assert_eq!(self.field, other.field);
        let off = self.coords.len();
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        let mut dual_coords = self.dual_coords.clone();
        dual_coords.extend(other.dual_coords.iter().cloned());
        let mut pair_perm = self.pair_perm.clone();
        pair_perm.extend(other.pair_perm.iter().map(|&j| j + off));
        let mut pair_coeff = self.pair_coeff.clone();
        pair_coeff.extend(other.pair_coeff.iter().cloned());
        SpaceDescriptor {
            field: self.field.clone(),
            coords,
            dual_coords,
            pair_perm,
            pair_coeff,
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn num_points(&self) -> u128 {
        (self.field.q() as u128).pow(self.dim() as u32)
    }

    /// The dual descriptor; dual of dual is the original.
    pub fn dual(&self) -> SpaceDescriptor {
        let n = self.dim();
        let mut perm = vec![0usize; n];
        let mut coeff = vec![self.field.zero(); n];
        for j in 0..n {
            perm[self.pair_perm[j]] = j;
            coeff[self.pair_perm[j]] = self.pair_coeff[j].clone();
        }
        SpaceDescriptor {
            field: self.field.clone(),
            coords: self.dual_coords.clone(),
            dual_coords: self.coords.clone(),
            pair_perm: perm,
            pair_coeff: coeff,
        }
    }

    /// Digit `j` of a point index.
    pub fn digit(&self, idx: u64, j: usize) -> u64 {
        let q = self.field.q();
        (idx / q.pow(j as u32)) % q
    }

    pub fn point_coords(&self, idx: u64) -> Vec<FqElem> {
        (0..self.dim())
            .map(|j| self.field.from_index(self.digit(idx, j)))
            .collect()
    }

    pub fn index_of(&self, coords: &[FqElem]) -> u64 {
        let q = self.field.q();
        let mut acc = 0u64;
        for x in coords.iter().rev() {
            acc = acc * q + self.field.index(x);
        }
        acc
    }

    /// Index of `-x`.
    pub fn negate_index(&self, idx: u64) -> u64 {
        let coords: Vec<FqElem> = self
            .point_coords(idx)
            .iter()
            .map(|x| self.field.neg(x))
            .collect();
        self.index_of(&coords)
    }

    /// `kappa(x, y)` with `x` in this space and `y` in the dual, as a field
    /// element.
    pub fn pairing(&self, x_idx: u64, y_idx: u64) -> FqElem {
        let f = &self.field;
        let dual = self; // digits of dual indices use the same radix
        let mut acc = f.zero();
        for j in 0..self.dim() {
            let xj = f.from_index(self.digit(x_idx, j));
            let yj = f.from_index(dual.digit(y_idx, self.pair_perm[j]));
            acc = f.add(&acc, &f.mul(&self.pair_coeff[j], &f.mul(&xj, &yj)));
        }
        acc
    }
}

/// Dense exact-valued function on a coordinatized space, in mixed-radix
/// little-endian layout: coordinate `j` of a point contributes
/// `index(x_j) * q^j` to its table index.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct FuncTable {
    pub space: SpaceDescriptor,
    pub values: Vec<CycNum>,
    /// Number of omitted `q^{-1/2}` normalization factors (grows by `N` per
    /// transform). Informational only.
    pub norm_halves: i64,
}

impl FuncTable {
    pub fn zero(space: SpaceDescriptor) -> Result<Self> {
        let n = space.num_points();
        if n > crate::DEFAULT_POINT_BUDGET as u128 {
            return Err(Error::BudgetExceeded {
                needed: n,
                budget: crate::DEFAULT_POINT_BUDGET,
            });
        }
        let p = space.field.p() as usize;
        Ok(FuncTable {
            space,
            values: vec![CycNum::zero(p); n as usize],
            norm_halves: 0,
        })
    }

    pub fn constant(space: SpaceDescriptor, value: CycNum) -> Result<Self> {
        let mut t = Self::zero(space)?;
        for v in t.values.iter_mut() {
            *v = value.clone();
        }
        Ok(t)
    }

    pub fn delta(space: SpaceDescriptor, at: u64) -> Result<Self> {
        let p = space.field.p() as usize;
        let mut t = Self::zero(space)?;
        t.values[at as usize] = CycNum::one(p);
        Ok(t)
    }

    /// 0/1 table supported on the given point indices.
    pub fn indicator(space: SpaceDescriptor, points: &[u64]) -> Result<Self> {
        let p = space.field.p() as usize;
        let mut t = Self::zero(space)?;
        for &pt in points {
            t.values[pt as usize] = CycNum::one(p);
        }
        Ok(t)
    }

    pub fn p(&self) -> usize {
        self.space.field.p() as usize
    }

    /// Revalidates a table that arrived over the wire: the field modulus
    /// must be irreducible, the value count must match the space, the
    /// pairing must be well formed, and every value must live in the right
    /// cyclotomic ring.
    pub fn validate(&self) -> Result<()> {
        let f = &self.space.field;
        FqField::new(f.p(), f.k(), f.modulus().to_vec())?;
        SpaceDescriptor::new(
            f.clone(),
            self.space.coords.clone(),
            self.space.dual_coords.clone(),
            self.space.pair_perm.clone(),
            self.space.pair_coeff.clone(),
        )?;
        if self.space.num_points() != self.values.len() as u128 {
            return Err(Error::ShapeMismatch(format!(
                "table has {} values for a {}-point space",
                self.values.len(),
                self.space.num_points()
            )));
        }
        for v in &self.values {
            if v.order() != f.p() as usize {
                return Err(Error::CyclotomicMismatch(v.order(), f.p() as usize));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn support(&self) -> Vec<u64> {
        (0..self.values.len() as u64)
            .filter(|&i| !self.values[i as usize].is_zero())
            .collect()
    }

    pub fn mul_scalar(&self, s: &CycNum) -> FuncTable {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = &*v * s;
        }
        out
    }

    pub fn add(&self, other: &FuncTable) -> FuncTable {
        assert_eq!(self.space, other.space);
        let mut out = self.clone();
        for (a, b) in out.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        out
    }

    /// Unnormalized Fourier transform onto the dual space, by one character
    /// pass per axis followed by a gather into the dual coordinate order.
    pub fn fourier(&self) -> FuncTable {
        let f = &self.space.field;
        let q = f.q() as usize;
        let n = self.space.dim();
        let total = self.values.len();
        let p = self.p();

        let mut vals = self.values.clone();
        let mut line_in: Vec<CycNum> = vec![CycNum::zero(p); q];
        for j in 0..n {
            // Exponent table for this axis: e[x][y] = Tr(c_j * x * y).
            let mut exps = vec![0usize; q * q];
            for x in 0..q {
                let cx = f.mul(&self.space.pair_coeff[j], &f.from_index(x as u64));
                for y in 0..q {
                    exps[x * q + y] = f.character_exponent(&f.mul(&cx, &f.from_index(y as u64)));
                }
            }
            let stride = q.pow(j as u32);
            let mut base = 0usize;
            while base < total {
                if (base / stride) % q != 0 {
                    base += stride; // inside a line already processed
                    continue;
                }
                for t in 0..q {
                    line_in[t] = std::mem::replace(&mut vals[base + t * stride], CycNum::zero(p));
                }
                for (y, slot) in (0..q).zip((base..).step_by(stride)) {
                    let mut acc = CycNum::zero(p);
                    for (x, v) in line_in.iter().enumerate() {
                        if !v.is_zero() {
                            acc.add_rotated(v, exps[x * q + y]);
                        }
                    }
                    vals[slot] = acc;
                }
                base += 1;
            }
        }

        // Slot j currently holds the dual variable paired with x_j; gather
        // into the dual space's canonical layout.
        let dual = self.space.dual();
        let mut out = vec![CycNum::zero(p); total];
        let qpow: Vec<u64> = (0..n).map(|j| (q as u64).pow(j as u32)).collect();
        for (idx, v) in vals.into_iter().enumerate() {
            let mut dual_idx = 0u64;
            let mut rem = idx as u64;
            for j in 0..n {
                let digit = rem % q as u64;
                rem /= q as u64;
                dual_idx += digit * qpow[self.space.pair_perm[j]];
            }
            out[dual_idx as usize] = v;
        }
        FuncTable {
            space: dual,
            values: out,
            norm_halves: self.norm_halves + n as i64,
        }
    }

    /// Quadratic-cost reference transform (the definition, summed point by
    /// point).
    pub fn fourier_naive(&self) -> FuncTable {
        let f = &self.space.field;
        let p = self.p();
        let total = self.values.len() as u64;
        let dual = self.space.dual();
        let mut out = vec![CycNum::zero(p); total as usize];
        for y in 0..total {
            let mut acc = CycNum::zero(p);
            for x in 0..total {
                let v = &self.values[x as usize];
                if v.is_zero() {
                    continue;
                }
                let e = f.character_exponent(&self.space.pairing(x, y));
                acc.add_rotated(v, e);
            }
            out[y as usize] = acc;
        }
        FuncTable {
            space: dual,
            values: out,
            norm_halves: self.norm_halves + self.space.dim() as i64,
        }
    }
}

/// Outcome of an exact proportionality test between two tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Colinearity {
    /// Both sides identically zero.
    Degenerate,
    /// `lhs = scalar * rhs` exactly.
    Yes {
        scalar: CycNum,
    },
    No,
}

impl Colinearity {
    pub fn holds(&self) -> bool {
        !matches!(self, Colinearity::No)
    }
}

/// Tests `lhs = c * rhs` for a single exact scalar `c`.
pub fn proportional(lhs: &[CycNum], rhs: &[CycNum]) -> Colinearity {
    assert_eq!(lhs.len(), rhs.len());
    let Some(i) = (0..rhs.len()).find(|&i| !rhs[i].is_zero()) else {
        return if lhs.iter().all(|v| v.is_zero()) {
            Colinearity::Degenerate
        } else {
            Colinearity::No
        };
    };
    let scalar = match lhs[i].try_div(&rhs[i]) {
        Ok(s) => s,
        Err(_) => return Colinearity::No,
    };
    for (a, b) in lhs.iter().zip(rhs) {
        if *a != b.try_mul(&scalar).unwrap() {
            return Colinearity::No;
        }
    }
    Colinearity::Yes { scalar }
}

/// The generalized Kloosterman sum
/// `K^m(lambda) = sum_{x_1 ... x_m = lambda} psi(x_1 + ... + x_m)`.
pub fn kloosterman(m: usize, field: &FqField, lambda: &FqElem) -> Result<CycNum> {
    if field.is_zero(lambda) {
        return Err(Error::InvalidArgument(
            "Kloosterman sum requires lambda != 0".into(),
        ));
    }
    let p = field.p() as usize;
    if m == 1 {
        return Ok(field.additive_character(lambda));
    }
    let units: Vec<FqElem> = field.elements().filter(|x| !field.is_zero(x)).collect();
    let mut acc = CycNum::zero(p);
    let mut tuple = vec![0usize; m - 1];
    loop {
        let mut prod = field.one();
        let mut sum = field.zero();
        for &t in &tuple {
            prod = field.mul(&prod, &units[t]);
            sum = field.add(&sum, &units[t]);
        }
        let last = field.mul(lambda, &field.inv(&prod)?);
        sum = field.add(&sum, &last);
        acc.add_rotated(&CycNum::one(p), field.character_exponent(&sum));
        // Advance the tuple.
        let mut pos = 0;
        loop {
            if pos == m - 1 {
                return Ok(acc);
            }
            tuple[pos] += 1;
            if tuple[pos] < units.len() {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// Checks the Weil/Deligne-type bound `|K^m(lambda)| <= m q^{(m-1)/2}`
/// under every complex embedding, with the given tolerance.
pub fn kloosterman_bound_ok(m: usize, field: &FqField, lambda: &FqElem, tol: f64) -> Result<bool> {
    let k = kloosterman(m, field, lambda)?;
    let bound = m as f64 * (field.q() as f64).powf((m as f64 - 1.0) / 2.0);
    for root in 1..field.p() as usize {
        if k.abs_embedded(root)? > bound + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> FqField {
        FqField::for_q(3).unwrap()
    }

    fn quiver_space(q: u64, dims: Vec<u32>, eps: i32) -> SpaceDescriptor {
        let f = FqField::for_q(q).unwrap();
        let d = GradedDims::new(dims.len(), dims);
        SpaceDescriptor::for_quiver(&f, &d, eps)
    }

    fn random_table(space: SpaceDescriptor, seed: u64) -> FuncTable {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = space.field.p() as usize;
        let mut t = FuncTable::zero(space).unwrap();
        for v in t.values.iter_mut() {
            let e = rng.gen_range(0..p as i64);
            let c = rng.gen_range(-2..=2i64);
            *v = &CycNum::zeta_pow(p, e) * &num::BigRational::from_integer(c.into());
        }
        t
    }

    #[test]
    fn delta_transforms_to_constant() {
        let space = quiver_space(3, vec![1, 1], 1);
        let f = FuncTable::delta(space, 0).unwrap();
        let fhat = f.fourier();
        assert!(fhat.values.iter().all(|v| *v == CycNum::one(3)));
        assert_eq!(fhat.norm_halves, 2);
    }

    #[test]
    fn constant_transforms_to_delta() {
        let space = quiver_space(3, vec![1, 1], 1);
        let n = space.dim() as u32;
        let f = FuncTable::constant(space, CycNum::one(3)).unwrap();
        let fhat = f.fourier();
        assert_eq!(fhat.values[0], CycNum::from_integer(3, 3i64.pow(n)));
        assert!(fhat.values[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn axis_pass_matches_naive() {
        for (q, dims, eps, seed) in [
            (3u64, vec![1u32, 1], 1, 7u64),
            (3, vec![2, 1], -1, 8),
            (5, vec![1, 1], 1, 9),
        ] {
            let t = random_table(quiver_space(q, dims, eps), seed);
            assert_eq!(t.fourier().values, t.fourier_naive().values);
        }
    }

    #[test]
    fn double_transform_is_inversion() {
        // fourier(fourier(f))(x) = q^N f(-x), exhaustively for N <= 4, q = 3.
        for dims in [vec![1u32, 1], vec![2, 1], vec![2, 2]] {
            let space = quiver_space(3, dims, 1);
            let n = space.dim() as u32;
            if n > 4 {
                continue;
            }
            let t = random_table(space.clone(), 42 + n as u64);
            let tt = t.fourier().fourier();
            assert_eq!(tt.space, t.space, "double dual returns to the space");
            let qn = CycNum::from_integer(3, 3i64.pow(n));
            for idx in 0..t.values.len() as u64 {
                let neg = space.negate_index(idx);
                assert_eq!(tt.values[idx as usize], &t.values[neg as usize] * &qn);
            }
        }
    }

    #[test]
    fn plancherel() {
        let space = quiver_space(3, vec![1, 1], 1);
        let n = space.dim() as u32;
        let t = random_table(space, 5);
        let that = t.fourier();
        let p = 3usize;
        let mut lhs = CycNum::zero(p);
        for v in &that.values {
            lhs += &(v * &v.conj());
        }
        let mut rhs = CycNum::zero(p);
        for v in &t.values {
            rhs += &(v * &v.conj());
        }
        assert_eq!(lhs, &rhs * &CycNum::from_integer(p, 3i64.pow(n)));
    }

    #[test]
    fn quiver_pairing_matches_trace() {
        // kappa via descriptor equals tr(T T') for dims (1,1), q = 3,
        // exhaustively.
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        let space = SpaceDescriptor::for_quiver(&f, &dims, 1);
        for x in 0..9u64 {
            let t = QuiverRep::decode(&f, &dims, 1, x);
            for y in 0..9u64 {
                let tp = QuiverRep::decode(&f, &dims, -1, y);
                // tr(T T') = sum_j tr(T[j - eps] * T'[j]).
                let mut tr = f.zero();
                for j in 0..2usize {
                    let src = (j as isize - 1).rem_euclid(2) as usize;
                    let prod = t.blocks[src].mul(&tp.blocks[j]);
                    for d in 0..prod.rows {
                        tr = f.add(&tr, prod.get(d, d));
                    }
                }
                assert_eq!(space.pairing(x, y), tr);
            }
        }
    }

    #[test]
    fn dual_is_involutive() {
        for eps in [1, -1] {
            let space = quiver_space(3, vec![2, 1], eps);
            let dd = space.dual().dual();
            assert_eq!(dd, space);
            // Pairing read from the dual side agrees.
            for x in 0..20u64 {
                for y in 0..20u64 {
                    assert_eq!(space.pairing(x, y), space.dual().pairing(y, x));
                }
            }
        }
    }

    #[test]
    fn kloosterman_m1_is_character() {
        let f = FqField::for_q(5).unwrap();
        for i in 1..5u64 {
            let lam = f.from_index(i);
            assert_eq!(
                kloosterman(1, &f, &lam).unwrap(),
                f.additive_character(&lam)
            );
        }
    }

    #[test]
    fn kloosterman_m2_q3_values() {
        let f = f3();
        // lambda = 1: pairs (1,1), (2,2): zeta^2 + zeta^4 = zeta^2 + zeta = -1.
        let k1 = kloosterman(2, &f, &f.from_int(1)).unwrap();
        assert_eq!(k1, CycNum::from_integer(3, -1));
        // lambda = 2: pairs (1,2), (2,1): psi(0) twice = 2.
        let k2 = kloosterman(2, &f, &f.from_int(2)).unwrap();
        assert_eq!(k2, CycNum::from_integer(3, 2));
        // lambda = 0 rejected.
        assert!(kloosterman(2, &f, &f.zero()).is_err());
    }

    #[test]
    fn kloosterman_bound_small() {
        for q in [3u64, 9] {
            let f = FqField::for_q(q).unwrap();
            for m in 1..=3 {
                for i in 1..f.q() {
                    assert!(
                        kloosterman_bound_ok(m, &f, &f.from_index(i), 1e-6).unwrap(),
                        "q={q}, m={m}, lambda index {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn proportionality_classification() {
        let p = 3;
        let one = CycNum::one(p);
        let zeta = CycNum::zeta_pow(p, 1);
        let zero = CycNum::zero(p);
        let a = vec![zeta.clone(), zero.clone(), &zeta * &zeta];
        let b = vec![one.clone(), zero.clone(), zeta.clone()];
        match proportional(&a, &b) {
            Colinearity::Yes { scalar } => assert_eq!(scalar, zeta),
            other => panic!("expected colinear, got {other:?}"),
        }
        let c = vec![one.clone(), zeta.clone(), zero.clone()];
        assert_eq!(proportional(&a, &c), Colinearity::No);
        let z = vec![zero.clone(), zero.clone(), zero.clone()];
        assert_eq!(proportional(&z, &z), Colinearity::Degenerate);
        assert_eq!(proportional(&a, &z), Colinearity::No);
    }

    #[test]
    fn product_descriptor_pairs_blockwise() {
        let s1 = quiver_space(3, vec![1, 1], 1);
        let s2 = quiver_space(3, vec![1, 0], 1);
        let prod = s1.product(&s2);
        assert_eq!(prod.dim(), s1.dim() + s2.dim());
        let d = prod.dual();
        assert_eq!(d.coords.len(), prod.dim());
        assert_eq!(prod.dual().dual(), prod);
    }
}
