//! Invariant-function analysis on quiver representation spaces: orbit
//! indicator bases, the biorbital function space, parabolic induction and
//! restriction at function level, their commutation with the Fourier
//! transform, and flag-counting functions.
//!
//! A function on `E^eps_V(F_q)` is *biorbital* when it is constant on
//! `G_V(F_q)`-orbits, vanishes off the nilpotent locus, and its Fourier
//! transform vanishes off the nilpotent locus of the dual space. The space
//! of such functions is computed exactly in the nilpotent-orbit-indicator
//! basis by solving the vanishing constraints with cyclotomic Gaussian
//! elimination.

use num::{BigInt, BigRational, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::finitefield::{FqElem, FqField};
use crate::fqlinalg::{enumerate_subspaces, FqMat};
use crate::quiver::{self, enumerate_rational_orbits, GradedDims, QuiverRep, RationalOrbit};
use crate::solve::NullspaceSolver;
use crate::transform::{proportional, Colinearity, FuncTable, SpaceDescriptor};
use crate::{Error, Result};

/// The 0/1 table of an orbit (or any point set) on a space.
pub fn orbit_indicator(space: &SpaceDescriptor, points: &[u64]) -> Result<FuncTable> {
    FuncTable::indicator(space.clone(), points)
}

/// Orbit indicators of all rational orbits on a locus, in orbit order.
pub struct InvariantBasis {
    pub space: SpaceDescriptor,
    pub orbits: Vec<RationalOrbit>,
    pub indicators: Vec<FuncTable>,
}

impl InvariantBasis {
    pub fn nilpotent(field: &FqField, dims: &GradedDims, eps: i32, budget: u64) -> Result<Self> {
        let orbits = enumerate_rational_orbits(field, dims, eps, true, budget)?;
        let space = SpaceDescriptor::for_quiver(field, dims, eps);
        let indicators = orbits
            .iter()
            .map(|o| FuncTable::indicator(space.clone(), &o.points))
            .collect::<Result<Vec<_>>>()?;
        Ok(InvariantBasis {
            space,
            orbits,
            indicators,
        })
    }
}

/// The space of invariant functions supported on the nilpotent locus whose
/// transform is supported on the dual nilpotent locus, expressed in the
/// orbit-indicator basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BiorbitalSpace {
    pub dimension: usize,
    pub basis: Vec<Vec<CycNum>>,
    pub orbit_sizes: Vec<usize>,
}

/// Solves the vanishing constraints for a given indicator family: the
/// transforms of an admissible combination must vanish wherever
/// `dual_nilpotent` is false.
pub fn biorbital_from_indicators(
    indicators: &[FuncTable],
    dual_nilpotent: impl Fn(u64) -> bool,
) -> BiorbitalSpace {
    let r = indicators.len();
    if r == 0 {
        return BiorbitalSpace {
            dimension: 0,
            basis: vec![],
            orbit_sizes: vec![],
        };
    }
    let p = indicators[0].p();
    let transforms: Vec<FuncTable> = indicators.iter().map(|f| f.fourier()).collect();
    let n_points = transforms[0].values.len() as u64;
    let mut solver = NullspaceSolver::new(p, r);
    for y in 0..n_points {
        if dual_nilpotent(y) {
            continue;
        }
        let row: Vec<CycNum> = transforms
            .iter()
            .map(|t| t.values[y as usize].clone())
            .collect();
        solver.add_constraint(row);
        if solver.nullity() == 0 {
            break;
        }
    }
    BiorbitalSpace {
        dimension: solver.nullity(),
        basis: solver.nullspace_basis(),
        orbit_sizes: indicators.iter().map(|f| f.support().len()).collect(),
    }
}

/// Biorbital function space of `E^eps_V(F_q)`, together with the nilpotent
/// orbits indexing the basis coordinates.
pub fn biorbital_space(
    field: &FqField,
    dims: &GradedDims,
    eps: i32,
    budget: u64,
) -> Result<(BiorbitalSpace, Vec<RationalOrbit>)> {
    let basis = InvariantBasis::nilpotent(field, dims, eps, budget)?;
    let dual_dims = dims.clone();
    let f = field.clone();
    let space = biorbital_from_indicators(&basis.indicators, move |y| {
        QuiverRep::decode(&f, &dual_dims, -eps, y).is_nilpotent()
    });
    Ok((space, basis.orbits))
}

/// Samples invariance of a table under the `G_V(F_q)` conjugation action.
pub fn is_invariant_sampled(
    table: &FuncTable,
    dims: &GradedDims,
    eps: i32,
    samples: usize,
    seed: u64,
) -> bool {
    let field = &table.space.field;
    let gens = quiver::group_generators(field, dims);
    if gens.is_empty() {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = table.values.len() as u64;
    for _ in 0..samples {
        let idx = rng.gen_range(0..n);
        let (vertex, g, ginv) = &gens[rng.gen_range(0..gens.len())];
        let rep = QuiverRep::decode(field, dims, eps, idx);
        let moved = rep.conjugate_at_vertex(*vertex, g, ginv).encode();
        if table.values[idx as usize] != table.values[moved as usize] {
            return false;
        }
    }
    true
}

/// Function-level parabolic induction: for invariant `f_j` on
/// `E^eps_{U^j}`,
/// `(Ind f)(T) = sum over T-stable graded flags with j-th subquotient of
/// dimension |U^j| of prod_j f_j(induced map on the subquotient)`.
///
/// Computed by peeling the bottom step: the first part is carried by the
/// subobject, the remaining parts by induction on the quotient.
pub fn induce(parts: &[(GradedDims, FuncTable)], eps: i32) -> Result<FuncTable> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument(
            "induce needs at least one part".into(),
        ));
    }
    let field = parts[0].1.space.field.clone();
    for (dims, table) in parts {
        let expect = SpaceDescriptor::for_quiver(&field, dims, eps);
        if table.space != expect {
            return Err(Error::ShapeMismatch(
                "part table does not live on its representation space".into(),
            ));
        }
        if !is_invariant_sampled(table, dims, eps, 40, 0xA17B0) {
            return Err(Error::NotInvariant);
        }
    }
    induce_unchecked(parts, eps)
}

fn induce_unchecked(parts: &[(GradedDims, FuncTable)], eps: i32) -> Result<FuncTable> {
    if parts.len() == 1 {
        return Ok(parts[0].1.clone());
    }
    let inner = induce_unchecked(&parts[1..], eps)?;
    let inner_dims = sum_dims(&parts[1..]);
    induce_two(&parts[0].0, &parts[0].1, &inner_dims, &inner, eps)
}

fn sum_dims(parts: &[(GradedDims, FuncTable)]) -> GradedDims {
    let m = parts[0].0.m;
    let mut dims = vec![0u32; m];
    for (d, _) in parts {
        for i in 0..m {
            dims[i] += d.dims[i];
        }
    }
    GradedDims::new(m, dims)
}

/// Two-step induction: `W` runs over `T`-stable graded subspaces of
/// dimension `d1`; the value is `f1(T|_W) * f2(T on V/W)`.
fn induce_two(
    d1: &GradedDims,
    f1: &FuncTable,
    d2: &GradedDims,
    f2: &FuncTable,
    eps: i32,
) -> Result<FuncTable> {
    let field = f1.space.field.clone();
    let m = d1.m;
    let v_dims = GradedDims::new(m, (0..m).map(|i| d1.dims[i] + d2.dims[i]).collect());
    let v_space = SpaceDescriptor::for_quiver(&field, &v_dims, eps);
    let mut out = FuncTable::zero(v_space)?;
    let p = out.p();

    // All graded subspaces of dimension vector d1, as per-vertex RREF bases.
    let per_vertex: Vec<Vec<FqMat>> = (0..m)
        .map(|i| enumerate_subspaces(&field, v_dims.dims[i] as usize, d1.dims[i] as usize))
        .collect();
    let mut tuple_counter = vec![0usize; m];
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    loop {
        tuples.push(tuple_counter.clone());
        let mut pos = 0;
        loop {
            if pos == m {
                break;
            }
            tuple_counter[pos] += 1;
            if tuple_counter[pos] < per_vertex[pos].len() {
                break;
            }
            tuple_counter[pos] = 0;
            pos += 1;
        }
        if pos == m {
            break;
        }
    }

    let n_points = out.values.len() as u64;
    for t_idx in 0..n_points {
        let rep = QuiverRep::decode(&field, &v_dims, eps, t_idx);
        let mut acc = CycNum::zero(p);
        'tuple: for tuple in &tuples {
            let bases: Vec<&FqMat> = (0..m).map(|i| &per_vertex[i][tuple[i]]).collect();
            // Restriction to W: T(W_i) must lie in W_{i+eps}.
            let mut sub_blocks = Vec::with_capacity(m);
            for i in 0..m {
                let tgt = (i as isize + eps as isize).rem_euclid(m as isize) as usize;
                let rows_sub = bases[tgt].rows;
                let mut blk = FqMat::zero(&field, rows_sub, bases[i].rows);
                for r in 0..bases[i].rows {
                    let w: Vec<FqElem> = bases[i].row(r).to_vec();
                    let image = rep.blocks[i].mul_vec(&w);
                    match bases[tgt].solve_in_rowspace(&image) {
                        Some(coeffs) => {
                            for (rr, x) in coeffs.into_iter().enumerate() {
                                blk.set(rr, r, x);
                            }
                        }
                        None => continue 'tuple,
                    }
                }
                sub_blocks.push(blk);
            }
            let sub_rep = QuiverRep::new(field.clone(), d1.clone(), eps, sub_blocks)
                .expect("restricted block shapes match d1");
            let v1 = &f1.values[sub_rep.encode() as usize];
            if v1.is_zero() {
                continue;
            }
            // Quotient map in the non-pivot coordinate basis.
            let mut quot_blocks = Vec::with_capacity(m);
            for i in 0..m {
                let tgt = (i as isize + eps as isize).rem_euclid(m as isize) as usize;
                let nonpivot_src = nonpivot_cols(bases[i], v_dims.dims[i] as usize);
                let nonpivot_tgt = nonpivot_cols(bases[tgt], v_dims.dims[tgt] as usize);
                let mut blk = FqMat::zero(&field, nonpivot_tgt.len(), nonpivot_src.len());
                for (c, &s) in nonpivot_src.iter().enumerate() {
                    // Image of e_s, reduced modulo W_{tgt}.
                    let mut y: Vec<FqElem> = (0..rep.blocks[i].rows)
                        .map(|r| rep.blocks[i].get(r, s).clone())
                        .collect();
                    reduce_mod_rows(&field, &mut y, bases[tgt]);
                    for (r, &tcol) in nonpivot_tgt.iter().enumerate() {
                        blk.set(r, c, y[tcol].clone());
                    }
                }
                quot_blocks.push(blk);
            }
            let quot_rep = QuiverRep::new(field.clone(), d2.clone(), eps, quot_blocks)
                .expect("quotient block shapes match d2");
            let v2 = &f2.values[quot_rep.encode() as usize];
            if v2.is_zero() {
                continue;
            }
            acc += &v1.try_mul(v2).unwrap();
        }
        out.values[t_idx as usize] = acc;
    }
    Ok(out)
}

fn nonpivot_cols(basis: &FqMat, ambient: usize) -> Vec<usize> {
    let (_, pivots) = basis.rref();
    (0..ambient).filter(|c| !pivots.contains(c)).collect()
}

/// Subtracts row-space multiples so that `y` has zero entries in the pivot
/// columns of the (RREF) basis.
fn reduce_mod_rows(field: &FqField, y: &mut [FqElem], basis: &FqMat) {
    let (rref, pivots) = basis.rref();
    for (r, &pc) in pivots.iter().enumerate() {
        if !field.is_zero(&y[pc]) {
            let factor = y[pc].clone();
            for c in 0..y.len() {
                y[c] = field.sub(&y[c], &field.mul(&factor, rref.get(r, c)));
            }
        }
    }
}

/// Function-level parabolic restriction: with `W` the standard coordinate
/// graded subspace spanned by the last `dims2_i` basis vectors of each
/// `V_i`, `(Res f)(T1, T2)` sums `f` over all points stabilizing `W` that
/// induce `T1` on `V/W` and `T2` on `W`.
pub fn restrict(
    f: &FuncTable,
    dims1: &GradedDims,
    dims2: &GradedDims,
    eps: i32,
) -> Result<FuncTable> {
    let field = f.space.field.clone();
    let m = dims1.m;
    let v_dims = GradedDims::new(m, (0..m).map(|i| dims1.dims[i] + dims2.dims[i]).collect());
    let expect = SpaceDescriptor::for_quiver(&field, &v_dims, eps);
    if f.space != expect {
        return Err(Error::ShapeMismatch(
            "table does not live on the representation space of dims1 + dims2".into(),
        ));
    }
    if !is_invariant_sampled(f, &v_dims, eps, 40, 0x4E57) {
        return Err(Error::NotInvariant);
    }
    let s1 = SpaceDescriptor::for_quiver(&field, dims1, eps);
    let s2 = SpaceDescriptor::for_quiver(&field, dims2, eps);
    let n1 = s1.dim() as u32;
    let prod_space = s1.product(&s2);
    let mut out = FuncTable::zero(prod_space)?;
    let q = field.q();

    let total = f.values.len() as u64;
    'points: for x_idx in 0..total {
        let v = &f.values[x_idx as usize];
        if v.is_zero() {
            continue;
        }
        let rep = QuiverRep::decode(&field, &v_dims, eps, x_idx);
        let mut t1_blocks = Vec::with_capacity(m);
        let mut t2_blocks = Vec::with_capacity(m);
        for i in 0..m {
            let tgt = (i as isize + eps as isize).rem_euclid(m as isize) as usize;
            let b = &rep.blocks[i];
            let (r1, c1) = (dims1.dims[tgt] as usize, dims1.dims[i] as usize);
            let (r2, c2) = (dims2.dims[tgt] as usize, dims2.dims[i] as usize);
            // Stabilizing W: the quotient-rows x sub-columns block vanishes.
            for r in 0..r1 {
                for c in 0..c2 {
                    if !field.is_zero(b.get(r, c1 + c)) {
                        continue 'points;
                    }
                }
            }
            t1_blocks.push(FqMat::from_fn(&field, r1, c1, |r, c| b.get(r, c).clone()));
            t2_blocks.push(FqMat::from_fn(&field, r2, c2, |r, c| {
                b.get(r1 + r, c1 + c).clone()
            }));
        }
        let t1 = QuiverRep::new(field.clone(), dims1.clone(), eps, t1_blocks).unwrap();
        let t2 = QuiverRep::new(field.clone(), dims2.clone(), eps, t2_blocks).unwrap();
        let out_idx = t1.encode() + t2.encode() * q.pow(n1);
        out.values[out_idx as usize] += v;
    }
    Ok(out)
}

/// Result of an exact commutation check, reporting the proportionality
/// scalar when the two routes agree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutationReport {
    pub colinear: bool,
    pub degenerate: bool,
    pub scalar: Option<CycNum>,
    /// `Some(e)` when the scalar equals `q^e` exactly.
    pub scalar_q_exponent: Option<i64>,
}

fn classify(lhs: &FuncTable, rhs: &FuncTable, q: u64) -> CommutationReport {
    match proportional(&lhs.values, &rhs.values) {
        Colinearity::Degenerate => CommutationReport {
            colinear: true,
            degenerate: true,
            scalar: None,
            scalar_q_exponent: None,
        },
        Colinearity::No => CommutationReport {
            colinear: false,
            degenerate: false,
            scalar: None,
            scalar_q_exponent: None,
        },
        Colinearity::Yes { scalar } => {
            let exp = q_power_exponent(&scalar, q);
            CommutationReport {
                colinear: true,
                degenerate: false,
                scalar: Some(scalar),
                scalar_q_exponent: exp,
            }
        }
    }
}

/// `Some(e)` iff `value = q^e` exactly (with `e` possibly negative).
pub fn q_power_exponent(value: &CycNum, q: u64) -> Option<i64> {
    let r = value.as_rational()?;
    let one = BigInt::one();
    let qb = BigInt::from(q);
    if r.numer() <= &BigInt::from(0) {
        return None;
    }
    if r.denom() == &one {
        let mut n = r.numer().clone();
        let mut e = 0i64;
        while n > one {
            if &n % &qb != BigInt::from(0) {
                return None;
            }
            n /= &qb;
            e += 1;
        }
        Some(e)
    } else if r.numer() == &one {
        let mut d = r.denom().clone();
        let mut e = 0i64;
        while d > one {
            if &d % &qb != BigInt::from(0) {
                return None;
            }
            d /= &qb;
            e -= 1;
        }
        Some(e)
    } else {
        None
    }
}

/// Checks that transform-then-induce agrees with induce-then-transform up
/// to an exact scalar. The dual-side induction runs on `E^{-eps}`.
pub fn check_fourier_induction_commutes(
    parts: &[(GradedDims, FuncTable)],
    eps: i32,
) -> Result<CommutationReport> {
    let q = parts[0].1.space.field.q();
    let lhs = induce(parts, eps)?.fourier();
    let dual_parts: Vec<(GradedDims, FuncTable)> = parts
        .iter()
        .map(|(d, f)| (d.clone(), f.fourier()))
        .collect();
    let rhs = induce(&dual_parts, -eps)?;
    debug_assert_eq!(lhs.space, rhs.space);
    Ok(classify(&lhs, &rhs, q))
}

/// Checks that transform-then-restrict agrees with restrict-then-transform
/// up to an exact scalar.
pub fn check_fourier_restriction_commutes(
    f: &FuncTable,
    dims1: &GradedDims,
    dims2: &GradedDims,
    eps: i32,
) -> Result<CommutationReport> {
    let q = f.space.field.q();
    let lhs = restrict(f, dims1, dims2, eps)?.fourier();
    let rhs = restrict(&f.fourier(), dims1, dims2, -eps)?;
    debug_assert_eq!(lhs.space, rhs.space);
    Ok(classify(&lhs, &rhs, q))
}

/// `f(T)` = number of complete graded `T`-stable flags whose 1-dimensional
/// subquotients sit at the given vertex sequence (bottom step first).
/// Realized as an iterated induction of delta functions.
pub fn flag_count_function(
    field: &FqField,
    dims: &GradedDims,
    eps: i32,
    flag_type: &[usize],
) -> Result<FuncTable> {
    let m = dims.m;
    let mut counts = vec![0u32; m];
    for &v in flag_type {
        if v >= m {
            return Err(Error::InvalidArgument(format!(
                "flag type vertex {v} out of range for m = {m}"
            )));
        }
        counts[v] += 1;
    }
    if counts != dims.dims {
        return Err(Error::InvalidArgument(
            "flag type does not enumerate the graded pieces of dims".into(),
        ));
    }
    let parts: Vec<(GradedDims, FuncTable)> = flag_type
        .iter()
        .map(|&v| {
            let mut d = vec![0u32; m];
            d[v] = 1;
            let unit = GradedDims::new(m, d);
            let space = SpaceDescriptor::for_quiver(field, &unit, eps);
            let table = FuncTable::delta(space, 0)?;
            Ok((unit, table))
        })
        .collect::<Result<Vec<_>>>()?;
    induce_unchecked(&parts, eps)
}

/// Per-orbit outcome of the support-stratum consistency check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumSupportReport {
    pub orbit_index: usize,
    /// The unique maximal `(z, sigma)` achieved on the transform's support.
    pub top_unique: bool,
    /// The transform is constant on each Frobenius-type class of valid
    /// points of the top stratum.
    pub frobenius_constant: bool,
    pub passed: bool,
}

/// For each nilpotent orbit indicator, checks that the support of its
/// transform singles out one antiorbital stratum: the maximal achieved
/// `(z, sigma)` label is unique, and on valid points of that stratum the
/// transform value depends only on the Frobenius type (the degree multiset
/// of the nonzero-eigenvalue factors), not on the individual eigenvalues.
pub fn support_stratum_consistency(
    field: &FqField,
    dims: &GradedDims,
    eps: i32,
    budget: u64,
) -> Result<Vec<StratumSupportReport>> {
    let basis = InvariantBasis::nilpotent(field, dims, eps, budget)?;
    let n_dual = basis.space.num_points() as u64;
    // Stratum label and Frobenius type per dual point.
    let mut labels = Vec::with_capacity(n_dual as usize);
    for y in 0..n_dual {
        let rep = QuiverRep::decode(field, dims, -eps, y);
        let s = quiver::stratum_label(&rep);
        let mut ftype: Vec<usize> = quiver::eigen_factors(&rep)
            .iter()
            .filter(|g| g.deg() != Some(1) || !field.is_zero(&g.coeffs()[0]))
            .map(|g| g.deg().unwrap())
            .collect();
        ftype.sort_unstable();
        labels.push((s, ftype));
    }
    let mut reports = Vec::new();
    for (oi, ind) in basis.indicators.iter().enumerate() {
        let fhat = ind.fourier();
        let support: Vec<u64> = fhat.support();
        // Achieved (z, sigma) labels.
        let mut achieved: Vec<(usize, crate::segments::Multisegment)> = Vec::new();
        for &y in &support {
            let (s, _) = &labels[y as usize];
            let key = (s.z, s.sigma.clone());
            if !achieved.contains(&key) {
                achieved.push(key);
            }
        }
        let zmax = achieved.iter().map(|(z, _)| *z).max().unwrap_or(0);
        let tops: Vec<_> = achieved.iter().filter(|(z, _)| *z == zmax).collect();
        let top_unique = tops.len() == 1;
        let mut frobenius_constant = true;
        if let Some((z, sigma)) = tops.first() {
            // Group valid points of the top stratum by Frobenius type and
            // demand a single transform value per class.
            let mut classes: Vec<(Vec<usize>, CycNum)> = Vec::new();
            for y in 0..n_dual {
                let (s, ftype) = &labels[y as usize];
                if s.z != *z || &s.sigma != sigma || !s.valid {
                    continue;
                }
                let val = fhat.values[y as usize].clone();
                match classes.iter().find(|(t, _)| t == ftype) {
                    Some((_, v)) => {
                        if *v != val {
                            frobenius_constant = false;
                        }
                    }
                    None => classes.push((ftype.clone(), val)),
                }
            }
        }
        reports.push(StratumSupportReport {
            orbit_index: oi,
            top_unique,
            frobenius_constant,
            passed: top_unique && frobenius_constant,
        });
    }
    Ok(reports)
}

/// Convenience: value-level product of a rational and a table entry,
/// used when seeding random invariant functions in tests and checks.
pub fn random_invariant_table(
    field: &FqField,
    dims: &GradedDims,
    eps: i32,
    seed: u64,
    budget: u64,
) -> Result<FuncTable> {
    let orbits = enumerate_rational_orbits(field, dims, eps, false, budget)?;
    let space = SpaceDescriptor::for_quiver(field, dims, eps);
    let mut table = FuncTable::zero(space)?;
    let p = table.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for orbit in &orbits {
        let e = rng.gen_range(0..p as i64);
        let c: i64 = rng.gen_range(-3..=3);
        let val = &CycNum::zeta_pow(p, e) * &BigRational::from_integer(c.into());
        for &pt in &orbit.points {
            table.values[pt as usize] = val.clone();
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segments::count_multisegments;

    fn f3() -> FqField {
        FqField::for_q(3).unwrap()
    }

    const BUDGET: u64 = 1 << 24;

    #[test]
    fn orbit_indicator_basics() {
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        let space = SpaceDescriptor::for_quiver(&f, &dims, 1);
        let t = orbit_indicator(&space, &[0]).unwrap();
        assert_eq!(t.values[0], CycNum::one(3));
        assert_eq!(t.support(), vec![0]);
        // The orbit of blocks (1, 0) has exactly 2 points.
        let orbits = enumerate_rational_orbits(&f, &dims, 1, true, BUDGET).unwrap();
        let two_point = orbits.iter().find(|o| o.points.len() == 2).unwrap();
        let ind = orbit_indicator(&space, &two_point.points).unwrap();
        assert_eq!(ind.support().len(), 2);
    }

    #[test]
    fn biorbital_dimension_equals_aperiodic_count_1_1() {
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        let (space, orbits) = biorbital_space(&f, &dims, 1, BUDGET).unwrap();
        let (_, ap) = count_multisegments(2, &dims.dims);
        assert_eq!(space.dimension, ap);
        assert_eq!(space.dimension, 2);
        assert_eq!(orbits.len(), 3);
        // Support/vanishing double-check on the basis functions.
        let desc = SpaceDescriptor::for_quiver(&f, &dims, 1);
        for coeffs in &space.basis {
            let mut table = FuncTable::zero(desc.clone()).unwrap();
            for (j, orbit) in orbits.iter().enumerate() {
                for &pt in &orbit.points {
                    table.values[pt as usize] = coeffs[j].clone();
                }
            }
            let fhat = table.fourier();
            for y in 0..fhat.values.len() as u64 {
                let rep = QuiverRep::decode(&f, &dims, -1, y);
                if !rep.is_nilpotent() {
                    assert!(fhat.values[y as usize].is_zero());
                }
            }
        }
    }

    #[test]
    fn biorbital_gl_specialization_is_zero() {
        // m = 1: no nonzero biorbital functions for nu = (1), (2).
        let f = f3();
        for n in [1u32, 2] {
            let dims = GradedDims::new(1, vec![n]);
            let (space, _) = biorbital_space(&f, &dims, 1, BUDGET).unwrap();
            assert_eq!(space.dimension, 0, "nu = ({n})");
        }
    }

    #[test]
    fn trivial_space_biorbital_dimension_one() {
        let f = f3();
        let dims = GradedDims::new(2, vec![0, 0]);
        let (space, _) = biorbital_space(&f, &dims, 1, BUDGET).unwrap();
        assert_eq!(space.dimension, 1);
    }

    #[test]
    fn induce_with_zero_space_is_identity() {
        let f = f3();
        let d1 = GradedDims::new(2, vec![1, 1]);
        let d2 = GradedDims::new(2, vec![0, 0]);
        let f1 = random_invariant_table(&f, &d1, 1, 11, BUDGET).unwrap();
        let f2 = FuncTable::delta(SpaceDescriptor::for_quiver(&f, &d2, 1), 0).unwrap();
        let ind = induce(&[(d1.clone(), f1.clone()), (d2, f2)], 1).unwrap();
        assert_eq!(ind.values, f1.values);
    }

    #[test]
    fn induce_delta_counts_flags_at_zero() {
        // Ind of deltas evaluated at T = 0 counts all graded flags of the
        // type; for dims (1,1) split into units this is 1.
        let f = f3();
        let table = flag_count_function(&f, &GradedDims::new(2, vec![1, 1]), 1, &[0, 1]).unwrap();
        assert_eq!(table.values[0], CycNum::one(3));
        // Direct flag-enumeration oracle on dims (2,1), type (0,0,1):
        // count pairs 0 < W_1 < W_2 < V with prescribed vertex steps,
        // stable under T, for every T.
        let dims = GradedDims::new(2, vec![2, 1]);
        let table = flag_count_function(&f, &dims, 1, &[0, 0, 1]).unwrap();
        let oracle = flag_oracle(&f, &dims, 1, &[0, 0, 1]);
        assert_eq!(table.values, oracle);
    }

    /// Brute-force flag count: enumerates chains of graded subspaces.
    fn flag_oracle(
        field: &FqField,
        dims: &GradedDims,
        eps: i32,
        flag_type: &[usize],
    ) -> Vec<CycNum> {
        let space = SpaceDescriptor::for_quiver(field, dims, eps);
        let n_points = space.num_points() as u64;
        let p = field.p() as usize;
        let m = dims.m;
        let mut out = vec![CycNum::zero(p); n_points as usize];
        // Cumulative dimension vectors of the flag steps.
        let mut steps: Vec<Vec<u32>> = vec![vec![0; m]];
        for &v in flag_type {
            let mut next = steps.last().unwrap().clone();
            next[v] += 1;
            steps.push(next);
        }
        for idx in 0..n_points {
            let rep = QuiverRep::decode(field, dims, eps, idx);
            let count = count_chains(field, &rep, &steps, 1, &{
                // step 0 is the zero subspace: basis matrices with 0 rows
                (0..m)
                    .map(|i| FqMat::zero(field, 0, dims.dims[i] as usize))
                    .collect::<Vec<_>>()
            });
            out[idx as usize] = CycNum::from_integer(p, count as i64);
        }
        out
    }

    fn count_chains(
        field: &FqField,
        rep: &QuiverRep,
        steps: &[Vec<u32>],
        level: usize,
        prev: &[FqMat],
    ) -> u64 {
        let m = rep.dims.m;
        if level == steps.len() {
            return 1;
        }
        let mut total = 0;
        // Enumerate graded subspaces of dims steps[level] containing prev
        // and stable under T.
        let per_vertex: Vec<Vec<FqMat>> = (0..m)
            .map(|i| {
                enumerate_subspaces(field, rep.dims.dims[i] as usize, steps[level][i] as usize)
            })
            .collect();
        let mut counter = vec![0usize; m];
        loop {
            let bases: Vec<&FqMat> = (0..m).map(|i| &per_vertex[i][counter[i]]).collect();
            // Containment and stability.
            let mut ok = true;
            'outer: for i in 0..m {
                for r in 0..prev[i].rows {
                    if bases[i]
                        .solve_in_rowspace(&prev[i].row(r).to_vec())
                        .is_none()
                    {
                        ok = false;
                        break 'outer;
                    }
                }
                let tgt = (i as isize + rep.eps as isize).rem_euclid(m as isize) as usize;
                for r in 0..bases[i].rows {
                    let img = rep.blocks[i].mul_vec(&bases[i].row(r).to_vec());
                    if bases[tgt].solve_in_rowspace(&img).is_none() {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                let owned: Vec<FqMat> = bases.into_iter().cloned().collect();
                total += count_chains(field, rep, steps, level + 1, &owned);
            }
            let mut pos = 0;
            loop {
                if pos == m {
                    return total;
                }
                counter[pos] += 1;
                if counter[pos] < per_vertex[pos].len() {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
        }
    }

    #[test]
    fn induce_is_associative() {
        // Ind(Ind(f1, f2), f3) = Ind(f1, f2, f3) on three unit pieces.
        let f = f3();
        let m = 2;
        let u = |v: usize| {
            let mut d = vec![0u32; m];
            d[v] = 1;
            GradedDims::new(m, d)
        };
        let mk = |dims: &GradedDims, seed: u64| {
            random_invariant_table(&f, dims, 1, seed, BUDGET).unwrap()
        };
        let (d1, d2, d3) = (u(0), u(1), u(0));
        let (t1, t2, t3) = (mk(&d1, 1), mk(&d2, 2), mk(&d3, 3));
        let all = induce(
            &[
                (d1.clone(), t1.clone()),
                (d2.clone(), t2.clone()),
                (d3.clone(), t3.clone()),
            ],
            1,
        )
        .unwrap();
        let first_two = induce(&[(d1.clone(), t1), (d2.clone(), t2)], 1).unwrap();
        let d12 = GradedDims::new(m, vec![1, 1]);
        let left = induce(&[(d12, first_two), (d3, t3)], 1).unwrap();
        assert_eq!(left.values, all.values);
    }

    #[test]
    fn induce_of_distinct_eigenvalue_indicators_is_one_on_open_orbit() {
        // Two invertible-locus indicators with distinct eigenvalues induce a
        // function taking the value 1 on the orbit where T^m has exactly
        // those eigenvalues: the stable flag is unique there.
        let f = f3();
        let d = GradedDims::new(2, vec![1, 1]);
        let space = SpaceDescriptor::for_quiver(&f, &d, 1);
        let n_points = space.num_points() as u64;
        let eigen_of = |idx: u64| {
            let c = space.point_coords(idx);
            f.mul(&c[0], &c[1])
        };
        let indicator_for = |lam: i64| {
            let pts: Vec<u64> = (0..n_points)
                .filter(|&i| eigen_of(i) == f.from_int(lam))
                .collect();
            assert_eq!(pts.len(), 2);
            FuncTable::indicator(space.clone(), &pts).unwrap()
        };
        let parts = vec![(d.clone(), indicator_for(1)), (d.clone(), indicator_for(2))];
        let ind = induce(&parts, 1).unwrap();

        // Representative of the open orbit with eigenvalues {1, 2}, built
        // from its label.
        let label = quiver::OrbitLabel {
            m: 2,
            nu: vec![2, 2],
            nilpotent_part: crate::segments::Multisegment::empty(2),
            eigen_parts: vec![
                quiver::EigenPart {
                    poly: vec![1, 1], // x - 2, first in the canonical order
                    partition: crate::segments::PartitionMult::from_pairs(&[(1, 1)]),
                },
                quiver::EigenPart {
                    poly: vec![2, 1], // x - 1
                    partition: crate::segments::PartitionMult::from_pairs(&[(1, 1)]),
                },
            ],
        };
        let rep = quiver::reconstruct(&f, &label, 1);
        assert_eq!(quiver::decompose(&rep), label);
        assert_eq!(ind.values[rep.encode() as usize], CycNum::one(3));
    }

    #[test]
    fn restrict_examples() {
        let f = f3();
        let d1 = GradedDims::new(2, vec![1, 1]);
        let d2 = GradedDims::new(2, vec![1, 1]);
        let v = GradedDims::new(2, vec![2, 2]);
        let v_space = SpaceDescriptor::for_quiver(&f, &v, 1);

        // delta_0 restricts to delta_0 x delta_0.
        let delta = FuncTable::delta(v_space.clone(), 0).unwrap();
        let res = restrict(&delta, &d1, &d2, 1).unwrap();
        assert_eq!(res.support(), vec![0]);
        assert_eq!(res.values[0], CycNum::one(3));

        // The constant restricts to the constant q^{dim of the free block}.
        let one = FuncTable::constant(v_space, CycNum::one(3)).unwrap();
        let res = restrict(&one, &d1, &d2, 1).unwrap();
        // free block dim = sum_i d1_i * d2_{i+eps} = 1 + 1 = 2.
        let expected = CycNum::from_integer(3, 9);
        assert!(res.values.iter().all(|x| *x == expected));
    }

    #[test]
    fn restrict_of_induce_matches_double_sum_oracle() {
        let f = f3();
        let d1 = GradedDims::new(2, vec![1, 1]);
        let d2 = GradedDims::new(2, vec![1, 1]);
        let f1 = random_invariant_table(&f, &d1, 1, 21, BUDGET).unwrap();
        let f2 = random_invariant_table(&f, &d2, 1, 22, BUDGET).unwrap();
        let ind = induce(&[(d1.clone(), f1.clone()), (d2.clone(), f2.clone())], 1).unwrap();
        let res = restrict(&ind, &d1, &d2, 1).unwrap();

        // Oracle: (Res Ind)(T1, T2) = sum over x stabilizing W inducing
        // (T1, T2) of sum over stable W' of f1(x|_W') f2(x on V/W'),
        // assembled directly from definitions without reusing the library
        // composition path.
        let v = GradedDims::new(2, vec![2, 2]);
        let v_space = SpaceDescriptor::for_quiver(&f, &v, 1);
        let total = v_space.num_points() as u64;
        let mut oracle = vec![CycNum::zero(3); res.values.len()];
        for x in 0..total {
            let val = &ind.values[x as usize];
            if val.is_zero() {
                continue;
            }
            let rep = QuiverRep::decode(&f, &v, 1, x);
            // Stabilizes the standard W (last coordinate at each vertex)?
            let mut stab = true;
            for i in 0..2 {
                if !f.is_zero(rep.blocks[i].get(0, 1)) {
                    stab = false;
                }
            }
            if !stab {
                continue;
            }
            let t1 = QuiverRep::new(
                f.clone(),
                d1.clone(),
                1,
                vec![
                    FqMat::from_fn(&f, 1, 1, |_, _| rep.blocks[0].get(0, 0).clone()),
                    FqMat::from_fn(&f, 1, 1, |_, _| rep.blocks[1].get(0, 0).clone()),
                ],
            )
            .unwrap();
            let t2 = QuiverRep::new(
                f.clone(),
                d2.clone(),
                1,
                vec![
                    FqMat::from_fn(&f, 1, 1, |_, _| rep.blocks[0].get(1, 1).clone()),
                    FqMat::from_fn(&f, 1, 1, |_, _| rep.blocks[1].get(1, 1).clone()),
                ],
            )
            .unwrap();
            let idx = t1.encode() + t2.encode() * 9;
            oracle[idx as usize] += val;
        }
        assert_eq!(res.values, oracle);
    }

    #[test]
    fn non_invariant_input_rejected() {
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        let space = SpaceDescriptor::for_quiver(&f, &dims, 1);
        // delta at a non-fixed point is not invariant.
        let bad = FuncTable::delta(space, 1).unwrap();
        let d2 = GradedDims::new(2, vec![0, 0]);
        let f2 = FuncTable::delta(SpaceDescriptor::for_quiver(&f, &d2, 1), 0).unwrap();
        assert!(matches!(
            induce(&[(dims, bad), (d2, f2)], 1),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn fourier_preserves_invariance() {
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        let t = random_invariant_table(&f, &dims, 1, 33, BUDGET).unwrap();
        let fhat = t.fourier();
        assert!(is_invariant_sampled(&fhat, &dims, -1, 200, 7));
    }

    #[test]
    fn fourier_equivariance_on_samples() {
        // fourier(f o Ad(g)) = fourier(f) o Ad(g).
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        let space = SpaceDescriptor::for_quiver(&f, &dims, 1);
        let gens = quiver::group_generators(&f, &dims);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut table = FuncTable::zero(space).unwrap();
        for v in table.values.iter_mut() {
            *v = CycNum::from_integer(3, rng.gen_range(-2..=2));
        }
        for (vertex, g, ginv) in gens.iter().take(4) {
            // f o Ad(g): value at T is f(g T g^{-1}).
            let mut pulled = table.clone();
            for idx in 0..table.values.len() as u64 {
                let rep = QuiverRep::decode(&f, &dims, 1, idx);
                let moved = rep.conjugate_at_vertex(*vertex, g, ginv).encode();
                pulled.values[idx as usize] = table.values[moved as usize].clone();
            }
            let lhs = pulled.fourier();
            let fhat = table.fourier();
            let mut rhs = fhat.clone();
            for idx in 0..fhat.values.len() as u64 {
                let rep = QuiverRep::decode(&f, &dims, -1, idx);
                let moved = rep.conjugate_at_vertex(*vertex, g, ginv).encode();
                rhs.values[idx as usize] = fhat.values[moved as usize].clone();
            }
            assert_eq!(lhs.values, rhs.values);
        }
    }

    #[test]
    fn induction_commutes_with_fourier_small() {
        let f = f3();
        let d1 = GradedDims::new(2, vec![1, 1]);
        let d2 = GradedDims::new(2, vec![1, 1]);
        let f1 = random_invariant_table(&f, &d1, 1, 101, BUDGET).unwrap();
        let f2 = random_invariant_table(&f, &d2, 1, 102, BUDGET).unwrap();
        let report = check_fourier_induction_commutes(&[(d1, f1), (d2, f2)], 1).unwrap();
        assert!(report.colinear, "commutation must hold: {report:?}");
        assert!(!report.degenerate);
        assert!(report.scalar_q_exponent.is_some());
    }

    #[test]
    fn restriction_commutes_with_fourier_small() {
        let f = f3();
        let d1 = GradedDims::new(2, vec![1, 1]);
        let d2 = GradedDims::new(2, vec![1, 1]);
        let v = GradedDims::new(2, vec![2, 2]);
        let t = random_invariant_table(&f, &v, 1, 301, BUDGET).unwrap();
        let report = check_fourier_restriction_commutes(&t, &d1, &d2, 1).unwrap();
        assert!(report.colinear, "commutation must hold: {report:?}");
    }

    #[test]
    fn commutation_degenerate_verdict() {
        let f = f3();
        let d1 = GradedDims::new(2, vec![1, 1]);
        let d2 = GradedDims::new(2, vec![0, 0]);
        let zero = FuncTable::zero(SpaceDescriptor::for_quiver(&f, &d1, 1)).unwrap();
        let f2 = FuncTable::delta(SpaceDescriptor::for_quiver(&f, &d2, 1), 0).unwrap();
        let report = check_fourier_induction_commutes(&[(d1, zero), (d2, f2)], 1).unwrap();
        assert!(report.degenerate);
        assert!(report.colinear);
    }

    #[test]
    fn flag_count_vanishes_off_nilpotents() {
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        for flag_type in [[0usize, 1], [1, 0]] {
            let t = flag_count_function(&f, &dims, 1, &flag_type).unwrap();
            for idx in 0..t.values.len() as u64 {
                let rep = QuiverRep::decode(&f, &dims, 1, idx);
                if !rep.is_nilpotent() {
                    assert!(t.values[idx as usize].is_zero());
                }
            }
        }
    }

    #[test]
    fn flag_count_self_duality_small() {
        // fhat of the flag count on E^eps is colinear with the flag count of
        // the same type on E^{-eps}, and both vanish off nilpotents.
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        for flag_type in [[0usize, 1], [1, 0]] {
            let t = flag_count_function(&f, &dims, 1, &flag_type).unwrap();
            let dual = flag_count_function(&f, &dims, -1, &flag_type).unwrap();
            let fhat = t.fourier();
            match proportional(&fhat.values, &dual.values) {
                Colinearity::Yes { scalar } => {
                    assert!(q_power_exponent(&scalar, 3).is_some());
                }
                other => panic!("expected colinearity, got {other:?}"),
            }
        }
    }

    #[test]
    fn support_stratum_consistency_small() {
        let f = f3();
        let dims = GradedDims::new(2, vec![1, 1]);
        let reports = support_stratum_consistency(&f, &dims, 1, BUDGET).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn biorbital_q_exponent_helper() {
        let nine = CycNum::from_integer(3, 9);
        assert_eq!(q_power_exponent(&nine, 3), Some(2));
        let third = CycNum::from_rational(3, BigRational::new(1.into(), 3.into()));
        assert_eq!(q_power_exponent(&third, 3), Some(-1));
        let two = CycNum::from_integer(3, 2);
        assert_eq!(q_power_exponent(&two, 3), None);
        let zeta = CycNum::zeta_pow(3, 1);
        assert_eq!(q_power_exponent(&zeta, 3), None);
    }
}
