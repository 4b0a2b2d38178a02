//! Graded representation spaces of the cyclic quiver and their orbit
//! combinatorics.
//!
//! A point of `E^eps_V` is a tuple of blocks `V_i -> V_{i+eps}` over `F_q`.
//! Its `G_V`-orbit is labelled by the Krull–Schmidt decomposition: the
//! composite `T^m` acts on each graded piece, its 0-primary part yields a
//! multisegment via rank bookkeeping, and each irreducible factor `g != x`
//! of its characteristic polynomial yields a partition (the Jordan type of
//! `T^m` at `g`), with `g` itself recording the Frobenius orbit of
//! eigenvalues. Rational (`G_V(F_q)`-) orbits are enumerated by closure
//! under an explicit generator set of `prod GL_{nu_i}(F_q)`.

use serde::{Deserialize, Serialize};

use crate::finitefield::{FqElem, FqField};
use crate::fqlinalg::{FqMat, FqPoly};
use crate::segments::{Multisegment, PartitionMult, SegmentClass};
use crate::{Error, Result};

/// Dimension vector of a graded space.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GradedDims {
    pub m: usize,
    pub dims: Vec<u32>,
}

impl GradedDims {
    pub fn new(m: usize, dims: Vec<u32>) -> Self {
        assert!(m >= 1 && dims.len() == m);
        GradedDims { m, dims }
    }

    pub fn total(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn at(&self, i: isize) -> u32 {
        self.dims[i.rem_euclid(self.m as isize) as usize]
    }

    /// `dim E^eps_V = sum_i nu_i nu_{i+eps}`.
    pub fn space_dim(&self, eps: i32) -> u32 {
        (0..self.m as isize)
            .map(|i| self.at(i) * self.at(i + eps as isize))
            .sum()
    }
}

/// A point `T` of `E^eps_V`: for each vertex `i`, a block `V_i -> V_{i+eps}`
/// of shape `nu_{i+eps} x nu_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuiverRep {
    pub field: FqField,
    pub dims: GradedDims,
    pub eps: i32,
    pub blocks: Vec<FqMat>,
}

impl QuiverRep {
    pub fn new(field: FqField, dims: GradedDims, eps: i32, blocks: Vec<FqMat>) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidArgument("eps must be +1 or -1".into()));
        }
        if blocks.len() != dims.m {
            return Err(Error::ShapeMismatch(format!(
                "expected {} blocks, got {}",
                dims.m,
                blocks.len()
            )));
        }
        for (i, b) in blocks.iter().enumerate() {
            let want_rows = dims.at(i as isize + eps as isize) as usize;
            let want_cols = dims.at(i as isize) as usize;
            if b.rows != want_rows || b.cols != want_cols {
                return Err(Error::ShapeMismatch(format!(
                    "block {i} has shape {}x{}, expected {}x{}",
                    b.rows, b.cols, want_rows, want_cols
                )));
            }
        }
        Ok(QuiverRep {
            field,
            dims,
            eps,
            blocks,
        })
    }

    pub fn zero(field: &FqField, dims: GradedDims, eps: i32) -> Self {
        let blocks = (0..dims.m)
            .map(|i| {
                FqMat::zero(
                    field,
                    dims.at(i as isize + eps as isize) as usize,
                    dims.at(i as isize) as usize,
                )
            })
            .collect();
        QuiverRep {
            field: field.clone(),
            dims,
            eps,
            blocks,
        }
    }

    /// `T^m` restricted to `V_i`: the composite of the `m` blocks starting
    /// at vertex `i`.
    pub fn tm_at(&self, i: usize) -> FqMat {
        self.power_at(i, self.dims.m)
    }

    /// `T^j` restricted to `V_i` (the `j`-fold composite starting at `V_i`).
    pub fn power_at(&self, i: usize, j: usize) -> FqMat {
        let m = self.dims.m;
        let mut acc = FqMat::identity(&self.field, self.dims.at(i as isize) as usize);
        let mut v = i as isize;
        for _ in 0..j {
            let b = &self.blocks[v.rem_euclid(m as isize) as usize];
            acc = b.mul(&acc);
            v += self.eps as isize;
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        (0..self.dims.m).all(|i| {
            let a = self.tm_at(i);
            a.pow(self.dims.at(i as isize) as u64).is_zero()
        })
    }

    /// Conjugates by the element of `G_V` that is `g` at vertex `i` and the
    /// identity elsewhere.
    pub fn conjugate_at_vertex(&self, i: usize, g: &FqMat, g_inv: &FqMat) -> QuiverRep {
        let m = self.dims.m;
        let mut out = self.clone();
        // Block j maps V_j -> V_{j+eps}; g acts on the source of block i and
        // on the target of block i - eps.
        out.blocks[i] = out.blocks[i].mul(g_inv);
        let src = (i as isize - self.eps as isize).rem_euclid(m as isize) as usize;
        out.blocks[src] = g.mul(&out.blocks[src]);
        out
    }

    /// Coordinate list `(vertex, row, col)` in canonical order: vertices
    /// ascending, entries row-major.
    pub fn coordinates(dims: &GradedDims, eps: i32) -> Vec<(usize, usize, usize)> {
        let mut coords = Vec::new();
        for i in 0..dims.m {
            let rows = dims.at(i as isize + eps as isize) as usize;
            let cols = dims.at(i as isize) as usize;
            for r in 0..rows {
                for c in 0..cols {
                    coords.push((i, r, c));
                }
            }
        }
        coords
    }

    /// Mixed-radix little-endian index: coordinate `j` contributes
    /// `index(x_j) * q^j`.
    pub fn encode(&self) -> u64 {
        let f = &self.field;
        let q = f.q();
        let mut acc = 0u64;
        let mut scale = 1u64;
        for b in &self.blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    acc += f.index(b.get(r, c)) * scale;
                    scale = scale.wrapping_mul(q);
                }
            }
        }
        acc
    }

    pub fn decode(field: &FqField, dims: &GradedDims, eps: i32, mut idx: u64) -> QuiverRep {
        let q = field.q();
        let mut rep = QuiverRep::zero(field, dims.clone(), eps);
        for i in 0..dims.m {
            let rows = rep.blocks[i].rows;
            let cols = rep.blocks[i].cols;
            for r in 0..rows {
                for c in 0..cols {
                    rep.blocks[i].set(r, c, field.from_index(idx % q));
                    idx /= q;
                }
            }
        }
        rep
    }

    /// Wire form `{field, m, eps, dims, blocks}` with block entries as
    /// element indices in row-major order.
    pub fn to_json(&self) -> serde_json::Value {
        let blocks: Vec<Vec<u64>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut v = Vec::with_capacity(b.rows * b.cols);
                for r in 0..b.rows {
                    for c in 0..b.cols {
                        v.push(self.field.index(b.get(r, c)));
                    }
                }
                v
            })
            .collect();
        serde_json::json!({
            "field": {"p": self.field.p(), "k": self.field.k(), "modulus": self.field.modulus()},
            "m": self.dims.m,
            "eps": self.eps,
            "dims": self.dims.dims,
            "blocks": blocks,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QuiverRep> {
        let bad = |msg: &str| Error::InvalidArgument(format!("quiver rep json: {msg}"));
        let fobj = v.get("field").ok_or_else(|| bad("missing field"))?;
        let p = fobj
            .get("p")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("field.p"))? as u32;
        let k = fobj
            .get("k")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("field.k"))? as usize;
        let modulus: Vec<u32> = fobj
            .get("modulus")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("field.modulus"))?
            .iter()
            .map(|c| c.as_u64().unwrap_or(0) as u32)
            .collect();
        let field = FqField::new(p, k, modulus)?;
        let m = v
            .get("m")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| bad("m"))? as usize;
        let eps = v
            .get("eps")
            .and_then(|x| x.as_i64())
            .ok_or_else(|| bad("eps"))? as i32;
        let dims: Vec<u32> = v
            .get("dims")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("dims"))?
            .iter()
            .map(|c| c.as_u64().unwrap_or(0) as u32)
            .collect();
        if dims.len() != m {
            return Err(bad("dims length != m"));
        }
        let dims = GradedDims::new(m, dims);
        let blocks_json = v
            .get("blocks")
            .and_then(|x| x.as_array())
            .ok_or_else(|| bad("blocks"))?;
        if blocks_json.len() != m {
            return Err(bad("blocks length != m"));
        }
        let mut blocks = Vec::with_capacity(m);
        for (i, bj) in blocks_json.iter().enumerate() {
            let rows = dims.at(i as isize + eps as isize) as usize;
            let cols = dims.at(i as isize) as usize;
            let entries = bj.as_array().ok_or_else(|| bad("block entry"))?;
            if entries.len() != rows * cols {
                return Err(bad(&format!("block {i} has wrong entry count")));
            }
            let mut mat = FqMat::zero(&field, rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    let idx = entries[r * cols + c]
                        .as_u64()
                        .ok_or_else(|| bad("entry not an index"))?;
                    if idx >= field.q() {
                        return Err(bad("entry index out of range"));
                    }
                    mat.set(r, c, field.from_index(idx));
                }
            }
            blocks.push(mat);
        }
        QuiverRep::new(field, dims, eps, blocks)
    }
}

/// One eigenvalue class of `T^m`: a monic irreducible polynomial `g != x`
/// (stored as low-to-high element indices) and the partition carried by each
/// of its roots.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EigenPart {
    pub poly: Vec<u64>,
    pub partition: PartitionMult,
}

impl EigenPart {
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }
}

/// Orbit label: the isomorphism class of `(V, T)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub m: usize,
    pub nu: Vec<u32>,
    pub nilpotent_part: Multisegment,
    pub eigen_parts: Vec<EigenPart>,
}

impl OrbitLabel {
    /// `|nilpotent_part| + sum deg(g) * underline(rho_g) * 1 = nu`.
    pub fn degree_identity_holds(&self) -> bool {
        let mut v = self.nilpotent_part.dim_vector();
        let extra: u32 = self
            .eigen_parts
            .iter()
            .map(|e| e.degree() as u32 * e.partition.underline())
            .sum();
        for x in v.iter_mut() {
            *x += extra;
        }
        v == self.nu
    }

    pub fn is_nilpotent(&self) -> bool {
        self.eigen_parts.is_empty()
    }
}

/// Antiorbital stratum label of a point: number of distinct nonzero
/// geometric eigenvalues of `T^m`, nilpotent type, and whether every nonzero
/// generalized eigenspace has graded dimension one at each vertex.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct StratumLabel {
    pub z: usize,
    pub sigma: Multisegment,
    pub valid: bool,
}

/// Multiplicities of segment classes in the decomposition of a nilpotent
/// point, from the rank sequence `r(a, j) = rank(T^j|_{V_a})`: the
/// multiplicity of the length-`l` chain whose source sits at vertex `a` is
/// `[r(a,l-1) - r(a-eps,l)] - [r(a,l) - r(a-eps,l+1)]`.
pub fn segment_multiplicities(rep: &QuiverRep) -> Result<Multisegment> {
    if !rep.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let m = rep.dims.m;
    let total = rep.dims.total() as usize;
    let mut r = vec![vec![0usize; total + 2]; m];
    for a in 0..m {
        for (j, rj) in r[a].iter_mut().enumerate() {
            *rj = rep.power_at(a, j).rank();
        }
    }
    let mut sigma = Multisegment::empty(m);
    for a in 0..m {
        let prev = (a as isize - rep.eps as isize).rem_euclid(m as isize) as usize;
        for len in 1..=total {
            let c_ell = r[a][len - 1] as isize - r[prev][len] as isize;
            let c_next = r[a][len] as isize - r[prev][len + 1] as isize;
            let mult = c_ell - c_next;
            debug_assert!(
                mult >= 0,
                "rank bookkeeping produced a negative multiplicity"
            );
            if mult > 0 {
                // The chain occupies `len` consecutive vertices; its source
                // (the vertex the count is attached to) is the low end for
                // eps = +1 and the high end for eps = -1.
                let start = if rep.eps == 1 {
                    a
                } else {
                    (a as isize - (len as isize - 1)).rem_euclid(m as isize) as usize
                };
                sigma.add(SegmentClass::new(m, start, len), mult as u32);
            }
        }
    }
    debug_assert_eq!(sigma.dim_vector(), rep.dims.dims);
    Ok(sigma)
}

/// Restricts `T` to the `g`-primary component of `T^m` (a graded, `T`-stable
/// subspace), returning the restricted representation.
fn restrict_to_primary(rep: &QuiverRep, g: &FqPoly) -> QuiverRep {
    let f = &rep.field;
    let m = rep.dims.m;
    // Per-vertex kernel bases of g(T^m)^{nu_i}.
    let mut bases: Vec<FqMat> = Vec::with_capacity(m);
    for i in 0..m {
        let a = rep.tm_at(i);
        let ga = g.eval_matrix(&a).pow(rep.dims.at(i as isize) as u64);
        let kernel = ga.kernel_basis();
        let mut b = FqMat::zero(f, kernel.len(), a.cols);
        for (r, v) in kernel.iter().enumerate() {
            for (c, x) in v.iter().enumerate() {
                b.set(r, c, x.clone());
            }
        }
        bases.push(b);
    }
    let new_dims = GradedDims::new(m, bases.iter().map(|b| b.rows as u32).collect());
    let mut blocks = Vec::with_capacity(m);
    for i in 0..m {
        let tgt = (i as isize + rep.eps as isize).rem_euclid(m as isize) as usize;
        let mut blk = FqMat::zero(f, bases[tgt].rows, bases[i].rows);
        for r in 0..bases[i].rows {
            let w: Vec<FqElem> = bases[i].row(r).to_vec();
            let image = rep.blocks[i].mul_vec(&w);
            let coeffs = bases[tgt]
                .solve_in_rowspace(&image)
                .expect("primary component is T-stable");
            for (rr, x) in coeffs.into_iter().enumerate() {
                blk.set(rr, r, x);
            }
        }
        blocks.push(blk);
    }
    QuiverRep {
        field: f.clone(),
        dims: new_dims,
        eps: rep.eps,
        blocks,
    }
}

/// Irreducible factors of the characteristic polynomial of `T^m` across all
/// vertices, deduplicated and sorted canonically.
pub(crate) fn eigen_factors(rep: &QuiverRep) -> Vec<FqPoly> {
    let mut seen: Vec<FqPoly> = Vec::new();
    for i in 0..rep.dims.m {
        let cp = rep.tm_at(i).char_poly();
        for (g, _) in cp.factor() {
            if !seen.contains(&g) {
                seen.push(g);
            }
        }
    }
    seen.sort_by_key(|g| (g.deg().unwrap(), g.encoding()));
    seen
}

/// Krull–Schmidt orbit label of a point.
pub fn decompose(rep: &QuiverRep) -> OrbitLabel {
    let f = &rep.field;
    let m = rep.dims.m;
    let x = FqPoly::x(f);
    let factors = eigen_factors(rep);

    // Nilpotent part: restrict to the 0-primary component.
    let zero_primary = restrict_to_primary(rep, &x);
    let nilpotent_part =
        segment_multiplicities(&zero_primary).expect("0-primary restriction is nilpotent");

    // Eigen parts: Jordan type of T^m|_{V_0} at each irreducible g != x.
    // Contributions of other primary components cancel in the rank
    // differences, so no restriction is needed.
    let a0 = rep.tm_at(0);
    let n0 = a0.rows;
    let mut eigen_parts = Vec::new();
    for g in factors {
        if g == x {
            continue;
        }
        let d = g.deg().unwrap();
        let ga = g.eval_matrix(&a0);
        let mut ranks = Vec::with_capacity(n0 + 2);
        let mut pw = FqMat::identity(f, n0);
        for _ in 0..=n0 + 1 {
            ranks.push(pw.rank());
            pw = pw.mul(&ga);
        }
        let mut partition = PartitionMult::empty();
        for n in 1..=n0 {
            let blocks = (ranks[n - 1] as isize - 2 * ranks[n] as isize + ranks[n + 1] as isize)
                / d as isize;
            debug_assert!(blocks >= 0);
            if blocks > 0 {
                partition.add(n as u32, blocks as u32);
            }
        }
        if !partition.is_empty() {
            let poly = g.coeffs().iter().map(|c| f.index(c)).collect();
            eigen_parts.push(EigenPart { poly, partition });
        }
    }

    let label = OrbitLabel {
        m,
        nu: rep.dims.dims.clone(),
        nilpotent_part,
        eigen_parts,
    };
    debug_assert!(label.degree_identity_holds());
    label
}

/// Antiorbital stratum label of a point (any `eps`).
pub fn stratum_label(rep: &QuiverRep) -> StratumLabel {
    let f = &rep.field;
    let x = FqPoly::x(f);
    let factors = eigen_factors(rep);
    let mut z = 0usize;
    let mut valid = true;
    for g in &factors {
        if *g == x {
            continue;
        }
        let d = g.deg().unwrap();
        z += d;
        for i in 0..rep.dims.m {
            let a = rep.tm_at(i);
            let ga = g.eval_matrix(&a).pow(rep.dims.at(i as isize) as u64);
            let kdim = a.cols - ga.rank();
            if kdim != d {
                valid = false;
            }
        }
    }
    let zero_primary = restrict_to_primary(rep, &x);
    let sigma = segment_multiplicities(&zero_primary).expect("0-primary part is nilpotent");
    StratumLabel { z, sigma, valid }
}

/// A rational orbit: its minimal-index representative, the sorted list of
/// point indices, and the geometric label.
#[derive(Clone, Debug)]
pub struct RationalOrbit {
    pub representative: QuiverRep,
    pub points: Vec<u64>,
    pub label: OrbitLabel,
}

/// Generator set for `prod_i GL_{nu_i}(F_q)`: all elementary transvections
/// `I + c E_{rs}` plus `diag(gamma, 1, .., 1)` and its inverse per factor,
/// where `gamma` is the fixed primitive root.
pub(crate) fn group_generators(field: &FqField, dims: &GradedDims) -> Vec<(usize, FqMat, FqMat)> {
    let mut gens = Vec::new();
    for i in 0..dims.m {
        let n = dims.dims[i] as usize;
        if n == 0 {
            continue;
        }
        for r in 0..n {
            for s in 0..n {
                if r == s {
                    continue;
                }
                for ci in 1..field.q() {
                    let c = field.from_index(ci);
                    let mut g = FqMat::identity(field, n);
                    g.set(r, s, c.clone());
                    let mut ginv = FqMat::identity(field, n);
                    ginv.set(r, s, field.neg(&c));
                    gens.push((i, g, ginv));
                }
            }
        }
        let gamma = field.primitive_root();
        let gamma_inv = field.inv(&gamma).unwrap();
        let mut g = FqMat::identity(field, n);
        g.set(0, 0, gamma.clone());
        let mut ginv = FqMat::identity(field, n);
        ginv.set(0, 0, gamma_inv.clone());
        gens.push((i, g.clone(), ginv.clone()));
        gens.push((i, ginv, g));
    }
    gens
}

/// Flat bitset over point indices; memory stays one bit per point of the
/// budgeted space.
pub(crate) struct PointSet {
    words: Vec<u64>,
}

impl PointSet {
    pub(crate) fn new(n: u64) -> Self {
        PointSet {
            words: vec![0u64; (n as usize).div_ceil(64)],
        }
    }

    pub(crate) fn contains(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] & (1 << (i % 64)) != 0
    }

    pub(crate) fn insert(&mut self, i: u64) -> bool {
        let w = &mut self.words[(i / 64) as usize];
        let mask = 1 << (i % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }
}

/// Enumerates the `G_V(F_q)`-orbits on `E^eps_V(F_q)` (or on its nilpotent
/// locus) by breadth-first closure. Orbits are numbered by their minimal
/// point index; point lists are sorted.
pub fn enumerate_rational_orbits(
    field: &FqField,
    dims: &GradedDims,
    eps: i32,
    restrict_to_nilpotent: bool,
    budget: u64,
) -> Result<Vec<RationalOrbit>> {
    let n_coords = dims.space_dim(eps);
    let npoints = (field.q() as u128)
        .checked_pow(n_coords)
        .unwrap_or(u128::MAX);
    if npoints > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: npoints,
            budget,
        });
    }
    let npoints = npoints as u64;
    let gens = group_generators(field, dims);
    let mut visited = PointSet::new(npoints);
    let mut orbits = Vec::new();
    for start in 0..npoints {
        if visited.contains(start) {
            continue;
        }
        let rep = QuiverRep::decode(field, dims, eps, start);
        if restrict_to_nilpotent && !rep.is_nilpotent() {
            continue;
        }
        visited.insert(start);
        let mut queue = std::collections::VecDeque::new();
        let mut points = vec![start];
        queue.push_back(rep.clone());
        while let Some(t) = queue.pop_front() {
            for (vertex, g, ginv) in &gens {
                let moved = t.conjugate_at_vertex(*vertex, g, ginv);
                let idx = moved.encode();
                if visited.insert(idx) {
                    points.push(idx);
                    queue.push_back(moved);
                }
            }
        }
        points.sort_unstable();
        let label = decompose(&rep);
        orbits.push(RationalOrbit {
            representative: rep,
            points,
            label,
        });
    }
    Ok(orbits)
}

/// Builds the canonical rational representative of an orbit label: a direct
/// sum of segment chains and companion-twist cyclic summands.
pub fn reconstruct(field: &FqField, label: &OrbitLabel, eps: i32) -> QuiverRep {
    let m = label.m;
    let mut parts: Vec<QuiverRep> = Vec::new();
    for (class, mult) in label.nilpotent_part.entries() {
        for _ in 0..*mult {
            parts.push(segment_model(field, m, eps, class));
        }
    }
    for ep in &label.eigen_parts {
        let g = FqPoly::new(
            field,
            ep.poly.iter().map(|&i| field.from_index(i)).collect(),
        );
        for &(size, count) in ep.partition.entries() {
            for _ in 0..count {
                parts.push(cyclic_model(field, m, eps, &g, size as usize));
            }
        }
    }
    let dims = GradedDims::new(m, label.nu.clone());
    if parts.is_empty() {
        return QuiverRep::zero(field, dims, eps);
    }
    let sum = direct_sum(&parts);
    debug_assert_eq!(sum.dims.dims, label.nu, "summand dimensions add up to nu");
    sum
}

/// The chain supported on `len` consecutive vertices from `class.start`,
/// flowing in the direction of `eps`.
fn segment_model(field: &FqField, m: usize, eps: i32, class: &SegmentClass) -> QuiverRep {
    let len = class.len;
    // Chain position j lives at vertex (start + j) mod m in its own slot.
    let mut dims = vec![0u32; m];
    let mut slot = Vec::with_capacity(len);
    for j in 0..len {
        let v = (class.start + j) % m;
        slot.push((v, dims[v] as usize));
        dims[v] += 1;
    }
    let dims = GradedDims::new(m, dims);
    let mut rep = QuiverRep::zero(field, dims, eps);
    for j in 0..len - 1 {
        let (va, sa) = slot[j];
        let (vb, sb) = slot[j + 1];
        if eps == 1 {
            // position j -> position j+1, block at source vertex va
            rep.blocks[va].set(sb, sa, field.one());
        } else {
            // position j+1 -> position j, block at source vertex vb
            rep.blocks[vb].set(sa, sb, field.one());
        }
    }
    rep
}

/// The cyclic summand with `T^m|_{V_0}` acting as multiplication by `x` on
/// `F_q[x]/(g^n)`: identity blocks except a single companion twist on the
/// edge into vertex 0.
fn cyclic_model(field: &FqField, m: usize, eps: i32, g: &FqPoly, n: usize) -> QuiverRep {
    let mut gn = FqPoly::one(field);
    for _ in 0..n {
        gn = gn.mul(g);
    }
    let deg = gn.deg().unwrap();
    let mut comp = FqMat::zero(field, deg, deg);
    for j in 1..deg {
        comp.set(j, j - 1, field.one());
    }
    for j in 0..deg {
        comp.set(j, deg - 1, field.neg(&gn.coeffs()[j]));
    }
    let dims = GradedDims::new(m, vec![deg as u32; m]);
    let mut rep = QuiverRep::zero(field, dims, eps);
    for i in 0..m {
        rep.blocks[i] = FqMat::identity(field, deg);
    }
    // The edge whose target is vertex 0 carries the twist.
    let twist_src = (-(eps as isize)).rem_euclid(m as isize) as usize;
    rep.blocks[twist_src] = comp;
    rep
}

fn direct_sum(parts: &[QuiverRep]) -> QuiverRep {
    let m = parts[0].dims.m;
    let eps = parts[0].eps;
    let field = parts[0].field.clone();
    let mut dims = vec![0u32; m];
    for p in parts {
        for i in 0..m {
            dims[i] += p.dims.dims[i];
        }
    }
    let dims = GradedDims::new(m, dims);
    let mut rep = QuiverRep::zero(&field, dims, eps);
    let mut offsets = vec![vec![0usize; m]; parts.len()];
    let mut running = vec![0usize; m];
    for (pi, p) in parts.iter().enumerate() {
        for i in 0..m {
            offsets[pi][i] = running[i];
            running[i] += p.dims.dims[i] as usize;
        }
    }
    for (pi, p) in parts.iter().enumerate() {
        for i in 0..m {
            let tgt = (i as isize + eps as isize).rem_euclid(m as isize) as usize;
            let b = &p.blocks[i];
            for r in 0..b.rows {
                for c in 0..b.cols {
                    rep.blocks[i].set(
                        offsets[pi][tgt] + r,
                        offsets[pi][i] + c,
                        b.get(r, c).clone(),
                    );
                }
            }
        }
    }
    rep
}

/// Per-eigenvalue point counts used by the dimension-one tower check: for
/// `V` with every graded piece of dimension `s`, counts over all of
/// `E^eps_V(F_q)` of (a) points with `T^m - lambda` nilpotent and (b) points
/// with `T^m = lambda` exactly, for each `lambda != 0`. Returns rows
/// `(lambda_index, eigen_count, root_count)`.
///
/// Runs over `q^(m s^2)` points with table arithmetic and cached suffix
/// products; `s <= 2` keeps the classifier to trace/determinant tests on the
/// vertex-0 composite (nonzero spectra of cyclic rotations agree, so vertex
/// 0 decides nilpotency of `T^m - lambda` everywhere).
pub fn eigen_point_counts(field: &FqField, m: usize, s: usize) -> Result<Vec<(u64, u64, u64)>> {
    assert!(s == 1 || s == 2, "classifier implemented for s <= 2");
    let q = field.q() as usize;
    let mut mul = vec![0u16; q * q];
    let mut add = vec![0u16; q * q];
    for a in 0..q {
        for b in 0..q {
            let ea = field.from_index(a as u64);
            let eb = field.from_index(b as u64);
            mul[a * q + b] = field.index(&field.mul(&ea, &eb)) as u16;
            add[a * q + b] = field.index(&field.add(&ea, &eb)) as u16;
        }
    }
    let two = field.index(&field.from_int(2)) as usize;
    let sq = s * s;
    let n_digits = m * sq;
    let total = (q as u128).pow(n_digits as u32);
    if total > u64::MAX as u128 {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: u64::MAX,
        });
    }
    let mut digits = vec![0usize; n_digits];
    let ident: Vec<usize> = match s {
        1 => vec![1],
        _ => vec![1, 0, 0, 1],
    };
    let matmul = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut out = vec![0usize; sq];
        for r in 0..s {
            for c in 0..s {
                let mut acc = 0usize;
                for t in 0..s {
                    let prod = mul[a[r * s + t] * q + b[t * s + c]] as usize;
                    acc = add[acc * q + prod] as usize;
                }
                out[r * s + c] = acc;
            }
        }
        out
    };
    let block =
        |digits: &[usize], j: usize| -> Vec<usize> { digits[j * sq..(j + 1) * sq].to_vec() };

    // suffix[j] = product of blocks j..m-1 as index matrices.
    let mut suffix = vec![ident.clone(); m + 1];
    for j in (0..m).rev() {
        suffix[j] = matmul(&suffix[j + 1], &block(&digits, j));
    }
    let mut eigen = vec![0u64; q];
    let mut roots = vec![0u64; q];
    loop {
        let a = &suffix[0];
        if s == 1 {
            let lam = a[0];
            if lam != 0 {
                eigen[lam] += 1;
                roots[lam] += 1;
            }
        } else {
            let tr = add[a[0] * q + a[3]] as usize;
            let det_pos = mul[a[0] * q + a[3]] as usize;
            let det_neg = mul[a[1] * q + a[2]] as usize;
            // charpoly = (x - lambda)^2 iff tr = 2 lambda and det = lambda^2;
            // q odd, so the trace pins the only candidate lambda.
            for lam in 1..q {
                let twol = mul[two * q + lam] as usize;
                if tr != twol {
                    continue;
                }
                let lam2 = mul[lam * q + lam] as usize;
                if det_pos == add[lam2 * q + det_neg] as usize {
                    eigen[lam] += 1;
                    if a[1] == 0 && a[2] == 0 && a[0] == lam && a[3] == lam {
                        roots[lam] += 1;
                    }
                }
                break;
            }
        }
        // Odometer step.
        let mut pos = 0usize;
        loop {
            if pos == n_digits {
                break;
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        if pos == n_digits {
            break;
        }
        let touched_matrix = pos / sq;
        for j in (0..=touched_matrix).rev() {
            suffix[j] = matmul(&suffix[j + 1], &block(&digits, j));
        }
    }
    Ok((1..q as u64)
        .map(|lam| (lam, eigen[lam as usize], roots[lam as usize]))
        .collect())
}
