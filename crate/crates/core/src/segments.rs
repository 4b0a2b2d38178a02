//! Combinatorics of segments on the cyclic vertex set `Z/m`.
//!
//! A segment class covers `len` consecutive vertices starting at `start`;
//! multisegments (multisets of classes) index nilpotent orbits. A
//! multisegment is *aperiodic* when for every length at least one of the `m`
//! rotation classes of that length is absent. The hat bijection peels the
//! fully periodic part off a multisegment, leaving an aperiodic remainder
//! plus a partition recording how many full rotation families of each length
//! were removed.
//!
//! Multiplicity data is attached to the segment *length* `len = b - a + 1`:
//! this is the unique convention under which removing one full rotation
//! family of length `len` lowers the dimension vector by `len` at every
//! vertex, so that `|sigma_tilde| = |sigma| + underline(rho) * 1` holds.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The class of the interval `{start, start+1, ..., start+len-1}` mod `m`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SegmentClass {
    pub m: usize,
    pub start: usize,
    pub len: usize,
}

impl SegmentClass {
    pub fn new(m: usize, start: usize, len: usize) -> Self {
        assert!(m >= 1 && len >= 1);
        SegmentClass {
            m,
            start: start % m,
            len,
        }
    }

    /// Dimension vector: adds 1 at each covered vertex (with wrap-around, so
    /// a vertex covered twice counts twice).
    pub fn dim_vector(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.m];
        for j in 0..self.len {
            v[(self.start + j) % self.m] += 1;
        }
        v
    }
}

/// A finitely supported multiset of segment classes, stored as a sorted
/// association list for canonical hashing and encoding.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Multisegment {
    pub m: usize,
    /// Sorted by `(start, len)`; multiplicities strictly positive.
    entries: Vec<(SegmentClass, u32)>,
}

// Wire form: `{"m": m, "classes": [[start, len, mult], ...]}` with the
// class list sorted lexicographically.
impl Serialize for Multisegment {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let classes: Vec<[u64; 3]> = self
            .entries
            .iter()
            .map(|(c, k)| [c.start as u64, c.len as u64, *k as u64])
            .collect();
        let mut st = serializer.serialize_struct("Multisegment", 2)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("classes", &classes)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Multisegment {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Wire {
            m: usize,
            classes: Vec<[u64; 3]>,
        }
        let wire = Wire::deserialize(deserializer)?;
        if wire.m == 0 {
            return Err(D::Error::custom("multisegment needs m >= 1"));
        }
        let mut out = Multisegment::empty(wire.m);
        for [start, len, mult] in wire.classes {
            if len == 0 {
                return Err(D::Error::custom("segment length must be positive"));
            }
            out.add(
                SegmentClass::new(wire.m, start as usize, len as usize),
                mult as u32,
            );
        }
        Ok(out)
    }
}

impl Multisegment {
    pub fn empty(m: usize) -> Self {
        Multisegment {
            m,
            entries: Vec::new(),
        }
    }

    pub fn from_classes(m: usize, classes: &[(SegmentClass, u32)]) -> Self {
        let mut s = Self::empty(m);
        for &(c, mult) in classes {
            s.add(c, mult);
        }
        s
    }

    pub fn add(&mut self, class: SegmentClass, mult: u32) {
        assert_eq!(class.m, self.m);
        if mult == 0 {
            return;
        }
        match self
            .entries
            .binary_search_by_key(&(class.start, class.len), |(c, _)| (c.start, c.len))
        {
            Ok(i) => self.entries[i].1 += mult,
            Err(i) => self.entries.insert(i, (class, mult)),
        }
    }

    pub fn multiplicity(&self, class: &SegmentClass) -> u32 {
        self.entries
            .binary_search_by_key(&(class.start, class.len), |(c, _)| (c.start, c.len))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[(SegmentClass, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_segments(&self) -> u32 {
        self.entries.iter().map(|&(_, k)| k).sum()
    }

    /// `|sigma|`: the dimension vector of the corresponding nilpotent.
    pub fn dim_vector(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.m];
        for (c, mult) in &self.entries {
            for j in 0..c.len {
                v[(c.start + j) % self.m] += mult;
            }
        }
        v
    }

    /// True when for every length, some rotation class of that length is
    /// absent (all-absent lengths count trivially).
    pub fn is_aperiodic(&self) -> bool {
        let mut lengths: Vec<usize> = self.entries.iter().map(|(c, _)| c.len).collect();
        lengths.sort_unstable();
        lengths.dedup();
        for len in lengths {
            let full =
                (0..self.m).all(|a| self.multiplicity(&SegmentClass::new(self.m, a, len)) > 0);
            if full {
                return false;
            }
        }
        true
    }

    /// The bare class list `[[start, len, mult], ...]`, sorted
    /// lexicographically (the `classes` payload of the wire form).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.entries
                .iter()
                .map(|(c, k)| serde_json::json!([c.start, c.len, k]))
                .collect(),
        )
    }
}

/// A finitely supported map `Z_{>0} -> N`, i.e. a partition given by part
/// multiplicities: `mult[i] = (size, count)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct PartitionMult {
    entries: Vec<(u32, u32)>,
}

impl PartitionMult {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        let mut p = Self::empty();
        for &(size, count) in pairs {
            p.add(size, count);
        }
        p
    }

    /// Builds from an explicit list of parts.
    pub fn from_parts(parts: &[u32]) -> Self {
        let mut p = Self::empty();
        for &n in parts {
            p.add(n, 1);
        }
        p
    }

    pub fn add(&mut self, size: u32, count: u32) {
        assert!(size >= 1);
        if count == 0 {
            return;
        }
        match self.entries.binary_search_by_key(&size, |&(s, _)| s) {
            Ok(i) => self.entries[i].1 += count,
            Err(i) => self.entries.insert(i, (size, count)),
        }
    }

    pub fn count(&self, size: u32) -> u32 {
        self.entries
            .binary_search_by_key(&size, |&(s, _)| s)
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn entries(&self) -> &[(u32, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `underline(rho) = sum rho(n) * n`.
    pub fn underline(&self) -> u32 {
        self.entries.iter().map(|&(s, c)| s * c).sum()
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &(size, count) in self.entries.iter().rev() {
            out.extend(std::iter::repeat(size).take(count as usize));
        }
        out
    }

    /// Dimension of the irreducible symmetric-group representation attached
    /// to this partition, via the hook length formula.
    pub fn hook_dim(&self) -> u128 {
        let parts = self.parts();
        let n: u32 = self.underline();
        if n == 0 {
            return 1;
        }
        // Conjugate partition for column hooks.
        let conj: Vec<u32> = (0..parts[0])
            .map(|j| parts.iter().filter(|&&p| p > j).count() as u32)
            .collect();
        let mut hook_prod: u128 = 1;
        for (i, &row) in parts.iter().enumerate() {
            for j in 0..row {
                let hook = (row - j) + (conj[j as usize] - i as u32 - 1);
                hook_prod *= hook as u128;
            }
        }
        factorial(n) / hook_prod
    }

    /// All partitions of `t`, in a fixed deterministic order.
    pub fn all_of(t: u32) -> Vec<PartitionMult> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        enumerate_partitions(t, t, &mut stack, &mut out);
        out
    }
}

fn enumerate_partitions(left: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<PartitionMult>) {
    if left == 0 {
        out.push(PartitionMult::from_parts(acc));
        return;
    }
    for part in (1..=left.min(max)).rev() {
        acc.push(part);
        enumerate_partitions(left - part, part, acc, out);
        acc.pop();
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// An aperiodic multisegment together with its periodic surplus.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HatPair {
    pub sigma: Multisegment,
    pub rho: PartitionMult,
}

/// Peels off the periodic part: `rho(len)` is the minimum multiplicity over
/// the `m` rotation classes of each length, and `sigma` is what remains.
pub fn hat_bijection(tilde: &Multisegment) -> HatPair {
    let m = tilde.m;
    let mut lengths: Vec<usize> = tilde.entries().iter().map(|(c, _)| c.len).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut rho = PartitionMult::empty();
    let mut sigma = Multisegment::empty(m);
    for len in lengths {
        let min = (0..m)
            .map(|a| tilde.multiplicity(&SegmentClass::new(m, a, len)))
            .min()
            .unwrap_or(0);
        if min > 0 {
            rho.add(len as u32, min);
        }
        for a in 0..m {
            let class = SegmentClass::new(m, a, len);
            let k = tilde.multiplicity(&class);
            if k > min {
                sigma.add(class, k - min);
            }
        }
    }
    debug_assert!(sigma.is_aperiodic());
    HatPair { sigma, rho }
}

/// Inverse of [`hat_bijection`]: adds `rho(len)` copies of every rotation
/// class of each length back onto the aperiodic part.
pub fn hat_unbijection(pair: &HatPair) -> Multisegment {
    let m = pair.sigma.m;
    let mut out = pair.sigma.clone();
    for &(len, count) in pair.rho.entries() {
        for a in 0..m {
            out.add(SegmentClass::new(m, a, len as usize), count);
        }
    }
    out
}

/// Exhaustive, duplicate-free enumeration of all multisegments with
/// dimension vector exactly `nu`.
pub fn enumerate_multisegments(m: usize, nu: &[u32]) -> Vec<Multisegment> {
    assert_eq!(nu.len(), m);
    let total: u32 = nu.iter().sum();
    // Relevant classes in a fixed order; a segment of length `len`
    // contributes `len` to the total, so `len <= total`.
    let mut classes = Vec::new();
    for len in 1..=total.max(0) as usize {
        for a in 0..m {
            classes.push(SegmentClass::new(m, a, len));
        }
    }
    let mut out = Vec::new();
    let mut current: Vec<(SegmentClass, u32)> = Vec::new();
    fn rec(
        classes: &[SegmentClass],
        idx: usize,
        remaining: &mut Vec<u32>,
        current: &mut Vec<(SegmentClass, u32)>,
        m: usize,
        out: &mut Vec<Multisegment>,
    ) {
        if remaining.iter().all(|&r| r == 0) {
            out.push(Multisegment::from_classes(m, current));
            return;
        }
        if idx == classes.len() {
            return;
        }
        let class = classes[idx];
        let dv = class.dim_vector();
        // Maximum multiplicity that still fits the remaining budget.
        let max = (0..m)
            .filter(|&i| dv[i] > 0)
            .map(|i| remaining[i] / dv[i])
            .min()
            .unwrap_or(0);
        for k in (0..=max).rev() {
            if k > 0 {
                for i in 0..m {
                    remaining[i] -= dv[i] * k;
                }
                current.push((class, k));
            }
            rec(classes, idx + 1, remaining, current, m, out);
            if k > 0 {
                current.pop();
                for i in 0..m {
                    remaining[i] += dv[i] * k;
                }
            }
        }
    }
    let mut remaining = nu.to_vec();
    rec(&classes, 0, &mut remaining, &mut current, m, &mut out);
    out
}

/// `#P_nu` and `#P^ap_nu`.
pub fn count_multisegments(m: usize, nu: &[u32]) -> (usize, usize) {
    let all = enumerate_multisegments(m, nu);
    let ap = all.iter().filter(|s| s.is_aperiodic()).count();
    (all.len(), ap)
}

/// Rank of the local system attached to an antiorbital stratum datum:
/// partitions `pi_{lambda'}` over the distinct nonzero eigenvalue classes
/// plus the partition `pi_0` attached to the eigenvalue 0. With
/// `z = sum underline(pi_{lambda'})` over all of them,
/// `rank = z! / prod(underline!) * m^(z - underline(pi_0)) * prod dim`.
pub fn rank_formula(
    nonzero_parts: &[PartitionMult],
    zero_part: &PartitionMult,
    m: u32,
) -> Result<u128> {
    let z: u32 = nonzero_parts.iter().map(|p| p.underline()).sum::<u32>() + zero_part.underline();
    let mut denom: u128 = 1;
    let mut dims: u128 = 1;
    for p in nonzero_parts.iter().chain(std::iter::once(zero_part)) {
        denom *= factorial(p.underline());
        dims *= p.hook_dim();
    }
    let zf = factorial(z);
    if zf % denom != 0 {
        return Err(Error::InvalidArgument(
            "multinomial coefficient is not integral".into(),
        ));
    }
    let mexp = (z - zero_part.underline()) as u32;
    Ok(zf / denom * (m as u128).pow(mexp) * dims)
}
