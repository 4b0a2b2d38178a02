//! Arithmetic in `F_q = F_{p^k}` for odd `p`, the absolute trace, the
//! additive character `psi(x) = zeta_p^{Tr(x)}`, and a fixed enumeration of
//! field elements.
//!
//! Elements are coefficient vectors of length `k` over `Z/p` with respect to
//! a shipped modulus polynomial; `index(x) = sum c_j p^j` is the canonical
//! bijection `F_q <-> {0, ..., q-1}` used by every table layout in the crate,
//! with `index(0) = 0`. Moduli are fixed per field size so enumeration order
//! is identical across runs and platforms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycNum;
use crate::{Error, Result};

/// Context for `F_{p^k}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FqField {
    p: u32,
    k: usize,
    /// Monic modulus, low-to-high coefficients, length `k + 1`.
    modulus: Vec<u32>,
    q: u64,
}

/// Element of `F_q`: coefficients of `1, t, ..., t^{k-1}` modulo `p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FqElem(Vec<u32>);

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl FqField {
    /// The shipped field table: one fixed modulus per supported size.
    pub fn for_q(q: u64) -> Result<Self> {
        let (p, k, modulus) = match q {
            3 => (3, 1, vec![0, 1]),
            5 => (5, 1, vec![0, 1]),
            7 => (7, 1, vec![0, 1]),
            9 => (3, 2, vec![1, 0, 1]),  // t^2 + 1
            25 => (5, 2, vec![2, 0, 1]), // t^2 + 2
            _ => return Err(Error::UnsupportedFieldSize(q)),
        };
        Self::new(p, k, modulus)
    }

    /// Builds a field from an explicit monic irreducible modulus.
    pub fn new(p: u32, k: usize, modulus: Vec<u32>) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "p = {p} is not an odd prime"
            )));
        }
        if k == 0 || modulus.len() != k + 1 || modulus[k] % p != 1 {
            return Err(Error::InvalidArgument(
                "modulus must be monic of degree k".into(),
            ));
        }
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        if !poly_is_irreducible(p, &modulus) {
            return Err(Error::ReducibleModulus { p });
        }
        let q = (p as u64).pow(k as u32);
        Ok(FqField { p, k, modulus, q })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.k])
    }

    pub fn one(&self) -> FqElem {
        self.from_int(1)
    }

    /// The image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        let mut c = vec![0; self.k];
        c[0] = n.rem_euclid(self.p as i64) as u32;
        FqElem(c)
    }

    /// Fixed enumeration: `index(x) = sum c_j p^j`.
    pub fn index(&self, x: &FqElem) -> u64 {
        let mut acc = 0u64;
        for &c in x.0.iter().rev() {
            acc = acc * self.p as u64 + c as u64;
        }
        acc
    }

    pub fn from_index(&self, mut i: u64) -> FqElem {
        debug_assert!(i < self.q);
        let mut c = vec![0; self.k];
        for slot in c.iter_mut() {
            *slot = (i % self.p as u64) as u32;
            i /= self.p as u64;
        }
        FqElem(c)
    }

    /// All field elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    pub fn is_zero(&self, x: &FqElem) -> bool {
        x.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        FqElem(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.k == 1 {
            return FqElem(vec![(a.0[0] as u64 * b.0[0] as u64 % self.p as u64) as u32]);
        }
        let mut raw = vec![0u64; 2 * self.k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                raw[i + j] += x as u64 * y as u64;
            }
        }
        let raw: Vec<u32> = raw
            .into_iter()
            .map(|v| (v % self.p as u64) as u32)
            .collect();
        FqElem(poly_rem(self.p, &raw, &self.modulus, self.k))
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::ZeroInversion);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Absolute trace `Tr(x) = x + x^p + ... + x^{p^{k-1}}`, as an element of
    /// `Z/p`.
    pub fn trace(&self, x: &FqElem) -> u32 {
        let mut acc = self.zero();
        let mut frob = x.clone();
        for _ in 0..self.k {
            acc = self.add(&acc, &frob);
            frob = self.pow(&frob, self.p as u64);
        }
        debug_assert!(
            acc.0[1..].iter().all(|&c| c == 0),
            "trace lands in the prime field"
        );
        acc.0[0]
    }

    /// The fixed nontrivial additive character `psi(x) = zeta_p^{Tr(x)}`.
    pub fn additive_character(&self, x: &FqElem) -> CycNum {
        CycNum::zeta_pow(self.p as usize, self.trace(x) as i64)
    }

    /// Exponent of `zeta_p` in `psi(x)`; cheaper than building the value.
    pub fn character_exponent(&self, x: &FqElem) -> usize {
        self.trace(x) as usize
    }

    /// A fixed generator of the cyclic group `F_q^*`: the first element in
    /// enumeration order whose order is exactly `q - 1`.
    pub fn primitive_root(&self) -> FqElem {
        let n = self.q - 1;
        let primes = prime_divisors(n);
        'next: for i in 1..self.q {
            let g = self.from_index(i);
            for &l in &primes {
                if self.pow(&g, n / l) == self.one() {
                    continue 'next;
                }
            }
            return g;
        }
        unreachable!("F_q^* is cyclic")
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m` over `Z/p`, truncated to
/// `k` coefficients.
fn poly_rem(p: u32, a: &[u32], m: &[u32], k: usize) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    while r.len() > k {
        let d = r.len() - 1;
        let lead = r[d];
        if lead != 0 {
            let shift = d - k;
            for (j, &mc) in m.iter().enumerate().take(k) {
                let sub = lead as u64 * mc as u64 % p as u64;
                let idx = shift + j;
                r[idx] = ((r[idx] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        r.pop();
    }
    r.resize(k, 0);
    r
}

fn poly_deg(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn poly_divides(p: u32, d: &[u32], a: &[u32]) -> bool {
    // Remainder of a by (monic-normalized) d.
    let dd = poly_deg(d).expect("nonzero divisor");
    let lead_inv = mod_inv(d[dd], p);
    let d_monic: Vec<u32> = d
        .iter()
        .map(|&c| (c as u64 * lead_inv as u64 % p as u64) as u32)
        .collect();
    let mut r: Vec<u32> = a.to_vec();
    while let Some(rd) = poly_deg(&r) {
        if rd < dd {
            return false;
        }
        let lead = r[rd];
        let shift = rd - dd;
        for j in 0..=dd {
            let sub = lead as u64 * d_monic[j] as u64 % p as u64;
            r[shift + j] = ((r[shift + j] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    true
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Trial-factorization irreducibility check; degrees in scope are tiny.
fn poly_is_irreducible(p: u32, m: &[u32]) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    // Enumerate monic polynomials of degree 1..=k/2 and trial-divide.
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for i in 0..count {
            let mut cand = vec![0u32; d + 1];
            let mut v = i;
            for c in cand.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            cand[d] = 1;
            if poly_divides(p, &cand, m) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_fields_exist() {
        for q in [3u64, 5, 7, 9, 25] {
            let f = FqField::for_q(q).unwrap();
            assert_eq!(f.q(), q);
        }
        assert!(FqField::for_q(4).is_err());
        assert!(FqField::for_q(11).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // t^2 + 2 = (t+1)(t+2) over F_3.
        assert!(matches!(
            FqField::new(3, 2, vec![2, 0, 1]),
            Err(Error::ReducibleModulus { p: 3 })
        ));
    }

    #[test]
    fn two_times_two_in_f3() {
        let f = FqField::for_q(3).unwrap();
        assert_eq!(f.mul(&f.from_int(2), &f.from_int(2)), f.one());
    }

    #[test]
    fn modulus_relation_in_f9() {
        // t * t = -1 = 2 in F_9 = F_3[t]/(t^2+1).
        let f = FqField::for_q(9).unwrap();
        let t = f.from_index(3); // coefficients (0, 1)
        assert_eq!(f.mul(&t, &t), f.from_int(2));
    }

    #[test]
    fn inverse_in_f5() {
        let f = FqField::for_q(5).unwrap();
        assert_eq!(f.inv(&f.from_int(2)).unwrap(), f.from_int(3));
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn character_at_zero_and_one() {
        for q in [3u64, 9] {
            let f = FqField::for_q(q).unwrap();
            assert_eq!(f.additive_character(&f.zero()), CycNum::one(f.p() as usize));
        }
        let f3 = FqField::for_q(3).unwrap();
        assert_eq!(f3.additive_character(&f3.one()), CycNum::zeta_pow(3, 1));
    }

    #[test]
    fn character_sums_vanish() {
        for q in [3u64, 5, 9] {
            let f = FqField::for_q(q).unwrap();
            let p = f.p() as usize;
            let mut total = CycNum::zero(p);
            for x in f.elements() {
                total += &f.additive_character(&x);
            }
            assert!(total.is_zero(), "sum over F_{q} of psi must vanish");

            // Twisted by any nonzero c the sum still vanishes; at c = 0 it
            // is q.
            for ci in 0..f.q() {
                let c = f.from_index(ci);
                let mut s = CycNum::zero(p);
                for x in f.elements() {
                    s += &f.additive_character(&f.mul(&c, &x));
                }
                if ci == 0 {
                    assert_eq!(s, CycNum::from_integer(p, q as i64));
                } else {
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn character_is_additive_exhaustive() {
        for q in [3u64, 5, 9] {
            let f = FqField::for_q(q).unwrap();
            for x in f.elements() {
                for y in f.elements() {
                    let lhs = f.additive_character(&f.add(&x, &y));
                    let rhs = &f.additive_character(&x) * &f.additive_character(&y);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn index_is_a_bijection() {
        for q in [3u64, 9, 25] {
            let f = FqField::for_q(q).unwrap();
            let mut seen = vec![false; q as usize];
            for x in f.elements() {
                let i = f.index(&x) as usize;
                assert!(!seen[i]);
                seen[i] = true;
                assert_eq!(f.from_index(i as u64), x);
            }
            assert!(seen.into_iter().all(|b| b));
            assert_eq!(f.index(&f.zero()), 0);
        }
    }

    #[test]
    fn field_axioms_spot_checks() {
        let f = FqField::for_q(25).unwrap();
        for i in 1..f.q() {
            let x = f.from_index(i);
            let xi = f.inv(&x).unwrap();
            assert_eq!(f.mul(&x, &xi), f.one());
        }
        // pow matches repeated multiplication.
        let g = f.from_index(7);
        let mut acc = f.one();
        for e in 0..10 {
            assert_eq!(f.pow(&g, e), acc);
            acc = f.mul(&acc, &g);
        }
    }

    #[test]
    fn primitive_root_has_full_order() {
        for q in [3u64, 5, 7, 9, 25] {
            let f = FqField::for_q(q).unwrap();
            let g = f.primitive_root();
            let mut seen = std::collections::HashSet::new();
            let mut x = f.one();
            for _ in 0..q - 1 {
                assert!(seen.insert(f.index(&x)));
                x = f.mul(&x, &g);
            }
            assert_eq!(x, f.one());
        }
    }
}
