//! Exact arithmetic in the cyclotomic field `Q(zeta_p)` for an odd prime `p`.
//!
//! Values are stored on the power basis `1, zeta, ..., zeta^{p-2}` with
//! rational coefficients; the relation `zeta^{p-1} = -(1 + zeta + ... +
//! zeta^{p-2})` is applied eagerly so that equality is plain coefficient
//! comparison. Only prime `p` is supported: the additive character of
//! `F_{p^k}` factors through the trace to `F_p`, so `Q(zeta_p)` is the value
//! field for every field size handled by this crate.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// An element of `Q(zeta_p)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    p: usize,
    /// Coefficient of `zeta^j` for `j = 0..p-2`.
    coeffs: Vec<BigRational>,
}

// Wire form: an array of `p - 1` strings "num/den" in canonical basis order.
impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        let p = parts.len() + 1;
        if p < 3 || !is_odd_prime(p) {
            return Err(D::Error::custom(format!(
                "coefficient count {} does not match any odd prime order",
                parts.len()
            )));
        }
        CycNum::from_strings(p, &parts).map_err(D::Error::custom)
    }
}

impl CycNum {
    /// The zero element of `Q(zeta_p)`.
    pub fn zero(p: usize) -> Self {
        assert!(p >= 3 && is_odd_prime(p), "p must be an odd prime, got {p}");
        CycNum {
            p,
            coeffs: vec![BigRational::zero(); p - 1],
        }
    }

    /// The element `n` of the prime subfield `Q`.
    pub fn from_integer(p: usize, n: i64) -> Self {
        let mut v = Self::zero(p);
        v.coeffs[0] = BigRational::from_integer(BigInt::from(n));
        v
    }

    pub fn from_rational(p: usize, r: BigRational) -> Self {
        let mut v = Self::zero(p);
        v.coeffs[0] = r;
        v
    }

    pub fn one(p: usize) -> Self {
        Self::from_integer(p, 1)
    }

    /// `zeta^t` (any integer exponent, reduced mod `p`).
    pub fn zeta_pow(p: usize, t: i64) -> Self {
        let e = t.rem_euclid(p as i64) as usize;
        let mut v = Self::zero(p);
        if e == p - 1 {
            // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
            for c in v.coeffs.iter_mut() {
                *c = -BigRational::one();
            }
        } else {
            v.coeffs[e] = BigRational::one();
        }
        v
    }

    /// Builds a value from coefficients of `zeta^0..zeta^{d}` for arbitrary
    /// `d`, reducing into canonical form.
    pub fn from_coeffs(p: usize, raw: &[BigRational]) -> Self {
        let mut folded = vec![BigRational::zero(); p];
        for (j, c) in raw.iter().enumerate() {
            folded[j % p] += c;
        }
        let mut v = Self::zero(p);
        let top = folded[p - 1].clone();
        for j in 0..p - 1 {
            v.coeffs[j] = std::mem::take(&mut folded[j]) - &top;
        }
        v
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Returns the value as a rational if it lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, rhs: &Self) -> Result<()> {
        if self.p != rhs.p {
            return Err(Error::CyclotomicMismatch(self.p, rhs.p));
        }
        Ok(())
    }

    /// Fallible arithmetic used at API boundaries where the two operands may
    /// come from unrelated inputs.
    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.clone() + rhs)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self.clone() - rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        Ok(self * rhs)
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.check_same(rhs)?;
        let inv = rhs.inverse()?;
        Ok(self * &inv)
    }

    /// Multiplicative inverse in `Q(zeta_p)`.
    ///
    /// Solves `self * x = 1` by Gaussian elimination on the multiplication
    /// matrix; the basis is tiny (`p - 1 <= 6` in practice) so this is both
    /// simple and exact.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.p - 1;
        // Column j of the matrix is self * zeta^j on the canonical basis.
        let mut mat = vec![vec![BigRational::zero(); n + 1]; n];
        for j in 0..n {
            let col = self * &CycNum::zeta_pow(self.p, j as i64);
            for i in 0..n {
                mat[i][j] = col.coeffs[i].clone();
            }
        }
        mat[0][n] = BigRational::one();

        // Exact row reduction with partial pivoting on nonzero entries.
        let mut row = 0;
        for col in 0..n {
            let Some(pivot) = (row..n).find(|&r| !mat[r][col].is_zero()) else {
                continue;
            };
            mat.swap(row, pivot);
            let inv = mat[row][col].recip();
            for x in mat[row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != row && !mat[r][col].is_zero() {
                    let f = mat[r][col].clone();
                    for c in 0..=n {
                        let t = &mat[row][c] * &f;
                        mat[r][c] -= t;
                    }
                }
            }
            row += 1;
            if row == n {
                break;
            }
        }
        debug_assert_eq!(row, n, "multiplication by a nonzero element is invertible");
        let mut out = Self::zero(self.p);
        for i in 0..n {
            out.coeffs[i] = mat[i][n].clone();
        }
        Ok(out)
    }

    /// The ring automorphism `zeta -> zeta^{-1}` (complex conjugation under
    /// every embedding).
    pub fn conj(&self) -> Self {
        let mut raw = vec![BigRational::zero(); self.p];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(self.p - j) % self.p] += c;
        }
        Self::from_coeffs(self.p, &raw)
    }

    /// Adds `other * zeta^t` into `self` without allocating. This is the
    /// workhorse of the transform kernel.
    pub fn add_rotated(&mut self, other: &Self, t: usize) {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let t = t % p;
        for (j, c) in other.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j + t) % p;
            if e == p - 1 {
                for s in self.coeffs.iter_mut() {
                    *s -= c;
                }
            } else {
                self.coeffs[e] += c;
            }
        }
    }

    /// Evaluates the embedding `zeta -> exp(2 pi i root_index / p)` in double
    /// precision. Used only for inequality checks, never for equality.
    pub fn embed_complex(&self, root_index: usize) -> Result<(f64, f64)> {
        if root_index < 1 || root_index > self.p - 1 {
            return Err(Error::RootIndexOutOfRange {
                index: root_index,
                max: self.p - 1,
            });
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = rational_to_f64(c);
            let angle =
                2.0 * std::f64::consts::PI * (root_index * j % self.p) as f64 / self.p as f64;
            re += x * angle.cos();
            im += x * angle.sin();
        }
        Ok((re, im))
    }

    /// `|value|` under the given embedding.
    pub fn abs_embedded(&self, root_index: usize) -> Result<f64> {
        let (re, im) = self.embed_complex(root_index)?;
        Ok(re.hypot(im))
    }

    /// Canonical JSON form: `p - 1` strings `"num/den"`.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }

    pub fn from_strings(p: usize, parts: &[String]) -> Result<Self> {
        if parts.len() != p - 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients for p = {}, got {}",
                p - 1,
                p,
                parts.len()
            )));
        }
        let mut v = Self::zero(p);
        for (j, s) in parts.iter().enumerate() {
            v.coeffs[j] = parse_rational(s)?;
        }
        Ok(v)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| bad())?;
    let d: BigInt = den.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Values in scope are tiny; fall back to a division of f64-converted
    // parts, which is exact enough for 1e-6 bound checks.
    let n = r.numer();
    let d = r.denom();
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && p % 2 == 1 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc(p={};", self.p)?;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "z^{j}")?;
            } else {
                write!(f, "{c}*z^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add<&CycNum> for CycNum {
    type Output = CycNum;
    fn add(mut self, rhs: &CycNum) -> CycNum {
        self += rhs;
        self
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        assert_eq!(self.p, rhs.p, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub<&CycNum> for CycNum {
    type Output = CycNum;
    fn sub(mut self, rhs: &CycNum) -> CycNum {
        self -= rhs;
        self
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        assert_eq!(self.p, rhs.p, "cyclotomic order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        assert_eq!(self.p, rhs.p, "cyclotomic order mismatch");
        let n = self.p - 1;
        let mut raw = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        CycNum::from_coeffs(self.p, &raw)
    }
}

impl Mul<&BigRational> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &BigRational) -> CycNum {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= rhs;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(p: usize, t: i64) -> CycNum {
        CycNum::zeta_pow(p, t)
    }

    #[test]
    fn minimal_polynomial_relation() {
        // (zeta + zeta^2) + 1 = 0 for p = 3.
        let v = zeta(3, 1) + &zeta(3, 2) + &CycNum::one(3);
        assert!(v.is_zero());
    }

    #[test]
    fn zeta_cubed_is_one() {
        let v = &zeta(3, 1) * &zeta(3, 2);
        assert_eq!(v, CycNum::one(3));
    }

    #[test]
    fn division_by_self() {
        let a = CycNum::one(5) + &zeta(5, 1);
        assert_eq!(a.try_div(&a).unwrap(), CycNum::one(5));
    }

    #[test]
    fn division_by_zero_rejected() {
        let a = CycNum::one(5);
        assert!(matches!(
            a.try_div(&CycNum::zero(5)),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn mismatched_order_rejected() {
        let a = CycNum::one(3);
        let b = CycNum::one(5);
        assert!(matches!(
            a.try_add(&b),
            Err(Error::CyclotomicMismatch(3, 5))
        ));
    }

    #[test]
    fn character_orthogonality_seed() {
        for p in [3usize, 5, 7] {
            let mut s = CycNum::zero(p);
            for t in 0..p {
                s += &zeta(p, t as i64);
            }
            assert!(s.is_zero(), "sum of all p-th roots must vanish (p={p})");
        }
    }

    #[test]
    fn embed_primitive_cube_roots() {
        let v = zeta(3, 1) + &zeta(3, 2);
        let (re, im) = v.embed_complex(1).unwrap();
        assert!((re + 1.0).abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn embed_rational_constant() {
        let v = CycNum::from_integer(5, 1);
        for r in 1..=4 {
            let (re, im) = v.embed_complex(r).unwrap();
            assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        }
        let w = CycNum::from_integer(3, 2);
        let (re, im) = w.embed_complex(2).unwrap();
        assert!((re - 2.0).abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn embed_root_index_range() {
        let v = CycNum::one(3);
        assert!(v.embed_complex(0).is_err());
        assert!(v.embed_complex(3).is_err());
    }

    #[test]
    fn rotated_accumulation_matches_mul() {
        let p = 7;
        let a = zeta(p, 2) + &zeta(p, 5) + &CycNum::from_integer(p, 3);
        for t in 0..p {
            let mut acc = CycNum::zero(p);
            acc.add_rotated(&a, t);
            assert_eq!(acc, &a * &zeta(p, t as i64), "t = {t}");
        }
    }

    #[test]
    fn conj_inverts_roots() {
        let p = 5;
        for t in 0..p {
            assert_eq!(zeta(p, t as i64).conj(), zeta(p, -(t as i64)));
        }
    }

    #[test]
    fn string_round_trip() {
        let v = zeta(5, 4) + &CycNum::from_rational(5, BigRational::new(3.into(), 7.into()));
        let s = v.to_strings();
        assert_eq!(s.len(), 4);
        assert_eq!(CycNum::from_strings(5, &s).unwrap(), v);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyc(p: usize) -> impl Strategy<Value = CycNum> {
            proptest::collection::vec((-6i64..=6, 1i64..=4), p - 1).prop_map(move |cs| {
                let raw: Vec<BigRational> = cs
                    .into_iter()
                    .map(|(n, d)| BigRational::new(n.into(), d.into()))
                    .collect();
                CycNum::from_coeffs(p, &raw)
            })
        }

        proptest! {
            #[test]
            fn add_sub_cancels(a in arb_cyc(5), b in arb_cyc(5)) {
                let back = (a.clone() + &b) - &b;
                prop_assert_eq!(back, a);
            }

            #[test]
            fn mul_commutative_associative(a in arb_cyc(7), b in arb_cyc(7), c in arb_cyc(7)) {
                prop_assert_eq!(&a * &b, &b * &a);
                let ab_c = &(&a * &b) * &c;
                let a_bc = &a * &(&b * &c);
                prop_assert_eq!(ab_c, a_bc);
            }

            #[test]
            fn embedding_is_multiplicative(a in arb_cyc(5), b in arb_cyc(5)) {
                let prod = &a * &b;
                let (ar, ai) = a.embed_complex(2).unwrap();
                let (br, bi) = b.embed_complex(2).unwrap();
                let (pr, pi) = prod.embed_complex(2).unwrap();
                prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9);
                prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9);
            }

            #[test]
            fn inverse_really_inverts(a in arb_cyc(5)) {
                prop_assume!(!a.is_zero());
                let inv = a.inverse().unwrap();
                prop_assert_eq!(&a * &inv, CycNum::one(5));
            }
        }
    }
}
