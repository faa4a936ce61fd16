//! The finite field F_q, q = p^k, with table-driven element arithmetic.
//!
//! Elements are the integers `0..q`. For k > 1 an element `a` encodes the
//! residue class `sum_i d_i x^i` of F_p[x]/(m(x)), where `d_i` is the i-th
//! base-p digit of `a` (least significant digit first). The codes 0 and 1 are
//! always the additive and multiplicative identities.

use std::fmt;
use std::sync::OnceLock;

use super::poly::MonicPoly;
use super::PolyError;

/// An element of F_q, as its integer code in `0..q`.
pub type Elem = u32;

/// Largest field order for which addition and multiplication tables are built.
pub const MAX_FIELD_ORDER: u32 = 256;

/// Highest degree for which irreducible lists are cached.
pub const MAX_CACHED_DEGREE: usize = 64;

/// Default ceiling on `q^d` when enumerating irreducibles of degree `d`.
pub const DEFAULT_IRREDUCIBLE_BUDGET: u64 = 1 << 22;

/// Arithmetic context for F_q.
///
/// Immutable after construction apart from the per-degree irreducible caches,
/// which are filled once and read-only afterwards, so a context can be shared
/// freely across threads.
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    pub(super) irreducible_budget: u64,
    pub(super) irreducibles: Vec<OnceLock<Vec<MonicPoly>>>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish_non_exhaustive()
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let (mut rest, mut k) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Raw polynomial helpers over the prime field F_p, constant term first.
// Used only to find and validate the defining modulus.
mod prime_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        trim(&mut out);
        out
    }

    /// Monic polynomial of degree `deg` whose non-leading coefficients are the
    /// base-p digits of `idx`, constant term least significant.
    pub fn monic_from_index(deg: usize, mut idx: u64, p: u32) -> Vec<u32> {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        c.push(1);
        c
    }

    /// Irreducibility by trial division against every monic polynomial of
    /// degree 1..=deg/2.
    pub fn is_irreducible_trial(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for idx in 0..count {
                let cand = monic_from_index(d, idx, p);
                if rem_monic(m, &cand, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldCtx {
    /// Builds F_{p^k}. For k > 1 the modulus is the first monic irreducible of
    /// degree k over F_p in enumeration order (constant term least significant).
    pub fn new(p: u32, k: u32) -> Result<Self, PolyError> {
        Self::with_budget(p, k, DEFAULT_IRREDUCIBLE_BUDGET)
    }

    pub fn with_budget(p: u32, k: u32, irreducible_budget: u64) -> Result<Self, PolyError> {
        if !is_prime_u64(p as u64) {
            return Err(PolyError::NotPrime(p as u64));
        }
        if k < 1 {
            return Err(PolyError::BadExponent(k));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER as u64).ok_or(PolyError::FieldTooLarge {
            p,
            k,
            max: MAX_FIELD_ORDER,
        })? as u32;

        let modulus = if k > 1 {
            let count = (p as u64).pow(k);
            let m = (0..count)
                .map(|idx| prime_poly::monic_from_index(k as usize, idx, p))
                .find(|m| prime_poly::is_irreducible_trial(m, p))
                .expect("an irreducible polynomial of every degree exists over F_p");
            Some(m)
        } else {
            None
        };

        let digits = |a: u32| -> Vec<u32> {
            let mut d = Vec::with_capacity(k as usize);
            let mut a = a;
            for _ in 0..k {
                d.push(a % p);
                a /= p;
            }
            d
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &x| acc * p + x) };

        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = encode(&sum);
                let prod = match &modulus {
                    None => vec![((a as u64 * b as u64) % p as u64) as u32],
                    Some(m) => {
                        let mut r = prime_poly::rem_monic(&prime_poly::mul(&da, &db, p), m, p);
                        r.resize(k as usize, 0);
                        r
                    }
                };
                mul[a as usize * qs + b as usize] = encode(&prod);
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for a in 0..qs {
            neg[a] = (0..q).find(|&b| add[a * qs + b as usize] == 0).unwrap();
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * qs + b as usize] == 1).ok_or(PolyError::NotAField { p, k })?;
            }
        }

        Ok(Self {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            irreducible_budget,
            irreducibles: (0..=MAX_CACHED_DEGREE).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Builds the field of order `q`, factoring `q` as a prime power.
    pub fn from_order(q: u64) -> Result<Self, PolyError> {
        let (p, k) = prime_power_parts(q).ok_or(PolyError::NotPrimePower(q))?;
        if p > MAX_FIELD_ORDER as u64 {
            return Err(PolyError::FieldTooLarge { p: u32::MAX, k, max: MAX_FIELD_ORDER });
        }
        Self::new(p as u32, k)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining polynomial over F_p (constant term first, monic), if k > 1.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn irreducible_budget(&self) -> u64 {
        self.irreducible_budget
    }

    /// Short field tag used in polynomial rendering: `F5`, `F2^3`.
    pub fn tag(&self) -> String {
        if self.k == 1 {
            format!("F{}", self.p)
        } else {
            format!("F{}^{}", self.p, self.k)
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[(a * self.q + b) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Base-p digits of an element, constant digit first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut a = a;
        (0..self.k)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Option<Elem> {
        if digits.len() != self.k as usize || digits.iter().any(|&d| d >= self.p) {
            return None;
        }
        Some(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = FieldCtx::new(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
        assert!(f.modulus().is_none());
    }

    #[test]
    fn f4_modulus_is_x2_x_1() {
        // Over F_2 the monic quadratics are x^2, x^2+1, x^2+x, x^2+x+1; only the last is irreducible.
        let quads: Vec<Vec<u32>> = (0..4).map(|i| prime_poly::monic_from_index(2, i, 2)).collect();
        let irr: Vec<_> = quads.iter().filter(|m| prime_poly::is_irreducible_trial(m, 2)).collect();
        assert_eq!(irr, vec![&vec![1, 1, 1]]);
        let f = FieldCtx::new(2, 2).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
    }

    #[test]
    fn rejects_composite_and_bad_exponent() {
        assert!(matches!(FieldCtx::new(6, 1), Err(PolyError::NotPrime(6))));
        assert!(matches!(FieldCtx::new(2, 0), Err(PolyError::BadExponent(0))));
        assert!(matches!(FieldCtx::new(2, 9), Err(PolyError::FieldTooLarge { .. })));
        assert!(matches!(FieldCtx::from_order(12), Err(PolyError::NotPrimePower(12))));
    }

    #[test]
    fn from_order_factors_prime_powers() {
        assert_eq!(prime_power_parts(9), Some((3, 2)));
        assert_eq!(prime_power_parts(7), Some((7, 1)));
        assert_eq!(prime_power_parts(1), None);
        let f = FieldCtx::from_order(8).unwrap();
        assert_eq!((f.p(), f.k()), (2, 3));
        // x^3 + x + 1 precedes x^3 + x^2 + 1 in enumeration order
        assert_eq!(f.modulus(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(FieldCtx::from_order(9).unwrap().modulus(), Some(&[1, 0, 1][..]));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1), (2, 4), (13, 1)] {
            let f = FieldCtx::new(p, k).unwrap();
            let q = f.q();
            assert!(q <= 16);
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "F{q}: {a}");
                } else {
                    assert_eq!(f.inv(a), None);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn digit_codec_roundtrip() {
        let f = FieldCtx::new(3, 2).unwrap();
        for a in 0..f.q() {
            assert_eq!(f.from_digits(&f.digits(a)), Some(a));
        }
        assert_eq!(f.from_digits(&[3, 0]), None);
    }
}
