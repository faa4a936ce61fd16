//! Deterministic enumeration of monic polynomials.
//!
//! Polynomials are numbered degree-major; inside a degree the non-leading
//! coefficients form a base-q counter with the constant term as the least
//! significant digit. Any index range can be decoded independently, so an
//! enumeration splits into disjoint contiguous pieces for parallel consumers.

use std::ops::Range;

use super::field::{Elem, FieldCtx};
use super::poly::MonicPoly;
use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumMode {
    /// Degree exactly n: q^n polynomials.
    Exactly,
    /// Degree at most n: w(q^n) polynomials.
    UpTo,
}

/// Number of monic polynomials of degree `<= n`, if it fits in a u64.
pub fn monic_count_up_to(q: u64, n: i64) -> Option<u64> {
    if n < 0 {
        return Some(0);
    }
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..=n {
        total = total.checked_add(pow)?;
        pow = pow.saturating_mul(q);
    }
    Some(total)
}

fn checked_pow(q: u64, n: u32) -> Option<u64> {
    q.checked_pow(n)
}

/// A finite, indexable enumeration of monic polynomials.
#[derive(Clone, Debug)]
pub struct MonicEnumeration {
    q: u32,
    n: i64,
    mode: EnumMode,
    len: u64,
}

impl MonicEnumeration {
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mode(&self) -> EnumMode {
        self.mode
    }

    pub fn max_degree(&self) -> i64 {
        self.n
    }

    /// The polynomial at position `idx`.
    pub fn get(&self, idx: u64) -> Option<MonicPoly> {
        (idx < self.len).then(|| {
            let (deg, offset) = self.locate(idx);
            decode(self.q, deg, offset)
        })
    }

    /// Iterator over an index sub-range.
    pub fn range(&self, r: Range<u64>) -> MonicIter {
        let end = r.end.min(self.len);
        let start = r.start.min(end);
        let current = (start < end).then(|| {
            let (deg, offset) = self.locate(start);
            decode(self.q, deg, offset).into_coeffs()
        });
        MonicIter { q: self.q, current, remaining: end - start }
    }

    pub fn iter(&self) -> MonicIter {
        self.range(0..self.len)
    }

    /// Splits into at most `parts` contiguous, disjoint iterators covering everything.
    pub fn split(&self, parts: usize) -> Vec<MonicIter> {
        let parts = parts.max(1) as u64;
        let chunk = self.len.div_ceil(parts).max(1);
        (0..parts)
            .map(|i| (i * chunk).min(self.len)..((i + 1) * chunk).min(self.len))
            .filter(|r| !r.is_empty())
            .map(|r| self.range(r))
            .collect()
    }

    fn locate(&self, idx: u64) -> (usize, u64) {
        match self.mode {
            EnumMode::Exactly => (self.n as usize, idx),
            EnumMode::UpTo => {
                let q = self.q as u64;
                let (mut deg, mut start, mut block) = (0usize, 0u64, 1u64);
                while idx - start >= block {
                    start += block;
                    block *= q;
                    deg += 1;
                }
                (deg, idx - start)
            }
        }
    }
}

fn decode(q: u32, deg: usize, mut offset: u64) -> MonicPoly {
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push((offset % q as u64) as Elem);
        offset /= q as u64;
    }
    coeffs.push(1);
    MonicPoly::from_coeffs_unchecked(coeffs)
}

/// Streaming iterator with an in-place counter successor.
#[derive(Clone, Debug)]
pub struct MonicIter {
    q: u32,
    current: Option<Vec<Elem>>,
    remaining: u64,
}

impl Iterator for MonicIter {
    type Item = MonicPoly;

    fn next(&mut self) -> Option<MonicPoly> {
        if self.remaining == 0 {
            return None;
        }
        let cur = self.current.as_mut()?;
        let out = MonicPoly::from_coeffs_unchecked(cur.clone());
        self.remaining -= 1;
        if self.remaining > 0 {
            // increment the base-q counter over non-leading coefficients
            let deg = cur.len() - 1;
            let mut i = 0;
            while i < deg && cur[i] + 1 == self.q {
                cur[i] = 0;
                i += 1;
            }
            if i < deg {
                cur[i] += 1;
            } else {
                // wrapped: first polynomial of the next degree, z^(deg+1)
                cur.iter_mut().for_each(|c| *c = 0);
                cur.push(1);
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

impl ExactSizeIterator for MonicIter {}

impl FieldCtx {
    /// Enumerates monic polynomials of degree exactly `n` or at most `n`.
    /// A negative `n` gives an empty enumeration.
    pub fn enumerate_monic(&self, n: i64, mode: EnumMode) -> Result<MonicEnumeration, PolyError> {
        let q = self.q() as u64;
        let len = if n < 0 {
            0
        } else {
            match mode {
                EnumMode::Exactly => u32::try_from(n).ok().and_then(|n| checked_pow(q, n)),
                EnumMode::UpTo => monic_count_up_to(q, n),
            }
            .ok_or(PolyError::EnumerationTooLarge { q: self.q(), n })?
        };
        Ok(MonicEnumeration { q: self.q(), n, mode, len })
    }
}
