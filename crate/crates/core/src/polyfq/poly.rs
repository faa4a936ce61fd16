use std::cmp::Ordering;

use super::field::{Elem, FieldCtx};
use super::PolyError;

/// A monic polynomial over F_q: coefficients constant term first, the last
/// one always equal to 1. The constant polynomial 1 has degree 0.
///
/// A `MonicPoly` does not carry its field; every operation takes the
/// [`FieldCtx`] it was built against.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly {
    coeffs: Vec<Elem>,
}

impl MonicPoly {
    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    /// Builds `z + c`.
    pub fn linear(c: Elem) -> Self {
        Self { coeffs: vec![c, 1] }
    }

    pub fn from_coeffs(ctx: &FieldCtx, coeffs: Vec<Elem>) -> Result<Self, PolyError> {
        if coeffs.last() != Some(&1) {
            return Err(PolyError::NotMonic);
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= ctx.q()) {
            return Err(PolyError::BadElement { elem: c, q: ctx.q() });
        }
        Ok(Self { coeffs })
    }

    pub(crate) fn from_coeffs_unchecked(coeffs: Vec<Elem>) -> Self {
        debug_assert_eq!(coeffs.last(), Some(&1));
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub(crate) fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }
}

/// Degree first, then the base-q counter over the non-leading coefficients
/// (constant term least significant). This matches enumeration order.
impl Ord for MonicPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// General (not necessarily monic) dense polynomials, constant term first,
// with no trailing zeros. The zero polynomial is the empty vector.
fn trim(a: &mut Vec<Elem>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

impl FieldCtx {
    fn dense_mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(&mut out);
        out
    }

    /// Quotient and remainder of `a` by a nonzero `b`.
    fn dense_divrem(&self, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
        let db = b.len() - 1;
        let lead_inv = self.inv(b[db]).expect("divisor must be nonzero");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut quot = vec![0; r.len() - db];
        while r.len() > db {
            let shift = r.len() - 1 - db;
            let c = self.mul(*r.last().unwrap(), lead_inv);
            quot[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, bc));
            }
            trim(&mut r);
        }
        trim(&mut quot);
        (quot, r)
    }

    fn make_monic(&self, mut a: Vec<Elem>) -> Vec<Elem> {
        let lead = *a.last().expect("nonzero polynomial");
        if lead != 1 {
            let li = self.inv(lead).unwrap();
            for c in a.iter_mut() {
                *c = self.mul(*c, li);
            }
        }
        a
    }

    pub fn poly_mul(&self, a: &MonicPoly, b: &MonicPoly) -> MonicPoly {
        MonicPoly::from_coeffs_unchecked(self.dense_mul(&a.coeffs, &b.coeffs))
    }

    pub fn poly_pow(&self, a: &MonicPoly, mut e: u32) -> MonicPoly {
        let mut base = a.clone();
        let mut acc = MonicPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.poly_mul(&base, &base);
            }
        }
        acc
    }

    /// `Some(a / b)` when `b` divides `a`.
    pub fn poly_div_exact(&self, a: &MonicPoly, b: &MonicPoly) -> Option<MonicPoly> {
        if b.degree() > a.degree() {
            return None;
        }
        let (quot, rem) = self.dense_divrem(&a.coeffs, &b.coeffs);
        rem.is_empty().then(|| MonicPoly::from_coeffs_unchecked(quot))
    }

    pub fn divides(&self, b: &MonicPoly, a: &MonicPoly) -> bool {
        b.degree() <= a.degree() && self.dense_divrem(&a.coeffs, &b.coeffs).1.is_empty()
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, a: &MonicPoly, b: &MonicPoly) -> MonicPoly {
        let mut x = a.coeffs.clone();
        let mut y = b.coeffs.clone();
        while !y.is_empty() {
            let (_, r) = self.dense_divrem(&x, &y);
            x = y;
            y = r;
        }
        MonicPoly::from_coeffs_unchecked(self.make_monic(x))
    }

    pub fn coprime(&self, a: &MonicPoly, b: &MonicPoly) -> bool {
        if a.is_one() || b.is_one() {
            return true;
        }
        self.poly_gcd(a, b).is_one()
    }

    /// `a * b / gcd(a, b)`.
    pub fn poly_lcm(&self, a: &MonicPoly, b: &MonicPoly) -> MonicPoly {
        let g = self.poly_gcd(a, b);
        let a_red = self.poly_div_exact(a, &g).expect("gcd divides its argument");
        self.poly_mul(&a_red, b)
    }

    /// lcm of a list; the lcm of the empty list is 1.
    pub fn poly_lcm_all<'a, I>(&self, polys: I) -> MonicPoly
    where
        I: IntoIterator<Item = &'a MonicPoly>,
    {
        polys.into_iter().fold(MonicPoly::one(), |acc, p| self.poly_lcm(&acc, p))
    }

    /// Formal derivative, as a general polynomial (possibly zero).
    pub(crate) fn derivative(&self, a: &MonicPoly) -> Vec<Elem> {
        let mut out: Vec<Elem> = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                // i * c in characteristic p
                let mut acc = 0;
                for _ in 0..(i as u32 % self.p()) {
                    acc = self.add(acc, c);
                }
                acc
            })
            .collect();
        trim(&mut out);
        out
    }
}
