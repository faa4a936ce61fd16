use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::enumerate::EnumMode;
use super::field::{FieldCtx, MAX_CACHED_DEGREE};
use super::poly::MonicPoly;
use super::PolyError;

/// Möbius function on positive integers.
pub fn integer_mobius(mut n: u64) -> i32 {
    assert!(n >= 1);
    let mut result = 1;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `n` over F_q:
/// `(1/n) * sum_{d | n} mu(n/d) q^d`.
pub fn count_irreducibles(q: u64, n: u32) -> BigUint {
    assert!(n >= 1, "degree must be positive");
    let qb = BigUint::from(q);
    let (mut plus, mut minus) = (BigUint::zero(), BigUint::zero());
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match integer_mobius((n / d) as u64) {
            1 => plus += qb.pow(d),
            -1 => minus += qb.pow(d),
            _ => {}
        }
    }
    let sum = plus - minus;
    let nb = BigUint::from(n);
    assert!((&sum % &nb).is_zero(), "divisor sum not divisible by n");
    sum / nb
}

/// w(q^m): number of monic polynomials of degree at most `m`; 0 for m < 0.
pub fn w_count(q: u64, m: i64) -> BigUint {
    if m < 0 {
        return BigUint::zero();
    }
    // (q^{m+1} - 1) / (q - 1) = 1 + q + ... + q^m
    let qb = BigUint::from(q);
    let mut total = BigUint::zero();
    let mut pow = BigUint::one();
    for _ in 0..=m {
        total += &pow;
        pow *= &qb;
    }
    total
}

/// Complete factorization of a monic polynomial into monic irreducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(MonicPoly, u32)>,
}

impl Factorization {
    /// Factors with multiplicities, sorted by degree and then coefficients.
    pub fn factors(&self) -> &[(MonicPoly, u32)] {
        &self.factors
    }

    /// Number of distinct irreducible factors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn mobius(&self) -> i32 {
        if !self.is_squarefree() {
            0
        } else if self.omega().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn product(&self, ctx: &FieldCtx) -> MonicPoly {
        self.factors.iter().fold(MonicPoly::one(), |acc, (p, e)| ctx.poly_mul(&acc, &ctx.poly_pow(p, *e)))
    }
}

impl FieldCtx {
    fn check_irreducible_budget(&self, d: usize) -> Result<(), PolyError> {
        let over = d > MAX_CACHED_DEGREE
            || (self.q() as u64).checked_pow(d as u32).is_none_or(|c| c > self.irreducible_budget);
        if over {
            return Err(PolyError::IrreducibleBudget { q: self.q(), degree: d, budget: self.irreducible_budget });
        }
        Ok(())
    }

    /// All monic irreducibles of degree exactly `d`, in enumeration order.
    /// Computed once per degree and cached on the context.
    pub fn enumerate_irreducibles(&self, d: usize) -> Result<&[MonicPoly], PolyError> {
        if d == 0 {
            return Ok(&[]);
        }
        self.check_irreducible_budget(d)?;
        if let Some(list) = self.irreducibles[d].get() {
            return Ok(list);
        }
        // lower degrees first, so the trial divisors are already cached
        for j in 1..=d / 2 {
            self.enumerate_irreducibles(j)?;
        }
        let list: Vec<MonicPoly> = self
            .enumerate_monic(d as i64, EnumMode::Exactly)?
            .iter()
            .filter(|cand| !self.has_factor_up_to(cand, d / 2))
            .collect();
        Ok(self.irreducibles[d].get_or_init(|| list))
    }

    // Caller guarantees degrees 1..=max_deg are cached.
    fn has_factor_up_to(&self, a: &MonicPoly, max_deg: usize) -> bool {
        (1..=max_deg).any(|j| {
            self.irreducibles[j].get().expect("lower-degree irreducibles cached").iter().any(|p| self.divides(p, a))
        })
    }

    /// Irreducibility test by trial division against cached irreducibles.
    pub fn is_irreducible(&self, a: &MonicPoly) -> Result<bool, PolyError> {
        let deg = a.degree();
        if deg == 0 {
            return Ok(false);
        }
        for j in 1..=deg / 2 {
            self.enumerate_irreducibles(j)?;
        }
        Ok(!self.has_factor_up_to(a, deg / 2))
    }

    /// Factorization by trial division against irreducibles of degree up to deg/2.
    ///
    /// Cost grows like q^(deg/2); requests whose irreducible cache would exceed
    /// the context's budget are rejected.
    pub fn factorize(&self, a: &MonicPoly) -> Result<Factorization, PolyError> {
        let mut rest = a.clone();
        let mut factors = Vec::new();
        let mut j = 1;
        while 2 * j <= rest.degree() {
            for p in self.enumerate_irreducibles(j)? {
                let mut e = 0;
                while let Some(quot) = self.poly_div_exact(&rest, p) {
                    rest = quot;
                    e += 1;
                }
                if e > 0 {
                    factors.push((p.clone(), e));
                }
            }
            j += 1;
        }
        if !rest.is_one() {
            // no factor of degree <= deg/2 remains, so the cofactor is irreducible
            factors.push((rest, 1));
        }
        factors.sort();
        Ok(Factorization { factors })
    }

    pub fn mobius(&self, a: &MonicPoly) -> Result<i32, PolyError> {
        Ok(self.factorize(a)?.mobius())
    }

    pub fn omega(&self, a: &MonicPoly) -> Result<usize, PolyError> {
        Ok(self.factorize(a)?.omega())
    }

    /// Squarefree test via gcd with the formal derivative.
    pub fn is_squarefree(&self, a: &MonicPoly) -> bool {
        let d = self.derivative(a);
        if d.is_empty() {
            // a is a p-th power (or constant)
            return a.is_one();
        }
        let d = MonicPoly::from_coeffs_unchecked({
            let lead = *d.last().unwrap();
            let li = self.inv(lead).unwrap();
            d.iter().map(|&c| self.mul(c, li)).collect()
        });
        self.poly_gcd(a, &d).is_one()
    }
}
