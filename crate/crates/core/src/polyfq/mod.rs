//! Arithmetic in F_q and F_q[z]: field contexts, monic polynomials, gcd/lcm,
//! factorization, Möbius and ω, enumeration, and the counts `r_q(n)` and `w(q^m)`.

mod counting;
mod enumerate;
mod field;
mod format;
mod poly;

pub use counting::{count_irreducibles, integer_mobius, w_count, Factorization};
pub use enumerate::{monic_count_up_to, EnumMode, MonicEnumeration, MonicIter};
pub use field::{prime_power_parts, Elem, FieldCtx, DEFAULT_IRREDUCIBLE_BUDGET, MAX_CACHED_DEGREE, MAX_FIELD_ORDER};
pub use poly::MonicPoly;

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field exponent must be at least 1, got {0}")]
    BadExponent(u32),
    #[error("field of order {p}^{k} exceeds the supported maximum {max}")]
    FieldTooLarge { p: u32, k: u32, max: u32 },
    #[error("tables for {p}^{k} do not form a field")]
    NotAField { p: u32, k: u32 },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("coefficient {elem} is not an element of F_{q}")]
    BadElement { elem: u32, q: u32 },
    #[error("enumerating monic polynomials of degree {n} over F_{q} overflows the index range")]
    EnumerationTooLarge { q: u32, n: i64 },
    #[error("irreducibles of degree {degree} over F_{q} exceed the enumeration budget {budget}")]
    IrreducibleBudget { q: u32, degree: usize, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}
