//! Thin helpers over `astro_float` for the high-precision paths.

use astro_float::{Consts, Radix};
use num_bigint::{BigInt, BigUint};

pub use astro_float::{BigFloat, RoundingMode};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// A working precision plus the constant cache `astro_float` needs for ln/exp.
pub struct Hp {
    prec: usize,
    cc: Consts,
}

impl Hp {
    pub fn new(prec: usize) -> Self {
        Self { prec: prec.max(64), cc: Consts::new().expect("astro-float constant cache") }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn uint(&mut self, n: &BigUint) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, self.prec, RM, &mut self.cc)
    }

    pub fn int(&mut self, n: &BigInt) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, self.prec, RM, &mut self.cc)
    }

    pub fn small(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.prec)
    }

    pub fn f64(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.prec)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.prec, RM)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, RM, &mut self.cc)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, RM, &mut self.cc)
    }

    /// Decimal scientific form, e.g. `5.0e-1`; `None` for NaN.
    pub fn decimal(&mut self, a: &BigFloat) -> Option<String> {
        if a.is_zero() {
            return Some("0".into());
        }
        a.format(Radix::Dec, RM, &mut self.cc).ok()
    }
}

/// Nearest f64, through the decimal form (astro-float has no direct conversion).
pub fn to_f64(a: &BigFloat) -> f64 {
    if a.is_nan() {
        return f64::NAN;
    }
    if a.is_inf_pos() {
        return f64::INFINITY;
    }
    if a.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if a.is_zero() {
        return 0.0;
    }
    let mut cc = Consts::new().expect("astro-float constant cache");
    a.format(Radix::Dec, RM, &mut cc).ok().and_then(|s| s.parse::<f64>().ok()).unwrap_or(f64::NAN)
}

/// Greater-or-equal that treats NaN as false.
pub(crate) fn ge(a: &BigFloat, b: &BigFloat) -> bool {
    a.cmp(b).is_some_and(|c| c >= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let mut hp = Hp::new(128);
        let big = hp.uint(&BigUint::from(10u32).pow(30));
        assert_eq!(to_f64(&big), 1e30);
        let third = hp.div(&hp.small(1), &hp.small(3));
        assert!((to_f64(&third) - 1.0 / 3.0).abs() < 1e-16);
        let e = hp.exp(&hp.small(1));
        assert!((to_f64(&e) - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(hp.decimal(&hp.small(0)).unwrap(), "0");
        assert!(ge(&e, &third) && !ge(&third, &e));
        let neg = hp.int(&BigInt::from(-7));
        assert_eq!(to_f64(&neg), -7.0);
    }
}
