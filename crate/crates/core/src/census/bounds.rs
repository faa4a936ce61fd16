//! Main term and the explicit error envelopes
//!
//!   |sum R_k| <= exp(d) 2^(2^e) v n^d U^(v-1)
//!   |T|       <= 3 sum_j rho+_{G'_j} U^v q^(-(1-eps) n)
//!
//! where U = q^n / (q-1) as stated, or U = w(q^n) under [`BoundScaling::W`].
//! Values are carried as natural logarithms, since 2^(2^e) leaves f64 range
//! quickly.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::density::{density_rho, DensityInterval};
use super::{Budgets, CensusError};
use crate::graphpoly::CoprimalityGraph;
use crate::polyfq::{w_count, FieldCtx, MonicPoly};
use crate::real::{BigFloat, Hp};

/// Default epsilon in the T bound.
pub const DEFAULT_T_EPSILON: f64 = 0.25;

/// A nonnegative real stored as its natural logarithm; zero is `-inf`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct LogReal(f64);

impl LogReal {
    pub fn zero() -> Self {
        LogReal(f64::NEG_INFINITY)
    }

    pub fn from_ln(ln: f64) -> Self {
        LogReal(ln)
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// The value itself; `inf` past f64 range.
    pub fn value(self) -> f64 {
        self.0.exp()
    }
}

impl std::ops::Add for LogReal {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        let (a, b) = if self.0 >= other.0 { (self.0, other.0) } else { (other.0, self.0) };
        if b == f64::NEG_INFINITY {
            return LogReal(a);
        }
        LogReal(a + (b - a).exp().ln_1p())
    }
}

impl std::ops::Mul for LogReal {
    type Output = Self;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: Self) -> Self {
        LogReal(self.0 + other.0)
    }
}

/// Scientific notation that survives exponents past f64 range, e.g. `2.718282e0`.
impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let l10 = self.0 / std::f64::consts::LN_10;
        let mut exp = l10.floor();
        let mut mant = 10f64.powf(l10 - exp);
        if mant >= 9.9999995 {
            mant /= 10.0;
            exp += 1.0;
        }
        write!(f, "{mant:.6}e{exp}")
    }
}

/// ln of a big integer without overflowing f64.
pub(crate) fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// How U, the size of a single coordinate's range, enters the bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundScaling {
    /// U = q^n / (q - 1), the literal form of the asymptotic statement.
    Literal,
    /// U = w(q^n), matching the predictor rho * w(q^n)^v.
    W,
}

impl BoundScaling {
    fn ln_unit(self, q: u64, n: i64) -> f64 {
        match self {
            BoundScaling::Literal => n as f64 * (q as f64).ln() - ((q - 1) as f64).ln(),
            BoundScaling::W => ln_biguint(&w_count(q, n)),
        }
    }
}

/// exp(d) 2^(2^e) v n^d U^(v-1).
pub fn error_bound_rk(g: &CoprimalityGraph, q: u64, n: i64, scaling: BoundScaling) -> Result<LogReal, CensusError> {
    if q < 2 {
        return Err(CensusError::BadArgument(format!("q must be at least 2, got {q}")));
    }
    let d = g.max_degree() as f64;
    let e = g.edge_count() as i32;
    let v = g.vertex_count() as f64;
    // n^d with 0^0 = 1
    let ln_nd = if d == 0.0 { 0.0 } else { d * (n.max(0) as f64).ln() };
    let ln = d + 2f64.powi(e) * std::f64::consts::LN_2 + v.ln() + ln_nd + (v - 1.0) * scaling.ln_unit(q, n);
    Ok(LogReal(ln))
}

/// Sum over edges j of the upper end of rho+ for G with edge j removed.
pub(crate) fn rho_plus_sum(g: &CoprimalityGraph, q: u64, budgets: &Budgets) -> Result<f64, CensusError> {
    let mut sum = 0.0;
    for j in 1..=g.edge_count() {
        sum += density_rho(&g.remove_edge(j)?, q, 1e-14, true, budgets)?.hi_f64();
    }
    Ok(sum)
}

pub(crate) fn t_from_sum(v: usize, q: u64, n: i64, eps: f64, rho_plus: f64, scaling: BoundScaling) -> LogReal {
    if rho_plus == 0.0 {
        return LogReal::zero();
    }
    let ln = 3f64.ln() + rho_plus.ln() + v as f64 * scaling.ln_unit(q, n) - (1.0 - eps) * n as f64 * (q as f64).ln();
    LogReal(ln)
}

/// 3 sum_j rho+_{G'_j} U^v q^(-(1-eps) n), using the upper end of each rho+ interval.
pub fn error_bound_t(
    g: &CoprimalityGraph,
    q: u64,
    n: i64,
    eps: f64,
    scaling: BoundScaling,
    budgets: &Budgets,
) -> Result<LogReal, CensusError> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(CensusError::BadArgument(format!("epsilon must lie in (0, 1/2), got {eps}")));
    }
    if q < 2 {
        return Err(CensusError::BadArgument(format!("q must be at least 2, got {q}")));
    }
    let sum = rho_plus_sum(g, q, budgets)?;
    Ok(t_from_sum(g.vertex_count(), q, n, eps, sum, scaling))
}

fn scale_interval(rho: &DensityInterval, factor: &BigUint) -> (BigFloat, BigFloat) {
    let mut hp = Hp::new(256);
    let f = hp.uint(factor);
    (hp.mul(rho.lo(), &f), hp.mul(rho.hi(), &f))
}

/// [rho.lo, rho.hi] * w(q^n)^v: the predictor compared against g(n).
pub fn main_term(v: usize, q: u64, n: i64, rho: &DensityInterval) -> (BigFloat, BigFloat) {
    scale_interval(rho, &w_count(q, n).pow(v as u32))
}

/// The literal form rho q^(nv) / (q-1)^v, kept for diagnostics. On the empty
/// graph it misses w(q^n)^v by roughly a factor q^v.
pub fn literal_main_term(v: usize, q: u64, n: i64, rho: &DensityInterval) -> (BigFloat, BigFloat) {
    let mut hp = Hp::new(256);
    let num = hp.uint(&BigUint::from(q).pow((n.max(0) as u32) * v as u32));
    let den = hp.uint(&BigUint::from(q - 1).pow(v as u32));
    let f = hp.div(&num, &den);
    (hp.mul(rho.lo(), &f), hp.mul(rho.hi(), &f))
}

/// omega(Q) <= 4 (n / ln n) ln q for squarefree Q of degree n >= 2.
pub fn omega_bound_check(ctx: &FieldCtx, a: &MonicPoly) -> Result<bool, CensusError> {
    let n = a.degree();
    if n < 2 {
        return Err(CensusError::BadArgument(format!("degree must be at least 2, got {n}")));
    }
    if !ctx.is_squarefree(a) {
        return Err(CensusError::BadArgument("polynomial is not squarefree".into()));
    }
    let omega = ctx.omega(a)? as f64;
    let nf = n as f64;
    Ok(omega <= 4.0 * (nf / nf.ln()) * (ctx.q() as f64).ln())
}
