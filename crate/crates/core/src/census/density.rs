//! rho_{G,q} = prod over irreducible P of Q_G(q^-deg P), grouped by degree:
//! prod_d Q_G(q^-d)^(r_q(d)).
//!
//! The first D factors are multiplied in log space. For the rest, write
//! C = sum_{i>=2} |B_i| over the coefficients of Q_G (B_1 = 0). With t = q^-d,
//! |Q_G(t) - 1| <= C t^2, and once C q^(-2(D+1)) <= 1/2,
//!
//!   |ln Q_G(q^-d)| <= K C q^(-2d),   K = 1 / (1 - C q^(-2(D+1))),   d > D.
//!
//! With r_q(d) <= q^d / d <= q^d / (D+1) the geometric tail sums to
//!
//!   tail(D) = K C q^(-D) / ((D+1)(q-1)),
//!
//! and the product lies in [exp(L - tail), exp(L + tail)] for the partial log
//! sum L. Rounding in L is bounded separately and widens the interval further.

use num_bigint::BigUint;
use num_traits::One;

use super::{Budgets, CensusError};
use crate::graphpoly::{compute_polynomial, CoprimalityGraph, PolyKind};
use crate::polyfq::{count_irreducibles, prime_power_parts};
use crate::real::{ge, to_f64, BigFloat, Hp};

/// Give up if the truncation degree needed for the requested width exceeds this.
pub const MAX_TRUNCATION_DEGREE: usize = 512;

/// A rigorous enclosure [lo, hi] of an Euler product truncated at degree D.
#[derive(Clone, Debug)]
pub struct DensityInterval {
    lo: BigFloat,
    hi: BigFloat,
    truncation_degree: usize,
    plus: bool,
}

impl DensityInterval {
    fn exactly_one(plus: bool) -> Self {
        let one = BigFloat::from_u64(1, 64);
        Self { lo: one.clone(), hi: one, truncation_degree: 0, plus }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    pub fn truncation_degree(&self) -> usize {
        self.truncation_degree
    }

    /// True for rho+.
    pub fn is_plus(&self) -> bool {
        self.plus
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo_f64() + self.hi_f64())
    }

    pub fn width_f64(&self) -> f64 {
        let p = self.lo.precision().unwrap_or(64).max(self.hi.precision().unwrap_or(64));
        to_f64(&self.hi.sub(&self.lo, p, crate::real::RM))
    }

    /// Exact comparison of `x` against both endpoints.
    pub fn contains(&self, x: f64) -> bool {
        let x = BigFloat::from_f64(x, 64);
        ge(&x, &self.lo) && ge(&self.hi, &x)
    }

    /// Endpoints in decimal scientific notation.
    pub fn decimal_bounds(&self) -> (String, String) {
        let mut hp = Hp::new(64);
        (hp.decimal(&self.lo).unwrap_or_default(), hp.decimal(&self.hi).unwrap_or_default())
    }
}

/// rho_{G,q} (or rho+ with `want_plus`) to interval width at most `eps`.
pub fn density_rho(
    g: &CoprimalityGraph,
    q: u64,
    eps: f64,
    want_plus: bool,
    budgets: &Budgets,
) -> Result<DensityInterval, CensusError> {
    if prime_power_parts(q).is_none() {
        return Err(CensusError::BadArgument(format!("{q} is not a prime power")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(CensusError::BadArgument(format!("target width must be positive, got {eps}")));
    }
    let kind = if want_plus { PolyKind::Unsigned } else { PolyKind::Signed };
    let poly = compute_polynomial(g, kind, budgets.poly_options())?;
    if poly.degree() == 0 {
        return Ok(DensityInterval::exactly_one(want_plus));
    }
    let c_int = poly.abs_sum_from(2).to_biguint().expect("absolute sum");
    let qb = BigUint::from(q);

    // smallest D0 with 2C <= q^(2(D0+1))
    let mut d0 = 1usize;
    while BigUint::from(2u32) * &c_int > qb.pow(2 * (d0 as u32 + 1)) {
        d0 += 1;
    }
    // precision: the partial sum must resolve r_q(d) * 2^-p well below eps out to
    // the expected truncation degree
    let lq = (q as f64).log2();
    let c_f = to_f64_big(&c_int);
    let d_est = ((c_f.log2() + 4.0 - eps.log2()) / lq).ceil().max(d0 as f64) as usize;
    let prec = 192 + ((d_est + 16) as f64 * lq).ceil() as usize;
    let mut hp = Hp::new(prec);
    let deg = poly.degree();

    let one = hp.small(1);
    let u = hp.powi(&hp.f64(0.5), hp.prec());
    let c = hp.uint(&c_int);
    let qf = hp.uint(&qb);
    let q_minus_1 = hp.small(q as i64 - 1);
    let slack_factor = hp.small(4 * (deg as i64 + 1));

    let mut log_sum = hp.small(0);
    let mut abs_sum = hp.small(0);
    let mut err = hp.small(0);
    let mut q_pow = one.clone();
    for d in 1..=MAX_TRUNCATION_DEGREE {
        q_pow = hp.mul(&q_pow, &qf);
        let t = hp.div(&one, &q_pow);
        let x = poly.eval_real(&t, &mut hp);
        if !x.is_positive() {
            return Err(CensusError::NonpositiveFactor { degree: d, value: hp.decimal(&x).unwrap_or_default() });
        }
        let r = hp.uint(&count_irreducibles(q, d as u32));
        let lnx = hp.ln(&x);
        let term = hp.mul(&r, &lnx);
        log_sum = hp.add(&log_sum, &term);
        abs_sum = hp.add(&abs_sum, &term.abs());

        // Horner error <= 4(deg+1) u (1 + C t^2), relative to x; ln and the
        // rounding of r, ln and the product add at most 4u |ln x|
        let qabs = hp.add(&one, &hp.mul(&c, &hp.mul(&t, &t)));
        let horner = hp.div(&hp.mul(&slack_factor, &hp.mul(&u, &qabs)), &x);
        let local = hp.add(&horner, &hp.mul(&hp.small(4), &hp.mul(&u, &lnx.abs())));
        err = hp.add(&err, &hp.mul(&r, &local));

        if d < d0 {
            continue;
        }
        // tail(D) = K C q^-D / ((D+1)(q-1)), K = 1/(1 - C q^(-2(D+1)))
        let t_next = hp.div(&t, &qf);
        let k = hp.div(&one, &hp.sub(&one, &hp.mul(&c, &hp.mul(&t_next, &t_next))));
        let tail = hp.div(&hp.mul(&k, &hp.mul(&c, &t)), &hp.mul(&hp.small(d as i64 + 1), &q_minus_1));
        // accumulation error of the running sum and of exp's argument
        let accum = hp.mul(&hp.small(d as i64 + 2), &hp.mul(&u, &abs_sum));
        let spread = hp.mul(&hp.add(&tail, &hp.add(&err, &accum)), &hp.f64(1.0 + 1e-6));
        let guard = hp.mul(&hp.small(16), &u);
        let (lo_arg, hi_arg) = (hp.sub(&log_sum, &spread), hp.add(&log_sum, &spread));
        let (lo_exp, hi_exp) = (hp.exp(&lo_arg), hp.exp(&hi_arg));
        let lo = hp.mul(&lo_exp, &hp.sub(&one, &guard));
        let hi = hp.mul(&hi_exp, &hp.add(&one, &guard));
        if to_f64(&hp.sub(&hi, &lo)) <= eps {
            return Ok(DensityInterval { lo, hi, truncation_degree: d, plus: want_plus });
        }
    }
    Err(CensusError::PrecisionBudget { eps, max_degree: MAX_TRUNCATION_DEGREE })
}

fn to_f64_big(n: &BigUint) -> f64 {
    if n.is_one() {
        return 1.0;
    }
    n.to_string().parse().unwrap_or(f64::MAX)
}
