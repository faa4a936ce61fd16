use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::graph::CoprimalityGraph;
use super::GraphError;
use crate::real::{BigFloat, Hp};

/// Default ceiling on the number of edge subsets visited (2^24).
pub const DEFAULT_SUBSET_BUDGET: u64 = 1 << 24;

/// Which of the edge-subset polynomials. Vertices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyKind {
    /// Q_G: sum over F of (-1)^|F| z^|v(F)|.
    Signed,
    /// Q_G+: sum over F of z^|v(F)|.
    Unsigned,
    /// Q_{G,r}: signed, vertex r not counted in the exponent.
    Vertex(usize),
    /// Q_{G,r}+.
    VertexPlus(usize),
    /// Q_{r,s}: unsigned, r and s not counted; {r,s} must not be an edge.
    Pair(usize, usize),
}

impl PolyKind {
    fn signed(self) -> bool {
        matches!(self, PolyKind::Signed | PolyKind::Vertex(_))
    }

    /// Short name with 1-based vertices, e.g. `Q_G+` or `Q_1,3`.
    pub fn label(self) -> String {
        match self {
            PolyKind::Signed => "Q_G".into(),
            PolyKind::Unsigned => "Q_G+".into(),
            PolyKind::Vertex(r) => format!("Q_G,{}", r + 1),
            PolyKind::VertexPlus(r) => format!("Q_G,{}+", r + 1),
            PolyKind::Pair(r, s) => format!("Q_{},{}", r + 1, s + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SubsetMethod {
    /// Recompute v(F) from scratch for every subset. Reference path.
    Direct,
    /// Gray-code walk keeping per-vertex cover counts, split over high bits.
    #[default]
    GrayCode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyOptions {
    pub method: SubsetMethod,
    pub budget: u64,
}

impl Default for PolyOptions {
    fn default() -> Self {
        Self { method: SubsetMethod::GrayCode, budget: DEFAULT_SUBSET_BUDGET }
    }
}

/// Integer polynomial in z; `coeffs[i]` is the coefficient of z^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPolynomial {
    kind: PolyKind,
    coeffs: Vec<BigInt>,
}

impl GraphPolynomial {
    /// Trailing zero coefficients are dropped.
    pub fn new(kind: PolyKind, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { kind, coeffs }
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of z^i, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Sum of |B_i| for i >= from.
    pub fn abs_sum_from(&self, from: usize) -> BigInt {
        self.coeffs.iter().skip(from).map(|c| c.abs()).sum()
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + f64_of(c))
    }

    /// Horner evaluation at the working precision of `hp`.
    pub fn eval_real(&self, x: &BigFloat, hp: &mut Hp) -> BigFloat {
        let mut acc = hp.small(0);
        for c in self.coeffs.iter().rev() {
            let c = hp.int(c);
            acc = hp.add(&hp.mul(&acc, x), &c);
        }
        acc
    }
}

fn f64_of(c: &BigInt) -> f64 {
    c.to_string().parse().unwrap_or(f64::NAN)
}

/// `1 - 2*z^2 + z^3`
impl fmt::Display for GraphPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && !(i == 0 && self.coeffs.len() == 1) {
                continue;
            }
            let mag = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            let body = if i == 0 {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (first, c.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Signed and unsigned counts of subsets F by |v(F) \ excluded|.
struct Histogram {
    signed: Vec<i64>,
    unsigned: Vec<i64>,
}

impl Histogram {
    fn new(v: usize) -> Self {
        Self { signed: vec![0; v + 1], unsigned: vec![0; v + 1] }
    }

    #[inline]
    fn record(&mut self, k: usize, odd: bool) {
        self.unsigned[k] += 1;
        self.signed[k] += if odd { -1 } else { 1 };
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.signed.iter_mut().zip(other.signed) {
            *a += b;
        }
        for (a, b) in self.unsigned.iter_mut().zip(other.unsigned) {
            *a += b;
        }
        self
    }
}

fn check_budget(e: usize, budget: u64) -> Result<(), GraphError> {
    if e > 62 || (1u64 << e) > budget {
        return Err(GraphError::SubsetBudget { e, budget });
    }
    Ok(())
}

fn histogram_direct(g: &CoprimalityGraph, excluded: u64) -> Histogram {
    let mut h = Histogram::new(g.vertex_count());
    for f in 0..1u64 << g.edge_count() {
        let k = (g.vertex_span(f) & !excluded).count_ones() as usize;
        h.record(k, f.count_ones() % 2 == 1);
    }
    h
}

struct Walker<'a> {
    g: &'a CoprimalityGraph,
    cover: [u8; 64],
    covered: u64,
}

impl Walker<'_> {
    fn toggle(&mut self, j: usize, on: bool) {
        let (r, s) = self.g.edges()[j];
        for x in [r, s] {
            if on {
                self.cover[x] += 1;
                self.covered |= 1 << x;
            } else {
                self.cover[x] -= 1;
                if self.cover[x] == 0 {
                    self.covered &= !(1 << x);
                }
            }
        }
    }
}

fn histogram_gray(g: &CoprimalityGraph, excluded: u64) -> Histogram {
    let e = g.edge_count();
    let high = if e >= 14 { (e - 8).min(6) } else { 0 };
    let low = e - high;
    (0..1u64 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut h = Histogram::new(g.vertex_count());
            let mut w = Walker { g, cover: [0; 64], covered: 0 };
            for b in 0..high {
                if prefix >> b & 1 == 1 {
                    w.toggle(low + b, true);
                }
            }
            let mut odd = prefix.count_ones() % 2 == 1;
            let mut cur = 0u64;
            h.record((w.covered & !excluded).count_ones() as usize, odd);
            for i in 1..1u64 << low {
                let j = i.trailing_zeros() as usize;
                cur ^= 1 << j;
                w.toggle(j, cur >> j & 1 == 1);
                odd = !odd;
                h.record((w.covered & !excluded).count_ones() as usize, odd);
            }
            h
        })
        .reduce(|| Histogram::new(g.vertex_count()), Histogram::merge)
}

fn check_vertex(g: &CoprimalityGraph, r: usize) -> Result<(), GraphError> {
    if r >= g.vertex_count() {
        return Err(GraphError::VertexOutOfRange { vertex: r + 1, v: g.vertex_count() });
    }
    Ok(())
}

/// Computes one of the edge-subset polynomials by visiting all 2^e subsets.
pub fn compute_polynomial(
    g: &CoprimalityGraph,
    kind: PolyKind,
    opts: PolyOptions,
) -> Result<GraphPolynomial, GraphError> {
    let excluded = match kind {
        PolyKind::Signed | PolyKind::Unsigned => 0,
        PolyKind::Vertex(r) | PolyKind::VertexPlus(r) => {
            check_vertex(g, r)?;
            1u64 << r
        }
        PolyKind::Pair(r, s) => {
            check_vertex(g, r)?;
            check_vertex(g, s)?;
            if r == s {
                return Err(GraphError::PairNotDistinct(r + 1));
            }
            if g.has_edge(r, s) {
                return Err(GraphError::PairIsEdge(r + 1, s + 1));
            }
            (1u64 << r) | (1u64 << s)
        }
    };
    check_budget(g.edge_count(), opts.budget)?;
    let h = match opts.method {
        SubsetMethod::Direct => histogram_direct(g, excluded),
        SubsetMethod::GrayCode => histogram_gray(g, excluded),
    };
    let counts = if kind.signed() { h.signed } else { h.unsigned };
    Ok(GraphPolynomial::new(kind, counts.into_iter().map(BigInt::from).collect()))
}

pub fn q_g(g: &CoprimalityGraph) -> Result<GraphPolynomial, GraphError> {
    compute_polynomial(g, PolyKind::Signed, PolyOptions::default())
}

pub fn q_g_plus(g: &CoprimalityGraph) -> Result<GraphPolynomial, GraphError> {
    compute_polynomial(g, PolyKind::Unsigned, PolyOptions::default())
}

pub fn q_g_r(g: &CoprimalityGraph, r: usize) -> Result<GraphPolynomial, GraphError> {
    compute_polynomial(g, PolyKind::Vertex(r), PolyOptions::default())
}

pub fn q_g_r_plus(g: &CoprimalityGraph, r: usize) -> Result<GraphPolynomial, GraphError> {
    compute_polynomial(g, PolyKind::VertexPlus(r), PolyOptions::default())
}

pub fn q_rs(g: &CoprimalityGraph, r: usize, s: usize) -> Result<GraphPolynomial, GraphError> {
    compute_polynomial(g, PolyKind::Pair(r, s), PolyOptions::default())
}
