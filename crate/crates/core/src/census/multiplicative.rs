//! f_G, f_G+, g_{G,r}, g_{G,r}+ at prime powers P^k, two ways: as a
//! coefficient of the matching graph polynomial, and as the defining sum over
//! edge labelings with every N_a in {1, P} built from real polynomials.

use num_bigint::BigInt;
use num_traits::Zero;

use super::labeling::{associated_vertex_labeling, EdgeLabeling};
use super::{Budgets, CensusError};
use crate::graphpoly::{compute_polynomial, CoprimalityGraph, GraphError, PolyKind};
use crate::polyfq::{FieldCtx, MonicPoly};

/// Vertices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultKind {
    F,
    FPlus,
    G(usize),
    GPlus(usize),
}

impl MultKind {
    pub(crate) fn poly_kind(self) -> PolyKind {
        match self {
            MultKind::F => PolyKind::Signed,
            MultKind::FPlus => PolyKind::Unsigned,
            MultKind::G(r) => PolyKind::Vertex(r),
            MultKind::GPlus(r) => PolyKind::VertexPlus(r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicativeValue {
    pub coefficient: BigInt,
    pub labeling_sum: BigInt,
}

impl MultiplicativeValue {
    pub fn agrees(&self) -> bool {
        self.coefficient == self.labeling_sum
    }
}

/// Labeling sums at P^k for k = 0..=v. `g[r][k]` omits M_r from the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelingSums {
    pub f: Vec<BigInt>,
    pub f_plus: Vec<BigInt>,
    pub g: Vec<Vec<BigInt>>,
    pub g_plus: Vec<Vec<BigInt>>,
}

impl LabelingSums {
    pub fn get(&self, kind: MultKind, k: usize) -> BigInt {
        let row = match kind {
            MultKind::F => &self.f,
            MultKind::FPlus => &self.f_plus,
            MultKind::G(r) => &self.g[r],
            MultKind::GPlus(r) => &self.g_plus[r],
        };
        row.get(k).cloned().unwrap_or_default()
    }
}

/// Every labeling with N_a in {1, P}: M_r from real lcms, the product of the
/// M_r from real multiplication, matched against P^0..P^v.
pub fn labeling_sums(
    ctx: &FieldCtx,
    g: &CoprimalityGraph,
    p: &MonicPoly,
    budgets: &Budgets,
) -> Result<LabelingSums, CensusError> {
    let v = g.vertex_count();
    let e = g.edge_count();
    if e > 62 || (1u64 << e) > budgets.subsets {
        return Err(GraphError::SubsetBudget { e, budget: budgets.subsets }.into());
    }
    let mu_p = ctx.mobius(p)?;
    let powers: Vec<MonicPoly> = (0..=v as u32).map(|k| ctx.poly_pow(p, k)).collect();
    let which = |a: &MonicPoly| powers.iter().position(|pk| pk == a);
    let zero = || vec![BigInt::zero(); v + 1];
    let mut out = LabelingSums { f: zero(), f_plus: zero(), g: vec![zero(); v], g_plus: vec![zero(); v] };

    for mask in 0..1u64 << e {
        let polys = (0..e).map(|a| if mask >> a & 1 == 1 { p.clone() } else { MonicPoly::one() }).collect();
        let labels = EdgeLabeling { polys };
        let m = associated_vertex_labeling(ctx, g, &labels)?.polys;
        let mu: i32 = (0..e).map(|a| if mask >> a & 1 == 1 { mu_p } else { 1 }).product();
        let (sign, abs) = (BigInt::from(mu), BigInt::from(mu.abs()));
        let all = m.iter().fold(MonicPoly::one(), |acc, x| ctx.poly_mul(&acc, x));
        if let Some(k) = which(&all) {
            out.f[k] += &sign;
            out.f_plus[k] += &abs;
        }
        for r in 0..v {
            let rest = m
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != r)
                .fold(MonicPoly::one(), |acc, (_, x)| ctx.poly_mul(&acc, x));
            if let Some(k) = which(&rest) {
                out.g[r][k] += &sign;
                out.g_plus[r][k] += &abs;
            }
        }
    }
    Ok(out)
}

/// The value at P^k for the first irreducible P of degree `prime_degree`.
pub fn multiplicative_f_eval(
    ctx: &FieldCtx,
    kind: MultKind,
    g: &CoprimalityGraph,
    prime_degree: usize,
    k: usize,
    budgets: &Budgets,
) -> Result<MultiplicativeValue, CensusError> {
    if let MultKind::G(r) | MultKind::GPlus(r) = kind {
        if r >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange { vertex: r + 1, v: g.vertex_count() }.into());
        }
    }
    if prime_degree == 0 {
        return Err(CensusError::BadArgument("prime degree must be at least 1".into()));
    }
    let poly = compute_polynomial(g, kind.poly_kind(), budgets.poly_options())?;
    let p = ctx.enumerate_irreducibles(prime_degree)?[0].clone();
    let sums = labeling_sums(ctx, g, &p, budgets)?;
    Ok(MultiplicativeValue { coefficient: poly.coeff(k), labeling_sum: sums.get(kind, k) })
}
