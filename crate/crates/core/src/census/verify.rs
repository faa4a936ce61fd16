//! Self-checks behind `coprime-census verify`: oracle equivalence, agreement
//! of the multiplicative functions with graph-polynomial coefficients, density
//! closed forms, the omega bound, and the normalization law.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{main_term, omega_bound_check};
use super::brute::brute_force_count;
use super::density::density_rho;
use super::incl_excl::{inclusion_exclusion_count, inclusion_exclusion_count_with_fault};
use super::multiplicative::{labeling_sums, MultKind};
use super::{Budgets, CensusError};
use crate::graphpoly::{compute_polynomial, CoprimalityGraph};
use crate::polyfq::{w_count, EnumMode, FieldCtx};
use crate::real::to_f64;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_vertices: usize,
    pub qs: Vec<u64>,
    pub ns: Vec<i64>,
    pub budgets: Budgets,
    /// Use the inclusion-exclusion variant with one Moebius sign flipped.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_vertices: 4,
            qs: vec![2, 3, 4],
            ns: vec![1, 2],
            budgets: Budgets { ie_labelings: 1 << 30, ..Budgets::default() },
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub instances: u64,
    pub passed: bool,
    /// First failing instance, smallest graphs first.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{:<28} {:>10}  {}\n", "check", "instances", "result");
        for c in &self.checks {
            s += &format!("{:<28} {:>10}  {}\n", c.name, c.instances, if c.passed { "pass" } else { "FAIL" });
            if let Some(ce) = &c.counterexample {
                s += &format!("  counterexample: {ce}\n");
            }
        }
        s
    }
}

/// All 2^(v(v-1)/2) labeled graphs on v vertices, by edge count then edge mask.
pub fn labeled_graphs(v: usize) -> Vec<CoprimalityGraph> {
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|r| (r + 1..v).map(move |s| (r, s))).collect();
    let mut masks: Vec<u64> = (0..1u64 << pairs.len()).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|m| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, p)| *p).collect();
            CoprimalityGraph::from_zero_based(v, &edges).expect("valid graph")
        })
        .collect()
}

fn all_small_graphs(max_v: usize) -> Vec<CoprimalityGraph> {
    (1..=max_v).flat_map(labeled_graphs).collect()
}

/// Runs `f` on every instance in parallel; the reported failure is the first in order.
fn run_check<T: Sync>(
    name: &str,
    items: &[T],
    f: impl Fn(&T) -> Result<Option<String>, CensusError> + Sync,
) -> CheckResult {
    let fail =
        items.par_iter().map(|it| f(it).unwrap_or_else(|e| Some(format!("error: {e}")))).find_first(Option::is_some);
    CheckResult {
        name: name.into(),
        instances: items.len() as u64,
        passed: fail.is_none(),
        counterexample: fail.flatten(),
    }
}

fn fields(qs: &[u64]) -> Result<Vec<FieldCtx>, CensusError> {
    qs.iter().map(|&q| FieldCtx::from_order(q).map_err(Into::into)).collect()
}

pub fn oracle_equivalence(opts: &VerifyOptions) -> Result<CheckResult, CensusError> {
    let ctxs = fields(&opts.qs)?;
    let mut items = Vec::new();
    for g in all_small_graphs(opts.max_vertices) {
        for ctx in &ctxs {
            for &n in &opts.ns {
                items.push((g.clone(), ctx, n));
            }
        }
    }
    Ok(run_check("oracle equivalence", &items, |(g, ctx, n)| {
        let ie = if opts.inject_fault {
            inclusion_exclusion_count_with_fault(g, ctx, *n, &opts.budgets)?
        } else {
            inclusion_exclusion_count(g, ctx, *n, &opts.budgets)?
        };
        let brute = brute_force_count(g, ctx, *n, &opts.budgets)?;
        Ok((ie != brute).then(|| format!("graph {g}, q={}, n={n}: ie={ie}, brute={brute}", ctx.q())))
    }))
}

pub fn multiplicative_agreement(opts: &VerifyOptions) -> Result<CheckResult, CensusError> {
    let ctxs = fields(&opts.qs)?;
    let mut items = Vec::new();
    for g in all_small_graphs(opts.max_vertices) {
        for ctx in &ctxs {
            items.push((g.clone(), ctx));
        }
    }
    let poly_opts = opts.budgets.poly_options();
    Ok(run_check("multiplicative agreement", &items, |(g, ctx)| {
        let p = ctx.enumerate_irreducibles(1)?[0].clone();
        let sums = labeling_sums(ctx, g, &p, &opts.budgets)?;
        let v = g.vertex_count();
        let mut kinds = vec![MultKind::F, MultKind::FPlus];
        kinds.extend((0..v).flat_map(|r| [MultKind::G(r), MultKind::GPlus(r)]));
        for kind in kinds {
            let poly = compute_polynomial(g, kind.poly_kind(), poly_opts)?;
            for k in 0..=v {
                if poly.coeff(k) != sums.get(kind, k) {
                    return Ok(Some(format!(
                        "graph {g}, q={}, {kind:?}, k={k}: coefficient {} vs labeling sum {}",
                        ctx.q(),
                        poly.coeff(k),
                        sums.get(kind, k)
                    )));
                }
            }
        }
        Ok(None)
    }))
}

pub fn density_closed_forms(opts: &VerifyOptions) -> Result<CheckResult, CensusError> {
    let k2 = CoprimalityGraph::complete(2)?;
    let single = CoprimalityGraph::new(3, &[(2, 3)])?;
    let empty = CoprimalityGraph::empty(opts.max_vertices.max(1))?;
    Ok(run_check("density closed forms", &opts.qs, |&q| {
        let qf = q as f64;
        let rho = density_rho(&k2, q, 1e-9, false, &opts.budgets)?;
        if !rho.contains(1.0 - 1.0 / qf) || rho.width_f64() > 1e-9 {
            return Ok(Some(format!("K2, q={q}: {:?} misses {}", rho.decimal_bounds(), 1.0 - 1.0 / qf)));
        }
        let plus = (1.0 - qf.powi(-3)) / (1.0 - 1.0 / qf);
        for g in [&k2, &single] {
            let rp = density_rho(g, q, 1e-9, true, &opts.budgets)?;
            if (rp.mid_f64() - plus).abs() > 1e-8 {
                return Ok(Some(format!("rho+ of {g}, q={q}: {:?} misses {plus}", rp.decimal_bounds())));
            }
        }
        let one = density_rho(&empty, q, 1e-9, false, &opts.budgets)?;
        Ok((!one.contains(1.0)).then(|| format!("empty graph, q={q}: {:?}", one.decimal_bounds())))
    }))
}

/// Exhaustive over squarefree polynomials of degree 2.. up to q^d <= 4096.
pub fn omega_bound(opts: &VerifyOptions) -> Result<CheckResult, CensusError> {
    let ctxs = fields(&opts.qs)?;
    let mut items = Vec::new();
    for ctx in &ctxs {
        let q = ctx.q() as u64;
        let mut d = 2;
        while q.pow(d as u32) <= 4096 {
            items.push((ctx, d));
            d += 1;
        }
    }
    let mut res = run_check("omega bound", &items, |(ctx, d)| {
        for a in ctx.enumerate_monic(*d, EnumMode::Exactly)?.iter() {
            if ctx.is_squarefree(&a) && !omega_bound_check(ctx, &a)? {
                return Ok(Some(format!("q={}: {}", ctx.q(), ctx.render_poly(&a))));
            }
        }
        Ok(None)
    });
    res.instances = items.iter().map(|(ctx, d)| (ctx.q() as u64).pow(*d as u32)).sum();
    Ok(res)
}

/// Empty graphs: g(n) = w(q^n)^v from both counters and from the predictor.
pub fn normalization_law(opts: &VerifyOptions) -> Result<CheckResult, CensusError> {
    let ctxs = fields(&opts.qs)?;
    let mut items = Vec::new();
    for v in 1..=opts.max_vertices {
        for ctx in &ctxs {
            for n in 0..=3 {
                items.push((v, ctx, n));
            }
        }
    }
    Ok(run_check("normalization law", &items, |&(v, ctx, n)| {
        let q = ctx.q() as u64;
        let g = CoprimalityGraph::empty(v)?;
        let expect: BigUint = w_count(q, n).pow(v as u32);
        let brute = brute_force_count(&g, ctx, n, &opts.budgets)?;
        let ie = inclusion_exclusion_count(&g, ctx, n, &opts.budgets)?;
        let rho = density_rho(&g, q, 1e-9, false, &opts.budgets)?;
        let (lo, hi) = main_term(v, q, n, &rho);
        let exact = expect.to_string().parse::<f64>().unwrap_or(f64::NAN);
        let ok = brute == expect && ie == expect && to_f64(&lo) == exact && to_f64(&hi) == exact;
        Ok((!ok).then(|| format!("empty v={v}, q={q}, n={n}: brute={brute}, ie={ie}, expected {expect}")))
    }))
}

pub fn run_verify(opts: &VerifyOptions) -> Result<VerifyReport, CensusError> {
    if opts.max_vertices == 0 || opts.max_vertices > 6 {
        return Err(CensusError::BadArgument(format!("max vertices must be 1..=6, got {}", opts.max_vertices)));
    }
    if opts.qs.is_empty() {
        return Err(CensusError::BadArgument("no field orders given".into()));
    }
    Ok(VerifyReport {
        checks: vec![
            oracle_equivalence(opts)?,
            multiplicative_agreement(opts)?,
            density_closed_forms(opts)?,
            omega_bound(opts)?,
            normalization_law(opts)?,
        ],
    })
}
