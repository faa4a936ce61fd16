//! Per-n convergence tables, with JSON and CSV forms.
//!
//! The predictor is rho * w(q^n)^v, where w(q^n) is the number of monic
//! polynomials of degree at most n. The literal asymptotic main term
//! rho * q^(nv) / (q-1)^v is reported alongside as `literal_predictor`; its ratio
//! to the predictor tends to q^-v, which the empty graph shows exactly.
//!
//! CSV columns, in order (see [`CSV_COLUMNS`]):
//! n, backend, g_n, total, empirical_density, rho_lo, rho_hi, rho_D, predictor,
//! residual, literal_predictor, literal_ratio, bound_rk, bound_t, bound_rk_w,
//! bound_t_w, mc_stderr, seed, samples, workers, error.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::bounds::{error_bound_rk, ln_biguint, rho_plus_sum, t_from_sum, BoundScaling, DEFAULT_T_EPSILON};
use super::brute::{brute_force_count, total_tuples};
use super::density::{density_rho, DensityInterval};
use super::incl_excl::{inclusion_exclusion_count, squarefree_label_count};
use super::montecarlo::monte_carlo_density;
use super::{Budgets, CensusError};
use crate::graphpoly::CoprimalityGraph;
use crate::polyfq::FieldCtx;

pub const CSV_COLUMNS: [&str; 21] = [
    "n",
    "backend",
    "g_n",
    "total",
    "empirical_density",
    "rho_lo",
    "rho_hi",
    "rho_D",
    "predictor",
    "residual",
    "literal_predictor",
    "literal_ratio",
    "bound_rk",
    "bound_t",
    "bound_rk_w",
    "bound_t_w",
    "mc_stderr",
    "seed",
    "samples",
    "workers",
    "error",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Brute,
    #[serde(rename = "ie")]
    InclusionExclusion,
    Auto,
    MonteCarlo,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Brute => "brute",
            Backend::InclusionExclusion => "ie",
            Backend::Auto => "auto",
            Backend::MonteCarlo => "montecarlo",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub backend: Backend,
    pub budgets: Budgets,
    /// Target width of the rho interval.
    pub eps: f64,
    /// Epsilon in the T bound.
    pub t_epsilon: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            backend: Backend::Auto,
            budgets: Budgets::default(),
            eps: 1e-12,
            t_epsilon: DEFAULT_T_EPSILON,
            samples: 100_000,
            seed: 0,
            workers: 1,
        }
    }
}

/// `{lo, hi, D}` with the endpoints as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoJson {
    pub lo: String,
    pub hi: String,
    #[serde(rename = "D")]
    pub d: usize,
}

impl From<&DensityInterval> for RhoJson {
    fn from(r: &DensityInterval) -> Self {
        let (lo, hi) = r.decimal_bounds();
        RhoJson { lo, hi, d: r.truncation_degree() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: i64,
    /// Backend that produced the row; `montecarlo` rows carry an estimate only.
    pub backend: String,
    pub g_n: Option<String>,
    pub total: String,
    pub empirical_density: Option<f64>,
    pub rho: Option<RhoJson>,
    /// rho_mid * w(q^n)^v
    pub predictor: Option<f64>,
    /// |empirical_density - rho_mid|
    pub residual: Option<f64>,
    /// rho_mid * q^(nv) / (q-1)^v
    pub literal_predictor: Option<f64>,
    /// literal_predictor / predictor
    pub literal_ratio: f64,
    pub bound_rk: String,
    pub bound_t: String,
    pub bound_rk_w: String,
    pub bound_t_w: String,
    pub mc_stderr: Option<f64>,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub workers: Option<usize>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub graph: String,
    pub q: u64,
    pub field: String,
    pub eps: f64,
    pub t_epsilon: f64,
    pub rho: Option<RhoJson>,
    pub rho_error: Option<String>,
    pub notes: Vec<String>,
    pub rows: Vec<CensusRow>,
}

const NOTES: [&str; 2] = [
    "total = w(q^n)^v where w(q^n) = (q^(n+1)-1)/(q-1) counts monic polynomials of degree <= n; the form ((q^n-1)/(q-1))^v undercounts",
    "predictor = rho * w(q^n)^v; literal_predictor = rho * q^(nv)/(q-1)^v misses the empty-graph count by a factor near q^v (literal_ratio)",
];

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let (lo, hi, d) = match &r.rho {
                Some(rho) => (rho.lo.clone(), rho.hi.clone(), rho.d.to_string()),
                None => Default::default(),
            };
            w.write_record([
                r.n.to_string(),
                r.backend.clone(),
                r.g_n.clone().unwrap_or_default(),
                r.total.clone(),
                opt(r.empirical_density),
                lo,
                hi,
                d,
                opt(r.predictor),
                opt(r.residual),
                opt(r.literal_predictor),
                r.literal_ratio.to_string(),
                r.bound_rk.clone(),
                r.bound_t.clone(),
                r.bound_rk_w.clone(),
                r.bound_t_w.clone(),
                opt(r.mc_stderr),
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
                r.samples.map(|s| s.to_string()).unwrap_or_default(),
                r.workers.map(|s| s.to_string()).unwrap_or_default(),
                r.error.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

enum Count {
    Exact(BigUint, &'static str),
    Estimate(super::MonteCarloEstimate),
}

fn run_backend(g: &CoprimalityGraph, ctx: &FieldCtx, n: i64, opts: &SweepOptions) -> Result<Count, CensusError> {
    let mc = || monte_carlo_density(g, ctx, n, opts.samples, opts.seed, opts.workers).map(Count::Estimate);
    match opts.backend {
        Backend::Brute => brute_force_count(g, ctx, n, &opts.budgets).map(|c| Count::Exact(c, "brute")),
        Backend::InclusionExclusion => {
            inclusion_exclusion_count(g, ctx, n, &opts.budgets).map(|c| Count::Exact(c, "ie"))
        }
        Backend::MonteCarlo => mc(),
        Backend::Auto => {
            let cost = squarefree_label_count(ctx.q() as u64, n).pow(g.edge_count() as u32);
            if cost <= BigUint::from(opts.budgets.ie_labelings) {
                inclusion_exclusion_count(g, ctx, n, &opts.budgets).map(|c| Count::Exact(c, "ie"))
            } else {
                mc()
            }
        }
    }
}

/// One row per n. Budget failures are recorded in the row and the sweep goes on.
pub fn census_sweep(
    g: &CoprimalityGraph,
    ctx: &FieldCtx,
    n_range: RangeInclusive<i64>,
    opts: &SweepOptions,
) -> Result<CensusReport, CensusError> {
    let q = ctx.q() as u64;
    let v = g.vertex_count();
    let (rho, rho_error) = match density_rho(g, q, opts.eps, false, &opts.budgets) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let rho_plus = rho_plus_sum(g, q, &opts.budgets)?;
    let rho_mid = rho.as_ref().map(DensityInterval::mid_f64);
    let ln_q = (q as f64).ln();
    let mut rows = Vec::new();
    for n in n_range {
        let total = total_tuples(q, n, v);
        let ln_total = ln_biguint(&total);
        // ln(q^(nv) / (q-1)^v) - ln w(q^n)^v
        let ln_literal_ratio = v as f64 * (n as f64 * ln_q - ((q - 1) as f64).ln()) - ln_total;
        let bound = |s| {
            let rk = error_bound_rk(g, q, n, s).map(|b| b.to_string()).unwrap_or_default();
            let t = t_from_sum(v, q, n, opts.t_epsilon, rho_plus, s).to_string();
            (rk, t)
        };
        let (bound_rk, bound_t) = bound(BoundScaling::Literal);
        let (bound_rk_w, bound_t_w) = bound(BoundScaling::W);
        let mut row = CensusRow {
            n,
            backend: opts.backend.name().into(),
            g_n: None,
            total: total.to_string(),
            empirical_density: None,
            rho: rho.as_ref().map(RhoJson::from),
            predictor: rho_mid.and_then(|m| finite(m * ln_total.exp())),
            residual: None,
            literal_predictor: rho_mid.and_then(|m| finite(m * (ln_total + ln_literal_ratio).exp())),
            literal_ratio: ln_literal_ratio.exp(),
            bound_rk,
            bound_t,
            bound_rk_w,
            bound_t_w,
            mc_stderr: None,
            seed: None,
            samples: None,
            workers: None,
            error: None,
        };
        match run_backend(g, ctx, n, opts) {
            Ok(Count::Exact(c, name)) => {
                let dens = if total == BigUint::ZERO {
                    None
                } else {
                    BigRational::new(BigInt::from(c.clone()), BigInt::from(total.clone())).to_f64()
                };
                row.backend = name.into();
                row.g_n = Some(c.to_string());
                row.empirical_density = dens;
                row.residual = dens.zip(rho_mid).map(|(d, m)| (d - m).abs());
            }
            Ok(Count::Estimate(est)) => {
                row.backend = "montecarlo".into();
                row.empirical_density = Some(est.estimate);
                row.residual = rho_mid.map(|m| (est.estimate - m).abs());
                row.mc_stderr = Some(est.stderr);
                row.seed = Some(est.seed);
                row.samples = Some(est.samples);
                row.workers = Some(est.workers);
            }
            Err(e) => row.error = Some(e.to_string()),
        }
        rows.push(row);
    }
    Ok(CensusReport {
        graph: g.to_string(),
        q,
        field: ctx.tag(),
        eps: opts.eps,
        t_epsilon: opts.t_epsilon,
        rho: rho.as_ref().map(RhoJson::from),
        rho_error,
        notes: NOTES.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}
