use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::{Budgets, CensusError};
use crate::graphpoly::CoprimalityGraph;
use crate::polyfq::{EnumMode, FieldCtx, MonicPoly};

/// Above this many polynomials the pairwise coprimality table is not built.
const TABLE_LIMIT: usize = 4096;

enum Coprime<'a> {
    Table { w: usize, bits: Vec<u64> },
    Direct { ctx: &'a FieldCtx, polys: &'a [MonicPoly] },
}

impl Coprime<'_> {
    fn build<'a>(ctx: &'a FieldCtx, polys: &'a [MonicPoly]) -> Coprime<'a> {
        let w = polys.len();
        if w > TABLE_LIMIT {
            return Coprime::Direct { ctx, polys };
        }
        let words = w.div_ceil(64);
        let rows: Vec<Vec<u64>> = (0..w)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for j in 0..w {
                    if ctx.coprime(&polys[i], &polys[j]) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Coprime::Table { w: words, bits: rows.concat() }
    }

    #[inline]
    fn test(&self, i: usize, j: usize) -> bool {
        match self {
            Coprime::Table { w, bits } => bits[i * w + j / 64] >> (j % 64) & 1 == 1,
            Coprime::Direct { ctx, polys } => ctx.coprime(&polys[i], &polys[j]),
        }
    }
}

/// |Y_G(n)|: tuples of monic polynomials of degree <= n, coprime along every edge.
///
/// Tuples over the non-isolated vertices are enumerated by backtracking with a
/// gcd test on each edge back to an already-assigned vertex; isolated vertices
/// contribute a factor w(q^n) each.
pub fn brute_force_count(
    g: &CoprimalityGraph,
    ctx: &FieldCtx,
    n: i64,
    budgets: &Budgets,
) -> Result<BigUint, CensusError> {
    let enumeration = ctx.enumerate_monic(n, EnumMode::UpTo)?;
    let w = enumeration.len();
    let active: Vec<usize> = (0..g.vertex_count()).filter(|&r| g.degree(r) > 0).collect();
    let isolated = g.vertex_count() - active.len();
    let wb = BigUint::from(w);
    let cost = wb.pow(active.len() as u32) * BigUint::from(g.edge_count().max(1));
    if cost > BigUint::from(budgets.brute_gcd_tests) {
        return Err(CensusError::Budget {
            what: "brute force",
            cost: cost.to_string(),
            budget: budgets.brute_gcd_tests,
        });
    }
    let iso_factor = wb.pow(isolated as u32);
    if active.is_empty() {
        return Ok(iso_factor);
    }
    let polys: Vec<MonicPoly> = enumeration.iter().collect();
    let table = Coprime::build(ctx, &polys);

    // back[i]: positions (in `active`) of earlier neighbours of active[i]
    let pos = |r: usize| active.iter().position(|&a| a == r).unwrap();
    let back: Vec<Vec<usize>> = (0..active.len())
        .map(|i| {
            g.edges()
                .iter()
                .filter_map(|&(r, s)| {
                    let (pr, ps) = (pos(r), pos(s));
                    if pr == i && ps < i {
                        Some(ps)
                    } else if ps == i && pr < i {
                        Some(pr)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();

    let w = w.to_usize().expect("budget keeps w small");
    let total: u128 = (0..w)
        .into_par_iter()
        .map(|first| {
            let mut assign = vec![0usize; back.len()];
            assign[0] = first;
            count_from(1, &mut assign, &back, &table, w)
        })
        .sum();
    Ok(BigUint::from(total) * iso_factor)
}

fn count_from(i: usize, assign: &mut [usize], back: &[Vec<usize>], table: &Coprime, w: usize) -> u128 {
    if i == back.len() {
        return 1;
    }
    let mut total = 0;
    for a in 0..w {
        if back[i].iter().all(|&j| table.test(assign[j], a)) {
            assign[i] = a;
            total += count_from(i + 1, assign, back, table, w);
        }
    }
    total
}

/// w(q^n)^v as a convenience for callers comparing against the full tuple count.
pub(crate) fn total_tuples(q: u64, n: i64, v: usize) -> BigUint {
    let w = crate::polyfq::w_count(q, n);
    if v == 0 {
        BigUint::one()
    } else {
        w.pow(v as u32)
    }
}
