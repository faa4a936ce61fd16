//! Exact count by inclusion-exclusion over squarefree edge labelings:
//!
//!   g(n) = sum over (N_1..N_e), deg N_a <= n, of mu(N_1)...mu(N_e) * prod_r w(q^(n - deg M_r)).
//!
//! Only the factorization pattern of the labels matters. A squarefree label is
//! a set of distinct irreducibles, lcm is set union and degree is additive, so
//! the irreducibles are replaced by abstract ids: r_q(d) ids of each degree d.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Budgets, CensusError};
use crate::graphpoly::CoprimalityGraph;
use crate::polyfq::{count_irreducibles, w_count, FieldCtx};

/// Number of squarefree monic polynomials of degree <= n: q^n + 1 for n >= 1.
pub fn squarefree_label_count(q: u64, n: i64) -> BigUint {
    match n {
        n if n < 0 => BigUint::zero(),
        0 => BigUint::from(1u32),
        n => BigUint::from(q).pow(n as u32) + 1u32,
    }
}

/// Most abstract irreducible ids we are willing to materialize.
const MAX_IDS: usize = 1 << 16;

struct Labels {
    /// u64 words per vertex id-set
    words: usize,
    /// sorted ids of label l
    ids: Vec<Vec<u32>>,
    /// number of irreducible factors of label l (sign of mu)
    omega: Vec<u32>,
    id_degree: Vec<u32>,
}

fn build_labels(q: u64, n: usize) -> Result<Labels, CensusError> {
    let mut id_degree = Vec::new();
    for d in 1..=n {
        let r = count_irreducibles(q, d as u32).to_usize().filter(|&r| id_degree.len() + r <= MAX_IDS).ok_or(
            CensusError::Budget {
                what: "inclusion-exclusion irreducible ids",
                cost: format!("degree {d}"),
                budget: MAX_IDS as u64,
            },
        )?;
        id_degree.extend(std::iter::repeat_n(d as u32, r));
    }
    let words = id_degree.len().div_ceil(64).max(1);
    let mut labels = Labels { words, ids: Vec::new(), omega: Vec::new(), id_degree };
    let mut cur = Vec::new();
    gen_sets(&mut labels, &mut cur, 0, n as u32);
    Ok(labels)
}

// every set of ids with index >= start and total degree <= room, in lexicographic order
fn gen_sets(labels: &mut Labels, cur: &mut Vec<u32>, start: usize, room: u32) {
    labels.ids.push(cur.clone());
    labels.omega.push(cur.len() as u32);
    for i in start..labels.id_degree.len() {
        let d = labels.id_degree[i];
        if d > room {
            // ids are sorted by degree
            break;
        }
        cur.push(i as u32);
        gen_sets(labels, cur, i + 1, room - d);
        cur.pop();
    }
}

struct Search<'a> {
    g: &'a CoprimalityGraph,
    labels: &'a Labels,
    n: u32,
    masks: Vec<u64>,
    degs: Vec<u32>,
    active: &'a [usize],
    key_bits: u32,
    fault_label: Option<usize>,
    acc: HashMap<u128, i64>,
}

impl Search<'_> {
    /// Merges label l into M_r, pushing the newly added ids onto `undo`.
    /// Leaves everything untouched and returns false if deg M_r would exceed n.
    fn add(&mut self, r: usize, l: usize, undo: &mut Vec<u32>) -> bool {
        let w = self.labels.words;
        let mut deg = self.degs[r];
        let start = undo.len();
        for &id in &self.labels.ids[l] {
            let (word, bit) = (r * w + id as usize / 64, id % 64);
            if self.masks[word] >> bit & 1 == 0 {
                deg += self.labels.id_degree[id as usize];
                undo.push(id);
            }
        }
        if deg > self.n {
            undo.truncate(start);
            return false;
        }
        for &id in &undo[start..] {
            self.masks[r * w + id as usize / 64] |= 1 << (id % 64);
        }
        self.degs[r] = deg;
        true
    }

    fn remove(&mut self, r: usize, added: &[u32]) {
        let w = self.labels.words;
        for &id in added {
            self.masks[r * w + id as usize / 64] &= !(1 << (id % 64));
            self.degs[r] -= self.labels.id_degree[id as usize];
        }
    }

    fn run(&mut self, a: usize, odd: bool) {
        if a == self.g.edge_count() {
            let mut key = 0u128;
            for (i, &r) in self.active.iter().enumerate() {
                key |= (self.degs[r] as u128) << (i as u32 * self.key_bits);
            }
            *self.acc.entry(key).or_insert(0) += if odd { -1 } else { 1 };
            return;
        }
        let (r, s) = self.g.edges()[a];
        let mut undo_r = Vec::new();
        let mut undo_s = Vec::new();
        for l in 0..self.labels.omega.len() {
            undo_r.clear();
            undo_s.clear();
            if !self.add(r, l, &mut undo_r) {
                continue;
            }
            if self.add(s, l, &mut undo_s) {
                let flip = (self.labels.omega[l] % 2 == 1) ^ (self.fault_label == Some(l));
                self.run(a + 1, odd ^ flip);
                self.remove(s, &undo_s);
            }
            self.remove(r, &undo_r);
        }
    }
}

/// g(n) by the inclusion-exclusion formula over squarefree edge labelings,
/// pruning any partial labeling once some deg M_r exceeds n.
pub fn inclusion_exclusion_count(
    g: &CoprimalityGraph,
    ctx: &FieldCtx,
    n: i64,
    budgets: &Budgets,
) -> Result<BigUint, CensusError> {
    count_impl(g, ctx, n, budgets, false)
}

/// Test hook: the same count with the sign of mu flipped for the label `z`.
pub fn inclusion_exclusion_count_with_fault(
    g: &CoprimalityGraph,
    ctx: &FieldCtx,
    n: i64,
    budgets: &Budgets,
) -> Result<BigUint, CensusError> {
    count_impl(g, ctx, n, budgets, true)
}

fn count_impl(
    g: &CoprimalityGraph,
    ctx: &FieldCtx,
    n: i64,
    budgets: &Budgets,
    fault: bool,
) -> Result<BigUint, CensusError> {
    let q = ctx.q() as u64;
    let v = g.vertex_count();
    let e = g.edge_count();
    let cost = squarefree_label_count(q, n).pow(e as u32);
    if cost > BigUint::from(budgets.ie_labelings) {
        return Err(CensusError::Budget {
            what: "inclusion-exclusion",
            cost: cost.to_string(),
            budget: budgets.ie_labelings,
        });
    }
    if n < 0 {
        return Ok(BigUint::zero());
    }
    // w(q^(n - m)) for m = 0..=n
    let wt: Vec<BigUint> = (0..=n).map(|m| w_count(q, n - m)).collect();
    let active: Vec<usize> = (0..v).filter(|&r| g.degree(r) > 0).collect();
    let inactive_factor = wt[0].pow((v - active.len()) as u32);
    if e == 0 {
        return Ok(inactive_factor);
    }
    let n = n as usize;
    let labels = build_labels(q, n)?;
    let key_bits = usize::BITS - n.leading_zeros();
    let packed = active.len() as u32 * key_bits <= 128;
    // label 1 is the single id 0, a degree-1 irreducible, i.e. the polynomial z
    let fault_label = fault.then_some(1).filter(|_| labels.omega.len() > 1);

    let total: BigInt = (0..labels.omega.len())
        .into_par_iter()
        .map(|first| {
            let mut s = Search {
                g,
                labels: &labels,
                n: n as u32,
                masks: vec![0; v * labels.words],
                degs: vec![0; v],
                active: &active,
                key_bits,
                fault_label,
                acc: HashMap::new(),
            };
            let (r0, s0) = g.edges()[0];
            let (mut u0, mut u1) = (Vec::new(), Vec::new());
            if !(s.add(r0, first, &mut u0) && s.add(s0, first, &mut u1)) {
                return BigInt::zero();
            }
            let flip = (labels.omega[first] % 2 == 1) ^ (fault_label == Some(first));
            if packed {
                s.run(1, flip);
                fold(&s.acc, &active, key_bits, &wt)
            } else {
                // too many vertices to pack the degree vector; sum leaf by leaf
                run_unpacked(&mut s, 1, flip, &wt)
            }
        })
        .sum();
    let total = total.to_biguint().expect("count is nonnegative");
    Ok(total * inactive_factor)
}

fn fold(acc: &HashMap<u128, i64>, active: &[usize], key_bits: u32, wt: &[BigUint]) -> BigInt {
    let mask = (1u128 << key_bits) - 1;
    let mut keys: Vec<_> = acc.iter().filter(|(_, &c)| c != 0).collect();
    keys.sort();
    let mut total = BigInt::zero();
    for (&key, &c) in keys {
        let mut term = BigInt::from(c);
        for i in 0..active.len() {
            let m = (key >> (i as u32 * key_bits) & mask) as usize;
            term *= BigInt::from(wt[m].clone());
        }
        total += term;
    }
    total
}

fn run_unpacked(s: &mut Search, a: usize, odd: bool, wt: &[BigUint]) -> BigInt {
    if a == s.g.edge_count() {
        let mut term = BigInt::from(if odd { -1 } else { 1 });
        for &r in s.active {
            term *= BigInt::from(wt[s.degs[r] as usize].clone());
        }
        return term;
    }
    let (r, t) = s.g.edges()[a];
    let mut total = BigInt::zero();
    let (mut ur, mut ut) = (Vec::new(), Vec::new());
    for l in 0..s.labels.omega.len() {
        ur.clear();
        ut.clear();
        if !s.add(r, l, &mut ur) {
            continue;
        }
        if s.add(t, l, &mut ut) {
            let flip = (s.labels.omega[l] % 2 == 1) ^ (s.fault_label == Some(l));
            total += run_unpacked(s, a + 1, odd ^ flip, wt);
            s.remove(t, &ut);
        }
        s.remove(r, &ur);
    }
    total
}
