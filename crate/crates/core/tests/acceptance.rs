//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use coprime_census::census::{
    brute_force_count, census_sweep, density_rho, error_bound_rk, error_bound_t, inclusion_exclusion_count,
    labeled_graphs, labeling_sums, main_term, monte_carlo_density, omega_bound_check, Backend, BoundScaling, Budgets,
    MultKind, SplitMix64, SweepOptions,
};
use coprime_census::graphpoly::{compute_polynomial, q_g, q_g_plus, q_g_r_plus, q_rs, PolyKind, PolyOptions};
use coprime_census::polyfq::{count_irreducibles, w_count, EnumMode, FieldCtx, MonicPoly};
use coprime_census::real::to_f64;
use coprime_census::CoprimalityGraph;
use num_bigint::{BigInt, BigUint};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big_ie() -> Budgets {
    Budgets { ie_labelings: 1 << 32, ..Budgets::default() }
}

fn f(q: u64) -> FieldCtx {
    FieldCtx::from_order(q).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let b = big_ie();
    let mut checked = 0;
    for q in [2, 3, 4] {
        let ctx = f(q);
        for g in labeled_graphs(4) {
            for n in [1, 2] {
                let ie = inclusion_exclusion_count(&g, &ctx, n, &b).map_err(|e| e.to_string())?;
                let brute = brute_force_count(&g, &ctx, n, &b).map_err(|e| e.to_string())?;
                ensure(ie == brute, || format!("{g} q={q} n={n}: ie={ie} brute={brute}"))?;
                checked += 1;
            }
        }
    }
    let f2 = f(2);
    for g in [CoprimalityGraph::complete(2).unwrap(), CoprimalityGraph::path(3).unwrap()] {
        let ie = inclusion_exclusion_count(&g, &f2, 3, &b).unwrap();
        let brute = brute_force_count(&g, &f2, 3, &b).unwrap();
        ensure(ie == brute, || format!("{g} q=2 n=3: ie={ie} brute={brute}"))?;
        checked += 1;
    }
    Ok(format!("{checked} instances agree"))
}

fn known_values() -> Outcome {
    let b = big_ie();
    let k2 = CoprimalityGraph::complete(2).unwrap();
    let f2 = f(2);
    for (n, want) in [(1, 7u32), (2, 31)] {
        for got in [brute_force_count(&k2, &f2, n, &b).unwrap(), inclusion_exclusion_count(&k2, &f2, n, &b).unwrap()] {
            ensure(got == BigUint::from(want), || format!("K2 g({n}) = {got}, want {want}"))?;
        }
    }
    let mut checked = 0;
    for q in [2u64, 3] {
        let ctx = f(q);
        for v in 1..=4usize {
            let g = CoprimalityGraph::empty(v).unwrap();
            for n in 0..=4i64 {
                let want = (BigUint::from(q).pow(n as u32 + 1) - 1u32) / BigUint::from(q - 1);
                let want = want.pow(v as u32);
                let ie = inclusion_exclusion_count(&g, &ctx, n, &b).unwrap();
                let brute = brute_force_count(&g, &ctx, n, &b).unwrap();
                ensure(ie == want && brute == want, || format!("empty v={v} q={q} n={n}: {ie} {brute} vs {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("K2 gives 7, 31; {checked} empty-graph totals exact"))
}

fn density_closed_form() -> Outcome {
    let k2 = CoprimalityGraph::complete(2).unwrap();
    let mut parts = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let t = Instant::now();
        let rho = density_rho(&k2, q, 1e-9, false, &Budgets::default()).map_err(|e| e.to_string())?;
        let secs = t.elapsed().as_secs_f64();
        let target = 1.0 - 1.0 / q as f64;
        ensure(rho.contains(target), || format!("q={q}: {:?} misses {target}", rho.decimal_bounds()))?;
        ensure(rho.width_f64() <= 1e-9, || format!("q={q}: width {}", rho.width_f64()))?;
        ensure(secs < 1.0, || format!("q={q}: took {secs:.3}s"))?;
        parts.push(format!("q={q} D={} {:.3}s", rho.truncation_degree(), secs));
    }
    Ok(parts.join(", "))
}

fn residuals(g: &CoprimalityGraph, n_max: i64) -> Result<Vec<f64>, String> {
    let opts = SweepOptions { backend: Backend::Brute, eps: 1e-12, ..Default::default() };
    let rep = census_sweep(g, &f(2), 1..=n_max, &opts).map_err(|e| e.to_string())?;
    rep.rows.iter().map(|r| r.residual.ok_or_else(|| format!("n={}: {:?}", r.n, r.error))).collect()
}

fn convergence() -> Outcome {
    let k2 = residuals(&CoprimalityGraph::complete(2).unwrap(), 8)?;
    let p3 = residuals(&CoprimalityGraph::path(3).unwrap(), 5)?;
    for (name, r) in [("K2", &k2), ("P3", &p3)] {
        ensure(r.windows(2).all(|w| w[1] < w[0]), || format!("{name} residuals not decreasing: {r:?}"))?;
    }
    ensure(k2[7] < 1e-2, || format!("K2 residual at n=8 is {}", k2[7]))?;
    Ok(format!("K2 residual(8) = {:.3e}, P3 residual(5) = {:.3e}", k2[7], p3[4]))
}

fn normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for q in [2u64, 3] {
        let ctx = f(q);
        for v in 1..=4usize {
            let g = CoprimalityGraph::empty(v).unwrap();
            let rho = density_rho(&g, q, 1e-12, false, &Budgets::default()).unwrap();
            for n in 0..=10i64 {
                let (lo, hi) = main_term(v, q, n, &rho);
                let total = w_count(q, n).pow(v as u32).to_string().parse::<f64>().unwrap();
                ensure(to_f64(&lo) == total && to_f64(&hi) == total, || format!("v={v} q={q} n={n}: predictor off"))?;
            }
            let opts = SweepOptions { backend: Backend::InclusionExclusion, ..Default::default() };
            let rep = census_sweep(&g, &ctx, 0..=10, &opts).map_err(|e| e.to_string())?;
            for row in &rep.rows {
                ensure(row.residual == Some(0.0), || format!("v={v} q={q} n={}: residual {:?}", row.n, row.residual))?;
            }
            // literal_predictor / predictor -> q^-v
            let last = rep.rows.last().unwrap();
            let dev = (last.literal_ratio * (q as f64).powi(v as i32) - 1.0).abs();
            ensure(dev < 2.0 * v as f64 / (q as f64).powi(11), || {
                format!("v={v} q={q}: ratio {}", last.literal_ratio)
            })?;
            ensure(rep.rows[1].literal_ratio < 0.9, || format!("v={v} q={q}: no visible discrepancy"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("w-normalized predictor exact; literal predictor off by q^v (|ratio*q^v - 1| <= {worst:.1e} at n=10)"))
}

fn random_graph(rng: &mut SplitMix64) -> CoprimalityGraph {
    let v = 2 + rng.below(7) as usize;
    let mut pairs: Vec<(usize, usize)> = (0..v).flat_map(|r| (r + 1..v).map(move |s| (r, s))).collect();
    for i in (1..pairs.len()).rev() {
        pairs.swap(i, rng.below(i as u64 + 1) as usize);
    }
    let e = rng.below(pairs.len().min(12) as u64 + 1) as usize;
    pairs.truncate(e);
    CoprimalityGraph::from_zero_based(v, &pairs).unwrap()
}

fn graph_identities() -> Outcome {
    let mut graphs: Vec<_> = (1..=4).flat_map(labeled_graphs).collect();
    let mut rng = SplitMix64::new(20240611);
    graphs.extend((0..100).map(|_| random_graph(&mut rng)));
    let f2 = f(2);
    let opts = PolyOptions::default();
    for g in &graphs {
        let (v, e) = (g.vertex_count(), g.edge_count());
        let two_e = BigInt::from(1u64 << e);
        let sum = |p: &coprime_census::GraphPolynomial| p.coeffs().iter().sum::<BigInt>();
        let qp = q_g_plus(g).unwrap();
        ensure(sum(&qp) == two_e, || format!("{g}: Q+(1) = {}", sum(&qp)))?;
        ensure(q_g(g).unwrap().coeff(1) == BigInt::from(0), || format!("{g}: z^1 of Q_G nonzero"))?;
        for r in 0..v {
            let c = q_g_r_plus(g, r).unwrap().coeff(1);
            ensure(c == BigInt::from(g.degree(r)), || format!("{g}: z^1 of Q_G,{}+ is {c}", r + 1))?;
            for s in r + 1..v {
                if !g.has_edge(r, s) {
                    let p = q_rs(g, r, s).unwrap();
                    ensure(sum(&p) == two_e, || format!("{g}: Q_{},{} sums to {}", r + 1, s + 1, sum(&p)))?;
                }
            }
        }
        let p = f2.enumerate_irreducibles(1).unwrap()[0].clone();
        let sums = labeling_sums(&f2, g, &p, &Budgets::default()).unwrap();
        let mut kinds = vec![(MultKind::F, PolyKind::Signed), (MultKind::FPlus, PolyKind::Unsigned)];
        kinds.extend(
            (0..v).flat_map(|r| [(MultKind::G(r), PolyKind::Vertex(r)), (MultKind::GPlus(r), PolyKind::VertexPlus(r))]),
        );
        for (mk, pk) in kinds {
            let poly = compute_polynomial(g, pk, opts).unwrap();
            for k in 0..=v {
                ensure(poly.coeff(k) == sums.get(mk, k), || format!("{g}: {mk:?} at P^{k}"))?;
            }
        }
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn irreducible_counts() -> Outcome {
    let mut checked = 0;
    for (q, dmax) in [(2u64, 6usize), (3, 6), (4, 4)] {
        let ctx = f(q);
        for d in 1..=dmax {
            let mut count = 0u64;
            for a in ctx.enumerate_monic(d as i64, EnumMode::Exactly).unwrap().iter() {
                if ctx.is_irreducible(&a).unwrap() {
                    count += 1;
                }
            }
            let formula = count_irreducibles(q, d as u32);
            ensure(formula == BigUint::from(count), || format!("q={q} d={d}: formula {formula}, enumeration {count}"))?;
            ensure(BigUint::from(d) * &formula <= BigUint::from(q).pow(d as u32), || {
                format!("q={q} d={d}: r > q^d/d")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (q, d) pairs"))
}

fn omega_bound() -> Outcome {
    let f2 = f(2);
    let mut exhaustive = 0;
    for d in 2..=12 {
        for a in f2.enumerate_monic(d, EnumMode::Exactly).unwrap().iter() {
            if f2.is_squarefree(&a) {
                ensure(omega_bound_check(&f2, &a).unwrap(), || format!("F2: {}", f2.render_poly(&a)))?;
                exhaustive += 1;
            }
        }
    }
    let f3 = f(3);
    let mut rng = SplitMix64::new(7);
    let mut sampled = 0;
    while sampled < 10_000 {
        let d = 2 + rng.below(7) as usize;
        let mut coeffs: Vec<u32> = (0..d).map(|_| rng.below(3) as u32).collect();
        coeffs.push(1);
        let a = MonicPoly::from_coeffs(&f3, coeffs).unwrap();
        if f3.is_squarefree(&a) {
            ensure(omega_bound_check(&f3, &a).unwrap(), || format!("F3: {}", f3.render_poly(&a)))?;
            sampled += 1;
        }
    }
    Ok(format!("{exhaustive} over F2 exhaustive, {sampled} random over F3, no violations"))
}

fn monte_carlo() -> Outcome {
    let k2 = CoprimalityGraph::complete(2).unwrap();
    let f2 = f(2);
    let a = monte_carlo_density(&k2, &f2, 2, 100_000, 12345, 4).map_err(|e| e.to_string())?;
    let b = monte_carlo_density(&k2, &f2, 2, 100_000, 12345, 4).map_err(|e| e.to_string())?;
    let z = (a.estimate - 31.0 / 49.0).abs() / a.stderr;
    ensure(z <= 3.0, || format!("estimate {} is {z:.2} stderr from 31/49", a.estimate))?;
    let (ja, jb) = (serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    ensure(ja == jb, || "re-run differs".into())?;
    Ok(format!("estimate {:.5} +- {:.5} ({z:.2} stderr), re-run identical", a.estimate, a.stderr))
}

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

fn error_bounds() -> Outcome {
    // graphs whose edge-deleted subgraphs have closed-form rho+
    let k2 = CoprimalityGraph::complete(2).unwrap();
    let p3 = CoprimalityGraph::path(3).unwrap();
    let k2k1 = CoprimalityGraph::new(3, &[(1, 2)]).unwrap();
    let two_k2 = CoprimalityGraph::new(4, &[(1, 2), (3, 4)]).unwrap();
    let three_k2 = CoprimalityGraph::new(6, &[(1, 2), (3, 4), (5, 6)]).unwrap();
    // sum_j rho+ of G minus edge j, with c = rho+ of one edge
    let plus_sum = |name: &str, c: f64| match name {
        "K2" | "K2+K1" => 1.0,
        "P3" => 2.0 * c,
        "2K2" => 2.0 * c,
        _ => 3.0 * c * c,
    };
    let graphs = [("K2", &k2), ("P3", &p3), ("K2+K1", &k2k1), ("2K2", &two_k2), ("3K2", &three_k2)];
    let b = Budgets::default();
    let mut points = 0;
    for (name, g) in graphs {
        for q in [2u64, 3] {
            let qf = q as f64;
            let c = (1.0 - qf.powi(-3)) / (1.0 - 1.0 / qf);
            for n in [4i64, 9] {
                let v = g.vertex_count() as f64;
                let d = g.max_degree() as i32;
                let e = g.edge_count() as i32;
                for (scaling, u) in [
                    (BoundScaling::Literal, qf.powi(n as i32) / (qf - 1.0)),
                    (BoundScaling::W, (qf.powi(n as i32 + 1) - 1.0) / (qf - 1.0)),
                ] {
                    let rk =
                        1f64.exp().powi(d) * 2f64.powi(2i32.pow(e as u32)) * v * (n as f64).powi(d) * u.powf(v - 1.0);
                    let got = error_bound_rk(g, q, n, scaling).unwrap().value();
                    ensure(rel_close(got, rk), || format!("Rk {name} q={q} n={n} {scaling:?}: {got} vs {rk}"))?;
                    let t = 3.0 * plus_sum(name, c) * u.powf(v) * qf.powf(-0.75 * n as f64);
                    let got = error_bound_t(g, q, n, 0.25, scaling, &b).unwrap().value();
                    ensure(rel_close(got, t), || format!("T {name} q={q} n={n} {scaling:?}: {got} vs {t}"))?;
                }
                points += 1;
            }
        }
    }

    let f2 = f(2);
    let big = big_ie();
    println!("    {:<4} {:>3} {:>14} {:>14} {:>14}", "G", "n", "|g - pred|", "Rk_w + T_w", "ratio");
    for (name, g) in [("K2", &k2), ("P3", &p3)] {
        let rho = density_rho(g, 2, 1e-12, false, &b).unwrap();
        for n in 4..=10i64 {
            let count: f64 = inclusion_exclusion_count(g, &f2, n, &big).unwrap().to_string().parse().unwrap();
            let (lo, hi) = main_term(g.vertex_count(), 2, n, &rho);
            let diff = (count - to_f64(&lo)).abs().max((count - to_f64(&hi)).abs());
            let rk = error_bound_rk(g, 2, n, BoundScaling::W).unwrap();
            let bound = (rk + error_bound_t(g, 2, n, 0.25, BoundScaling::W, &b).unwrap()).value();
            println!("    {name:<4} {n:>3} {diff:>14.6e} {bound:>14.6e} {:>14.3e}", diff / bound);
            ensure(n < 6 || diff <= bound, || format!("{name} n={n}: |g - pred| = {diff} exceeds {bound}"))?;
        }
    }
    Ok(format!("{points} points match re-derivation; no exceedance"))
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("known values", known_values),
        ("density closed form", density_closed_form),
        ("convergence to rho", convergence),
        ("normalization law", normalization),
        ("graph-polynomial identities", graph_identities),
        ("irreducible counts", irreducible_counts),
        ("omega bound", omega_bound),
        ("monte carlo consistency", monte_carlo),
        ("error-bound evaluators", error_bounds),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
