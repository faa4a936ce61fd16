use coprime_census::census::{brute_force_count, inclusion_exclusion_count, Budgets};
use coprime_census::graphpoly::{compute_polynomial, PolyKind, PolyOptions, SubsetMethod};
use coprime_census::polyfq::{count_irreducibles, FieldCtx, MonicPoly};
use coprime_census::{CoprimalityGraph, GraphPolynomial};
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = CoprimalityGraph> {
    (1usize..=6).prop_flat_map(|v| {
        let pairs: Vec<(usize, usize)> = (0..v).flat_map(|r| (r + 1..v).map(move |s| (r, s))).collect();
        let n = pairs.len();
        (Just(v), proptest::collection::vec(any::<bool>(), n)).prop_map(move |(v, keep)| {
            let edges: Vec<_> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| *p).collect();
            CoprimalityGraph::from_zero_based(v, &edges).unwrap()
        })
    })
}

fn poly(q: u32, max_deg: usize) -> impl Strategy<Value = Vec<u32>> {
    (0..=max_deg).prop_flat_map(move |d| proptest::collection::vec(0..q, d)).prop_map(|mut c| {
        c.push(1);
        c
    })
}

fn monic(ctx: &FieldCtx, c: Vec<u32>) -> MonicPoly {
    MonicPoly::from_coeffs(ctx, c).unwrap()
}

fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..m {
        let mut next = vec![BigInt::from(0); row.len() + 1];
        for (i, c) in row.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c;
        }
        row = next;
    }
    row
}

/// sum over independent sets S of t^|S| (1-t)^(v-|S|)
fn independent_set_poly(g: &CoprimalityGraph) -> Vec<BigInt> {
    let v = g.vertex_count();
    let mut out = vec![BigInt::from(0); v + 1];
    for s in 0..1u64 << v {
        if g.edges().iter().any(|&(a, b)| s >> a & 1 == 1 && s >> b & 1 == 1) {
            continue;
        }
        let k = s.count_ones() as usize;
        for (i, c) in binomial_row(v - k).into_iter().enumerate() {
            if i % 2 == 0 {
                out[k + i] += c;
            } else {
                out[k + i] -= c;
            }
        }
    }
    while out.len() > 1 && out.last() == Some(&BigInt::from(0)) {
        out.pop();
    }
    out
}

fn kinds(g: &CoprimalityGraph) -> Vec<PolyKind> {
    let v = g.vertex_count();
    let mut k = vec![PolyKind::Signed, PolyKind::Unsigned];
    k.extend((0..v).flat_map(|r| [PolyKind::Vertex(r), PolyKind::VertexPlus(r)]));
    for r in 0..v {
        for s in r + 1..v {
            if !g.has_edge(r, s) {
                k.push(PolyKind::Pair(r, s));
            }
        }
    }
    k
}

fn poly_of(g: &CoprimalityGraph, kind: PolyKind, method: SubsetMethod) -> GraphPolynomial {
    compute_polynomial(g, kind, PolyOptions { method, ..Default::default() }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn q_g_is_independent_set_probability(g in graph()) {
        let p = poly_of(&g, PolyKind::Signed, SubsetMethod::GrayCode);
        prop_assert_eq!(p.coeffs().to_vec(), independent_set_poly(&g));
    }

    #[test]
    fn direct_and_gray_code_agree(g in graph()) {
        for kind in kinds(&g) {
            prop_assert_eq!(
                poly_of(&g, kind, SubsetMethod::Direct),
                poly_of(&g, kind, SubsetMethod::GrayCode)
            );
        }
    }

    #[test]
    fn signed_bounded_by_unsigned(g in graph()) {
        let s = poly_of(&g, PolyKind::Signed, SubsetMethod::GrayCode);
        let u = poly_of(&g, PolyKind::Unsigned, SubsetMethod::GrayCode);
        for i in 0..=u.degree() {
            prop_assert!(s.coeff(i).abs() <= u.coeff(i));
        }
    }

    #[test]
    fn isolated_vertex_polynomial_is_q_g(g in graph()) {
        let q = poly_of(&g, PolyKind::Signed, SubsetMethod::GrayCode);
        for r in 0..g.vertex_count() {
            if g.degree(r) == 0 {
                let qr = poly_of(&g, PolyKind::Vertex(r), SubsetMethod::GrayCode);
                prop_assert_eq!(qr.coeffs(), q.coeffs());
            }
        }
    }

    #[test]
    fn graph_text_and_json_roundtrip(g in graph()) {
        prop_assert_eq!(&CoprimalityGraph::parse(&g.to_string()).unwrap(), &g);
        prop_assert_eq!(&CoprimalityGraph::from_json(&g.to_json()).unwrap(), &g);
    }

    #[test]
    fn factorization_roundtrip_f2(c in poly(2, 8)) {
        let ctx = FieldCtx::new(2, 1).unwrap();
        let a = monic(&ctx, c);
        let fx = ctx.factorize(&a).unwrap();
        prop_assert_eq!(fx.product(&ctx), a);
        for (p, _) in fx.factors() {
            prop_assert!(ctx.is_irreducible(p).unwrap());
        }
    }

    #[test]
    fn factorization_roundtrip_f3(c in poly(3, 5)) {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let a = monic(&ctx, c);
        let fx = ctx.factorize(&a).unwrap();
        prop_assert_eq!(fx.product(&ctx), a);
        for (p, _) in fx.factors() {
            prop_assert!(ctx.is_irreducible(p).unwrap());
        }
    }

    #[test]
    fn gcd_divides_and_scales(a in poly(4, 6), b in poly(4, 6), c in poly(4, 3)) {
        let ctx = FieldCtx::new(2, 2).unwrap();
        let (a, b, c) = (monic(&ctx, a), monic(&ctx, b), monic(&ctx, c));
        let g = ctx.poly_gcd(&a, &b);
        prop_assert!(ctx.divides(&g, &a) && ctx.divides(&g, &b));
        let gc = ctx.poly_gcd(&ctx.poly_mul(&a, &c), &ctx.poly_mul(&b, &c));
        prop_assert_eq!(gc, ctx.poly_mul(&g, &c));
        prop_assert_eq!(ctx.coprime(&a, &b), g.is_one());
    }

    #[test]
    fn irreducible_count_identities(qi in 0usize..7, n in 1u32..=20) {
        let q = [2u64, 3, 4, 5, 7, 8, 9][qi];
        let sum: BigUint = (1..=n).filter(|d| n % d == 0).map(|d| BigUint::from(d) * count_irreducibles(q, d)).sum();
        prop_assert_eq!(sum, BigUint::from(q).pow(n));
        prop_assert!(BigUint::from(n) * count_irreducibles(q, n) <= BigUint::from(q).pow(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn inclusion_exclusion_matches_brute_force(g in graph(), q in prop::sample::select(vec![2u64, 3]), n in 0i64..=2) {
        prop_assume!(g.vertex_count() <= 5);
        let ctx = FieldCtx::from_order(q).unwrap();
        let b = Budgets { ie_labelings: 1 << 32, ..Budgets::default() };
        prop_assert_eq!(
            inclusion_exclusion_count(&g, &ctx, n, &b).unwrap(),
            brute_force_count(&g, &ctx, n, &b).unwrap()
        );
    }
}
