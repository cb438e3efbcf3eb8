use proptest::prelude::*;

use hyperlag::closed_form::lagrangian12_exact;
use hyperlag::extremal::{chromatic_number, lubell};
use hyperlag::format::{parse, serialize};
use hyperlag::homomorphism::exists_hom;
use hyperlag::hypergraph::is_subgraph;
use hyperlag::lagrangian::{
    evaluate, evaluate_uniform, gradient, kkt_residual, maximize, project_to_simplex,
    refine_support,
};
use hyperlag::{blowup, complete, BlowupSpec, Hypergraph, MaximizeOptions, Weighting};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

fn build(n: usize, types: &[usize], picks: &[bool]) -> Hypergraph {
    let cands: Vec<Vec<usize>> = types.iter().flat_map(|&k| subsets(n, k)).collect();
    let edges: Vec<&Vec<usize>> = cands
        .iter()
        .zip(picks.iter().cycle())
        .filter(|(_, &p)| p)
        .map(|(e, _)| e)
        .collect();
    Hypergraph::from_edges(n, edges).unwrap()
}

/// Hypergraphs on 1..=max_n vertices with edge sizes up to 3.
fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (
        1..=max_n,
        prop::collection::vec(any::<bool>(), 3),
        prop::collection::vec(any::<bool>(), 1..64),
    )
        .prop_map(|(n, which, picks)| {
            let types: Vec<usize> = (1..=3).filter(|&k| which[k - 1] && k <= n).collect();
            build(n, &types, &picks)
        })
}

fn graph_12(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n, prop::collection::vec(any::<bool>(), 1..32)).prop_map(|(n, picks)| {
        let types: Vec<usize> = [1, 2].into_iter().filter(|&k| k <= n).collect();
        build(n, &types, &picks)
    })
}

fn with_weighting(h: Hypergraph) -> impl Strategy<Value = (Hypergraph, Vec<f64>)> {
    let n = h.n();
    prop::collection::vec(0.001f64..1.0, n).prop_map(move |raw| {
        let total: f64 = raw.iter().sum();
        (h.clone(), raw.iter().map(|v| v / total).collect())
    })
}

fn sub_hypergraph(h: &Hypergraph, keep: &[bool]) -> Hypergraph {
    let edges: Vec<Vec<usize>> = h
        .edges()
        .zip(keep.iter().cycle())
        .filter(|(_, &k)| k)
        .map(|(e, _)| e.vertices().to_vec())
        .collect();
    Hypergraph::from_edges(h.n(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gradient_matches_central_differences((h, x) in hypergraph(8).prop_flat_map(with_weighting)) {
        let g = gradient(&h, &x).unwrap();
        let step = 1e-6;
        for i in 0..h.n() {
            let mut up = x.clone();
            let mut down = x.clone();
            up[i] += step;
            down[i] -= step;
            let fd = (evaluate(&h, &up).unwrap() - evaluate(&h, &down).unwrap()) / (2.0 * step);
            prop_assert!((fd - g[i]).abs() <= 1e-4, "component {i}: {fd} vs {}", g[i]);
        }
    }

    #[test]
    fn projection_lands_on_simplex(v in prop::collection::vec(-5.0f64..5.0, 1..12)) {
        let p = project_to_simplex(&v);
        prop_assert!(p.iter().all(|&c| c >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        let again = project_to_simplex(&p);
        for (a, b) in p.iter().zip(again.iter()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn text_format_round_trips(h in hypergraph(7)) {
        let text = serialize(&h);
        prop_assert_eq!(parse(&text).unwrap(), h);
    }

    #[test]
    fn blowup_edge_count(h in hypergraph(4), sizes in prop::collection::vec(1usize..4, 4)) {
        let spec = BlowupSpec::new(sizes[..h.n()].to_vec()).unwrap();
        let b = blowup(&h, &spec).unwrap();
        let expected: usize = h.edges().map(|e| e.vertices().iter().map(|&v| sizes[v]).product::<usize>()).sum();
        prop_assert_eq!(b.edge_count(), expected);
        prop_assert_eq!(b.n(), sizes[..h.n()].iter().sum::<usize>());
    }

    #[test]
    fn uniform_level_scaling((h, x) in hypergraph(7).prop_flat_map(with_weighting), k in 1usize..=3) {
        let level = h.level(k);
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let lhs = evaluate(level.graph(), &x).unwrap();
        let rhs = fact * evaluate_uniform(&level, &x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn refinement_never_lowers_value((h, x) in hypergraph(7).prop_flat_map(with_weighting)) {
        let w = Weighting::new(x).unwrap();
        let r = refine_support(&h, &w).unwrap();
        prop_assert!(evaluate(&h, &r).unwrap() >= evaluate(&h, &w).unwrap() - 1e-12);
        prop_assert!(r.support().len() <= w.support().len());
        if r.support() != w.support() {
            prop_assert!(r.support().len() < w.support().len());
        }
    }

    #[test]
    fn stationary_when_converged(h in hypergraph(7)) {
        let r = maximize(&h, &MaximizeOptions::default()).unwrap();
        if r.converged {
            prop_assert!(kkt_residual(&h, &r.weighting).unwrap() <= 1e-5);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lagrangian_is_monotone(h in hypergraph(6), keep in prop::collection::vec(any::<bool>(), 1..16)) {
        let sub = sub_hypergraph(&h, &keep);
        let opts = MaximizeOptions::default();
        let small = maximize(&sub, &opts).unwrap().value;
        let large = maximize(&h, &opts).unwrap().value;
        prop_assert!(small - large <= 1e-6, "{small} > {large}");
    }

    #[test]
    fn numeric_agrees_with_exact_12(h in graph_12(7)) {
        let exact = lagrangian12_exact(&h).unwrap();
        let numeric = maximize(&h, &MaximizeOptions::default()).unwrap().value;
        prop_assert!((hyperlag::rational::to_f64(&exact.value) - numeric).abs() <= 1e-6);
        prop_assert!((evaluate(&h, &exact.witness_weighting).unwrap() - hyperlag::rational::to_f64(&exact.value)).abs() <= 1e-12);
    }

    #[test]
    fn subgraph_implies_homomorphism(f in hypergraph(4), g in hypergraph(5)) {
        if is_subgraph(&f, &g) {
            prop_assert!(exists_hom(&f, &g).is_some());
        }
    }

    #[test]
    fn complete_12_hom_free_below_chromatic(h in graph_12(5), l in 1usize..=5) {
        let chi = chromatic_number(&h.level(2).into_graph()).unwrap();
        let k = complete(l, if l == 1 { &[1] } else { &[1, 2] }).unwrap();
        prop_assert_eq!(exists_hom(&h, &k).is_none(), l < chi);
    }

    #[test]
    fn lubell_at_most_type_count(h in hypergraph(6)) {
        let types: Vec<usize> = h.edge_types().into_iter().collect();
        let bound = hyperlag::rational::integer(types.len() as i64);
        let value = lubell(&h);
        prop_assert!(value <= bound);
        if !types.is_empty() {
            prop_assert_eq!(value == bound, h == complete(h.n(), &types).unwrap());
        }
    }
}
