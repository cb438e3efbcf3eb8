//! Seeded random instances and exhaustive enumeration of small `{1,2}`-graphs.

use rand::Rng;
use rand_distr::Exp1;

use crate::hypergraph::{k_subsets, Hypergraph};
use crate::lagrangian::Weighting;

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Hypergraph {
    random_uniform(n, 2, p, rng)
}

/// Each `k`-subset of `0..n` is an edge independently with probability `p`.
pub fn random_uniform<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Hypergraph {
    let edges: Vec<Vec<usize>> = k_subsets(n, k)
        .into_iter()
        .filter(|_| rng.random_bool(p))
        .collect();
    Hypergraph::from_edges(n, edges).expect("subsets are valid edges")
}

/// Singletons with probability `p1`, pairs with probability `p2`.
pub fn random_12_graph<R: Rng + ?Sized>(n: usize, p1: f64, p2: f64, rng: &mut R) -> Hypergraph {
    let mut edges: Vec<Vec<usize>> = Vec::new();
    edges.extend((0..n).filter(|_| rng.random_bool(p1)).map(|v| vec![v]));
    edges.extend(k_subsets(n, 2).into_iter().filter(|_| rng.random_bool(p2)));
    Hypergraph::from_edges(n, edges).expect("subsets are valid edges")
}

/// Normalised vector of independent exponential samples (uniform on the simplex).
pub fn random_weighting<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Weighting {
    let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    Weighting::from_raw(raw.into_iter().map(|v| v / total).collect())
}

/// Candidate edges of a `{1,2}`-graph on `n` vertices: singletons, then pairs.
fn candidates_12(n: usize) -> Vec<Vec<usize>> {
    let mut c: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    c.extend(k_subsets(n, 2));
    c
}

/// Number of labelled `{1,2}`-graphs on `n` vertices, `2^(n + C(n,2))`.
pub fn count_12_graphs(n: usize) -> u64 {
    1u64 << (n + n * (n.saturating_sub(1)) / 2)
}

/// The `code`-th labelled `{1,2}`-graph on `n` vertices; bit `i` of `code`
/// selects the `i`-th candidate edge (singletons first, then pairs in
/// lexicographic order).
pub fn nth_12_graph(n: usize, code: u64) -> Hypergraph {
    let edges: Vec<Vec<usize>> = candidates_12(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| code >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Hypergraph::from_edges(n, edges).expect("subsets are valid edges")
}

/// Every labelled `{1,2}`-graph on `n` vertices.
pub fn all_12_graphs(n: usize) -> impl Iterator<Item = Hypergraph> {
    (0..count_12_graphs(n)).map(move |code| nth_12_graph(n, code))
}
