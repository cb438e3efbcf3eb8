//! Lubell densities, chromatic numbers and finite-`n` extremal problems.
//!
//! The Lubell function of a hypergraph `G` on `n` vertices is
//! `h_n(G) = Σ_k |E(G^k)| / C(n, k)`; the Turán density of `F` is the limit
//! of the largest Lubell value over `F`-free hosts `G ⊆ K_n^{R(F)}`. Only
//! finite-`n` values are computed here. The closed formula
//! `2 − 1/(χ(H²) − 1)` is available for `{1,2}`-graphs with a non-bipartite
//! 2-level.

mod cache;
mod dense;
mod search;

pub use cache::{cached_search, ExtremalCache, CACHE_ENV};
pub use dense::{
    dense_report, is_dense, pi_lower_via_lagrangian, DenseReport, EdgeDrop, LagrangianBound,
};
pub use search::{extremal_search, ExtremalRecord, Mode, SearchKind, SearchOptions};

use num_bigint::BigInt;
use serde::Serialize;

use crate::closed_form::clique_number;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{binomial, integer, ratio, Rational};

/// Exact Lubell value `Σ_k |E(G^k)| / C(n, k)`.
pub fn lubell(g: &Hypergraph) -> Rational {
    let mut counts = std::collections::BTreeMap::<usize, i64>::new();
    for e in g.edges() {
        *counts.entry(e.len()).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(k, c)| Rational::new(BigInt::from(c), binomial(g.n(), k)))
        .fold(integer(0), |acc, r| acc + r)
}

/// Exact chromatic number of a 2-uniform graph.
///
/// Tries `k = ω, ω+1, …` below the DSATUR upper bound with a backtracking
/// colourer that never opens more than one new colour at a time.
pub fn chromatic_number(g: &Hypergraph) -> Result<usize> {
    if !matches!(g.uniformity(), Some(0) | Some(2)) {
        return Err(Error::invalid("chromatic number needs a 2-uniform graph"));
    }
    let n = g.n();
    if g.is_edgeless() {
        return Ok(1);
    }
    let adj = g.pair_adjacency();
    let all: Vec<usize> = (0..n).collect();
    let lower = clique_number(&adj, &all);
    let (upper, order) = dsatur(&adj);
    for k in lower..upper {
        if colourable(&adj, &order, k) {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// DSATUR greedy colouring: number of colours used and the visiting order.
fn dsatur(adj: &[Vec<bool>]) -> (usize, Vec<usize>) {
    let n = adj.len();
    let degree: Vec<usize> = adj
        .iter()
        .map(|row| row.iter().filter(|&&b| b).count())
        .collect();
    let mut colour = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut used = 0;
    for _ in 0..n {
        let saturation = |v: usize| {
            let mut seen: Vec<usize> = (0..n)
                .filter(|&u| adj[v][u] && colour[u] != usize::MAX)
                .map(|u| colour[u])
                .collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        };
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by(|&a, &b| {
                saturation(a)
                    .cmp(&saturation(b))
                    .then(degree[a].cmp(&degree[b]))
                    .then(b.cmp(&a))
            })
            .expect("an uncoloured vertex remains");
        let c = (0..)
            .find(|&c| (0..n).all(|u| !adj[v][u] || colour[u] != c))
            .unwrap();
        colour[v] = c;
        used = used.max(c + 1);
        order.push(v);
    }
    (used, order)
}

fn colourable(adj: &[Vec<bool>], order: &[usize], k: usize) -> bool {
    fn place(
        adj: &[Vec<bool>],
        order: &[usize],
        colour: &mut [usize],
        depth: usize,
        opened: usize,
        k: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for c in 0..k.min(opened + 1) {
            if (0..adj.len()).any(|u| adj[v][u] && colour[u] == c) {
                continue;
            }
            colour[v] = c;
            if place(adj, order, colour, depth + 1, opened.max(c + 1), k) {
                return true;
            }
            colour[v] = usize::MAX;
        }
        false
    }
    let mut colour = vec![usize::MAX; adj.len()];
    place(adj, order, &mut colour, 0, 0, k)
}

/// `2 − 1/(χ(H²) − 1)` for a `{1,2}`-graph whose 2-level is non-bipartite.
///
/// Both levels must be present: without singletons the host family is
/// 2-uniform and the Erdős–Stone value `1/2 − 1/(2(χ − 1))` applies instead.
pub fn turan_density_12(h: &Hypergraph) -> Result<Rational> {
    if !h.types_within(&[1, 2]) {
        return Err(Error::invalid(format!(
            "edge types {:?} are not within {{1,2}}",
            h.edge_types()
        )));
    }
    if h.singleton_vertices().is_empty() {
        return Err(Error::OutOfHypothesis(
            "H1 empty: Theorem hypothesis violated".into(),
        ));
    }
    let pairs = h.level(2).into_graph();
    if pairs.is_edgeless() {
        return Err(Error::OutOfHypothesis(
            "H2 empty: Theorem hypothesis violated".into(),
        ));
    }
    let chi = chromatic_number(&pairs)? as i64;
    if chi <= 2 {
        return Err(Error::OutOfHypothesis(
            "H2 bipartite: Theorem hypothesis violated".into(),
        ));
    }
    Ok(ratio(2 * chi - 3, chi - 1))
}

/// One `(n, max Lubell)` point of a density sequence.
#[derive(Debug, Clone, Serialize)]
pub struct DensityPoint {
    pub n: usize,
    #[serde(serialize_with = "crate::rational::serialize_str")]
    pub max_lubell: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityEstimate {
    pub mode: Mode,
    pub search: SearchKind,
    pub values: Vec<DensityPoint>,
    /// The closed-form density, when `F` satisfies its hypotheses.
    #[serde(serialize_with = "serialize_opt")]
    pub formula_value: Option<Rational>,
}

fn serialize_opt<S: serde::Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Runs [`extremal_search`] for each `n` in `ns` (nonempty, strictly increasing).
pub fn density_sequence(
    f: &Hypergraph,
    ns: &[usize],
    mode: Mode,
    search: SearchKind,
    opts: &SearchOptions,
) -> Result<DensityEstimate> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "n range must be nonempty and strictly increasing",
        ));
    }
    let values = ns
        .iter()
        .map(|&n| {
            extremal_search(f, n, mode, search, opts).map(|r| DensityPoint {
                n,
                max_lubell: r.max_lubell,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityEstimate {
        mode,
        search,
        values,
        formula_value: turan_density_12(f).ok(),
    })
}
