//! Exact solvers where the Lagrangian has a combinatorial closed form.
//!
//! For a graph `G` with clique number `ω`, `λ(G) = ½(1 − 1/ω)`
//! (Motzkin–Straus). For a hypergraph whose edges have one or two vertices,
//! an optimal weighting of minimal support sits on a clique of the 2-level,
//! and the number of singleton-carrying vertices in that clique is `0`, `1`
//! or all of them. That leaves three candidate families:
//!
//! | support                                   | value            |
//! |-------------------------------------------|------------------|
//! | complete `{1,2}`-subgraph of order `t`    | `2 − 1/t`        |
//! | clique of order `ω`, no singletons        | `1 − 1/ω`        |
//! | clique of order `k` with one singleton    | `5/4 − 1/(4k)`   |
//!
//! In the last case the singleton vertex carries `1/2 + 1/(2k)` and the
//! others `1/(2k)` each.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, LevelGraph};
use crate::lagrangian::{self, Weighting};
use crate::rational::{integer, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub size: usize,
    /// Lexicographically smallest maximum clique, sorted.
    pub witness: Vec<usize>,
}

/// Which support structure attains the exact `λ′` of a `{1,2}`-graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case12 {
    AllSingletons,
    NoSingletons,
    OneHeavySingleton,
    SingleVertex,
    Empty,
}

impl Case12 {
    pub fn as_str(self) -> &'static str {
        match self {
            Case12::AllSingletons => "all-singletons",
            Case12::NoSingletons => "no-singletons",
            Case12::OneHeavySingleton => "one-heavy-singleton",
            Case12::SingleVertex => "single-vertex",
            Case12::Empty => "empty",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Exact12Result {
    #[serde(serialize_with = "crate::rational::serialize_str")]
    pub value: Rational,
    pub witness_weighting: Weighting,
    pub case: Case12,
    /// Order of the clique the witness is spread over.
    pub order: usize,
}

// ---- clique search -------------------------------------------------------

/// Greedy sequential colouring of `cand`; returns the vertices grouped by
/// colour class and the (1-based) colour of each position.
fn colour_sort(adj: &[Vec<bool>], cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !adj[v][u]))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(cand.len());
    let mut colours = Vec::with_capacity(cand.len());
    for (c, class) in classes.into_iter().enumerate() {
        for v in class {
            order.push(v);
            colours.push(c + 1);
        }
    }
    (order, colours)
}

fn expand(adj: &[Vec<bool>], depth: usize, cand: &[usize], best: &mut usize) {
    if cand.is_empty() {
        *best = (*best).max(depth);
        return;
    }
    let (order, colours) = colour_sort(adj, cand);
    for idx in (0..order.len()).rev() {
        if depth + colours[idx] <= *best {
            return;
        }
        let v = order[idx];
        let next: Vec<usize> = order[..idx]
            .iter()
            .copied()
            .filter(|&u| adj[v][u])
            .collect();
        expand(adj, depth + 1, &next, best);
    }
}

/// Clique number of the subgraph induced on `cand`.
pub(crate) fn clique_number(adj: &[Vec<bool>], cand: &[usize]) -> usize {
    let mut best = 0;
    expand(adj, 0, cand, &mut best);
    best
}

fn has_clique_of_size(adj: &[Vec<bool>], cand: &[usize], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut best = k - 1;
    expand(adj, 0, cand, &mut best);
    best >= k
}

/// Lexicographically smallest maximum clique inside `cand`.
pub(crate) fn lex_min_max_clique(adj: &[Vec<bool>], cand: &[usize]) -> Vec<usize> {
    let omega = clique_number(adj, cand);
    let mut pool: Vec<usize> = cand.to_vec();
    pool.sort_unstable();
    let mut chosen = Vec::with_capacity(omega);
    while chosen.len() < omega {
        let need = omega - chosen.len();
        let (v, rest) = pool
            .iter()
            .enumerate()
            .find_map(|(i, &v)| {
                let rest: Vec<usize> = pool[i + 1..]
                    .iter()
                    .copied()
                    .filter(|&u| adj[v][u])
                    .collect();
                has_clique_of_size(adj, &rest, need - 1).then_some((v, rest))
            })
            .expect("a clique of size omega exists");
        chosen.push(v);
        pool = rest;
    }
    chosen
}

fn require_two_uniform(g: &Hypergraph) -> Result<()> {
    match g.uniformity() {
        Some(0) | Some(2) => Ok(()),
        _ => Err(Error::invalid("expected a 2-uniform graph")),
    }
}

fn require_12(h: &Hypergraph) -> Result<()> {
    if h.types_within(&[1, 2]) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "edge types {:?} are not within {{1,2}}",
            h.edge_types()
        )))
    }
}

/// Exact maximum clique of a 2-uniform graph (branch and bound with greedy
/// colouring bounds). A single vertex counts as a clique of order 1.
pub fn max_clique(g: &Hypergraph) -> Result<CliqueResult> {
    require_two_uniform(g)?;
    let adj = g.pair_adjacency();
    let all: Vec<usize> = (0..g.n()).collect();
    let witness = lex_min_max_clique(&adj, &all);
    Ok(CliqueResult {
        size: witness.len(),
        witness,
    })
}

/// `λ(G) = ½(1 − 1/ω)`; zero for an edgeless graph.
pub fn motzkin_straus_value(g: &Hypergraph) -> Result<Rational> {
    let omega = max_clique(g)?.size as i64;
    Ok(ratio(omega - 1, 2 * omega))
}

/// Largest `t` such that some `t` vertices carry all their singletons and
/// all pairs between them.
pub fn max_complete_12_order(h: &Hypergraph) -> Result<usize> {
    require_12(h)?;
    let singles = h.singleton_vertices();
    Ok(clique_number(&h.pair_adjacency(), &singles))
}

/// Exact `λ′` of a hypergraph with edge types within `{1, 2}`.
pub fn lagrangian12_exact(h: &Hypergraph) -> Result<Exact12Result> {
    require_12(h)?;
    let n = h.n();
    if h.is_edgeless() {
        return Ok(Exact12Result {
            value: integer(0),
            witness_weighting: Weighting::uniform(n),
            case: Case12::Empty,
            order: 0,
        });
    }
    let adj = h.pair_adjacency();
    let singles = h.singleton_vertices();

    let complete = lex_min_max_clique(&adj, &singles);
    let t = complete.len() as i64;
    if t >= 2 {
        return Ok(Exact12Result {
            value: ratio(2 * t - 1, t),
            witness_weighting: Weighting::uniform_on(n, &complete),
            case: Case12::AllSingletons,
            order: complete.len(),
        });
    }

    if !singles.is_empty() {
        // t = 1: no two singleton vertices are adjacent, so a clique through
        // a singleton vertex carries exactly one singleton.
        let mut heavy: Option<Vec<usize>> = None;
        for &v in &singles {
            let nbrs: Vec<usize> = (0..n).filter(|&u| adj[v][u]).collect();
            let k = 1 + clique_number(&adj, &nbrs);
            if heavy.as_ref().is_none_or(|c| k > c.len()) {
                let mut clique = vec![v];
                clique.extend(lex_min_max_clique(&adj, &nbrs));
                heavy = Some(clique);
            }
        }
        // clique[0] is the singleton vertex
        let clique = heavy.expect("singles is nonempty");
        let k = clique.len();
        if k >= 2 {
            let mut x = vec![0.0; n];
            let kf = k as f64;
            for &u in &clique[1..] {
                x[u] = 0.5 / kf;
            }
            x[clique[0]] = 0.5 + 0.5 / kf;
            let k = k as i64;
            return Ok(Exact12Result {
                value: ratio(5 * k - 1, 4 * k),
                witness_weighting: Weighting::from_raw(x),
                case: Case12::OneHeavySingleton,
                order: clique.len(),
            });
        }
        return Ok(Exact12Result {
            value: integer(1),
            witness_weighting: Weighting::vertex(n, singles[0]),
            case: Case12::SingleVertex,
            order: 1,
        });
    }

    let all: Vec<usize> = (0..n).collect();
    let clique = lex_min_max_clique(&adj, &all);
    let w = clique.len() as i64;
    Ok(Exact12Result {
        value: ratio(w - 1, w),
        witness_weighting: Weighting::uniform_on(n, &clique),
        case: Case12::NoSingletons,
        order: clique.len(),
    })
}

/// `(λ′(G, x), k!·λ(G, x))` for a `k`-uniform `G`; the two agree.
pub fn uniform_relation_check(g: &Hypergraph, x: &[f64]) -> Result<(f64, f64)> {
    let k = g
        .uniformity()
        .ok_or_else(|| Error::invalid("expected a uniform hypergraph"))?;
    let nonuniform = lagrangian::evaluate(g, x)?;
    if k == 0 {
        return Ok((nonuniform, 0.0));
    }
    let level = LevelGraph::new(k, g.clone())?;
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    Ok((nonuniform, fact * lagrangian::evaluate_uniform(&level, x)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;
    use crate::lagrangian::{evaluate, kkt_residual};

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn brute_clique(g: &Hypergraph) -> usize {
        let n = g.n();
        let adj = g.pair_adjacency();
        (0u32..1 << n)
            .filter(|m| {
                (0..n).all(|i| (i + 1..n).all(|j| m >> i & 1 == 0 || m >> j & 1 == 0 || adj[i][j]))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn clique_examples() {
        assert_eq!(max_clique(&complete(3, &[2]).unwrap()).unwrap().size, 3);
        assert_eq!(max_clique(&hg(3, &[&[0, 1], &[1, 2]])).unwrap().size, 2);

        // complement of a perfect matching on 6 vertices
        let mut cocktail = complete(6, &[2]).unwrap();
        for pair in [[0, 1], [2, 3], [4, 5]] {
            cocktail = cocktail
                .remove_edge(&crate::Edge::new(pair).unwrap())
                .unwrap();
        }
        assert_eq!(brute_clique(&cocktail), 3);
        let r = max_clique(&cocktail).unwrap();
        assert_eq!(r.size, 3);
        assert_eq!(r.witness, vec![0, 2, 4]);

        let single = Hypergraph::new(4).unwrap();
        assert_eq!(
            max_clique(&single).unwrap(),
            CliqueResult {
                size: 1,
                witness: vec![0]
            }
        );
        assert!(max_clique(&hg(2, &[&[0]])).is_err());
    }

    #[test]
    fn clique_witness_is_lex_smallest() {
        // two triangles {1,2,3} and {0,4,5}; lex order prefers {0,4,5}
        let g = hg(6, &[&[1, 2], &[2, 3], &[1, 3], &[0, 4], &[4, 5], &[0, 5]]);
        assert_eq!(max_clique(&g).unwrap().witness, vec![0, 4, 5]);
    }

    #[test]
    fn motzkin_straus_examples() {
        assert_eq!(
            motzkin_straus_value(&complete(4, &[2]).unwrap()).unwrap(),
            ratio(3, 8)
        );
        let bipartite = hg(
            6,
            &[
                &[0, 3],
                &[0, 4],
                &[0, 5],
                &[1, 3],
                &[1, 4],
                &[1, 5],
                &[2, 3],
            ],
        );
        assert_eq!(motzkin_straus_value(&bipartite).unwrap(), ratio(1, 4));
        assert_eq!(
            motzkin_straus_value(&Hypergraph::new(3).unwrap()).unwrap(),
            integer(0)
        );
    }

    #[test]
    fn complete_12_order_examples() {
        assert_eq!(
            max_complete_12_order(&complete(5, &[1, 2]).unwrap()).unwrap(),
            5
        );
        assert_eq!(max_complete_12_order(&hg(3, &[&[0], &[1, 2]])).unwrap(), 1);
        assert_eq!(
            max_complete_12_order(&complete(3, &[2]).unwrap()).unwrap(),
            0
        );
        assert!(max_complete_12_order(&complete(3, &[3]).unwrap()).is_err());
    }

    #[test]
    fn exact12_examples() {
        let r = lagrangian12_exact(&complete(3, &[1, 2]).unwrap()).unwrap();
        assert_eq!(r.value, ratio(5, 3));
        assert_eq!(r.case, Case12::AllSingletons);

        let r = lagrangian12_exact(&complete(4, &[2]).unwrap()).unwrap();
        assert_eq!(r.value, ratio(3, 4));
        assert_eq!(r.case, Case12::NoSingletons);

        let r = lagrangian12_exact(&Hypergraph::new(2).unwrap()).unwrap();
        assert_eq!(r.value, integer(0));
        assert_eq!(r.case, Case12::Empty);

        let r = lagrangian12_exact(&hg(3, &[&[1], &[0, 2]])).unwrap();
        assert_eq!(r.value, integer(1));
        assert_eq!(r.case, Case12::SingleVertex);
        assert_eq!(&*r.witness_weighting, &[0.0, 1.0, 0.0]);

        assert!(lagrangian12_exact(&complete(3, &[3]).unwrap()).is_err());
    }

    #[test]
    fn one_heavy_singleton_against_brute_force() {
        // max over a of a + 2a(1−a) on [0,1]: derivative 3 − 4a = 0
        let brute = (0..=100_000)
            .map(|i| {
                let a = i as f64 / 100_000.0;
                a + 2.0 * a * (1.0 - a)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((brute - 1.125).abs() < 1e-9);

        let h = hg(2, &[&[0], &[0, 1]]);
        let r = lagrangian12_exact(&h).unwrap();
        assert_eq!(r.value, ratio(9, 8));
        assert_eq!(r.case, Case12::OneHeavySingleton);
        assert_eq!(&*r.witness_weighting, &[0.75, 0.25]);
        assert!((evaluate(&h, &r.witness_weighting).unwrap() - 1.125).abs() < 1e-12);
    }

    #[test]
    fn one_heavy_singleton_expansion() {
        // x_1 + 2 Σ x_i x_j at x_1 = 1/2 + 1/(2k), others 1/(2k), evaluated
        // term by term in exact arithmetic for several k
        for k in 2i64..=12 {
            let heavy = ratio(k + 1, 2 * k);
            let light = ratio(1, 2 * k);
            let pairs_with_heavy = integer(k - 1) * &heavy * &light;
            let pairs_light = ratio((k - 1) * (k - 2), 2) * &light * &light;
            let value = heavy + integer(2) * (pairs_with_heavy + pairs_light);
            assert_eq!(value, ratio(5 * k - 1, 4 * k), "k = {k}");
        }
    }

    #[test]
    fn witnesses_are_stationary() {
        for h in [
            complete(4, &[1, 2]).unwrap(),
            hg(4, &[&[0], &[0, 1], &[0, 2], &[1, 2], &[2, 3]]),
            complete(5, &[2]).unwrap(),
            hg(3, &[&[2], &[0, 1]]),
        ] {
            let r = lagrangian12_exact(&h).unwrap();
            let v = evaluate(&h, &r.witness_weighting).unwrap();
            assert!((v - crate::rational::to_f64(&r.value)).abs() <= 1e-12);
            assert!(kkt_residual(&h, &r.witness_weighting).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn uniform_relation_examples() {
        let (a, b) = uniform_relation_check(&complete(3, &[2]).unwrap(), &[1.0 / 3.0; 3]).unwrap();
        assert!((a - 2.0 / 3.0).abs() < 1e-12 && (b - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(
            uniform_relation_check(&hg(2, &[&[0, 1]]), &[0.5, 0.5]).unwrap(),
            (0.5, 0.5)
        );
        assert_eq!(
            uniform_relation_check(&hg(1, &[&[0]]), &[1.0]).unwrap(),
            (1.0, 1.0)
        );
        assert!(uniform_relation_check(&hg(2, &[&[0], &[0, 1]]), &[0.5, 0.5]).is_err());
    }
}
