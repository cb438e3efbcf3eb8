use serde::Serialize;

use crate::closed_form::lagrangian12_exact;
use crate::embed::{find_map, Injectivity, MaskHost};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph};
use crate::rational::{integer, Rational};

use super::search::Candidates;

/// Effect of deleting one edge on the exact `λ′`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeDrop {
    pub edge: Edge,
    #[serde(serialize_with = "crate::rational::serialize_str")]
    pub after: Rational,
    #[serde(serialize_with = "crate::rational::serialize_str")]
    pub drop: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseReport {
    pub dense: bool,
    #[serde(serialize_with = "crate::rational::serialize_str")]
    pub value: Rational,
    /// Isolated vertices; deleting one is a proper subgraph with the same `λ′`.
    pub isolated: Vec<usize>,
    pub drops: Vec<EdgeDrop>,
}

/// Checks whether every proper subgraph of the `{1,2}`-graph `g` has a
/// strictly smaller `λ′`.
///
/// `λ′` is monotone under edge deletion, so it is enough to delete one edge
/// at a time. A proper subgraph may also drop a vertex, which changes nothing
/// unless the vertex is isolated; graphs with isolated vertices (including
/// every edgeless graph) are therefore reported as not dense.
pub fn dense_report(g: &Hypergraph) -> Result<DenseReport> {
    if !g.types_within(&[1, 2]) {
        return Err(Error::invalid("denseness needs a {1,2}-graph"));
    }
    let value = lagrangian12_exact(g)?.value;
    let isolated = g.isolated_vertices();
    let drops = g
        .edges()
        .map(|e| {
            let after = lagrangian12_exact(&g.remove_edge(e)?)?.value;
            let drop = &value - &after;
            Ok(EdgeDrop {
                edge: e.clone(),
                after,
                drop,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dense = isolated.is_empty() && drops.iter().all(|d| d.drop > integer(0));
    Ok(DenseReport {
        dense,
        value,
        isolated,
        drops,
    })
}

pub fn is_dense(g: &Hypergraph) -> Result<bool> {
    dense_report(g).map(|r| r.dense)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LagrangianBound {
    #[serde(serialize_with = "crate::rational::serialize_str")]
    pub value: Rational,
    pub witness: Hypergraph,
}

/// Largest exact `λ′(G)` over `F`-hom-free `{1,2}`-graphs `G` on at most
/// `max_n` vertices with edge types inside those of `F`.
///
/// Every such value is a lower bound on the Turán density of `F`. Hosts are
/// enumerated with pruning (hom-freeness passes to subgraphs); `budget`
/// caps the number of candidate edges at the largest `n`. The witness is the
/// first host, by vertex count and then include-first order, reaching the
/// maximum.
pub fn pi_lower_via_lagrangian(
    f: &Hypergraph,
    max_n: usize,
    budget: usize,
) -> Result<LagrangianBound> {
    if !f.types_within(&[1, 2]) {
        return Err(Error::invalid("the exact bound needs a {1,2}-graph F"));
    }
    if max_n == 0 {
        return Err(Error::invalid("max_n must be at least 1"));
    }
    let types = f.edge_types();
    let largest = Candidates::new(types.iter().copied(), max_n)?;
    if largest.len() > budget {
        return Err(Error::Budget {
            what: format!("host enumeration on {max_n} vertices (candidate edges)"),
            required: largest.len(),
            budget,
        });
    }

    let mut best: Option<LagrangianBound> = None;
    for n in 1..=max_n {
        let cands = Candidates::new(types.iter().copied(), n)?;
        let mut walk = Walk {
            f,
            cands: &cands,
            n,
            host: MaskHost::new(n),
            included: vec![false; cands.len()],
            best: best.take(),
        };
        if find_map(f, &walk.host, Injectivity::PerEdge).is_none() {
            walk.run(0)?;
        }
        best = walk.best;
    }
    best.ok_or_else(|| Error::Infeasible(format!("no F-hom-free host on at most {max_n} vertices")))
}

struct Walk<'a> {
    f: &'a Hypergraph,
    cands: &'a Candidates,
    n: usize,
    host: MaskHost,
    included: Vec<bool>,
    best: Option<LagrangianBound>,
}

impl Walk<'_> {
    fn run(&mut self, idx: usize) -> Result<()> {
        if idx == self.cands.len() {
            let g = self.cands.host_graph(self.n, &self.included);
            let value = lagrangian12_exact(&g)?.value;
            if self.best.as_ref().is_none_or(|b| value > b.value) {
                self.best = Some(LagrangianBound { value, witness: g });
            }
            return Ok(());
        }
        let mask = self.cands.masks[idx];
        self.host.set(mask, true);
        if find_map(self.f, &self.host, Injectivity::PerEdge).is_none() {
            self.included[idx] = true;
            self.run(idx + 1)?;
            self.included[idx] = false;
        }
        self.host.set(mask, false);
        self.run(idx + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homomorphism::is_hom_free;
    use crate::hypergraph::complete;
    use crate::rational::ratio;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn complete_graphs_are_dense() {
        for t in 2..=5 {
            let k = complete(t, &[1, 2]).unwrap();
            assert!(is_dense(&k).unwrap(), "t={t}");
            assert!(!is_dense(&k.with_isolated_vertices(1)).unwrap());
            let pair = hg(2, &[&[0, 1]]);
            assert!(!is_dense(&k.disjoint_union(&pair)).unwrap());
        }
    }

    #[test]
    fn triangle_plus_pair_not_dense() {
        let g = hg(5, &[&[0, 1], &[1, 2], &[0, 2], &[3, 4]]);
        let r = dense_report(&g).unwrap();
        assert!(!r.dense);
        let pair = r
            .drops
            .iter()
            .find(|d| d.edge.vertices() == [3, 4])
            .unwrap();
        assert_eq!(pair.after, ratio(2, 3));
        assert_eq!(pair.drop, integer(0));
    }

    #[test]
    fn edgeless_and_bad_types() {
        assert!(!is_dense(&Hypergraph::new(1).unwrap()).unwrap());
        assert!(!is_dense(&Hypergraph::new(3).unwrap()).unwrap());
        assert!(is_dense(&complete(3, &[3]).unwrap()).is_err());
    }

    #[test]
    fn singleton_with_pair_is_dense() {
        // value 9/8; removing either edge leaves 1
        let g = hg(2, &[&[0], &[0, 1]]);
        let r = dense_report(&g).unwrap();
        assert_eq!(r.value, ratio(9, 8));
        assert!(r.dense);
    }

    #[test]
    fn lower_bounds() {
        let k3 = complete(3, &[1, 2]).unwrap();
        let b = pi_lower_via_lagrangian(&k3, 3, 22).unwrap();
        assert_eq!(b.value, ratio(3, 2));
        assert_eq!(b.witness, complete(2, &[1, 2]).unwrap());
        assert!(is_hom_free(&b.witness, &k3));

        let tri = complete(3, &[2]).unwrap();
        let b = pi_lower_via_lagrangian(&tri, 3, 22).unwrap();
        assert_eq!(b.value, ratio(1, 2));

        // R(F) = {1}: every singleton admits a homomorphism, only the empty host remains
        let singles = hg(2, &[&[0], &[1]]);
        let b = pi_lower_via_lagrangian(&singles, 3, 22).unwrap();
        assert_eq!(b.value, integer(0));
    }

    #[test]
    fn lower_bound_budget() {
        let k3 = complete(3, &[1, 2]).unwrap();
        assert!(matches!(
            pi_lower_via_lagrangian(&k3, 7, 22),
            Err(Error::Budget { required: 28, .. })
        ));
    }
}
