//! Non-uniform hypergraphs, level graphs, complete graphs and blowups.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::embed::{self, Injectivity};
use crate::error::{Error, Result};

/// A nonempty set of vertices, stored sorted.
///
/// Edges order by cardinality first and then lexicographically, which is
/// the order used by the text serialisation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge(Vec<usize>);

impl Edge {
    /// Builds an edge from distinct vertex indices in any order.
    pub fn new<I: IntoIterator<Item = usize>>(vertices: I) -> Result<Self> {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::invalid("edges must be nonempty"));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("repeated vertex in edge {v:?}")));
        }
        Ok(Edge(v))
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// 1-based labels, as used by the text format and JSON output.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|v| v + 1).collect()
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "}}")
    }
}

/// JSON form: the list of 1-based labels.
impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(s)
    }
}

/// A hypergraph on vertices `0..n` with a set of nonempty edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    edges: BTreeSet<Edge>,
}

/// JSON form: `{"n": .., "edges": [[1], [1, 2], ..]}` with 1-based labels.
impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Hypergraph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &self.edges)?;
        st.end()
    }
}

impl Hypergraph {
    /// Edgeless hypergraph on `n ≥ 1` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a hypergraph needs at least one vertex"));
        }
        Ok(Hypergraph {
            n,
            edges: BTreeSet::new(),
        })
    }

    /// Builds a hypergraph from edge vertex lists. Duplicate edges are rejected.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        let mut h = Hypergraph::new(n)?;
        for e in edges {
            h.insert_edge(Edge::new(e.as_ref().iter().copied())?)?;
        }
        Ok(h)
    }

    /// Inserts an edge, rejecting out-of-range vertices and duplicates.
    pub fn insert_edge(&mut self, e: Edge) -> Result<()> {
        if let Some(&v) = e.vertices().last() {
            if v >= self.n {
                return Err(Error::invalid(format!(
                    "vertex {} out of range 1..={}",
                    v + 1,
                    self.n
                )));
            }
        }
        if !self.edges.insert(e.clone()) {
            return Err(Error::invalid(format!("duplicate edge {e}")));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in (size, lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn has_edge(&self, vertices: &[usize]) -> bool {
        Edge::new(vertices.iter().copied())
            .map(|e| self.edges.contains(&e))
            .unwrap_or(false)
    }

    /// The edge-type set `R(H) = { |e| : e ∈ E(H) }`.
    pub fn edge_types(&self) -> BTreeSet<usize> {
        self.edges.iter().map(Edge::len).collect()
    }

    /// True if every edge type is in `allowed`.
    pub fn types_within(&self, allowed: &[usize]) -> bool {
        self.edges.iter().all(|e| allowed.contains(&e.len()))
    }

    /// The level hypergraph `H^k`: all edges of cardinality `k`.
    pub fn level(&self, k: usize) -> LevelGraph {
        LevelGraph {
            k,
            graph: Hypergraph {
                n: self.n,
                edges: self
                    .edges
                    .iter()
                    .filter(|e| e.len() == k)
                    .cloned()
                    .collect(),
            },
        }
    }

    /// Common edge size, or `None` if the hypergraph mixes sizes.
    /// Edgeless hypergraphs report `Some(0)`.
    pub fn uniformity(&self) -> Option<usize> {
        let types = self.edge_types();
        match types.len() {
            0 => Some(0),
            1 => types.into_iter().next(),
            _ => None,
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Vertices that lie in no edge.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut touched = vec![false; self.n];
        for e in &self.edges {
            for &v in e.vertices() {
                touched[v] = true;
            }
        }
        (0..self.n).filter(|&v| !touched[v]).collect()
    }

    /// Vertices `v` with `{v}` an edge.
    pub fn singleton_vertices(&self) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.len() == 1)
            .map(|e| e.vertices()[0])
            .collect()
    }

    /// Adjacency matrix of the 2-level.
    pub fn pair_adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for e in self.edges.iter().filter(|e| e.len() == 2) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    /// Copy of `self` without `e`.
    pub fn remove_edge(&self, e: &Edge) -> Result<Hypergraph> {
        let mut out = self.clone();
        if !out.edges.remove(e) {
            return Err(Error::invalid(format!("edge {e} is not present")));
        }
        Ok(out)
    }

    /// Copy of `self` with `extra` isolated vertices appended.
    pub fn with_isolated_vertices(&self, extra: usize) -> Hypergraph {
        Hypergraph {
            n: self.n + extra,
            edges: self.edges.clone(),
        }
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Hypergraph {
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| Edge(e.vertices().iter().map(|v| v + shift).collect())),
        );
        Hypergraph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Returns a copy with vertex `v` relabelled to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length must equal n"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.vertices().iter().map(|&v| perm[v])))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Hypergraph { n: self.n, edges })
    }
}

/// A hypergraph all of whose edges have exactly `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelGraph {
    k: usize,
    graph: Hypergraph,
}

impl LevelGraph {
    /// Wraps a hypergraph, checking that every edge has `k` vertices.
    pub fn new(k: usize, graph: Hypergraph) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("level k must be positive"));
        }
        if let Some(e) = graph.edges().find(|e| e.len() != k) {
            return Err(Error::invalid(format!("edge {e} is not of size {k}")));
        }
        Ok(LevelGraph { k, graph })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn into_graph(self) -> Hypergraph {
        self.graph
    }
}

/// Class sizes `(s_1, …, s_n)` of a blowup; all at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupSpec(Vec<usize>);

impl BlowupSpec {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.contains(&0) {
            return Err(Error::invalid("blowup multiplicities must be at least 1"));
        }
        Ok(BlowupSpec(multiplicities))
    }

    /// `(s, s, …, s)` of length `n`.
    pub fn uniform(n: usize, s: usize) -> Result<Self> {
        Self::new(vec![s; n])
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.0
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The complete hypergraph `K_n^R`: every subset of `0..n` whose size is in `types`.
pub fn complete(n: usize, types: &[usize]) -> Result<Hypergraph> {
    let mut h = Hypergraph::new(n)?;
    let types: BTreeSet<usize> = types.iter().copied().collect();
    for &r in &types {
        if r == 0 || r > n {
            return Err(Error::invalid(format!("edge type {r} is not in 1..={n}")));
        }
        h.edges.extend(k_subsets(n, r).into_iter().map(Edge));
    }
    Ok(h)
}

/// Blowup `H(s_1, …, s_n)`: vertex `i` becomes the class
/// `[s_1+…+s_{i-1}, s_1+…+s_i)` and every edge becomes all of its transversals.
pub fn blowup(h: &Hypergraph, spec: &BlowupSpec) -> Result<Hypergraph> {
    let s = spec.multiplicities();
    if s.len() != h.n() {
        return Err(Error::invalid(format!(
            "blowup needs {} multiplicities, got {}",
            h.n(),
            s.len()
        )));
    }
    let mut offsets = Vec::with_capacity(s.len());
    let mut total = 0;
    for &si in s {
        offsets.push(total);
        total += si;
    }
    let mut out = Hypergraph::new(total)?;
    for e in h.edges() {
        let classes = e.vertices();
        let mut pick = vec![0usize; classes.len()];
        'odometer: loop {
            let verts = classes
                .iter()
                .zip(&pick)
                .map(|(&c, &p)| offsets[c] + p)
                .collect();
            // transversals of distinct classes are automatically sorted and distinct
            out.edges.insert(Edge(verts));
            let mut i = classes.len();
            loop {
                if i == 0 {
                    break 'odometer;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < s[classes[i]] {
                    break;
                }
                pick[i] = 0;
            }
        }
    }
    Ok(out)
}

/// Non-induced containment: an injective vertex map sending every edge of
/// `f` onto an edge of `g`.
pub fn is_subgraph(f: &Hypergraph, g: &Hypergraph) -> bool {
    subgraph_embedding(f, g).is_some()
}

/// An injective map realising `f ⊆ g`, if one exists.
pub fn subgraph_embedding(f: &Hypergraph, g: &Hypergraph) -> Option<Vec<usize>> {
    if f.n() > g.n() || f.edge_count() > g.edge_count() {
        return None;
    }
    embed::find_map(f, &embed::HashHost::new(g), Injectivity::Global)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn edge_types_examples() {
        assert_eq!(hg(2, &[&[0], &[0, 1]]).edge_types(), BTreeSet::from([1, 2]));
        assert!(Hypergraph::new(3).unwrap().edge_types().is_empty());
        assert_eq!(
            complete(4, &[1, 2]).unwrap().edge_types(),
            BTreeSet::from([1, 2])
        );
    }

    #[test]
    fn level_examples() {
        let h = hg(3, &[&[0], &[0, 1], &[1, 2]]);
        let l2 = h.level(2);
        assert_eq!(l2.graph(), &hg(3, &[&[0, 1], &[1, 2]]));
        assert!(hg(2, &[&[0], &[0, 1]]).level(3).graph().is_edgeless());
        let k3 = complete(3, &[1, 2]).unwrap();
        assert_eq!(k3.level(1).graph(), &hg(3, &[&[0], &[1], &[2]]));
    }

    #[test]
    fn complete_counts() {
        assert_eq!(complete(3, &[1, 2]).unwrap().edge_count(), 6);
        assert_eq!(complete(4, &[2]).unwrap().edge_count(), 6);
        assert_eq!(complete(5, &[1, 2]).unwrap().edge_count(), 15);
        assert!(matches!(complete(3, &[4]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn blowup_examples() {
        let b = blowup(&hg(2, &[&[0, 1]]), &BlowupSpec::new(vec![2, 3]).unwrap()).unwrap();
        assert_eq!(b.n(), 5);
        assert_eq!(b.edge_count(), 6);
        assert!(b
            .edges()
            .all(|e| e.vertices()[0] < 2 && e.vertices()[1] >= 2));

        let b = blowup(&hg(1, &[&[0]]), &BlowupSpec::new(vec![4]).unwrap()).unwrap();
        assert_eq!(b.edge_count(), 4);
        assert_eq!(b.edge_types(), BTreeSet::from([1]));

        assert!(BlowupSpec::new(vec![1, 0]).is_err());
        assert!(blowup(&hg(2, &[&[0, 1]]), &BlowupSpec::new(vec![1]).unwrap()).is_err());
    }

    #[test]
    fn blowup_of_three_edge() {
        let b = blowup(
            &hg(3, &[&[0, 1, 2]]),
            &BlowupSpec::new(vec![2, 1, 3]).unwrap(),
        )
        .unwrap();
        assert_eq!(b.n(), 6);
        assert_eq!(b.edge_count(), 6);
        assert!(b.has_edge(&[1, 2, 5]));
        assert!(!b.has_edge(&[0, 1, 3]));
    }

    #[test]
    fn subgraph_examples() {
        let triangle = complete(3, &[2]).unwrap();
        assert!(is_subgraph(&hg(2, &[&[0, 1]]), &triangle));
        assert!(!is_subgraph(&complete(3, &[1, 2]).unwrap(), &triangle));
        assert!(is_subgraph(
            &complete(2, &[1, 2]).unwrap(),
            &complete(3, &[1, 2]).unwrap()
        ));
        // isolated vertices still need room
        assert!(!is_subgraph(&Hypergraph::new(4).unwrap(), &triangle));
    }

    #[test]
    fn remove_edge_examples() {
        let k2 = complete(2, &[1, 2]).unwrap();
        let e = Edge::new([0, 1]).unwrap();
        assert_eq!(k2.remove_edge(&e).unwrap(), hg(2, &[&[0], &[1]]));

        let path = complete(3, &[2])
            .unwrap()
            .remove_edge(&Edge::new([0, 2]).unwrap())
            .unwrap();
        assert_eq!(path, hg(3, &[&[0, 1], &[1, 2]]));

        let last = hg(2, &[&[0, 1]]).remove_edge(&e).unwrap();
        assert!(last.is_edgeless());

        assert!(matches!(
            last.remove_edge(&e),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Edge::new(Vec::<usize>::new()).is_err());
        assert!(Edge::new([1, 1]).is_err());
        assert!(Hypergraph::from_edges(2, [[0, 2]]).is_err());
        assert!(Hypergraph::from_edges(2, [[0, 1], [1, 0]]).is_err());
        assert!(Hypergraph::new(0).is_err());
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(5, 2).len(), 10);
        assert_eq!(k_subsets(4, 4), vec![vec![0, 1, 2, 3]]);
        assert!(k_subsets(3, 4).is_empty());
    }
}
