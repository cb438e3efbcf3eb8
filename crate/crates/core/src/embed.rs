//! Backtracking search for edge-preserving vertex maps `pattern → host`.
//!
//! Pattern vertices are assigned in descending-degree order; an edge is
//! checked as soon as its last vertex is assigned.

use std::collections::HashSet;

use crate::hypergraph::Hypergraph;

/// Edge lookup on the host side of a search.
pub(crate) trait HostEdges {
    fn vertex_count(&self) -> usize;
    /// `sorted` is strictly increasing.
    fn contains(&self, sorted: &[usize]) -> bool;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Injectivity {
    /// The whole map is injective (subgraph containment).
    Global,
    /// Only the restriction to each pattern edge is injective (homomorphism).
    PerEdge,
}

pub(crate) struct HashHost {
    n: usize,
    edges: HashSet<Box<[usize]>>,
}

impl HashHost {
    pub(crate) fn new(g: &Hypergraph) -> Self {
        HashHost {
            n: g.n(),
            edges: g.edges().map(|e| e.vertices().into()).collect(),
        }
    }
}

impl HostEdges for HashHost {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn contains(&self, sorted: &[usize]) -> bool {
        self.edges.contains(sorted)
    }
}

/// Host on at most 64 vertices with edges addressed by bitmask; used by the
/// extremal search, which toggles edges in place.
#[derive(Clone)]
pub(crate) struct MaskHost {
    n: usize,
    repr: MaskRepr,
}

#[derive(Clone)]
enum MaskRepr {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

const DENSE_LIMIT: usize = 24;

impl MaskHost {
    pub(crate) fn new(n: usize) -> Self {
        assert!(n <= 64, "mask hosts hold at most 64 vertices");
        let repr = if n <= DENSE_LIMIT {
            MaskRepr::Dense(vec![0; (1usize << n).div_ceil(64)])
        } else {
            MaskRepr::Sparse(HashSet::new())
        };
        MaskHost { n, repr }
    }

    pub(crate) fn set(&mut self, mask: u64, present: bool) {
        match &mut self.repr {
            MaskRepr::Dense(bits) => {
                let (w, b) = ((mask / 64) as usize, mask % 64);
                if present {
                    bits[w] |= 1 << b;
                } else {
                    bits[w] &= !(1 << b);
                }
            }
            MaskRepr::Sparse(set) => {
                if present {
                    set.insert(mask);
                } else {
                    set.remove(&mask);
                }
            }
        }
    }

    pub(crate) fn has(&self, mask: u64) -> bool {
        match &self.repr {
            MaskRepr::Dense(bits) => bits[(mask / 64) as usize] >> (mask % 64) & 1 == 1,
            MaskRepr::Sparse(set) => set.contains(&mask),
        }
    }
}

impl HostEdges for MaskHost {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn contains(&self, sorted: &[usize]) -> bool {
        self.has(sorted.iter().fold(0u64, |m, &v| m | 1 << v))
    }
}

/// Returns `map[v]` for every pattern vertex `v`, or `None` if no map exists.
pub(crate) fn find_map<H: HostEdges>(
    pattern: &Hypergraph,
    host: &H,
    injectivity: Injectivity,
) -> Option<Vec<usize>> {
    let p = pattern.n();
    let hn = host.vertex_count();
    if hn == 0 || (injectivity == Injectivity::Global && p > hn) {
        return None;
    }

    let mut degree = vec![0usize; p];
    for e in pattern.edges() {
        for &v in e.vertices() {
            degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
    let mut position = vec![0usize; p];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }

    // checks[i]: pattern edges completed once order[i] is assigned
    let mut checks: Vec<Vec<&[usize]>> = vec![Vec::new(); p];
    for e in pattern.edges() {
        let last = e.vertices().iter().map(|&v| position[v]).max().unwrap();
        checks[last].push(e.vertices());
    }

    let mut search = Search {
        host,
        injectivity,
        order: &order,
        checks: &checks,
        map: vec![usize::MAX; p],
        used: vec![false; hn],
        buf: Vec::new(),
    };
    if search.assign(0) {
        Some(search.map)
    } else {
        None
    }
}

struct Search<'a, H> {
    host: &'a H,
    injectivity: Injectivity,
    order: &'a [usize],
    checks: &'a [Vec<&'a [usize]>],
    map: Vec<usize>,
    used: Vec<bool>,
    buf: Vec<usize>,
}

impl<H: HostEdges> Search<'_, H> {
    fn assign(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for w in 0..self.used.len() {
            if self.injectivity == Injectivity::Global && self.used[w] {
                continue;
            }
            self.map[v] = w;
            if !self.edges_ok(depth) {
                continue;
            }
            self.used[w] = true;
            if self.assign(depth + 1) {
                return true;
            }
            self.used[w] = false;
        }
        self.map[v] = usize::MAX;
        false
    }

    fn edges_ok(&mut self, depth: usize) -> bool {
        for e in &self.checks[depth] {
            self.buf.clear();
            self.buf.extend(e.iter().map(|&u| self.map[u]));
            self.buf.sort_unstable();
            if self.buf.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
            if !self.host.contains(&self.buf) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::complete;

    #[test]
    fn mask_host_round_trip() {
        for n in [5, 30] {
            let mut h = MaskHost::new(n);
            h.set(0b101, true);
            assert!(h.contains(&[0, 2]));
            assert!(!h.contains(&[0, 1]));
            h.set(0b101, false);
            assert!(!h.contains(&[0, 2]));
        }
    }

    #[test]
    fn per_edge_allows_collapsing_non_edges() {
        // path 0-1-2 maps onto a single pair by folding
        let path = Hypergraph::from_edges(3, [[0, 1], [1, 2]]).unwrap();
        let pair = complete(2, &[2]).unwrap();
        let host = HashHost::new(&pair);
        assert!(find_map(&path, &host, Injectivity::PerEdge).is_some());
        assert!(find_map(&path, &host, Injectivity::Global).is_none());
    }
}
