//! Homomorphisms between hypergraphs.
//!
//! A homomorphism `f: V(F) → V(G)` sends every edge of `F` onto an edge of
//! `G` of the same cardinality, so `f` is injective on each edge (it may
//! identify vertices that share no edge). This is the convention under
//! which `G` admits a homomorphism from `F` exactly when some uniform
//! blowup of `G` contains `F`.

use serde::Serialize;

use crate::embed::{self, HashHost, Injectivity};
use crate::hypergraph::{blowup, is_subgraph, BlowupSpec, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    /// `mapping[v]` is the image of pattern vertex `v`.
    pub mapping: Vec<usize>,
}

impl HomWitness {
    /// Checks that the mapping really is a homomorphism `f → g`.
    pub fn verify(&self, f: &Hypergraph, g: &Hypergraph) -> bool {
        self.mapping.len() == f.n()
            && self.mapping.iter().all(|&w| w < g.n())
            && f.edges().all(|e| {
                let mut image: Vec<usize> = e.vertices().iter().map(|&v| self.mapping[v]).collect();
                image.sort_unstable();
                image.dedup();
                image.len() == e.len() && g.has_edge(&image)
            })
    }
}

pub fn exists_hom(f: &Hypergraph, g: &Hypergraph) -> Option<HomWitness> {
    embed::find_map(f, &HashHost::new(g), Injectivity::PerEdge)
        .map(|mapping| HomWitness { mapping })
}

/// `g` is `f`-hom-free when no homomorphism `f → g` exists.
pub fn is_hom_free(g: &Hypergraph, f: &Hypergraph) -> bool {
    exists_hom(f, g).is_none()
}

/// Smallest `s ≤ |V(F)|` with `F ⊆ G(s, …, s)`.
///
/// Preimages of a homomorphism have at most `|V(F)|` vertices, so the
/// search bound is complete: `None` means no uniform blowup contains `F`.
pub fn blowup_witness(f: &Hypergraph, g: &Hypergraph) -> Option<usize> {
    (1..=f.n()).find(|&s| {
        let spec = BlowupSpec::uniform(g.n(), s).expect("s >= 1");
        let blown = blowup(g, &spec).expect("spec length matches");
        is_subgraph(f, &blown)
    })
}
