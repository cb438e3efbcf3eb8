use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::{find_map, Injectivity, MaskHost};
use crate::error::{Error, Result};
use crate::format::serialize;
use crate::hypergraph::{k_subsets, Hypergraph};
use crate::rational::Rational;

/// Which hosts count as avoiding the forbidden graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// No subgraph isomorphic to `F`.
    Free,
    /// No homomorphism from `F`.
    HomFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    /// Exact maximum over all hosts.
    Exhaustive,
    /// Seeded hill climbing; the value is a lower bound.
    Local,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Free => "free",
            Mode::HomFree => "hom-free",
        }
    }

    fn injectivity(self) -> Injectivity {
        match self {
            Mode::Free => Injectivity::Global,
            Mode::HomFree => Injectivity::PerEdge,
        }
    }
}

impl SearchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchKind::Exhaustive => "exhaustive",
            SearchKind::Local => "local",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest number of candidate edges an exhaustive search accepts.
    pub budget: usize,
    pub seed: u64,
    /// Local search restarts.
    pub restarts: usize,
    /// Perturbation rounds per local search restart.
    pub iterations: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 22,
            seed: 0,
            restarts: 8,
            iterations: 400,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalRecord {
    pub forbidden: Hypergraph,
    pub n: usize,
    pub mode: Mode,
    pub search: SearchKind,
    pub max_lubell: Rational,
    pub witness: Hypergraph,
    pub seed: u64,
}

/// Candidate edges of `K_n^{R(F)}` with integer Lubell weights over a
/// common denominator.
pub(crate) struct Candidates {
    pub masks: Vec<u64>,
    pub verts: Vec<Vec<usize>>,
    pub weights: Vec<u64>,
    pub denominator: u64,
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

impl Candidates {
    pub(crate) fn new(types: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        if n == 0 || n > 64 {
            return Err(Error::invalid(format!("host size {n} is outside 1..=64")));
        }
        let types: Vec<usize> = types.into_iter().filter(|&r| r <= n).collect();
        let too_large = || Error::invalid(format!("Lubell weights on {n} vertices overflow"));
        let mut denominator: u128 = 1;
        for &r in &types {
            denominator = denominator.lcm(&binomial_u128(n, r));
            if denominator > u64::MAX as u128 {
                return Err(too_large());
            }
        }
        let mut c = Candidates {
            masks: Vec::new(),
            verts: Vec::new(),
            weights: Vec::new(),
            denominator: denominator as u64,
        };
        let mut total: u128 = 0;
        for &r in &types {
            let w = denominator / binomial_u128(n, r);
            for s in k_subsets(n, r) {
                c.masks.push(s.iter().fold(0u64, |m, &v| m | 1 << v));
                c.verts.push(s);
                c.weights.push(w as u64);
                total += w;
            }
        }
        if total > u64::MAX as u128 {
            return Err(too_large());
        }
        Ok(c)
    }

    pub(crate) fn len(&self) -> usize {
        self.masks.len()
    }

    pub(crate) fn host_graph(&self, n: usize, included: &[bool]) -> Hypergraph {
        Hypergraph::from_edges(
            n,
            self.verts
                .iter()
                .zip(included)
                .filter(|(_, &inc)| inc)
                .map(|(v, _)| v.as_slice()),
        )
        .expect("candidate edges are distinct")
    }

    fn value(&self, score: u64) -> Rational {
        Rational::new(BigInt::from(score), BigInt::from(self.denominator))
    }
}

/// Largest-Lubell host on `n` vertices avoiding `f` (as a subgraph or as a
/// homomorphic image, per `mode`), over subgraphs of `K_n^{R(f)}`.
///
/// The exhaustive search walks include/exclude decisions in (size,
/// lexicographic) edge order. A branch is cut when the host already contains
/// `f` (containment is inherited by supergraphs) or when the Lubell weight of
/// the remaining undecided edges cannot lift it past the best host found.
/// The first 2^4 decision patterns run as parallel partitions; among equally
/// good partition winners the smallest serialisation is kept.
pub fn extremal_search(
    f: &Hypergraph,
    n: usize,
    mode: Mode,
    search: SearchKind,
    opts: &SearchOptions,
) -> Result<ExtremalRecord> {
    let cands = Candidates::new(f.edge_types(), n)?;
    if search == SearchKind::Exhaustive && cands.len() > opts.budget {
        return Err(Error::Budget {
            what: format!("exhaustive search on {n} vertices (candidate edges)"),
            required: cands.len(),
            budget: opts.budget,
        });
    }
    if find_map(f, &MaskHost::new(n), mode.injectivity()).is_some() {
        return Err(Error::Infeasible(format!(
            "every host on {n} vertices contains the forbidden graph"
        )));
    }
    let (score, included) = match search {
        SearchKind::Exhaustive => exhaustive(f, n, mode, &cands),
        SearchKind::Local => local(f, n, mode, &cands, opts),
    };
    Ok(ExtremalRecord {
        forbidden: f.clone(),
        n,
        mode,
        search,
        max_lubell: cands.value(score),
        witness: cands.host_graph(n, &included),
        seed: opts.seed,
    })
}

const PARTITION_DEPTH: usize = 4;

struct Dfs<'a> {
    f: &'a Hypergraph,
    injectivity: Injectivity,
    cands: &'a Candidates,
    suffix: Vec<u64>,
    global: &'a AtomicU64,
    host: MaskHost,
    included: Vec<bool>,
    best: Option<(u64, Vec<bool>)>,
}

impl Dfs<'_> {
    fn contains_forbidden(&self) -> bool {
        find_map(self.f, &self.host, self.injectivity).is_some()
    }

    fn run(&mut self, idx: usize, score: u64) {
        let optimistic = score + self.suffix[idx];
        if optimistic < self.global.load(Ordering::Relaxed) {
            return;
        }
        if matches!(&self.best, Some((b, _)) if optimistic <= *b) {
            return;
        }
        if idx == self.cands.len() {
            self.best = Some((score, self.included.clone()));
            self.global.fetch_max(score, Ordering::Relaxed);
            return;
        }
        let mask = self.cands.masks[idx];
        self.host.set(mask, true);
        if !self.contains_forbidden() {
            self.included[idx] = true;
            self.run(idx + 1, score + self.cands.weights[idx]);
            self.included[idx] = false;
        }
        self.host.set(mask, false);
        self.run(idx + 1, score);
    }
}

fn exhaustive(f: &Hypergraph, n: usize, mode: Mode, cands: &Candidates) -> (u64, Vec<bool>) {
    let m = cands.len();
    let mut suffix = vec![0u64; m + 1];
    for i in (0..m).rev() {
        suffix[i] = suffix[i + 1] + cands.weights[i];
    }
    let depth = PARTITION_DEPTH.min(m);
    let global = AtomicU64::new(0);

    let winners: Vec<(u64, Vec<bool>)> = (0u32..1 << depth)
        .into_par_iter()
        .filter_map(|pattern| {
            // bit set = edge excluded, so pattern 0 is the include-everything branch
            let mut dfs = Dfs {
                f,
                injectivity: mode.injectivity(),
                cands,
                suffix: suffix.clone(),
                global: &global,
                host: MaskHost::new(n),
                included: vec![false; m],
                best: None,
            };
            let mut score = 0;
            for i in 0..depth {
                if pattern >> (depth - 1 - i) & 1 == 0 {
                    dfs.host.set(cands.masks[i], true);
                    if dfs.contains_forbidden() {
                        return None;
                    }
                    dfs.included[i] = true;
                    score += cands.weights[i];
                }
            }
            dfs.run(depth, score);
            dfs.best
        })
        .collect();

    winners
        .into_iter()
        .map(|(s, inc)| {
            let key = serialize(&cands.host_graph(n, &inc));
            (s, key, inc)
        })
        .reduce(|a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .map(|(s, _, inc)| (s, inc))
        .expect("the edgeless host is feasible")
}

fn local(
    f: &Hypergraph,
    n: usize,
    mode: Mode,
    cands: &Candidates,
    opts: &SearchOptions,
) -> (u64, Vec<bool>) {
    let m = cands.len();
    let inj = mode.injectivity();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: (u64, Vec<bool>) = (0, vec![false; m]);

    let fill =
        |host: &mut MaskHost, present: &mut [bool], score: &mut u64, rng: &mut ChaCha8Rng| {
            let mut order: Vec<usize> = (0..m).filter(|&i| !present[i]).collect();
            order.shuffle(rng);
            for i in order {
                host.set(cands.masks[i], true);
                if find_map(f, host, inj).is_some() {
                    host.set(cands.masks[i], false);
                } else {
                    present[i] = true;
                    *score += cands.weights[i];
                }
            }
        };

    for _ in 0..opts.restarts.max(1) {
        let mut host = MaskHost::new(n);
        let mut present = vec![false; m];
        let mut score = 0u64;
        fill(&mut host, &mut present, &mut score, &mut rng);
        if score > best.0 {
            best = (score, present.clone());
        }
        for _ in 0..opts.iterations {
            let in_host: Vec<usize> = (0..m).filter(|&i| present[i]).collect();
            if in_host.is_empty() {
                break;
            }
            let snapshot = (present.clone(), score);
            let drops = rng.random_range(1..=2.min(in_host.len()));
            for &i in in_host.choose_multiple(&mut rng, drops) {
                host.set(cands.masks[i], false);
                present[i] = false;
                score -= cands.weights[i];
            }
            fill(&mut host, &mut present, &mut score, &mut rng);
            if score < snapshot.1 {
                for i in 0..m {
                    host.set(cands.masks[i], snapshot.0[i]);
                }
                (present, score) = snapshot;
            } else if score > best.0 {
                best = (score, present.clone());
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::lubell;
    use crate::homomorphism::is_hom_free;
    use crate::hypergraph::{complete, is_subgraph};
    use crate::rational::{integer, ratio};

    fn hg(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    // plain enumeration of every host, no pruning
    fn brute_max(f: &Hypergraph, n: usize, mode: Mode) -> Rational {
        let cands = Candidates::new(f.edge_types(), n).unwrap();
        let m = cands.len();
        (0u64..1 << m)
            .filter_map(|code| {
                let inc: Vec<bool> = (0..m).map(|i| code >> i & 1 == 1).collect();
                let g = cands.host_graph(n, &inc);
                let ok = match mode {
                    Mode::Free => !is_subgraph(f, &g),
                    Mode::HomFree => is_hom_free(&g, f),
                };
                ok.then(|| lubell(&g))
            })
            .max()
            .unwrap()
    }

    fn check_record(r: &ExtremalRecord) {
        assert_eq!(lubell(&r.witness), r.max_lubell);
        match r.mode {
            Mode::Free => assert!(!is_subgraph(&r.forbidden, &r.witness)),
            Mode::HomFree => assert!(is_hom_free(&r.witness, &r.forbidden)),
        }
        assert!(r
            .witness
            .types_within(&r.forbidden.edge_types().into_iter().collect::<Vec<_>>()));
    }

    #[test]
    fn triangle_free_on_five() {
        let tri = complete(3, &[2]).unwrap();
        let r = extremal_search(
            &tri,
            5,
            Mode::Free,
            SearchKind::Exhaustive,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(r.max_lubell, ratio(6, 10));
        check_record(&r);
        // the unique extremal graph is K_{2,3}
        assert_eq!(r.witness.edge_count(), 6);
        assert_eq!(crate::extremal::chromatic_number(&r.witness).unwrap(), 2);
    }

    #[test]
    fn k3_12_on_four() {
        let f = complete(3, &[1, 2]).unwrap();
        let r = extremal_search(
            &f,
            4,
            Mode::Free,
            SearchKind::Exhaustive,
            &SearchOptions::default(),
        )
        .unwrap();
        assert!(r.max_lubell >= ratio(5, 3));
        assert_eq!(r.max_lubell, brute_max(&f, 4, Mode::Free));
        check_record(&r);
    }

    #[test]
    fn single_singleton_forbidden() {
        // hosts live in K_3^{1}: any singleton contains F
        let f = hg(1, &[&[0]]);
        let r = extremal_search(
            &f,
            3,
            Mode::Free,
            SearchKind::Exhaustive,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(r.max_lubell, integer(0));
        assert!(r.witness.is_edgeless());
    }

    #[test]
    fn matches_brute_force_on_small_cases() {
        let patterns = [
            complete(3, &[2]).unwrap(),
            complete(2, &[1, 2]).unwrap(),
            hg(3, &[&[0], &[0, 1], &[1, 2]]),
            hg(4, &[&[0, 1], &[2, 3]]),
            hg(3, &[&[0, 1, 2], &[0]]),
        ];
        for f in &patterns {
            for n in 2..=4 {
                for mode in [Mode::Free, Mode::HomFree] {
                    let r = extremal_search(
                        f,
                        n,
                        mode,
                        SearchKind::Exhaustive,
                        &SearchOptions::default(),
                    )
                    .unwrap();
                    assert_eq!(r.max_lubell, brute_max(f, n, mode), "{f:?} n={n} {mode:?}");
                    check_record(&r);
                }
            }
        }
    }

    #[test]
    fn hom_free_below_free() {
        let f = hg(4, &[&[0], &[1], &[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        for n in 3..=5 {
            let free = extremal_search(
                &f,
                n,
                Mode::Free,
                SearchKind::Exhaustive,
                &SearchOptions::default(),
            )
            .unwrap();
            let hom = extremal_search(
                &f,
                n,
                Mode::HomFree,
                SearchKind::Exhaustive,
                &SearchOptions::default(),
            )
            .unwrap();
            assert!(hom.max_lubell <= free.max_lubell);
        }
    }

    #[test]
    fn deterministic_witness() {
        let f = complete(3, &[1, 2]).unwrap();
        let a = extremal_search(
            &f,
            5,
            Mode::Free,
            SearchKind::Exhaustive,
            &SearchOptions::default(),
        )
        .unwrap();
        let b = extremal_search(
            &f,
            5,
            Mode::Free,
            SearchKind::Exhaustive,
            &SearchOptions::default(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_and_infeasible() {
        let f = complete(3, &[1, 2]).unwrap();
        let small = SearchOptions {
            budget: 5,
            ..Default::default()
        };
        assert!(matches!(
            extremal_search(&f, 4, Mode::Free, SearchKind::Exhaustive, &small),
            Err(Error::Budget {
                required: 10,
                budget: 5,
                ..
            })
        ));
        let edgeless = Hypergraph::new(2).unwrap();
        assert!(matches!(
            extremal_search(
                &edgeless,
                3,
                Mode::Free,
                SearchKind::Exhaustive,
                &SearchOptions::default()
            ),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn local_search_is_a_feasible_lower_bound() {
        let tri = complete(3, &[2]).unwrap();
        let opts = SearchOptions {
            seed: 5,
            ..Default::default()
        };
        let r = extremal_search(&tri, 8, Mode::Free, SearchKind::Local, &opts).unwrap();
        check_record(&r);
        assert!(r.max_lubell <= ratio(16, 28));
        assert!(r.max_lubell >= ratio(1, 2));
        let again = extremal_search(&tri, 8, Mode::Free, SearchKind::Local, &opts).unwrap();
        assert_eq!(r, again);
    }
}
