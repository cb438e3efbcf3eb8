//! The non-uniform Lagrangian `λ′(H, x) = Σ_{j∈R(H)} j! Σ_{e∈H^j} Π_{i∈e} x_i`
//! and its numeric maximisation over the standard simplex.
//!
//! [`maximize`] runs projected gradient ascent from the uniform weighting and
//! from seeded random simplex points. The value it returns is attained by the
//! returned weighting, so it is a lower bound on `λ′(H)`; exactness is only
//! certified by [`crate::closed_form`] where a closed form exists.

use std::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, LevelGraph};

/// Weights at or below this value are treated as outside the support.
pub const SUPPORT_THRESHOLD: f64 = 1e-9;

/// Slack accepted on `Σ x_i = 1` when building a [`Weighting`] from user data.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A point of the standard simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Weighting(Vec<f64>);

impl Weighting {
    /// Accepts nonnegative finite weights whose sum is within
    /// [`SUM_TOLERANCE`] of 1, and renormalises them.
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::invalid("weighting must be nonempty"));
        }
        if let Some(bad) = x.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::invalid(format!(
                "weight {bad} is not a nonnegative number"
            )));
        }
        let sum: f64 = x.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::invalid(format!("weights sum to {sum}, not 1")));
        }
        Ok(Weighting(x.into_iter().map(|v| v / sum).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        Weighting(vec![1.0 / n as f64; n])
    }

    /// Point mass on vertex `v`.
    pub fn vertex(n: usize, v: usize) -> Self {
        let mut x = vec![0.0; n];
        x[v] = 1.0;
        Weighting(x)
    }

    /// Uniform on `vertices`, zero elsewhere.
    pub fn uniform_on(n: usize, vertices: &[usize]) -> Self {
        let mut x = vec![0.0; n];
        for &v in vertices {
            x[v] = 1.0 / vertices.len() as f64;
        }
        Weighting(x)
    }

    pub(crate) fn from_raw(x: Vec<f64>) -> Self {
        Weighting(x)
    }

    /// `{ i : x_i > SUPPORT_THRESHOLD }`.
    pub fn support(&self) -> Vec<usize> {
        support_of(&self.0)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Weighting {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

fn support_of(x: &[f64]) -> Vec<usize> {
    (0..x.len()).filter(|&i| x[i] > SUPPORT_THRESHOLD).collect()
}

fn factorial(j: usize) -> f64 {
    (1..=j).map(|i| i as f64).product()
}

/// `λ′` compiled to a list of weighted monomials.
struct Polynomial {
    n: usize,
    terms: Vec<(f64, Vec<usize>)>,
}

impl Polynomial {
    fn lagrangian(h: &Hypergraph) -> Self {
        Polynomial {
            n: h.n(),
            terms: h
                .edges()
                .map(|e| (factorial(e.len()), e.vertices().to_vec()))
                .collect(),
        }
    }

    fn uniform(g: &LevelGraph) -> Self {
        Polynomial {
            n: g.graph().n(),
            terms: g
                .graph()
                .edges()
                .map(|e| (1.0, e.vertices().to_vec()))
                .collect(),
        }
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::invalid(format!(
                "weighting has {} entries, hypergraph has {} vertices",
                x.len(),
                self.n
            )));
        }
        Ok(())
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, e)| c * e.iter().map(|&i| x[i]).product::<f64>())
            .sum()
    }

    fn gradient_into(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|g| *g = 0.0);
        for (c, e) in &self.terms {
            for (pos, &i) in e.iter().enumerate() {
                let others: f64 = e
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != pos)
                    .map(|(_, &l)| x[l])
                    .product();
                out[i] += c * others;
            }
        }
    }
}

/// `λ′(H, x)`. `x` may be any real vector of length `n(H)`.
pub fn evaluate(h: &Hypergraph, x: &[f64]) -> Result<f64> {
    let p = Polynomial::lagrangian(h);
    p.check_dim(x)?;
    Ok(p.value(x))
}

/// The uniform Lagrangian polynomial `Σ_{e∈E(G)} Π_{i∈e} x_i` (no factorial weight).
pub fn evaluate_uniform(g: &LevelGraph, x: &[f64]) -> Result<f64> {
    let p = Polynomial::uniform(g);
    p.check_dim(x)?;
    Ok(p.value(x))
}

/// `∂λ′/∂x_i` for every vertex.
pub fn gradient(h: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    let p = Polynomial::lagrangian(h);
    p.check_dim(x)?;
    let mut g = vec![0.0; h.n()];
    p.gradient_into(x, &mut g);
    Ok(g)
}

/// Euclidean projection onto the standard simplex (sort and threshold).
pub fn project_to_simplex(v: &[f64]) -> Weighting {
    Weighting(project(v))
}

fn project(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let t = (cumsum - 1.0) / (j + 1) as f64;
        if u - t > 0.0 {
            theta = t;
        }
    }
    v.iter().map(|&u| (u - theta).max(0.0)).collect()
}

/// Spread of the partial derivatives over the support:
/// `max_{i,j ∈ supp(x)} |∂_i λ′ − ∂_j λ′|`. Zero at every optimal weighting.
pub fn kkt_residual(h: &Hypergraph, x: &[f64]) -> Result<f64> {
    let g = gradient(h, x)?;
    Ok(spread_on_support(&g, x))
}

fn spread_on_support(g: &[f64], x: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in support_of(x) {
        lo = lo.min(g[i]);
        hi = hi.max(g[i]);
    }
    if lo.is_finite() {
        hi - lo
    } else {
        0.0
    }
}

/// Merges support vertices that share no edge.
///
/// While some support pair `{i, j}` lies in no common edge, all of the weight
/// of the vertex with the smaller partial derivative moves onto the other.
/// `λ′` is linear along `e_i − e_j` for such a pair, so the value never drops.
pub fn refine_support(h: &Hypergraph, x: &Weighting) -> Result<Weighting> {
    let p = Polynomial::lagrangian(h);
    p.check_dim(x)?;
    let n = h.n();
    let mut covered = vec![vec![false; n]; n];
    for e in h.edges() {
        for (a, &i) in e.vertices().iter().enumerate() {
            for &j in &e.vertices()[a + 1..] {
                covered[i][j] = true;
                covered[j][i] = true;
            }
        }
    }
    let mut y = x.to_vec();
    let mut g = vec![0.0; n];
    'merge: loop {
        let support = support_of(&y);
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                if covered[i][j] {
                    continue;
                }
                p.gradient_into(&y, &mut g);
                let (to, from) = if g[i] >= g[j] { (i, j) } else { (j, i) };
                y[to] += y[from];
                y[from] = 0.0;
                continue 'merge;
            }
        }
        break;
    }
    Ok(Weighting(y))
}

/// Settings for [`maximize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaximizeOptions {
    pub restarts: usize,
    /// Convergence threshold on the sup-norm movement of one iteration.
    pub tol: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            restarts: 16,
            tol: 1e-10,
            max_iterations: 10_000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LagrangianResult {
    pub value: f64,
    pub weighting: Weighting,
    pub support: Vec<usize>,
    /// Iterations of the winning restart.
    pub iterations: usize,
    /// Whether the winning restart's last step moved less than `tol`.
    pub converged: bool,
    pub kkt_residual: f64,
    /// Index of the winning restart (0 is the uniform start).
    pub restart: usize,
}

struct Run {
    x: Vec<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
}

/// Best projected-gradient-ascent result over `restarts` starts.
///
/// Start 0 is the uniform weighting; the others are normalised vectors of
/// independent exponential samples drawn from a ChaCha RNG seeded with
/// `seed`. Ties in value go to the lowest restart index.
pub fn maximize(h: &Hypergraph, opts: &MaximizeOptions) -> Result<LagrangianResult> {
    if opts.restarts == 0 {
        return Err(Error::invalid("restarts must be at least 1"));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::invalid("tol must be positive"));
    }
    let n = h.n();
    if h.is_edgeless() {
        let weighting = Weighting::uniform(n);
        return Ok(LagrangianResult {
            value: 0.0,
            support: weighting.support(),
            weighting,
            iterations: 0,
            converged: true,
            kkt_residual: 0.0,
            restart: 0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts = vec![vec![1.0 / n as f64; n]];
    for _ in 1..opts.restarts {
        let raw: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = raw.iter().sum();
        starts.push(raw.into_iter().map(|v| v / total).collect());
    }

    let poly = Polynomial::lagrangian(h);
    let runs: Vec<Run> = starts
        .into_par_iter()
        .map(|x0| ascend(&poly, x0, opts))
        .collect();

    let (restart, best) = runs
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.value > a.1.value { b } else { a })
        .expect("at least one restart");

    let mut g = vec![0.0; n];
    poly.gradient_into(&best.x, &mut g);
    let weighting = Weighting(best.x);
    Ok(LagrangianResult {
        value: best.value,
        support: weighting.support(),
        kkt_residual: spread_on_support(&g, &weighting),
        weighting,
        iterations: best.iterations,
        converged: best.converged,
        restart,
    })
}

fn ascend(poly: &Polynomial, mut x: Vec<f64>, opts: &MaximizeOptions) -> Run {
    let n = x.len();
    let mut fx = poly.value(&x);
    let mut g = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut converged = false;
    let mut iterations = 0;

    while iterations < opts.max_iterations {
        iterations += 1;
        poly.gradient_into(&x, &mut g);
        let mut step = 1.0;
        let accepted = loop {
            for i in 0..n {
                trial[i] = x[i] + step * g[i];
            }
            let y = project(&trial);
            let moved = max_abs_diff(&x, &y);
            if moved < opts.tol {
                // nothing left to gain at this step length
                break None;
            }
            let fy = poly.value(&y);
            if fy > fx {
                break Some((y, fy, moved));
            }
            step *= 0.5;
        };
        match accepted {
            None => {
                converged = true;
                break;
            }
            Some((y, fy, moved)) => {
                x = y;
                fx = fy;
                if moved < opts.tol {
                    converged = true;
                    break;
                }
            }
        }
    }
    Run {
        value: poly.value(&x),
        x,
        iterations,
        converged,
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max)
}
