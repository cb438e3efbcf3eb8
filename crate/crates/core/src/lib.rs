//! Lagrangians of non-uniform hypergraphs and Turán densities of `{1,2}`-graphs.
//!
//! The crate is organised around a single instance type, [`Hypergraph`], and
//! a handful of operation families:
//!
//! * [`lagrangian`]: evaluation of the non-uniform Lagrangian polynomial
//!   `λ′(H, x) = Σ_j j! Σ_{e ∈ H^j} Π_{i∈e} x_i`, its gradient, simplex
//!   projection and a projected-gradient maximiser with first-order
//!   diagnostics.
//! * [`closed_form`]: exact solvers. Maximum clique, the Motzkin–Straus
//!   value of a graph and an exact `λ′` for hypergraphs whose edges have one
//!   or two vertices.
//! * [`homomorphism`]: edge-preserving maps between hypergraphs and the
//!   blowup characterisation of hom-freeness.
//! * [`extremal`]: Lubell function, chromatic number, finite-`n` extremal
//!   search for `F`-free hosts, density sequences and the denseness test.
//! * [`verify`]: the property suites that back `hyperlag verify`.
//!
//! Vertices are `0`-based indices in the Rust API; the text format and all
//! JSON output use `1`-based labels.
//!
//! ```
//! use hyperlag::{closed_form, complete, lagrangian};
//!
//! let k3 = complete(3, &[1, 2]).unwrap();
//! let exact = closed_form::lagrangian12_exact(&k3).unwrap();
//! assert_eq!(exact.value.to_string(), "5/3");
//!
//! let numeric = lagrangian::maximize(&k3, &Default::default()).unwrap();
//! assert!((numeric.value - 5.0 / 3.0).abs() < 1e-6);
//! ```

pub mod cli;
pub mod closed_form;
mod embed;
pub mod error;
pub mod extremal;
pub mod format;
pub mod generate;
pub mod homomorphism;
pub mod hypergraph;
pub mod lagrangian;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{blowup, complete, BlowupSpec, Edge, Hypergraph, LevelGraph};
pub use lagrangian::{LagrangianResult, MaximizeOptions, Weighting};
pub use rational::Rational;
