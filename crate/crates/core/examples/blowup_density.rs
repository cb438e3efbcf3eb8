//! Lubell values of uniform blowups G(t, …, t) as t grows, next to the
//! Lubell value of G and the uniform-weighting λ′ of G.
//!
//! cargo run --example blowup_density

use hyperlag::format::serialize;
use hyperlag::rational::to_f64;
use hyperlag::verify::{blowup_series, blowup_test_graphs};

fn main() {
    for g in blowup_test_graphs() {
        let s = blowup_series(&g, 200);
        println!("{}", serialize(&g).replace('\n', "; "));
        println!(
            "  h_n(G) = {}, Σ k!|E_k|/n^k = {}",
            s.lubell, s.uniform_lagrangian
        );
        for t in [1, 2, 5, 10, 50, 200] {
            println!("  t = {t:>3}: {:.6}", to_f64(&s.values[t - 1]));
        }
    }
}
