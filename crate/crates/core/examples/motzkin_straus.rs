//! Graph Lagrangians against the clique number on random graphs.
//!
//! cargo run --example motzkin_straus

use hyperlag::closed_form::{max_clique, motzkin_straus_value};
use hyperlag::generate::random_graph;
use hyperlag::lagrangian::maximize;
use hyperlag::rational::to_f64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> hyperlag::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    println!(
        "{:>3} {:>6} {:>3} {:>10} {:>12}",
        "n", "edges", "ω", "½(1−1/ω)", "λ′/2"
    );
    for n in 4..=12 {
        let g = random_graph(n, 0.5, &mut rng);
        let clique = max_clique(&g)?;
        let exact = motzkin_straus_value(&g)?;
        let numeric = maximize(&g, &Default::default())?.value / 2.0;
        println!(
            "{n:>3} {:>6} {:>3} {:>10.6} {numeric:>12.9}",
            g.edge_count(),
            clique.size,
            to_f64(&exact)
        );
    }
    Ok(())
}
