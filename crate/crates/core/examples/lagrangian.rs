//! Numeric maximisation of λ′ on a mixed hypergraph, with the stationarity
//! diagnostics of the returned weighting.
//!
//! cargo run --example lagrangian

use hyperlag::format::parse;
use hyperlag::lagrangian::{evaluate, kkt_residual, maximize, refine_support};
use hyperlag::MaximizeOptions;

fn main() -> hyperlag::Result<()> {
    // a 3-edge, two pairs and a singleton on five vertices
    let h = parse(
        "n 5
         e 1
         e 1 2
         e 4 5
         e 2 3 4",
    )?;

    let opts = MaximizeOptions {
        restarts: 32,
        seed: 7,
        ..Default::default()
    };
    let r = maximize(&h, &opts)?;
    println!("λ′ ≈ {:.10}", r.value);
    println!(
        "weighting  {:?}",
        r.weighting
            .iter()
            .map(|x| format!("{x:.6}"))
            .collect::<Vec<_>>()
    );
    println!(
        "support    {:?} (restart {}, {} iterations)",
        r.support, r.restart, r.iterations
    );
    println!("KKT spread {:.2e}", kkt_residual(&h, &r.weighting)?);

    let refined = refine_support(&h, &r.weighting)?;
    println!(
        "after support refinement: value {:.10}, support {:?}",
        evaluate(&h, &refined)?,
        refined.support()
    );
    Ok(())
}
