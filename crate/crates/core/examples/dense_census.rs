//! Every dense {1,2}-graph on at most four labelled vertices.
//!
//! cargo run --example dense_census

use hyperlag::format::serialize;
use hyperlag::verify::dense_census;

fn main() -> hyperlag::Result<()> {
    let census = dense_census(4)?;
    for entry in &census {
        let edges = serialize(&entry.graph)
            .lines()
            .skip(1)
            .map(|l| &l[2..])
            .collect::<Vec<_>>()
            .join(" | ");
        println!(
            "n={} λ′={:<5} {} {edges}",
            entry.n,
            entry.value.to_string(),
            if entry.complete {
                "complete"
            } else {
                "        "
            }
        );
    }
    println!(
        "{} dense, {} not complete",
        census.len(),
        census.iter().filter(|c| !c.complete).count()
    );
    Ok(())
}
