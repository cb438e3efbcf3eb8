//! Finite-n extremal Lubell values for K_3^{1,2} next to the closed-form
//! density, and the lower bound from hom-free Lagrangians.
//!
//! cargo run --release --example extremal_turan

use hyperlag::complete;
use hyperlag::extremal::{
    density_sequence, pi_lower_via_lagrangian, Mode, SearchKind, SearchOptions,
};
use hyperlag::format::serialize;

fn main() -> hyperlag::Result<()> {
    let f = complete(3, &[1, 2])?;
    let opts = SearchOptions::default();
    for mode in [Mode::Free, Mode::HomFree] {
        let est = density_sequence(&f, &[3, 4, 5, 6], mode, SearchKind::Exhaustive, &opts)?;
        let values: Vec<String> = est
            .values
            .iter()
            .map(|p| format!("n={}: {}", p.n, p.max_lubell))
            .collect();
        println!("{:<9} {}", mode.as_str(), values.join(", "));
        if let Some(v) = est.formula_value {
            println!("          closed form {v}");
        }
    }
    let local = density_sequence(&f, &[8, 10], Mode::Free, SearchKind::Local, &opts)?;
    for p in &local.values {
        println!("local     n={}: ≥ {}", p.n, p.max_lubell);
    }
    let bound = pi_lower_via_lagrangian(&f, 3, opts.budget)?;
    println!(
        "Lagrangian lower bound {} from\n{}",
        bound.value,
        serialize(&bound.witness)
    );
    Ok(())
}
