//! Homomorphisms and the blowups that witness them.
//!
//! cargo run --example homomorphism

use hyperlag::format::parse;
use hyperlag::homomorphism::{blowup_witness, exists_hom};

fn main() -> hyperlag::Result<()> {
    let c5 = parse("n 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5")?;
    let triangle = parse("n 3\ne 1 2\ne 2 3\ne 1 3")?;
    let k3_12 = parse("n 3\ne 1\ne 2\ne 3\ne 1 2\ne 2 3\ne 1 3")?;
    let k2_12 = parse("n 2\ne 1\ne 2\ne 1 2")?;

    for (fname, f, gname, g) in [
        ("C5", &c5, "K3", &triangle),
        ("K3", &triangle, "C5", &c5),
        ("K3^{1,2}", &k3_12, "K2^{1,2}", &k2_12),
        ("K2^{1,2}", &k2_12, "K3^{1,2}", &k3_12),
    ] {
        match exists_hom(f, g) {
            Some(w) => {
                let labels: Vec<usize> = w.mapping.iter().map(|v| v + 1).collect();
                let s = blowup_witness(f, g).expect("a homomorphism gives a blowup");
                println!("{fname} → {gname}: {labels:?}, contained in the {s}-fold blowup");
            }
            None => println!("{fname} → {gname}: none ({gname} is {fname}-hom-free)"),
        }
    }
    Ok(())
}
