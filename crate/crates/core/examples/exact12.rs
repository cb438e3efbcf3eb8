//! Exact λ′ of {1,2}-graphs for each support shape, checked against the
//! numeric maximiser.
//!
//! cargo run --example exact12

use hyperlag::closed_form::lagrangian12_exact;
use hyperlag::format::parse;
use hyperlag::lagrangian::maximize;
use hyperlag::rational::to_f64;

fn main() -> hyperlag::Result<()> {
    let cases = [
        (
            "K_4^{1,2}",
            "n 4\ne 1\ne 2\ne 3\ne 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4",
        ),
        (
            "one singleton on a triangle",
            "n 3\ne 1\ne 1 2\ne 1 3\ne 2 3",
        ),
        ("triangle, no singletons", "n 3\ne 1 2\ne 1 3\ne 2 3"),
        ("isolated singletons", "n 3\ne 1\ne 3\ne 1 2"),
        ("edgeless", "n 2"),
    ];
    for (name, text) in cases {
        let h = parse(text)?;
        let exact = lagrangian12_exact(&h)?;
        let numeric = maximize(&h, &Default::default())?.value;
        println!(
            "{name:<28} {:>5}  {:<20} numeric {numeric:.9}  gap {:.1e}",
            exact.value.to_string(),
            exact.case.as_str(),
            (to_f64(&exact.value) - numeric).abs()
        );
    }
    Ok(())
}
