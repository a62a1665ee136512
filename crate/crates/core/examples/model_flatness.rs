//! Certify the model germ: every residual vanishes and the report carries
//! the truncation order each flag is certified at.
//!
//! ```bash
//! cargo run --example model_flatness -- 12
//! ```

use crflat::{full_report, mtilde0, Tolerances};

fn main() -> crflat::Result<()> {
    let order = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let germ = mtilde0(order)?;
    let report = full_report(&germ, &Tolerances::default());

    println!("S(0) = {:?}", report.s0);
    for (name, magnitude) in report.max_residual_magnitudes() {
        println!("{name:>10}: {magnitude:?}");
    }
    println!("{:#?}", report.flags);
    Ok(())
}
