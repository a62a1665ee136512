//! Build a germ from a holomorphic disk map and a seed, then certify it.
//!
//! ```bash
//! cargo run --example construct_germ
//! ```

use crflat::construct::construct;
use crflat::invariants::compute_s;
use crflat::{full_report, HoloSeries, Tolerances, C64};

fn main() -> crflat::Result<()> {
    let rho = HoloSeries::polynomial(vec![
        C64::new(0.2, -0.1),
        C64::new(0.0, 0.8),
        C64::new(0.1, 0.1),
    ]);
    let seed = HoloSeries::polynomial(vec![C64::new(0.5, 0.0), C64::new(0.0, -0.3)]);
    let tol = Tolerances::default();

    let built = construct(&rho, &seed, 12)?;
    println!(
        "F has {} terms up to order {}",
        built.germ.f().nnz(),
        built.germ.order()
    );

    let report = full_report(&built.germ, &tol);
    println!("cr_flat_candidate = {:?}", report.flags.cr_flat_candidate);

    let s = compute_s(&built.germ, &tol)?;
    let gap = (&s - &built.data.r.scale(0.5))
        .truncate(s.order())
        .max_abs();
    println!("max |S - r/2| = {gap:e}");
    println!(
        "max |expanded Monge-Ampere| = {:e}",
        built.data.expanded_ma_residual()?.max_abs()
    );
    Ok(())
}
