//! The metric `2|rho'|/(1 - |rho|^2)` has curvature -1: check it through the
//! log/exp series.
//!
//! ```bash
//! cargo run --example liouville_metric
//! ```

use crflat::construct::{liouville_log_residual, liouville_metric};
use crflat::{HoloSeries, C64};

fn main() -> crflat::Result<()> {
    let maps = [
        ("identity", HoloSeries::z()),
        (
            "quadratic",
            HoloSeries::polynomial(vec![
                C64::new(0.3, 0.0),
                C64::new(0.7, 0.2),
                C64::new(0.0, 0.25),
            ]),
        ),
    ];
    for (name, rho) in maps {
        let r = liouville_metric(&rho, 10)?;
        let residual = liouville_log_residual(&r)?;
        println!(
            "{name:>9}: r(0) = {:.4}, max |4 (ln r)_22b - r^2| = {:.2e} at order {}",
            r.constant_term().re,
            residual.max_abs(),
            residual.order()
        );
    }
    Ok(())
}
