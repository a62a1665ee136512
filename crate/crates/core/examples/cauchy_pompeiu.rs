//! Check the dbar-solution against its Cauchy-Pompeiu representation on a
//! disk, at two resolutions.
//!
//! ```bash
//! cargo run --release --example cauchy_pompeiu
//! ```

use crflat::construct::construct;
use crflat::xcheck::{cauchy_pompeiu_residuals, probe_points};
use crflat::{HoloSeries, C64};

fn main() -> crflat::Result<()> {
    let seed = HoloSeries::polynomial(vec![C64::new(1.0, 0.0)]);
    let built = construct(&HoloSeries::z(), &seed, 12)?;
    let radius = 0.3;
    let probes = probe_points(radius);
    for n in [32, 64, 128] {
        let res = cauchy_pompeiu_residuals(&built.data.r, &built.data.u, radius, n, &probes)?;
        let worst = res.iter().copied().fold(0.0, f64::max);
        println!("n = {n:>3}: max residual {worst:.3e}");
    }
    Ok(())
}
