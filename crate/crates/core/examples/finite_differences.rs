//! Series derivatives against central finite differences on a grid, and the
//! grid written as CSV.
//!
//! ```bash
//! cargo run --example finite_differences > grid.csv
//! ```

use crflat::mtilde0;
use crflat::xcheck::{eval_grid, fd_residual, Plane};

fn main() -> crflat::Result<()> {
    let f = mtilde0(12)?.into_series();
    for deriv in [[1, 1, 0, 0], [2, 1, 0, 0], [1, 0, 0, 1]] {
        for n in [8, 16, 32] {
            let res = fd_residual(&f, deriv, 0.3, n, Plane::Z1)?;
            eprintln!("{deriv:?} n = {n:>2}: {res:.3e}");
        }
    }
    eval_grid(&f, 0.3, 16, Plane::Z2)?.write_csv(std::io::stdout())
}
