//! Solve `u_2b = (r/2) conj(u)` degree by degree and substitute back.
//!
//! ```bash
//! cargo run --example dbar_solver
//! ```

use crflat::construct::solve_dbar_u;
use crflat::series::Var;
use crflat::{HoloSeries, Series, C64};

fn main() -> crflat::Result<()> {
    let r = Series::constant(2.0, 4);
    let seed = HoloSeries::polynomial(vec![C64::new(1.0, 0.0)]);
    let u = solve_dbar_u(&r, &seed)?;
    println!("r = 2, seed 1: u = {u:?}");

    let residual = &u.diff(Var::Z2b)? - &(&r * &u.conj()).scale(0.5);
    println!("max |u_2b - (r/2) conj(u)| = {:e}", residual.max_abs());
    Ok(())
}
