//! Germs outside the class are flagged, with the reason in the report.
//!
//! ```bash
//! cargo run --example degeneracy
//! ```

use crflat::{full_report, mtilde0, HypersurfaceGerm, Monomial, Series, Tolerances};

fn main() -> crflat::Result<()> {
    let tol = Tolerances::default();
    let order = 12;
    let z1z1b = Series::monomial(Monomial::new(1, 1, 0, 0), 1.0, order);
    let zz = Series::monomial(Monomial::new(0, 0, 1, 1), 1.0, order);

    let cases = [
        ("quadric", &z1z1b + &zz),
        ("S = 0", &z1z1b + &(&z1z1b * &zz)),
        (
            "model + 1e-2 |z1|^4",
            mtilde0(order)?.f() + &Series::monomial(Monomial::new(2, 2, 0, 0), 1e-2, order),
        ),
    ];
    for (name, f) in cases {
        let report = full_report(&HypersurfaceGerm::new(f)?, &tol);
        println!("{name}: {:?}", report.flags.values());
        for (what, err) in report.errors() {
            println!("    {what}: {err}");
        }
    }
    Ok(())
}
