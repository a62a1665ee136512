//! Truncated series arithmetic: products, reciprocals, square roots and
//! order bookkeeping.
//!
//! ```bash
//! cargo run --example series_arithmetic
//! ```

use crflat::{Monomial, Series, Tolerances, Var};

fn main() -> crflat::Result<()> {
    let order = 6;
    let zz = Series::monomial(Monomial::new(0, 0, 1, 1), 1.0, order);
    let one = Series::one(order);

    let geometric = (&one - &zz).invert()?;
    println!("1/(1 - z2 z2b) = {geometric:?}");

    let root = (&one + &zz.scale(2.0)).sqrt_real()?;
    println!("sqrt(1 + 2 z2 z2b) = {root:?}");
    assert!(Tolerances::default().agree(&(&root * &root), &(&one + &zz.scale(2.0))));

    let z1 = Series::var(Var::Z1, 3);
    let product = &z1 * &geometric;
    println!(
        "z1 (order 3) times the order-6 series has order {}",
        product.order()
    );

    let d = geometric.diff(Var::Z2b)?;
    println!("d/dz2b lowers the order to {}: {d:?}", d.order());
    let back = d.antidiff(Var::Z2b);
    println!("antidiff raises it again to {}", back.order());
    Ok(())
}
