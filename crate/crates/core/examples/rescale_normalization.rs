//! Carry the model germ, normalised by `t_2b = r^2/2`, into the family with
//! `t_2b = r^2/4` by rescaling `z1`.
//!
//! ```bash
//! cargo run --example rescale_normalization
//! ```

use crflat::construct::RigidModelData;
use crflat::series::Var;
use crflat::{mtilde0, Tolerances, C64};

fn main() -> crflat::Result<()> {
    let tol = Tolerances::default();
    let model = RigidModelData::from_germ(&mtilde0(12)?, &tol)?;
    let ratio = |d: &RigidModelData| -> crflat::Result<C64> {
        let t2b = d.t.diff(Var::Z2b)?;
        Ok(t2b.constant_term() / (d.r.constant_term() * d.r.constant_term()))
    };
    println!("model: t_2b / r^2 at 0 = {}", ratio(&model)?);
    let scaled = model.rescale_z1(C64::new(0.5, 0.0), &tol)?;
    println!("rescaled: t_2b / r^2 at 0 = {}", ratio(&scaled)?);
    println!("rescaled data valid: {:?}", scaled.validate(&tol));
    Ok(())
}
