//! Deterministic random admissible inputs `(rho, seed)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::series::{HoloSeries, C64};

/// Default generator seed for the self-test and the acceptance suite.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Bounds for a random draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissible {
    /// `|rho(0)| <= rho0_max`.
    pub rho0_max: f64,
    /// `|rho'(0)|` is uniform in this interval.
    pub rho1_range: (f64, f64),
    /// Higher coefficients of `rho` lie in this disk.
    pub rho_tail_max: f64,
    /// Number of coefficients of `rho` above the linear one.
    pub rho_tail_len: usize,
    /// Seed coefficients lie in this disk.
    pub seed_max: f64,
    /// Number of seed coefficients.
    pub seed_len: usize,
}

impl Default for Admissible {
    fn default() -> Self {
        Admissible {
            rho0_max: 0.5,
            rho1_range: (0.5, 1.0),
            rho_tail_max: 0.3,
            rho_tail_len: 3,
            seed_max: 1.0,
            seed_len: 4,
        }
    }
}

fn in_disk<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    let r = radius * rng.gen::<f64>().sqrt();
    C64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

impl Admissible {
    pub fn draw<R: Rng>(&self, rng: &mut R) -> (HoloSeries, HoloSeries) {
        let mut rho = vec![in_disk(rng, self.rho0_max)];
        let (lo, hi) = self.rho1_range;
        rho.push(C64::from_polar(
            rng.gen_range(lo..=hi),
            rng.gen_range(0.0..std::f64::consts::TAU),
        ));
        for _ in 0..self.rho_tail_len {
            rho.push(in_disk(rng, self.rho_tail_max));
        }
        let seed = (0..self.seed_len)
            .map(|_| in_disk(rng, self.seed_max))
            .collect();
        (HoloSeries::polynomial(rho), HoloSeries::polynomial(seed))
    }
}

/// `count` draws from the default bounds with a fixed generator seed.
pub fn draws(count: usize, seed: u64) -> Vec<(HoloSeries, HoloSeries)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = Admissible::default();
    (0..count).map(|_| bounds.draw(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_admissible_and_reproducible() {
        let a = draws(20, 7);
        assert_eq!(a, draws(20, 7));
        for (rho, seed) in &a {
            assert!(rho.coeff(0).norm() <= 0.5);
            let d = rho.coeff(1).norm();
            assert!((0.5..=1.0).contains(&d));
            assert!((2..5).all(|k| rho.coeff(k).norm() <= 0.3));
            assert!(seed.coeffs().iter().all(|c| c.norm() <= 1.0));
        }
    }
}
