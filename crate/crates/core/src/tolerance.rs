use serde::{Deserialize, Serialize};

use crate::series::Series;

/// Comparison and division thresholds shared by every computation.
///
/// `cmp` is relative: two series agree when every coefficient difference is
/// at most `cmp * (1 + m)`, with `m` the largest compared magnitude. `div` is
/// absolute and guards every division by a constant term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub cmp: f64,
    pub div: f64,
}

pub const TOL_CMP: f64 = 1e-9;
pub const TOL_DIV: f64 = 1e-12;
/// Coefficients smaller than `TOL_STORE * (1 + max magnitude)` are dropped
/// from canonical storage.
pub const TOL_STORE: f64 = 1e-15;

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cmp: TOL_CMP,
            div: TOL_DIV,
        }
    }
}

impl Tolerances {
    /// `a == b` coefficient-wise up to total degree `order`.
    pub fn agree_at(&self, a: &Series, b: &Series, order: u32) -> bool {
        let scale = a.max_abs_upto(order).max(b.max_abs_upto(order));
        let bound = self.cmp * (1.0 + scale);
        a.max_diff_upto(b, order) <= bound
    }

    /// `a == b` at the smaller of the two orders.
    pub fn agree(&self, a: &Series, b: &Series) -> bool {
        self.agree_at(a, b, a.order().min(b.order()))
    }

    /// Every stored coefficient is negligible.
    pub fn is_zero(&self, a: &Series) -> bool {
        let m = a.max_abs();
        m <= self.cmp * (1.0 + m)
    }

    /// Threshold below which a coefficient of `a` counts as absent.
    pub fn noise_floor(&self, a: &Series) -> f64 {
        self.cmp * (1.0 + a.max_abs())
    }
}
