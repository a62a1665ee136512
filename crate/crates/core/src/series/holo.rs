use super::monomial::{Monomial, ORDER_CAP};
use super::{Series, C64};

/// A truncated series in `z2` alone (holomorphic data).
#[derive(Debug, Clone, PartialEq)]
pub struct HoloSeries {
    coeffs: Vec<C64>,
    order: u32,
}

impl HoloSeries {
    /// `coeffs[c]` is the coefficient of `z2^c`; entries above `order` are dropped.
    pub fn new(mut coeffs: Vec<C64>, order: u32) -> Self {
        coeffs.truncate(order as usize + 1);
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        HoloSeries { coeffs, order }
    }

    /// A polynomial, exact at every order up to [`ORDER_CAP`].
    pub fn polynomial(coeffs: Vec<C64>) -> Self {
        HoloSeries::new(coeffs, ORDER_CAP)
    }

    pub fn zero() -> Self {
        HoloSeries::polynomial(Vec::new())
    }

    /// The identity map `z2`.
    pub fn z() -> Self {
        HoloSeries::polynomial(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, c: usize) -> C64 {
        self.coeffs.get(c).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero series).
    pub fn degree(&self) -> u32 {
        self.coeffs.len().saturating_sub(1) as u32
    }

    pub fn derivative(&self) -> HoloSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(c, x)| x * c as f64)
            .collect();
        HoloSeries::new(coeffs, self.order.saturating_sub(1))
    }

    /// Embeds into four-variable series as a function of `z2`, valid to
    /// `min(order, self.order)`.
    pub fn to_series(&self, order: u32) -> Series {
        let order = order.min(self.order);
        Series::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(c, x)| (Monomial::new(0, 0, c as u32, 0), *x)),
            order,
        )
    }
}
