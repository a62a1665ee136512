//! Truncated formal power series in `z1, z1b, z2, z2b` with complex
//! coefficients.
//!
//! A [`Series`] stores every coefficient of total degree `<= order` densely,
//! indexed by [`Monomial::index`]. All operations track the order up to which
//! their result is exact: products and sums take the minimum of the operand
//! orders, derivatives lower it by one, antiderivatives raise it by one.

mod calculus;
mod holo;
pub mod io;
mod monomial;
mod ops;
mod recursive;

use std::fmt;

use num_complex::Complex64;

pub use holo::HoloSeries;
pub use monomial::{count_upto_degree, count_upto_order, Monomial, Var, ORDER_CAP};

use crate::tolerance::TOL_STORE;

pub type C64 = Complex64;

#[derive(Clone, PartialEq)]
pub struct Series {
    order: u32,
    coeffs: Vec<C64>,
}

impl Series {
    pub fn zero(order: u32) -> Self {
        let order = order.min(ORDER_CAP);
        Series {
            order,
            coeffs: vec![C64::new(0.0, 0.0); count_upto_order(order)],
        }
    }

    pub fn constant(c: impl Into<C64>, order: u32) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c.into();
        s
    }

    pub fn one(order: u32) -> Self {
        Series::constant(1.0, order)
    }

    /// The single variable `v`, valid to `order`.
    pub fn var(v: Var, order: u32) -> Self {
        Series::monomial(Monomial::var(v), 1.0, order)
    }

    /// `c * m`, or the zero series if `deg(m) > order`.
    pub fn monomial(m: Monomial, c: impl Into<C64>, order: u32) -> Self {
        let mut s = Series::zero(order);
        if m.degree() <= s.order {
            s.coeffs[m.index()] = c.into();
        }
        s
    }

    /// Builds a series from `(monomial, coefficient)` pairs; repeated
    /// monomials are summed and terms above `order` are discarded.
    pub fn from_terms<I>(terms: I, order: u32) -> Self
    where
        I: IntoIterator<Item = (Monomial, C64)>,
    {
        let mut s = Series::zero(order);
        for (m, c) in terms {
            if m.degree() <= s.order {
                s.coeffs[m.index()] += c;
            }
        }
        s.canonicalize();
        s
    }

    pub(crate) fn from_dense(order: u32, coeffs: Vec<C64>) -> Self {
        debug_assert_eq!(coeffs.len(), count_upto_order(order));
        let mut s = Series { order, coeffs };
        s.canonicalize();
        s
    }

    /// Drops coefficients below the storage threshold.
    fn canonicalize(&mut self) {
        let m = self.max_abs();
        let floor = TOL_STORE * (1.0 + m);
        for c in self.coeffs.iter_mut() {
            if c.norm() < floor {
                *c = C64::new(0.0, 0.0);
            }
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, m: Monomial) -> C64 {
        if m.degree() <= self.order {
            self.coeffs[m.index()]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    pub fn constant_term(&self) -> C64 {
        self.coeffs[0]
    }

    /// Nonzero terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, C64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(i, c)| (Monomial::from_index(i), *c))
    }

    pub fn nnz(&self) -> usize {
        self.terms().count()
    }

    /// Same coefficients, valid only to `min(order, self.order)`.
    pub fn truncate(&self, order: u32) -> Series {
        if order >= self.order {
            return self.clone();
        }
        Series {
            order,
            coeffs: self.coeffs[..count_upto_order(order)].to_vec(),
        }
    }

    /// Terms satisfying `keep`, everything else set to zero.
    pub fn filter(&self, mut keep: impl FnMut(Monomial) -> bool) -> Series {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            if !keep(Monomial::from_index(i)) {
                *c = C64::new(0.0, 0.0);
            }
        }
        out
    }

    /// Multiplies by the monomial `m`; the valid order grows by `deg(m)`.
    pub fn shift(&self, m: Monomial) -> Series {
        let order = (self.order + m.degree()).min(ORDER_CAP);
        let mut out = Series::zero(order);
        for (k, c) in self.terms() {
            let k = k.mul(&m);
            if k.degree() <= order {
                out.coeffs[k.index()] = c;
            }
        }
        out
    }

    pub fn scale(&self, c: impl Into<C64>) -> Series {
        let c = c.into();
        Series::from_dense(self.order, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Complex conjugation: `z1 <-> z1b`, `z2 <-> z2b`, coefficients conjugated.
    pub fn conj(&self) -> Series {
        let mut out = Series::zero(self.order);
        for (m, c) in self.terms() {
            out.coeffs[m.conj().index()] = c.conj();
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_upto(&self, order: u32) -> f64 {
        let n = count_upto_order(order.min(self.order));
        self.coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Largest coefficient difference over degrees `<= order`.
    pub fn max_diff_upto(&self, other: &Series, order: u32) -> f64 {
        let n = count_upto_order(order);
        (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or_default();
                let b = other.coeffs.get(i).copied().unwrap_or_default();
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    /// The nonzero term of largest magnitude.
    pub fn leading_term(&self) -> Option<(Monomial, C64)> {
        self.terms()
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
    }

    /// True when no stored monomial involves `z1` or `z1b`.
    pub fn is_z2_only(&self) -> bool {
        self.terms()
            .all(|(m, _)| m.exp(Var::Z1) == 0 && m.exp(Var::Z1b) == 0)
    }

    pub(crate) fn dense(&self) -> &[C64] {
        &self.coeffs
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[order {}](", self.order)?;
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6e}{:+.6e}i)*{}", c.re, c.im, m)?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_above_order_is_dropped() {
        let s = Series::monomial(Monomial::new(2, 2, 0, 0), 1.0, 3);
        assert_eq!(s.nnz(), 0);
    }

    #[test]
    fn conj_of_i_z1() {
        let s = Series::monomial(Monomial::new(1, 0, 0, 0), C64::new(0.0, 1.0), 3);
        let c = s.conj();
        assert_eq!(c.coeff(Monomial::new(0, 1, 0, 0)), C64::new(0.0, -1.0));
        assert_eq!(c.nnz(), 1);
    }

    #[test]
    fn store_floor_drops_roundoff() {
        let s = Series::from_terms(
            [
                (Monomial::ONE, C64::new(1.0, 0.0)),
                (Monomial::new(1, 0, 0, 0), C64::new(1e-17, 0.0)),
            ],
            2,
        );
        assert_eq!(s.nnz(), 1);
    }
}
