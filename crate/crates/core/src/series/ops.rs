use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{count_upto_order, Monomial};
use super::{Series, C64};

impl Series {
    /// Nonzero terms as `(degree, monomial, coefficient)`, sorted by degree.
    pub(crate) fn graded_terms(&self) -> Vec<(u32, Monomial, C64)> {
        self.terms().map(|(m, c)| (m.degree(), m, c)).collect()
    }

    fn combine(&self, other: &Series, f: impl Fn(C64, C64) -> C64) -> Series {
        let order = self.order.min(other.order);
        let n = count_upto_order(order);
        let coeffs = (0..n).map(|i| f(self.coeffs[i], other.coeffs[i])).collect();
        Series::from_dense(order, coeffs)
    }

    /// Truncated product; exact through `min(self.order, other.order)`.
    pub fn mul_series(&self, other: &Series) -> Series {
        let order = self.order.min(other.order);
        let mut out = vec![C64::new(0.0, 0.0); count_upto_order(order)];
        let lhs = self.graded_terms();
        let rhs = other.graded_terms();
        for &(da, ma, ca) in &lhs {
            if da > order {
                break;
            }
            let budget = order - da;
            for &(db, mb, cb) in &rhs {
                if db > budget {
                    break;
                }
                out[ma.mul(&mb).index()] += ca * cb;
            }
        }
        Series::from_dense(order, out)
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one(self.order);
        for _ in 0..k {
            acc = acc.mul_series(self);
        }
        acc
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_series(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Series {
    type Output = Series;
    fn mul(self, rhs: f64) -> Series {
        self.scale(rhs)
    }
}

impl Mul<C64> for &Series {
    type Output = Series;
    fn mul(self, rhs: C64) -> Series {
        self.scale(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl Mul<f64> for Series {
    type Output = Series;
    fn mul(self, rhs: f64) -> Series {
        self.scale(rhs)
    }
}

impl Mul<C64> for Series {
    type Output = Series;
    fn mul(self, rhs: C64) -> Series {
        self.scale(rhs)
    }
}
