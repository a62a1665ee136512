//! Degree-by-degree coefficient recursions: reciprocal, square root,
//! exponential, logarithm and exact quotients.

use super::monomial::{count_upto_degree, count_upto_order, Monomial};
use super::{Series, C64};
use crate::error::{Error, Result};
use crate::tolerance::{Tolerances, TOL_DIV};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Adds `sum_{k=lo..=hi} w(k) * (lhs_k * rhs_{n-k})` into degree block `n`
/// of `out`, where `x_k` is the homogeneous part of degree `k`.
fn convolve_degree(
    lhs: &[C64],
    rhs: &[C64],
    n: u32,
    lo: u32,
    hi: u32,
    w: impl Fn(u32) -> f64,
    out: &mut [C64],
) {
    for k in lo..=hi.min(n) {
        let (ls, le) = (count_upto_degree(k), count_upto_degree(k + 1));
        let (rs, re) = (count_upto_degree(n - k), count_upto_degree(n - k + 1));
        let wk = w(k);
        for (i, &a) in lhs.iter().enumerate().take(le).skip(ls) {
            if a == ZERO {
                continue;
            }
            let ma = Monomial::from_index(i);
            let a = a * wk;
            for (j, &b) in rhs.iter().enumerate().take(re).skip(rs) {
                if b == ZERO {
                    continue;
                }
                out[ma.mul(&Monomial::from_index(j)).index()] += a * b;
            }
        }
    }
}

fn block(n: u32) -> std::ops::Range<usize> {
    count_upto_degree(n)..count_upto_degree(n + 1)
}

impl Series {
    /// Multiplicative inverse, with the default division tolerance.
    pub fn invert(&self) -> Result<Series> {
        self.invert_tol(TOL_DIV)
    }

    pub fn invert_tol(&self, tol_div: f64) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.norm() <= tol_div {
            return Err(Error::NonUnitConstantTerm {
                magnitude: a0.norm(),
            });
        }
        let order = self.order;
        let a = self.dense();
        let mut b = vec![ZERO; count_upto_order(order)];
        let b0 = a0.inv();
        b[0] = b0;
        let mut acc = vec![ZERO; b.len()];
        for n in 1..=order {
            convolve_degree(a, &b, n, 1, n, |_| 1.0, &mut acc);
            for i in block(n) {
                b[i] = -b0 * acc[i];
                acc[i] = ZERO;
            }
        }
        Ok(Series::from_dense(order, b))
    }

    /// Square root of a real series with positive constant term; the result
    /// is real with positive constant term.
    pub fn sqrt_real(&self) -> Result<Series> {
        self.sqrt_real_tol(&Tolerances::default())
    }

    pub fn sqrt_real_tol(&self, tol: &Tolerances) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.re <= tol.div || a0.im.abs() > tol.cmp * (1.0 + a0.re.abs()) {
            return Err(Error::NonPositiveConstantTerm {
                value: format!("{a0}"),
            });
        }
        if !self.is_real(tol) {
            return Err(Error::NotReal {
                context: "sqrt_real argument".into(),
            });
        }
        let order = self.order;
        let a = self.dense();
        let mut s = vec![ZERO; count_upto_order(order)];
        let s0 = a0.re.sqrt();
        s[0] = C64::new(s0, 0.0);
        let mut acc = vec![ZERO; s.len()];
        for n in 1..=order {
            if n >= 2 {
                convolve_degree(&s, &s, n, 1, n - 1, |_| 1.0, &mut acc);
            }
            for i in block(n) {
                s[i] = (a[i] - acc[i]) / (2.0 * s0);
                acc[i] = ZERO;
            }
        }
        Ok(Series::from_dense(order, s))
    }

    /// `exp(self)`, with the constant term handled by the scalar exponential.
    pub fn exp(&self) -> Series {
        let order = self.order;
        let mut x = self.dense().to_vec();
        let x0 = x[0];
        x[0] = ZERO;
        let mut e = vec![ZERO; x.len()];
        e[0] = C64::new(1.0, 0.0);
        let mut acc = vec![ZERO; x.len()];
        for n in 1..=order {
            convolve_degree(&x, &e, n, 1, n, |k| k as f64, &mut acc);
            for i in block(n) {
                e[i] = acc[i] / n as f64;
                acc[i] = ZERO;
            }
        }
        Series::from_dense(order, e).scale(x0.exp())
    }

    /// Natural logarithm; the constant term goes through the scalar
    /// logarithm (real when the constant term is a positive real).
    pub fn ln(&self) -> Result<Series> {
        let a0 = self.constant_term();
        if a0.norm() <= TOL_DIV {
            return Err(Error::NonUnitConstantTerm {
                magnitude: a0.norm(),
            });
        }
        let order = self.order;
        let b: Vec<C64> = self.dense().iter().map(|c| c / a0).collect();
        let mut l = vec![ZERO; b.len()];
        let mut acc = vec![ZERO; b.len()];
        for n in 1..=order {
            if n >= 2 {
                convolve_degree(&l, &b, n, 1, n - 1, |k| k as f64, &mut acc);
            }
            let nf = n as f64;
            for i in block(n) {
                l[i] = (nf * b[i] - acc[i]) / nf;
                acc[i] = ZERO;
            }
        }
        l[0] = if a0.im == 0.0 && a0.re > 0.0 {
            C64::new(a0.re.ln(), 0.0)
        } else {
            a0.ln()
        };
        Ok(Series::from_dense(order, l))
    }

    /// Exact power-series quotient `self / den`.
    ///
    /// When `den` is a unit this is `self * den^-1` at the common order.
    /// Otherwise the monomial gcd `g` of the significant terms of `den` is
    /// factored out; the quotient exists when `den / g` is a unit and `g`
    /// divides every significant term of `self`. The result is then exact to
    /// `min(self.order, den.order) - deg(g)`.
    pub fn divide(&self, den: &Series, tol: &Tolerances) -> Result<Series> {
        if den.constant_term().norm() > tol.div {
            return Ok(self * &den.invert_tol(tol.div)?);
        }
        let floor = tol.noise_floor(den);
        let significant: Vec<(Monomial, C64)> =
            den.terms().filter(|(_, c)| c.norm() > floor).collect();
        let Some(first) = significant.first() else {
            return Err(Error::NonUnitConstantTerm { magnitude: 0.0 });
        };
        let g = significant.iter().fold(first.0, |acc, (m, _)| acc.gcd(m));
        let shift = g.degree();
        if shift == 0 || shift > den.order || shift > self.order {
            return Err(Error::NonUnitConstantTerm {
                magnitude: den.constant_term().norm(),
            });
        }
        let den_red = Series::from_terms(
            significant.iter().map(|(m, c)| (m.div(&g).unwrap(), *c)),
            den.order - shift,
        );
        let num_floor = tol.noise_floor(self);
        let mut num_terms = Vec::new();
        for (m, c) in self.terms() {
            match m.div(&g) {
                Some(q) => num_terms.push((q, c)),
                None if c.norm() <= num_floor => {}
                None => {
                    return Err(Error::NonUnitConstantTerm {
                        magnitude: den.constant_term().norm(),
                    })
                }
            }
        }
        let num_red = Series::from_terms(num_terms, self.order - shift);
        Ok(&num_red * &den_red.invert_tol(tol.div)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::Var;
    use super::*;

    fn zz(order: u32) -> Series {
        Series::monomial(Monomial::new(0, 0, 1, 1), 1.0, order)
    }

    #[test]
    fn geometric_series() {
        let a = &Series::one(4) - &zz(4);
        let inv = a.invert().unwrap();
        let expected = Series::from_terms(
            [
                (Monomial::ONE, C64::new(1.0, 0.0)),
                (Monomial::new(0, 0, 1, 1), C64::new(1.0, 0.0)),
                (Monomial::new(0, 0, 2, 2), C64::new(1.0, 0.0)),
            ],
            4,
        );
        assert_eq!(inv, expected);
    }

    #[test]
    fn invert_scalar_and_nonunit() {
        let inv = Series::constant(2.0, 3).invert().unwrap();
        assert_eq!(inv.constant_term(), C64::new(0.5, 0.0));
        assert_eq!(inv.nnz(), 1);
        let err = Series::var(Var::Z2, 3).invert().unwrap_err();
        assert!(matches!(err, Error::NonUnitConstantTerm { .. }));
    }

    #[test]
    fn sqrt_examples() {
        let four = Series::constant(4.0, 2).sqrt_real().unwrap();
        assert_eq!(four.constant_term(), C64::new(2.0, 0.0));

        let a = &Series::one(4) + &zz(4).scale(2.0);
        let s = a.sqrt_real().unwrap();
        assert!((s.coeff(Monomial::new(0, 0, 1, 1)) - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((s.coeff(Monomial::new(0, 0, 2, 2)) - C64::new(-0.5, 0.0)).norm() < 1e-15);
        assert_eq!(s.nnz(), 3);

        let err = zz(4).sqrt_real().unwrap_err();
        assert!(matches!(err, Error::NonPositiveConstantTerm { .. }));
        let err = (&Series::one(3) + &Series::var(Var::Z2, 3))
            .sqrt_real()
            .unwrap_err();
        assert!(matches!(err, Error::NotReal { .. }));
    }

    #[test]
    fn exp_ln_roundtrip() {
        let x = Series::from_terms(
            [
                (Monomial::ONE, C64::new(0.3, 0.0)),
                (Monomial::new(0, 0, 1, 0), C64::new(0.5, 0.2)),
                (Monomial::new(0, 0, 0, 1), C64::new(0.5, -0.2)),
                (Monomial::new(1, 1, 0, 0), C64::new(-0.7, 0.0)),
            ],
            8,
        );
        let back = x.exp().ln().unwrap();
        assert!(Tolerances::default().agree(&back, &x));
    }

    #[test]
    fn exp_of_scalar() {
        let e = Series::constant(1.0, 3).exp();
        assert!((e.constant_term().re - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn divide_with_monomial_factor() {
        // (z1b z2 (1 + z2)) / (z1b (2 - z1)) = z2 (1 + z2) / (2 - z1)
        let z1 = Series::var(Var::Z1, 8);
        let z2 = Series::var(Var::Z2, 8);
        let w1 = Series::var(Var::Z1b, 8);
        let num = &(&w1 * &z2) * &(&Series::one(8) + &z2);
        let den = &w1 * &(&Series::constant(2.0, 8) - &z1);
        let q = num.divide(&den, &Tolerances::default()).unwrap();
        assert_eq!(q.order(), 7);
        let expected = &(&z2 * &(&Series::one(8) + &z2))
            * &(&Series::constant(2.0, 8) - &z1).invert().unwrap();
        assert!(Tolerances::default().agree(&q, &expected));
    }

    #[test]
    fn divide_rejects_non_factorable() {
        let z1 = Series::var(Var::Z1, 6);
        let z2 = Series::var(Var::Z2, 6);
        let den = &z1 + &z2;
        let err = Series::one(6)
            .divide(&den, &Tolerances::default())
            .unwrap_err();
        assert!(matches!(err, Error::NonUnitConstantTerm { .. }));
        let err = z2.divide(&z1, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::NonUnitConstantTerm { .. }));
    }
}
