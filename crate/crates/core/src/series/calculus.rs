use super::monomial::{Monomial, Var, ORDER_CAP};
use super::{Series, C64};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Conjugate-locus test threshold for evaluation points.
const POINT_TOL: f64 = 1e-12;

impl Series {
    /// Formal partial derivative; the valid order drops by one.
    pub fn diff(&self, v: Var) -> Result<Series> {
        if self.order == 0 {
            return Err(Error::OrderExhausted {
                needed: 1,
                available: 0,
            });
        }
        let order = self.order - 1;
        let k = v.index();
        let mut out = Series::zero(order);
        for (m, c) in self.terms() {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut d = m;
            d.0[k] -= 1;
            out.coeffs[d.index()] = c * e as f64;
        }
        Ok(out)
    }

    /// Applies [`Series::diff`] once per entry of `vars`, left to right.
    pub fn diff_many(&self, vars: &[Var]) -> Result<Series> {
        let mut out = self.clone();
        for &v in vars {
            out = out.diff(v).map_err(|_| Error::OrderExhausted {
                needed: vars.len() as u32,
                available: self.order,
            })?;
        }
        Ok(out)
    }

    /// Term-by-term antiderivative with zero integration constant: every
    /// monomial of the result contains `v`. The valid order grows by one,
    /// capped at [`ORDER_CAP`].
    pub fn antidiff(&self, v: Var) -> Series {
        let order = (self.order + 1).min(ORDER_CAP);
        let k = v.index();
        let mut out = Series::zero(order);
        for (m, c) in self.terms() {
            let mut d = m;
            d.0[k] += 1;
            if d.degree() <= order {
                out.coeffs[d.index()] = c / d.0[k] as f64;
            }
        }
        out
    }

    /// Evaluates the truncated polynomial at `(z1, z1b, z2, z2b)`, which must
    /// satisfy `z1b = conj(z1)` and `z2b = conj(z2)`.
    pub fn eval(&self, point: [C64; 4]) -> Result<C64> {
        let [z1, w1, z2, w2] = point;
        let off = |z: C64, w: C64| (w - z.conj()).norm() > POINT_TOL * (1.0 + z.norm());
        if off(z1, w1) || off(z2, w2) {
            return Err(Error::NonConjugatePoint);
        }
        Ok(self.eval_unchecked(point))
    }

    /// Evaluation without the conjugate-locus check.
    pub fn eval_unchecked(&self, point: [C64; 4]) -> C64 {
        let n = self.order as usize;
        let powers: Vec<Vec<C64>> = point
            .iter()
            .map(|&x| {
                let mut p = Vec::with_capacity(n + 1);
                let mut acc = C64::new(1.0, 0.0);
                for _ in 0..=n {
                    p.push(acc);
                    acc *= x;
                }
                p
            })
            .collect();
        self.terms()
            .map(|(Monomial([a, b, c, d]), coef)| {
                coef * powers[0][a as usize]
                    * powers[1][b as usize]
                    * powers[2][c as usize]
                    * powers[3][d as usize]
            })
            .sum()
    }

    /// Real-valuedness: `conj(self) == self` within the comparison tolerance.
    pub fn is_real(&self, tol: &Tolerances) -> bool {
        tol.agree(&self.conj(), self)
    }

    /// [`Series::is_real`] with default tolerances.
    pub fn check_real(&self) -> bool {
        self.is_real(&Tolerances::default())
    }
}
