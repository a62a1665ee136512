//! Rigid-case CR invariants and defining residuals of a germ
//! `Re z3 = F(z1, z1b, z2, z2b)`.
//!
//! Subscripts follow the usual convention: `F_11b` is `d^2 F / dz1 dz1b`,
//! `S_1` is `dS/dz1`, and so on. All results carry the truncation order up to
//! which they are exact; that order is what the report certifies.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::Var::{Z1b, Z2b, Z1, Z2};
use crate::series::{Monomial, Series, C64};
use crate::tolerance::Tolerances;

/// A rigid hypersurface germ `Re z3 = F` with `F` real, `F(0) = 0` and
/// `F_11b(0) > 0`.
#[derive(Debug, Clone)]
pub struct HypersurfaceGerm {
    f: Series,
}

impl HypersurfaceGerm {
    pub fn new(f: Series) -> Result<Self> {
        Self::with_tolerances(f, &Tolerances::default())
    }

    pub fn with_tolerances(f: Series, tol: &Tolerances) -> Result<Self> {
        if f.order() < 2 {
            return Err(Error::OrderExhausted {
                needed: 2,
                available: f.order(),
            });
        }
        if !f.is_real(tol) {
            return Err(Error::NotReal {
                context: "graphing function F".into(),
            });
        }
        let c0 = f.constant_term();
        if c0.norm() > tol.cmp * (1.0 + f.max_abs()) {
            return Err(Error::InvalidGerm(format!("F(0) = {c0} is not zero")));
        }
        let levi = f.coeff(Monomial::new(1, 1, 0, 0));
        if levi.re <= tol.div || levi.im.abs() > tol.cmp * (1.0 + levi.re.abs()) {
            return Err(Error::InvalidGerm(format!(
                "F_11b(0) = {levi} is not a positive real"
            )));
        }
        Ok(HypersurfaceGerm { f })
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn order(&self) -> u32 {
        self.f.order()
    }

    pub fn into_series(self) -> Series {
        self.f
    }

    /// `a * F` for a real `a > 0` (the rigid rescaling `z3 -> a z3`).
    pub fn scaled(&self, a: f64) -> Result<Self> {
        HypersurfaceGerm::new(self.f.scale(a))
    }

    fn d(&self, vars: &[crate::series::Var]) -> Result<Series> {
        self.f.diff_many(vars)
    }

    fn need(&self, k: u32) -> Result<()> {
        if self.order() < k {
            return Err(Error::OrderExhausted {
                needed: k,
                available: self.order(),
            });
        }
        Ok(())
    }
}

/// `F_11b F_22b - F_12b F_21b`, exact to `order - 2`.
pub fn ma_residual(g: &HypersurfaceGerm) -> Result<Series> {
    g.need(2)?;
    let f11b = g.d(&[Z1, Z1b])?;
    let f22b = g.d(&[Z2, Z2b])?;
    let f12b = g.d(&[Z1, Z2b])?;
    let f21b = g.d(&[Z2, Z1b])?;
    Ok(&(&f11b * &f22b) - &(&f12b * &f21b))
}

/// `S = (F_12b / F_11b)_1`, exact to `order - 3`.
pub fn compute_s(g: &HypersurfaceGerm, tol: &Tolerances) -> Result<Series> {
    g.need(3)?;
    let f11b = g.d(&[Z1, Z1b])?;
    let f12b = g.d(&[Z1, Z2b])?;
    (&f12b * &f11b.invert_tol(tol.div)?).diff(Z1)
}

/// `(S_1, S_1b)`, exact to `order - 4`.
pub fn s1111_residuals(g: &HypersurfaceGerm, tol: &Tolerances) -> Result<(Series, Series)> {
    g.need(4)?;
    let s = compute_s(g, tol)?;
    Ok((s.diff(Z1)?, s.diff(Z1b)?))
}

/// `9 F5 F2^2 - 45 F4 F3 F2 + 40 F3^3` with `F2 = F_11b`, `F3 = F_11 1b`,
/// `F4 = F_111 1b`, `F5 = F_1111 1b`; reported at `order - 6`.
pub fn monge_residual(g: &HypersurfaceGerm) -> Result<Series> {
    g.need(6)?;
    let f2 = g.d(&[Z1, Z1b])?;
    let f3 = f2.diff(Z1)?;
    let f4 = f3.diff(Z1)?;
    let f5 = f4.diff(Z1)?;
    let r = &(&(&f5 * &f2) * &f2).scale(9.0) - &(&(&f4 * &f3) * &f2).scale(45.0);
    let r = &r + &f3.pow(3).scale(40.0);
    Ok(r.truncate(g.order() - 6))
}

/// Which expression produced `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JFormula {
    /// `S_1` vanishes identically: the three-term reduced expression.
    Reduced,
    /// `S_1` is a unit: the full expression.
    Full,
    /// `S_1(0) = 0` but `S_1 = m * unit` for a monomial `m` dividing
    /// `S_111`; the full expression with an exact monomial quotient.
    FullMonomialQuotient,
}

#[derive(Debug, Clone)]
pub struct JValue {
    pub j: Series,
    pub formula: JFormula,
}

/// `A = F_11 1b / F_11b` and its first two `z1`-derivatives.
fn a_terms(g: &HypersurfaceGerm, tol: &Tolerances) -> Result<(Series, Series, Series)> {
    let f2 = g.d(&[Z1, Z1b])?;
    let f3 = f2.diff(Z1)?;
    let a = &f3 * &f2.invert_tol(tol.div)?;
    let a1 = a.diff(Z1)?;
    let a11 = a1.diff(Z1)?;
    Ok((a, a1, a11))
}

/// `A A_1 / 3 - 2 A^3 / 27 - A_11 / 6`, the form `J` takes when
/// `S_1 = S_1b = 0`; reported at `order - 6`.
pub fn reduced_j(g: &HypersurfaceGerm, tol: &Tolerances) -> Result<Series> {
    g.need(6)?;
    let (a, a1, a11) = a_terms(g, tol)?;
    let j = &(&(&a * &a1).scale(1.0 / 3.0) - &a.pow(3).scale(2.0 / 27.0)) - &a11.scale(1.0 / 6.0);
    Ok(j.truncate(g.order() - 6))
}

/// The full expression for `J` in terms of `S`, `S_1`, `S_11`, the quotient
/// `S_111 / S_1` and `A, A_1, A_11`.
fn full_j_expression(
    s: &Series,
    s1: &Series,
    s11: &Series,
    quotient: &Series,
    (a, a1, a11): (&Series, &Series, &Series),
    tol: &Tolerances,
) -> Result<Series> {
    let inv_s = s.invert_tol(tol.div)?;
    let s1_s = s1 * &inv_s;
    let s11_s = s11 * &inv_s;

    let terms = [
        (&(&s1_s * &s1_s) * a).scale(5.0 / 18.0),
        (a * a1).scale(1.0 / 3.0),
        (&s1_s * &(a * a)).scale(-1.0 / 9.0),
        s1_s.pow(3).scale(20.0 / 27.0),
        (&s1_s * &s11_s).scale(-5.0 / 6.0),
        (&s1_s * a1).scale(1.0 / 6.0),
        (&s11_s * a).scale(-1.0 / 6.0),
        a.pow(3).scale(-2.0 / 27.0),
        a11.scale(-1.0 / 6.0),
        quotient.clone(),
    ];
    let mut j = terms[0].clone();
    for t in &terms[1..] {
        j = &j + t;
    }
    Ok(j)
}

/// The invariant `J`.
pub fn compute_j(g: &HypersurfaceGerm, tol: &Tolerances) -> Result<JValue> {
    g.need(6)?;
    let s = compute_s(g, tol)?;
    let s0 = s.constant_term();
    if s0.norm() <= tol.div {
        return Err(Error::TwoDegenerate { s0: s0.norm() });
    }
    let s1 = s.diff(Z1)?;
    if tol.is_zero(&s1) {
        return Ok(JValue {
            j: reduced_j(g, tol)?,
            formula: JFormula::Reduced,
        });
    }
    let s11 = s1.diff(Z1)?;
    let s111 = s11.diff(Z1)?;
    let (quotient, formula) = if s1.constant_term().norm() > tol.div {
        (&s111 * &s1.invert_tol(tol.div)?, JFormula::Full)
    } else {
        let q = s111
            .divide(&s1, tol)
            .map_err(|_| Error::IndeterminateTerm)?;
        (q, JFormula::FullMonomialQuotient)
    };

    let (a, a1, a11) = a_terms(g, tol)?;
    let j = full_j_expression(&s, &s1, &s11, &quotient, (&a, &a1, &a11), tol)?;
    let order = j.order().min(g.order() - 6);
    Ok(JValue {
        j: j.truncate(order),
        formula,
    })
}

/// The invariant `W`, exact to `order - 5`.
///
/// Barred quantities are derivatives of `conj(S)`, e.g. `Sb_1 = d conj(S) / dz1`.
/// `F_21b` is differentiated independently of `F_12b` and checked against
/// `conj(F_12b)`.
pub fn compute_w(g: &HypersurfaceGerm, tol: &Tolerances) -> Result<Series> {
    g.need(5)?;
    let s = compute_s(g, tol)?;
    let s0 = s.constant_term();
    if s0.norm() <= tol.div {
        return Err(Error::TwoDegenerate { s0: s0.norm() });
    }
    let f11b = g.d(&[Z1, Z1b])?;
    let f21b = g.d(&[Z2, Z1b])?;
    let f12b = g.d(&[Z1, Z2b])?;
    if !tol.agree(&f21b, &f12b.conj()) {
        return Err(Error::InvariantViolation(
            "F_21b differs from conj(F_12b)".into(),
        ));
    }
    let sb = s.conj();
    let sb_1 = sb.diff(Z1)?;
    let sb_1b = sb.diff(Z1b)?;
    let sb_2 = sb.diff(Z2)?;
    let sb_11b = sb_1.diff(Z1b)?;
    let sb_21b = sb_2.diff(Z1b)?;
    let s1 = s.diff(Z1)?;

    let inv_s = s.invert_tol(tol.div)?;
    let inv_sb = sb.invert_tol(tol.div)?;
    let ratio = &f21b * &f11b.invert_tol(tol.div)?;

    let t1 = (&sb_1 * &inv_sb).scale(2.0 / 3.0);
    let t2 = (&s1 * &inv_s).scale(2.0 / 3.0);
    let bracket1 = &(&ratio * &sb_1) - &sb_2;
    let t3 = (&(&sb_1b * &inv_sb.pow(3)) * &bracket1).scale(1.0 / 3.0);
    let bracket2 = &(&ratio * &sb_11b) - &sb_21b;
    let t4 = (&inv_sb.pow(2) * &bracket2).scale(-1.0 / 3.0);
    Ok(&(&(&t1 + &t2) + &t3) + &t4)
}

/// `F_11b` minus its `z1`, `z1b`-free part; zero exactly when `F_11b`
/// depends on `z2, z2b` only.
pub fn specclass_residual(g: &HypersurfaceGerm) -> Result<Series> {
    let f11b = g.d(&[Z1, Z1b])?;
    Ok(f11b.filter(|m| m.exp(Z1) > 0 || m.exp(Z1b) > 0))
}

/// A boolean verdict together with the truncation order it is certified at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub value: bool,
    pub order: Option<u32>,
}

impl Flag {
    fn new(value: bool, order: Option<u32>) -> Self {
        Flag { value, order }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub levi_rank_one: Flag,
    pub two_nondegenerate: Flag,
    pub s1111_holds: Flag,
    pub specclass_holds: Flag,
    pub cr_flat_candidate: Flag,
}

impl Flags {
    pub fn values(&self) -> [bool; 5] {
        [
            self.levi_rank_one.value,
            self.two_nondegenerate.value,
            self.s1111_holds.value,
            self.specclass_holds.value,
            self.cr_flat_candidate.value,
        ]
    }
}

/// Everything computed for one germ. Fields that could not be computed hold
/// the error instead.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub order_in: u32,
    pub tolerances: Tolerances,
    pub s: Result<Series>,
    pub s0: Option<C64>,
    pub j: Result<JValue>,
    pub w: Result<Series>,
    pub ma_residual: Result<Series>,
    pub monge_residual: Result<Series>,
    pub s1_residual: Result<Series>,
    pub s1b_residual: Result<Series>,
    pub specclass_residual: Result<Series>,
    pub flags: Flags,
}

/// `Some(order)` when `r` is certified zero.
fn zero_at(r: &Result<Series>, tol: &Tolerances) -> (bool, Option<u32>) {
    match r {
        Ok(s) => (tol.is_zero(s), Some(s.order())),
        Err(_) => (false, None),
    }
}

pub fn full_report(g: &HypersurfaceGerm, tol: &Tolerances) -> InvariantReport {
    let ma = ma_residual(g);
    let s = compute_s(g, tol);
    let s0 = s.as_ref().ok().map(|s| s.constant_term());
    let (s1, s1b) = match s1111_residuals(g, tol) {
        Ok((a, b)) => (Ok(a), Ok(b)),
        Err(e) => (Err(e.clone()), Err(e)),
    };
    let monge = monge_residual(g);
    let j = compute_j(g, tol);
    let w = compute_w(g, tol);
    let spec = specclass_residual(g);

    let (ma_zero, ma_order) = zero_at(&ma, tol);
    let levi = Flag::new(ma_zero, ma_order);

    let two_nd = Flag::new(s0.is_some_and(|c| c.norm() > tol.div), s0.map(|_| 0));

    let (s1_zero, s1_order) = zero_at(&s1, tol);
    let (s1b_zero, _) = zero_at(&s1b, tol);
    let s1111 = Flag::new(s1_zero && s1b_zero, s1_order);

    let (spec_zero, spec_order) = zero_at(&spec, tol);
    let specclass = Flag::new(spec_zero, spec_order);

    let j_series = j.as_ref().map(|v| v.j.clone()).map_err(|e| e.clone());
    let (j_zero, j_order) = zero_at(&j_series, tol);
    let (w_zero, w_order) = zero_at(&w, tol);
    let flat_order = match (j_order, w_order) {
        (Some(a), Some(b)) => Some(a.min(b)),
        _ => None,
    };
    let cr_flat = Flag::new(levi.value && two_nd.value && j_zero && w_zero, flat_order);

    InvariantReport {
        order_in: g.order(),
        tolerances: *tol,
        s,
        s0,
        j,
        w,
        ma_residual: ma,
        monge_residual: monge,
        s1_residual: s1,
        s1b_residual: s1b,
        specclass_residual: spec,
        flags: Flags {
            levi_rank_one: levi,
            two_nondegenerate: two_nd,
            s1111_holds: s1111,
            specclass_holds: specclass,
            cr_flat_candidate: cr_flat,
        },
    }
}

impl InvariantReport {
    pub fn j_series(&self) -> Result<&Series> {
        self.j.as_ref().map(|v| &v.j).map_err(|e| e.clone())
    }

    /// `(name, series)` for every residual field, in report order.
    pub fn residuals(&self) -> Vec<(&'static str, Result<&Series>)> {
        fn r(x: &Result<Series>) -> Result<&Series> {
            x.as_ref().map_err(|e| e.clone())
        }
        vec![
            ("ma", r(&self.ma_residual)),
            ("monge", r(&self.monge_residual)),
            ("s1", r(&self.s1_residual)),
            ("s1b", r(&self.s1b_residual)),
            ("J", self.j_series()),
            ("W", r(&self.w)),
            ("specclass", r(&self.specclass_residual)),
        ]
    }

    /// Largest coefficient magnitude of each residual (`None` if it failed).
    pub fn max_residual_magnitudes(&self) -> BTreeMap<&'static str, Option<f64>> {
        self.residuals()
            .into_iter()
            .map(|(k, v)| (k, v.ok().map(|s| s.max_abs())))
            .collect()
    }

    pub fn errors(&self) -> BTreeMap<&'static str, String> {
        let mut out: BTreeMap<&'static str, String> = self
            .residuals()
            .into_iter()
            .filter_map(|(k, v)| v.err().map(|e| (k, e.to_string())))
            .collect();
        if let Err(e) = &self.s {
            out.insert("S", e.to_string());
        }
        out
    }
}
