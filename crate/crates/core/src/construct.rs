//! The constructive pipeline: from a holomorphic disk map `rho` and a
//! holomorphic seed for `u`, build
//!
//! ```text
//! F = r |z1|^2 + t z1^2 + conj(t) z1b^2 + u z1 + conj(u) z1b + 2 Re v
//! ```
//!
//! with
//!
//! * `r = 2 |rho'| / (1 - |rho|^2)` (a metric of curvature -1),
//! * `t = int r^2/4 dz2b`,
//! * `u_2b = (r/2) conj(u)` with `u(z2, 0) = seed(z2)`,
//! * `Re v = int int (r/8) |u|^2 dz2b dz2`.
//!
//! Every integration constant is zero; the only free holomorphic datum
//! besides `rho` is the seed.

use crate::error::{Error, Result};
use crate::invariants::HypersurfaceGerm;
use crate::series::Var::{Z2b, Z1, Z2};
use crate::series::{HoloSeries, Monomial, Series, C64};
use crate::tolerance::Tolerances;

/// The four `z2, z2b` series defining a germ of the model family.
#[derive(Debug, Clone)]
pub struct RigidModelData {
    pub r: Series,
    pub t: Series,
    pub u: Series,
    pub rev: Series,
}

/// `r = 2 sqrt(rho' conj(rho')) / (1 - rho conj(rho))`, exact to
/// `min(order, rho.order() - 1)`.
pub fn liouville_metric(rho: &HoloSeries, order: u32) -> Result<Series> {
    liouville_metric_tol(rho, order, &Tolerances::default())
}

pub fn liouville_metric_tol(rho: &HoloSeries, order: u32, tol: &Tolerances) -> Result<Series> {
    let rho0 = rho.coeff(0);
    if rho0.norm() >= 1.0 - tol.div {
        return Err(Error::RhoNotInDisk {
            value: format!("{rho0}"),
        });
    }
    let d0 = rho.coeff(1);
    if d0.norm() <= tol.div {
        return Err(Error::RhoCritical {
            magnitude: d0.norm(),
        });
    }
    let order = order.min(rho.order().saturating_sub(1));
    let p = rho.to_series(order);
    let dp = rho.derivative().to_series(order);
    let speed = (&dp * &dp.conj()).sqrt_real_tol(tol)?;
    let denom = &Series::one(order) - &(&p * &p.conj());
    Ok((&speed * &denom.invert_tol(tol.div)?).scale(2.0))
}

/// `t = int r^2/4 dz2b` with zero `z2b`-free part; exact to `r.order() + 1`.
pub fn integrate_t(r: &Series) -> Series {
    (r * r).scale(0.25).antidiff(Z2b)
}

/// Solves `u_2b = (r/2) conj(u)` with `u(z2, 0) = seed(z2)`.
///
/// Writing `u = sum u_pq z2^p z2b^q`, the coefficients satisfy
/// `(k+1) u_{j,k+1} = sum_{m+a=j, n+b=k} (r_mn / 2) conj(u_{b,a})`, and the
/// right side only involves coefficients of smaller total degree. The result
/// is exact to `r.order()`.
pub fn solve_dbar_u(r: &Series, seed: &HoloSeries) -> Result<Series> {
    let order = r.order();
    if seed.degree() > order {
        return Err(Error::OrderMismatch(format!(
            "seed has degree {} above the metric order {order}",
            seed.degree()
        )));
    }
    if !r.is_z2_only() {
        return Err(Error::InvariantViolation("r depends on z1 or z1b".into()));
    }
    let n = order as usize;
    let zero = C64::new(0.0, 0.0);
    // half_r[m][n] = r_mn / 2 for m + n <= order
    let mut half_r = vec![vec![zero; n + 1]; n + 1];
    for (m, c) in r.terms() {
        half_r[m.0[2] as usize][m.0[3] as usize] = c * 0.5;
    }
    let mut u = vec![vec![zero; n + 1]; n + 1];
    for d in 0..=n {
        u[d][0] = seed.coeff(d);
        for q in 1..=d {
            let j = d - q;
            let k = q - 1;
            let mut acc = zero;
            for m in 0..=j {
                for nn in 0..=k {
                    let hr = half_r[m][nn];
                    if hr == zero {
                        continue;
                    }
                    // conj(u)_{j-m, k-nn} = conj(u_{k-nn, j-m})
                    acc += hr * u[k - nn][j - m].conj();
                }
            }
            u[j][q] = acc / q as f64;
        }
    }
    let mut terms = Vec::new();
    for (p, row) in u.iter().enumerate() {
        for (q, c) in row.iter().enumerate() {
            if p + q <= n && *c != zero {
                terms.push((Monomial::new(0, 0, p as u32, q as u32), *c));
            }
        }
    }
    Ok(Series::from_terms(terms, order))
}

/// `Re v = int int (r/8) u conj(u) dz2b dz2`, zero integration constants.
pub fn compute_rev(r: &Series, u: &Series) -> Series {
    let integrand = (&(r * u) * &u.conj()).scale(0.125);
    integrand.antidiff(Z2b).antidiff(Z2)
}

impl RigidModelData {
    /// Runs the full pipeline at order `order`.
    pub fn from_holomorphic(rho: &HoloSeries, seed: &HoloSeries, order: u32) -> Result<Self> {
        Self::from_holomorphic_tol(rho, seed, order, &Tolerances::default())
    }

    pub fn from_holomorphic_tol(
        rho: &HoloSeries,
        seed: &HoloSeries,
        order: u32,
        tol: &Tolerances,
    ) -> Result<Self> {
        let r = liouville_metric_tol(rho, order, tol)?;
        let t = integrate_t(&r);
        let u = solve_dbar_u(&r, seed)?;
        let rev = compute_rev(&r, &u);
        Ok(RigidModelData { r, t, u, rev })
    }

    /// The order to which the assembled `F` is exact.
    pub fn f_order(&self) -> u32 {
        (self.r.order() + 2)
            .min(self.t.order() + 2)
            .min(self.u.order() + 1)
            .min(self.rev.order())
    }

    /// Checks reality, `z2`-only dependence, `r(0) > 0` and the three
    /// structural equations `t_2b = r^2/4`, `u_2b = (r/2) conj(u)`,
    /// `(Re v)_22b = (r/8) |u|^2`.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let fail = |what: &str| Err(Error::InvariantViolation(what.to_string()));
        for (name, s) in [
            ("r", &self.r),
            ("t", &self.t),
            ("u", &self.u),
            ("rev", &self.rev),
        ] {
            if !s.is_z2_only() {
                return fail(&format!("{name} depends on z1 or z1b"));
            }
        }
        if !self.r.is_real(tol) {
            return fail("r is not real");
        }
        if !self.rev.is_real(tol) {
            return fail("rev is not real");
        }
        let r0 = self.r.constant_term();
        if r0.re <= tol.div {
            return fail("r(0) is not positive");
        }
        if !tol.agree(&self.t.diff(Z2b)?, &(&self.r * &self.r).scale(0.25)) {
            return fail("t_2b != r^2/4");
        }
        if !tol.is_zero(&self.u_residual()?) {
            return fail("u_2b != (r/2) conj(u)");
        }
        if !tol.is_zero(&self.rev_residual()?) {
            return fail("(Re v)_22b != (r/8)|u|^2");
        }
        Ok(())
    }

    /// `u_2b - (r/2) conj(u)`.
    pub fn u_residual(&self) -> Result<Series> {
        Ok(&self.u.diff(Z2b)? - &(&self.r * &self.u.conj()).scale(0.5))
    }

    /// `(Re v)_22b - (r/8) u conj(u)`.
    pub fn rev_residual(&self) -> Result<Series> {
        let lhs = self.rev.diff_many(&[Z2, Z2b])?;
        Ok(&lhs - &(&(&self.r * &self.u) * &self.u.conj()).scale(0.125))
    }

    /// `t_2b - r^2/4`.
    pub fn t_residual(&self) -> Result<Series> {
        Ok(&self.t.diff(Z2b)? - &(&self.r * &self.r).scale(0.25))
    }

    /// `r r_22b - r_2 r_2b - r^4/4`.
    pub fn r_residual(&self) -> Result<Series> {
        let r = &self.r;
        let r2 = r.diff(Z2)?;
        let r2b = r.diff(Z2b)?;
        let r22b = r2.diff(Z2b)?;
        Ok(&(&(r * &r22b) - &(&r2 * &r2b)) - &r.pow(4).scale(0.25))
    }

    /// `r u_22b - 2 t_2b conj(u)_2 - r_2 u_2b`.
    pub fn linear_z1_residual(&self) -> Result<Series> {
        let u2b = self.u.diff(Z2b)?;
        let u22b = u2b.diff(Z2)?;
        let ub2 = self.u.conj().diff(Z2)?;
        let t2b = self.t.diff(Z2b)?;
        let r2 = self.r.diff(Z2)?;
        let lhs = &(&self.r * &u22b) - &(&t2b * &ub2).scale(2.0);
        Ok(&lhs - &(&r2 * &u2b))
    }

    /// `s = t z1^2 + u z1 + v` with `Im v = 0`.
    pub fn s_series(&self) -> Series {
        let t = self.t.shift(Monomial::new(2, 0, 0, 0));
        let u = self.u.shift(Monomial::new(1, 0, 0, 0));
        &(&t + &u) + &self.rev
    }

    /// The Monge-Ampere equation written out for `F = r|z1|^2 + s + conj(s)`:
    ///
    /// `r (r_22b |z1|^2 + s_22b + conj(s_22b)) - |r_2|^2 |z1|^2 - |s_12b|^2
    ///  - r_2 s_12b z1 - r_2b conj(s_12b) z1b`.
    pub fn expanded_ma_residual(&self) -> Result<Series> {
        let z1z1b = Monomial::new(1, 1, 0, 0);
        let r = &self.r;
        let r2 = r.diff(Z2)?;
        let r2b = r.diff(Z2b)?;
        let r22b = r2.diff(Z2b)?;
        let s = self.s_series();
        let s22b = s.diff_many(&[Z2, Z2b])?;
        let s12b = s.diff_many(&[Z1, Z2b])?;
        let s12b_bar = s12b.conj();

        let inner = &(&r22b.shift(z1z1b) + &s22b) + &s22b.conj();
        let mut out = r * &inner;
        out = &out - &(&r2 * &r2b).shift(z1z1b);
        out = &out - &(&s12b * &s12b_bar);
        out = &out - &(&r2 * &s12b).shift(Monomial::new(1, 0, 0, 0));
        out = &out - &(&r2b * &s12b_bar).shift(Monomial::new(0, 1, 0, 0));
        let order = self.f_order().saturating_sub(2);
        Ok(out.truncate(order))
    }

    /// `F = r z1 z1b + t z1^2 + conj(t) z1b^2 + u z1 + conj(u) z1b + 2 rev`.
    pub fn assemble_series(&self) -> Series {
        let r = self.r.shift(Monomial::new(1, 1, 0, 0));
        let t = self.t.shift(Monomial::new(2, 0, 0, 0));
        let tb = self.t.conj().shift(Monomial::new(0, 2, 0, 0));
        let u = self.u.shift(Monomial::new(1, 0, 0, 0));
        let ub = self.u.conj().shift(Monomial::new(0, 1, 0, 0));
        let f = &(&(&(&r + &t) + &tb) + &(&u + &ub)) + &self.rev.scale(2.0);
        f.truncate(self.f_order())
    }

    /// Validates the data, then assembles the germ.
    pub fn assemble(&self, tol: &Tolerances) -> Result<HypersurfaceGerm> {
        self.validate(tol)?;
        HypersurfaceGerm::with_tolerances(self.assemble_series(), tol)
    }

    /// Reads `r, t, u, Re v` back off a germ of the form
    /// `r|z1|^2 + 2 Re(t z1^2 + u z1 + v)`.
    pub fn from_germ(g: &HypersurfaceGerm, tol: &Tolerances) -> Result<Self> {
        let f = g.f();
        let floor = tol.noise_floor(f);
        let order = f.order();
        let mut parts: [Vec<(Monomial, C64)>; 6] = Default::default();
        for (m, c) in f.terms() {
            let [a, b, p, q] = m.0;
            let z2part = Monomial::new(0, 0, p, q);
            let slot = match (a, b) {
                (1, 1) => 0,
                (2, 0) => 1,
                (0, 2) => 2,
                (1, 0) => 3,
                (0, 1) => 4,
                (0, 0) => 5,
                _ if c.norm() <= floor => continue,
                _ => return Err(Error::NotInModelForm(format!("term {m} present"))),
            };
            parts[slot].push((z2part, c));
        }
        let [r, t, tb, u, ub, v] = parts;
        let r = Series::from_terms(r, order.saturating_sub(2));
        let t = Series::from_terms(t, order.saturating_sub(2));
        let tb = Series::from_terms(tb, order.saturating_sub(2));
        let u = Series::from_terms(u, order.saturating_sub(1));
        let ub = Series::from_terms(ub, order.saturating_sub(1));
        let rev = Series::from_terms(v, order).scale(0.5);
        if !tol.agree(&tb, &t.conj()) || !tol.agree(&ub, &u.conj()) {
            return Err(Error::NotInModelForm(
                "z1b-coefficients are not conjugate to the z1-coefficients".into(),
            ));
        }
        Ok(RigidModelData { r, t, u, rev })
    }

    /// The data of the image under `z1 -> z1 / (2 sqrt(conj(w0)))`:
    /// `r -> 4|w0| r`, `t -> 4 conj(w0) t`, `u -> 2 sqrt(conj(w0)) u`.
    pub fn rescale_z1(&self, w0: C64, tol: &Tolerances) -> Result<Self> {
        if w0.norm() <= tol.div {
            return Err(Error::ZeroScale);
        }
        let wb = w0.conj();
        Ok(RigidModelData {
            r: self.r.scale(4.0 * w0.norm()),
            t: self.t.scale(wb * 4.0),
            u: self.u.scale(wb.sqrt() * 2.0),
            rev: self.rev.clone(),
        })
    }
}

/// `4 R_22b - exp(2 R)` with `R = ln r`; zero exactly when `r` has
/// curvature -1.
pub fn liouville_log_residual(r: &Series) -> Result<Series> {
    let log_r = r.ln()?;
    let lap = log_r.diff_many(&[Z2, Z2b])?.scale(4.0);
    Ok(&lap - &log_r.scale(2.0).exp())
}

/// A constructed germ together with the data it was assembled from.
#[derive(Debug, Clone)]
pub struct Construction {
    pub data: RigidModelData,
    pub germ: HypersurfaceGerm,
}

/// The whole pipeline: `F` truncated to `order`.
pub fn construct(rho: &HoloSeries, seed: &HoloSeries, order: u32) -> Result<Construction> {
    construct_tol(rho, seed, order, &Tolerances::default())
}

pub fn construct_tol(
    rho: &HoloSeries,
    seed: &HoloSeries,
    order: u32,
    tol: &Tolerances,
) -> Result<Construction> {
    let data = RigidModelData::from_holomorphic_tol(rho, seed, order, tol)?;
    let germ = data.assemble(tol)?;
    let germ = HypersurfaceGerm::with_tolerances(germ.f().truncate(order), tol)?;
    Ok(Construction { data, germ })
}

/// The model germ `F = (|z1|^2 + (z2b z1^2 + z2 z1b^2)/2) / (1 - |z2|^2)`.
pub fn mtilde0(order: u32) -> Result<HypersurfaceGerm> {
    if order < 2 {
        return Err(Error::OrderExhausted {
            needed: 2,
            available: order,
        });
    }
    let inv = (&Series::one(order) - &Series::monomial(Monomial::new(0, 0, 1, 1), 1.0, order))
        .invert()?;
    let a = inv.shift(Monomial::new(1, 1, 0, 0));
    let b = inv.shift(Monomial::new(2, 0, 0, 1)).scale(0.5);
    let f = &(&a + &b) + &b.conj();
    HypersurfaceGerm::new(f.truncate(order))
}

/// Rescales a germ of model form by `z1 -> z1 / (2 sqrt(conj(w0)))`.
pub fn rescale_z1(g: &HypersurfaceGerm, w0: C64, tol: &Tolerances) -> Result<HypersurfaceGerm> {
    if w0.norm() <= tol.div {
        return Err(Error::ZeroScale);
    }
    let data = RigidModelData::from_germ(g, tol)?.rescale_z1(w0, tol)?;
    HypersurfaceGerm::with_tolerances(data.assemble_series().truncate(g.order()), tol)
}
