//! A condensed end-to-end run of every check, with a machine-readable verdict.

use serde::Serialize;

use crate::construct::{construct_tol, liouville_log_residual, mtilde0};
use crate::error::Result;
use crate::invariants::{compute_s, full_report, HypersurfaceGerm, InvariantReport};
use crate::sampling::draws;
use crate::series::{HoloSeries, Monomial, Series, C64};
use crate::tolerance::Tolerances;
use crate::xcheck::{cauchy_pompeiu_check, fd_residual, Plane};

/// Coefficient bound for every vanishing identity.
pub const IDENTITY_BOUND: f64 = 1e-9;
pub const S0_BOUND: f64 = 1e-12;
pub const LIOUVILLE_BOUND: f64 = 1e-8;
pub const DBAR_BOUND: f64 = 1e-12;
pub const CLOSED_FORM_BOUND: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value <= threshold`.
    pub fn at_most(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            value,
            threshold,
            pass: value <= threshold,
        }
    }

    /// Passes when `value >= threshold`.
    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            value,
            threshold,
            pass: value >= threshold,
        }
    }

    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            value: if ok { 1.0 } else { 0.0 },
            threshold: 1.0,
            pass: ok,
        }
    }

    fn series(name: impl Into<String>, s: &Result<Series>, threshold: f64) -> Self {
        match s {
            Ok(s) => Check::at_most(name, s.max_abs(), threshold),
            Err(_) => Check {
                name: name.into(),
                value: f64::INFINITY,
                threshold,
                pass: false,
            },
        }
    }
}

/// Certification of a flat germ: every residual of the report at most
/// `IDENTITY_BOUND`, all flags set, `S(0)` equal to `expected_s0` if given.
pub fn certify(label: &str, report: &InvariantReport, expected_s0: Option<C64>) -> Vec<Check> {
    let mut out: Vec<Check> = report
        .residuals()
        .into_iter()
        .map(|(name, s)| Check::series(format!("{label}/{name}"), &s.cloned(), IDENTITY_BOUND))
        .collect();
    let f = &report.flags;
    for (name, flag) in [
        ("levi_rank_one", f.levi_rank_one),
        ("two_nondegenerate", f.two_nondegenerate),
        ("s1111_holds", f.s1111_holds),
        ("specclass_holds", f.specclass_holds),
        ("cr_flat_candidate", f.cr_flat_candidate),
    ] {
        out.push(Check::flag(format!("{label}/{name}"), flag.value));
    }
    if let Some(s0) = expected_s0 {
        let got = report.s0.map_or(f64::INFINITY, |v| (v - s0).norm());
        out.push(Check::at_most(format!("{label}/S0"), got, S0_BOUND));
    }
    out
}

/// The model germ at `order`.
pub fn model_checks(order: u32, tol: &Tolerances) -> Result<Vec<Check>> {
    let g = mtilde0(order)?;
    let report = full_report(&g, tol);
    Ok(certify("model", &report, Some(C64::new(1.0, 0.0))))
}

/// Certification plus every structural identity of a constructed germ.
pub fn pipeline_checks(
    label: &str,
    rho: &HoloSeries,
    seed: &HoloSeries,
    order: u32,
    tol: &Tolerances,
) -> Result<Vec<Check>> {
    let built = construct_tol(rho, seed, order, tol)?;
    let data = &built.data;
    let report = full_report(&built.germ, tol);
    let mut out = certify(label, &report, None);
    let half_r = data.r.scale(0.5);
    let s_minus = compute_s(&built.germ, tol).map(|s| (&s - &half_r).truncate(s.order()));
    out.push(Check::series(
        format!("{label}/S-r/2"),
        &s_minus,
        IDENTITY_BOUND,
    ));
    out.push(Check::series(
        format!("{label}/expanded_ma"),
        &data.expanded_ma_residual().map(|s| s.truncate(order - 2)),
        IDENTITY_BOUND,
    ));
    out.push(Check::series(
        format!("{label}/linear_z1"),
        &data.linear_z1_residual(),
        IDENTITY_BOUND,
    ));
    out.push(Check::series(
        format!("{label}/rev"),
        &data.rev_residual(),
        IDENTITY_BOUND,
    ));
    out.push(Check::series(
        format!("{label}/liouville"),
        &liouville_log_residual(&data.r).map(|s| s.truncate(order - 2)),
        LIOUVILLE_BOUND,
    ));
    out.push(Check::series(
        format!("{label}/dbar"),
        &data.u_residual(),
        DBAR_BOUND,
    ));
    Ok(out)
}

/// `construct(z2, 0, order)` against twice the model germ.
pub fn closed_form_check(order: u32, tol: &Tolerances) -> Result<Check> {
    let built = construct_tol(&HoloSeries::z(), &HoloSeries::zero(), order, tol)?;
    let twice = mtilde0(order)?.f().scale(2.0);
    Ok(Check::at_most(
        "closed_form",
        built.germ.f().max_diff_upto(&twice, order),
        CLOSED_FORM_BOUND,
    ))
}

/// Cauchy-Pompeiu residual at `n` and the ratio between `n / 2` and `n`.
pub fn quadrature_checks(order: u32, n: usize, tol: &Tolerances) -> Result<Vec<Check>> {
    let seed = HoloSeries::polynomial(vec![C64::new(1.0, 0.0)]);
    let built = construct_tol(&HoloSeries::z(), &seed, order, tol)?;
    let (r, u) = (&built.data.r, &built.data.u);
    let fine = cauchy_pompeiu_check(r, u, 0.3, n)?;
    let coarse = cauchy_pompeiu_check(r, u, 0.3, n / 2)?;
    Ok(vec![
        Check::at_most("cauchy_pompeiu", fine, 5e-3),
        Check::at_least("cauchy_pompeiu/refinement", coarse / fine, 1.5),
    ])
}

/// Finite-difference oracle on the model germ.
pub fn fd_checks(order: u32) -> Result<Vec<Check>> {
    let f = mtilde0(order)?.into_series();
    Ok(vec![
        Check::at_most(
            "fd/(1,1,0,0)",
            fd_residual(&f, [1, 1, 0, 0], 0.3, 16, Plane::Z1)?,
            1e-5,
        ),
        Check::at_most(
            "fd/(2,1,0,0)",
            fd_residual(&f, [2, 1, 0, 0], 0.3, 16, Plane::Z1)?,
            1e-4,
        ),
    ])
}

/// Degenerate germs must be recognised as such.
pub fn degeneracy_checks(order: u32, tol: &Tolerances) -> Result<Vec<Check>> {
    let zz = Series::monomial(Monomial::new(0, 0, 1, 1), 1.0, order);
    let z1z1b = Series::monomial(Monomial::new(1, 1, 0, 0), 1.0, order);
    let levi_flat = HypersurfaceGerm::with_tolerances(&z1z1b + &(&z1z1b * &zz), tol)?;
    let quadric = HypersurfaceGerm::with_tolerances(&z1z1b + &zz, tol)?;
    let a = full_report(&levi_flat, tol);
    let b = full_report(&quadric, tol);
    Ok(vec![
        Check::flag("degenerate/S=0", !a.flags.two_nondegenerate.value),
        Check::flag("degenerate/quadric", !b.flags.levi_rank_one.value),
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestVerdict {
    pub check: &'static str,
    pub order: u32,
    pub draws: usize,
    pub seed: u64,
    pub pass: bool,
    pub first_failure: Option<String>,
    pub checks: Vec<Check>,
}

impl SelftestVerdict {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

pub fn run(order: u32, draw_count: usize, seed: u64, tol: &Tolerances) -> Result<SelftestVerdict> {
    let mut checks = model_checks(order, tol)?;
    checks.push(closed_form_check(order, tol)?);
    for (k, (rho, u_seed)) in draws(draw_count, seed).iter().enumerate() {
        log::info!("draw {k}: rho = {:?}", rho.coeffs());
        checks.extend(pipeline_checks(
            &format!("draw{k}"),
            rho,
            u_seed,
            order,
            tol,
        )?);
    }
    checks.extend(quadrature_checks(order, 64, tol)?);
    checks.extend(fd_checks(order)?);
    checks.extend(degeneracy_checks(order, tol)?);
    let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
    Ok(SelftestVerdict {
        check: "selftest",
        order,
        draws: draw_count,
        seed,
        pass: first_failure.is_none(),
        first_failure,
        checks,
    })
}
