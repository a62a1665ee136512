//! Independent numerical oracles for the series engine: grid evaluation,
//! central finite differences of Wirtinger derivatives, and a disk quadrature
//! of the Cauchy-Pompeiu representation of the dbar-solution `u`.

use std::f64::consts::PI;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Var::Z2b;
use crate::series::{Series, Var, C64};
use crate::tolerance::Tolerances;

pub const MAX_GRID_RADIUS: f64 = 0.5;
pub const MIN_GRID_N: usize = 8;
pub const MAX_QUADRATURE_RADIUS: f64 = 0.4;
pub const MIN_QUADRATURE_N: usize = 32;
pub const PROBE_COUNT: usize = 8;

/// The complex plane a grid lives in; the other variable is held at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Z1,
    Z2,
}

impl Plane {
    /// The evaluation point `(z1, z1b, z2, z2b)` for a plane coordinate.
    pub fn point(self, z: C64) -> [C64; 4] {
        let zero = C64::new(0.0, 0.0);
        match self {
            Plane::Z1 => [z, z.conj(), zero, zero],
            Plane::Z2 => [zero, zero, z, z.conj()],
        }
    }
}

impl std::str::FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z1" => Ok(Plane::Z1),
            "z2" => Ok(Plane::Z2),
            other => Err(Error::InvalidGrid(format!("unknown plane {other:?}"))),
        }
    }
}

/// Values on the `n x n` Cartesian grid covering `[-radius, radius]^2`,
/// stored row by row (`y` outer, `x` inner).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSample {
    pub radius: f64,
    pub n: usize,
    pub plane: Plane,
    pub values: Vec<C64>,
}

fn check_grid(radius: f64, n: usize) -> Result<()> {
    if !(radius > 0.0 && radius <= MAX_GRID_RADIUS) {
        return Err(Error::InvalidGrid(format!(
            "radius {radius} outside (0, {MAX_GRID_RADIUS}]"
        )));
    }
    if n < MIN_GRID_N {
        return Err(Error::InvalidGrid(format!(
            "resolution {n} below the minimum {MIN_GRID_N}"
        )));
    }
    Ok(())
}

fn grid_coord(radius: f64, n: usize, i: usize) -> f64 {
    -radius + 2.0 * radius * i as f64 / (n - 1) as f64
}

/// Grid node `(i, j)` as a complex number `x_i + i y_j`.
pub fn grid_node(radius: f64, n: usize, i: usize, j: usize) -> C64 {
    C64::new(grid_coord(radius, n, i), grid_coord(radius, n, j))
}

fn grid_nodes(radius: f64, n: usize) -> impl Iterator<Item = C64> {
    (0..n).flat_map(move |j| (0..n).map(move |i| grid_node(radius, n, i, j)))
}

pub fn eval_grid(f: &Series, radius: f64, n: usize, plane: Plane) -> Result<GridSample> {
    check_grid(radius, n)?;
    let values = grid_nodes(radius, n)
        .map(|z| f.eval_unchecked(plane.point(z)))
        .collect();
    Ok(GridSample {
        radius,
        n,
        plane,
        values,
    })
}

impl GridSample {
    pub fn nodes(&self) -> impl Iterator<Item = C64> {
        grid_nodes(self.radius, self.n)
    }

    /// Writes `x, y, re, im`, one row per node.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["x", "y", "re", "im"])
            .map_err(|e| Error::Io(e.to_string()))?;
        for (z, v) in self.nodes().zip(&self.values) {
            w.serialize((z.re, z.im, v.re, v.im))
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coefficients of `((X - iY)^a (X + iY)^b) / 2^(a+b)` as `[p][q]` for
/// `X^p Y^q`; this is `d_z^a d_zb^b` in real partials.
fn wirtinger_expansion(a: usize, b: usize) -> Vec<Vec<C64>> {
    let k = a + b;
    let mut poly = vec![vec![C64::new(0.0, 0.0); k + 1]; k + 1];
    poly[0][0] = C64::new(1.0, 0.0);
    let factors = std::iter::repeat_n(-1.0, a).chain(std::iter::repeat_n(1.0, b));
    for sign in factors {
        let mut next = vec![vec![C64::new(0.0, 0.0); k + 1]; k + 1];
        for p in 0..=k {
            for q in 0..=k {
                let c = poly[p][q];
                if c == C64::new(0.0, 0.0) {
                    continue;
                }
                next[p + 1][q] += c * 0.5;
                next[p][q + 1] += c * C64::new(0.0, 0.5 * sign);
            }
        }
        poly = next;
    }
    poly
}

/// Central stencil `delta^k` as `(offset in steps, weight)`.
fn stencil(k: usize) -> Vec<(f64, f64)> {
    (0..=k)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            (k as f64 / 2.0 - j as f64, sign * binomial(k, j))
        })
        .collect()
}

/// Central finite-difference approximation of `d^deriv f` at `point`
/// (a point on the conjugate locus, given by `z1` and `z2`).
pub fn finite_difference(f: &Series, deriv: [u32; 4], z1: C64, z2: C64, h: f64) -> C64 {
    let first = wirtinger_expansion(deriv[0] as usize, deriv[1] as usize);
    let second = wirtinger_expansion(deriv[2] as usize, deriv[3] as usize);
    let zero = C64::new(0.0, 0.0);
    let mut total = zero;
    for (p1, row1) in first.iter().enumerate() {
        for (q1, &c1) in row1.iter().enumerate() {
            if c1 == zero {
                continue;
            }
            for (p2, row2) in second.iter().enumerate() {
                for (q2, &c2) in row2.iter().enumerate() {
                    if c2 == zero {
                        continue;
                    }
                    let real = real_partial(f, [p1, q1, p2, q2], z1, z2, h);
                    total += c1 * c2 * real;
                }
            }
        }
    }
    total
}

/// `D_x1^k0 D_y1^k1 D_x2^k2 D_y2^k3 f` by tensor central differences.
fn real_partial(f: &Series, k: [usize; 4], z1: C64, z2: C64, h: f64) -> C64 {
    let stencils: Vec<Vec<(f64, f64)>> = k.iter().map(|&k| stencil(k)).collect();
    let mut acc = C64::new(0.0, 0.0);
    for &(o0, w0) in &stencils[0] {
        for &(o1, w1) in &stencils[1] {
            for &(o2, w2) in &stencils[2] {
                for &(o3, w3) in &stencils[3] {
                    let a = z1 + C64::new(o0 * h, o1 * h);
                    let b = z2 + C64::new(o2 * h, o3 * h);
                    let v = f.eval_unchecked([a, a.conj(), b, b.conj()]);
                    acc += v * (w0 * w1 * w2 * w3);
                }
            }
        }
    }
    let total: usize = k.iter().sum();
    acc / h.powi(total as i32)
}

/// Max over the grid of `|series derivative - finite difference|` with step
/// `radius / (4 n)`.
pub fn fd_residual(
    f: &Series,
    deriv: [u32; 4],
    radius: f64,
    n: usize,
    plane: Plane,
) -> Result<f64> {
    check_grid(radius, n)?;
    let k: u32 = deriv.iter().sum();
    if f.order() < k + 2 {
        return Err(Error::OrderExhausted {
            needed: k + 2,
            available: f.order(),
        });
    }
    let vars: Vec<Var> = Var::ALL
        .iter()
        .zip(deriv)
        .flat_map(|(&v, e)| std::iter::repeat_n(v, e as usize))
        .collect();
    let exact = f.diff_many(&vars)?;
    let h = radius / (4.0 * n as f64);
    let mut worst: f64 = 0.0;
    for z in grid_nodes(radius, n) {
        let p = plane.point(z);
        let series_value = exact.eval_unchecked(p);
        let fd = finite_difference(f, deriv, p[0], p[2], h);
        worst = worst.max((series_value - fd).norm());
    }
    Ok(worst)
}

/// Probe points, all at half the disk radius.
pub fn probe_points(radius: f64) -> Vec<C64> {
    (0..PROBE_COUNT)
        .map(|k| C64::from_polar(0.5 * radius, 2.0 * PI * k as f64 / PROBE_COUNT as f64 + 0.3))
        .collect()
}

/// Residuals of `u(z) + (1/pi) int (r conj(u)) / (2 (zeta - z)) dA - w(z)` at
/// the given probes, where `w(z) = (1/(2 pi i)) oint u / (zeta - z) dzeta`.
///
/// The area integral uses the midpoint rule on an equal-area polar grid
/// (`n` annuli by `n` sectors); the boundary integral is the trapezoidal rule
/// with `4 n` nodes.
pub fn cauchy_pompeiu_residuals(
    r: &Series,
    u: &Series,
    radius: f64,
    n: usize,
    probes: &[C64],
) -> Result<Vec<f64>> {
    cauchy_pompeiu_residuals_tol(r, u, radius, n, probes, &Tolerances::default())
}

pub fn cauchy_pompeiu_residuals_tol(
    r: &Series,
    u: &Series,
    radius: f64,
    n: usize,
    probes: &[C64],
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    if !(radius > 0.0 && radius <= MAX_QUADRATURE_RADIUS) {
        return Err(Error::InvalidGrid(format!(
            "radius {radius} outside (0, {MAX_QUADRATURE_RADIUS}]"
        )));
    }
    if n < MIN_QUADRATURE_N {
        return Err(Error::InvalidGrid(format!(
            "resolution {n} below the minimum {MIN_QUADRATURE_N}"
        )));
    }
    let dbar = &u.diff(Z2b)? - &(r * &u.conj()).scale(0.5);
    if !tol.is_zero(&dbar) {
        return Err(Error::NotDbarSolution {
            residual: dbar.max_abs(),
        });
    }
    let cell = 2.0 * radius / n as f64;
    if let Some(p) = probes.iter().find(|p| radius - p.norm() < cell) {
        return Err(Error::QuadratureDegenerate {
            probe: format!("{p}"),
        });
    }

    let eval = |s: &Series, z: C64| s.eval_unchecked(Plane::Z2.point(z));
    let area = PI * radius * radius / (n * n) as f64;
    let mut area_nodes = Vec::with_capacity(n * n);
    for k in 0..n {
        let rad = radius * ((k as f64 + 0.5) / n as f64).sqrt();
        for j in 0..n {
            let zeta = C64::from_polar(rad, 2.0 * PI * (j as f64 + 0.5) / n as f64);
            let density = eval(r, zeta) * eval(u, zeta).conj() * 0.5;
            area_nodes.push((zeta, density));
        }
    }
    let m = 4 * n;
    let boundary: Vec<(C64, C64)> = (0..m)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / m as f64;
            let zeta = C64::from_polar(radius, theta);
            // dzeta = i zeta dtheta
            (
                zeta,
                eval(u, zeta) * C64::new(0.0, 1.0) * zeta * (2.0 * PI / m as f64),
            )
        })
        .collect();

    Ok(probes
        .iter()
        .map(|&z| {
            // the disk integral of 1/(zeta - z) is -pi conj(z)
            let g0 = eval(r, z) * eval(u, z).conj() * 0.5;
            let area_term = area_nodes
                .iter()
                .map(|&(zeta, g)| (g - g0) / (zeta - z))
                .sum::<C64>()
                * (area / PI)
                - g0 * z.conj();
            let w: C64 = boundary
                .iter()
                .map(|&(zeta, weighted)| weighted / (zeta - z))
                .sum::<C64>()
                / C64::new(0.0, 2.0 * PI);
            (eval(u, z) + area_term - w).norm()
        })
        .collect())
}

/// Max residual over the default probes.
pub fn cauchy_pompeiu_check(r: &Series, u: &Series, radius: f64, n: usize) -> Result<f64> {
    let res = cauchy_pompeiu_residuals(r, u, radius, n, &probe_points(radius))?;
    Ok(res.into_iter().fold(0.0, f64::max))
}

/// One-line JSON verdict of a numerical check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub radius: f64,
    pub n: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deriv: Option<[u32; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane: Option<Plane>,
}

impl Verdict {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// Default acceptance threshold for a finite-difference check of total
/// derivative order `k`.
pub fn fd_threshold(k: u32) -> f64 {
    if k <= 2 {
        1e-5
    } else {
        1e-4
    }
}

pub const CAUCHY_POMPEIU_THRESHOLD: f64 = 5e-3;
