//! Equilibrium densities, the smoothed two-point kernel and Gauss–Chebyshev
//! quadrature of the principal-value covariance integral.
//!
//! All integrals over `[a, b]` are written against the Chebyshev weight
//! `w(y) = 1/√((y-a)(b-y))` and evaluated with the first-kind rule
//!
//! ```text
//! ∫ f(y) w(y) dy ≈ (π/n) Σ f(m + h cos θ_k),   θ_k = (2k-1)π/(2n).
//! ```
//!
//! Principal values use `PV∫ w(y)/(y-x) dy = 0` for `x` inside the support, so
//! `PV∫ g(y) w(y)/(y-x) dy = ∫ (g(y)-g(x))/(y-x) w(y) dy`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::io::Write;
use std::sync::{Arc, OnceLock, RwLock};

use crate::closedform::{EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::genfun::SupportInterval;

pub use crate::closedform::PotentialSpec;

/// Relative tolerance between successive node doublings.
pub const REL_TOL: f64 = 1e-8;
/// Largest rule tried before giving up.
pub const MAX_NODES: usize = 1 << 14;
const START_NODES: usize = 16;

fn cosines(n: usize) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().expect("node cache poisoned").get(&n) {
        return c.clone();
    }
    let table: Arc<Vec<f64>> = Arc::new(
        (1..=n)
            .map(|k| ((2 * k - 1) as f64 * PI / (2 * n) as f64).cos())
            .collect(),
    );
    cache
        .write()
        .expect("node cache poisoned")
        .entry(n)
        .or_insert(table)
        .clone()
}

/// `n`-point Gauss–Chebyshev rule (first kind) on a support.
#[derive(Debug, Clone)]
pub struct ChebyshevRule {
    nodes: Vec<f64>,
    weight: f64,
}

impl ChebyshevRule {
    pub fn new(support: &SupportInterval, n: usize) -> Self {
        let (m, h) = (support.midpoint(), support.half_width());
        Self {
            nodes: cosines(n.max(1)).iter().map(|c| m + h * c).collect(),
            weight: PI / n.max(1) as f64,
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// `∫ f(y) w(y) dy`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.weight * self.nodes.iter().map(|&y| f(y)).sum::<f64>()
    }

    /// Integral together with the L1 magnitude `∫ |f| w`.
    fn integrate_abs<F: FnMut(f64) -> Result<f64>>(&self, mut f: F) -> Result<(f64, f64)> {
        let (mut s, mut m) = (0.0, 0.0);
        for &y in &self.nodes {
            let v = f(y)?;
            s += v;
            m += v.abs();
        }
        Ok((self.weight * s, self.weight * m))
    }
}

/// Doubles the node count from `start` until two successive rules agree.
fn adaptive<F>(what: &'static str, start: usize, max_nodes: usize, mut rule: F) -> Result<f64>
where
    F: FnMut(usize) -> Result<(f64, f64)>,
{
    let mut n = start.max(2);
    let (mut prev, _) = rule(n)?;
    while n < max_nodes {
        n *= 2;
        let (cur, mag) = rule(n)?;
        if (cur - prev).abs() <= REL_TOL * mag.max(f64::MIN_POSITIVE) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::NonConvergence {
        what,
        detail: format!("no agreement within {REL_TOL:e} up to {max_nodes} nodes"),
    })
}

fn root_factor(support: &SupportInterval, x: f64) -> f64 {
    ((x - support.a()) * (support.b() - x)).max(0.0).sqrt()
}

fn inside(support: &SupportInterval, x: f64) -> bool {
    x > support.a() && x < support.b()
}

/// `ρ(x) √((x-a)(b-x))` for the classical kinds; smooth up to the edges.
fn closed_density_times_root(
    ensemble: &EnsembleSpec,
    support: &SupportInterval,
    x: f64,
) -> Result<f64> {
    let q = (x - support.a()) * (support.b() - x);
    Ok(match &ensemble.kind {
        EnsembleKind::Gaussian => q / (2.0 * PI),
        EnsembleKind::Wishart { .. } => q / (2.0 * PI * x),
        EnsembleKind::Jacobi { gamma1, gamma2 } => {
            (gamma1 + gamma2 + 2.0) * q / (2.0 * PI * x * (1.0 - x))
        }
        EnsembleKind::CustomOneCut(_) => {
            return Err(Error::invalid("no closed density for a custom potential"))
        }
    })
}

/// Closed-form equilibrium density; `0` outside the open support.
pub fn density_closed(ensemble: &EnsembleSpec, x: f64) -> Result<f64> {
    let support = ensemble.support()?;
    if !inside(&support, x) {
        return Ok(0.0);
    }
    Ok(closed_density_times_root(ensemble, &support, x)? / root_factor(&support, x))
}

/// Difference quotient `(g(y) - g(x))/(y - x)`, falling back to a central
/// difference when the node lands on `x`.
fn divided_difference<G: Fn(f64) -> f64>(g: &G, gx: f64, x: f64, y: f64, scale: f64) -> f64 {
    let d = y - x;
    if d.abs() > 1e-9 * scale {
        (g(y) - gx) / d
    } else {
        let h = 1e-6 * scale;
        (g(x + h) - g(x - h)) / (2.0 * h)
    }
}

/// `ρ(x)·√((x-a)(b-x))` from Tricomi's inversion formula, at a fixed rule.
fn tricomi_scaled_fixed(pot: &PotentialSpec, x: f64, n: usize) -> (f64, f64) {
    let s = &pot.support;
    let (a, b) = (s.a(), s.b());
    let v = &pot.derivative;
    let g = |y: f64| v(y) * (y - a) * (b - y);
    let gx = g(x);
    let scale = s.half_width();
    let rule = ChebyshevRule::new(s, n);
    let (mut sum, mut mag) = (0.0, 0.0);
    for &y in rule.nodes() {
        let t = divided_difference(&g, gx, x, y, scale);
        sum += t;
        mag += t.abs();
    }
    let pv = rule.weight() * sum;
    (
        (1.0 + pv / PI) / PI,
        rule.weight() * mag / (PI * PI) + 1.0 / PI,
    )
}

/// `ρ(x)√((x-a)(b-x))` from Tricomi's formula with adaptive node doubling.
pub fn tricomi_density_times_root(pot: &PotentialSpec, x: f64, n_nodes: usize) -> Result<f64> {
    adaptive(
        "tricomi density",
        n_nodes.max(START_NODES),
        MAX_NODES,
        |n| Ok(tricomi_scaled_fixed(pot, x, n)),
    )
}

/// Equilibrium density reconstructed from `V'` and the support.
pub fn tricomi_density(pot: &PotentialSpec, x: f64, n_nodes: usize) -> Result<f64> {
    if !inside(&pot.support, x) {
        return Ok(0.0);
    }
    Ok(tricomi_density_times_root(pot, x, n_nodes)? / root_factor(&pot.support, x))
}

/// Smoothed two-point kernel `K(x, y)`; rejects the diagonal.
pub fn two_point_kernel(support: &SupportInterval, beta: f64, x: f64, y: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::invalid(format!("beta must be positive, got {beta}")));
    }
    if !inside(support, x) || !inside(support, y) {
        return Err(Error::invalid(format!(
            "kernel arguments ({x}, {y}) must lie inside ({}, {})",
            support.a(),
            support.b()
        )));
    }
    if x == y {
        return Err(Error::invalid(
            "two-point kernel is not defined on the diagonal x = y",
        ));
    }
    let (a, b) = (support.a(), support.b());
    let s = root_factor(support, x);
    let ds = (a + b - 2.0 * x) / (2.0 * s);
    let d = x - y;
    let deriv = ds / d - s / (d * d);
    Ok(deriv / (beta * PI * PI * root_factor(support, y)))
}

/// `∫∫ K(x,y) f1(x) f2(y)` after integrating by parts in `x`:
///
/// ```text
/// (1/(βπ²)) ∫∫ w(y) √((x-a)(b-x)) f1'(x) (f2(y) - f2(x))/(y - x) dx dy,
/// ```
///
/// with `df1 = f1'` and `dd(x, y)` the divided difference of `f2`.
pub fn covariance_functional<D, Q>(
    support: &SupportInterval,
    beta: f64,
    df1: D,
    dd: Q,
    n_nodes: usize,
) -> Result<f64>
where
    D: Fn(f64) -> f64,
    Q: Fn(f64, f64) -> f64,
{
    if !(beta > 0.0) {
        return Err(Error::invalid(format!("beta must be positive, got {beta}")));
    }
    let (a, b) = (support.a(), support.b());
    let value = adaptive(
        "covariance quadrature",
        n_nodes.max(START_NODES),
        MAX_NODES / 4,
        |n| {
            let rule = ChebyshevRule::new(support, n);
            rule.integrate_abs(|x| {
                let outer = (x - a) * (b - x) * df1(x);
                if outer == 0.0 {
                    return Ok(0.0);
                }
                let inner = rule.integrate(|y| dd(x, y));
                Ok(outer * inner)
            })
        },
    )?;
    Ok(value / (beta * PI * PI))
}

/// Divided difference of `y ↦ y^l`: `Σ_{j<l} y^j x^{l-1-j}`.
fn monomial_dd(ell: usize, x: f64, y: f64) -> f64 {
    let mut s = 0.0;
    let mut yp = 1.0;
    for j in 0..ell {
        s += yp * x.powi((ell - 1 - j) as i32);
        yp *= y;
    }
    s
}

/// Quadrature value of `α_{k,l}` for a support (β = 1).
pub fn cov_quadrature(
    support: &SupportInterval,
    kappa: usize,
    ell: usize,
    n_nodes: usize,
) -> Result<f64> {
    if kappa == 0 || ell == 0 {
        return Err(Error::invalid("cov_quadrature needs kappa, ell >= 1"));
    }
    let k = kappa as i32;
    covariance_functional(
        support,
        1.0,
        |x| kappa as f64 * x.powi(k - 1),
        |x, y| monomial_dd(ell, x, y),
        n_nodes,
    )
}

/// Moment `∫ ρ(x) x^k dx` of the equilibrium density.
pub fn equilibrium_moment(ensemble: &EnsembleSpec, kappa: usize, n_nodes: usize) -> Result<f64> {
    let support = ensemble.support()?;
    let k = kappa as i32;
    match &ensemble.kind {
        EnsembleKind::CustomOneCut(pot) => {
            let pot = pot.clone();
            adaptive(
                "equilibrium moment",
                n_nodes.max(START_NODES),
                MAX_NODES / 16,
                |n| {
                    let rule = ChebyshevRule::new(&support, n);
                    rule.integrate_abs(|x| {
                        Ok(tricomi_density_times_root(&pot, x, START_NODES)? * x.powi(k))
                    })
                },
            )
        }
        _ => adaptive(
            "equilibrium moment",
            n_nodes.max(START_NODES),
            MAX_NODES,
            |n| {
                let rule = ChebyshevRule::new(&support, n);
                rule.integrate_abs(|x| {
                    Ok(closed_density_times_root(ensemble, &support, x)? * x.powi(k))
                })
            },
        ),
    }
}

/// Density sampled on the Chebyshev nodes of its support.
#[derive(Debug, Clone)]
pub struct DensityGrid {
    pub support: SupportInterval,
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

impl DensityGrid {
    /// Closed-form density of a classical ensemble on `n` nodes.
    pub fn closed(ensemble: &EnsembleSpec, n: usize) -> Result<Self> {
        let support = ensemble.support()?;
        let nodes = ascending_nodes(&support, n);
        let values = nodes
            .iter()
            .map(|&x| density_closed(ensemble, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            support,
            nodes,
            values,
        })
    }

    /// Tricomi reconstruction on `n` nodes.
    pub fn tricomi(pot: &PotentialSpec, n: usize, n_nodes: usize) -> Result<Self> {
        let support = pot.support.clone();
        let nodes = ascending_nodes(&support, n);
        let values = nodes
            .iter()
            .map(|&x| tricomi_density(pot, x, n_nodes).map(|v| v.max(0.0)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            support,
            nodes,
            values,
        })
    }

    /// Gauss–Chebyshev weighted sum of the values; `≈ 1`.
    pub fn normalization(&self) -> f64 {
        let w = PI / self.nodes.len() as f64;
        self.nodes
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| w * v * root_factor(&self.support, x))
            .sum()
    }

    pub fn max_abs_diff(&self, other: &DensityGrid) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(p, q)| (p - q).abs())
            .fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["x", "rho"])?;
        for (x, v) in self.nodes.iter().zip(&self.values) {
            w.write_record([format!("{x:.16e}"), format!("{v:.16e}")])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn ascending_nodes(support: &SupportInterval, n: usize) -> Vec<f64> {
    let mut nodes = ChebyshevRule::new(support, n).nodes().to_vec();
    nodes.reverse();
    nodes
}
