//! Spectra of finite-N β-ensembles: tridiagonal/bidiagonal models for the
//! Hermite and Laguerre families, a Metropolis log-gas chain for Jacobi.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use super::eigen::ql_in_place;
use super::gamma::chi;
use crate::error::{Error, Result};

fn check(n: usize, beta: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid(format!("matrix size must be >= 2, got {n}")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::invalid(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

fn eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>) -> Result<Vec<f64>> {
    e.push(0.0);
    ql_in_place(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues of the β-Hermite tridiagonal model scaled to the support `[-2, 2]`.
pub fn sample_hermite<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> Result<Vec<f64>> {
    check(n, beta)?;
    let bn = beta * n as f64;
    let sd = (2.0 / bn).sqrt();
    let d: Vec<f64> = (0..n)
        .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let e: Vec<f64> = (1..n)
        .map(|i| chi(rng, beta * (n - i) as f64) / bn.sqrt())
        .collect();
    eigenvalues(d, e)
}

/// Eigenvalues of `B Bᵀ/(βN)` for the lower-bidiagonal β-Laguerre model with
/// `M = round(cN)`; limiting support `[(1-√c)², (1+√c)²]`.
pub fn sample_laguerre<R: Rng + ?Sized>(
    n: usize,
    c: f64,
    beta: f64,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check(n, beta)?;
    let m = (c * n as f64).round() as usize;
    if !(c >= 1.0) || m < n {
        return Err(Error::invalid(format!(
            "Laguerre needs M = round(cN) >= N, got c = {c}"
        )));
    }
    let diag: Vec<f64> = (1..=n)
        .map(|i| chi(rng, beta * (m - i + 1) as f64))
        .collect();
    let sub: Vec<f64> = (1..n).map(|i| chi(rng, beta * (n - i) as f64)).collect();
    let scale = 1.0 / (beta * n as f64);
    let d: Vec<f64> = (0..n)
        .map(|i| {
            let s = if i > 0 { sub[i - 1] } else { 0.0 };
            (diag[i] * diag[i] + s * s) * scale
        })
        .collect();
    let e: Vec<f64> = (0..n - 1).map(|i| diag[i] * sub[i] * scale).collect();
    let mut ev = eigenvalues(d, e)?;
    for x in &mut ev {
        *x = x.max(0.0);
    }
    Ok(ev)
}

/// Tuning of the Jacobi Metropolis chain.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MetropolisSettings {
    pub burn_in_sweeps: usize,
    pub adapt_every: usize,
    /// Sweeps between retained states; `None` means `N`.
    pub thin: Option<usize>,
    pub target_acceptance: (f64, f64),
}

impl Default for MetropolisSettings {
    fn default() -> Self {
        Self {
            burn_in_sweeps: 100,
            adapt_every: 10,
            thin: None,
            target_acceptance: (0.3, 0.5),
        }
    }
}

/// Metropolis chain on the Jacobi log-gas
/// `∏|λ_i - λ_j|^β ∏ λ^{βNγ1/2} (1-λ)^{βNγ2/2}` on `(0, 1)^N`.
#[derive(Debug, Clone)]
pub struct JacobiChain {
    x: Vec<f64>,
    beta: f64,
    w1: f64,
    w2: f64,
    step: f64,
    settings: MetropolisSettings,
    accepted: u64,
    proposed: u64,
}

impl JacobiChain {
    /// Chain started at the arcsine quantiles of `[a, b] ⊂ [0, 1]`.
    pub fn new(
        n: usize,
        gamma1: f64,
        gamma2: f64,
        beta: f64,
        support: (f64, f64),
        settings: MetropolisSettings,
    ) -> Result<Self> {
        check(n, beta)?;
        if !(gamma1 >= 0.0 && gamma2 >= 0.0) {
            return Err(Error::invalid("Jacobi parameters must be >= 0"));
        }
        let (a, b) = support;
        let (m, h) = (0.5 * (a + b), 0.5 * (b - a));
        let x = (0..n)
            .map(|i| {
                let v = m - h * (PI * (i as f64 + 0.5) / n as f64).cos();
                v.clamp(1e-9, 1.0 - 1e-9)
            })
            .collect();
        let half = 0.5 * beta * n as f64;
        Ok(Self {
            x,
            beta,
            w1: half * gamma1,
            w2: half * gamma2,
            step: (b - a) / n as f64,
            settings,
            accepted: 0,
            proposed: 0,
        })
    }

    pub fn state(&self) -> &[f64] {
        &self.x
    }

    pub fn step_size(&self) -> f64 {
        self.step
    }

    /// Acceptance rate since the last reset.
    pub fn acceptance(&self) -> f64 {
        if self.proposed == 0 {
            0.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }

    fn reset_counts(&mut self) {
        self.accepted = 0;
        self.proposed = 0;
    }

    /// `Σ_j ln|new - x_j| - ln|old - x_j|`, taking one logarithm per block of products.
    fn log_vandermonde_ratio(&self, i: usize, new: f64) -> f64 {
        let old = self.x[i];
        let mut acc = 0.0;
        let mut prod = 1.0;
        let mut k = 0;
        for (j, &xj) in self.x.iter().enumerate() {
            if j == i {
                continue;
            }
            prod *= (new - xj) / (old - xj);
            k += 1;
            if k == 8 {
                acc += prod.abs().ln();
                prod = 1.0;
                k = 0;
            }
        }
        acc + prod.abs().ln()
    }

    /// One pass of single-coordinate Gaussian proposals.
    pub fn sweep<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for i in 0..self.x.len() {
            let old = self.x[i];
            let z: f64 = rng.sample(StandardNormal);
            let new = old + self.step * z;
            self.proposed += 1;
            if !(new > 0.0 && new < 1.0) {
                continue;
            }
            let mut log_ratio = self.beta * self.log_vandermonde_ratio(i, new);
            if self.w1 != 0.0 {
                log_ratio += self.w1 * (new / old).ln();
            }
            if self.w2 != 0.0 {
                log_ratio += self.w2 * ((1.0 - new) / (1.0 - old)).ln();
            }
            if log_ratio >= 0.0 || rng.random::<f64>().ln() < log_ratio {
                self.x[i] = new;
                self.accepted += 1;
            }
        }
    }

    /// Burn-in with step-size adaptation toward the target acceptance window.
    pub fn burn_in<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let (lo, hi) = self.settings.target_acceptance;
        let every = self.settings.adapt_every.max(1);
        self.reset_counts();
        for s in 1..=self.settings.burn_in_sweeps {
            self.sweep(rng);
            if s % every == 0 {
                let acc = self.acceptance();
                if acc < lo || acc > hi {
                    // multiplicative correction toward the window's center
                    let target = 0.5 * (lo + hi);
                    self.step *= ((acc + 0.01) / target).clamp(0.25, 4.0);
                }
                self.reset_counts();
            }
        }
        self.reset_counts();
    }

    /// Advances `thin` sweeps and returns the spectrum (sorted).
    pub fn next_state<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Vec<f64> {
        let thin = self.settings.thin.unwrap_or(self.x.len()).max(1);
        for _ in 0..thin {
            self.sweep(rng);
        }
        let mut out = self.x.clone();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Errors when the post-burn-in acceptance signals mis-tuning.
    pub fn check_acceptance(&self) -> Result<()> {
        let acc = self.acceptance();
        if self.proposed > 0 && !(0.05..=0.95).contains(&acc) {
            return Err(Error::NonConvergence {
                what: "Jacobi Metropolis chain",
                detail: format!(
                    "acceptance {acc:.3} outside [0.05, 0.95] (step {:.3e})",
                    self.step
                ),
            });
        }
        Ok(())
    }
}
