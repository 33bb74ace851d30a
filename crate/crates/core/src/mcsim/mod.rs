//! Finite-N Monte Carlo estimates of `N² Cov(X_k, X_l)`, `X_k = N⁻¹ Tr Xᵏ`.
//!
//! Gaussian and Wishart spectra come from the tridiagonal/bidiagonal β models;
//! each draw uses its own ChaCha stream keyed by `(seed, draw index)`, so
//! results do not depend on the worker count. Jacobi spectra come from one
//! Metropolis chain per worker.

mod eigen;
mod estimate;
mod gamma;
mod samplers;

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use eigen::{tridiag_eigen, MAX_ITERATIONS};
pub use gamma::{chi, gamma};
pub use samplers::{sample_hermite, sample_laguerre, JacobiChain, MetropolisSettings};

use crate::closedform::{EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::genfun::CovarianceTable;

/// Number of batches for batch-means errors on Markov-chain output.
pub const MCMC_BATCHES: usize = 50;

#[derive(Debug, Clone, Serialize)]
pub struct MCConfig {
    /// Matrix size `N`.
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
    pub ensemble: EnsembleSpec,
    pub kmax: usize,
    pub lmax: usize,
    pub metropolis: MetropolisSettings,
}

impl MCConfig {
    pub fn new(ensemble: EnsembleSpec, n: usize, samples: usize, seed: u64) -> Self {
        Self {
            n,
            samples,
            seed,
            workers: 1,
            ensemble,
            kmax: 4,
            lmax: 4,
            metropolis: MetropolisSettings::default(),
        }
    }

    pub fn with_orders(mut self, kmax: usize, lmax: usize) -> Self {
        self.kmax = kmax;
        self.lmax = lmax;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn beta(&self) -> f64 {
        self.ensemble.beta
    }

    /// Highest moment order needed.
    pub fn order(&self) -> usize {
        self.kmax.max(self.lmax)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid(format!(
                "matrix size N must be >= 2, got {}",
                self.n
            )));
        }
        if self.samples < 2 {
            return Err(Error::invalid(format!(
                "need at least 2 samples, got {}",
                self.samples
            )));
        }
        if self.workers == 0 {
            return Err(Error::invalid("workers must be >= 1"));
        }
        if self.order() == 0 {
            return Err(Error::invalid("kmax and lmax must not both be 0"));
        }
        Ok(())
    }
}

/// Sample statistics of `X_1..X_K`; index 0 stands for the constant `X_0 = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct MCEstimate {
    pub config: MCConfig,
    pub order: usize,
    pub means: Vec<f64>,
    pub mean_se: Vec<f64>,
    /// `N² Cov(X_k, X_l)`.
    pub cov: Vec<Vec<f64>>,
    pub cov_se: Vec<Vec<f64>>,
    pub corr: Vec<Vec<f64>>,
    pub corr_se: Vec<Vec<f64>>,
    pub effective_sample_size: f64,
    pub acceptance: Option<f64>,
}

/// One empirical-vs-theory line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub kappa: usize,
    pub ell: usize,
    pub empirical: f64,
    pub theory: f64,
    pub stderr: f64,
    pub z: f64,
}

impl ComparisonRow {
    fn new(kappa: usize, ell: usize, empirical: f64, theory: f64, stderr: f64) -> Self {
        let diff = empirical - theory;
        let z = if stderr > 0.0 {
            diff / stderr
        } else if diff.abs() < 1e-12 {
            0.0
        } else {
            f64::INFINITY.copysign(diff)
        };
        Self {
            kappa,
            ell,
            empirical,
            theory,
            stderr,
            z,
        }
    }
}

fn power_moments(spectrum: &[f64], order: usize) -> Vec<f64> {
    let n = spectrum.len() as f64;
    let mut out = vec![0.0; order];
    for &x in spectrum {
        let mut p = 1.0;
        for m in out.iter_mut() {
            p *= x;
            *m += p;
        }
    }
    out.iter_mut().for_each(|m| *m /= n);
    out
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Spectra moments for every draw, plus jackknife groups and acceptance.
fn draw(config: &MCConfig) -> Result<(Vec<Vec<f64>>, Vec<usize>, Option<f64>)> {
    let (n, order, beta, seed) = (config.n, config.order(), config.beta(), config.seed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
    match &config.ensemble.kind {
        EnsembleKind::Gaussian | EnsembleKind::Wishart { .. } => {
            let kind = config.ensemble.kind.clone();
            let rows = pool.install(|| {
                (0..config.samples)
                    .into_par_iter()
                    .map(|i| {
                        let mut rng = stream_rng(seed, i as u64);
                        let spectrum = match kind {
                            EnsembleKind::Wishart { c } => sample_laguerre(n, c, beta, &mut rng)?,
                            _ => sample_hermite(n, beta, &mut rng)?,
                        };
                        Ok(power_moments(&spectrum, order))
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            Ok((rows, vec![1; config.samples], None))
        }
        EnsembleKind::Jacobi { gamma1, gamma2 } => {
            let support = config.ensemble.support()?;
            let workers = config.workers.min(config.samples);
            let share =
                |w: usize| config.samples / workers + usize::from(w < config.samples % workers);
            let chains = pool.install(|| {
                (0..workers)
                    .into_par_iter()
                    .map(|w| {
                        let mut rng = stream_rng(seed, u64::MAX - w as u64);
                        let mut chain = JacobiChain::new(
                            n,
                            *gamma1,
                            *gamma2,
                            beta,
                            (support.a(), support.b()),
                            config.metropolis,
                        )?;
                        chain.burn_in(&mut rng);
                        let rows: Vec<Vec<f64>> = (0..share(w))
                            .map(|_| power_moments(&chain.next_state(&mut rng), order))
                            .collect();
                        chain.check_acceptance()?;
                        Ok((rows, chain.acceptance()))
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            let acceptance = chains.iter().map(|c| c.1).sum::<f64>() / chains.len() as f64;
            let rows: Vec<Vec<f64>> = chains.into_iter().flat_map(|c| c.0).collect();
            let groups = estimate::batch_sizes(rows.len(), MCMC_BATCHES);
            Ok((rows, groups, Some(acceptance)))
        }
        EnsembleKind::CustomOneCut(_) => Err(Error::invalid(
            "Monte Carlo sampling is available for the gaussian, wishart and jacobi ensembles only",
        )),
    }
}

/// Runs the simulation described by `config`.
pub fn estimate(config: &MCConfig) -> Result<MCEstimate> {
    config.validate()?;
    let (rows, groups, acceptance) = draw(config)?;
    let k = config.order();
    let summary = estimate::summarize(&rows, &groups);
    let ess = estimate::effective_sample_size(&rows.iter().map(|r| r[0]).collect::<Vec<_>>());
    let n2 = (config.n * config.n) as f64;

    let pad = |v: &[f64], first: f64, scale: f64| -> Vec<f64> {
        std::iter::once(first)
            .chain(v.iter().map(|x| x * scale))
            .collect()
    };
    let matrix = |flat: &[f64], scale: f64, diag0: f64| -> Vec<Vec<f64>> {
        (0..=k)
            .map(|i| {
                (0..=k)
                    .map(|j| match (i, j) {
                        (0, 0) => diag0,
                        (0, _) | (_, 0) => 0.0,
                        _ => flat[(i - 1) * k + (j - 1)] * scale,
                    })
                    .collect()
            })
            .collect()
    };
    Ok(MCEstimate {
        config: config.clone(),
        order: k,
        means: pad(&summary.means, 1.0, 1.0),
        mean_se: pad(&summary.mean_se, 0.0, 1.0),
        cov: matrix(&summary.cov, n2, 0.0),
        cov_se: matrix(&summary.cov_se, n2, 0.0),
        corr: matrix(&summary.corr, 1.0, 0.0),
        corr_se: matrix(&summary.corr_se, 1.0, 0.0),
        effective_sample_size: ess,
        acceptance,
    })
}

impl MCEstimate {
    /// β-free limiting table matching this run's ensemble.
    pub fn theory(&self) -> Result<CovarianceTable> {
        self.config.ensemble.covariance_table(self.order)
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (km, lm) = (self.config.kmax, self.config.lmax);
        (1..=km).flat_map(move |k| (1..=lm).map(move |l| (k, l)))
    }

    /// `β N² Cov(X_k, X_l)` against `α_{k,l}`.
    pub fn covariance_rows(&self, theory: &CovarianceTable) -> Vec<ComparisonRow> {
        let beta = self.config.beta();
        self.pairs()
            .map(|(k, l)| {
                ComparisonRow::new(
                    k,
                    l,
                    beta * self.cov[k][l],
                    theory.get(k, l),
                    beta * self.cov_se[k][l],
                )
            })
            .collect()
    }

    /// Empirical correlations against `α_{k,l}/√(α_{k,k} α_{l,l})`.
    pub fn correlation_rows(&self, theory: &CovarianceTable) -> Vec<ComparisonRow> {
        self.pairs()
            .map(|(k, l)| {
                let d = (theory.get(k, k) * theory.get(l, l)).sqrt();
                let r = if d > 0.0 { theory.get(k, l) / d } else { 0.0 };
                ComparisonRow::new(k, l, self.corr[k][l], r, self.corr_se[k][l])
            })
            .collect()
    }

    pub fn write_json<W: Write>(&self, writer: W) -> Result<()> {
        serde_json::to_writer_pretty(writer, self)?;
        Ok(())
    }

    /// `kappa,ell,empirical,theory,stderr` rows for the β-scaled covariances.
    pub fn write_csv<W: Write>(&self, writer: W, theory: &CovarianceTable) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["kappa", "ell", "empirical", "theory", "stderr"])?;
        for r in self.covariance_rows(theory) {
            w.write_record([
                r.kappa.to_string(),
                r.ell.to_string(),
                format!("{:.16e}", r.empirical),
                format!("{:.16e}", r.theory),
                format!("{:.16e}", r.stderr),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Correlation comparison with z-scores.
    pub fn write_correlation_csv<W: Write>(
        &self,
        writer: W,
        theory: &CovarianceTable,
    ) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for r in self.correlation_rows(theory) {
            w.serialize(&r)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_of_a_spectrum() {
        let m = power_moments(&[1.0, -1.0, 2.0, 0.0], 3);
        assert_eq!(m, vec![0.5, 1.5, 2.0]);
    }

    #[test]
    fn rejects_bad_configs() {
        let g = EnsembleSpec::gaussian(2.0).unwrap();
        assert!(estimate(&MCConfig::new(g.clone(), 1, 10, 0)).is_err());
        assert!(estimate(&MCConfig::new(g.clone(), 10, 1, 0)).is_err());
        assert!(estimate(&MCConfig::new(g, 10, 10, 0).with_workers(0)).is_err());
    }

    #[test]
    fn small_run_is_deterministic_and_worker_independent() {
        let g = EnsembleSpec::gaussian(2.0).unwrap();
        let cfg = MCConfig::new(g, 8, 200, 5).with_orders(3, 3);
        let a = estimate(&cfg).unwrap();
        let b = estimate(&cfg.clone().with_workers(3)).unwrap();
        assert_eq!(a.cov, b.cov);
        assert_eq!(a.means, b.means);
        assert_eq!(a.cov[1][2], a.cov[2][1]);
        assert!(a.cov_se[2][2] > 0.0);
    }
}
