//! Self-test: every independent route to the covariances checked against the
//! others and against the published reference values.

use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closedform::{self, EnsembleSpec};
use crate::density;
use crate::error::Result;
use crate::genfun::{self, SupportInterval};
use crate::mcsim::{self, MCConfig};
use crate::planarcount;
use crate::reference;
use crate::series::{int, ratio, ExactScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub level: Level,
    pub seed: u64,
    pub workers: usize,
    /// Corrupts one entry of the Gaussian table before it is checked.
    pub inject_fault: bool,
}

impl VerifyOptions {
    pub fn new(level: Level) -> Self {
        Self {
            level,
            seed: 20240917,
            workers: 1,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type Outcome = Result<std::result::Result<String, String>>;

fn run_check(name: &str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn gaussian_support() -> SupportInterval {
    SupportInterval::from_ratios((-2, 1), (2, 1)).expect("valid support")
}

/// Supports used by the identity checks.
pub fn probe_supports() -> Vec<SupportInterval> {
    [
        ((-2, 1), (2, 1)),
        ((0, 1), (4, 1)),
        ((0, 1), (1, 1)),
        ((-7, 10), (23, 10)),
        ((1, 2), (3, 1)),
    ]
    .into_iter()
    .map(|(a, b)| SupportInterval::from_ratios(a, b).expect("valid support"))
    .collect()
}

pub fn check_gaussian_table(inject_fault: bool) -> Outcome {
    let mut table = genfun::expand_f(&gaussian_support(), 8)?;
    if inject_fault {
        table.set_exact(2, 2, int(5));
    }
    let g = gaussian_support();
    for k in 1..=8 {
        for l in 1..=8 {
            let want = int(reference::GAUSSIAN_8X8[k - 1][l - 1] as i64);
            let series = table.get_exact(k, l).cloned().unwrap_or_default();
            let closed = closedform::gaussian_cov(k, l);
            let shifted = closedform::shift_cov_exact(&g, k, l)?;
            if series != want || closed != want || shifted != want {
                return Ok(Err(format!(
                    "({k},{l}): series {series}, closed {closed}, shift {shifted}, reference {want}"
                )));
            }
        }
    }
    Ok(Ok(
        "64 entries agree exactly across series, closed form and shift formula".into(),
    ))
}

pub fn check_wishart_table() -> Outcome {
    for c in [1i64, 2, 3, 7] {
        let ce = int(c);
        let support = closedform::wishart_support(c as f64)?;
        let table = genfun::expand_f(&support, 3)?;
        for k in 1..=3 {
            for l in 1..=3 {
                let want = reference::wishart_entry(k, l, &ce);
                let closed = closedform::wishart_cov(&ce, k, l);
                let series = table.get_exact(k, l).cloned().unwrap_or_default();
                if closed != want || series != want {
                    return Ok(Err(format!(
                        "c={c} ({k},{l}): closed {closed}, series {series}, reference {want}"
                    )));
                }
            }
        }
    }
    Ok(Ok("3x3 polynomials agree at c = 1, 2, 3, 7".into()))
}

pub fn check_jacobi_table() -> Outcome {
    let mut worst = 0f64;
    for k in 1..=5 {
        for l in 1..=5 {
            let (p, q) = reference::JACOBI_5X5[k - 1][l - 1];
            let want = ratio(p, q);
            let got = closedform::jacobi_symmetric_cov(k, l);
            if got != want {
                return Ok(Err(format!("({k},{l}): {got} vs reference {want}")));
            }
            let f = closedform::jacobi_cov(0.0, 0.0, k, l)?;
            worst = worst.max((f - p as f64 / q as f64).abs());
        }
    }
    if worst > 1e-12 {
        return Ok(Err(format!("float Jacobi formula deviates by {worst:e}")));
    }
    Ok(Ok(format!(
        "5x5 rationals exact; float formula within {worst:.1e}"
    )))
}

pub fn check_residue_route() -> Outcome {
    for s in probe_supports().iter().take(3) {
        let a = genfun::expand_f(s, 8)?;
        let b = genfun::expand_residue_route(s, 8)?;
        for k in 0..=8 {
            for l in 0..=8 {
                if a.get_exact(k, l) != b.get_exact(k, l) {
                    return Ok(Err(format!(
                        "[{}, {}] ({k},{l}) differs between routes",
                        s.a(),
                        s.b()
                    )));
                }
            }
        }
    }
    Ok(Ok(
        "coefficient-extraction route equals the generating-function route".into(),
    ))
}

/// Largest `|F - F_Joukowski|` over `points` random admissible arguments per support.
pub fn joukowski_deviation(seed: u64, points_per_support: usize) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for s in probe_supports() {
        let r = 0.9 * s.analytic_radius();
        for _ in 0..points_per_support {
            let z = rng.random_range(-r..r);
            let w = rng.random_range(-r..r);
            let beta = rng.random_range(0.5..4.0);
            let d = genfun::eval_f(&s, beta, z, w)?;
            let j = genfun::eval_f_joukowski(&s, beta, z, w)?;
            worst = worst.max((d - j).abs());
        }
    }
    Ok(worst)
}

pub fn check_identities(seed: u64) -> Outcome {
    let dev = joukowski_deviation(seed, 20)?;
    if dev > 1e-10 {
        return Ok(Err(format!("Joukowski form deviates by {dev:e}")));
    }
    let t = ratio(3, 2);
    for s in probe_supports() {
        let table = genfun::expand_f(&s, 8)?;
        if let Err(msg) = table.check_invariants() {
            return Ok(Err(format!("[{}, {}]: {msg}", s.a(), s.b())));
        }
        let scaled = genfun::expand_f(&s.scaled(&t)?, 8)?;
        for k in 0..=8 {
            for l in 0..=8 {
                let lhs = scaled.get_exact(k, l).cloned().unwrap_or_default();
                let rhs = table.get_exact(k, l).cloned().unwrap_or_default()
                    * num_traits::pow(t.clone(), k + l);
                if lhs != rhs {
                    return Ok(Err(format!(
                        "homogeneity fails at ({k},{l}) on [{}, {}]",
                        s.a(),
                        s.b()
                    )));
                }
            }
        }
    }
    let (errors, last) = partial_sum_errors(24)?;
    if errors.windows(2).any(|w| w[1] > w[0]) {
        return Ok(Err("partial-sum error is not monotone".into()));
    }
    if last > 1e-8 {
        return Ok(Err(format!("partial sum at K=24 misses by {last:e}")));
    }
    Ok(Ok(format!(
        "Joukowski max dev {dev:.1e}; invariants and homogeneity exact; K=24 partial-sum error {last:.1e}"
    )))
}

/// Truncation errors `|S_K - F|` at `(z, ζ) = (0.2, 0.1)` on `[-2, 2]`, `K = 1..=order`.
pub fn partial_sum_errors(order: usize) -> Result<(Vec<f64>, f64)> {
    let table = genfun::expand_f(&gaussian_support(), order)?;
    let exact = genfun::eval_f(&gaussian_support(), 1.0, 0.2, 0.1)?;
    let mut errors = Vec::with_capacity(order);
    for k in 1..=order {
        let mut s = 0.0;
        for i in 0..=k {
            for j in 0..=k {
                s += table.get(i, j) * 0.2f64.powi(i as i32) * 0.1f64.powi(j as i32);
            }
        }
        errors.push((s - exact).abs());
    }
    let last = *errors.last().unwrap_or(&f64::NAN);
    Ok((errors, last))
}

pub fn check_planar_counts(max_points: usize) -> Outcome {
    for (k, l, v) in reference::ANNULAR_COUNTS {
        let got = planarcount::count_connected_annular(k, l)?;
        if got != BigUint::from(v) {
            return Ok(Err(format!("({k},{l}) counted {got}, reference {v}")));
        }
    }
    let mut n = 0;
    for k in 1..max_points {
        for l in k..=max_points - k {
            if (k + l) % 2 == 1 {
                continue;
            }
            let got = planarcount::count_connected_annular(k, l)?;
            let want = closedform::gaussian_cov(k, l) / int(2);
            if ExactScalar::from_integer(got.clone().into()) != want {
                return Ok(Err(format!("({k},{l}): counted {got}, expected {want}")));
            }
            n += 1;
        }
    }
    Ok(Ok(format!(
        "{n} same-parity pairs up to {max_points} points match α^G/2"
    )))
}

pub fn check_asymptotics() -> Outcome {
    let r = (closedform::ln_zero_edge_cov(2.0, 40, 40)
        - closedform::ln_asymptotic_cov(2.0, 40, 40))
    .exp();
    if (0.97..=1.03).contains(&r) {
        Ok(Ok(format!("ratio at k = l = 40: {r:.6}")))
    } else {
        Ok(Err(format!("ratio at k = l = 40 is {r}")))
    }
}

pub fn check_quadrature() -> Outcome {
    let mut worst = 0f64;
    for s in probe_supports().iter().take(3) {
        for k in 1..=6 {
            for l in 1..=6 {
                let want = crate::series::to_f64(&closedform::shift_cov_exact(s, k, l)?);
                let got = density::cov_quadrature(s, k, l, 16)?;
                let err = if want == 0.0 {
                    got.abs()
                } else {
                    ((got - want) / want).abs()
                };
                worst = worst.max(err);
            }
        }
    }
    if worst > 1e-6 {
        return Ok(Err(format!("quadrature deviates by {worst:e}")));
    }
    Ok(Ok(format!(
        "k, l <= 6 on three supports within {worst:.1e}"
    )))
}

pub fn check_densities() -> Outcome {
    let ensembles = [
        EnsembleSpec::gaussian(1.0)?,
        EnsembleSpec::wishart(2.0, 1.0)?,
        EnsembleSpec::jacobi(1.0, 2.0, 1.0)?,
    ];
    let mut worst_density = 0f64;
    let mut worst_moment = 0f64;
    for e in &ensembles {
        let pot = e.potential()?;
        let closed = density::DensityGrid::closed(e, 50)?;
        let tricomi = density::DensityGrid::tricomi(&pot, 50, 16)?;
        worst_density = worst_density.max(closed.max_abs_diff(&tricomi));
        for k in 0..=12 {
            let q = density::equilibrium_moment(e, k, 16)?;
            let want = match e.kind {
                closedform::EnsembleKind::Jacobi { .. } => continue,
                _ => e.moment(k)?,
            };
            worst_moment = worst_moment.max((q - want).abs() / want.abs().max(1.0));
        }
    }
    if worst_density > 1e-6 || worst_moment > 1e-10 {
        return Ok(Err(format!(
            "density dev {worst_density:e}, moment dev {worst_moment:e}"
        )));
    }
    Ok(Ok(format!(
        "Tricomi within {worst_density:.1e}; moments within {worst_moment:.1e}"
    )))
}

/// Share of `|z| ≤ 3` and largest deviation for the correlation comparison.
pub fn correlation_agreement(estimate: &mcsim::MCEstimate) -> Result<(f64, f64)> {
    let theory = estimate.theory()?;
    let rows = estimate.correlation_rows(&theory);
    let ok = rows.iter().filter(|r| r.z.abs() <= 3.0).count();
    let max = rows
        .iter()
        .map(|r| (r.empirical - r.theory).abs())
        .fold(0.0, f64::max);
    Ok((ok as f64 / rows.len() as f64, max))
}

pub fn check_monte_carlo(seed: u64, workers: usize) -> Outcome {
    let mut details = Vec::new();
    for e in [
        EnsembleSpec::wishart(1.0, 2.0)?,
        EnsembleSpec::jacobi(0.0, 0.0, 2.0)?,
    ] {
        let cfg = MCConfig::new(e, 50, 10_000, seed)
            .with_orders(8, 5)
            .with_workers(workers);
        let est = mcsim::estimate(&cfg)?;
        let (share, max) = correlation_agreement(&est)?;
        let line = format!(
            "{}: {:.0}% |z|<=3, max dev {max:.4}",
            cfg.ensemble.name(),
            100.0 * share
        );
        if share < 0.9 || max > 0.05 {
            return Ok(Err(line));
        }
        details.push(line);
    }
    let ratio = beta_ratio(seed, workers)?;
    details.push(format!("beta 1 vs 4 ratio {ratio:.3}"));
    if !(3.4..=4.6).contains(&ratio) {
        return Ok(Err(details.join("; ")));
    }
    Ok(Ok(details.join("; ")))
}

/// `N²Cov(X_2, X_2)` at β = 1 over the same at β = 4 (Gaussian, N = 50, 10⁴ draws).
pub fn beta_ratio(seed: u64, workers: usize) -> Result<f64> {
    let run = |beta: f64| -> Result<f64> {
        let cfg = MCConfig::new(EnsembleSpec::gaussian(beta)?, 50, 10_000, seed)
            .with_orders(2, 2)
            .with_workers(workers);
        Ok(mcsim::estimate(&cfg)?.cov[2][2])
    };
    Ok(run(1.0)? / run(4.0)?)
}

pub fn run(options: &VerifyOptions) -> VerifyReport {
    let mut checks = vec![
        run_check("gaussian table", || {
            check_gaussian_table(options.inject_fault)
        }),
        run_check("wishart table", check_wishart_table),
        run_check("jacobi table", check_jacobi_table),
        run_check("residue route", check_residue_route),
        run_check("identities", || check_identities(options.seed)),
        run_check("asymptotics", check_asymptotics),
    ];
    match options.level {
        Level::Quick => checks.push(run_check("planar counts", || check_planar_counts(12))),
        Level::Full => {
            checks.push(run_check("planar counts", || check_planar_counts(16)));
            checks.push(run_check("quadrature", check_quadrature));
            checks.push(run_check("densities", check_densities));
            checks.push(run_check("monte carlo", || {
                check_monte_carlo(options.seed, options.workers)
            }));
        }
    }
    VerifyReport {
        level: options.level,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
