//! Finite-N Monte Carlo against the limiting correlations.
//!
//! ```text
//! cargo run --release --example monte_carlo -- [wishart|jacobi|gaussian] [samples]
//! ```

use onecut::mcsim::{estimate, MCConfig};
use onecut::EnsembleSpec;

fn main() -> onecut::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind = args.next().unwrap_or_else(|| "wishart".into());
    let samples = args.next().and_then(|s| s.parse().ok()).unwrap_or(4000);
    let ensemble = match kind.as_str() {
        "gaussian" => EnsembleSpec::gaussian(2.0)?,
        "jacobi" => EnsembleSpec::jacobi(0.0, 0.0, 2.0)?,
        _ => EnsembleSpec::wishart(1.0, 2.0)?,
    };
    let config = MCConfig::new(ensemble, 50, samples, 7).with_orders(6, 4);
    let est = estimate(&config)?;
    let theory = est.theory()?;

    println!(
        "{} N=50 samples={samples} ess={:.0}",
        config.ensemble.name(),
        est.effective_sample_size
    );
    if let Some(a) = est.acceptance {
        println!("acceptance {a:.3}");
    }
    println!("kappa ell   r_emp    r_theory  z");
    for r in est
        .correlation_rows(&theory)
        .iter()
        .filter(|r| r.kappa != r.ell)
    {
        println!(
            "{:>5} {:>3}  {:.5}  {:.5}  {:+.2}",
            r.kappa, r.ell, r.empirical, r.theory, r.z
        );
    }
    let cov = est.covariance_rows(&theory);
    let c22 = cov.iter().find(|r| r.kappa == 2 && r.ell == 2).unwrap();
    println!(
        "beta N^2 Cov(X_2, X_2) = {:.4} +- {:.4} (limit {:.4})",
        c22.empirical, c22.stderr, c22.theory
    );
    Ok(())
}
