//! A quartic potential V(x) = x^2/4 + g x^4/4: find the soft edge L by
//! bisection, reconstruct the density, and confirm that the covariances only
//! see the support.

use onecut::closedform::{symmetric_cov, EnsembleKind, PotentialSpec};
use onecut::density::{
    cov_quadrature, equilibrium_moment, tricomi_density_times_root, DensityGrid,
};
use onecut::{EnsembleSpec, SupportInterval};

fn quartic(g: f64, half_width: f64) -> onecut::Result<PotentialSpec> {
    Ok(PotentialSpec::new(
        move |y| y / 2.0 + g * y.powi(3),
        SupportInterval::symmetric(half_width)?,
    ))
}

/// rho(x) sqrt(L^2 - x^2) at the right edge; zero for the soft-edge support.
fn edge_value(g: f64, half_width: f64) -> onecut::Result<f64> {
    tricomi_density_times_root(&quartic(g, half_width)?, half_width, 16)
}

fn main() -> onecut::Result<()> {
    let g = 0.1;
    let (mut lo, mut hi) = (0.5, 2.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if edge_value(g, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let l = 0.5 * (lo + hi);
    println!("g = {g}: support [-{l:.12}, {l:.12}]");

    let pot = quartic(g, l)?;
    let grid = DensityGrid::tricomi(&pot, 64, 16)?;
    println!("normalization {:.10}", grid.normalization());

    let ensemble = EnsembleSpec::new(EnsembleKind::CustomOneCut(pot), 2.0)?;
    println!(
        "second moment {:.10}",
        equilibrium_moment(&ensemble, 2, 16)?
    );

    let support = SupportInterval::symmetric(l)?;
    for (k, m) in [(1, 1), (2, 2), (1, 3), (2, 4)] {
        println!(
            "alpha_({k},{m}) = {:.10} (quadrature {:.10})",
            symmetric_cov(&l, k, m),
            cov_quadrature(&support, k, m, 16)?
        );
    }
    Ok(())
}
