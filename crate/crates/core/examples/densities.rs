//! Equilibrium densities: closed forms, Tricomi reconstruction from V',
//! moments by Gauss-Chebyshev quadrature, and CSV output.

use onecut::density::{equilibrium_moment, DensityGrid};
use onecut::EnsembleSpec;

fn main() -> onecut::Result<()> {
    let ensembles = [
        EnsembleSpec::gaussian(1.0)?,
        EnsembleSpec::wishart(2.0, 1.0)?,
        EnsembleSpec::jacobi(1.0, 2.0, 1.0)?,
    ];
    for e in &ensembles {
        let closed = DensityGrid::closed(e, 50)?;
        let tricomi = DensityGrid::tricomi(&e.potential()?, 50, 16)?;
        let moments: Vec<String> = (1..=4)
            .map(|k| equilibrium_moment(e, k, 16).map(|m| format!("{m:.6}")))
            .collect::<onecut::Result<_>>()?;
        println!(
            "{:<9} normalization {:.12}  max |closed - tricomi| {:.1e}  moments 1..4: {}",
            e.name(),
            closed.normalization(),
            closed.max_abs_diff(&tricomi),
            moments.join(", ")
        );
    }

    let path = std::env::temp_dir().join("semicircle.csv");
    DensityGrid::closed(&ensembles[0], 200)?.write_csv(std::fs::File::create(&path)?)?;
    println!("wrote {}", path.display());
    Ok(())
}
