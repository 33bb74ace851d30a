//! Jacobi ensemble: exact table at gamma1 = gamma2 = 0 and the general
//! re-parametrized formula against the series on the computed edges.

use onecut::closedform::{jacobi_cov, jacobi_edges, jacobi_symmetric_cov};
use onecut::genfun::expand_f;

fn main() -> onecut::Result<()> {
    println!("gamma1 = gamma2 = 0 (support [0, 1]):");
    for k in 1..=5 {
        let row: Vec<String> = (1..=5)
            .map(|l| format!("{:>14}", jacobi_symmetric_cov(k, l)))
            .collect();
        println!("{}", row.join(""));
    }

    for (g1, g2) in [(1.0, 2.0), (0.5, 0.0), (4.0, 4.0)] {
        let support = jacobi_edges(g1, g2)?;
        let series = expand_f(&support, 4)?;
        let mut worst = 0f64;
        for k in 1..=4 {
            for l in 1..=4 {
                let x = jacobi_cov(g1, g2, k, l)?;
                worst = worst.max((x - series.get(k, l)).abs() / x.abs());
            }
        }
        println!(
            "gamma = ({g1}, {g2}): edges [{:.6}, {:.6}], alpha_(1,1) = {:.8}, max rel dev vs series {worst:.1e}",
            support.a(),
            support.b(),
            jacobi_cov(g1, g2, 1, 1)?
        );
    }
    Ok(())
}
