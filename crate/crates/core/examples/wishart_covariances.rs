//! Wishart covariances as exact polynomials in the aspect ratio `c`, checked
//! against the series expansion on the Marchenko-Pastur support.

use onecut::closedform::{wishart_cov, wishart_support};
use onecut::genfun::expand_f;
use onecut::series::int;

fn main() -> onecut::Result<()> {
    for c in [1i64, 2, 3, 7] {
        let support = wishart_support(c as f64)?;
        let series = expand_f(&support, 3)?;
        println!("c = {c}, support [{:.6}, {:.6}]", support.a(), support.b());
        for k in 1..=3 {
            let row: Vec<String> = (1..=3)
                .map(|l| {
                    let closed = wishart_cov(&int(c), k, l);
                    assert_eq!(series.get_exact(k, l), Some(&closed));
                    format!("{closed:>10}")
                })
                .collect();
            println!("  {}", row.join(""));
        }
    }

    // non-integer c goes through the floating-point evaluation
    let c = 1.5f64;
    println!("c = {c}: alpha_(2,2) = {:.10}", wishart_cov(&c, 2, 2));
    Ok(())
}
