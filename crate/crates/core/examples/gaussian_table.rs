//! Covariances of the Gaussian ensemble three ways: exact series expansion,
//! closed form and the shift formula.
//!
//! ```text
//! cargo run --example gaussian_table
//! ```

use onecut::closedform::{gaussian_cov, shift_cov_exact};
use onecut::genfun::expand_f;
use onecut::SupportInterval;

fn main() -> onecut::Result<()> {
    let support = SupportInterval::from_ratios((-2, 1), (2, 1))?;
    let table = expand_f(&support, 8)?;

    println!("alpha_{{k,l}} on [-2, 2] from the series expansion:");
    for k in 1..=8 {
        let row: Vec<String> = (1..=8)
            .map(|l| format!("{:>6}", table.get_exact(k, l).unwrap()))
            .collect();
        println!("{}", row.join(""));
    }

    let mut agree = true;
    for k in 1..=8 {
        for l in 1..=8 {
            let s = table.get_exact(k, l).unwrap();
            agree &= *s == gaussian_cov(k, l) && *s == shift_cov_exact(&support, k, l)?;
        }
    }
    println!("closed form and shift formula agree: {agree}");

    // correlations do not depend on beta or on L
    let r = |k: usize, l: usize| table.get(k, l) / (table.get(k, k) * table.get(l, l)).sqrt();
    println!("r_(1,3) = {:.6}, r_(2,4) = {:.6}", r(1, 3), r(2, 4));
    Ok(())
}
