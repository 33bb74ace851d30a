//! Point values of the generating function (direct, symmetric-support and
//! Joukowski forms) and convergence of the truncated double series.

use onecut::genfun::{eval_f, eval_f_joukowski, eval_f_symmetric, expand_f};
use onecut::SupportInterval;

fn main() -> onecut::Result<()> {
    let support = SupportInterval::from_ratios((-2, 1), (2, 1))?;
    let (z, zeta, beta) = (0.2, 0.1, 2.0);
    println!("direct     {:.15}", eval_f(&support, beta, z, zeta)?);
    println!("symmetric  {:.15}", eval_f_symmetric(2.0, beta, z, zeta)?);
    println!(
        "joukowski  {:.15}",
        eval_f_joukowski(&support, beta, z, zeta)?
    );
    println!(
        "on the diagonal F(0.3, 0.3) = {:.15}",
        eval_f(&support, beta, 0.3, 0.3)?
    );

    let table = expand_f(&support, 24)?;
    let target = eval_f(&support, 1.0, z, zeta)?;
    for k in [2, 4, 8, 12, 16, 20, 24] {
        let mut s = 0.0;
        for i in 0..=k {
            for j in 0..=k {
                s += table.get(i, j) * z.powi(i as i32) * zeta.powi(j as i32);
            }
        }
        println!("K = {k:>2}: |S_K - F| = {:.3e}", (s - target).abs());
    }

    // outside the polydisc |z|, |zeta| < 1/max(|a|, |b|) there is no expansion
    match eval_f(&support, beta, 0.6, 0.1) {
        Err(e) => println!("z = 0.6: {e}"),
        Ok(v) => println!("z = 0.6: {v}"),
    }
    Ok(())
}
