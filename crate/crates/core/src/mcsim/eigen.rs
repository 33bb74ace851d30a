//! Eigenvalues of symmetric tridiagonal matrices by implicit-shift QL.

use crate::error::{Error, Result};

/// Iteration cap per eigenvalue.
pub const MAX_ITERATIONS: usize = 50;

/// All eigenvalues of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal, in ascending order.
pub fn tridiag_eigen(diagonal: &[f64], offdiagonal: &[f64]) -> Result<Vec<f64>> {
    let n = diagonal.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if offdiagonal.len() + 1 != n {
        return Err(Error::invalid(format!(
            "off-diagonal has length {}, expected {}",
            offdiagonal.len(),
            n - 1
        )));
    }
    let mut d = diagonal.to_vec();
    let mut e = offdiagonal.to_vec();
    e.push(0.0);
    ql_in_place(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// QL iteration on `d` (diagonal) and `e` (off-diagonal, `e[n-1] = 0`);
/// leaves the unsorted eigenvalues in `d`.
pub(crate) fn ql_in_place(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_ITERATIONS {
                return Err(Error::NonConvergence {
                    what: "tridiagonal eigensolver",
                    detail: format!(
                        "eigenvalue {l} needed more than {MAX_ITERATIONS} QL iterations"
                    ),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
