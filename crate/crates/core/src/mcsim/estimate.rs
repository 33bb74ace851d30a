//! Moment statistics with grouped (delete-one / batch-means) jackknife errors.

/// Means, covariances and correlations of `K` observables with their standard errors.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Summary {
    pub means: Vec<f64>,
    pub mean_se: Vec<f64>,
    pub cov: Vec<f64>,
    pub cov_se: Vec<f64>,
    pub corr: Vec<f64>,
    pub corr_se: Vec<f64>,
}

struct Sums {
    n: f64,
    s: Vec<f64>,
    q: Vec<f64>,
}

impl Sums {
    fn zero(k: usize) -> Self {
        Self {
            n: 0.0,
            s: vec![0.0; k],
            q: vec![0.0; k * k],
        }
    }

    fn add(&mut self, row: &[f64]) {
        let k = self.s.len();
        self.n += 1.0;
        for i in 0..k {
            self.s[i] += row[i];
            for j in 0..k {
                self.q[i * k + j] += row[i] * row[j];
            }
        }
    }

    fn minus(&self, other: &Sums) -> Sums {
        Sums {
            n: self.n - other.n,
            s: self.s.iter().zip(&other.s).map(|(a, b)| a - b).collect(),
            q: self.q.iter().zip(&other.q).map(|(a, b)| a - b).collect(),
        }
    }

    /// `(means, covariances, correlations)` of the centered data.
    fn statistics(&self, center: &[f64]) -> Vec<f64> {
        let k = self.s.len();
        let m: Vec<f64> = self.s.iter().map(|s| s / self.n).collect();
        let mut out = Vec::with_capacity(k + 2 * k * k);
        out.extend(m.iter().zip(center).map(|(m, c)| m + c));
        let mut cov = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                cov[i * k + j] = (self.q[i * k + j] - self.n * m[i] * m[j]) / (self.n - 1.0);
            }
        }
        out.extend_from_slice(&cov);
        for i in 0..k {
            for j in 0..k {
                let d = (cov[i * k + i] * cov[j * k + j]).sqrt();
                out.push(if d > 0.0 { cov[i * k + j] / d } else { 0.0 });
            }
        }
        out
    }
}

/// Summarizes `rows` (one row of `K` observables per draw). Consecutive rows
/// are grouped into blocks of the given sizes for the jackknife.
pub(crate) fn summarize(rows: &[Vec<f64>], group_sizes: &[usize]) -> Summary {
    let k = rows.first().map_or(0, Vec::len);
    let n = rows.len() as f64;
    let mut center = vec![0.0; k];
    for r in rows {
        for (c, x) in center.iter_mut().zip(r) {
            *c += x / n;
        }
    }
    let centered: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().zip(&center).map(|(x, c)| x - c).collect())
        .collect();

    let mut total = Sums::zero(k);
    let mut groups = Vec::with_capacity(group_sizes.len());
    let mut start = 0;
    for &size in group_sizes {
        let mut g = Sums::zero(k);
        for r in &centered[start..start + size] {
            g.add(r);
            total.add(r);
        }
        groups.push(g);
        start += size;
    }
    debug_assert_eq!(start, rows.len());

    let full = total.statistics(&center);
    let mut sum_d = vec![0.0; full.len()];
    let mut sum_d2 = vec![0.0; full.len()];
    for g in &groups {
        let theta = total.minus(g).statistics(&center);
        for (i, (t, f)) in theta.iter().zip(&full).enumerate() {
            let d = t - f;
            sum_d[i] += d;
            sum_d2[i] += d * d;
        }
    }
    let gcount = groups.len() as f64;
    let se: Vec<f64> = sum_d
        .iter()
        .zip(&sum_d2)
        .map(|(s, s2)| {
            ((gcount - 1.0) / gcount * (s2 - s * s / gcount))
                .max(0.0)
                .sqrt()
        })
        .collect();

    let kk = k * k;
    Summary {
        means: full[..k].to_vec(),
        mean_se: se[..k].to_vec(),
        cov: full[k..k + kk].to_vec(),
        cov_se: se[k..k + kk].to_vec(),
        corr: full[k + kk..].to_vec(),
        corr_se: se[k + kk..].to_vec(),
    }
}

/// Effective sample size from the autocorrelation of a series, summing
/// lags while the autocorrelation stays positive.
pub(crate) fn effective_sample_size(xs: &[f64]) -> f64 {
    let n = xs.len();
    if n < 3 {
        return n as f64;
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    let c0 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
    if c0 == 0.0 {
        return n as f64;
    }
    let mut tau = 1.0;
    for lag in 1..n / 2 {
        let c = xs[..n - lag]
            .iter()
            .zip(&xs[lag..])
            .map(|(a, b)| (a - mean) * (b - mean))
            .sum::<f64>()
            / n as f64;
        let rho = c / c0;
        if rho <= 0.0 {
            break;
        }
        tau += 2.0 * rho;
    }
    (n as f64 / tau).clamp(1.0, n as f64)
}

/// Splits `n` consecutive draws into `batches` nearly equal blocks.
pub(crate) fn batch_sizes(n: usize, batches: usize) -> Vec<usize> {
    let b = batches.clamp(2, n.max(2)).min(n);
    (0..b).map(|i| n / b + usize::from(i < n % b)).collect()
}
