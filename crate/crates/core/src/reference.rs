//! Published reference values used by the self-checks.

/// `α^G_{k,l}` on `[-2, 2]`, `1 ≤ k, l ≤ 8` (row `k-1`, column `l-1`).
pub const GAUSSIAN_8X8: [[u64; 8]; 8] = [
    [2, 0, 6, 0, 20, 0, 70, 0],
    [0, 4, 0, 16, 0, 60, 0, 224],
    [6, 0, 24, 0, 90, 0, 336, 0],
    [0, 16, 0, 72, 0, 288, 0, 1120],
    [20, 0, 90, 0, 360, 0, 1400, 0],
    [0, 60, 0, 288, 0, 1200, 0, 4800],
    [70, 0, 336, 0, 1400, 0, 5600, 0],
    [0, 224, 0, 1120, 0, 4800, 0, 19600],
];

/// Wishart covariances `α^W_{k,l}(c)`, `1 ≤ k, l ≤ 3`, as
/// `(prefactor, [coefficient of c⁰, c¹, …])`.
pub const WISHART_3X3: [[(i64, &[i64]); 3]; 3] = [
    [(2, &[0, 1]), (4, &[0, 1, 1]), (6, &[0, 1, 3, 1])],
    [(4, &[0, 1, 1]), (4, &[0, 2, 5, 2]), (12, &[0, 1, 5, 5, 1])],
    [
        (6, &[0, 1, 3, 1]),
        (12, &[0, 1, 5, 5, 1]),
        (6, &[0, 3, 24, 46, 24, 3]),
    ],
];

/// Jacobi covariances at `γ1 = γ2 = 0`, `1 ≤ k, l ≤ 5`, as `(numerator, denominator)`.
pub const JACOBI_5X5: [[(i64, i64); 5]; 5] = [
    [(1, 8), (1, 8), (15, 128), (7, 64), (105, 1024)],
    [(1, 8), (9, 64), (9, 64), (35, 256), (135, 1024)],
    [(15, 128), (9, 64), (75, 512), (75, 512), (4725, 32768)],
    [(7, 64), (35, 256), (75, 512), (1225, 8192), (1225, 8192)],
    [
        (105, 1024),
        (135, 1024),
        (4725, 32768),
        (1225, 8192),
        (19845, 131072),
    ],
];

/// Connected planar pairings of two circles: `(k, l, count)`.
pub const ANNULAR_COUNTS: [(usize, usize, u64); 4] = [(1, 1, 1), (2, 2, 2), (1, 3, 3), (3, 3, 12)];

/// `α^W_{k,l}(c)` from [`WISHART_3X3`] as an exact value.
pub fn wishart_entry(kappa: usize, ell: usize, c: &crate::ExactScalar) -> crate::ExactScalar {
    use num_traits::Zero;
    let (pref, coeffs) = WISHART_3X3[kappa - 1][ell - 1];
    let mut acc = crate::ExactScalar::zero();
    for &q in coeffs.iter().rev() {
        acc = acc * c + crate::series::int(q);
    }
    acc * crate::series::int(pref)
}
