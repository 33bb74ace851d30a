//! Exact and high-precision reference values computed independently of the
//! crate (double integrals of the kernel at 30 digits, hand-expanded series).

use approx::assert_relative_eq;
use onecut::closedform::{
    gaussian_cov, gaussian_moment, jacobi_cov, shift_cov_exact, symmetric_cov, wishart_cov,
};
use onecut::genfun::{eval_f, eval_f_joukowski, expand_f, expand_residue_route, parse_rational};
use onecut::series::{int, ratio, BivariateSeries};
use onecut::SupportInterval;

fn support(a: &str, b: &str) -> SupportInterval {
    SupportInterval::rational(parse_rational(a).unwrap(), parse_rational(b).unwrap()).unwrap()
}

const F_POINTS: [(&str, &str, f64, f64, f64); 6] = [
    ("-2", "2", 0.2, 0.1, 0.049_002_854_661_920_29),
    ("-2", "2", -0.3, 0.25, -0.217_286_373_933_789_34),
    ("0", "4", 0.1, 0.05, 0.020_725_942_163_690_18),
    ("0", "1", 0.5, -0.4, -0.033_448_686_140_166_41),
    ("-7/10", "23/10", 0.3, -0.2, -0.115_518_464_468_247_85),
    ("1/2", "3", 0.2, 0.3, 1.374_439_161_127_88),
];

#[test]
fn generating_function_point_values() {
    for (a, b, z, w, want) in F_POINTS {
        let s = support(a, b);
        assert_relative_eq!(eval_f(&s, 1.0, z, w).unwrap(), want, max_relative = 1e-12);
        assert_relative_eq!(
            eval_f_joukowski(&s, 1.0, z, w).unwrap(),
            want,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            eval_f(&s, 4.0, z, w).unwrap(),
            want / 4.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(eval_f(&s, 1.0, w, z).unwrap(), want, max_relative = 1e-12);
    }
}

#[test]
fn partial_sums_approach_point_values() {
    for (a, b, z, w, want) in F_POINTS.into_iter().take(4) {
        let table = expand_f(&support(a, b), 40).unwrap();
        let s = table.partial_sum(1.0, z, w);
        assert!(
            (s - want).abs() < 1e-8,
            "[{a}, {b}] at ({z}, {w}): {s} vs {want}"
        );
    }
}

#[test]
fn gaussian_closed_form_small_entries() {
    let want = [
        (1, 1, 2),
        (1, 3, 6),
        (2, 2, 4),
        (2, 4, 16),
        (3, 3, 24),
        (4, 4, 72),
        (1, 2, 0),
        (3, 5, 90),
    ];
    for (k, l, v) in want {
        assert_eq!(gaussian_cov(k, l), int(v), "({k},{l})");
    }
    let catalan = [1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42];
    for (k, c) in catalan.into_iter().enumerate() {
        assert_eq!(gaussian_moment(k), int(c));
    }
}

#[test]
fn wishart_and_jacobi_entries() {
    assert_eq!(wishart_cov(&int(2), 2, 2), int(4 * (4 + 20 + 16)));
    assert_eq!(wishart_cov(&ratio(1, 2), 1, 1), int(1));
    assert_relative_eq!(wishart_cov(&0.5f64, 1, 2), 4.0 * 0.75, max_relative = 1e-14);
    // gamma1 = gamma2 = 0 reduces to the arcsine-edge table
    assert_relative_eq!(
        jacobi_cov(0.0, 0.0, 2, 3).unwrap(),
        9.0 / 64.0,
        max_relative = 1e-14
    );
}

#[test]
fn symmetric_support_scales_like_a_power() {
    for (k, l) in [(1, 1), (2, 2), (1, 3), (3, 5), (4, 6)] {
        let base = symmetric_cov(&2.0f64, k, l);
        let scaled = symmetric_cov(&3.0f64, k, l);
        assert_relative_eq!(
            scaled,
            base * 1.5f64.powi((k + l) as i32),
            max_relative = 1e-13
        );
    }
}

#[test]
fn shift_formula_on_offset_support() {
    // [1, 5] is [-2, 2] shifted by 3
    let s = support("1", "5");
    let t = expand_f(&s, 6).unwrap();
    for k in 1..=6 {
        for l in 1..=6 {
            assert_eq!(
                t.get_exact(k, l).unwrap(),
                &shift_cov_exact(&s, k, l).unwrap()
            );
        }
    }
    // Cov(X_1, X_1) is shift invariant and equals 2 (h/2)^2
    assert_eq!(t.get_exact(1, 1).unwrap(), &int(2));
    // Cov(X_1, X_2) = 2 m alpha_11 on a shifted support
    assert_eq!(t.get_exact(1, 2).unwrap(), &int(12));
}

#[test]
fn residue_route_matches() {
    for (a, b) in [("-2", "2"), ("0", "4"), ("1/3", "7/2")] {
        let s = support(a, b);
        let x = expand_f(&s, 7).unwrap();
        let y = expand_residue_route(&s, 7).unwrap();
        for k in 0..=7 {
            for l in 0..=7 {
                assert_eq!(x.get_exact(k, l), y.get_exact(k, l));
            }
        }
    }
}

#[test]
fn series_arithmetic_by_hand() {
    // (1 - z)^{-1} truncated at total degree 4
    let one_minus_z = BivariateSeries::in_z(4, &[int(1), int(-1)]);
    let inv = one_minus_z.inv().unwrap();
    for k in 0..=4 {
        assert_eq!(inv.coefficient(k, 0).unwrap(), &int(1));
    }
    // sqrt(1 - 4z) has coefficients -2 C_{k-1} / ... : 1, -2, -2, -4, -10
    let s = BivariateSeries::in_z(4, &[int(1), int(-4)]).sqrt().unwrap();
    let want = [1, -2, -2, -4, -10];
    for (k, w) in want.into_iter().enumerate() {
        assert_eq!(s.coefficient(k, 0).unwrap(), &int(w));
    }
    assert_relative_eq!(s.evaluate(0.01, 0.0), (0.96f64).sqrt(), epsilon = 1e-8);
}
