use approx::assert_relative_eq;
use onecut::closedform::EnsembleKind;
use onecut::density::{
    cov_quadrature, density_closed, equilibrium_moment, tricomi_density, two_point_kernel,
    DensityGrid,
};
use onecut::genfun::expand_f;
use onecut::{EnsembleSpec, SupportInterval};

#[test]
fn quadrature_reproduces_series() {
    for (a, b) in [((-2, 1), (2, 1)), ((0, 1), (4, 1)), ((-1, 3), (5, 2))] {
        let s = SupportInterval::from_ratios(a, b).unwrap();
        let t = expand_f(&s, 6).unwrap();
        for k in 1..=6 {
            for l in 1..=6 {
                let q = cov_quadrature(&s, k, l, 16).unwrap();
                assert!(
                    (q - t.get(k, l)).abs() <= 1e-8 * t.get(k, l).abs().max(1.0),
                    "({k},{l})"
                );
            }
        }
    }
}

#[test]
fn constant_statistic_is_rejected() {
    let s = SupportInterval::symmetric(2.0).unwrap();
    assert!(cov_quadrature(&s, 0, 2, 16).is_err());
}

#[test]
fn semicircle_values() {
    let g = EnsembleSpec::gaussian(2.0).unwrap();
    assert_relative_eq!(
        density_closed(&g, 0.0).unwrap(),
        1.0 / std::f64::consts::PI,
        max_relative = 1e-14
    );
    assert_eq!(density_closed(&g, 2.5).unwrap(), 0.0);
    let pot = g.potential().unwrap();
    assert_relative_eq!(
        tricomi_density(&pot, 1.0, 16).unwrap(),
        3f64.sqrt() / (2.0 * std::f64::consts::PI),
        max_relative = 1e-12
    );
    for (k, m) in [(2, 1.0), (4, 2.0), (6, 5.0), (8, 14.0)] {
        assert_relative_eq!(
            equilibrium_moment(&g, k, 16).unwrap(),
            m,
            max_relative = 1e-12
        );
    }
}

#[test]
fn wishart_and_jacobi_moments() {
    let w = EnsembleSpec::wishart(2.0, 2.0).unwrap();
    assert_relative_eq!(
        equilibrium_moment(&w, 1, 16).unwrap(),
        2.0,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        equilibrium_moment(&w, 2, 16).unwrap(),
        6.0,
        max_relative = 1e-12
    );
    let j = EnsembleSpec::jacobi(0.0, 0.0, 2.0).unwrap();
    assert_relative_eq!(
        equilibrium_moment(&j, 1, 16).unwrap(),
        0.5,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        equilibrium_moment(&j, 2, 16).unwrap(),
        0.375,
        max_relative = 1e-12
    );
}

#[test]
fn grids_normalize_and_agree() {
    for e in [
        EnsembleSpec::gaussian(1.0).unwrap(),
        EnsembleSpec::jacobi(2.0, 0.5, 1.0).unwrap(),
    ] {
        let c = DensityGrid::closed(&e, 40).unwrap();
        let t = DensityGrid::tricomi(&e.potential().unwrap(), 40, 16).unwrap();
        assert_relative_eq!(c.normalization(), 1.0, max_relative = 1e-8);
        assert!(c.max_abs_diff(&t) < 1e-10);
        assert!(c.nodes.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn density_csv_has_header() {
    let e = EnsembleSpec::new(EnsembleKind::Gaussian, 2.0).unwrap();
    let mut buf = Vec::new();
    DensityGrid::closed(&e, 5)
        .unwrap()
        .write_csv(&mut buf)
        .unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("x,rho\n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn kernel_is_symmetric() {
    let s = SupportInterval::new(0.0, 4.0).unwrap();
    let a = two_point_kernel(&s, 2.0, 1.0, 3.0).unwrap();
    let b = two_point_kernel(&s, 2.0, 3.0, 1.0).unwrap();
    assert_relative_eq!(a, b, max_relative = 1e-14);
    assert!(two_point_kernel(&s, 2.0, 1.0, 1.0).is_err());
}
