use num_bigint::BigUint;
use onecut::closedform::gaussian_cov;
use onecut::planarcount::{census, classify, count_connected_annular, AnnularPairing};
use onecut::series::int;
use proptest::prelude::*;

fn rotate_first(p: &[usize], kappa: usize) -> Vec<usize> {
    let map = |i: usize| if i < kappa { (i + 1) % kappa } else { i };
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[map(i)] = map(j);
    }
    out
}

fn pairing(kappa: usize, ell: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..kappa + ell).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|order| {
            let mut partner = vec![0; order.len()];
            for pair in order.chunks(2) {
                partner[pair[0]] = pair[1];
                partner[pair[1]] = pair[0];
            }
            partner
        })
}

proptest! {
    #[test]
    fn genus_is_rotation_invariant(p in pairing(5, 5)) {
        let a = classify(&AnnularPairing::new(5, 5, p.clone()).unwrap());
        let b = classify(&AnnularPairing::new(5, 5, rotate_first(&p, 5)).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn euler_relation(p in pairing(4, 6)) {
        let inv = classify(&AnnularPairing::new(4, 6, p).unwrap());
        let components = if inv.connected { 1 } else { 2 };
        prop_assert_eq!(inv.vertices + inv.faces, inv.edges + 2 * components - 2 * inv.genus);
        prop_assert_eq!(inv.edges, 5);
    }
}

#[test]
fn counts_equal_half_gaussian_covariance() {
    for k in 1..=7 {
        for l in 1..=7 {
            if (k + l) % 2 == 1 || k + l > 12 {
                continue;
            }
            let got = count_connected_annular(k, l).unwrap();
            let want = gaussian_cov(k, l) / int(2);
            assert_eq!(int(got.to_string().parse().unwrap()), want, "({k},{l})");
        }
    }
}

#[test]
fn census_totals() {
    let c = census(2, 4).unwrap();
    assert_eq!(c.total, 15);
    assert_eq!(c.planar_connected(), 8);
    assert_eq!(
        c.disconnected + c.connected_by_genus.iter().sum::<u64>(),
        c.total
    );
    assert_eq!(count_connected_annular(0, 4).unwrap(), BigUint::from(0u32));
}
