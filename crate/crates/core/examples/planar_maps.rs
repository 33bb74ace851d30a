//! Counting planar pairings on one and two circles by brute force.

use onecut::closedform::{gaussian_cov, gaussian_moment};
use onecut::planarcount::{
    census, classify, count_connected_annular, count_one_circle, AnnularPairing,
};

fn main() -> onecut::Result<()> {
    for k in [2, 4, 6, 8] {
        println!(
            "one circle, {k} points: {} non-crossing (Catalan {})",
            count_one_circle(k)?,
            gaussian_moment(k)
        );
    }
    for (k, l) in [(1, 1), (2, 2), (1, 3), (3, 3), (4, 6), (5, 7)] {
        println!(
            "two circles ({k}, {l}): {} connected planar, alpha/2 = {}",
            count_connected_annular(k, l)?,
            gaussian_cov(k, l) / onecut::series::int(2)
        );
    }

    let c = census(4, 4)?;
    println!(
        "all {} pairings of (4, 4): {} disconnected, connected by genus {:?}",
        c.total, c.disconnected, c.connected_by_genus
    );

    let crossing = AnnularPairing::from_pairs(4, 0, &[(1, 3), (2, 4)])?;
    println!("(1 3)(2 4) on one circle: {:?}", classify(&crossing));
    Ok(())
}
