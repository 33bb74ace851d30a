//! Brute-force enumeration of pairings on one or two circles.
//!
//! Points `0..k` sit on the first circle and `k..k+l` on the second, both
//! oriented the same way; `γ` advances one step along a circle and a pairing
//! is a fixed-point-free involution `α`. The faces of the resulting map are
//! the cycles of `γ∘α`, and the genus follows from Euler's relation
//! `V - E + F = 2·(components) - 2g`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest number of points enumerated by default (`15!! = 2 027 025` pairings).
pub const DEFAULT_CAP: usize = 16;

/// A perfect pairing of the points on one or two circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnularPairing {
    kappa: usize,
    ell: usize,
    partner: Vec<usize>,
}

impl AnnularPairing {
    /// `partner[i]` is the point paired with `i` (0-based).
    pub fn new(kappa: usize, ell: usize, partner: Vec<usize>) -> Result<Self> {
        let n = kappa + ell;
        if partner.len() != n {
            return Err(Error::invalid(format!(
                "pairing has {} entries, expected {n}",
                partner.len()
            )));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= n || p == i || partner[p] != i {
                return Err(Error::invalid(format!(
                    "not a fixed-point-free involution at point {i}"
                )));
            }
        }
        Ok(Self {
            kappa,
            ell,
            partner,
        })
    }

    /// Pairing from 1-based transpositions, e.g. `[(1, 3), (2, 4)]`.
    pub fn from_pairs(kappa: usize, ell: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = kappa + ell;
        let mut partner = vec![usize::MAX; n];
        for &(i, j) in pairs {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::invalid(format!("point out of range in ({i} {j})")));
            }
            partner[i - 1] = j - 1;
            partner[j - 1] = i - 1;
        }
        Self::new(kappa, ell, partner)
    }

    pub fn points(&self) -> usize {
        self.kappa + self.ell
    }
}

/// Topological data of the map built from a pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MapInvariants {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
    pub connected: bool,
}

fn rotate(kappa: usize, ell: usize, i: usize) -> usize {
    if i < kappa {
        (i + 1) % kappa
    } else {
        kappa + (i - kappa + 1) % ell
    }
}

fn invariants(kappa: usize, ell: usize, partner: &[usize], seen: &mut [bool]) -> MapInvariants {
    let n = partner.len();
    seen.iter_mut().for_each(|s| *s = false);
    let mut faces = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = rotate(kappa, ell, partner[i]);
        }
    }
    let vertices = usize::from(kappa > 0) + usize::from(ell > 0);
    let crosses = (0..kappa).any(|i| partner[i] >= kappa);
    let components = if vertices == 2 && !crosses {
        2
    } else {
        vertices.min(1)
    };
    let edges = n / 2;
    let chi = vertices as isize - edges as isize + faces as isize;
    let genus = ((2 * components as isize - chi) / 2) as usize;
    MapInvariants {
        vertices,
        edges,
        faces,
        genus,
        connected: components <= 1,
    }
}

/// Vertices, edges, faces, genus and connectivity of a pairing's map.
pub fn classify(pairing: &AnnularPairing) -> MapInvariants {
    let mut seen = vec![false; pairing.points()];
    invariants(pairing.kappa, pairing.ell, &pairing.partner, &mut seen)
}

/// Counts of all pairings split by connectivity and genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub kappa: usize,
    pub ell: usize,
    pub total: u64,
    pub disconnected: u64,
    /// `connected_by_genus[g]`.
    pub connected_by_genus: Vec<u64>,
}

impl Census {
    pub fn planar_connected(&self) -> u64 {
        self.connected_by_genus.first().copied().unwrap_or(0)
    }

    /// `(n-1)!!` for `n` points.
    pub fn expected_total(&self) -> u64 {
        let n = (self.kappa + self.ell) as u64;
        if n % 2 == 1 {
            return 0;
        }
        (1..n).step_by(2).product()
    }
}

fn visit(partner: &mut [usize], kappa: usize, ell: usize, seen: &mut [bool], census: &mut Census) {
    let Some(i) = partner.iter().position(|&p| p == usize::MAX) else {
        let inv = invariants(kappa, ell, partner, seen);
        census.total += 1;
        if inv.connected {
            if census.connected_by_genus.len() <= inv.genus {
                census.connected_by_genus.resize(inv.genus + 1, 0);
            }
            census.connected_by_genus[inv.genus] += 1;
        } else {
            census.disconnected += 1;
        }
        return;
    };
    for j in i + 1..partner.len() {
        if partner[j] != usize::MAX {
            continue;
        }
        partner[i] = j;
        partner[j] = i;
        visit(partner, kappa, ell, seen, census);
        partner[i] = usize::MAX;
        partner[j] = usize::MAX;
    }
}

fn merge(mut a: Census, b: Census) -> Census {
    a.total += b.total;
    a.disconnected += b.disconnected;
    if a.connected_by_genus.len() < b.connected_by_genus.len() {
        a.connected_by_genus.resize(b.connected_by_genus.len(), 0);
    }
    for (x, y) in a.connected_by_genus.iter_mut().zip(&b.connected_by_genus) {
        *x += y;
    }
    a
}

/// Enumerates every pairing of `kappa + ell` points (at most `cap`).
pub fn census_with_cap(kappa: usize, ell: usize, cap: usize) -> Result<Census> {
    let n = kappa + ell;
    let empty = Census {
        kappa,
        ell,
        total: 0,
        disconnected: 0,
        connected_by_genus: Vec::new(),
    };
    if n % 2 == 1 {
        return Ok(empty);
    }
    if n > cap {
        return Err(Error::EnumerationCap { points: n, cap });
    }
    if n == 0 {
        return Ok(Census {
            total: 1,
            connected_by_genus: vec![1],
            ..empty
        });
    }
    // the first point's partner splits the work
    let parts: Vec<Census> = (1..n)
        .into_par_iter()
        .map(|j| {
            let mut partner = vec![usize::MAX; n];
            partner[0] = j;
            partner[j] = 0;
            let mut seen = vec![false; n];
            let mut c = Census { ..empty.clone() };
            visit(&mut partner, kappa, ell, &mut seen, &mut c);
            c
        })
        .collect();
    Ok(parts.into_iter().fold(empty, merge))
}

pub fn census(kappa: usize, ell: usize) -> Result<Census> {
    census_with_cap(kappa, ell, DEFAULT_CAP)
}

/// Non-crossing pairings of `kappa` points on one circle.
pub fn count_one_circle(kappa: usize) -> Result<BigUint> {
    let c = census(kappa, 0)?;
    Ok(BigUint::from(c.planar_connected()))
}

/// Connected planar pairings between two circles of `kappa` and `ell` points.
pub fn count_connected_annular(kappa: usize, ell: usize) -> Result<BigUint> {
    count_connected_annular_with_cap(kappa, ell, DEFAULT_CAP)
}

pub fn count_connected_annular_with_cap(kappa: usize, ell: usize, cap: usize) -> Result<BigUint> {
    if kappa == 0 || ell == 0 || (kappa + ell) % 2 == 1 {
        return Ok(BigUint::from(0u32));
    }
    Ok(BigUint::from(
        census_with_cap(kappa, ell, cap)?.planar_connected(),
    ))
}
