//! Gamma and χ variates with real shape parameters (Marsaglia–Tsang).

use rand::Rng;
use rand_distr::StandardNormal;

/// `Gamma(shape, 1)` by Marsaglia–Tsang squeeze/rejection; shapes below one
/// use the `U^{1/shape}` boost.
pub fn gamma<R: Rng + ?Sized>(rng: &mut R, shape: f64) -> f64 {
    debug_assert!(shape > 0.0);
    if shape < 1.0 {
        let u: f64 = rng.random();
        return gamma(rng, shape + 1.0) * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// χ with `k` (real, positive) degrees of freedom: `√(2·Gamma(k/2, 1))`.
pub fn chi<R: Rng + ?Sized>(rng: &mut R, k: f64) -> f64 {
    (2.0 * gamma(rng, 0.5 * k)).sqrt()
}
