//! Closed-form limiting moments and covariances.
//!
//! Everything here reduces to the centered coefficients `α^G_{p,q}` of the
//! support `[-2, 2]` through the shift formula: for `x = m + (L/2) g`,
//!
//! ```text
//! α_{k,l} = Σ_{p≤k} Σ_{q≤l} C(k,p) C(l,q) m^{k+l-p-q} (L/2)^{p+q} α^G_{p,q}.
//! ```
//!
//! Only same-parity `(p, q)` contribute, so `(L/2)^{p+q}` is a power of
//! `(L/2)² = ((a+b)² - 4ab)/16` and the sum is rational whenever `a + b` and
//! `ab` are. The generic [`Scalar`] functions run unchanged over `f64` and
//! [`ExactScalar`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfun::{CovarianceTable, Provenance, SupportInterval};
use crate::series::{int, to_f64, ExactScalar};

/// Field elements the closed forms are evaluated over.
pub trait Scalar: Clone + Num + fmt::Debug {
    fn from_exact(q: &ExactScalar) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_exact(&int(n))
    }

    fn powu(&self, e: usize) -> Self {
        num_traits::pow(self.clone(), e)
    }
}

impl Scalar for f64 {
    fn from_exact(q: &ExactScalar) -> Self {
        to_f64(q)
    }

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn powu(&self, e: usize) -> Self {
        self.powi(e as i32)
    }
}

impl Scalar for BigRational {
    fn from_exact(q: &ExactScalar) -> Self {
        q.clone()
    }
}

/// Binomial coefficient `C(n, k)` as an exact integer (`0` when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k.min(n - k)))
}

/// `C(n, k)` as `f64`: exact integer arithmetic up to `n = 128`, log-gamma beyond.
pub fn binomial_f64(n: u64, k: u64) -> f64 {
    if k > n {
        0.0
    } else if n <= 128 {
        to_f64(&BigRational::from_integer(binomial(n, k)))
    } else {
        statrs::function::factorial::ln_binomial(n, k).exp()
    }
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if n <= 128 {
        binomial_f64(n, k).ln()
    } else {
        statrs::function::factorial::ln_binomial(n, k)
    }
}

fn exact_binomial(n: u64, k: u64) -> ExactScalar {
    BigRational::from_integer(binomial(n, k))
}

/// Limiting Gaussian moment: Catalan numbers on even `k`, zero on odd.
pub fn gaussian_moment(kappa: usize) -> ExactScalar {
    if kappa % 2 == 1 {
        return ExactScalar::zero();
    }
    exact_binomial(kappa as u64, (kappa / 2) as u64) / int(kappa as i64 / 2 + 1)
}

/// Centered covariance `α^G_{k,l}` of the support `[-2, 2]`.
pub fn gaussian_cov(kappa: usize, ell: usize) -> ExactScalar {
    if kappa == 0 || ell == 0 || (kappa + ell) % 2 == 1 {
        return ExactScalar::zero();
    }
    let (k, l) = (kappa as u64, ell as u64);
    int(4 * (k * l) as i64) / int((k + l) as i64)
        * exact_binomial(k - 1, k / 2)
        * exact_binomial(l - 1, l / 2)
}

/// `α_{k,l}` for the support `[-L, L]`: `(L/2)^{k+l} α^G_{k,l}`.
pub fn symmetric_cov<T: Scalar>(half_width: &T, kappa: usize, ell: usize) -> T {
    let g = gaussian_cov(kappa, ell);
    if g.is_zero() {
        return T::zero();
    }
    let half = half_width.clone() / T::from_int(2);
    half.powu(kappa + ell) * T::from_exact(&g)
}

/// Shift formula in terms of the midpoint `m` and `(L/2)²`, cancelled form
/// (regular at `m = 0`).
pub fn shift_cov_parts<T: Scalar>(mid: &T, quarter_width_sq: &T, kappa: usize, ell: usize) -> T {
    let mut acc = T::zero();
    for p in 0..=kappa {
        for q in 0..=ell {
            if (p + q) % 2 == 1 || p == 0 || q == 0 {
                continue;
            }
            let g = gaussian_cov(p, q);
            let term = T::from_exact(
                &(exact_binomial(kappa as u64, p as u64)
                    * exact_binomial(ell as u64, q as u64)
                    * g),
            ) * mid.powu(kappa + ell - p - q)
                * quarter_width_sq.powu((p + q) / 2);
            acc = acc + term;
        }
    }
    acc
}

/// `α_{k,l}` of an arbitrary support by the shift formula, in `f64`.
pub fn shift_cov(support: &SupportInterval, kappa: usize, ell: usize) -> f64 {
    let half = support.half_width() / 2.0;
    shift_cov_parts(&support.midpoint(), &(half * half), kappa, ell)
}

/// Exact shift formula; needs rational `a + b` and `ab`.
pub fn shift_cov_exact(support: &SupportInterval, kappa: usize, ell: usize) -> Result<ExactScalar> {
    let e = support.exact().ok_or(Error::IrrationalEdges)?;
    let mid = &e.sum / int(2);
    let quarter_sq = (&e.sum * &e.sum - int(4) * &e.product) / int(16);
    Ok(shift_cov_parts(&mid, &quarter_sq, kappa, ell))
}

/// `α_{k,l}` for the support `[0, 2L]`.
pub fn zero_edge_cov<T: Scalar>(half_width: &T, kappa: usize, ell: usize) -> T {
    if kappa == 0 || ell == 0 {
        return T::zero();
    }
    let (k, l) = (kappa as u64, ell as u64);
    let c = int(4 * (k * l) as i64) / int((k + l) as i64)
        * exact_binomial(2 * k - 1, k)
        * exact_binomial(2 * l - 1, l);
    (half_width.clone() / T::from_int(2)).powu(kappa + ell) * T::from_exact(&c)
}

/// `ln α_{k,l}` for the support `[0, 2L]`, valid for any size of `k, l`.
pub fn ln_zero_edge_cov(half_width: f64, kappa: usize, ell: usize) -> f64 {
    let (k, l) = (kappa as f64, ell as f64);
    (k + l) * (half_width / 2.0).ln()
        + (4.0 * k * l / (k + l)).ln()
        + ln_binomial(2 * kappa as u64 - 1, kappa as u64)
        + ln_binomial(2 * ell as u64 - 1, ell as u64)
}

/// Narayana polynomial `Σ_{p=1..k} c^{p-1} Nar(k, p)` (`1` at `k = 0`).
///
/// The `k`-th moment of the Marchenko–Pastur density on
/// `[(1-√c)², (1+√c)²]` equals `c` times this value for `k ≥ 1`.
pub fn wishart_moment<T: Scalar>(c: &T, kappa: usize) -> T {
    if kappa == 0 {
        return T::one();
    }
    let k = kappa as u64;
    let mut acc = T::zero();
    for p in 1..=k {
        let nar = exact_binomial(k, p - 1) * exact_binomial(k - 1, p - 1) / int(p as i64);
        acc = acc + T::from_exact(&nar) * c.powu((p - 1) as usize);
    }
    acc
}

/// Wishart covariance `α^W_{k,l}(c)`; exact in `c` because only even `p + q` contribute.
pub fn wishart_cov<T: Scalar>(c: &T, kappa: usize, ell: usize) -> T {
    let one_c = T::one() + c.clone();
    let mut acc = T::zero();
    for p in 1..=kappa {
        for q in 1..=ell {
            if (p + q) % 2 == 1 {
                continue;
            }
            let (pu, qu) = (p as u64, q as u64);
            let coef = int((pu * qu) as i64) / int((pu + qu) as i64)
                * exact_binomial(kappa as u64, pu)
                * exact_binomial(ell as u64, qu)
                * exact_binomial(pu - 1, pu / 2)
                * exact_binomial(qu - 1, qu / 2);
            acc =
                acc + T::from_exact(&coef) * one_c.powu(kappa + ell - p - q) * c.powu((p + q) / 2);
        }
    }
    T::from_int(4) * acc
}

/// Marchenko–Pastur support `[(1-√c)², (1+√c)²]`, exact through `a+b = 2(1+c)`, `ab = (1-c)²`.
pub fn wishart_support(c: f64) -> Result<SupportInterval> {
    if !(c >= 1.0 && c.is_finite()) {
        return Err(Error::invalid(format!(
            "Wishart ratio c must be >= 1, got {c}"
        )));
    }
    let ce = BigRational::from_f64(c).ok_or_else(|| Error::invalid("non-finite c"))?;
    let sum = int(2) * (int(1) + &ce);
    let d = int(1) - &ce;
    SupportInterval::from_symmetric_functions(sum, &d * &d)
}

fn check_gammas(g1: f64, g2: f64) -> Result<()> {
    if !(g1 >= 0.0 && g2 >= 0.0 && g1.is_finite() && g2.is_finite()) {
        return Err(Error::invalid(format!(
            "Jacobi parameters must be >= 0, got gamma1={g1}, gamma2={g2}"
        )));
    }
    Ok(())
}

/// Edges of the Jacobi equilibrium density.
pub fn jacobi_edges(gamma1: f64, gamma2: f64) -> Result<SupportInterval> {
    check_gammas(gamma1, gamma2)?;
    let s = gamma1 + gamma2 + 2.0;
    let u = (gamma2 + 1.0).sqrt();
    let v = ((gamma1 + 1.0) * (gamma1 + gamma2 + 1.0)).sqrt();
    let a = ((u - v) / s).powi(2);
    let b = ((u + v) / s).powi(2);
    // a + b and ab are rational in the parameters: carry them exactly
    let g1 = BigRational::from_f64(gamma1).ok_or_else(|| Error::invalid("gamma1"))?;
    let g2 = BigRational::from_f64(gamma2).ok_or_else(|| Error::invalid("gamma2"))?;
    let se = &g1 + &g2 + int(2);
    let uu = &g2 + int(1);
    let vv = (&g1 + int(1)) * (&g1 + &g2 + int(1));
    let s2 = &se * &se;
    let sum = int(2) * (&uu + &vv) / &s2;
    let diff = &uu - &vv;
    let product = &diff * &diff / (&s2 * &s2);
    let mut out = SupportInterval::from_symmetric_functions(sum, product)?;
    // keep the directly evaluated edges when they are sharper
    if (out.a() - a).abs() > 1e-12 || (out.b() - b).abs() > 1e-12 {
        out = SupportInterval::new(a, b)?;
    }
    Ok(out)
}

/// Jacobi covariance through the re-parametrized shift formula.
pub fn jacobi_cov(gamma1: f64, gamma2: f64, kappa: usize, ell: usize) -> Result<f64> {
    check_gammas(gamma1, gamma2)?;
    let s = gamma1 + gamma2 + 2.0;
    let poly = gamma1 * gamma1 + gamma1 * gamma2 + 2.0 * (gamma1 + gamma2 + 1.0);
    let mid = poly / (s * s);
    let ratio = ((gamma1 + 1.0) * (gamma2 + 1.0) * (gamma1 + gamma2 + 1.0)).sqrt() / poly;
    let mut acc = 0.0;
    for p in 0..=kappa {
        for q in 0..=ell {
            let g = gaussian_cov(p, q);
            if g.is_zero() {
                continue;
            }
            acc += binomial_f64(kappa as u64, p as u64)
                * binomial_f64(ell as u64, q as u64)
                * ratio.powi((p + q) as i32)
                * to_f64(&g);
        }
    }
    Ok(mid.powi((kappa + ell) as i32) * acc)
}

/// Jacobi covariance at `γ1 = γ2 = 0` (support `[0, 1]`).
pub fn jacobi_symmetric_cov(kappa: usize, ell: usize) -> ExactScalar {
    if kappa == 0 || ell == 0 {
        return ExactScalar::zero();
    }
    let (k, l) = (kappa as u64, ell as u64);
    let pow4 = BigRational::from_integer(BigInt::from(4).pow((k + l - 1) as u32));
    int((k * l) as i64) / int((k + l) as i64)
        * exact_binomial(2 * k - 1, k)
        * exact_binomial(2 * l - 1, l)
        / pow4
}

/// Correlation `α_{k,l} / √(α_{k,k} α_{l,l})` of a covariance table.
pub fn correlation(table: &CovarianceTable, kappa: usize, ell: usize) -> Result<f64> {
    let (ckk, cll) = (table.get(kappa, kappa), table.get(ell, ell));
    if !(ckk > 0.0 && cll > 0.0) {
        return Err(Error::invalid(format!(
            "correlation needs positive diagonal, got alpha({kappa},{kappa})={ckk}, alpha({ell},{ell})={cll}"
        )));
    }
    Ok(table.get(kappa, ell) / (ckk * cll).sqrt())
}

/// Large-`k, l` asymptote `(2L)^{k+l}/π · √(kl)/(k+l)` for the support `[0, 2L]`.
pub fn asymptotic_cov(half_width: f64, kappa: usize, ell: usize) -> f64 {
    ln_asymptotic_cov(half_width, kappa, ell).exp()
}

pub fn ln_asymptotic_cov(half_width: f64, kappa: usize, ell: usize) -> f64 {
    let (k, l) = (kappa as f64, ell as f64);
    (k + l) * (2.0 * half_width).ln() - std::f64::consts::PI.ln() + 0.5 * (k * l).ln()
        - (k + l).ln()
}

/// Potential derivative `V'` for custom one-cut ensembles.
pub type PotentialDerivative = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A one-cut ensemble given by `V'` and its (user-supplied) support.
#[derive(Clone)]
pub struct PotentialSpec {
    pub derivative: PotentialDerivative,
    pub support: SupportInterval,
}

impl PotentialSpec {
    pub fn new<F>(derivative: F, support: SupportInterval) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            derivative: Arc::new(derivative),
            support,
        }
    }
}

impl fmt::Debug for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PotentialSpec")
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum EnsembleKind {
    Gaussian,
    Wishart { c: f64 },
    Jacobi { gamma1: f64, gamma2: f64 },
    CustomOneCut(PotentialSpec),
}

/// Ensemble family plus Dyson index.
#[derive(Debug, Clone)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub beta: f64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::invalid(format!("beta must be positive, got {beta}")));
        }
        match &kind {
            EnsembleKind::Wishart { c } if !(*c >= 1.0 && c.is_finite()) => {
                return Err(Error::invalid(format!(
                    "Wishart ratio c must be >= 1, got {c}"
                )));
            }
            EnsembleKind::Jacobi { gamma1, gamma2 } => check_gammas(*gamma1, *gamma2)?,
            _ => {}
        }
        Ok(Self { kind, beta })
    }

    pub fn gaussian(beta: f64) -> Result<Self> {
        Self::new(EnsembleKind::Gaussian, beta)
    }

    pub fn wishart(c: f64, beta: f64) -> Result<Self> {
        Self::new(EnsembleKind::Wishart { c }, beta)
    }

    pub fn jacobi(gamma1: f64, gamma2: f64, beta: f64) -> Result<Self> {
        Self::new(EnsembleKind::Jacobi { gamma1, gamma2 }, beta)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            EnsembleKind::Gaussian => "gaussian",
            EnsembleKind::Wishart { .. } => "wishart",
            EnsembleKind::Jacobi { .. } => "jacobi",
            EnsembleKind::CustomOneCut(_) => "custom",
        }
    }

    /// Support of the equilibrium density.
    pub fn support(&self) -> Result<SupportInterval> {
        match &self.kind {
            EnsembleKind::Gaussian => SupportInterval::from_ratios((-2, 1), (2, 1)),
            EnsembleKind::Wishart { c } => wishart_support(*c),
            EnsembleKind::Jacobi { gamma1, gamma2 } => jacobi_edges(*gamma1, *gamma2),
            EnsembleKind::CustomOneCut(p) => Ok(p.support.clone()),
        }
    }

    /// `V'` of the Coulomb-gas potential.
    pub fn potential_derivative(&self) -> PotentialDerivative {
        match &self.kind {
            EnsembleKind::Gaussian => Arc::new(|y| y / 2.0),
            EnsembleKind::Wishart { c } => {
                let c = *c;
                Arc::new(move |y| 0.5 - (c - 1.0) / (2.0 * y))
            }
            EnsembleKind::Jacobi { gamma1, gamma2 } => {
                let (g1, g2) = (*gamma1, *gamma2);
                Arc::new(move |y| -g1 / (2.0 * y) + g2 / (2.0 * (1.0 - y)))
            }
            EnsembleKind::CustomOneCut(p) => p.derivative.clone(),
        }
    }

    pub fn potential(&self) -> Result<PotentialSpec> {
        Ok(PotentialSpec {
            derivative: self.potential_derivative(),
            support: self.support()?,
        })
    }

    /// Limiting mean `α_k` from the closed forms (classical kinds only).
    pub fn moment(&self, kappa: usize) -> Result<f64> {
        match &self.kind {
            EnsembleKind::Gaussian => Ok(to_f64(&gaussian_moment(kappa))),
            EnsembleKind::Wishart { c } => Ok(if kappa == 0 {
                1.0
            } else {
                c * wishart_moment(c, kappa)
            }),
            EnsembleKind::Jacobi { .. } | EnsembleKind::CustomOneCut(_) => Err(Error::invalid(
                "no closed-form moments for this ensemble; use density::equilibrium_moment",
            )),
        }
    }

    /// Table of `α_{k,l}`: exact series expansion when the support allows it,
    /// shift formula otherwise.
    pub fn covariance_table(&self, order: usize) -> Result<CovarianceTable> {
        let support = self.support()?;
        if support.exact().is_some() {
            crate::genfun::expand_f(&support, order)
        } else {
            Ok(CovarianceTable::from_fn(
                support.clone(),
                order,
                Provenance::ShiftFormula,
                |k, l| shift_cov(&support, k, l),
            ))
        }
    }
}

impl Serialize for EnsembleSpec {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        map.serialize_entry("kind", self.name())?;
        match &self.kind {
            EnsembleKind::Gaussian => {}
            EnsembleKind::Wishart { c } => map.serialize_entry("c", c)?,
            EnsembleKind::Jacobi { gamma1, gamma2 } => {
                map.serialize_entry("gamma1", gamma1)?;
                map.serialize_entry("gamma2", gamma2)?;
            }
            EnsembleKind::CustomOneCut(p) => map.serialize_entry("support", &p.support)?,
        }
        map.serialize_entry("beta", &self.beta)?;
        map.end()
    }
}

/// Closed-form table for a classical ensemble (`Provenance::ClosedForm`).
pub fn closed_form_table(ensemble: &EnsembleSpec, order: usize) -> Result<CovarianceTable> {
    let support = ensemble.support()?;
    match &ensemble.kind {
        EnsembleKind::Gaussian => {
            CovarianceTable::from_exact_fn(support, order, Provenance::ClosedForm, |k, l| {
                Ok(gaussian_cov(k, l))
            })
        }
        EnsembleKind::Wishart { c } => {
            let ce = BigRational::from_f64(*c).ok_or_else(|| Error::invalid("c"))?;
            CovarianceTable::from_exact_fn(support, order, Provenance::ClosedForm, |k, l| {
                Ok(wishart_cov(&ce, k, l))
            })
        }
        EnsembleKind::Jacobi { gamma1, gamma2 } if *gamma1 == 0.0 && *gamma2 == 0.0 => {
            CovarianceTable::from_exact_fn(support, order, Provenance::ClosedForm, |k, l| {
                Ok(jacobi_symmetric_cov(k, l))
            })
        }
        EnsembleKind::Jacobi { gamma1, gamma2 } => {
            let mut err = None;
            let t = CovarianceTable::from_fn(support, order, Provenance::ClosedForm, |k, l| {
                jacobi_cov(*gamma1, *gamma2, k, l).unwrap_or_else(|e| {
                    err = Some(e);
                    f64::NAN
                })
            });
            match err {
                Some(e) => Err(e),
                None => Ok(t),
            }
        }
        EnsembleKind::CustomOneCut(_) => {
            Err(Error::invalid("no closed form for a custom potential"))
        }
    }
}

/// Checks that an exact rational is an integer.
pub fn is_integer(q: &ExactScalar) -> bool {
    q.denom().is_one()
}

/// Integer part of an exact value known to be an integer.
pub fn as_integer(q: &ExactScalar) -> Option<BigInt> {
    is_integer(q).then(|| q.numer().clone())
}

/// Sign-aware check `|x - y| ≤ tol · max(1, |y|)`.
pub fn close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * y.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ratio;
    use approx::assert_relative_eq;

    #[test]
    fn catalan_moments() {
        assert_eq!(gaussian_moment(0), int(1));
        assert_eq!(gaussian_moment(2), int(1));
        assert_eq!(gaussian_moment(4), int(2));
        assert_eq!(gaussian_moment(6), int(5));
        assert_eq!(gaussian_moment(7), int(0));
    }

    #[test]
    fn gaussian_covariances() {
        assert_eq!(gaussian_cov(1, 1), int(2));
        assert_eq!(gaussian_cov(2, 4), int(16));
        assert_eq!(gaussian_cov(8, 8), int(19600));
        assert_eq!(gaussian_cov(1, 2), int(0));
        assert_eq!(gaussian_cov(5, 0), int(0));
    }

    #[test]
    fn symmetric_support_scaling() {
        for k in 0..6 {
            for l in 0..6 {
                assert_eq!(symmetric_cov(&int(2), k, l), gaussian_cov(k, l));
            }
        }
        assert_eq!(symmetric_cov(&int(1), 1, 1), ratio(1, 2));
        assert_eq!(symmetric_cov(&int(1), 1, 2), int(0));
        assert_relative_eq!(symmetric_cov(&1.0f64, 1, 1), 0.5);
    }

    #[test]
    fn shift_formula_examples() {
        let g = SupportInterval::from_ratios((-2, 1), (2, 1)).unwrap();
        for k in 0..=8 {
            for l in 0..=8 {
                assert_eq!(shift_cov_exact(&g, k, l).unwrap(), gaussian_cov(k, l));
            }
        }
        let w = SupportInterval::from_ratios((0, 1), (4, 1)).unwrap();
        assert_eq!(shift_cov_exact(&w, 2, 2).unwrap(), int(36));
        let j = SupportInterval::from_ratios((0, 1), (1, 1)).unwrap();
        assert_eq!(shift_cov_exact(&j, 1, 1).unwrap(), ratio(1, 8));
        assert_relative_eq!(shift_cov(&j, 1, 1), 0.125, max_relative = 1e-15);
    }

    #[test]
    fn zero_edge_examples() {
        assert_eq!(zero_edge_cov(&int(2), 1, 1), int(2));
        assert_eq!(zero_edge_cov(&int(2), 2, 2), int(36));
        assert_eq!(zero_edge_cov(&int(3), 4, 0), int(0));
        for k in 1..=5 {
            for l in 1..=5 {
                assert_eq!(
                    zero_edge_cov(&ratio(1, 2), k, l),
                    jacobi_symmetric_cov(k, l)
                );
            }
        }
    }

    #[test]
    fn narayana_moments() {
        for c in [1i64, 2, 3, 7] {
            let ce = int(c);
            assert_eq!(wishart_moment(&ce, 0), int(1));
            assert_eq!(wishart_moment(&ce, 1), int(1));
            assert_eq!(wishart_moment(&ce, 2), int(1 + c));
            assert_eq!(wishart_moment(&ce, 3), int(1 + 3 * c + c * c));
        }
        assert_eq!(wishart_moment(&int(1), 3), int(5));
    }

    #[test]
    fn wishart_table_entries() {
        for c in [1i64, 2, 3, 7] {
            let ce = int(c);
            assert_eq!(wishart_cov(&ce, 1, 1), int(2 * c));
            assert_eq!(wishart_cov(&ce, 1, 2), int(4 * (c + c * c)));
            assert_eq!(
                wishart_cov(&ce, 3, 3),
                int(6 * (3 * c + 24 * c.pow(2) + 46 * c.pow(3) + 24 * c.pow(4) + 3 * c.pow(5)))
            );
            assert_eq!(wishart_cov(&ce, 4, 0), int(0));
        }
        for k in 0..=6 {
            for l in 0..=6 {
                assert_eq!(wishart_cov(&int(1), k, l), zero_edge_cov(&int(2), k, l));
            }
        }
    }

    #[test]
    fn jacobi_edges_and_covariances() {
        let s = jacobi_edges(0.0, 0.0).unwrap();
        assert_eq!((s.a(), s.b()), (0.0, 1.0));
        let s = jacobi_edges(1.0, 1.0).unwrap();
        let u = 2f64.sqrt();
        let v = 6f64.sqrt();
        assert_relative_eq!(s.a(), ((u - v) / 4.0).powi(2), max_relative = 1e-13);
        assert_relative_eq!(s.b(), ((u + v) / 4.0).powi(2), max_relative = 1e-13);
        assert!(jacobi_edges(-1.0, 0.0).is_err());

        assert_eq!(jacobi_symmetric_cov(1, 1), ratio(1, 8));
        assert_eq!(jacobi_symmetric_cov(2, 2), ratio(9, 64));
        assert_eq!(jacobi_symmetric_cov(1, 2), ratio(1, 8));
        assert_eq!(jacobi_symmetric_cov(3, 4), ratio(75, 512));
        assert_eq!(jacobi_symmetric_cov(2, 3), ratio(9, 64));
        assert_eq!(jacobi_symmetric_cov(5, 5), ratio(19845, 131072));
        assert_eq!(jacobi_cov(0.0, 0.0, 3, 0).unwrap(), 0.0);
        for (g1, g2) in [(0.5, 2.0), (3.0, 0.0), (1.25, 7.5)] {
            let s = jacobi_edges(g1, g2).unwrap();
            for k in 1..=6 {
                for l in 1..=6 {
                    let x = jacobi_cov(g1, g2, k, l).unwrap();
                    assert!(
                        close(x, shift_cov(&s, k, l), 1e-12),
                        "({g1},{g2}) ({k},{l})"
                    );
                }
            }
        }
    }

    #[test]
    fn correlation_examples() {
        let w = EnsembleSpec::wishart(1.0, 1.0)
            .unwrap()
            .covariance_table(4)
            .unwrap();
        assert_relative_eq!(
            correlation(&w, 1, 2).unwrap(),
            2.0 * 2f64.sqrt() / 3.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(correlation(&w, 3, 3).unwrap(), 1.0);
        let g = EnsembleSpec::gaussian(1.0)
            .unwrap()
            .covariance_table(4)
            .unwrap();
        assert_relative_eq!(
            correlation(&g, 1, 3).unwrap(),
            3f64.sqrt() / 2.0,
            max_relative = 1e-14
        );
        assert_eq!(correlation(&g, 1, 2).unwrap(), 0.0);
        assert!(correlation(&g, 0, 1).is_err());
    }

    #[test]
    fn asymptotic_ratio() {
        let ratio_at =
            |k: usize| (ln_zero_edge_cov(2.0, k, k) - ln_asymptotic_cov(2.0, k, k)).exp();
        let r40 = ratio_at(40);
        assert!((0.97..=1.03).contains(&r40), "{r40}");
        let mut last = 0.0;
        for k in 1..=60 {
            let r = ratio_at(k);
            assert!(r > last, "ratio not monotone at {k}");
            last = r;
        }
        // κ = ℓ reduces to (2L)^{2κ}/(2π)
        assert_relative_eq!(
            asymptotic_cov(1.5, 7, 7),
            3f64.powi(14) / (2.0 * std::f64::consts::PI),
            max_relative = 1e-12
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(
            binomial(79, 40),
            num_integer::binomial(BigInt::from(79), BigInt::from(40))
        );
        assert_eq!(binomial_f64(3, 5), 0.0);
        let big = binomial_f64(200, 100);
        let exact = to_f64(&BigRational::from_integer(binomial(200, 100)));
        assert_relative_eq!(big, exact, max_relative = 1e-12);
    }

    #[test]
    fn ensemble_validation() {
        assert!(EnsembleSpec::wishart(0.5, 1.0).is_err());
        assert!(EnsembleSpec::jacobi(-0.1, 0.0, 1.0).is_err());
        assert!(EnsembleSpec::gaussian(0.0).is_err());
        let w = EnsembleSpec::wishart(2.0, 1.0).unwrap();
        assert_relative_eq!(w.moment(2).unwrap(), 6.0);
    }
}
