//! Exact rational scalars and truncated two-variable power series.
//!
//! A [`BivariateSeries`] of order `K` stores the coefficients of `z^i ζ^j` for
//! every `i + j ≤ K`. Terms of higher total degree are *unknown*, not zero:
//! every operation returns a series of the same (or a smaller, stated) order
//! whose known coefficients are exact.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,

    #[error("square root needs constant term 1, found {0}")]
    SqrtConstantTerm(ExactScalar),

    #[error("coefficient z^{kappa} zeta^{ell} is beyond truncation order {order}")]
    BeyondOrder {
        kappa: usize,
        ell: usize,
        order: usize,
    },

    #[error("series is not divisible by (z - zeta) through order {0}")]
    NotDivisible(usize),
}

type SeriesResult<T> = Result<T, SeriesError>;

/// Integer as an exact scalar.
pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` as an exact scalar. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Truncated power series in `(z, ζ)` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    order: usize,
    // row-major (order+1)², entry (i, j) -> coefficient of z^i ζ^j
    coeffs: Vec<ExactScalar>,
}

impl BivariateSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            coeffs: vec![ExactScalar::zero(); (order + 1) * (order + 1)],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, ExactScalar::one())
    }

    pub fn constant(order: usize, c: ExactScalar) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from `(i, j, c)` triples; terms beyond the order are dropped.
    pub fn from_terms<I>(order: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, ExactScalar)>,
    {
        let mut s = Self::zero(order);
        for (i, j, c) in terms {
            if i + j <= order {
                let idx = s.index(i, j);
                s.coeffs[idx] += c;
            }
        }
        s
    }

    /// Series in `z` alone with the given coefficients (`coeffs[i]` of `z^i`).
    pub fn in_z(order: usize, coeffs: &[ExactScalar]) -> Self {
        Self::from_terms(
            order,
            coeffs.iter().enumerate().map(|(i, c)| (i, 0, c.clone())),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        i * (self.order + 1) + j
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &ExactScalar {
        &self.coeffs[self.index(i, j)]
    }

    /// Exact coefficient of `z^kappa ζ^ell`.
    pub fn coefficient(&self, kappa: usize, ell: usize) -> SeriesResult<&ExactScalar> {
        if kappa + ell > self.order {
            return Err(SeriesError::BeyondOrder {
                kappa,
                ell,
                order: self.order,
            });
        }
        Ok(self.at(kappa, ell))
    }

    pub fn constant_term(&self) -> &ExactScalar {
        &self.coeffs[0]
    }

    /// Known `(i, j)` index pairs in order of increasing total degree.
    fn known(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.order).flat_map(|d| (0..=d).map(move |i| (i, d - i)))
    }

    fn nonzero_terms(&self) -> Vec<(usize, usize, &ExactScalar)> {
        self.known()
            .map(|(i, j)| (i, j, self.at(i, j)))
            .filter(|(_, _, c)| !c.is_zero())
            .collect()
    }

    /// All known coefficients vanish.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> SeriesResult<()> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> SeriesResult<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> SeriesResult<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x - y)
            .collect();
        Ok(Self {
            order: self.order,
            coeffs,
        })
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Truncated product; all terms of total degree above the order are discarded.
    pub fn mul(&self, other: &Self) -> SeriesResult<Self> {
        self.check_order(other)?;
        let k = self.order;
        let lhs = self.nonzero_terms();
        let rhs = other.nonzero_terms();
        let mut out = Self::zero(k);
        for &(i1, j1, c1) in &lhs {
            for &(i2, j2, c2) in &rhs {
                if i1 + j1 + i2 + j2 <= k {
                    let idx = out.index(i1 + i2, j1 + j2);
                    out.coeffs[idx] += c1 * c2;
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse through the same order.
    pub fn inv(&self) -> SeriesResult<Self> {
        let a00 = self.constant_term();
        if a00.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let inv00 = a00.recip();
        let tail: Vec<_> = self
            .nonzero_terms()
            .into_iter()
            .filter(|&(p, q, _)| p + q > 0)
            .collect();
        let mut out = Self::zero(self.order);
        out.coeffs[0] = inv00.clone();
        for d in 1..=self.order {
            for i in 0..=d {
                let j = d - i;
                let mut acc = ExactScalar::zero();
                for &(p, q, a) in &tail {
                    if p <= i && q <= j {
                        let b = out.at(i - p, j - q);
                        if !b.is_zero() {
                            acc += a * b;
                        }
                    }
                }
                if !acc.is_zero() {
                    let idx = out.index(i, j);
                    out.coeffs[idx] = -(acc * &inv00);
                }
            }
        }
        Ok(out)
    }

    /// Square root with constant term `+1`; requires `self` to have constant term 1.
    pub fn sqrt(&self) -> SeriesResult<Self> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::SqrtConstantTerm(self.constant_term().clone()));
        }
        let two = int(2);
        let mut out = Self::one(self.order);
        // nonzero coefficients of the result with total degree >= 1, filled degree by degree
        let mut done: Vec<(usize, usize)> = Vec::new();
        for d in 1..=self.order {
            let mut fresh = Vec::new();
            for i in 0..=d {
                let j = d - i;
                let mut acc = self.at(i, j).clone();
                for &(p, q) in &done {
                    if p <= i && q <= j && (p + q) < d {
                        let other = out.at(i - p, j - q);
                        if !other.is_zero() && (i - p) + (j - q) > 0 {
                            acc -= out.at(p, q) * other;
                        }
                    }
                }
                if !acc.is_zero() {
                    let idx = out.index(i, j);
                    out.coeffs[idx] = acc / &two;
                    fresh.push((i, j));
                }
            }
            done.extend(fresh);
        }
        Ok(out)
    }

    /// Exchanges the roles of `z` and `ζ`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (i, j) in self.known() {
            let idx = out.index(j, i);
            out.coeffs[idx] = self.at(i, j).clone();
        }
        out
    }

    /// `z ∂_z` applied termwise: the coefficient of `z^i ζ^j` is multiplied by `i`.
    pub fn z_euler(&self) -> Self {
        let mut out = self.clone();
        for (i, j) in self.known() {
            let idx = out.index(i, j);
            out.coeffs[idx] *= int(i as i64);
        }
        out
    }

    /// Multiplies by `z^p ζ^q`, keeping the order (low-degree terms become zero).
    pub fn shift(&self, p: usize, q: usize) -> Self {
        let mut out = Self::zero(self.order);
        for (i, j) in self.known() {
            if i + j + p + q <= self.order {
                let idx = out.index(i + p, j + q);
                out.coeffs[idx] = self.at(i, j).clone();
            }
        }
        out
    }

    /// Drops the known terms of total degree above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut out = Self::zero(order);
        for (i, j) in out.known().collect::<Vec<_>>() {
            let idx = out.index(i, j);
            out.coeffs[idx] = self.at(i, j).clone();
        }
        out
    }

    /// Exact quotient by `(z - ζ)`.
    ///
    /// The result has order `K - 1`. Fails unless the known part of `self`
    /// is divisible, i.e. vanishes on the diagonal degree by degree.
    pub fn div_by_diagonal(&self) -> SeriesResult<Self> {
        let k = self.order;
        if k == 0 || !self.constant_term().is_zero() {
            return Err(SeriesError::NotDivisible(k));
        }
        let mut out = Self::zero(k - 1);
        // g_{i,j} = h_{i-1,j} - h_{i,j-1}
        for d in 1..=k {
            let idx = out.index(d - 1, 0);
            out.coeffs[idx] = self.at(d, 0).clone();
            for i in (1..d).rev() {
                let j = d - i;
                let v = self.at(i, j) + out.at(i, j - 1);
                let idx = out.index(i - 1, j);
                out.coeffs[idx] = v;
            }
            if (self.at(0, d) + out.at(0, d - 1)) != ExactScalar::zero() {
                return Err(SeriesError::NotDivisible(k));
            }
        }
        Ok(out)
    }

    /// Floating-point evaluation of the known part at `(z, ζ)`.
    pub fn evaluate(&self, z: f64, zeta: f64) -> f64 {
        let mut total = 0.0;
        for (i, j) in self.known() {
            let c = self.at(i, j);
            if !c.is_zero() {
                total += to_f64(c) * z.powi(i as i32) * zeta.powi(j as i32);
            }
        }
        total
    }
}

impl fmt::Debug for BivariateSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .nonzero_terms()
            .into_iter()
            .map(|(i, j, c)| format!("({c})z^{i}ζ^{j}"))
            .collect();
        write!(
            f,
            "BivariateSeries[K={}]({})",
            self.order,
            terms.join(" + ")
        )
    }
}

/// Nearest `f64` to an exact scalar (handles numerators and denominators
/// beyond the `f64` range by scaling).
pub fn to_f64(q: &ExactScalar) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
    let v = (n >> shift).to_f64().unwrap_or(f64::NAN) / (d >> shift).to_f64().unwrap_or(f64::NAN);
    if q.is_negative() && v > 0.0 {
        -v
    } else {
        v
    }
}
