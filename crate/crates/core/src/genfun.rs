//! The universal covariance generating function
//!
//! ```text
//! F(z, ζ) = (1/β) Σ α_{k,l} z^k ζ^l
//!         = (1/β) zζ/(z-ζ)² · [ (2abzζ - (a+b)(z+ζ) + 2) / (2√((1-az)(1-bz)(1-aζ)(1-bζ))) - 1 ]
//! ```
//!
//! and its exact Taylor expansion. The closed form depends on the edges only
//! through `a + b` and `ab`, which is what the exact pipeline consumes.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{int, ratio, to_f64, BivariateSeries, ExactScalar};

/// Exact data for a support: the symmetric functions `a + b` and `ab`,
/// plus the edges themselves when they are rational.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSupport {
    pub sum: ExactScalar,
    pub product: ExactScalar,
    pub edges: Option<(ExactScalar, ExactScalar)>,
}

/// One-cut support `[a, b]` of an equilibrium density.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportInterval {
    a: f64,
    b: f64,
    exact: Option<ExactSupport>,
}

impl SupportInterval {
    /// Floating-point support without exact data.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidSupport { a, b });
        }
        Ok(Self { a, b, exact: None })
    }

    /// Support with rational edges.
    pub fn rational(a: ExactScalar, b: ExactScalar) -> Result<Self> {
        let (af, bf) = (to_f64(&a), to_f64(&b));
        if a >= b {
            return Err(Error::InvalidSupport { a: af, b: bf });
        }
        Ok(Self {
            a: af,
            b: bf,
            exact: Some(ExactSupport {
                sum: &a + &b,
                product: &a * &b,
                edges: Some((a, b)),
            }),
        })
    }

    /// Support from `(p/q, r/s)` integer pairs, e.g. `from_ratios((-2, 1), (2, 1))`.
    pub fn from_ratios(a: (i64, i64), b: (i64, i64)) -> Result<Self> {
        Self::rational(ratio(a.0, a.1), ratio(b.0, b.1))
    }

    /// Support whose edges are the roots of `x² - sum·x + product`.
    ///
    /// The edges may be irrational; the exact expansion still works because
    /// it only needs `sum` and `product`.
    pub fn from_symmetric_functions(sum: ExactScalar, product: ExactScalar) -> Result<Self> {
        let disc = &sum * &sum - int(4) * &product;
        let (s, p) = (to_f64(&sum), to_f64(&product));
        if !disc.is_positive() {
            return Err(Error::InvalidSupport {
                a: s / 2.0,
                b: s / 2.0,
            });
        }
        let root = to_f64(&disc).sqrt();
        // stable quadratic roots
        let (a, b) = if s >= 0.0 {
            let b = (s + root) / 2.0;
            (if b != 0.0 { p / b } else { (s - root) / 2.0 }, b)
        } else {
            let a = (s - root) / 2.0;
            (a, if a != 0.0 { p / a } else { (s + root) / 2.0 })
        };
        let mut out = Self::new(a, b)?;
        out.exact = Some(ExactSupport {
            sum,
            product,
            edges: None,
        });
        Ok(out)
    }

    /// Symmetric support `[-L, L]` (floating point).
    pub fn symmetric(half_width: f64) -> Result<Self> {
        Self::new(-half_width, half_width)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs())
    }

    /// Radius of the polydisc around the origin where `F` is analytic.
    pub fn analytic_radius(&self) -> f64 {
        1.0 / self.max_abs()
    }

    pub fn exact(&self) -> Option<&ExactSupport> {
        self.exact.as_ref()
    }

    pub fn is_centered(&self) -> bool {
        match &self.exact {
            Some(e) => e.sum.is_zero(),
            None => self.a == -self.b,
        }
    }

    /// The support `[ta, tb]` (or `[tb, ta]` for negative `t`).
    pub fn scaled(&self, t: &ExactScalar) -> Result<Self> {
        if t.is_zero() {
            return Err(Error::invalid("support scale factor must be nonzero"));
        }
        match &self.exact {
            Some(ExactSupport {
                edges: Some((a, b)),
                ..
            }) => {
                let (ta, tb) = (a * t, b * t);
                if t.is_positive() {
                    Self::rational(ta, tb)
                } else {
                    Self::rational(tb, ta)
                }
            }
            Some(e) => Self::from_symmetric_functions(&e.sum * t, &e.product * t * t),
            None => {
                let tf = to_f64(t);
                let (ta, tb) = (self.a * tf, self.b * tf);
                Self::new(ta.min(tb), ta.max(tb))
            }
        }
    }
}

impl Serialize for SupportInterval {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SupportInterval", 4)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("b", &self.b)?;
        let (sum, product) = match &self.exact {
            Some(e) => (Some(e.sum.to_string()), Some(e.product.to_string())),
            None => (None, None),
        };
        st.serialize_field("exact_sum", &sum)?;
        st.serialize_field("exact_product", &product)?;
        st.end()
    }
}

/// How the entries of a [`CovarianceTable`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Series,
    ClosedForm,
    ShiftFormula,
    Quadrature,
    MonteCarlo,
}

/// β-free coefficients `α_{k,l}` for `0 ≤ k, l ≤ K`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceTable {
    pub support: SupportInterval,
    pub order: usize,
    pub provenance: Provenance,
    values: Vec<f64>,
    #[serde(skip)]
    exact: Option<Vec<ExactScalar>>,
}

impl CovarianceTable {
    /// Table of floating-point entries produced by `entry(k, l)`.
    pub fn from_fn<F>(
        support: SupportInterval,
        order: usize,
        provenance: Provenance,
        mut entry: F,
    ) -> Self
    where
        F: FnMut(usize, usize) -> f64,
    {
        let mut values = Vec::with_capacity((order + 1) * (order + 1));
        for k in 0..=order {
            for l in 0..=order {
                values.push(entry(k, l));
            }
        }
        Self {
            support,
            order,
            provenance,
            values,
            exact: None,
        }
    }

    /// Table of exact entries produced by `entry(k, l)`.
    pub fn from_exact_fn<F>(
        support: SupportInterval,
        order: usize,
        provenance: Provenance,
        mut entry: F,
    ) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<ExactScalar>,
    {
        let mut exact = Vec::with_capacity((order + 1) * (order + 1));
        for k in 0..=order {
            for l in 0..=order {
                exact.push(entry(k, l)?);
            }
        }
        Ok(Self {
            support,
            order,
            provenance,
            values: exact.iter().map(to_f64).collect(),
            exact: Some(exact),
        })
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `α_{k,l}`; panics if an index exceeds the order.
    pub fn get(&self, kappa: usize, ell: usize) -> f64 {
        assert!(
            kappa <= self.order && ell <= self.order,
            "index beyond table order"
        );
        self.values[kappa * (self.order + 1) + ell]
    }

    pub fn get_exact(&self, kappa: usize, ell: usize) -> Option<&ExactScalar> {
        assert!(
            kappa <= self.order && ell <= self.order,
            "index beyond table order"
        );
        self.exact
            .as_ref()
            .map(|e| &e[kappa * (self.order + 1) + ell])
    }

    /// Overwrites one entry (both representations). Used to exercise failure paths.
    pub fn set_exact(&mut self, kappa: usize, ell: usize, value: ExactScalar) {
        let idx = kappa * (self.order + 1) + ell;
        self.values[idx] = to_f64(&value);
        if let Some(e) = self.exact.as_mut() {
            e[idx] = value;
        }
    }

    /// `Σ_{k,l ≤ K} α_{k,l} z^k ζ^l / β`.
    pub fn partial_sum(&self, beta: f64, z: f64, zeta: f64) -> f64 {
        let mut total = 0.0;
        for k in 0..=self.order {
            for l in 0..=self.order {
                total += self.get(k, l) * z.powi(k as i32) * zeta.powi(l as i32);
            }
        }
        total / beta
    }

    /// Exact symmetry, zero boundary row/column, and (for centered supports)
    /// parity. Returns the first violation found.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let k = self.order;
        let is_zero = |i, j| match self.get_exact(i, j) {
            Some(v) => v.is_zero(),
            None => self.get(i, j) == 0.0,
        };
        for i in 0..=k {
            if !is_zero(i, 0) || !is_zero(0, i) {
                return Err(format!("boundary entry ({i},0)/(0,{i}) is nonzero"));
            }
            for j in 0..=k {
                let symmetric = match (self.get_exact(i, j), self.get_exact(j, i)) {
                    (Some(x), Some(y)) => x == y,
                    _ => self.get(i, j) == self.get(j, i),
                };
                if !symmetric {
                    return Err(format!("entries ({i},{j}) and ({j},{i}) differ"));
                }
                if self.support.is_centered() && (i + j) % 2 == 1 && !is_zero(i, j) {
                    return Err(format!(
                        "odd-parity entry ({i},{j}) is nonzero on a centered support"
                    ));
                }
            }
        }
        Ok(())
    }
}

fn check_domain(support: &SupportInterval, beta: f64, z: f64, zeta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::invalid(format!("beta must be positive, got {beta}")));
    }
    let radius = support.analytic_radius();
    if !(z.abs() < radius && zeta.abs() < radius) {
        return Err(Error::OutsideDomain { z, zeta, radius });
    }
    Ok(())
}

/// Relative distance to the diagonal below which the raw quotient is replaced.
const DIAGONAL_SWITCH: f64 = 1e-3;

fn near_diagonal(z: f64, zeta: f64) -> bool {
    (z - zeta).abs() < DIAGONAL_SWITCH * z.abs().max(zeta.abs()).max(1.0)
}

/// `ln(1+x)/x`, continuous at 0.
fn log1p_ratio(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x / 2.0 + x * x / 3.0 - x * x * x / 4.0
    } else {
        x.ln_1p() / x
    }
}

/// `sinh(x)/x`, continuous at 0.
fn sinhc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 + x * x / 6.0
    } else {
        x.sinh() / x
    }
}

/// `βF` near the diagonal through `bracket = 2 sinh²(Δ/2)` with
/// `Δ = φ(z) - φ(ζ)`, `φ(z) = ½ ln((1-az)/(1-bz))`.
fn diagonal_limit(a: f64, b: f64, z: f64, zeta: f64) -> f64 {
    let h = z - zeta;
    let ta = -a / (1.0 - a * zeta);
    let tb = -b / (1.0 - b * zeta);
    // Δ/h, from ln((1-az)/(1-aζ)) = ln1p(ta·h)
    let slope = 0.5 * (ta * log1p_ratio(ta * h) - tb * log1p_ratio(tb * h));
    let half = 0.5 * slope * h;
    let s = 0.5 * slope * sinhc(half);
    2.0 * z * zeta * s * s
}

/// `F_[a,b](z, ζ)` at a real point inside the analyticity domain.
pub fn eval_f(support: &SupportInterval, beta: f64, z: f64, zeta: f64) -> Result<f64> {
    check_domain(support, beta, z, zeta)?;
    let (a, b) = (support.a, support.b);
    if z == 0.0 || zeta == 0.0 {
        return Ok(0.0);
    }
    if near_diagonal(z, zeta) {
        return Ok(diagonal_limit(a, b, z, zeta) / beta);
    }
    let num = 2.0 * a * b * z * zeta - (a + b) * (z + zeta) + 2.0;
    let den = 2.0 * ((1.0 - a * z) * (1.0 - b * z) * (1.0 - a * zeta) * (1.0 - b * zeta)).sqrt();
    let h = z - zeta;
    Ok(z * zeta / (h * h) * (num / den - 1.0) / beta)
}

/// `F` on the centered support `[-L, L]`.
pub fn eval_f_symmetric(half_width: f64, beta: f64, z: f64, zeta: f64) -> Result<f64> {
    let support = SupportInterval::symmetric(half_width)?;
    check_domain(&support, beta, z, zeta)?;
    if z == 0.0 || zeta == 0.0 {
        return Ok(0.0);
    }
    if near_diagonal(z, zeta) {
        return Ok(diagonal_limit(-half_width, half_width, z, zeta) / beta);
    }
    let l2 = half_width * half_width;
    let bracket =
        (1.0 - l2 * z * zeta) / ((1.0 - l2 * z * z) * (1.0 - l2 * zeta * zeta)).sqrt() - 1.0;
    let h = z - zeta;
    Ok(z * zeta / (h * h) * bracket / beta)
}

/// Joukowski map `j(u) = (a+b)/2 + (a-b)/4 (u + 1/u)` of a support.
#[derive(Debug, Clone, Copy)]
pub struct Joukowski {
    mid: f64,
    quarter: f64,
}

impl Joukowski {
    pub fn new(support: &SupportInterval) -> Self {
        Self {
            mid: support.midpoint(),
            quarter: (support.a - support.b) / 4.0,
        }
    }

    pub fn apply(&self, u: f64) -> f64 {
        self.mid + self.quarter * (u + 1.0 / u)
    }

    pub fn derivative(&self, u: f64) -> f64 {
        self.quarter * (1.0 - 1.0 / (u * u))
    }

    /// Exterior preimage (`|u| > 1`) of a real point off the cut.
    pub fn inverse(&self, w: f64) -> Result<f64> {
        let s = (w - self.mid) / self.quarter;
        let disc = s * s - 4.0;
        if !(disc > 0.0) {
            return Err(Error::BranchCut(w));
        }
        let root = disc.sqrt();
        // the larger-magnitude root avoids cancellation; the other is its reciprocal
        let big = if s >= 0.0 {
            0.5 * (s + root)
        } else {
            0.5 * (s - root)
        };
        if big.abs() > 1.0 {
            Ok(big)
        } else {
            Err(Error::BranchCut(w))
        }
    }
}

/// `F` through the uniformized form `(2/(βzζ)) ω(j⁻¹(1/z), j⁻¹(1/ζ))` with
/// `ω(u, v) = 1 / (j'(u) j'(v) (uv - 1)²)`.
pub fn eval_f_joukowski(support: &SupportInterval, beta: f64, z: f64, zeta: f64) -> Result<f64> {
    check_domain(support, beta, z, zeta)?;
    if z == 0.0 || zeta == 0.0 {
        return Err(Error::invalid("Joukowski form needs z, zeta != 0"));
    }
    if z == zeta {
        return Err(Error::invalid("Joukowski form needs z != zeta"));
    }
    let j = Joukowski::new(support);
    let u = j.inverse(1.0 / z)?;
    let v = j.inverse(1.0 / zeta)?;
    let uv1 = u * v - 1.0;
    let omega = 1.0 / (j.derivative(u) * j.derivative(v) * uv1 * uv1);
    Ok(2.0 / (beta * z * zeta) * omega)
}

/// Exact `α_{k,l}` for `k, l ≤ K` from the closed form, expanded with exact
/// series arithmetic. Needs exact support data.
pub fn expand_f(support: &SupportInterval, order: usize) -> Result<CovarianceTable> {
    let exact = support.exact().ok_or(Error::IrrationalEdges)?;
    if order == 0 {
        return Err(Error::invalid("expansion order must be at least 1"));
    }
    let series = generating_series(&exact.sum, &exact.product, 2 * order)?;
    CovarianceTable::from_exact_fn(support.clone(), order, Provenance::Series, |k, l| {
        Ok(series.coefficient(k, l)?.clone())
    })
}

/// The series `βF` through total degree `total_order`, from `a + b` and `ab`.
pub fn generating_series(
    sum: &ExactScalar,
    product: &ExactScalar,
    total_order: usize,
) -> Result<BivariateSeries> {
    let t = total_order.max(2);
    // (1-az)(1-bz) = 1 - (a+b) z + ab z²
    let quad = BivariateSeries::in_z(t, &[ExactScalar::one(), -sum.clone(), product.clone()]);
    let inv_root_z = quad.sqrt()?.inv()?;
    let inv_root = inv_root_z.mul(&inv_root_z.swap())?;
    // numerator / 2 = 1 - (a+b)(z+ζ)/2 + ab zζ
    let half_sum = sum / int(2);
    let half_num = BivariateSeries::from_terms(
        t,
        [
            (0, 0, ExactScalar::one()),
            (1, 0, -half_sum.clone()),
            (0, 1, -half_sum),
            (1, 1, product.clone()),
        ],
    );
    let bracket = half_num.mul(&inv_root)?.sub(&BivariateSeries::one(t))?;
    let quotient = bracket.div_by_diagonal()?.div_by_diagonal()?;
    // back to order t: zζ · quotient has known terms through degree t
    let lifted = BivariateSeries::from_terms(
        t,
        (0..=t - 2)
            .flat_map(|d| (0..=d).map(move |i| (i, d - i)))
            .map(|(i, j)| {
                (
                    i + 1,
                    j + 1,
                    quotient.coefficient(i, j).cloned().unwrap_or_default(),
                )
            }),
    );
    Ok(lifted.truncate(total_order))
}

/// Independent route: `α_{k,l} = -k Σ_{n=1..l} A_{k+n} B_{l-n}` with
/// `A = √((1-az)(1-bz))`, `B = 1/√((1-aζ)(1-bζ))`, i.e. `k` times the
/// coefficient of `z^k ζ^l` in `√(..z..)/√(..ζ..) · ζ/(z-ζ)` expanded for `|ζ| < |z|`.
pub fn expand_residue_route(support: &SupportInterval, order: usize) -> Result<CovarianceTable> {
    let exact = support.exact().ok_or(Error::IrrationalEdges)?;
    let t = 2 * order + 1;
    let quad = BivariateSeries::in_z(
        t,
        &[
            ExactScalar::one(),
            -exact.sum.clone(),
            exact.product.clone(),
        ],
    );
    let root = quad.sqrt()?;
    let inv_root = root.inv()?;
    let a_coef = |n: usize| root.coefficient(n, 0).cloned().unwrap_or_default();
    let b_coef = |n: usize| inv_root.coefficient(n, 0).cloned().unwrap_or_default();
    CovarianceTable::from_exact_fn(support.clone(), order, Provenance::Series, |k, l| {
        let mut acc = ExactScalar::zero();
        for n in 1..=l {
            acc += a_coef(k + n) * b_coef(l - n);
        }
        Ok(-(acc * int(k as i64)))
    })
}

/// `α_{k,l}` as an `f64` table; converts exact entries.
pub fn to_float_table(table: &CovarianceTable) -> Vec<Vec<f64>> {
    (0..=table.order)
        .map(|k| (0..=table.order).map(|l| table.get(k, l)).collect())
        .collect()
}

/// Exact rational from a decimal string such as `-2`, `0.25`, `3/4` or `1e-3`.
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    let bad = || Error::invalid(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = BigRational::from_integer(all.parse().map_err(|_| bad())?);
    let ten = BigRational::from_integer(10.into());
    let scale = exp - frac_part.len() as i32;
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn gauss() -> SupportInterval {
        SupportInterval::from_ratios((-2, 1), (2, 1)).unwrap()
    }

    #[test]
    fn support_validation() {
        assert!(SupportInterval::new(1.0, 1.0).is_err());
        assert!(SupportInterval::new(2.0, 1.0).is_err());
        assert!(SupportInterval::new(f64::NEG_INFINITY, 1.0).is_err());
        assert!(SupportInterval::from_ratios((1, 1), (0, 1)).is_err());
        let mp = SupportInterval::from_symmetric_functions(int(6), int(1)).unwrap();
        assert_relative_eq!(mp.a(), (1.0 - 2f64.sqrt()).powi(2), max_relative = 1e-14);
        assert_relative_eq!(mp.b(), (1.0 + 2f64.sqrt()).powi(2), max_relative = 1e-14);
    }

    #[test]
    fn zero_argument_gives_zero() {
        assert_eq!(eval_f(&gauss(), 1.0, 0.0, 0.3).unwrap(), 0.0);
        assert_eq!(eval_f_symmetric(2.0, 1.0, 0.2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn domain_is_enforced() {
        assert!(matches!(
            eval_f(&gauss(), 1.0, 0.5, 0.1),
            Err(Error::OutsideDomain { .. })
        ));
        assert!(eval_f(&gauss(), 0.0, 0.1, 0.1).is_err());
        assert!(eval_f_joukowski(&gauss(), 1.0, 0.1, 0.1).is_err());
    }

    #[test]
    fn symmetric_form_agrees() {
        let direct = eval_f(&gauss(), 1.0, 0.1, 0.05).unwrap();
        let sym = eval_f_symmetric(2.0, 1.0, 0.1, 0.05).unwrap();
        assert_relative_eq!(direct, sym, max_relative = 1e-14);
        let flipped = eval_f_symmetric(2.0, 1.0, -0.1, -0.05).unwrap();
        assert_relative_eq!(sym, flipped, max_relative = 1e-14);
    }

    #[test]
    fn joukowski_agrees_with_direct() {
        let cases = [
            (gauss(), 1.0, 0.1, 0.05),
            (SupportInterval::new(0.0, 4.0).unwrap(), 2.0, 0.1, 0.07),
            (SupportInterval::new(0.3, 1.7).unwrap(), 1.5, 0.2, -0.1),
        ];
        for (s, beta, z, w) in cases {
            let d = eval_f(&s, beta, z, w).unwrap();
            let j = eval_f_joukowski(&s, beta, z, w).unwrap();
            assert!((d - j).abs() < 1e-10, "{d} vs {j}");
            let swapped = eval_f_joukowski(&s, beta, w, z).unwrap();
            assert!((j - swapped).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_is_continuous() {
        let s = SupportInterval::new(-0.7, 2.3).unwrap();
        let on = eval_f(&s, 1.0, 0.2, 0.2).unwrap();
        // z²/2 · (½(b/(1-bz) - a/(1-az)))²
        assert_relative_eq!(on, 0.118_744_988_961_465_83, max_relative = 1e-14);
        let off = eval_f(&s, 1.0, 0.2 + 2e-3, 0.2).unwrap();
        assert_relative_eq!(off, 0.120_813_771_991_474_03, max_relative = 1e-10);
        // either side of the switch agrees
        let inside = eval_f(&s, 1.0, 0.2 + 0.99e-3, 0.2).unwrap();
        let outside = eval_f(&s, 1.0, 0.2 + 1.01e-3, 0.2).unwrap();
        assert_relative_eq!(inside, 0.119_765_114_401_521_05, max_relative = 1e-13);
        assert_relative_eq!(outside, 0.119_785_801_921_138_78, max_relative = 1e-9);
    }

    #[test]
    fn expansion_of_semicircle_support() {
        let t = expand_f(&gauss(), 8).unwrap();
        assert_eq!(t.get_exact(3, 5).unwrap(), &int(90));
        assert_eq!(t.get_exact(8, 8).unwrap(), &int(19600));
        assert_eq!(t.get_exact(1, 1).unwrap(), &int(2));
        t.check_invariants().unwrap();
    }

    #[test]
    fn expansion_of_zero_edge_support() {
        let t = expand_f(&SupportInterval::from_ratios((0, 1), (4, 1)).unwrap(), 3).unwrap();
        assert_eq!(t.get_exact(1, 1).unwrap(), &int(2));
        assert_eq!(t.get_exact(2, 2).unwrap(), &int(36));
        assert_eq!(t.get_exact(3, 3).unwrap(), &int(600));
        let unit = expand_f(&SupportInterval::from_ratios((-1, 1), (1, 1)).unwrap(), 2).unwrap();
        assert_eq!(unit.get_exact(1, 1).unwrap(), &ratio(1, 2));
    }

    #[test]
    fn float_support_cannot_expand() {
        let s = SupportInterval::new(0.0, 4.0).unwrap();
        assert!(matches!(expand_f(&s, 3), Err(Error::IrrationalEdges)));
    }

    #[test]
    fn residue_route_matches() {
        for s in [
            gauss(),
            SupportInterval::from_ratios((0, 1), (4, 1)).unwrap(),
            SupportInterval::from_ratios((-1, 3), (5, 2)).unwrap(),
        ] {
            let main = expand_f(&s, 8).unwrap();
            let alt = expand_residue_route(&s, 8).unwrap();
            for k in 0..=8 {
                for l in 0..=8 {
                    assert_eq!(main.get_exact(k, l), alt.get_exact(k, l), "({k},{l})");
                }
            }
        }
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("1.5e2").unwrap(), int(150));
        assert_eq!(parse_rational("2e-1").unwrap(), ratio(1, 5));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
