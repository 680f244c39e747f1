//! Chebyshev-type polynomial families.
//!
//! * `X_r(x) = sum_{0<=k<=r/2} (-1)^k C(r-k, k) x^(r-2k)`, so that
//!   `1 / (1 - x t + t^2) = sum_r X_r(x) t^r`; equivalently `X_r(x) = U_r(x/2)`.
//! * `X_{r,q} = X_r - q^{-1} X_{r-2}` with generating function
//!   `(1 - q^{-1} t^2) / (1 - x t + t^2)`.
//! * `Y_r = X_{r,1}`, so `Y_r(x) = 2 T_r(x/2)` for `r >= 1`.
//!
//! `X_r` vanishes identically for negative `r`. Exact coefficients are kept as
//! arbitrary-precision rationals; floating-point evaluation always goes
//! through the three-term recurrence.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial with exact rational coefficients in ascending degree order.
/// Trailing zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    coeffs: Vec<BigRational>,
}

impl ExactPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigRational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiplication by the indeterminate.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Horner evaluation with coefficients rounded to `f64`. Fine for low
    /// degrees; for the named families prefer the recurrence evaluators.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coeffs().iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                _ => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `X_r` from the explicit alternating binomial sum.
pub fn poly_x(r: usize) -> ExactPolynomial {
    let mut coeffs = vec![BigRational::zero(); r + 1];
    for k in 0..=r / 2 {
        let b = binomial(r - k, k);
        coeffs[r - 2 * k] = BigRational::from_integer(if k % 2 == 0 { b } else { -b });
    }
    ExactPolynomial::from_coeffs(coeffs)
}

/// `X_0..=X_r_max` from `X_{r+1} = x X_r - X_{r-1}`, `X_0 = 1`, `X_1 = x`.
pub fn poly_x_by_recurrence(r_max: usize) -> Vec<ExactPolynomial> {
    let mut out = Vec::with_capacity(r_max + 1);
    out.push(ExactPolynomial::one());
    if r_max >= 1 {
        out.push(ExactPolynomial::one().shift());
    }
    for r in 2..=r_max {
        let next = out[r - 1].shift().sub(&out[r - 2]);
        out.push(next);
    }
    out
}

fn check_q(q: &BigRational) -> Result<()> {
    if q.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(alloc::format!("q must be positive, got {q}")))
    }
}

/// `X_{r,q} = X_r - q^{-1} X_{r-2}`.
pub fn poly_xrq(r: usize, q: &BigRational) -> Result<ExactPolynomial> {
    check_q(q)?;
    let head = poly_x(r);
    if r < 2 {
        return Ok(head);
    }
    Ok(head.sub(&poly_x(r - 2).scale(&q.recip())))
}

/// `Y_r = X_r - X_{r-2}`.
pub fn poly_y(r: usize) -> ExactPolynomial {
    poly_xrq(r, &BigRational::one()).expect("q = 1 is positive")
}

/// `X_0(x)..=X_r_max(x)` by the forward three-term recurrence.
pub fn x_values(r_max: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(r_max + 1);
    out.push(1.0);
    if r_max >= 1 {
        out.push(x);
    }
    for r in 2..=r_max {
        out.push(x * out[r - 1] - out[r - 2]);
    }
    out
}

/// `X_r(x)` by the forward three-term recurrence.
pub fn eval_x_stable(r: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..r {
        let next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `X_{r,q}(x)` for real `q > 0`.
pub fn eval_xrq(r: usize, q: f64, x: f64) -> f64 {
    let xs = x_values(r, x);
    if r < 2 {
        xs[r]
    } else {
        xs[r] - xs[r - 2] / q
    }
}

/// `X_{0,q}(x)..=X_{r_max,q}(x)`.
pub fn xrq_values(r_max: usize, q: f64, x: f64) -> Vec<f64> {
    let xs = x_values(r_max, x);
    (0..=r_max).map(|r| if r < 2 { xs[r] } else { xs[r] - xs[r - 2] / q }).collect()
}

pub fn eval_y(r: usize, x: f64) -> f64 {
    eval_xrq(r, 1.0, x)
}

/// `|sum_{r<=r_max} X_{r,q}(x) t^r - (1 - t^2/q) / (1 - x t + t^2)|`.
///
/// Restricted to `|x| <= 2`, `|t| < 1/3`, where the series converges
/// geometrically.
pub fn generating_function_residual(r_max: usize, q: f64, x: f64, t: f64) -> Result<f64> {
    if !(x.abs() <= 2.0 && t.abs() < 1.0 / 3.0 && q > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!(
            "generating function needs |x| <= 2, |t| < 1/3, q > 0 (x = {x}, t = {t}, q = {q})"
        )));
    }
    let mut partial = 0.0;
    let mut power = 1.0;
    for value in xrq_values(r_max, q, x) {
        partial += value * power;
        power *= t;
    }
    let closed = (1.0 - t * t / q) / (1.0 - x * t + t * t);
    Ok((partial - closed).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn base_cases() {
        assert_eq!(poly_x(0), ExactPolynomial::one());
        assert_eq!(poly_x(1), ExactPolynomial::from_integers(&[0, 1]));
        assert_eq!(poly_x(2), ExactPolynomial::from_integers(&[-1, 0, 1]));
    }

    #[test]
    fn binomial_sum_matches_recurrence() {
        let rec = poly_x_by_recurrence(64);
        for (r, p) in rec.iter().enumerate() {
            assert_eq!(&poly_x(r), p, "r = {r}");
            assert_eq!(p.degree(), r);
            assert!(p.leading_coeff().unwrap().is_one());
        }
    }

    #[test]
    fn xrq_examples() {
        let q = rat(7, 2);
        let expected = ExactPolynomial::from_coeffs(vec![rat(-1, 1) - q.recip(), rat(0, 1), rat(1, 1)]);
        assert_eq!(poly_xrq(2, &q).unwrap(), expected);
        assert_eq!(poly_xrq(1, &q).unwrap(), ExactPolynomial::from_integers(&[0, 1]));
        assert_eq!(poly_xrq(0, &q).unwrap(), ExactPolynomial::one());
        for r in 0..12 {
            assert_eq!(poly_xrq(r, &rat(1, 1)).unwrap(), poly_y(r));
        }
        assert!(poly_xrq(3, &rat(0, 1)).is_err());
        assert!(poly_xrq(3, &rat(-2, 1)).is_err());
    }

    #[test]
    fn y_examples() {
        assert_eq!(poly_y(2), ExactPolynomial::from_integers(&[-2, 0, 1]));
        assert_eq!(poly_y(0), ExactPolynomial::one());
        let theta = 0.3f64;
        let lhs = eval_y(3, 2.0 * libm::cos(theta));
        assert!((lhs - 2.0 * libm::cos(3.0 * theta)).abs() < 1e-12);
        assert!((poly_y(3).eval_f64(2.0 * libm::cos(theta)) - 2.0 * libm::cos(3.0 * theta)).abs() < 1e-12);
    }

    #[test]
    fn inversion_identity_is_exact() {
        // X_r = sum_{0<=k<=r/2} q^{-k} X_{r-2k,q}
        for q in [1i64, 2, 3, 5] {
            let q = rat(q, 1);
            for r in 0..=32usize {
                let mut sum = ExactPolynomial::zero();
                let mut weight = BigRational::one();
                for k in 0..=r / 2 {
                    sum = sum.add(&poly_xrq(r - 2 * k, &q).unwrap().scale(&weight));
                    weight /= &q;
                }
                assert_eq!(sum, poly_x(r), "q = {q}, r = {r}");
            }
        }
    }

    #[test]
    fn stable_evaluation_examples() {
        for r in 0..=10 {
            assert_eq!(eval_x_stable(r, 2.0), (r + 1) as f64);
        }
        assert_eq!(eval_x_stable(5, 0.0), 0.0);
        assert_eq!(eval_x_stable(4, 0.0), 1.0);
    }

    #[test]
    fn stable_evaluation_matches_exact_coefficients() {
        // Exact rational evaluation at dyadic points in [-2, 2].
        for r in [0usize, 1, 7, 30, 64, 120, 200] {
            let p = poly_x(r);
            for num in [-256i64, -255, -131, -64, 0, 17, 100, 200, 256] {
                let xq = rat(num, 128);
                let exact = p.eval_exact(&xq).to_f64().unwrap();
                let x = num as f64 / 128.0;
                let got = eval_x_stable(r, x);
                let scale = exact.abs().max(1.0);
                assert!((got - exact).abs() <= 1e-10 * scale, "r = {r}, x = {x}: {got} vs {exact}");
                assert!(got.abs() <= (r + 1) as f64 + 1e-9);
            }
        }
    }

    #[test]
    fn generating_function_residuals() {
        assert!(generating_function_residual(40, 3.0, 1.0, 0.2).unwrap() < 1e-12);
        assert_eq!(generating_function_residual(5, 3.0, 1.3, 0.0).unwrap(), 0.0);
        let coarse = generating_function_residual(20, 3.0, 1.0, 0.25).unwrap();
        let fine = generating_function_residual(40, 3.0, 1.0, 0.25).unwrap();
        assert!(coarse > fine);
        assert!(generating_function_residual(10, 3.0, 2.5, 0.1).is_err());
        assert!(generating_function_residual(10, 3.0, 1.0, 0.4).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(poly_y(2).to_string(), "x^2 - 2");
        assert_eq!(poly_xrq(2, &rat(3, 1)).unwrap().to_string(), "x^2 - 4/3");
        assert_eq!(ExactPolynomial::zero().to_string(), "0");
    }
}
