//! Wasserstein distances between measures on the line, through quantile
//! functions: `W_p(μ, ν)^p = ∫_0^1 |F_μ^{-1}(s) - F_ν^{-1}(s)|^p ds`.
//!
//! Discrete against discrete is exact. Discrete against a law is integrated
//! piece by piece in `x` between consecutive law quantiles, where the
//! integrand `|c - x|^p ρ(x)` becomes smooth after the change of variable
//! `x = 2 cos θ`. Law against law uses graded Gauss panels in `s`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::laws::ReferenceLaw;
use super::measure::DiscreteSpectralMeasure;
use super::quadrature::GaussLegendre;
use crate::error::{Error, Result};

const PIECE_NODES: usize = 32;
const LAW_PANELS: usize = 128;
const END_GRADING_LEVELS: usize = 24;
const GOLDEN_STEPS: usize = 80;

#[derive(Debug, Clone, Copy)]
pub enum Distribution<'a> {
    Discrete(&'a DiscreteSpectralMeasure),
    Law(&'a ReferenceLaw),
}

impl<'a> From<&'a DiscreteSpectralMeasure> for Distribution<'a> {
    fn from(mu: &'a DiscreteSpectralMeasure) -> Self {
        Distribution::Discrete(mu)
    }
}

impl<'a> From<&'a ReferenceLaw> for Distribution<'a> {
    fn from(law: &'a ReferenceLaw) -> Self {
        Distribution::Law(law)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Finite(f64),
    Infinity,
}

impl Order {
    fn validate(self) -> Result<Self> {
        match self {
            Order::Finite(p) if !(p >= 1.0 && p.is_finite()) => {
                Err(Error::InvalidParameter(format!("Wasserstein order {p} must be a finite p >= 1")))
            }
            other => Ok(other),
        }
    }
}

pub fn wasserstein(a: Distribution<'_>, b: Distribution<'_>, order: Order) -> Result<f64> {
    let order = order.validate()?;
    Ok(match (a, b) {
        (Distribution::Discrete(x), Distribution::Discrete(y)) => discrete_discrete(x, y, order),
        (Distribution::Discrete(x), Distribution::Law(l)) | (Distribution::Law(l), Distribution::Discrete(x)) => {
            discrete_law(x, l, order)
        }
        (Distribution::Law(l), Distribution::Law(m)) => law_law(l, m, order),
    })
}

fn finish(sum: f64, p: f64) -> f64 {
    if p == 1.0 {
        sum
    } else {
        libm::pow(sum.max(0.0), 1.0 / p)
    }
}

fn discrete_discrete(a: &DiscreteSpectralMeasure, b: &DiscreteSpectralMeasure, order: Order) -> f64 {
    let (x, y) = (a.points(), b.points());
    let (n1, n2) = (x.len() as u128, y.len() as u128);
    // Breakpoints i/n1 and j/n2 are compared exactly as i*n2 against j*n1.
    let (mut i, mut j) = (0usize, 0usize);
    let mut prev = 0u128;
    let mut sum = 0.0;
    let mut sup = 0.0f64;
    while i < x.len() && j < y.len() {
        let ea = (i as u128 + 1) * n2;
        let eb = (j as u128 + 1) * n1;
        let end = ea.min(eb);
        let gap = (x[i] - y[j]).abs();
        match order {
            Order::Finite(p) => sum += libm::pow(gap, p) * (end - prev) as f64,
            Order::Infinity => sup = sup.max(gap),
        }
        prev = end;
        if ea <= eb {
            i += 1;
        }
        if eb <= ea {
            j += 1;
        }
    }
    match order {
        Order::Finite(p) => finish(sum / (n1 * n2) as f64, p),
        Order::Infinity => sup,
    }
}

fn discrete_law(mu: &DiscreteSpectralMeasure, law: &ReferenceLaw, order: Order) -> f64 {
    let points = mu.points();
    let n = points.len();
    // angles[k] = θ with 2 cos θ = F^{-1}(k/n); decreasing from π to 0.
    let angles: Vec<f64> = (0..=n).map(|k| law.quantile_angle(k as f64 / n as f64)).collect();
    match order {
        Order::Infinity => (0..n)
            .map(|k| {
                let c = points[k];
                let lo = 2.0 * libm::cos(angles[k]);
                let hi = 2.0 * libm::cos(angles[k + 1]);
                (c - lo).abs().max((c - hi).abs())
            })
            .fold(0.0, f64::max),
        Order::Finite(p) => {
            let rule = GaussLegendre::new(PIECE_NODES);
            let mut sum = 0.0;
            for (k, &c) in points.iter().enumerate() {
                let (t_hi, t_lo) = (angles[k], angles[k + 1]);
                let mut piece = |a: f64, b: f64| {
                    if b > a {
                        sum += rule.integrate(a, b, |t| {
                            libm::pow((c - 2.0 * libm::cos(t)).abs(), p) * law.angular_density(t)
                        });
                    }
                };
                // Split where 2 cos θ = c, the kink of |c - x|^p.
                let kink = if c.abs() < 2.0 { libm::acos(0.5 * c) } else { f64::NAN };
                if kink > t_lo && kink < t_hi {
                    piece(t_lo, kink);
                    piece(kink, t_hi);
                } else {
                    piece(t_lo, t_hi);
                }
            }
            finish(sum, p)
        }
    }
}

/// Panel edges on `[0, 1]`: uniform, with the two end panels refined
/// geometrically towards `0` and `1` where the quantile functions have
/// square-root behavior.
fn graded_edges() -> Vec<f64> {
    let h = 1.0 / LAW_PANELS as f64;
    let mut edges = Vec::with_capacity(LAW_PANELS + 2 * END_GRADING_LEVELS + 1);
    edges.push(0.0);
    for level in (1..=END_GRADING_LEVELS).rev() {
        edges.push(h * libm::pow(0.5, level as f64));
    }
    for i in 1..LAW_PANELS {
        edges.push(i as f64 * h);
    }
    for level in 1..=END_GRADING_LEVELS {
        edges.push(1.0 - h * libm::pow(0.5, level as f64));
    }
    edges.push(1.0);
    edges
}

fn law_law(a: &ReferenceLaw, b: &ReferenceLaw, order: Order) -> f64 {
    let gap = |s: f64| (2.0 * libm::cos(a.quantile_angle(s)) - 2.0 * libm::cos(b.quantile_angle(s))).abs();
    let edges = graded_edges();
    let rule = GaussLegendre::new(PIECE_NODES);
    match order {
        Order::Finite(p) => {
            let total: f64 = edges
                .windows(2)
                .map(|w| rule.integrate(w[0], w[1], |s| libm::pow(gap(s), p)))
                .sum();
            finish(total, p)
        }
        Order::Infinity => {
            // Dense sampling, then golden-section refinement around the best
            // sample.
            let mut samples: Vec<f64> = Vec::new();
            for w in edges.windows(2) {
                let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
                samples.push(w[0]);
                samples.extend(rule.nodes().iter().map(|t| mid + half * t));
            }
            samples.push(1.0);
            let values: Vec<f64> = samples.iter().map(|&s| gap(s)).collect();
            let (best, &best_value) = values
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.total_cmp(y.1))
                .expect("samples are nonempty");
            let lo = samples[best.saturating_sub(1)];
            let hi = samples[(best + 1).min(samples.len() - 1)];
            best_value.max(golden_max(lo, hi, gap))
        }
    }
}

fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let ratio = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_STEPS {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// `4π / m`, the bound on `W_∞` between the spectral measure of `C_m` and
/// the arcsine law.
pub fn cycle_arcsine_bound(m: usize) -> f64 {
    4.0 * PI / m as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::measure::{cycle_spectral_measure, quantile_discretization};
    use alloc::vec;

    fn dirac(x: f64) -> DiscreteSpectralMeasure {
        DiscreteSpectralMeasure::new(vec![x], 1.0).unwrap()
    }

    fn w(a: Distribution<'_>, b: Distribution<'_>, p: f64) -> f64 {
        wasserstein(a, b, Order::Finite(p)).unwrap()
    }

    #[test]
    fn diracs() {
        let (a, b) = (dirac(0.0), dirac(1.0));
        assert_eq!(w((&a).into(), (&b).into(), 1.0), 1.0);
        assert_eq!(w((&a).into(), (&b).into(), 3.0), 1.0);
        assert_eq!(wasserstein((&a).into(), (&b).into(), Order::Infinity).unwrap(), 1.0);
    }

    #[test]
    fn rejects_small_orders() {
        let a = dirac(0.0);
        for p in [0.5, 0.0, f64::NAN, f64::INFINITY] {
            assert!(wasserstein((&a).into(), (&a).into(), Order::Finite(p)).is_err());
        }
    }

    #[test]
    fn discrete_with_unequal_sizes() {
        // Quantiles: a = {0 on (0,1/2], 1 on (1/2,1]}, b = {0 on (0,1/3], 3 after}.
        let a = DiscreteSpectralMeasure::new(vec![0.0, 1.0], 1.0).unwrap();
        let b = DiscreteSpectralMeasure::new(vec![0.0, 3.0, 3.0], 1.0).unwrap();
        let w1 = w((&a).into(), (&b).into(), 1.0);
        assert!((w1 - (3.0 / 6.0 + 2.0 / 2.0)).abs() < 1e-15);
        let w2 = w((&a).into(), (&b).into(), 2.0);
        assert!((w2 - libm::sqrt(9.0 / 6.0 + 4.0 / 2.0)).abs() < 1e-15);
        assert_eq!(wasserstein((&a).into(), (&b).into(), Order::Infinity).unwrap(), 3.0);
    }

    #[test]
    fn dirac_against_law() {
        // W_p(δ_0, semicircle)^p = E|X|^p; E X^2 = 1 and E|X| = 8/(3π).
        let law = ReferenceLaw::semicircle();
        let zero = dirac(0.0);
        assert!((w((&zero).into(), (&law).into(), 2.0) - 1.0).abs() < 1e-12);
        assert!((w((&law).into(), (&zero).into(), 1.0) - 8.0 / (3.0 * PI)).abs() < 1e-12);
        assert_eq!(wasserstein((&zero).into(), (&law).into(), Order::Infinity).unwrap(), 2.0);
        // Arcsine: E X^2 = 2.
        let arc = ReferenceLaw::arcsine();
        assert!((w((&zero).into(), (&arc).into(), 2.0) - libm::sqrt(2.0)).abs() < 1e-12);
    }

    #[test]
    fn law_against_itself_and_shift_free_pair() {
        let sc = ReferenceLaw::semicircle();
        assert_eq!(w((&sc).into(), (&sc).into(), 2.0), 0.0);
        let arc = ReferenceLaw::arcsine();
        let d1 = w((&sc).into(), (&arc).into(), 1.0);
        assert!(d1 > 0.0);
        // Agrees with a fine quantile discretization of one side.
        let fine = quantile_discretization(&arc, 20000).unwrap();
        let approx = w((&sc).into(), (&fine).into(), 1.0);
        assert!((approx - d1).abs() < 1e-3, "{approx} vs {d1}");
        // W_∞ dominates W_2 dominates W_1.
        let d2 = w((&sc).into(), (&arc).into(), 2.0);
        let dinf = wasserstein((&sc).into(), (&arc).into(), Order::Infinity).unwrap();
        assert!(d1 <= d2 && d2 <= dinf + 1e-12);
    }

    #[test]
    fn cycles_approach_arcsine() {
        let arc = ReferenceLaw::arcsine();
        for m in [10usize, 53, 200] {
            let mu = cycle_spectral_measure(m).unwrap();
            let d = wasserstein((&mu).into(), (&arc).into(), Order::Infinity).unwrap();
            assert!(d <= cycle_arcsine_bound(m), "m={m} d={d}");
        }
    }
}
