//! Reference laws on `[-2, 2]`: Kesten–McKay, arcsine and semicircle.
//!
//! Everything is computed in the angle `x = 2 cos θ`. The pushed-forward
//! densities are bounded and smooth in `θ`, so composite Gauss panels give the
//! distribution function to near machine precision, and the quantile function
//! is found by bisection in `θ`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use super::quadrature::{GaussLegendre, QuadratureConfig, DEFAULT_NODE_COUNT};
use crate::chebyshev::xrq_values;
use crate::error::{Error, Result};

const PANEL_NODES: usize = 16;
const BISECTION_STEPS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LawKind {
    /// Kesten–McKay law of a `(q + 1)`-regular tree, scaled by `q^{-1/2}`.
    KestenMcKay { q: f64 },
    Arcsine,
    Semicircle,
}

impl LawKind {
    /// The branching value whose normalization the law matches. The arcsine
    /// law is the `q = 1` member of the family and the semicircle the limit
    /// `q -> ∞`.
    pub fn branching(self) -> f64 {
        match self {
            LawKind::KestenMcKay { q } => q,
            LawKind::Arcsine => 1.0,
            LawKind::Semicircle => f64::INFINITY,
        }
    }
}

impl fmt::Display for LawKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawKind::KestenMcKay { q } => write!(f, "kesten-mckay(q={q})"),
            LawKind::Arcsine => f.write_str("arcsine"),
            LawKind::Semicircle => f.write_str("semicircle"),
        }
    }
}

/// A reference law with a precomputed table of tail masses.
#[derive(Debug, Clone)]
pub struct ReferenceLaw {
    kind: LawKind,
    panel_width: f64,
    /// `tails[i] = ∫_{θ_i}^{π}` of the angular density, `θ_i = i * panel_width`.
    tails: Vec<f64>,
    rule: GaussLegendre,
}

impl ReferenceLaw {
    pub fn new(kind: LawKind) -> Result<Self> {
        Self::with_node_count(kind, DEFAULT_NODE_COUNT)
    }

    pub fn kesten_mckay(q: f64) -> Result<Self> {
        Self::new(LawKind::KestenMcKay { q })
    }

    pub fn arcsine() -> Self {
        Self::new(LawKind::Arcsine).expect("arcsine has no parameters")
    }

    pub fn semicircle() -> Self {
        Self::new(LawKind::Semicircle).expect("semicircle has no parameters")
    }

    /// Uses `node_count / 16` panels of 16 Gauss nodes for the distribution
    /// function table.
    pub fn with_quadrature(kind: LawKind, quad: &QuadratureConfig) -> Result<Self> {
        Self::with_node_count(kind, quad.node_count())
    }

    fn with_node_count(kind: LawKind, node_count: usize) -> Result<Self> {
        if let LawKind::KestenMcKay { q } = kind {
            if !(q > 1.0 && q.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "Kesten-McKay law needs a finite q > 1, got {q}"
                )));
            }
        }
        let panels = (node_count / PANEL_NODES).max(4);
        let mut law = Self {
            kind,
            panel_width: PI / panels as f64,
            tails: vec![0.0; panels + 1],
            rule: GaussLegendre::new(PANEL_NODES),
        };
        for i in (0..panels).rev() {
            let a = i as f64 * law.panel_width;
            law.tails[i] = law.tails[i + 1] + law.angular_integral(a, a + law.panel_width);
        }
        Ok(law)
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    /// Density with respect to Lebesgue measure, zero off `[-2, 2]`.
    pub fn density(&self, x: f64) -> f64 {
        if !(-2.0..=2.0).contains(&x) {
            return 0.0;
        }
        let s = 4.0 - x * x;
        match self.kind {
            LawKind::KestenMcKay { q } => {
                let a2 = q + 2.0 + 1.0 / q;
                (q + 1.0) * libm::sqrt(s) / (2.0 * PI * (a2 - x * x))
            }
            LawKind::Arcsine => 1.0 / (PI * libm::sqrt(s)),
            LawKind::Semicircle => libm::sqrt(s) / (2.0 * PI),
        }
    }

    /// Density of the law pulled back to `θ ∈ [0, π]`.
    pub fn angular_density(&self, theta: f64) -> f64 {
        let s = libm::sin(theta);
        match self.kind {
            LawKind::KestenMcKay { q } => {
                let c = libm::cos(theta);
                let a2 = q + 2.0 + 1.0 / q;
                2.0 * (q + 1.0) * s * s / (PI * (a2 - 4.0 * c * c))
            }
            LawKind::Arcsine => 1.0 / PI,
            LawKind::Semicircle => 2.0 * s * s / PI,
        }
    }

    fn angular_integral(&self, a: f64, b: f64) -> f64 {
        self.rule.integrate(a, b, |t| self.angular_density(t))
    }

    /// `F(2 cos θ)`, the mass of `[-2, 2 cos θ]`.
    fn cdf_angle(&self, theta: f64) -> f64 {
        let panels = self.tails.len() - 1;
        let j = ((theta / self.panel_width) as usize).min(panels - 1);
        let end = (j + 1) as f64 * self.panel_width;
        (self.tails[j + 1] + self.angular_integral(theta, end)).clamp(0.0, 1.0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= -2.0 {
            0.0
        } else if x >= 2.0 {
            1.0
        } else {
            self.cdf_angle(libm::acos(0.5 * x))
        }
    }

    /// `F^{-1}(p)` for `p ∈ (0, 1)`. The arcsine law uses its closed form.
    pub fn idf(&self, p: f64) -> Result<f64> {
        check_probability(p)?;
        Ok(match self.kind {
            LawKind::Arcsine => -2.0 * libm::cos(PI * p),
            _ => 2.0 * libm::cos(self.bisect_angle(p)),
        })
    }

    /// `F^{-1}(p)` by bisection on the tabulated distribution function, for
    /// every law including the arcsine.
    pub fn idf_numeric(&self, p: f64) -> Result<f64> {
        check_probability(p)?;
        Ok(2.0 * libm::cos(self.bisect_angle(p)))
    }

    /// The angle `θ` with `2 cos θ = F^{-1}(p)`, extended by `π` at `p = 0`
    /// and `0` at `p = 1`. Working with the angle keeps full relative
    /// precision near the edges of the support.
    pub(crate) fn quantile_angle(&self, p: f64) -> f64 {
        if p <= 0.0 {
            PI
        } else if p >= 1.0 {
            0.0
        } else if self.kind == LawKind::Arcsine {
            PI * (1.0 - p)
        } else {
            self.bisect_angle(p)
        }
    }

    fn bisect_angle(&self, p: f64) -> f64 {
        // tails is decreasing; find the panel with tails[j + 1] <= p <= tails[j].
        let j = self.tails.partition_point(|&t| t > p).saturating_sub(1).min(self.tails.len() - 2);
        let (mut lo, mut hi) = (j as f64 * self.panel_width, (j + 1) as f64 * self.panel_width);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.cdf_angle(mid) > p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `∫ f dμ` by the angular rule of `quad`.
    pub fn integrate(&self, quad: &QuadratureConfig, mut f: impl FnMut(f64) -> f64) -> f64 {
        quad.angular_nodes()
            .map(|(t, w)| w * self.angular_density(t) * f(2.0 * libm::cos(t)))
            .sum()
    }

    /// `∫ X_{r,q} dμ` for `r = 0..=r_max` with the given `q`.
    pub fn xrq_integrals(&self, r_max: usize, q: f64, quad: &QuadratureConfig) -> Vec<f64> {
        let mut out = vec![0.0; r_max + 1];
        for (t, w) in quad.angular_nodes() {
            let weight = w * self.angular_density(t);
            for (o, v) in out.iter_mut().zip(xrq_values(r_max, q, 2.0 * libm::cos(t))) {
                *o += weight * v;
            }
        }
        out
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("probability {p} is outside (0, 1)")))
    }
}

/// Gram matrix `∫ X_{m,q} X_{n,q} dμ` for `m, n <= n_max`, where `q` is the
/// branching value of the law. The polynomials are orthogonal with squared
/// norms `1` for degree zero and `1 + 1/q` otherwise.
pub fn orthogonality_gram(law: &ReferenceLaw, n_max: usize, quad: &QuadratureConfig) -> Vec<Vec<f64>> {
    let q = law.kind().branching();
    let mut gram = vec![vec![0.0; n_max + 1]; n_max + 1];
    for (t, w) in quad.angular_nodes() {
        let weight = w * law.angular_density(t);
        let values = xrq_values(n_max, q, 2.0 * libm::cos(t));
        for (m, row) in gram.iter_mut().enumerate() {
            for (n, g) in row.iter_mut().enumerate() {
                *g += weight * values[m] * values[n];
            }
        }
    }
    gram
}

/// Largest deviation of [`orthogonality_gram`] from its exact value.
pub fn orthogonality_deviation(law: &ReferenceLaw, n_max: usize, quad: &QuadratureConfig) -> f64 {
    let q = law.kind().branching();
    let gram = orthogonality_gram(law, n_max, quad);
    let mut worst = 0.0f64;
    for (m, row) in gram.iter().enumerate() {
        for (n, &g) in row.iter().enumerate() {
            let exact = match (m, n) {
                (0, 0) => 1.0,
                _ if m == n => 1.0 + 1.0 / q,
                _ => 0.0,
            };
            worst = worst.max((g - exact).abs());
        }
    }
    worst
}

/// `sup |ρ_q - ρ_∞|` sampled on `grid_points` equally spaced points of
/// `[-2, 2]`.
pub fn density_gap(q: f64, grid_points: usize) -> Result<f64> {
    let km = ReferenceLaw::kesten_mckay(q)?;
    let sc = ReferenceLaw::semicircle();
    let n = grid_points.max(2);
    Ok((0..n)
        .map(|i| -2.0 + 4.0 * i as f64 / (n - 1) as f64)
        .map(|x| (km.density(x) - sc.density(x)).abs())
        .fold(0.0, f64::max))
}

/// `∫ |ρ_a - ρ_b| dx`, computed in the angle.
pub fn density_l1_distance(a: &ReferenceLaw, b: &ReferenceLaw, quad: &QuadratureConfig) -> f64 {
    quad.angular_nodes()
        .map(|(t, w)| w * (a.angular_density(t) - b.angular_density(t)).abs())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn laws() -> Vec<ReferenceLaw> {
        let mut v: Vec<_> = [2.0, 3.0, 5.0, 50.0]
            .iter()
            .map(|&q| ReferenceLaw::kesten_mckay(q).unwrap())
            .collect();
        v.push(ReferenceLaw::arcsine());
        v.push(ReferenceLaw::semicircle());
        v
    }

    #[test]
    fn rejects_bad_parameters() {
        for q in [1.0, 0.5, -3.0, f64::NAN, f64::INFINITY] {
            assert!(ReferenceLaw::kesten_mckay(q).is_err(), "q={q}");
        }
        let law = ReferenceLaw::semicircle();
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(law.idf(p).is_err());
        }
    }

    #[test]
    fn densities_vanish_off_support_and_integrate_to_one() {
        let quad = quad();
        for law in laws() {
            assert_eq!(law.density(2.5), 0.0);
            assert_eq!(law.density(-2.0001), 0.0);
            let mass = law.integrate(&quad, |_| 1.0);
            assert!((mass - 1.0).abs() < 1e-12, "{} {mass}", law.kind());
            assert!((law.cdf(2.0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn angular_and_linear_densities_agree() {
        for law in laws() {
            for &t in &[0.3, 1.0, 1.7, 2.9] {
                let x = 2.0 * libm::cos(t);
                let pulled = law.density(x) * 2.0 * libm::sin(t);
                assert!((pulled - law.angular_density(t)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn semicircle_cdf_matches_closed_form() {
        let law = ReferenceLaw::semicircle();
        for i in 0..=40 {
            let x = -2.0 + 0.1 * i as f64;
            let exact = 0.5 + x * libm::sqrt((4.0 - x * x).max(0.0)) / (4.0 * PI)
                + libm::asin(0.5 * x) / PI;
            assert!((law.cdf(x) - exact).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn arcsine_numeric_quantile_matches_closed_form() {
        let law = ReferenceLaw::arcsine();
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let closed = law.idf(p).unwrap();
            assert!((closed + 2.0 * libm::cos(PI * p)).abs() < 1e-15);
            assert!((law.idf_numeric(p).unwrap() - closed).abs() < 1e-12, "p={p}");
        }
    }

    #[test]
    fn quantile_inverts_cdf() {
        for law in laws() {
            for &p in &[0.01, 0.25, 0.5, 0.8, 0.99] {
                let x = law.idf_numeric(p).unwrap();
                assert!((law.cdf(x) - p).abs() < 1e-12, "{} p={p}", law.kind());
            }
            // Near the edges x loses precision; the angle does not.
            for &p in &[1e-12, 1e-9, 1e-6, 1.0 - 1e-9] {
                let theta = law.quantile_angle(p);
                assert!((law.cdf_angle(theta) - p).abs() < 1e-14, "{} p={p}", law.kind());
            }
        }
    }

    #[test]
    fn laws_are_symmetric() {
        for law in laws() {
            assert!(law.idf(0.5).unwrap().abs() < 1e-12);
            let (a, b) = (law.idf(0.2).unwrap(), law.idf(0.8).unwrap());
            assert!((a + b).abs() < 1e-12);
        }
    }

    #[test]
    fn moments_of_x_polynomials() {
        let quad = quad();
        for law in laws() {
            let q = law.kind().branching();
            // Integrals of X_r are the moments q^{-r/2} for even r.
            let xs = law.xrq_integrals(12, f64::INFINITY, &quad);
            for (r, v) in xs.iter().enumerate() {
                let exact = if r % 2 == 0 { libm::pow(q, -(r as f64) / 2.0) } else { 0.0 };
                assert!((v - exact).abs() < 1e-12, "{} r={r}: {v}", law.kind());
            }
            // X_{r,q} integrates to zero for every r >= 1.
            let xrq = law.xrq_integrals(12, q, &quad);
            assert!((xrq[0] - 1.0).abs() < 1e-12);
            assert!(xrq[1..].iter().all(|v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn y_polynomials_against_semicircle() {
        // Y_2 = x^2 - 2 has mean -1; the rest vanish.
        let ys = ReferenceLaw::semicircle().xrq_integrals(12, 1.0, &quad());
        assert!((ys[2] + 1.0).abs() < 1e-12);
        for (r, v) in ys.iter().enumerate().skip(1) {
            if r != 2 {
                assert!(v.abs() < 1e-12, "r={r}");
            }
        }
    }

    #[test]
    fn orthogonality() {
        let quad = quad();
        for law in laws() {
            assert!(orthogonality_deviation(&law, 10, &quad) < 1e-12, "{}", law.kind());
        }
        let gram = orthogonality_gram(&ReferenceLaw::kesten_mckay(2.0).unwrap(), 3, &quad);
        assert!((gram[2][2] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn density_gap_bound() {
        for q in [3.0, 10.0, 50.0] {
            let gap = density_gap(q, 4001).unwrap();
            assert!(gap <= 2.0 / (q - 2.0), "q={q} gap={gap}");
            assert!(gap > 0.0);
        }
    }

    #[test]
    fn l1_distance_shrinks_with_q() {
        let quad = quad();
        let sc = ReferenceLaw::semicircle();
        let d: Vec<f64> = [3.0, 10.0, 50.0]
            .iter()
            .map(|&q| density_l1_distance(&ReferenceLaw::kesten_mckay(q).unwrap(), &sc, &quad))
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2]);
        assert!(density_l1_distance(&sc, &sc, &quad) == 0.0);
    }
}
