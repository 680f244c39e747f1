//! Empirical spectral measures of graphs and their moments.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::eigen::{eigenvalues_hermitian, eigenvalues_symmetric};
use super::laws::{LawKind, ReferenceLaw};
use super::quadrature::QuadratureConfig;
use crate::chebyshev::xrq_values;
use crate::error::{Error, Result};
use crate::multigraph::MultiGraph;
use crate::nbmatrix::{adjacency, colored_adjacency, ColorAssignment};

/// Uniform probability measure on finitely many real points, remembering the
/// branching value `q` used to normalize them.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpectralMeasure {
    points: Vec<f64>,
    q: f64,
}

impl DiscreteSpectralMeasure {
    /// Sorts `points`. `q` may be infinite for measures normalized against
    /// the semicircle.
    pub fn new(mut points: Vec<f64>, q: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("a spectral measure needs at least one point".to_string()));
        }
        if let Some(bad) = points.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite spectral point {bad}")));
        }
        if !(q > 0.0) {
            return Err(Error::InvalidParameter(format!("branching value {q} must be positive")));
        }
        points.sort_by(f64::total_cmp);
        Ok(Self { points, q })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn branching(&self) -> f64 {
        self.q
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.points.iter().map(|&x| f(x)).sum::<f64>() / self.len() as f64
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.points.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// Left-continuous quantile: the `k`-th smallest point on
    /// `(k/n, (k+1)/n]`.
    pub fn idf(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidParameter(format!("probability {p} is outside (0, 1]")));
        }
        let n = self.len();
        let k = (libm::ceil(p * n as f64) as usize).clamp(1, n) - 1;
        Ok(self.points[k])
    }

    /// `∫ X_{r,q'} dμ` for `r = 0..=r_max`.
    pub fn xrq_integrals(&self, r_max: usize, q: f64) -> Vec<f64> {
        let mut out = alloc::vec![0.0; r_max + 1];
        for &x in &self.points {
            for (o, v) in out.iter_mut().zip(xrq_values(r_max, q, x)) {
                *o += v;
            }
        }
        let n = self.len() as f64;
        out.iter_mut().for_each(|o| *o /= n);
        out
    }
}

fn branching_of(g: &MultiGraph) -> Result<usize> {
    let d = g.require_regular()?;
    if d < 2 {
        return Err(Error::InvalidParameter(format!("degree {d} leaves no branching")));
    }
    Ok(d - 1)
}

/// Eigenvalues of the adjacency matrix of a `(q + 1)`-regular graph divided
/// by `√q`.
pub fn spectral_measure(g: &MultiGraph) -> Result<DiscreteSpectralMeasure> {
    let q = branching_of(g)? as f64;
    let scale = 1.0 / libm::sqrt(q);
    let eig = eigenvalues_symmetric(&adjacency(g).to_real())?;
    DiscreteSpectralMeasure::new(eig.into_iter().map(|v| v * scale).collect(), q)
}

/// Eigenvalues of the colored adjacency matrix divided by `√q`; the measure
/// has `|V| * N` atoms.
pub fn colored_spectral_measure(g: &MultiGraph, color: &ColorAssignment) -> Result<DiscreteSpectralMeasure> {
    let q = branching_of(g)? as f64;
    let scale = 1.0 / libm::sqrt(q);
    let eig = eigenvalues_hermitian(colored_adjacency(g, color)?.matrix())?;
    DiscreteSpectralMeasure::new(eig.into_iter().map(|v| v * scale).collect(), q)
}

/// Spectral measure of the cycle `C_m` from the closed form
/// `2 cos(2πk/m)`, with `q = 1`.
pub fn cycle_spectral_measure(m: usize) -> Result<DiscreteSpectralMeasure> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {m} is below 3")));
    }
    let points = (0..m).map(|k| 2.0 * libm::cos(2.0 * PI * k as f64 / m as f64)).collect();
    DiscreteSpectralMeasure::new(points, 1.0)
}

/// Step formula for the IDF of `μ(C_m)` at `p ∈ (0, 1]`, written out per
/// parity. For even `m` the level `-2cos(2kπ/m)` holds on
/// `((2k-1)/m, (2k+1)/m)`. For odd `m` the atoms `-2cos((2k+1)π/m)` are
/// double, so the level holds on `(2k/m, (2k+2)/m)`, and the simple atom `2`
/// fills the last `1/m`. Breakpoints take the left-continuous value.
pub fn cycle_idf(m: usize, p: f64) -> Result<f64> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {m} is below 3")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("probability {p} is outside (0, 1]")));
    }
    let mf = m as f64;
    // Index of the atom (in sorted order) that owns p.
    let slot = (libm::ceil(p * mf) as usize).clamp(1, m) - 1;
    let angle = if m % 2 == 0 {
        // Atom 0 is -2; atoms 2k-1, 2k share level k.
        2.0 * PI * slot.div_ceil(2) as f64 / mf
    } else if slot == m - 1 {
        return Ok(2.0);
    } else {
        (2 * (slot / 2) + 1) as f64 * PI / mf
    };
    Ok(-2.0 * libm::cos(angle))
}

/// `n` atoms at the midpoint quantiles `F^{-1}((k + 1/2)/n)` of a law.
pub fn quantile_discretization(law: &ReferenceLaw, n: usize) -> Result<DiscreteSpectralMeasure> {
    let points = (0..n)
        .map(|k| law.idf((k as f64 + 0.5) / n as f64))
        .collect::<Result<Vec<_>>>()?;
    DiscreteSpectralMeasure::new(points, law.kind().branching())
}

/// Residuals `∫ P_r dμ - ∫ P_r dν` for `r = 1..=r_max`, where `ν` is the
/// target law and `P_r` the polynomial family that law is tested with:
/// `X_{r,q}` against Kesten–McKay, `Y_r` against arcsine and semicircle.
/// Entry `r - 1` holds the residual for `r`.
pub fn moment_criterion_report(
    mu: &DiscreteSpectralMeasure,
    law: &ReferenceLaw,
    r_max: usize,
    quad: &QuadratureConfig,
) -> Result<Vec<f64>> {
    let family_q = match law.kind() {
        LawKind::KestenMcKay { q } => {
            if (mu.branching() - q).abs() > 1e-12 * q {
                return Err(Error::NormalizationMismatch {
                    measure_q: mu.branching(),
                    target: law.kind().to_string(),
                });
            }
            q
        }
        LawKind::Arcsine => {
            if mu.branching() != 1.0 {
                return Err(Error::NormalizationMismatch {
                    measure_q: mu.branching(),
                    target: law.kind().to_string(),
                });
            }
            1.0
        }
        LawKind::Semicircle => 1.0,
    };
    let empirical = mu.xrq_integrals(r_max, family_q);
    let reference = law.xrq_integrals(r_max, family_q, quad);
    Ok((1..=r_max).map(|r| empirical[r] - reference[r]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;

    #[test]
    fn petersen_measure() {
        let mu = spectral_measure(&graphs::petersen()).unwrap();
        assert_eq!(mu.len(), 10);
        assert_eq!(mu.branching(), 2.0);
        let s = libm::sqrt(2.0);
        assert!((mu.points()[0] + 2.0 / s).abs() < 1e-12);
        assert!((mu.points()[9] - 3.0 / s).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(spectral_measure(&graphs::path(4)), Err(Error::NotRegular { .. })));
        let single_edge = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(spectral_measure(&single_edge).is_err());
    }

    #[test]
    fn cycle_closed_form_matches_eigensolver() {
        for m in [3usize, 4, 7, 10] {
            let closed = cycle_spectral_measure(m).unwrap();
            let solved = spectral_measure(&graphs::cycle(m)).unwrap();
            for (a, b) in closed.points().iter().zip(solved.points()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        assert!(cycle_spectral_measure(2).is_err());
    }

    #[test]
    fn cycle_step_formula_matches_sorted_atoms() {
        for m in [3usize, 4, 5, 10, 53, 200] {
            let mu = cycle_spectral_measure(m).unwrap();
            for i in 1..=4000 {
                let p = i as f64 / 4000.0;
                assert!((mu.idf(p).unwrap() - cycle_idf(m, p).unwrap()).abs() < 1e-10, "m={m} p={p}");
            }
        }
        // First odd plateau is two atoms wide.
        assert_eq!(cycle_idf(5, 0.3).unwrap(), -2.0 * libm::cos(PI / 5.0));
    }

    #[test]
    fn discrete_quantile_is_left_continuous() {
        let mu = DiscreteSpectralMeasure::new(alloc::vec![3.0, 1.0, 2.0, 4.0], 2.0).unwrap();
        assert_eq!(mu.idf(0.25).unwrap(), 1.0);
        assert_eq!(mu.idf(0.2500001).unwrap(), 2.0);
        assert_eq!(mu.idf(1.0).unwrap(), 4.0);
        assert!(mu.idf(0.0).is_err());
        assert_eq!(mu.cdf(2.0), 0.5);
        assert_eq!(mu.cdf(1.5), 0.25);
    }

    #[test]
    fn constructor_validates() {
        assert!(DiscreteSpectralMeasure::new(alloc::vec![], 1.0).is_err());
        assert!(DiscreteSpectralMeasure::new(alloc::vec![f64::NAN], 1.0).is_err());
        assert!(DiscreteSpectralMeasure::new(alloc::vec![0.0], 0.0).is_err());
        assert!(DiscreteSpectralMeasure::new(alloc::vec![0.0], f64::INFINITY).is_ok());
    }

    #[test]
    fn moment_criterion_on_high_girth_graph() {
        // The Petersen graph has girth 5, so X_{r,2} integrates exactly like
        // Kesten–McKay for r < 5 and the first residual appears at r = 5.
        let quad = QuadratureConfig::default();
        let mu = spectral_measure(&graphs::petersen()).unwrap();
        let km = ReferenceLaw::kesten_mckay(2.0).unwrap();
        let res = moment_criterion_report(&mu, &km, 6, &quad).unwrap();
        assert!(res[..4].iter().all(|v| v.abs() < 1e-12), "{res:?}");
        // ∫X_{5,2} dμ = 2^{-5/2} f_5 / |V| = 120 / (10 * 2^{5/2}).
        assert!((res[4] - 12.0 / libm::pow(2.0, 2.5)).abs() < 1e-10);

        let wrong = ReferenceLaw::kesten_mckay(3.0).unwrap();
        assert!(matches!(
            moment_criterion_report(&mu, &wrong, 4, &quad),
            Err(Error::NormalizationMismatch { .. })
        ));
        assert!(moment_criterion_report(&mu, &ReferenceLaw::arcsine(), 4, &quad).is_err());
        assert!(moment_criterion_report(&mu, &ReferenceLaw::semicircle(), 4, &quad).is_ok());
    }

    #[test]
    fn cycle_moments_against_arcsine() {
        // Y_r(2 cos θ) = 2 cos rθ averages to zero over the m-th roots of unity
        // unless m divides r.
        let quad = QuadratureConfig::default();
        let mu = cycle_spectral_measure(7).unwrap();
        let res = moment_criterion_report(&mu, &ReferenceLaw::arcsine(), 8, &quad).unwrap();
        for (i, v) in res.iter().enumerate() {
            let want = if i + 1 == 7 { 2.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-10, "r={} {v}", i + 1);
        }
    }

    #[test]
    fn quantile_discretization_has_law_moments() {
        let quad = QuadratureConfig::default();
        let law = ReferenceLaw::semicircle();
        let mu = quantile_discretization(&law, 2000).unwrap();
        let res = moment_criterion_report(&mu, &law, 6, &quad).unwrap();
        assert!(res.iter().all(|v| v.abs() < 1e-3), "{res:?}");
    }
}
