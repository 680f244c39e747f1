//! Non-backtracking matrices `A_r`, the dart transition (Hashimoto) matrix,
//! unitary colors and the colored matrices `A_r^sigma`.
//!
//! On a `(q+1)`-regular graph the non-backtracking matrices satisfy
//! `A_0 = I`, `A_1 = A`, `A_2 = A^2 - (q+1) I` and
//! `A_r = A A_{r-1} - q A_{r-2}` for `r >= 3`; the same recurrence holds
//! blockwise for a unitary color. Both are checked here against
//! `q^{r/2} X_{r,q}(q^{-1/2} A)` evaluated independently in floating point.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::dense::{ComplexMatrix, FloatMatrix, IntegerMatrix, RealMatrix};
use crate::error::{Error, Result};
use crate::multigraph::MultiGraph;

/// Tolerance for unitarity of color blocks and Hermiticity of `A^sigma`.
pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// `A[i][j]` = number of darts from `i` to `j`; a loop adds 2 to the diagonal.
pub fn adjacency(g: &MultiGraph) -> IntegerMatrix {
    let mut a = IntegerMatrix::zeros(g.n_vertices());
    for d in 0..g.n_darts() {
        a[(g.origin(d), g.head(d))] += 1;
    }
    a
}

fn branching(g: &MultiGraph) -> Result<usize> {
    let degree = g.require_regular()?;
    if degree == 0 {
        return Err(Error::InvalidParameter("non-backtracking matrices need degree >= 1".into()));
    }
    Ok(degree - 1)
}

/// `[A_0, ..., A_{r_max}]` in exact integer arithmetic.
pub fn nb_matrix_sequence(g: &MultiGraph, r_max: usize) -> Result<Vec<IntegerMatrix>> {
    let q = branching(g)? as i128;
    let n = g.n_vertices();
    let a = adjacency(g);
    let mut seq = Vec::with_capacity(r_max + 1);
    seq.push(IntegerMatrix::identity(n));
    if r_max >= 1 {
        seq.push(a.clone());
    }
    for r in 2..=r_max {
        let back = if r == 2 { q + 1 } else { q };
        let next = a.checked_mul(&seq[r - 1])?.checked_add_scaled(-back, &seq[r - 2])?;
        seq.push(next);
    }
    Ok(seq)
}

/// `B[d][d'] = 1` iff `head(d) = origin(d')` and `d' != twin(d)`.
pub fn hashimoto_matrix(g: &MultiGraph) -> IntegerMatrix {
    let mut b = IntegerMatrix::zeros(g.n_darts());
    for d in 0..g.n_darts() {
        for &next in g.out_darts(g.head(d)) {
            if next != g.twin(d) {
                b[(d, next)] = 1;
            }
        }
    }
    b
}

/// `[0, Tr B, Tr B^2, ..., Tr B^{r_max}]`: circuit counts per length.
pub fn hashimoto_traces(g: &MultiGraph, r_max: usize) -> Result<Vec<i128>> {
    let b = hashimoto_matrix(g);
    let mut traces = vec![0i128; r_max + 1];
    let mut power = IntegerMatrix::identity(g.n_darts());
    for trace in traces.iter_mut().skip(1) {
        power = b.checked_mul(&power)?;
        *trace = power.checked_trace()?;
    }
    Ok(traces)
}

/// `[q^{r/2} X_{r,q}(q^{-1/2} M)]_{r = 0..=r_max}` from the Chebyshev
/// recurrence `X_{k+1}(S) = S X_k(S) - X_{k-1}(S)` on `S = q^{-1/2} M`.
fn polynomial_side<M: FloatMatrix>(m: &M, q: f64, r_max: usize) -> Vec<M> {
    let s = m.scaled(1.0 / libm::sqrt(q));
    let mut xs: Vec<M> = Vec::with_capacity(r_max + 1);
    xs.push(M::identity(m.order()));
    if r_max >= 1 {
        xs.push(s.clone());
    }
    for k in 2..=r_max {
        let next = s.mul(&xs[k - 1]).combine(1.0, -1.0, &xs[k - 2]);
        xs.push(next);
    }
    (0..=r_max)
        .map(|r| {
            let xrq = if r < 2 { xs[r].clone() } else { xs[r].combine(1.0, -1.0 / q, &xs[r - 2]) };
            xrq.scaled(libm::pow(q, r as f64 / 2.0))
        })
        .collect()
}

/// Per-`r` max entrywise deviation between the exact `A_r` and
/// `q^{r/2} X_{r,q}(q^{-1/2} A)` evaluated in floating point.
pub fn friedman_deviations(g: &MultiGraph, r_max: usize) -> Result<Vec<f64>> {
    let q = branching(g)?;
    if q == 0 {
        return Err(Error::InvalidParameter("the polynomial identity needs q >= 1".into()));
    }
    let exact = nb_matrix_sequence(g, r_max)?;
    let poly = polynomial_side(&adjacency(g).to_real(), q as f64, r_max);
    Ok(exact
        .iter()
        .zip(&poly)
        .map(|(a, p)| {
            a.as_slice().iter().zip(p.as_slice()).fold(0.0f64, |m, (&x, &y)| m.max((x as f64 - y).abs()))
        })
        .collect())
}

/// Largest deviation from [`friedman_deviations`] over `r <= r_max`.
pub fn verify_friedman_identity(g: &MultiGraph, r_max: usize) -> Result<f64> {
    Ok(friedman_deviations(g, r_max)?.into_iter().fold(0.0, f64::max))
}

/// One row of [`trace_identities_report`]: left sides are matrix traces,
/// right sides come from the exact walk and circuit counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceIdentityRow {
    pub r: usize,
    /// `Tr X_{r,q}(q^{-1/2} A)` and `q^{-r/2} f_r`.
    pub xrq: (f64, f64),
    /// `Tr X_r(q^{-1/2} A)` and `q^{-r/2} sum_{0<=k<=r/2} f_{r-2k}`.
    pub xr: (f64, f64),
    /// `Tr Y_r(q^{-1/2} A)` and `q^{-r/2} c_r - [r even] (q-1) q^{-r/2} |V|`.
    pub yr: (f64, f64),
}

impl TraceIdentityRow {
    pub fn max_deviation(&self) -> f64 {
        [self.xrq, self.xr, self.yr].iter().map(|(l, r)| (l - r).abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceIdentityReport {
    pub q: usize,
    pub rows: Vec<TraceIdentityRow>,
}

impl TraceIdentityReport {
    pub fn max_deviation(&self) -> f64 {
        self.rows.iter().map(TraceIdentityRow::max_deviation).fold(0.0, f64::max)
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.max_deviation() <= tolerance
    }
}

/// Checks the three trace identities linking Chebyshev-type polynomials of
/// `q^{-1/2} A` with closed non-backtracking walks and circuits, for
/// `1 <= r <= r_max`.
pub fn trace_identities_report(g: &MultiGraph, r_max: usize) -> Result<TraceIdentityReport> {
    let q = branching(g)?;
    if q == 0 {
        return Err(Error::InvalidParameter("trace identities need q >= 1".into()));
    }
    let f = nb_matrix_sequence(g, r_max)?
        .iter()
        .map(IntegerMatrix::checked_trace)
        .collect::<Result<Vec<_>>>()?;
    let c = hashimoto_traces(g, r_max)?;
    let qf = q as f64;
    let s = adjacency(g).to_real().scaled(1.0 / libm::sqrt(qf));
    let mut xs = vec![RealMatrix::identity(g.n_vertices())];
    if r_max >= 1 {
        xs.push(s.clone());
    }
    for k in 2..=r_max {
        let next = s.mul(&xs[k - 1]).combine(1.0, -1.0, &xs[k - 2]);
        xs.push(next);
    }
    let traces: Vec<f64> = xs.iter().map(RealMatrix::trace).collect();
    let n = g.n_vertices() as f64;
    let rows = (1..=r_max)
        .map(|r| {
            let scale = libm::pow(qf, -(r as f64) / 2.0);
            let prev = if r >= 2 { traces[r - 2] } else { 0.0 };
            let f_sum: i128 = (0..=r / 2).map(|k| f[r - 2 * k]).sum();
            let correction = if r % 2 == 0 { (qf - 1.0) * scale * n } else { 0.0 };
            TraceIdentityRow {
                r,
                xrq: (traces[r] - prev / qf, scale * f[r] as f64),
                xr: (traces[r], scale * f_sum as f64),
                yr: (traces[r] - prev, scale * c[r] as f64 - correction),
            }
        })
        .collect();
    Ok(TraceIdentityReport { q, rows })
}

/// Assignment of an `N x N` unitary matrix to every dart, with
/// `sigma(twin(d)) = sigma(d)^dagger`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColorAssignment {
    block_dim: usize,
    sigma: Vec<ComplexMatrix>,
}

impl ColorAssignment {
    /// Validates a per-dart assignment against `g`.
    pub fn new(g: &MultiGraph, block_dim: usize, sigma: Vec<ComplexMatrix>) -> Result<Self> {
        if sigma.len() != g.n_darts() {
            return Err(Error::MissingColor { expected: g.n_darts(), got: sigma.len() });
        }
        for (d, block) in sigma.iter().enumerate() {
            if block.order() != block_dim {
                return Err(Error::DimensionMismatch { expected: block_dim, got: block.order() });
            }
            let deviation = block.unitarity_deviation();
            if !(deviation <= UNITARY_TOLERANCE) {
                return Err(Error::NotUnitary { dart: d, deviation });
            }
            if sigma[d ^ 1] != block.adjoint() {
                return Err(Error::TwinMismatch { dart: d });
            }
        }
        Ok(Self { block_dim, sigma })
    }

    /// One block per undirected edge, placed on the edge's first dart; the
    /// second dart receives the adjoint.
    pub fn from_edge_blocks(g: &MultiGraph, block_dim: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        if blocks.len() != g.n_edges() {
            return Err(Error::MissingColor { expected: g.n_darts(), got: 2 * blocks.len() });
        }
        let sigma = blocks
            .into_iter()
            .flat_map(|b| {
                let adj = b.adjoint();
                [b, adj]
            })
            .collect();
        Self::new(g, block_dim, sigma)
    }

    /// Every dart colored by the `1 x 1` identity.
    pub fn trivial(g: &MultiGraph) -> Self {
        Self { block_dim: 1, sigma: vec![ComplexMatrix::identity(1); g.n_darts()] }
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn n_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn block(&self, dart: usize) -> &ComplexMatrix {
        &self.sigma[dart]
    }
}

/// `A^sigma`: Hermitian block matrix of order `N |V|`, block `(i, j)` being
/// the sum of the colors of darts from `i` to `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianBlockMatrix {
    base_order: usize,
    block_dim: usize,
    matrix: ComplexMatrix,
}

impl HermitianBlockMatrix {
    pub fn base_order(&self) -> usize {
        self.base_order
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

pub fn colored_adjacency(g: &MultiGraph, color: &ColorAssignment) -> Result<HermitianBlockMatrix> {
    if color.n_darts() != g.n_darts() {
        return Err(Error::MissingColor { expected: g.n_darts(), got: color.n_darts() });
    }
    let nb = color.block_dim;
    let mut m = ComplexMatrix::zeros(nb * g.n_vertices());
    for d in 0..g.n_darts() {
        let (i, j) = (g.origin(d), g.head(d));
        let block = color.block(d);
        for a in 0..nb {
            for b in 0..nb {
                m[(i * nb + a, j * nb + b)] += block[(a, b)];
            }
        }
    }
    let deviation = m.hermitian_deviation();
    if !(deviation <= UNITARY_TOLERANCE) {
        return Err(Error::NotHermitian { deviation });
    }
    if deviation > 0.0 {
        m = m.combine(0.5, 0.5, &m.adjoint());
    }
    Ok(HermitianBlockMatrix { base_order: g.n_vertices(), block_dim: nb, matrix: m })
}

/// Colored non-backtracking matrices together with their deviation from
/// `q^{r/2} X_{r,q}(q^{-1/2} A^sigma)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColoredNbSequence {
    pub q: usize,
    pub block_dim: usize,
    pub matrices: Vec<ComplexMatrix>,
    pub deviations: Vec<f64>,
}

impl ColoredNbSequence {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().copied().fold(0.0, f64::max)
    }

    /// `(1 / (N |V|)) Tr A_r^sigma`.
    pub fn normalized_trace(&self, r: usize) -> Complex64 {
        let m = &self.matrices[r];
        m.trace() / m.order() as f64
    }
}

pub fn colored_nb_sequence(g: &MultiGraph, color: &ColorAssignment, r_max: usize) -> Result<ColoredNbSequence> {
    let q = branching(g)?;
    if q == 0 {
        return Err(Error::InvalidParameter("colored identity needs q >= 1".into()));
    }
    let a = colored_adjacency(g, color)?.into_matrix();
    let order = a.order();
    let mut seq = vec![ComplexMatrix::identity(order)];
    if r_max >= 1 {
        seq.push(a.clone());
    }
    for r in 2..=r_max {
        let back = if r == 2 { q + 1 } else { q } as f64;
        let next = a.mul(&seq[r - 1]).combine(1.0, -back, &seq[r - 2]);
        seq.push(next);
    }
    let poly = polynomial_side(&a, q as f64, r_max);
    let deviations = seq.iter().zip(&poly).map(|(x, y)| x.max_abs_diff(y)).collect();
    Ok(ColoredNbSequence { q, block_dim: color.block_dim, matrices: seq, deviations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;

    #[test]
    fn adjacency_examples() {
        let c4 = adjacency(&graphs::cycle(4));
        assert_eq!(c4.row(0), &[0, 1, 0, 1]);
        assert!(c4.is_symmetric());
        let k4 = adjacency(&graphs::complete(4));
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(k4[(i, j)], i128::from(i != j));
            }
        }
        let lp = adjacency(&graphs::bouquet(1));
        assert_eq!(lp.as_slice(), &[2]);
    }

    #[test]
    fn nb_sequence_traces() {
        let k4 = nb_matrix_sequence(&graphs::complete(4), 3).unwrap();
        assert_eq!(k4[3].checked_trace().unwrap(), 24);
        let c4 = nb_matrix_sequence(&graphs::cycle(4), 4).unwrap();
        assert_eq!(c4[4].checked_trace().unwrap(), 8);
    }

    #[test]
    fn second_nb_matrix_is_square_minus_degree() {
        let g = graphs::petersen();
        let seq = nb_matrix_sequence(&g, 2).unwrap();
        let a = adjacency(&g);
        let lhs = seq[2].checked_add_scaled(3, &IntegerMatrix::identity(10)).unwrap();
        assert_eq!(lhs, a.checked_mul(&a).unwrap());
    }

    #[test]
    fn nb_matrices_are_symmetric_nonnegative_and_row_bounded() {
        let g = graphs::petersen();
        for (r, ar) in nb_matrix_sequence(&g, 10).unwrap().iter().enumerate() {
            assert!(ar.is_symmetric());
            assert!(ar.as_slice().iter().all(|&v| v >= 0));
            let bound = if r == 0 { 1 } else { 3 * 2i128.pow(r as u32 - 1) };
            assert!(ar.max_row_sum() <= bound);
        }
    }

    #[test]
    fn hashimoto_examples() {
        assert_eq!(hashimoto_traces(&graphs::cycle(4), 4).unwrap()[4], 8);
        assert_eq!(hashimoto_traces(&graphs::complete(4), 3).unwrap()[3], 24);
        let tree = crate::multigraph::MultiGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        assert!(hashimoto_traces(&tree, 8).unwrap().iter().all(|&c| c == 0));
        // On a cycle every dart has exactly one successor.
        let b = hashimoto_matrix(&graphs::cycle(4));
        assert!((0..8).all(|d| b.row(d).iter().sum::<i128>() == 1));
    }

    #[test]
    fn friedman_identity_examples() {
        assert!(verify_friedman_identity(&graphs::petersen(), 10).unwrap() < 1e-8);
        assert!(verify_friedman_identity(&graphs::cycle(6), 12).unwrap() < 1e-10);
        assert_eq!(friedman_deviations(&graphs::complete(4), 0).unwrap(), vec![0.0]);
    }

    #[test]
    fn trace_identities_examples() {
        let report = trace_identities_report(&graphs::complete(4), 8).unwrap();
        assert!(report.passes(1e-8), "{report:?}");
        let c4 = trace_identities_report(&graphs::cycle(4), 4).unwrap();
        assert!((c4.rows[3].yr.0 - 8.0).abs() < 1e-12);
        let pet = trace_identities_report(&graphs::petersen(), 3).unwrap();
        assert!(pet.rows[2].yr.0.abs() < 1e-12);
        assert!(pet.passes(1e-8));
    }

    #[test]
    fn trivial_color_reduces_to_plain_matrices() {
        let g = graphs::complete(4);
        let color = ColorAssignment::trivial(&g);
        let a = colored_adjacency(&g, &color).unwrap();
        assert_eq!(a.matrix(), &ComplexMatrix::from_real(&adjacency(&g).to_real()));
        let colored = colored_nb_sequence(&g, &color, 6).unwrap();
        for (c, e) in colored.matrices.iter().zip(nb_matrix_sequence(&g, 6).unwrap()) {
            assert_eq!(c, &ComplexMatrix::from_real(&e.to_real()));
        }
        assert!(colored.max_deviation() < 1e-10);
    }

    #[test]
    fn phase_on_single_edge_keeps_spectrum() {
        let g = graphs::path(2);
        for theta in [0.0, 0.7, 2.1] {
            let block = ComplexMatrix::from_row_major(1, vec![Complex64::from_polar(1.0, theta)]).unwrap();
            let color = ColorAssignment::from_edge_blocks(&g, 1, vec![block]).unwrap();
            let a = colored_adjacency(&g, &color).unwrap();
            let eig = crate::spectra::eigenvalues_hermitian(a.matrix()).unwrap();
            assert!((eig[0] + 1.0).abs() < 1e-12 && (eig[1] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn color_validation() {
        let g = graphs::path(2);
        let bad = ComplexMatrix::from_row_major(1, vec![Complex64::new(2.0, 0.0)]).unwrap();
        assert!(matches!(
            ColorAssignment::from_edge_blocks(&g, 1, vec![bad]),
            Err(Error::NotUnitary { .. })
        ));
        let i = Complex64::new(0.0, 1.0);
        let one = ComplexMatrix::from_row_major(1, vec![i]).unwrap();
        assert!(matches!(
            ColorAssignment::new(&g, 1, vec![one.clone(), one.clone()]),
            Err(Error::TwinMismatch { .. })
        ));
        assert!(matches!(ColorAssignment::new(&g, 1, vec![one]), Err(Error::MissingColor { .. })));
    }

    #[test]
    fn loop_colors_contribute_both_darts() {
        let g = graphs::bouquet(1);
        let block = ComplexMatrix::from_row_major(1, vec![Complex64::from_polar(1.0, 0.4)]).unwrap();
        let color = ColorAssignment::from_edge_blocks(&g, 1, vec![block]).unwrap();
        let a = colored_adjacency(&g, &color).unwrap();
        assert!((a.matrix()[(0, 0)].re - 2.0 * libm::cos(0.4)).abs() < 1e-15);
        assert!(a.matrix()[(0, 0)].im.abs() < 1e-15);
    }
}
