//! Seeded samplers: uniform simple regular graphs, random lifts, permutation
//! and Haar-unitary colors, and Monte-Carlo estimators built on them.
//!
//! Every sampler takes an explicit RNG. [`rng_stream`] gives independent,
//! reproducible streams keyed by `(seed, stream)`, so a trial can be rerun on
//! its own.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dense::ComplexMatrix;
use crate::error::{Error, Result};
use crate::multigraph::MultiGraph;
use crate::nbmatrix::ColorAssignment;

/// Default number of pairing attempts before [`sample_regular_graph`] gives
/// up.
pub const DEFAULT_RETRY_BUDGET: u64 = 100_000_000;
/// Largest degree the simple-graph sampler accepts.
pub const MAX_SAMPLER_DEGREE: usize = 8;

/// ChaCha8 generator for stream `stream` of `seed`.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A sampled graph with the number of pairing attempts it took.
#[derive(Debug, Clone)]
pub struct RegularSample {
    pub graph: MultiGraph,
    pub attempts: u64,
}

/// Uniform simple `degree`-regular graph on `n` vertices.
///
/// Stubs are paired uniformly at random and the whole pairing is discarded
/// as soon as it creates a loop or a repeated edge. Abandoning a pairing
/// early rejects exactly the pairings a full rejection sampler would reject,
/// so accepted graphs are uniform over simple graphs.
pub fn sample_regular_graph<R: Rng + ?Sized>(
    n: usize,
    degree: usize,
    rng: &mut R,
    retry_budget: u64,
) -> Result<RegularSample> {
    if (n * degree) % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n * degree = {n} * {degree} is odd")));
    }
    if degree >= n.max(1) && degree > 0 {
        return Err(Error::InvalidParameter(format!(
            "no simple {degree}-regular graph on {n} vertices"
        )));
    }
    if degree > MAX_SAMPLER_DEGREE {
        return Err(Error::CapExceeded { what: "sampler degree", value: degree, cap: MAX_SAMPLER_DEGREE });
    }
    if n > u32::MAX as usize / degree.max(1) {
        return Err(Error::InvalidParameter(format!("{n} vertices is too many to sample")));
    }
    let n_stubs = n * degree;
    let initial: Vec<u32> = (0..n_stubs).map(|i| (i / degree.max(1)) as u32).collect();
    let mut pool = initial.clone();
    let mut refill = false;
    let mut taken = vec![0u8; n];
    let mut stamps = vec![0u32; n];
    let mut stamp = 0u32;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n_stubs / 2);
    // The inner loop is dominated by random draws and runs on a fast
    // generator seeded from the caller's stream.
    let mut fast = SmallRng::seed_from_u64(rng.random());
    for attempt in 1..=retry_budget {
        if refill {
            pool.copy_from_slice(&initial);
            refill = false;
        }
        taken.fill(0);
        edges.clear();
        if stamp > u32::MAX - n as u32 {
            stamps.fill(0);
            stamp = 0;
        }
        let mut state = PairingState { pool: &mut pool, taken: &mut taken, stamps: &mut stamps, stamp, edges: &mut edges };
        let accepted = state.run(degree, &mut refill, &mut fast);
        stamp = state.stamp;
        if accepted {
            let graph = MultiGraph::from_edges(n, &edges)?;
            return Ok(RegularSample { graph, attempts: attempt });
        }
    }
    Err(Error::RetryBudgetExceeded { attempts: retry_budget })
}

struct PairingState<'a> {
    pool: &'a mut [u32],
    taken: &'a mut [u8],
    /// `stamps[w] == stamp` marks `w` as a partner of the current vertex.
    stamps: &'a mut [u32],
    stamp: u32,
    edges: &'a mut Vec<(usize, usize)>,
}

impl PairingState<'_> {
    /// One attempt of the pairing model, returning `false` at the first loop
    /// or repeated edge.
    ///
    /// Vertices are processed in order and each remaining stub of the current
    /// vertex `v` is matched to a uniformly chosen other unpaired stub. Any
    /// such adaptive order yields a uniform pairing. Every edge is created
    /// while its smaller endpoint is current, so a repeated edge shows up
    /// among the partners of `v` alone.
    ///
    /// `pool` holds vertex labels. Matched partners are swapped past `len`,
    /// which keeps the array a permutation of all stubs. The current vertex's
    /// own stubs are not removed: labels below `v` are such leftovers
    /// ("ghosts") and are redrawn, and a draw of label `v` is redrawn with
    /// the probability that it is a ghost or the stub being matched.
    fn run(&mut self, degree: usize, refill: &mut bool, rng: &mut SmallRng) -> bool {
        let n = self.taken.len();
        let mut len = self.pool.len();
        let mut ghosts = 0usize;
        for v in 0..n {
            let vl = v as u32;
            self.stamp += 1;
            let mut remaining = degree - self.taken[v] as usize;
            let mut own_ghosts = 0usize;
            while remaining > 0 {
                if 2 * ghosts > len {
                    // Drop the ghosts so draws stay cheap near the end.
                    let mut kept = 0;
                    for i in 0..len {
                        let w = self.pool[i];
                        if w > vl {
                            self.pool[kept] = w;
                            kept += 1;
                        }
                    }
                    self.pool[kept..kept + remaining].fill(vl);
                    len = kept + remaining;
                    ghosts = 0;
                    own_ghosts = 0;
                    *refill = true;
                }
                let (j, w) = loop {
                    let j = rng.random_range(0..len as u32) as usize;
                    let w = self.pool[j];
                    if w > vl {
                        break (j, w);
                    }
                    if w == vl && rng.random_range(0..remaining + own_ghosts) > own_ghosts {
                        return false;
                    }
                };
                if self.stamps[w as usize] == self.stamp {
                    return false;
                }
                self.stamps[w as usize] = self.stamp;
                self.pool.swap(j, len - 1);
                len -= 1;
                self.taken[w as usize] += 1;
                self.edges.push((v, w as usize));
                remaining -= 1;
                own_ghosts += 1;
                ghosts += 1;
            }
        }
        true
    }
}

/// An `N`-lift of a base graph: one permutation of `0..N` per base edge.
/// Lifted vertex `(v, i)` has index `v * N + i`, and base edge `(u, v)` with
/// permutation `π` lifts to the edges `((u, i), (v, π(i)))`.
#[derive(Debug, Clone)]
pub struct LiftSpec {
    pub base: MultiGraph,
    pub sheets: usize,
    pub permutations: Vec<Vec<usize>>,
    pub graph: MultiGraph,
}

impl LiftSpec {
    pub fn new(base: &MultiGraph, sheets: usize, permutations: Vec<Vec<usize>>) -> Result<Self> {
        if sheets == 0 {
            return Err(Error::InvalidParameter("a lift needs at least one sheet".into()));
        }
        if base.n_edges() == 0 {
            return Err(Error::InvalidParameter("the base graph has no edges".into()));
        }
        if permutations.len() != base.n_edges() {
            return Err(Error::DimensionMismatch { expected: base.n_edges(), got: permutations.len() });
        }
        for pi in &permutations {
            let mut seen = vec![false; sheets];
            if pi.len() != sheets || !pi.iter().all(|&j| j < sheets && !core::mem::replace(&mut seen[j], true)) {
                return Err(Error::InvalidParameter(format!("{pi:?} is not a permutation of 0..{sheets}")));
            }
        }
        let mut edges = Vec::with_capacity(base.n_edges() * sheets);
        for ((u, v), pi) in base.edges().zip(&permutations) {
            for (i, &j) in pi.iter().enumerate() {
                edges.push((u * sheets + i, v * sheets + j));
            }
        }
        let graph = MultiGraph::from_edges(base.n_vertices() * sheets, &edges)?;
        Ok(Self { base: base.clone(), sheets, permutations, graph })
    }
}

fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Uniform random lift: independent uniform permutations on every edge.
pub fn sample_lift<R: Rng + ?Sized>(base: &MultiGraph, sheets: usize, rng: &mut R) -> Result<LiftSpec> {
    let permutations = (0..base.n_edges()).map(|_| random_permutation(sheets, rng)).collect();
    LiftSpec::new(base, sheets, permutations)
}

/// Permutation-matrix color of a lift: dart `2e` carries `P_e` with
/// `P_e[i][π_e(i)] = 1` and its twin carries `P_e^T`. The colored adjacency
/// matrix is then the adjacency matrix of the lifted graph.
pub fn permutation_color(lift: &LiftSpec) -> Result<ColorAssignment> {
    let n = lift.sheets;
    let blocks = lift
        .permutations
        .iter()
        .map(|pi| {
            let mut m = ComplexMatrix::zeros(n);
            for (i, &j) in pi.iter().enumerate() {
                m[(i, j)] = Complex64::new(1.0, 0.0);
            }
            m
        })
        .collect();
    ColorAssignment::from_edge_blocks(&lift.base, n, blocks)
}

/// Haar-distributed unitary of order `n`: Gram–Schmidt on a complex Gaussian
/// matrix. Normalizing each column to a positive real diagonal in `R` is what
/// makes the law exactly Haar.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for k in 0..n {
        // Two passes of modified Gram–Schmidt keep the columns orthogonal to
        // working precision.
        for _ in 0..2 {
            for j in 0..k {
                let proj: Complex64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a.conj() * b).sum();
                let (done, rest) = cols.split_at_mut(k);
                for (x, y) in rest[0].iter_mut().zip(&done[j]) {
                    *x -= proj * y;
                }
            }
        }
        let norm = libm::sqrt(cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>());
        cols[k].iter_mut().for_each(|z| *z /= norm);
    }
    let mut m = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            m[(i, j)] = z;
        }
    }
    m
}

/// Independent Haar unitaries of order `block_dim` on every edge.
pub fn haar_unitary_color<R: Rng + ?Sized>(g: &MultiGraph, block_dim: usize, rng: &mut R) -> Result<ColorAssignment> {
    let blocks = (0..g.n_edges()).map(|_| haar_unitary(block_dim, rng)).collect();
    ColorAssignment::from_edge_blocks(g, block_dim, blocks)
}

/// A word `t_{c_1}^{α_1} ⋯ t_{c_m}^{α_m}` in free generators, as
/// `(c_i, α_i)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<(usize, i32)>,
}

impl Word {
    /// Rejects zero exponents and adjacent repeated generators, which would
    /// make the word non-reduced.
    pub fn new(letters: Vec<(usize, i32)>) -> Result<Self> {
        if let Some(&(c, _)) = letters.iter().find(|(_, a)| *a == 0) {
            return Err(Error::MalformedWord(format!("generator t{c} has exponent 0")));
        }
        if let Some(w) = letters.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::MalformedWord(format!("generator t{} repeats", w[0].0)));
        }
        Ok(Self { letters })
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.letters
    }

    /// Distinct generator ids, ascending.
    fn generators(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.letters.iter().map(|&(c, _)| c).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// Normalized trace of the word evaluated at independent uniform random
/// permutation matrices of order `n`: fixed points of the product over `n`.
pub fn word_trace_sample<R: Rng + ?Sized>(word: &Word, n: usize, rng: &mut R) -> f64 {
    if word.letters.is_empty() {
        return 1.0;
    }
    let ids = word.generators();
    let gens: Vec<Vec<usize>> = ids.iter().map(|_| random_permutation(n, rng)).collect();
    let inverses: Vec<Vec<usize>> = gens
        .iter()
        .map(|p| {
            let mut inv = vec![0; n];
            for (i, &j) in p.iter().enumerate() {
                inv[j] = i;
            }
            inv
        })
        .collect();
    let fixed = (0..n)
        .filter(|&start| {
            let mut x = start;
            for &(c, alpha) in word.letters.iter().rev() {
                let g = ids.binary_search(&c).expect("generator ids were collected from the word");
                let step = if alpha > 0 { &gens[g] } else { &inverses[g] };
                for _ in 0..alpha.unsigned_abs() {
                    x = step[x];
                }
            }
            x == start
        })
        .count();
    fixed as f64 / n as f64
}

/// Compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Sample mean and standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub trials: usize,
}

impl Estimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        let mut s = NeumaierSum::default();
        samples.iter().for_each(|&x| s.add(x));
        let mean = if n == 0 { f64::NAN } else { s.total() / n as f64 };
        let std_error = if n < 2 {
            f64::NAN
        } else {
            let mut v = NeumaierSum::default();
            samples.iter().for_each(|&x| v.add((x - mean) * (x - mean)));
            libm::sqrt(v.total() / (n - 1) as f64 / n as f64)
        };
        Self { mean, std_error, trials: n }
    }
}

/// Monte-Carlo estimate of `E[(1/n) Tr w(t_1, t_2, …)]` over `trials`
/// independent draws; trial `k` uses stream `k` of `seed`.
pub fn nica_trace_estimate(word: &Word, n: usize, trials: usize, seed: u64) -> Result<Estimate> {
    if n == 0 || trials == 0 {
        return Err(Error::InvalidParameter("need n >= 1 and at least one trial".into()));
    }
    let samples: Vec<f64> = (0..trials)
        .map(|k| word_trace_sample(word, n, &mut rng_stream(seed, k as u64)))
        .collect();
    Ok(Estimate::from_samples(&samples))
}

/// Limiting mean `(d - 1)^k / (2k)` of the number of `k`-cycles in a random
/// `d`-regular graph.
pub fn cycle_count_limit(degree: usize, k: usize) -> f64 {
    libm::pow(degree as f64 - 1.0, k as f64) / (2.0 * k as f64)
}

/// Monte-Carlo moments of the number `Z_k` of `k`-cycles in uniform simple
/// `degree`-regular graphs on `n` vertices, with the Poisson parameter
/// `λ_k = (degree - 1)^k / (2k)` they approach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleMomentEstimate {
    pub first: Estimate,
    pub second: Estimate,
    pub lambda: f64,
}

impl CycleMomentEstimate {
    /// `E Z_k / λ_k`.
    pub fn mean_ratio(&self) -> f64 {
        self.first.mean / self.lambda
    }

    /// `E Z_k^2 / (λ_k^2 + λ_k)`, the second moment against its Poisson value.
    pub fn second_moment_ratio(&self) -> f64 {
        self.second.mean / (self.lambda * self.lambda + self.lambda)
    }
}

/// Circle counts `Z_k` of `trials` sampled graphs; trial `t` uses stream `t`
/// of `seed`.
pub fn cycle_count_samples(n: usize, degree: usize, k: usize, trials: usize, seed: u64) -> Result<Vec<f64>> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    (0..trials)
        .map(|t| {
            let g = sample_regular_graph(n, degree, &mut rng_stream(seed, t as u64), DEFAULT_RETRY_BUDGET)?.graph;
            Ok(g.enumerate_circles(k)?[k] as f64)
        })
        .collect()
}

pub fn cycle_moments(samples: &[f64], degree: usize, k: usize) -> CycleMomentEstimate {
    let squares: Vec<f64> = samples.iter().map(|z| z * z).collect();
    CycleMomentEstimate {
        first: Estimate::from_samples(samples),
        second: Estimate::from_samples(&squares),
        lambda: cycle_count_limit(degree, k),
    }
}

pub fn cycle_moment_estimate(n: usize, degree: usize, k: usize, trials: usize, seed: u64) -> Result<CycleMomentEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    Ok(cycle_moments(&cycle_count_samples(n, degree, k, trials, seed)?, degree, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;
    use crate::nbmatrix::{adjacency, colored_adjacency};

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = rng_stream(5, 0).random();
        let b: u64 = rng_stream(5, 0).random();
        let c: u64 = rng_stream(5, 1).random();
        let d: u64 = rng_stream(6, 0).random();
        assert_eq!(a, b);
        assert!(a != c && a != d);
    }

    #[test]
    fn sampler_contract() {
        let mut rng = rng_stream(1, 0);
        let k4 = sample_regular_graph(4, 3, &mut rng, 1000).unwrap().graph;
        assert_eq!(k4.canonical_edges(), graphs::complete(4).canonical_edges());
        for (n, d) in [(100, 3), (50, 4), (64, 6), (10, 1)] {
            let g = sample_regular_graph(n, d, &mut rng, DEFAULT_RETRY_BUDGET).unwrap().graph;
            assert_eq!(g.regular_degree(), Some(d));
            assert!(g.is_simple());
        }
        assert!(sample_regular_graph(5, 3, &mut rng, 10).is_err());
        assert!(sample_regular_graph(4, 4, &mut rng, 10).is_err());
        assert!(matches!(sample_regular_graph(20, 10, &mut rng, 10), Err(Error::CapExceeded { .. })));
        assert!(matches!(
            sample_regular_graph(40, 8, &mut rng, 1),
            Err(Error::RetryBudgetExceeded { attempts: 1 })
        ));
    }

    #[test]
    fn sampler_is_uniform_on_six_vertices() {
        // There are 70 labeled 3-regular graphs on 6 vertices: 60 copies of
        // the prism and 10 of K_{3,3}. A uniform sampler hits K_{3,3} with
        // probability 1/7.
        let trials = 7000;
        let mut rng = rng_stream(11, 0);
        let mut bipartite = 0;
        for _ in 0..trials {
            let g = sample_regular_graph(6, 3, &mut rng, 1000).unwrap().graph;
            if g.girth() == Some(4) {
                bipartite += 1;
            }
        }
        let expected = trials as f64 / 7.0;
        let sd = libm::sqrt(trials as f64 * (1.0 / 7.0) * (6.0 / 7.0));
        assert!((bipartite as f64 - expected).abs() < 4.0 * sd, "{bipartite}");
    }

    #[test]
    fn lift_structure() {
        let base = graphs::complete(4);
        let lift = sample_lift(&base, 5, &mut rng_stream(2, 0)).unwrap();
        assert_eq!(lift.graph.n_vertices(), 20);
        assert_eq!(lift.graph.regular_degree(), Some(3));
        // Every lifted edge projects to its base edge.
        for ((u, v), e) in lift.graph.edges().zip(0..) {
            let (bu, bv) = base.edges().nth(e / 5).unwrap();
            assert_eq!((u / 5, v / 5), (bu, bv));
        }
        assert!(sample_lift(&base, 0, &mut rng_stream(2, 0)).is_err());
        assert!(sample_lift(&MultiGraph::from_edges(2, &[]).unwrap(), 2, &mut rng_stream(2, 0)).is_err());
        assert!(LiftSpec::new(&base, 2, vec![vec![0, 0]; 6]).is_err());
    }

    #[test]
    fn explicit_lifts() {
        // One loop lifted by a 3-cycle is the triangle.
        let bouquet = graphs::bouquet(1);
        let c3 = LiftSpec::new(&bouquet, 3, vec![vec![1, 2, 0]]).unwrap().graph;
        assert_eq!(c3.canonical_edges(), graphs::cycle(3).canonical_edges());
        // The trivial lift is the base graph.
        let k4 = graphs::complete(4);
        let same = LiftSpec::new(&k4, 1, vec![vec![0]; 6]).unwrap().graph;
        assert_eq!(same.canonical_edges(), k4.canonical_edges());
        // C_4 with one crossed edge lifts to C_8.
        let c4 = graphs::cycle(4);
        let perms = vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]];
        let c8 = LiftSpec::new(&c4, 2, perms).unwrap().graph;
        assert_eq!(c8.girth(), Some(8));
        assert_eq!(c8.regular_degree(), Some(2));
    }

    #[test]
    fn permutation_color_reproduces_lift_adjacency() {
        let base = graphs::petersen();
        let lift = sample_lift(&base, 4, &mut rng_stream(3, 0)).unwrap();
        let color = permutation_color(&lift).unwrap();
        let colored = colored_adjacency(&base, &color).unwrap().into_matrix();
        let plain = ComplexMatrix::from_real(&adjacency(&lift.graph).to_real());
        assert_eq!(colored.max_abs_diff(&plain), 0.0);
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = rng_stream(4, 0);
        for n in [1usize, 2, 4, 16] {
            assert!(haar_unitary(n, &mut rng).unitarity_deviation() < 1e-13);
        }
        let color = haar_unitary_color(&graphs::complete(4), 3, &mut rng).unwrap();
        assert_eq!(color.block_dim(), 3);
    }

    #[test]
    fn haar_trace_moments() {
        // For Haar U of order n: E|Tr U|^2 = 1.
        let mut rng = rng_stream(9, 0);
        let samples: Vec<f64> = (0..4000).map(|_| haar_unitary(3, &mut rng).trace().norm_sqr()).collect();
        let est = Estimate::from_samples(&samples);
        assert!((est.mean - 1.0).abs() < 4.0 * est.std_error, "{est:?}");
    }

    #[test]
    fn words() {
        assert!(Word::new(vec![(0, 1), (0, 2)]).is_err());
        assert!(Word::new(vec![(0, 0)]).is_err());
        let empty = Word::new(vec![]).unwrap();
        assert_eq!(word_trace_sample(&empty, 10, &mut rng_stream(0, 0)), 1.0);
        // t1 t1^{-1} is not reduced, but t1^2 t2^{-3} t1 is.
        let w = Word::new(vec![(1, 2), (4, -3), (1, 1)]).unwrap();
        assert_eq!(w.generators(), vec![1, 4]);
    }

    #[test]
    fn single_generator_fixed_points() {
        // A uniform permutation has one fixed point on average.
        let w = Word::new(vec![(0, 1)]).unwrap();
        let est = nica_trace_estimate(&w, 20, 4000, 1).unwrap();
        assert!((est.mean - 0.05).abs() < 4.0 * est.std_error);
    }

    #[test]
    fn neumaier_sum_is_compensated() {
        let mut s = NeumaierSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.total(), 2.0);
    }

    #[test]
    fn cycle_limit_values() {
        assert!((cycle_count_limit(3, 3) - 4.0 / 3.0).abs() < 1e-15);
        assert!((cycle_count_limit(4, 4) - 81.0 / 8.0).abs() < 1e-15);
        assert!(cycle_moment_estimate(20, 3, 2, 1, 0).is_err());
        let m = cycle_moments(&[0.0, 2.0], 3, 3);
        assert_eq!(m.first.mean, 1.0);
        assert_eq!(m.second.mean, 2.0);
    }

    #[test]
    fn triangle_count_is_near_poisson_mean() {
        let est = cycle_moment_estimate(200, 3, 3, 400, 17).unwrap();
        assert!((est.first.mean - 4.0 / 3.0).abs() < 4.0 * est.first.std_error, "{est:?}");
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = sample_regular_graph(100, 3, &mut rng_stream(8, 2), 1000).unwrap();
        let b = sample_regular_graph(100, 3, &mut rng_stream(8, 2), 1000).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.graph.loop_count() + a.graph.parallel_pair_count(), 0);
    }
}
