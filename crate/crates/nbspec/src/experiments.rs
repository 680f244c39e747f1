//! The five experiments behind the subcommands. Each returns typed results
//! plus a [`Report`] of tables and pass/fail checks ready for rendering.
//!
//! Trials run on the rayon pool; results are collected by trial index, so
//! output never depends on scheduling.

use nbspec_core::dense::ComplexMatrix;
use nbspec_core::nbmatrix::{colored_nb_sequence, ColorAssignment};
use nbspec_core::random_models::{
    haar_unitary_color, permutation_color, rng_stream, sample_lift, sample_regular_graph, Estimate,
    DEFAULT_RETRY_BUDGET,
};
use nbspec_core::spectra::{
    colored_spectral_measure, cycle_arcsine_bound, cycle_spectral_measure, density_gap, spectral_measure, wasserstein,
    DiscreteSpectralMeasure, Order, ReferenceLaw,
};
use nbspec_core::{closed_walk_counts, walk_census, MultiGraph, WalkCensus};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formats::{census_table, measure_table, Table};
use crate::schedule::Schedule;

/// Grid used for `sup |ρ_q - ρ_∞|`.
pub const DENSITY_GAP_GRID: usize = 20_001;
/// Slack, in standard errors of the difference, allowed by trend checks.
pub const TREND_SIGMAS: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: Option<f64>,
    pub passed: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self { name: name.into(), value, bound: Some(bound), passed: value <= bound }
    }

    fn holds(name: impl Into<String>, value: f64, passed: bool) -> Self {
        Self { name: name.into(), value, bound: None, passed }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn checks_table(&self) -> Table {
        let mut t = Table::new("checks", &["check", "value", "bound", "pass"]);
        for c in &self.checks {
            t.push(vec![c.name.as_str().into(), c.value.into(), c.bound.into(), c.passed.into()]);
        }
        t
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Wasserstein order as written on the command line: a number `>= 1` or `inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderArg(pub Order);

impl OrderArg {
    pub fn label(self) -> String {
        match self.0 {
            Order::Finite(p) => format!("{p}"),
            Order::Infinity => "inf".into(),
        }
    }
}

impl std::str::FromStr for OrderArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if matches!(s, "inf" | "infinity") {
            return Ok(OrderArg(Order::Infinity));
        }
        match s.parse::<f64>() {
            Ok(p) if p >= 1.0 && p.is_finite() => Ok(OrderArg(Order::Finite(p))),
            _ => Err(Error::Input(format!("order `{s}` must be a number >= 1 or `inf`"))),
        }
    }
}

impl Serialize for OrderArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// Mean `a` then mean `b` counts as a decrease unless `b` exceeds `a` by more
/// than the allowed number of standard errors of the difference.
fn decreasing_within_noise(a: &Estimate, b: &Estimate) -> bool {
    let se = |e: &Estimate| if e.std_error.is_nan() { 0.0 } else { e.std_error };
    b.mean <= a.mean + TREND_SIGMAS * se(a).hypot(se(b))
}

fn trend_check(name: String, ladder: &[Estimate]) -> Check {
    let worst = ladder.windows(2).map(|w| w[1].mean - w[0].mean).fold(f64::NEG_INFINITY, f64::max);
    let passed = ladder.windows(2).all(|w| decreasing_within_noise(&w[0], &w[1]));
    Check::holds(name, if ladder.len() < 2 { 0.0 } else { worst }, passed)
}

fn estimate_of(samples: impl Iterator<Item = f64>) -> Estimate {
    Estimate::from_samples(&samples.collect::<Vec<_>>())
}

/// Kesten–McKay for `q >= 2`, arcsine for `q = 1`.
fn tree_law(q: usize) -> Result<ReferenceLaw> {
    match q {
        0 => Err(Error::Input("graphs of degree below 2 have no limiting law".into())),
        1 => Ok(ReferenceLaw::arcsine()),
        q => Ok(ReferenceLaw::kesten_mckay(q as f64)?),
    }
}

/// `q^{-r/2} counts[r] / size` for `r = 1..=r_max`.
fn scaled_counts(counts: &[i128], q: usize, size: usize) -> Vec<f64> {
    (1..counts.len()).map(|r| counts[r] as f64 / ((q as f64).powf(r as f64 / 2.0) * size as f64)).collect()
}

// ---------------------------------------------------------------------------
// census

pub fn census(g: &MultiGraph, r_max: usize) -> Result<(WalkCensus, Report)> {
    if r_max == 0 {
        return Err(Error::Input("--rmax must be at least 1".into()));
    }
    let census = walk_census(g, r_max)?;
    let walk = census.closed_walk_identity_violations();
    let mut checks = vec![Check::holds("closed-walk/circuit identity violations", walk.len() as f64, walk.is_empty())];
    if census.z.is_some() {
        let bounds = census.circle_bound_violations();
        checks.push(Check::holds("circle bound violations", bounds.len() as f64, bounds.is_empty()));
    }
    let report = Report { tables: vec![census_table(&census)], checks };
    Ok((census, report))
}

// ---------------------------------------------------------------------------
// lift

#[derive(Debug, Clone, Serialize)]
pub struct LiftConfig {
    pub sheets: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub r_max: usize,
    pub orders: Vec<OrderArg>,
}

#[derive(Debug, Clone)]
pub struct LiftCell {
    pub sheets: usize,
    /// One per order, in configuration order.
    pub distances: Vec<Estimate>,
    /// `q^{-r/2} f_r / (N |V|)` for `r = 1..=r_max`.
    pub residuals: Vec<Estimate>,
    /// Trials in which `f_r` vanished, per `r`.
    pub zero_residuals: Vec<usize>,
}

struct LiftTrial {
    distances: Vec<f64>,
    residuals: Vec<f64>,
}

/// The lift drawn by trial `trial` of cell `sheets`; shared with the
/// permutation-colored experiment so the two agree cell by cell.
pub fn lift_for_trial(base: &MultiGraph, sheets: usize, seed: u64, trial: u64) -> Result<nbspec_core::random_models::LiftSpec> {
    Ok(sample_lift(base, sheets, &mut rng_stream(seed, trial))?)
}

pub fn lift(base: &MultiGraph, cfg: &LiftConfig) -> Result<(Vec<LiftCell>, Report)> {
    if cfg.trials == 0 || cfg.sheets.is_empty() || cfg.orders.is_empty() {
        return Err(Error::Input("lift needs at least one trial, one sheet count and one order".into()));
    }
    if cfg.sheets.contains(&0) {
        return Err(Error::Input("sheet counts must be positive".into()));
    }
    let q = base.require_regular()?.saturating_sub(1);
    let law = tree_law(q)?;

    let mut cells = Vec::new();
    for &sheets in &cfg.sheets {
        let trials: Vec<LiftTrial> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|t| {
                let lift = lift_for_trial(base, sheets, cfg.seed, t)?;
                let mu = spectral_measure(&lift.graph)?;
                let distances =
                    cfg.orders.iter().map(|o| wasserstein((&mu).into(), (&law).into(), o.0)).collect::<nbspec_core::Result<_>>()?;
                let (f, _) = closed_walk_counts(&lift.graph, cfg.r_max)?;
                Ok(LiftTrial { distances, residuals: scaled_counts(&f, q, lift.graph.n_vertices()) })
            })
            .collect::<Result<_>>()?;
        cells.push(LiftCell {
            sheets,
            distances: (0..cfg.orders.len()).map(|i| estimate_of(trials.iter().map(|t| t.distances[i]))).collect(),
            residuals: (0..cfg.r_max).map(|i| estimate_of(trials.iter().map(|t| t.residuals[i]))).collect(),
            zero_residuals: (0..cfg.r_max).map(|i| trials.iter().filter(|t| t.residuals[i] == 0.0).count()).collect(),
        });
    }

    let mut distances = Table::new("distances", &["sheets", "order", "target", "mean", "std_error", "trials"]);
    let mut residuals = Table::new("residuals", &["sheets", "r", "mean", "std_error", "zero_trials"]);
    for cell in &cells {
        for (o, e) in cfg.orders.iter().zip(&cell.distances) {
            distances.push(vec![
                cell.sheets.into(),
                o.label().into(),
                law.kind().to_string().into(),
                e.mean.into(),
                e.std_error.into(),
                e.trials.into(),
            ]);
        }
        for (i, e) in cell.residuals.iter().enumerate() {
            residuals.push(vec![
                cell.sheets.into(),
                (i + 1).into(),
                e.mean.into(),
                e.std_error.into(),
                cell.zero_residuals[i].into(),
            ]);
        }
    }
    let checks = cfg
        .orders
        .iter()
        .enumerate()
        .map(|(i, o)| {
            let ladder: Vec<Estimate> = cells.iter().map(|c| c.distances[i]).collect();
            trend_check(format!("mean W_{} decreases along the sheet ladder", o.label()), &ladder)
        })
        .collect();
    Ok((cells, Report { tables: vec![distances, residuals], checks }))
}

// ---------------------------------------------------------------------------
// grow

#[derive(Debug, Clone, Serialize)]
pub struct GrowConfig {
    pub sizes: Vec<usize>,
    #[serde(serialize_with = "as_display")]
    pub schedule: Schedule,
    pub trials: usize,
    pub seed: u64,
    pub r_max: usize,
    pub orders: Vec<OrderArg>,
}

fn as_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone)]
pub struct GrowCell {
    pub n: usize,
    pub q: usize,
    pub distances: Vec<Estimate>,
    /// `W_p(μ_q, μ_∞)`: where the distances level off if `q` stops growing.
    pub law_floor: Vec<f64>,
    /// `q^{-r/2} c_r / n` for `r = 1..=r_max`.
    pub circuits: Vec<Estimate>,
    pub max_loops: usize,
    pub max_parallel_pairs: usize,
    pub mean_attempts: f64,
}

struct GrowTrial {
    distances: Vec<f64>,
    circuits: Vec<f64>,
    loops: usize,
    parallel: usize,
    attempts: u64,
}

pub fn grow(cfg: &GrowConfig) -> Result<(Vec<GrowCell>, Report)> {
    if cfg.trials == 0 || cfg.sizes.is_empty() || cfg.orders.is_empty() {
        return Err(Error::Input("grow needs at least one trial, one size and one order".into()));
    }
    let qs = cfg.sizes.iter().map(|&n| cfg.schedule.cell(n)).collect::<Result<Vec<_>>>()?;
    let semicircle = ReferenceLaw::semicircle();

    let mut cells = Vec::new();
    for (&n, &q) in cfg.sizes.iter().zip(&qs) {
        let trials: Vec<GrowTrial> = (0..cfg.trials as u64)
            .into_par_iter()
            .map(|t| {
                let sample = sample_regular_graph(n, q + 1, &mut rng_stream(cfg.seed, t), DEFAULT_RETRY_BUDGET)?;
                let g = sample.graph;
                let mu = spectral_measure(&g)?;
                let distances = cfg
                    .orders
                    .iter()
                    .map(|o| wasserstein((&mu).into(), (&semicircle).into(), o.0))
                    .collect::<nbspec_core::Result<_>>()?;
                let (_, c) = closed_walk_counts(&g, cfg.r_max)?;
                Ok(GrowTrial {
                    distances,
                    circuits: scaled_counts(&c, q, n),
                    loops: g.loop_count(),
                    parallel: g.parallel_pair_count(),
                    attempts: sample.attempts,
                })
            })
            .collect::<Result<_>>()?;
        let km = ReferenceLaw::kesten_mckay(q as f64)?;
        let law_floor =
            cfg.orders.iter().map(|o| wasserstein((&km).into(), (&semicircle).into(), o.0)).collect::<nbspec_core::Result<_>>()?;
        cells.push(GrowCell {
            n,
            q,
            distances: (0..cfg.orders.len()).map(|i| estimate_of(trials.iter().map(|t| t.distances[i]))).collect(),
            law_floor,
            circuits: (0..cfg.r_max).map(|i| estimate_of(trials.iter().map(|t| t.circuits[i]))).collect(),
            max_loops: trials.iter().map(|t| t.loops).max().unwrap_or(0),
            max_parallel_pairs: trials.iter().map(|t| t.parallel).max().unwrap_or(0),
            mean_attempts: trials.iter().map(|t| t.attempts as f64).sum::<f64>() / trials.len() as f64,
        });
    }

    let mut distances = Table::new("distances", &["n", "q", "order", "mean", "std_error", "trials", "law_floor"]);
    let mut circuits = Table::new("circuits", &["n", "q", "r", "mean", "std_error"]);
    let mut samples = Table::new("samples", &["n", "q", "max_z1", "max_z2", "mean_attempts"]);
    for cell in &cells {
        for ((o, e), floor) in cfg.orders.iter().zip(&cell.distances).zip(&cell.law_floor) {
            distances.push(vec![
                cell.n.into(),
                cell.q.into(),
                o.label().into(),
                e.mean.into(),
                e.std_error.into(),
                e.trials.into(),
                (*floor).into(),
            ]);
        }
        for (i, e) in cell.circuits.iter().enumerate() {
            circuits.push(vec![cell.n.into(), cell.q.into(), (i + 1).into(), e.mean.into(), e.std_error.into()]);
        }
        samples.push(vec![
            cell.n.into(),
            cell.q.into(),
            cell.max_loops.into(),
            cell.max_parallel_pairs.into(),
            cell.mean_attempts.into(),
        ]);
    }

    let mut checks = Vec::new();
    for (i, o) in cfg.orders.iter().enumerate() {
        let ladder: Vec<Estimate> = cells.iter().map(|c| c.distances[i]).collect();
        match cfg.schedule {
            Schedule::Fixed(_) => {
                let last = cells.last().expect("at least one cell");
                let gap = (last.distances[i].mean - last.law_floor[i]).abs() / last.law_floor[i];
                checks.push(Check::at_most(
                    format!("W_{} at the largest n relative to the law floor", o.label()),
                    gap,
                    0.1,
                ));
            }
            _ => checks.push(trend_check(format!("mean W_{} decreases along the size ladder", o.label()), &ladder)),
        }
    }
    for r in 1..=cfg.r_max {
        let ladder: Vec<Estimate> = cells.iter().map(|c| c.circuits[r - 1]).collect();
        checks.push(trend_check(format!("circuit statistic r={r} decreases along the size ladder"), &ladder));
    }
    let small = cells.iter().map(|c| c.max_loops + c.max_parallel_pairs).sum::<usize>();
    checks.push(Check::holds("loops and double edges across all samples", small as f64, small == 0));
    Ok((cells, Report { tables: vec![distances, circuits, samples], checks }))
}

// ---------------------------------------------------------------------------
// laws

#[derive(Debug, Clone, Serialize)]
pub struct LawsConfig {
    pub branching: Vec<f64>,
    pub cycles: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LawsResult {
    /// `(q, sup |ρ_q - ρ_∞|, 2/(q-2))`.
    pub density_gaps: Vec<(f64, f64, f64)>,
    /// `(m, W_∞(μ(C_m), arcsine), 4π/m)`.
    pub cycles: Vec<(usize, f64, f64)>,
    /// `(q, W_∞(μ_q, μ_∞))`.
    pub law_distances: Vec<(f64, f64)>,
}

pub fn laws(cfg: &LawsConfig) -> Result<(LawsResult, Report)> {
    if let Some(q) = cfg.branching.iter().find(|&&q| !(q > 2.0 && q.is_finite())) {
        return Err(Error::Input(format!("the density bound needs finite q > 2, got {q}")));
    }
    if let Some(m) = cfg.cycles.iter().find(|&&m| m < 3) {
        return Err(Error::Input(format!("cycle length {m} is below 3")));
    }
    let semicircle = ReferenceLaw::semicircle();
    let arcsine = ReferenceLaw::arcsine();
    let density_gaps = cfg
        .branching
        .iter()
        .map(|&q| Ok((q, density_gap(q, DENSITY_GAP_GRID)?, 2.0 / (q - 2.0))))
        .collect::<Result<Vec<_>>>()?;
    let cycles = cfg
        .cycles
        .iter()
        .map(|&m| {
            let mu = cycle_spectral_measure(m)?;
            Ok((m, wasserstein((&mu).into(), (&arcsine).into(), Order::Infinity)?, cycle_arcsine_bound(m)))
        })
        .collect::<Result<Vec<_>>>()?;
    let law_distances = cfg
        .branching
        .par_iter()
        .map(|&q| {
            let km = ReferenceLaw::kesten_mckay(q)?;
            Ok((q, wasserstein((&km).into(), (&semicircle).into(), Order::Infinity)?))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut gaps = Table::new("density_gaps", &["q", "sup_gap", "bound", "pass"]);
    let mut cyc = Table::new("cycles", &["m", "w_inf", "bound", "pass"]);
    let mut dist = Table::new("law_distances", &["q", "w_inf_to_semicircle"]);
    let mut checks = Vec::new();
    for &(q, gap, bound) in &density_gaps {
        gaps.push(vec![q.into(), gap.into(), bound.into(), (gap <= bound).into()]);
        checks.push(Check::at_most(format!("density gap q={q}"), gap, bound));
    }
    for &(m, w, bound) in &cycles {
        cyc.push(vec![m.into(), w.into(), bound.into(), (w <= bound).into()]);
        checks.push(Check::at_most(format!("W_inf(C_{m} arcsine)"), w, bound));
    }
    for &(q, w) in &law_distances {
        dist.push(vec![q.into(), w.into()]);
    }
    if law_distances.len() >= 2 {
        let worst = law_distances.windows(2).map(|w| w[1].1 - w[0].1).fold(f64::NEG_INFINITY, f64::max);
        checks.push(Check::holds("W_inf(mu_q semicircle) strictly decreases along the q ladder", worst, worst < 0.0));
    }
    let result = LawsResult { density_gaps, cycles, law_distances };
    Ok((result, Report { tables: vec![gaps, cyc, dist], checks }))
}

// ---------------------------------------------------------------------------
// colored

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ColorKind {
    Trivial,
    Permutation,
    Haar,
}

#[derive(Debug, Clone, Serialize)]
pub struct ColoredConfig {
    pub kind: ColorKind,
    pub sheets: usize,
    pub seed: u64,
    pub r_max: usize,
    pub orders: Vec<OrderArg>,
}

#[derive(Debug, Clone)]
pub struct ColoredResult {
    pub measure: DiscreteSpectralMeasure,
    pub colored_distances: Vec<f64>,
    pub base_distances: Vec<f64>,
    /// `q^{-r/2} f_r / |V|` of the base graph, `r = 1..=r_max`.
    pub uncolored_statistic: Vec<f64>,
    /// `q^{-r/2} |Tr A_r^σ| / (N |V|)`.
    pub colored_statistic: Vec<f64>,
}

pub fn colored(base: &MultiGraph, cfg: &ColoredConfig) -> Result<(ColoredResult, Report)> {
    if cfg.sheets == 0 || cfg.orders.is_empty() {
        return Err(Error::Input("colored needs N >= 1 and at least one order".into()));
    }
    let q = base.require_regular()?.saturating_sub(1);
    let law = tree_law(q)?;
    let color = match cfg.kind {
        ColorKind::Trivial => {
            let blocks = vec![ComplexMatrix::identity(cfg.sheets); base.n_edges()];
            ColorAssignment::from_edge_blocks(base, cfg.sheets, blocks)?
        }
        ColorKind::Permutation => permutation_color(&lift_for_trial(base, cfg.sheets, cfg.seed, 0)?)?,
        ColorKind::Haar => haar_unitary_color(base, cfg.sheets, &mut rng_stream(cfg.seed, 0))?,
    };
    let measure = colored_spectral_measure(base, &color)?;
    let base_measure = spectral_measure(base)?;
    let distance = |mu: &DiscreteSpectralMeasure| {
        cfg.orders.iter().map(|o| wasserstein(mu.into(), (&law).into(), o.0)).collect::<nbspec_core::Result<Vec<_>>>()
    };
    let colored_distances = distance(&measure)?;
    let base_distances = distance(&base_measure)?;

    let (f, _) = closed_walk_counts(base, cfg.r_max)?;
    let uncolored_statistic = scaled_counts(&f, q, base.n_vertices());
    let sequence = colored_nb_sequence(base, &color, cfg.r_max)?;
    let colored_statistic: Vec<f64> =
        (1..=cfg.r_max).map(|r| sequence.normalized_trace(r).norm() / (q as f64).powf(r as f64 / 2.0)).collect();

    let mut dist = Table::new("distances", &["kind", "sheets", "order", "target", "colored", "base"]);
    for ((o, c), b) in cfg.orders.iter().zip(&colored_distances).zip(&base_distances) {
        dist.push(vec![
            kind_label(cfg.kind).into(),
            cfg.sheets.into(),
            o.label().into(),
            law.kind().to_string().into(),
            (*c).into(),
            (*b).into(),
        ]);
    }
    let mut stats = Table::new("statistics", &["r", "uncolored", "colored"]);
    for (i, (u, c)) in uncolored_statistic.iter().zip(&colored_statistic).enumerate() {
        stats.push(vec![(i + 1).into(), (*u).into(), (*c).into()]);
    }

    let excess = uncolored_statistic.iter().zip(&colored_statistic).map(|(u, c)| c - u).fold(f64::NEG_INFINITY, f64::max);
    let edge = 1.0 / (q as f64).sqrt() + (q as f64).sqrt();
    let reach = measure.points().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let checks = vec![
        Check::holds("colored statistic minus uncolored statistic", excess, cfg.r_max == 0 || excess <= 1e-9),
        Check::at_most("largest |atom| of the colored measure", reach, edge + 1e-9),
        Check::holds("atoms of the colored measure", measure.len() as f64, measure.len() == cfg.sheets * base.n_vertices()),
    ];
    let tables = vec![dist, stats, measure_table("measure", &measure)];
    let result = ColoredResult { measure, colored_distances, base_distances, uncolored_statistic, colored_statistic };
    Ok((result, Report { tables, checks }))
}

pub fn kind_label(kind: ColorKind) -> &'static str {
    match kind {
        ColorKind::Trivial => "trivial",
        ColorKind::Permutation => "permutation",
        ColorKind::Haar => "haar",
    }
}
