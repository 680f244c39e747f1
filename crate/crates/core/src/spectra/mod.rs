//! Spectral measures, reference laws and the distances between them.

pub mod eigen;
pub mod laws;
pub mod measure;
pub mod quadrature;
pub mod wasserstein;

pub use eigen::{eigenvalues_hermitian, eigenvalues_symmetric};
pub use laws::{density_gap, density_l1_distance, orthogonality_deviation, orthogonality_gram, LawKind, ReferenceLaw};
pub use measure::{
    colored_spectral_measure, cycle_idf, cycle_spectral_measure, moment_criterion_report, quantile_discretization,
    spectral_measure, DiscreteSpectralMeasure,
};
pub use quadrature::{GaussLegendre, QuadratureConfig};
pub use wasserstein::{cycle_arcsine_bound, wasserstein, Distribution, Order};
