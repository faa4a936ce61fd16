//! The counting engine: a brute-force oracle, the exact inclusion-exclusion
//! count, multiplicative-function evaluators, Euler-product densities with
//! truncation intervals, explicit error bounds, and Monte Carlo estimates.

mod bounds;
mod brute;
mod density;
mod incl_excl;
mod labeling;
mod montecarlo;
mod multiplicative;
mod report;
mod verify;

pub use bounds::{
    error_bound_rk, error_bound_t, literal_main_term, main_term, omega_bound_check, BoundScaling, LogReal,
    DEFAULT_T_EPSILON,
};
pub use brute::brute_force_count;
pub use density::{density_rho, DensityInterval, MAX_TRUNCATION_DEGREE};
#[doc(hidden)]
pub use incl_excl::inclusion_exclusion_count_with_fault;
pub use incl_excl::{inclusion_exclusion_count, squarefree_label_count};
pub use labeling::{associated_vertex_labeling, EdgeLabeling, VertexLabeling};
pub use montecarlo::{monte_carlo_density, MonteCarloEstimate, SplitMix64};
pub use multiplicative::{labeling_sums, multiplicative_f_eval, LabelingSums, MultKind, MultiplicativeValue};
pub use report::{census_sweep, Backend, CensusReport, CensusRow, RhoJson, SweepOptions, CSV_COLUMNS};
pub use verify::{labeled_graphs, run_verify, CheckResult, VerifyOptions, VerifyReport};

use crate::graphpoly::GraphError;
use crate::polyfq::PolyError;

#[derive(Debug, thiserror::Error)]
pub enum CensusError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{what}: cost {cost} exceeds budget {budget}")]
    Budget { what: &'static str, cost: String, budget: u64 },
    #[error("expected {expected} edge labels, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("density zero or factor nonpositive: Euler factor at degree {degree} is {value}")]
    NonpositiveFactor { degree: usize, value: String },
    #[error("density interval did not reach width {eps} by truncation degree {max_degree}")]
    PrecisionBudget { eps: f64, max_degree: usize },
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

/// Work ceilings for the exponential algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Brute force: tuples of the non-isolated vertices times edges tested.
    pub brute_gcd_tests: u64,
    /// Inclusion-exclusion: (squarefree labels)^e before pruning.
    pub ie_labelings: u64,
    /// Edge subsets visited for graph polynomials.
    pub subsets: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            brute_gcd_tests: 100_000_000,
            ie_labelings: 10_000_000,
            subsets: crate::graphpoly::DEFAULT_SUBSET_BUDGET,
        }
    }
}

impl Budgets {
    /// The same ceiling for everything.
    pub fn uniform(budget: u64) -> Self {
        Self { brute_gcd_tests: budget, ie_labelings: budget, subsets: budget }
    }

    pub(crate) fn poly_options(&self) -> crate::graphpoly::PolyOptions {
        crate::graphpoly::PolyOptions { budget: self.subsets, ..Default::default() }
    }
}
