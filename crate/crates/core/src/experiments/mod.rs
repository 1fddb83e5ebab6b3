//! Experiments built on the simulator: locality, ensemble equivalence, cycle
//! census, tree fractions, ratio ceilings and independent-set pruning, plus
//! the batch configuration that drives them.

pub mod census;
pub mod config;
pub mod constants;
pub mod end_to_end;
pub mod equivalence;
pub mod locality;
pub mod prune;
pub mod ratio;
pub mod stats;
pub mod tree_fraction;

/// Width of the Monte Carlo acceptance band, in standard errors.
pub const SIGMA_BAND: f64 = 3.0;

pub use census::{
    asymptotic_cycle_mean, bipartite_configuration_cycle_mean, configuration_model_cycle_mean,
    cycle_census_experiment, CensusReport, CycleLengthRow,
};
pub use config::{run_config, run_task, Config, Report, Tabular, Task, TaskOutput, SCHEMA_VERSION};
pub use constants::{Constant, LiteratureConstants, LITERATURE};
pub use end_to_end::{end_to_end, EndToEndReport};
pub use equivalence::{ensemble_equivalence, EquivalenceReport, EquivalenceRow};
pub use locality::{
    locality_check, locality_on_graph, random_params, LocalityReport, LocalityTrial, ParamSource,
};
pub use prune::{is_independent_set, prune, PruneResult, PruneStep};
pub use ratio::{ratio_ceiling, RatioReport, RATIO_TOLERANCE};
pub use stats::{trial_seed, Summary};
pub use tree_fraction::{
    threshold, tree_fraction_experiment, tree_fraction_of_graph, Threshold, TreeFractionReport,
};
